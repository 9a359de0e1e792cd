//! Order-condition tables, one entry per row: the summand as a product of
//! indexed factors (`alpha`, `beta`, `w`) after the leading `b_i`, and the
//! denominator of the right-hand side `1/n`.

/// Conditions for ROW schemes in mass-matrix form, up to order 6.
pub(super) static ROW_TABLE: [(&str, u32); 130] = [
    ("b_i", 1),
    ("b_i beta_ij", 2),
    ("b_i w_ij alpha_jk alpha_jl", 1),
    ("b_i beta_ij beta_jk", 6),
    ("b_i alpha_ij alpha_ik", 3),
    ("b_i w_ij alpha_jk alpha_jl beta_lm", 2),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo", 1),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln", 4),
    ("b_i beta_ij beta_jk beta_kl", 24),
    ("b_i alpha_ij alpha_ik beta_kl", 8),
    ("b_i beta_ij alpha_jk alpha_jl", 12),
    ("b_i alpha_ij alpha_ik alpha_il", 4),
    ("b_i w_ij alpha_jk alpha_jl beta_lm beta_mn", 6),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm alpha_ln", 3),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm beta_mn", 2),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo beta_op", 2),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_jn", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_mp", 1),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm w_mn alpha_no alpha_np", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr", 1),
    ("b_i w_ij alpha_jk beta_kl alpha_jl beta_lm", 4),
    ("b_i w_ij alpha_jk beta_kl alpha_jl w_lm alpha_mn alpha_mo", 2),
    ("b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl w_lm alpha_mn alpha_mo", 1),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln beta_no", 10),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_lo", 5),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq", 5),
    ("b_i beta_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo", 20),
    ("b_i alpha_ij alpha_ik alpha_il w_lm alpha_mn alpha_mo", 5),
    ("b_i beta_ij beta_jk beta_kl beta_lm", 120),
    ("b_i alpha_ij alpha_ik beta_kl beta_lm", 30),
    ("b_i beta_ij alpha_jk alpha_jl beta_lm", 40),
    ("b_i alpha_ij alpha_ik alpha_il beta_lm", 10),
    ("b_i beta_ij beta_jk alpha_kl alpha_km", 60),
    ("b_i alpha_ij alpha_ik alpha_kl alpha_km", 15),
    ("b_i beta_ij alpha_jk alpha_jl alpha_jm", 20),
    ("b_i alpha_ij alpha_ik alpha_il alpha_im", 5),
    ("b_i alpha_ij beta_jk alpha_ik beta_kl", 20),
    ("b_i alpha_ij beta_jk alpha_ik w_kl alpha_lm alpha_ln", 10),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik w_kl alpha_lm alpha_ln", 5),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm alpha_ln w_no alpha_op alpha_oq", 4),
    ("b_i w_ij alpha_jk alpha_jl beta_lm beta_mn beta_no", 24),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm alpha_ln beta_no", 8),
    ("b_i w_ij alpha_jk alpha_jl beta_lm alpha_mn alpha_mo", 12),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm alpha_ln alpha_lo", 4),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm beta_mn beta_no", 6),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo beta_op beta_pq", 6),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_mn alpha_mo", 3),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_op alpha_oq", 3),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_jn beta_no", 2),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_mp beta_pq", 2),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm w_mn alpha_no alpha_np beta_pq", 2),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr beta_rs", 2),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_jn alpha_jo", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_mp alpha_mq", 1),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm w_mn alpha_no alpha_np alpha_nq", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr alpha_ps", 1),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_jn w_no alpha_op alpha_oq", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_mp w_pq alpha_qr alpha_qs", 1),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm w_mn alpha_no alpha_np w_pq alpha_qr alpha_qs", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr w_rs alpha_st alpha_su", 1),
    ("b_i w_ij alpha_jk alpha_jl beta_lm alpha_jm beta_mn", 4),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn beta_no alpha_mo beta_op", 4),
    ("b_i w_ij alpha_jk alpha_jl beta_lm alpha_jm w_mn alpha_no alpha_np", 2),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn beta_no alpha_mo w_op alpha_pq alpha_pr", 2),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_jm w_mn alpha_no alpha_np", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn w_no alpha_op alpha_oq alpha_mo w_op alpha_pq alpha_pr", 1),
    ("b_i w_ij alpha_jk beta_kl alpha_jl beta_lm beta_mn", 12),
    ("b_i w_ij alpha_jk beta_kl alpha_jl alpha_lm alpha_ln", 6),
    ("b_i w_ij alpha_jk beta_kl alpha_jl w_lm alpha_mn alpha_mo beta_op", 4),
    ("b_i w_ij alpha_jk beta_kl alpha_jl w_lm alpha_mn alpha_mo alpha_mp", 2),
    ("b_i w_ij alpha_jk beta_kl alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr", 2),
    ("b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl beta_lm beta_mn", 6),
    ("b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl alpha_lm alpha_ln", 3),
    ("b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl w_lm alpha_mn alpha_mo beta_op", 2),
    ("b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl w_lm alpha_mn alpha_mo alpha_mp", 1),
    ("b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr", 1),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln beta_no beta_op", 36),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_no alpha_np", 18),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_lo beta_op", 12),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq beta_qr", 12),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_lo alpha_lp", 6),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq alpha_or", 6),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_lo w_op alpha_pq alpha_pr", 6),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq w_qr alpha_rs alpha_rt", 6),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm beta_mn alpha_ln beta_no", 24),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm beta_mn alpha_ln w_no alpha_op alpha_oq", 12),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm w_mn alpha_no alpha_np alpha_ln w_no alpha_op alpha_oq", 6),
    ("b_i beta_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo beta_op", 60),
    ("b_i alpha_ij alpha_ik alpha_il w_lm alpha_mn alpha_mo beta_op", 12),
    ("b_i beta_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_mp", 30),
    ("b_i alpha_ij alpha_ik alpha_il w_lm alpha_mn alpha_mo alpha_mp", 6),
    ("b_i beta_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr", 30),
    ("b_i alpha_ij alpha_ik alpha_il w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr", 6),
    ("b_i beta_ij beta_jk alpha_kl alpha_km w_mn alpha_no alpha_np", 120),
    ("b_i alpha_ij alpha_ik alpha_kl alpha_km w_mn alpha_no alpha_np", 24),
    ("b_i beta_ij alpha_jk alpha_jl alpha_jm w_mn alpha_no alpha_np", 30),
    ("b_i alpha_ij alpha_ik alpha_il alpha_im w_mn alpha_no alpha_np", 6),
    ("b_i beta_ij beta_jk beta_kl beta_lm beta_mn", 720),
    ("b_i alpha_ij alpha_ik beta_kl beta_lm beta_mn", 144),
    ("b_i beta_ij alpha_jk alpha_jl beta_lm beta_mn", 180),
    ("b_i alpha_ij alpha_ik alpha_il beta_lm beta_mn", 36),
    ("b_i beta_ij beta_jk alpha_kl alpha_km beta_mn", 240),
    ("b_i alpha_ij alpha_ik alpha_kl alpha_km beta_mn", 48),
    ("b_i beta_ij alpha_jk alpha_jl alpha_jm beta_mn", 60),
    ("b_i alpha_ij alpha_ik alpha_il alpha_im beta_mn", 12),
    ("b_i beta_ij beta_jk beta_kl alpha_lm alpha_ln", 360),
    ("b_i alpha_ij alpha_ik beta_kl alpha_lm alpha_ln", 72),
    ("b_i beta_ij alpha_jk alpha_jl alpha_lm alpha_ln", 90),
    ("b_i alpha_ij alpha_ik alpha_il alpha_lm alpha_ln", 18),
    ("b_i beta_ij beta_jk alpha_kl alpha_km alpha_kn", 120),
    ("b_i alpha_ij alpha_ik alpha_kl alpha_km alpha_kn", 24),
    ("b_i beta_ij alpha_jk alpha_jl alpha_jm alpha_jn", 30),
    ("b_i alpha_ij alpha_ik alpha_il alpha_im alpha_in", 6),
    ("b_i beta_ij alpha_jk beta_kl alpha_jl beta_lm", 120),
    ("b_i alpha_ij alpha_ik beta_kl alpha_il beta_lm", 24),
    ("b_i beta_ij alpha_jk beta_kl alpha_jl w_lm alpha_mn alpha_mo", 60),
    ("b_i alpha_ij alpha_ik beta_kl alpha_il w_lm alpha_mn alpha_mo", 12),
    ("b_i beta_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl w_lm alpha_mn alpha_mo", 30),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_il w_lm alpha_mn alpha_mo", 6),
    ("b_i alpha_ij beta_jk alpha_ik beta_kl beta_lm", 72),
    ("b_i alpha_ij beta_jk alpha_ik alpha_kl alpha_km", 36),
    ("b_i alpha_ij beta_jk alpha_ik w_kl alpha_lm alpha_ln beta_no", 24),
    ("b_i alpha_ij beta_jk alpha_ik w_kl alpha_lm alpha_ln alpha_lo", 12),
    ("b_i alpha_ij beta_jk alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq", 12),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik beta_kl beta_lm", 36),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik alpha_kl alpha_km", 18),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik w_kl alpha_lm alpha_ln beta_no", 12),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik w_kl alpha_lm alpha_ln alpha_lo", 6),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq", 6),
];

/// Conditions for half-explicit schemes, up to order 5.
pub(super) static HALF_EXPLICIT_TABLE: [(&str, u32); 63] = [
    ("b_i", 1),
    ("b_i alpha_ij", 2),
    ("b_i w_ij alpha_jk alpha_jl", 1),
    ("b_i alpha_ij alpha_jk", 6),
    ("b_i alpha_ij alpha_ik", 3),
    ("b_i alpha_ij w_jk alpha_kl alpha_km", 3),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm", 2),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm", 1),
    ("b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo", 1),
    ("b_i alpha_ij alpha_jk alpha_kl", 24),
    ("b_i alpha_ij alpha_ik alpha_kl", 8),
    ("b_i alpha_ij alpha_jk alpha_jl", 12),
    ("b_i alpha_ij alpha_ik alpha_il", 4),
    ("b_i alpha_ij alpha_jk w_kl alpha_lm alpha_ln", 12),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln", 4),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_mn", 8),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_kn", 4),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km w_mn alpha_no alpha_np",
        4,
    ),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm alpha_mn", 6),
    ("b_i w_ij alpha_jk alpha_jl alpha_lm alpha_ln", 3),
    (
        "b_i w_ij alpha_jk alpha_jl alpha_lm w_mn alpha_no alpha_np",
        3,
    ),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_mn", 2),
    (
        "b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_op",
        2,
    ),
    ("b_i w_ij alpha_jk alpha_jl alpha_jm alpha_jn", 1),
    (
        "b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo alpha_mp",
        1,
    ),
    (
        "b_i w_ij alpha_jk alpha_jl alpha_jm w_mn alpha_no alpha_np",
        1,
    ),
    (
        "b_i w_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo w_op alpha_pq alpha_pr",
        1,
    ),
    ("b_i w_ij alpha_jk alpha_kl alpha_jl alpha_lm", 4),
    (
        "b_i w_ij alpha_jk alpha_kl alpha_jl w_lm alpha_mn alpha_mo",
        2,
    ),
    (
        "b_i w_ij alpha_jk w_kl alpha_lm alpha_ln alpha_jl w_lm alpha_mn alpha_mo",
        1,
    ),
    ("b_i alpha_ij alpha_jk alpha_kl alpha_lm", 120),
    ("b_i alpha_ij alpha_ik alpha_kl alpha_lm", 30),
    ("b_i alpha_ij alpha_jk alpha_jl alpha_lm", 40),
    ("b_i alpha_ij alpha_ik alpha_il alpha_lm", 10),
    ("b_i alpha_ij alpha_jk alpha_kl alpha_km", 60),
    ("b_i alpha_ij alpha_ik alpha_kl alpha_km", 15),
    ("b_i alpha_ij alpha_jk alpha_jl alpha_jm", 20),
    ("b_i alpha_ij alpha_ik alpha_il alpha_im", 5),
    ("b_i alpha_ij alpha_jk alpha_kl w_lm alpha_mn alpha_mo", 60),
    ("b_i alpha_ij alpha_ik alpha_kl w_lm alpha_mn alpha_mo", 15),
    ("b_i alpha_ij alpha_jk alpha_jl w_lm alpha_mn alpha_mo", 20),
    ("b_i alpha_ij alpha_ik alpha_il w_lm alpha_mn alpha_mo", 5),
    ("b_i alpha_ij alpha_jk w_kl alpha_lm alpha_ln alpha_no", 40),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_no", 10),
    ("b_i alpha_ij alpha_jk w_kl alpha_lm alpha_ln alpha_lo", 20),
    ("b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln alpha_lo", 5),
    (
        "b_i alpha_ij alpha_jk w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq",
        20,
    ),
    (
        "b_i alpha_ij alpha_ik w_kl alpha_lm alpha_ln w_no alpha_op alpha_oq",
        5,
    ),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_mn alpha_no", 30),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_mn alpha_mo", 15),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km alpha_mn w_no alpha_op alpha_oq",
        15,
    ),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_kn alpha_no", 10),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km w_mn alpha_no alpha_np alpha_pq",
        10,
    ),
    ("b_i alpha_ij w_jk alpha_kl alpha_km alpha_kn alpha_ko", 5),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km w_mn alpha_no alpha_np alpha_nq",
        5,
    ),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km alpha_kn w_no alpha_op alpha_oq",
        5,
    ),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km w_mn alpha_no alpha_np w_pq alpha_qr alpha_qs",
        5,
    ),
    ("b_i alpha_ij w_jk alpha_kl alpha_lm alpha_km alpha_mn", 20),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_lm alpha_km w_mn alpha_no alpha_np",
        10,
    ),
    (
        "b_i alpha_ij w_jk alpha_kl w_lm alpha_mn alpha_mo alpha_km w_mn alpha_no alpha_np",
        5,
    ),
    ("b_i alpha_ij alpha_jk alpha_ik alpha_kl", 20),
    ("b_i alpha_ij alpha_jk alpha_ik w_kl alpha_lm alpha_ln", 10),
    (
        "b_i alpha_ij w_jk alpha_kl alpha_km alpha_ik w_kl alpha_lm alpha_ln",
        5,
    ),
];
