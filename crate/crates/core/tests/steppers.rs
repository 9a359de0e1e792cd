use rowdae::dae::{MassMatrixForm, SemiExplicitDae};
use rowdae::experiments::{run_adaptive, run_fixed, work_precision};
use rowdae::problems::{Benchmark, Pendulum, Prob1, ProtheroRobinson};
use rowdae::stepper::{integrate_adaptive, AdaptiveOptions, IntegrationStats, RowStepper, Stepper};
use rowdae::tableau::{linearly_implicit_euler, ros2, tsit5da, RowTableau};

/// `y' = rate * y` without algebraic part, `y(0) = 1`.
struct Exponential {
    rate: f64,
}

impl SemiExplicitDae for Exponential {
    fn n_diff(&self) -> usize {
        1
    }
    fn n_alg(&self) -> usize {
        0
    }
    fn f(&self, _t: f64, y: &[f64], _z: &[f64], out: &mut [f64]) {
        out[0] = self.rate * y[0];
    }
    fn g(&self, _t: f64, _y: &[f64], _z: &[f64], _out: &mut [f64]) {}
}

impl Benchmark for Exponential {
    fn label(&self) -> String {
        format!("exponential rate {}", self.rate)
    }
    fn t0(&self) -> f64 {
        0.0
    }
    fn t_end(&self) -> f64 {
        1.0
    }
    fn initial_state(&self) -> Vec<f64> {
        vec![1.0]
    }
    fn exact(&self, t: f64) -> Option<Vec<f64>> {
        Some(vec![(self.rate * t).exp()])
    }
}

#[test]
fn adaptive_decay_meets_tolerance() {
    let p = Exponential { rate: -1.0 };
    for tab in [tsit5da(), ros2()] {
        let traj = run_adaptive(&p, &tab, 1.0, &AdaptiveOptions::new(1e-7, 1e-7)).unwrap();
        let err = (traj.final_state()[0] - (-1f64).exp()).abs();
        assert!(err <= 1e-6, "{}: {err}", tab.name());
        assert_eq!(traj.final_time(), 1.0);
    }
}

#[test]
fn constant_solution_is_reproduced_exactly() {
    let p = Exponential { rate: 0.0 };
    for tab in [tsit5da(), ros2(), linearly_implicit_euler()] {
        let traj = run_fixed(&p, &tab, 0.25, 1.0, false).unwrap();
        assert!(traj.states.iter().all(|u| u[0] == 1.0), "{}", tab.name());
    }
}

#[test]
fn every_attempt_factors_once() {
    let p = Prob1;
    for tab in [tsit5da(), ros2()] {
        for rtol in [1e-4, 1e-6] {
            let traj =
                run_adaptive(&p, &tab, p.t_end(), &AdaptiveOptions::new(rtol, rtol)).unwrap();
            let IntegrationStats {
                nsucc, nfail, nlu, ..
            } = traj.stats;
            assert_eq!(nlu, nsucc + nfail, "{} at {rtol}", tab.name());
        }
    }
}

#[test]
fn loose_tolerance_stalls_on_constraint_defect() {
    // A defect left in the constraint after a large accepted step feeds
    // through the large entries of W 1, so the embedded difference does not
    // vanish as h shrinks and the controller runs into the step floor.
    let err = run_adaptive(&Prob1, &tsit5da(), 4.0, &AdaptiveOptions::new(1e-3, 1e-3)).unwrap_err();
    assert!(
        matches!(err, rowdae::stepper::StepError::StepUnderflow { .. }),
        "{err}"
    );
}

#[test]
fn pure_ode_needs_no_factorization() {
    let p = Exponential { rate: -2.0 };
    let traj = run_fixed(&p, &tsit5da(), 0.1, 1.0, false).unwrap();
    assert_eq!(traj.stats.nlu, 0);
    assert_eq!(traj.stats.ng, 0);
}

#[test]
fn mass_matrix_constraint_defect_shrinks_with_step() {
    let p = Prob1;
    let tab = ros2();
    let form = MassMatrixForm(&p);
    let u0 = p.initial_state();
    let defects: Vec<f64> = [0.2, 0.1, 0.05, 0.025]
        .iter()
        .map(|&h| {
            let mut s = RowStepper::new(&form, &tab).unwrap();
            let out = s
                .step(p.t0(), &u0, h, &mut IntegrationStats::default())
                .unwrap();
            let mut g = [0.0];
            p.g(p.t0() + h, &out.u1[..1], &out.u1[1..], &mut g);
            g[0].abs()
        })
        .collect();
    for pair in defects.windows(2) {
        assert!(pair[1] < pair[0], "{defects:?}");
    }
}

#[test]
fn interpolant_starts_at_step_origin() {
    let p = Prob1;
    let traj = run_fixed(&p, &tsit5da(), 0.25, p.t_end(), true).unwrap();
    for seg in traj.segments.as_ref().unwrap() {
        let start = seg.interpolate(0.0).unwrap();
        for (a, b) in start.iter().zip(&seg.u0) {
            assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0));
        }
    }
}

#[test]
fn tightening_tolerance_reduces_error() {
    let p = ProtheroRobinson::new(10.0);
    for tab in [tsit5da(), ros2()] {
        let tols: Vec<f64> = (0..8).map(|k| 1e-4 * 0.5f64.powi(k)).collect();
        let errs: Vec<f64> = work_precision(&tab, &p, &tols, 1.0, None)
            .unwrap()
            .into_iter()
            .map(|r| r.outcome.unwrap().err_l2)
            .collect();
        // Single halvings may stall, the trend over the decade must not.
        let drops = errs.windows(2).filter(|w| w[1] < w[0]).count();
        assert!(drops >= 5, "{}: {errs:?}", tab.name());
        assert!(errs[7] < errs[0] / 3.0, "{}: {errs:?}", tab.name());
    }
}

/// Times where `x` crosses zero from below, located linearly between steps.
fn upward_crossings(times: &[f64], states: &[Vec<f64>]) -> Vec<f64> {
    let mut out = Vec::new();
    for k in 1..times.len() {
        let (x0, x1) = (states[k - 1][0], states[k][0]);
        if x0 < 0.0 && x1 >= 0.0 {
            out.push(times[k - 1] + (times[k] - times[k - 1]) * (-x0) / (x1 - x0));
        }
    }
    out
}

#[test]
fn small_angle_pendulum_period() {
    let theta0: f64 = 0.1;
    let gravity = 9.81;
    let p = Pendulum::from_angles(vec![1.0], vec![1.0], gravity, &[theta0], &[0.0]).unwrap();
    let tab: RowTableau = tsit5da();
    let mut s = rowdae::stepper::HalfExplicitStepper::new(&p, &tab).unwrap();
    let opts = AdaptiveOptions {
        h0: Some(1e-3),
        ..AdaptiveOptions::new(1e-9, 1e-9)
    };
    let traj = integrate_adaptive(&mut s, 0.0, &p.initial_state(), 10.0, &opts).unwrap();
    let crossings = upward_crossings(&traj.times, &traj.states);
    assert!(crossings.len() >= 4, "{crossings:?}");
    let measured = (crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64;
    let expected =
        2.0 * std::f64::consts::PI * (1.0 / gravity).sqrt() * (1.0 + theta0 * theta0 / 16.0);
    assert!(
        ((measured - expected) / expected).abs() < 0.01,
        "{measured} vs {expected}"
    );
    assert!(p.length_defect(traj.final_state()) < 1e-6);
}
