//! Plain-text tableau files.
//!
//! ```text
//! # comment
//! name: ros2
//! kind: row
//! s: 2
//! gamma: 2.9289321881345248e-1
//! alpha:
//!   0 0
//!   1 0
//! gammaM:
//!   2.9289321881345248e-1 0
//!   -2.9289321881345248e-1 2.9289321881345248e-1
//! b: 7.0710678118654752e-1 2.9289321881345248e-1
//! bhat: 1 0
//! ```
//!
//! `name`, `order`, `embedded_order`, `bhat` and the dense sets `c d e f` are
//! optional. Floats are written with 17 significant digits so a save/load
//! round trip is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{DenseCoefficients, RowTableau, TableauError, TableauKind, TableauSpec};
use crate::linalg::DenseMatrix;

pub fn load_tableau(path: impl AsRef<Path>) -> Result<RowTableau, TableauError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut t = parse_tableau(&text)?;
    if t.spec.name.is_empty() {
        t.spec.name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    Ok(t)
}

pub fn save_tableau(t: &RowTableau, path: impl AsRef<Path>) -> Result<(), TableauError> {
    fs::write(path, write_tableau(t))?;
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> TableauError {
    TableauError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_floats(line: usize, text: &str) -> Result<Vec<f64>, TableauError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| parse_err(line, format!("invalid number `{tok}`")))
        })
        .collect()
}

#[derive(Default)]
struct Fields {
    name: Option<String>,
    kind: Option<TableauKind>,
    s: Option<usize>,
    gamma: Option<f64>,
    alpha: Option<Vec<Vec<f64>>>,
    gamma_matrix: Option<Vec<Vec<f64>>>,
    vectors: [Option<Vec<f64>>; 6],
    order: Option<u32>,
    embedded_order: Option<u32>,
}

const VECTOR_KEYS: [&str; 6] = ["b", "bhat", "c", "d", "e", "f"];

pub fn parse_tableau(text: &str) -> Result<RowTableau, TableauError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut fields = Fields::default();
    let mut pos = 0;
    while pos < lines.len() {
        let (lineno, line) = lines[pos];
        pos += 1;
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, format!("expected `key: value`, found `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" => fields.name = Some(value.to_string()),
            "kind" => fields.kind = Some(value.parse().map_err(|e: String| parse_err(lineno, e))?),
            "s" => {
                let s = value
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("invalid stage count `{value}`")))?;
                fields.s = Some(s);
            }
            "gamma" => {
                let v = parse_floats(lineno, value)?;
                if v.len() != 1 {
                    return Err(parse_err(lineno, "gamma expects one number"));
                }
                fields.gamma = Some(v[0]);
            }
            "order" | "embedded_order" => {
                let v = value
                    .parse::<u32>()
                    .map_err(|_| parse_err(lineno, format!("invalid {key} `{value}`")))?;
                if key == "order" {
                    fields.order = Some(v);
                } else {
                    fields.embedded_order = Some(v);
                }
            }
            "alpha" | "gammaM" => {
                let s = fields
                    .s
                    .ok_or_else(|| parse_err(lineno, format!("`s:` must precede `{key}:`")))?;
                if !value.is_empty() {
                    return Err(parse_err(
                        lineno,
                        format!("`{key}:` rows start on the next line"),
                    ));
                }
                let mut rows = Vec::with_capacity(s);
                for _ in 0..s {
                    let (rl, row) = *lines
                        .get(pos)
                        .ok_or_else(|| parse_err(lineno, format!("`{key}` needs {s} rows")))?;
                    if row.contains(':') {
                        return Err(parse_err(rl, format!("`{key}` needs {s} rows")));
                    }
                    let values = parse_floats(rl, row)?;
                    if values.len() != s {
                        return Err(TableauError::Shape(format!(
                            "line {rl}: {key} row has {} entries, expected {s}",
                            values.len()
                        )));
                    }
                    rows.push(values);
                    pos += 1;
                }
                if key == "alpha" {
                    fields.alpha = Some(rows);
                } else {
                    fields.gamma_matrix = Some(rows);
                }
            }
            _ => {
                let slot = VECTOR_KEYS
                    .iter()
                    .position(|k| *k == key)
                    .ok_or_else(|| parse_err(lineno, format!("unknown key `{key}`")))?;
                fields.vectors[slot] = Some(parse_floats(lineno, value)?);
            }
        }
    }

    let missing = |what: &str| {
        parse_err(
            lines.last().map_or(0, |l| l.0),
            format!("missing `{what}:`"),
        )
    };
    let kind = fields.kind.ok_or_else(|| missing("kind"))?;
    let s = fields.s.ok_or_else(|| missing("s"))?;
    let gamma = fields.gamma.ok_or_else(|| missing("gamma"))?;
    let alpha = fields.alpha.ok_or_else(|| missing("alpha"))?;
    let gamma_matrix = fields.gamma_matrix.ok_or_else(|| missing("gammaM"))?;
    let [b, bhat, c, d, e, f] = fields.vectors;
    let b = b.ok_or_else(|| missing("b"))?;
    if b.len() != s {
        return Err(TableauError::Shape(format!(
            "b has {} entries, expected {s}",
            b.len()
        )));
    }
    let dense = match (c, d, e) {
        (Some(c), Some(d), Some(e)) => Some(DenseCoefficients { c, d, e, f }),
        (None, None, None) if f.is_none() => None,
        _ => {
            return Err(missing("c/d/e (dense output needs all of c, d and e)"));
        }
    };

    RowTableau::new(TableauSpec {
        name: fields.name.unwrap_or_default(),
        kind,
        gamma,
        alpha: DenseMatrix::from_rows(&alpha),
        gamma_matrix: DenseMatrix::from_rows(&gamma_matrix),
        b,
        bhat,
        dense,
        order: fields.order,
        embedded_order: fields.embedded_order,
    })
}

fn push_vector(out: &mut String, key: &str, v: &[f64]) {
    out.push_str(key);
    out.push(':');
    for x in v {
        let _ = write!(out, " {x:.16e}");
    }
    out.push('\n');
}

fn push_matrix(out: &mut String, key: &str, m: &DenseMatrix) {
    out.push_str(key);
    out.push_str(":\n");
    for i in 0..m.rows() {
        out.push(' ');
        for x in m.row(i) {
            let _ = write!(out, " {x:.16e}");
        }
        out.push('\n');
    }
}

/// Serializes a tableau; the inverse of [`parse_tableau`].
pub fn write_tableau(t: &RowTableau) -> String {
    let spec = t.spec();
    let mut out = String::new();
    if !spec.name.is_empty() {
        let _ = writeln!(out, "name: {}", spec.name);
    }
    let _ = writeln!(out, "kind: {}", spec.kind);
    let _ = writeln!(out, "s: {}", t.stages());
    let _ = writeln!(out, "gamma: {:.16e}", spec.gamma);
    if let Some(p) = spec.order {
        let _ = writeln!(out, "order: {p}");
    }
    if let Some(p) = spec.embedded_order {
        let _ = writeln!(out, "embedded_order: {p}");
    }
    push_matrix(&mut out, "alpha", &spec.alpha);
    push_matrix(&mut out, "gammaM", &spec.gamma_matrix);
    push_vector(&mut out, "b", &spec.b);
    if let Some(bhat) = &spec.bhat {
        push_vector(&mut out, "bhat", bhat);
    }
    if let Some(dense) = &spec.dense {
        push_vector(&mut out, "c", &dense.c);
        push_vector(&mut out, "d", &dense.d);
        push_vector(&mut out, "e", &dense.e);
        if let Some(f) = &dense.f {
            push_vector(&mut out, "f", f);
        }
    }
    out
}
