//! CSV emitters for the figure panels. Each panel is a fixed header plus a
//! deterministic grid of rows; points where a map is undefined (poles,
//! division through the inversion p -> 1/p) are skipped, so files never
//! contain a non-finite entry and the abscissa is strictly increasing.

use std::path::Path;

use rbbg_core::catalog::{self, IdentityId};
use rbbg_core::maps;

use crate::{numerical, Failure};

pub fn emit(fig: &str, out: &Path, samples: Option<usize>) -> Result<(), Failure> {
    let (header, rows) = build(fig, samples)?;
    let mut body = String::from(header);
    body.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                body.push(',');
            }
            body.push_str(&format!("{v}"));
            first = false;
        }
        body.push('\n');
    }
    std::fs::write(out, body)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))
}

fn build(fig: &str, samples: Option<usize>) -> Result<(&'static str, Vec<Vec<f64>>), Failure> {
    let e = maps::escape_points();
    match fig.to_ascii_uppercase().as_str() {
        "1L" => {
            let mut rows = Vec::new();
            for p in grid(-3.0, 3.0, samples.unwrap_or(601))? {
                push_finite(&mut rows, vec![p, maps::beta(p), maps::beta(1.0 / p)]);
            }
            Ok(("p,beta_p,beta_inv_p", rows))
        }
        "1R" => {
            let mut rows = Vec::new();
            for p in grid(-3.0, 3.0, samples.unwrap_or(601))? {
                let (Ok(a), Ok(ai)) = (maps::alpha(p), maps::alpha(1.0 / p)) else {
                    continue;
                };
                push_finite(&mut rows, vec![p, a, 1.0 / ai]);
            }
            Ok(("p,alpha_p,inv_alpha_inv_p", rows))
        }
        "2L" => {
            let mut rows = Vec::new();
            for p in grid(e.p_star - 0.05, 0.99, samples.unwrap_or(400))? {
                let Ok(a) = maps::alpha(p) else { continue };
                push_finite(&mut rows, vec![p, maps::beta(p), a]);
            }
            Ok(("p,beta,alpha", rows))
        }
        "2R" => {
            let rows = identity_rows(grid(e.p_star, 0.99, samples.unwrap_or(400))?)?;
            Ok(("p,lhs,rhs", rows))
        }
        "3L" => {
            let mut rows = Vec::new();
            for p in grid(-0.5 + 1e-6, 1.0 - 1e-6, samples.unwrap_or(400))? {
                let (Ok(a), Ok(al)) = (maps::alpha(p), maps::alpha_ell(p)) else {
                    continue;
                };
                push_finite(&mut rows, vec![p, maps::beta(p), a, al]);
            }
            Ok(("p,beta,alpha,alpha_ell", rows))
        }
        "3R" => {
            let rows =
                identity_rows(grid(-0.5 + 1e-6, 1.0 - 1e-6, samples.unwrap_or(400))?)?;
            Ok(("p,lhs,rhs", rows))
        }
        "4" => {
            let mut rows = Vec::new();
            for a in grid(-1.0, 1.0, samples.unwrap_or(201))? {
                let (num, den) =
                    catalog::ratio_parts(IdentityId::R3, a, 1e-12).map_err(numerical)?;
                let law = catalog::ratio_law(IdentityId::R3, a).map_err(numerical)?;
                push_finite(
                    &mut rows,
                    vec![a, num.value, den.value, num.value / den.value, law],
                );
            }
            Ok(("a,numerator,denominator,ratio_numeric,ratio_law", rows))
        }
        other => Err(Failure::Usage(format!(
            "unknown figure id '{other}'; expected 1L, 1R, 2L, 2R, 3L, 3R or 4"
        ))),
    }
}

/// Both sides of the main transformation along a grid.
fn identity_rows(grid: impl Iterator<Item = f64>) -> Result<Vec<Vec<f64>>, Failure> {
    let mut rows = Vec::new();
    for p in grid {
        let (l, r) = catalog::sides(IdentityId::Rbbg, p, 1e-12)
            .map_err(|e| Failure::Numerical(format!("at p = {p}: {e}")))?;
        push_finite(&mut rows, vec![p, l.value, r.value]);
    }
    Ok(rows)
}

fn push_finite(rows: &mut Vec<Vec<f64>>, row: Vec<f64>) {
    if row.iter().all(|v| v.is_finite()) {
        rows.push(row);
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<impl Iterator<Item = f64>, Failure> {
    if n < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    Ok((0..n).map(move |k| {
        if k + 1 == n {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    }))
}
