//! Grid sweep over one parametric catalog entry. Bounds are validated
//! strictly against the catalog domain before any evaluation starts, so a
//! sweep that begins always produces a report unless the engine itself
//! fails to converge.

use std::time::Instant;

use rbbg_core::catalog::{self, IdentityId, SweepSpec};

use crate::report::{Domain, SweepReport};
use crate::Failure;

pub struct SweepArgs {
    pub id: IdentityId,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub samples: usize,
    pub tol: Option<f64>,
}

pub fn run(args: &SweepArgs) -> Result<SweepReport, Failure> {
    let spec = args.id.sweep().ok_or_else(|| {
        Failure::Usage(format!(
            "{} is a point value with no sweep domain; use `rbbg eval {}`",
            args.id.as_str(),
            args.id.as_str()
        ))
    })?;
    if args.samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let tol = args.tol.unwrap_or_else(|| args.id.default_tol());
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let min = args.min.unwrap_or(spec.default_min);
    let max = args.max.unwrap_or(spec.default_max);
    check_bound(&spec, min, "--min")?;
    check_bound(&spec, max, "--max")?;
    if min >= max {
        return Err(Failure::Usage(format!("--min {min} must be below --max {max}")));
    }

    let started = Instant::now();
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut worst = min;
    for k in 0..args.samples {
        // Last point lands on max exactly; naive stepping can overshoot an
        // open endpoint by a rounding ulp.
        let t = if k + 1 == args.samples {
            max
        } else {
            min + (max - min) * k as f64 / (args.samples - 1) as f64
        };
        let (l, r) = catalog::sides(args.id, t, tol).map_err(|e| {
            Failure::Numerical(format!(
                "{} at {} = {t}: {e}",
                args.id.as_str(),
                args.id.parameter_name(),
            ))
        })?;
        // Residual relative to the entry's value scale, floored at unity.
        // The ratio laws and two of the families pass through zero inside
        // their domains (the shared cosine factor vanishes at a = 5/6), so a
        // pure relative metric is unattainable there at any engine
        // precision; near the zero this reports the absolute residual.
        let abs = (l.value - r.value).abs();
        let rel = abs / l.value.abs().max(r.value.abs()).max(1.0);
        max_abs = max_abs.max(abs);
        if rel > max_rel {
            max_rel = rel;
            worst = t;
        }
    }

    Ok(SweepReport {
        identity_id: args.id.as_str().to_string(),
        samples: args.samples,
        domain: Domain { min, max },
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        worst_point: worst,
        pass: max_rel <= tol,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

fn check_bound(spec: &SweepSpec, v: f64, flag: &str) -> Result<(), Failure> {
    if !v.is_finite() {
        return Err(Failure::Usage(format!("{flag} must be finite")));
    }
    let lo_ok = if spec.min_open { v > spec.valid_min } else { v >= spec.valid_min };
    let hi_ok = if spec.max_open { v < spec.valid_max } else { v <= spec.valid_max };
    if lo_ok && hi_ok {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{flag} {v} is outside the valid domain {}{}, {}{}",
            if spec.min_open { '(' } else { '[' },
            spec.valid_min,
            spec.valid_max,
            if spec.max_open { ')' } else { ']' },
        )))
    }
}
