//! End-to-end acceptance suite. Each test is one criterion with its stated
//! tolerance; the cargo test line per criterion is the pass/fail record.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use rbbg_core::catalog::{self, IdentityId};
use rbbg_core::elliptic::{self, Modulus};
use rbbg_core::hyp2f1::{self, Hyp2F1Params, Route};
use rbbg_core::{maps, special};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Deterministic xorshift64* stream for the randomized map checks.
struct Rng(u64);

impl Rng {
    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0.wrapping_mul(0x2545_f491_4f6c_dd1d) >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| {
        if k + 1 == n {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    })
}

#[test]
fn criterion_01_main_sweep_through_cli() {
    let started = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_rbbg"))
        .args([
            "verify", "RBBG", "--min", "-0.49", "--max", "0.99", "--samples", "500",
            "--tol", "1e-9",
        ])
        .status()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(status.success(), "sweep exited {status}");
    assert!(elapsed.as_secs_f64() <= 10.0, "sweep took {elapsed:?}");
    println!("[PASS] criterion 1: 500-point sweep passed in {elapsed:?}");
}

#[test]
fn criterion_02_branch_agreement() {
    let e = maps::escape_points();
    let mut worst = 0.0f64;
    for p in grid(e.p_star, e.p_star_ell, 100) {
        let (direct, left) = catalog::rbbg_branches(p, 1e-12).unwrap();
        worst = worst.max(rel(direct.value, left.value));
    }
    assert!(worst <= 1e-10, "worst branch disagreement {worst:e}");
    println!("[PASS] criterion 2: branches agree to {worst:e} on 100 points");
}

#[test]
fn criterion_03_escape_point_value() {
    let e = maps::escape_points();
    let (lhs, _) = catalog::sides(IdentityId::Rbbg, e.p_star, 1e-12).unwrap();
    assert!((lhs.value - 1.7514579).abs() <= 5e-7, "escape value {}", lhs.value);
    let closed = catalog::closed_form_value(IdentityId::Comm, None).unwrap();
    let r = rel(lhs.value, closed);
    assert!(r <= 1e-10, "escape vs closed form: {r:e}");
    println!("[PASS] criterion 3: escape value {} matches closed form to {r:e}", lhs.value);
}

#[test]
fn criterion_04_alternating_boundary_value() {
    let f12 = Hyp2F1Params::new(0.5, 0.5, 1.0).unwrap();
    let theorem = hyp2f1::kummer_theorem(0.5, 0.5).unwrap();
    let summed = hyp2f1::eval_series(&f12, -1.0, 1e-12).unwrap().value;
    let g4 = special::gamma(0.25).unwrap();
    let closed = g4 * g4 / (2.0 * PI).powf(1.5);
    assert!(rel(theorem, closed) <= 1e-10);
    assert!(rel(summed, closed) <= 1e-10);
    assert!(rel(summed, theorem) <= 1e-10);
    println!("[PASS] criterion 4: gamma route and summation route both give {closed}");
}

#[test]
fn criterion_05_ninth_singular_value() {
    let s = elliptic::singular_modulus(9, 1e-13).unwrap();
    let x9 = elliptic::x9_closed_form();
    assert!((s.x_n - x9).abs() <= 1e-12, "solver vs radical");
    let num = elliptic::ellip_k(&Modulus::from_parameter(1.0 - s.x_n).unwrap());
    let den = elliptic::ellip_k(&Modulus::from_parameter(s.x_n).unwrap());
    assert!((num / den - 3.0).abs() <= 1e-12, "ratio off 3");
    let e = maps::escape_points();
    assert!((maps::alpha(e.p_nine).unwrap() - x9).abs() <= 1e-14, "map vs radical");
    println!("[PASS] criterion 5: x_9 = {} from solver, radical and map agree", s.x_n);
}

#[test]
fn criterion_06_closed_form_values() {
    use IdentityId::{Bf1, Bf1a, Br2, Br3, Comm, Ff3, Las, Rs3, B33, R33};
    let mut worst = 0.0f64;
    for id in [Br2, Br3, Rs3, B33, R33, Comm] {
        let closed = catalog::closed_form_value(id, None).unwrap();
        let engine = catalog::engine_value(id, None, 1e-12).unwrap();
        worst = worst.max(rel(engine.value, closed));
    }
    assert!(worst <= 1e-9, "worst point value residual {worst:e}");
    let rs3 = catalog::engine_value(Rs3, None, 1e-12).unwrap();
    assert_eq!(rs3.route, Route::PfaffContinuation);
    let mut worst_family = 0.0f64;
    for id in [Bf1, Bf1a, Ff3, Las] {
        for a in grid(-0.9, 0.9, 50) {
            let closed = catalog::closed_form_value(id, Some(a)).unwrap();
            let engine = catalog::engine_value(id, Some(a), 1e-12).unwrap();
            worst_family = worst_family.max(rel(engine.value, closed));
        }
    }
    assert!(worst_family <= 1e-9, "worst family residual {worst_family:e}");
    let las = catalog::engine_value(Las, Some(0.7), 1e-12).unwrap();
    assert_eq!(las.route, Route::PfaffContinuation);
    println!(
        "[PASS] criterion 6: points to {worst:e}, families to {worst_family:e}, \
         negative-argument entries on the reflection route"
    );
}

#[test]
fn criterion_07_ratio_laws() {
    let mut worst = 0.0f64;
    for id in [IdentityId::R1, IdentityId::R2, IdentityId::R3] {
        for a in grid(-1.0, 1.0, 100) {
            let law = catalog::ratio_law(id, a).unwrap();
            let numeric = catalog::ratio_numeric(id, a, 1e-12).unwrap();
            worst = worst.max((law - numeric).abs() / law.abs().max(1.0));
        }
    }
    assert!(worst <= 1e-9, "worst law residual {worst:e}");

    let s3 = 3.0f64.sqrt();
    let spots = [
        (IdentityId::R1, 1.0 / 3.0, (2.0 * (s3 - 1.0)).powf(1.0 / 3.0)),
        (IdentityId::R3, 1.0 / 3.0, s3 - 1.0),
        (IdentityId::R1, 0.5, 1.0),
        (IdentityId::R2, 0.5, s3),
        (IdentityId::R3, 0.0, 1.0),
    ];
    for (id, a, want) in spots {
        let law = catalog::ratio_law(id, a).unwrap();
        assert!(
            (law - want).abs() <= 1e-10,
            "{} at {a}: {law} vs {want}",
            id.as_str()
        );
    }
    println!("[PASS] criterion 7: three ratio laws hold to {worst:e}, spot values exact");
}

#[test]
fn criterion_08_secondary_identities() {
    let cases = [
        (IdentityId::Cor, 1e-6, 1.0 - 1e-6),
        (IdentityId::Companion, 0.0, 1.0 - 1e-6),
        (IdentityId::Cubic, 0.0, 0.9),
    ];
    let mut worst = 0.0f64;
    for (id, lo, hi) in cases {
        for t in grid(lo, hi, 200) {
            let (l, r) = catalog::sides(id, t, 1e-10).unwrap();
            worst = worst.max(rel(l.value, r.value));
        }
    }
    assert!(worst <= 1e-9, "worst secondary residual {worst:e}");
    println!("[PASS] criterion 8: corollary, companion and cubic hold to {worst:e}");
}

#[test]
fn criterion_09_map_properties() {
    let mut rng = Rng(0x9e37_79b9_7f4a_7c15);
    for _ in 0..200 {
        let p = rng.in_range(1e-3, 1.0);
        assert!((maps::beta(p) - maps::beta(1.0 / p)).abs() <= 1e-13, "inversion at {p}");
        let prod = maps::alpha(p).unwrap() * maps::alpha(1.0 / p).unwrap();
        assert!((prod - 1.0).abs() <= 1e-12, "reciprocal at {p}");
        let d = rng.in_range(1e-6, 3.0);
        let (l, r) = (maps::beta(-0.5 + d), maps::beta(-0.5 - d));
        assert!((l - r).abs() <= 1e-13 * l.abs().max(1.0), "mirror at {d}");
        let e = maps::escape_points();
        let q = rng.in_range(-0.499, e.p_star_ell);
        let a = maps::alpha(q).unwrap();
        let al = maps::alpha_ell(q).unwrap();
        assert!(
            (al - a / (a - 1.0)).abs() <= 1e-13 * al.abs().max(1.0),
            "left-branch link at {q}"
        );
    }

    for k in 1..1000 {
        let p = k as f64 / 1000.0;
        assert!(maps::dalpha_dp(p).unwrap() > 0.0);
        assert!(maps::dbeta_dp(p) > 0.0);
    }
    for k in 0..=1000 {
        let p = -0.5 + 1.5 * k as f64 / 1000.0;
        let b = maps::beta(p);
        assert!((-1e-15..=1.0 + 1e-15).contains(&b), "beta range at {p}");
    }

    let h = 1e-6;
    for &p in &[-0.4, -0.2, 0.1, 0.3, 0.5, 0.7, 0.9] {
        let da = maps::dalpha_dp(p).unwrap();
        let fd = (maps::alpha(p + h).unwrap() - maps::alpha(p - h).unwrap()) / (2.0 * h);
        assert!(((da - fd) / da).abs() <= 1e-6, "dalpha at {p}");
        let db = maps::dbeta_dp(p);
        let fd = (maps::beta(p + h) - maps::beta(p - h)) / (2.0 * h);
        assert!(((db - fd) / db).abs() <= 1e-6, "dbeta at {p}");
    }
    println!("[PASS] criterion 9: map symmetries, ranges, monotonicity and derivatives hold");
}

#[test]
fn criterion_10_elliptic_bridge() {
    let f12 = Hyp2F1Params::new(0.5, 0.5, 1.0).unwrap();
    let mut worst = 0.0f64;
    for x in grid(0.0, 0.95, 191) {
        let agm_side =
            2.0 / PI * elliptic::ellip_k(&Modulus::from_parameter(x).unwrap());
        let series = hyp2f1::eval_auto(&f12, x, 1e-13).unwrap().value;
        worst = worst.max(rel(agm_side, series));
    }
    assert!(worst <= 1e-12, "bridge residual {worst:e} inside the window");

    let mut worst_near = 0.0f64;
    let mut w = 1e-6;
    while w < 0.05 {
        let x = 1.0 - w;
        let agm_side =
            2.0 / PI * elliptic::ellip_k(&Modulus::from_parameter(x).unwrap());
        let conn = hyp2f1::eval_auto(&f12, x, 1e-13).unwrap().value;
        worst_near = worst_near.max(rel(agm_side, conn));
        w *= 1.29;
    }
    assert!(worst_near <= 1e-11, "bridge residual {worst_near:e} near the endpoint");
    println!(
        "[PASS] criterion 10: series window to {worst:e}, connection region to {worst_near:e}"
    );
}
