//! Complete elliptic integrals through the arithmetic-geometric mean, and
//! the singular moduli x_n where K(sqrt(1-x))/K(sqrt(x)) = sqrt(n).
//!
//! K feeds two roles here: an independent route to F(1/2,1/2;1;x) via
//! (2/pi) K(sqrt(x)), checked against the series engine, and the bisection
//! target for singular moduli. The n = 9 modulus is the value the argument
//! map alpha lands on at p_nine, which is what ties this module to the
//! transformation layer.

use crate::hyp2f1::{EvalResult, Route};
use crate::{Error, Result};

/// An elliptic modulus k with its complement, kept together so k^2 + k'^2 = 1
/// holds to machine precision by construction.
#[derive(Debug, Clone, Copy)]
pub struct Modulus {
    k: f64,
    k_prime: f64,
}

impl Modulus {
    /// Builds from the modulus k itself, 0 <= k < 1.
    pub fn from_modulus(k: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) {
            return Err(Error::Domain {
                what: "modulus",
                value: k,
            });
        }
        Ok(Self {
            k,
            k_prime: libm::sqrt((1.0 - k) * (1.0 + k)),
        })
    }

    /// Builds from the parameter m = k^2, 0 <= m < 1.
    pub fn from_parameter(m: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&m) {
            return Err(Error::Domain {
                what: "parameter",
                value: m,
            });
        }
        Ok(Self {
            k: libm::sqrt(m),
            k_prime: libm::sqrt(1.0 - m),
        })
    }

    /// The modulus k.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// The complementary modulus k' = sqrt(1 - k^2).
    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }
}

/// A singular value: the modulus-squared x_n solving the ratio equation
/// K(sqrt(1-x))/K(sqrt(x)) = sqrt(n).
#[derive(Debug, Clone, Copy)]
pub struct SingularValue {
    /// The integer n of the ratio sqrt(n).
    pub n: u32,
    /// The solution x_n in (0, 1/2] (equal to 1/2 only for n = 1).
    pub x_n: f64,
}

const AGM_MAX_ITER: u32 = 64;

/// Arithmetic-geometric mean of two positive reals, iterated to relative
/// agreement 1e-15.
pub fn agm(a0: f64, b0: f64) -> Result<f64> {
    if !(a0 > 0.0 && b0 > 0.0 && a0.is_finite() && b0.is_finite()) {
        return Err(Error::Domain {
            what: "agm",
            value: if a0 > 0.0 { b0 } else { a0 },
        });
    }
    let (mut a, mut b) = (a0, b0);
    for _ in 0..AGM_MAX_ITER {
        if libm::fabs(a - b) <= 1e-15 * a {
            return Ok(0.5 * (a + b));
        }
        let an = 0.5 * (a + b);
        let bn = libm::sqrt(a * b);
        a = an;
        b = bn;
    }
    Err(Error::NoConvergence {
        terms: AGM_MAX_ITER,
        last: a - b,
    })
}

/// Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).
pub fn ellip_k(m: &Modulus) -> f64 {
    // k' > 0 by construction, so the AGM cannot fail.
    core::f64::consts::FRAC_PI_2 / agm(1.0, m.k_prime).unwrap()
}

/// K(k) packaged with the engine's route/error metadata, for callers that
/// mix AGM values with series evaluations.
pub fn ellip_k_result(m: &Modulus) -> EvalResult {
    let value = ellip_k(m);
    EvalResult {
        value,
        err_estimate: 4.0 * f64::EPSILON * value,
        route: Route::Agm,
    }
}

/// K(k')/K(k) = agm(1, k') / agm(1, k), written directly in AGM form so the
/// ratio stays finite and strictly decreasing in x = k^2 over (0, 1).
fn k_ratio(x: f64) -> f64 {
    let k = libm::sqrt(x);
    let kp = libm::sqrt(1.0 - x);
    agm(1.0, kp).unwrap() / agm(1.0, k).unwrap()
}

/// Solves K(sqrt(1-x))/K(sqrt(x)) = sqrt(n) for x by bisection on the
/// strictly decreasing ratio. `tol` bounds the residual of the ratio
/// equation at the returned point; tol >= 1e-14.
pub fn singular_modulus(n: u32, tol: f64) -> Result<SingularValue> {
    if n == 0 {
        return Err(Error::Params {
            what: "singular modulus index must be positive",
        });
    }
    if !(tol >= 1e-14) {
        return Err(Error::Params {
            what: "singular modulus tolerance must be at least 1e-14",
        });
    }
    let target = libm::sqrt(n as f64);
    // ratio(x) = K'/K runs from +inf at 0+ to 0 at 1-; the solution of
    // ratio = sqrt(n) >= 1 lies in (0, 1/2].
    let mut lo = f64::MIN_POSITIVE.max(1e-300);
    let mut hi = 0.5 + 1e-12;
    // Walk lo up from a conservative start so both endpoints bracket.
    let mut flo = k_ratio(lo) - target;
    while flo < 0.0 {
        lo *= 0.5;
        flo = k_ratio(lo) - target;
    }
    debug_assert!(flo >= 0.0 && k_ratio(hi) - target <= 0.0);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        let f = k_ratio(mid) - target;
        if libm::fabs(f) <= tol {
            return Ok(SingularValue { n, x_n: mid });
        }
        if f > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * mid {
            // Interval exhausted; accept if the residual meets tol at
            // either end, otherwise report the stall.
            let f_end = k_ratio(hi) - target;
            let best = if libm::fabs(f_end) < libm::fabs(f) { hi } else { mid };
            let r = k_ratio(best) - target;
            if libm::fabs(r) <= tol {
                return Ok(SingularValue { n, x_n: best });
            }
            return Err(Error::NoConvergence { terms: 2000, last: r });
        }
    }
    Err(Error::NoConvergence {
        terms: 2000,
        last: k_ratio(0.5 * (lo + hi)) - target,
    })
}

/// The ninth singular value in closed form,
/// x_9 = ((sqrt(2) - 3^(1/4)) / (1 + sqrt(3)))^2.
pub fn x9_closed_form() -> f64 {
    let r = (libm::sqrt(2.0) - libm::pow(3.0, 0.25)) / (1.0 + libm::sqrt(3.0));
    r * r
}
