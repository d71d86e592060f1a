//! The algebraic transformation maps behind the cubic-theory identity
//! F(1/3,2/3;1;beta(p)) = gamma(p) F(1/2,1/2;1;alpha(p)): the argument maps
//! alpha/beta and prefactor gamma, their Pfaff-transformed siblings
//! alpha_ell/gamma_ell, the companion pair beta_tilde/gamma_tilde, closed-form
//! derivatives, and the escape points where an argument reaches -1.
//!
//! Everything is kept in factored form. The `one_minus_*` complements are
//! separate factored expressions, exact where `1.0 - map(p)` would cancel
//! catastrophically (the arguments approach 1 at the domain ends, precisely
//! where the logarithmic 2F1 route needs an accurate complement).

use crate::{Error, Result};

/// Escape and junction points of the transformation parameter p.
#[derive(Debug, Clone, Copy)]
pub struct EscapeConstants {
    /// Negative solution of alpha(p) = -1: lower edge of convergence for the
    /// direct branch.
    pub p_star: f64,
    /// Solution of alpha_ell(p) = -1: upper edge for the Pfaff branch.
    pub p_star_ell: f64,
    /// The point where alpha(p) hits the n = 9 singular value.
    pub p_nine: f64,
}

/// alpha(p) = p^3 (2+p) / (1+2p), the square-parameter argument map.
pub fn alpha(p: f64) -> Result<f64> {
    if p == -0.5 {
        return Err(Error::Pole { what: "alpha", x: p });
    }
    Ok(p * p * p * (2.0 + p) / (1.0 + 2.0 * p))
}

/// 1 - alpha(p) in factored form: (1-p)(1+p)^3 / (1+2p).
pub fn one_minus_alpha(p: f64) -> Result<f64> {
    if p == -0.5 {
        return Err(Error::Pole { what: "alpha", x: p });
    }
    let q = 1.0 + p;
    Ok((1.0 - p) * q * q * q / (1.0 + 2.0 * p))
}

/// beta(p) = 27 p^2 (1+p)^2 / (4 (1+p+p^2)^3), total on the reals.
pub fn beta(p: f64) -> f64 {
    let q = 1.0 + p + p * p;
    let num = p * (1.0 + p);
    27.0 * num * num / (4.0 * q * q * q)
}

/// 1 - beta(p) in factored form: ((1-p)(p+2)(2p+1))^2 / (4 (1+p+p^2)^3).
pub fn one_minus_beta(p: f64) -> f64 {
    let q = 1.0 + p + p * p;
    let num = (1.0 - p) * (p + 2.0) * (2.0 * p + 1.0);
    num * num / (4.0 * q * q * q)
}

/// gamma(p) = (1+p+p^2) / sqrt(1+2p), the identity's prefactor; p > -1/2.
pub fn gamma_coef(p: f64) -> Result<f64> {
    if !(p > -0.5) {
        return Err(Error::Domain {
            what: "gamma_coef",
            value: p,
        });
    }
    Ok((1.0 + p + p * p) / libm::sqrt(1.0 + 2.0 * p))
}

/// alpha_ell(p) = -p^3 (2+p) / ((1-p^2)(1+p)^2): the Pfaff image of alpha,
/// satisfying alpha_ell = alpha/(alpha - 1). Domain -1 < p < 1.
pub fn alpha_ell(p: f64) -> Result<f64> {
    if !(-1.0 < p && p < 1.0) {
        return Err(Error::Domain {
            what: "alpha_ell",
            value: p,
        });
    }
    let q = 1.0 + p;
    Ok(-(p * p * p) * (2.0 + p) / ((1.0 - p * p) * q * q))
}

/// gamma_ell(p) = (1+p+p^2) / ((1+p) sqrt(1-p^2)), the Pfaff-branch
/// prefactor; satisfies gamma_ell = gamma_coef / sqrt(1 - alpha).
/// Domain -1 < p < 1.
pub fn gamma_ell(p: f64) -> Result<f64> {
    if !(-1.0 < p && p < 1.0) {
        return Err(Error::Domain {
            what: "gamma_ell",
            value: p,
        });
    }
    Ok((1.0 + p + p * p) / ((1.0 + p) * libm::sqrt(1.0 - p * p)))
}

/// beta_tilde(p) = 27 p (1+p)^4 / (2 (1+4p+p^2)^3), the companion identity's
/// cube-side argument. Pole where 1+4p+p^2 vanishes (p = -2 +- sqrt(3)).
pub fn beta_tilde(p: f64) -> Result<f64> {
    let d = 1.0 + 4.0 * p + p * p;
    if d == 0.0 {
        return Err(Error::Pole {
            what: "beta_tilde",
            x: p,
        });
    }
    let q = 1.0 + p;
    let q2 = q * q;
    Ok(27.0 * p * q2 * q2 / (2.0 * d * d * d))
}

/// 1 - beta_tilde(p) in factored form: (1-p)^4 (2p+1)(p+2) / (2 (1+4p+p^2)^3).
pub fn one_minus_beta_tilde(p: f64) -> Result<f64> {
    let d = 1.0 + 4.0 * p + p * p;
    if d == 0.0 {
        return Err(Error::Pole {
            what: "beta_tilde",
            x: p,
        });
    }
    let q = 1.0 - p;
    let q2 = q * q;
    Ok(q2 * q2 * (2.0 * p + 1.0) * (p + 2.0) / (2.0 * d * d * d))
}

/// gamma_tilde(p) = (1+4p+p^2) / sqrt(1+2p), the companion prefactor;
/// p > -1/2.
pub fn gamma_tilde(p: f64) -> Result<f64> {
    if !(p > -0.5) {
        return Err(Error::Domain {
            what: "gamma_tilde",
            value: p,
        });
    }
    Ok((1.0 + 4.0 * p + p * p) / libm::sqrt(1.0 + 2.0 * p))
}

/// d alpha / dp = 6 p^2 (1+p)^2 / (1+2p)^2.
pub fn dalpha_dp(p: f64) -> Result<f64> {
    if p == -0.5 {
        return Err(Error::Pole {
            what: "dalpha_dp",
            x: p,
        });
    }
    let q = p * (1.0 + p) / (1.0 + 2.0 * p);
    Ok(6.0 * q * q)
}

/// d beta / dp = 27 p (1-p^2)(1+2p)(2+p) / (4 (1+p+p^2)^4).
pub fn dbeta_dp(p: f64) -> f64 {
    let q = 1.0 + p + p * p;
    let q2 = q * q;
    27.0 * p * (1.0 - p * p) * (1.0 + 2.0 * p) * (2.0 + p) / (4.0 * q2 * q2)
}

/// The three escape constants from their nested radicals, cross-checked
/// against the defining equation alpha(p_star) = -1 in debug builds.
pub fn escape_points() -> EscapeConstants {
    let sqrt3 = libm::sqrt(3.0);
    let c = EscapeConstants {
        p_star: 0.5 * (-1.0 + libm::sqrt(2.0 * sqrt3) - sqrt3),
        p_star_ell: 0.5 * (libm::sqrt(3.0 + 2.0 * sqrt3) - 1.0),
        p_nine: 0.5 * (libm::sqrt(6.0 * sqrt3 - 9.0) - 1.0),
    };
    debug_assert!(libm::fabs(alpha(c.p_star).unwrap() + 1.0) < 1e-13);
    debug_assert!(libm::fabs(alpha_ell(c.p_star_ell).unwrap() + 1.0) < 1e-13);
    c
}

/// Argument and multiplier of the cubic transformation
/// F(1/3,2/3;1; 1-((1-x)/(1+2x))^3) = (1+2x) F(1/3,2/3;1; x^3):
/// returns (left argument, multiplier).
pub fn cubic_arg_map(x: f64) -> (f64, f64) {
    (1.0 - cubic_left_complement(x), 1.0 + 2.0 * x)
}

/// One minus the cubic transformation's left argument, ((1-x)/(1+2x))^3,
/// exact where the plain subtraction would cancel (x -> 1).
pub fn cubic_left_complement(x: f64) -> f64 {
    let r = (1.0 - x) / (1.0 + 2.0 * x);
    r * r * r
}
