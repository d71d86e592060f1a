//! Numerical kernel for verifying hypergeometric transformation identities.
//!
//! The crate is built around four layers:
//!
//! * [`special`]: gamma, log-gamma, digamma and Pochhammer symbols,
//! * [`hyp2f1`]: the Gauss 2F1 series with analytic continuation routes,
//! * [`maps`]: the cubic-theory argument/prefactor maps and their escape points,
//! * [`elliptic`]: complete elliptic integrals via the AGM and singular moduli,
//!
//! plus [`catalog`], which wires them together into named, checkable identities.
//!
//! Everything is `no_std` (transcendentals come from `libm`), so the kernel can
//! be embedded or cross-checked in constrained environments. IO lives in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

pub mod catalog;
pub mod elliptic;
mod error;
pub mod hyp2f1;
pub mod maps;
pub mod special;

pub use error::{Error, Result};
