//! Finite-field algebra for the permutation trinomials
//! `f_{a,b}(X) = X(1 + aX^{q(q-1)} + bX^{2(q-1)})` over `F_{q²}`.
//!
//! - [`ff`]: the tower `F_p ⊂ F_q ⊂ F_{q²}` and element arithmetic
//! - [`upoly`]: dense univariate polynomials, gcd, resultant, discriminant
//! - [`bipoly`]: bivariate polynomials, the collision curves and their factor patterns
//! - [`perm`]: permutation verdicts on `F_{q²}` and on `μ_{q+1}`
//! - [`conds`]: closed-form permutation conditions
//! - [`scan`]: exhaustive and sampled verification with report output
//! - [`selftest`]: the acceptance checks shared by the CLI and the test suite

pub mod bipoly;
pub mod conds;
pub mod error;
pub mod ff;
pub mod perm;
pub mod scan;
pub mod selftest;
pub mod upoly;

pub use bipoly::{BivarPoly, CurvePair, FactorPattern, FactorWitness, ResultantComparison};
pub use conds::ConditionReport;
pub use error::{Error, Result};
pub use ff::{Elem, Layer, Quadratic, Tower};
pub use perm::{Method, TrinomialParams, Verdict, Witness};
pub use scan::{Format, PairRecord, ScanOptions, ScanReport};
pub use upoly::Poly;
