//! Exact computation of the characteristic numbers that enter arithmetic
//! Riemann–Roch on projective space over `Spec ℤ`.
//!
//! Everything here is exact: rationals are arbitrary precision, degree-one
//! arithmetic quantities are kept as `q₀ + Σ q_p log p` ([`LogNumber`]), and
//! power series carry an explicit truncation order.
//!
//! Layout:
//!
//! * [`scalars`]: rationals, log-extended numbers, Bernoulli numbers, ζ at
//!   negative odd integers, harmonic sums, decimal rendering.
//! * [`series`]: truncated power series over an exact coefficient ring.
//! * [`genera`]: the coefficient families α, β and the secondary Todd numbers.
//! * [`chow_model`]: a finite model of the arithmetic intersection ring of ℙⁿ.
//! * [`torsion`]: L² Chern characters and the torsion numbers t_{n,k}.
//! * [`wavefront`]: a set-level calculus of closed conical sets.

pub mod chow_model;
pub mod error;
pub mod genera;
pub mod scalars;
pub mod series;
pub mod torsion;
pub mod wavefront;

pub use error::{Error, Result};
pub use scalars::{LogNumber, Rational};
pub use series::Series;
