//! A finite model of the arithmetic intersection ring of `ℙⁿ` over `Spec ℤ`.
//!
//! Scalars are [`DualLog`] pairs `(q, λ)`: a geometric degree `q ∈ ℚ` and an
//! archimedean part `λ` with `λ·λ′ = 0`. A [`ModelClass`] is a polynomial in
//! `ĥ = ĉ₁(Ō(1))` with `DualLog` coefficients, truncated at `ĥ^{n+2} = 0`.
//! Only the information that reaches `ĈH¹(Spec ℤ) = ℝ` is tracked; finite
//! place classes and currents are collapsed into the archimedean scalar.
//!
//! Push-forward sends `ĥⁿ` to `(1, 0)` and `ĥ^{n+1}` to `(0, h)` with the
//! height constant `h = ½·Σ_{p=1}^n H_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genera::{AuxSeriesR, BetaRoute, Genera};
use crate::scalars::{harmonic_data, int, rational_serde, LogNumber, Rational};
use crate::series::{todd_series, Coefficient, Series};

/// `(q, λ)` with `(q,λ)(q′,λ′) = (qq′, qλ′ + q′λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DualLog {
    #[serde(with = "rational_serde")]
    pub geometric: Rational,
    pub archimedean: LogNumber,
}

impl DualLog {
    pub fn new(geometric: Rational, archimedean: LogNumber) -> Self {
        DualLog { geometric, archimedean }
    }

    pub fn geometric(q: Rational) -> Self {
        DualLog::new(q, LogNumber::zero())
    }

    pub fn archimedean(lambda: LogNumber) -> Self {
        DualLog::new(Rational::zero(), lambda)
    }
}

impl fmt::Display for DualLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.geometric, self.archimedean)
    }
}

impl Coefficient for DualLog {
    fn zero() -> Self {
        DualLog::default()
    }
    fn one() -> Self {
        DualLog::geometric(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.geometric.is_zero() && self.archimedean.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        DualLog::new(&self.geometric + &rhs.geometric, &self.archimedean + &rhs.archimedean)
    }
    fn mul(&self, rhs: &Self) -> Self {
        DualLog::new(
            &self.geometric * &rhs.geometric,
            &rhs.archimedean.scale(&self.geometric) + &self.archimedean.scale(&rhs.geometric),
        )
    }
    fn neg(&self) -> Self {
        DualLog::new(-&self.geometric, -&self.archimedean)
    }
    fn scale(&self, q: &Rational) -> Self {
        DualLog::new(&self.geometric * q, self.archimedean.scale(q))
    }
    /// `(q, λ)⁻¹ = (1/q, -λ/q²)` for `q ≠ 0`.
    fn inverse(&self) -> Option<Self> {
        if self.geometric.is_zero() {
            return None;
        }
        let inv = self.geometric.recip();
        let arch = self.archimedean.scale(&-(&inv * &inv));
        Some(DualLog::new(inv, arch))
    }
}

/// `Σ_{j=0}^{n+1} c_j ĥʲ` with `ĥ^{n+2} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelClass {
    n: usize,
    poly: Series<DualLog>,
}

impl ModelClass {
    /// Pads or truncates `coeffs` to degrees `0 … n+1`.
    pub fn new(n: usize, coeffs: Vec<DualLog>) -> Self {
        ModelClass {
            n,
            poly: Series::new(coeffs, n + 1),
        }
    }

    pub fn zero(n: usize) -> Self {
        ModelClass::new(n, Vec::new())
    }

    pub fn one(n: usize) -> Self {
        ModelClass::new(n, vec![DualLog::one()])
    }

    /// `ĥʲ`; zero for `j > n+1`.
    pub fn h_power(n: usize, j: usize) -> Self {
        let mut coeffs = vec![DualLog::zero(); j + 1];
        coeffs[j] = DualLog::one();
        ModelClass::new(n, coeffs)
    }

    /// The purely geometric class `Σ fᵢ ĥⁱ`.
    pub fn from_series(n: usize, f: &Series<Rational>) -> Self {
        ModelClass::new(n, f.coeffs().iter().cloned().map(DualLog::geometric).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_0 … c_{n+1}`.
    pub fn coeffs(&self) -> &[DualLog] {
        self.poly.coeffs()
    }

    pub fn coeff(&self, j: usize) -> DualLog {
        self.coeffs().get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Coefficient::is_zero)
    }

    fn same_n(&self, other: &ModelClass) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "model classes on P^{} and P^{}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &ModelClass) -> Result<ModelClass> {
        self.same_n(rhs)?;
        Ok(ModelClass {
            n: self.n,
            poly: self.poly.add(&rhs.poly),
        })
    }

    pub fn sub(&self, rhs: &ModelClass) -> Result<ModelClass> {
        self.same_n(rhs)?;
        Ok(ModelClass {
            n: self.n,
            poly: self.poly.sub(&rhs.poly),
        })
    }

    pub fn mul(&self, rhs: &ModelClass) -> Result<ModelClass> {
        self.same_n(rhs)?;
        Ok(ModelClass {
            n: self.n,
            poly: self.poly.mul(&rhs.poly),
        })
    }

    /// Multiplication by a scalar pulled back from the base.
    pub fn scale_by(&self, s: &DualLog) -> ModelClass {
        ModelClass {
            n: self.n,
            poly: self.poly.scale_by(s),
        }
    }

    pub fn scale(&self, q: &Rational) -> ModelClass {
        ModelClass {
            n: self.n,
            poly: self.poly.scale(q),
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{c}·h^{j}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Solved archimedean correction of the arithmetic Todd class.
///
/// `delta[i]` is the archimedean coefficient of `ĥⁱ` (`i ≤ n`). The solve
/// matches push-forwards against the target on `k⁰ … kⁿ`; the Td part also
/// contributes `unmatched_top · k^{n+1}/(n+1)!`, which no correction of
/// degree `≤ n` can reach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToddCorrection {
    pub n: usize,
    pub route: BetaRoute,
    #[serde(with = "rational_serde::vec")]
    pub delta: Vec<Rational>,
    #[serde(with = "rational_serde")]
    pub unmatched_top: Rational,
}

/// The model ring for a fixed `ℙⁿ`.
#[derive(Debug, Clone)]
pub struct ModelRing {
    n: usize,
    height_constant: LogNumber,
    genera: Genera,
}

impl ModelRing {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_genera(n, Genera::shared().clone())
    }

    pub fn with_genera(n: usize, genera: Genera) -> Result<Self> {
        genera.check(n, 0)?;
        let sigma = harmonic_data(n).sigma;
        Ok(ModelRing {
            n,
            height_constant: LogNumber::from_rational(sigma / int(2)),
            genera,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `½·Σ_{p≤n} H_p`, the push-forward of `ĥ^{n+1}`.
    pub fn height_constant(&self) -> &LogNumber {
        &self.height_constant
    }

    pub fn one(&self) -> ModelClass {
        ModelClass::one(self.n)
    }

    pub fn h(&self) -> ModelClass {
        ModelClass::h_power(self.n, 1)
    }

    /// `a(λ)` placed in degree `j`.
    pub fn amap(&self, lambda: &LogNumber, j: usize) -> Result<ModelClass> {
        if j > self.n + 1 {
            return Err(Error::OutOfRange {
                index: j,
                order: self.n + 1,
            });
        }
        let mut coeffs = vec![DualLog::zero(); j + 1];
        coeffs[j] = DualLog::archimedean(lambda.clone());
        Ok(ModelClass::new(self.n, coeffs))
    }

    /// Geometric coefficient vector, degrees `0 … n+1`.
    pub fn zeta_map(&self, x: &ModelClass) -> Vec<Rational> {
        (0..=self.n + 1).map(|j| x.coeff(j).geometric).collect()
    }

    pub fn mul(&self, x: &ModelClass, y: &ModelClass) -> Result<ModelClass> {
        self.owns(x)?;
        x.mul(y)
    }

    fn owns(&self, x: &ModelClass) -> Result<()> {
        if x.n != self.n {
            return Err(Error::Dimension(format!(
                "class on P^{} used in the ring of P^{}",
                x.n, self.n
            )));
        }
        Ok(())
    }

    /// `f(x)` for `x` with vanishing degree-0 part; `f` needs order `≥ n+1`.
    pub fn apply_series(&self, f: &Series<Rational>, x: &ModelClass) -> Result<ModelClass> {
        self.owns(x)?;
        if !x.coeff(0).is_zero() {
            return Err(Error::Domain(
                "series argument must have zero degree-0 part".into(),
            ));
        }
        if f.order() < self.n + 1 {
            return Err(Error::Domain(format!(
                "series of order {} cannot be evaluated on P^{} (needs {})",
                f.order(),
                self.n,
                self.n + 1
            )));
        }
        let lifted: Series<DualLog> = f.truncate(self.n + 1).map(DualLog::from_rational);
        Ok(ModelClass {
            n: self.n,
            poly: lifted.compose(&x.poly)?,
        })
    }

    /// `f(k·ĥ)`.
    pub fn line_class_genus(&self, f: &Series<Rational>, k: i64) -> Result<ModelClass> {
        self.apply_series(f, &self.h().scale(&int(k)))
    }

    pub fn exp(&self, x: &ModelClass) -> Result<ModelClass> {
        self.apply_series(&Series::exp_linear(&int(1), self.n + 1), x)
    }

    /// `ch̄(Ō(k)) = exp(k·ĥ)`.
    pub fn chern_character(&self, k: i64) -> ModelClass {
        ModelClass::from_series(self.n, &Series::exp_linear(&int(k), self.n + 1))
    }

    /// `Td(ĥ)^{n+1}`, the uncorrected Todd class of the Euler-sequence split.
    pub fn todd_geometric(&self) -> ModelClass {
        ModelClass::from_series(self.n, &todd_series(self.n + 1).pow(self.n as u32 + 1))
    }

    /// Solves for the degree-`≤ n` correction.
    ///
    /// The push-forward of `e^{kĥ}·(Td(ĥ)^{n+1} + a(δ(ĥ)))` has archimedean
    /// part `h·[x^{n+1}] e^{kx}Td^{n+1} + Σ_i δ_i·k^{n-i}/(n-i)!`. In the
    /// basis `kʲ/j!` this is triangular (diagonal, in fact) in the `δ_i`.
    /// The target is `h·α(n,k) + ½β(n,k)`.
    pub fn solve_todd_correction(&self, route: BetaRoute) -> Result<ToddCorrection> {
        let n = self.n;
        let h = self.height_constant.rational_part();
        let td = todd_series(n + 1).pow(n as u32 + 1);
        // β(n,k) = Σ_j b_j kʲ/j!.
        let beta_basis: Vec<Rational> = match route {
            BetaRoute::Genus => {
                let table = self.genera.ttilde(n)?;
                (0..=n).map(|j| table.values[n - j].clone()).collect()
            }
            BetaRoute::Integral => {
                let r = AuxSeriesR::new(n).0;
                let tdr = td.truncate(n).mul(&r);
                (0..=n).map(|j| tdr.coeffs()[n - j].clone()).collect()
            }
        };
        let half = Rational::new(1.into(), 2.into());
        let mut delta = vec![Rational::zero(); n + 1];
        for j in 0..=n {
            let target = h * &td.coeffs()[n - j] + &half * &beta_basis[j];
            let from_td = h * &td.coeffs()[n + 1 - j];
            delta[n - j] = target - from_td;
        }
        Ok(ToddCorrection {
            n,
            route,
            delta,
            unmatched_top: h * &td.coeffs()[0],
        })
    }

    /// `Td(ĥ)^{n+1} + a(δ(ĥ))` with the genus-route correction.
    pub fn arithmetic_todd(&self) -> Result<ModelClass> {
        self.arithmetic_todd_with(BetaRoute::Genus)
    }

    pub fn arithmetic_todd_with(&self, route: BetaRoute) -> Result<ModelClass> {
        let correction = self.solve_todd_correction(route)?;
        let mut out = self.todd_geometric();
        for (i, d) in correction.delta.iter().enumerate() {
            out = out.add(&self.amap(&LogNumber::from_rational(d.clone()), i)?)?;
        }
        Ok(out)
    }

    /// `π_*` to `ĈH(Spec ℤ)`: `(q_n, λ_n + q_{n+1}·h)`.
    pub fn pushforward(&self, x: &ModelClass) -> Result<DualLog> {
        self.owns(x)?;
        let top = x.coeff(self.n);
        let extra = x.coeff(self.n + 1);
        Ok(DualLog::new(
            top.geometric,
            &top.archimedean + &self.height_constant.scale(&extra.geometric),
        ))
    }

    /// `π^*s = s·1`.
    pub fn pullback_from_point(&self, s: &DualLog) -> ModelClass {
        self.one().scale_by(s)
    }

    /// `π_*(x·π^*s) = π_*(x)·s`.
    pub fn projection_formula_check(&self, x: &ModelClass, s: &DualLog) -> Result<bool> {
        let lhs = self.pushforward(&self.mul(x, &self.pullback_from_point(s))?)?;
        let rhs = self.pushforward(x)?.mul(s);
        Ok(lhs == rhs)
    }

    /// `P² = -1 + 2P` for `P = π_*(T̂d)`, i.e. the geometric part of `P` is one
    /// and the square-zero ideal does the rest.
    pub fn eq35_identity_check(&self) -> Result<bool> {
        let p = self.pushforward(&self.arithmetic_todd()?)?;
        let rhs = DualLog::one().neg().add(&p.scale(&int(2)));
        Ok(p.mul(&p) == rhs)
    }

    /// `exp(a(λ)) = 1 + a(λ)` in degree `j ≥ 1`, and `exp` is additive on
    /// pairs of a-classes: `exp(a + b) = exp(a)·exp(b) = 1 + a + b`.
    pub fn thm4_exp_identity_check(&self, lambda: &LogNumber, j: usize) -> Result<bool> {
        if j == 0 {
            return Err(Error::Domain("a-class must have positive degree".into()));
        }
        let a = self.amap(lambda, j)?;
        let single = self.exp(&a)? == self.one().add(&a)?;
        // Pair the class with one in the next degree (or the same when at the top).
        let b = self.amap(&lambda.scale(&int(-3)), (j + 1).min(self.n + 1))?;
        let sum = a.add(&b)?;
        let exp_sum = self.exp(&sum)?;
        let additive = exp_sum == self.mul(&self.exp(&a)?, &self.exp(&b)?)?
            && exp_sum == self.one().add(&sum)?;
        Ok(single && additive)
    }
}
