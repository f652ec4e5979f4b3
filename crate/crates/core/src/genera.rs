//! The coefficient families `α_{n,k}`, `β_{n,k}` and the secondary Todd
//! numbers `T̃d_m`.
//!
//! `α` is exposed under two readings: [`Genera::alpha`] takes the coefficient
//! of `xⁿ` in `e^{kx}·Td(x)^{n+1}` (this is `χ(ℙⁿ, O(k))` and matches the
//! closed form `binom(k+n, n)`), while [`Genera::alpha_literal`] takes the
//! coefficient of `x^{n+1}`.
//!
//! `β` also has two characterizations, a t-integral and a finite sum over the
//! `T̃d_m`. They agree for `n ≤ 2` and for `k = 0` but not in general;
//! [`Genera::beta_residual`] reports the difference.

use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{bounds, Error, Result};
use crate::scalars::{bernoulli_table, int, zeta_negative_odd, Rational};
use crate::series::{integrate_t_01, subtract_t0_divide_t, substitute_tx, todd_series, Series};

/// Evaluation limits. The defaults keep every single call well under a
/// second with schoolbook multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_n: usize,
    pub max_k: i64,
    pub max_m: usize,
    /// Largest number of monomials enumerated for an L² Chern character.
    pub max_enumeration: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 24,
            max_k: 48,
            max_m: 40,
            max_enumeration: 1_000_000,
        }
    }
}

/// Which characterization of `β_{n,k}` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BetaRoute {
    /// `Σ_{j=0}^n T̃d_{n-j} k^j/j!`.
    #[default]
    Genus,
    /// Coefficient of `xⁿ` in `∫₀¹ (φ(t) - φ(0))/t dt`.
    Integral,
}

impl std::fmt::Display for BetaRoute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BetaRoute::Genus => "genus",
            BetaRoute::Integral => "integral",
        })
    }
}

/// `T̃d_0 … T̃d_{max_m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondaryToddTable {
    pub max_m: usize,
    pub values: Vec<Rational>,
}

impl SecondaryToddTable {
    pub fn get(&self, m: usize) -> Option<&Rational> {
        self.values.get(m)
    }

    /// `Σ_m T̃d_m/(m+1) · T^{m+1}` to order `max_m + 1`.
    pub fn generating_series(&self) -> Series<Rational> {
        let mut coeffs = vec![Rational::zero()];
        for (m, v) in self.values.iter().enumerate() {
            coeffs.push(v / int(m as i64 + 1));
        }
        Series::new(coeffs, self.max_m + 1)
    }

    fn prefix(&self, max_m: usize) -> SecondaryToddTable {
        SecondaryToddTable {
            max_m,
            values: self.values[..=max_m].to_vec(),
        }
    }
}

/// `R(x) = Σ_{m≥1} ζ(1-2m)·x^{2m-1} / ((2m-1)·(2m-1)!)`, the t-integrated
/// form of the regular part of `1/(tx) - e^{-tx}/(1-e^{-tx})`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxSeriesR(pub Series<Rational>);

impl AuxSeriesR {
    pub fn new(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        let mut fact = int(1); // (2m-1)!
        for m in 1.. {
            let deg = 2 * m - 1;
            if deg > order {
                break;
            }
            if m > 1 {
                fact = fact * int(deg as i64 - 1) * int(deg as i64);
            }
            let zeta = zeta_negative_odd(m as i64).expect("m >= 1");
            coeffs[deg] = zeta / (int(deg as i64) * &fact);
        }
        AuxSeriesR(Series::new(coeffs, order))
    }
}

/// `F(y) = Σ_{m≥1} ζ(1-2m)/(2m-1) · y^{2m}/(2m)!` to the given order.
pub fn f_series(order: usize) -> Series<Rational> {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut fact = int(2); // (2m)!
    for m in 1.. {
        let deg = 2 * m;
        if deg > order {
            break;
        }
        if m > 1 {
            fact = fact * int(deg as i64 - 1) * int(deg as i64);
        }
        let zeta = zeta_negative_odd(m as i64).expect("m >= 1");
        coeffs[deg] = zeta / (int(2 * m as i64 - 1) * &fact);
    }
    Series::new(coeffs, order)
}

/// `g(u) = 1/u - e^{-u}/(1-e^{-u})` from its regular expansion
/// `1/2 - Σ_{m≥1} B_{2m} u^{2m-1}/(2m)!`.
pub fn regular_kernel(order: usize) -> Series<Rational> {
    let bern = bernoulli_table(order + 1);
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = Rational::new(1.into(), 2.into());
    let mut fact = int(1);
    for i in 1..=order + 1 {
        fact *= int(i as i64);
        let deg = i - 1;
        if i % 2 == 0 && deg <= order {
            coeffs[deg] = -&bern[i] / &fact;
        }
    }
    Series::new(coeffs, order)
}

/// Coefficient machinery with its caches. Cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Genera {
    bounds: Bounds,
    ttilde: Arc<OnceLock<SecondaryToddTable>>,
}

impl Default for Genera {
    fn default() -> Self {
        Self::new(Bounds::default())
    }
}

impl Genera {
    pub fn new(bounds: Bounds) -> Self {
        Genera {
            bounds,
            ttilde: Arc::new(OnceLock::new()),
        }
    }

    /// Process-wide instance with default bounds.
    pub fn shared() -> &'static Genera {
        static SHARED: OnceLock<Genera> = OnceLock::new();
        SHARED.get_or_init(Genera::default)
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn check(&self, n: usize, k: i64) -> Result<()> {
        if n > self.bounds.max_n {
            return Err(bounds("n", n as i128, self.bounds.max_n as i128));
        }
        if k.abs() > self.bounds.max_k {
            return Err(bounds("|k|", k.abs(), self.bounds.max_k));
        }
        Ok(())
    }

    /// `e^{kx}·Td(x)^{n+1}` modulo `x^{order+1}`.
    pub fn chern_todd_series(&self, n: usize, k: i64, order: usize) -> Series<Rational> {
        let td = todd_series(order).pow(n as u32 + 1);
        Series::exp_linear(&int(k), order).mul(&td)
    }

    /// `[xⁿ] e^{kx}·Td(x)^{n+1}`, equal to `χ(ℙⁿ, O(k))`.
    pub fn alpha(&self, n: usize, k: i64) -> Result<Rational> {
        self.check(n, k)?;
        Ok(self.chern_todd_series(n, k, n).coefficient(n)?.clone())
    }

    /// `[x^{n+1}] e^{kx}·Td(x)^{n+1}`.
    pub fn alpha_literal(&self, n: usize, k: i64) -> Result<Rational> {
        self.check(n, k)?;
        Ok(self.chern_todd_series(n, k, n + 1).coefficient(n + 1)?.clone())
    }

    fn full_ttilde(&self) -> &SecondaryToddTable {
        self.ttilde
            .get_or_init(|| compute_ttilde(self.bounds.max_m))
    }

    /// Secondary Todd numbers: `T̃d_m = (m+1)·[T^{m+1}] F(-log(1-T))`.
    pub fn ttilde(&self, max_m: usize) -> Result<SecondaryToddTable> {
        if max_m > self.bounds.max_m {
            return Err(bounds("max_m", max_m as i128, self.bounds.max_m as i128));
        }
        Ok(self.full_ttilde().prefix(max_m))
    }

    /// β via explicit t-integration over ℚ[t].
    pub fn beta_integral_explicit(&self, n: usize, k: i64) -> Result<Rational> {
        self.check(n, k)?;
        let kernel = substitute_tx(&regular_kernel(n));
        let phi = self.chern_todd_series(n, k, n).to_poly_t().mul(&kernel);
        let integrand = subtract_t0_divide_t(&phi);
        Ok(integrate_t_01(&integrand).coefficient(n)?.clone())
    }

    /// β via the precomputed `R(x)`: `[xⁿ] e^{kx}·Td^{n+1}·R`.
    pub fn beta_integral_closed(&self, n: usize, k: i64) -> Result<Rational> {
        self.check(n, k)?;
        let r = AuxSeriesR::new(n).0;
        Ok(self.chern_todd_series(n, k, n).mul(&r).coefficient(n)?.clone())
    }

    /// β by the integral characterization; both internal routes must agree.
    pub fn beta_integral(&self, n: usize, k: i64) -> Result<Rational> {
        let explicit = self.beta_integral_explicit(n, k)?;
        let closed = self.beta_integral_closed(n, k)?;
        if explicit != closed {
            return Err(Error::CrossCheck(format!(
                "beta_integral({n},{k}): t-integration gives {explicit}, R(x) route gives {closed}"
            )));
        }
        Ok(explicit)
    }

    /// `β_{n,k} = Σ_{j=0}^n T̃d_{n-j}·k^j/j!`.
    pub fn beta_genus(&self, n: usize, k: i64) -> Result<Rational> {
        self.check(n, k)?;
        let table = self.ttilde(n.min(self.bounds.max_m))?;
        if n > table.max_m {
            return Err(bounds("n (ttilde)", n as i128, table.max_m as i128));
        }
        let mut acc = Rational::zero();
        let mut power = int(1); // k^j / j!
        for j in 0..=n {
            if j > 0 {
                power = power * int(k) / int(j as i64);
            }
            acc += &table.values[n - j] * &power;
        }
        Ok(acc)
    }

    pub fn beta(&self, n: usize, k: i64, route: BetaRoute) -> Result<Rational> {
        match route {
            BetaRoute::Genus => self.beta_genus(n, k),
            BetaRoute::Integral => self.beta_integral(n, k),
        }
    }

    /// `beta_integral - beta_genus`.
    pub fn beta_residual(&self, n: usize, k: i64) -> Result<Rational> {
        Ok(self.beta_integral(n, k)? - self.beta_genus(n, k)?)
    }
}

fn compute_ttilde(max_m: usize) -> SecondaryToddTable {
    let order = max_m + 1;
    let one_minus_t = Series::new(vec![int(1), int(-1)], order);
    let y = one_minus_t.log().expect("constant term 1").neg();
    let composite = f_series(order).compose(&y).expect("zero constant term");
    let values = (0..=max_m)
        .map(|m| composite.coeffs()[m + 1].clone() * int(m as i64 + 1))
        .collect();
    SecondaryToddTable { max_m, values }
}

pub fn alpha(n: usize, k: i64) -> Result<Rational> {
    Genera::shared().alpha(n, k)
}

pub fn alpha_literal(n: usize, k: i64) -> Result<Rational> {
    Genera::shared().alpha_literal(n, k)
}

pub fn ttilde(max_m: usize) -> Result<SecondaryToddTable> {
    Genera::shared().ttilde(max_m)
}

pub fn beta_integral(n: usize, k: i64) -> Result<Rational> {
    Genera::shared().beta_integral(n, k)
}

pub fn beta_genus(n: usize, k: i64) -> Result<Rational> {
    Genera::shared().beta_genus(n, k)
}

pub fn beta_residual(n: usize, k: i64) -> Result<Rational> {
    Genera::shared().beta_residual(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{binomial, ratio};

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1, 0).unwrap(), int(1));
        assert_eq!(alpha(2, 3).unwrap(), int(10));
        assert_eq!(alpha(3, -2).unwrap(), int(0));
        assert_eq!(alpha_literal(1, 0).unwrap(), ratio(5, 12));
        assert_eq!(alpha_literal(0, 0).unwrap(), ratio(1, 2));
        assert_eq!(alpha_literal(1, -1).unwrap(), ratio(-1, 12));
    }

    #[test]
    fn alpha_closed_form() {
        for n in 0..=12usize {
            for k in -(n as i64)..=12 {
                let expected = if k >= 0 {
                    Rational::from_integer(binomial(n as i64 + k, n as i64))
                } else {
                    int(0)
                };
                assert_eq!(alpha(n, k).unwrap(), expected, "alpha({n},{k})");
            }
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(alpha(25, 0), Err(Error::Bounds { .. })));
        assert!(matches!(alpha(1, 49), Err(Error::Bounds { .. })));
        assert!(matches!(ttilde(41), Err(Error::Bounds { .. })));
        let small = Genera::new(Bounds { max_n: 3, ..Bounds::default() });
        assert!(small.beta_genus(4, 0).is_err());
        assert!(small.beta_genus(3, 1).is_ok());
    }

    #[test]
    fn ttilde_examples() {
        let t = ttilde(3).unwrap();
        assert_eq!(t.values, vec![int(0), ratio(-1, 12), ratio(-1, 8), ratio(-329, 2160)]);
    }

    /// Independent hand expansion of `F(-log(1-T))` to `T³`:
    /// `y = T + T²/2 + T³/3 + …`, `F(y) = -y²/24 + …`.
    #[test]
    fn ttilde_low_order_by_hand() {
        // y² = T² + T³ + …, so [T²] = -1/24 and [T³] = -1/24.
        let t = ttilde(2).unwrap();
        assert_eq!(t.values[1], int(2) * ratio(-1, 24));
        assert_eq!(t.values[2], int(3) * ratio(-1, 24));
    }

    #[test]
    fn ttilde_round_trip() {
        let table = ttilde(12).unwrap();
        let order = table.max_m + 1;
        let big_t = Series::one(order).sub(&Series::<Rational>::variable(order).neg().exp().unwrap());
        let back = table.generating_series().compose(&big_t).unwrap();
        assert_eq!(back, f_series(order));
    }

    #[test]
    fn parities() {
        let r = AuxSeriesR::new(20).0;
        let f = f_series(20);
        for i in 0..=20 {
            if i % 2 == 0 {
                assert!(r.coeffs()[i].is_zero());
            } else {
                assert!(f.coeffs()[i].is_zero());
            }
        }
        assert_eq!(r.coeffs()[1], ratio(-1, 12));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_integral(1, 0).unwrap(), ratio(-1, 12));
        assert_eq!(beta_integral(2, 1).unwrap(), ratio(-5, 24));
        assert_eq!(beta_integral(3, 1).unwrap(), ratio(-779, 2160));
        assert_eq!(beta_genus(2, 0).unwrap(), ratio(-1, 8));
        assert_eq!(beta_genus(2, -1).unwrap(), ratio(-1, 24));
        assert_eq!(beta_genus(3, 1).unwrap(), ratio(-689, 2160));
        assert_eq!(beta_residual(3, 1).unwrap(), ratio(-1, 24));
    }

    #[test]
    fn beta_routes_agree_where_consistent() {
        for n in 0..=2 {
            for k in -12..=12 {
                assert!(beta_residual(n, k).unwrap().is_zero(), "({n},{k})");
            }
        }
        for n in 0..=12 {
            assert!(beta_residual(n, 0).unwrap().is_zero(), "({n},0)");
        }
    }

    #[test]
    fn beta_internal_routes_agree() {
        let g = Genera::shared();
        for n in 0..=12 {
            for k in -12..=12 {
                assert_eq!(
                    g.beta_integral_explicit(n, k).unwrap(),
                    g.beta_integral_closed(n, k).unwrap(),
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn regular_kernel_matches_definition() {
        // u·g(u) = 1 - u·e^{-u}/(1-e^{-u}) = 1 - u/(e^u - 1).
        let order = 12;
        let g = regular_kernel(order);
        let mut ug = vec![Rational::zero()];
        ug.extend(g.coeffs()[..order].iter().cloned());
        let ug = Series::new(ug, order);

        let e = Series::<Rational>::variable(order + 1).exp().unwrap();
        let e_minus_one_over_u = Series::new(e.coeffs()[1..].to_vec(), order);
        let bernoulli_gf = e_minus_one_over_u.invert().unwrap();
        assert_eq!(ug, Series::one(order).sub(&bernoulli_gf));
    }
}
