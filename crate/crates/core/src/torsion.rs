//! L² Chern characters of `π_*O(k)` on `ℙⁿ` and the homogeneous torsion
//! numbers `t_{n,k}`, `t′_{n,k}`.
//!
//! Sections of `O(k)` carry the L² metric in which the monomials are
//! orthogonal with `‖x^a‖² = a₀!…a_n!/(k+n)!`. The degree-one Chern character
//! is then `-½ Σ_a log ‖x^a‖²`, a combination of logs of primes.
//!
//! Two routes to `t` are compared:
//!
//! * the Riemann–Roch route, `t′ = ĉh⁽¹⁾ - π_*(ĉh·T̂d)⁽¹⁾`;
//! * the closed table, `t_{n,0} = -½Σ_n` and `t_{n,k} = -½β_{n,k}` for
//!   `-n ≤ k < 0`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{bounds, Error, Result};
use crate::genera::{BetaRoute, Genera};
use crate::scalars::{
    binomial, factorial, harmonic_data, int, log_of_rational, rational_serde, LogNumber, Rational,
};

/// Exponent vector `(a₀, …, a_n)` of a degree-`k` monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&a| a as u64).sum()
    }
}

/// All monomials of degree `k` in `n+1` variables, in reverse lexicographic
/// order of the exponent vector (`x₀ᵏ` first). Streams; nothing is stored.
#[derive(Debug, Clone)]
pub struct Monomials {
    current: Option<Vec<u32>>,
}

impl Monomials {
    pub fn new(n: usize, k: u32) -> Self {
        let mut first = vec![0; n + 1];
        first[0] = k;
        Monomials { current: Some(first) }
    }
}

impl Iterator for Monomials {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.current.take()?;
        let out = Monomial::new(cur.clone());
        // Successor: move one unit from the last nonzero entry before the tail
        // to its right neighbour and push the tail back onto that neighbour.
        let len = cur.len();
        let mut next = cur;
        if let Some(i) = (0..len.saturating_sub(1)).rev().find(|&i| next[i] > 0) {
            let tail = next[len - 1];
            next[len - 1] = 0;
            next[i] -= 1;
            next[i + 1] = tail + 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

/// `binom(k+n, n)`, the number of degree-`k` monomials in `n+1` variables.
pub fn monomial_count(n: usize, k: u64) -> BigInt {
    binomial(k as i64 + n as i64, n as i64)
}

/// `‖x^a‖² = a₀!…a_n!/(k+n)!`.
pub fn l2_norm_squared(n: usize, k: u64, a: &Monomial) -> Result<Rational> {
    if a.exponents().len() != n + 1 {
        return Err(Error::Dimension(format!(
            "monomial has {} exponents, P^{n} needs {}",
            a.exponents().len(),
            n + 1
        )));
    }
    if a.degree() != k {
        return Err(Error::Domain(format!(
            "exponents sum to {}, expected {k}",
            a.degree()
        )));
    }
    let numer = a
        .exponents()
        .iter()
        .fold(num_bigint::BigUint::one(), |acc, &e| acc * factorial(e as u64));
    Ok(Rational::new(numer.into(), factorial(k + n as u64).into()))
}

/// `Σ_{p≤n} H_p`.
fn sigma(n: usize) -> Rational {
    harmonic_data(n).sigma
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `log m!`.
fn log_factorial(m: u64) -> Result<LogNumber> {
    log_of_rational(&Rational::from_integer(factorial(m).into()))
}

/// Torsion-number computations sharing one coefficient cache.
#[derive(Debug, Clone, Default)]
pub struct TorsionNumbers {
    genera: Genera,
}

impl TorsionNumbers {
    pub fn new(genera: Genera) -> Self {
        TorsionNumbers { genera }
    }

    pub fn shared() -> TorsionNumbers {
        TorsionNumbers::new(Genera::shared().clone())
    }

    pub fn genera(&self) -> &Genera {
        &self.genera
    }

    /// `ĉh(π_*O(k))⁽¹⁾ = -½ Σ_a log ‖x^a‖²` for `k ≥ 0`.
    ///
    /// The monomials are streamed once to tally how often each exponent
    /// occurs; the logs are assembled from those tallies.
    pub fn chh1_l2(&self, n: usize, k: u64) -> Result<LogNumber> {
        self.genera.check(n, k as i64)?;
        let count = monomial_count(n, k);
        let limit = self.genera.bounds().max_enumeration;
        if count > BigInt::from(limit) {
            let value = i128::try_from(count).unwrap_or(i128::MAX);
            return Err(bounds("monomial count", value, limit as i128));
        }
        let mut tally = vec![0u64; k as usize + 1];
        let mut seen = 0u64;
        for m in Monomials::new(n, k as u32) {
            for &a in m.exponents() {
                tally[a as usize] += 1;
            }
            seen += 1;
        }
        debug_assert_eq!(BigInt::from(seen), count);
        let mut sum_logs = log_factorial(k + n as u64)?.scale(&int(seen as i64));
        for (a, &times) in tally.iter().enumerate() {
            if times > 0 && a > 1 {
                sum_logs -= &log_factorial(a as u64)?.scale(&int(times as i64));
            }
        }
        Ok(sum_logs.scale(&half()))
    }

    /// The L² Chern character in the primed convention: `0` for `-n ≤ k ≤ 0`
    /// (the cohomology is `0` or `ℤ` with `‖1‖ = 1`), the L² value for `k ≥ 1`.
    pub fn chh1_primed(&self, n: usize, k: i64) -> Result<LogNumber> {
        self.check_range(n, k)?;
        if k <= 0 {
            return Ok(LogNumber::zero());
        }
        self.chh1_l2(n, k as u64)
    }

    fn check_range(&self, n: usize, k: i64) -> Result<()> {
        if k < -(n as i64) {
            return Err(Error::Unsupported(format!(
                "k = {k} < -n = -{n}: Serre-dual metrics are not modeled"
            )));
        }
        self.genera.check(n, k)
    }

    /// `π_*(ĉh(Ō(k))·T̂d)⁽¹⁾ = ½(α_{n,k}Σ_n + β_{n,k})`.
    pub fn pushforward_arch(&self, n: usize, k: i64, route: BetaRoute) -> Result<LogNumber> {
        let alpha = self.genera.alpha(n, k)?;
        let beta = self.genera.beta(n, k, route)?;
        Ok(LogNumber::from_rational((alpha * sigma(n) + beta) * half()))
    }

    /// `t′_{n,k} = ĉh′⁽¹⁾ - π_*(ĉh·T̂d)⁽¹⁾`.
    pub fn t_primed_grr(&self, n: usize, k: i64, route: BetaRoute) -> Result<LogNumber> {
        let chh1 = self.chh1_primed(n, k)?;
        Ok(chh1 - self.pushforward_arch(n, k, route)?)
    }

    /// `t_{n,k}` from `t′`: adds `½ log n!` at `k = 0`.
    pub fn t_value(&self, n: usize, k: i64, route: BetaRoute) -> Result<LogNumber> {
        let primed = self.t_primed_grr(n, k, route)?;
        if k == 0 {
            return Ok(primed + log_factorial(n as u64)?.scale(&half()));
        }
        Ok(primed)
    }

    /// Closed-form `t_{n,k}` for `-n ≤ k ≤ 0`.
    pub fn t_table_value(&self, n: usize, k: i64) -> Result<LogNumber> {
        if k > 0 || k < -(n as i64) {
            return Err(Error::Domain(format!(
                "table covers -{n} <= k <= 0, got k = {k}"
            )));
        }
        let value = if k == 0 {
            -sigma(n) * half()
        } else {
            -self.genera.beta_genus(n, k)? * half()
        };
        Ok(LogNumber::from_rational(value))
    }

    /// `[(0, t_{n,0}), (-1, t_{n,-1}), …, (-n, t_{n,-n})]`.
    pub fn t_table(&self, n: usize) -> Result<Vec<(i64, LogNumber)>> {
        (0..=n as i64)
            .map(|j| Ok((-j, self.t_table_value(n, -j)?)))
            .collect()
    }

    /// Residuals of `t_{n,k} = ±t_{n,-k-n-1}` on the table, for the printed
    /// sign `(-1)ⁿ` and for the flipped sign `(-1)^{n+1}`.
    pub fn duality_residuals(&self, n: usize, k: i64) -> Result<(LogNumber, LogNumber)> {
        if k > -1 || k < -(n as i64) {
            return Err(Error::Domain(format!(
                "duality pairs need -{n} <= k <= -1, got k = {k}"
            )));
        }
        let lhs = self.t_table_value(n, k)?;
        let rhs = self.t_table_value(n, -k - n as i64 - 1)?;
        let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
        let printed = &lhs - &rhs.scale(&sign);
        let flipped = &lhs + &rhs.scale(&sign);
        Ok((printed, flipped))
    }

    pub fn report(&self, n: usize, k: i64, route: BetaRoute) -> Result<TorsionReport> {
        self.check_range(n, k)?;
        let alpha = self.genera.alpha(n, k)?;
        let beta_integral = self.genera.beta_integral(n, k)?;
        let beta_genus = self.genera.beta_genus(n, k)?;
        let chh1 = self.chh1_primed(n, k)?;
        let arch = |b: &Rational| LogNumber::from_rational((&alpha * sigma(n) + b) * half());
        let t_grr_genus = &chh1 - &arch(&beta_genus);
        let t_grr_integral = &chh1 - &arch(&beta_integral);
        let (pushforward_arch, t_grr) = match route {
            BetaRoute::Genus => (arch(&beta_genus), t_grr_genus.clone()),
            BetaRoute::Integral => (arch(&beta_integral), t_grr_integral.clone()),
        };
        let t_value = if k == 0 {
            &t_grr + &log_factorial(n as u64)?.scale(&half())
        } else {
            t_grr.clone()
        };
        let t_table = (k <= 0).then(|| self.t_table_value(n, k)).transpose()?;
        let table_residual = t_table.as_ref().map(|t| &t_value - t);
        let (duality_residual_even, duality_residual_odd) = if k <= -1 {
            let (printed, flipped) = self.duality_residuals(n, k)?;
            (Some(printed), Some(flipped))
        } else {
            (None, None)
        };
        Ok(TorsionReport {
            n,
            k,
            beta_route: route,
            alpha,
            beta_integral,
            beta_genus,
            chh1,
            pushforward_arch,
            t_grr,
            t_grr_genus,
            t_grr_integral,
            t_value,
            table_match: table_residual.as_ref().map(LogNumber::is_zero),
            t_table,
            table_residual,
            duality_residual_even,
            duality_residual_odd,
        })
    }

    /// Reports for `k = -n … n`, in increasing `k`.
    pub fn consistency_report(&self, n: usize, route: BetaRoute) -> Result<Vec<TorsionReport>> {
        (-(n as i64)..=n as i64).map(|k| self.report(n, k, route)).collect()
    }
}

/// Everything known about one `(n, k)` cell.
///
/// `t_grr` is `t′` under `beta_route`; `t_value` converts it to the unprimed
/// convention. `table_residual = t_value - t_table` where the table exists.
/// The duality residuals are for the sign `(-1)ⁿ` (`_even`) and
/// `(-1)^{n+1}` (`_odd`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub n: usize,
    pub k: i64,
    pub beta_route: BetaRoute,
    #[serde(with = "rational_serde")]
    pub alpha: Rational,
    #[serde(with = "rational_serde")]
    pub beta_integral: Rational,
    #[serde(with = "rational_serde")]
    pub beta_genus: Rational,
    pub chh1: LogNumber,
    pub pushforward_arch: LogNumber,
    pub t_grr: LogNumber,
    pub t_grr_genus: LogNumber,
    pub t_grr_integral: LogNumber,
    pub t_value: LogNumber,
    pub t_table: Option<LogNumber>,
    pub table_residual: Option<LogNumber>,
    pub table_match: Option<bool>,
    pub duality_residual_even: Option<LogNumber>,
    pub duality_residual_odd: Option<LogNumber>,
}

impl TorsionReport {
    /// `t_grr == chh1 - pushforward_arch`.
    pub fn is_consistent(&self) -> bool {
        self.t_grr == &self.chh1 - &self.pushforward_arch
    }
}

/// `k ≥ -n`; below that the torsion numbers need Serre-dual metrics.
pub fn is_supported(n: usize, k: i64) -> bool {
    k >= -(n as i64)
}

pub fn chh1_l2(n: usize, k: u64) -> Result<LogNumber> {
    TorsionNumbers::shared().chh1_l2(n, k)
}

pub fn t_table(n: usize) -> Result<Vec<(i64, LogNumber)>> {
    TorsionNumbers::shared().t_table(n)
}

pub fn t_primed_grr(n: usize, k: i64, route: BetaRoute) -> Result<LogNumber> {
    TorsionNumbers::shared().t_primed_grr(n, k, route)
}

pub fn duality_residuals(n: usize, k: i64) -> Result<(LogNumber, LogNumber)> {
    TorsionNumbers::shared().duality_residuals(n, k)
}
