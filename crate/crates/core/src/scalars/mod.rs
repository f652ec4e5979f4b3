//! Exact scalars: rationals, the log-extended field for degree-one
//! quantities, and the number-theoretic constants used downstream.

mod decimal;
mod factor;
mod log_number;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use decimal::{lognumber_to_decimal, MAX_DIGITS};
pub use factor::{factor_biguint, TRIAL_DIVISION_LIMIT};
pub use log_number::{log_of_rational, LogNumber};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom`; panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {text:?}")))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// Canonical `"p/q"` text (`"p"` when the denominator is one).
pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod rational_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{parse_rational, rational_string, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        rational_string(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(qs.iter().map(rational_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

pub fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0 … B_max` with `B_1 = -1/2`, i.e. the coefficients
/// of `x/(eˣ-1) = Σ B_m xᵐ/m!`.
///
/// Uses `Σ_{j=0}^{m} C(m+1, j) B_j = 0` for `m ≥ 1`.
pub fn bernoulli_table(max: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(max + 1);
    table.push(Rational::one());
    for m in 1..=max {
        // Odd indices past one vanish; skip the O(m) sum.
        if m >= 3 && m.is_odd() {
            table.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-acc / int(m as i64 + 1));
    }
    table
}

pub fn bernoulli(m: usize) -> Rational {
    bernoulli_table(m).pop().expect("table is nonempty")
}

/// `ζ(1 - 2m) = -B_{2m} / (2m)` for `m ≥ 1`.
pub fn zeta_negative_odd(m: i64) -> Result<Rational> {
    if m < 1 {
        return Err(Error::Domain(format!("zeta_negative_odd needs m >= 1, got {m}")));
    }
    let two_m = 2 * m as usize;
    Ok(-bernoulli(two_m) / int(two_m as i64))
}

/// Harmonic numbers `H_0 … H_n` and `Σ_{p=1}^n H_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicData {
    pub n: usize,
    /// `harmonic[p] = H_p`, with `H_0 = 0`.
    pub harmonic: Vec<Rational>,
    pub sigma: Rational,
}

impl HarmonicData {
    pub fn new(n: usize) -> Self {
        let mut harmonic = Vec::with_capacity(n + 1);
        let mut h = Rational::zero();
        harmonic.push(h.clone());
        let mut sigma = Rational::zero();
        for p in 1..=n {
            h += ratio(1, p as i64);
            sigma += &h;
            harmonic.push(h.clone());
        }
        HarmonicData { n, harmonic, sigma }
    }
}

pub fn harmonic_data(n: usize) -> HarmonicData {
    HarmonicData::new(n)
}
