use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{factor_biguint, parse_rational, rational_string, Rational};
use crate::error::{Error, Result};

/// An exact real `q₀ + Σ_p q_p log p` with `p` prime and all `q ∈ ℚ`.
///
/// `{1} ∪ {log p}` is linearly independent over ℚ, so structural equality of
/// the normalized representation is equality of reals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LogNumber {
    rational: Rational,
    logs: BTreeMap<u64, Rational>,
}

impl LogNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: Rational) -> Self {
        LogNumber {
            rational: q,
            logs: BTreeMap::new(),
        }
    }

    /// `coeff · log p`. The caller guarantees `p` is prime.
    pub fn log_prime(p: u64, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_log(p, coeff);
        out
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// Nonzero `log p` coefficients in increasing `p`.
    pub fn log_terms(&self) -> &BTreeMap<u64, Rational> {
        &self.logs
    }

    pub fn log_coefficient(&self, p: u64) -> Rational {
        self.logs.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        LogNumber {
            rational: &self.rational * q,
            logs: self.logs.iter().map(|(&p, c)| (p, c * q)).collect(),
        }
    }

    fn add_log(&mut self, p: u64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.logs.entry(p).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.logs.remove(&p);
        }
    }
}

/// `log q` for `q > 0`, decomposed into primes; the rational part is zero.
pub fn log_of_rational(q: &Rational) -> Result<LogNumber> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("log of non-positive rational {q}")));
    }
    let mut out = LogNumber::zero();
    let (_, numer) = q.numer().clone().into_parts();
    let (_, denom) = q.denom().clone().into_parts();
    for (p, e) in factor_biguint(&numer)? {
        out.add_log(p, Rational::from_integer(BigInt::from(e)));
    }
    for (p, e) in factor_biguint(&denom)? {
        out.add_log(p, -Rational::from_integer(BigInt::from(e)));
    }
    Ok(out)
}

impl From<Rational> for LogNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl AddAssign<&LogNumber> for LogNumber {
    fn add_assign(&mut self, rhs: &LogNumber) {
        self.rational += &rhs.rational;
        for (&p, c) in &rhs.logs {
            self.add_log(p, c.clone());
        }
    }
}

impl SubAssign<&LogNumber> for LogNumber {
    fn sub_assign(&mut self, rhs: &LogNumber) {
        self.rational -= &rhs.rational;
        for (&p, c) in &rhs.logs {
            self.add_log(p, -c.clone());
        }
    }
}

impl Add<&LogNumber> for &LogNumber {
    type Output = LogNumber;
    fn add(self, rhs: &LogNumber) -> LogNumber {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LogNumber {
    type Output = LogNumber;
    fn add(mut self, rhs: LogNumber) -> LogNumber {
        self += &rhs;
        self
    }
}

impl Sub<&LogNumber> for &LogNumber {
    type Output = LogNumber;
    fn sub(self, rhs: &LogNumber) -> LogNumber {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LogNumber {
    type Output = LogNumber;
    fn sub(mut self, rhs: LogNumber) -> LogNumber {
        self -= &rhs;
        self
    }
}

impl Neg for LogNumber {
    type Output = LogNumber;
    fn neg(self) -> LogNumber {
        self.scale(&-Rational::one())
    }
}

impl Neg for &LogNumber {
    type Output = LogNumber;
    fn neg(self) -> LogNumber {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Rational> for &LogNumber {
    type Output = LogNumber;
    fn mul(self, rhs: &Rational) -> LogNumber {
        self.scale(rhs)
    }
}

impl std::iter::Sum for LogNumber {
    fn sum<I: Iterator<Item = LogNumber>>(iter: I) -> Self {
        iter.fold(LogNumber::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl fmt::Display for LogNumber {
    /// `3/2·log 3 + 1/2·log 2 - 23/24` style, logs first, rational last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &Rational, body: Option<u64>| {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            match body {
                Some(p) if mag.is_one() => write!(f, "log {p}"),
                Some(p) => write!(f, "{mag}·log {p}"),
                None => write!(f, "{mag}"),
            }
        };
        for (&p, c) in &self.logs {
            term(f, c, Some(p))?;
        }
        if !self.rational.is_zero() {
            term(f, &self.rational, None)?;
        }
        Ok(())
    }
}

/// `{"rational": "p/q", "logs": {"2": "p/q", …}}`, logs in increasing prime.
impl Serialize for LogNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Logs<'a>(&'a BTreeMap<u64, Rational>);
        impl Serialize for Logs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (p, c) in self.0 {
                    map.serialize_entry(&p.to_string(), &rational_string(c))?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("rational", &rational_string(&self.rational))?;
        map.serialize_entry("logs", &Logs(&self.logs))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for LogNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rational: String,
            #[serde(default)]
            logs: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut out = LogNumber::from_rational(parse_rational(&raw.rational).map_err(de::Error::custom)?);
        for (p, c) in raw.logs {
            let base: Rational = parse_rational(&p).map_err(de::Error::custom)?;
            let coeff = parse_rational(&c).map_err(de::Error::custom)?;
            // Non-prime bases are decomposed, never stored.
            out += &log_of_rational(&base).map_err(de::Error::custom)?.scale(&coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn log_examples() {
        assert!(log_of_rational(&int(1)).unwrap().is_zero());
        let l54 = log_of_rational(&int(54)).unwrap();
        assert_eq!(l54.log_coefficient(2), int(1));
        assert_eq!(l54.log_coefficient(3), int(3));
        assert_eq!(l54.log_terms().len(), 2);
        assert!(l54.rational_part().is_zero());
        let third = log_of_rational(&ratio(1, 3)).unwrap();
        assert_eq!(third, LogNumber::log_prime(3, int(-1)));
        assert!(matches!(log_of_rational(&int(0)), Err(Error::Domain(_))));
        assert!(matches!(log_of_rational(&ratio(-1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = LogNumber::log_prime(2, ratio(1, 2));
        let b = &a - &a;
        assert!(b.is_zero());
        assert!(b.log_terms().is_empty());
        assert_eq!(b, LogNumber::zero());
    }

    #[test]
    fn display_and_json() {
        let x = &LogNumber::log_prime(2, int(1)) - &LogNumber::from_rational(ratio(23, 24));
        assert_eq!(x.to_string(), "log 2 - 23/24");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"rational":"-23/24","logs":{"2":"1"}}"#);
        let back: LogNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        let composite: LogNumber = serde_json::from_str(r#"{"rational":"0","logs":{"6":"1"}}"#).unwrap();
        assert_eq!(composite, log_of_rational(&int(6)).unwrap());
    }

    fn small_positive() -> impl Strategy<Value = Rational> {
        (1i64..2000, 1i64..2000).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn log_is_multiplicative(a in small_positive(), b in small_positive()) {
            let lhs = log_of_rational(&(&a * &b)).unwrap();
            let rhs = &log_of_rational(&a).unwrap() + &log_of_rational(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn q_module_laws(a in small_positive(), b in small_positive(), c in small_positive(),
                         s in -20i64..20, t in 1i64..20) {
            let (x, y, z) = (
                log_of_rational(&a).unwrap() + LogNumber::from_rational(c.clone()),
                log_of_rational(&b).unwrap(),
                log_of_rational(&c).unwrap().scale(&ratio(s, t)),
            );
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x + &y, &y + &x);
            let q = ratio(s, t);
            prop_assert_eq!((&x + &y).scale(&q), &x.scale(&q) + &y.scale(&q));
            prop_assert_eq!(&(&x - &y) + &y, x);
        }
    }
}
