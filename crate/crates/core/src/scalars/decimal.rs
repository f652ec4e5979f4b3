use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{factor_biguint, LogNumber, Rational};
use crate::error::{Error, Result};

pub const MAX_DIGITS: usize = 1000;

/// Fixed-point approximation `value ≈ approx / 10^scale` with
/// `|value - approx/10^scale| ≤ err / 10^scale`.
#[derive(Debug, Clone)]
struct Approx {
    approx: BigInt,
    err: BigUint,
}

/// `atanh(1/m)·10^scale`, truncated. Every kept term is floored once
/// (error < 1 each) and the dropped tail is below 2 ulps.
fn atanh_inv(m: u64, scale: &BigUint) -> Approx {
    let m = BigUint::from(m);
    let m2 = &m * &m;
    let mut power = scale / &m; // floor(10^scale / m^(2j+1))
    let mut sum = BigUint::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    while !power.is_zero() {
        sum += &power / BigUint::from(2 * j + 1);
        terms += 1;
        power /= &m2;
        j += 1;
    }
    Approx {
        approx: BigInt::from(sum),
        err: BigUint::from(terms + 2),
    }
}

/// Per-call table of `log p` approximations at one scale.
struct LogTable {
    scale: BigUint,
    cache: BTreeMap<u64, Approx>,
}

impl LogTable {
    fn new(digits: usize) -> Self {
        LogTable {
            scale: BigUint::from(10u32).pow(digits as u32),
            cache: BTreeMap::new(),
        }
    }

    /// `log p = log(p-1) + 2·atanh(1/(2p-1))`; `log(p-1)` only involves
    /// smaller primes.
    fn log_prime(&mut self, p: u64) -> Result<Approx> {
        if let Some(hit) = self.cache.get(&p) {
            return Ok(hit.clone());
        }
        let mut acc = if p == 2 {
            Approx {
                approx: BigInt::zero(),
                err: BigUint::zero(),
            }
        } else {
            let mut acc = Approx {
                approx: BigInt::zero(),
                err: BigUint::zero(),
            };
            for (q, e) in factor_biguint(&BigUint::from(p - 1))? {
                let lq = self.log_prime(q)?;
                acc.approx += &lq.approx * BigInt::from(e);
                acc.err += &lq.err * BigUint::from(e);
            }
            acc
        };
        let step = (2 * p as u128 - 1).try_into().map_err(|_| {
            Error::Unsupported(format!("log {p}: prime too large for decimal rendering"))
        })?;
        let at = atanh_inv(step, &self.scale);
        acc.approx += at.approx * 2;
        acc.err += at.err * 2u32;
        self.cache.insert(p, acc.clone());
        Ok(acc)
    }
}

/// `q · 10^scale` rounded half up, for `q ≥ 0`.
fn round_scaled(q: &Rational, scale: &BigUint) -> BigInt {
    let scaled = q * Rational::from_integer(BigInt::from(scale.clone()));
    (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Integer division of `a` by `10^g`, rounding half away from zero.
fn round_div_pow10(a: &BigInt, pow: &BigInt) -> BigInt {
    let mag = a.abs();
    let (q, r) = mag.div_rem(pow);
    let up = &r * 2 >= *pow;
    let q = if up { q + 1 } else { q };
    if a.is_negative() {
        -q
    } else {
        q
    }
}

/// Correctly rounded decimal with `digits` places after the point.
///
/// Pure rationals round half away from zero. Values with log terms are
/// irrational, so no ties occur; precision is raised until the enclosure
/// rounds unambiguously.
pub fn lognumber_to_decimal(x: &LogNumber, digits: usize) -> Result<String> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::Domain(format!(
            "digits must be in 1..={MAX_DIGITS}, got {digits}"
        )));
    }
    let target_scale = BigUint::from(10u32).pow(digits as u32);
    let rounded = if x.is_rational() {
        let mag = round_scaled(&x.rational_part().abs(), &target_scale);
        if x.rational_part().is_negative() {
            -mag
        } else {
            mag
        }
    } else {
        let mut guard = 12usize;
        loop {
            let mut table = LogTable::new(digits + guard);
            let scale_int = Rational::from_integer(BigInt::from(table.scale.clone()));
            let mut approx = (x.rational_part() * &scale_int).floor().to_integer();
            let mut err = BigInt::one();
            for (&p, c) in x.log_terms() {
                let lp = table.log_prime(p)?;
                let term = c * Rational::from_integer(lp.approx.clone());
                approx += term.round().to_integer();
                let bound = c.abs() * Rational::from_integer(BigInt::from(lp.err));
                err += bound.ceil().to_integer() + 1;
            }
            let pow = BigInt::from(10u32).pow(guard as u32);
            let lo = round_div_pow10(&(&approx - &err), &pow);
            let hi = round_div_pow10(&(&approx + &err), &pow);
            if lo == hi {
                break lo;
            }
            guard *= 2;
            if guard > 4 * MAX_DIGITS + 64 {
                return Err(Error::CrossCheck("decimal rendering did not converge".into()));
            }
        }
    };
    Ok(format_fixed(&rounded, digits))
}

fn format_fixed(scaled: &BigInt, digits: usize) -> String {
    let mag = scaled.abs().to_string();
    let padded = if mag.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}
