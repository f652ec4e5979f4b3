use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Primes below this are removed by trial division before anything else.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 16;

/// Prime factorization `[(p, e)]`, sorted by `p`. `n = 1` gives `[]`.
///
/// Trial division, then Pollard's rho with a deterministic Miller–Rabin test
/// on whatever cofactor remains. Prime factors above `2⁶⁴` are rejected.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut rest = n.clone();
    let mut out: Vec<(u64, u32)> = Vec::new();

    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };

    let mut p = 2u64;
    while p < TRIAL_DIVISION_LIMIT {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            push(p, e, &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            let p = m.to_u64().ok_or_else(|| {
                Error::Unsupported(format!("prime factor {m} exceeds 2^64"))
            })?;
            push(p, 1, &mut out);
            continue;
        }
        if let Some((root, e)) = perfect_power(&m) {
            stack.extend(std::iter::repeat_n(root, e as usize));
            continue;
        }
        let d = pollard_rho(&m).ok_or_else(|| {
            Error::Unsupported(format!("composite cofactor {m} resisted factorization"))
        })?;
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }

    out.sort_unstable();
    Ok(out)
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases: deterministic below
/// `3.3·10²⁴`, which covers every cofactor that can be reported as a factor.
fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if n == &w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `(r, e)` with `n = r^e`, `e ≥ 2` maximal over prime exponents tried.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    (2..=bits).rev().find_map(|e| {
        let r = n.nth_root(e);
        (r.pow(e) == *n && r > BigUint::one()).then_some((r, e))
    })
}

/// Steps of Floyd cycle detection before giving up on one polynomial.
const RHO_BUDGET: u32 = 1 << 18;

/// A nontrivial divisor of the odd composite `n`, found by Pollard's rho
/// with Floyd cycle detection. Only factors up to roughly `2⁴⁰` are in reach
/// of the budget.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    let mut c = BigUint::one();
    for _ in 0..8 {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        let mut steps = 0;
        while d.is_one() && steps < RHO_BUDGET {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
            steps += 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
        c += 1u32;
    }
    None
}
