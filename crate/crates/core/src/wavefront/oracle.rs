//! Brute-force cone oracles, independent of the double-description engine.
//!
//! Membership uses Carathéodory's theorem: `v ∈ cone(G)` iff `v` is a
//! nonnegative combination of some linearly independent subset of `G`, and
//! such a combination is unique when it exists. Every subset is tried.

use num_traits::Signed;
use rand::Rng;

use super::linalg::{add, independent, is_zero_vec, scale, solve_in_span, QVec};
use super::{Cone, ConicalSet};
use crate::scalars::Rational;

/// `v ∈ cone(gens)` (origin included), by subset enumeration.
pub fn caratheodory_member(gens: &[QVec], v: &[Rational]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let dim = v.len();
    let n = gens.len();
    assert!(n < 20, "subset enumeration is exponential");
    (1u32..(1 << n)).any(|mask| {
        let subset: Vec<QVec> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| gens[i].clone()).collect();
        subset.len() <= dim
            && independent(&subset, dim)
            && solve_in_span(&subset, v).is_some_and(|lambda| lambda.iter().all(|l| !l.is_negative()))
    })
}

/// Whether `v` (nonzero) lies in the conical set at `point`, by the oracle.
pub fn oracle_contains(set: &ConicalSet, point: usize, v: &[Rational]) -> bool {
    !is_zero_vec(v)
        && set
            .cones_at(point)
            .iter()
            .any(|c| caratheodory_member(c.generators(), v))
}

/// Integer direction with entries in `[-range, range]`, never zero.
pub fn random_direction<R: Rng>(rng: &mut R, dim: usize, range: i64) -> QVec {
    loop {
        let v: QVec = (0..dim)
            .map(|_| Rational::from_integer(rng.gen_range(-range..=range).into()))
            .collect();
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

/// A random nonzero nonnegative combination of the cone's generators, with
/// integer weights in `0..=max_weight`.
pub fn sample_in_cone<R: Rng>(rng: &mut R, cone: &Cone, max_weight: i64) -> QVec {
    loop {
        let mut v = vec![Rational::from_integer(0.into()); cone.dim()];
        for g in cone.generators() {
            let w = Rational::from_integer(rng.gen_range(0..=max_weight).into());
            v = add(&v, &scale(g, &w));
        }
        if !is_zero_vec(&v) {
            return v;
        }
    }
}
