//! Polyhedral cones in both representations, converted by the
//! double-description method.
//!
//! A [`PolyCone`] is `{x : aᵢ·x ≥ 0, eⱼ·x = 0}` and simultaneously
//! `span(L) + cone(R)` with `L` a basis of the lineality space and `R` the
//! extreme rays modulo `L`. Nothing here removes the origin; the punctured
//! semantics live one level up.

use num_traits::{Signed, Zero};

use super::linalg::{add, dot, is_zero_vec, neg, primitive, scale, sign_canonical, QVec};
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCone {
    dim: usize,
    lineality: Vec<QVec>,
    rays: Vec<QVec>,
    ineqs: Vec<QVec>,
    eqs: Vec<QVec>,
}

/// Generators of `{x ∈ ℚ^dim : c·x ≥ 0 for c in constraints}` as
/// `(lineality basis, extreme rays)`.
///
/// Incremental: each constraint either cuts the current lineality space (one
/// lineality vector becomes a ray) or splits the rays, in which case new rays
/// are formed from adjacent `(+, -)` pairs. Adjacency is the combinatorial
/// test: no third ray is tight on every constraint both are tight on.
pub fn double_description(dim: usize, constraints: &[QVec]) -> (Vec<QVec>, Vec<QVec>) {
    let one = Rational::from_integer(1.into());
    let mut lineality: Vec<QVec> = (0..dim)
        .map(|i| {
            let mut e = vec![Rational::zero(); dim];
            e[i] = one.clone();
            e
        })
        .collect();
    let mut rays: Vec<QVec> = Vec::new();
    let mut processed: Vec<&QVec> = Vec::new();

    for c in constraints {
        if is_zero_vec(c) {
            continue;
        }
        if let Some(idx) = lineality.iter().position(|l| !dot(c, l).is_zero()) {
            let mut l = lineality.remove(idx);
            let mut cl = dot(c, &l);
            if cl.is_negative() {
                l = neg(&l);
                cl = -cl;
            }
            let project = |v: &QVec| {
                let t = dot(c, v) / &cl;
                add(v, &scale(&l, &-t))
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(|r| primitive(&project(r))).collect();
            rays.push(primitive(&l));
        } else {
            let values: Vec<Rational> = rays.iter().map(|r| dot(c, r)).collect();
            let tight: Vec<Vec<bool>> = rays
                .iter()
                .map(|r| processed.iter().map(|a| dot(a, r).is_zero()).collect())
                .collect();
            let mut next: Vec<QVec> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
                for (q, vq) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                    let common: Vec<bool> = tight[p].iter().zip(&tight[q]).map(|(a, b)| *a && *b).collect();
                    let blocked = (0..rays.len()).any(|r| {
                        r != p
                            && r != q
                            && common.iter().zip(&tight[r]).all(|(need, has)| !*need || *has)
                    });
                    if !blocked {
                        let combo = add(&scale(&rays[q], vp), &scale(&rays[p], &-vq.clone()));
                        next.push(primitive(&combo));
                    }
                }
            }
            rays = next;
        }
        processed.push(c);
    }
    let mut seen = std::collections::BTreeSet::new();
    rays.retain(|r| seen.insert(r.clone()));
    (lineality, rays)
}

impl PolyCone {
    /// `{x : aᵢ·x ≥ 0, eⱼ·x = 0}`.
    pub fn from_constraints(dim: usize, ineqs: Vec<QVec>, eqs: Vec<QVec>) -> Self {
        let mut all = ineqs.clone();
        for e in &eqs {
            all.push(e.clone());
            all.push(neg(e));
        }
        let (lineality, rays) = double_description(dim, &all);
        PolyCone {
            dim,
            lineality,
            rays,
            ineqs,
            eqs,
        }
    }

    /// `cone(G)`. The H-representation is read off the dual cone, whose
    /// extreme rays are the facet normals and whose lineality space is the
    /// orthogonal complement of the span.
    pub fn from_generators(dim: usize, gens: &[QVec]) -> Self {
        let (dual_lin, dual_rays) = double_description(dim, gens);
        PolyCone::from_constraints(dim, dual_rays, dual_lin)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality(&self) -> &[QVec] {
        &self.lineality
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn ineqs(&self) -> &[QVec] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[QVec] {
        &self.eqs
    }

    /// `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// Rays followed by `±` each lineality vector: a conic generating set.
    pub fn signed_generators(&self) -> Vec<QVec> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(primitive(l));
            out.push(primitive(&neg(l)));
        }
        out
    }

    /// Membership of `v` in the closed cone (origin included).
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.ineqs.iter().all(|a| !dot(a, v).is_negative()) && self.eqs.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains_cone(&self, other: &PolyCone) -> bool {
        other.signed_generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &PolyCone) -> PolyCone {
        let ineqs = self.ineqs.iter().chain(&other.ineqs).cloned().collect();
        let eqs = self.eqs.iter().chain(&other.eqs).cloned().collect();
        PolyCone::from_constraints(self.dim, ineqs, eqs)
    }

    pub fn negate(&self) -> PolyCone {
        PolyCone {
            dim: self.dim,
            lineality: self.lineality.clone(),
            rays: self.rays.iter().map(|r| neg(r)).collect(),
            ineqs: self.ineqs.iter().map(|a| neg(a)).collect(),
            eqs: self.eqs.clone(),
        }
    }

    /// A nonzero point, if any: the sum of all rays plus every lineality
    /// vector. Lies in the relative interior.
    pub fn interior_point(&self) -> Option<QVec> {
        if self.is_trivial() {
            return None;
        }
        // Nonzero: the rays sum to a nonzero class modulo the lineality space.
        let mut s = vec![Rational::zero(); self.dim];
        for g in self.rays.iter().chain(&self.lineality) {
            s = add(&s, g);
        }
        Some(primitive(&s))
    }

    /// Half-space description `{cᵢ·x ≥ 0}` with equalities doubled.
    fn half_spaces(&self) -> Vec<QVec> {
        let mut out = self.ineqs.clone();
        for e in &self.eqs {
            out.push(e.clone());
            out.push(neg(e));
        }
        out
    }

    /// Sorted rays and sign-canonical lineality vectors. Equal keys imply
    /// equal cones (not conversely); used for deduplication only.
    pub fn key(&self) -> (Vec<QVec>, Vec<QVec>) {
        let mut rays = self.rays.clone();
        rays.sort();
        let mut lin: Vec<QVec> = self.lineality.iter().map(|l| sign_canonical(l)).collect();
        lin.sort();
        (rays, lin)
    }
}

/// Outcome of a union-containment decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Containment {
    Contained,
    /// Not contained. The witness, when found, is a nonzero point of the
    /// tested cone outside every cover cone (verified exactly).
    NotContained { witness: Option<QVec> },
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Contained)
    }
}

/// Decides `P ∖ {0} ⊆ ⋃ Dᵢ`.
///
/// Splits `P` along the half-spaces of the first cover cone that meets it:
/// the part of `P` outside `D` is the union over `i` of the pieces
/// `P ∩ {cᵢ·x ≤ 0} ∩ {c_j·x ≥ 0, j < i}`, and only pieces with a point where
/// `cᵢ·x < 0` matter. Because the remaining cover is closed, such a piece is
/// covered exactly when its closure is, so the recursion is exact.
pub fn union_contains(cover: &[&PolyCone], p: &PolyCone) -> Containment {
    if covered(cover, p) {
        return Containment::Contained;
    }
    Containment::NotContained {
        witness: find_witness(cover, p),
    }
}

fn covered(cover: &[&PolyCone], p: &PolyCone) -> bool {
    if p.is_trivial() || cover.iter().any(|d| d.contains_cone(p)) {
        return true;
    }
    let live: Vec<&PolyCone> = cover
        .iter()
        .copied()
        .filter(|d| !d.intersect(p).is_trivial())
        .collect();
    let Some((d, rest)) = live.split_first() else {
        return false;
    };
    let halves = d.half_spaces();
    for (i, c) in halves.iter().enumerate() {
        let mut ineqs: Vec<QVec> = p.ineqs.clone();
        ineqs.push(neg(c));
        ineqs.extend(halves[..i].iter().cloned());
        let piece = PolyCone::from_constraints(p.dim, ineqs, p.eqs.clone());
        let strict = piece.signed_generators().iter().any(|g| dot(c, g).is_negative());
        if strict && !covered(rest, &piece) {
            return false;
        }
    }
    true
}

fn outside(cover: &[&PolyCone], v: &[Rational]) -> bool {
    !is_zero_vec(v) && cover.iter().all(|d| !d.contains(v))
}

/// Looks for an explicit uncovered point: the tested cone's relative interior
/// point, its generators, and small perturbations of the former toward each
/// generator, descending into uncovered pieces of the first cover cone.
fn find_witness(cover: &[&PolyCone], p: &PolyCone) -> Option<QVec> {
    let mut candidates: Vec<QVec> = Vec::new();
    let base = p.interior_point()?;
    candidates.push(base.clone());
    let gens = p.signed_generators();
    candidates.extend(gens.iter().cloned());
    let mut eps = Rational::new(1.into(), 2.into());
    for _ in 0..6 {
        for g in &gens {
            candidates.push(add(&base, &scale(g, &eps)));
            candidates.push(add(g, &scale(&base, &eps)));
        }
        eps /= Rational::from_integer(4.into());
    }
    if let Some(w) = candidates.into_iter().find(|v| outside(cover, v)) {
        return Some(primitive(&w));
    }
    // Descend into pieces outside the first cover cone meeting p.
    let d = cover.iter().find(|d| !d.intersect(p).is_trivial())?;
    let halves = d.half_spaces();
    for (i, c) in halves.iter().enumerate() {
        let mut ineqs: Vec<QVec> = p.ineqs.clone();
        ineqs.push(neg(c));
        ineqs.extend(halves[..i].iter().cloned());
        let piece = PolyCone::from_constraints(p.dim, ineqs, p.eqs.clone());
        let strict = piece.signed_generators().iter().any(|g| dot(c, g).is_negative());
        if strict && !covered(cover, &piece) {
            if let Some(w) = find_witness(cover, &piece) {
                return Some(w);
            }
        }
    }
    None
}
