//! A finite, exact calculus of closed conical subsets of punctured cotangent
//! spaces.
//!
//! A space is a finite set of points, each with the cotangent space `ℚ^d`.
//! A conical set attaches to every point a finite union of closed, finitely
//! generated convex cones with the origin removed. A map sends points to
//! points and carries at each source point the derivative `df` (a
//! `d_Y × d_X` matrix); cotangent vectors pull back along `dfᵗ`.
//!
//! * `N_f` at `y`: the nonzero kernel of `dfᵗ` over all `x ↦ y`.
//! * `f*S` at `x`: `dfᵗ(S_{f(x)})`, defined when `N_f ∩ S = ∅`.
//! * `f_*S` at `y`: `{ξ : dfᵗξ ∈ S_x for some x ↦ y} ∪ N_f`.
//! * `S + S′`: per pair of cones at a common point, `cone(G ∪ G′)`, the
//!   closure of the Minkowski sum. The added boundary rays lie in
//!   `S ∪ S′`, so `S ∪ S′ ∪ (S + S′)` is unaffected by taking closures.
//!
//! All decisions (membership, intersection, containment in a union) are exact,
//! via double description over ℚ.

pub mod checks;
pub mod instance;
pub mod linalg;
pub mod oracle;
pub mod polycone;
pub mod random;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Rational;
use linalg::{is_zero_vec, neg, primitive, Matrix, QVec};
use polycone::{union_contains, Containment, PolyCone};

pub use checks::{check_functoriality, check_thm1, check_thm2, CheckReport, Statement};

/// Largest supported cotangent dimension.
pub const MAX_DIM: usize = 4;

pub fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A finite point set with cotangent dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceModel {
    points: Vec<String>,
    dim: usize,
}

impl SpaceModel {
    pub fn new(points: Vec<String>, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Dimension(format!(
                "cotangent dimension {dim} outside 1..={MAX_DIM}"
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = points.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(Error::Domain(format!("duplicate point label {dup:?}")));
        }
        Ok(SpaceModel { points, dim })
    }

    /// Points `p0 … p{count-1}`.
    pub fn numbered(count: usize, dim: usize) -> Result<Self> {
        SpaceModel::new((0..count).map(|i| format!("p{i}")).collect(), dim)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }
}

/// `cone(G) ∖ {0}` for nonzero generators `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    generators: Vec<QVec>,
    poly: PolyCone,
}

impl Cone {
    /// Normalizes generators to primitive integer vectors and drops repeats.
    pub fn new(dim: usize, generators: Vec<QVec>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Domain("a cone needs at least one generator".into()));
        }
        let mut gens: Vec<QVec> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dim {
                return Err(Error::Dimension(format!(
                    "generator {} has length {}, expected {dim}",
                    format_vec(&g),
                    g.len()
                )));
            }
            if is_zero_vec(&g) {
                return Err(Error::Domain("zero generator".into()));
            }
            let p = primitive(&g);
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        let poly = PolyCone::from_generators(dim, &gens);
        Ok(Cone { generators: gens, poly })
    }

    /// The cone spanned by `±` a basis of a subspace.
    pub fn subspace(dim: usize, basis: &[QVec]) -> Result<Self> {
        let gens = basis.iter().flat_map(|b| [b.clone(), neg(b)]).collect();
        Cone::new(dim, gens)
    }

    /// Nonzero points of `poly` as a cone; `None` for `{0}`.
    pub fn from_poly(poly: PolyCone) -> Option<Self> {
        if poly.is_trivial() {
            return None;
        }
        Some(Cone {
            generators: poly.signed_generators(),
            poly,
        })
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    pub fn poly(&self) -> &PolyCone {
        &self.poly
    }

    /// `v ∈ cone(G) ∖ {0}`.
    pub fn contains(&self, v: &[Rational]) -> bool {
        !is_zero_vec(v) && self.poly.contains(v)
    }

    /// A nonzero `v ∈ self ∩ (-other)`, if any.
    pub fn negation_witness(&self, other: &Cone) -> Option<QVec> {
        self.poly.intersect(&other.poly.negate()).interior_point()
    }

    /// A nonzero point of `self ∩ other`, if any.
    pub fn intersection_witness(&self, other: &Cone) -> Option<QVec> {
        self.poly.intersect(&other.poly).interior_point()
    }

    pub fn negate(&self) -> Cone {
        Cone {
            generators: self.generators.iter().map(|g| neg(g)).collect(),
            poly: self.poly.negate(),
        }
    }

    /// `M·cone(G)`; `None` when every generator is killed.
    pub fn image(&self, m: &Matrix) -> Option<Cone> {
        let gens: Vec<QVec> = self
            .generators
            .iter()
            .map(|g| m.mul_vec(g))
            .filter(|g| !is_zero_vec(g))
            .collect();
        if gens.is_empty() {
            return None;
        }
        Cone::new(m.rows(), gens).ok()
    }

    /// `{ξ : Mξ ∈ cone(G)}`; closed, so it contains `ker M`.
    pub fn preimage(&self, m: &Matrix) -> Option<Cone> {
        let mt = m.transpose();
        let ineqs = self.poly.ineqs().iter().map(|a| mt.mul_vec(a)).collect();
        let eqs = self.poly.eqs().iter().map(|e| mt.mul_vec(e)).collect();
        Cone::from_poly(PolyCone::from_constraints(m.cols(), ineqs, eqs))
    }

    /// `cone(G ∪ G′)`.
    pub fn join(&self, other: &Cone) -> Cone {
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Cone::new(self.dim(), gens).expect("nonempty, nonzero, same dimension")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format_vec(g)).collect();
        write!(f, "cone{{{}}}", gens.join(", "))
    }
}

/// A closed conical subset: per point, a finite union of cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicalSet {
    dim: usize,
    points: usize,
    cones: BTreeMap<usize, Vec<Cone>>,
}

/// A point of a conical set together with a direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: usize,
    pub direction: Option<QVec>,
}

impl Witness {
    pub fn describe(&self, space: &SpaceModel) -> String {
        match &self.direction {
            Some(v) => format!("{} at {}", format_vec(v), space.label(self.point)),
            None => format!("at {}", space.label(self.point)),
        }
    }
}

impl ConicalSet {
    pub fn empty(space: &SpaceModel) -> Self {
        ConicalSet {
            dim: space.dim(),
            points: space.len(),
            cones: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cones_at(&self, point: usize) -> &[Cone] {
        self.cones.get(&point).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Points carrying at least one cone, increasing.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.cones.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Cone)> {
        self.cones.iter().flat_map(|(&p, cs)| cs.iter().map(move |c| (p, c)))
    }

    /// Adds a cone unless one with the same extreme rays is already there.
    pub fn insert(&mut self, point: usize, cone: Cone) -> Result<()> {
        if point >= self.points {
            return Err(Error::Domain(format!(
                "point index {point} outside a space of {} points",
                self.points
            )));
        }
        if cone.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "cone of dimension {} in a set of dimension {}",
                cone.dim(),
                self.dim
            )));
        }
        let slot = self.cones.entry(point).or_default();
        if !slot.iter().any(|c| c.poly.key() == cone.poly.key()) {
            slot.push(cone);
        }
        Ok(())
    }

    pub fn union(&self, other: &ConicalSet) -> Result<ConicalSet> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.insert(p, c.clone())?;
        }
        Ok(out)
    }

    fn compatible(&self, other: &ConicalSet) -> Result<()> {
        if self.dim != other.dim || self.points != other.points {
            return Err(Error::Dimension(format!(
                "conical sets over different spaces ({} points, d={} vs {} points, d={})",
                self.points, self.dim, other.points, other.dim
            )));
        }
        Ok(())
    }

    /// `v ∈ S` at `point`.
    pub fn contains(&self, point: usize, v: &[Rational]) -> bool {
        self.cones_at(point).iter().any(|c| c.contains(v))
    }

    pub fn negate(&self) -> ConicalSet {
        let mut out = self.clone();
        for cs in out.cones.values_mut() {
            *cs = cs.iter().map(Cone::negate).collect();
        }
        out
    }

    /// First point and direction of `self ∖ other`, or `None` when
    /// `self ⊆ other`.
    pub fn subset_witness(&self, other: &ConicalSet) -> Result<Option<Witness>> {
        self.compatible(other)?;
        for (p, cone) in self.iter() {
            let cover: Vec<&PolyCone> = other.cones_at(p).iter().map(Cone::poly).collect();
            if let Containment::NotContained { witness } = union_contains(&cover, cone.poly()) {
                return Ok(Some(Witness {
                    point: p,
                    direction: witness,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_subset(&self, other: &ConicalSet) -> Result<bool> {
        Ok(self.subset_witness(other)?.is_none())
    }

    pub fn set_eq(&self, other: &ConicalSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// A common nonzero direction of `self` and `other`.
    pub fn intersection_witness(&self, other: &ConicalSet) -> Result<Option<Witness>> {
        self.compatible(other)?;
        for (p, c) in self.iter() {
            for d in other.cones_at(p) {
                if let Some(v) = c.intersection_witness(d) {
                    return Ok(Some(Witness {
                        point: p,
                        direction: Some(v),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Moves every cone along a point relabeling `perm` (`new = perm[old]`).
    pub fn relabel(&self, perm: &[usize]) -> ConicalSet {
        let mut out = ConicalSet {
            dim: self.dim,
            points: self.points,
            cones: BTreeMap::new(),
        };
        for (p, c) in self.iter() {
            out.insert(perm[p], c.clone()).expect("permutation of the same space");
        }
        out
    }
}

/// Decides whether some cone of `S` meets `-S′` at a common point away from
/// the origin.
pub fn intersects_negation(s: &ConicalSet, s_prime: &ConicalSet) -> Result<bool> {
    Ok(negation_witness(s, s_prime)?.is_some())
}

pub fn negation_witness(s: &ConicalSet, s_prime: &ConicalSet) -> Result<Option<Witness>> {
    s.intersection_witness(&s_prime.negate())
}

/// A map of finite models with derivatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapModel {
    source: SpaceModel,
    target: SpaceModel,
    point_map: Vec<usize>,
    /// `df_x`, a `d_Y × d_X` matrix per source point.
    differentials: Vec<Matrix>,
}

impl MapModel {
    pub fn new(
        source: SpaceModel,
        target: SpaceModel,
        point_map: Vec<usize>,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        if point_map.len() != source.len() || differentials.len() != source.len() {
            return Err(Error::Dimension(format!(
                "map needs one image and one differential per source point ({} points)",
                source.len()
            )));
        }
        if let Some(&bad) = point_map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Domain(format!("image index {bad} outside the target")));
        }
        for (x, m) in differentials.iter().enumerate() {
            if m.rows() != target.dim() || m.cols() != source.dim() {
                return Err(Error::Dimension(format!(
                    "differential at {} is {}x{}, expected {}x{}",
                    source.label(x),
                    m.rows(),
                    m.cols(),
                    target.dim(),
                    source.dim()
                )));
            }
        }
        Ok(MapModel {
            source,
            target,
            point_map,
            differentials,
        })
    }

    pub fn identity(space: &SpaceModel) -> Self {
        let n = space.len();
        MapModel {
            source: space.clone(),
            target: space.clone(),
            point_map: (0..n).collect(),
            differentials: vec![Matrix::identity(space.dim()); n],
        }
    }

    pub fn source(&self) -> &SpaceModel {
        &self.source
    }

    pub fn target(&self) -> &SpaceModel {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn differential(&self, x: usize) -> &Matrix {
        &self.differentials[x]
    }

    /// `dfᵗ` at `x`: cotangent vectors at `f(x)` to cotangent vectors at `x`.
    pub fn cotangent(&self, x: usize) -> Matrix {
        self.differentials[x].transpose()
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.len()).all(|y| self.point_map.contains(&y))
    }

    /// `self` followed by `g`, with `d(g∘f)_x = dg_{f(x)}·df_x`.
    pub fn then(&self, g: &MapModel) -> Result<MapModel> {
        if self.target != g.source {
            return Err(Error::Dimension("composition of maps with mismatched spaces".into()));
        }
        let point_map = self.point_map.iter().map(|&y| g.point_map[y]).collect();
        let differentials = self
            .differentials
            .iter()
            .zip(&self.point_map)
            .map(|(df, &y)| g.differentials[y].mul(df))
            .collect();
        MapModel::new(self.source.clone(), g.target.clone(), point_map, differentials)
    }
}

/// `N_f`, on the target: at each `f(x)`, the nonzero kernel of `dfᵗ_x`.
pub fn normal_directions(f: &MapModel) -> ConicalSet {
    let mut out = ConicalSet::empty(f.target());
    for x in 0..f.source().len() {
        let kernel = f.cotangent(x).null_space();
        if !kernel.is_empty() {
            let cone = Cone::subspace(f.target().dim(), &kernel).expect("nonzero basis");
            out.insert(f.point_map[x], cone).expect("valid point");
        }
    }
    out
}

/// First witness of `N_f ∩ S ≠ ∅`, naming the source point, the cone index
/// at the image point and the direction.
fn transversality_failure(f: &MapModel, s: &ConicalSet) -> Option<(usize, usize, QVec)> {
    for x in 0..f.source().len() {
        let y = f.point_map[x];
        let kernel = f.cotangent(x).null_space();
        if kernel.is_empty() {
            continue;
        }
        let sub = Cone::subspace(f.target().dim(), &kernel).expect("nonzero basis");
        for (i, c) in s.cones_at(y).iter().enumerate() {
            if let Some(v) = c.intersection_witness(&sub) {
                return Some((x, i, v));
            }
        }
    }
    None
}

/// Whether `N_f ∩ S = ∅`.
pub fn is_transverse(f: &MapModel, s: &ConicalSet) -> bool {
    transversality_failure(f, s).is_none()
}

fn check_space(set: &ConicalSet, space: &SpaceModel, role: &str) -> Result<()> {
    if set.dim() != space.dim() || set.point_count() != space.len() {
        return Err(Error::Dimension(format!(
            "{role} set does not live on the expected space"
        )));
    }
    Ok(())
}

/// `f*S = {(x, dfᵗξ) : (f(x), ξ) ∈ S}`; requires `N_f ∩ S = ∅`.
pub fn pullback(f: &MapModel, s: &ConicalSet) -> Result<ConicalSet> {
    check_space(s, f.target(), "pulled-back")?;
    if let Some((x, cone, v)) = transversality_failure(f, s) {
        return Err(Error::Transversality {
            point: f.target().label(f.point_map[x]).to_string(),
            cone,
            witness: format_vec(&v),
        });
    }
    let mut out = ConicalSet::empty(f.source());
    for x in 0..f.source().len() {
        let m = f.cotangent(x);
        for c in s.cones_at(f.point_map[x]) {
            let image = c.image(&m).expect("transversality keeps generators nonzero");
            out.insert(x, image)?;
        }
    }
    Ok(out)
}

/// `f_*S = {(f(x), ξ) : (x, dfᵗξ) ∈ S} ∪ N_f`.
pub fn pushforward(f: &MapModel, s: &ConicalSet) -> Result<ConicalSet> {
    check_space(s, f.source(), "pushed-forward")?;
    let mut out = normal_directions(f);
    for (x, c) in s.iter() {
        if let Some(pre) = c.preimage(&f.cotangent(x)) {
            out.insert(f.point_map[x], pre)?;
        }
    }
    Ok(out)
}

/// `S + S′`: at each common point, `cone(G ∪ G′)` for every pair of cones.
/// Requires `S ∩ (-S′) = ∅`, which keeps the sums off the zero section.
pub fn cone_sum(s: &ConicalSet, s_prime: &ConicalSet, space: &SpaceModel) -> Result<ConicalSet> {
    if let Some(w) = negation_witness(s, s_prime)? {
        return Err(Error::ZeroSectionCrossing {
            point: space.label(w.point).to_string(),
            witness: w.direction.as_deref().map(format_vec).unwrap_or_default(),
        });
    }
    let mut out = ConicalSet::empty(space);
    for (p, c) in s.iter() {
        for d in s_prime.cones_at(p) {
            out.insert(p, c.join(d))?;
        }
    }
    Ok(out)
}

/// `S ∪ S′ ∪ (S + S′)`.
pub fn sum_closure(s: &ConicalSet, s_prime: &ConicalSet, space: &SpaceModel) -> Result<ConicalSet> {
    s.union(s_prime)?.union(&cone_sum(s, s_prime, space)?)
}

/// The complex-conjugation action: an involution on points and a sign per
/// coordinate on directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FInfinity {
    pub point_involution: Vec<usize>,
    pub signs: Vec<i8>,
}

impl FInfinity {
    pub fn new(point_involution: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = point_involution.len();
        let involutive = point_involution
            .iter()
            .enumerate()
            .all(|(i, &j)| j < n && point_involution[j] == i);
        if !involutive || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Domain("F_inf must be an involution with signs ±1".into()));
        }
        Ok(FInfinity {
            point_involution,
            signs,
        })
    }

    fn act_vec(&self, v: &[Rational]) -> QVec {
        v.iter()
            .zip(&self.signs)
            .map(|(x, &s)| if s < 0 { -x } else { x.clone() })
            .collect()
    }

    pub fn act(&self, s: &ConicalSet) -> ConicalSet {
        let mut out = ConicalSet {
            dim: s.dim,
            points: s.points,
            cones: BTreeMap::new(),
        };
        for (p, c) in s.iter() {
            let gens = c.generators().iter().map(|g| self.act_vec(g)).collect();
            let moved = Cone::new(s.dim, gens).expect("signs preserve nonzero generators");
            out.insert(self.point_involution[p], moved).expect("same space");
        }
        out
    }

    /// `S ∪ F_∞(S)`, invariant by construction.
    pub fn symmetrize(&self, s: &ConicalSet) -> Result<ConicalSet> {
        s.union(&self.act(s))
    }

    pub fn is_invariant(&self, s: &ConicalSet) -> Result<bool> {
        self.act(s).set_eq(s)
    }
}

/// Convenience for tests and instance files: integer generator lists.
pub fn int_cone(dim: usize, gens: &[&[i64]]) -> Result<Cone> {
    let gens = gens
        .iter()
        .map(|g| g.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    Cone::new(dim, gens)
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    Matrix::from_rows(rows, cols).expect("rectangular")
}
