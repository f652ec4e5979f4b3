//! Seeded random instances for the wave-front checks.
//!
//! Instance `i` of seed `s` is drawn from ChaCha8 seeded with `s` on stream
//! `i`, so any instance can be regenerated on its own. Instances cycle through
//! four families, since fully random data rarely satisfies the hypotheses:
//!
//! 0. everything uniform;
//! 1. cones pointed into a common open half-space per point;
//! 2. as 1, with injective `dfᵗ` and the source set pulled back from a pointed
//!    set on the target (so push-forward hypotheses tend to hold);
//! 3. rank-deficient differentials and surjective point maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{dot, Matrix, QVec};
use super::oracle::random_direction;
use super::{pullback, Cone, ConicalSet, MapModel, SpaceModel};
use crate::scalars::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorConfig {
    pub max_points: usize,
    pub max_cones: usize,
    pub max_generators: usize,
    /// Generator and matrix entries are drawn from `[-entry_range, entry_range]`.
    pub entry_range: i64,
    pub max_dim: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_points: 4,
            max_cones: 3,
            max_generators: 3,
            entry_range: 3,
            max_dim: 3,
        }
    }
}

/// `X --f--> Y --g--> Z` with sets for each check.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub seed: u64,
    pub index: u64,
    pub family: u8,
    pub f: MapModel,
    pub g: MapModel,
    /// `S`, `S′` on `Y` for the pull-back check.
    pub s_y: ConicalSet,
    pub s_y_prime: ConicalSet,
    /// `S` on `X` for the projection formula and functoriality.
    pub s_x: ConicalSet,
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn entry<R: Rng>(rng: &mut R, range: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-range..=range).into())
}

fn random_space<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> SpaceModel {
    let points = rng.gen_range(1..=cfg.max_points);
    let dim = rng.gen_range(1..=cfg.max_dim);
    SpaceModel::numbered(points, dim).expect("dimension within bounds")
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> Matrix {
    let data = (0..rows).map(|_| (0..cols).map(|_| entry(rng, range)).collect()).collect();
    Matrix::from_rows(data, cols).expect("rectangular")
}

/// A cone whose generators all satisfy `c·g > 0` when `c` is given.
fn random_cone<R: Rng>(rng: &mut R, dim: usize, cfg: &GeneratorConfig, c: Option<&QVec>) -> Cone {
    let count = rng.gen_range(1..=cfg.max_generators);
    let gens = (0..count)
        .map(|_| loop {
            let g = random_direction(rng, dim, cfg.entry_range);
            match c {
                Some(c) if !dot(c, &g).is_positive_rational() => continue,
                _ => break g,
            }
        })
        .collect();
    Cone::new(dim, gens).expect("nonzero generators")
}

trait PositiveRational {
    fn is_positive_rational(&self) -> bool;
}

impl PositiveRational for Rational {
    fn is_positive_rational(&self) -> bool {
        *self > Rational::from_integer(0.into())
    }
}

fn random_set<R: Rng>(
    rng: &mut R,
    space: &SpaceModel,
    cfg: &GeneratorConfig,
    half_spaces: Option<&[QVec]>,
) -> ConicalSet {
    let mut s = ConicalSet::empty(space);
    for p in 0..space.len() {
        let cones = rng.gen_range(0..=cfg.max_cones);
        for _ in 0..cones {
            let c = half_spaces.map(|h| &h[p]);
            s.insert(p, random_cone(rng, space.dim(), cfg, c)).expect("valid point");
        }
    }
    s
}

fn random_map<R: Rng>(
    rng: &mut R,
    source: &SpaceModel,
    target: &SpaceModel,
    cfg: &GeneratorConfig,
    family: u8,
) -> MapModel {
    let mut point_map: Vec<usize> = (0..source.len()).map(|_| rng.gen_range(0..target.len())).collect();
    if family == 3 || rng.gen_bool(0.5) {
        // Surjective whenever the sizes allow it.
        let mut order: Vec<usize> = (0..source.len()).collect();
        order.shuffle(rng);
        for (y, &x) in order.iter().take(target.len()).enumerate() {
            point_map[x] = y;
        }
    }
    let differentials = (0..source.len())
        .map(|_| {
            let mut m = random_matrix(rng, target.dim(), source.dim(), cfg.entry_range);
            match family {
                2 => {
                    // dfᵗ injective needs rank d_Y; resample a bounded number of times.
                    for _ in 0..16 {
                        if m.rank() == target.dim().min(source.dim()) {
                            break;
                        }
                        m = random_matrix(rng, target.dim(), source.dim(), cfg.entry_range);
                    }
                }
                3 => {
                    let r = rng.gen_range(0..m.rows());
                    for c in 0..m.cols() {
                        m.set(r, c, Rational::from_integer(0.into()));
                    }
                }
                _ => {}
            }
            m
        })
        .collect();
    MapModel::new(source.clone(), target.clone(), point_map, differentials).expect("consistent shapes")
}

pub fn random_instance(seed: u64, index: u64, cfg: &GeneratorConfig) -> RandomInstance {
    let mut rng = rng_for(seed, index);
    let family = (index % 4) as u8;
    let y = random_space(&mut rng, cfg);
    let mut x = random_space(&mut rng, cfg);
    if family == 2 && x.dim() < y.dim() {
        x = SpaceModel::numbered(x.len(), y.dim()).expect("same bound");
    }
    let z = random_space(&mut rng, cfg);
    let f = random_map(&mut rng, &x, &y, cfg, family);
    let g = random_map(&mut rng, &y, &z, cfg, family);
    let half_y: Option<Vec<QVec>> = (family == 1 || family == 2).then(|| {
        (0..y.len())
            .map(|_| random_direction(&mut rng, y.dim(), cfg.entry_range))
            .collect()
    });
    let half_x: Option<Vec<QVec>> = (family == 1).then(|| {
        (0..x.len())
            .map(|_| random_direction(&mut rng, x.dim(), cfg.entry_range))
            .collect()
    });
    let s_y = random_set(&mut rng, &y, cfg, half_y.as_deref());
    let s_y_prime = random_set(&mut rng, &y, cfg, half_y.as_deref());
    let s_x = if family == 2 {
        let base = random_set(&mut rng, &y, cfg, half_y.as_deref());
        pullback(&f, &base).unwrap_or_else(|_| ConicalSet::empty(&x))
    } else {
        random_set(&mut rng, &x, cfg, half_x.as_deref())
    };
    RandomInstance {
        seed,
        index,
        family,
        f,
        g,
        s_y,
        s_y_prime,
        s_x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_index() {
        let cfg = GeneratorConfig::default();
        let a = random_instance(7, 3, &cfg);
        let b = random_instance(7, 3, &cfg);
        assert_eq!(a.f, b.f);
        assert_eq!(a.s_y, b.s_y);
        assert_eq!(a.s_x, b.s_x);
        let c = random_instance(7, 4, &cfg);
        assert!(a.f != c.f || a.s_y != c.s_y);
    }

    #[test]
    fn respects_limits() {
        let cfg = GeneratorConfig::default();
        for i in 0..40 {
            let inst = random_instance(11, i, &cfg);
            for space in [inst.f.source(), inst.f.target(), inst.g.target()] {
                assert!(space.len() <= cfg.max_points && space.dim() <= cfg.max_dim);
            }
            for p in inst.s_y.support() {
                assert!(inst.s_y.cones_at(p).len() <= cfg.max_cones);
            }
        }
    }
}
