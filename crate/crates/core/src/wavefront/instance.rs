//! JSON instance files for the wave-front checks.
//!
//! ```json
//! {
//!   "spaces": { "X": { "dim": 2, "points": ["a"] },
//!               "Y": { "dim": 2, "points": ["p"],
//!                      "f_infinity": { "points": { "p": "p" }, "signs": [1, -1] } } },
//!   "maps":   { "f": { "source": "X", "target": "Y",
//!                      "point_map": { "a": "p" },
//!                      "differentials": { "a": [["1", "0"], ["0", "1/2"]] } } },
//!   "sets":   { "S": { "space": "Y", "cones": { "p": [[["1", "0"], ["1", "1"]]] },
//!                      "symmetrize": true } },
//!   "checks": [ { "kind": "thm1", "map": "f", "s": "S", "s_prime": "S" } ]
//! }
//! ```
//!
//! Scalars are `"p/q"` strings or JSON integers. A cone is a list of
//! generators. `symmetrize` replaces a set by `S ∪ F_∞(S)` using the space's
//! `f_infinity`. Maps are sorted by name, so files round-trip byte-identically.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::checks::{check_functoriality, check_thm1, check_thm2, CheckReport};
use super::linalg::Matrix;
use super::random::RandomInstance;
use super::{Cone, ConicalSet, FInfinity, MapModel, SpaceModel};
use crate::error::{Error, Result};
use crate::scalars::{parse_rational, rational_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Rational> {
        match self {
            Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
            Scalar::Text(s) => parse_rational(s),
        }
    }

    fn from_rational(q: &Rational) -> Scalar {
        Scalar::Text(rational_string(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FInfinitySpec {
    pub points: BTreeMap<String, String>,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub dim: usize,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_infinity: Option<FInfinitySpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub point_map: BTreeMap<String, String>,
    pub differentials: BTreeMap<String, Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    pub space: String,
    pub cones: BTreeMap<String, Vec<Vec<Vec<Scalar>>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetrize: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CheckSpec {
    Thm1 { map: String, s: String, s_prime: String },
    Thm2 { map: String, s: String, s_prime: String },
    Functoriality { f: String, g: String, s: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub spaces: BTreeMap<String, SpaceSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub sets: BTreeMap<String, SetSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

/// A loaded instance with every name resolved.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spaces: BTreeMap<String, SpaceModel>,
    pub f_infinity: BTreeMap<String, FInfinity>,
    pub maps: BTreeMap<String, MapModel>,
    pub sets: BTreeMap<String, (String, ConicalSet)>,
    pub checks: Vec<CheckSpec>,
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, what: &str, name: &str) -> Result<&'a T> {
    table
        .get(name)
        .ok_or_else(|| Error::Parse(format!("unknown {what} '{name}'")))
}

fn point_index(space: &SpaceModel, space_name: &str, label: &str) -> Result<usize> {
    space
        .index_of(label)
        .ok_or_else(|| Error::Parse(format!("space '{space_name}' has no point '{label}'")))
}

fn vector(entries: &[Scalar]) -> Result<Vec<Rational>> {
    entries.iter().map(Scalar::value).collect()
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    pub fn load(&self) -> Result<Instance> {
        let mut spaces = BTreeMap::new();
        let mut f_infinity = BTreeMap::new();
        for (name, spec) in &self.spaces {
            let space = SpaceModel::new(spec.points.clone(), spec.dim)?;
            if let Some(fi) = &spec.f_infinity {
                let mut involution: Vec<usize> = (0..space.len()).collect();
                for (a, b) in &fi.points {
                    involution[point_index(&space, name, a)?] = point_index(&space, name, b)?;
                }
                if fi.signs.len() != space.dim() {
                    return Err(Error::Dimension(format!(
                        "f_infinity of '{name}' has {} signs, dimension is {}",
                        fi.signs.len(),
                        space.dim()
                    )));
                }
                f_infinity.insert(name.clone(), FInfinity::new(involution, fi.signs.clone())?);
            }
            spaces.insert(name.clone(), space);
        }

        let mut maps = BTreeMap::new();
        for (name, spec) in &self.maps {
            let source = lookup(&spaces, "space", &spec.source)?;
            let target = lookup(&spaces, "space", &spec.target)?;
            let mut point_map = Vec::with_capacity(source.len());
            let mut differentials = Vec::with_capacity(source.len());
            for label in source.points() {
                let image = spec
                    .point_map
                    .get(label)
                    .ok_or_else(|| Error::Parse(format!("map '{name}' leaves point '{label}' unmapped")))?;
                point_map.push(point_index(target, &spec.target, image)?);
                let rows = spec
                    .differentials
                    .get(label)
                    .ok_or_else(|| Error::Parse(format!("map '{name}' has no differential at '{label}'")))?;
                let rows = rows.iter().map(|r| vector(r)).collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_rows(rows, source.dim())
                    .ok_or_else(|| Error::Dimension(format!("map '{name}' at '{label}': ragged matrix")))?;
                differentials.push(m);
            }
            maps.insert(name.clone(), MapModel::new(source.clone(), target.clone(), point_map, differentials)?);
        }

        let mut sets = BTreeMap::new();
        for (name, spec) in &self.sets {
            let space = lookup(&spaces, "space", &spec.space)?;
            let mut set = ConicalSet::empty(space);
            for (label, cones) in &spec.cones {
                let p = point_index(space, &spec.space, label)?;
                for gens in cones {
                    let gens = gens.iter().map(|g| vector(g)).collect::<Result<Vec<_>>>()?;
                    set.insert(p, Cone::new(space.dim(), gens)?)?;
                }
            }
            if spec.symmetrize {
                let fi = f_infinity.get(&spec.space).ok_or_else(|| {
                    Error::Parse(format!("set '{name}' asks for symmetrization but '{}' has no f_infinity", spec.space))
                })?;
                set = fi.symmetrize(&set)?;
            }
            sets.insert(name.clone(), (spec.space.clone(), set));
        }

        Ok(Instance {
            spaces,
            f_infinity,
            maps,
            sets,
            checks: self.checks.clone(),
        })
    }

    /// Encodes a generated instance with spaces `X`, `Y`, `Z`, maps `f`, `g`,
    /// sets `S_Y`, `S'_Y`, `S_X`, and all three checks.
    pub fn from_random(inst: &RandomInstance) -> Self {
        let mut spaces = BTreeMap::new();
        let encode_space = |s: &SpaceModel| SpaceSpec {
            dim: s.dim(),
            points: s.points().to_vec(),
            f_infinity: None,
        };
        spaces.insert("X".to_string(), encode_space(inst.f.source()));
        spaces.insert("Y".to_string(), encode_space(inst.f.target()));
        spaces.insert("Z".to_string(), encode_space(inst.g.target()));
        let mut maps = BTreeMap::new();
        maps.insert("f".to_string(), encode_map(&inst.f, "X", "Y"));
        maps.insert("g".to_string(), encode_map(&inst.g, "Y", "Z"));
        let mut sets = BTreeMap::new();
        sets.insert("S_Y".to_string(), encode_set(&inst.s_y, inst.f.target(), "Y"));
        sets.insert("S'_Y".to_string(), encode_set(&inst.s_y_prime, inst.f.target(), "Y"));
        sets.insert("S_X".to_string(), encode_set(&inst.s_x, inst.f.source(), "X"));
        let checks = vec![
            CheckSpec::Thm1 {
                map: "f".into(),
                s: "S_Y".into(),
                s_prime: "S'_Y".into(),
            },
            CheckSpec::Thm2 {
                map: "f".into(),
                s: "S_X".into(),
                s_prime: "S'_Y".into(),
            },
            CheckSpec::Functoriality {
                f: "f".into(),
                g: "g".into(),
                s: "S_X".into(),
            },
        ];
        InstanceFile {
            spaces,
            maps,
            sets,
            checks,
        }
    }
}

fn encode_map(f: &MapModel, source: &str, target: &str) -> MapSpec {
    let mut point_map = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for (x, label) in f.source().points().iter().enumerate() {
        point_map.insert(label.clone(), f.target().label(f.point_map()[x]).to_string());
        let m = f.differential(x);
        let rows = (0..m.rows())
            .map(|r| m.row(r).iter().map(Scalar::from_rational).collect())
            .collect();
        differentials.insert(label.clone(), rows);
    }
    MapSpec {
        source: source.into(),
        target: target.into(),
        point_map,
        differentials,
    }
}

fn encode_set(s: &ConicalSet, space: &SpaceModel, name: &str) -> SetSpec {
    let mut cones: BTreeMap<String, Vec<Vec<Vec<Scalar>>>> = BTreeMap::new();
    for (p, c) in s.iter() {
        let gens = c
            .generators()
            .iter()
            .map(|g| g.iter().map(Scalar::from_rational).collect())
            .collect();
        cones.entry(space.label(p).to_string()).or_default().push(gens);
    }
    SetSpec {
        space: name.into(),
        cones,
        symmetrize: false,
    }
}

impl Instance {
    fn set_on(&self, name: &str, space: &str) -> Result<&ConicalSet> {
        let (on, set) = lookup(&self.sets, "set", name)?;
        if on != space {
            return Err(Error::Dimension(format!("set '{name}' lives on '{on}', expected '{space}'")));
        }
        Ok(set)
    }

    fn map_spaces(&self, file: &InstanceFile, name: &str) -> Result<(&MapModel, String, String)> {
        let m = lookup(&self.maps, "map", name)?;
        let spec = lookup(&file.maps, "map", name)?;
        Ok((m, spec.source.clone(), spec.target.clone()))
    }

    /// Runs every check of the file, in file order.
    pub fn run(&self, file: &InstanceFile) -> Result<Vec<CheckReport>> {
        self.checks
            .iter()
            .map(|check| match check {
                CheckSpec::Thm1 { map, s, s_prime } => {
                    let (f, _, target) = self.map_spaces(file, map)?;
                    check_thm1(f, self.set_on(s, &target)?, self.set_on(s_prime, &target)?)
                }
                CheckSpec::Thm2 { map, s, s_prime } => {
                    let (f, source, target) = self.map_spaces(file, map)?;
                    check_thm2(f, self.set_on(s, &source)?, self.set_on(s_prime, &target)?)
                }
                CheckSpec::Functoriality { f, g, s } => {
                    let (fm, source, mid) = self.map_spaces(file, f)?;
                    let (gm, gsource, _) = self.map_spaces(file, g)?;
                    if gsource != mid {
                        return Err(Error::Dimension(format!("'{g}' does not start where '{f}' ends")));
                    }
                    check_functoriality(fm, gm, self.set_on(s, &source)?)
                }
            })
            .collect()
    }
}

/// Parses, loads and runs an instance file.
pub fn run_file(text: &str) -> Result<Vec<CheckReport>> {
    let file = InstanceFile::parse(text)?;
    file.load()?.run(&file)
}
