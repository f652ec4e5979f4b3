//! Verification of the set-level laws on concrete instances.
//!
//! A report lists hypotheses and statements. When a hypothesis fails, the
//! statements depending on it are not evaluated (they hold vacuously), so a
//! report passes iff every evaluated statement holds.

use serde::Serialize;

use super::{
    negation_witness, normal_directions, pullback, pushforward, sum_closure, ConicalSet, MapModel,
    SpaceModel, Witness,
};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub label: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Statement {
    fn from_witness(label: &str, w: Option<Witness>, space: &SpaceModel) -> Statement {
        Statement {
            label: label.to_string(),
            holds: w.is_none(),
            witness: w.map(|w| w.describe(space)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub hypotheses: Vec<Statement>,
    pub statements: Vec<Statement>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            hypotheses: Vec::new(),
            statements: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn passed(&self) -> bool {
        self.statements.iter().all(|s| s.holds)
    }

    fn hypothesis(&mut self, s: Statement) -> bool {
        let holds = s.holds;
        self.hypotheses.push(s);
        holds
    }

    fn statement(&mut self, s: Statement) -> bool {
        let holds = s.holds;
        self.statements.push(s);
        holds
    }
}

fn subset(label: &str, a: &ConicalSet, b: &ConicalSet, space: &SpaceModel) -> Result<Statement> {
    Ok(Statement::from_witness(label, a.subset_witness(b)?, space))
}

/// Pull-back of a sum: with `S ∩ (-S′) = ∅` and `N_f ∩ (S ∪ S′ ∪ (S+S′)) = ∅`,
/// checks `f*S ∩ (-f*S′) = ∅` and
/// `f*(S ∪ S′ ∪ (S+S′)) = f*S ∪ f*S′ ∪ (f*S + f*S′)`. `S`, `S′` live on the
/// target of `f`.
pub fn check_thm1(f: &MapModel, s: &ConicalSet, s_prime: &ConicalSet) -> Result<CheckReport> {
    let (x, y) = (f.source(), f.target());
    let mut report = CheckReport::new("thm1");
    let disjoint = Statement::from_witness("S ∩ -S' = ∅", negation_witness(s, s_prime)?, y);
    if !report.hypothesis(disjoint) {
        return Ok(report);
    }
    let union = sum_closure(s, s_prime, y)?;
    let nf = normal_directions(f);
    let transverse = Statement::from_witness(
        "N_f ∩ (S ∪ S' ∪ (S+S')) = ∅",
        nf.intersection_witness(&union)?,
        y,
    );
    if !report.hypothesis(transverse) {
        return Ok(report);
    }
    let ps = pullback(f, s)?;
    let pt = pullback(f, s_prime)?;
    let lemma = Statement::from_witness("f*S ∩ -f*S' = ∅", negation_witness(&ps, &pt)?, x);
    if !report.statement(lemma) {
        return Ok(report);
    }
    let lhs = pullback(f, &union)?;
    let rhs = sum_closure(&ps, &pt, x)?;
    report.statement(subset("f*(S ∪ S' ∪ (S+S')) ⊆ f*S ∪ f*S' ∪ (f*S+f*S')", &lhs, &rhs, x)?);
    report.statement(subset("f*S ∪ f*S' ∪ (f*S+f*S') ⊆ f*(S ∪ S' ∪ (S+S'))", &rhs, &lhs, x)?);
    Ok(report)
}

/// Projection formula: `S` on the source, `S′` on the target. With
/// `f_*S ∩ (-S′) = ∅`, checks `N_f ∩ S′ = ∅`, `S ∩ (-f*S′) = ∅`, and
/// `f_*(S ∪ f*S′ ∪ (S + f*S′)) ⊆ f_*S ∪ S′ ∪ (f_*S + S′)`.
pub fn check_thm2(f: &MapModel, s: &ConicalSet, s_prime: &ConicalSet) -> Result<CheckReport> {
    let (x, y) = (f.source(), f.target());
    let mut report = CheckReport::new("thm2");
    let push = pushforward(f, s)?;
    let hyp = Statement::from_witness("f_*S ∩ -S' = ∅", negation_witness(&push, s_prime)?, y);
    if !report.hypothesis(hyp) {
        return Ok(report);
    }
    let nf = normal_directions(f);
    let transverse = Statement::from_witness("N_f ∩ S' = ∅", nf.intersection_witness(s_prime)?, y);
    if !report.statement(transverse) {
        return Ok(report);
    }
    let pt = pullback(f, s_prime)?;
    let disjoint = Statement::from_witness("S ∩ -f*S' = ∅", negation_witness(s, &pt)?, x);
    if !report.statement(disjoint) {
        return Ok(report);
    }
    let lhs = pushforward(f, &sum_closure(s, &pt, x)?)?;
    let rhs = sum_closure(&push, s_prime, y)?;
    report.statement(subset("f_*(S ∪ f*S' ∪ (S+f*S')) ⊆ f_*S ∪ S' ∪ (f_*S+S')", &lhs, &rhs, y)?);
    Ok(report)
}

/// `(g∘f)_*S ⊆ g_*(f_*S)`, with equality required when `f` is surjective on
/// points. Without surjectivity a failing reverse inclusion is recorded as a
/// note.
pub fn check_functoriality(f: &MapModel, g: &MapModel, s: &ConicalSet) -> Result<CheckReport> {
    let z = g.target();
    let mut report = CheckReport::new("functoriality");
    let gf = f.then(g)?;
    let lhs = pushforward(&gf, s)?;
    let rhs = pushforward(g, &pushforward(f, s)?)?;
    report.statement(subset("(g∘f)_*S ⊆ g_*(f_*S)", &lhs, &rhs, z)?);
    let reverse = subset("g_*(f_*S) ⊆ (g∘f)_*S", &rhs, &lhs, z)?;
    if f.is_surjective() {
        report.statement(reverse);
    } else if !reverse.holds {
        report.notes.push(format!(
            "f not surjective; strict inclusion, witness {}",
            reverse.witness.unwrap_or_default()
        ));
    }
    Ok(report)
}
