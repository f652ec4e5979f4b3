use std::collections::BTreeMap;

use arr_core::genera::BetaRoute;
use arr_core::scalars::{factorial, log_of_rational, lognumber_to_decimal, ratio, rational_string};
use arr_core::torsion::{TorsionNumbers, TorsionReport};
use arr_core::wavefront::instance::{run_file, InstanceFile};
use arr_core::wavefront::random::{random_instance, GeneratorConfig};
use arr_core::wavefront::{check_functoriality, check_thm1, check_thm2, CheckReport};
use arr_core::{LogNumber, Rational, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::RunConfig;

/// A finished command: the JSON result plus its text and CSV renderings.
pub struct Outcome {
    pub command: &'static str,
    pub args: Vec<(&'static str, Value)>,
    pub seed: u64,
    pub beta_route: BetaRoute,
    pub digits: usize,
    pub max_n: usize,
    pub result: Value,
    pub text: Vec<String>,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub failed: bool,
}

impl Outcome {
    fn new(cfg: &RunConfig, command: &'static str, args: &[(&'static str, Value)]) -> Self {
        Outcome {
            command,
            args: args.to_vec(),
            seed: cfg.seed,
            beta_route: cfg.beta_route,
            digits: cfg.digits,
            max_n: cfg.max_n,
            result: Value::Null,
            text: Vec::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            failed: false,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn decimal(cfg: &RunConfig, x: &LogNumber) -> Result<String> {
    lognumber_to_decimal(x, cfg.digits)
}

fn q(x: &Rational) -> LogNumber {
    LogNumber::from_rational(x.clone())
}

fn torsion(cfg: &RunConfig) -> TorsionNumbers {
    TorsionNumbers::new(cfg.genera.clone())
}

#[derive(Serialize)]
struct TableRow {
    k: i64,
    t: LogNumber,
    decimal: String,
}

pub fn table(cfg: &RunConfig, n: usize) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "table", &[("n", json!(n))]);
    cfg.genera.check(n, 0)?;
    let mut rows = Vec::new();
    out.text.push(format!("k\tt_{{{n},k}}\tdecimal"));
    out.csv_header = vec!["n", "k", "t", "decimal"];
    for (k, t) in torsion(cfg).t_table(n)? {
        let d = decimal(cfg, &t)?;
        out.text.push(format!("{k}\t{t}\t{d}"));
        out.csv_rows.push(vec![n.to_string(), k.to_string(), t.to_string(), d.clone()]);
        rows.push(TableRow { k, t, decimal: d });
    }
    out.result = json!({ "n": n, "rows": to_value(&rows) });
    Ok(out)
}

pub fn t(cfg: &RunConfig, n: usize, k: i64) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "t", &[("n", json!(n)), ("k", json!(k))]);
    let r = torsion(cfg).report(n, k, cfg.beta_route)?;
    let t_dec = decimal(cfg, &r.t_value)?;
    let grr_dec = decimal(cfg, &r.t_grr)?;
    out.text.push(format!("alpha\t{}", r.alpha));
    out.text.push(format!("beta (genus)\t{}", r.beta_genus));
    out.text.push(format!("beta (integral)\t{}", r.beta_integral));
    out.text.push(format!("ch1\t{}", r.chh1));
    out.text.push(format!("pushforward\t{}", r.pushforward_arch));
    out.text.push(format!("t'\t{}\t{grr_dec}", r.t_grr));
    out.text.push(format!("t\t{}\t{t_dec}", r.t_value));
    if let (Some(tab), Some(res)) = (&r.t_table, &r.table_residual) {
        out.text.push(format!("table\t{tab}"));
        out.text.push(format!("residual\t{res}"));
    }
    out.csv_header = vec!["n", "k", "alpha", "beta_genus", "beta_integral", "ch1", "t_grr", "t", "t_decimal"];
    out.csv_rows.push(vec![
        n.to_string(),
        k.to_string(),
        rational_string(&r.alpha),
        rational_string(&r.beta_genus),
        rational_string(&r.beta_integral),
        r.chh1.to_string(),
        r.t_grr.to_string(),
        r.t_value.to_string(),
        t_dec.clone(),
    ]);
    out.result = json!({
        "report": to_value(&r),
        "decimals": { "t_grr": grr_dec, "t_value": t_dec },
    });
    Ok(out)
}

pub fn alpha(cfg: &RunConfig, n: usize, k: i64) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "alpha", &[("n", json!(n)), ("k", json!(k))]);
    let a = cfg.genera.alpha(n, k)?;
    out.text.push(format!("alpha_{{{n},{k}}} = {a}"));
    out.csv_header = vec!["n", "k", "alpha"];
    out.csv_rows.push(vec![n.to_string(), k.to_string(), rational_string(&a)]);
    out.result = json!({ "n": n, "k": k, "alpha": rational_string(&a) });
    Ok(out)
}

pub fn beta(cfg: &RunConfig, n: usize, k: i64) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "beta", &[("n", json!(n)), ("k", json!(k))]);
    let g = &cfg.genera;
    let genus = g.beta_genus(n, k)?;
    let integral = g.beta_integral(n, k)?;
    let residual = g.beta_residual(n, k)?;
    let chosen = g.beta(n, k, cfg.beta_route)?;
    out.text.push(format!("beta_{{{n},{k}}} ({}) = {chosen}", cfg.beta_route));
    out.text.push(format!("genus\t{genus}"));
    out.text.push(format!("integral\t{integral}"));
    out.text.push(format!("residual\t{residual}"));
    out.csv_header = vec!["n", "k", "beta", "beta_genus", "beta_integral", "residual"];
    out.csv_rows.push(
        [&chosen, &genus, &integral, &residual]
            .iter()
            .map(|x| rational_string(x))
            .fold(vec![n.to_string(), k.to_string()], |mut v, s| {
                v.push(s);
                v
            }),
    );
    out.result = json!({
        "n": n,
        "k": k,
        "beta": rational_string(&chosen),
        "beta_genus": rational_string(&genus),
        "beta_integral": rational_string(&integral),
        "residual": rational_string(&residual),
    });
    Ok(out)
}

pub fn ttilde(cfg: &RunConfig, m: usize) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "ttilde", &[("m", json!(m))]);
    let table = cfg.genera.ttilde(m)?;
    out.text.push("m\tTd~_m\tdecimal".into());
    out.csv_header = vec!["m", "ttilde", "decimal"];
    let mut values = Vec::new();
    for (i, v) in table.values.iter().enumerate() {
        let d = decimal(cfg, &q(v))?;
        out.text.push(format!("{i}\t{v}\t{d}"));
        out.csv_rows.push(vec![i.to_string(), rational_string(v), d]);
        values.push(rational_string(v));
    }
    out.result = json!(values);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Ledger,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Ledger => "LEDGER",
        })
    }
}

/// `½(log n! - T̃d_n)`, the documented offset of the k = 0 cell.
fn k_zero_offset(cfg: &RunConfig, n: usize) -> Result<LogNumber> {
    let log_fact = log_of_rational(&Rational::from_integer(factorial(n as u64).into()))?;
    let td = cfg.genera.ttilde(n)?.values[n].clone();
    Ok((log_fact - q(&td)).scale(&ratio(1, 2)))
}

fn grr_status(cfg: &RunConfig, r: &TorsionReport) -> Result<Status> {
    if !r.is_consistent() {
        return Ok(Status::Fail);
    }
    Ok(match (&r.table_residual, r.k) {
        (None, _) => Status::Pass,
        (Some(res), _) if res.is_zero() => Status::Pass,
        (Some(res), 0) if *res == k_zero_offset(cfg, r.n)? => Status::Ledger,
        (Some(_), _) => Status::Fail,
    })
}

#[derive(Serialize)]
struct GrrCell {
    status: Status,
    t_grr_decimal: String,
    report: TorsionReport,
}

pub fn grr(cfg: &RunConfig, n: usize, (lo, hi): (i64, i64)) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "grr", &[("n", json!(n)), ("k", json!(format!("{lo}..{hi}")))]);
    let tn = torsion(cfg);
    let mut cells = Vec::new();
    out.csv_header = vec!["n", "k", "status", "t_grr", "decimal", "t_table", "residual"];
    for k in lo..=hi {
        let report = tn.report(n, k, cfg.beta_route)?;
        let status = grr_status(cfg, &report)?;
        out.failed |= status == Status::Fail;
        let d = decimal(cfg, &report.t_grr)?;
        let table = report.t_table.as_ref().map_or(String::new(), |x| x.to_string());
        let residual = report.table_residual.as_ref().map_or(String::new(), |x| x.to_string());
        let mut line = format!("{status}\tt'_{{{n},{k}}} = {}\t{d}", report.t_grr);
        if report.t_table.is_some() {
            line.push_str(&format!("\ttable {table}\tresidual {residual}"));
        }
        out.text.push(line);
        out.csv_rows.push(vec![
            n.to_string(),
            k.to_string(),
            status.to_string(),
            report.t_grr.to_string(),
            d.clone(),
            table,
            residual,
        ]);
        cells.push(GrrCell {
            status,
            t_grr_decimal: d,
            report,
        });
    }
    out.result = json!({ "n": n, "cells": to_value(&cells) });
    Ok(out)
}

#[derive(Debug, Default, Serialize)]
struct Tally {
    instances: u64,
    hypotheses_held: u64,
    statements: u64,
    passed: u64,
    strict_inclusions: u64,
}

impl Tally {
    fn add(&mut self, r: &CheckReport) {
        self.instances += 1;
        self.hypotheses_held += u64::from(r.hypotheses_hold());
        self.statements += r.statements.len() as u64;
        self.passed += u64::from(r.passed());
        self.strict_inclusions += r.notes.len() as u64;
    }
}

#[derive(Serialize)]
struct WfsFailure {
    index: u64,
    report: CheckReport,
    instance: InstanceFile,
}

fn report_lines(r: &CheckReport) -> Vec<String> {
    let mut lines = vec![format!("{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.name)];
    for (kind, list) in [("hypothesis", &r.hypotheses), ("statement", &r.statements)] {
        for s in list {
            let mark = if s.holds { "holds" } else { "fails" };
            let mut line = format!("  {kind} {mark}: {}", s.label);
            if let Some(w) = &s.witness {
                line.push_str(&format!(" [witness {w}]"));
            }
            lines.push(line);
        }
    }
    lines.extend(r.notes.iter().map(|n| format!("  note: {n}")));
    lines
}

pub fn wfs_check(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "wfs check", &[("instances", json!(cfg.instances))]);
    let gen = GeneratorConfig::default();
    let mut tallies: BTreeMap<&str, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    for index in 0..cfg.instances {
        let inst = random_instance(cfg.seed, index, &gen);
        let reports = [
            check_thm1(&inst.f, &inst.s_y, &inst.s_y_prime)?,
            check_thm2(&inst.f, &inst.s_x, &inst.s_y_prime)?,
            check_functoriality(&inst.f, &inst.g, &inst.s_x)?,
        ];
        for r in reports {
            tallies.entry(["thm1", "thm2", "functoriality"].into_iter().find(|n| *n == r.name).unwrap_or("other"))
                .or_default()
                .add(&r);
            if !r.passed() {
                failures.push(WfsFailure {
                    index,
                    report: r,
                    instance: InstanceFile::from_random(&inst),
                });
            }
        }
    }
    out.failed = !failures.is_empty();
    out.csv_header = vec!["check", "instances", "hypotheses_held", "statements", "passed", "strict_inclusions"];
    for (name, t) in &tallies {
        let status = if t.passed == t.instances { "PASS" } else { "FAIL" };
        out.text.push(format!(
            "{status} {name}: {} instances, hypotheses held on {}, {} statements evaluated, {} strict inclusions noted",
            t.instances, t.hypotheses_held, t.statements, t.strict_inclusions
        ));
        out.csv_rows.push(vec![
            name.to_string(),
            t.instances.to_string(),
            t.hypotheses_held.to_string(),
            t.statements.to_string(),
            t.passed.to_string(),
            t.strict_inclusions.to_string(),
        ]);
    }
    for f in &failures {
        out.text.push(format!("instance {} (seed {}):", f.index, cfg.seed));
        out.text.extend(report_lines(&f.report));
    }
    out.result = json!({
        "generator": to_value(&gen),
        "tallies": to_value(&tallies),
        "failures": to_value(&failures),
    });
    Ok(out)
}

pub fn wfs_file(cfg: &RunConfig, path: &str, text: &str) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "wfs file", &[("path", json!(path))]);
    let reports = run_file(text)?;
    out.failed = reports.iter().any(|r| !r.passed());
    out.csv_header = vec!["check", "hypotheses_hold", "passed"];
    for r in &reports {
        out.text.extend(report_lines(r));
        out.csv_rows.push(vec![
            r.name.clone(),
            r.hypotheses_hold().to_string(),
            r.passed().to_string(),
        ]);
    }
    out.result = json!({ "reports": to_value(&reports) });
    Ok(out)
}

#[derive(Serialize)]
struct LedgerCell {
    n: usize,
    k: i64,
    residual: LogNumber,
    decimal: String,
    /// Whether the computed residual equals the documented one.
    reproduced: bool,
}

#[derive(Serialize)]
struct LedgerEntry {
    id: &'static str,
    status: Status,
    statement: &'static str,
    documented: &'static str,
    cells: Vec<LedgerCell>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    remarks: Vec<String>,
}

pub fn ledger(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::new(cfg, "ledger", &[]);
    let tn = torsion(cfg);
    let g = &cfg.genera;
    let cell = |n: usize, k: i64, residual: LogNumber, expected: &LogNumber| -> Result<LedgerCell> {
        Ok(LedgerCell {
            n,
            k,
            decimal: decimal(cfg, &residual)?,
            reproduced: residual == *expected,
            residual,
        })
    };

    let beta_res = g.beta_residual(3, 1)?;
    let beta_entry = LedgerEntry {
        id: "beta-routes",
        status: Status::Ledger,
        statement: "the genus and integral characterizations of beta agree",
        documented: "beta_genus(3,1) - beta_integral(3,1) = -1/24",
        cells: vec![cell(3, 1, q(&beta_res), &q(&ratio(-1, 24)))?],
        remarks: vec![format!(
            "beta_genus(3,1) = {}, beta_integral(3,1) = {}",
            g.beta_genus(3, 1)?,
            g.beta_integral(3, 1)?
        )],
    };

    let mut k0_cells = Vec::new();
    for n in 1..=4 {
        let r = tn.report(n, 0, BetaRoute::Genus)?;
        let residual = r.table_residual.expect("k = 0 has a table value");
        k0_cells.push(cell(n, 0, residual, &k_zero_offset(cfg, n)?)?);
    }
    let k0_entry = LedgerEntry {
        id: "grr-k-zero",
        status: Status::Ledger,
        statement: "t from GRR matches the closed-form table at k = 0",
        documented: "t(n,0) - t_table(n,0) = (1/2)(log n! - Td~_n), with t(n,0) = t'(n,0) + (1/2) log n!",
        cells: k0_cells,
        remarks: Vec::new(),
    };

    let (printed, _) = tn.duality_residuals(2, -1)?;
    let (_, flipped3) = tn.duality_residuals(3, -1)?;
    let duality_entry = LedgerEntry {
        id: "duality-sign",
        status: Status::Ledger,
        statement: "t_{n,k} = (-1)^n t_{n,-k-n-1} on the table",
        documented: "t_{2,-1} - t_{2,-2} = 1/24 with the printed sign; the opposite sign closes n <= 2",
        cells: vec![cell(2, -1, printed, &q(&ratio(1, 24)))?],
        remarks: vec![
            format!(
                "with the opposite sign (-1)^(n+1) the residual vanishes for n <= 2 but not beyond: at (3,-1) it is {flipped3}"
            ),
            format!(
                "with beta_integral in place of beta_genus the opposite-sign residual at (3,-1) is {}",
                (g.beta_integral(3, -3)? - g.beta_integral(3, -1)?) * ratio(1, 2)
            ),
        ],
    };

    let entries = [beta_entry, k0_entry, duality_entry];
    out.failed = entries.iter().any(|e| e.cells.iter().any(|c| !c.reproduced));
    out.csv_header = vec!["id", "status", "n", "k", "residual", "decimal", "reproduced"];
    for e in &entries {
        out.text.push(format!("{} {}: {}", e.status, e.id, e.documented));
        for c in &e.cells {
            let mark = if c.reproduced { "reproduced" } else { "NOT reproduced" };
            out.text.push(format!("  (n={}, k={}) residual {}\t{}\t{mark}", c.n, c.k, c.residual, c.decimal));
            out.csv_rows.push(vec![
                e.id.to_string(),
                e.status.to_string(),
                c.n.to_string(),
                c.k.to_string(),
                c.residual.to_string(),
                c.decimal.clone(),
                c.reproduced.to_string(),
            ]);
        }
        out.text.extend(e.remarks.iter().map(|r| format!("  {r}")));
    }
    out.result = json!({ "entries": to_value(&entries) });
    Ok(out)
}
