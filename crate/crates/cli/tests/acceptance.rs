//! Acceptance suite. Prints one `PASS`, `FAIL` or `LEDGER` line per
//! criterion and exits nonzero if any criterion fails.
//!
//! `LEDGER` marks a criterion whose checks pass and which also reproduces a
//! known discrepancy in the published formulas.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use arr_core::chow_model::{DualLog, ModelClass, ModelRing};
use arr_core::genera::{f_series, BetaRoute, Genera};
use arr_core::scalars::{
    bernoulli, binomial, factorial, int, log_of_rational, ratio, zeta_negative_odd, LogNumber, Rational,
};
use arr_core::series::{todd_series, Series};
use arr_core::torsion::{monomial_count, Monomials, TorsionNumbers};
use arr_core::wavefront::oracle::{caratheodory_member, random_direction, sample_in_cone};
use arr_core::wavefront::random::{random_instance, GeneratorConfig};
use arr_core::wavefront::{check_functoriality, check_thm1, check_thm2, Cone};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All numeric comparisons are exact; the only tolerances are wall-clock.
const ALPHA_TIME_LIMIT: Duration = Duration::from_secs(5);
const SUITE_TIME_LIMIT: Duration = Duration::from_secs(60);
const SEED: u64 = 20261014;
const WAVEFRONT_INSTANCES: u64 = 200;
const MEMBERSHIP_QUERIES: usize = 1000;
const RANDOM_PAIRS: usize = 200;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Ledger,
}

struct Line {
    status: Status,
    id: u32,
    title: &'static str,
    detail: String,
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn q(x: Rational) -> LogNumber {
    LogNumber::from_rational(x)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_series(rng: &mut ChaCha8Rng, order: usize, constant: bool) -> Series<Rational> {
    let coeffs = (0..=order)
        .map(|i| if i == 0 && !constant { int(0) } else { small_rational(rng) })
        .collect();
    Series::new(coeffs, order)
}

fn fact(m: usize) -> Rational {
    Rational::from_integer(factorial(m as u64).into())
}

/// Bernoulli numbers `B_0 … B_m` (with `B_1 = -1/2`) from the recurrence
/// `Σ_{j<m+1} binom(m+1, j) B_j = 0`.
fn oracle_bernoulli(max: usize) -> Vec<Rational> {
    let mut b = vec![int(1)];
    for m in 1..=max {
        let mut s = int(0);
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m as i64 + 1, j as i64)) * bj;
        }
        b.push(-s / int(m as i64 + 1));
    }
    b
}

fn oracle_sigma(n: usize) -> Rational {
    let mut h = int(0);
    let mut sigma = int(0);
    for p in 1..=n {
        h += ratio(1, p as i64);
        sigma += &h;
    }
    sigma
}

fn c01_series() -> Line {
    // x/(1-e^{-x}) by long division against (1-e^{-x})/x = Σ (-1)^i x^i/(i+1)!.
    let order = 10;
    let denom: Vec<Rational> = (0..=order)
        .map(|i| ratio(if i % 2 == 0 { 1 } else { -1 }, 1) / fact(i + 1))
        .collect();
    let mut quotient = vec![int(1)];
    for m in 1..=order {
        let mut s = int(0);
        for i in 1..=m {
            s += &denom[i] * &quotient[m - i];
        }
        quotient.push(-s);
    }
    let todd_ok = todd_series(order).coeffs() == quotient.as_slice();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut exp_log_ok = true;
    for _ in 0..10 {
        let g = random_series(&mut rng, 30, false);
        exp_log_ok &= g.exp().and_then(|e| e.log()).is_ok_and(|back| back == g);
        let one_plus = Series::one(30).add(&g);
        exp_log_ok &= one_plus.log().and_then(|l| l.exp()).is_ok_and(|back| back == one_plus);
    }
    let mut assoc_ok = true;
    for _ in 0..100 {
        let f = random_series(&mut rng, 12, true);
        let g = random_series(&mut rng, 12, false);
        let h = random_series(&mut rng, 12, false);
        let left = f.compose(&g).and_then(|fg| fg.compose(&h));
        let right = g.compose(&h).and_then(|gh| f.compose(&gh));
        assoc_ok &= matches!((left, right), (Ok(a), Ok(b)) if a == b);
    }
    Line {
        status: verdict(todd_ok && exp_log_ok && assoc_ok),
        id: 1,
        title: "series engine",
        detail: format!(
            "Todd(10) vs long division {todd_ok}; exp/log round trip at order 30 {exp_log_ok}; composition associativity on 100 triples {assoc_ok}"
        ),
    }
}

fn c02_constants() -> Line {
    let b = [
        (2, ratio(1, 6)),
        (4, ratio(-1, 30)),
        (6, ratio(1, 42)),
        (12, ratio(-691, 2730)),
    ];
    let z = [(1, ratio(-1, 12)), (2, ratio(1, 120)), (3, ratio(-1, 252))];
    let b_ok = b.iter().all(|(m, v)| bernoulli(*m) == *v);
    let z_ok = z.iter().all(|(m, v)| zeta_negative_odd(*m).ok().as_ref() == Some(v));
    Line {
        status: verdict(b_ok && z_ok),
        id: 2,
        title: "Bernoulli and zeta constants",
        detail: format!("B_2, B_4, B_6, B_12 {b_ok}; zeta(-1), zeta(-3), zeta(-5) {z_ok}"),
    }
}

fn c03_alpha(g: &Genera) -> Line {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for n in 0..=12usize {
        for k in -(n as i64)..=12 {
            let expected = if k < 0 {
                int(0)
            } else {
                Rational::from_integer(binomial(k + n as i64, n as i64))
            };
            if g.alpha(n, k).ok() != Some(expected) {
                mismatches.push((n, k));
            }
        }
    }
    let elapsed = start.elapsed();
    Line {
        status: verdict(mismatches.is_empty() && elapsed < ALPHA_TIME_LIMIT),
        id: 3,
        title: "alpha closed form",
        detail: format!(
            "n <= 12, -n <= k <= 12: {} mismatches {:?}; {:.2?} (limit {:?})",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            elapsed,
            ALPHA_TIME_LIMIT
        ),
    }
}

fn c04_ttilde(g: &Genera) -> Line {
    let expected = [int(0), ratio(-1, 12), ratio(-1, 8), ratio(-329, 2160)];
    let values_ok = g.ttilde(3).is_ok_and(|t| t.values == expected);
    // F(y) = Σ_{m≥1} ζ(1-2m)/(2m-1)·y^{2m}/(2m)! with ζ(1-2m) = -B_{2m}/(2m).
    let order = 13;
    let b = oracle_bernoulli(order + 1);
    let mut f = vec![int(0); order + 1];
    for m in 1..=order / 2 {
        let zeta = -&b[2 * m] / int(2 * m as i64);
        f[2 * m] = zeta / int(2 * m as i64 - 1) / fact(2 * m);
    }
    let f = Series::new(f, order);
    let lib_f_ok = f_series(order) == f;
    let round_trip_ok = g.ttilde(order - 1).is_ok_and(|t| {
        let big_t = Series::one(order).sub(&Series::<Rational>::variable(order).neg().exp().expect("unit"));
        t.generating_series().compose(&big_t).is_ok_and(|back| back == f)
    });
    Line {
        status: verdict(values_ok && lib_f_ok && round_trip_ok),
        id: 4,
        title: "secondary Todd numbers",
        detail: format!(
            "Td~_0..3 = 0, -1/12, -1/8, -329/2160 {values_ok}; F through order 13 vs Bernoulli oracle {lib_f_ok}; generating series round trip {round_trip_ok}"
        ),
    }
}

fn c05_beta(g: &Genera) -> Line {
    let mut bad = Vec::new();
    for n in 0..=10 {
        if g.beta_residual(n, 0).ok() != Some(int(0)) {
            bad.push((n, 0));
        }
    }
    for n in 0..=2 {
        for k in -12..=12 {
            if g.beta_residual(n, k).ok() != Some(int(0)) {
                bad.push((n, k));
            }
        }
    }
    let documented = g.beta_residual(3, 1).ok();
    let reproduced = documented == Some(ratio(-1, 24));
    let status = match (bad.is_empty(), reproduced) {
        (true, true) => Status::Ledger,
        _ => Status::Fail,
    };
    Line {
        status,
        id: 5,
        title: "beta two-route agreement",
        detail: format!(
            "zero residual on n <= 10 (k = 0) and n <= 2 (|k| <= 12): {} failures {:?}; documented residual(3,1) = {}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>(),
            documented.map_or("error".into(), |r| r.to_string())
        ),
    }
}

fn c06_table(tn: &TorsionNumbers) -> Line {
    let expected = [
        (1, 0, ratio(-1, 2)),
        (2, 0, ratio(-5, 4)),
        (1, -1, ratio(1, 24)),
        (2, -1, ratio(1, 48)),
        (2, -2, ratio(-1, 48)),
    ];
    let bad: Vec<_> = expected
        .iter()
        .filter(|(n, k, v)| tn.t_table_value(*n, *k).ok() != Some(q(v.clone())))
        .map(|(n, k, _)| (*n, *k))
        .collect();
    Line {
        status: verdict(bad.is_empty()),
        id: 6,
        title: "closed-form table",
        detail: format!("t_{{1,0}}, t_{{2,0}}, t_{{1,-1}}, t_{{2,-1}}, t_{{2,-2}}: mismatches {bad:?}"),
    }
}

fn c07_grr(tn: &TorsionNumbers, g: &Genera) -> Line {
    let mut bad = Vec::new();
    for n in 1..=10usize {
        for k in -(n as i64)..=-1 {
            let lhs = tn.t_primed_grr(n, k, BetaRoute::Genus);
            let rhs = tn.t_table_value(n, k);
            if !matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b) {
                bad.push((n, k));
            }
        }
    }
    let mut k0_bad = Vec::new();
    for n in 0..=10usize {
        let residual = tn.report(n, 0, BetaRoute::Genus).ok().and_then(|r| r.table_residual);
        let log_fact = log_of_rational(&fact(n)).expect("positive");
        let td = g.ttilde(n).expect("within bounds").values[n].clone();
        let expected = (log_fact - q(td)).scale(&ratio(1, 2));
        if residual != Some(expected) {
            k0_bad.push(n);
        }
    }
    let status = match (bad.is_empty(), k0_bad.is_empty()) {
        (true, true) => Status::Ledger,
        _ => Status::Fail,
    };
    Line {
        status,
        id: 7,
        title: "GRR identity",
        detail: format!(
            "t' = t_table for -n <= k <= -1, n <= 10: {} failures {:?}; k = 0 residual (1/2)(log n! - Td~_n) reproduced for n <= 10 except {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>(),
            k0_bad
        ),
    }
}

fn c08_duality(tn: &TorsionNumbers, g: &Genera) -> Line {
    let mut nonzero = Vec::new();
    let mut pairs = 0;
    let mut integral_nonzero = 0;
    for n in 1..=6usize {
        for k in -(n as i64)..=-1 {
            pairs += 1;
            // Same relation with beta_integral in place of beta_genus in the table.
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            let partner = -k - n as i64 - 1;
            let integral = g.beta_integral(n, k).expect("in range") + g.beta_integral(n, partner).expect("in range") * sign;
            integral_nonzero += usize::from(integral != int(0));
            match tn.duality_residuals(n, k) {
                Ok((_, flipped)) if flipped.is_zero() => {}
                Ok((_, flipped)) => nonzero.push(format!("({n},{k}): {flipped}")),
                Err(e) => nonzero.push(format!("({n},{k}): {e}")),
            }
        }
    }
    let printed = tn.duality_residuals(2, -1).ok().map(|(p, _)| p);
    let printed_ok = printed == Some(q(ratio(1, 24)));
    let status = match (nonzero.is_empty(), printed_ok) {
        (true, true) => Status::Ledger,
        _ => Status::Fail,
    };
    Line {
        status,
        id: 8,
        title: "duality",
        detail: format!(
            "flipped-sign residual nonzero on {} of {pairs} table pairs (n <= 6), first {:?}; printed-sign residual at (2,-1) = {} (documented 1/24); with beta_integral in the table the flipped residual is nonzero on {integral_nonzero} pairs",
            nonzero.len(),
            nonzero.iter().take(4).collect::<Vec<_>>(),
            printed.map_or("error".into(), |p| p.to_string())
        ),
    }
}

fn log_number(rng: &mut ChaCha8Rng) -> LogNumber {
    let mut x = q(small_rational(rng));
    for p in [2u64, 3, 5] {
        if rng.gen_bool(0.5) {
            x += &LogNumber::log_prime(p, small_rational(rng));
        }
    }
    x
}

fn dual(rng: &mut ChaCha8Rng) -> DualLog {
    DualLog::new(small_rational(rng), log_number(rng))
}

fn class(rng: &mut ChaCha8Rng, n: usize) -> ModelClass {
    ModelClass::new(n, (0..=n + 1).map(|_| dual(rng)).collect())
}

fn c09_model_ring() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let rings: Vec<ModelRing> = (0..=12).map(|n| ModelRing::new(n).expect("small n")).collect();
    let mut square_zero = 0;
    let mut zeta_mult = 0;
    let mut projection = 0;
    for _ in 0..RANDOM_PAIRS {
        let n = rng.gen_range(0..=6);
        let ring = &rings[n];
        let a = ring.amap(&log_number(&mut rng), rng.gen_range(0..=n + 1)).expect("degree in range");
        let b = ring.amap(&log_number(&mut rng), rng.gen_range(0..=n + 1)).expect("degree in range");
        square_zero += usize::from(ring.mul(&a, &b).is_ok_and(|p| p.is_zero()));

        let (x, y) = (class(&mut rng, n), class(&mut rng, n));
        let (zx, zy) = (ring.zeta_map(&x), ring.zeta_map(&y));
        let mut product = vec![int(0); n + 2];
        for i in 0..=n + 1 {
            for j in 0..=n + 1 - i {
                product[i + j] += &zx[i] * &zy[j];
            }
        }
        zeta_mult += usize::from(ring.mul(&x, &y).is_ok_and(|p| ring.zeta_map(&p) == product));

        let s = dual(&mut rng);
        projection += usize::from(ring.projection_formula_check(&x, &s).unwrap_or(false));
    }
    let todd_bad: Vec<usize> = (0..=6)
        .filter(|&n| !rings[n].eq35_identity_check().unwrap_or(false))
        .collect();
    let mut grr_bad = Vec::new();
    for (n, ring) in rings.iter().enumerate() {
        let td = ring.todd_geometric();
        for k in -(n as i64)..=12 {
            let expected = if k < 0 {
                int(0)
            } else {
                Rational::from_integer(binomial(n as i64 + k, n as i64))
            };
            let got = ring
                .mul(&ring.chern_character(k), &td)
                .and_then(|p| ring.pushforward(&p))
                .map(|d| d.geometric);
            if got.ok() != Some(expected) {
                grr_bad.push((n, k));
            }
        }
    }
    let ok = square_zero == RANDOM_PAIRS
        && zeta_mult == RANDOM_PAIRS
        && projection == RANDOM_PAIRS
        && todd_bad.is_empty()
        && grr_bad.is_empty();
    Line {
        status: verdict(ok),
        id: 9,
        title: "model ring",
        detail: format!(
            "square-zero {square_zero}/{RANDOM_PAIRS}; zeta multiplicative {zeta_mult}/{RANDOM_PAIRS}; projection formula {projection}/{RANDOM_PAIRS}; Todd-class identity failures for n in {todd_bad:?}; geometric GRR failures {grr_bad:?}"
        ),
    }
}

fn c10_todd_round_trip(g: &Genera) -> Line {
    let mut cells = 0;
    let mut bad = Vec::new();
    let mut explained = 0;
    for n in 0..=8usize {
        let ring = ModelRing::with_genera(n, g.clone()).expect("small n");
        let todd = ring.arithmetic_todd().expect("solvable");
        let correction = ring.solve_todd_correction(BetaRoute::Genus).expect("solvable");
        let sigma = oracle_sigma(n);
        let span = n as i64 + 3;
        for k in -span..=span {
            cells += 1;
            let arch = ring
                .mul(&ring.chern_character(k), &todd)
                .and_then(|p| ring.pushforward(&p))
                .map(|d| d.archimedean)
                .expect("ring arithmetic");
            let alpha = g.alpha(n, k).expect("within bounds");
            let beta = g.beta_genus(n, k).expect("within bounds");
            let target = q((alpha * &sigma + beta) * ratio(1, 2));
            if arch != target {
                // The residual of the degree-wise solve: h·k^{n+1}/(n+1)!.
                let top = q(&correction.unmatched_top * int(k).pow(n as i32 + 1) / fact(n + 1));
                explained += usize::from(&arch - &target == top);
                bad.push((n, k));
            }
        }
    }
    Line {
        status: verdict(bad.is_empty()),
        id: 10,
        title: "Todd correction round trip",
        detail: format!(
            "pushforward archimedean part = (1/2)(alpha Sigma_n + beta_genus) on {} of {cells} cells (n <= 8, |k| <= n+3); first failures {:?}; {explained} of {} residuals equal h k^(n+1)/(n+1)! exactly",
            cells - bad.len(),
            bad.iter().take(4).collect::<Vec<_>>(),
            bad.len()
        ),
    }
}

fn c11_l2(tn: &TorsionNumbers) -> Line {
    let three_halves = ratio(3, 2);
    let expected = LogNumber::log_prime(2, ratio(1, 2)) + LogNumber::log_prime(3, three_halves);
    let chh1 = tn.chh1_l2(1, 2).ok();
    let value_ok = chh1.as_ref() == Some(&expected);
    let mut bad = Vec::new();
    for n in 0..=4usize {
        // Pascal's rule for the number of degree-k monomials in n+1 variables.
        let mut row = [1u64; 9];
        for _ in 0..n {
            for k in 1..=8 {
                row[k] += row[k - 1];
            }
        }
        for (k, &count) in row.iter().enumerate() {
            let streamed = Monomials::new(n, k as u32).count() as u64;
            let formula = monomial_count(n, k as u64);
            if streamed != count || formula != count.into() {
                bad.push((n, k));
            }
        }
    }
    Line {
        status: verdict(value_ok && bad.is_empty()),
        id: 11,
        title: "L2 Chern character",
        detail: format!(
            "chh1_L2(1,2) = {} (expected (1/2) log 2 + (3/2) log 3); monomial count mismatches {bad:?}",
            chh1.map_or("error".into(), |c| c.to_string())
        ),
    }
}

fn c12_wavefront() -> Line {
    let cfg = GeneratorConfig::default();
    let mut failures = Vec::new();
    let (mut thm1_live, mut thm2_live, mut surjective, mut statements) = (0, 0, 0, 0);
    for i in 0..WAVEFRONT_INSTANCES {
        let inst = random_instance(SEED, i, &cfg);
        let reports = [
            check_thm1(&inst.f, &inst.s_y, &inst.s_y_prime),
            check_thm2(&inst.f, &inst.s_x, &inst.s_y_prime),
            check_functoriality(&inst.f, &inst.g, &inst.s_x),
        ];
        for r in reports {
            match r {
                Ok(r) => {
                    statements += r.statements.len();
                    match r.name.as_str() {
                        "thm1" => thm1_live += usize::from(r.hypotheses_hold()),
                        "thm2" => thm2_live += usize::from(r.hypotheses_hold()),
                        _ => {}
                    }
                    if !r.passed() {
                        failures.push(format!("{}#{i}", r.name));
                    }
                }
                Err(e) => failures.push(format!("#{i}: {e}")),
            }
        }
        surjective += usize::from(inst.f.is_surjective());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    let mut disagreements = 0;
    let mut inside = 0;
    for _ in 0..MEMBERSHIP_QUERIES {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=4);
        let gens = (0..count).map(|_| random_direction(&mut rng, dim, 3)).collect();
        let cone = Cone::new(dim, gens).expect("nonzero generators");
        let v = if rng.gen_bool(0.4) {
            sample_in_cone(&mut rng, &cone, 3)
        } else {
            random_direction(&mut rng, dim, 3)
        };
        let exact = cone.contains(&v);
        inside += usize::from(exact);
        disagreements += usize::from(exact != caratheodory_member(cone.generators(), &v));
    }
    Line {
        status: verdict(failures.is_empty() && disagreements == 0),
        id: 12,
        title: "wave-front suite",
        detail: format!(
            "{WAVEFRONT_INSTANCES} instances (seed {SEED}): {statements} statements, thm1 hypotheses held on {thm1_live}, thm2 on {thm2_live}, surjective f on {surjective}, failures {failures:?}; {MEMBERSHIP_QUERIES} membership queries ({inside} inside), {disagreements} disagreements with the oracle"
        ),
    }
}

fn run_arr(args: &[&str]) -> Option<(Vec<u8>, i32)> {
    let out = Command::new(env!("CARGO_BIN_EXE_arr")).args(args).output().ok()?;
    Some((out.stdout, out.status.code().unwrap_or(-1)))
}

fn c13_cli() -> Line {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/torsion_report.schema.json")).expect("schema parses");
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let first = run_arr(&["table", "3", "--format", "json"]);
    let second = run_arr(&["table", "3", "--format", "json"]);
    let identical = first.is_some() && first == second;
    let valid = first.as_ref().is_some_and(|(out, code)| {
        *code == 0
            && serde_json::from_slice::<serde_json::Value>(out).is_ok_and(|v| validator.is_valid(&v))
    });
    let ledger = run_arr(&["ledger", "--format", "json"]);
    let mut ledger_detail = String::from("ledger did not run");
    let mut ledger_ok = false;
    if let Some((out, code)) = ledger {
        if let Ok(v) = serde_json::from_slice::<serde_json::Value>(&out) {
            let entries = v["result"]["entries"].as_array().cloned().unwrap_or_default();
            let residual = |e: &serde_json::Value, i: usize| e["cells"][i]["residual"]["rational"].clone();
            let all_reproduced = entries
                .iter()
                .all(|e| e["cells"].as_array().is_some_and(|c| c.iter().all(|c| c["reproduced"] == true)));
            ledger_ok = code == 0
                && validator.is_valid(&v)
                && entries.len() == 3
                && all_reproduced
                && residual(&entries[0], 0) == "-1/24"
                && residual(&entries[2], 0) == "1/24";
            ledger_detail = format!(
                "{} entries ({}), all reproduced {all_reproduced}",
                entries.len(),
                entries
                    .iter()
                    .map(|e| e["id"].as_str().unwrap_or("?"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    Line {
        status: verdict(identical && valid && ledger_ok),
        id: 13,
        title: "CLI determinism",
        detail: format!("table 3 json byte-identical {identical}, schema-valid {valid}; ledger: {ledger_detail}"),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let genera = Genera::default();
    let tn = TorsionNumbers::new(genera.clone());
    let lines = vec![
        c01_series(),
        c02_constants(),
        c03_alpha(&genera),
        c04_ttilde(&genera),
        c05_beta(&genera),
        c06_table(&tn),
        c07_grr(&tn, &genera),
        c08_duality(&tn, &genera),
        c09_model_ring(),
        c10_todd_round_trip(&genera),
        c11_l2(&tn),
        c12_wavefront(),
        c13_cli(),
    ];
    for l in &lines {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Ledger => "LEDGER",
        };
        println!("{tag:<6} [{:02}] {}: {}", l.id, l.title, l.detail);
    }
    let elapsed = start.elapsed();
    let failed = lines.iter().filter(|l| l.status == Status::Fail).count();
    println!(
        "acceptance: {} criteria, {failed} failed, {:.1?} (limit {:?})",
        lines.len(),
        elapsed,
        SUITE_TIME_LIMIT
    );
    if failed > 0 || elapsed > SUITE_TIME_LIMIT {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
