//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use lr_verlinde::corpus::{
    dimension_pairs, factor_triples, partitions_in_box, pieri_lambdas, rank2_exhaustive,
    rank3_sampled, spread_sample, Triple, DEFAULT_SEED,
};
use lr_verlinde::lr_oracle::{iterated_multiplicity, lr_tableaux_count, pieri_expand};
use lr_verlinde::partition::Partition;
use lr_verlinde::verlinde::{
    choose_level, lr_coefficient, tensor_multiplicity, verlinde_coefficients, verlinde_decompose,
    LRResult, VerlindeOptions,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    match failures.first() {
        None => Outcome { ok: true, detail },
        Some(f) => Outcome {
            ok: false,
            detail: format!("{} failures, first: {f}", failures.len()),
        },
    }
}

fn exact(t: &Triple, level: Option<i64>) -> Result<LRResult, String> {
    let opts = VerlindeOptions {
        level,
        ..VerlindeOptions::default()
    };
    lr_coefficient(&t.lambda, &t.mu, &t.nu, &opts).map_err(|e| format!("{t}: {e}"))
}

fn min_level(t: &Triple) -> i64 {
    choose_level(&[t.lambda.clone(), t.mu.clone(), t.nu.dual()]).expect("equal ranks")
}

/// Exact results for a corpus, checked against the tableau count.
fn oracle_equivalence(corpus: &[Triple], results: &mut Vec<(usize, LRResult)>) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in corpus {
        let oracle = lr_tableaux_count(&t.lambda, &t.mu, &t.nu).expect("valid triple");
        match exact(t, None) {
            Ok(r) if r.coefficient == oracle => results.push((t.lambda.rank(), r)),
            Ok(r) => failures.push(format!(
                "{t}: verlinde {} vs tableaux {oracle}",
                r.coefficient
            )),
            Err(e) => failures.push(e),
        }
    }
    outcome(
        &failures,
        format!(
            "{} triples, {:.1} s",
            corpus.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn k_independence(pool: &[Triple]) -> Outcome {
    let sample = spread_sample(pool, 50);
    let mut failures = Vec::new();
    for t in &sample {
        let k = min_level(t);
        let r = t.lambda.rank() as i64;
        let values: Result<Vec<u64>, String> = [k, k + r, k + 2 * r + 1]
            .into_iter()
            .map(|k| exact(t, Some(k)).map(|x| x.coefficient))
            .collect();
        match values {
            Ok(v) if v.iter().all(|&x| x == v[0]) => {}
            Ok(v) => failures.push(format!("{t}: {v:?} at k={k}, {}, {}", k + r, k + 2 * r + 1)),
            Err(e) => failures.push(e),
        }
    }
    outcome(
        &failures,
        format!("{} triples at three levels", sample.len()),
    )
}

fn pieri(results: &mut Vec<(usize, LRResult)>) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for lambda in pieri_lambdas(30, DEFAULT_SEED) {
        for s in 1..=lambda.rank() {
            let omega = Partition::fundamental(lambda.rank(), s);
            let members = pieri_expand(&lambda, s);
            match verlinde_coefficients(&lambda, &omega, &VerlindeOptions::default()) {
                Ok(all) => {
                    let seen: BTreeSet<&Partition> = all.iter().map(|(nu, _)| nu).collect();
                    for (nu, _) in members.iter() {
                        if !seen.contains(nu) {
                            failures.push(format!(
                                "({lambda}) x omega_{s}: member ({nu}) not a candidate"
                            ));
                        }
                    }
                    for (nu, r) in all {
                        checked += 1;
                        if r.coefficient != members.get(&nu) {
                            failures.push(format!(
                                "({lambda}) x omega_{s} -> ({nu}): verlinde {} expected {}",
                                r.coefficient,
                                members.get(&nu)
                            ));
                        }
                        results.push((lambda.rank(), r));
                    }
                }
                Err(e) => failures.push(format!("({lambda}) x omega_{s}: {e}")),
            }
        }
    }
    outcome(&failures, format!("30 partitions, {checked} targets"))
}

fn integrality(results: &[(usize, LRResult)]) -> Outcome {
    let mut failures = Vec::new();
    for (rank, r) in results {
        let (Some(raw), Some(level)) = (&r.raw_sum, r.level) else {
            failures.push("missing exact sum".to_string());
            continue;
        };
        let norm =
            BigInt::from(*rank) * num_traits::pow(BigInt::from(*rank as i64 + level), rank - 1);
        let quotient = raw / BigRational::from_integer(norm.clone());
        let ok = (&norm % raw.denom()).is_zero()
            && quotient.is_integer()
            && !quotient.is_negative()
            && quotient.to_integer() == BigInt::from(r.coefficient);
        if !ok {
            failures.push(format!("sum {raw} at k={level}, rank {rank}"));
        }
    }
    outcome(&failures, format!("{} exact sums", results.len()))
}

fn backend_agreement(corpus: &[Triple]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for t in corpus {
        if t.lambda.rank() as i64 + min_level(t) > 60 {
            continue;
        }
        checked += 1;
        let e = exact(t, None);
        let f = lr_coefficient(&t.lambda, &t.mu, &t.nu, &VerlindeOptions::float());
        match (e, f) {
            (Ok(e), Ok(f)) => {
                let res = f.float_residual.unwrap_or(f64::INFINITY);
                worst = worst.max(res);
                if res >= 1e-6 || e.coefficient != f.coefficient {
                    failures.push(format!(
                        "{t}: exact {} float {} residual {res:e}",
                        e.coefficient, f.coefficient
                    ));
                }
            }
            (Err(e), _) => failures.push(e),
            (_, Err(e)) => failures.push(format!("{t}: {e}")),
        }
    }
    outcome(
        &failures,
        format!("{checked} triples, worst residual {worst:.2e}"),
    )
}

fn dimension_identity() -> Outcome {
    let mut failures = Vec::new();
    for (a, b) in dimension_pairs(50, DEFAULT_SEED) {
        match verlinde_decompose(&a, &b, &VerlindeOptions::default()) {
            Ok(table) => {
                let (lhs, rhs) = (a.gl_dimension() * b.gl_dimension(), table.total_dimension());
                if lhs != rhs {
                    failures.push(format!("({a}) x ({b}): {lhs} vs {rhs}"));
                }
            }
            Err(e) => failures.push(format!("({a}) x ({b}): {e}")),
        }
    }
    outcome(&failures, "50 pairs".to_string())
}

fn associativity() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for factors in factor_triples(20, DEFAULT_SEED) {
        let size: i64 = factors.iter().map(Partition::size).sum();
        for nu in partitions_in_box(2, 0, 6)
            .into_iter()
            .filter(|nu| nu.size() == size)
        {
            checked += 1;
            let v = tensor_multiplicity(&factors, &nu, &VerlindeOptions::default());
            let o = iterated_multiplicity(&factors, &nu).expect("valid factors");
            match v {
                Ok(v) if v.coefficient == o => {}
                Ok(v) => failures.push(format!("{factors:?} -> ({nu}): {} vs {o}", v.coefficient)),
                Err(e) => failures.push(format!("{factors:?} -> ({nu}): {e}")),
            }
        }
    }
    outcome(&failures, format!("20 factor triples, {checked} targets"))
}

fn determinism(corpus: &[Triple]) -> Outcome {
    let run = |threads: u32| -> Result<Vec<u8>, String> {
        let mut out = Vec::new();
        for t in corpus {
            let o = Command::new(env!("CARGO_BIN_EXE_lrv"))
                .args([
                    "compute",
                    &t.lambda.to_string(),
                    &t.mu.to_string(),
                    &t.nu.to_string(),
                ])
                .args([
                    "--output",
                    "json",
                    "--no-timing",
                    "--threads",
                    &threads.to_string(),
                ])
                .output()
                .map_err(|e| e.to_string())?;
            if !o.status.success() {
                return Err(format!("{t}: exit {:?}", o.status.code()));
            }
            out.extend(o.stdout);
        }
        Ok(out)
    };
    let mut failures = Vec::new();
    match run(1) {
        Ok(base) => {
            for t in [2, 8] {
                match run(t) {
                    Ok(other) if other == base => {}
                    Ok(_) => failures.push(format!("{t} workers differ from 1")),
                    Err(e) => failures.push(e),
                }
            }
            // the float reduction order is fixed too
            for t in corpus {
                let bits = |threads| {
                    lr_coefficient(
                        &t.lambda,
                        &t.mu,
                        &t.nu,
                        &VerlindeOptions::float().with_threads(threads),
                    )
                    .map(|r| r.float_residual.map(f64::to_bits))
                    .ok()
                };
                if bits(1) != bits(2) || bits(1) != bits(8) {
                    failures.push(format!("{t}: float residual depends on workers"));
                }
            }
            outcome(&failures, format!("{} bytes of JSON per run", base.len()))
        }
        Err(e) => outcome(&[e], String::new()),
    }
}

fn main() {
    let suite1 = rank2_exhaustive();
    let suite2 = rank3_sampled(200, DEFAULT_SEED);
    let both: Vec<Triple> = suite1.iter().chain(&suite2).cloned().collect();
    let mut exact_results = Vec::new();

    let mut lines: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut record = |n, name, o: Outcome| {
        println!(
            "criterion {n} {name}: {} ({})",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        lines.push((n, name, o));
    };
    record(
        1,
        "oracle equivalence, rank 2",
        oracle_equivalence(&suite1, &mut exact_results),
    );
    record(
        2,
        "oracle equivalence, rank 3",
        oracle_equivalence(&suite2, &mut exact_results),
    );
    record(3, "k-independence", k_independence(&both));
    record(4, "Pieri reproduction", pieri(&mut exact_results));
    record(
        5,
        "integrality and nonnegativity",
        integrality(&exact_results),
    );
    record(6, "backend agreement", backend_agreement(&both));
    record(7, "dimension identity", dimension_identity());
    record(8, "associativity", associativity());
    record(9, "determinism", determinism(&suite1));

    let failed = lines.iter().filter(|(_, _, o)| !o.ok).count();
    println!(
        "acceptance: {}/{} criteria PASS",
        lines.len() - failed,
        lines.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
