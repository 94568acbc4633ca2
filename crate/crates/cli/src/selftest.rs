use std::collections::BTreeSet;

use lr_verlinde::corpus::{
    dimension_pairs, factor_triples, partitions_in_box, pieri_lambdas, rank2_exhaustive,
    rank3_sampled, spread_sample, Triple,
};
use lr_verlinde::lr_oracle::{
    candidate_targets, iterated_multiplicity, lr_tableaux_count, pieri_expand,
};
use lr_verlinde::partition::Partition;
use lr_verlinde::verlinde::{
    choose_level, lr_coefficient, tensor_multiplicity, verlinde_coefficients, verlinde_decompose,
    VerlindeOptions,
};

use crate::args::{Config, Suite};
use crate::commands::Exit;

const ALL: [Suite; 8] = [
    Suite::OracleEquivalence,
    Suite::KIndependence,
    Suite::Symmetry,
    Suite::Translation,
    Suite::Pieri,
    Suite::Dimension,
    Suite::BackendAgreement,
    Suite::Associativity,
];

/// Pass count plus the smallest failing case seen.
struct Tally {
    passed: usize,
    total: usize,
    witness: Option<(i64, String)>,
}

impl Tally {
    fn new() -> Self {
        Self {
            passed: 0,
            total: 0,
            witness: None,
        }
    }

    fn record(&mut self, weight: i64, outcome: Result<(), String>) {
        self.total += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                if self.witness.as_ref().is_none_or(|(w, _)| weight < *w) {
                    self.witness = Some((weight, msg));
                }
            }
        }
    }

    fn ok(&self) -> bool {
        self.passed == self.total
    }
}

fn weight(ps: &[&Partition]) -> i64 {
    ps.iter()
        .map(|p| p.parts().iter().map(|x| x.abs()).sum::<i64>() + p.rank() as i64)
        .sum()
}

fn triple_weight(t: &Triple) -> i64 {
    weight(&[&t.lambda, &t.mu, &t.nu])
}

fn verlinde(t: &Triple, opts: &VerlindeOptions) -> Result<u64, String> {
    lr_coefficient(&t.lambda, &t.mu, &t.nu, opts)
        .map(|r| r.coefficient)
        .map_err(|e| format!("{t}: {e}"))
}

fn expect_eq(t: &Triple, what: &str, a: u64, b: u64) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{t}: {what}: {a} != {b}"))
    }
}

struct Context {
    max_rank: usize,
    seed: u64,
    opts: VerlindeOptions,
    oracle_corpus: Vec<Triple>,
}

impl Context {
    fn oracle_equivalence(&self, tally: &mut Tally) {
        for t in &self.oracle_corpus {
            let outcome = verlinde(t, &self.opts).and_then(|v| {
                let o = lr_tableaux_count(&t.lambda, &t.mu, &t.nu).map_err(|e| e.to_string())?;
                expect_eq(t, "verlinde vs tableaux", v, o)
            });
            tally.record(triple_weight(t), outcome);
        }
    }

    fn k_independence(&self, tally: &mut Tally) {
        for t in spread_sample(&self.oracle_corpus, 50) {
            let r = t.lambda.rank() as i64;
            let outcome = choose_level(&[t.lambda.clone(), t.mu.clone(), t.nu.dual()])
                .map_err(|e| e.to_string())
                .and_then(|k| {
                    let at = |k: i64| {
                        verlinde(
                            &t,
                            &VerlindeOptions {
                                level: Some(k),
                                ..self.opts.clone()
                            },
                        )
                    };
                    let base = at(k)?;
                    for k2 in [k + r, k + 2 * r + 1] {
                        expect_eq(&t, &format!("k={k} vs k={k2}"), base, at(k2)?)?;
                    }
                    Ok(())
                });
            tally.record(triple_weight(&t), outcome);
        }
    }

    fn symmetry(&self, tally: &mut Tally) {
        for t in spread_sample(&self.oracle_corpus, 50) {
            let swapped = Triple {
                lambda: t.mu.clone(),
                mu: t.lambda.clone(),
                nu: t.nu.clone(),
            };
            let outcome = verlinde(&t, &self.opts).and_then(|a| {
                verlinde(&swapped, &self.opts).and_then(|b| expect_eq(&t, "swap factors", a, b))
            });
            tally.record(triple_weight(&t), outcome);
        }
    }

    fn translation(&self, tally: &mut Tally) {
        for t in spread_sample(&self.oracle_corpus, 50) {
            let outcome = verlinde(&t, &self.opts).and_then(|base| {
                for c in [1, -2] {
                    let moved = Triple {
                        lambda: t.lambda.shifted_by(c),
                        mu: t.mu.clone(),
                        nu: t.nu.shifted_by(c),
                    };
                    expect_eq(
                        &t,
                        &format!("shift by {c}"),
                        base,
                        verlinde(&moved, &self.opts)?,
                    )?;
                }
                Ok(())
            });
            tally.record(triple_weight(&t), outcome);
        }
    }

    fn pieri(&self, tally: &mut Tally) {
        for lambda in pieri_lambdas(30, self.seed)
            .into_iter()
            .filter(|l| l.rank() <= self.max_rank)
        {
            for s in 1..=lambda.rank() {
                let omega = Partition::fundamental(lambda.rank(), s);
                let expected = pieri_expand(&lambda, s);
                let outcome = verlinde_coefficients(&lambda, &omega, &self.opts)
                    .map_err(|e| format!("({lambda}) x omega_{s}: {e}"))
                    .and_then(|all| {
                        for (nu, r) in all {
                            if r.coefficient != expected.get(&nu) {
                                return Err(format!(
                                    "({lambda}) x omega_{s} -> ({nu}): verlinde {} vs Pieri {}",
                                    r.coefficient,
                                    expected.get(&nu)
                                ));
                            }
                        }
                        Ok(())
                    });
                tally.record(weight(&[&lambda, &omega]), outcome);
            }
        }
    }

    fn dimension(&self, tally: &mut Tally) {
        for (a, b) in dimension_pairs(50, self.seed)
            .into_iter()
            .filter(|(a, _)| a.rank() <= self.max_rank)
        {
            let outcome = verlinde_decompose(&a, &b, &self.opts)
                .map_err(|e| format!("({a}) x ({b}): {e}"))
                .and_then(|table| {
                    let (lhs, rhs) = (a.gl_dimension() * b.gl_dimension(), table.total_dimension());
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("({a}) x ({b}): dim product {lhs} vs table {rhs}"))
                    }
                });
            tally.record(weight(&[&a, &b]), outcome);
        }
    }

    fn backend_agreement(&self, tally: &mut Tally) {
        let float = VerlindeOptions {
            backend: lr_verlinde::verlinde::Backend::Float,
            ..self.opts.clone()
        };
        for t in &self.oracle_corpus {
            let n =
                choose_level(&[t.lambda.clone(), t.mu.clone(), t.nu.dual()]).unwrap_or(i64::MAX);
            if n.saturating_add(t.lambda.rank() as i64) > 60 {
                continue;
            }
            let outcome = verlinde(t, &self.opts).and_then(|e| {
                let f = lr_coefficient(&t.lambda, &t.mu, &t.nu, &float)
                    .map_err(|err| format!("{t}: {err}"))?;
                expect_eq(t, "exact vs float", e, f.coefficient)
            });
            tally.record(triple_weight(t), outcome);
        }
    }

    fn associativity(&self, tally: &mut Tally) {
        if self.max_rank < 2 {
            return;
        }
        for factors in factor_triples(20, self.seed) {
            let size: i64 = factors.iter().map(Partition::size).sum();
            let targets: BTreeSet<Partition> = partitions_in_box(2, 0, 6)
                .into_iter()
                .filter(|nu| nu.size() == size)
                .chain(candidate_targets(&factors[0], &factors[1]))
                .filter(|nu| nu.size() == size)
                .collect();
            let shown = factors
                .iter()
                .map(|f| format!("({f})"))
                .collect::<Vec<_>>()
                .join(" x ");
            let outcome = targets.iter().try_for_each(|nu| {
                let v = tensor_multiplicity(&factors, nu, &self.opts)
                    .map_err(|e| format!("{shown} -> ({nu}): {e}"))?
                    .coefficient;
                let o = iterated_multiplicity(&factors, nu).map_err(|e| e.to_string())?;
                if v == o {
                    Ok(())
                } else {
                    Err(format!("{shown} -> ({nu}): verlinde {v} vs iterated {o}"))
                }
            });
            let refs: Vec<&Partition> = factors.iter().collect();
            tally.record(weight(&refs), outcome);
        }
    }
}

pub fn run(suites: &[Suite], max_rank: usize, seed: u64, config: &Config) -> Exit {
    let chosen: BTreeSet<Suite> = if suites.is_empty() {
        ALL.into_iter().collect()
    } else {
        suites.iter().copied().collect()
    };
    let oracle_corpus = rank2_exhaustive()
        .into_iter()
        .chain(rank3_sampled(200, seed))
        .filter(|t| t.lambda.rank() <= max_rank)
        .collect();
    let ctx = Context {
        max_rank,
        seed,
        opts: VerlindeOptions {
            backend: lr_verlinde::verlinde::Backend::Exact,
            level: None,
            ..config.options()
        },
        oracle_corpus,
    };
    let mut all_ok = true;
    for suite in chosen {
        let mut tally = Tally::new();
        match suite {
            Suite::OracleEquivalence => ctx.oracle_equivalence(&mut tally),
            Suite::KIndependence => ctx.k_independence(&mut tally),
            Suite::Symmetry => ctx.symmetry(&mut tally),
            Suite::Translation => ctx.translation(&mut tally),
            Suite::Pieri => ctx.pieri(&mut tally),
            Suite::Dimension => ctx.dimension(&mut tally),
            Suite::BackendAgreement => ctx.backend_agreement(&mut tally),
            Suite::Associativity => ctx.associativity(&mut tally),
        }
        let status = if tally.ok() { "PASS" } else { "FAIL" };
        println!(
            "{}: {}/{} {status}",
            suite.name(),
            tally.passed,
            tally.total
        );
        if let Some((_, w)) = &tally.witness {
            println!("  witness: {w}");
        }
        all_ok &= tally.ok();
    }
    if all_ok {
        Exit::Ok
    } else {
        Exit::SelftestFailed
    }
}
