use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use lr_verlinde::lr_oracle::{
    iterated_multiplicity, lr_tableaux_count, tensor_decompose, DecompositionTable, OracleError,
};
use lr_verlinde::partition::{Partition, PartitionError};
use lr_verlinde::verlinde::{
    choose_level, tensor_multiplicity, verlinde_coefficients, Backend, LRResult, VerlindeError,
    VerlindeOptions,
};
use serde::Serialize;

use crate::args::{Config, Method, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    SelftestFailed = 1,
    Input = 2,
    Computation = 3,
    Disagreement = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Input,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<VerlindeError> for CliError {
    fn from(e: VerlindeError) -> Self {
        let exit = match e {
            VerlindeError::Partition(_) | VerlindeError::NoFactors => Exit::Input,
            _ => Exit::Computation,
        };
        Self {
            exit,
            message: e.to_string(),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let exit = match e {
            OracleError::Partition(_) => Exit::Input,
            _ => Exit::Computation,
        };
        Self {
            exit,
            message: e.to_string(),
        }
    }
}

fn same_rank(ps: &[&Partition]) -> Result<(), CliError> {
    let r = ps[0].rank();
    match ps.iter().find(|p| p.rank() != r) {
        Some(p) => Err(CliError::input(
            PartitionError::RankMismatch {
                expected: r,
                found: p.rank(),
            }
            .to_string(),
        )),
        None => Ok(()),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Verlinde => "verlinde",
        Method::Tableaux => "tableaux",
        Method::Both => "both",
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Inputs {
    Triple {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
    },
    Tensor {
        factors: Vec<Partition>,
        target: Partition,
    },
    Pair {
        lambda: Partition,
        mu: Partition,
    },
}

#[derive(Debug, Serialize)]
pub struct CoefficientReport {
    pub coefficient: u64,
    pub method: &'static str,
    pub backend: Option<Backend>,
    pub level: Option<i64>,
    pub terms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tableaux: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub elapsed_ms: f64,
    pub inputs: Inputs,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn verdict(agree: bool) -> &'static str {
    if agree {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

impl CoefficientReport {
    fn render(&self, output: Output) -> String {
        match output {
            Output::Json => json(self),
            Output::Csv => format!(
                "coefficient,method,backend,level,terms,residual,tableaux,agree,elapsed_ms\n{},{},{},{},{},{},{},{},{}\n",
                self.coefficient,
                self.method,
                opt(&self.backend),
                opt(&self.level),
                opt(&self.terms),
                opt(&self.residual),
                opt(&self.tableaux),
                opt(&self.agree),
                self.elapsed_ms
            ),
            Output::Text => {
                let mut s = format!("coefficient: {}\nmethod: {}\n", self.coefficient, self.method);
                if let Some(b) = self.backend {
                    s += &format!("backend: {b}\n");
                }
                if let Some(k) = self.level {
                    s += &format!("level: {k}\n");
                }
                if let Some(t) = self.terms {
                    s += &format!("terms: {t}\n");
                }
                if let Some(r) = self.residual {
                    s += &format!("residual: {r:.3e}\n");
                }
                if let Some(t) = self.tableaux {
                    s += &format!("tableaux: {t}\n");
                }
                if let Some(a) = self.agree {
                    s += &format!("{}\n", verdict(a));
                }
                s + &format!("elapsed_ms: {}\n", self.elapsed_ms)
            }
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

fn finish(report: &CoefficientReport, output: Output) -> Exit {
    print!("{}", report.render(output));
    if report.agree == Some(false) {
        Exit::Disagreement
    } else {
        Exit::Ok
    }
}

fn coefficient_report(
    verlinde: Option<LRResult>,
    tableaux: Option<u64>,
    method: Method,
    config: &Config,
    start: Instant,
    inputs: Inputs,
) -> CoefficientReport {
    let coefficient = verlinde
        .as_ref()
        .map(|r| r.coefficient)
        .or(tableaux)
        .unwrap_or_default();
    let both = method == Method::Both;
    CoefficientReport {
        coefficient,
        method: method_name(method),
        backend: verlinde.as_ref().map(|r| r.backend),
        level: verlinde.as_ref().and_then(|r| r.level),
        terms: verlinde.as_ref().map(|r| r.term_count),
        residual: verlinde.as_ref().and_then(|r| r.float_residual),
        tableaux: tableaux.filter(|_| both),
        agree: both.then(|| Some(coefficient) == tableaux),
        elapsed_ms: config.elapsed_ms(start.elapsed()),
        inputs,
    }
}

pub fn compute(
    lambda: Partition,
    mu: Partition,
    nu: Partition,
    verify: bool,
    config: &Config,
) -> Result<Exit, CliError> {
    same_rank(&[&lambda, &mu, &nu])?;
    let method = if verify { Method::Both } else { config.method };
    let start = Instant::now();
    let verlinde = match method {
        Method::Tableaux => None,
        _ => Some(lr_verlinde::verlinde::lr_coefficient(
            &lambda,
            &mu,
            &nu,
            &config.options(),
        )?),
    };
    let tableaux = match method {
        Method::Verlinde => None,
        _ => Some(lr_tableaux_count(&lambda, &mu, &nu)?),
    };
    let report = coefficient_report(
        verlinde,
        tableaux,
        method,
        config,
        start,
        Inputs::Triple { lambda, mu, nu },
    );
    Ok(finish(&report, config.output))
}

pub fn tensor(
    factors: Vec<Partition>,
    target: Partition,
    config: &Config,
) -> Result<Exit, CliError> {
    let mut all: Vec<&Partition> = factors.iter().collect();
    all.push(&target);
    same_rank(&all)?;
    let method = config.method;
    let start = Instant::now();
    let verlinde = match method {
        Method::Tableaux => None,
        _ => Some(tensor_multiplicity(&factors, &target, &config.options())?),
    };
    let tableaux = match method {
        Method::Verlinde => None,
        _ => Some(iterated_multiplicity(&factors, &target)?),
    };
    let report = coefficient_report(
        verlinde,
        tableaux,
        method,
        config,
        start,
        Inputs::Tensor { factors, target },
    );
    Ok(finish(&report, config.output))
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub nu: Partition,
    pub coefficient: u64,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub nu: Partition,
    pub verlinde: u64,
    pub tableaux: u64,
}

#[derive(Debug, Serialize)]
pub struct DimensionCheck {
    pub product: String,
    pub table: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct DecompositionReport {
    pub entries: Vec<Entry>,
    pub method: &'static str,
    pub backend: Option<Backend>,
    pub level: Option<i64>,
    pub terms: Option<u64>,
    pub dimension: DimensionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<Mismatch>,
    pub elapsed_ms: f64,
    pub inputs: Inputs,
}

impl DecompositionReport {
    fn render(&self, output: Output) -> String {
        match output {
            Output::Json => json(self),
            Output::Csv => {
                let mut s = String::from("nu,coefficient\n");
                for e in &self.entries {
                    s += &format!("\"{}\",{}\n", e.nu, e.coefficient);
                }
                s
            }
            Output::Text => {
                let mut s = String::new();
                for e in &self.entries {
                    s += &format!("({}): {}\n", e.nu, e.coefficient);
                }
                let terms: Vec<String> = self
                    .entries
                    .iter()
                    .map(|e| {
                        let d = e.nu.gl_dimension();
                        if e.coefficient == 1 {
                            d.to_string()
                        } else {
                            format!("{}*{d}", e.coefficient)
                        }
                    })
                    .collect();
                s += &format!(
                    "identity: {} = {} {}\n",
                    self.dimension.product,
                    terms.join(" + "),
                    if self.dimension.pass { "PASS" } else { "FAIL" }
                );
                if let Some(a) = self.agree {
                    s += &format!("verify: {}\n", verdict(a));
                }
                for m in &self.mismatches {
                    s += &format!(
                        "  ({}): verlinde {} tableaux {}\n",
                        m.nu, m.verlinde, m.tableaux
                    );
                }
                s
            }
        }
    }
}

pub fn decompose(
    lambda: Partition,
    mu: Partition,
    verify: bool,
    config: &Config,
) -> Result<Exit, CliError> {
    same_rank(&[&lambda, &mu])?;
    let method = if verify { Method::Both } else { config.method };
    let start = Instant::now();
    let verlinde = match method {
        Method::Tableaux => None,
        _ => Some(verlinde_coefficients(&lambda, &mu, &config.options())?),
    };
    let tableaux = match method {
        Method::Verlinde => None,
        _ => Some(tensor_decompose(&lambda, &mu)?),
    };
    let verlinde_table = verlinde.as_ref().map(|all| {
        DecompositionTable::from_map(
            all.iter()
                .map(|(nu, r)| (nu.clone(), r.coefficient))
                .collect::<BTreeMap<_, _>>(),
        )
    });
    let table = verlinde_table
        .clone()
        .or_else(|| tableaux.clone())
        .expect("one method ran");
    let mut mismatches = Vec::new();
    if let (Some(v), Some(t)) = (&verlinde_table, &tableaux) {
        let keys: BTreeMap<&Partition, ()> =
            v.iter().chain(t.iter()).map(|(k, _)| (k, ())).collect();
        for nu in keys.into_keys().rev() {
            if v.get(nu) != t.get(nu) {
                mismatches.push(Mismatch {
                    nu: nu.clone(),
                    verlinde: v.get(nu),
                    tableaux: t.get(nu),
                });
            }
        }
    }
    let product = lambda.gl_dimension() * mu.gl_dimension();
    let total = table.total_dimension();
    let first = verlinde
        .as_ref()
        .and_then(|all| all.first().map(|(_, r)| r.clone()));
    let report = DecompositionReport {
        entries: table
            .iter()
            .map(|(nu, c)| Entry {
                nu: nu.clone(),
                coefficient: c,
            })
            .collect(),
        method: method_name(method),
        backend: first.as_ref().map(|r| r.backend),
        level: first.as_ref().and_then(|r| r.level),
        terms: first.as_ref().map(|r| r.term_count),
        dimension: DimensionCheck {
            pass: product == total,
            product: product.to_string(),
            table: total.to_string(),
        },
        agree: (method == Method::Both).then_some(mismatches.is_empty()),
        mismatches,
        elapsed_ms: config.elapsed_ms(start.elapsed()),
        inputs: Inputs::Pair { lambda, mu },
    };
    print!("{}", report.render(config.output));
    Ok(if report.agree == Some(false) || !report.dimension.pass {
        Exit::Disagreement
    } else {
        Exit::Ok
    })
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub r: usize,
    pub k: i64,
    pub terms: u64,
    pub backend: Backend,
    pub ms: f64,
}

/// `V(ω_1) ⊗ V(ω_1) → V(ω_2)` when `k` admits it, else the trivial triple.
fn bench_instance(r: usize, k: i64) -> [Partition; 3] {
    if r >= 2 {
        let w1 = Partition::fundamental(r, 1);
        let w2 = Partition::fundamental(r, 2);
        let ok = choose_level(&[w1.clone(), w1.clone(), w2.dual()]).is_ok_and(|min| k >= min);
        if ok {
            return [w1.clone(), w1, w2];
        }
    }
    let z = Partition::zero(r);
    [z.clone(), z.clone(), z]
}

pub fn bench(rank: Option<usize>, levels: Vec<i64>, config: &Config) -> Result<Exit, CliError> {
    let plan: Vec<(usize, Vec<i64>)> = match rank {
        Some(r) => {
            if r == 0 || levels.iter().any(|&k| k < 1) {
                return Err(CliError::input("rank and levels must be positive"));
            }
            vec![(r, levels)]
        }
        None => vec![(2, vec![5, 11, 21]), (3, vec![10, 16])],
    };
    let mut rows = Vec::new();
    for (r, ks) in plan {
        for k in ks {
            let [l, m, n] = bench_instance(r, k);
            for backend in [Backend::Exact, Backend::Float] {
                let opts = VerlindeOptions {
                    backend,
                    level: Some(k),
                    ..config.options()
                };
                let start = Instant::now();
                let res = lr_verlinde::verlinde::lr_coefficient(&l, &m, &n, &opts)?;
                rows.push(BenchRow {
                    r,
                    k,
                    terms: res.term_count,
                    backend,
                    ms: config.elapsed_ms(start.elapsed()),
                });
            }
        }
    }
    match config.output {
        Output::Json => print!("{}", json(&rows)),
        Output::Text | Output::Csv => {
            println!("r,k,terms,backend,ms");
            for row in &rows {
                println!(
                    "{},{},{},{},{}",
                    row.r, row.k, row.terms, row.backend, row.ms
                );
            }
        }
    }
    Ok(Exit::Ok)
}
