//! Tensor-product multiplicities for `GL_r` as a genus-zero Verlinde sum.
//!
//! For partitions `λ¹, …, λⁿ, ν` of rank `r` with `Σ|λ^j| = |ν|`, pick a level
//! `k` with `r · Σ spread < k` (spreads of the `λ^j` and of `ν*`), shift every
//! constituent to `^kλ = (k - λ_1 + λ_i)_i` and let `N = r + k`. Then
//!
//! ```text
//! mult = 1/(r N^{r-1}) Σ_v ζ^{-(|Σ|/r) Σ v_i} Π_{i<j} (2 sin π(v_i - v_j)/N)^2 Π_x S_{^kλ_x}(ζ^{v_1}, …, ζ^{v_r})
//! ```
//!
//! over `0 = v_r < … < v_1 < N`, with `ζ = exp(2πi/N)` and `|Σ|` the total size
//! of the shifted constituents. The exact backend evaluates every term in
//! `Q(ζ_N)` and the result must come out a nonnegative integer; anything else is
//! reported as an error rather than rounded.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{
    one_minus_root_inverse_coeffs, CyclotomicError, CyclotomicField, CyclotomicNumber,
};
use crate::lr_oracle::{candidate_targets, DecompositionTable};
use crate::partition::{check_ranks, Partition, PartitionError};
use crate::schur::{schur_product_eval, unit_root, EvaluationPoint, RootAlternants, SchurError};

/// Default integrality tolerance for the floating-point backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Summation vectors handed to one worker at a time.
const CHUNK: usize = 64;
/// Vectors materialized at once; bounds memory on large sums.
const BATCH: usize = CHUNK * 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerlindeError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error("at least one factor is required")]
    NoFactors,
    #[error("sizes do not balance: factors sum to {factors}, target has size {target}")]
    SizeMismatch { factors: i64, target: i64 },
    #[error("level {level} violates the small-weight condition; need k >= {minimum}")]
    LevelTooSmall { level: i64, minimum: i64 },
    #[error("total shifted size {sigma_size} is not divisible by rank {rank}")]
    IndivisibleSigma { sigma_size: i64, rank: usize },
    #[error("invalid summation vector {vector:?} for rank {rank}, level {level}")]
    InvalidVector {
        vector: Vec<i64>,
        rank: usize,
        level: i64,
    },
    #[error("Verlinde sum is not a nonnegative integer: {0}")]
    NonIntegerResult(String),
    #[error("coefficient {0} does not fit in 64 bits")]
    CoefficientOverflow(String),
    #[error(
        "float residual {residual:.3e} exceeds tolerance {tolerance:.1e} (nearest integer {}); use the exact backend",
        .result.coefficient
    )]
    ResidualTooLarge {
        residual: f64,
        tolerance: f64,
        result: Box<LRResult>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerlindeOptions {
    pub backend: Backend,
    /// Level `k`; the smallest admissible one when absent.
    pub level: Option<i64>,
    /// Integrality tolerance for [`Backend::Float`].
    pub tolerance: f64,
    /// Worker count; the global rayon pool when absent.
    pub threads: Option<usize>,
    /// Added to the phase exponent. Nonzero only to check that the
    /// verification suites catch a broken phase.
    #[doc(hidden)]
    pub phase_fault: i64,
}

impl Default for VerlindeOptions {
    fn default() -> Self {
        Self {
            backend: Backend::Exact,
            level: None,
            tolerance: DEFAULT_TOLERANCE,
            threads: None,
            phase_fault: 0,
        }
    }
}

impl VerlindeOptions {
    pub fn float() -> Self {
        Self {
            backend: Backend::Float,
            ..Self::default()
        }
    }

    pub fn with_level(mut self, level: i64) -> Self {
        self.level = Some(level);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }
}

/// Outcome of one multiplicity computation.
#[derive(Debug, Clone, PartialEq)]
pub struct LRResult {
    pub coefficient: u64,
    /// Level used; `None` when the size check short-circuited the sum.
    pub level: Option<i64>,
    pub term_count: u64,
    pub backend: Backend,
    /// `|value - nearest integer|` for the float backend.
    pub float_residual: Option<f64>,
    /// The exact rational sum before division by `r N^{r-1}`.
    pub raw_sum: Option<BigRational>,
    pub elapsed: Duration,
}

/// Level-shifted constituents of one multiplicity problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicType {
    rank: usize,
    level: i64,
    shifted: Vec<Partition>,
    sigma_size: i64,
}

impl ParabolicType {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// `N = r + k`, the order of the roots of unity in the sum.
    pub fn order(&self) -> usize {
        self.rank + self.level as usize
    }

    /// `^kλ¹, …, ^kλⁿ, ^kν*`, padded with `(k, …, k)` to at least three entries.
    pub fn shifted(&self) -> &[Partition] {
        &self.shifted
    }

    /// `|Σ|`, the total size of the shifted constituents.
    pub fn sigma_size(&self) -> i64 {
        self.sigma_size
    }

    /// Number of summation vectors, `C(N - 1, r - 1)`.
    pub fn term_count(&self) -> u64 {
        binomial(self.order() as u64 - 1, self.rank as u64 - 1)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Smallest level `k` with `Σ spread(p) / k < 1/r`, i.e. `r · Σ spread + 1`.
/// The list must already contain the dual of the target.
pub fn choose_level(ps: &[Partition]) -> Result<i64, VerlindeError> {
    let r = check_ranks(ps)? as i64;
    Ok(r * ps.iter().map(Partition::spread).sum::<i64>() + 1)
}

fn constituents(factors: &[Partition], target: &Partition) -> Vec<Partition> {
    factors
        .iter()
        .cloned()
        .chain(std::iter::once(target.dual()))
        .collect()
}

fn validate(factors: &[Partition], target: &Partition) -> Result<usize, VerlindeError> {
    if factors.is_empty() {
        return Err(VerlindeError::NoFactors);
    }
    Ok(check_ranks(factors.iter().chain(std::iter::once(target)))?)
}

/// Assembles the shifted constituents for `V(λ¹) ⊗ … ⊗ V(λⁿ) → V(ν)` at level `k`.
pub fn build_type(
    factors: &[Partition],
    target: &Partition,
    level: i64,
) -> Result<ParabolicType, VerlindeError> {
    let rank = validate(factors, target)?;
    let total: i64 = factors.iter().map(Partition::size).sum();
    if total != target.size() {
        return Err(VerlindeError::SizeMismatch {
            factors: total,
            target: target.size(),
        });
    }
    let parts = constituents(factors, target);
    let minimum = choose_level(&parts)?;
    if level < minimum {
        return Err(VerlindeError::LevelTooSmall { level, minimum });
    }
    let mut shifted = parts
        .iter()
        .map(|p| p.level_shift(level))
        .collect::<Result<Vec<_>, _>>()?;
    while shifted.len() < 3 {
        shifted.push(Partition::rectangle(rank, level));
    }
    let sigma_size = shifted.iter().map(Partition::size).sum();
    if sigma_size % rank as i64 != 0 {
        return Err(VerlindeError::IndivisibleSigma { sigma_size, rank });
    }
    Ok(ParabolicType {
        rank,
        level,
        shifted,
        sigma_size,
    })
}

/// A strictly decreasing `(v_1, …, v_r)` with `v_r = 0` and `v_1 < r + k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummationVector(Vec<i64>);

impl SummationVector {
    pub fn new(v: Vec<i64>, rank: usize, level: i64) -> Result<Self, VerlindeError> {
        let n = rank as i64 + level;
        let ok = v.len() == rank
            && v.last() == Some(&0)
            && v[0] < n
            && v.windows(2).all(|w| w[0] > w[1]);
        if ok {
            Ok(Self(v))
        } else {
            Err(VerlindeError::InvalidVector {
                vector: v,
                rank,
                level,
            })
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// Iterator over all summation vectors for `(r, k)` in lexicographically
/// decreasing order.
#[derive(Debug, Clone)]
pub struct SummationVectors {
    next: Option<Vec<i64>>,
}

impl Iterator for SummationVectors {
    type Item = SummationVector;

    fn next(&mut self) -> Option<SummationVector> {
        let current = self.next.take()?;
        let free = current.len() - 1;
        let mut v = current.clone();
        // decrement the rightmost free entry that stays above its floor
        // (entry i of the free prefix must be at least free - i), then refill
        // the entries to its right with their largest values
        if let Some(i) = (0..free).rev().find(|&i| v[i] > (free - i) as i64) {
            v[i] -= 1;
            for j in i + 1..free {
                v[j] = v[j - 1] - 1;
            }
            self.next = Some(v);
        }
        Some(SummationVector(current))
    }
}

pub fn enumerate_vectors(rank: usize, level: i64) -> SummationVectors {
    assert!(rank >= 1 && level >= 1, "rank and level must be positive");
    let n = rank as i64 + level;
    let mut first: Vec<i64> = (1..rank as i64).map(|i| n - i).collect();
    first.push(0);
    SummationVectors { next: Some(first) }
}

fn phase_exponent(ty: &ParabolicType, v: &[i64], fault: i64) -> i64 {
    let per_unit = ty.sigma_size / ty.rank as i64 + fault;
    let n = ty.order() as i64;
    (-(per_unit % n) * (v.iter().sum::<i64>() % n)).rem_euclid(n)
}

fn check_vector(ty: &ParabolicType, v: &SummationVector) -> Result<(), VerlindeError> {
    SummationVector::new(v.0.clone(), ty.rank, ty.level).map(|_| ())
}

/// One summand in `Q(ζ_N)`, assembled factor by factor: the phase, the sine
/// factors `(1 - ζ^d)(1 - ζ^{-d})` and the Schur product.
pub fn verlinde_term_exact(
    ty: &ParabolicType,
    v: &SummationVector,
) -> Result<CyclotomicNumber, VerlindeError> {
    check_vector(ty, v)?;
    let field = CyclotomicField::get(ty.order())?;
    let roots = RootAlternants::new(Arc::clone(&field), ty.rank);
    literal_term(ty, &roots, v.as_slice(), 0)
}

fn literal_term(
    ty: &ParabolicType,
    roots: &RootAlternants,
    v: &[i64],
    fault: i64,
) -> Result<CyclotomicNumber, VerlindeError> {
    let n = ty.order();
    let field = roots.field();
    let mut acc = CyclotomicNumber::root_in(field, phase_exponent(ty, v, fault));
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            acc = acc.mul(&CyclotomicNumber::two_sin_sq(n, v[i] - v[j])?)?;
        }
    }
    Ok(acc.mul(&roots.schur_product(&ty.shifted, v)?)?)
}

/// One summand in double precision.
pub fn verlinde_term_float(
    ty: &ParabolicType,
    v: &SummationVector,
) -> Result<Complex64, VerlindeError> {
    check_vector(ty, v)?;
    float_term(ty, v.as_slice(), 0)
}

fn float_term(ty: &ParabolicType, v: &[i64], fault: i64) -> Result<Complex64, VerlindeError> {
    let n = ty.order();
    let mut acc = unit_root(n, phase_exponent(ty, v, fault));
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let s = 2.0 * (std::f64::consts::PI * (v[i] - v[j]) as f64 / n as f64).sin();
            acc *= s * s;
        }
    }
    let pt = EvaluationPoint::<Complex64>::roots_of_unity(n, v)?;
    Ok(acc * schur_product_eval(&ty.shifted, &pt)?)
}

/// Integer-coefficient evaluation of exact terms.
///
/// With `d = v_i - v_j` and `m` constituents, `ζ^{v_i} - ζ^{v_j} = ζ^{v_i}(1 - ζ^{-d})`
/// and `(1 - ζ^d)(1 - ζ^{-d}) = -ζ^d (1 - ζ^{-d})^2`, so each pair contributes
/// `-ζ^{d - m v_i} (1 - ζ^{-d})^{-(m-2)}` against the `m` Vandermonde
/// denominators. The term becomes a monomial times `m` alternants times one
/// precomputed factor per pair, all with `i128` coefficients. Any overflow
/// falls back to [`literal_term`].
///
/// Several types that differ only in their last constituent are evaluated
/// together: everything but the last alternant is computed once per vector.
struct TermEvaluator<'a> {
    types: &'a [ParabolicType],
    roots: RootAlternants,
    /// `(1 - ζ^{-d})^{-(m-2)}` as power-basis numerators over a denominator.
    pair_factors: Vec<Option<(Vec<i128>, i128)>>,
    fault: i64,
}

/// The part of a term shared by all types at one summation vector.
struct Shared {
    num: Vec<i128>,
    den: i128,
    exponent: i64,
    negate: bool,
}

impl<'a> TermEvaluator<'a> {
    fn new(types: &'a [ParabolicType], fault: i64) -> Result<Self, VerlindeError> {
        let ty = &types[0];
        let m = ty.shifted.len();
        assert!(
            types.iter().all(|t| t.rank == ty.rank
                && t.level == ty.level
                && t.shifted.len() == m
                && t.shifted[..m - 1] == ty.shifted[..m - 1]),
            "types must differ only in their last constituent"
        );
        let field = CyclotomicField::get(ty.order())?;
        let roots = RootAlternants::new(Arc::clone(&field), ty.rank);
        let power = m - 2;
        let pair_factors = (0..ty.order() as i64)
            .map(|d| {
                let (base, den) = one_minus_root_inverse_coeffs(&field, -d)?;
                let mut acc = base.clone();
                let mut acc_den = den;
                for _ in 1..power {
                    acc = field.mul_reduced(&acc, &base)?;
                    acc_den = acc_den.checked_mul(den)?;
                }
                Some((acc, acc_den))
            })
            .collect();
        Ok(Self {
            types,
            roots,
            pair_factors,
            fault,
        })
    }

    fn shared(&self, v: &[i64]) -> Option<Shared> {
        if !self.roots.has_leibniz() {
            return None;
        }
        let field = self.roots.field();
        let ty = &self.types[0];
        let n = ty.order() as i64;
        let m = ty.shifted.len() as i64;
        let mut exponent = 0;
        let mut negate = false;
        let mut factors = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = v[i] - v[j];
                exponent = (exponent + d - m * (v[i] % n)).rem_euclid(n);
                negate = !negate;
                factors.push(self.pair_factors[d as usize].as_ref()?);
            }
        }
        let (head, _) = ty.shifted.split_at(ty.shifted.len() - 1);
        let mut num = field.reduce_group_ring(&self.roots.alternant_group_ring(&head[0], v, 0))?;
        for p in &head[1..] {
            let a = field.reduce_group_ring(&self.roots.alternant_group_ring(p, v, 0))?;
            num = field.mul_reduced(&num, &a)?;
        }
        let mut den: i128 = 1;
        for (f, d) in factors {
            num = field.mul_reduced(&num, f)?;
            den = den.checked_mul(*d)?;
        }
        Some(Shared {
            num,
            den,
            exponent,
            negate,
        })
    }

    /// Integer power-basis coefficients of the term of type `t`, or `None`
    /// when the `i128` route cannot be used.
    fn fast(&self, t: usize, v: &[i64], shared: &Shared) -> Option<Vec<i128>> {
        let field = self.roots.field();
        let ty = &self.types[t];
        let n = ty.order() as i64;
        let offset = (shared.exponent + phase_exponent(ty, v, self.fault)).rem_euclid(n);
        let last = ty.shifted.last()?;
        let a = field.reduce_group_ring(&self.roots.alternant_group_ring(last, v, offset))?;
        let num = field.mul_reduced(&shared.num, &a)?;
        // every factor is an algebraic integer, so the division is exact
        if num.iter().any(|c| c % shared.den != 0) {
            return None;
        }
        Some(
            num.into_iter()
                .map(|c| {
                    if shared.negate {
                        -(c / shared.den)
                    } else {
                        c / shared.den
                    }
                })
                .collect(),
        )
    }

    fn chunk_sums(
        &self,
        vectors: &[SummationVector],
    ) -> Result<Vec<CyclotomicNumber>, VerlindeError> {
        let field = self.roots.field();
        let mut ints = vec![vec![0i128; field.degree()]; self.types.len()];
        let mut spill = vec![CyclotomicNumber::zero(field); self.types.len()];
        for v in vectors {
            let v = v.as_slice();
            let shared = self.shared(v);
            for (t, ty) in self.types.iter().enumerate() {
                let added = shared
                    .as_ref()
                    .and_then(|s| self.fast(t, v, s))
                    .and_then(|term| {
                        let sum: Option<Vec<i128>> = ints[t]
                            .iter()
                            .zip(&term)
                            .map(|(a, b)| a.checked_add(*b))
                            .collect();
                        sum.map(|s| ints[t] = s)
                    });
                if added.is_none() {
                    spill[t] = spill[t].add(&literal_term(ty, &self.roots, v, self.fault)?)?;
                }
            }
        }
        ints.iter()
            .zip(&spill)
            .map(|(i, s)| Ok(CyclotomicNumber::from_integer_coeffs(field, i, 1).add(s)?))
            .collect()
    }
}

/// Pairwise summation of floating-point terms.
fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

fn run_chunks<T, F>(
    ty: &ParabolicType,
    threads: Option<usize>,
    eval: F,
) -> Result<Vec<T>, VerlindeError>
where
    T: Send,
    F: Fn(&[SummationVector]) -> Result<T, VerlindeError> + Sync,
{
    let work = || -> Result<Vec<T>, VerlindeError> {
        let mut it = enumerate_vectors(ty.rank, ty.level);
        let mut partials = Vec::new();
        loop {
            let batch: Vec<SummationVector> = it.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let sums: Vec<T> = batch
                .par_chunks(CHUNK)
                .map(&eval)
                .collect::<Result<_, _>>()?;
            partials.extend(sums);
        }
        Ok(partials)
    };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

fn normalizer(ty: &ParabolicType) -> BigInt {
    let n = BigInt::from(ty.order());
    BigInt::from(ty.rank) * num_traits::pow(n, ty.rank - 1)
}

/// Evaluates the full sum for a parabolic type.
pub fn verlinde_sum(ty: &ParabolicType, opts: &VerlindeOptions) -> Result<LRResult, VerlindeError> {
    let mut out = verlinde_sum_many(std::slice::from_ref(ty), opts)?;
    Ok(out.pop().expect("one result per type"))
}

/// Evaluates several types of equal rank and level that differ only in their
/// last constituent, sharing the common factors of each exact term. Every
/// result carries the total elapsed time.
pub fn verlinde_sum_many(
    types: &[ParabolicType],
    opts: &VerlindeOptions,
) -> Result<Vec<LRResult>, VerlindeError> {
    let start = Instant::now();
    if types.is_empty() {
        return Ok(Vec::new());
    }
    let mut results = match opts.backend {
        Backend::Exact => exact_sums(types, opts)?,
        Backend::Float => types
            .iter()
            .map(|ty| float_sum(ty, opts, start))
            .collect::<Result<_, _>>()?,
    };
    let elapsed = start.elapsed();
    for r in &mut results {
        r.elapsed = elapsed;
    }
    Ok(results)
}

fn new_result(ty: &ParabolicType, backend: Backend) -> LRResult {
    LRResult {
        coefficient: 0,
        level: Some(ty.level),
        term_count: ty.term_count(),
        backend,
        float_residual: None,
        raw_sum: None,
        elapsed: Duration::ZERO,
    }
}

fn exact_sums(
    types: &[ParabolicType],
    opts: &VerlindeOptions,
) -> Result<Vec<LRResult>, VerlindeError> {
    let evaluator = TermEvaluator::new(types, opts.phase_fault)?;
    let partials = run_chunks(&types[0], opts.threads, |c| evaluator.chunk_sums(c))?;
    let field = evaluator.roots.field();
    types
        .iter()
        .enumerate()
        .map(|(t, ty)| {
            let total = partials
                .iter()
                .try_fold(CyclotomicNumber::zero(field), |acc, x| acc.add(&x[t]))?;
            let raw = total.to_rational()?;
            let value = &raw / BigRational::from_integer(normalizer(ty));
            if !value.is_integer() || value.is_negative() {
                return Err(VerlindeError::NonIntegerResult(value.to_string()));
            }
            let mut result = new_result(ty, Backend::Exact);
            result.coefficient = value
                .to_integer()
                .to_u64()
                .ok_or_else(|| VerlindeError::CoefficientOverflow(value.to_string()))?;
            result.raw_sum = Some(raw);
            Ok(result)
        })
        .collect()
}

fn float_sum(
    ty: &ParabolicType,
    opts: &VerlindeOptions,
    start: Instant,
) -> Result<LRResult, VerlindeError> {
    let fault = opts.phase_fault;
    let partials = run_chunks(ty, opts.threads, |chunk| {
        let terms = chunk
            .iter()
            .map(|v| float_term(ty, v.as_slice(), fault))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(pairwise_sum(&terms))
    })?;
    let value = pairwise_sum(&partials) / normalizer(ty).to_f64().unwrap_or(f64::INFINITY);
    let nearest = value.re.round();
    let residual = (value - nearest).norm();
    if nearest < 0.0 || !nearest.is_finite() {
        return Err(VerlindeError::NonIntegerResult(value.to_string()));
    }
    let mut result = new_result(ty, Backend::Float);
    result.coefficient = nearest as u64;
    result.float_residual = Some(residual);
    if residual > opts.tolerance {
        result.elapsed = start.elapsed();
        return Err(VerlindeError::ResidualTooLarge {
            residual,
            tolerance: opts.tolerance,
            result: Box::new(result),
        });
    }
    Ok(result)
}

fn short_circuit(backend: Backend) -> LRResult {
    LRResult {
        coefficient: 0,
        level: None,
        term_count: 0,
        backend,
        float_residual: None,
        raw_sum: None,
        elapsed: Duration::ZERO,
    }
}

/// Multiplicity of `V(ν)` in `V(λ¹) ⊗ … ⊗ V(λⁿ)`.
///
/// Unbalanced sizes give 0 without running the sum. A user level in `opts`
/// is validated against the small-weight condition.
pub fn tensor_multiplicity(
    factors: &[Partition],
    target: &Partition,
    opts: &VerlindeOptions,
) -> Result<LRResult, VerlindeError> {
    validate(factors, target)?;
    let total: i64 = factors.iter().map(Partition::size).sum();
    if total != target.size() {
        return Ok(short_circuit(opts.backend));
    }
    let level = match opts.level {
        Some(k) => k,
        None => choose_level(&constituents(factors, target))?,
    };
    let ty = build_type(factors, target, level)?;
    verlinde_sum(&ty, opts)
}

/// `c^ν_{λμ}`.
pub fn lr_coefficient(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    opts: &VerlindeOptions,
) -> Result<LRResult, VerlindeError> {
    tensor_multiplicity(&[lambda.clone(), mu.clone()], nu, opts)
}

/// `c^ν_{λμ}` for every candidate target `ν` of [`candidate_targets`], in one
/// pass at a common level (the largest minimal level among the candidates
/// unless `opts` fixes one).
pub fn verlinde_coefficients(
    lambda: &Partition,
    mu: &Partition,
    opts: &VerlindeOptions,
) -> Result<Vec<(Partition, LRResult)>, VerlindeError> {
    check_ranks([lambda, mu])?;
    let factors = [lambda.clone(), mu.clone()];
    let targets = candidate_targets(lambda, mu);
    let level = match opts.level {
        Some(k) => k,
        None => targets
            .iter()
            .map(|nu| choose_level(&constituents(&factors, nu)))
            .try_fold(1, |acc, k| k.map(|k| acc.max(k)))?,
    };
    let types = targets
        .iter()
        .map(|nu| build_type(&factors, nu, level))
        .collect::<Result<Vec<_>, _>>()?;
    let results = verlinde_sum_many(&types, opts)?;
    Ok(targets.into_iter().zip(results).collect())
}

/// `V(λ) ⊗ V(μ)` with every multiplicity computed by the Verlinde sum.
pub fn verlinde_decompose(
    lambda: &Partition,
    mu: &Partition,
    opts: &VerlindeOptions,
) -> Result<DecompositionTable, VerlindeError> {
    let entries = verlinde_coefficients(lambda, mu, opts)?
        .into_iter()
        .map(|(nu, r)| (nu, r.coefficient))
        .collect::<BTreeMap<_, _>>();
    Ok(DecompositionTable::from_map(entries))
}
