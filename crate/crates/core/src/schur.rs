//! Schur polynomials evaluated as bialternants
//! `S_λ(z) = det(z_j^{λ_i + r - i}) / det(z_j^{r - i})`.
//!
//! The evaluation is generic over [`FieldValue`], implemented for exact
//! cyclotomic numbers, exact rationals and `Complex64`. Exact determinants use
//! fraction-free (Bareiss) elimination; floating-point ones use Gaussian
//! elimination with partial pivoting.
//!
//! [`RootAlternants`] is a specialization for points that are powers of one
//! root of unity `ζ_N`. Every matrix entry is then a power of `ζ_N`, so the
//! alternant is a signed sum of `r!` monomials and the Vandermonde inverse has a
//! closed form.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::{
    one_minus_root_inverse_coeffs, CyclotomicError, CyclotomicField, CyclotomicNumber,
};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("evaluation point has coinciding values at positions {i} and {j}")]
    DegeneratePoint { i: usize, j: usize },
    #[error("partition {0} has negative parts; shift it first")]
    NegativePart(String),
    #[error("partition of rank {partition} evaluated at {point} values")]
    RankMismatch { partition: usize, point: usize },
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// Field operations needed by the determinant and bialternant routines.
pub trait FieldValue: Clone {
    /// Whether arithmetic is exact (selects Bareiss over pivoted elimination).
    const EXACT: bool;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` when `other` is zero.
    fn div(&self, other: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Size used for pivot selection in floating-point elimination.
    fn magnitude(&self) -> f64;

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl FieldValue for Complex64 {
    const EXACT: bool = false;

    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Option<Self> {
        (!FieldValue::is_zero(other)).then(|| self / other)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl FieldValue for BigRational {
    const EXACT: bool = true;

    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Panics if two operands come from different cyclotomic fields; every
/// evaluation point and matrix is built over a single order.
impl FieldValue for CyclotomicNumber {
    const EXACT: bool = true;

    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.field())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.field())
    }
    fn add(&self, other: &Self) -> Self {
        CyclotomicNumber::add(self, other).expect("operands share one cyclotomic order")
    }
    fn sub(&self, other: &Self) -> Self {
        CyclotomicNumber::sub(self, other).expect("operands share one cyclotomic order")
    }
    fn mul(&self, other: &Self) -> Self {
        CyclotomicNumber::mul(self, other).expect("operands share one cyclotomic order")
    }
    fn div(&self, other: &Self) -> Option<Self> {
        match CyclotomicNumber::div(self, other) {
            Ok(q) => Some(q),
            Err(CyclotomicError::DivisionByZero) => None,
            Err(e) => panic!("{e}"),
        }
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
}

/// Determinant of a nonempty square matrix.
pub fn determinant<F: FieldValue>(m: &[Vec<F>]) -> F {
    assert!(!m.is_empty(), "determinant of an empty matrix");
    assert!(
        m.iter().all(|row| row.len() == m.len()),
        "matrix must be square"
    );
    if F::EXACT {
        bareiss(m.to_vec())
    } else {
        pivoted_elimination(m.to_vec())
    }
}

fn bareiss<F: FieldValue>(mut a: Vec<Vec<F>>) -> F {
    let n = a.len();
    let mut negate = false;
    let mut prev = a[0][0].one_like();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return a[0][0].zero_like();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = cross.div(&prev).expect("Bareiss pivots are nonzero");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

fn pivoted_elimination<F: FieldValue>(mut a: Vec<Vec<F>>) -> F {
    let n = a.len();
    let mut det = a[0][0].one_like();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].magnitude().total_cmp(&a[j][k].magnitude()))
            .expect("nonempty range");
        if a[p][k].is_zero() {
            return det.zero_like();
        }
        if p != k {
            a.swap(p, k);
            det = det.neg();
        }
        det = det.mul(&a[k][k]);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = row[k].div(&pivot[k]).expect("pivot is nonzero");
            for (x, y) in row[k + 1..].iter_mut().zip(&pivot[k + 1..]) {
                *x = x.sub(&f.mul(y));
            }
        }
    }
    det
}

/// A tuple `(z_1, …, z_r)` of pairwise distinct field values.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationPoint<F> {
    values: Vec<F>,
}

impl<F: FieldValue> EvaluationPoint<F> {
    pub fn new(values: Vec<F>) -> Result<Self, SchurError> {
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if values[i].sub(&values[j]).is_zero() {
                    return Err(SchurError::DegeneratePoint { i, j });
                }
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }
}

impl EvaluationPoint<CyclotomicNumber> {
    /// `(ζ_N^{v_1}, …, ζ_N^{v_r})`.
    pub fn roots_of_unity(field: &Arc<CyclotomicField>, exps: &[i64]) -> Result<Self, SchurError> {
        Self::new(
            exps.iter()
                .map(|&e| CyclotomicNumber::root_in(field, e))
                .collect(),
        )
    }
}

impl EvaluationPoint<Complex64> {
    /// `(exp(2πi v_1/N), …, exp(2πi v_r/N))`.
    pub fn roots_of_unity(order: usize, exps: &[i64]) -> Result<Self, SchurError> {
        Self::new(exps.iter().map(|&e| unit_root(order, e)).collect())
    }
}

/// `exp(2πi e / N)` with the exponent reduced first.
pub fn unit_root(order: usize, e: i64) -> Complex64 {
    let e = e.rem_euclid(order as i64);
    Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / order as f64)
}

/// `Π_{i<j} (z_i - z_j) = det(z_j^{r-i})`.
pub fn vandermonde<F: FieldValue>(pt: &EvaluationPoint<F>) -> Result<F, SchurError> {
    let z = pt.values();
    let Some(first) = z.first() else {
        return Err(SchurError::RankMismatch {
            partition: 0,
            point: 0,
        });
    };
    let mut acc = first.one_like();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let diff = z[i].sub(&z[j]);
            if diff.is_zero() {
                return Err(SchurError::DegeneratePoint { i, j });
            }
            acc = acc.mul(&diff);
        }
    }
    Ok(acc)
}

/// Memoized powers `z^e` for each coordinate of one evaluation point.
struct PowerTable<'a, F> {
    values: &'a [F],
    squares: Vec<Vec<F>>,
    memo: Vec<HashMap<u64, F>>,
}

impl<'a, F: FieldValue> PowerTable<'a, F> {
    fn new(values: &'a [F]) -> Self {
        Self {
            values,
            squares: values.iter().map(|z| vec![z.clone()]).collect(),
            memo: vec![HashMap::new(); values.len()],
        }
    }

    fn get(&mut self, j: usize, e: u64) -> F {
        if let Some(v) = self.memo[j].get(&e) {
            return v.clone();
        }
        let bits = 64 - e.leading_zeros() as usize;
        let sq = &mut self.squares[j];
        while sq.len() < bits {
            let last = sq.last().expect("seeded with z");
            let next = last.mul(last);
            sq.push(next);
        }
        let mut acc = self.values[j].one_like();
        for (b, s) in sq.iter().enumerate().take(bits) {
            if e >> b & 1 == 1 {
                acc = acc.mul(s);
            }
        }
        self.memo[j].insert(e, acc.clone());
        acc
    }
}

fn check_partition(p: &Partition, rank: usize) -> Result<(), SchurError> {
    if p.rank() != rank {
        return Err(SchurError::RankMismatch {
            partition: p.rank(),
            point: rank,
        });
    }
    if !p.is_nonnegative() {
        return Err(SchurError::NegativePart(p.to_string()));
    }
    Ok(())
}

/// Exponents `λ_i + r - 1 - i` (0-based `i`) of the bialternant numerator.
fn shifted_exponents(p: &Partition) -> impl Iterator<Item = u64> + '_ {
    let r = p.rank() as i64;
    p.parts()
        .iter()
        .enumerate()
        .map(move |(i, &l)| (l + r - 1 - i as i64) as u64)
}

fn alternant<F: FieldValue>(p: &Partition, powers: &mut PowerTable<'_, F>) -> F {
    let r = p.rank();
    let matrix: Vec<Vec<F>> = shifted_exponents(p)
        .map(|e| (0..r).map(|j| powers.get(j, e)).collect())
        .collect();
    determinant(&matrix)
}

/// `S_λ(z)` for a nonnegative partition `λ` of rank `r` at an `r`-point.
pub fn schur_eval<F: FieldValue>(p: &Partition, pt: &EvaluationPoint<F>) -> Result<F, SchurError> {
    check_partition(p, pt.rank())?;
    let vand = vandermonde(pt)?;
    let mut powers = PowerTable::new(pt.values());
    Ok(alternant(p, &mut powers)
        .div(&vand)
        .expect("Vandermonde of a valid point is nonzero"))
}

/// `Π_x S_{λ_x}(z)` over a list of nonnegative partitions, sharing the
/// Vandermonde denominator and the power table.
pub fn schur_product_eval<F: FieldValue>(
    partitions: &[Partition],
    pt: &EvaluationPoint<F>,
) -> Result<F, SchurError> {
    for p in partitions {
        check_partition(p, pt.rank())?;
    }
    let vand = vandermonde(pt)?;
    let mut powers = PowerTable::new(pt.values());
    let mut acc = vand.one_like();
    for p in partitions {
        let s = alternant(p, &mut powers)
            .div(&vand)
            .expect("Vandermonde of a valid point is nonzero");
        acc = acc.mul(&s);
    }
    Ok(acc)
}

/// Permutations of `0..r` with their signs, in Heap order.
fn signed_permutations(r: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..r).collect();
    let mut c = vec![0usize; r];
    let mut odd = false;
    out.push((perm.clone(), odd));
    let mut i = 0;
    while i < r {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            out.push((perm.clone(), odd));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Largest rank for which alternants are expanded over all `r!` permutations.
pub const LEIBNIZ_MAX_RANK: usize = 7;

/// Bialternant evaluation at points `ζ_N^{v_j}`, one field and rank at a time.
pub struct RootAlternants {
    field: Arc<CyclotomicField>,
    rank: usize,
    perms: Vec<(Vec<usize>, bool)>,
}

impl RootAlternants {
    pub fn new(field: Arc<CyclotomicField>, rank: usize) -> Self {
        let perms = if rank <= LEIBNIZ_MAX_RANK {
            signed_permutations(rank)
        } else {
            Vec::new()
        };
        Self { field, rank, perms }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Whether [`Self::alternant_group_ring`] is available for this rank.
    pub fn has_leibniz(&self) -> bool {
        !self.perms.is_empty()
    }

    /// `ζ^{offset} · det(ζ^{v_j e_i})` as group-ring coefficients (entry `t`
    /// is the coefficient of `ζ^t`, `t < N`). Requires `rank <= LEIBNIZ_MAX_RANK`.
    pub fn alternant_group_ring(&self, p: &Partition, v: &[i64], offset: i64) -> Vec<i128> {
        assert!(self.has_leibniz(), "rank too large for Leibniz expansion");
        let n = self.field.order() as i64;
        let exps: Vec<i64> = shifted_exponents(p).map(|e| e as i64 % n).collect();
        let mut acc = vec![0i128; n as usize];
        for (perm, odd) in &self.perms {
            let mut t = offset;
            for (i, &j) in perm.iter().enumerate() {
                t += exps[i] * v[j];
            }
            acc[t.rem_euclid(n) as usize] += if *odd { -1 } else { 1 };
        }
        acc
    }

    /// `det(ζ^{v_j (λ_i + r - 1 - i)})`.
    pub fn alternant(&self, p: &Partition, v: &[i64]) -> Result<CyclotomicNumber, SchurError> {
        check_partition(p, self.rank)?;
        if v.len() != self.rank {
            return Err(SchurError::RankMismatch {
                partition: self.rank,
                point: v.len(),
            });
        }
        if self.has_leibniz() {
            let c: Vec<BigInt> = self
                .alternant_group_ring(p, v, 0)
                .into_iter()
                .map(BigInt::from)
                .collect();
            return Ok(CyclotomicNumber::from_group_ring(&self.field, &c));
        }
        let pt = EvaluationPoint::<CyclotomicNumber>::roots_of_unity(&self.field, v)?;
        let mut powers = PowerTable::new(pt.values());
        Ok(alternant(p, &mut powers))
    }

    /// `1 / Π_{i<j}(ζ^{v_i} - ζ^{v_j})` via `ζ^{v_i} - ζ^{v_j} = ζ^{v_i}(1 - ζ^{v_j - v_i})`.
    pub fn inverse_vandermonde(&self, v: &[i64]) -> Result<CyclotomicNumber, SchurError> {
        let mut acc = CyclotomicNumber::one(&self.field);
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let (num, den) = one_minus_root_inverse_coeffs(&self.field, v[j] - v[i])
                    .ok_or(SchurError::DegeneratePoint { i, j })?;
                let inv = CyclotomicNumber::from_integer_coeffs(&self.field, &num, den);
                acc = acc
                    .mul(&inv)?
                    .mul(&CyclotomicNumber::root_in(&self.field, -v[i]))?;
            }
        }
        Ok(acc)
    }

    /// `Π_x S_{λ_x}(ζ^{v_1}, …, ζ^{v_r})`.
    pub fn schur_product(
        &self,
        partitions: &[Partition],
        v: &[i64],
    ) -> Result<CyclotomicNumber, SchurError> {
        let inv = self.inverse_vandermonde(v)?;
        let mut acc = CyclotomicNumber::one(&self.field);
        for p in partitions {
            acc = acc.mul(&self.alternant(p, v)?)?.mul(&inv)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn qpoint(v: &[i64]) -> EvaluationPoint<BigRational> {
        EvaluationPoint::new(v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    /// Monomial expansion: sum over semistandard tableaux of shape `λ` with
    /// entries in `1..=r` of `z^{content}`.
    fn tableau_sum(shape: &[i64], z: &[i64]) -> BigRational {
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j)))
            .collect();
        fn go(
            cells: &[(usize, usize)],
            at: usize,
            grid: &mut Vec<Vec<usize>>,
            z: &[i64],
        ) -> BigRational {
            if at == cells.len() {
                let mut m = BigRational::one();
                for row in grid.iter() {
                    for &e in row {
                        m *= BigRational::from_integer(z[e - 1].into());
                    }
                }
                return m;
            }
            let (i, j) = cells[at];
            let mut lo = 1;
            if j > 0 {
                lo = lo.max(grid[i][j - 1]);
            }
            if i > 0 {
                lo = lo.max(grid[i - 1][j] + 1);
            }
            let mut total = BigRational::zero();
            for e in lo..=z.len() {
                grid[i][j] = e;
                total += go(cells, at + 1, grid, z);
            }
            grid[i][j] = 0;
            total
        }
        let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
        go(&cells, 0, &mut grid, z)
    }

    #[test]
    fn determinant_examples() {
        let id: Vec<Vec<BigRational>> = (0..3)
            .map(|i| (0..3).map(|j| q(i64::from(i == j))).collect())
            .collect();
        assert_eq!(determinant(&id), q(1));
        assert_eq!(determinant(&[vec![q(1), q(2)], vec![q(3), q(4)]]), q(-2));
        assert_eq!(determinant(&[vec![q(1), q(2)], vec![q(1), q(2)]]), q(0));
        let c = |x: f64| Complex64::new(x, 0.0);
        let d = determinant(&[vec![c(1.0), c(2.0)], vec![c(3.0), c(4.0)]]);
        assert!((d - c(-2.0)).norm() < 1e-12);
        // zero leading pivot forces a row swap
        let m = vec![
            vec![q(0), q(1), q(2)],
            vec![q(3), q(0), q(1)],
            vec![q(1), q(4), q(0)],
        ];
        assert_eq!(determinant(&m), q(25));
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde(&qpoint(&[2, 1])).unwrap(), q(1));
        assert_eq!(vandermonde(&qpoint(&[3, 2, 1])).unwrap(), q(2));
        let f = CyclotomicField::get(3).unwrap();
        let pt = EvaluationPoint::<CyclotomicNumber>::roots_of_unity(&f, &[1, 2]).unwrap();
        let expect = CyclotomicNumber::root_in(&f, 1)
            .sub(&CyclotomicNumber::root_in(&f, 2))
            .unwrap();
        assert_eq!(vandermonde(&pt).unwrap(), expect);
        assert_eq!(
            EvaluationPoint::new(vec![q(1), q(2), q(1)]),
            Err(SchurError::DegeneratePoint { i: 0, j: 2 })
        );
    }

    #[test]
    fn schur_eval_examples() {
        assert_eq!(
            schur_eval(&p(&[0, 0, 0]), &qpoint(&[5, 2, -3])).unwrap(),
            q(1)
        );
        assert_eq!(schur_eval(&p(&[1, 0]), &qpoint(&[2, 3])).unwrap(), q(5));
        assert_eq!(schur_eval(&p(&[2, 1]), &qpoint(&[2, 1])).unwrap(), q(6));
        assert!(matches!(
            schur_eval(&p(&[1, -1]), &qpoint(&[2, 3])),
            Err(SchurError::NegativePart(_))
        ));
        assert!(matches!(
            schur_eval(&p(&[1, 0, 0]), &qpoint(&[2, 3])),
            Err(SchurError::RankMismatch { .. })
        ));
    }

    #[test]
    fn schur_matches_monomial_expansion() {
        let points: [&[i64]; 3] = [&[2, 3, 5], &[-1, 4, 7], &[1, 2, -2]];
        for a in 0..=4 {
            for b in 0..=a {
                for c in 0..=b {
                    for z in points {
                        let shape = [a, b, c];
                        assert_eq!(
                            schur_eval(&p(&shape), &qpoint(z)).unwrap(),
                            tableau_sum(&shape, z),
                            "{shape:?} at {z:?}"
                        );
                    }
                }
            }
        }
        for a in 0..=4 {
            for b in 0..=a {
                assert_eq!(
                    schur_eval(&p(&[a, b]), &qpoint(&[3, -2])).unwrap(),
                    tableau_sum(&[a, b], &[3, -2])
                );
            }
        }
    }

    #[test]
    fn product_examples() {
        let f = CyclotomicField::get(7).unwrap();
        let pt = EvaluationPoint::<CyclotomicNumber>::roots_of_unity(&f, &[1, 0]).unwrap();
        let parts = [p(&[5, 4]), p(&[5, 4]), p(&[5, 5])];
        let direct = schur_eval(&parts[0], &pt)
            .unwrap()
            .pow(2)
            .mul(&schur_eval(&parts[2], &pt).unwrap())
            .unwrap();
        let prod = schur_product_eval(&parts, &pt).unwrap();
        assert_eq!(prod, direct);
        let fpt = EvaluationPoint::<Complex64>::roots_of_unity(7, &[1, 0]).unwrap();
        let fprod = schur_product_eval(&parts, &fpt).unwrap();
        assert!((prod.to_complex() - fprod).norm() < 1e-9);
        // rectangles are powers of the determinant character
        let rect = [p(&[3, 3]), p(&[2, 2])];
        let det = CyclotomicNumber::root_in(&f, 1);
        assert_eq!(schur_product_eval(&rect, &pt).unwrap(), det.pow(5));
        assert_eq!(
            schur_product_eval(&parts[..1], &pt).unwrap(),
            schur_eval(&parts[0], &pt).unwrap()
        );
    }

    #[test]
    fn signed_permutations_are_complete() {
        for r in 1..=5 {
            let perms = signed_permutations(r);
            let fact: usize = (1..=r).product();
            assert_eq!(perms.len(), fact);
            let mut seen: Vec<Vec<usize>> = perms.iter().map(|(p, _)| p.clone()).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), fact);
            for (perm, odd) in perms {
                let inversions = (0..r)
                    .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                assert_eq!(inversions % 2 == 1, odd);
            }
        }
    }

    #[test]
    fn root_route_matches_bareiss_route() {
        type Case<'a> = (usize, &'a [i64], &'a [&'a [i64]]);
        let cases: [Case; 4] = [
            (7, &[1, 0], &[&[5, 4], &[5, 4], &[5, 5]]),
            (9, &[5, 2, 0], &[&[6, 3, 1], &[6, 6, 2], &[6, 5, 5]]),
            (
                13,
                &[11, 7, 3, 0],
                &[&[9, 9, 4, 1], &[9, 2, 2, 2], &[9, 8, 7, 1]],
            ),
            (
                12,
                &[8, 6, 3, 0],
                &[&[7, 3, 1, 0], &[4, 4, 4, 4], &[5, 2, 1, 1]],
            ),
        ];
        for (n, v, parts) in cases {
            let f = CyclotomicField::get(n).unwrap();
            let parts: Vec<Partition> = parts.iter().map(|x| p(x)).collect();
            let pt = EvaluationPoint::<CyclotomicNumber>::roots_of_unity(&f, v).unwrap();
            let roots = RootAlternants::new(Arc::clone(&f), v.len());
            assert_eq!(
                roots.schur_product(&parts, v).unwrap(),
                schur_product_eval(&parts, &pt).unwrap(),
                "N={n} v={v:?}"
            );
            assert_eq!(
                roots.inverse_vandermonde(v).unwrap(),
                vandermonde(&pt).unwrap().inverse().unwrap()
            );
        }
    }

    fn arb_small_partition(r: usize) -> impl Strategy<Value = Partition> {
        prop::collection::vec(0i64..=6, r).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    fn arb_case() -> impl Strategy<Value = (Partition, usize, Vec<i64>)> {
        (1usize..=4).prop_flat_map(|r| {
            (arb_small_partition(r), (r + 2)..=60usize).prop_flat_map(move |(lam, n)| {
                (
                    Just(lam),
                    Just(n),
                    prop::sample::subsequence((0..n as i64).collect::<Vec<_>>(), r),
                )
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn permutation_symmetry(lam in arb_small_partition(3), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
            let z = [3i64, -1, 5];
            let zp: Vec<i64> = perm.iter().map(|&i| z[i]).collect();
            prop_assert_eq!(
                schur_eval(&lam, &qpoint(&z)).unwrap(),
                schur_eval(&lam, &qpoint(&zp)).unwrap()
            );
        }

        #[test]
        fn homogeneity(lam in arb_small_partition(3), c in prop::sample::select(vec![-3i64, -1, 2, 5])) {
            let z = [2i64, -1, 4];
            let cz: Vec<i64> = z.iter().map(|x| c * x).collect();
            let lhs = schur_eval(&lam, &qpoint(&cz)).unwrap();
            let rhs = schur_eval(&lam, &qpoint(&z)).unwrap()
                * BigRational::from_integer(BigInt::from(c).pow(lam.size() as u32));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rectangle_factorization(r in 1usize..4, c in 0i64..5) {
            let z = [2i64, 3, -1];
            let z = &z[..r];
            let prod: i64 = z.iter().product();
            prop_assert_eq!(
                schur_eval(&Partition::rectangle(r, c), &qpoint(z)).unwrap(),
                BigRational::from_integer(BigInt::from(prod).pow(c as u32))
            );
        }

        #[test]
        fn exact_and_float_backends_agree((lam, n, mut v) in arb_case()) {
            v.reverse();
            let f = CyclotomicField::get(n).unwrap();
            let exact = schur_eval(&lam, &EvaluationPoint::<CyclotomicNumber>::roots_of_unity(&f, &v).unwrap()).unwrap();
            let float = schur_eval(&lam, &EvaluationPoint::<Complex64>::roots_of_unity(n, &v).unwrap()).unwrap();
            prop_assert!((exact.to_complex() - float).norm() < 1e-9, "{} vs {}", exact.to_complex(), float);
            let roots = RootAlternants::new(f, lam.rank());
            prop_assert_eq!(roots.schur_product(std::slice::from_ref(&lam), &v).unwrap(), exact);
        }
    }
}
