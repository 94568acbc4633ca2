//! Littlewood-Richardson coefficients by direct enumeration of LR tableaux.
//!
//! Independent of the Verlinde machinery: integer partitions are reduced to
//! Young diagrams by determinant twists, then fillings of `ν/λ` with content
//! `μ` are counted by backtracking in reverse reading order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::partition::{check_ranks, normalize_nonneg, Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("content {0} has negative parts")]
    NegativeContent(Partition),
    #[error("skew shape needs nonnegative partitions, got {0}")]
    NegativeShape(Partition),
}

/// `outer / inner` for nonnegative partitions of equal rank. A shape whose
/// inner partition does not fit inside the outer one is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, OracleError> {
        check_ranks([&outer, &inner])?;
        for p in [&outer, &inner] {
            if !p.is_nonnegative() {
                return Err(OracleError::NegativeShape(p.clone()));
            }
        }
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rank(&self) -> usize {
        self.outer.rank()
    }

    pub fn is_empty(&self) -> bool {
        !self.inner.contained_in(&self.outer)
    }

    /// Number of boxes; 0 for an empty shape.
    pub fn size(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            self.outer.size() - self.inner.size()
        }
    }

    /// Counts LR tableaux of this shape with the given content: semistandard
    /// fillings whose reverse reading word is a lattice word.
    pub fn lr_fillings(&self, content: &Partition) -> Result<u64, OracleError> {
        check_ranks([&self.outer, content])?;
        if !content.is_nonnegative() {
            return Err(OracleError::NegativeContent(content.clone()));
        }
        if self.is_empty() || self.size() != content.size() {
            return Ok(0);
        }
        let rows: Vec<(usize, usize)> = self
            .inner
            .parts()
            .iter()
            .zip(self.outer.parts())
            .map(|(&a, &b)| (a as usize, b as usize))
            .collect();
        let mut search = Search {
            rows: &rows,
            content: content.parts(),
            grid: rows.iter().map(|&(_, b)| vec![0u8; b]).collect(),
            used: vec![0; content.rank()],
        };
        Ok(search.fill(0, rows.first().map_or(0, |r| r.1)))
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.outer, self.inner)
    }
}

struct Search<'a> {
    rows: &'a [(usize, usize)],
    content: &'a [i64],
    /// Filled values, 1-based; 0 marks cells of the inner shape.
    grid: Vec<Vec<u8>>,
    used: Vec<i64>,
}

impl Search<'_> {
    /// Fills cell `(row, col - 1)` and everything after it in reading order
    /// (right to left within a row, rows top to bottom).
    fn fill(&mut self, row: usize, col: usize) -> u64 {
        if row == self.rows.len() {
            return 1;
        }
        let (start, end) = self.rows[row];
        if col <= start {
            let next = row + 1;
            let col = self.rows.get(next).map_or(0, |r| r.1);
            return self.fill(next, col);
        }
        let c = col - 1;
        // rows weakly increase, so the value is at most its right neighbour
        let hi = if c + 1 < end {
            self.grid[row][c + 1] as usize
        } else {
            self.content.len()
        };
        // columns strictly increase; inner cells impose nothing
        let lo = match row.checked_sub(1) {
            Some(up) if c < self.rows[up].1 && c >= self.rows[up].0 => {
                self.grid[up][c] as usize + 1
            }
            _ => 1,
        };
        // a lattice word cannot place value x in row < x - 1
        let hi = hi.min(row + 1);
        let mut total = 0;
        for x in lo..=hi {
            let i = x - 1;
            if self.used[i] == self.content[i] || (i > 0 && self.used[i] == self.used[i - 1]) {
                continue;
            }
            self.used[i] += 1;
            self.grid[row][c] = x as u8;
            total += self.fill(row, c);
            self.used[i] -= 1;
        }
        self.grid[row][c] = 0;
        total
    }
}

/// `c^ν_{λμ}` by counting LR tableaux.
///
/// Integer partitions are handled by twisting: `μ` and `ν` drop by `μ_r`, then
/// `λ` and `ν` are shifted together until both are nonnegative.
pub fn lr_tableaux_count(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<u64, OracleError> {
    check_ranks([lambda, mu, nu])?;
    if lambda.size() + mu.size() != nu.size() {
        return Ok(0);
    }
    let t = mu.last();
    let (mu, nu) = (mu.shifted_by(-t), nu.shifted_by(-t));
    let (shifted, _) = normalize_nonneg(&[lambda.clone(), nu]);
    let [lambda, nu]: [Partition; 2] = shifted.try_into().expect("two partitions");
    SkewShape::new(nu, lambda)?.lr_fillings(&mu)
}

/// Irreducible constituents with multiplicities, keyed by highest weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecompositionTable {
    entries: BTreeMap<Partition, u64>,
}

impl DecompositionTable {
    /// Drops zero multiplicities.
    pub fn from_map(mut entries: BTreeMap<Partition, u64>) -> Self {
        entries.retain(|_, c| *c > 0);
        Self { entries }
    }

    pub fn get(&self, nu: &Partition) -> u64 {
        self.entries.get(nu).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in lexicographically decreasing order of `ν`.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.entries.iter().rev().map(|(p, &c)| (p, c))
    }

    /// `Σ_ν mult(ν) · dim V(ν)`.
    pub fn total_dimension(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(p, &c)| p.gl_dimension() * BigUint::from(c))
            .sum()
    }
}

impl fmt::Display for DecompositionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (nu, c) in self.iter() {
            writeln!(f, "({nu}): {c}")?;
        }
        Ok(())
    }
}

/// Every `ν` of rank `r` with `|ν| = |λ| + |μ|` and all parts in
/// `[λ_r + μ_r, λ_1 + μ_1]`, in lexicographically decreasing order.
pub fn candidate_targets(lambda: &Partition, mu: &Partition) -> Vec<Partition> {
    let r = lambda.rank();
    let lo = lambda.last() + mu.last();
    let hi = lambda.first() + mu.first();
    let size = lambda.size() + mu.size();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(r);
    push_candidates(r, lo, hi, size, &mut prefix, &mut out);
    out
}

fn push_candidates(
    r: usize,
    lo: i64,
    hi: i64,
    remaining: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Partition>,
) {
    let left = (r - prefix.len()) as i64;
    if left == 0 {
        if remaining == 0 {
            out.push(Partition::new(prefix.clone()).expect("weakly decreasing"));
        }
        return;
    }
    let cap = prefix.last().copied().unwrap_or(hi);
    // the current part x must leave room: (left - 1) parts in [lo, x]
    let top = cap.min(remaining - (left - 1) * lo);
    for x in (lo..=top).rev() {
        if x * left < remaining {
            break;
        }
        prefix.push(x);
        push_candidates(r, lo, hi, remaining - x, prefix, out);
        prefix.pop();
    }
}

/// `V(λ) ⊗ V(μ)` by the LR rule over [`candidate_targets`].
pub fn tensor_decompose(
    lambda: &Partition,
    mu: &Partition,
) -> Result<DecompositionTable, OracleError> {
    check_ranks([lambda, mu])?;
    let mut entries = BTreeMap::new();
    for nu in candidate_targets(lambda, mu) {
        let c = lr_tableaux_count(lambda, mu, &nu)?;
        entries.insert(nu, c);
    }
    Ok(DecompositionTable::from_map(entries))
}

/// Multiplicity of `V(ν)` in `V(λ¹) ⊗ … ⊗ V(λⁿ)`, contracting one factor at a
/// time with [`tensor_decompose`].
pub fn iterated_multiplicity(
    factors: &[Partition],
    target: &Partition,
) -> Result<u64, OracleError> {
    let Some((first, rest)) = factors.split_first() else {
        return Err(OracleError::Partition(PartitionError::Empty));
    };
    check_ranks(factors.iter().chain(std::iter::once(target)))?;
    if factors.iter().map(Partition::size).sum::<i64>() != target.size() {
        return Ok(0);
    }
    let mut current = BTreeMap::from([(first.clone(), 1u64)]);
    for f in rest {
        let mut next = BTreeMap::new();
        for (p, c) in &current {
            for (nu, m) in tensor_decompose(p, f)?.iter() {
                *next.entry(nu.clone()).or_insert(0) += c * m;
            }
        }
        current = next;
    }
    Ok(current.get(target).copied().unwrap_or(0))
}

/// `V(λ) ⊗ V(ω_s)`: add 1 to `s` distinct rows of `λ` in every way that keeps
/// the result weakly decreasing.
pub fn pieri_expand(lambda: &Partition, s: usize) -> DecompositionTable {
    let r = lambda.rank();
    assert!((1..=r).contains(&s), "s must lie in 1..=r");
    let mut entries = BTreeMap::new();
    let mut rows = Vec::with_capacity(s);
    pieri_rows(lambda, s, 0, &mut rows, &mut entries);
    DecompositionTable::from_map(entries)
}

fn pieri_rows(
    lambda: &Partition,
    s: usize,
    from: usize,
    rows: &mut Vec<usize>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if rows.len() == s {
        let mut parts = lambda.parts().to_vec();
        for &i in rows.iter() {
            parts[i] += 1;
        }
        if let Ok(p) = Partition::new(parts) {
            out.insert(p, 1);
        }
        return;
    }
    for i in from..lambda.rank() {
        rows.push(i);
        pieri_rows(lambda, s, i + 1, rows, out);
        rows.pop();
    }
}

/// Outcome of [`validate_identities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub table: DecompositionTable,
    pub product_dimension: BigUint,
    pub table_dimension: BigUint,
    pub dimension_ok: bool,
    pub symmetry_ok: bool,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.dimension_ok && self.symmetry_ok
    }
}

/// Decomposes `V(λ) ⊗ V(μ)` in both orders and checks the dimension identity.
pub fn validate_identities(
    lambda: &Partition,
    mu: &Partition,
) -> Result<IdentityReport, OracleError> {
    let table = tensor_decompose(lambda, mu)?;
    let swapped = tensor_decompose(mu, lambda)?;
    let product_dimension = lambda.gl_dimension() * mu.gl_dimension();
    let table_dimension = table.total_dimension();
    Ok(IdentityReport {
        dimension_ok: product_dimension == table_dimension,
        symmetry_ok: swapped == table,
        table,
        product_dimension,
        table_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn table(entries: &[(&[i64], u64)]) -> DecompositionTable {
        DecompositionTable::from_map(entries.iter().map(|(k, v)| (p(k), *v)).collect())
    }

    /// Kostka-free oracle: expand `s_λ s_μ` as a polynomial in `r` variables by
    /// summing semistandard tableaux monomials and peel off leading terms.
    fn polynomial_decompose(lambda: &Partition, mu: &Partition) -> BTreeMap<Vec<i64>, i64> {
        fn ssyt(shape: &[i64], r: usize) -> BTreeMap<Vec<i64>, i64> {
            // monomial expansion by filling row by row
            let mut out = BTreeMap::new();
            let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
            fn go(
                shape: &[i64],
                r: usize,
                row: usize,
                col: usize,
                grid: &mut Vec<Vec<usize>>,
                out: &mut BTreeMap<Vec<i64>, i64>,
            ) {
                if row == shape.len() {
                    let mut w = vec![0i64; r];
                    for x in grid.iter().flatten() {
                        w[*x] += 1;
                    }
                    *out.entry(w).or_insert(0) += 1;
                    return;
                }
                if col == shape[row] as usize {
                    return go(shape, r, row + 1, 0, grid, out);
                }
                let lo_row = if col > 0 { grid[row][col - 1] } else { 0 };
                let lo_col = if row > 0 { grid[row - 1][col] + 1 } else { 0 };
                for x in lo_row.max(lo_col)..r {
                    grid[row][col] = x;
                    go(shape, r, row, col + 1, grid, out);
                }
            }
            go(shape, r, 0, 0, &mut grid, &mut out);
            out
        }
        let r = lambda.rank();
        let a = ssyt(lambda.parts(), r);
        let b = ssyt(mu.parts(), r);
        let mut prod: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (x, cx) in &a {
            for (y, cy) in &b {
                let w: Vec<i64> = x.iter().zip(y).map(|(u, v)| u + v).collect();
                *prod.entry(w).or_insert(0) += cx * cy;
            }
        }
        let mut result = BTreeMap::new();
        loop {
            prod.retain(|_, c| *c != 0);
            let Some((top, &c)) = prod.iter().next_back() else {
                break;
            };
            let top = top.clone();
            result.insert(top.clone(), c);
            for (w, cw) in ssyt(&top, r) {
                *prod.entry(w).or_insert(0) -= c * cw;
            }
        }
        result
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            lr_tableaux_count(&p(&[1, 0]), &p(&[1, 0]), &p(&[2, 0])),
            Ok(1)
        );
        assert_eq!(
            lr_tableaux_count(&p(&[1, 0]), &p(&[1, 0]), &p(&[1, 1])),
            Ok(1)
        );
        assert_eq!(
            lr_tableaux_count(&p(&[2, 1, 0]), &p(&[2, 1, 0]), &p(&[3, 2, 1])),
            Ok(2)
        );
        assert_eq!(
            lr_tableaux_count(&p(&[1, 0]), &p(&[1, 0]), &p(&[2, 1])),
            Ok(0)
        );
        assert_eq!(
            lr_tableaux_count(&p(&[2, 0]), &p(&[1, 0]), &p(&[1, 1])),
            Ok(0)
        );
        assert_eq!(
            lr_tableaux_count(&p(&[1, -1]), &p(&[0, -2]), &p(&[1, -3])),
            Ok(1)
        );
        assert!(matches!(
            lr_tableaux_count(&p(&[1, 0]), &p(&[1, 0, 0]), &p(&[2, 0])),
            Err(OracleError::Partition(PartitionError::RankMismatch { .. }))
        ));
    }

    #[test]
    fn skew_shape_basics() {
        let s = SkewShape::new(p(&[3, 2, 1]), p(&[2, 1, 0])).unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(s.lr_fillings(&p(&[2, 1, 0])), Ok(2));
        assert_eq!(s.lr_fillings(&p(&[1, 1, 1])), Ok(1));
        assert_eq!(s.lr_fillings(&p(&[3, 0, 0])), Ok(1));
        assert_eq!(s.to_string(), "(3,2,1)/(2,1,0)");
        let empty = SkewShape::new(p(&[2, 0]), p(&[1, 1])).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.lr_fillings(&p(&[1, 0])), Ok(0));
        assert_eq!(
            s.lr_fillings(&p(&[4, 0, -1])),
            Err(OracleError::NegativeContent(p(&[4, 0, -1])))
        );
        assert!(SkewShape::new(p(&[1, -1]), p(&[0, -1])).is_err());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            tensor_decompose(&p(&[1, 0]), &p(&[1, 0])).unwrap(),
            table(&[(&[2, 0], 1), (&[1, 1], 1)])
        );
        assert_eq!(
            tensor_decompose(&p(&[1, 0, 0]), &p(&[1, 1, 0])).unwrap(),
            table(&[(&[2, 1, 0], 1), (&[1, 1, 1], 1)])
        );
        assert_eq!(
            tensor_decompose(&p(&[3, 1, -2]), &p(&[2, 2, 2])).unwrap(),
            table(&[(&[5, 3, 0], 1)])
        );
        assert_eq!(
            tensor_decompose(&p(&[0, 0, 0]), &p(&[2, 1, 0])).unwrap(),
            table(&[(&[2, 1, 0], 1)])
        );
    }

    #[test]
    fn table_iterates_descending() {
        let t = tensor_decompose(&p(&[2, 1, 0]), &p(&[2, 1, 0])).unwrap();
        let keys: Vec<&Partition> = t.iter().map(|(k, _)| k).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(keys, sorted);
        assert_eq!(t.get(&p(&[3, 2, 1])), 2);
        assert_eq!(t.get(&p(&[4, 2, 0])), 1);
        assert_eq!(t.get(&p(&[9, 0, -3])), 0);
        assert_eq!(t.to_string().lines().next(), Some("(4,2,0): 1"));
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(
            pieri_expand(&p(&[1, 0]), 1),
            table(&[(&[2, 0], 1), (&[1, 1], 1)])
        );
        assert_eq!(pieri_expand(&p(&[3, 3, 3]), 3), table(&[(&[4, 4, 4], 1)]));
        assert_eq!(
            pieri_expand(&p(&[2, 2, 0]), 1),
            table(&[(&[3, 2, 0], 1), (&[2, 2, 1], 1)])
        );
    }

    #[test]
    fn iterated_examples() {
        let w = p(&[1, 0]);
        let three = [w.clone(), w.clone(), w.clone()];
        assert_eq!(iterated_multiplicity(&three, &p(&[2, 1])), Ok(2));
        assert_eq!(iterated_multiplicity(&three, &p(&[3, 0])), Ok(1));
        assert_eq!(iterated_multiplicity(&three, &p(&[2, 0])), Ok(0));
        assert_eq!(iterated_multiplicity(&[p(&[2, 1])], &p(&[2, 1])), Ok(1));
        assert_eq!(
            iterated_multiplicity(&[p(&[2, 1, 0]), p(&[2, 1, 0])], &p(&[3, 2, 1])),
            Ok(2)
        );
        assert!(iterated_multiplicity(&[], &w).is_err());
    }

    #[test]
    fn identity_examples() {
        let rep = validate_identities(&p(&[1, 0]), &p(&[1, 0])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.product_dimension, BigUint::from(4u32));
        let rep = validate_identities(&p(&[0, 0]), &p(&[3, -1])).unwrap();
        assert!(rep.passed());
        let rep = validate_identities(&p(&[2, 1, 0]), &p(&[2, 1, 0])).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.table_dimension, BigUint::from(64u32));
    }

    #[test]
    fn candidates_are_complete() {
        let lambda = p(&[2, 1, 0]);
        let mu = p(&[1, 1, 0]);
        let c = candidate_targets(&lambda, &mu);
        // brute force over the box
        let mut brute = Vec::new();
        for a in 0..=3 {
            for b in 0..=a {
                for d in 0..=b {
                    if a + b + d == 5 {
                        brute.push(p(&[a, b, d]));
                    }
                }
            }
        }
        brute.sort_by(|x, y| y.cmp(x));
        assert_eq!(c, brute);
    }

    #[test]
    fn matches_polynomial_expansion() {
        let cases = [
            (p(&[2, 1, 0]), p(&[2, 1, 0])),
            (p(&[3, 1, 0]), p(&[2, 2, 0])),
            (p(&[2, 1, 1, 0]), p(&[2, 1, 0, 0])),
            (p(&[4, 2]), p(&[3, 1])),
            (p(&[3, 2, 1, 0]), p(&[2, 1, 1, 0])),
        ];
        for (l, m) in cases {
            let expected = polynomial_decompose(&l, &m);
            let got: BTreeMap<Vec<i64>, i64> = tensor_decompose(&l, &m)
                .unwrap()
                .iter()
                .map(|(k, c)| (k.parts().to_vec(), c as i64))
                .collect();
            assert_eq!(got, expected, "{l} x {m}");
        }
    }

    fn arb_pair(r: usize, lo: i64, hi: i64) -> impl Strategy<Value = (Partition, Partition)> {
        let one = move || {
            proptest::collection::vec(lo..=hi, r).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(v).unwrap()
            })
        };
        (one(), one())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn symmetric_and_dimension_consistent((l, m) in (1usize..=3).prop_flat_map(|r| arb_pair(r, -2, 3))) {
            let rep = validate_identities(&l, &m).unwrap();
            prop_assert!(rep.dimension_ok, "{} x {}", l, m);
            prop_assert!(rep.symmetry_ok, "{} x {}", l, m);
        }

        #[test]
        fn translation_invariant((l, m) in arb_pair(3, -1, 3), c in -3i64..=3) {
            for nu in candidate_targets(&l, &m) {
                prop_assert_eq!(
                    lr_tableaux_count(&l.shifted_by(c), &m, &nu.shifted_by(c)).unwrap(),
                    lr_tableaux_count(&l, &m, &nu).unwrap()
                );
            }
        }

        #[test]
        fn pieri_matches_rule(l in (1usize..=4).prop_flat_map(|r| proptest::collection::vec(0i64..=4, r)), s in 1usize..=4) {
            let mut parts = l;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition::new(parts).unwrap();
            let s = s.min(l.rank());
            prop_assert_eq!(
                tensor_decompose(&l, &Partition::fundamental(l.rank(), s)).unwrap(),
                pieri_expand(&l, s)
            );
        }
    }
}
