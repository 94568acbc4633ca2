//! Fixed-rank partitions indexing irreducible `GL_r` representations.
//!
//! A [`Partition`] here is a weakly decreasing vector of `r` integers. Entries
//! may be negative and trailing zeros are significant: `(1,0)` and `(1,0,0)`
//! are highest weights for different groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition needs at least one part")]
    Empty,
    #[error("parts must be weakly decreasing; part {index} ({value}) exceeds part {prev_index} ({prev})", prev_index = .index - 1)]
    NotWeaklyDecreasing { index: usize, value: i64, prev: i64 },
    #[error("cannot parse part {index}: {token:?} is not an integer")]
    Parse { index: usize, token: String },
    #[error("level {level} must exceed the spread {spread}")]
    LevelTooSmall { level: i64, spread: i64 },
    #[error("rank mismatch: expected {expected} parts, found {found}")]
    RankMismatch { expected: usize, found: usize },
}

/// Weakly decreasing integer vector of fixed length `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
}

/// Run-length form: `(value, multiplicity)` pairs with strictly decreasing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    blocks: Vec<(i64, usize)>,
}

impl BlockForm {
    pub fn blocks(&self) -> &[(i64, usize)] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|&(_, n)| n).sum()
    }

    /// Expands back into the originating partition.
    pub fn expand(&self) -> Partition {
        let parts = self
            .blocks
            .iter()
            .flat_map(|&(value, n)| std::iter::repeat_n(value, n))
            .collect();
        Partition { parts }
    }
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        for (index, w) in parts.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(PartitionError::NotWeaklyDecreasing {
                    index: index + 1,
                    value: w[1],
                    prev: w[0],
                });
            }
        }
        Ok(Self { parts })
    }

    /// The zero partition of rank `r`, highest weight of the trivial representation.
    pub fn zero(rank: usize) -> Self {
        Self::rectangle(rank, 0)
    }

    /// `(c, ..., c)`: the `c`-th power of the determinant character.
    pub fn rectangle(rank: usize, value: i64) -> Self {
        assert!(rank > 0, "rank must be positive");
        Self {
            parts: vec![value; rank],
        }
    }

    /// Fundamental weight `ω_s = (1^s, 0^{r-s})`.
    pub fn fundamental(rank: usize, s: usize) -> Self {
        assert!(rank > 0 && s <= rank, "need 0 <= s <= rank");
        let parts = (0..rank).map(|i| i64::from(i < s)).collect();
        Self { parts }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn first(&self) -> i64 {
        self.parts[0]
    }

    pub fn last(&self) -> i64 {
        self.parts[self.parts.len() - 1]
    }

    /// Sum of the parts; may be negative.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Highest weight of the dual representation: `(-λ_r, ..., -λ_1)`.
    pub fn dual(&self) -> Self {
        Self {
            parts: self.parts.iter().rev().map(|&p| -p).collect(),
        }
    }

    /// `λ_1 - λ_r`.
    pub fn spread(&self) -> i64 {
        self.first() - self.last()
    }

    pub fn block_form(&self) -> BlockForm {
        let mut blocks: Vec<(i64, usize)> = Vec::new();
        for &p in &self.parts {
            match blocks.last_mut() {
                Some((value, n)) if *value == p => *n += 1,
                _ => blocks.push((p, 1)),
            }
        }
        BlockForm { blocks }
    }

    /// Parabolic weights `λ_1 - value` for each block value, strictly ascending from 0.
    pub fn weights(&self) -> Vec<i64> {
        let top = self.first();
        self.block_form()
            .blocks
            .iter()
            .map(|&(value, _)| top - value)
            .collect()
    }

    /// Level shift `(k - λ_1 + λ_i)_i`. The result has first entry `k` and all
    /// entries in `[1, k]`.
    pub fn level_shift(&self, level: i64) -> Result<Self, PartitionError> {
        let spread = self.spread();
        if level <= spread {
            return Err(PartitionError::LevelTooSmall { level, spread });
        }
        Ok(self.shifted_by(level - self.first()))
    }

    /// Adds `c` to every part (tensoring with `det^c`).
    pub fn shifted_by(&self, c: i64) -> Self {
        Self {
            parts: self.parts.iter().map(|&p| p + c).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.last() >= 0
    }

    /// Dimension of `V(λ)` from the Weyl product `Π_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
    pub fn gl_dimension(&self) -> BigUint {
        let r = self.rank();
        let mut acc = BigRational::one();
        for i in 0..r {
            for j in i + 1..r {
                let gap = (j - i) as i64;
                acc *= BigRational::new(
                    BigInt::from(self.parts[i] - self.parts[j] + gap),
                    BigInt::from(gap),
                );
            }
        }
        debug_assert!(acc.is_integer() && acc.is_positive());
        acc.to_integer()
            .to_biguint()
            .expect("Weyl dimension is positive")
    }

    /// Entry-wise comparison `self_i <= other_i`, i.e. Young-diagram containment.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.rank() == other.rank() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }
}

/// Shifts every partition by the same `t = max(0, -min entry)` so that all
/// entries become nonnegative. Returns the shifted list and `t`.
pub fn normalize_nonneg(ps: &[Partition]) -> (Vec<Partition>, i64) {
    let min = ps.iter().map(Partition::last).min().unwrap_or(0);
    let t = (-min).max(0);
    (ps.iter().map(|p| p.shifted_by(t)).collect(), t)
}

pub(crate) fn check_ranks<'a>(
    ps: impl IntoIterator<Item = &'a Partition>,
) -> Result<usize, PartitionError> {
    let mut it = ps.into_iter();
    let Some(first) = it.next() else {
        return Err(PartitionError::Empty);
    };
    let expected = first.rank();
    for p in it {
        if p.rank() != expected {
            return Err(PartitionError::RankMismatch {
                expected,
                found: p.rank(),
            });
        }
    }
    Ok(expected)
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .enumerate()
            .map(|(index, token)| {
                token
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| PartitionError::Parse {
                        index,
                        token: token.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
