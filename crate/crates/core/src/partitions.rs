//! Integer partitions: transposition, enumeration and Pieri index sets.
//!
//! Ordering is lexicographic with implicit zero padding, which for
//! partitions (all parts positive) coincides with `Vec` ordering.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("number of added boxes must be at least 1")]
    EmptyStrip,
    #[error("{boxes} boxes exceed the {available} addable positions within {max_rows} rows")]
    TooManyBoxes { boxes: usize, available: usize, max_rows: usize },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates and strips trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `2,1`, `(2,1)` or `2 1`; the empty string gives the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| PartitionError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Free-function form of [`Partition::transpose`].
pub fn transpose(lambda: &Partition) -> Partition {
    lambda.transpose()
}

/// All partitions of `n` in increasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out.sort();
    out
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in 1..=rest.min(max) {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Partitions `ν ⊇ μ` with `μ_i ≤ ν_i ≤ μ_i + 1` and `|ν| = |μ| + p`, in decreasing
/// lexicographic order (so the first entry adds one box to each of the first `p` rows).
pub fn pieri_index_set(mu: &Partition, p: usize) -> Result<Vec<Partition>, PartitionError> {
    pieri_index_set_within(mu, p, mu.len() + p)
}

/// As [`pieri_index_set`], restricted to partitions with at most `max_rows` rows.
///
/// Fails when fewer than `p` boxes can be added inside the row bound.
pub fn pieri_index_set_within(mu: &Partition, p: usize, max_rows: usize) -> Result<Vec<Partition>, PartitionError> {
    if p == 0 {
        return Err(PartitionError::EmptyStrip);
    }
    if mu.len() > max_rows {
        return Err(PartitionError::TooManyBoxes { boxes: p, available: 0, max_rows });
    }
    // a vertical strip puts at most one box in each row
    let available = max_rows;
    if p > available {
        return Err(PartitionError::TooManyBoxes { boxes: p, available, max_rows });
    }
    let mut out = Vec::new();
    let mut inc = vec![0usize; max_rows];
    choose_increments(mu, p, 0, &mut inc, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

fn choose_increments(mu: &Partition, left: usize, row: usize, inc: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if left == 0 {
        let parts: Vec<usize> = (0..inc.len()).map(|i| mu.part(i) + inc[i]).collect();
        if let Ok(nu) = Partition::new(parts) {
            out.push(nu);
        }
        return;
    }
    if row == inc.len() || inc.len() - row < left {
        return;
    }
    inc[row] = 1;
    choose_increments(mu, left - 1, row + 1, inc, out);
    inc[row] = 0;
    choose_increments(mu, left, row + 1, inc, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(part(&[1]).transpose(), part(&[1]));
        assert_eq!(part(&[4]).transpose(), part(&[1, 1, 1, 1]));
        assert_eq!(part(&[3, 1]).transpose(), part(&[2, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(2), vec![part(&[1, 1]), part(&[2])]);
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_index_set(&part(&[1]), 1).unwrap(), vec![part(&[2]), part(&[1, 1])]);
        assert_eq!(pieri_index_set(&Partition::empty(), 1).unwrap(), vec![part(&[1])]);
        assert_eq!(
            pieri_index_set(&part(&[2, 1]), 2).unwrap(),
            vec![part(&[3, 2]), part(&[3, 1, 1]), part(&[2, 2, 1]), part(&[2, 1, 1, 1])]
        );
    }

    #[test]
    fn pieri_largest_adds_to_first_rows() {
        let mu = part(&[3, 3, 1]);
        for p in 1..=4 {
            let set = pieri_index_set(&mu, p).unwrap();
            let expected: Vec<usize> = (0..mu.len().max(p)).map(|i| mu.part(i) + usize::from(i < p)).collect();
            assert_eq!(set[0], Partition::new(expected).unwrap());
        }
    }

    #[test]
    fn pieri_rejections() {
        assert_eq!(pieri_index_set(&part(&[1]), 0), Err(PartitionError::EmptyStrip));
        let err = pieri_index_set_within(&part(&[2, 2]), 3, 2).unwrap_err();
        assert!(matches!(err, PartitionError::TooManyBoxes { available: 2, .. }));
    }

    #[test]
    fn parsing() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert_eq!("(3, 1, 1)".parse::<Partition>().unwrap(), part(&[3, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
    }
}
