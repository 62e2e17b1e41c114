use std::fmt;

use crate::YoungError;

/// Integer partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, YoungError> {
        if parts.contains(&0) {
            return Err(YoungError::InvalidPartition(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros before validating.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition (n).
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition (1^m).
    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width).map(|i| self.parts.iter().filter(|&&p| p >= i).count()).collect();
        Partition { parts }
    }

    /// Sum over boxes of column index minus row index.
    pub fn content(&self) -> i64 {
        let mut c = 0i64;
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len {
                c += j as i64 - i as i64;
            }
        }
        c
    }

    /// Number of rows of odd length.
    pub fn odd_row_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// Boxes as (row, column) pairs in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len {
                out.push((i, j));
            }
        }
        out
    }

    /// Partitions obtained by removing one corner box.
    pub fn remove_corners(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if self.part(i) > self.part(i + 1) {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// All partitions of `n`, largest first in lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }
}

fn fill(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rem.min(max)).rev() {
        cur.push(p);
        fill(rem - p, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = YoungError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| YoungError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 3]).conjugate(), p(&[2, 2, 2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 3, 1, 1]).conjugate(), p(&[4, 2, 2, 1]));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p(&[3, 3, 1]).content(), 1);
        assert_eq!(p(&[4]).content(), 6);
        assert_eq!(p(&[2, 1]).content(), 0);
        assert_eq!(p(&[1, 1, 1]).content(), -3);
    }

    #[test]
    fn odd_rows() {
        assert_eq!(p(&[3, 2, 1]).odd_row_count(), 2);
        assert_eq!(p(&[2, 2]).odd_row_count(), 0);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Partition::all(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn parse_roundtrip() {
        let q: Partition = "(3,1,1)".parse().unwrap();
        assert_eq!(q, p(&[3, 1, 1]));
        assert_eq!(q.to_string(), "(3,1,1)");
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
    }
}
