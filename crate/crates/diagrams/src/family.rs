use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Diagram, DiagramError};

/// The diagram monoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Symmetric,
    Partition,
    Brauer,
    /// Walled Brauer with `left` rows above the wall and `right` rows below it.
    WalledBrauer {
        left: usize,
        right: usize,
    },
    UniformBlock,
}

/// Largest k enumerated for each family unless the caller raises it.
pub fn default_enum_cap(family: Family) -> usize {
    match family {
        Family::Symmetric => 8,
        Family::Brauer => 6,
        Family::WalledBrauer { .. } => 6,
        Family::Partition | Family::UniformBlock => 5,
    }
}

impl Family {
    /// Rows per column implied by the family, if fixed.
    pub fn fixed_k(&self) -> Option<usize> {
        match self {
            Family::WalledBrauer { left, right } => Some(left + right),
            _ => None,
        }
    }

    /// Closed-form monoid order.
    pub fn order(&self, k: usize) -> BigUint {
        match *self {
            Family::Symmetric => factorial(k),
            Family::Partition => bell(2 * k),
            Family::Brauer => (1..=k).map(|i| BigUint::from(2 * i - 1)).product(),
            Family::WalledBrauer { left, right } => factorial(left + right),
            Family::UniformBlock => uniform_block_order(k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Symmetric => write!(f, "S"),
            Family::Partition => write!(f, "P"),
            Family::Brauer => write!(f, "B"),
            Family::WalledBrauer { left, right } => write!(f, "W{left},{right}"),
            Family::UniformBlock => write!(f, "U"),
        }
    }
}

impl FromStr for Family {
    type Err = DiagramError;

    /// Accepts S, P, B, U and W<l>,<r> (also spelled out).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "s" | "symmetric" => return Ok(Family::Symmetric),
            "p" | "partition" => return Ok(Family::Partition),
            "b" | "brauer" => return Ok(Family::Brauer),
            "u" | "uniform" | "uniformblock" => return Ok(Family::UniformBlock),
            _ => {}
        }
        let rest = lower
            .strip_prefix("walled")
            .or_else(|| lower.strip_prefix('w'))
            .ok_or_else(|| DiagramError::UnknownFamily(t.to_string()))?;
        let nums: Vec<usize> = rest
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| DiagramError::UnknownFamily(t.to_string()))?;
        match nums.as_slice() {
            [l, r] => Ok(Family::WalledBrauer { left: *l, right: *r }),
            _ => Err(DiagramError::UnknownFamily(t.to_string())),
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::ZERO;
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Bell numbers through the triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Order of the uniform block permutation monoid.
pub fn uniform_block_order(k: usize) -> BigUint {
    // u[n] = sum_{j=1..n} C(n-1, j-1) C(n, j) u[n-j]: the block of right vertex 1
    // has j right and j left vertices.
    let mut u = vec![BigUint::one()];
    for n in 1..=k {
        let mut acc = BigUint::ZERO;
        for j in 1..=n {
            acc += binomial(n - 1, j - 1) * binomial(n, j) * &u[n - j];
        }
        u.push(acc);
    }
    u[k].clone()
}

impl Diagram {
    pub fn is_member(&self, family: Family) -> bool {
        let k = self.k();
        let pairs = self.blocks().iter().all(|b| b.len() == 2);
        match family {
            Family::Partition => true,
            Family::Brauer => pairs,
            Family::Symmetric => self.to_permutation().is_some(),
            Family::UniformBlock => self.blocks().iter().all(|b| {
                let right = b.iter().filter(|&&v| v <= k).count();
                2 * right == b.len()
            }),
            Family::WalledBrauer { left, right } => {
                if left + right != k || !pairs {
                    return false;
                }
                self.blocks().iter().all(|b| {
                    let (u, v) = (b[0], b[1]);
                    let above_u = self.row(u) <= left;
                    let above_v = self.row(v) <= left;
                    let same_column = self.is_right(u) == self.is_right(v);
                    if same_column {
                        above_u != above_v
                    } else {
                        above_u == above_v
                    }
                })
            }
        }
    }
}

/// All members of `family` with k rows, sorted canonically.
pub fn enumerate(family: Family, k: usize) -> Result<Vec<Diagram>, DiagramError> {
    enumerate_with_cap(family, k, default_enum_cap(family))
}

pub fn enumerate_with_cap(family: Family, k: usize, cap: usize) -> Result<Vec<Diagram>, DiagramError> {
    if let Some(fixed) = family.fixed_k() {
        if fixed != k {
            return Err(DiagramError::SizeMismatch(fixed, k));
        }
    }
    if k == 0 {
        return Err(DiagramError::InvalidBlocks("k must be positive".into()));
    }
    if k > cap {
        return Err(DiagramError::CapExceeded { k, cap });
    }
    let mut out = match family {
        Family::Symmetric => permutations(k).into_iter().map(|s| Diagram::from_perm0(&s)).collect(),
        Family::Brauer => pairings(k),
        Family::WalledBrauer { .. } => pairings(k).into_iter().filter(|p| p.is_member(family)).collect(),
        Family::Partition => set_partitions(k),
        Family::UniformBlock => set_partitions(k).into_iter().filter(|p| p.is_member(family)).collect(),
    };
    out.sort();
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn pairings(k: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut labels = vec![usize::MAX; 2 * k];
    pair_rec(k, &mut labels, 0, &mut out);
    out
}

fn pair_rec(k: usize, labels: &mut Vec<usize>, next: usize, out: &mut Vec<Diagram>) {
    let Some(first) = labels.iter().position(|&l| l == usize::MAX) else {
        out.push(Diagram::from_labels(k, labels));
        return;
    };
    labels[first] = next;
    for j in first + 1..2 * k {
        if labels[j] == usize::MAX {
            labels[j] = next;
            pair_rec(k, labels, next + 1, out);
            labels[j] = usize::MAX;
        }
    }
    labels[first] = usize::MAX;
}

/// Set partitions of {1..2k} by restricted growth strings.
fn set_partitions(k: usize) -> Vec<Diagram> {
    let n = 2 * k;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    rgs_rec(k, &mut rgs, 1, 0, &mut out);
    out
}

fn rgs_rec(k: usize, rgs: &mut Vec<usize>, i: usize, max: usize, out: &mut Vec<Diagram>) {
    if i == rgs.len() {
        out.push(Diagram::from_labels(k, rgs));
        return;
    }
    for v in 0..=max + 1 {
        rgs[i] = v;
        rgs_rec(k, rgs, i + 1, max.max(v), out);
    }
}
