use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Partition, YoungError};

pub const SSYT_MAX_BOXES: usize = 12;
pub const SSYT_MAX_D: usize = 6;

/// Number of standard Young tableaux, via removal of corner boxes.
pub fn syt_count(lambda: &Partition) -> BigUint {
    let mut memo = HashMap::new();
    syt_rec(lambda, &mut memo)
}

fn syt_rec(lambda: &Partition, memo: &mut HashMap<Partition, BigUint>) -> BigUint {
    if lambda.is_empty() {
        return BigUint::one();
    }
    if let Some(v) = memo.get(lambda) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for mu in lambda.remove_corners() {
        total += syt_rec(&mu, memo);
    }
    memo.insert(lambda.clone(), total.clone());
    total
}

/// All standard tableaux of shape `lambda`, each as row-major entries 1..n.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<usize>>> {
    let n = lambda.n();
    let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    place_standard(lambda, 1, n, &mut grid, &mut out);
    out
}

fn place_standard(
    lambda: &Partition,
    next: usize,
    n: usize,
    grid: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if next > n {
        out.push(grid.clone());
        return;
    }
    // The next entry goes into any addable cell of the filled region.
    for i in 0..grid.len() {
        let filled = grid[i].iter().filter(|&&x| x != 0).count();
        if filled == lambda.part(i) {
            continue;
        }
        let above_ok = i == 0 || grid[i - 1].iter().filter(|&&x| x != 0).count() > filled;
        if above_ok {
            grid[i][filled] = next;
            place_standard(lambda, next + 1, n, grid, out);
            grid[i][filled] = 0;
        }
    }
}

/// Number of semistandard tableaux of shape `lambda` with entries in 1..=d.
pub fn ssyt_count(lambda: &Partition, d: usize) -> Result<BigUint, YoungError> {
    if lambda.n() > SSYT_MAX_BOXES || d > SSYT_MAX_D {
        return Err(YoungError::CapExceeded { what: "ssyt enumeration", size: lambda.n().max(d), cap: SSYT_MAX_BOXES });
    }
    if d == 0 {
        return Ok(if lambda.is_empty() { BigUint::one() } else { BigUint::zero() });
    }
    if lambda.len() > d {
        return Ok(BigUint::zero());
    }
    let boxes = lambda.boxes();
    let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&l| vec![0; l]).collect();
    let mut count = 0u64;
    fill_ssyt(&boxes, 0, d, &mut grid, &mut count);
    Ok(BigUint::from(count))
}

fn fill_ssyt(boxes: &[(usize, usize)], idx: usize, d: usize, grid: &mut Vec<Vec<usize>>, count: &mut u64) {
    if idx == boxes.len() {
        *count += 1;
        return;
    }
    let (i, j) = boxes[idx];
    let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
    let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=d {
        grid[i][j] = v;
        fill_ssyt(boxes, idx + 1, d, grid, count);
    }
    grid[i][j] = 0;
}

/// Partitions of `n` with at most `d` rows, largest first.
pub fn irr_symmetric(n: usize, d: usize) -> Vec<Partition> {
    Partition::all(n).into_iter().filter(|p| p.len() <= d).collect()
}

/// Irrep label of the Brauer algebra: a partition of N - 2k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerLabel {
    pub lambda: Partition,
    pub k: usize,
}

/// Labels (lambda, k) with lambda of N - 2k boxes and lambda'_1 + lambda'_2 <= d.
/// Ordered by k, then by partition order.
pub fn irr_brauer(n: usize, d: usize) -> Vec<BrauerLabel> {
    let mut out = Vec::new();
    for k in 0..=n / 2 {
        for lambda in Partition::all(n - 2 * k) {
            let c = lambda.conjugate();
            if c.part(0) + c.part(1) <= d {
                out.push(BrauerLabel { lambda, k });
            }
        }
    }
    out
}
