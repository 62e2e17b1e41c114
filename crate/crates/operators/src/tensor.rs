use num_bigint::BigUint;
use qclone_diagrams::Diagram;

use crate::space::{c, checked_dim, dense_dim, CMat};
use crate::OpError;

/// Nonzero positions (row, col) of the 0/1 tensor of a diagram on (C^d)^k. Columns are
/// indexed by the digits on vertices 1..k, rows by the digits on vertices k+1..2k.
pub fn tensor_rep_entries(p: &Diagram, d: usize) -> Result<Vec<(usize, usize)>, OpError> {
    let k = p.k();
    dense_dim(d, k)?;
    let blocks = p.blocks();
    let nb = blocks.len();
    let count = checked_dim(d, nb).ok_or(OpError::CapExceeded { dim: usize::MAX, cap: 0 })?;
    // place value of each vertex inside its row or column index
    let weight: Vec<usize> = (1..=2 * k)
        .map(|v| {
            let pos = if v <= k { v - 1 } else { v - k - 1 };
            d.pow((k - 1 - pos) as u32)
        })
        .collect();
    let block_col: Vec<usize> =
        blocks.iter().map(|b| b.iter().filter(|&&v| v <= k).map(|&v| weight[v - 1]).sum()).collect();
    let block_row: Vec<usize> =
        blocks.iter().map(|b| b.iter().filter(|&&v| v > k).map(|&v| weight[v - 1]).sum()).collect();
    let mut out = Vec::with_capacity(count);
    let mut vals = vec![0usize; nb];
    for _ in 0..count {
        let mut row = 0;
        let mut col = 0;
        for (bi, &x) in vals.iter().enumerate() {
            row += x * block_row[bi];
            col += x * block_col[bi];
        }
        out.push((row, col));
        for v in vals.iter_mut().rev() {
            *v += 1;
            if *v < d {
                break;
            }
            *v = 0;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Dense tensor representation psi(p).
pub fn tensor_rep(p: &Diagram, d: usize) -> Result<CMat, OpError> {
    let dim = dense_dim(d, p.k())?;
    let mut m = CMat::zeros(dim, dim);
    for (r, col) in tensor_rep_entries(p, d)? {
        m[(r, col)] = c(1.0);
    }
    Ok(m)
}

/// Trace of psi(p) by counting loops of the closure.
pub fn trace_rep(p: &Diagram, d: usize) -> BigUint {
    BigUint::from(d).pow(p.closure_loop_count() as u32)
}
