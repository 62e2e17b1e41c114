use qclone_diagrams::Diagram;
use qclone_operators::{dense_dim, max_abs, partial_trace, partial_transpose, tensor_rep, CMat};
use qclone_young::{all_perms, cycle_count};

use crate::CloneError;

pub const SIGMA_MAX_N: usize = 6;

/// Permutations of {0..N} with sigma(0) = a and sigma^-1(0) = b.
pub fn sigma_subsets(a: usize, b: usize, n: usize) -> Result<Vec<Vec<usize>>, CloneError> {
    if n == 0 || n > SIGMA_MAX_N {
        return Err(CloneError::IndexRange(format!("N = {n} outside 1..={SIGMA_MAX_N}")));
    }
    if a == 0 || b == 0 || a > n || b > n {
        return Err(CloneError::IndexRange(format!("a = {a}, b = {b} outside 1..={n}")));
    }
    Ok(all_perms(n + 1).into_iter().filter(|s| s[0] == a && s[b] == 0).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaReport {
    pub count: usize,
    /// expected Tr_out[sum psi(sigma)^Gamma] as a multiple of I_d
    pub expected_scalar: f64,
    pub max_residual: f64,
}

/// Checks Tr_{1..N}[sum_{sigma in Sigma_ab} psi(sigma)^Gamma] = c I_d with
/// c = sum_{tau in S_(N-1)} Tr psi(tau), divided by d when a != b.
pub fn sigma_partial_trace_check(a: usize, b: usize, n: usize, d: usize) -> Result<SigmaReport, CloneError> {
    let set = sigma_subsets(a, b, n)?;
    let dim = dense_dim(d, n + 1)?;
    let mut acc = CMat::zeros(dim, dim);
    for sigma in &set {
        acc += tensor_rep(&Diagram::from_perm0(sigma), d)?;
    }
    let pt = partial_transpose(&acc, d, n + 1, &[0])?;
    let out: Vec<usize> = (1..=n).collect();
    let reduced = partial_trace(&pt, d, n + 1, &out)?;
    let tr_sum: f64 = all_perms(n - 1).iter().map(|t| (d as f64).powi(cycle_count(t) as i32)).sum();
    let expected_scalar = if a == b { tr_sum } else { tr_sum / d as f64 };
    let residual = max_abs(&(reduced - CMat::identity(d, d).scale(expected_scalar)));
    Ok(SigmaReport { count: set.len(), expected_scalar, max_residual: residual })
}
