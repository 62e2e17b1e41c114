use nalgebra::{DVector, SymmetricEigen};

use crate::space::{c, checked_dim, digits, index, max_abs, CMat, C64};
use crate::OpError;

/// Relative PSD tolerance: min eig >= -PSD_TOL * max(1, |A|_op).
pub const PSD_TOL: f64 = 1e-9;

pub fn is_hermitian(m: &CMat) -> bool {
    if !m.is_square() {
        return false;
    }
    let scale = max_abs(m);
    let diff = max_abs(&(m - m.adjoint()));
    diff <= 1e-12 * scale
}

fn check_space(m: &CMat, d: usize, n: usize) -> Result<usize, OpError> {
    let dim = checked_dim(d, n).ok_or_else(|| OpError::BadDimension(format!("{d}^{n} overflows")))?;
    if m.nrows() != dim || m.ncols() != dim {
        return Err(OpError::BadDimension(format!("matrix is {}x{}, space has dimension {dim}", m.nrows(), m.ncols())));
    }
    Ok(dim)
}

fn check_subset(subset: &[usize], n: usize) -> Result<(), OpError> {
    let mut seen = vec![false; n];
    for &j in subset {
        if j >= n || seen[j] {
            return Err(OpError::BadSubset(subset.to_vec()));
        }
        seen[j] = true;
    }
    Ok(())
}

/// Traces out the listed factors (0-based) of an operator on (C^d)^n.
pub fn partial_trace(m: &CMat, d: usize, n: usize, traced: &[usize]) -> Result<CMat, OpError> {
    let dim = check_space(m, d, n)?;
    check_subset(traced, n)?;
    if traced.is_empty() {
        return Ok(m.clone());
    }
    let kept: Vec<usize> = (0..n).filter(|j| !traced.contains(j)).collect();
    let out_dim = checked_dim(d, kept.len()).expect("smaller than input");
    let t_dim = checked_dim(d, traced.len()).expect("smaller than input");
    // full index of (kept digits, traced digits)
    let join = |ko: usize, to: usize| {
        let kd = digits(ko, d, kept.len());
        let td = digits(to, d, traced.len());
        let mut full = vec![0; n];
        for (p, &j) in kept.iter().enumerate() {
            full[j] = kd[p];
        }
        for (p, &j) in traced.iter().enumerate() {
            full[j] = td[p];
        }
        index(&full, d)
    };
    let table: Vec<Vec<usize>> = (0..out_dim).map(|ko| (0..t_dim).map(|to| join(ko, to)).collect()).collect();
    debug_assert_eq!(out_dim * t_dim, dim);
    let mut out = CMat::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        for col in 0..out_dim {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..t_dim {
                acc += m[(table[r][t], table[col][t])];
            }
            out[(r, col)] = acc;
        }
    }
    Ok(out)
}

/// Transposes the listed factors: swaps the row and column digit on each of them.
pub fn partial_transpose(m: &CMat, d: usize, n: usize, subset: &[usize]) -> Result<CMat, OpError> {
    let dim = check_space(m, d, n)?;
    check_subset(subset, n)?;
    let mut out = CMat::zeros(dim, dim);
    for r in 0..dim {
        let rd = digits(r, d, n);
        for col in 0..dim {
            let mut a = rd.clone();
            let mut b = digits(col, d, n);
            for &j in subset {
                std::mem::swap(&mut a[j], &mut b[j]);
            }
            out[(index(&a, d), index(&b, d))] = m[(r, col)];
        }
    }
    Ok(out)
}

/// Places `op` (acting on `factors`, in that order) into (C^d)^n, identity elsewhere.
pub fn embed(op: &CMat, factors: &[usize], d: usize, n: usize) -> Result<CMat, OpError> {
    check_subset(factors, n)?;
    let sub = checked_dim(d, factors.len()).expect("subset of n");
    if op.nrows() != sub || op.ncols() != sub {
        return Err(OpError::BadDimension(format!("operator on {} factors must be {sub}x{sub}", factors.len())));
    }
    let dim = crate::space::dense_dim(d, n)?;
    let rest: Vec<usize> = (0..n).filter(|j| !factors.contains(j)).collect();
    let r_dim = checked_dim(d, rest.len()).expect("subset of n");
    let mut out = CMat::zeros(dim, dim);
    let mut full = vec![0; n];
    for e in 0..r_dim {
        let ed = digits(e, d, rest.len());
        for (p, &j) in rest.iter().enumerate() {
            full[j] = ed[p];
        }
        let place = |s: usize, full: &mut Vec<usize>| {
            let sd = digits(s, d, factors.len());
            for (p, &j) in factors.iter().enumerate() {
                full[j] = sd[p];
            }
            index(full, d)
        };
        for a in 0..sub {
            let ia = place(a, &mut full);
            for b in 0..sub {
                let v = op[(a, b)];
                if v != C64::new(0.0, 0.0) {
                    let ib = place(b, &mut full);
                    out[(ia, ib)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(m: &CMat) -> Result<(Vec<f64>, CMat), OpError> {
    if !is_hermitian(m) {
        return Err(OpError::NonHermitian);
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(m.nrows(), order.len(), |r, j| eig.eigenvectors[(r, order[j])]);
    Ok((vals, vecs))
}

fn eigenvalues(m: &CMat) -> Result<Vec<f64>, OpError> {
    if !is_hermitian(m) {
        return Err(OpError::NonHermitian);
    }
    let h = (m + m.adjoint()).scale(0.5);
    let mut v: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

pub fn lambda_max(m: &CMat) -> Result<f64, OpError> {
    Ok(*eigenvalues(m)?.last().unwrap_or(&0.0))
}

pub fn min_eig(m: &CMat) -> Result<f64, OpError> {
    Ok(*eigenvalues(m)?.first().unwrap_or(&0.0))
}

/// Largest absolute eigenvalue of a Hermitian matrix.
pub fn op_norm(m: &CMat) -> Result<f64, OpError> {
    let v = eigenvalues(m)?;
    Ok(v.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
}

/// Largest eigenvalue and a unit eigenvector.
pub fn top_eigvec(m: &CMat) -> Result<(f64, DVector<C64>), OpError> {
    let (vals, vecs) = eigh(m)?;
    let j = vals.len() - 1;
    Ok((vals[j], vecs.column(j).into_owned()))
}

/// Nonzero entries as (row, col, re, im), row-major.
pub fn coo_entries(m: &CMat, tol: f64) -> Vec<(usize, usize, f64, f64)> {
    let mut out = Vec::new();
    for r in 0..m.nrows() {
        for col in 0..m.ncols() {
            let z = m[(r, col)];
            if z.norm() > tol {
                out.push((r, col, z.re, z.im));
            }
        }
    }
    out
}

/// Real diagonal matrix helper.
pub fn diag(values: &[f64]) -> CMat {
    CMat::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&x| c(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::kron_all;

    fn swap(d: usize) -> CMat {
        let mut m = CMat::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                m[(i * d + j, j * d + i)] = c(1.0);
            }
        }
        m
    }

    #[test]
    fn partial_trace_of_product() {
        let x = kron_all(&[diag(&[0.3, 0.7]), diag(&[0.6, 0.4])]);
        let r0 = partial_trace(&x, 2, 2, &[1]).unwrap();
        assert!(max_abs(&(r0 - diag(&[0.3, 0.7]))) < 1e-15);
        let r1 = partial_trace(&x, 2, 2, &[0]).unwrap();
        assert!(max_abs(&(r1 - diag(&[0.6, 0.4]))) < 1e-15);
        assert_eq!(partial_trace(&x, 2, 2, &[]).unwrap(), x);
        assert!(partial_trace(&x, 2, 2, &[2]).is_err());
        assert!(partial_trace(&x, 2, 2, &[0, 0]).is_err());
    }

    #[test]
    fn swap_transpose_is_cup_cap() {
        let pt = partial_transpose(&swap(2), 2, 2, &[1]).unwrap();
        let mut cup = CMat::zeros(4, 4);
        for (r, col) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            cup[(r, col)] = c(1.0);
        }
        assert_eq!(pt, cup);
        assert_eq!(partial_transpose(&pt, 2, 2, &[1]).unwrap(), swap(2));
    }

    #[test]
    fn embed_matches_kron() {
        let a = CMat::from_fn(2, 2, |r, col| C64::new(r as f64 + 1.0, col as f64));
        let e = embed(&a, &[1], 2, 3).unwrap();
        let k = kron_all(&[CMat::identity(2, 2), a.clone(), CMat::identity(2, 2)]);
        assert_eq!(e, k);
        // reversed factor order on two sites is the swap conjugate
        let s = swap(2);
        let m = kron_all(&[a.clone(), diag(&[1.0, 2.0])]);
        let e01 = embed(&m, &[0, 1], 2, 2).unwrap();
        let e10 = embed(&m, &[1, 0], 2, 2).unwrap();
        assert!(max_abs(&(&s * e01 * &s - e10)) < 1e-15);
    }

    #[test]
    fn spectra() {
        let m = swap(3);
        assert!((lambda_max(&m).unwrap() - 1.0).abs() < 1e-12);
        assert!((min_eig(&m).unwrap() + 1.0).abs() < 1e-12);
        let (l, v) = top_eigvec(&diag(&[1.0, 5.0, 2.0])).unwrap();
        assert!((l - 5.0).abs() < 1e-12);
        assert!((v[1].norm() - 1.0).abs() < 1e-12);
        let mut bad = CMat::zeros(2, 2);
        bad[(0, 1)] = c(1.0);
        assert_eq!(lambda_max(&bad), Err(OpError::NonHermitian));
        assert_eq!(coo_entries(&m, 0.0).len(), 9);
    }
}
