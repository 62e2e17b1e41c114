use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::exact::RatOp;
use crate::haar::rng_from_seed;
use crate::space::{c, checked_dim, dense_cap, digits, index, CMat};
use crate::OpError;

/// Real sparse operator in compressed-row form; rows and columns within a row are sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOp {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseOp {
    /// Sums duplicate positions and drops exact zeros.
    pub fn from_triplets(dim: usize, mut t: Vec<(usize, usize, f64)>) -> Self {
        t.sort_by_key(|&(r, col, _)| (r, col));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(t.len());
        let mut vals: Vec<f64> = Vec::with_capacity(t.len());
        let mut rows = Vec::with_capacity(t.len());
        for (r, col, v) in t {
            assert!(r < dim && col < dim, "triplet outside {dim}x{dim}");
            if rows.last() == Some(&r) && cols.last() == Some(&col) {
                *vals.last_mut().unwrap() += v;
            } else {
                rows.push(r);
                cols.push(col);
                vals.push(v);
            }
        }
        let mut keep_r = Vec::new();
        let mut keep_c = Vec::new();
        let mut keep_v = Vec::new();
        for ((r, col), v) in rows.into_iter().zip(cols).zip(vals) {
            if v != 0.0 {
                keep_r.push(r);
                keep_c.push(col);
                keep_v.push(v);
            }
        }
        for &r in &keep_r {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseOp { dim, row_ptr, cols: keep_c, vals: keep_v }
    }

    pub fn from_ratop(op: &RatOp) -> Self {
        let t = op.entries().iter().map(|(&(r, col), v)| (r, col, v.to_f64().unwrap_or(f64::NAN))).collect();
        Self::from_triplets(op.dim(), t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for r in 0..self.dim {
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                out.push((r, self.cols[p], self.vals[p]));
            }
        }
        out
    }

    pub fn get(&self, r: usize, col: usize) -> f64 {
        let row = &self.cols[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&col) {
            Ok(p) => self.vals[self.row_ptr[r] + p],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (r, out) in y.iter_mut().enumerate().take(self.dim) {
            *out = (self.row_ptr[r]..self.row_ptr[r + 1]).map(|p| self.vals[p] * x[self.cols[p]]).sum();
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        self.triplets().iter().fold(0.0f64, |acc, &(r, col, v)| acc.max((v - self.get(col, r)).abs()))
    }

    pub fn scale(&self, s: f64) -> SparseOp {
        let t = self.triplets().into_iter().map(|(r, col, v)| (r, col, v * s)).collect();
        Self::from_triplets(self.dim, t)
    }

    /// Linear combination sum_i w_i A_i of operators of equal dimension.
    pub fn combine(terms: &[(f64, &SparseOp)]) -> Result<SparseOp, OpError> {
        let dim = terms.first().map(|(_, a)| a.dim).unwrap_or(0);
        let mut t = Vec::new();
        for (w, a) in terms {
            if a.dim != dim {
                return Err(OpError::BadDimension(format!("{} vs {dim}", a.dim)));
            }
            t.extend(a.triplets().into_iter().map(|(r, col, v)| (r, col, w * v)));
        }
        Ok(Self::from_triplets(dim, t))
    }

    /// Local operator on `factors` (entries on the d^|factors| space) embedded into (C^d)^n.
    pub fn embed_local(local: &[(usize, usize, f64)], factors: &[usize], d: usize, n: usize) -> Result<Self, OpError> {
        if factors.iter().any(|&j| j >= n) {
            return Err(OpError::BadSubset(factors.to_vec()));
        }
        let dim = checked_dim(d, n).ok_or_else(|| OpError::BadDimension(format!("{d}^{n} overflows")))?;
        let rest: Vec<usize> = (0..n).filter(|j| !factors.contains(j)).collect();
        let r_dim = checked_dim(d, rest.len()).expect("subset of n");
        let mut t = Vec::with_capacity(local.len() * r_dim);
        let mut full = vec![0; n];
        for e in 0..r_dim {
            for (p, x) in digits(e, d, rest.len()).into_iter().enumerate() {
                full[rest[p]] = x;
            }
            for &(a, b, v) in local {
                for (p, x) in digits(a, d, factors.len()).into_iter().enumerate() {
                    full[factors[p]] = x;
                }
                let ia = index(&full, d);
                for (p, x) in digits(b, d, factors.len()).into_iter().enumerate() {
                    full[factors[p]] = x;
                }
                t.push((ia, index(&full, d), v));
            }
        }
        Ok(Self::from_triplets(dim, t))
    }

    pub fn to_dense(&self) -> Result<CMat, OpError> {
        let cap = dense_cap();
        if self.dim > cap {
            return Err(OpError::CapExceeded { dim: self.dim, cap });
        }
        let mut m = CMat::zeros(self.dim, self.dim);
        for (r, col, v) in self.triplets() {
            m[(r, col)] = c(v);
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LanczosOptions {
    /// Relative tolerance on the Ritz residual.
    pub tol: f64,
    pub max_iter: usize,
    /// Krylov dimension before an explicit restart.
    pub krylov: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { tol: 1e-10, max_iter: 100_000, krylov: 160, seed: 0x5eed }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Largest eigenvalue of a real symmetric operator given by its action, using Lanczos with full
/// reorthogonalization and explicit restarts from the current top Ritz vector.
pub fn lanczos_lambda_max<F>(dim: usize, apply: F, opts: LanczosOptions) -> Result<f64, OpError>
where
    F: Fn(&[f64], &mut [f64]),
{
    if dim == 0 {
        return Err(OpError::BadDimension("empty operator".into()));
    }
    let mut rng = rng_from_seed(opts.seed);
    let mut start: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
    normalize(&mut start);
    let m_max = opts.krylov.clamp(2, dim.max(2)).min(dim);
    let mut total = 0usize;
    let mut w = vec![0.0; dim];
    loop {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut ritz: Option<(f64, Vec<f64>)> = None;
        for j in 0..m_max {
            apply(&basis[j], &mut w);
            total += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            for _ in 0..2 {
                for v in &basis {
                    let h = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= h * y);
                }
            }
            let b = normalize(&mut w);
            let last = j + 1 == m_max;
            let breakdown = b <= 1e-13 * alpha.iter().fold(1e-300f64, |acc, x| acc.max(x.abs()));
            if last || breakdown || j % 4 == 3 {
                let (theta, s, scale) = tridiag_top(&alpha, &beta);
                let resid = b * s[s.len() - 1].abs();
                if breakdown || resid <= opts.tol * scale.max(1e-300) {
                    return Ok(theta);
                }
                ritz = Some((theta, s));
            }
            if total >= opts.max_iter {
                return Err(OpError::NoConvergence(total));
            }
            if !last {
                beta.push(b);
                basis.push(w.clone());
            }
        }
        let (_, s) = ritz.expect("checked at the last step");
        let mut next = vec![0.0; dim];
        for (coef, v) in s.iter().zip(&basis) {
            next.iter_mut().zip(v).for_each(|(x, y)| *x += coef * y);
        }
        normalize(&mut next);
        start = next;
    }
}

/// Top eigenpair of the Lanczos tridiagonal matrix and its spectral radius.
fn tridiag_top(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>, f64) {
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut best = 0;
    let mut scale = 0.0f64;
    for i in 0..m {
        scale = scale.max(eig.eigenvalues[i].abs());
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    (eig.eigenvalues[best], eig.eigenvectors.column(best).iter().copied().collect(), scale)
}
