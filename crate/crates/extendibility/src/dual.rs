use nalgebra::{DMatrix, SymmetricEigen};
use qclone_operators::{checked_dim, dense_cap, lanczos_lambda_max, LanczosOptions, OpError, SparseOp};

use crate::matching::edges;
use crate::{check_instance, ExtError};

/// Largest dimension diagonalized densely; above this H(x) goes through Lanczos.
pub const DENSE_EIG_MAX: usize = 64;

/// The three pieces of H(x) = E(x~ - x) I + ((d+1)x - d x~) J_S - x J_P, where J_S and J_P sum
/// SWAP and d*omega over the edges of K_N.
#[derive(Clone, Debug)]
pub struct HParts {
    pub n: usize,
    pub d: usize,
    pub x_tilde: f64,
    pub swaps: SparseOp,
    pub cups: SparseOp,
}

impl HParts {
    pub fn new(n: usize, d: usize) -> Result<Self, ExtError> {
        check_instance(n, d)?;
        let cap = dense_cap();
        let dim = checked_dim(d, n).unwrap_or(usize::MAX);
        if dim > cap {
            return Err(OpError::CapExceeded { dim, cap }.into());
        }
        let mut swap = Vec::with_capacity(d * d);
        let mut cup = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                swap.push((a * d + b, b * d + a, 1.0));
                cup.push((a * d + a, b * d + b, 1.0));
            }
        }
        let mut s_trip = Vec::new();
        let mut c_trip = Vec::new();
        for (i, j) in edges(n) {
            s_trip.extend(SparseOp::embed_local(&swap, &[i, j], d, n)?.triplets());
            c_trip.extend(SparseOp::embed_local(&cup, &[i, j], d, n)?.triplets());
        }
        let x_tilde = 2.0 / ((n * (n - 1)) as f64 * (1.0 - d as f64));
        Ok(HParts {
            n,
            d,
            x_tilde,
            swaps: SparseOp::from_triplets(dim, s_trip),
            cups: SparseOp::from_triplets(dim, c_trip),
        })
    }

    pub fn dim(&self) -> usize {
        self.swaps.dim()
    }

    /// (identity, J_S, J_P) coefficients at x.
    pub fn coefficients(&self, x: f64) -> (f64, f64, f64) {
        let e = (self.n * (self.n - 1) / 2) as f64;
        let d = self.d as f64;
        (e * (self.x_tilde - x), (d + 1.0) * x - d * self.x_tilde, -x)
    }

    pub fn operator(&self, x: f64) -> Result<SparseOp, ExtError> {
        let (ci, cs, cp) = self.coefficients(x);
        let id = SparseOp::from_triplets(self.dim(), (0..self.dim()).map(|i| (i, i, 1.0)).collect());
        Ok(SparseOp::combine(&[(ci, &id), (cs, &self.swaps), (cp, &self.cups)])?)
    }

    pub fn apply(&self, x: f64, v: &[f64], out: &mut [f64]) {
        let (ci, cs, cp) = self.coefficients(x);
        let mut tmp = vec![0.0; v.len()];
        self.swaps.matvec(v, out);
        self.cups.matvec(v, &mut tmp);
        for ((o, t), vi) in out.iter_mut().zip(&tmp).zip(v) {
            *o = ci * vi + cs * *o + cp * t;
        }
    }

    /// f(x) = lambda_max(H(x)).
    pub fn lambda_max(&self, x: f64) -> Result<f64, ExtError> {
        let dim = self.dim();
        if dim <= DENSE_EIG_MAX {
            let h = self.operator(x)?;
            let mut m = DMatrix::<f64>::zeros(dim, dim);
            for (r, c, v) in h.triplets() {
                m[(r, c)] = v;
            }
            let eig = SymmetricEigen::new(m);
            return Ok(eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        }
        Ok(lanczos_lambda_max(dim, |v, out| self.apply(x, v, out), LanczosOptions::default())?)
    }
}

/// H(x) as a sparse operator on (C^d)^N.
pub fn h_operator(x: f64, n: usize, d: usize) -> Result<SparseOp, ExtError> {
    HParts::new(n, d)?.operator(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualResult {
    pub value: f64,
    pub x: f64,
    pub evaluations: usize,
    pub bracket: (f64, f64),
}

const MAX_EVALUATIONS: usize = 400;

/// min over x of lambda_max(H(x)): bracket around x~ (expanded until the middle point is lowest),
/// then golden-section down to an x-interval of width `tol`.
pub fn dual_numeric(n: usize, d: usize, tol: f64) -> Result<DualResult, ExtError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(ExtError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let h = HParts::new(n, d)?;
    let mut evals = 0usize;
    let mut f = |x: f64| -> Result<f64, ExtError> {
        evals += 1;
        if evals > MAX_EVALUATIONS {
            return Err(ExtError::NoConvergence(MAX_EVALUATIONS));
        }
        h.lambda_max(x)
    };
    let xt = h.x_tilde;
    let width = 10.0 * xt.abs();
    let (mut lo, mut mid, mut hi) = (xt - width, xt, xt + width);
    let (mut flo, fmid, mut fhi) = (f(lo)?, f(mid)?, f(hi)?);
    let mut fm = fmid;
    // convexity: once f(lo) >= f(mid) <= f(hi) the minimum lies in [lo, hi]
    while flo < fm || fhi < fm {
        if flo < fm {
            let step = mid - lo;
            (hi, fhi) = (mid, fm);
            (mid, fm) = (lo, flo);
            lo -= 2.0 * step;
            flo = f(lo)?;
        } else {
            let step = hi - mid;
            (lo, flo) = (mid, fm);
            (mid, fm) = (hi, fhi);
            hi += 2.0 * step;
            fhi = f(hi)?;
        }
    }
    let bracket = (lo, hi);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let (x, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let (x, value) = if fm < value && (lo..=hi).contains(&mid) { (mid, fm) } else { (x, value) };
    Ok(DualResult { value, x, evaluations: evals, bracket })
}
