use qclone_operators::{c, eigh, min_eig, CMat, C64};

use crate::CloneError;

/// Coefficients of a 1 -> 2 Choi matrix alpha A + beta B + gamma C1 + conj(gamma) C2 + eps1 1
/// + eps2 SWAP_12, with A = d omega_01 (x) I, B = d omega_02 (x) I, C1 = sum |jji><kik|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Choi1to2Coeffs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: C64,
    pub eps1: f64,
    pub eps2: f64,
    pub d: usize,
}

impl Choi1to2Coeffs {
    /// d(alpha+beta) + 2 Re gamma + d^2 eps1 + d eps2 - 1
    pub fn trace_residual(&self) -> f64 {
        let d = self.d as f64;
        d * (self.alpha + self.beta) + 2.0 * self.gamma.re + d * d * self.eps1 + d * self.eps2 - 1.0
    }

    /// Shrink factors (d alpha + 2 Re gamma, d beta + 2 Re gamma) of the two clones.
    pub fn shrink_factors(&self) -> (f64, f64) {
        let d = self.d as f64;
        (d * self.alpha + 2.0 * self.gamma.re, d * self.beta + 2.0 * self.gamma.re)
    }
}

/// Block form of the Choi matrix: `multiplicity` copies of a 2x2 block on span{u_i, v_i}, plus
/// scalar eigenvalues on the rest of the symmetric and antisymmetric parts of clones 1,2.
#[derive(Clone, Debug, PartialEq)]
pub struct Blocks1to2 {
    pub block: [[C64; 2]; 2],
    pub multiplicity: usize,
    pub scalars: Vec<(f64, usize)>,
}

impl Blocks1to2 {
    fn block_eigs(&self) -> (f64, f64) {
        let a = self.block[0][0].re;
        let b = self.block[1][1].re;
        let off = self.block[0][1].norm();
        let mid = (a + b) / 2.0;
        let rad = (((a - b) / 2.0).powi(2) + off * off).sqrt();
        (mid - rad, mid + rad)
    }

    /// Full spectrum with multiplicities, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (lo, hi) = self.block_eigs();
        let mut out = Vec::new();
        for _ in 0..self.multiplicity {
            out.push(lo);
            out.push(hi);
        }
        for &(v, m) in &self.scalars {
            out.extend(std::iter::repeat_n(v, m));
        }
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn psd(&self, tol: f64) -> bool {
        self.eigenvalues().first().is_none_or(|&v| v >= -tol)
    }
}

pub fn choi_1to2_blocks(cf: &Choi1to2Coeffs) -> Result<Blocks1to2, CloneError> {
    if cf.trace_residual().abs() > 1e-12 {
        return Err(CloneError::Domain(format!("trace condition violated by {}", cf.trace_residual())));
    }
    let d = cf.d as f64;
    let s = (d * d - 1.0).sqrt();
    let pp = (d + 1.0) * (cf.alpha + cf.beta + 2.0 * cf.gamma.re) / 2.0 + cf.eps1 + cf.eps2;
    let mm = (d - 1.0) * (cf.alpha + cf.beta - 2.0 * cf.gamma.re) / 2.0 + cf.eps1 - cf.eps2;
    let pm = C64::new(s * (cf.alpha - cf.beta) / 2.0, -s * cf.gamma.im);
    let dd = cf.d;
    Ok(Blocks1to2 {
        block: [[c(pp), pm], [pm.conj(), c(mm)]],
        multiplicity: dd,
        scalars: vec![
            (cf.eps1 + cf.eps2, dd * dd * (dd + 1) / 2 - dd),
            (cf.eps1 - cf.eps2, dd * dd * (dd - 1) / 2 - dd),
        ],
    })
}

/// The d^3 x d^3 Choi matrix, factor 0 the input.
pub fn assemble_choi_1to2(cf: &Choi1to2Coeffs) -> CMat {
    let d = cf.d;
    let dim = d * d * d;
    let idx = |a: usize, b: usize, e: usize| (a * d + b) * d + e;
    let mut m = CMat::identity(dim, dim).scale(cf.eps1);
    for a in 0..d {
        for b in 0..d {
            for e in 0..d {
                m[(idx(a, b, e), idx(a, e, b))] += c(cf.eps2);
                // A and B
                m[(idx(a, a, e), idx(b, b, e))] += c(cf.alpha);
                m[(idx(a, e, a), idx(b, e, b))] += c(cf.beta);
                // C1 = sum |j j i><k i k|, C2 its adjoint
                m[(idx(a, a, b), idx(e, b, e))] += cf.gamma;
                m[(idx(e, b, e), idx(a, a, b))] += cf.gamma.conj();
            }
        }
    }
    m
}

/// Coefficients on the ellipse family: eps2 = 0, eps1 = (d - lambda)/(d(d^2-2)) and alpha, beta,
/// gamma fixed by the shrink factors and the trace condition.
pub fn coeffs_from_lambda(p1: f64, p2: f64, d: usize, lambda: f64) -> Choi1to2Coeffs {
    let df = d as f64;
    let (x, y) = (p1 - p2, p1 + p2);
    let eps1 = (df - lambda) / (df * (df * df - 2.0));
    let t = 1.0 - df * df * eps1;
    let sum = (2.0 * t - y) / df;
    let diff = x / df;
    Choi1to2Coeffs { alpha: (sum + diff) / 2.0, beta: (sum - diff) / 2.0, gamma: c((y - t) / 2.0), eps1, eps2: 0.0, d }
}

/// Maximizes the minimum eigenvalue of the assembled lambda-family Choi over lambda in [0, d]
/// (a concave function, since the Choi matrix is affine in lambda) by golden-section search.
/// Returns (feasible, best lambda, best minimum eigenvalue).
pub fn feasible_numeric(p1: f64, p2: f64, d: usize) -> Result<(bool, f64, f64), CloneError> {
    let f =
        |l: f64| -> Result<f64, CloneError> { Ok(min_eig(&assemble_choi_1to2(&coeffs_from_lambda(p1, p2, d, l)))?) };
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, d as f64);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > 1e-11 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let mut best = (x1, f1);
    for l in [0.0, d as f64, x2] {
        let v = f(l)?;
        if v > best.1 {
            best = (l, v);
        }
    }
    Ok((best.1 >= -1e-9, best.0, best.1))
}

/// Spectrum of the assembled matrix, ascending.
pub fn assembled_spectrum(cf: &Choi1to2Coeffs) -> Result<Vec<f64>, CloneError> {
    Ok(eigh(&assemble_choi_1to2(cf))?.0)
}
