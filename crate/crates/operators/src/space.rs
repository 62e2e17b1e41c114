use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::OpError;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub const DEFAULT_DENSE_CAP: usize = 4096;
pub const DENSE_CAP_ENV: &str = "QCLONE_DENSE_CAP";

/// Largest dense dimension, overridable through QCLONE_DENSE_CAP.
pub fn dense_cap() -> usize {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_DENSE_CAP)
}

/// d^n, or None on overflow.
pub fn checked_dim(d: usize, n: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..n {
        acc = acc.checked_mul(d)?;
    }
    Some(acc)
}

/// Dimension of (C^d)^n after checking it against the dense cap.
pub fn dense_dim(d: usize, n: usize) -> Result<usize, OpError> {
    let cap = dense_cap();
    match checked_dim(d, n) {
        Some(dim) if dim <= cap => Ok(dim),
        Some(dim) => Err(OpError::CapExceeded { dim, cap }),
        None => Err(OpError::CapExceeded { dim: usize::MAX, cap }),
    }
}

/// Local dimension and factor count of a tensor-product space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub d: usize,
    pub n: usize,
}

impl TensorSpace {
    pub fn new(d: usize, n: usize) -> Result<Self, OpError> {
        if d < 2 {
            return Err(OpError::BadDimension(format!("local dimension {d} < 2")));
        }
        dense_dim(d, n)?;
        Ok(TensorSpace { d, n })
    }

    pub fn dim(&self) -> usize {
        checked_dim(self.d, self.n).expect("checked at construction")
    }
}

/// Big-endian digits of `idx`: factor 0 is the most significant.
pub fn digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for j in (0..n).rev() {
        out[j] = idx % d;
        idx /= d;
    }
    out
}

pub fn index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn trace(m: &CMat) -> C64 {
    m.diagonal().iter().sum()
}

/// Kronecker product of a list of matrices, left factor most significant.
pub fn kron_all(ms: &[CMat]) -> CMat {
    let mut acc = CMat::from_element(1, 1, c(1.0));
    for m in ms {
        acc = acc.kronecker(m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_roundtrip() {
        for i in 0..27 {
            assert_eq!(index(&digits(i, 3, 3), 3), i);
        }
        assert_eq!(digits(5, 2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn cap_checks() {
        assert!(dense_dim(2, 12).is_ok());
        assert!(dense_dim(2, 13).is_err());
        assert!(TensorSpace::new(1, 2).is_err());
        assert!(dense_dim(10, 40).is_err());
    }
}
