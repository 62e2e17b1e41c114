use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use qclone_diagrams::Diagram;

use crate::space::{c, checked_dim, dense_dim, digits, index, CMat};
use crate::tensor::tensor_rep_entries;
use crate::OpError;

/// Sparse operator with exact rational entries on (C^d)^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatOp {
    d: usize,
    n: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl RatOp {
    pub fn zero(d: usize, n: usize) -> Self {
        RatOp { d, n, entries: BTreeMap::new() }
    }

    pub fn identity(d: usize, n: usize) -> Result<Self, OpError> {
        let dim = checked_dim(d, n).ok_or(OpError::CapExceeded { dim: usize::MAX, cap: 0 })?;
        let mut out = Self::zero(d, n);
        for i in 0..dim {
            out.entries.insert((i, i), BigRational::from_integer(1.into()));
        }
        Ok(out)
    }

    /// Exact tensor representation of a diagram.
    pub fn from_diagram(p: &Diagram, d: usize) -> Result<Self, OpError> {
        let mut out = Self::zero(d, p.k());
        let one = BigRational::from_integer(1.into());
        for rc in tensor_rep_entries(p, d)? {
            out.entries.insert(rc, one.clone());
        }
        Ok(out)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        checked_dim(self.d, self.n).unwrap_or(usize::MAX)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.entries
    }

    pub fn get(&self, r: usize, col: usize) -> BigRational {
        self.entries.get(&(r, col)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// self += c * other.
    pub fn add_scaled(&mut self, other: &RatOp, coef: &BigRational) -> Result<(), OpError> {
        if self.d != other.d || self.n != other.n {
            return Err(OpError::BadDimension("operand spaces differ".into()));
        }
        for (rc, v) in &other.entries {
            let e = self.entries.entry(*rc).or_insert_with(BigRational::zero);
            *e += v * coef;
            if e.is_zero() {
                self.entries.remove(rc);
            }
        }
        Ok(())
    }

    pub fn scale(&self, coef: &BigRational) -> RatOp {
        let mut out = RatOp::zero(self.d, self.n);
        if coef.is_zero() {
            return out;
        }
        for (rc, v) in &self.entries {
            out.entries.insert(*rc, v * coef);
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        self.entries.iter().filter(|((r, col), _)| r == col).fold(BigRational::zero(), |acc, (_, v)| acc + v)
    }

    /// Traces out the listed factors (0-based).
    pub fn partial_trace(&self, traced: &[usize]) -> Result<RatOp, OpError> {
        let (d, n) = (self.d, self.n);
        if traced.iter().any(|&t| t >= n) {
            return Err(OpError::BadSubset(traced.to_vec()));
        }
        let kept: Vec<usize> = (0..n).filter(|j| !traced.contains(j)).collect();
        let mut out = RatOp::zero(d, kept.len());
        for ((r, col), v) in &self.entries {
            let rd = digits(*r, d, n);
            let cd = digits(*col, d, n);
            if traced.iter().any(|&t| rd[t] != cd[t]) {
                continue;
            }
            let rk: Vec<usize> = kept.iter().map(|&j| rd[j]).collect();
            let ck: Vec<usize> = kept.iter().map(|&j| cd[j]).collect();
            let key = (index(&rk, d), index(&ck, d));
            let e = out.entries.entry(key).or_insert_with(BigRational::zero);
            *e += v;
        }
        out.entries.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Conjugate-transpose (entries are real).
    pub fn transpose(&self) -> RatOp {
        let entries = self.entries.iter().map(|((r, col), v)| ((*col, *r), v.clone())).collect();
        RatOp { d: self.d, n: self.n, entries }
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|((r, col), v)| self.get(*col, *r) == *v)
    }

    pub fn to_dense(&self) -> Result<CMat, OpError> {
        let dim = dense_dim(self.d, self.n)?;
        let mut m = CMat::zeros(dim, dim);
        for ((r, col), v) in &self.entries {
            m[(*r, *col)] = c(v.to_f64().unwrap_or(f64::NAN));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cup_cap_partial_trace() {
        // Tr_2 of psi(1,2|3,4) is the identity.
        let p = RatOp::from_diagram(&Diagram::parse("1,2|3,4").unwrap(), 3).unwrap();
        assert_eq!(p.trace(), q(3, 1));
        let r = p.partial_trace(&[1]).unwrap();
        assert_eq!(r, RatOp::identity(3, 1).unwrap());
        assert!(p.partial_trace(&[2]).is_err());
    }

    #[test]
    fn arithmetic() {
        let id = RatOp::identity(2, 2).unwrap();
        let mut x = id.scale(&q(1, 2));
        x.add_scaled(&id, &q(-1, 2)).unwrap();
        assert!(x.entries().is_empty());
        assert_eq!(id.to_dense().unwrap(), CMat::identity(4, 4));
        assert!(id.is_symmetric());
    }
}
