use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::{Diagram, DiagramError};

/// Loop parameter of a diagram algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Delta {
    /// Loops are recorded as an exponent of an indeterminate delta.
    Symbolic,
    Value(BigRational),
}

/// Finite rational combination of diagrams, each term carrying a power of delta.
/// With a fixed delta every exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAlgebraElement {
    k: usize,
    delta: Delta,
    terms: BTreeMap<(Diagram, u32), BigRational>,
}

impl DiagramAlgebraElement {
    pub fn zero(k: usize, delta: Delta) -> Self {
        DiagramAlgebraElement { k, delta, terms: BTreeMap::new() }
    }

    pub fn from_diagram(p: Diagram, delta: Delta) -> Self {
        let mut x = Self::zero(p.k(), delta);
        x.add_term(p, 0, BigRational::one());
        x
    }

    pub fn identity(k: usize, delta: Delta) -> Self {
        Self::from_diagram(Diagram::identity(k), delta)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> &Delta {
        &self.delta
    }

    pub fn terms(&self) -> &BTreeMap<(Diagram, u32), BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of delta^power * p.
    pub fn coeff(&self, p: &Diagram, power: u32) -> BigRational {
        self.terms.get(&(p.clone(), power)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds c * delta^loops * p, folding the power into c when delta is fixed.
    pub fn add_term(&mut self, p: Diagram, loops: u32, c: BigRational) {
        let (power, c) = match &self.delta {
            Delta::Symbolic => (loops, c),
            Delta::Value(v) => (0, c * Pow::pow(v, loops)),
        };
        let key = (p, power);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.k, self.delta.clone());
        for ((p, e), v) in &self.terms {
            out.add_term(p.clone(), *e, v * c);
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), DiagramError> {
        if self.k != other.k {
            return Err(DiagramError::SizeMismatch(self.k, other.k));
        }
        if self.delta != other.delta {
            return Err(DiagramError::DeltaMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DiagramError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((p, e), v) in &other.terms {
            out.add_term(p.clone(), *e, v.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of p.q = delta^loops (p ∘ q).
    pub fn mul(&self, other: &Self) -> Result<Self, DiagramError> {
        self.check(other)?;
        let mut out = Self::zero(self.k, self.delta.clone());
        for ((p, ep), a) in &self.terms {
            for ((q, eq), b) in &other.terms {
                let (r, loops) = p.compose(q)?;
                out.add_term(r, ep + eq + loops as u32, a * b);
            }
        }
        Ok(out)
    }

    /// Evaluates a symbolic element at a fixed delta.
    pub fn specialize(&self, value: BigRational) -> Self {
        let mut out = Self::zero(self.k, Delta::Value(value.clone()));
        for ((p, e), v) in &self.terms {
            let c = match &self.delta {
                Delta::Symbolic => v * Pow::pow(&value, *e),
                Delta::Value(_) => v.clone(),
            };
            out.add_term(p.clone(), 0, c);
        }
        out
    }
}

/// Rational from an integer.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    #[test]
    fn permutation_product() {
        let c = DiagramAlgebraElement::from_diagram(Diagram::from_permutation(&[2, 3, 1]).unwrap(), Delta::Symbolic);
        let t = DiagramAlgebraElement::from_diagram(Diagram::from_permutation(&[2, 1, 3]).unwrap(), Delta::Symbolic);
        let expect =
            DiagramAlgebraElement::from_diagram(Diagram::from_permutation(&[3, 2, 1]).unwrap(), Delta::Symbolic);
        assert_eq!(c.mul(&t).unwrap(), expect);
    }

    #[test]
    fn identity_is_unit() {
        let mut x = DiagramAlgebraElement::zero(3, Delta::Symbolic);
        x.add_term(d("1,3|2,6|4,5"), 0, int(2));
        x.add_term(d("1,2,4,5|3,6"), 1, int(-3));
        let id = DiagramAlgebraElement::identity(3, Delta::Symbolic);
        assert_eq!(x.mul(&id).unwrap(), x);
        assert_eq!(id.mul(&x).unwrap(), x);
    }

    #[test]
    fn cup_cap_square() {
        let e = d("1,2|3,4");
        let x = DiagramAlgebraElement::from_diagram(e.clone(), Delta::Symbolic);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.coeff(&e, 1), int(1));
        assert_eq!(sq.terms().len(), 1);
        let fixed = sq.specialize(int(3));
        assert_eq!(fixed.coeff(&e, 0), int(3));
        let direct = x.specialize(int(3));
        assert_eq!(direct.mul(&direct).unwrap(), fixed);
    }

    #[test]
    fn mismatches() {
        let a = DiagramAlgebraElement::identity(2, Delta::Symbolic);
        let b = DiagramAlgebraElement::identity(3, Delta::Symbolic);
        assert!(a.mul(&b).is_err());
        let c = DiagramAlgebraElement::identity(2, Delta::Value(int(2)));
        assert_eq!(a.add(&c), Err(DiagramError::DeltaMismatch));
    }
}
