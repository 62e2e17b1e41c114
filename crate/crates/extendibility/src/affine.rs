use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qclone_young::{BrauerLabel, Partition};

use crate::{check_instance, ExtError};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// offset + slope * x, tagged with its (lambda, k, mu) labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFn {
    pub slope: BigRational,
    pub offset: BigRational,
    pub lambda: BrauerLabel,
    pub mu: Partition,
}

impl AffineFn {
    pub fn eval(&self, x: &BigRational) -> BigRational {
        &self.offset + &self.slope * x
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.offset.to_f64().unwrap_or(f64::NAN) + self.slope.to_f64().unwrap_or(f64::NAN) * x
    }

    /// Abscissa where the two lines meet, None when parallel.
    pub fn intersect(&self, other: &AffineFn) -> Option<BigRational> {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            return None;
        }
        Some((&other.offset - &self.offset) / ds)
    }
}

/// Evaluators for the eigenvalues of H(x) on the joint (Brauer, symmetric) isotypic pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    pub n: usize,
    pub d: usize,
}

pub fn affine_family(n: usize, d: usize) -> Result<AffineFamily, ExtError> {
    check_instance(n, d)?;
    Ok(AffineFamily { n, d })
}

impl AffineFamily {
    fn edges(&self) -> BigRational {
        int((self.n * (self.n - 1) / 2) as i64)
    }

    /// 2/(N(N-1)(1-d)).
    pub fn x_tilde(&self) -> BigRational {
        BigRational::new(BigInt::from(2), BigInt::from((self.n * (self.n - 1)) as i64 * (1 - self.d as i64)))
    }

    fn check_lambda(&self, l: &BrauerLabel) -> Result<(), ExtError> {
        let c = l.lambda.conjugate();
        if l.lambda.n() + 2 * l.k != self.n || c.part(0) + c.part(1) > self.d {
            return Err(ExtError::Domain(format!(
                "{:?} with k={} is not a Brauer label for N={}, d={}",
                l.lambda, l.k, self.n, self.d
            )));
        }
        Ok(())
    }

    fn check_mu(&self, mu: &Partition) -> Result<(), ExtError> {
        if mu.n() != self.n || mu.len() > self.d {
            return Err(ExtError::Domain(format!("{mu:?} is not a symmetric label for N={}, d={}", self.n, self.d)));
        }
        Ok(())
    }

    /// (1/2) sum over columns i >= 1 of lambda'_i (d - lambda'_i + 2(i-1)).
    pub fn h(&self, l: &BrauerLabel) -> Result<BigRational, ExtError> {
        self.check_lambda(l)?;
        let d = self.d as i64;
        let twice: i64 = l
            .lambda
            .conjugate()
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &c)| c as i64 * (d - c as i64 + 2 * i as i64))
            .sum();
        Ok(BigRational::new(BigInt::from(twice), BigInt::from(2)))
    }

    /// 1/(N-1) + x~ h(lambda).
    pub fn g(&self, l: &BrauerLabel) -> Result<BigRational, ExtError> {
        Ok(BigRational::new(1.into(), BigInt::from(self.n as i64 - 1)) + self.x_tilde() * self.h(l)?)
    }

    /// (1/(d-1)) (2d c(mu)/(N(N-1)) - 1).
    pub fn a(&self, mu: &Partition) -> Result<BigRational, ExtError> {
        self.check_mu(mu)?;
        let (n, d) = (self.n as i64, self.d as i64);
        let inner = BigRational::new(BigInt::from(2 * d * mu.content()), BigInt::from(n * (n - 1))) - int(1);
        Ok(inner / int(d - 1))
    }

    /// a(mu) + x (c(lambda) + d c(mu) - k(d-1) - N(N-1)/2).
    pub fn f(&self, l: &BrauerLabel, mu: &Partition) -> Result<AffineFn, ExtError> {
        self.check_lambda(l)?;
        let offset = self.a(mu)?;
        let d = self.d as i64;
        let slope = int(l.lambda.content() + d * mu.content() - l.k as i64 * (d - 1)) - self.edges();
        Ok(AffineFn { slope, offset, lambda: l.clone(), mu: mu.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::special_partitions;
    use qclone_young::{irr_brauer, irr_symmetric};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn h_on_special_labels() {
        for (n, d) in [(3, 3), (5, 3), (9, 5), (7, 7)] {
            let fam = affine_family(n, d).unwrap();
            let sp = special_partitions(n, d).unwrap();
            assert_eq!(fam.h(&sp.lambda1).unwrap(), rat(0, 1));
            assert_eq!(fam.h(&sp.lambda2).unwrap(), rat(d as i64 - 1, 2));
            assert_eq!(fam.g(&sp.lambda1).unwrap(), rat(1, n as i64 - 1));
        }
    }

    #[test]
    fn h_matches_content_form() {
        // h = c(lambda) - k(d-1) + N(d-1)/2
        for (n, d) in [(4, 2), (5, 3), (6, 3), (5, 4)] {
            let fam = affine_family(n, d).unwrap();
            for l in irr_brauer(n, d) {
                let expect = rat(2 * (l.lambda.content() - l.k as i64 * (d as i64 - 1)) + (n * (d - 1)) as i64, 2);
                assert_eq!(fam.h(&l).unwrap(), expect);
            }
        }
    }

    #[test]
    fn two_regime_gap_and_hook_content() {
        for (n, d) in [(3, 3), (5, 3), (7, 3), (9, 3), (5, 5), (13, 5)] {
            let fam = affine_family(n, d).unwrap();
            let sp = special_partitions(n, d).unwrap();
            let gap = fam.g(&sp.lambda1).unwrap() - fam.a(&sp.mu2).unwrap();
            assert_eq!(gap, rat(2 * d as i64 + 2 - n as i64, n as i64 - 1));
            let (ni, di) = (n as i64, d as i64);
            assert_eq!(sp.mu2.content(), (ni - di + 1) * (ni - di) / 2 - di * (di - 1) / 2);
        }
    }

    #[test]
    fn value_at_x_tilde_ignores_mu() {
        let fam = affine_family(5, 3).unwrap();
        let xt = fam.x_tilde();
        for l in irr_brauer(5, 3) {
            let g = fam.g(&l).unwrap();
            for mu in irr_symmetric(5, 3) {
                assert_eq!(fam.f(&l, &mu).unwrap().eval(&xt), g);
            }
        }
    }

    #[test]
    fn rejects_bad_labels() {
        let fam = affine_family(4, 2).unwrap();
        let bad = BrauerLabel { lambda: Partition::column(3), k: 0 };
        assert!(fam.h(&bad).is_err());
        assert!(fam.a(&Partition::column(4)).is_err());
    }
}
