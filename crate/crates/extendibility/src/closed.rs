use num_bigint::BigInt;
use num_rational::BigRational;
use qclone_young::{BrauerLabel, Partition};

use crate::affine::{affine_family, AffineFn};
use crate::{check_instance, ExtError};

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// p(N,d): 1/(N + N mod 2 - 1) when d > N or d, N not both odd, otherwise
/// min{(2d+1)/(2dN+1), 1/(N-1)}.
pub fn p_closed(n: usize, d: usize) -> Result<BigRational, ExtError> {
    check_instance(n, d)?;
    let (ni, di) = (n as i64, d as i64);
    if d > n || d.is_multiple_of(2) || n.is_multiple_of(2) {
        return Ok(rat(1, ni + ni % 2 - 1));
    }
    Ok(rat(2 * di + 1, 2 * di * ni + 1).min(rat(1, ni - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPartitions {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub m: usize,
    /// (1^d) with (N-d)/2 removed pairs
    pub lambda1: BrauerLabel,
    /// (1) with (N-1)/2 removed pairs
    pub lambda2: BrauerLabel,
    pub mu1: Partition,
    pub mu2: Partition,
    pub mu3: Partition,
}

/// The five labels used by the small-dimension argument; needs N >= d with N and d odd.
pub fn special_partitions(n: usize, d: usize) -> Result<SpecialPartitions, ExtError> {
    check_instance(n, d)?;
    if n < d || n.is_multiple_of(2) || d.is_multiple_of(2) {
        return Err(ExtError::Domain(format!("need N >= d with both odd, got N={n}, d={d}")));
    }
    let half = (n - d) / 2;
    let (k, m) = (half / d, half % d);
    let mut cols = vec![d; 2 * k + 1];
    cols.extend([m, m]);
    let mu3 = Partition::from_unsorted(cols).conjugate();
    let mut hook = vec![n - d + 1];
    hook.extend(std::iter::repeat_n(1, d - 1));
    Ok(SpecialPartitions {
        n,
        d,
        k,
        m,
        lambda1: BrauerLabel { lambda: Partition::column(d), k: half },
        lambda2: BrauerLabel { lambda: Partition::column(1), k: (n - 1) / 2 },
        mu1: Partition::row(n),
        mu2: Partition::new(hook)?,
        mu3,
    })
}

/// (lambda, mu) with lambda = (1^m) and exactly m odd rows in mu, for some 1 <= m <= d.
pub fn gamma_membership(lambda: &Partition, mu: &Partition, d: usize) -> bool {
    let m = lambda.len();
    (1..=d).contains(&m) && lambda.parts().iter().all(|&p| p == 1) && mu.odd_row_count() == m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regime {
    /// N >= 2d+3: the flat value g(lambda1) at x~
    Flat,
    /// N <= 2d+1: crossing of f(lambda2, mu1) and f(lambda1, mu2) at x = 4d/((1-d)(N-1)(2dN+1))
    Crossing { x: BigRational, left: AffineFn, right: AffineFn },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub value: BigRational,
    pub regime: Regime,
}

/// Exact dual value for N >= d with both odd.
pub fn dual_closed(n: usize, d: usize) -> Result<DualCertificate, ExtError> {
    let sp = special_partitions(n, d)?;
    let fam = affine_family(n, d)?;
    if n >= 2 * d + 3 {
        let value = fam.g(&sp.lambda1)?;
        return Ok(DualCertificate { value, regime: Regime::Flat });
    }
    let left = fam.f(&sp.lambda2, &sp.mu1)?;
    let right = fam.f(&sp.lambda1, &sp.mu2)?;
    let x = left.intersect(&right).ok_or_else(|| ExtError::Verification("parallel affine functions".into()))?;
    let value = left.eval(&x);
    let (ni, di) = (n as i64, d as i64);
    let expect_x = rat(4 * di, (1 - di) * (ni - 1) * (2 * di * ni + 1));
    if x != expect_x || value != rat(2 * di + 1, 2 * di * ni + 1) {
        return Err(ExtError::Verification(format!("crossing at x = {x}, value {value}")));
    }
    Ok(DualCertificate { value, regime: Regime::Crossing { x, left, right } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closed_values() {
        assert_eq!(p_closed(3, 3).unwrap(), rat(7, 19));
        assert_eq!(p_closed(9, 3).unwrap(), rat(1, 8));
        assert_eq!(p_closed(5, 3).unwrap(), rat(7, 31));
        assert_eq!(p_closed(7, 7).unwrap(), rat(5, 33));
        assert_eq!(p_closed(3, 4).unwrap(), rat(1, 3));
        for d in 2..10 {
            assert_eq!(p_closed(2, d).unwrap(), rat(1, 1));
        }
        assert!(p_closed(1, 3).is_err());
    }

    #[test]
    fn special_labels() {
        let sp = special_partitions(5, 3).unwrap();
        assert_eq!((sp.k, sp.m), (0, 1));
        assert_eq!(sp.mu3, p(&[3, 1, 1]));
        assert_eq!(sp.mu2, p(&[3, 1, 1]));
        for (n, d) in [(3, 3), (7, 3), (9, 3), (15, 3), (9, 5), (21, 5)] {
            let sp = special_partitions(n, d).unwrap();
            assert_eq!(n - d, 2 * sp.k * d + 2 * sp.m);
            for mu in [&sp.mu1, &sp.mu2, &sp.mu3] {
                assert_eq!(mu.n(), n);
            }
            // row form: m rows of 2k+3 and d-m rows of 2k+1
            let mut rows = vec![2 * sp.k + 3; sp.m];
            rows.extend(vec![2 * sp.k + 1; d - sp.m]);
            assert_eq!(sp.mu3, p(&rows));
        }
        assert!(special_partitions(4, 3).is_err());
        assert!(special_partitions(3, 5).is_err());
    }

    #[test]
    fn gamma_examples() {
        let sp = special_partitions(7, 3).unwrap();
        assert!(gamma_membership(&sp.lambda1.lambda, &sp.mu2, 3));
        assert!(gamma_membership(&sp.lambda2.lambda, &sp.mu1, 3));
        assert!(!gamma_membership(&p(&[2]), &p(&[7]), 3));
        assert!(!gamma_membership(&p(&[1, 1]), &p(&[7]), 3));
    }

    #[test]
    fn dual_closed_regimes() {
        let c = dual_closed(5, 3).unwrap();
        assert_eq!(c.value, rat(7, 31));
        match c.regime {
            Regime::Crossing { x, .. } => assert_eq!(x, rat(-12, 248)),
            Regime::Flat => panic!("(5,3) is a crossing"),
        }
        let c = dual_closed(9, 3).unwrap();
        assert_eq!(c.value, rat(1, 8));
        assert_eq!(c.regime, Regime::Flat);
        assert_eq!(dual_closed(7, 7).unwrap().value, rat(5, 33));
        assert!(dual_closed(6, 3).is_err());
    }
}
