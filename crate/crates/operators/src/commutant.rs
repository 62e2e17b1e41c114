use nalgebra::DMatrix;
use qclone_diagrams::{enumerate, Family};

use crate::haar::{haar_diag_perm, haar_orthogonal_rng, haar_unitary_rng, random_permutation_matrix, rng_from_seed};
use crate::space::{dense_dim, kron_all, max_abs, CMat, C64};
use crate::tensor::tensor_rep;
use crate::OpError;

#[derive(Clone, Debug, PartialEq)]
pub struct CommutantReport {
    pub diagrams: usize,
    /// numerical rank of span{psi(p)}
    pub diagram_rank: usize,
    pub samples: usize,
    /// numerical rank of the span of the sampled group tensors
    pub group_rank: usize,
    /// largest max-entry norm of [psi(p), g^(x)n] over all pairs
    pub max_commutator: f64,
}

/// Rank of the span of the given matrices, from singular values above 1e-8 of the largest.
pub fn numerical_rank(mats: &[CMat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].len();
    let stacked = DMatrix::<C64>::from_fn(len, mats.len(), |r, j| mats[j][r]);
    let sv = stacked.singular_values();
    let top = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-8 * top).count()
}

/// Local group element acting on factor j for a sampled group element.
fn group_tensor(family: Family, n: usize, d: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<CMat> {
    match family {
        Family::Symmetric => vec![haar_unitary_rng(d, rng); n],
        Family::Brauer => vec![haar_orthogonal_rng(d, rng); n],
        Family::UniformBlock => vec![haar_diag_perm(d, rng); n],
        Family::Partition => vec![random_permutation_matrix(d, rng); n],
        Family::WalledBrauer { left, .. } => {
            let u = haar_unitary_rng(d, rng);
            let ubar = u.map(|z| z.conj());
            (0..n).map(|j| if j < left { u.clone() } else { ubar.clone() }).collect()
        }
    }
}

/// Compares span{psi(p)} for the family with the sampled span of its dual group on (C^d)^n.
pub fn commutant_dimension(
    family: Family,
    n: usize,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<CommutantReport, OpError> {
    if let Some(k) = family.fixed_k() {
        if k != n {
            return Err(OpError::BadDimension(format!("walled family has {k} rows, n = {n}")));
        }
    }
    dense_dim(d, n)?;
    let diagrams = enumerate(family, n)?;
    let reps: Vec<CMat> = diagrams.iter().map(|p| tensor_rep(p, d)).collect::<Result<_, _>>()?;
    let mut rng = rng_from_seed(seed);
    let mut group = Vec::with_capacity(samples);
    let mut max_commutator = 0.0f64;
    for _ in 0..samples {
        let g = kron_all(&group_tensor(family, n, d, &mut rng));
        for r in &reps {
            max_commutator = max_commutator.max(max_abs(&(r * &g - &g * r)));
        }
        group.push(g);
    }
    Ok(CommutantReport {
        diagrams: reps.len(),
        diagram_rank: numerical_rank(&reps),
        samples,
        group_rank: numerical_rank(&group),
        max_commutator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_ranks() {
        let r = commutant_dimension(Family::Symmetric, 3, 2, 30, 1).unwrap();
        assert_eq!(r.diagram_rank, 5);
        assert_eq!(r.group_rank, 20);
        assert!(r.max_commutator < 1e-10);
        let r2 = commutant_dimension(Family::Symmetric, 2, 2, 20, 2).unwrap();
        assert_eq!(r2.group_rank, 10);
        assert_eq!(r2.diagram_rank, 2);
    }

    #[test]
    fn other_families_commute() {
        for (fam, n, d) in [
            (Family::Brauer, 2, 3),
            (Family::Partition, 2, 3),
            (Family::UniformBlock, 2, 2),
            (Family::WalledBrauer { left: 1, right: 1 }, 2, 3),
            (Family::WalledBrauer { left: 2, right: 1 }, 3, 2),
        ] {
            let r = commutant_dimension(fam, n, d, 5, 3).unwrap();
            assert!(r.max_commutator < 1e-10, "{fam:?}: {}", r.max_commutator);
        }
        assert!(commutant_dimension(Family::WalledBrauer { left: 1, right: 1 }, 3, 2, 1, 0).is_err());
    }
}
