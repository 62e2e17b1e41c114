use num_traits::ToPrimitive;
use qclone_diagrams::{enumerate, Diagram, Family};
use qclone_operators::{dense_dim, eigh, max_abs, tensor_rep, CMat};
use qclone_young::{irr_brauer, irr_symmetric, isotypic_projector};

use crate::matching::edges;
use crate::ExtError;

pub const CENTRAL_MAX_N: usize = 5;
const TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralAlgebra {
    Symmetric,
    Brauer,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralReport {
    pub n: usize,
    pub d: usize,
    pub algebra: CentralAlgebra,
    /// (label, predicted eigenvalue, largest deviation on that component)
    pub components: Vec<(String, i64, f64)>,
    /// distinct eigenvalues of J found numerically
    pub spectrum: Vec<f64>,
    /// largest commutator with the tensor representation of the generating diagrams
    pub max_commutator: f64,
    pub passed: bool,
}

fn transposition(n: usize, i: usize, j: usize) -> Diagram {
    let mut s: Vec<usize> = (0..n).collect();
    s.swap(i, j);
    Diagram::from_perm0(&s)
}

fn distinct(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        if out.last().is_none_or(|&w| (v - w).abs() > 1e-7) {
            out.push(v);
        }
    }
    out
}

/// J = sum_{i<j} psi((i j)), or sum_{i<j} psi((i j)) - psi((i j)^Gamma) for the Brauer case,
/// compared against c(lambda), resp. c(lambda) - k(d-1), on every isotypic component.
pub fn central_element_check(n: usize, d: usize, algebra: CentralAlgebra) -> Result<CentralReport, ExtError> {
    if n == 0 || n > CENTRAL_MAX_N || d < 1 {
        return Err(ExtError::Domain(format!("need 1 <= n <= {CENTRAL_MAX_N} and d >= 1, got n={n}, d={d}")));
    }
    let dim = dense_dim(d, n)?;
    let mut j = CMat::zeros(dim, dim);
    for (a, b) in edges(n) {
        let t = transposition(n, a, b);
        j += tensor_rep(&t, d)?;
        if algebra == CentralAlgebra::Brauer {
            j -= tensor_rep(&t.partial_transpose_rows(&[b + 1])?, d)?;
        }
    }
    let family = match algebra {
        CentralAlgebra::Symmetric => Family::Symmetric,
        CentralAlgebra::Brauer => Family::Brauer,
    };
    let mut max_commutator = 0.0f64;
    for p in enumerate(family, n)? {
        let g = tensor_rep(&p, d)?;
        max_commutator = max_commutator.max(max_abs(&(&g * &j - &j * &g)));
    }
    let spectrum = distinct(&eigh(&j)?.0);
    let mut components = Vec::new();
    let mut passed = max_commutator < TOL;
    match algebra {
        CentralAlgebra::Symmetric => {
            let mut total = CMat::zeros(dim, dim);
            for mu in irr_symmetric(n, d) {
                let mut proj = CMat::zeros(dim, dim);
                for (sigma, coef) in isotypic_projector(&mu)?.terms() {
                    let w = coef.to_f64().unwrap_or(f64::NAN);
                    proj += tensor_rep(&Diagram::from_perm0(sigma), d)?.scale(w);
                }
                let c = mu.content();
                let dev = max_abs(&(&j * &proj - proj.scale(c as f64)));
                let nonzero = max_abs(&proj) > 1e-9;
                passed &= dev < TOL && nonzero;
                components.push((format!("{:?}", mu.parts()), c, dev));
                total += proj;
            }
            passed &= max_abs(&(total - CMat::identity(dim, dim))) < TOL;
        }
        CentralAlgebra::Brauer => {
            // each label must occur as an eigenvalue and no other eigenvalue may appear
            let labels = irr_brauer(n, d);
            let mut predicted: Vec<f64> = Vec::new();
            for l in &labels {
                let c = l.lambda.content() - l.k as i64 * (d as i64 - 1);
                let dev = spectrum.iter().map(|s| (s - c as f64).abs()).fold(f64::INFINITY, f64::min);
                passed &= dev < TOL;
                components.push((format!("{:?},k={}", l.lambda.parts(), l.k), c, dev));
                predicted.push(c as f64);
            }
            passed &= spectrum.iter().all(|s| predicted.iter().any(|c| (s - c).abs() < TOL));
        }
    }
    Ok(CentralReport { n, d, algebra, components, spectrum, max_commutator, passed })
}
