use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qclone_diagrams::{enumerate, Diagram, Family};
use qclone_operators::{min_eig, RatOp};
use qclone_young::{all_perms, sign};

use crate::matching::{edges, isotropic_fit_exact, pair_marginal, ExactFit};
use crate::ExtError;

#[derive(Clone, Debug)]
pub struct State33 {
    pub rho: RatOp,
    pub min_eig: f64,
    /// fits of the three pair marginals, in edge order
    pub marginals: Vec<ExactFit>,
}

/// (1/57) [sum of the nine one-line Brauer diagrams on three rows + 2 sum_sigma sign(sigma) psi(sigma)]
/// on (C^3)^3, verified to be a state with every pair marginal (7/19) omega + (12/19) I/9.
pub fn optimal_state_3_3() -> Result<State33, ExtError> {
    let d = 3;
    let one = BigRational::from_integer(1.into());
    let mut sum = RatOp::zero(d, 3);
    for p in enumerate(Family::Brauer, 3)?.iter().filter(|p| p.propagating_blocks() == 1) {
        sum.add_scaled(&RatOp::from_diagram(p, d)?, &one)?;
    }
    for sigma in all_perms(3) {
        let coef = BigRational::from_integer(BigInt::from(2 * sign(&sigma)));
        sum.add_scaled(&RatOp::from_diagram(&Diagram::from_perm0(&sigma), d)?, &coef)?;
    }
    let rho = sum.scale(&BigRational::new(1.into(), 57.into()));
    if rho.trace() != one {
        return Err(ExtError::Verification(format!("trace is {}", rho.trace())));
    }
    let low = min_eig(&rho.to_dense()?)?;
    if low < -1e-10 {
        return Err(ExtError::Verification(format!("minimum eigenvalue {low}")));
    }
    let p = BigRational::new(7.into(), 19.into());
    let mut marginals = Vec::new();
    for (i, j) in edges(3) {
        let fit = isotropic_fit_exact(&pair_marginal(&rho, i, j)?)?;
        if fit.p != p || !fit.residual_sq.is_zero() {
            return Err(ExtError::Verification(format!(
                "marginal ({i},{j}) has p = {}, residual^2 = {}",
                fit.p, fit.residual_sq
            )));
        }
        marginals.push(fit);
    }
    Ok(State33 { rho, min_eig: low, marginals })
}
