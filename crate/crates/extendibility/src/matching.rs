use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use qclone_diagrams::Diagram;
use qclone_operators::{checked_dim, dense_cap, CMat, OpError, RatOp};

use crate::{check_instance, ExtError};

pub const MAX_MATCHING_N: usize = 12;

/// Edges (i, j), i < j, of K_N in lexicographic order.
pub fn edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn matchings_of(vertices: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    let Some((&first, rest)) = vertices.split_first() else {
        out.push(cur.clone());
        return;
    };
    for (pos, &v) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &w)| w).collect();
        cur.push((first, v));
        matchings_of(&remaining, cur, out);
        cur.pop();
    }
}

/// All perfect matchings of K_N on vertices 0..N; empty for odd N.
pub fn perfect_matchings(n: usize) -> Result<Vec<Vec<(usize, usize)>>, ExtError> {
    if n > MAX_MATCHING_N {
        return Err(ExtError::Domain(format!("N = {n} exceeds the matching cap {MAX_MATCHING_N}")));
    }
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    matchings_of(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    Ok(out)
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Unnormalized cups on the matched pairs, identity on `free`, as one diagram.
fn matching_diagram(n: usize, pairs: &[(usize, usize)], free: Option<usize>) -> Result<Diagram, ExtError> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &(i, j) in pairs {
        blocks.push(vec![i + 1, j + 1]);
        blocks.push(vec![n + i + 1, n + j + 1]);
    }
    if let Some(v) = free {
        blocks.push(vec![v + 1, n + v + 1]);
    }
    Ok(Diagram::new(n, blocks)?)
}

/// Average of tensor products of maximally entangled states over perfect matchings. For odd N
/// one vertex, averaged over all N choices, carries I/d instead.
pub fn matching_state(n: usize, d: usize) -> Result<RatOp, ExtError> {
    check_instance(n, d)?;
    let cap = dense_cap();
    match checked_dim(d, n) {
        Some(dim) if dim <= cap => {}
        _ => return Err(OpError::CapExceeded { dim: checked_dim(d, n).unwrap_or(usize::MAX), cap }.into()),
    }
    let mut terms: Vec<Diagram> = Vec::new();
    if n.is_multiple_of(2) {
        for m in perfect_matchings(n)? {
            terms.push(matching_diagram(n, &m, None)?);
        }
    } else {
        for v in 0..n {
            let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            for m in perfect_matchings(n - 1)? {
                let relabeled: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (others[a], others[b])).collect();
                terms.push(matching_diagram(n, &relabeled, Some(v))?);
            }
        }
    }
    // each diagram has trace d^(ceil(N/2)); omega = cup/d and I/d on the free vertex
    let per = BigRational::from_integer(BigInt::from(d).pow(n.div_ceil(2) as u32));
    let coef = BigRational::from_integer(1.into()) / (per * BigRational::from_integer(BigInt::from(terms.len())));
    let mut rho = RatOp::zero(d, n);
    for p in &terms {
        rho.add_scaled(&RatOp::from_diagram(p, d)?, &coef)?;
    }
    Ok(rho)
}

/// Two-site marginal of an exact state on factors (i, j), i < j.
pub fn pair_marginal(rho: &RatOp, i: usize, j: usize) -> Result<RatOp, ExtError> {
    let n = rho.n();
    if i >= j || j >= n {
        return Err(ExtError::Domain(format!("bad edge ({i}, {j}) for N = {n}")));
    }
    let traced: Vec<usize> = (0..n).filter(|&v| v != i && v != j).collect();
    Ok(rho.partial_trace(&traced)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fit {
    /// coefficient of omega
    pub p: f64,
    /// coefficient of I/d^2
    pub q: f64,
    /// Frobenius norm of the part outside span{omega, I}
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFit {
    pub p: BigRational,
    pub q: BigRational,
    pub residual_sq: BigRational,
}

impl ExactFit {
    pub fn residual(&self) -> f64 {
        self.residual_sq.to_f64().unwrap_or(f64::NAN).max(0.0).sqrt()
    }
}

/// Solves the 2x2 normal equations for rho ~ p omega + q I/d^2 given <omega,rho>, <I/d^2,rho>.
/// Gram matrix [[1, 1/d^2], [1/d^2, 1/d^2]].
fn normal_solution<T>(w: T, t: T, dd: T, one: T) -> (T, T)
where
    T: Clone + std::ops::Sub<Output = T> + std::ops::Mul<Output = T> + std::ops::Div<Output = T>,
{
    // det = (1/d^2)(1 - 1/d^2)
    let inv = one.clone() / dd.clone();
    let det = inv.clone() * (one.clone() - inv.clone());
    let p = (inv.clone() * w.clone() - inv.clone() * t.clone()) / det.clone();
    let q = (t - inv * w) / det;
    (p, q)
}

/// Least-squares fit of a d^2 x d^2 operator onto span{omega, I/d^2}.
pub fn isotropic_fit(rho: &CMat, d: usize) -> Result<Fit, ExtError> {
    let dd = d * d;
    if rho.nrows() != dd || rho.ncols() != dd {
        return Err(ExtError::Domain(format!("expected a {dd}x{dd} operator")));
    }
    let mut w = 0.0;
    for a in 0..d {
        for b in 0..d {
            w += rho[(a * d + a, b * d + b)].re;
        }
    }
    w /= d as f64;
    let t = rho.trace().re / dd as f64;
    let (p, q) = normal_solution(w, t, dd as f64, 1.0);
    let mut fit = CMat::identity(dd, dd).scale(q / dd as f64);
    for a in 0..d {
        for b in 0..d {
            fit[(a * d + a, b * d + b)].re += p / d as f64;
        }
    }
    Ok(Fit { p, q, residual: (rho - fit).norm() })
}

/// Exact version of [`isotropic_fit`] for real rational operators.
pub fn isotropic_fit_exact(rho: &RatOp) -> Result<ExactFit, ExtError> {
    if rho.n() != 2 {
        return Err(ExtError::Domain(format!("expected a two-site operator, got {} sites", rho.n())));
    }
    let d = rho.d();
    let di = d as i64;
    let mut w = BigRational::zero();
    let mut norm_sq = BigRational::zero();
    for (&(r, c), v) in rho.entries() {
        if r % (d + 1) == 0 && c % (d + 1) == 0 {
            w += v;
        }
        norm_sq += v * v;
    }
    w /= rat(di, 1);
    let t = rho.trace() / rat(di * di, 1);
    let (p, q) = normal_solution(w.clone(), t.clone(), rat(di * di, 1), rat(1, 1));
    // ||rho - fit||^2 = ||rho||^2 - <fit, rho> for the orthogonal projection
    let residual_sq = norm_sq - (&p * &w + &q * &t);
    Ok(ExactFit { p, q, residual_sq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qclone_operators::{special_state, SpecialState};

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    #[test]
    fn matching_counts() {
        assert_eq!(perfect_matchings(6).unwrap().len(), 15);
        assert_eq!(perfect_matchings(4).unwrap().len(), 3);
        assert!(perfect_matchings(5).unwrap().is_empty());
        for m in 1..=5 {
            let all = perfect_matchings(2 * m).unwrap();
            assert_eq!(all.len(), double_factorial(2 * m - 1));
            let through = all.iter().filter(|e| e.contains(&(0, 1))).count();
            assert_eq!(through, double_factorial((2 * m).saturating_sub(3)).max(1));
        }
        assert!(perfect_matchings(14).is_err());
    }

    #[test]
    fn fits_of_basic_states() {
        for d in 2..=3 {
            let omega = special_state(SpecialState::MaxEntangled, d).unwrap();
            let f = isotropic_fit(&omega, d).unwrap();
            assert!((f.p - 1.0).abs() < 1e-14 && f.q.abs() < 1e-14 && f.residual < 1e-14);
            let mixed = special_state(SpecialState::MaxMixed, d).unwrap();
            let f = isotropic_fit(&mixed, d).unwrap();
            assert!(f.p.abs() < 1e-14 && (f.q - 1.0).abs() < 1e-14 && f.residual < 1e-14);
            let flip = special_state(SpecialState::Flip, d).unwrap();
            assert!(isotropic_fit(&flip, d).unwrap().residual > 0.1);
        }
    }

    #[test]
    fn matching_marginals_exact() {
        for (n, d) in [(4, 2), (4, 3), (3, 2), (5, 2)] {
            let rho = matching_state(n, d).unwrap();
            assert_eq!(rho.trace(), rat(1, 1));
            let expect = if n % 2 == 0 { rat(1, n as i64 - 1) } else { rat(1, n as i64) };
            for (i, j) in edges(n) {
                let fit = isotropic_fit_exact(&pair_marginal(&rho, i, j).unwrap()).unwrap();
                assert_eq!(fit.p, expect);
                assert_eq!(fit.q, rat(1, 1) - &expect);
                assert!(fit.residual_sq.is_zero());
            }
        }
    }

    #[test]
    fn exact_fit_detects_off_span() {
        let d = 2;
        let swap = RatOp::from_diagram(&Diagram::from_perm0(&[1, 0]), d).unwrap();
        let fit = isotropic_fit_exact(&swap.scale(&rat(1, 2))).unwrap();
        assert!(fit.residual_sq > BigRational::zero());
    }
}
