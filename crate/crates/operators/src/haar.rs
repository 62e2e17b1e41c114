use nalgebra::DVector;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::space::{c, CMat, C64};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ginibre<R: Rng>(d: usize, rng: &mut R, complex: bool) -> CMat {
    CMat::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
        C64::new(re, im)
    })
}

/// Q factor with the phases of diag(R) divided out, so the law is Haar.
fn haar_from_qr(g: CMat) -> CMat {
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..q.ncols() {
        let z = r[(j, j)];
        let ph = if z.norm() > 0.0 { z / z.norm() } else { c(1.0) };
        for i in 0..q.nrows() {
            q[(i, j)] *= ph;
        }
    }
    q
}

pub fn haar_unitary_rng<R: Rng>(d: usize, rng: &mut R) -> CMat {
    haar_from_qr(ginibre(d, rng, true))
}

pub fn haar_orthogonal_rng<R: Rng>(d: usize, rng: &mut R) -> CMat {
    let mut q = haar_from_qr(ginibre(d, rng, false));
    // Householder output can carry a stray zero imaginary sign; keep it exactly real
    for z in q.iter_mut() {
        z.im = 0.0;
    }
    q
}

pub fn haar_pure_state_rng<R: Rng>(d: usize, rng: &mut R) -> DVector<C64> {
    let v = DVector::from_fn(d, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let n = v.norm();
    v.unscale(n)
}

pub fn haar_unitary(d: usize, seed: u64) -> CMat {
    haar_unitary_rng(d, &mut rng_from_seed(seed))
}

pub fn haar_orthogonal(d: usize, seed: u64) -> CMat {
    haar_orthogonal_rng(d, &mut rng_from_seed(seed))
}

pub fn haar_pure_state(d: usize, seed: u64) -> DVector<C64> {
    haar_pure_state_rng(d, &mut rng_from_seed(seed))
}

pub fn random_permutation_matrix<R: Rng>(d: usize, rng: &mut R) -> CMat {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = CMat::zeros(d, d);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = c(1.0);
    }
    m
}

/// Uniform random phase diagonal times a uniform permutation matrix.
pub fn haar_diag_perm<R: Rng>(d: usize, rng: &mut R) -> CMat {
    let p = random_permutation_matrix(d, rng);
    let phases = DVector::from_fn(d, |_, _| C64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU));
    CMat::from_diagonal(&phases) * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::max_abs;

    #[test]
    fn unitarity_and_reproducibility() {
        for d in 2..=5 {
            let u = haar_unitary(d, 11);
            assert!(max_abs(&(&u * u.adjoint() - CMat::identity(d, d))) < 1e-12);
            let o = haar_orthogonal(d, 11);
            assert!(max_abs(&(&o * o.transpose() - CMat::identity(d, d))) < 1e-12);
            assert!(o.iter().all(|z| z.im == 0.0));
            assert_eq!(u, haar_unitary(d, 11));
            assert!((haar_pure_state(d, 3).norm() - 1.0).abs() < 1e-12);
            let mut rng = rng_from_seed(5);
            let m = haar_diag_perm(d, &mut rng);
            assert!(max_abs(&(&m * m.adjoint() - CMat::identity(d, d))) < 1e-12);
        }
    }

    #[test]
    fn twirl_of_pure_state_is_maximally_mixed() {
        let d = 3;
        let samples = 10_000;
        let mut rng = rng_from_seed(2024);
        let mut rho = CMat::zeros(d, d);
        rho[(0, 0)] = c(1.0);
        let mut acc = CMat::zeros(d, d);
        for _ in 0..samples {
            let u = haar_unitary_rng(d, &mut rng);
            acc += &u * &rho * u.adjoint();
        }
        acc /= c(samples as f64);
        // each entry has standard deviation at most 1/sqrt(d(d+1) samples)
        let sigma = 1.0 / ((d * (d + 1)) as f64 * samples as f64).sqrt();
        let target = CMat::identity(d, d).scale(1.0 / d as f64);
        assert!(max_abs(&(acc - target)) < 3.0 * sigma);
    }
}
