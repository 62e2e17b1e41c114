use qclone_diagrams::Diagram;
use qclone_operators::{
    apply_choi, c, choi_of_map, cptp_check, dense_dim, haar_diag_perm, haar_pure_state_rng, haar_unitary_rng, kron_all,
    partial_trace, rng_from_seed, tensor_rep, trace, CMat, CptpReport,
};
use qclone_young::all_perms;

use crate::qnorm::{b_from_direction, BCoefficients, Direction};
use crate::CloneError;

/// (d+N)/(N(d+1)).
pub fn p_opt(n: usize, d: usize) -> f64 {
    (d + n) as f64 / (n * (d + 1)) as f64
}

/// (1/N!) sum over S_N of w(sigma) psi(sigma) on (C^d)^N.
fn weighted_perm_sum<F: Fn(&[usize]) -> f64>(n: usize, d: usize, w: F) -> Result<CMat, CloneError> {
    let dim = dense_dim(d, n)?;
    let mut acc = CMat::zeros(dim, dim);
    let perms = all_perms(n);
    for sigma in &perms {
        let weight = w(sigma);
        if weight != 0.0 {
            acc += tensor_rep(&Diagram::from_perm0(sigma), d)?.scale(weight);
        }
    }
    Ok(acc.scale(1.0 / perms.len() as f64))
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Dimension of the symmetric subspace of (C^d)^N.
fn sym_dim(n: usize, d: usize) -> f64 {
    binom(n + d - 1, n)
}

/// Choi matrix of rho -> K P (rho (x) I) P*, input factor first.
fn conjugation_choi(p: &CMat, k: f64, n: usize, d: usize) -> Result<CMat, CloneError> {
    let dn = dense_dim(d, n)?;
    let rest = dn / d;
    let choi = choi_of_map(d, dn, |x| {
        let lifted = x.kronecker(&CMat::identity(rest, rest));
        (p * lifted * p.adjoint()).scale(k)
    })?;
    Ok(choi)
}

/// Choi matrix of rho -> (d / Tr P+) P+ (rho (x) I) P+.
pub fn optimal_symmetric_channel(n: usize, d: usize) -> Result<CMat, CloneError> {
    if n == 0 || d < 2 {
        return Err(CloneError::Domain(format!("need N >= 1 and d >= 2, got N={n}, d={d}")));
    }
    dense_dim(d, n + 1)?;
    let p = weighted_perm_sum(n, d, |_| 1.0)?;
    conjugation_choi(&p, d as f64 / sym_dim(n, d), n, d)
}

#[derive(Clone, Debug)]
pub struct AsymmetricChannel {
    pub choi: CMat,
    pub b: BCoefficients,
    pub report: CptpReport,
    /// predicted fidelities (1 + z_i^2)/(d+1)
    pub fidelities: Vec<f64>,
}

/// Choi matrix of rho -> (dN(N+d-1)/Tr P+) P^a (rho (x) I) P^a*, with
/// P^a = (1/N!) sum_sigma b_{sigma(0)+1} psi(sigma).
pub fn optimal_asymmetric_channel(a: &Direction, d: usize) -> Result<AsymmetricChannel, CloneError> {
    let n = a.n();
    dense_dim(d, n + 1)?;
    let b = b_from_direction(a, d)?;
    let p = weighted_perm_sum(n, d, |sigma| b.b[sigma[0]])?;
    let k = (d * n * (n + d - 1)) as f64 / sym_dim(n, d);
    let choi = conjugation_choi(&p, k, n, d)?;
    let report = cptp_check(&choi, d)?;
    if !report.passes(1e-10) {
        return Err(CloneError::Verification(format!(
            "asymmetric channel is not CPTP: min eig {}, trace residual {}",
            report.min_eig, report.trace_residual
        )));
    }
    let fidelities = b.fidelities();
    Ok(AsymmetricChannel { choi, b, report, fidelities })
}

/// Shrink factors of each clone, fitted on Haar-random pure inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityPoint {
    pub n: usize,
    pub d: usize,
    pub p: Vec<f64>,
    pub f: Vec<f64>,
    /// largest max-entry deviation from p rho + (1-p) I/d over all trials
    pub max_residual: f64,
    pub channel: bool,
}

pub fn marginal_report(choi: &CMat, n: usize, d: usize, trials: usize, seed: u64) -> Result<FidelityPoint, CloneError> {
    let dn = dense_dim(d, n)?;
    if choi.nrows() != d * dn {
        return Err(CloneError::Domain(format!("Choi size {} does not match N={n}, d={d}", choi.nrows())));
    }
    let channel = cptp_check(choi, d)?.passes(1e-9);
    let mut rng = rng_from_seed(seed);
    let mixed = CMat::identity(d, d).scale(1.0 / d as f64);
    let mut outputs = Vec::with_capacity(trials);
    for _ in 0..trials.max(1) {
        let v = haar_pure_state_rng(d, &mut rng);
        let rho = &v * v.adjoint();
        let out = apply_choi(choi, d, &rho)?;
        outputs.push((rho, out));
    }
    let mut p = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    for i in 0..n {
        let traced: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let marg: Vec<(CMat, CMat)> = outputs
            .iter()
            .map(|(rho, out)| Ok((rho - &mixed, partial_trace(out, d, n, &traced)? - &mixed)))
            .collect::<Result<_, CloneError>>()?;
        let num: f64 = marg.iter().map(|(x, y)| trace(&(x.adjoint() * y)).re).sum();
        let den: f64 = marg.iter().map(|(x, _)| trace(&(x.adjoint() * x)).re).sum();
        let pi = num / den;
        for (x, y) in &marg {
            max_residual = max_residual.max(qclone_operators::max_abs(&(y - x.scale(pi))));
        }
        p.push(pi);
    }
    let f = p.iter().map(|pi| pi + (1.0 - pi) / d as f64).collect();
    Ok(FidelityPoint { n, d, p, f, max_residual, channel })
}

/// N + (d^2-1) sum p - d(d-1) - (sum sqrt((d^2-1) p_i + 1))^2 / (N+d-1).
pub fn necessary_condition_residual(p: &[f64], d: usize) -> Result<f64, CloneError> {
    let n = p.len();
    let k = (d * d - 1) as f64;
    let mut root_sum = 0.0;
    for &pi in p {
        let t = k * pi + 1.0;
        if t < -1e-12 {
            return Err(CloneError::Domain(format!("(d^2-1) p + 1 < 0 for p = {pi}")));
        }
        root_sum += t.max(0.0).sqrt();
    }
    let sum: f64 = p.iter().sum();
    Ok(n as f64 + k * sum - (d * (d - 1)) as f64 - root_sum * root_sum / (n + d - 1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwirlGroup {
    Unitary,
    DiagonalUnitaryTimesPermutation,
}

/// Monte-Carlo average of G C G* with G = conj(M) (x) M^(x)N.
pub fn twirl_estimate(
    choi: &CMat,
    n: usize,
    d: usize,
    group: TwirlGroup,
    samples: usize,
    seed: u64,
) -> Result<CMat, CloneError> {
    let dim = dense_dim(d, n + 1)?;
    if choi.nrows() != dim {
        return Err(CloneError::Domain(format!("Choi size {} does not match N={n}, d={d}", choi.nrows())));
    }
    let mut rng = rng_from_seed(seed);
    let mut acc = CMat::zeros(dim, dim);
    for _ in 0..samples.max(1) {
        let m = match group {
            TwirlGroup::Unitary => haar_unitary_rng(d, &mut rng),
            TwirlGroup::DiagonalUnitaryTimesPermutation => haar_diag_perm(d, &mut rng),
        };
        let mut factors = vec![m.map(|z| z.conj())];
        factors.extend(std::iter::repeat_n(m, n));
        let g = kron_all(&factors);
        acc += &g * choi * g.adjoint();
    }
    Ok(acc.scale(1.0 / samples.max(1) as f64))
}

/// Choi matrix of a random channel with `kraus` Kraus operators, from a Haar isometry.
pub fn random_channel_choi(n: usize, d: usize, kraus: usize, seed: u64) -> Result<CMat, CloneError> {
    let dn = dense_dim(d, n)?;
    let mut rng = rng_from_seed(seed);
    let u = haar_unitary_rng(dn * kraus.max(1), &mut rng);
    let ops: Vec<CMat> = (0..kraus.max(1)).map(|l| u.view((l * dn, 0), (dn, d)).into_owned()).collect();
    let choi = choi_of_map(d, dn, |x| {
        let mut out = CMat::zeros(dn, dn);
        for k in &ops {
            out += k * x * k.adjoint();
        }
        out
    })?;
    Ok(choi)
}

/// Identity channel Choi d omega, for N = 1 checks.
pub fn identity_choi(d: usize) -> CMat {
    let mut m = CMat::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + i, j * d + j)] = c(1.0);
        }
    }
    m
}
