use num_rational::BigRational;
use num_traits::ToPrimitive;
use qclone_cloning::{feasible_numeric, marginal_report, optimal_symmetric_channel, p_opt, q_norm, region_1to2};
use qclone_diagrams::{enumerate, Diagram, Family};
use qclone_extendibility::{central_element_check, dual_numeric, optimal_state_3_3, p_closed, CentralAlgebra};
use qclone_operators::{commutant_dimension, cptp_check, max_abs, rng_from_seed, tensor_rep, CMat};
use qclone_young::{all_perms, sign, syt_count, Partition};
use rand::Rng;
use serde::Serialize;

use crate::output::{document, CliError};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn table_entries() -> Result<Check, CliError> {
    let expect = [
        ((3, 3), (7, 19)),
        ((5, 3), (7, 31)),
        ((5, 5), (11, 51)),
        ((7, 7), (5, 33)),
        ((9, 7), (15, 127)),
        ((9, 9), (19, 163)),
        ((9, 3), (1, 8)),
        ((4, 2), (1, 3)),
    ];
    let mut bad = Vec::new();
    for ((n, d), (a, b)) in expect {
        if p_closed(n, d)? != frac(a, b) {
            bad.push(format!("({n},{d})"));
        }
    }
    Ok(Check { name: "extendibility table entries", passed: bad.is_empty(), detail: format!("mismatches: {bad:?}") })
}

fn monoid_orders() -> Result<Check, CliError> {
    let cases = [
        (Family::Partition, 2, 15),
        (Family::Partition, 3, 203),
        (Family::Brauer, 4, 105),
        (Family::UniformBlock, 3, 16),
        (Family::WalledBrauer { left: 2, right: 2 }, 4, 24),
    ];
    let mut bad = Vec::new();
    for (f, k, n) in cases {
        let got = enumerate(f, k)?.len();
        if got != n {
            bad.push(format!("{f} k={k}: {got}"));
        }
    }
    Ok(Check { name: "monoid orders", passed: bad.is_empty(), detail: format!("mismatches: {bad:?}") })
}

fn homomorphism(pairs: usize, seed: u64) -> Result<Check, CliError> {
    let mut rng = rng_from_seed(seed);
    let mut worst = 0.0f64;
    for f in [Family::Partition, Family::Brauer, Family::Symmetric, Family::UniformBlock] {
        for k in 1..=3 {
            let all = enumerate(f, k)?;
            for _ in 0..pairs {
                let p = &all[rng.random_range(0..all.len())];
                let q = &all[rng.random_range(0..all.len())];
                let (pq, loops) = p.compose(q)?;
                for d in 2..=3 {
                    let lhs = tensor_rep(p, d)? * tensor_rep(q, d)?;
                    let rhs = tensor_rep(&pq, d)?.scale((d as f64).powi(loops as i32));
                    worst = worst.max(max_abs(&(lhs - rhs)));
                }
            }
        }
    }
    Ok(Check {
        name: "tensor representation is a homomorphism",
        passed: worst < 1e-12,
        detail: format!("max deviation {worst:e}"),
    })
}

fn antisymmetrizer() -> Result<Check, CliError> {
    let mut acc = CMat::zeros(8, 8);
    for s in all_perms(3) {
        acc += tensor_rep(&Diagram::from_perm0(&s), 2)?.scale(sign(&s) as f64);
    }
    let m = max_abs(&acc);
    Ok(Check { name: "antisymmetrizer vanishes on three qubits", passed: m == 0.0, detail: format!("max entry {m}") })
}

fn tableau_counts(nmax: usize) -> Check {
    let mut ok = true;
    for n in 1..=nmax {
        let total: num_bigint::BigUint = Partition::all(n).iter().map(|l| syt_count(l).pow(2)).sum();
        let fact: num_bigint::BigUint = (1..=n).map(num_bigint::BigUint::from).product();
        ok &= total == fact;
    }
    Check { name: "sum of squared tableau counts is n!", passed: ok, detail: format!("n <= {nmax}") }
}

fn central(nmax: usize) -> Result<Check, CliError> {
    let mut bad = Vec::new();
    for n in 1..=nmax {
        for d in 2..=3 {
            for alg in [CentralAlgebra::Symmetric, CentralAlgebra::Brauer] {
                if !central_element_check(n, d, alg)?.passed {
                    bad.push(format!("{alg:?} n={n} d={d}"));
                }
            }
        }
    }
    Ok(Check { name: "central element eigenvalues", passed: bad.is_empty(), detail: format!("failures: {bad:?}") })
}

fn commutant() -> Result<Check, CliError> {
    let a = commutant_dimension(Family::Symmetric, 3, 2, 30, 1)?;
    let b = commutant_dimension(Family::Symmetric, 2, 2, 20, 2)?;
    let passed = a.diagram_rank == 5 && b.group_rank == 10;
    Ok(Check {
        name: "commutant ranks",
        passed,
        detail: format!("rank psi(S3) = {}, rank U(x)U = {}", a.diagram_rank, b.group_rank),
    })
}

fn symmetric_channels(cases: &[(usize, usize)]) -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    let mut cptp = true;
    for &(n, d) in cases {
        let choi = optimal_symmetric_channel(n, d)?;
        let rep = cptp_check(&choi, d)?;
        cptp &= rep.min_eig >= -1e-9 && rep.trace_residual < 1e-10;
        for p in marginal_report(&choi, n, d, 4, 1)?.p {
            worst = worst.max((p - p_opt(n, d)).abs());
        }
    }
    Ok(Check {
        name: "optimal symmetric cloning",
        passed: cptp && worst < 1e-9,
        detail: format!("cptp {cptp}, max shrink deviation {worst:e}"),
    })
}

fn q_norm_points() -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for d in 2..=3 {
        for n in 1..=4 {
            let mut e1 = vec![0.0; n];
            e1[0] = 1.0;
            worst = worst.max((q_norm(&e1, d)? - 1.0).abs());
            worst = worst.max((q_norm(&vec![1.0 / n as f64; n], d)? - p_opt(n, d)).abs());
        }
    }
    Ok(Check { name: "Q-norm reference values", passed: worst < 1e-10, detail: format!("max deviation {worst:e}") })
}

/// Closed-form membership flips somewhere within 1e-6 of the point.
fn near_boundary(p1: f64, p2: f64, d: usize, inside: bool) -> Result<bool, CliError> {
    let lo = -1.0 / ((d * d - 1) as f64);
    for i in 0..32 {
        let t = i as f64 * std::f64::consts::PI / 16.0;
        let q1 = (p1 + 1e-6 * t.cos()).clamp(lo, 1.0);
        let q2 = (p2 + 1e-6 * t.sin()).clamp(lo, 1.0);
        if region_1to2(q1, q2, d)?.inside != inside {
            return Ok(true);
        }
    }
    Ok(false)
}

fn two_clone(points: usize, seed: u64) -> Result<Check, CliError> {
    let mut rng = rng_from_seed(seed);
    let mut disagree = 0;
    let mut compared = 0;
    for d in 2..=3 {
        let lo = -1.0 / ((d * d - 1) as f64);
        for _ in 0..points {
            let p1 = rng.random_range(lo..=1.0);
            let p2 = rng.random_range(lo..=1.0);
            let closed = region_1to2(p1, p2, d)?;
            if near_boundary(p1, p2, d, closed.inside)? {
                continue;
            }
            compared += 1;
            if closed.inside != feasible_numeric(p1, p2, d)?.0 {
                disagree += 1;
            }
        }
    }
    Ok(Check {
        name: "two-clone region closed form vs PSD feasibility",
        passed: disagree == 0,
        detail: format!("{disagree} of {compared} disagree"),
    })
}

fn state33() -> Result<Check, CliError> {
    let (passed, detail) = match optimal_state_3_3() {
        Ok(s) => (true, format!("min eig {:e}", s.min_eig)),
        Err(e) => (false, e.to_string()),
    };
    Ok(Check { name: "explicit N=3, d=3 state", passed, detail })
}

fn duals(cases: &[(usize, usize)]) -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    for &(n, d) in cases {
        let r = dual_numeric(n, d, 1e-10)?;
        worst = worst.max((r.value - p_closed(n, d)?.to_f64().unwrap_or(f64::NAN)).abs());
    }
    Ok(Check {
        name: "numeric dual matches closed value",
        passed: worst < 1e-6,
        detail: format!("{} instances, max deviation {worst:e}", cases.len()),
    })
}

/// Returns the document and whether every check passed.
pub fn run(full: bool, seed: u64) -> Result<(String, bool), CliError> {
    let sym: &[(usize, usize)] = if full { &[(2, 2), (3, 2), (2, 3)] } else { &[(2, 2)] };
    let dual: &[(usize, usize)] =
        if full { &[(3, 2), (4, 2), (5, 2), (3, 3), (4, 3), (5, 3), (3, 4), (2, 5)] } else { &[(3, 2), (3, 3)] };
    let checks = vec![
        table_entries()?,
        monoid_orders()?,
        homomorphism(if full { 100 } else { 10 }, seed)?,
        antisymmetrizer()?,
        tableau_counts(if full { 8 } else { 6 }),
        central(if full { 4 } else { 3 })?,
        commutant()?,
        symmetric_channels(sym)?,
        q_norm_points()?,
        two_clone(if full { 200 } else { 20 }, seed)?,
        state33()?,
        duals(dual)?,
    ];
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    #[derive(Serialize)]
    struct Out {
        level: &'static str,
        passed: usize,
        failed: usize,
        checks: Vec<Check>,
    }
    let out = Out { level: if full { "full" } else { "fast" }, passed, failed, checks };
    Ok((document("selftest", &out), failed == 0))
}
