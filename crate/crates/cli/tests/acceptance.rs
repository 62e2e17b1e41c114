//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line on stdout
//! (written directly so it shows even when the harness captures output).

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use qclone_cloning::{
    feasible_numeric, marginal_report, necessary_condition_residual, optimal_asymmetric_channel,
    optimal_symmetric_channel, p_opt, q_norm, r_matrix, region_1to2, BoundMode, Direction,
};
use qclone_diagrams::{enumerate, Diagram, Family};
use qclone_extendibility::{
    central_element_check, dual_numeric, edges, isotropic_fit_exact, matching_state, optimal_state_3_3, p_closed,
    pair_marginal, CentralAlgebra,
};
use qclone_operators::{commutant_dimension, cptp_check, lambda_max, max_abs, rng_from_seed, tensor_rep, CMat};
use qclone_young::{all_perms, isotypic_projector, sign, syt_count, Partition};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_direction(rng: &mut impl Rng, n: usize) -> Direction {
    let w: Vec<f64> = (0..n).map(|_| -rng.random_range(1e-12f64..1.0).ln()).collect();
    let s: f64 = w.iter().sum();
    Direction::new(w.iter().map(|x| x / s).collect()).unwrap()
}

// rows d = 2..9, columns N = 2..9
const TABLE: [[(i64, i64); 8]; 8] = {
    const E: [(i64, i64); 8] = [(1, 1), (1, 3), (1, 3), (1, 5), (1, 5), (1, 7), (1, 7), (1, 9)];
    [
        E,
        [(1, 1), (7, 19), (1, 3), (7, 31), (1, 5), (7, 43), (1, 7), (1, 8)],
        E,
        [(1, 1), (1, 3), (1, 3), (11, 51), (1, 5), (11, 71), (1, 7), (11, 91)],
        E,
        [(1, 1), (1, 3), (1, 3), (1, 5), (1, 5), (5, 33), (1, 7), (15, 127)],
        E,
        [(1, 1), (1, 3), (1, 3), (1, 5), (1, 5), (1, 7), (1, 7), (19, 163)],
    ]
};

fn table() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qclone"))
        .args(["extend", "table", "--nmax", "9", "--dmax", "9"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    if !out.status.success() {
        return Err(format!("exit status {}", out.status));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let mut found = 0;
    let mut wrong = Vec::new();
    for row in v["rows"].as_array().ok_or("no rows")? {
        let d = row["d"].as_u64().ok_or("row without d")? as usize;
        for cell in row["cells"].as_array().ok_or("row without cells")? {
            let n = cell["n"].as_u64().ok_or("cell without n")? as usize;
            let got = (cell["numerator"].as_i64().unwrap_or(0), cell["denominator"].as_i64().unwrap_or(0));
            found += 1;
            if got != TABLE[d - 2][n - 2] {
                wrong.push(format!("({n},{d}): {}/{}", got.0, got.1));
            }
        }
    }
    check(
        found == 64 && wrong.is_empty() && elapsed < 1.0,
        format!("{found} entries, mismatches {wrong:?}, {elapsed:.3}s"),
    )
}

fn primal_dual() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (n, d) in [(3, 2), (4, 2), (5, 2), (3, 3), (4, 3), (5, 3), (3, 4), (2, 5)] {
        let r = dual_numeric(n, d, 1e-10).map_err(|e| e.to_string())?;
        let closed = p_closed(n, d).map_err(|e| e.to_string())?.to_f64().unwrap();
        worst = worst.max((r.value - closed).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    check(worst < 1e-6 && elapsed < 300.0, format!("max |dual - closed| = {worst:.2e}, {elapsed:.2}s"))
}

fn explicit_state() -> Outcome {
    let s = optimal_state_3_3().map_err(|e| e.to_string())?;
    let trace_one = s.rho.trace() == BigRational::one();
    let fits = s.marginals.len() == 3
        && s.marginals.iter().all(|f| f.p == frac(7, 19) && f.q == frac(12, 19) && f.residual() < 1e-12);
    check(
        s.min_eig >= -1e-10 && trace_one && fits,
        format!("min eig {:.2e}, trace one {trace_one}, marginals (7/19, 12/19) {fits}", s.min_eig),
    )
}

fn matching_primal() -> Outcome {
    let mut bad = Vec::new();
    for n in [4, 6] {
        for d in [2, 3] {
            let rho = matching_state(n, d).map_err(|e| e.to_string())?;
            let target = frac(1, n as i64 - 1);
            let closed = p_closed(n, d).map_err(|e| e.to_string())?;
            for (i, j) in edges(n) {
                let fit = isotropic_fit_exact(&pair_marginal(&rho, i, j).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if fit.p != target || !fit.residual_sq.is_zero() || fit.p != closed {
                    bad.push(format!("N={n} d={d} pair ({i},{j}): p = {}", fit.p));
                }
            }
        }
    }
    check(bad.is_empty(), format!("N in {{4,6}}, d in {{2,3}}, all pairs exact; failures {bad:?}"))
}

fn symmetric_cloning() -> Outcome {
    let mut worst = 0.0f64;
    let mut cptp = true;
    for (n, d) in [(2, 2), (3, 2), (2, 3)] {
        let choi = optimal_symmetric_channel(n, d).map_err(|e| e.to_string())?;
        let rep = cptp_check(&choi, d).map_err(|e| e.to_string())?;
        cptp &= rep.min_eig >= -1e-9 && rep.trace_residual < 1e-10;
        let target = (d + n) as f64 / (n * (d + 1)) as f64;
        let fp = marginal_report(&choi, n, d, 6, 11).map_err(|e| e.to_string())?;
        for p in fp.p {
            worst = worst.max((p - target).abs());
        }
        worst = worst.max((p_opt(n, d) - target).abs());
    }
    check(cptp && worst < 1e-9, format!("cptp {cptp}, max shrink deviation {worst:.2e}"))
}

fn asymmetric_cloning() -> Outcome {
    let mut rng = rng_from_seed(2024);
    let (mut gap, mut nec, mut cptp) = (0.0f64, 0.0f64, true);
    for (n, d) in [(2, 2), (3, 2), (2, 3)] {
        for _ in 0..20 {
            let a = random_direction(&mut rng, n);
            let ch = optimal_asymmetric_channel(&a, d).map_err(|e| e.to_string())?;
            let rep = cptp_check(&ch.choi, d).map_err(|e| e.to_string())?;
            cptp &= rep.min_eig >= -1e-9 && rep.trace_residual < 1e-10;
            let fp = marginal_report(&ch.choi, n, d, 4, rng.random()).map_err(|e| e.to_string())?;
            let achieved: f64 = a.as_slice().iter().zip(&fp.f).map(|(x, f)| x * f).sum();
            let bound = lambda_max(&r_matrix(&a, d, BoundMode::Universal).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                / (d + 1) as f64;
            gap = gap.max((achieved - bound).abs());
            nec = nec.max(necessary_condition_residual(&fp.p, d).map_err(|e| e.to_string())?.abs());
        }
    }
    check(
        gap < 1e-8 && nec < 1e-7 && cptp,
        format!("60 directions, max |sum a f - bound| {gap:.2e}, max necessary residual {nec:.2e}, cptp {cptp}"),
    )
}

/// True when the closed-form membership flips somewhere on the circle of radius 1e-6 around the point.
fn near_boundary(p1: f64, p2: f64, d: usize, inside: bool) -> Result<bool, String> {
    let lo = -1.0 / ((d * d - 1) as f64);
    for i in 0..32 {
        let t = i as f64 * std::f64::consts::PI / 16.0;
        let q1 = (p1 + 1e-6 * t.cos()).clamp(lo, 1.0);
        let q2 = (p2 + 1e-6 * t.sin()).clamp(lo, 1.0);
        if region_1to2(q1, q2, d).map_err(|e| e.to_string())?.inside != inside {
            return Ok(true);
        }
    }
    Ok(false)
}

fn two_clone_region() -> Outcome {
    let mut rng = rng_from_seed(77);
    let (mut compared, mut skipped, mut disagree) = (0, 0, Vec::new());
    for d in [2usize, 3] {
        let lo = -1.0 / ((d * d - 1) as f64);
        for _ in 0..200 {
            let p1 = rng.random_range(lo..=1.0);
            let p2 = rng.random_range(lo..=1.0);
            let closed = region_1to2(p1, p2, d).map_err(|e| e.to_string())?;
            if near_boundary(p1, p2, d, closed.inside)? {
                skipped += 1;
                continue;
            }
            compared += 1;
            let (feasible, _, _) = feasible_numeric(p1, p2, d).map_err(|e| e.to_string())?;
            if closed.inside != feasible {
                disagree.push((d, p1, p2));
            }
        }
    }
    check(
        disagree.is_empty() && compared > 0,
        format!("{compared} points compared, {skipped} near the boundary skipped, disagreements {disagree:?}"),
    )
}

fn q_norm_suite() -> Outcome {
    let mut rng = rng_from_seed(8);
    let (mut hom, mut tri, mut mono) = (0.0f64, 0usize, 0usize);
    let mut pairs = 0;
    for d in [2usize, 3] {
        for n in 1..=4usize {
            for _ in 0..1000 / 8 {
                let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let y: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let qx = q_norm(&x, d).map_err(|e| e.to_string())?;
                let qy = q_norm(&y, d).map_err(|e| e.to_string())?;
                let c = rng.random_range(-3.0..3.0);
                let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
                hom = hom.max((q_norm(&cx, d).map_err(|e| e.to_string())? - c.abs() * qx).abs());
                let s: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
                if q_norm(&s, d).map_err(|e| e.to_string())? > qx + qy + 1e-10 {
                    tri += 1;
                }
                // |y| dominated entrywise by |x|
                let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a * b.abs()).collect();
                if q_norm(&z, d).map_err(|e| e.to_string())? > qx + 1e-10 {
                    mono += 1;
                }
                pairs += 1;
            }
        }
    }
    let mut special = 0.0f64;
    for d in [2usize, 3] {
        for n in 1..=4usize {
            let mut e1 = vec![0.0; n];
            e1[0] = 1.0;
            special = special.max((q_norm(&e1, d).map_err(|e| e.to_string())? - 1.0).abs());
            let u = vec![1.0 / n as f64; n];
            let target = (d + n) as f64 / (n * (d + 1)) as f64;
            special = special.max((q_norm(&u, d).map_err(|e| e.to_string())? - target).abs());
        }
    }
    check(
        hom < 1e-12 && tri == 0 && mono == 0 && special < 1e-10,
        format!(
            "{pairs} pairs, homogeneity err {hom:.2e}, triangle violations {tri}, monotonicity violations {mono}, special values err {special:.2e}"
        ),
    )
}

fn algebra_suite() -> Outcome {
    let orders = [
        (Family::Partition, 2, 15),
        (Family::Partition, 3, 203),
        (Family::Brauer, 4, 105),
        (Family::UniformBlock, 3, 16),
        (Family::WalledBrauer { left: 2, right: 2 }, 4, 24),
    ];
    let mut bad = Vec::new();
    for (f, k, want) in orders {
        let got = enumerate(f, k).map_err(|e| e.to_string())?.len();
        if got != want {
            bad.push(format!("{f} k={k}: {got}"));
        }
    }
    let mut rng = rng_from_seed(99);
    let mut worst = 0.0f64;
    let families: [&dyn Fn(usize) -> Family; 5] =
        [&|_| Family::Partition, &|_| Family::Brauer, &|_| Family::Symmetric, &|_| Family::UniformBlock, &|k| {
            Family::WalledBrauer { left: k / 2, right: k - k / 2 }
        }];
    for fam in families {
        let pools: Vec<Vec<Diagram>> =
            (1..=3).map(|k| enumerate(fam(k), k)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for _ in 0..500 {
            let pool = &pools[rng.random_range(0..3)];
            let d = rng.random_range(1..=3usize);
            let p = &pool[rng.random_range(0..pool.len())];
            let q = &pool[rng.random_range(0..pool.len())];
            let (pq, loops) = p.compose(q).map_err(|e| e.to_string())?;
            let lhs = tensor_rep(p, d).map_err(|e| e.to_string())? * tensor_rep(q, d).map_err(|e| e.to_string())?;
            let rhs = tensor_rep(&pq, d).map_err(|e| e.to_string())?.scale((d as f64).powi(loops as i32));
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
    }
    let mut anti = CMat::zeros(8, 8);
    for s in all_perms(3) {
        anti += tensor_rep(&Diagram::from_perm0(&s), 2).map_err(|e| e.to_string())?.scale(sign(&s) as f64);
    }
    let anti_max = max_abs(&anti);
    check(
        bad.is_empty() && worst <= 1e-12 && anti_max == 0.0,
        format!(
            "order mismatches {bad:?}, 2500 pairs max homomorphism err {worst:.2e}, antisymmetrizer max {anti_max}"
        ),
    )
}

fn representation_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=8usize {
        let total: num_bigint::BigUint = Partition::all(n).iter().map(|l| syt_count(l).pow(2)).sum();
        let fact: num_bigint::BigUint = (1..=n).map(num_bigint::BigUint::from).product();
        ok &= total == fact;
    }
    notes.push(format!("syt sums ok {ok}"));
    let mut idem = true;
    for n in 1..=5usize {
        for l in Partition::all(n) {
            let p = isotypic_projector(&l).map_err(|e| e.to_string())?;
            idem &= &p * &p == p;
        }
    }
    notes.push(format!("idempotents {idem}"));
    let mut central = true;
    for n in 1..=4usize {
        for d in 2..=3usize {
            for alg in [CentralAlgebra::Symmetric, CentralAlgebra::Brauer] {
                central &= central_element_check(n, d, alg).map_err(|e| e.to_string())?.passed;
            }
        }
    }
    notes.push(format!("central elements {central}"));
    let s3 = commutant_dimension(Family::Symmetric, 3, 2, 30, 5).map_err(|e| e.to_string())?;
    let uu = commutant_dimension(Family::Symmetric, 2, 2, 40, 6).map_err(|e| e.to_string())?;
    notes.push(format!("rank psi(S3) {}, rank span U(x)U {}", s3.diagram_rank, uu.group_rank));
    check(ok && idem && central && s3.diagram_rank == 5 && uu.group_rank == 10, notes.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("extendibility table", table),
        ("primal/dual agreement", primal_dual),
        ("explicit N=3, d=3 state", explicit_state),
        ("matching primal", matching_primal),
        ("optimal symmetric cloning", symmetric_cloning),
        ("optimal asymmetric cloning", asymmetric_cloning),
        ("1->2 region", two_clone_region),
        ("Q-norm suite", q_norm_suite),
        ("algebra suite", algebra_suite),
        ("representation suite", representation_suite),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        writeln!(out, "{tag} criterion {}: {name} ({detail})", i + 1).unwrap();
        if res.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
