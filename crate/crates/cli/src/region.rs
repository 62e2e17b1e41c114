use qclone_cloning::{ellipse_family, q_norm_with_gradient, region_1to2, region_membership_n, MembershipOptions};
use qclone_operators::rng_from_seed;
use rand::Rng;
use serde::Serialize;

use crate::output::{document, CliError};
use crate::RunConfig;

#[derive(Serialize)]
struct Ellipse {
    lambda: f64,
    a: f64,
    b: f64,
    c: f64,
}

pub fn two_clone(d: usize, count: usize) -> Result<String, CliError> {
    if d < 2 || count == 0 {
        return Err(CliError::usage("need --d >= 2 and --count >= 1"));
    }
    let ellipses: Vec<Ellipse> =
        ellipse_family(d, count).into_iter().map(|e| Ellipse { lambda: e.lambda, a: e.a, b: e.b, c: e.c }).collect();
    #[derive(Serialize)]
    struct Out {
        d: usize,
        /// ellipse in coordinates x = p1 - p2, y = p1 + p2: (x/a)^2 + ((y-c)/b)^2 <= 1
        ellipses: Vec<Ellipse>,
    }
    Ok(document("region two-clone", &Out { d, ellipses }))
}

#[derive(Serialize)]
struct TwoClone {
    inside: bool,
    lambda_witness: Option<f64>,
    slack: f64,
}

#[derive(Serialize)]
struct MemberOut {
    d: usize,
    p: Vec<f64>,
    inside: bool,
    boundary: bool,
    margin: f64,
    witness: Vec<f64>,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_clone: Option<TwoClone>,
}

/// Returns the document and whether the point lies inside.
pub fn member(d: usize, p: &[f64], cfg: &RunConfig) -> Result<(String, bool), CliError> {
    if d < 2 || p.is_empty() {
        return Err(CliError::usage("need --d >= 2 and a non-empty --p"));
    }
    let opts = MembershipOptions { tol: cfg.tol_region, seed: cfg.seed, ..MembershipOptions::default() };
    let m = region_membership_n(p, d, opts)?;
    let two_clone = if p.len() == 2 {
        let r = region_1to2(p[0], p[1], d)?;
        Some(TwoClone { inside: r.inside, lambda_witness: r.lambda_witness, slack: r.slack })
    } else {
        None
    };
    let out = MemberOut {
        d,
        p: p.to_vec(),
        inside: m.inside,
        boundary: m.boundary,
        margin: m.margin,
        witness: m.witness,
        tolerance: cfg.tol_region,
        two_clone,
    };
    Ok((document("region member", &out), m.inside))
}

#[derive(Serialize)]
struct BoundaryPoint {
    a: Vec<f64>,
    p: Vec<f64>,
    q_norm: f64,
}

/// Boundary points p = grad |a|_Q for directions a drawn uniformly from the simplex.
pub fn boundary(d: usize, n: usize, samples: usize, cfg: &RunConfig) -> Result<String, CliError> {
    if d < 2 || n == 0 || samples == 0 {
        return Err(CliError::usage("need --d >= 2, --n >= 1 and --samples >= 1"));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let mut points = Vec::with_capacity(samples);
    for _ in 0..samples {
        let e: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
        let s: f64 = e.iter().sum();
        let a: Vec<f64> = e.iter().map(|x| x / s).collect();
        let (q, p) = q_norm_with_gradient(&a, d)?;
        points.push(BoundaryPoint { a, p, q_norm: q });
    }
    #[derive(Serialize)]
    struct Out {
        d: usize,
        n: usize,
        seed: u64,
        points: Vec<BoundaryPoint>,
    }
    Ok(document("region boundary", &Out { d, n, seed: cfg.seed, points }))
}
