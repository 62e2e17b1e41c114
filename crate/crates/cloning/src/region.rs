use qclone_operators::rng_from_seed;
use rand::Rng;

use crate::qnorm::q_norm_with_gradient;
use crate::CloneError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipOptions {
    /// simplex grid step 1/resolution
    pub resolution: usize,
    pub restarts: usize,
    pub seed: u64,
    pub iterations: usize,
    pub tol: f64,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions { resolution: 12, restarts: 8, seed: 17, iterations: 400, tol: 1e-7 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub inside: bool,
    /// |margin| <= tol
    pub boundary: bool,
    /// sup over the simplex of <p,a> - |a|_Q found by the search
    pub margin: f64,
    pub witness: Vec<f64>,
    /// best objective after each ascent run
    pub trace: Vec<f64>,
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (j, &x) in u.iter().enumerate() {
        css += x;
        let t = (css - 1.0) / (j + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in 0..=total {
        cur.push(x);
        compositions(total - x, parts - 1, cur, out);
        cur.pop();
    }
}

/// Decides whether p lies in the achievable region {p >= 0 : <p,a> <= |a|_Q for all a >= 0}
/// by maximizing the concave function <p,a> - |a|_Q over the simplex: grid scan, then projected
/// supergradient ascent from the best grid points and random starts.
pub fn region_membership_n(p: &[f64], d: usize, opts: MembershipOptions) -> Result<Membership, CloneError> {
    let n = p.len();
    if n == 0 {
        return Err(CloneError::Domain("empty point".into()));
    }
    if p.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > 1.0) {
        return Err(CloneError::Domain(format!("p must lie in [0,1]^N: {p:?}")));
    }
    let objective = |a: &[f64]| -> Result<(f64, Vec<f64>), CloneError> {
        let (q, grad) = q_norm_with_gradient(a, d)?;
        let val = p.iter().zip(a).map(|(x, y)| x * y).sum::<f64>() - q;
        let g = p.iter().zip(&grad).map(|(x, y)| x - y).collect();
        Ok((val, g))
    };
    let mut grid = Vec::new();
    compositions(opts.resolution.max(1), n, &mut Vec::new(), &mut grid);
    let mut scored: Vec<(f64, Vec<f64>)> = Vec::with_capacity(grid.len());
    for g in grid {
        let a: Vec<f64> = g.iter().map(|&x| x as f64 / opts.resolution.max(1) as f64).collect();
        scored.push((objective(&a)?.0, a));
    }
    scored.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut starts: Vec<Vec<f64>> = scored.iter().take(3).map(|s| s.1.clone()).collect();
    let mut rng = rng_from_seed(opts.seed);
    for _ in 0..opts.restarts {
        let e: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
        let s: f64 = e.iter().sum();
        starts.push(e.iter().map(|x| x / s).collect());
    }
    let (mut best, mut witness) = scored[0].clone();
    let mut trace = Vec::with_capacity(starts.len());
    for start in starts {
        let mut a = start;
        let mut run_best = f64::NEG_INFINITY;
        for t in 0..opts.iterations {
            let (val, g) = objective(&a)?;
            if val > run_best {
                run_best = val;
            }
            if val > best {
                best = val;
                witness = a.clone();
            }
            let step = 0.5 / (1.0 + t as f64).sqrt();
            let moved: Vec<f64> = a.iter().zip(&g).map(|(x, y)| x + step * y).collect();
            a = project_simplex(&moved);
        }
        trace.push(run_best);
    }
    Ok(Membership { inside: best <= opts.tol, boundary: best.abs() <= opts.tol, margin: best, witness, trace })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region12 {
    pub inside: bool,
    /// feasible ellipse parameter closest to d
    pub lambda_witness: Option<f64>,
    /// q(lambda) at the witness, or the minimum over (0,d] when outside
    pub slack: f64,
}

/// q(lambda) = (d^2-1) x^2 + Y^2 - 2 Y d lambda + (d^2-1) lambda^2, Y = (d^2-1) y + 2.
fn ellipse_q(x: f64, y: f64, d: f64, l: f64) -> f64 {
    let k = d * d - 1.0;
    let big = k * y + 2.0;
    k * x * x + big * big - 2.0 * big * d * l + k * l * l
}

/// Membership in the union over lambda in (0,d] of the ellipses
/// (d^2-1) x^2 + ((d^2-1) y - lambda d + 2)^2 <= lambda^2, x = p1 - p2, y = p1 + p2.
pub fn region_1to2(p1: f64, p2: f64, d: usize) -> Result<Region12, CloneError> {
    if d < 2 {
        return Err(CloneError::Domain(format!("local dimension {d} < 2")));
    }
    let df = d as f64;
    let k = df * df - 1.0;
    let lo = -1.0 / k;
    for v in [p1, p2] {
        if !(v >= lo - 1e-12 && v <= 1.0 + 1e-12) {
            return Err(CloneError::Domain(format!("p = {v} outside [{lo}, 1]")));
        }
    }
    let (x, y) = (p1 - p2, p1 + p2);
    let big = k * y + 2.0;
    let disc = big * big - k * k * x * x;
    let scale = big.abs().max(1.0);
    // q is minimized at lambda = Y d / (d^2 - 1); clamp to (0, d]
    let lmin = (big * df / k).clamp(0.0, df);
    let slack_min = ellipse_q(x, y, df, lmin);
    if disc < -1e-12 * scale * scale {
        return Ok(Region12 { inside: false, lambda_witness: None, slack: slack_min });
    }
    let root = disc.max(0.0).sqrt();
    let lminus = (big * df - root) / k;
    let lplus = (big * df + root) / k;
    let tol = 1e-12 * scale;
    if lminus > df + tol || lplus <= 0.0 {
        return Ok(Region12 { inside: false, lambda_witness: None, slack: slack_min });
    }
    let w = lplus.min(df);
    Ok(Region12 { inside: true, lambda_witness: Some(w), slack: ellipse_q(x, y, df, w) })
}

/// (1-p1)(1-p2)/d^2 >= ((p1+p2-1)/2)^2.
pub fn restricted_region_check(p1: f64, p2: f64, d: usize) -> bool {
    let d2 = (d * d) as f64;
    let lhs = (1.0 - p1) * (1.0 - p2) / d2;
    let rhs = ((p1 + p2 - 1.0) / 2.0).powi(2);
    lhs >= rhs - 1e-12
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseParams {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl EllipseParams {
    pub fn new(lambda: f64, d: usize) -> Self {
        let k = (d * d) as f64 - 1.0;
        EllipseParams { lambda, a: lambda / k.sqrt(), b: lambda / k, c: (lambda * d as f64 - 2.0) / k }
    }
}

/// `count` ellipses with lambda = d j / count, j = 1..count.
pub fn ellipse_family(d: usize, count: usize) -> Vec<EllipseParams> {
    (1..=count).map(|j| EllipseParams::new(d as f64 * j as f64 / count as f64, d)).collect()
}
