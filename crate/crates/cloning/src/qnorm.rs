use nalgebra::{DMatrix, DVector, SymmetricEigen};
use qclone_operators::{c, dense_dim, eigh, embed, index, lambda_max, CMat};

use crate::CloneError;

/// Nonnegative weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    a: Vec<f64>,
}

impl Direction {
    pub fn new(a: Vec<f64>) -> Result<Self, CloneError> {
        if a.is_empty() {
            return Err(CloneError::InvalidDirection("empty".into()));
        }
        if a.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > 1.0) {
            return Err(CloneError::InvalidDirection(format!("entries must lie in [0,1]: {a:?}")));
        }
        let s: f64 = a.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(CloneError::InvalidDirection(format!("entries sum to {s}, not 1")));
        }
        Ok(Direction { a })
    }

    pub fn uniform(n: usize) -> Self {
        Direction { a: vec![1.0 / n as f64; n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut a = vec![0.0; n];
        a[i] = 1.0;
        Direction { a }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    Universal,
    Equatorial,
}

fn check_d(d: usize) -> Result<(), CloneError> {
    if d < 2 {
        return Err(CloneError::Domain(format!("local dimension {d} < 2")));
    }
    Ok(())
}

/// Local two-site operators on (input, clone): unnormalized cup-cap, identity, sum |jj><jj|.
fn cup(d: usize) -> CMat {
    let mut m = CMat::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + i, j * d + j)] = c(1.0);
        }
    }
    m
}

fn diag_pairs(d: usize) -> CMat {
    let mut m = CMat::zeros(d * d, d * d);
    for i in 0..d {
        m[(i * d + i, i * d + i)] = c(1.0);
    }
    m
}

fn pair_sum(weights: &[f64], local: &CMat, d: usize) -> Result<CMat, CloneError> {
    let n = weights.len();
    let dim = dense_dim(d, n + 1)?;
    let mut s = CMat::zeros(dim, dim);
    for (i, &w) in weights.iter().enumerate() {
        if w != 0.0 {
            s += embed(local, &[0, i + 1], d, n + 1)?.scale(w);
        }
    }
    Ok(s)
}

/// S_x = sum_i |x_i| (d omega)_(0,i) on factors 0..N, factor 0 being the input.
pub fn s_matrix(x: &[f64], d: usize) -> Result<CMat, CloneError> {
    check_d(d)?;
    if x.is_empty() {
        return Err(CloneError::Domain("empty vector".into()));
    }
    let w: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    pair_sum(&w, &cup(d), d)
}

pub fn r_matrix(a: &Direction, d: usize, mode: BoundMode) -> Result<CMat, CloneError> {
    check_d(d)?;
    let mut local = CMat::identity(d * d, d * d) + cup(d);
    if mode == BoundMode::Equatorial {
        local -= diag_pairs(d);
    }
    pair_sum(a.as_slice(), &local, d)
}

fn l1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

/// Q-norm from a full diagonalization of S_x.
pub fn q_norm(x: &[f64], d: usize) -> Result<f64, CloneError> {
    let lmax = lambda_max(&s_matrix(x, d)?)?;
    let df = d as f64;
    Ok((df * lmax - l1(x)) / (df * df - 1.0))
}

fn gram(n: usize, d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| if i == j { d as f64 } else { 1.0 })
}

/// Top eigenpair of S_x restricted to span{sqrt(d) Omega_(0,i) (x) |0..0>}, where it acts as
/// diag(|x|) G with G = (d-1) I + J. Returns lambda and coefficients c with c^T G c = 1, sum c >= 0.
pub fn reduced_top(x: &[f64], d: usize) -> Result<(f64, Vec<f64>), CloneError> {
    check_d(d)?;
    let n = x.len();
    if n == 0 {
        return Err(CloneError::Domain("empty vector".into()));
    }
    let g = gram(n, d);
    let sq: Vec<f64> = x.iter().map(|v| v.abs().sqrt()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| sq[i] * g[(i, j)] * sq[j]);
    let eig = SymmetricEigen::new(m);
    let top = eig.eigenvalues.imax();
    let lmax = eig.eigenvalues[top];
    let y = eig.eigenvectors.column(top);
    let mut cvec: Vec<f64> = (0..n).map(|i| sq[i] * y[i]).collect();
    if cvec.iter().all(|v| *v == 0.0) {
        // x = 0: any vector is top; take the uniform one
        cvec = vec![1.0; n];
    }
    normalize_b(&mut cvec, d);
    Ok((lmax, cvec))
}

fn normalize_b(b: &mut [f64], d: usize) {
    let s: f64 = b.iter().sum();
    let q: f64 = b.iter().map(|v| v * v).sum();
    let norm = ((d as f64 - 1.0) * q + s * s).sqrt();
    let sign = if s < 0.0 { -1.0 } else { 1.0 };
    b.iter_mut().for_each(|v| *v *= sign / norm);
}

pub fn q_norm_reduced(x: &[f64], d: usize) -> Result<f64, CloneError> {
    let (lmax, _) = reduced_top(x, d)?;
    let df = d as f64;
    Ok((df * lmax - l1(x)) / (df * df - 1.0))
}

/// Q-norm of a nonnegative vector and its gradient (d z_i^2 - 1)/(d^2 - 1), z = G b.
pub fn q_norm_with_gradient(x: &[f64], d: usize) -> Result<(f64, Vec<f64>), CloneError> {
    let (lmax, b) = reduced_top(x, d)?;
    let df = d as f64;
    let z = z_values(&b, d);
    let grad = z.iter().map(|zi| (df * zi * zi - 1.0) / (df * df - 1.0)).collect();
    Ok(((df * lmax - l1(x)) / (df * df - 1.0), grad))
}

/// z_i = (d-1) b_i + sum_j b_j.
pub fn z_values(b: &[f64], d: usize) -> Vec<f64> {
    let s: f64 = b.iter().sum();
    b.iter().map(|bi| (d as f64 - 1.0) * bi + s).collect()
}

pub fn upper_bound(a: &Direction, d: usize, mode: BoundMode) -> Result<f64, CloneError> {
    let l = lambda_max(&r_matrix(a, d, mode)?)?;
    Ok(match mode {
        BoundMode::Universal => l / (d as f64 + 1.0),
        BoundMode::Equatorial => l / d as f64,
    })
}

/// (1/d)|a|_1 + (1 - 1/d)|a|_Q.
pub fn upper_bound_from_qnorm(a: &Direction, d: usize) -> Result<f64, CloneError> {
    let df = d as f64;
    Ok(l1(a.as_slice()) / df + (1.0 - 1.0 / df) * q_norm(a.as_slice(), d)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BCoefficients {
    pub n: usize,
    pub d: usize,
    pub b: Vec<f64>,
    pub lambda_max: f64,
    /// more than one admissible coefficient vector in the top eigenspace
    pub degenerate: bool,
    /// dimension of the top eigenspace of S_a on the full space
    pub eigenspace_dim: usize,
}

impl BCoefficients {
    /// (d-1) sum b^2 + (sum b)^2 - 1
    pub fn constraint_residual(&self) -> f64 {
        let s: f64 = self.b.iter().sum();
        let q: f64 = self.b.iter().map(|v| v * v).sum();
        (self.d as f64 - 1.0) * q + s * s - 1.0
    }

    pub fn z(&self) -> Vec<f64> {
        z_values(&self.b, self.d)
    }

    /// Average fidelity of clone i: (1 + z_i^2)/(d+1).
    pub fn fidelities(&self) -> Vec<f64> {
        self.z().iter().map(|z| (1.0 + z * z) / (self.d as f64 + 1.0)).collect()
    }
}

fn sym_inv_sqrt(g: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(g.clone());
    let v = &eig.eigenvectors;
    let dinv = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt()));
    v * dinv * v.transpose()
}

/// b coefficients read off the full diagonalization of S_a: the top eigenspace is projected onto
/// span{w_i}, w_i = sqrt(d) Omega_(0,i) (x) |0..0>, and the generalized top eigenvector of
/// (L* P_E L, G) gives b. Ties are broken by maximizing sum b.
pub fn b_from_direction(a: &Direction, d: usize) -> Result<BCoefficients, CloneError> {
    let n = a.n();
    let s = s_matrix(a.as_slice(), d)?;
    let (vals, vecs) = eigh(&s)?;
    let top = *vals.last().expect("nonempty");
    let tol = 1e-9 * top.abs().max(1.0);
    let e_cols: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] >= top - tol).collect();
    let dim = s.nrows();
    let mut l = CMat::zeros(dim, n);
    for i in 0..n {
        for j in 0..d {
            let mut dig = vec![0; n + 1];
            dig[0] = j;
            dig[i + 1] = j;
            l[(index(&dig, d), i)] = c(1.0);
        }
    }
    let ve = CMat::from_fn(dim, e_cols.len(), |r, k| vecs[(r, e_cols[k])]);
    let k = ve.adjoint() * &l;
    let m = (k.adjoint() * k).map(|z| z.re);
    let g = gram(n, d);
    let gis = sym_inv_sqrt(&g);
    let t = &gis * m * &gis;
    let t = (&t + t.transpose()) * 0.5;
    let eig = SymmetricEigen::new(t);
    let mu_max = eig.eigenvalues.max();
    let top_cols: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] >= mu_max - 1e-8).collect();
    if (mu_max - 1.0).abs() > 1e-6 {
        return Err(CloneError::Verification(format!(
            "top eigenspace of S_a does not meet span{{w_i}} (overlap {mu_max})"
        )));
    }
    let basis = DMatrix::from_fn(n, top_cols.len(), |r, j| eig.eigenvectors[(r, top_cols[j])]);
    let bmat = &gis * basis;
    let ones = DVector::from_element(n, 1.0);
    let mut coef = bmat.transpose() * ones;
    if coef.norm() < 1e-12 {
        coef = DVector::from_fn(top_cols.len(), |j, _| if j == 0 { 1.0 } else { 0.0 });
    }
    let mut b: Vec<f64> = (bmat * coef).iter().copied().collect();
    normalize_b(&mut b, d);
    let out = BCoefficients { n, d, b, lambda_max: top, degenerate: top_cols.len() > 1, eigenspace_dim: e_cols.len() };
    let implied: f64 = a.as_slice().iter().zip(out.z()).map(|(ai, z)| ai * z * z).sum();
    if (implied - top).abs() > 1e-8 * top.max(1.0) {
        return Err(CloneError::Verification(format!("lambda_max {top} but b gives {implied}")));
    }
    Ok(out)
}

/// Same coefficients from the N-dimensional reduced eigenproblem.
pub fn b_from_direction_reduced(a: &Direction, d: usize) -> Result<BCoefficients, CloneError> {
    let (lmax, b) = reduced_top(a.as_slice(), d)?;
    Ok(BCoefficients { n: a.n(), d, b, lambda_max: lmax, degenerate: false, eigenspace_dim: 0 })
}
