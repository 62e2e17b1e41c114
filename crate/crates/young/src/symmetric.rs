use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{syt_count, Partition, YoungError};

pub const DEFAULT_ENUM_CAP: usize = 8;

/// A permutation of {0..n-1} in one-line notation.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// (s ∘ t)(i) = s(t(i)).
pub fn compose(s: &[usize], t: &[usize]) -> Perm {
    t.iter().map(|&i| s[i]).collect()
}

pub fn inverse(s: &[usize]) -> Perm {
    let mut inv = vec![0; s.len()];
    for (i, &j) in s.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn is_permutation(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    for &j in s {
        if j >= s.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

pub fn cycle_count(s: &[usize]) -> usize {
    let mut seen = vec![false; s.len()];
    let mut cycles = 0;
    for start in 0..s.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = s[i];
        }
    }
    cycles
}

pub fn sign(s: &[usize]) -> i32 {
    if (s.len() - cycle_count(s)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of {0..n-1} in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = identity(n);
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Permutations of `n` points that move only points inside `set`.
fn perms_of_subset(n: usize, set: &[usize]) -> Vec<Perm> {
    all_perms(set.len())
        .into_iter()
        .map(|p| {
            let mut s = identity(n);
            for (a, &b) in p.iter().enumerate() {
                s[set[a]] = set[b];
            }
            s
        })
        .collect()
}

/// Element of the rational group algebra of S_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymAlgebraElement {
    n: usize,
    terms: BTreeMap<Perm, BigRational>,
}

impl SymAlgebraElement {
    pub fn zero(n: usize) -> Self {
        SymAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(identity(n))
    }

    pub fn basis(p: Perm) -> Self {
        let n = p.len();
        let mut terms = BTreeMap::new();
        terms.insert(p, BigRational::one());
        SymAlgebraElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, p: &[usize]) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Perm, c: BigRational) {
        debug_assert_eq!(p.len(), self.n);
        let entry = self.terms.entry(p).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect();
        SymAlgebraElement { n: self.n, terms }
    }

    /// g x g^{-1}.
    pub fn conjugate_by(&self, g: &[usize]) -> Self {
        let gi = inverse(g);
        let terms = self.terms.iter().map(|(p, v)| (compose(g, &compose(p, &gi)), v.clone())).collect();
        SymAlgebraElement { n: self.n, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "degree mismatch");
        let mut acc: BTreeMap<Perm, BigRational> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                *acc.entry(compose(p, q)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SymAlgebraElement { n: self.n, terms: acc }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, v) in &other.terms {
            out.add_term(p.clone(), v.clone());
        }
        out
    }
}

impl Add for &SymAlgebraElement {
    type Output = SymAlgebraElement;
    fn add(self, rhs: Self) -> SymAlgebraElement {
        SymAlgebraElement::add(self, rhs)
    }
}

impl Mul for &SymAlgebraElement {
    type Output = SymAlgebraElement;
    fn mul(self, rhs: Self) -> SymAlgebraElement {
        SymAlgebraElement::mul(self, rhs)
    }
}

/// Canonical tableau: rows filled with consecutive points, row-major, 0-based.
pub fn canonical_tableau(lambda: &Partition) -> Vec<Vec<usize>> {
    let mut next = 0;
    lambda
        .parts()
        .iter()
        .map(|&len| {
            let row: Vec<usize> = (next..next + len).collect();
            next += len;
            row
        })
        .collect()
}

fn check_cap(lambda: &Partition, cap: usize) -> Result<(), YoungError> {
    if lambda.n() > cap {
        return Err(YoungError::CapExceeded { what: "symmetric group enumeration", size: lambda.n(), cap });
    }
    Ok(())
}

fn subgroup_sum(n: usize, blocks: &[Vec<usize>], signed: bool) -> SymAlgebraElement {
    let mut elems = vec![identity(n)];
    for b in blocks {
        let local = perms_of_subset(n, b);
        elems = elems.iter().flat_map(|e| local.iter().map(move |l| compose(e, l))).collect();
    }
    let mut out = SymAlgebraElement::zero(n);
    for e in elems {
        let c = if signed && sign(&e) < 0 { -BigRational::one() } else { BigRational::one() };
        out.add_term(e, c);
    }
    out
}

/// Row symmetrizer times column antisymmetrizer of the canonical tableau.
pub fn young_symmetrizer(lambda: &Partition) -> Result<SymAlgebraElement, YoungError> {
    young_symmetrizer_with_cap(lambda, DEFAULT_ENUM_CAP)
}

pub fn young_symmetrizer_with_cap(lambda: &Partition, cap: usize) -> Result<SymAlgebraElement, YoungError> {
    check_cap(lambda, cap)?;
    let n = lambda.n();
    let rows = canonical_tableau(lambda);
    let width = lambda.part(0);
    let cols: Vec<Vec<usize>> =
        (0..width).map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect();
    let r = subgroup_sum(n, &rows, false);
    let c = subgroup_sum(n, &cols, true);
    Ok(r.mul(&c))
}

/// Central idempotent of shape lambda: (f_lambda / n!)^2 times the sum of the symmetrizers
/// of all n! tableaux of shape lambda.
pub fn isotypic_projector(lambda: &Partition) -> Result<SymAlgebraElement, YoungError> {
    isotypic_projector_with_cap(lambda, DEFAULT_ENUM_CAP)
}

pub fn isotypic_projector_with_cap(lambda: &Partition, cap: usize) -> Result<SymAlgebraElement, YoungError> {
    let s = young_symmetrizer_with_cap(lambda, cap)?;
    let n = lambda.n();
    // Relabelling a tableau by g conjugates its symmetrizer by g.
    let mut acc: BTreeMap<Perm, BigRational> = BTreeMap::new();
    let perms = all_perms(n);
    for g in &perms {
        for (p, v) in s.conjugate_by(g).terms {
            *acc.entry(p).or_insert_with(BigRational::zero) += v;
        }
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let f = BigInt::from(syt_count(lambda));
    let scale = BigRational::new(&f * &f, &fact * &fact);
    let mut terms = BTreeMap::new();
    for (p, v) in acc {
        let c = v * &scale;
        if !c.is_zero() {
            terms.insert(p, c);
        }
    }
    Ok(SymAlgebraElement { n, terms })
}

/// Returns Some(mu) when x*x = mu*x for a positive scalar mu.
pub fn quasi_idempotent_scalar(x: &SymAlgebraElement) -> Option<BigRational> {
    let sq = x.mul(x);
    let (p, c) = x.terms.iter().next()?;
    let mu = sq.coeff(p) / c;
    if sq == x.scale(&mu) && !mu.is_zero() && !mu.is_negative() {
        Some(mu)
    } else {
        None
    }
}
