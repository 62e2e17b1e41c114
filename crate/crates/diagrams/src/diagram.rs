use std::fmt;

use crate::DiagramError;

/// Disjoint-set forest over `n` nodes.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Set partition of {1..2k}. Vertices 1..k form the right column and k+1..2k the left
/// column; vertex i and k+i sit in the same row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        if k == 0 {
            return Err(DiagramError::InvalidBlocks("k must be positive".into()));
        }
        let mut seen = vec![false; 2 * k + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(DiagramError::InvalidBlocks("empty block".into()));
            }
            for &v in b {
                if v == 0 || v > 2 * k {
                    return Err(DiagramError::InvalidBlocks(format!("vertex {v} outside 1..{}", 2 * k)));
                }
                if seen[v] {
                    return Err(DiagramError::InvalidBlocks(format!("vertex {v} repeated")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = (1..=2 * k).find(|&v| !seen[v]) {
            return Err(DiagramError::InvalidBlocks(format!("vertex {v} missing")));
        }
        Ok(Self::canonical(k, blocks))
    }

    fn canonical(k: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Diagram { k, blocks }
    }

    /// Builds the diagram from a block label per vertex (index v-1).
    pub(crate) fn from_labels(k: usize, labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let slot = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[slot].push(i + 1);
        }
        Self::canonical(k, blocks)
    }

    pub fn identity(k: usize) -> Self {
        Diagram { k, blocks: (1..=k).map(|i| vec![i, k + i]).collect() }
    }

    /// Permutation diagram with blocks {i, k + sigma(i)}; `sigma` is one-line and 1-based.
    pub fn from_permutation(sigma: &[usize]) -> Result<Self, DiagramError> {
        let k = sigma.len();
        let zero: Vec<usize> = sigma.iter().map(|&s| s.wrapping_sub(1)).collect();
        if k == 0 || !is_bijection(&zero) {
            return Err(DiagramError::NotPermutation(sigma.to_vec()));
        }
        Ok(Self::from_perm0(&zero))
    }

    /// Same as `from_permutation` with a 0-based one-line array.
    pub fn from_perm0(sigma: &[usize]) -> Self {
        let k = sigma.len();
        Self::canonical(k, (0..k).map(|i| vec![i + 1, k + sigma[i] + 1]).collect())
    }

    /// One-line 1-based permutation if every block joins one right and one left vertex.
    pub fn to_permutation(&self) -> Option<Vec<usize>> {
        let k = self.k;
        let mut sigma = vec![0; k];
        for b in &self.blocks {
            if b.len() != 2 || b[0] > k || b[1] <= k {
                return None;
            }
            sigma[b[0] - 1] = b[1] - k;
        }
        Some(sigma)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block index of every vertex, indexed by v-1.
    pub fn labels(&self) -> Vec<usize> {
        let mut l = vec![0; 2 * self.k];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &v in b {
                l[v - 1] = bi;
            }
        }
        l
    }

    /// Row of a vertex, 1-based.
    pub fn row(&self, v: usize) -> usize {
        if v > self.k {
            v - self.k
        } else {
            v
        }
    }

    pub fn is_right(&self, v: usize) -> bool {
        v <= self.k
    }

    /// p ∘ q: q's left column is glued to p's right column. Returns the composite and the
    /// number of components that touch neither outer column.
    pub fn compose(&self, q: &Diagram) -> Result<(Diagram, usize), DiagramError> {
        if self.k != q.k {
            return Err(DiagramError::SizeMismatch(self.k, q.k));
        }
        let k = self.k;
        // nodes: 0..k outer right (q), k..2k middle, 2k..3k outer left (p)
        let q_node = |v: usize| if v <= k { v - 1 } else { k + (v - k - 1) };
        let p_node = |v: usize| if v <= k { k + (v - 1) } else { 2 * k + (v - k - 1) };
        let mut uf = UnionFind::new(3 * k);
        for b in &q.blocks {
            for w in b.windows(2) {
                uf.union(q_node(w[0]), q_node(w[1]));
            }
        }
        for b in &self.blocks {
            for w in b.windows(2) {
                uf.union(p_node(w[0]), p_node(w[1]));
            }
        }
        let mut labels = vec![0; 2 * k];
        let mut outer_roots = std::collections::HashSet::new();
        for i in 0..k {
            let r = uf.find(i);
            labels[i] = r;
            outer_roots.insert(r);
            let r = uf.find(2 * k + i);
            labels[k + i] = r;
            outer_roots.insert(r);
        }
        let mut loop_roots = std::collections::HashSet::new();
        for m in k..2 * k {
            let r = uf.find(m);
            if !outer_roots.contains(&r) {
                loop_roots.insert(r);
            }
        }
        Ok((Diagram::from_labels(k, &labels), loop_roots.len()))
    }

    /// Components after joining vertex i to k+i for every row.
    pub fn closure_loop_count(&self) -> usize {
        let k = self.k;
        let mut uf = UnionFind::new(2 * k);
        for b in &self.blocks {
            for w in b.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        for i in 0..k {
            uf.union(i, k + i);
        }
        (0..2 * k).filter(|&v| uf.find(v) == v).count()
    }

    /// Exchanges vertex i and k+i for every selected row (1-based rows).
    pub fn partial_transpose_rows(&self, rows: &[usize]) -> Result<Diagram, DiagramError> {
        let k = self.k;
        let mut swap = vec![false; k + 1];
        for &r in rows {
            if r == 0 || r > k {
                return Err(DiagramError::BadRow(r, k));
            }
            swap[r] = true;
        }
        let map = |v: usize| {
            let row = if v > k { v - k } else { v };
            if swap[row] {
                if v > k {
                    v - k
                } else {
                    v + k
                }
            } else {
                v
            }
        };
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&v| map(v)).collect()).collect();
        Ok(Self::canonical(k, blocks))
    }

    /// Mirror image exchanging the two columns; the tensor representation of the result is the
    /// transpose of the original.
    pub fn flip(&self) -> Diagram {
        let rows: Vec<usize> = (1..=self.k).collect();
        self.partial_transpose_rows(&rows).expect("all rows valid")
    }

    /// Number of blocks meeting both columns.
    pub fn propagating_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.iter().any(|&v| v <= self.k) && b.iter().any(|&v| v > self.k)).count()
    }

    /// Parses `1,3|2,6|4,5@k=3`. Without the `@k=` suffix, k is half the largest vertex.
    pub fn parse(s: &str) -> Result<Diagram, DiagramError> {
        let s = s.trim();
        let (body, k_part) = match s.find('@') {
            Some(at) => {
                let tail = &s[at + 1..];
                let kv = tail
                    .strip_prefix("k=")
                    .ok_or_else(|| DiagramError::Parse { pos: at + 1, msg: "expected k=".into() })?;
                let k: usize = kv
                    .trim()
                    .parse()
                    .map_err(|_| DiagramError::Parse { pos: at + 3, msg: format!("bad k value {kv:?}") })?;
                (&s[..at], Some(k))
            }
            None => (s, None),
        };
        let mut blocks = Vec::new();
        let mut pos = 0;
        for part in body.split('|') {
            let mut block = Vec::new();
            let mut inner = pos;
            for tok in part.split(',') {
                let t = tok.trim();
                let v: usize =
                    t.parse().map_err(|_| DiagramError::Parse { pos: inner, msg: format!("bad vertex {t:?}") })?;
                block.push(v);
                inner += tok.len() + 1;
            }
            blocks.push(block);
            pos += part.len() + 1;
        }
        let max = blocks.iter().flatten().copied().max().unwrap_or(0);
        let k = match k_part {
            Some(k) => k,
            None => {
                if max % 2 != 0 {
                    return Err(DiagramError::Parse { pos: 0, msg: "odd vertex count; give @k=".into() });
                }
                max / 2
            }
        };
        Diagram::new(k, blocks)
    }
}

fn is_bijection(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    for &j in s {
        if j >= s.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> =
            self.blocks.iter().map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}@k={}", body.join("|"), self.k)
    }
}

/// Sign of a 1-based one-line permutation.
pub fn permutation_sign(sigma: &[usize]) -> Result<i32, DiagramError> {
    let zero: Vec<usize> = sigma.iter().map(|&s| s.wrapping_sub(1)).collect();
    if !is_bijection(&zero) {
        return Err(DiagramError::NotPermutation(sigma.to_vec()));
    }
    let mut seen = vec![false; zero.len()];
    let mut cycles = 0;
    for s in 0..zero.len() {
        if !seen[s] {
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = zero[i];
            }
        }
    }
    Ok(if (zero.len() - cycles).is_multiple_of(2) { 1 } else { -1 })
}
