use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use qclone_diagrams::{enumerate, Diagram, Family};

fn families(k: usize) -> Vec<Family> {
    let mut f = vec![Family::Symmetric, Family::Partition, Family::Brauer, Family::UniformBlock];
    if k >= 2 {
        f.push(Family::WalledBrauer { left: 1, right: k - 1 });
    }
    f
}

fn pick(pool: &[Diagram], i: usize) -> Diagram {
    pool[i % pool.len()].clone()
}

/// Stacks q (right) and p (left) as an explicit graph and counts components by DFS.
/// Returns the outer connectivity as a set of blocks and the number of closed components.
fn brute_compose(p: &Diagram, q: &Diagram) -> (BTreeSet<BTreeSet<usize>>, usize) {
    let k = p.k();
    // vertex names: ("q", v) for q's right column, ("m", r) for the glued middle rows, ("p", v) for p's left column
    let q_node = |v: usize| if v <= k { format!("out{v}") } else { format!("mid{}", v - k) };
    let p_node = |v: usize| if v <= k { format!("mid{v}") } else { format!("out{v}") };
    let mut adj: HashMap<String, Vec<String>> = HashMap::new();
    let mut add_block = |names: Vec<String>| {
        for a in &names {
            for b in &names {
                adj.entry(a.clone()).or_default().push(b.clone());
            }
        }
    };
    for b in q.blocks() {
        add_block(b.iter().map(|&v| q_node(v)).collect());
    }
    for b in p.blocks() {
        add_block(b.iter().map(|&v| p_node(v)).collect());
    }
    let mut seen = BTreeSet::new();
    let mut blocks = BTreeSet::new();
    let mut loops = 0;
    let mut keys: Vec<String> = adj.keys().cloned().collect();
    keys.sort();
    for start in keys {
        if seen.contains(&start) {
            continue;
        }
        let mut stack = vec![start.clone()];
        let mut comp = Vec::new();
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in &adj[&v] {
                if seen.insert(w.clone()) {
                    stack.push(w.clone());
                }
            }
            comp.push(v);
        }
        let outer: BTreeSet<usize> =
            comp.iter().filter_map(|s| s.strip_prefix("out")).map(|s| s.parse().unwrap()).collect();
        if outer.is_empty() {
            loops += 1;
        } else {
            blocks.insert(outer);
        }
    }
    (blocks, loops)
}

fn block_set(p: &Diagram) -> BTreeSet<BTreeSet<usize>> {
    p.blocks().iter().map(|b| b.iter().copied().collect()).collect()
}

#[test]
fn orders_match_closed_forms() {
    let fact = |n: usize| (1..=n).product::<usize>();
    let double = |k: usize| (1..=k).map(|i| 2 * i - 1).product::<usize>();
    for k in 1..=4 {
        assert_eq!(enumerate(Family::Partition, k).unwrap().len(), [2, 15, 203, 4140][k - 1]);
        assert_eq!(enumerate(Family::Brauer, k).unwrap().len(), double(k));
        assert_eq!(enumerate(Family::Symmetric, k).unwrap().len(), fact(k));
        assert_eq!(enumerate(Family::UniformBlock, k).unwrap().len(), [1, 3, 16, 131][k - 1]);
    }
    for k in 2..=5 {
        for left in 1..k {
            let f = Family::WalledBrauer { left, right: k - left };
            assert_eq!(enumerate(f, k).unwrap().len(), fact(k), "walled {left}+{}", k - left);
        }
    }
}

#[test]
fn composition_matches_brute_force_everywhere_for_k2() {
    let all = enumerate(Family::Partition, 2).unwrap();
    for p in &all {
        for q in &all {
            let (r, loops) = p.compose(q).unwrap();
            assert_eq!((block_set(&r), loops), brute_compose(p, q), "{p} * {q}");
        }
    }
}

proptest! {
    #[test]
    fn composition_is_associative(k in 1usize..=4, f in 0usize..5, i in 0usize..100_000, j in 0usize..100_000, l in 0usize..100_000) {
        let fams = families(k);
        let pool = enumerate(fams[f % fams.len()], k).unwrap();
        let (a, b, c) = (pick(&pool, i), pick(&pool, j), pick(&pool, l));
        let (ab, n1) = a.compose(&b).unwrap();
        let (ab_c, n2) = ab.compose(&c).unwrap();
        let (bc, m1) = b.compose(&c).unwrap();
        let (a_bc, m2) = a.compose(&bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(n1 + n2, m1 + m2);
    }

    #[test]
    fn identity_is_neutral(k in 1usize..=4, i in 0usize..100_000) {
        let pool = enumerate(Family::Partition, k).unwrap();
        let p = pick(&pool, i);
        let id = Diagram::identity(k);
        prop_assert_eq!(id.compose(&p).unwrap(), (p.clone(), 0));
        prop_assert_eq!(p.compose(&id).unwrap(), (p.clone(), 0));
    }

    #[test]
    fn families_are_closed(k in 1usize..=4, f in 0usize..5, i in 0usize..100_000, j in 0usize..100_000) {
        let fams = families(k);
        let fam = fams[f % fams.len()];
        let pool = enumerate(fam, k).unwrap();
        let (r, loops) = pick(&pool, i).compose(&pick(&pool, j)).unwrap();
        prop_assert!(r.is_member(fam), "{} not in {}", r, fam);
        if matches!(fam, Family::UniformBlock | Family::Symmetric) {
            prop_assert_eq!(loops, 0);
        }
    }

    #[test]
    fn loop_count_matches_brute_force(k in 1usize..=4, i in 0usize..100_000, j in 0usize..100_000) {
        let pool = enumerate(Family::Partition, k).unwrap();
        let (p, q) = (pick(&pool, i), pick(&pool, j));
        let (r, loops) = p.compose(&q).unwrap();
        prop_assert_eq!((block_set(&r), loops), brute_compose(&p, &q));
    }

    #[test]
    fn text_form_roundtrips(k in 1usize..=4, i in 0usize..100_000) {
        let pool = enumerate(Family::Partition, k).unwrap();
        let p = pick(&pool, i);
        prop_assert_eq!(Diagram::parse(&p.to_string()).unwrap(), p);
    }
}
