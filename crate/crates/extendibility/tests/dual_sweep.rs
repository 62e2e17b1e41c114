use num_traits::ToPrimitive;
use qclone_extendibility::{dual_numeric, p_closed};

/// Every instance with d^N <= 4096.
fn instances() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=12 {
        let mut d = 2;
        while (d as u64).pow(n as u32) <= 4096 {
            out.push((n, d));
            d += 1;
        }
    }
    out
}

#[test]
fn dual_numeric_matches_closed_value_up_to_4096() {
    let all = instances();
    assert_eq!(all.len(), 99);
    let mut worst = 0.0f64;
    for (n, d) in all {
        let t = std::time::Instant::now();
        let r = dual_numeric(n, d, 1e-10).unwrap();
        let exact = p_closed(n, d).unwrap().to_f64().unwrap();
        let err = (r.value - exact).abs();
        worst = worst.max(err);
        eprintln!("({n},{d}) {:.12} vs {:.12} in {:?}", r.value, exact, t.elapsed());
        assert!(err < 1e-6, "({n},{d}): {} vs {exact}", r.value);
    }
    eprintln!("largest deviation {worst:e}");
}
