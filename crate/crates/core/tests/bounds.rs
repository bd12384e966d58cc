use bacbound_core::bounds::{
    curve, j_bound, main_bound, r_sigma, simple_bound, ul_bound, OptimizerConfig,
};
use bacbound_core::entropy::{star, Prob};

fn cfg(grid_points: usize) -> OptimizerConfig {
    OptimizerConfig {
        grid_points,
        ..OptimizerConfig::default()
    }
}

#[test]
fn r_sigma_monotone_and_in_range() {
    let c = cfg(512);
    let log3 = 3f64.log2();
    let r0s: Vec<f64> = (0..=8).map(|i| i as f64 * 0.25).collect();
    let r1s: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let table: Vec<Vec<f64>> = r0s
        .iter()
        .map(|&r0| r1s.iter().map(|&r1| r_sigma(r0, r1, &c).unwrap()).collect())
        .collect();
    for (i, row) in table.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            assert!(
                v >= 1.5 - 1e-6 && v <= log3 + 1e-9,
                "r0={} r1={} -> {v}",
                r0s[i],
                r1s[j]
            );
            if i > 0 {
                assert!(v >= table[i - 1][j] - 1e-6, "not monotone in r0");
            }
            if j > 0 {
                assert!(v <= row[j - 1] + 1e-6, "not monotone in r1");
            }
        }
    }
}

#[test]
fn large_common_rate_reaches_log3() {
    // with r1 = 0 the cap is max_η L(η) = log2 3 at η = 1/3
    let v = r_sigma(10.0, 0.0, &cfg(1024)).unwrap();
    assert!((v - 3f64.log2()).abs() < 1e-9, "{v}");
}

#[test]
fn j_continuous_at_threshold() {
    for i in 0..100 {
        let p = 0.5 * i as f64 / 100.0;
        let s = star(Prob::new(p).unwrap(), Prob::new(p).unwrap()).get();
        let below = j_bound(p, (s - 1e-12).max(2.0 * p * p)).unwrap();
        let at = j_bound(p, s).unwrap();
        assert!((below - at).abs() < 1e-9, "p={p}");
    }
}

#[test]
fn ordering_near_full_rate() {
    let c = cfg(1024);
    for i in 0..50 {
        let r1 = 0.9 + 0.1 * i as f64 / 49.0;
        let s = simple_bound(r1).unwrap();
        let u = ul_bound(r1, &c).unwrap();
        let m = main_bound(r1, &c).unwrap();
        assert!(m <= u + 1e-6, "r1={r1}: main {m} > ul {u}");
        assert!(u <= s + 1e-6, "r1={r1}: ul {u} > simple {s}");
    }
}

#[test]
fn main_bound_above_known_constructions() {
    let m = main_bound(1.0, &cfg(1024)).unwrap();
    assert!(m >= 0.25);
    assert!(1.0 + m >= 1.31781);
}

#[test]
fn bounds_are_bit_identical_across_runs() {
    let c = cfg(512);
    assert_eq!(
        main_bound(0.999, &c).unwrap().to_bits(),
        main_bound(0.999, &c).unwrap().to_bits()
    );
    assert_eq!(
        ul_bound(1.0, &c).unwrap().to_bits(),
        ul_bound(1.0, &c).unwrap().to_bits()
    );
    assert_eq!(
        curve(0.99, 1.0, 3, &c).unwrap(),
        curve(0.99, 1.0, 3, &c).unwrap()
    );
}

#[test]
fn two_step_curve_has_endpoints_only() {
    let c = curve(0.9, 1.0, 2, &cfg(256)).unwrap();
    assert_eq!(c.rows.len(), 2);
    assert_eq!(c.rows[0].r1, 0.9);
    assert_eq!(c.rows[1].r1, 1.0);
}
