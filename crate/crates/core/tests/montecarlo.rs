use num_complex::Complex64;
use sle::montecarlo::{gram, sample_sle, sle_statistic, validate};
use sle::{coefficients, Engine, SimulationConfig, SleDistribution};

fn dist(k: u32, n: u32) -> SleDistribution {
    SleDistribution::new(coefficients(k, n, Engine::Auto).unwrap()).unwrap()
}

#[test]
fn two_by_two_draws_stay_in_support() {
    for seed in [0, 1, 99] {
        let s = sample_sle(&SimulationConfig::new(2, 2, 2000, seed).unwrap()).unwrap();
        assert!(s.values().iter().all(|&x| (1.0..=2.0).contains(&x)));
        assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn same_config_same_draws() {
    let c = SimulationConfig::new(3, 5, 3001, 42).unwrap();
    assert_eq!(
        sample_sle(&c).unwrap().values(),
        sample_sle(&c).unwrap().values()
    );
    let other_seed = SimulationConfig::new(3, 5, 3001, 43).unwrap();
    assert_ne!(
        sample_sle(&c).unwrap().values(),
        sample_sle(&other_seed).unwrap().values()
    );
}

#[test]
fn statistic_is_scale_invariant() {
    let (k, n) = (3, 7);
    let x: Vec<Complex64> = (0..k * n)
        .map(|t| Complex64::new((t as f64 * 0.37).sin(), (t as f64 * 1.3).cos()))
        .collect();
    let base = sle_statistic(&x, k, n).unwrap();
    for scale in [
        Complex64::new(3.5, 0.0),
        Complex64::new(-0.2, 1.7),
        Complex64::new(0.0, 1e-3),
    ] {
        let scaled: Vec<Complex64> = x.iter().map(|z| z * scale).collect();
        assert!((sle_statistic(&scaled, k, n).unwrap() - base).abs() < 1e-9);
    }
}

#[test]
fn gram_matrix_is_hermitian_with_real_diagonal() {
    let (k, n) = (3, 4);
    let x: Vec<Complex64> = (0..k * n)
        .map(|t| Complex64::new(t as f64, 1.0 - t as f64))
        .collect();
    let r = gram(&x, k, n);
    for a in 0..k {
        assert_eq!(r[a * k + a].im, 0.0);
        for b in 0..k {
            assert_eq!(r[a * k + b], r[b * k + a].conj());
        }
    }
}

#[test]
fn moderate_sample_fits_exact_law() {
    let d = dist(2, 10);
    let s = sample_sle(&SimulationConfig::new(2, 10, 20_000, 5).unwrap()).unwrap();
    let report = validate(&s, &d).unwrap();
    // 1.95 / sqrt(n) is the 0.1% Kolmogorov quantile
    assert!(report.ks_distance < 1.95 / (20_000f64).sqrt(), "{report:?}");
    assert!(report.mean_passes(), "{report:?}");
}

#[test]
fn exports_csv_and_metadata() {
    let s = sample_sle(
        &SimulationConfig::new(2, 3, 4, 1)
            .unwrap()
            .with_partitions(2)
            .unwrap(),
    )
    .unwrap();
    let mut buf = Vec::new();
    s.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("x\n"));
    assert_eq!(text.lines().count(), 5);
    let meta: serde_json::Value = serde_json::from_str(&s.metadata_json()).unwrap();
    assert_eq!(meta["K"], 2);
    assert_eq!(meta["N"], 3);
    assert_eq!(meta["samples"], 4);
    assert_eq!(meta["seed"], 1);
    assert_eq!(meta["partitions"], 2);
    assert!(meta["generator"].as_str().unwrap().contains("ChaCha20"));
}
