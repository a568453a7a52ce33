use num_traits::{One, Zero};
use sle::distributions::{
    build_sle_cdf, build_sle_pdf, grid, lambda1_moment, mellin_identity_holds, min_sampled_density,
    trace_moment, write_csv,
};
use sle::exact::rational::{from_f64, int, ratio, to_f64};
use sle::exact::Polynomial;
use sle::{coefficients, Engine, SleDistribution};

const CASES: [(u32, u32); 6] = [(2, 2), (2, 10), (3, 10), (4, 10), (6, 6), (4, 100)];

fn dist(k: u32, n: u32) -> SleDistribution {
    SleDistribution::new(coefficients(k, n, Engine::Auto).unwrap()).unwrap()
}

#[test]
fn two_by_two_reduces_to_a_cubic() {
    let d = dist(2, 2);
    // 3(x - 1)^2 and (x - 1)^3 expanded by hand
    assert_eq!(
        d.pdf_curve().segments(),
        &[Polynomial::from_ints(&[3, -6, 3])]
    );
    assert_eq!(
        d.cdf_curve().segments(),
        &[Polynomial::from_ints(&[-1, 3, -3, 1])]
    );
    assert_eq!(d.pdf(1.5).unwrap(), 0.75);
    assert_eq!(d.pdf(1.0).unwrap(), 0.0);
    assert_eq!(d.pdf(2.0).unwrap(), 3.0);
    assert_eq!(d.pdf(2.5).unwrap(), 0.0);
    assert_eq!(d.pdf(0.5).unwrap(), 0.0);
    assert_eq!(d.cdf(2.0).unwrap(), 1.0);
    assert_eq!(d.cdf(0.5).unwrap(), 0.0);
    assert!(d.pdf(f64::NAN).is_err());
}

#[test]
fn two_by_two_quantiles_and_thresholds() {
    let d = dist(2, 2);
    let median = 1.0 + 2f64.powf(-1.0 / 3.0);
    assert!((d.quantile(0.5).unwrap() - median).abs() < 1e-10);
    assert_eq!(d.quantile(0.0).unwrap(), 1.0);
    assert_eq!(d.quantile(1.0).unwrap(), 2.0);
    assert!(d.quantile(1.5).is_err());
    assert!(d.quantile(-0.1).is_err());

    assert_eq!(
        d.threshold_for_false_alarm(0.5).unwrap(),
        d.quantile(0.5).unwrap()
    );
    let t = d.threshold_for_false_alarm(0.001).unwrap();
    assert!((t - (1.0 + 0.999f64.cbrt())).abs() < 1e-10);
    assert!((t - 1.999667).abs() < 1e-6);
    assert!(d.threshold_for_false_alarm(1.0 - 1e-12).unwrap() - 1.0 < 1e-3);
    assert!(d.threshold_for_false_alarm(0.0).is_err());
    assert!(d.threshold_for_false_alarm(1.0).is_err());
}

#[test]
fn two_by_two_moments() {
    let d = dist(2, 2);
    // ∫_1^2 x^m 3(x-1)^2 dx = 3 ∫_0^1 (u+1)^m u^2 du
    assert_eq!(d.moment(0), int(1));
    assert_eq!(d.moment(1), ratio(7, 4));
    assert_eq!(d.moment(2), ratio(31, 10));
    // 2·1 - 2·2 + 1·6 - 2·(1/4)
    assert_eq!(lambda1_moment(d.table(), 2).unwrap(), ratio(7, 2));
    assert_eq!(trace_moment(2, 2, 2).unwrap(), int(2));
    assert_eq!(
        lambda1_moment(d.table(), 2).unwrap(),
        d.moment(1) * trace_moment(2, 2, 2).unwrap()
    );
    assert!(lambda1_moment(d.table(), 0).is_err());
}

#[test]
fn normalization_and_boundaries() {
    for (k, n) in CASES {
        let d = dist(k, n);
        assert!(d.table().total_mass().is_one(), "K = {k}, N = {n}");
        assert!(d.pdf_curve().integral().is_one(), "K = {k}, N = {n}");
        assert!(d.moment(0).is_one());
        assert!(d.cdf_curve().eval_exact(&int(1)).is_zero());
        assert!(d.cdf_curve().eval_exact(&int(k as i64)).is_one());
        assert_eq!(d.cdf(k as f64).unwrap(), 1.0);
        assert_eq!(d.cdf(1.0).unwrap(), 0.0);
    }
}

#[test]
fn cdf_differentiates_to_pdf() {
    for (k, n) in CASES {
        let d = dist(k, n);
        assert_eq!(
            d.cdf_curve().derivative().segments(),
            d.pdf_curve().segments(),
            "K = {k}, N = {n}"
        );
    }
}

#[test]
fn mellin_product_identity() {
    for (k, n) in CASES {
        let d = dist(k, n);
        for z in 1..=6 {
            assert!(
                mellin_identity_holds(&d, z).unwrap(),
                "K = {k}, N = {n}, z = {z}"
            );
        }
    }
}

#[test]
fn density_is_nonnegative_at_chebyshev_points() {
    for (k, n) in CASES {
        assert!(
            min_sampled_density(&dist(k, n), 64).unwrap() >= -1e-30,
            "K = {k}, N = {n}"
        );
    }
}

#[test]
fn quantile_inverts_the_cdf() {
    for (k, n) in CASES {
        let d = dist(k, n);
        for t in 1..40 {
            let y = 1.0 + (k as f64 - 1.0) * t as f64 / 40.0;
            let p = d.cdf(y).unwrap();
            let back = d.quantile(p).unwrap();
            // where F is flat to double precision every point of the flat
            // stretch inverts p equally well
            let indistinguishable = (d.cdf(back).unwrap() - p).abs() <= 2.0 * f64::EPSILON;
            assert!(
                (back - y).abs() < 1e-10 || indistinguishable,
                "K = {k}, N = {n}, y = {y}: {back}"
            );
        }
    }
}

#[test]
fn cdf_is_monotone_on_the_grid() {
    for (k, n) in CASES {
        let d = dist(k, n);
        let mut last = 0.0;
        for x in grid(k, 400) {
            let v = d.cdf(x).unwrap();
            assert!(v >= last, "K = {k}, N = {n}, x = {x}");
            last = v;
        }
    }
}

#[test]
fn float_evaluation_rounds_the_exact_value() {
    for (k, n) in [(4, 10), (6, 6), (4, 100)] {
        let d = dist(k, n);
        for x in grid(k, 97) {
            let xr = from_f64(x).unwrap();
            assert_eq!(
                d.cdf(x).unwrap(),
                to_f64(&d.cdf_curve().eval_exact(&xr)),
                "x = {x}"
            );
            assert_eq!(
                d.pdf(x).unwrap(),
                to_f64(&d.pdf_curve().eval_exact(&xr)),
                "x = {x}"
            );
        }
    }
}

#[test]
fn pieces_follow_the_breakpoints() {
    let t = coefficients(4, 6, Engine::Hankel).unwrap();
    let pdf = build_sle_pdf(&t).unwrap();
    let cdf = build_sle_cdf(&t).unwrap();
    let expected = vec![int(1), ratio(4, 3), int(2), int(4)];
    assert_eq!(pdf.breakpoints(), expected.as_slice());
    assert_eq!(cdf.breakpoints(), expected.as_slice());
    assert_eq!(pdf.segments().len(), 3);
}

#[test]
fn csv_lists_grid_with_breakpoints() {
    let d = dist(3, 4);
    let xs = grid(3, 5);
    assert_eq!(xs, vec![1.0, 1.5, 2.0, 2.5, 3.0]);
    let mut buf = Vec::new();
    write_csv(&d, &xs, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,pdf,cdf");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("1.0,"));
    assert!(lines[5].ends_with(",1.0"));
    assert_eq!(grid(4, 4), vec![1.0, 4.0 / 3.0, 2.0, 3.0, 4.0]);
}

#[test]
fn engines_give_identical_curves() {
    for (k, n) in [(2, 7), (3, 9)] {
        let a = SleDistribution::new(coefficients(k, n, Engine::ClosedForm).unwrap()).unwrap();
        let b = SleDistribution::new(coefficients(k, n, Engine::Hankel).unwrap()).unwrap();
        assert_eq!(a.pdf_curve(), b.pdf_curve());
        assert_eq!(a.cdf_curve(), b.cdf_curve());
    }
}
