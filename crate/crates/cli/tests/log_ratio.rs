use proptest::prelude::*;
use systolic::scalar::Scalar;
use systolic_cli::lemma::{check_x, sweep, SweepError};

fn log_y_f64(x: f64) -> f64 {
    x.ln() + x * (2.0 * x).ln()
}

#[test]
fn worked_values() {
    let r = check_x(&Scalar::int(9), 96);
    assert!(r.pass());
    let ly = log_y_f64(9.0);
    assert!((r.log_y.mid_f64() - ly).abs() < 1e-12);
    assert!((ly - 28.21).abs() < 0.01);
    assert!((ly / ly.ln() - 8.45).abs() < 0.01);
    assert!(check_x(&Scalar::int(7), 96).pass());
    let r = check_x(&Scalar::int(12), 96);
    assert_eq!(r.auxiliary, Some(true));
    let x = 12f64;
    assert!(x.ln() + x * (2.0 * x).ln() < x * (3.0 * x).ln());
    assert!(3.0 * x < x.ln() + x * (2.0 * x).ln());
}

#[test]
fn domain_is_checked() {
    assert_eq!(sweep(&Scalar::int(5), &Scalar::int(60), 10, None).unwrap_err(), SweepError::Domain);
    assert_eq!(sweep(&Scalar::int(9), &Scalar::int(8), 10, None).unwrap_err(), SweepError::Domain);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rows_agree_with_float_evaluation(n in 1i64..=5400) {
        let x = Scalar::int(6) + Scalar::new(n, 100);
        let r = check_x(&x, 64);
        let xf = x.to_f64();
        let ly = log_y_f64(xf);
        prop_assert!((r.log_y.mid_f64() - ly).abs() < 1e-9 * ly);
        prop_assert_eq!(r.ratio_below_x, ly / ly.ln() < xf);
        prop_assert_eq!(r.x_below_log_y, xf < ly);
        prop_assert!(r.pass());
    }
}
