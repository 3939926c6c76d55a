//! Certified sweep of `log y / log log y < x < log y` for `y = x (2x)^x`.

use std::cmp::Ordering;

use systolic::interval::{self, Interval, DEFAULT_BITS};
use systolic::scalar::Scalar;

const MAX_BITS: u32 = 8192;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("sweep range must satisfy 6 <= x_min < x_max and samples >= 1")]
    Domain,
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub x: Scalar,
    /// Enclosure of `log y`.
    pub log_y: Interval,
    /// `log y < x log log y`.
    pub ratio_below_x: bool,
    /// `x < log y`.
    pub x_below_log_y: bool,
    /// The ratio bound at smaller `y` down to `e^(7/5)`, just above 4.
    pub smaller_y: bool,
    /// For `x >= 12`: `log x + x log 2x < x log 3x` and `3x < log x + x log 2x`.
    pub auxiliary: Option<bool>,
}

impl SweepRow {
    pub fn pass(&self) -> bool {
        self.ratio_below_x && self.x_below_log_y && self.smaller_y && self.auxiliary != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub violations: Vec<String>,
}

/// `Some(true)` once `a < b` is certain, `Some(false)` once `a >= b` is.
fn certify_lt(f: impl Fn(u32) -> (Interval, Interval), start: u32) -> bool {
    let mut bits = start.max(16);
    loop {
        let (a, b) = f(bits);
        if a.certainly_lt(&b) {
            return true;
        }
        if a.cmp_certain(&b).is_some_and(|o| o != Ordering::Less) || bits >= MAX_BITS {
            return false;
        }
        bits *= 2;
    }
}

fn point(x: &Scalar) -> Interval {
    Interval::from_scalar(x)
}

/// `log x + x log 2x`.
pub fn log_y(x: &Scalar, bits: u32) -> Interval {
    let two_x = x * Scalar::int(2);
    &interval::ln(&point(x), bits) + &(&point(x) * &interval::ln(&point(&two_x), bits))
}

pub fn check_x(x: &Scalar, bits: u32) -> SweepRow {
    let ly = log_y(x, bits);
    let ratio_below_x = certify_lt(
        |b| {
            let ly = log_y(x, b);
            let lly = interval::ln(&ly, b);
            (ly, &point(x) * &lly)
        },
        bits,
    );
    let x_below_log_y = certify_lt(|b| (point(x), log_y(x, b)), bits);
    let lo = Scalar::new(7, 5);
    let top = Scalar(ly.lo.clone());
    let smaller_y = (0..=8).all(|k| {
        let t = &lo + &(&top - &lo) * Scalar::new(k, 8);
        certify_lt(|b| (point(&t), &point(x) * &interval::ln(&point(&t), b)), bits)
    });
    let auxiliary = (*x >= Scalar::int(12)).then(|| {
        let three_x = x * Scalar::int(3);
        certify_lt(|b| (log_y(x, b), &point(x) * &interval::ln(&point(&three_x), b)), bits)
            && certify_lt(|b| (point(&three_x), log_y(x, b)), bits)
    });
    SweepRow { x: x.clone(), log_y: ly, ratio_below_x, x_below_log_y, smaller_y, auxiliary }
}

/// Samples `x_min + (x_max - x_min) i / samples` for `i = 1..=samples`.
pub fn sweep(x_min: &Scalar, x_max: &Scalar, samples: usize, bits: Option<u32>) -> Result<SweepReport, SweepError> {
    if *x_min < Scalar::int(6) || x_min >= x_max || samples == 0 {
        return Err(SweepError::Domain);
    }
    let bits = bits.unwrap_or(DEFAULT_BITS);
    let span = x_max - x_min;
    let rows: Vec<SweepRow> = (1..=samples)
        .map(|i| check_x(&(x_min + &span * Scalar::new(i as i64, samples as i64)), bits))
        .collect();
    let violations = rows.iter().filter(|r| !r.pass()).map(|r| format!("x = {}", r.x)).collect();
    Ok(SweepReport { rows, violations })
}
