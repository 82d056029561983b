//! Matrix exponential and the Mercator-series logarithm.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::spectral::{spectrum, DEFAULT_CLUSTER_TOL};

/// Padé [13/13] numerator coefficients.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the [13/13] approximant is accurate to unit roundoff.
const THETA13: f64 = 5.371_920_351_148_152;

/// `e^A` by scaling and squaring with a [13/13] Padé approximant.
pub fn expm(a: &Mat) -> Result<Mat> {
    let d = a.dim();
    let norm = a.norm_one();
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    if s > 1000 {
        return Err(Error::ExpOverflow);
    }
    let x = a.inner() * 2f64.powi(-s);
    let id = DMatrix::<f64>::identity(d, d);
    let x2 = &x * &x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    let b = &PADE13;

    let u_inner = &x6 * (&x6 * b[13] + &x4 * b[11] + &x2 * b[9]) + &x6 * b[7] + &x4 * b[5] + &x2 * b[3]
        + &id * b[1];
    let u = &x * u_inner;
    let v = &x6 * (&x6 * b[12] + &x4 * b[10] + &x2 * b[8]) + &x6 * b[6] + &x4 * b[4] + &x2 * b[2]
        + &id * b[0];

    let lu = (&v - &u).lu();
    let mut r = lu.solve(&(&v + &u)).ok_or(Error::ExpOverflow)?;
    for _ in 0..s {
        r = &r * &r;
    }
    if r.iter().any(|x| !x.is_finite()) {
        return Err(Error::ExpOverflow);
    }
    Mat::from_inner(r).map_err(|_| Error::ExpOverflow)
}

/// `log(𝟙 + A)` summed from the alternating power series.
///
/// The series needs `ρ(A) < 1`; inputs with `ρ(A) ≥ 1 − 1e−9` are refused.
pub fn logm_series(a: &Mat) -> Result<Mat> {
    const MAX_TERMS: usize = 10_000;
    let rho = spectrum(a, DEFAULT_CLUSTER_TOL)?.spectral_radius();
    if rho >= 1.0 - 1e-9 {
        return Err(Error::NotConvergent(rho));
    }
    let mut power = a.clone();
    let mut sum = a.clone();
    let mut quiet = 0;
    for m in 2..=MAX_TERMS {
        power = &power * a;
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        let term = power.scale(sign / m as f64);
        sum = &sum + &term;
        if term.max_abs() <= f64::EPSILON * sum.max_abs() || term.max_abs() < f64::MIN_POSITIVE {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(sum)
}
