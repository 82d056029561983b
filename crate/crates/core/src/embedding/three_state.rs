//! Closed forms for three states.

use num_complex::Complex64;
use serde::Serialize;

use crate::equal_input::Kind;
use crate::error::{Error, Result};
use crate::markov::{is_generator, is_markov, DEFAULT_TOL};
use crate::matrix::Mat;
use crate::monotone::{is_monotone, is_monotone_generator};
use crate::spectral::row_sum_discriminant;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discriminant3 {
    pub kind: Kind,
    /// `Δ` for a Markov matrix, `D` for a generator.
    pub value: f64,
    /// The two eigenvalues besides the row sum, `+` branch first.
    pub pair: [Complex64; 2],
}

/// Discriminant of the non-trivial eigenvalue pair of a 3×3 Markov matrix or
/// generator, `(x₁₁ − x₂₁ + x₂₃ − x₃₃)² + 4(x₂₃ − x₁₃)(x₂₁ − x₃₁)`.
pub fn discriminants3(m: &Mat) -> Result<Discriminant3> {
    if m.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: m.dim(),
        });
    }
    let (kind, shift) = if is_markov(m, DEFAULT_TOL) {
        (Kind::Matrix, 1.0)
    } else if is_generator(m, DEFAULT_TOL) {
        (Kind::Generator, 0.0)
    } else {
        return Err(Error::InvalidMatrix(
            "expected a Markov matrix or a generator".into(),
        ));
    };
    let value = row_sum_discriminant(m);
    debug_assert!(
        value >= -1e-12
            || !match kind {
                Kind::Matrix => is_monotone(m, DEFAULT_TOL).unwrap_or(false),
                Kind::Generator => is_monotone_generator(m, DEFAULT_TOL).unwrap_or(false),
            },
        "monotone input with negative discriminant {value}"
    );
    let center = 0.5 * (m.trace() - shift);
    let root = Complex64::new(value, 0.0).sqrt() * 0.5;
    Ok(Discriminant3 {
        kind,
        value,
        pair: [center + root, center - root],
    })
}

/// `(α, β)` with `αμ + βμ² = log(1 + μ)` at two distinct non-zero nodes.
pub fn log_coefficients_simple3(mu_p: f64, mu_m: f64) -> (f64, f64) {
    let (lp, lm) = (mu_p.ln_1p(), mu_m.ln_1p());
    let den = mu_p * mu_m * (mu_m - mu_p);
    let alpha = (mu_m * mu_m * lp - mu_p * mu_p * lm) / den;
    let beta = (mu_p * lm - mu_m * lp) / den;
    (alpha, beta)
}

/// `(α, β)` matching `log(1 + μ)` and its derivative at one double node.
pub fn log_coefficients_confluent3(mu: f64) -> (f64, f64) {
    let l = mu.ln_1p();
    let alpha = 2.0 * l / mu - 1.0 / (1.0 + mu);
    let beta = 1.0 / (mu * (1.0 + mu)) - l / (mu * mu);
    (alpha, beta)
}
