//! The unique real logarithm of a cyclic Markov matrix with positive real
//! spectrum, as a polynomial in `A = M − 𝟙`.

use serde::Serialize;

use super::three_state::{log_coefficients_confluent3, log_coefficients_simple3};
use super::vandermonde::log_coefficients_vandermonde;
use super::REAL_TOL;
use crate::error::{Error, Result};
use crate::markov::check_markov;
use crate::matrix::Mat;
use crate::spectral::{spectrum, structure, DEFAULT_CLUSTER_TOL, DEFAULT_RANK_TOL};

/// `R = Σ_{ℓ=1}^{d−1} α_ℓ A^ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogCoefficients {
    pub alphas: Vec<f64>,
    /// Whether the three-state closed forms produced the coefficients.
    pub closed_form: bool,
}

impl LogCoefficients {
    /// Evaluates `Σ α_ℓ A^ℓ`.
    pub fn apply(&self, a: &Mat) -> Mat {
        let mut r = Mat::zeros(a.dim());
        let mut power = a.clone();
        for (k, &alpha) in self.alphas.iter().enumerate() {
            if k > 0 {
                power = &power * a;
            }
            r = r + power.scale(alpha);
        }
        r
    }
}

/// The nodes `μ = λ − 1` of the eigenvalues other than 1, with multiplicities.
fn log_nodes(m: &Mat, tol: f64) -> Result<Option<Vec<(f64, usize)>>> {
    let st = structure(m, DEFAULT_RANK_TOL)?;
    let sigma = spectrum(m, DEFAULT_CLUSTER_TOL)?;
    if !st.cyclic || !sigma.is_nonderogatory() {
        return Err(Error::NotCyclic);
    }
    if !sigma.is_real(REAL_TOL) {
        return Err(Error::NonRealSpectrum);
    }
    if sigma.clusters.iter().any(|c| c.value.re <= tol) {
        return Ok(None);
    }
    let one = sigma
        .clusters
        .iter()
        .position(|c| (c.value.re - 1.0).abs() <= DEFAULT_CLUSTER_TOL * 2.0)
        .ok_or_else(|| Error::InvalidMatrix("eigenvalue 1 not found".into()))?;
    if sigma.clusters[one].algebraic != 1 {
        return Err(Error::NotCyclic);
    }
    Ok(Some(
        sigma.clusters
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != one)
            .map(|(_, c)| (c.value.re - 1.0, c.algebraic))
            .collect(),
    ))
}

/// Coefficients from the linear solve, skipping the three-state closed forms.
pub fn log_coefficients_by_solve(m: &Mat, tol: f64) -> Result<Option<LogCoefficients>> {
    check_markov(m, tol)?;
    let Some(nodes) = log_nodes(m, tol)? else {
        return Ok(None);
    };
    if nodes.is_empty() {
        return Ok(Some(LogCoefficients {
            alphas: Vec::new(),
            closed_form: false,
        }));
    }
    Ok(Some(LogCoefficients {
        alphas: log_coefficients_vandermonde(&nodes)?,
        closed_form: false,
    }))
}

/// `None` when some eigenvalue is `≤ tol`, since then no real logarithm exists.
pub fn real_log_cyclic(m: &Mat, tol: f64) -> Result<Option<(Mat, LogCoefficients)>> {
    check_markov(m, tol)?;
    let Some(nodes) = log_nodes(m, tol)? else {
        return Ok(None);
    };
    let d = m.dim();
    let coeffs = match (d, nodes.as_slice()) {
        (3, &[(mp, 1), (mm, 1)]) => {
            let (a, b) = log_coefficients_simple3(mp, mm);
            LogCoefficients {
                alphas: vec![a, b],
                closed_form: true,
            }
        }
        (3, &[(mu, 2)]) => {
            let (a, b) = log_coefficients_confluent3(mu);
            LogCoefficients {
                alphas: vec![a, b],
                closed_form: true,
            }
        }
        (_, []) => LogCoefficients {
            alphas: Vec::new(),
            closed_form: false,
        },
        _ => LogCoefficients {
            alphas: log_coefficients_vandermonde(&nodes)?,
            closed_form: false,
        },
    };
    let a = m - &Mat::identity(d);
    Ok(Some((coeffs.apply(&a), coeffs)))
}
