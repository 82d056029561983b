//! Embeddability decisions: is a Markov matrix `M` equal to `e^Q` for some
//! generator `Q`, and which `Q`?
//!
//! [`embed_verdict`] tries the resolved classes in a fixed order: two states,
//! equal-input matrices, matrices with a quadratic minimal polynomial, and
//! cyclic matrices with real spectrum. Anything else is reported as
//! [`EmbedStatus::Undecided`] rather than guessed.

mod cyclic;
mod poisson;
mod three_state;
mod two_state;
mod vandermonde;

use serde::Serialize;

pub use cyclic::{log_coefficients_by_solve, real_log_cyclic, LogCoefficients};
pub use poisson::{divisible_construct, poisson_family, DivisibleConstruction, PoissonFamily};
pub use three_state::{
    discriminants3, log_coefficients_confluent3, log_coefficients_simple3, Discriminant3,
};
pub use two_state::{all_markov_sqrt2, embed2, root2};
pub use vandermonde::{
    confluent_vandermonde, confluent_vandermonde_det, gamma, log_coefficients_vandermonde,
    simple_vandermonde_inverse, MAX_CONDITION,
};

use crate::equal_input::{ei_detect, ei_embed, log_ratio, Kind};
use crate::error::Result;
use crate::markov::{check_markov, DEFAULT_TOL};
use crate::matfun::expm;
use crate::matrix::Mat;
use crate::monotone::{is_monotone, is_monotone_generator};
use crate::spectral::{spectrum, structure, Spectrum, DEFAULT_CLUSTER_TOL, DEFAULT_RANK_TOL};

/// Tolerance for calling a spectrum real: `|Im λ| < REAL_TOL·(1 + |λ|)`.
pub const REAL_TOL: f64 = 1e-9;

/// Off-diagonal entries of a recovered logarithm in `(−GENERATOR_TOL, 0)` are
/// clamped to zero; anything more negative means "not a generator".
pub const GENERATOR_TOL: f64 = 1e-9;

/// Every generator returned as embeddable reproduces the input this closely.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedStatus {
    Embeddable,
    NonEmbeddable,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedMethod {
    /// closed form for two states
    Kendall,
    /// closed form for equal-input matrices
    EqualInput,
    /// unique real logarithm from a confluent Vandermonde solve
    CyclicVandermonde,
    /// unique real logarithm from the 3×3 closed-form coefficients
    D3ClosedForm,
    /// summed logarithm series on a quadratic minimal polynomial
    Series,
    /// spectral obstruction, no generator constructed
    Spectral,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbedVerdict {
    pub status: EmbedStatus,
    pub generator: Option<Mat>,
    pub method: Option<EmbedMethod>,
    /// No other real logarithm with zero row sums exists.
    pub unique_in_zero_row_sum_algebra: bool,
    /// No other monotone generator exists.
    pub unique_monotone_generator: bool,
    pub monotone_generator: bool,
    pub reason: String,
}

impl EmbedVerdict {
    pub(crate) fn embeddable(
        q: Mat,
        method: EmbedMethod,
        unique: bool,
        unique_monotone: bool,
        reason: impl Into<String>,
    ) -> Self {
        let monotone_generator = is_monotone_generator(&q, DEFAULT_TOL).unwrap_or(false);
        Self {
            status: EmbedStatus::Embeddable,
            generator: Some(q),
            method: Some(method),
            unique_in_zero_row_sum_algebra: unique,
            unique_monotone_generator: unique_monotone && monotone_generator,
            monotone_generator,
            reason: reason.into(),
        }
    }

    pub(crate) fn non_embeddable(method: Option<EmbedMethod>, reason: impl Into<String>) -> Self {
        Self {
            status: EmbedStatus::NonEmbeddable,
            generator: None,
            method,
            unique_in_zero_row_sum_algebra: false,
            unique_monotone_generator: false,
            monotone_generator: false,
            reason: reason.into(),
        }
    }

    pub(crate) fn undecided(reason: impl Into<String>) -> Self {
        Self {
            status: EmbedStatus::Undecided,
            generator: None,
            method: None,
            unique_in_zero_row_sum_algebra: false,
            unique_monotone_generator: false,
            monotone_generator: false,
            reason: reason.into(),
        }
    }

    pub fn is_embeddable(&self) -> bool {
        self.status == EmbedStatus::Embeddable
    }

    /// Downgrades an embeddable verdict whose generator fails to reproduce `m`.
    pub(crate) fn verified(self, m: &Mat) -> Self {
        let Some(q) = &self.generator else {
            return self;
        };
        match expm(q) {
            Ok(e) if e.max_diff(m) <= VERIFY_TOL => self,
            Ok(e) => Self::undecided(format!(
                "{}; but exp(Q) misses the input by {:.3e}",
                self.reason,
                e.max_diff(m)
            )),
            Err(err) => Self::undecided(format!("{}; but exp(Q) failed: {err}", self.reason)),
        }
    }
}

/// Clamps off-diagonal entries in `(−tol, 0)` to zero and restores zero row
/// sums. Returns `None` when some off-diagonal entry is below `−tol`, else the
/// clamped matrix and the number of entries that were clamped.
pub fn clamp_generator(r: &Mat, tol: f64) -> Option<(Mat, usize)> {
    let mut clamped = 0;
    let mut rows = r.rows();
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if i == j {
                continue;
            }
            if *x < -tol {
                return None;
            }
            if *x < 0.0 {
                *x = 0.0;
                clamped += 1;
            }
        }
        let off: f64 = row.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x).sum();
        row[i] = -off;
    }
    Some((Mat::from_rows(&rows).expect("finite"), clamped))
}

/// True when `M` provably has no real square root: some negative real
/// eigenvalue has odd algebraic multiplicity, or a single Jordan block of
/// size at least two.
pub fn sqrt_obstruction(m: &Mat) -> Result<bool> {
    let sigma = spectrum(m, DEFAULT_CLUSTER_TOL)?;
    Ok(negative_block_obstruction(&sigma))
}

fn negative_block_obstruction(sigma: &Spectrum) -> bool {
    sigma.clusters.iter().any(|c| {
        let real = c.value.im.abs() < REAL_TOL * (1.0 + c.value.norm());
        real && c.value.re < -DEFAULT_TOL
            && (c.algebraic % 2 == 1 || (c.algebraic >= 2 && c.geometric == 1))
    })
}

/// Decides embeddability of a Markov matrix where the theory allows it.
pub fn embed_verdict(m: &Mat, tol: f64) -> Result<EmbedVerdict> {
    check_markov(m, tol)?;
    let d = m.dim();
    if d == 2 {
        return embed2(m);
    }
    if ei_detect(m, tol).is_some_and(|p| p.kind() == Kind::Matrix) {
        return ei_embed(m, tol);
    }
    let st = structure(m, DEFAULT_RANK_TOL)?;
    let sigma = spectrum(m, DEFAULT_CLUSTER_TOL)?;

    if st.min_poly_degree <= 2 {
        if let Some(v) = quadratic_case(m, &sigma, tol)? {
            return Ok(v.verified(m));
        }
    } else if st.cyclic {
        let nonpositive = sigma.clusters.iter().find(|c| {
            c.value.im.abs() < REAL_TOL * (1.0 + c.value.norm()) && c.value.re <= tol
        });
        if let Some(c) = nonpositive {
            return Ok(EmbedVerdict::non_embeddable(
                Some(EmbedMethod::Spectral),
                format!(
                    "cyclic with real eigenvalue {:.6e} ≤ 0: no real logarithm exists",
                    c.value.re
                ),
            ));
        }
        if sigma.is_real(REAL_TOL) && sigma.is_nonderogatory() {
            return cyclic_case(m, tol).map(|v| v.verified(m));
        }
    }

    if negative_block_obstruction(&sigma) {
        return Ok(EmbedVerdict::non_embeddable(
            Some(EmbedMethod::Spectral),
            "a negative eigenvalue blocks every real square root, hence every generator",
        ));
    }
    if m.determinant() <= 0.0 {
        return Ok(EmbedVerdict::non_embeddable(
            Some(EmbedMethod::Spectral),
            format!("det(M) = {:.6e} ≤ 0 while det(e^Q) = e^tr(Q) > 0", m.determinant()),
        ));
    }
    Ok(EmbedVerdict::undecided(format!(
        "outside resolved classes (minimal polynomial degree {}, {}); \
         no square-root obstruction found",
        st.min_poly_degree,
        if sigma.is_real(REAL_TOL) {
            "real spectrum, not cyclic"
        } else {
            "complex eigenvalue pair"
        }
    )))
}

/// `A = M − 𝟙` with `A² = −αA`: the series collapses to
/// `Q = −(log(1 − α)/α) A`.
fn quadratic_case(m: &Mat, sigma: &Spectrum, tol: f64) -> Result<Option<EmbedVerdict>> {
    let d = m.dim();
    let a = m - &Mat::identity(d);
    let a2 = &a * &a;
    let alpha = -a2.trace() / a.trace();
    if (&a2 + &a.scale(alpha)).max_abs() > 1e-8 {
        return Ok(None);
    }
    let lambda = 1.0 - alpha;
    if lambda > tol {
        let q = a.scale(log_ratio(alpha));
        let unique_monotone = d == 3 && is_monotone(m, tol).unwrap_or(false);
        return Ok(Some(EmbedVerdict::embeddable(
            q,
            EmbedMethod::Series,
            false,
            unique_monotone,
            format!("quadratic minimal polynomial, eigenvalues 1 and {lambda:.6} > 0"),
        )));
    }
    if negative_block_obstruction(sigma) {
        return Ok(Some(EmbedVerdict::non_embeddable(
            Some(EmbedMethod::Spectral),
            format!("eigenvalue {lambda:.6} < 0 with odd multiplicity: no real square root"),
        )));
    }
    if lambda.abs() <= tol {
        return Ok(Some(EmbedVerdict::non_embeddable(
            Some(EmbedMethod::Spectral),
            "singular matrix",
        )));
    }
    Ok(Some(EmbedVerdict::undecided(format!(
        "outside resolved classes: eigenvalue {lambda:.6} < 0 with even multiplicity"
    ))))
}

fn cyclic_case(m: &Mat, tol: f64) -> Result<EmbedVerdict> {
    let method = if m.dim() == 3 {
        EmbedMethod::D3ClosedForm
    } else {
        EmbedMethod::CyclicVandermonde
    };
    let Some((r, _)) = real_log_cyclic(m, tol)? else {
        return Ok(EmbedVerdict::non_embeddable(
            Some(method),
            "cyclic with a non-positive eigenvalue: no real logarithm exists",
        ));
    };
    match clamp_generator(&r, GENERATOR_TOL) {
        Some((q, clamped)) => {
            let mut reason = "cyclic with positive real spectrum: the unique real logarithm \
                              is a generator"
                .to_string();
            if clamped > 0 {
                reason.push_str(&format!(
                    "; {clamped} off-diagonal entries in (−{GENERATOR_TOL:e}, 0) clamped to 0"
                ));
            }
            Ok(EmbedVerdict::embeddable(q, method, true, true, reason))
        }
        None => {
            let worst = (0..m.dim())
                .flat_map(|i| (0..m.dim()).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|ij| r[ij])
                .fold(f64::INFINITY, f64::min);
            Ok(EmbedVerdict::non_embeddable(
                Some(method),
                format!(
                    "the unique real logarithm has off-diagonal entry {worst:.6e} < 0, \
                     so no generator exists"
                ),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equal_input::{ei_make, EqualInputParams};

    fn m(rows: &[&[f64]]) -> Mat {
        Mat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn clamping_restores_zero_row_sums() {
        let r = m(&[&[-1.0, 1.0 + 1e-12, -1e-12], &[0.5, -0.5, 0.0], &[0.0, 0.0, 0.0]]);
        let (q, n) = clamp_generator(&r, GENERATOR_TOL).unwrap();
        assert_eq!(n, 1);
        assert_eq!(q[(0, 2)], 0.0);
        assert!(q.row_sums().iter().all(|s| s.abs() < 1e-15));
        let bad = m(&[&[-1.0, 1.1, -0.1], &[0.5, -0.5, 0.0], &[0.0, 0.0, 0.0]]);
        assert_eq!(clamp_generator(&bad, GENERATOR_TOL), None);
    }

    #[test]
    fn obstruction_examples() {
        let alt = m(&[&[0.5, 0.5, 0.0], &[0.5, 0.0, 0.5], &[0.0, 0.5, 0.5]]);
        assert!(sqrt_obstruction(&alt).unwrap());
        assert!(sqrt_obstruction(&m(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap());
        let c = ei_make(&EqualInputParams::constant(Kind::Matrix, 3, 1.2).unwrap());
        assert!(!sqrt_obstruction(&c).unwrap());
        assert!(!sqrt_obstruction(&Mat::identity(3)).unwrap());
    }

    #[test]
    fn negative_determinant_monotone_is_not_embeddable() {
        let alt = m(&[&[0.5, 0.5, 0.0], &[0.5, 0.0, 0.5], &[0.0, 0.5, 0.5]]);
        let v = embed_verdict(&alt, DEFAULT_TOL).unwrap();
        assert_eq!(v.status, EmbedStatus::NonEmbeddable);
    }

    #[test]
    fn round_trip_through_monotone_generator() {
        let q = m(&[&[-0.5, 0.4, 0.1], &[0.3, -0.5, 0.2], &[0.1, 0.4, -0.5]]);
        let v = embed_verdict(&expm(&q).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(v.status, EmbedStatus::Embeddable);
        assert_eq!(v.method, Some(EmbedMethod::D3ClosedForm));
        assert!(v.monotone_generator && v.unique_in_zero_row_sum_algebra);
        assert!(v.generator.unwrap().approx_eq(&q, 1e-10));
    }

    #[test]
    fn large_constant_input_in_odd_dimension_is_undecided() {
        let c = ei_make(&EqualInputParams::constant(Kind::Matrix, 3, 1.2).unwrap());
        assert_eq!(embed_verdict(&c, DEFAULT_TOL).unwrap().status, EmbedStatus::Undecided);
    }

    #[test]
    fn non_markov_input_is_refused() {
        let q = m(&[&[-1.0, 1.0], &[1.0, -1.0]]);
        assert!(embed_verdict(&q, DEFAULT_TOL).is_err());
    }

    #[test]
    fn quadratic_non_equal_input_matrix() {
        // block-diagonal: two equal-input 2×2 blocks sharing the second eigenvalue
        let mm = m(&[
            &[0.8, 0.2, 0.0, 0.0],
            &[0.3, 0.7, 0.0, 0.0],
            &[0.0, 0.0, 0.9, 0.1],
            &[0.0, 0.0, 0.4, 0.6],
        ]);
        let v = embed_verdict(&mm, DEFAULT_TOL).unwrap();
        assert_eq!(v.status, EmbedStatus::Embeddable);
        assert_eq!(v.method, Some(EmbedMethod::Series));
        assert!(!v.unique_in_zero_row_sum_algebra);
        assert!(expm(v.generator.as_ref().unwrap()).unwrap().approx_eq(&mm, 1e-12));
    }

    #[test]
    fn cyclic_logarithm_that_is_not_a_generator() {
        // e^R with R having a negative off-diagonal entry, but e^R still Markov
        let r = m(&[&[-1.0, 1.05, -0.05], &[0.2, -0.5, 0.3], &[0.1, 0.6, -0.7]]);
        let e = expm(&r).unwrap();
        assert!(crate::markov::is_markov(&e, 1e-12));
        let v = embed_verdict(&e, DEFAULT_TOL).unwrap();
        assert_eq!(v.status, EmbedStatus::NonEmbeddable);
    }
}
