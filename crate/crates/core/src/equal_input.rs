//! Equal-input matrices `M_C = (1 − c)𝟙 + C` and generators `Q_C = C − c𝟙`.
//!
//! `C` has every row equal to `(c₁, …, c_d)` and `c = Σ cᵢ` is the summatory
//! parameter. Products, powers, exponentials and roots stay in the class and
//! act on the parameter vector by closed formulas, which is what this module
//! implements. Matrices with `c ≠ 1` are graded by `sgn(1 − c)`, which is
//! multiplicative under products.

use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use crate::embedding::{EmbedMethod, EmbedVerdict};
use crate::error::{Error, Result};
use crate::markov::DEFAULT_TOL;
use crate::matrix::Mat;

/// Below this summatory parameter the analytic `c → 0` limits are used.
const SMALL_C: f64 = 1e-8;

/// Slack allowed in the Markov condition `c ≤ 1 + min cᵢ` for rounding.
const MARKOV_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `(1 − c)𝟙 + C`
    Matrix,
    /// `C − c𝟙`
    Generator,
}

/// The parameter vector of an equal-input matrix or generator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualInputParams {
    kind: Kind,
    c_vec: Vec<f64>,
}

impl EqualInputParams {
    pub fn new(kind: Kind, c_vec: Vec<f64>) -> Result<Self> {
        if c_vec.is_empty() {
            return Err(Error::InvalidParameter("empty parameter vector".into()));
        }
        if let Some(i) = c_vec.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(match kind {
                Kind::Matrix => Error::NotStochastic {
                    index: i,
                    detail: format!("c_{} = {} is negative", i + 1, c_vec[i]),
                },
                Kind::Generator => {
                    Error::InvalidParameter(format!("c_{} = {} is negative", i + 1, c_vec[i]))
                }
            });
        }
        let p = Self { kind, c_vec };
        if kind == Kind::Matrix {
            let c = p.c();
            let (imin, cmin) = p.argmin();
            let bound = if p.dim() == 1 { 1.0 } else { 1.0 + cmin };
            if c > bound + MARKOV_SLACK {
                return Err(Error::NotStochastic {
                    index: imin,
                    detail: format!("diagonal 1 − c + c_{} = {} is negative", imin + 1, bound - c),
                });
            }
        }
        Ok(p)
    }

    pub fn matrix(c_vec: Vec<f64>) -> Result<Self> {
        Self::new(Kind::Matrix, c_vec)
    }

    pub fn generator(c_vec: Vec<f64>) -> Result<Self> {
        Self::new(Kind::Generator, c_vec)
    }

    /// Constant-input parameters: every `cᵢ = c/d`.
    pub fn constant(kind: Kind, d: usize, c: f64) -> Result<Self> {
        Self::new(kind, vec![c / d as f64; d])
    }

    /// Builds parameters known to be valid up to rounding; clamps tiny negatives.
    fn trusted(kind: Kind, c_vec: Vec<f64>) -> Self {
        Self {
            kind,
            c_vec: c_vec.into_iter().map(|x| x.max(0.0)).collect(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn c_vec(&self) -> &[f64] {
        &self.c_vec
    }

    pub fn dim(&self) -> usize {
        self.c_vec.len()
    }

    /// The summatory parameter `c = Σ cᵢ`.
    pub fn c(&self) -> f64 {
        self.c_vec.iter().sum()
    }

    pub fn grade(&self) -> GradeSign {
        GradeSign::of(self.c())
    }

    fn argmin(&self) -> (usize, f64) {
        self.c_vec
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty")
    }

    fn scaled(&self, kind: Kind, factor: f64) -> Self {
        Self::trusted(kind, self.c_vec.iter().map(|x| x * factor).collect())
    }
}

/// `sgn(1 − c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GradeSign {
    Negative,
    Zero,
    Positive,
}

impl GradeSign {
    /// Grade of a summatory parameter; `|1 − c| ≤ 1e−12` counts as zero.
    pub fn of(c: f64) -> Self {
        let x = 1.0 - c;
        if x.abs() <= 1e-12 {
            Self::Zero
        } else if x > 0.0 {
            Self::Positive
        } else {
            Self::Negative
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Self::Negative => -1,
            Self::Zero => 0,
            Self::Positive => 1,
        }
    }
}

impl Mul for GradeSign {
    type Output = GradeSign;
    fn mul(self, rhs: GradeSign) -> GradeSign {
        match self.value() * rhs.value() {
            1 => Self::Positive,
            -1 => Self::Negative,
            _ => Self::Zero,
        }
    }
}

impl fmt::Display for GradeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// Summatory parameter of a product: `f(c, c′) = c + c′ − cc′`.
pub fn summatory_product(c: f64, c2: f64) -> f64 {
    c + c2 - c * c2
}

/// `(1 − e^{−x})/x`, equal to 1 at `x = 0`.
fn exp_ratio(x: f64) -> f64 {
    if x.abs() < SMALL_C {
        1.0 - 0.5 * x
    } else {
        -(-x).exp_m1() / x
    }
}

/// `−log(1 − x)/x`, equal to 1 at `x = 0`.
pub(crate) fn log_ratio(x: f64) -> f64 {
    if x.abs() < SMALL_C {
        1.0 + 0.5 * x
    } else {
        -(-x).ln_1p() / x
    }
}

/// `(1 − (1 − x)ⁿ)/x` for integer `n ≥ 0`.
fn power_ratio(x: f64, n: u32) -> f64 {
    if x.abs() < SMALL_C {
        let n = n as f64;
        n - 0.5 * n * (n - 1.0) * x
    } else if x < 1.0 {
        -(n as f64 * (-x).ln_1p()).exp_m1() / x
    } else {
        (1.0 - (1.0 - x).powi(n as i32)) / x
    }
}

/// `(1 − (1 − x)^{1/n})/x` for `0 ≤ x < 1`.
pub(crate) fn root_ratio(x: f64, n: u32) -> f64 {
    let n = n as f64;
    if x.abs() < SMALL_C {
        (1.0 + 0.5 * (1.0 - 1.0 / n) * x) / n
    } else {
        -((-x).ln_1p() / n).exp_m1() / x
    }
}

/// `(1 − c)𝟙 + C` or `C − c𝟙`.
pub fn ei_make(p: &EqualInputParams) -> Mat {
    let c = p.c();
    let diag_shift = match p.kind {
        Kind::Matrix => 1.0 - c,
        Kind::Generator => -c,
    };
    Mat::from_fn(p.dim(), |i, j| {
        p.c_vec[j] + if i == j { diag_shift } else { 0.0 }
    })
}

/// Recovers parameters when every column is constant off the diagonal and the
/// rows sum to 1 (matrix) or 0 (generator).
pub fn ei_detect(m: &Mat, tol: f64) -> Option<EqualInputParams> {
    let d = m.dim();
    let sums = m.row_sums();
    let kind = if sums.iter().all(|s| (s - 1.0).abs() <= tol) {
        Kind::Matrix
    } else if sums.iter().all(|s| s.abs() <= tol) {
        Kind::Generator
    } else {
        return None;
    };
    if d == 1 {
        return Some(EqualInputParams::trusted(kind, vec![0.0]));
    }
    let mut c_vec = Vec::with_capacity(d);
    for j in 0..d {
        let off: Vec<f64> = (0..d).filter(|&i| i != j).map(|i| m[(i, j)]).collect();
        let mean = off.iter().sum::<f64>() / off.len() as f64;
        if mean < -tol || off.iter().any(|x| (x - mean).abs() > tol) {
            return None;
        }
        c_vec.push(mean.max(0.0));
    }
    let c: f64 = c_vec.iter().sum();
    let slack = tol * d as f64;
    for j in 0..d {
        let want = match kind {
            Kind::Matrix => 1.0 - c + c_vec[j],
            Kind::Generator => c_vec[j] - c,
        };
        if (m[(j, j)] - want).abs() > slack {
            return None;
        }
    }
    EqualInputParams::new(kind, c_vec).ok()
}

/// Parameters of `M_C · M_{C′}`: `C″ = (1 − c′)C + C′`.
pub fn ei_product(p: &EqualInputParams, p2: &EqualInputParams) -> Result<EqualInputParams> {
    if p.dim() != p2.dim() {
        return Err(Error::DimMismatch(p.dim(), p2.dim()));
    }
    if p.kind != Kind::Matrix || p2.kind != Kind::Matrix {
        return Err(Error::InvalidParameter("products need matrix parameters".into()));
    }
    let w = 1.0 - p2.c();
    Ok(EqualInputParams::trusted(
        Kind::Matrix,
        p.c_vec.iter().zip(&p2.c_vec).map(|(a, b)| w * a + b).collect(),
    ))
}

/// Parameters of `M_Cⁿ`, with summatory parameter `1 − (1 − c)ⁿ`.
pub fn ei_power(p: &EqualInputParams, n: u32) -> Result<EqualInputParams> {
    if p.kind != Kind::Matrix {
        return Err(Error::InvalidParameter("powers need matrix parameters".into()));
    }
    Ok(p.scaled(Kind::Matrix, power_ratio(p.c(), n)))
}

/// `lim Mⁿ`: `𝟙` for `c = 0`, `C/c` for `0 < c < 2`, none for `c = 2`.
pub fn ei_limit(p: &EqualInputParams) -> Result<Option<Mat>> {
    if p.kind != Kind::Matrix {
        return Err(Error::InvalidParameter("limits need matrix parameters".into()));
    }
    let c = p.c();
    if c == 0.0 {
        return Ok(Some(Mat::identity(p.dim())));
    }
    if (c - 2.0).abs() <= MARKOV_SLACK {
        return Ok(None);
    }
    Ok(Some(Mat::from_fn(p.dim(), |_, j| p.c_vec[j] / c)))
}

/// Parameters of `e^{Q_C} = 𝟙 + ((1 − e^{−c})/c) Q_C`.
pub fn ei_exp(p: &EqualInputParams) -> Result<EqualInputParams> {
    if p.kind != Kind::Generator {
        return Err(Error::InvalidParameter("exponential needs generator parameters".into()));
    }
    Ok(p.scaled(Kind::Matrix, exp_ratio(p.c())))
}

/// Embeddability of an equal-input Markov matrix through its equal-input
/// generator `Q = −(log(1 − c)/c)(M − 𝟙)`.
pub fn ei_embed(m: &Mat, tol: f64) -> Result<EmbedVerdict> {
    let p = ei_detect(m, tol)
        .filter(|p| p.kind == Kind::Matrix)
        .ok_or(Error::NotEqualInput)?;
    let d = p.dim();
    let c = p.c();
    if (c - 1.0).abs() <= tol {
        return Ok(EmbedVerdict::non_embeddable(
            Some(EmbedMethod::EqualInput),
            "singular idempotent (c = 1)",
        ));
    }
    if c > 1.0 {
        return Ok(if d % 2 == 0 {
            EmbedVerdict::non_embeddable(
                Some(EmbedMethod::EqualInput),
                format!("c = {c} > 1 in even dimension {d}: det(M) = (1 − c)^{} < 0", d - 1),
            )
        } else {
            EmbedVerdict::undecided(format!(
                "c = {c} > 1: no equal-input generator exists, and odd dimension {d} leaves \
                 other generators possible"
            ))
        });
    }
    let q = ei_make(&p.scaled(Kind::Generator, log_ratio(c)));
    // for d = 3 a monotone matrix with quadratic minimal polynomial has one monotone generator
    Ok(EmbedVerdict::embeddable(
        q,
        EmbedMethod::EqualInput,
        d <= 2,
        d <= 3,
        format!("equal-input generator for c = {c} < 1, unique among equal-input generators"),
    )
    .verified(m))
}

/// Parameters of `Q″` with `e^{Q} e^{Q′} = e^{Q″}` for equal-input generators.
///
/// In terms of `g(x) = (1 − e^{−x})/x`,
/// `C″ = (e^{−c′} g(c) C + g(c′) C′) / g(c + c′)`, so `c″ = c + c′`.
/// Either argument may be zero.
pub fn ei_bch(p: &EqualInputParams, p2: &EqualInputParams) -> Result<EqualInputParams> {
    if p.dim() != p2.dim() {
        return Err(Error::DimMismatch(p.dim(), p2.dim()));
    }
    if p.kind != Kind::Generator || p2.kind != Kind::Generator {
        return Err(Error::InvalidParameter("combination needs generator parameters".into()));
    }
    let (c, c2) = (p.c(), p2.c());
    let w = (-c2).exp() * exp_ratio(c);
    let w2 = exp_ratio(c2);
    let norm = exp_ratio(c + c2);
    Ok(EqualInputParams::trusted(
        Kind::Generator,
        p.c_vec
            .iter()
            .zip(&p2.c_vec)
            .map(|(a, b)| (w * a + w2 * b) / norm)
            .collect(),
    ))
}

/// The equal-input `n`-th root `ⁿ√(1−c) 𝟙 + (1 − ⁿ√(1−c)) C/c`.
///
/// Idempotent inputs (`c = 1`) are their own roots.
pub fn ei_root(m: &Mat, n: u32) -> Result<Mat> {
    if n == 0 {
        return Err(Error::InvalidParameter("root order must be positive".into()));
    }
    let p = ei_detect(m, DEFAULT_TOL)
        .filter(|p| p.kind == Kind::Matrix)
        .ok_or(Error::NotEqualInput)?;
    let c = p.c();
    if (c - 1.0).abs() <= DEFAULT_TOL {
        return Ok(m.clone());
    }
    if c > 1.0 {
        return Err(Error::NoEqualInputRoot(c));
    }
    Ok(ei_make(&p.scaled(Kind::Matrix, root_ratio(c, n))))
}

/// Convex weights of an equal-input Markov matrix over `𝟙`, `G_d` and the
/// rank-one matrices `E_i` whose rows all equal `e_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualInputDecomposition {
    /// weight `r` of `𝟙`
    pub identity: f64,
    /// weight `s` of `G_d = (J − 𝟙)/(d − 1)`
    pub max_input: f64,
    /// weights `tᵢ` of `E_i`
    pub columns: Vec<f64>,
}

impl EqualInputDecomposition {
    pub fn recombine(&self) -> Mat {
        let d = self.columns.len();
        let off = if d > 1 { self.max_input / (d - 1) as f64 } else { 0.0 };
        Mat::from_fn(d, |i, j| {
            let base = if i == j { self.identity } else { off };
            base + self.columns[j]
        })
    }

    pub fn total_weight(&self) -> f64 {
        self.identity + self.max_input + self.columns.iter().sum::<f64>()
    }
}

/// `G_d`, the equal-input matrix with maximal summatory parameter `d/(d − 1)`.
pub fn max_input_matrix(d: usize) -> Result<Mat> {
    if d < 2 {
        return Err(Error::InvalidParameter("G_d needs d ≥ 2".into()));
    }
    let w = 1.0 / (d - 1) as f64;
    Ok(Mat::from_fn(d, |i, j| if i == j { 0.0 } else { w }))
}

pub fn ei_decompose(m: &Mat) -> Result<EqualInputDecomposition> {
    let p = ei_detect(m, DEFAULT_TOL)
        .filter(|p| p.kind == Kind::Matrix)
        .ok_or(Error::NotEqualInput)?;
    let d = p.dim();
    let c = p.c();
    if c <= 1.0 || d == 1 {
        return Ok(EqualInputDecomposition {
            identity: (1.0 - c).max(0.0),
            max_input: 0.0,
            columns: p.c_vec.clone(),
        });
    }
    let (_, cmin) = p.argmin();
    let columns: Vec<f64> = p.c_vec.iter().map(|x| x - cmin).collect();
    let max_input = (d - 1) as f64 * cmin;
    Ok(EqualInputDecomposition {
        identity: (1.0 - c + cmin).max(0.0),
        max_input,
        columns,
    })
}
