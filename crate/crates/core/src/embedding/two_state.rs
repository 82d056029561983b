//! Two-state matrices `[[1−a, a], [b, 1−b]]`.

use super::{EmbedMethod, EmbedVerdict};
use crate::equal_input::{log_ratio, root_ratio};
use crate::error::{Error, Result};
use crate::markov::{check_markov, DEFAULT_TOL};
use crate::matrix::Mat;

/// Determinants this close to zero are indistinguishable from rounding of the
/// entries and count as singular.
const SINGULAR_DET: f64 = 16.0 * f64::EPSILON;

fn two_state_parts(m: &Mat) -> Result<(f64, f64)> {
    if m.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: m.dim(),
        });
    }
    check_markov(m, DEFAULT_TOL)?;
    Ok((m[(0, 1)], m[(1, 0)]))
}

/// Embeddable exactly when `det M = 1 − a − b > 0`, with the single generator
/// `Q = −(log(1 − a − b)/(a + b))(M − 𝟙)`.
pub fn embed2(m: &Mat) -> Result<EmbedVerdict> {
    let (a, b) = two_state_parts(m)?;
    let s = a + b;
    let det = 1.0 - s;
    if det <= SINGULAR_DET {
        return Ok(EmbedVerdict::non_embeddable(
            Some(EmbedMethod::Kendall),
            format!("det(M) = {det:.6e} ≤ 0"),
        ));
    }
    let q = (m - &Mat::identity(2)).scale(log_ratio(s));
    Ok(EmbedVerdict::embeddable(
        q,
        EmbedMethod::Kendall,
        true,
        true,
        format!("det(M) = {det} > 0: the two-state generator is unique"),
    )
    .verified(m))
}

/// The monotone `n`-th root `[[1−εa, εa], [εb, 1−εb]]` with
/// `ε = (1 − ⁿ√(1 − a − b))/(a + b)`.
pub fn root2(m: &Mat, n: u32) -> Result<Mat> {
    let (a, b) = two_state_parts(m)?;
    if n == 0 {
        return Err(Error::InvalidParameter("root order must be positive".into()));
    }
    if m.trace() < 1.0 - DEFAULT_TOL {
        return Err(Error::NotMonotone);
    }
    let s = a + b;
    if s == 0.0 {
        return Ok(Mat::identity(2));
    }
    if (1.0 - s).abs() <= DEFAULT_TOL {
        return Ok(m.clone());
    }
    let eps = root_ratio(s, n);
    Ok(Mat::from_fn(2, |i, j| match (i, j) {
        (0, 0) => 1.0 - eps * a,
        (0, 1) => eps * a,
        (1, 0) => eps * b,
        _ => 1.0 - eps * b,
    }))
}

/// Every 2×2 Markov matrix `R` with `R² = M`.
///
/// Write `R = 𝟙 + A_R` with `A_R = [[−x, x], [y, −y]]` and `σ = x + y`. Then
/// `A_R² = −σA_R`, so `R² = 𝟙 + (2 − σ)A_R`. Matching `M` forces
/// `σ² − 2σ + (a + b) = 0` and `(x, y) = (a, b)/(2 − σ)`; the two roots
/// `σ = 1 ± √(1 − a − b)` are the two sign choices for the second eigenvalue
/// `1 − σ` of `R`. The case `σ = 2` only arises for `M = 𝟙` and gives the swap.
pub fn all_markov_sqrt2(m: &Mat) -> Result<Vec<Mat>> {
    let (a, b) = two_state_parts(m)?;
    let det = 1.0 - a - b;
    if det < -DEFAULT_TOL {
        return Ok(Vec::new());
    }
    let r = det.max(0.0).sqrt();
    let sigmas = if r == 0.0 { vec![1.0] } else { vec![1.0 - r, 1.0 + r] };
    let mut roots = Vec::new();
    for sigma in sigmas {
        let denom = 2.0 - sigma;
        let (x, y) = if denom.abs() < f64::EPSILON {
            (1.0, 1.0)
        } else {
            (a / denom, b / denom)
        };
        let in_range = |v: f64| (-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&v);
        if !(in_range(x) && in_range(y)) {
            continue;
        }
        let (x, y) = (x.clamp(0.0, 1.0), y.clamp(0.0, 1.0));
        roots.push(Mat::from_fn(2, |i, j| match (i, j) {
            (0, 0) => 1.0 - x,
            (0, 1) => x,
            (1, 0) => y,
            _ => 1.0 - y,
        }));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::EmbedStatus;
    use crate::matfun::expm;

    fn m2(a: f64, b: f64) -> Mat {
        Mat::from_rows(&[vec![1.0 - a, a], vec![b, 1.0 - b]]).unwrap()
    }

    #[test]
    fn embeddable_example() {
        let m = m2(0.25, 0.5);
        let v = embed2(&m).unwrap();
        assert_eq!(v.status, EmbedStatus::Embeddable);
        let q = v.generator.unwrap();
        let want = (&m - &Mat::identity(2)).scale(4f64.ln() / 0.75);
        assert!(q.approx_eq(&want, 1e-15));
        assert!(expm(&q).unwrap().approx_eq(&m, 1e-14));
        assert!(v.unique_in_zero_row_sum_algebra && v.monotone_generator);
    }

    #[test]
    fn swap_and_identity() {
        assert_eq!(embed2(&m2(1.0, 1.0)).unwrap().status, EmbedStatus::NonEmbeddable);
        let id = embed2(&Mat::identity(2)).unwrap();
        assert_eq!(id.generator, Some(Mat::zeros(2)));
    }

    #[test]
    fn wrong_dimension() {
        assert_eq!(
            embed2(&Mat::identity(3)).unwrap_err(),
            Error::WrongDimension { expected: 2, found: 3 }
        );
    }

    #[test]
    fn roots_of_two_state_matrices() {
        assert_eq!(root2(&Mat::identity(2), 5).unwrap(), Mat::identity(2));
        let m = m2(0.25, 0.5);
        let r = root2(&m, 2).unwrap();
        // ε = 2/3
        assert!((r[(0, 1)] - 0.25 * 2.0 / 3.0).abs() < 1e-15);
        assert!((r[(1, 0)] - 0.5 * 2.0 / 3.0).abs() < 1e-15);
        assert!((&r * &r).approx_eq(&m, 1e-15));

        let idem = m2(0.4, 0.6);
        assert_eq!(root2(&idem, 7).unwrap(), idem);
        assert_eq!(root2(&m2(0.7, 0.6), 2), Err(Error::NotMonotone));
    }

    #[test]
    fn both_square_roots() {
        let roots = all_markov_sqrt2(&m2(0.25, 0.5)).unwrap();
        let m1 = m2(1.0 / 6.0, 1.0 / 3.0);
        let m2_ = m2(0.5, 1.0);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].approx_eq(&m1, 1e-15));
        assert!(roots[1].approx_eq(&m2_, 1e-15));
    }

    #[test]
    fn square_roots_of_identity_and_negative_determinant() {
        let roots = all_markov_sqrt2(&Mat::identity(2)).unwrap();
        assert_eq!(roots, vec![Mat::identity(2), m2(1.0, 1.0)]);
        assert!(all_markov_sqrt2(&m2(0.8, 0.7)).unwrap().is_empty());
    }
}
