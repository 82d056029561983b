//! Poisson-type families `M(t) = e^{−t}(P₀ − 𝟙) + e^{t(P − 𝟙)}`.
//!
//! With `P₀` idempotent and `P₀P = PP₀ = P` these form a semigroup through
//! `M(0) = P₀`, and `M(t) = P₀e^{tA}` with `A = P − 𝟙`. Every `M(t)` is
//! infinitely divisible, but only the families with `P₀ = 𝟙` are embeddable;
//! otherwise `det M(t) = 0` throughout.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::markov::check_markov;
use crate::matfun::expm;
use crate::matrix::Mat;

/// Tolerance on the defining identities of a family.
const FAMILY_TOL: f64 = 1e-9;

/// Sample times for the determinant check in [`divisible_construct`].
const DET_SAMPLES: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 10.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoissonFamily {
    p0: Mat,
    p: Mat,
}

impl PoissonFamily {
    pub fn new(p0: Mat, p: Mat, tol: f64) -> Result<Self> {
        if p0.dim() != p.dim() {
            return Err(Error::DimMismatch(p0.dim(), p.dim()));
        }
        check_markov(&p0, tol)?;
        check_markov(&p, tol)?;
        let scale = |x: &Mat| tol * x.norm_inf().max(1.0);
        let checks = [
            ((&p0 * &p0).max_diff(&p0), "P0² ≠ P0"),
            ((&p0 * &p).max_diff(&p), "P0·P ≠ P"),
            ((&p * &p0).max_diff(&p), "P·P0 ≠ P"),
        ];
        for (err, name) in checks {
            if err > scale(&p) {
                return Err(Error::InvalidFamily(format!("{name} (off by {err:.3e})")));
            }
        }
        Ok(Self { p0, p })
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn p0(&self) -> &Mat {
        &self.p0
    }

    pub fn p(&self) -> &Mat {
        &self.p
    }

    /// `A = P − 𝟙`.
    pub fn generator(&self) -> Mat {
        &self.p - &Mat::identity(self.dim())
    }

    /// `P₀ = 𝟙`, in which case `M(t) = e^{tA}`.
    pub fn is_poissonian(&self, tol: f64) -> bool {
        self.p0.approx_eq(&Mat::identity(self.dim()), tol)
    }

    pub fn at(&self, t: f64) -> Result<Mat> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("time {t} must be finite and ≥ 0")));
        }
        let jump = (&self.p0 - &Mat::identity(self.dim())).scale((-t).exp());
        Ok(jump + expm(&self.generator().scale(t))?)
    }
}

/// `M(t)` for the family `(P₀, P)`.
pub fn poisson_family(p0: &Mat, p: &Mat, t: f64) -> Result<Mat> {
    PoissonFamily::new(p0.clone(), p.clone(), FAMILY_TOL)?.at(t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisibleConstruction {
    pub matrix: Mat,
    pub embeddable: bool,
    /// `sA` when the family is Poissonian.
    pub generator: Option<Mat>,
    pub det: f64,
}

/// The infinitely divisible matrix `M(s)`, flagged embeddable exactly when
/// `P₀ = 𝟙`.
pub fn divisible_construct(p0: &Mat, p: &Mat, s: f64) -> Result<DivisibleConstruction> {
    let fam = PoissonFamily::new(p0.clone(), p.clone(), FAMILY_TOL)?;
    let matrix = fam.at(s)?;
    let embeddable = fam.is_poissonian(FAMILY_TOL);
    for t in DET_SAMPLES {
        let det = fam.at(t)?.determinant();
        let consistent = if embeddable { det > 0.0 } else { det.abs() < 1e-10 };
        if !consistent {
            return Err(Error::InvalidFamily(format!(
                "det M({t}) = {det:.3e} contradicts the determinant dichotomy"
            )));
        }
    }
    Ok(DivisibleConstruction {
        det: matrix.determinant(),
        generator: embeddable.then(|| fam.generator().scale(s)),
        embeddable,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equal_input::{ei_exp, ei_make, EqualInputParams};

    fn example_family(alpha: f64, a: f64, b: f64) -> (Mat, Mat) {
        let c = alpha * a + (1.0 - alpha) * (1.0 - b);
        let p0 = Mat::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![alpha, 0.0, 1.0 - alpha],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let p = Mat::from_rows(&[
            vec![a, 0.0, 1.0 - a],
            vec![c, 0.0, 1.0 - c],
            vec![1.0 - b, 0.0, b],
        ])
        .unwrap();
        (p0, p)
    }

    #[test]
    fn example_family_is_singular() {
        let (p0, p) = example_family(0.5, 0.5, 0.5);
        let m = poisson_family(&p0, &p, 1.0).unwrap();
        // P₀e^{A} with A having eigenvalues 0, −1, −1
        let want = &p0 * &expm(&(&p - &Mat::identity(3))).unwrap();
        assert!(m.approx_eq(&want, 1e-14));
        assert!(m.determinant().abs() < 1e-15);
        let e = (-1f64).exp();
        assert!((m[(0, 0)] - (e + 0.5 * (1.0 - e))).abs() < 1e-15);
    }

    #[test]
    fn zero_time_and_idempotent_generator() {
        let (p0, p) = example_family(0.3, 0.8, 0.6);
        assert!(poisson_family(&p0, &p, 0.0).unwrap().approx_eq(&p0, 1e-15));
        for t in [0.5, 2.0, 7.0] {
            assert!(poisson_family(&p0, &p0, t).unwrap().approx_eq(&p0, 1e-14));
        }
    }

    #[test]
    fn violated_identities_are_named() {
        let (p0, p) = example_family(0.5, 0.5, 0.5);
        let not_idem = Mat::from_rows(&[
            vec![0.5, 0.5, 0.0],
            vec![0.5, 0.0, 0.5],
            vec![0.0, 0.5, 0.5],
        ])
        .unwrap();
        match poisson_family(&not_idem, &p, 1.0) {
            Err(Error::InvalidFamily(s)) => assert!(s.starts_with("P0² ≠ P0")),
            other => panic!("{other:?}"),
        }
        match poisson_family(&p0, &not_idem, 1.0) {
            Err(Error::InvalidFamily(s)) => assert!(s.starts_with("P0·P ≠ P")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            poisson_family(&p0, &p, -1.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn poissonian_construction_matches_equal_input_exponential() {
        let params = EqualInputParams::matrix(vec![0.1, 0.15, 0.25]).unwrap();
        let p = ei_make(&params);
        let out = divisible_construct(&Mat::identity(3), &p, 1.0).unwrap();
        assert!(out.embeddable && out.det > 0.0);
        // P − 𝟙 is the equal-input generator with the same input vector
        let q = EqualInputParams::generator(vec![0.1, 0.15, 0.25]).unwrap();
        let want = ei_make(&ei_exp(&q).unwrap());
        assert!(out.matrix.approx_eq(&want, 1e-14));
        assert!(expm(out.generator.as_ref().unwrap()).unwrap().approx_eq(&out.matrix, 1e-14));
    }

    #[test]
    fn pseudo_poissonian_construction_is_singular() {
        let (p0, p) = example_family(0.4, 0.7, 0.2);
        let out = divisible_construct(&p0, &p, 1.5).unwrap();
        assert!(!out.embeddable && out.generator.is_none());
        assert!(out.det.abs() < 1e-15);
        assert!(divisible_construct(&p0, &p, 0.0).unwrap().matrix.approx_eq(&p0, 1e-15));
    }
}
