//! Eigenvalues with clustering, geometric multiplicities and the
//! minimal-polynomial degree.
//!
//! Small cases use closed forms: `d ≤ 2` directly, and `d = 3` whenever all
//! row sums agree, in which case the common row sum `r` is an eigenvalue and
//! the remaining pair comes from the sign-exact discriminant
//! `(m₁₁ − m₂₁ + m₂₃ − m₃₃)² + 4(m₂₃ − m₁₃)(m₂₁ − m₃₁)`.
//! For monotone inputs both factors of the second term are non-negative in
//! floating point too, so real spectra come out exactly real. Everything else
//! goes through a real Schur decomposition.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Default relative tolerance for merging eigenvalues into one cluster.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// Default relative threshold on singular values for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// A group of numerically equal eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub value: Complex64,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// All `d` eigenvalues, sorted by decreasing real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub clusters: Vec<Cluster>,
}

impl Spectrum {
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True when every eigenvalue has `|Im λ| < tol·(1 + |λ|)`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.eigenvalues
            .iter()
            .all(|z| z.im.abs() < tol * (1.0 + z.norm()))
    }

    pub fn is_simple(&self) -> bool {
        self.clusters.iter().all(|c| c.algebraic == 1)
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.clusters.iter().all(|c| c.algebraic == c.geometric)
    }

    /// Every eigenvalue owns a single Jordan block.
    pub fn is_nonderogatory(&self) -> bool {
        self.clusters.iter().all(|c| c.geometric == 1)
    }

    /// The cluster containing `z`, if any, under the same relative tolerance.
    pub fn cluster_near(&self, z: Complex64, tol: f64) -> Option<&Cluster> {
        self.clusters
            .iter()
            .find(|c| (c.value - z).norm() <= tol * (1.0 + z.norm()))
    }
}

/// Minimal-polynomial information.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureInfo {
    pub min_poly_degree: usize,
    pub cyclic: bool,
    pub simple: bool,
    pub diagonalizable: bool,
    /// Set when a rank decision sat within a factor 10 of its threshold, or
    /// when the rank-based and multiplicity-based views disagree.
    pub low_confidence: bool,
}

/// Eigenvalues of `m`, clustered with relative tolerance `cluster_tol`.
pub fn spectrum(m: &Mat, cluster_tol: f64) -> Result<Spectrum> {
    let mut eig = eigenvalues(m)?;
    eig.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    let groups = cluster_indices(&eig, cluster_tol);
    let clusters = groups
        .into_iter()
        .map(|g| {
            let value = g.iter().map(|&k| eig[k]).sum::<Complex64>() / g.len() as f64;
            let geometric = geometric_multiplicity(m, value, cluster_tol).clamp(1, g.len());
            Cluster {
                value,
                algebraic: g.len(),
                geometric,
            }
        })
        .collect();
    Ok(Spectrum {
        eigenvalues: eig,
        clusters,
    })
}

fn eigenvalues(m: &Mat) -> Result<Vec<Complex64>> {
    let d = m.dim();
    match d {
        1 => Ok(vec![Complex64::new(m[(0, 0)], 0.0)]),
        2 => {
            let half_tr = 0.5 * (m[(0, 0)] + m[(1, 1)]);
            let half_gap = 0.5 * (m[(0, 0)] - m[(1, 1)]);
            let disc = half_gap * half_gap + m[(0, 1)] * m[(1, 0)];
            Ok(quadratic_pair(half_tr, disc))
        }
        3 if has_common_row_sum(m) => {
            let r = m.row_sums().iter().sum::<f64>() / 3.0;
            let disc = row_sum_discriminant(m);
            let mut v = quadratic_pair(0.5 * (m.trace() - r), 0.25 * disc);
            v.push(Complex64::new(r, 0.0));
            Ok(v)
        }
        _ => {
            let schur = m
                .inner()
                .clone()
                .try_schur(f64::EPSILON, 200 * d)
                .ok_or(Error::EigenFailure(d))?;
            Ok(schur.complex_eigenvalues().iter().copied().collect())
        }
    }
}

/// `center ± √disc`, complex when `disc < 0`.
fn quadratic_pair(center: f64, disc: f64) -> Vec<Complex64> {
    if disc >= 0.0 {
        let s = disc.sqrt();
        vec![Complex64::new(center + s, 0.0), Complex64::new(center - s, 0.0)]
    } else {
        let s = (-disc).sqrt();
        vec![Complex64::new(center, s), Complex64::new(center, -s)]
    }
}

fn has_common_row_sum(m: &Mat) -> bool {
    let sums = m.row_sums();
    let scale = 1.0 + m.max_abs();
    sums.iter().all(|s| (s - sums[0]).abs() <= 1e-13 * scale)
}

/// Discriminant of the non-trivial eigenvalue pair of a 3×3 matrix with equal
/// row sums; see the module docs.
pub(crate) fn row_sum_discriminant(m: &Mat) -> f64 {
    let a = m[(0, 0)] - m[(1, 0)] + m[(1, 2)] - m[(2, 2)];
    a * a + 4.0 * (m[(1, 2)] - m[(0, 2)]) * (m[(1, 0)] - m[(2, 0)])
}

/// Single-linkage grouping of sorted eigenvalues.
fn cluster_indices(eig: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let n = eig.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0 + eig[i].norm().max(eig[j].norm());
            if (eig[i] - eig[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of_group: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of_group.iter().position(|&g| g == r) {
            Some(k) => groups[k].push(i),
            None => {
                root_of_group.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// `d − rank(M − λ𝟙)`.
fn geometric_multiplicity(m: &Mat, lambda: Complex64, rank_tol: f64) -> usize {
    let d = m.dim();
    let sv: Vec<f64> = if lambda.im == 0.0 {
        let shifted = m.inner() - DMatrix::<f64>::identity(d, d) * lambda.re;
        shifted.singular_values().iter().copied().collect()
    } else {
        let shifted = DMatrix::<Complex64>::from_fn(d, d, |i, j| {
            let x = Complex64::new(m[(i, j)], 0.0);
            if i == j {
                x - lambda
            } else {
                x
            }
        });
        shifted.singular_values().iter().copied().collect()
    };
    d - numerical_rank(&sv, rank_tol).0
}

/// Count of singular values above `tol·σ_max`, and whether any sits within a
/// decade of that threshold.
pub(crate) fn numerical_rank(sv: &[f64], tol: f64) -> (usize, bool) {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return (0, false);
    }
    let cut = tol * smax;
    let rank = sv.iter().filter(|&&s| s > cut).count();
    let ambiguous = sv.iter().any(|&s| s > cut / 10.0 && s < cut * 10.0);
    (rank, ambiguous)
}

/// Degree of the minimal polynomial from the rank of `{𝟙, A, …, A^{d−1}}`
/// with `A = M − 𝟙`, together with multiplicity-based predicates.
pub fn structure(m: &Mat, tol: f64) -> Result<StructureInfo> {
    let d = m.dim();
    let a = m - &Mat::identity(d);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut power = Mat::identity(d);
    for k in 0..d {
        if k > 0 {
            power = &power * &a;
        }
        let norm = power.inner().norm();
        if norm > 0.0 {
            cols.push(power.inner().iter().map(|x| x / norm).collect());
        }
    }
    let basis = DMatrix::from_fn(d * d, cols.len(), |r, c| cols[c][r]);
    let sv: Vec<f64> = basis.singular_values().iter().copied().collect();
    let (rank, ambiguous) = numerical_rank(&sv, tol);
    let degree = rank.max(1);

    let sigma = spectrum(m, DEFAULT_CLUSTER_TOL)?;
    let cyclic = degree == d;
    let spectral_cyclic = sigma.is_nonderogatory();
    Ok(StructureInfo {
        min_poly_degree: degree,
        cyclic,
        simple: sigma.is_simple() && cyclic,
        diagonalizable: sigma.is_diagonalizable(),
        low_confidence: ambiguous
            || cyclic != spectral_cyclic
            || (sigma.is_simple() && !cyclic),
    })
}
