//! Stochastic order, monotone matrices and generators, and the {0,1}
//! extremals of the monotone polytope.
//!
//! `x ≼ y` when every tail sum of `x` is at most the matching tail sum of `y`.
//! A matrix with equal row sums is monotone when its rows increase in this
//! order from top to bottom, which is the same as `T⁻¹MT ≥ 0` for the
//! lower-triangular all-ones matrix `T`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::markov::DEFAULT_TOL;
use crate::matrix::Mat;

/// Entries at or below this count as zero during the greedy decomposition.
pub const DECOMPOSE_ZERO: f64 = 1e-12;

/// `x ≼ y` with tolerance `1e−9` on the tail sums.
pub fn dominates(x: &[f64], y: &[f64]) -> Result<bool> {
    dominates_with_tol(x, y, DEFAULT_TOL)
}

pub fn dominates_with_tol(x: &[f64], y: &[f64], tol: f64) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimMismatch(x.len(), y.len()));
    }
    if x.iter().chain(y).any(|&v| v < -tol) {
        return Err(Error::InvalidParameter("vectors must be non-negative".into()));
    }
    let (sx, sy): (f64, f64) = (x.iter().sum(), y.iter().sum());
    if (sx - sy).abs() > tol {
        return Err(Error::NotComparableLevels(sx, sy));
    }
    let (mut tx, mut ty) = (0.0, 0.0);
    for m in (1..x.len()).rev() {
        tx += x[m];
        ty += y[m];
        if tx > ty + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lower-triangular all-ones matrix `T`.
pub fn t_matrix(d: usize) -> Mat {
    Mat::from_fn(d, |i, j| if i >= j { 1.0 } else { 0.0 })
}

/// `T⁻¹`: ones on the diagonal, minus ones just below it.
pub fn t_inverse(d: usize) -> Mat {
    Mat::from_fn(d, |i, j| {
        if i == j {
            1.0
        } else if i == j + 1 {
            -1.0
        } else {
            0.0
        }
    })
}

/// `T⁻¹ M T`.
pub fn t_conjugate(m: &Mat) -> Mat {
    let d = m.dim();
    &(&t_inverse(d) * m) * &t_matrix(d)
}

fn common_row_sum(m: &Mat, tol: f64) -> Result<f64> {
    let sums = m.row_sums();
    if sums.iter().any(|s| (s - sums[0]).abs() > tol) {
        return Err(Error::NotLevel);
    }
    Ok(sums.iter().sum::<f64>() / sums.len() as f64)
}

fn check_level_nonnegative(m: &Mat, tol: f64) -> Result<f64> {
    let b = common_row_sum(m, tol)?;
    if m.inner().iter().any(|&x| x < -tol) {
        return Err(Error::InvalidMatrix("monotonicity needs non-negative entries".into()));
    }
    Ok(b)
}

/// `T⁻¹MT ≥ 0` for a non-negative matrix with equal row sums.
pub fn is_monotone(m: &Mat, tol: f64) -> Result<bool> {
    check_level_nonnegative(m, tol)?;
    Ok(t_conjugate(m).inner().iter().all(|&x| x >= -tol))
}

/// Monotonicity by comparing every pair of rows in the stochastic order.
pub fn is_monotone_by_domination(m: &Mat, tol: f64) -> Result<bool> {
    check_level_nonnegative(m, tol)?;
    let rows = m.rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if !dominates_with_tol(&rows[i], &rows[j], tol)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Off-diagonal entries of `T⁻¹QT` are non-negative.
pub fn is_monotone_generator(q: &Mat, tol: f64) -> Result<bool> {
    common_row_sum(q, tol)?;
    let c = t_conjugate(q);
    let d = q.dim();
    Ok((0..d).all(|i| (0..d).all(|j| i == j || c[(i, j)] >= -tol)))
}

/// Index `(ℓ₁, …, ℓ_d)` of the {0,1} matrix whose row `i` is `e_{ℓᵢ}`.
///
/// Stored zero-based; [`ExtremalIndex::labels`] gives the one-based tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtremalIndex(Vec<usize>);

impl ExtremalIndex {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        let d = targets.len();
        if d == 0 || targets.iter().any(|&t| t >= d) {
            return Err(Error::InvalidParameter(format!(
                "{targets:?} is not a map of 0..{d} into itself"
            )));
        }
        Ok(Self(targets))
    }

    /// From one-based labels such as `[1, 1, 2]`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidParameter("labels start at 1".into()));
        }
        Self::new(labels.iter().map(|l| l - 1).collect())
    }

    /// `(1, 2, …, d)`, the identity matrix.
    pub fn identity(d: usize) -> Self {
        Self((0..d).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn targets(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|t| t + 1).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn matrix(&self) -> Mat {
        Mat::from_fn(self.dim(), |i, j| if self.0[i] == j { 1.0 } else { 0.0 })
    }
}

impl fmt::Display for ExtremalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "({})", labels.join(","))
    }
}

impl fmt::Debug for ExtremalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{self}")
    }
}

impl Serialize for ExtremalIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// All non-decreasing indices in lexicographic order; there are `C(2d−1, d)`.
pub fn monotone_extremals(d: usize) -> Vec<ExtremalIndex> {
    fn walk(d: usize, prefix: &mut Vec<usize>, out: &mut Vec<ExtremalIndex>) {
        if prefix.len() == d {
            out.push(ExtremalIndex(prefix.clone()));
            return;
        }
        let lo = prefix.last().copied().unwrap_or(0);
        for t in lo..d {
            prefix.push(t);
            walk(d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        walk(d, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

/// All `d^d` indices in lexicographic order.
pub fn all_extremals(d: usize) -> Vec<ExtremalIndex> {
    let total = d.pow(d as u32);
    (0..total)
        .map(|mut k| {
            let mut t = vec![0; d];
            for slot in t.iter_mut().rev() {
                *slot = k % d;
                k /= d;
            }
            ExtremalIndex(t)
        })
        .collect()
}

/// `E_k E_l = E_{(l_{k₁}, …, l_{k_d})}`.
pub fn extremal_mul(k: &ExtremalIndex, l: &ExtremalIndex) -> Result<ExtremalIndex> {
    if k.dim() != l.dim() {
        return Err(Error::DimMismatch(k.dim(), l.dim()));
    }
    Ok(ExtremalIndex(k.0.iter().map(|&ki| l.0[ki]).collect()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Term {
    pub weight: f64,
    pub index: ExtremalIndex,
}

/// A non-negative combination of {0,1} extremals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub terms: Vec<Term>,
}

impl Decomposition {
    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    pub fn recombine(&self, d: usize) -> Mat {
        let mut m = vec![0.0; d * d];
        for t in &self.terms {
            for (i, &j) in t.index.0.iter().enumerate() {
                m[i * d + j] += t.weight;
            }
        }
        Mat::from_row_slice(d, &m).expect("finite weights")
    }
}

/// Greedy decomposition of a monotone matrix into monotone extremals.
///
/// Each step walks the staircase of the remaining matrix: the leftmost
/// non-zero column, its lowest positive row, then the leftmost column that is
/// non-zero below that row, and so on to the last row. Rows down to each
/// staircase corner point at that corner's column. The resulting extremal is
/// subtracted with the largest weight that keeps the remainder non-negative,
/// which zeroes at least one entry, so there are at most `d²` steps.
pub fn monotone_decompose(b: &Mat) -> Result<Decomposition> {
    let d = b.dim();
    let level = check_level_nonnegative(b, DEFAULT_TOL)?;
    if !is_monotone(b, DEFAULT_TOL)? {
        return Err(Error::NotMonotone);
    }
    debug_assert!(b.trace() >= level - DEFAULT_TOL * d as f64);

    let mut work: Vec<f64> = b.rows().concat().into_iter().map(|x| x.max(0.0)).collect();
    let at = |w: &[f64], i: usize, j: usize| w[i * d + j];
    let mut terms: Vec<Term> = Vec::new();

    for _ in 0..=d * d {
        if work.iter().all(|&x| x <= DECOMPOSE_ZERO) {
            break;
        }
        let mut targets = vec![0usize; d];
        let mut start = 0;
        while start < d {
            let Some(j) = (0..d).find(|&j| (start..d).any(|i| at(&work, i, j) > DECOMPOSE_ZERO))
            else {
                break;
            };
            let corner = (start..d)
                .rev()
                .find(|&i| at(&work, i, j) > DECOMPOSE_ZERO)
                .expect("column has a positive entry");
            targets[start..=corner].fill(j);
            start = corner + 1;
        }
        if start < d {
            // only rounding noise is left in the lower rows
            break;
        }
        let alpha = (0..d)
            .map(|i| at(&work, i, targets[i]))
            .fold(f64::INFINITY, f64::min);
        for (i, &j) in targets.iter().enumerate() {
            let x = &mut work[i * d + j];
            *x = (*x - alpha).max(0.0);
        }
        terms.push(Term {
            weight: alpha,
            index: ExtremalIndex(targets),
        });
    }
    assert!(terms.len() <= d * d, "greedy decomposition exceeded d² steps");

    let total: f64 = terms.iter().map(|t| t.weight).sum();
    if total > 0.0 {
        let s = level / total;
        for t in &mut terms {
            t.weight *= s;
        }
    }
    Ok(Decomposition { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::expm;

    fn m(rows: &[&[f64]]) -> Mat {
        Mat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn idx(l: &[usize]) -> ExtremalIndex {
        ExtremalIndex::from_labels(l).unwrap()
    }

    #[test]
    fn domination_examples() {
        assert!(dominates(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).unwrap());
        assert!(!dominates(&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]).unwrap());
        let x = [0.2, 0.5, 0.3];
        assert!(dominates(&x, &x).unwrap());
        assert!(dominates(&[0.5, 0.5, 0.0], &[0.5, 0.0, 0.5]).unwrap());
        assert!(matches!(
            dominates(&[1.0, 0.0], &[0.5, 0.0]),
            Err(Error::NotComparableLevels(..))
        ));
    }

    #[test]
    fn t_inverse_inverts_t() {
        for d in 1..6 {
            assert_eq!(&t_matrix(d) * &t_inverse(d), Mat::identity(d));
        }
    }

    #[test]
    fn three_state_matrix_criterion() {
        // monotone iff m33 ≥ m23 ≥ m13 and m11 ≥ m21 ≥ m31
        let good = m(&[&[0.6, 0.3, 0.1], &[0.3, 0.4, 0.3], &[0.1, 0.3, 0.6]]);
        assert!(is_monotone(&good, DEFAULT_TOL).unwrap());
        let bad_right = m(&[&[0.5, 0.1, 0.4], &[0.3, 0.4, 0.3], &[0.1, 0.3, 0.6]]);
        assert!(!is_monotone(&bad_right, DEFAULT_TOL).unwrap());
        let bad_left = m(&[&[0.6, 0.3, 0.1], &[0.3, 0.4, 0.3], &[0.4, 0.0, 0.6]]);
        assert!(!is_monotone(&bad_left, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn three_state_generator_criterion() {
        // monotone iff q23 ≥ q13 and q21 ≥ q31
        let good = m(&[&[-0.5, 0.4, 0.1], &[0.3, -0.5, 0.2], &[0.1, 0.4, -0.5]]);
        assert!(is_monotone_generator(&good, DEFAULT_TOL).unwrap());
        let bad = m(&[&[-0.5, 0.2, 0.3], &[0.3, -0.5, 0.2], &[0.1, 0.4, -0.5]]);
        assert!(!is_monotone_generator(&bad, DEFAULT_TOL).unwrap());
        let bad = m(&[&[-0.5, 0.4, 0.1], &[0.1, -0.3, 0.2], &[0.2, 0.3, -0.5]]);
        assert!(!is_monotone_generator(&bad, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn two_state_generators_are_monotone() {
        for (a, b) in [(0.0, 0.0), (1.0, 3.0), (10.0, 0.5)] {
            let q = m(&[&[-a, a], &[b, -b]]);
            assert!(is_monotone_generator(&q, DEFAULT_TOL).unwrap());
        }
    }

    #[test]
    fn unequal_rows_are_rejected() {
        let q = m(&[&[0.5, 0.5], &[0.5, 0.0]]);
        assert_eq!(is_monotone(&q, DEFAULT_TOL), Err(Error::NotLevel));
    }

    #[test]
    fn extremal_counts() {
        assert_eq!(
            monotone_extremals(2),
            vec![idx(&[1, 1]), idx(&[1, 2]), idx(&[2, 2])]
        );
        assert_eq!(monotone_extremals(3).len(), 10);
        assert_eq!(monotone_extremals(4).len(), 35);
        assert_eq!(all_extremals(3).len(), 27);
        assert!(monotone_extremals(4).iter().all(|e| e.is_monotone()));
    }

    #[test]
    fn extremal_products() {
        assert_eq!(extremal_mul(&idx(&[1, 1, 2]), &idx(&[2, 3, 3])).unwrap(), idx(&[2, 2, 3]));
        let e = idx(&[2, 3, 3]);
        assert_eq!(extremal_mul(&e, &e).unwrap(), idx(&[3, 3, 3]));
        for l in all_extremals(3) {
            assert_eq!(extremal_mul(&ExtremalIndex::identity(3), &l).unwrap(), l);
        }
    }

    #[test]
    fn extremal_product_matches_matrices_on_all_three_state_pairs() {
        let all = all_extremals(3);
        for k in &all {
            for l in &all {
                let p = extremal_mul(k, l).unwrap();
                assert_eq!(p.matrix(), &k.matrix() * &l.matrix());
            }
        }
    }

    #[test]
    fn decomposes_alternating_family() {
        let b = m(&[&[0.5, 0.5, 0.0], &[0.5, 0.0, 0.5], &[0.0, 0.5, 0.5]]);
        let dec = monotone_decompose(&b).unwrap();
        assert_eq!(
            dec.terms,
            vec![
                Term { weight: 0.5, index: idx(&[1, 1, 2]) },
                Term { weight: 0.5, index: idx(&[2, 3, 3]) },
            ]
        );
    }

    #[test]
    fn extremals_decompose_to_themselves() {
        assert_eq!(
            monotone_decompose(&Mat::identity(3)).unwrap().terms,
            vec![Term { weight: 1.0, index: idx(&[1, 2, 3]) }]
        );
        for e in monotone_extremals(4) {
            let dec = monotone_decompose(&e.matrix()).unwrap();
            assert_eq!(dec.terms, vec![Term { weight: 1.0, index: e }]);
        }
    }

    #[test]
    fn scaled_matrices_keep_their_level() {
        let b = m(&[&[1.2, 0.6, 0.2], &[0.6, 0.8, 0.6], &[0.2, 0.6, 1.2]]);
        let dec = monotone_decompose(&b).unwrap();
        assert!((dec.total_weight() - 2.0).abs() < 1e-15);
        assert!(dec.recombine(3).approx_eq(&b, 1e-15));
    }

    #[test]
    fn non_monotone_input_is_refused() {
        let b = m(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(monotone_decompose(&b), Err(Error::NotMonotone));
    }

    #[test]
    fn monotone_generator_gives_monotone_semigroup() {
        let q = m(&[&[-0.5, 0.4, 0.1], &[0.3, -0.5, 0.2], &[0.1, 0.4, -0.5]]);
        for t in [0.1, 1.0, 5.0] {
            let e = expm(&q.scale(t)).unwrap();
            assert!(is_monotone(&e, DEFAULT_TOL).unwrap());
        }
    }
}
