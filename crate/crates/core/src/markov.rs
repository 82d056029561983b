//! Predicates on Markov matrices and generators, stationary vectors and
//! limits of powers.

use nalgebra::{DMatrix, DVector};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Default absolute tolerance on entries and row sums.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub is_markov: bool,
    pub is_generator: bool,
    pub is_idempotent: bool,
    pub is_doubly_stochastic: bool,
    pub det: f64,
    pub trace: f64,
}

pub fn classify(m: &Mat, tol: f64) -> ClassificationReport {
    let is_markov = is_markov(m, tol);
    let sq = m * m;
    let scale = m.norm_inf().max(1.0);
    ClassificationReport {
        is_markov,
        is_generator: is_generator(m, tol),
        is_idempotent: sq.max_diff(m) <= tol * scale * scale,
        is_doubly_stochastic: is_markov && m.col_sums().iter().all(|s| (s - 1.0).abs() <= tol),
        det: m.determinant(),
        trace: m.trace(),
    }
}

pub fn is_markov(m: &Mat, tol: f64) -> bool {
    check_markov(m, tol).is_ok()
}

/// Like [`is_markov`], but says which row fails.
pub fn check_markov(m: &Mat, tol: f64) -> Result<()> {
    for i in 0..m.dim() {
        let row = m.row(i);
        if let Some(j) = row.iter().position(|&x| x < -tol) {
            return Err(Error::NotStochastic {
                index: i,
                detail: format!("entry {j} is {}", row[j]),
            });
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > tol {
            return Err(Error::NotStochastic {
                index: i,
                detail: format!("row sum is {s}"),
            });
        }
    }
    Ok(())
}

pub fn is_generator(m: &Mat, tol: f64) -> bool {
    let d = m.dim();
    (0..d).all(|i| {
        let row = m.row(i);
        row.iter().sum::<f64>().abs() <= tol
            && row.iter().enumerate().all(|(j, &x)| i == j || x >= -tol)
    })
}

/// Extreme points of the simplex of stationary row vectors `x = xM`.
///
/// Each closed communicating class of the transition graph carries exactly
/// one stationary distribution; these are returned ordered by their first
/// state.
pub fn stationary_vectors(m: &Mat, tol: f64) -> Result<Vec<Vec<f64>>> {
    check_markov(m, tol)?;
    let d = m.dim();
    let mut g = DiGraph::<(), ()>::with_capacity(d, d * d);
    let nodes: Vec<_> = (0..d).map(|_| g.add_node(())).collect();
    for i in 0..d {
        for j in 0..d {
            if i != j && m[(i, j)] > tol {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            v.sort_unstable();
            v
        })
        .filter(|class| {
            class
                .iter()
                .all(|&i| (0..d).all(|j| class.contains(&j) || m[(i, j)] <= tol))
        })
        .collect();
    classes.sort_by_key(|c| c[0]);

    classes
        .into_iter()
        .map(|class| {
            let k = class.len();
            // (M_SS − 𝟙)ᵀ x = 0 with the last equation replaced by Σx = 1
            let mut sys = DMatrix::from_fn(k, k, |r, c| {
                m[(class[c], class[r])] - if r == c { 1.0 } else { 0.0 }
            });
            let mut rhs = DVector::zeros(k);
            for c in 0..k {
                sys[(k - 1, c)] = 1.0;
            }
            rhs[k - 1] = 1.0;
            let sol = sys
                .lu()
                .solve(&rhs)
                .ok_or_else(|| Error::InvalidMatrix("singular stationary system".into()))?;
            let mut x = vec![0.0; d];
            for (c, &i) in class.iter().enumerate() {
                x[i] = sol[c].max(0.0);
            }
            let s: f64 = x.iter().sum();
            Ok(x.into_iter().map(|v| v / s).collect())
        })
        .collect()
}

/// `lim Mⁿ` via `M, M², M⁴, …`, or `None` when the sequence of powers does
/// not settle within `max_squarings` steps.
pub fn power_limit(m: &Mat, tol: f64, max_squarings: u32) -> Option<Mat> {
    let mut p = m.clone();
    for _ in 0..max_squarings {
        let next = &p * &p;
        if next.max_diff(&p) <= tol {
            // a settled dyadic subsequence is the limit only if M fixes it
            let fixed = (m * &next).max_diff(&next) <= tol;
            let idempotent = (&next * &next).max_diff(&next) <= tol;
            return (fixed && idempotent).then_some(next);
        }
        p = next;
    }
    None
}
