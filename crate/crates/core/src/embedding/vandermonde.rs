//! Confluent Vandermonde systems for the coefficients of a polynomial
//! logarithm.
//!
//! A node `μ` of multiplicity `m` contributes `m` rows: the values
//! `μ, μ², …, μⁿ` and their first `m − 1` derivatives in `μ`. The powers start
//! at one because the logarithm has no constant term.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Solves with a larger 2-norm condition number are refused.
pub const MAX_CONDITION: f64 = 1e12;

fn check_nodes(nodes: &[(f64, usize)]) -> Result<usize> {
    if nodes.is_empty() {
        return Err(Error::InvalidParameter("no interpolation nodes".into()));
    }
    for (k, &(mu, m)) in nodes.iter().enumerate() {
        if m == 0 {
            return Err(Error::InvalidParameter(format!("node {mu} has multiplicity 0")));
        }
        if mu == 0.0 || !mu.is_finite() {
            return Err(Error::InvalidParameter(format!("node {mu} must be finite and non-zero")));
        }
        for &(nu, _) in &nodes[..k] {
            if (mu - nu).abs() <= 1e-12 * mu.abs().max(nu.abs()) {
                return Err(Error::DuplicateNode(mu));
            }
        }
    }
    Ok(nodes.iter().map(|&(_, m)| m).sum())
}

/// `ℓ(ℓ−1)⋯(ℓ−k+1)`.
fn falling(l: usize, k: usize) -> f64 {
    (0..k).map(|i| (l - i) as f64).product()
}

fn build(nodes: &[(f64, usize)], n: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(n, n);
    let mut row = 0;
    for &(mu, m) in nodes {
        for k in 0..m {
            for l in 1..=n {
                if l >= k {
                    b[(row, l - 1)] = falling(l, k) * mu.powi((l - k) as i32);
                }
            }
            row += 1;
        }
    }
    b
}

/// The same rows in the basis `x(x − c)^{j−1}`, which is unit triangular over
/// `x, x², …, xⁿ` and so leaves the determinant unchanged. Centring `c` on the
/// nodes keeps clustered nodes from swamping the elimination.
fn build_shifted(nodes: &[(f64, usize)], n: usize, c: f64) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(n, n);
    let mut row = 0;
    for &(mu, m) in nodes {
        let y = mu - c;
        for k in 0..m {
            for j in 1..=n {
                let g = |r: usize| {
                    if j > r {
                        falling(j - 1, r) * y.powi((j - 1 - r) as i32)
                    } else {
                        0.0
                    }
                };
                let lower = if k > 0 { k as f64 * g(k - 1) } else { 0.0 };
                b[(row, j - 1)] = mu * g(k) + lower;
            }
            row += 1;
        }
    }
    b
}

/// The matrix and its determinant from an LU factorisation.
pub fn confluent_vandermonde(nodes: &[(f64, usize)]) -> Result<(Mat, f64)> {
    let n = check_nodes(nodes)?;
    let centre = nodes.iter().map(|&(mu, m)| mu * m as f64).sum::<f64>() / n as f64;
    let det = build_shifted(nodes, n, centre).full_piv_lu().determinant();
    Ok((Mat::from_inner(build(nodes, n))?, det))
}

/// `Π μᵢ^{mᵢ} γ_{mᵢ} · Π_{k>ℓ} (μ_k − μ_ℓ)^{m_k m_ℓ}`.
pub fn confluent_vandermonde_det(nodes: &[(f64, usize)]) -> Result<f64> {
    check_nodes(nodes)?;
    let mut det = 1.0;
    for (k, &(mu, m)) in nodes.iter().enumerate() {
        det *= mu.powi(m as i32) * gamma(m);
        for &(nu, mn) in &nodes[..k] {
            det *= (mu - nu).powi((m * mn) as i32);
        }
    }
    Ok(det)
}

/// `γ_n = 1!·2!⋯(n−1)!`.
pub fn gamma(n: usize) -> f64 {
    (1..n).map(|k| falling(k, k)).product()
}

/// Elementary symmetric polynomials `e₀, …, e_k` of `xs`.
fn elementary_symmetric(xs: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; xs.len() + 1];
    e[0] = 1.0;
    for (k, &x) in xs.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

/// Closed-form inverse for distinct simple nodes:
/// `(B⁻¹)_ij = (−1)^{i−1} e_{n−i}(μ without μ_j) / (μ_j Π_{k≠j} (μ_k − μ_j))`.
pub fn simple_vandermonde_inverse(mus: &[f64]) -> Result<Mat> {
    let nodes: Vec<_> = mus.iter().map(|&mu| (mu, 1)).collect();
    let n = check_nodes(&nodes)?;
    let mut inv = DMatrix::zeros(n, n);
    for j in 0..n {
        let others: Vec<f64> = (0..n).filter(|&k| k != j).map(|k| mus[k]).collect();
        let e = elementary_symmetric(&others);
        let den = mus[j] * others.iter().map(|&mk| mk - mus[j]).product::<f64>();
        for i in 1..=n {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            inv[(i - 1, j)] = sign * e[n - i] / den;
        }
    }
    Mat::from_inner(inv)
}

/// Coefficients `α₁, …, α_n` of `Σ α_ℓ x^ℓ` agreeing with `log(1 + x)` and its
/// first `m − 1` derivatives at every node, with `k`-th derivative
/// `(−1)^{k−1}(k−1)!/(1 + μ)^k`.
pub fn log_coefficients_vandermonde(nodes: &[(f64, usize)]) -> Result<Vec<f64>> {
    let n = check_nodes(nodes)?;
    if let Some(&(mu, _)) = nodes.iter().find(|(mu, _)| *mu <= -1.0) {
        return Err(Error::InvalidParameter(format!(
            "node {mu} ≤ −1 is outside the domain of log(1 + x)"
        )));
    }
    let b = build(nodes, n);
    let sv = b.singular_values();
    let (smax, smin) = sv.iter().fold((0.0f64, f64::INFINITY), |(a, b), &s| (a.max(s), b.min(s)));
    let cond = smax / smin;
    if cond.is_nan() || cond > MAX_CONDITION {
        return Err(Error::IllConditioned(cond));
    }
    let mut rhs = Vec::with_capacity(n);
    for &(mu, m) in nodes {
        rhs.push(mu.ln_1p());
        for k in 1..m {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            rhs.push(sign * falling(k - 1, k - 1) / (1.0 + mu).powi(k as i32));
        }
    }
    let x = b
        .lu()
        .solve(&nalgebra::DVector::from_vec(rhs))
        .ok_or(Error::IllConditioned(f64::INFINITY))?;
    Ok(x.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{log_coefficients_confluent3, log_coefficients_simple3};

    #[test]
    fn gamma_sequence() {
        let g: Vec<f64> = (1..=6).map(gamma).collect();
        assert_eq!(g, vec![1.0, 1.0, 2.0, 12.0, 288.0, 34560.0]);
    }

    #[test]
    fn two_simple_nodes() {
        let nodes = [(-0.5, 1), (-0.25, 1)];
        let (_, det) = confluent_vandermonde(&nodes).unwrap();
        assert!((det - 0.03125).abs() < 1e-15);
        assert_eq!(confluent_vandermonde_det(&nodes).unwrap(), 0.03125);
    }

    #[test]
    fn one_triple_node() {
        let mu = -0.3;
        let (b, det) = confluent_vandermonde(&[(mu, 3)]).unwrap();
        assert_eq!(b.row(1), vec![1.0, 2.0 * mu, 3.0 * mu.powi(2)]);
        assert_eq!(b.row(2), vec![0.0, 2.0, 6.0 * mu]);
        assert!((det - 2.0 * mu * mu * mu).abs() < 1e-15);
    }

    #[test]
    fn mixed_nodes_match_the_product_formula() {
        let nodes = [(-0.7, 2), (-0.2, 1), (0.4, 3)];
        let (_, det) = confluent_vandermonde(&nodes).unwrap();
        let want = confluent_vandermonde_det(&nodes).unwrap();
        assert!(((det - want) / want).abs() < 1e-12);
    }

    #[test]
    fn closed_form_inverse() {
        let mus = [-0.8, -0.5, -0.1, 0.3];
        let nodes: Vec<_> = mus.iter().map(|&m| (m, 1)).collect();
        let (b, _) = confluent_vandermonde(&nodes).unwrap();
        let inv = simple_vandermonde_inverse(&mus).unwrap();
        let lu_inv = Mat::from_inner(b.inner().clone().try_inverse().unwrap()).unwrap();
        assert!(inv.approx_eq(&lu_inv, 1e-9));
        assert!((&b * &inv).approx_eq(&Mat::identity(4), 1e-12));
    }

    #[test]
    fn rejects_bad_nodes() {
        assert_eq!(
            confluent_vandermonde(&[(-0.5, 1), (-0.5, 2)]).unwrap_err(),
            Error::DuplicateNode(-0.5)
        );
        assert!(confluent_vandermonde(&[(0.0, 1)]).is_err());
        assert!(confluent_vandermonde(&[(-0.5, 0)]).is_err());
        assert!(log_coefficients_vandermonde(&[(-1.5, 1)]).is_err());
    }

    #[test]
    fn near_duplicate_nodes_are_ill_conditioned() {
        let nodes = [(-0.5, 1), (-0.5 + 1e-12, 1), (-0.2, 1)];
        assert!(matches!(
            log_coefficients_vandermonde(&nodes),
            Err(Error::IllConditioned(_))
        ));
    }

    #[test]
    fn solve_agrees_with_three_state_closed_forms() {
        let (a, b) = log_coefficients_simple3(-0.35, -0.8);
        let x = log_coefficients_vandermonde(&[(-0.35, 1), (-0.8, 1)]).unwrap();
        assert!((x[0] - a).abs() < 1e-13 && (x[1] - b).abs() < 1e-13);

        let (a, b) = log_coefficients_confluent3(-0.6);
        let x = log_coefficients_vandermonde(&[(-0.6, 2)]).unwrap();
        assert!((x[0] - a).abs() < 1e-13 && (x[1] - b).abs() < 1e-13);
    }

    #[test]
    fn higher_derivative_rows() {
        // log(1+x) matched to third order at one node
        let mu = -0.4;
        let x = log_coefficients_vandermonde(&[(mu, 3)]).unwrap();
        let p = |t: f64| x[0] * t + x[1] * t * t + x[2] * t * t * t;
        let dp = |t: f64| x[0] + 2.0 * x[1] * t + 3.0 * x[2] * t * t;
        let ddp = |t: f64| 2.0 * x[1] + 6.0 * x[2] * t;
        assert!((p(mu) - mu.ln_1p()).abs() < 1e-13);
        assert!((dp(mu) - 1.0 / (1.0 + mu)).abs() < 1e-13);
        assert!((ddp(mu) + 1.0 / ((1.0 + mu) * (1.0 + mu))).abs() < 1e-12);
    }

    #[test]
    fn centred_basis_keeps_the_determinant() {
        let nodes = [(-0.4, 2), (0.3, 1), (0.6, 2)];
        let n = 5;
        let plain = build(&nodes, n).lu().determinant();
        for c in [0.0, 0.1, -0.7] {
            let shifted = build_shifted(&nodes, n, c).lu().determinant();
            assert!((shifted - plain).abs() <= 1e-12 * plain.abs(), "c = {c}");
        }
        assert!((build_shifted(&nodes, n, 0.0) - build(&nodes, n)).amax() < 1e-15);
    }
}
