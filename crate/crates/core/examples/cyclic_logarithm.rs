//! The real logarithm of a cyclic matrix with positive spectrum is a
//! polynomial in `A = M − 𝟙`. Its coefficients solve a confluent Vandermonde
//! system, with closed forms in three states.

use markov_embed::embedding::{
    confluent_vandermonde, confluent_vandermonde_det, gamma, log_coefficients_by_solve,
    real_log_cyclic,
};
use markov_embed::{expm, Mat};

fn main() -> markov_embed::Result<()> {
    println!("γ_n for n = 1..6: {:?}", (1..=6).map(gamma).collect::<Vec<_>>());
    let nodes = [(-0.6, 2), (-0.3, 1), (0.2, 3)];
    let (b, det) = confluent_vandermonde(&nodes)?;
    println!(
        "confluent matrix for nodes {nodes:?}:\n{b:.4}det by LU {det:.6e}, by product formula {:.6e}",
        confluent_vandermonde_det(&nodes)?
    );

    let q0 = Mat::from_rows(&[
        vec![-1.0, 1.0, 0.0],
        vec![0.0, -1.0, 1.0],
        vec![0.0, 0.0, 0.0],
    ])?;
    let m = expm(&q0)?;
    let (r, coeffs) = real_log_cyclic(&m, 1e-9)?.expect("positive spectrum");
    println!(
        "\ndouble eigenvalue e^−1 in one Jordan block: α = {:?} (closed form: {})",
        coeffs.alphas, coeffs.closed_form
    );
    println!("R − Q₀ = {:.2e}", r.max_diff(&q0));

    let q = Mat::from_rows(&[
        vec![-0.6, 0.3, 0.2, 0.1],
        vec![0.1, -0.4, 0.2, 0.1],
        vec![0.05, 0.15, -0.3, 0.1],
        vec![0.0, 0.1, 0.3, -0.4],
    ])?;
    let m = expm(&q)?;
    let (r, coeffs) = real_log_cyclic(&m, 1e-9)?.expect("positive spectrum");
    println!("\nfour states: α = {:.6?}", coeffs.alphas);
    println!("recovered generator:\n{r:.6}R − Q = {:.2e}", r.max_diff(&q));

    let q3 = Mat::from_rows(&[
        vec![-0.3, 0.2, 0.1],
        vec![0.1, -0.25, 0.15],
        vec![0.05, 0.1, -0.15],
    ])?;
    let m3 = expm(&q3)?;
    let (_, closed) = real_log_cyclic(&m3, 1e-9)?.expect("positive spectrum");
    let solved = log_coefficients_by_solve(&m3, 1e-9)?.expect("positive spectrum");
    println!(
        "\nthree states, closed form {:?} vs linear solve {:?}",
        closed.alphas, solved.alphas
    );
    Ok(())
}
