//! Embeddability of equal-input matrices as the summatory parameter grows,
//! and the rotation generator whose exponential reaches the largest
//! constant-input parameter in three states.

use std::f64::consts::PI;

use markov_embed::equal_input::{ei_detect, ei_embed, ei_make};
use markov_embed::markov::DEFAULT_TOL;
use markov_embed::{expm, EqualInputParams, Kind, Mat};

fn main() -> markov_embed::Result<()> {
    println!("constant-input matrices in d = 3 and d = 4:");
    for d in [3, 4] {
        for c in [0.0, 0.4, 0.9, 1.0, 1.1, 1.2] {
            let m = ei_make(&EqualInputParams::constant(Kind::Matrix, d, c)?);
            let v = ei_embed(&m, DEFAULT_TOL)?;
            println!("  d = {d}, c = {c:.1}: {:?} ({})", v.status, v.reason);
        }
    }

    // P is the 3-cycle; (2π/√3)(P − 𝟙) has eigenvalues 0 and −√3π ± iπ.
    let p = Mat::from_rows(&[
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
    ])?;
    let q = (&p - &Mat::identity(3)).scale(2.0 * PI / 3f64.sqrt());
    let m = expm(&q)?;
    let params = ei_detect(&m, 1e-12).expect("circulant exponential is constant-input");
    let c_max = 1.0 + (-PI * 3f64.sqrt()).exp();
    println!("\nexp((2π/√3)(P − 𝟙)) =\n{m:.12}");
    println!(
        "c = {:.15}, 1 + e^(−π√3) = {:.15}, difference {:.2e}",
        params.c(),
        c_max,
        (params.c() - c_max).abs()
    );
    println!(
        "diagonal {:.12} = 1 − 2c/3, off-diagonal {:.12} = c/3",
        m[(0, 0)],
        m[(0, 1)]
    );
    Ok(())
}
