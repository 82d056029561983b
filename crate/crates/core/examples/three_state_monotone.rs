//! Three-state monotone matrices and generators have real spectra. The
//! discriminant stays non-negative, and a negative determinant rules out
//! every real square root.

use markov_embed::embedding::discriminants3;
use markov_embed::monotone::is_monotone_generator;
use markov_embed::{embed_verdict, expm, is_monotone, sqrt_obstruction, Mat};

fn main() -> markov_embed::Result<()> {
    for alpha in [0.2, 0.5, 0.8] {
        let m = Mat::from_rows(&[
            vec![alpha, 1.0 - alpha, 0.0],
            vec![alpha, 0.0, 1.0 - alpha],
            vec![0.0, alpha, 1.0 - alpha],
        ])?;
        let d = discriminants3(&m)?;
        println!(
            "M(α = {alpha}): monotone {}, Δ = {:.4}, λ± = {:.4} / {:.4}, det = {:.4}",
            is_monotone(&m, 1e-12)?,
            d.value,
            d.pair[0].re,
            d.pair[1].re,
            m.determinant()
        );
        println!(
            "  no real square root: {}; verdict: {:?}",
            sqrt_obstruction(&m)?,
            embed_verdict(&m, 1e-9)?.status
        );
    }

    let q = Mat::from_rows(&[
        vec![-0.5, 0.4, 0.1],
        vec![0.3, -0.5, 0.2],
        vec![0.1, 0.4, -0.5],
    ])?;
    let d = discriminants3(&q)?;
    println!(
        "\nmonotone generator {}: D = {:.4}, μ± = {:.4} / {:.4}",
        is_monotone_generator(&q, 1e-12)?,
        d.value,
        d.pair[0].re,
        d.pair[1].re
    );
    for t in [0.1, 1.0, 10.0] {
        let e = expm(&q.scale(t))?;
        println!("  e^(tQ) at t = {t:>4}: monotone {}", is_monotone(&e, 1e-12)?);
    }

    let v = embed_verdict(&expm(&q)?, 1e-9)?;
    println!(
        "\ne^Q is {:?} via {:?}; recovered generator monotone: {}, unique: {}",
        v.status, v.method, v.monotone_generator, v.unique_in_zero_row_sum_algebra
    );
    print!("{:.10}", v.generator.expect("embeddable"));
    Ok(())
}
