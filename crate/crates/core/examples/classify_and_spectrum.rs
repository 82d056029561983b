//! Classify a few matrices: stochasticity, spectrum, minimal polynomial,
//! stationary vectors and long-run limits.

use markov_embed::markov::{power_limit, stationary_vectors, DEFAULT_TOL};
use markov_embed::spectral::{DEFAULT_CLUSTER_TOL, DEFAULT_RANK_TOL};
use markov_embed::{classify, expm, spectrum, structure, Mat};

fn show(name: &str, m: &Mat) -> markov_embed::Result<()> {
    let report = classify(m, DEFAULT_TOL);
    let sigma = spectrum(m, DEFAULT_CLUSTER_TOL)?;
    let st = structure(m, DEFAULT_RANK_TOL)?;
    println!("== {name}");
    print!("{m:.4}");
    println!(
        "markov={} generator={} idempotent={} doubly_stochastic={} det={:.6} trace={:.6}",
        report.is_markov,
        report.is_generator,
        report.is_idempotent,
        report.is_doubly_stochastic,
        report.det,
        report.trace
    );
    for c in &sigma.clusters {
        println!(
            "  eigenvalue {:.6}{:+.6}i  algebraic {}  geometric {}",
            c.value.re, c.value.im, c.algebraic, c.geometric
        );
    }
    println!(
        "  minimal polynomial degree {}, cyclic {}, simple {}, diagonalizable {}",
        st.min_poly_degree, st.cyclic, st.simple, st.diagonalizable
    );
    if report.is_markov {
        for pi in stationary_vectors(m, DEFAULT_TOL)? {
            let shown: Vec<String> = pi.iter().map(|x| format!("{x:.4}")).collect();
            println!("  stationary vector [{}]", shown.join(", "));
        }
        match power_limit(m, 1e-12, 60) {
            Some(l) => print!("  lim M^n =\n{l:.4}"),
            None => println!("  M^n does not converge"),
        }
    }
    Ok(())
}

fn main() -> markov_embed::Result<()> {
    let alternating = Mat::from_rows(&[
        vec![0.5, 0.5, 0.0],
        vec![0.5, 0.0, 0.5],
        vec![0.0, 0.5, 0.5],
    ])?;
    show("monotone matrix with a negative eigenvalue", &alternating)?;

    let jordan = expm(&Mat::from_rows(&[
        vec![-1.0, 1.0, 0.0],
        vec![0.0, -1.0, 1.0],
        vec![0.0, 0.0, 0.0],
    ])?)?;
    show("exponential of a Jordan-type generator", &jordan)?;

    let reducible = Mat::from_rows(&[
        vec![0.7, 0.3, 0.0, 0.0],
        vec![0.4, 0.6, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 0.0],
        vec![0.2, 0.2, 0.3, 0.3],
    ])?;
    show("two closed classes and a transient state", &reducible)?;

    let cycle = Mat::from_rows(&[
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0],
    ])?;
    show("3-cycle", &cycle)?;
    Ok(())
}
