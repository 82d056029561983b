//! Stochastic monotonicity: the triangular conjugation test, the monotone
//! {0,1} extremals with their spectra, and greedy convex decompositions.

use markov_embed::monotone::{
    dominates, extremal_mul, is_monotone_by_domination, monotone_extremals, t_conjugate,
};
use markov_embed::spectral::{DEFAULT_CLUSTER_TOL, DEFAULT_RANK_TOL};
use markov_embed::{is_monotone, monotone_decompose, spectrum, structure, ExtremalIndex, Mat};

fn main() -> markov_embed::Result<()> {
    let x = [0.5, 0.3, 0.2];
    let y = [0.2, 0.3, 0.5];
    println!("{x:?} ≼ {y:?}: {}", dominates(&x, &y)?);

    let m = Mat::from_rows(&[
        vec![0.6, 0.3, 0.1],
        vec![0.3, 0.4, 0.3],
        vec![0.1, 0.3, 0.6],
    ])?;
    println!("\nT⁻¹MT =\n{:.3}", t_conjugate(&m));
    println!(
        "monotone by conjugation: {}, by pairwise rows: {}",
        is_monotone(&m, 1e-12)?,
        is_monotone_by_domination(&m, 1e-12)?
    );

    println!("\nmonotone extremals for d = 3:");
    println!("{:<10} {:<28} {:>4} {:>10}  E²", "index", "spectrum", "deg", "idempotent");
    for e in monotone_extremals(3) {
        let mat = e.matrix();
        let sigma = spectrum(&mat, DEFAULT_CLUSTER_TOL)?;
        let eig: Vec<String> = sigma.eigenvalues.iter().map(|z| format!("{:.0}", z.re)).collect();
        let st = structure(&mat, DEFAULT_RANK_TOL)?;
        let sq = extremal_mul(&e, &e)?;
        println!(
            "{:<10} {:<28} {:>4} {:>10}  {}",
            e.to_string(),
            format!("{{{}}}", eig.join(", ")),
            st.min_poly_degree,
            sq == e,
            sq
        );
    }

    println!("\ngreedy decomposition of M(α) = α E(1,1,2) + (1 − α) E(2,3,3):");
    let e112 = ExtremalIndex::from_labels(&[1, 1, 2])?.matrix();
    let e233 = ExtremalIndex::from_labels(&[2, 3, 3])?.matrix();
    for alpha in [0.25, 0.5, 0.75] {
        let m = e112.scale(alpha) + e233.scale(1.0 - alpha);
        let dec = monotone_decompose(&m)?;
        let terms: Vec<String> = dec
            .terms
            .iter()
            .map(|t| format!("{:.2}·E{}", t.weight, t.index))
            .collect();
        println!("  α = {alpha}: {}", terms.join(" + "));
    }

    let dec = monotone_decompose(&m)?;
    println!("\nthe symmetric example above uses {} extremals:", dec.terms.len());
    for t in &dec.terms {
        println!("  {:.3} · E{}", t.weight, t.index);
    }
    println!("recombination error {:.2e}", dec.recombine(3).max_diff(&m));
    Ok(())
}
