//! Two states: the determinant criterion, monotone n-th roots, and every
//! Markov square root of `[[3/4, 1/4], [1/2, 1/2]]`.

use markov_embed::embedding::{all_markov_sqrt2, embed2, root2};
use markov_embed::{expm, Mat};

fn m2(a: f64, b: f64) -> Mat {
    Mat::from_fn(2, |i, j| match (i, j) {
        (0, 0) => 1.0 - a,
        (0, 1) => a,
        (1, 0) => b,
        _ => 1.0 - b,
    })
}

fn main() -> markov_embed::Result<()> {
    println!("verdicts on a coarse (a, b) grid, E = embeddable:");
    for i in (0..=10).rev() {
        let b = i as f64 / 10.0;
        let row: String = (0..=10)
            .map(|j| {
                let a = j as f64 / 10.0;
                if embed2(&m2(a, b)).map(|v| v.is_embeddable()).unwrap_or(false) {
                    'E'
                } else {
                    '.'
                }
            })
            .collect();
        println!("  b = {b:.1}  {row}");
    }

    let m = m2(0.25, 0.5);
    let v = embed2(&m)?;
    let q = v.generator.clone().expect("embeddable");
    println!("\nM =\n{m:.4}generator Q =\n{q:.6}");

    let roots = all_markov_sqrt2(&m)?;
    println!("Markov square roots of M: {}", roots.len());
    for r in &roots {
        let verdict = embed2(r)?;
        println!("{r:.6}  R² − M = {:.1e}, embeddable: {}", (r * r).max_diff(&m), verdict.is_embeddable());
    }
    println!("exp(Q/2) equals the first root to {:.1e}", expm(&q.scale(0.5))?.max_diff(&roots[0]));

    for n in [2, 5, 12] {
        let r = root2(&m, n)?;
        println!("monotone root of order {n:>2}: R^n − M = {:.1e}", r.pow(n).max_diff(&m));
    }
    Ok(())
}
