//! Poisson-type families `M(t) = e^{−t}(P₀ − 𝟙) + e^{t(P − 𝟙)}`: semigroups
//! through an idempotent, infinitely divisible at every time, embeddable only
//! when `P₀ = 𝟙`.

use markov_embed::embedding::{divisible_construct, PoissonFamily};
use markov_embed::Mat;

fn main() -> markov_embed::Result<()> {
    let (alpha, a, b) = (0.5, 0.5, 0.5);
    let c = alpha * a + (1.0 - alpha) * (1.0 - b);
    let p0 = Mat::from_rows(&[
        vec![1.0, 0.0, 0.0],
        vec![alpha, 0.0, 1.0 - alpha],
        vec![0.0, 0.0, 1.0],
    ])?;
    let p = Mat::from_rows(&[
        vec![a, 0.0, 1.0 - a],
        vec![c, 0.0, 1.0 - c],
        vec![1.0 - b, 0.0, b],
    ])?;
    let fam = PoissonFamily::new(p0.clone(), p.clone(), 1e-12)?;
    println!("pseudo-Poissonian family through an idempotent P₀:");
    for t in [0.0, 0.5, 1.0, 2.0, 10.0] {
        let m = fam.at(t)?;
        println!("  t = {t:>4}: det M(t) = {:+.2e}, M(t) = P₀ e^(tA) to {:.1e}", m.determinant(), m.max_diff(&(&p0 * &markov_embed::expm(&fam.generator().scale(t))?)));
    }
    let (s, t) = (0.7, 1.9);
    let law = (&fam.at(s)? * &fam.at(t)?).max_diff(&fam.at(s + t)?);
    println!("  M(s)M(t) − M(s + t) = {law:.1e}");
    let out = divisible_construct(&p0, &p, 1.0)?;
    println!("  M(1) =\n{:.6}  embeddable: {}", out.matrix, out.embeddable);

    let out = divisible_construct(&Mat::identity(3), &p, 1.0)?;
    println!("\nwith P₀ = 𝟙 the same P gives an embeddable M(1), det {:.4}:", out.det);
    print!("{:.6}", out.matrix);
    println!("generator:\n{:.6}", out.generator.expect("Poissonian"));
    Ok(())
}
