//! The algebra of equal-input matrices `M = (1 − c)𝟙 + C`: products, the
//! graded summatory parameter, powers, limits, exponentials, combined
//! generators, roots and convex decompositions.

use markov_embed::equal_input::{
    ei_bch, ei_decompose, ei_exp, ei_limit, ei_make, ei_power, ei_product, ei_root,
    summatory_product, GradeSign,
};
use markov_embed::{expm, EqualInputParams};

fn main() -> markov_embed::Result<()> {
    let p = EqualInputParams::matrix(vec![0.1, 0.2, 0.3])?;
    let p2 = EqualInputParams::matrix(vec![0.4, 0.5, 0.35])?;
    println!("M  = M_C with c = {:.2}:\n{:.4}", p.c(), ei_make(&p));
    println!("M' = M_C' with c' = {:.2}:\n{:.4}", p2.c(), ei_make(&p2));

    let prod = ei_product(&p, &p2)?;
    let direct = &ei_make(&p) * &ei_make(&p2);
    println!(
        "product parameter c'' = {:.6} (c + c' − cc' = {:.6}), closed form vs matrix product: {:.2e}",
        prod.c(),
        summatory_product(p.c(), p2.c()),
        ei_make(&prod).max_diff(&direct)
    );

    println!("\ngrading by sign(1 − c):");
    for (c, c2) in [(0.5, 0.3), (0.5, 1.4), (1.3, 1.4), (1.0, 0.7)] {
        let f = summatory_product(c, c2);
        println!(
            "  c = {c:.1} ({}), c' = {c2:.1} ({}) -> f = {f:.2} ({})",
            GradeSign::of(c),
            GradeSign::of(c2),
            GradeSign::of(f)
        );
    }

    let pow = ei_power(&p, 10)?;
    println!("\nM^10 has c = {:.6}, matrix power differs by {:.2e}", pow.c(), ei_make(&pow).max_diff(&ei_make(&p).pow(10)));
    if let Some(l) = ei_limit(&p)? {
        println!("lim M^n = C/c:\n{l:.4}");
    }

    let q = EqualInputParams::generator(vec![0.2, 0.1, 0.3])?;
    let q2 = EqualInputParams::generator(vec![0.05, 0.4, 0.15])?;
    let e = ei_exp(&q)?;
    println!(
        "exp of a generator with c = {:.2} is equal-input with c = 1 − e^−c = {:.6} (expm agrees to {:.2e})",
        q.c(),
        e.c(),
        ei_make(&e).max_diff(&expm(&ei_make(&q))?)
    );
    let combined = ei_bch(&q, &q2)?;
    let lhs = &expm(&ei_make(&q))? * &expm(&ei_make(&q2))?;
    println!(
        "combined generator c'' = {:.6} = c + c'; e^Q e^Q' vs e^Q'': {:.2e}",
        combined.c(),
        lhs.max_diff(&expm(&ei_make(&combined))?)
    );

    let m = ei_make(&p);
    let r = ei_root(&m, 3)?;
    println!("\ncube root:\n{r:.6}R^3 − M = {:.2e}", r.pow(3).max_diff(&m));

    let big = EqualInputParams::matrix(vec![0.35, 0.45, 0.5])?;
    let dec = ei_decompose(&ei_make(&big))?;
    println!(
        "\nc = {:.2} > 1 decomposes as {:.3}·𝟙 + {:.3}·G_3 + Σ t_i E_i with t = {:?}",
        big.c(),
        dec.identity,
        dec.max_input,
        dec.columns
    );
    Ok(())
}
