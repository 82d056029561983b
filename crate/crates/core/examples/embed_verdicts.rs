//! One entry point for all resolved classes: the verdict names the method, the
//! generator when one exists, and why it decided.

use markov_embed::equal_input::ei_make;
use markov_embed::{embed_verdict, expm, EqualInputParams, Kind, Mat};

fn rows(r: &[&[f64]]) -> Mat {
    Mat::from_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("valid rows")
}

fn main() -> markov_embed::Result<()> {
    let gallery: Vec<(&str, Mat)> = vec![
        ("two states", rows(&[&[0.75, 0.25], &[0.5, 0.5]])),
        ("swap", rows(&[&[0.0, 1.0], &[1.0, 0.0]])),
        (
            "equal-input, c = 0.6",
            ei_make(&EqualInputParams::matrix(vec![0.1, 0.2, 0.3])?),
        ),
        (
            "constant-input, c = 1.2, d = 3",
            ei_make(&EqualInputParams::constant(Kind::Matrix, 3, 1.2)?),
        ),
        (
            "constant-input, c = 1.2, d = 4",
            ei_make(&EqualInputParams::constant(Kind::Matrix, 4, 1.2)?),
        ),
        (
            "block diagonal, quadratic minimal polynomial",
            rows(&[
                &[0.8, 0.2, 0.0, 0.0],
                &[0.3, 0.7, 0.0, 0.0],
                &[0.0, 0.0, 0.9, 0.1],
                &[0.0, 0.0, 0.4, 0.6],
            ]),
        ),
        (
            "exp of a monotone generator",
            expm(&rows(&[&[-0.5, 0.4, 0.1], &[0.3, -0.5, 0.2], &[0.1, 0.4, -0.5]]))?,
        ),
        (
            "exp of a matrix with a negative rate",
            expm(&rows(&[&[-1.0, 1.05, -0.05], &[0.2, -0.5, 0.3], &[0.1, 0.6, -0.7]]))?,
        ),
        (
            "monotone with negative determinant",
            rows(&[&[0.5, 0.5, 0.0], &[0.5, 0.0, 0.5], &[0.0, 0.5, 0.5]]),
        ),
        (
            "3-cycle",
            rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]]),
        ),
    ];
    for (name, m) in gallery {
        let v = embed_verdict(&m, 1e-9)?;
        println!("{name}: {:?} via {:?}", v.status, v.method);
        println!("  {}", v.reason);
        if let Some(q) = &v.generator {
            println!(
                "  generator monotone {}, unique {}, exp(Q) − M = {:.1e}",
                v.monotone_generator,
                v.unique_in_zero_row_sum_algebra,
                expm(q)?.max_diff(&m)
            );
        }
    }
    Ok(())
}
