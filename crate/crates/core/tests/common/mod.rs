//! Random samplers shared by the integration tests.
#![allow(dead_code)]

use markov_embed::Mat;
use rand::seq::SliceRandom;
use rand::Rng;

/// A probability vector with exponential weights, so every simplex point is
/// reachable.
pub fn random_distribution<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

/// Like [`random_distribution`], but some entries are forced to zero.
pub fn sparse_distribution<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let mut p = random_distribution(rng, d);
        for x in p.iter_mut() {
            if rng.gen_bool(0.3) {
                *x = 0.0;
            }
        }
        let s: f64 = p.iter().sum();
        if s > 0.0 {
            return p.iter().map(|x| x / s).collect();
        }
    }
}

pub fn random_markov<R: Rng>(rng: &mut R, d: usize) -> Mat {
    let rows: Vec<Vec<f64>> = (0..d).map(|_| random_distribution(rng, d)).collect();
    Mat::from_rows(&rows).unwrap()
}

/// Random rows, then each column of tail sums sorted ascending down the rows,
/// which is exactly the monotonicity condition.
pub fn random_monotone<R: Rng>(rng: &mut R, d: usize) -> Mat {
    let mut tails: Vec<Vec<f64>> = (0..d)
        .map(|_| {
            let p = if rng.gen_bool(0.2) {
                sparse_distribution(rng, d)
            } else {
                random_distribution(rng, d)
            };
            let mut t = vec![0.0; d];
            let mut acc = 0.0;
            for j in (0..d).rev() {
                acc += p[j];
                t[j] = acc;
            }
            t[0] = 1.0;
            t
        })
        .collect();
    for j in 1..d {
        let mut col: Vec<f64> = tails.iter().map(|t| t[j]).collect();
        col.sort_by(f64::total_cmp);
        for (t, x) in tails.iter_mut().zip(col) {
            t[j] = x;
        }
    }
    Mat::from_fn(d, |i, j| {
        let next = if j + 1 < d { tails[i][j + 1] } else { 0.0 };
        (tails[i][j] - next).max(0.0)
    })
}

/// `r(M − 𝟙)` with `M` monotone.
pub fn random_monotone_generator<R: Rng>(rng: &mut R, d: usize) -> Mat {
    let r = rng.gen_range(0.1..2.0);
    (&random_monotone(rng, d) - &Mat::identity(d)).scale(r)
}

/// Independent uniform off-diagonal rates in `[0, scale)`.
pub fn random_generator<R: Rng>(rng: &mut R, d: usize, scale: f64) -> Mat {
    let mut q = Mat::from_fn(d, |i, j| if i == j { 0.0 } else { rng.gen::<f64>() * scale });
    let sums = q.row_sums();
    q = &q - &Mat::from_fn(d, |i, j| if i == j { sums[i] } else { 0.0 });
    q
}

/// `(c_1, …, c_d)` with sum `c`.
pub fn split<R: Rng>(rng: &mut R, d: usize, c: f64) -> Vec<f64> {
    random_distribution(rng, d).iter().map(|x| x * c).collect()
}

/// A valid pair `(P₀, P)`: `P₀ = UΠ` with `Π` the stationary rows of the
/// recurrent classes and `U` the absorption weights, and `P = UVΠ` with `V` a
/// random Markov matrix on the classes. With `poissonian`, `P₀ = 𝟙`.
pub fn random_family<R: Rng>(rng: &mut R, d: usize, poissonian: bool) -> (Mat, Mat) {
    let (k, class_of): (usize, Vec<Option<usize>>) = if poissonian {
        (d, (0..d).map(Some).collect())
    } else {
        let k = rng.gen_range(1..=d);
        let mut states: Vec<usize> = (0..d).collect();
        states.shuffle(rng);
        let mut class_of = vec![None; d];
        for (c, &s) in states.iter().take(k).enumerate() {
            class_of[s] = Some(c);
        }
        for &s in &states[k..] {
            if rng.gen_bool(0.5) {
                class_of[s] = Some(rng.gen_range(0..k));
            }
        }
        (k, class_of)
    };
    let mut pi = vec![vec![0.0; d]; k];
    for (c, row) in pi.iter_mut().enumerate() {
        let members: Vec<usize> = (0..d).filter(|&s| class_of[s] == Some(c)).collect();
        let w = random_distribution(rng, members.len());
        for (&s, x) in members.iter().zip(w) {
            row[s] = x;
        }
    }
    let u: Vec<Vec<f64>> = (0..d)
        .map(|s| match class_of[s] {
            Some(c) => (0..k).map(|l| if l == c { 1.0 } else { 0.0 }).collect(),
            None => random_distribution(rng, k),
        })
        .collect();
    let v: Vec<Vec<f64>> = (0..k).map(|_| random_distribution(rng, k)).collect();
    let mul = |a: &[Vec<f64>], b: &[Vec<f64>], n: usize| -> Vec<Vec<f64>> {
        a.iter()
            .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
            .collect()
    };
    let p0 = mul(&u, &pi, d);
    let uv = mul(&u, &v, k);
    let p = mul(&uv, &pi, d);
    (Mat::from_rows(&p0).unwrap(), Mat::from_rows(&p).unwrap())
}
