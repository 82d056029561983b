//! Equal-input and monotone Markov matrices: construction, classification,
//! extremal decompositions, roots and embeddability decisions.
//!
//! The runnable programs under `examples/` walk through each capability, for
//! instance `cargo run --example equal_input_algebra` or
//! `cargo run --example embed_verdicts`. The `markov-embed` binary exposes the
//! same operations on JSON files; see [`cli`].
//!
//! ```
//! use markov_embed::{embed_verdict, EmbedStatus, Mat};
//!
//! let m = Mat::from_rows(&[vec![0.75, 0.25], vec![0.5, 0.5]]).unwrap();
//! let v = embed_verdict(&m, 1e-9).unwrap();
//! assert_eq!(v.status, EmbedStatus::Embeddable);
//! ```

pub mod cli;
pub mod embedding;
pub mod equal_input;
pub mod error;
pub mod markov;
pub mod matfun;
pub mod matrix;
pub mod monotone;
pub mod spectral;

pub use embedding::{embed_verdict, sqrt_obstruction, EmbedMethod, EmbedStatus, EmbedVerdict};
pub use equal_input::{EqualInputParams, Kind};
pub use error::{Error, Result};
pub use markov::{classify, is_generator, is_markov, ClassificationReport};
pub use matfun::{expm, logm_series};
pub use matrix::{Mat, Permutation};
pub use monotone::{is_monotone, is_monotone_generator, monotone_decompose, ExtremalIndex};
pub use spectral::{spectrum, structure, Spectrum, StructureInfo};
