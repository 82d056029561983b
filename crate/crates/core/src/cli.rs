//! Command-line front end: JSON matrices in, JSON reports out.
//!
//! Matrices are read as `{"rows": [[…], …]}` from a path or from `-` for
//! standard input. Every successful command prints one [`Report`]. Exit codes:
//! 0 for a positive result, 1 for a negative mathematical verdict, 2 for
//! invalid input and 3 for an undecided embedding question.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::embedding::{divisible_construct, embed_verdict, root2, EmbedStatus, EmbedVerdict};
use crate::equal_input::{ei_bch, ei_decompose, ei_detect, ei_make, ei_root, Kind};
use crate::error::Error;
use crate::markov::{classify, is_markov, DEFAULT_TOL};
use crate::matrix::Mat;
use crate::monotone::{all_extremals, is_monotone, monotone_decompose, monotone_extremals};
use crate::spectral::{spectrum, structure, DEFAULT_CLUSTER_TOL, DEFAULT_RANK_TOL};

/// Largest dimension for listing all `dᵈ` extremal matrices.
const MAX_ALL_EXTREMALS_DIM: usize = 6;
/// Largest dimension for listing the monotone extremal matrices.
const MAX_MONOTONE_EXTREMALS_DIM: usize = 9;

#[derive(Debug, Parser)]
#[command(name = "markov-embed", version, about = "Equal-input and monotone Markov matrix toolkit")]
pub struct Cli {
    /// Classification tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Treat the matrix path as a directory and process every `*.json` in it.
    #[arg(long, global = true)]
    pub each: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Monotone,
    EqualInput,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Stochasticity, spectrum, minimal polynomial, monotonicity and equal-input detection.
    Classify { path: String },
    /// Decide whether the matrix is the exponential of a generator.
    Embed { path: String },
    /// Convex decomposition into extremal matrices.
    Decompose {
        path: String,
        #[arg(long, value_enum, default_value_t = Basis::Monotone)]
        basis: Basis,
    },
    /// Markov n-th root (two states or equal-input).
    Root {
        path: String,
        #[arg(short = 'n', default_value_t = 2)]
        n: u32,
    },
    /// Combine two equal-input generators into one.
    Bch { q1: String, q2: String },
    /// List the {0,1} extremal matrices in dimension d.
    Extremals {
        #[arg(short = 'd')]
        d: usize,
        #[arg(long)]
        monotone: bool,
    },
    /// Member of a Poisson-type family of infinitely divisible matrices.
    Poisson {
        #[arg(long)]
        p0: String,
        #[arg(long)]
        p: String,
        #[arg(short = 's', default_value_t = 1.0)]
        s: f64,
    },
}

/// On-disk matrix format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn parse(bytes: &[u8]) -> Result<Mat, String> {
        let file: MatrixFile =
            serde_json::from_slice(bytes).map_err(|e| format!("malformed matrix JSON: {e}"))?;
        Mat::from_rows(&file.rows).map_err(|e| e.to_string())
    }

    pub fn of(m: &Mat) -> Self {
        Self { rows: m.rows() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Positive = 0,
    Negative = 1,
    Invalid = 2,
    Undecided = 3,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub tol: f64,
    pub cluster_tol: f64,
    pub rank_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the raw input bytes, in argument order.
    pub input_digest: String,
    pub result: Value,
    pub tolerances: Tolerances,
    pub warnings: Vec<String>,
}

/// An invalid-input failure, reported on standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidInput(pub String);

fn outcome_of(err: &Error) -> Outcome {
    match err {
        Error::NotMonotone
        | Error::NotEqualInput
        | Error::NoEqualInputRoot(_)
        | Error::NotCyclic
        | Error::NonRealSpectrum => Outcome::Negative,
        _ => Outcome::Invalid,
    }
}

type CmdResult = Result<(Outcome, Value, Vec<String>), Error>;

fn matrix_json(m: &Mat) -> Value {
    serde_json::to_value(MatrixFile::of(m)).expect("matrix serializes")
}

fn verdict_json(v: &EmbedVerdict) -> Value {
    let mut out = serde_json::to_value(v).expect("verdict serializes");
    if let Some(q) = &v.generator {
        out["generator"] = matrix_json(q);
    }
    out
}

fn negative(err: &Error) -> Value {
    json!({ "verdict": "negative", "reason": err.to_string() })
}

/// Turns a library error into a negative verdict where that makes sense.
fn settle(res: CmdResult) -> CmdResult {
    match res {
        Err(e) if outcome_of(&e) == Outcome::Negative => Ok((Outcome::Negative, negative(&e), vec![])),
        other => other,
    }
}

fn cmd_classify(m: &Mat, tol: f64) -> CmdResult {
    let mut warnings = Vec::new();
    let st = structure(m, DEFAULT_RANK_TOL)?;
    if st.low_confidence {
        warnings.push("minimal-polynomial degree is close to a rank threshold".into());
    }
    let monotone = match is_monotone(m, tol) {
        Ok(b) => b,
        Err(e) => {
            warnings.push(format!("monotonicity not defined: {e}"));
            false
        }
    };
    let equal_input = ei_detect(m, tol).map(|p| {
        json!({ "kind": p.kind(), "c_vec": p.c_vec(), "c": p.c() })
    });
    let embedding = if is_markov(m, tol) {
        Some(verdict_json(&embed_verdict(m, tol)?))
    } else {
        None
    };
    let result = json!({
        "classification": classify(m, tol),
        "spectrum": spectrum(m, DEFAULT_CLUSTER_TOL)?,
        "structure": st,
        "monotone": monotone,
        "equal_input": equal_input,
        "embedding": embedding,
    });
    Ok((Outcome::Positive, result, warnings))
}

fn cmd_embed(m: &Mat, tol: f64) -> CmdResult {
    let v = embed_verdict(m, tol)?;
    let outcome = match v.status {
        EmbedStatus::Embeddable => Outcome::Positive,
        EmbedStatus::NonEmbeddable => Outcome::Negative,
        EmbedStatus::Undecided => Outcome::Undecided,
    };
    let warnings = if v.reason.contains("clamped") {
        vec![v.reason.clone()]
    } else {
        vec![]
    };
    Ok((outcome, verdict_json(&v), warnings))
}

fn cmd_decompose(m: &Mat, basis: Basis) -> CmdResult {
    settle(match basis {
        Basis::Monotone => monotone_decompose(m).map(|dec| {
            let err = dec.recombine(m.dim()).max_diff(m);
            let result = json!({
                "basis": "monotone",
                "terms": dec.terms,
                "total_weight": dec.total_weight(),
                "recombination_error": err,
            });
            (Outcome::Positive, result, vec![])
        }),
        Basis::EqualInput => ei_decompose(m).map(|dec| {
            let err = dec.recombine().max_diff(m);
            let mut result = serde_json::to_value(&dec).expect("decomposition serializes");
            result["basis"] = json!("equal_input");
            result["recombination_error"] = json!(err);
            (Outcome::Positive, result, vec![])
        }),
    })
}

fn cmd_root(m: &Mat, n: u32) -> CmdResult {
    let (method, root) = if m.dim() == 2 {
        ("two_state", root2(m, n))
    } else {
        ("equal_input", ei_root(m, n))
    };
    settle(root.map(|r| {
        let err = r.pow(n).max_diff(m);
        let result = json!({ "method": method, "n": n, "root": matrix_json(&r), "power_error": err });
        (Outcome::Positive, result, vec![])
    }))
}

fn cmd_bch(q1: &Mat, q2: &Mat, tol: f64) -> CmdResult {
    let detect = |q: &Mat| {
        ei_detect(q, tol)
            .filter(|p| p.kind() == Kind::Generator)
            .ok_or(Error::NotEqualInput)
    };
    settle((|| {
        let (p1, p2) = (detect(q1)?, detect(q2)?);
        if p1.dim() != p2.dim() {
            return Err(Error::DimMismatch(p1.dim(), p2.dim()));
        }
        let p = ei_bch(&p1, &p2)?;
        let result = json!({
            "c_vec": p.c_vec(),
            "c": p.c(),
            "generator": matrix_json(&ei_make(&p)),
        });
        Ok((Outcome::Positive, result, vec![]))
    })())
}

fn cmd_extremals(d: usize, monotone: bool) -> CmdResult {
    let limit = if monotone {
        MAX_MONOTONE_EXTREMALS_DIM
    } else {
        MAX_ALL_EXTREMALS_DIM
    };
    if d == 0 || d > limit {
        return Err(Error::InvalidParameter(format!("d must lie in 1..={limit}")));
    }
    let list = if monotone {
        monotone_extremals(d)
    } else {
        all_extremals(d)
    };
    let entries: Vec<Value> = list
        .iter()
        .map(|e| json!({ "index": e, "monotone": e.is_monotone(), "matrix": matrix_json(&e.matrix()) }))
        .collect();
    Ok((Outcome::Positive, json!({ "d": d, "count": entries.len(), "extremals": entries }), vec![]))
}

fn cmd_poisson(p0: &Mat, p: &Mat, s: f64) -> CmdResult {
    let out = divisible_construct(p0, p, s)?;
    let result = json!({
        "s": s,
        "matrix": matrix_json(&out.matrix),
        "embeddable": out.embeddable,
        "generator": out.generator.as_ref().map(matrix_json),
        "det": out.det,
    });
    Ok((Outcome::Positive, result, vec![]))
}

fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update(bytes);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, InvalidInput> {
    if path == "-" {
        let mut buf = Vec::new();
        stdin
            .read_to_end(&mut buf)
            .map_err(|e| InvalidInput(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| InvalidInput(format!("reading {path}: {e}")))
    }
}

fn parse(bytes: &[u8], what: &str) -> Result<Mat, InvalidInput> {
    MatrixFile::parse(bytes).map_err(|e| InvalidInput(format!("{what}: {e}")))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::Embed { .. } => "embed",
        Command::Decompose { .. } => "decompose",
        Command::Root { .. } => "root",
        Command::Bch { .. } => "bch",
        Command::Extremals { .. } => "extremals",
        Command::Poisson { .. } => "poisson",
    }
}

/// Runs a command whose only input is one matrix.
fn run_on_matrix(cmd: &Command, m: &Mat, tol: f64) -> CmdResult {
    match cmd {
        Command::Classify { .. } => cmd_classify(m, tol),
        Command::Embed { .. } => cmd_embed(m, tol),
        Command::Decompose { basis, .. } => cmd_decompose(m, *basis),
        Command::Root { n, .. } => cmd_root(m, *n),
        _ => unreachable!("multi-input command"),
    }
}

fn single_path(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Classify { path }
        | Command::Embed { path }
        | Command::Decompose { path, .. }
        | Command::Root { path, .. } => Some(path),
        _ => None,
    }
}

/// Executes one parsed command and returns its outcome with either a report or
/// a diagnostic.
pub fn execute(cli: &Cli, echo: &str, stdin: &mut dyn Read) -> (Outcome, Result<Report, InvalidInput>) {
    let tolerances = Tolerances {
        tol: cli.tol,
        cluster_tol: DEFAULT_CLUSTER_TOL,
        rank_tol: DEFAULT_RANK_TOL,
    };
    let gathered: Result<(Vec<Vec<u8>>, CmdResult), InvalidInput> = (|| {
        Ok(match &cli.command {
            Command::Bch { q1, q2 } => {
                let (b1, b2) = (read_input(q1, stdin)?, read_input(q2, stdin)?);
                let res = cmd_bch(&parse(&b1, q1)?, &parse(&b2, q2)?, cli.tol);
                (vec![b1, b2], res)
            }
            Command::Poisson { p0, p, s } => {
                let (b0, b1) = (read_input(p0, stdin)?, read_input(p, stdin)?);
                let res = cmd_poisson(&parse(&b0, p0)?, &parse(&b1, p)?, *s);
                (vec![b0, b1], res)
            }
            Command::Extremals { d, monotone } => (vec![], cmd_extremals(*d, *monotone)),
            cmd => {
                let path = single_path(cmd).expect("single-input command");
                let bytes = read_input(path, stdin)?;
                let m = parse(&bytes, path)?;
                let res = run_on_matrix(cmd, &m, cli.tol);
                (vec![bytes], res)
            }
        })
    })();
    let (inputs, res) = match gathered {
        Ok(x) => x,
        Err(e) => return (Outcome::Invalid, Err(e)),
    };
    match res {
        Ok((outcome, result, warnings)) => {
            let refs: Vec<&[u8]> = inputs.iter().map(Vec::as_slice).collect();
            let report = Report {
                command: echo.to_string(),
                input_digest: digest(&refs),
                result,
                tolerances,
                warnings,
            };
            (outcome, Ok(report))
        }
        Err(e) => (Outcome::Invalid, Err(InvalidInput(e.to_string()))),
    }
}

#[derive(Debug, Serialize)]
struct BatchEntry {
    file: String,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn run_batch(cli: &Cli, echo: &str, dir: &Path) -> Result<(Outcome, Vec<BatchEntry>), InvalidInput> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| InvalidInput(format!("reading directory {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let entries: Vec<BatchEntry> = files
        .par_iter()
        .map(|f| {
            let name = f.display().to_string();
            let mut cmd = cli.command.clone();
            match &mut cmd {
                Command::Classify { path }
                | Command::Embed { path }
                | Command::Decompose { path, .. }
                | Command::Root { path, .. } => *path = name.clone(),
                _ => unreachable!(),
            }
            let one = Cli { tol: cli.tol, each: false, command: cmd };
            let (outcome, res) = execute(&one, echo, &mut std::io::empty());
            let (report, error) = match res {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.0)),
            };
            BatchEntry { file: name, exit_code: outcome.code(), report, error }
        })
        .collect();
    let worst = entries
        .iter()
        .map(|e| match e.exit_code {
            0 => Outcome::Positive,
            1 => Outcome::Negative,
            3 => Outcome::Undecided,
            _ => Outcome::Invalid,
        })
        .max()
        .unwrap_or(Outcome::Positive);
    Ok((worst, entries))
}

/// Parses `args` (program name first), runs the command and writes JSON to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Outcome::Invalid.code() } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        let _ = writeln!(err, "error: --tol must be a finite non-negative number");
        return Outcome::Invalid.code();
    }

    if cli.each {
        let Some(dir) = single_path(&cli.command) else {
            let _ = writeln!(err, "error: --each applies to classify, embed, decompose and root");
            return Outcome::Invalid.code();
        };
        return match run_batch(&cli, &echo, Path::new(dir)) {
            Ok((outcome, entries)) => {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&entries).expect("serializes"));
                outcome.code()
            }
            Err(e) => {
                let _ = writeln!(err, "error: {}", e.0);
                Outcome::Invalid.code()
            }
        };
    }

    let (outcome, res) = execute(&cli, &echo, stdin);
    match res {
        Ok(report) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes"));
        }
        Err(e) => {
            let _ = writeln!(err, "error [{}]: {}", command_name(&cli.command), e.0);
        }
    }
    outcome.code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut input = stdin.as_bytes();
        let mut argv = vec!["markov-embed"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn embed_from_stdin() {
        let (code, out, _) = run_str(&["embed", "-"], r#"{"rows": [[0.75, 0.25], [0.5, 0.5]]}"#);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["method"], "kendall");
        assert_eq!(v["command"], "embed -");
        assert_eq!(v["tolerances"]["tol"], 1e-9);
        assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["embed", "-"], r#"{"rows": [[0, 1], [1, 0]]}"#).0, 1);
        assert_eq!(run_str(&["embed", "-"], r#"{"rows": [[1, 0], [0.5]]}"#).0, 2);
        assert_eq!(run_str(&["embed", "-"], r#"{"rows": [[2, -1], [0, 1]]}"#).0, 2);
        let constant = r#"{"rows": [[0.2, 0.4, 0.4], [0.4, 0.2, 0.4], [0.4, 0.4, 0.2]]}"#;
        assert_eq!(run_str(&["embed", "-"], constant).0, 3);
        assert_eq!(run_str(&["nonsense"], "").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn extremals_listing() {
        let (code, out, _) = run_str(&["extremals", "-d", "3", "--monotone"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["count"], 10);
        assert_eq!(v["result"]["extremals"][0]["index"], json!([1, 1, 1]));
        assert_eq!(run_str(&["extremals", "-d", "0"], "").0, 2);
    }

    #[test]
    fn root_refuses_non_monotone_two_state() {
        let (code, out, _) = run_str(&["root", "-", "-n", "2"], r#"{"rows": [[0.3, 0.7], [0.6, 0.4]]}"#);
        assert_eq!(code, 1);
        assert!(out.contains("negative"));
    }

    #[test]
    fn matrix_file_round_trip() {
        let m = Mat::from_rows(&[vec![0.1, 0.9], vec![1.0 / 3.0, 2.0 / 3.0]]).unwrap();
        let s1 = serde_json::to_string(&MatrixFile::of(&m)).unwrap();
        let back = MatrixFile::parse(s1.as_bytes()).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&MatrixFile::of(&back)).unwrap(), s1);
    }
}
