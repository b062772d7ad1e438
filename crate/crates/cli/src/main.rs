use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hwcoho::enumerate::{canonical_with_stabilizer, enumerate_hw, group_order, MAX_ENUM_DIM};
use hwcoho::f2::gl_random;
use hwcoho::io::{read_input, to_json, CatalogDoc, Input, InvariantDoc, InvariantsDoc, MatrixDoc, FORMAT};
use hwcoho::reconstruct::{invariant_of, recover, rigidity_equal, scramble, RingInvariant};
use hwcoho::suites::{run_suite, SuiteConfig, SuiteReport, SUITES};
use hwcoho::{classify, Error, HWMatrix};

#[derive(Parser)]
#[command(name = "hwcoho", version, about = "Hantzsche-Wendt manifolds: classification, invariants, rigidity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List every HW-matrix of the given dimension.
    Enumerate {
        #[arg(long)]
        dim: usize,
    },
    /// Equivalence classes with orbit sizes.
    Classify {
        #[arg(long)]
        dim: usize,
    },
    /// Transgression basis, factorizable set, s-values and factor graph of a matrix.
    Invariants {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Canonical representative of a matrix or invariant.
    Canon {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Recover a matrix from a ring invariant.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply a seeded random change of basis to the invariant of the input.
    Scramble {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exit 0 if the two inputs describe homeomorphic manifolds, 1 otherwise.
    Rigidity {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Run property suites; exit 1 if any fails.
    Verify {
        #[arg(long)]
        dim: usize,
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Exit statuses.
const NOT_HOMEOMORPHIC: u8 = 1;
const BAD_CONFIG: u8 = 2;
const IO_FAILURE: u8 = 3;
const INVALID_INPUT: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => IO_FAILURE,
            Error::UnsupportedDimension(_) | Error::Precondition(_) | Error::DimensionMismatch(..) => BAD_CONFIG,
            _ => INVALID_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn config(message: String) -> Failure {
    Failure { code: BAD_CONFIG, message }
}

type CmdResult = std::result::Result<u8, Failure>;

fn check_dim(n: usize) -> std::result::Result<(), Failure> {
    if n % 2 == 0 || !(3..=MAX_ENUM_DIM).contains(&n) {
        return Err(config(format!("--dim must be odd and between 3 and {MAX_ENUM_DIM}, got {n}")));
    }
    Ok(())
}

fn emit<T: Serialize>(out: Option<&Path>, doc: &T) -> std::result::Result<(), Failure> {
    let text = to_json(doc)?;
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::from)?,
        None => io::stdout().write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn invariant_input(path: &Path) -> std::result::Result<RingInvariant, Failure> {
    Ok(match read_input(path)? {
        Input::Matrix(a) | Input::Generators(a) => invariant_of(&a)?,
        Input::Invariant(inv) => inv,
    })
}

fn cmd_enumerate(n: usize, out: Option<&Path>) -> CmdResult {
    check_dim(n)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(Error::from)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    let io = |e: io::Error| Failure::from(Error::from(e));
    write!(w, "{{\n  \"format\": \"{FORMAT}\",\n  \"n\": {n},\n  \"matrices\": [").map_err(io)?;
    let mut count = 0u64;
    for a in enumerate_hw(n)? {
        let sep = if count == 0 { "\n    " } else { ",\n    " };
        write!(w, "{sep}{}", serde_json::to_string(&a.index_rows()).map_err(Error::from)?).map_err(io)?;
        count += 1;
    }
    write!(w, "\n  ],\n  \"count\": {count}\n}}\n").map_err(io)?;
    w.flush().map_err(io)?;
    Ok(0)
}

fn cmd_classify(n: usize, out: Option<&Path>) -> CmdResult {
    check_dim(n)?;
    emit(out, &CatalogDoc::from_catalog(&classify(n)?))?;
    Ok(0)
}

#[derive(Serialize)]
struct InvariantsOut {
    /// Present when the input was a generator list.
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixDoc>,
    #[serde(flatten)]
    invariants: InvariantsDoc,
}

fn cmd_invariants(input: &Path, out: Option<&Path>) -> CmdResult {
    let (a, echo) = match read_input(input)? {
        Input::Matrix(a) => (a, false),
        Input::Generators(a) => (a, true),
        Input::Invariant(_) => return Err(config("invariants needs a matrix or generator input".into())),
    };
    let doc = InvariantsOut { matrix: echo.then(|| MatrixDoc::from_matrix(&a)), invariants: InvariantsDoc::from_matrix(&a)? };
    emit(out, &doc)?;
    Ok(0)
}

#[derive(Serialize)]
struct CanonOut {
    format: &'static str,
    n: usize,
    canonical: MatrixDoc,
    digits: String,
    orbit_size: u64,
}

fn canon_doc(a: &HWMatrix) -> CanonOut {
    let (c, stab) = canonical_with_stabilizer(a);
    CanonOut {
        format: FORMAT,
        n: a.n(),
        canonical: MatrixDoc::from_matrix(&c.matrix()),
        digits: c.digits(),
        orbit_size: group_order(a.n()) / stab,
    }
}

fn cmd_canon(input: &Path, out: Option<&Path>) -> CmdResult {
    let a = match read_input(input)? {
        Input::Matrix(a) | Input::Generators(a) => a,
        Input::Invariant(inv) => recover(&inv)?,
    };
    emit(out, &canon_doc(&a))?;
    Ok(0)
}

fn cmd_reconstruct(input: &Path, out: Option<&Path>) -> CmdResult {
    let inv = invariant_input(input)?;
    emit(out, &MatrixDoc::from_matrix(&recover(&inv)?))?;
    Ok(0)
}

fn cmd_scramble(input: &Path, seed: u64, out: Option<&Path>) -> CmdResult {
    let inv = invariant_input(input)?;
    let g = gl_random(inv.m(), seed);
    emit(out, &InvariantDoc::from_invariant(&scramble(&inv, &g)?))?;
    Ok(0)
}

#[derive(Serialize)]
struct RigidityOut {
    format: &'static str,
    n: usize,
    homeomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<CanonOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<CanonOut>,
}

fn cmd_rigidity(a: &Path, b: &Path, out: Option<&Path>) -> CmdResult {
    let (ia, ib) = (invariant_input(a)?, invariant_input(b)?);
    if ia.m() != ib.m() {
        return Err(config(format!("dimensions differ: {} and {}", ia.n(), ib.n())));
    }
    let doc = if ia.n() == 3 {
        RigidityOut {
            format: FORMAT,
            n: 3,
            homeomorphic: true,
            note: Some("dimension 3 has a single class; reconstruction is not run there".into()),
            a: None,
            b: None,
        }
    } else {
        let eq = rigidity_equal(&ia, &ib)?;
        RigidityOut {
            format: FORMAT,
            n: ia.n(),
            homeomorphic: eq,
            note: None,
            a: Some(canon_doc(&recover(&ia)?)),
            b: Some(canon_doc(&recover(&ib)?)),
        }
    };
    emit(out, &doc)?;
    Ok(if doc.homeomorphic { 0 } else { NOT_HOMEOMORPHIC })
}

#[derive(Serialize)]
struct VerifyOut {
    format: &'static str,
    n: usize,
    seed: u64,
    pass: bool,
    suites: Vec<SuiteReport>,
}

fn cmd_verify(n: usize, suite: &str, seed: u64, out: Option<&Path>) -> CmdResult {
    check_dim(n)?;
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(config(format!("unknown suite {suite:?}; choose one of {} or all", SUITES.join(", "))));
    };
    let catalog = classify(n)?;
    let reps = catalog.representatives();
    // Every matrix at small dimension, representatives otherwise.
    let everything: Option<Vec<HWMatrix>> = (n <= 5).then(|| enumerate_hw(n).map(|it| it.collect())).transpose()?;
    let cfg = SuiteConfig { seed, ..Default::default() };
    let mut reports = Vec::new();
    for name in names {
        let mats = match (name, &everything) {
            ("roundtrip" | "separation", _) | (_, None) => &reps,
            (_, Some(all)) => all,
        };
        let r = run_suite(name, n, mats, &cfg)?;
        eprintln!("{}", r.summary());
        reports.push(r);
    }
    let pass = reports.iter().all(SuiteReport::pass);
    emit(out, &VerifyOut { format: FORMAT, n, seed, pass, suites: reports })?;
    Ok(if pass { 0 } else { 1 })
}

fn run(cli: Cli) -> CmdResult {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(config("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| config(e.to_string()))?;
    }
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Enumerate { dim } => cmd_enumerate(*dim, out),
        Cmd::Classify { dim } => cmd_classify(*dim, out),
        Cmd::Invariants { input } => cmd_invariants(input, out),
        Cmd::Canon { input } => cmd_canon(input, out),
        Cmd::Reconstruct { input } => cmd_reconstruct(input, out),
        Cmd::Scramble { input } => cmd_scramble(input, cli.seed, out),
        Cmd::Rigidity { a, b } => cmd_rigidity(a, b, out),
        Cmd::Verify { dim, suite } => cmd_verify(*dim, suite, cli.seed, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
