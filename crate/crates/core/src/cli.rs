//! Command line front end. `run_cli` returns the process exit code:
//! 0 when every check passes, 1 when a check fails, 2 on invalid input.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chains::{
    build_bm_complex, build_intersection_complex, build_open_complex, build_relative_bm_complex,
    build_relative_complex, BoundaryMode, BuildOptions,
};
use crate::constructions::{generate_example, Example};
use crate::error::{Error, Result};
use crate::format::{read_space, read_vertex_list, write_json, write_pair, write_space, LoadedSpace};
use crate::harness::{self, CheckReport, PairVariant};
use crate::homology::betti_numbers;
use crate::perversity::Perversity;
use crate::stratified::SpacePair;

#[derive(Parser, Debug)]
#[command(name = "ihc", version, about = "Intersection homology of stratified ∂-pseudomanifolds")]
pub struct Cli {
    /// Write a machine-readable report to this path.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Compute on the given triangulation without barycentric subdivision.
    #[arg(long, global = true)]
    no_subdivide: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    file: PathBuf,
    /// Perversity: 0, t, m, n or d2,d3,...,dl.
    #[arg(short, long = "perversity", value_name = "PERV")]
    p: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the filtration and the ∂-pseudomanifold conditions.
    Validate { file: PathBuf },
    /// Print intersection Betti numbers in degrees 0..=l.
    Betti {
        #[command(flatten)]
        input: Input,
        /// Relative to the boundary.
        #[arg(long, group = "kind")]
        relative: bool,
        /// Borel-Moore homology of the complement of the `--pair` vertices.
        #[arg(long, group = "kind", requires = "pair")]
        bm: bool,
        /// Borel-Moore homology relative to the boundary.
        #[arg(long, group = "kind", requires = "pair")]
        relative_bm: bool,
        /// JSON array of vertex names spanning the removed subcomplex.
        #[arg(long, value_name = "LFILE")]
        pair: Option<PathBuf>,
    },
    /// Lefschetz duality, or Poincaré duality when there is no boundary.
    Duality(Input),
    /// Poincaré duality for a space without boundary.
    Poincare(Input),
    /// Local computations at a depth-0 boundary vertex.
    Local {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "V")]
        vertex: String,
    },
    /// Exactness of a long exact sequence.
    Les {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = LesVariant::BoundaryPair)]
        variant: LesVariant,
        /// JSON array of vertex names: the open set for `open-pair`, the
        /// removed subcomplex for `bm-relative`.
        #[arg(long, value_name = "LFILE")]
        pair: Option<PathBuf>,
    },
    /// Write a catalog example.
    Gen {
        name: String,
        #[arg(short, value_name = "FILE")]
        o: PathBuf,
    },
    /// Run every check over the example corpus.
    Suite,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LesVariant {
    BoundaryPair,
    OpenPair,
    BmRelative,
}

#[derive(Serialize)]
struct BettiReport<'a> {
    space: &'a str,
    perversity: String,
    variant: &'a str,
    betti: Vec<usize>,
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    space: &'a str,
    passed: bool,
    conditions: Vec<ValidateItem<'a>>,
}

#[derive(Serialize)]
struct ValidateItem<'a> {
    condition: &'a str,
    passed: bool,
    witness: Option<String>,
}

fn load(path: &Path) -> Result<LoadedSpace> {
    read_space(path)
}

fn perversity(s: &str, x: &LoadedSpace) -> Result<Perversity> {
    Perversity::parse(s, x.space.dim())
}

fn vector(v: &[usize]) -> String {
    format!("({})", v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
}

fn print_reports(reports: &[CheckReport], json: Option<&Path>) -> Result<i32> {
    for r in reports {
        print!("{r}");
        let asserted: Vec<usize> = r.right.iter().zip(&r.left).map(|(r, l)| r.unwrap_or(*l)).collect();
        println!("  {} vs {}", vector(&r.left), vector(&asserted));
    }
    if let Some(path) = json {
        write_json(path, reports)?;
    }
    Ok(if reports.iter().all(CheckReport::passed) { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32> {
    let opts = if cli.no_subdivide { BuildOptions::no_subdivision() } else { BuildOptions::default() };
    let json = cli.json.as_deref();
    match cli.command {
        Command::Validate { file } => {
            let x = load(&file)?;
            let report = x.space.validate();
            print!("{report}");
            if let Some(path) = json {
                let conditions = report
                    .items
                    .iter()
                    .map(|i| ValidateItem { condition: i.condition, passed: i.passed, witness: i.witness.clone() })
                    .collect();
                write_json(path, &ValidateReport { space: x.space.name(), passed: report.passed(), conditions })?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Betti { input, relative, bm, relative_bm, pair } => {
            let x = load(&input.file)?;
            let p = perversity(&input.p, &x)?;
            let removed = match &pair {
                Some(path) => x.vertex_set(&read_vertex_list(path)?)?,
                None => Default::default(),
            };
            let sp = || SpacePair::new(x.space.clone(), removed.iter().copied());
            let (variant, c) = if relative {
                ("relative", build_relative_complex(&x.space, &p, opts)?)
            } else if bm {
                ("bm", build_bm_complex(&sp()?, &p, opts)?)
            } else if relative_bm {
                ("relative-bm", build_relative_bm_complex(&sp()?, &p, BoundaryMode::default(), opts)?)
            } else if pair.is_some() {
                ("open", build_open_complex(&sp()?, &p, opts)?)
            } else {
                ("absolute", build_intersection_complex(&x.space, &p, opts)?)
            };
            let betti = betti_numbers(&c).betti;
            let mut padded = betti.clone();
            padded.resize(x.space.dim() + 1, 0);
            println!("{}", padded.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "));
            if let Some(path) = json {
                write_json(path, &BettiReport { space: x.space.name(), perversity: p.label(), variant, betti: padded })?;
            }
            Ok(0)
        }
        Command::Duality(input) => {
            let x = load(&input.file)?;
            let p = perversity(&input.p, &x)?;
            print_reports(&[harness::check_lefschetz(&x.space, &p, opts)?], json)
        }
        Command::Poincare(input) => {
            let x = load(&input.file)?;
            let p = perversity(&input.p, &x)?;
            print_reports(&[harness::check_poincare(&x.space, &p, opts)?], json)
        }
        Command::Local { input, vertex } => {
            let x = load(&input.file)?;
            let p = perversity(&input.p, &x)?;
            let v = x.vertex(&vertex)?;
            print_reports(&harness::check_local_cases(&x.space, v, &p, opts)?, json)
        }
        Command::Les { input, variant, pair } => {
            let x = load(&input.file)?;
            let p = perversity(&input.p, &x)?;
            let listed = match &pair {
                Some(path) => Some(x.vertex_set(&read_vertex_list(path)?)?),
                None => None,
            };
            let (space_pair, v) = match variant {
                LesVariant::BoundaryPair => (SpacePair::compact(x.space.clone()), PairVariant::BoundaryPair),
                LesVariant::OpenPair => {
                    let w = listed.ok_or_else(|| Error::InvalidInput("open-pair needs --pair LFILE".into()))?;
                    (SpacePair::compact(x.space.clone()), PairVariant::OpenPair(w))
                }
                LesVariant::BmRelative => {
                    let removed = listed.unwrap_or_default();
                    (SpacePair::new(x.space.clone(), removed)?, PairVariant::BmRelative(None))
                }
            };
            print_reports(&harness::check_pair_sequence(&space_pair, &p, &v, opts)?, json)
        }
        Command::Gen { name, o } => {
            match generate_example(&name)? {
                Example::Space(x) => {
                    write_space(&o, &x)?;
                    println!("wrote {}", o.display());
                }
                Example::Pair(pair) => {
                    let l = write_pair(&o, &pair)?;
                    println!("wrote {} and {}", o.display(), l.display());
                }
            }
            Ok(0)
        }
        Command::Suite => {
            let reports = harness::suite(opts);
            for r in &reports {
                if !r.passed() {
                    print!("{r}");
                }
            }
            let mut failed = 0;
            println!("{:<18} {:>6} {:>6}", "check", "passed", "total");
            for (name, passed, total) in harness::summary(&reports) {
                println!("{name:<18} {passed:>6} {total:>6}");
                failed += total - passed;
            }
            if let Some(path) = json {
                write_json(path, &reports)?;
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
