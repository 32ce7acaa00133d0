//! `latfano`: analyze lattice polytopes, run censuses and check the
//! Gorenstein criteria from the command line.
//!
//! Exit codes: 0 success, 1 a verified claim has counterexamples, 2 bad input
//! or parameters, 3 a polytope that is not full-dimensional.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use latfano::census::{enumerate, family_generator, parse_box, CensusSpec, Family};
use latfano::claims::{verify_claim, ClaimId};
use latfano::corpus::{auto_corpus, read_corpus_dir, write_census_dir};
use latfano::format::{read_polytope, write_polytope};
use latfano::report::{analyze, AnalysisReport};
use latfano::Error;

#[derive(Parser)]
#[command(name = "latfano", version, about = "Exact lattice polytope toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report lattice points, vertex certificates, index and normality.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Check normality on layers 1..=K instead of the default bound.
        #[arg(long = "layers-up-to", value_name = "K")]
        layers_up_to: Option<i64>,
    },
    /// Enumerate polytopes in a box up to unimodular equivalence.
    Census(CensusArgs),
    /// Check a claim over a corpus directory or the built-in corpus.
    Verify {
        #[arg(long)]
        claim: String,
        #[arg(long, conflicts_with = "auto", required_unless_present = "auto")]
        corpus: Option<PathBuf>,
        #[arg(long)]
        auto: bool,
    },
    /// Write a member of a standard family.
    Gen {
        /// One of dn, basic, cross, dilated-simplex.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    dim: usize,
    /// Coordinate range `lo:hi`, applied to every axis.
    #[arg(long = "box", value_name = "LO:HI", allow_hyphen_values = true)]
    bounds: String,
    /// Comma-separated `k:count` pairs requiring `|Int(kP)| = count`.
    #[arg(long = "interior-profile", default_value = "", allow_hyphen_values = true)]
    interior_profile: String,
    #[arg(long = "max-vertices")]
    max_vertices: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Dimension { .. } => 3,
        _ => 2,
    }
}

fn print_report(r: &AnalysisReport) {
    let list = |pts: &[latfano::LatticePoint]| pts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("dimension: {}", r.dimension);
    println!("vertices ({}): {}", r.vertex_count, list(&r.vertices));
    println!("lattice points: {}", r.lattice_point_count);
    println!("interior points: {}", list(&r.interior_points));
    let counts: Vec<String> = r
        .interior_counts
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{c}", i + 1))
        .collect();
    println!("interior profile: {}", counts.join(","));
    for v in &r.vertex_certificates {
        let status = match &v.certificate {
            c if c.is_nonsingular() => format!("nonsingular, m0 = {}", c.m0().expect("certificate point")),
            c if c.is_gorenstein() => format!("gorenstein, m0 = {}", c.m0().expect("certificate point")),
            _ => "not gorenstein".to_string(),
        };
        println!("  vertex {}: {status}", v.vertex);
    }
    println!("gorenstein: {}", r.is_gorenstein);
    match r.gorenstein_index {
        Some(i) => println!("gorenstein index: {i}"),
        None => println!("gorenstein index: none"),
    }
    println!("normal (layers 1..={}): {}", r.normality_layers, r.is_normal);
    match &r.is_pyramid {
        Some(p) => println!("pyramid: apex {}", p.apex),
        None => println!("pyramid: false"),
    }
    println!("simplex: {}, basic: {}, D_n: {}", r.is_simplex, r.is_basic, r.is_dn);
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Analyze { file, json, layers_up_to } => {
            if let Some(k) = layers_up_to {
                if k < 1 {
                    return Err(Error::Argument(format!("--layers-up-to {k} must be positive")));
                }
            }
            let p = read_polytope(&file)?;
            let report = analyze(&p, layers_up_to)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print_report(&report);
            }
            Ok(0)
        }
        Command::Census(args) => {
            let (lo, hi) = parse_box(&args.bounds)?;
            let mut spec = CensusSpec::new(args.dim, lo, hi, &args.interior_profile)?;
            if let Some(m) = args.max_vertices {
                spec = spec.with_max_vertices(m);
            }
            let classes = enumerate(&spec)?;
            if let Some(dir) = &args.out {
                write_census_dir(dir, &spec, &classes)?;
            }
            println!("{}", classes.len());
            Ok(0)
        }
        Command::Verify { claim, corpus, auto } => {
            let claim: ClaimId = claim.parse()?;
            let polytopes = match (corpus, auto) {
                (Some(dir), false) => read_corpus_dir(&dir)?,
                _ => auto_corpus(claim)?,
            };
            let result = verify_claim(claim, &polytopes)?;
            println!("{}", serde_json::to_string_pretty(&result).expect("result serializes"));
            Ok(if result.is_success() { 0 } else { 1 })
        }
        Command::Gen { family, n, k, out } => {
            let kind: Family = family.parse()?;
            let p = family_generator(kind, n, k)?;
            std::fs::write(&out, write_polytope(&p))?;
            Ok(0)
        }
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("LATFANO_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Argument(format!("LATFANO_THREADS={raw} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Argument(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("latfano: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
