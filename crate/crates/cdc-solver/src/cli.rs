//! Command dispatch for the `cdc` binary.
//!
//! Exit codes: 0 = consistent/satisfiable, 1 = inconsistent/unsatisfiable,
//! 2 = input error. Diagnostics go to standard error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::compose::{weak_composition, ConverseTable};
use crate::grid::PixelRegion;
use crate::matrix::{DirectionMatrix, Model};
use crate::netfile::{parse_network, print_basic, NetworkFile};
use crate::render::{render_ascii, to_pbm};
use crate::solver::{simplify_solution, solve_basic, solve_disjunctive, Solution, SolveOutcome};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCONSISTENT: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "cdc",
    about = "Consistency solver for cardinal direction constraint networks",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide consistency of a basic network and render its maximal solution.
    Check {
        file: PathBuf,
        /// Expected model; must match the file header when given.
        #[arg(long)]
        model: Option<String>,
        /// `ascii` (default, stdout) or `pbm` (one file per region, needs --out).
        #[arg(long, default_value = "ascii")]
        format: String,
        /// Output directory for `--format pbm`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a disjunctive network for a satisfiable basic refinement.
    Solve {
        file: PathBuf,
        #[arg(long)]
        model: Option<String>,
        #[arg(long, default_value = "ascii")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a basic network and emit a hole-free solution on a 5x frame.
    Simplify {
        file: PathBuf,
        #[arg(long, default_value = "ascii")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export relation tables.
    Tables {
        /// `converses` or `compose`.
        #[arg(long)]
        which: String,
        /// For `compose`: the two matrices to compose.
        args: Vec<String>,
        #[arg(long, default_value = "cdc")]
        model: String,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run() -> u8 {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file, model, format, out } => cmd_check(&file, model.as_deref(), &format, out.as_deref()),
        Command::Solve { file, model, format, out } => cmd_solve(&file, model.as_deref(), &format, out.as_deref()),
        Command::Simplify { file, format, out } => cmd_simplify(&file, &format, out.as_deref()),
        Command::Tables { which, args, model, out } => cmd_tables(&which, &args, &model, out.as_deref()),
    }
}

fn input_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_INPUT_ERROR
}

fn load_network(path: &Path, expected_model: Option<&str>) -> Result<NetworkFile, u8> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format_args!("cannot read {}: {e}", path.display())))?;
    let file = parse_network(&text).map_err(|e| input_error(e))?;
    if let Some(tag) = expected_model {
        let requested: Model = tag.parse().map_err(|e: String| input_error(e))?;
        if requested != file.model {
            return Err(input_error(format_args!(
                "file declares model {}, but --model {} was requested",
                file.model, requested
            )));
        }
    }
    Ok(file)
}

fn solver_model(file_model: Model) -> Model {
    match file_model {
        Model::CdcS => Model::Cdc,
        m => m,
    }
}

fn emit_solution(sol: &Solution, format: &str, out: Option<&Path>) -> u8 {
    println!("consistent: frame {}x{}", sol.frame.n_x, sol.frame.n_y);
    for (idx, mbr) in sol.mbrs.iter().enumerate() {
        println!("v{} mbr {}", idx + 1, mbr);
    }
    emit_regions(&sol.regions, format, out)
}

fn emit_regions(regions: &[PixelRegion], format: &str, out: Option<&Path>) -> u8 {
    match format {
        "ascii" => {
            print!("{}", render_ascii(regions));
            EXIT_OK
        }
        "pbm" => {
            let dir = match out {
                Some(d) => d,
                None => return input_error("--format pbm requires --out DIR"),
            };
            if let Err(e) = fs::create_dir_all(dir) {
                return input_error(format_args!("cannot create {}: {e}", dir.display()));
            }
            for (idx, region) in regions.iter().enumerate() {
                let path = dir.join(format!("region_{}.pbm", idx + 1));
                if let Err(e) = fs::write(&path, to_pbm(region)) {
                    return input_error(format_args!("cannot write {}: {e}", path.display()));
                }
                println!("wrote {}", path.display());
            }
            EXIT_OK
        }
        other => input_error(format_args!("unknown format {other:?} (expected ascii or pbm)")),
    }
}

fn cmd_check(path: &Path, model: Option<&str>, format: &str, out: Option<&Path>) -> u8 {
    let file = match load_network(path, model) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let net = match file.to_basic() {
        Ok(n) => n,
        Err(e) => return input_error(e),
    };
    match solve_basic(&net, solver_model(file.model)) {
        SolveOutcome::Consistent(sol) => emit_solution(&sol, format, out),
        SolveOutcome::Inconsistent(inc) => {
            eprintln!("{inc}");
            EXIT_INCONSISTENT
        }
    }
}

fn cmd_solve(path: &Path, model: Option<&str>, format: &str, out: Option<&Path>) -> u8 {
    let file = match load_network(path, model) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let net = file.to_disjunctive();
    match solve_disjunctive(&net, solver_model(file.model)) {
        Some((refinement, sol)) => {
            print!("{}", print_basic(&refinement, file.model));
            emit_solution(&sol, format, out)
        }
        None => {
            eprintln!("unsatisfiable: no basic refinement is consistent");
            EXIT_INCONSISTENT
        }
    }
}

fn cmd_simplify(path: &Path, format: &str, out: Option<&Path>) -> u8 {
    let file = match load_network(path, None) {
        Ok(f) => f,
        Err(code) => return code,
    };
    if file.model == Model::CdcD {
        return input_error("simplify requires a connected-region model (cdc)");
    }
    let net = match file.to_basic() {
        Ok(n) => n,
        Err(e) => return input_error(e),
    };
    match solve_basic(&net, Model::Cdc) {
        SolveOutcome::Consistent(sol) => {
            let simple = simplify_solution(&sol);
            let frame = simple[0].frame();
            println!("consistent: simple-region solution on frame {}x{}", frame.n_x, frame.n_y);
            for (idx, region) in simple.iter().enumerate() {
                println!("v{} mbr {}", idx + 1, region.mbr().expect("regions are nonempty"));
            }
            emit_regions(&simple, format, out)
        }
        SolveOutcome::Inconsistent(inc) => {
            eprintln!("{inc}");
            EXIT_INCONSISTENT
        }
    }
}

fn cmd_tables(which: &str, args: &[String], model: &str, out: Option<&Path>) -> u8 {
    let model: Model = match model.parse() {
        Ok(m) => m,
        Err(e) => return input_error(e),
    };
    match which {
        "converses" => {
            if !args.is_empty() {
                return input_error("`tables --which converses` takes no positional arguments");
            }
            let table = ConverseTable::build(model);
            let mut csv = String::new();
            for a in model.basic_relations() {
                for &b in table.converses(a) {
                    csv.push_str(&format!("{},{}\n", compact(a), compact(b)));
                }
            }
            if let Some(code) = write_csv(out, &csv) {
                return code;
            }
            println!("pairs={}", table.ordered_pair_count());
            EXIT_OK
        }
        "compose" => {
            let (a, b) = match args {
                [a, b] => (a, b),
                _ => return input_error("`tables --which compose` takes exactly two matrices"),
            };
            let parse = |s: &str| -> Result<DirectionMatrix, u8> {
                let m: DirectionMatrix = s.parse().map_err(|e: String| input_error(e))?;
                if !m.is_valid(model) {
                    return Err(input_error(format_args!(
                        "matrix {m} is not a valid basic relation of model {model}"
                    )));
                }
                Ok(m)
            };
            let alpha = match parse(a) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let beta = match parse(b) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let table = ConverseTable::build(model);
            let result = weak_composition(&table, alpha, beta);
            let mut csv = String::new();
            for gamma in &result.gammas {
                csv.push_str(&format!("{}\n", compact(*gamma)));
            }
            if let Some(code) = write_csv(out, &csv) {
                return code;
            }
            println!("gammas={}", result.gammas.len());
            EXIT_OK
        }
        other => input_error(format_args!("unknown table {other:?} (expected converses or compose)")),
    }
}

fn compact(m: DirectionMatrix) -> String {
    m.to_string().chars().filter(|&c| c != '/').collect()
}

fn write_csv(out: Option<&Path>, csv: &str) -> Option<u8> {
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, csv) {
                return Some(input_error(format_args!("cannot write {}: {e}", path.display())));
            }
            None
        }
        None => {
            print!("{csv}");
            None
        }
    }
}
