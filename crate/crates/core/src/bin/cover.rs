use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use intree_cover::cover::{check_feasible, solve_cover_with, Engine};
use intree_cover::graph::Instance;
use intree_cover::io::{
    emit_instance, emit_solution, export_dot, gen_planted_acyclic, gen_proper, gen_random, parse_instance,
    read_solution, run_bench, verify_solution, ReasonDoc, Suite,
};

const SOLVED: u8 = 0;
const ERROR: u8 = 1;
const INFEASIBLE: u8 = 2;

#[derive(Parser)]
#[command(name = "cover", version, about = "Cover the arcs of a directed multigraph by rooted spanning in-trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    General,
    Acyclic,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => Engine::Auto,
            EngineArg::General => Engine::General,
            EngineArg::Acyclic => Engine::Acyclic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMode {
    /// Arbitrary arcs; may well be infeasible.
    Random,
    /// Proper by construction.
    Proper,
    /// Acyclic and coverable by construction.
    Planted,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Small,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution document.
    Solve {
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        file: PathBuf,
    },
    /// Decide coverability without building trees.
    Check {
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        file: PathBuf,
    },
    /// Check a solution document against its instance.
    Verify { file: PathBuf, solution: PathBuf },
    /// Print a seeded random instance.
    Gen {
        #[arg(long, short = 'n', default_value_t = 8)]
        vertices: usize,
        #[arg(long, short = 'm', default_value_t = 14)]
        arcs: usize,
        #[arg(long, short = 'd', default_value_t = 2)]
        roots: usize,
        #[arg(long, default_value_t = 2)]
        fmax: usize,
        #[arg(long)]
        acyclic: bool,
        #[arg(long, value_enum, default_value = "random")]
        mode: GenMode,
        #[arg(long, env = "COVER_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Time the solver on a generated suite and check the runtime budgets.
    Bench {
        #[arg(long, value_enum, default_value = "small")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, env = "COVER_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<Instance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let inst = parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if inst.max_demand() > inst.arc_count() {
        eprintln!(
            "cover: warning: a demand of {} exceeds the arc count {}",
            inst.max_demand(),
            inst.arc_count()
        );
    }
    Ok(inst)
}

/// Writes to stdout; a closed pipe ends output quietly.
fn out(text: &str) -> Result<(), String> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Solve { engine, emit, file } => {
            let inst = load(&file)?;
            let outcome = solve_cover_with(&inst, engine.into()).map_err(|e| e.to_string())?;
            match emit {
                Emit::Json => out(&emit_solution(&inst, &outcome).to_json())?,
                Emit::Dot => out(&export_dot(&inst, outcome.solution().map(|s| &s.canonical)))?,
            }
            Ok(if outcome.is_solved() { SOLVED } else { INFEASIBLE })
        }
        Command::Check { engine, file } => {
            let inst = load(&file)?;
            match check_feasible(&inst, engine.into()).map_err(|e| e.to_string())? {
                Ok(used) => {
                    out(&format!("coverable ({used} engine)\n"))?;
                    Ok(SOLVED)
                }
                Err(reason) => {
                    let doc = ReasonDoc::from(&reason);
                    let json = serde_json::to_string(&doc).map_err(|e| e.to_string())?;
                    out(&format!("infeasible: {reason}\n{json}\n"))?;
                    Ok(INFEASIBLE)
                }
            }
        }
        Command::Verify { file, solution } => {
            let inst = load(&file)?;
            let text = fs::read_to_string(&solution).map_err(|e| format!("{}: {e}", solution.display()))?;
            let doc = read_solution(&text).map_err(|e| format!("{}: {e}", solution.display()))?;
            verify_solution(&inst, &doc).map_err(|e| format!("rejected: {e}"))?;
            out("accepted\n")?;
            Ok(SOLVED)
        }
        Command::Gen { vertices, arcs, roots, fmax, acyclic, mode, seed } => {
            let inst = match mode {
                GenMode::Random => gen_random(vertices, arcs, roots, fmax, seed, acyclic),
                GenMode::Proper => gen_proper(vertices, arcs, roots, fmax, seed, acyclic),
                GenMode::Planted => gen_planted_acyclic(vertices, arcs, roots, fmax, seed),
            }
            .map_err(|e| e.to_string())?;
            out(&emit_instance(&inst))?;
            Ok(SOLVED)
        }
        Command::Bench { suite, seeds, seed } => {
            let suite = match suite {
                SuiteArg::Small => Suite::Small,
                SuiteArg::Random => Suite::Random,
            };
            let report = run_bench(suite, seeds, seed);
            out(&format!("{report}\n"))?;
            Ok(if report.all_within_budget() { SOLVED } else { ERROR })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("cover: {msg}");
            ExitCode::from(ERROR)
        }
    }
}

