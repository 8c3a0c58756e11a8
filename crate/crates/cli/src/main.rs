//! `nimgraph`: solve, analyze, generate, verify and play Nim on weighted
//! graphs, or serve the HTTP API.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 oracle budget exceeded.

mod play;

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nimgraph_core::strategies::dispatch;
use nimgraph_core::{
    detect, generate, identical_options, isomorphic_options, label, parse_instance, serialize_instance, Family,
    GameGraph, Move, SolveBudget, SolveError, Solver, Suite, SuiteParams, VerifyError, WeightSpec,
};

#[derive(Parser)]
#[command(name = "nimgraph", version, about = "Nim on weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Oracle,
    Strategy,
}

#[derive(clap::Args)]
struct BudgetArg {
    /// Oracle memo budget, in states.
    #[arg(long, default_value_t = nimgraph_core::solver::DEFAULT_MAX_STATES, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: u64,
}

impl BudgetArg {
    fn budget(&self) -> SolveBudget {
        SolveBudget::new(self.max_states)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the winner, Grundy value and winning moves of an instance.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// As `solve`, plus detected structures and the closed-form prediction.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Write an instance file for a graph family.
    Generate {
        /// path, cycle, complete, k2j or ssb; `name:param` also accepted.
        #[arg(long)]
        family: String,
        /// Vertex count for path, cycle and complete.
        #[arg(long)]
        n: Option<usize>,
        /// Leaf count for k2j and ssb.
        #[arg(long)]
        j: Option<usize>,
        /// uniform:<k>, list:<w1>,<w2>,... or random:<cap>.
        #[arg(long, default_value = "uniform:1")]
        weights: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_path_len: Option<usize>,
        #[arg(long)]
        max_odd_cycle: Option<usize>,
        #[arg(long)]
        odd_cycle_samples: Option<usize>,
        #[arg(long)]
        c8_samples: Option<usize>,
        #[arg(long)]
        max_j: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        mutual_graphs: Option<usize>,
        #[arg(long)]
        k5_samples: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Play in the terminal against an engine. Moves are `<vertex> <weight>`
    /// with 1-based vertices, e.g. `v2 0`.
    Play {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Strategy)]
        engine: Engine,
        /// Let the engine make the first move.
        #[arg(long)]
        engine_first: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory of static assets served at `/`.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Maximum number of live sessions.
        #[arg(long, default_value_t = NonZeroUsize::new(256).unwrap())]
        capacity: NonZeroUsize,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

/// A failure carrying its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::BudgetExceeded { .. } | SolveError::StateSpaceTooLarge => 3,
            SolveError::InvalidState(_) => 2,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Solve(inner) => inner.into(),
            VerifyError::BudgetExceeded { .. } => Self { code: 3, message: e.to_string() },
            VerifyError::Family(_) => Self::usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self { code: 2, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<GameGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn moves_list(moves: &[Move]) -> String {
    if moves.is_empty() {
        "none".into()
    } else {
        moves.iter().map(Move::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn solve_report(graph: &GameGraph, budget: SolveBudget) -> Result<String, Failure> {
    let state = graph.fresh_state();
    let analysis = Solver::new(graph, budget)?.solve(&state)?;
    let mut out = String::new();
    writeln!(out, "state: {state}").unwrap();
    writeln!(out, "winner: {}", analysis.winner).unwrap();
    writeln!(out, "grundy: {}", analysis.grundy).unwrap();
    writeln!(out, "winning moves: {}", moves_list(&analysis.optimal_moves)).unwrap();
    writeln!(out, "states visited: {}", analysis.states_visited).unwrap();
    Ok(out)
}

fn classes(groups: &[Vec<usize>]) -> String {
    groups
        .iter()
        .map(|g| format!("{{{}}}", g.iter().map(|&v| label(v)).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn analyze_report(graph: &GameGraph, budget: SolveBudget) -> Result<String, Failure> {
    let state = graph.fresh_state();
    let tags = detect(graph, &state);
    let d = dispatch(graph, &state);
    let mut out = String::new();
    writeln!(out, "tags: {}", if tags.is_empty() { "none".into() } else { tags.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") }).unwrap();
    match d.strategy {
        Some(kind) => writeln!(
            out,
            "prediction: {} via {kind}{}",
            d.prediction,
            d.chosen.map_or(String::new(), |m| format!(", move {m}"))
        )
        .unwrap(),
        None => writeln!(out, "prediction: {}", d.prediction).unwrap(),
    }
    writeln!(out, "identical options: {}", classes(&identical_options(graph, &state))).unwrap();
    writeln!(out, "isomorphic options: {}", classes(&isomorphic_options(graph, &state))).unwrap();
    out += &solve_report(graph, budget)?;
    Ok(out)
}

fn family_of(name: &str, n: Option<usize>, j: Option<usize>) -> Result<Family, Failure> {
    let spec = if name.contains(':') {
        name.to_string()
    } else {
        let param = match name {
            "k2j" | "ssb" => j.ok_or_else(|| Failure::usage(format!("--family {name} needs --j")))?,
            _ => n.ok_or_else(|| Failure::usage(format!("--family {name} needs --n")))?,
        };
        format!("{name}:{param}")
    };
    spec.parse().map_err(|e: nimgraph_core::FamilyError| Failure::usage(e.to_string()))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { file, budget } => {
            out.write_all(solve_report(&load(&file)?, budget.budget())?.as_bytes())?;
        }
        Command::Analyze { file, budget } => {
            out.write_all(analyze_report(&load(&file)?, budget.budget())?.as_bytes())?;
        }
        Command::Generate { family, n, j, weights, seed, output } => {
            let family = family_of(&family, n, j)?;
            let spec = WeightSpec::parse(&weights, seed).map_err(|e| Failure::usage(e.to_string()))?;
            let graph = generate(family, &spec).map_err(|e| Failure::usage(e.to_string()))?;
            let text = format!("# {family} weights {spec}\n{}", serialize_instance(&graph));
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Verify {
            suite,
            format,
            seed,
            max_path_len,
            max_odd_cycle,
            odd_cycle_samples,
            c8_samples,
            max_j,
            max_n,
            mutual_graphs,
            k5_samples,
            budget,
        } => {
            let mut params = SuiteParams { budget: budget.budget(), ..SuiteParams::default() };
            let knobs: [(Option<usize>, &mut usize); 8] = [
                (max_path_len, &mut params.max_path_len),
                (max_odd_cycle, &mut params.max_odd_cycle),
                (odd_cycle_samples, &mut params.odd_cycle_samples),
                (c8_samples, &mut params.c8_samples),
                (max_j, &mut params.max_j),
                (max_n, &mut params.max_n),
                (mutual_graphs, &mut params.mutual_graphs),
                (k5_samples, &mut params.k5_samples),
            ];
            for (given, slot) in knobs {
                if let Some(v) = given {
                    *slot = v;
                }
            }
            if let Some(seed) = seed {
                params.seed = seed;
            }
            let report = suite.run(&params)?;
            let text = match format {
                Format::Table => report.render_table(),
                Format::Csv => report.to_csv(),
            };
            out.write_all(text.as_bytes())?;
            if !report.passed() {
                if format == Format::Csv {
                    for f in &report.failures {
                        eprintln!("FAIL {} at {}: expected {}, observed {}", f.instance, f.state, f.expected, f.observed);
                    }
                }
                return Ok(1);
            }
        }
        Command::Play { file, engine, engine_first, budget } => {
            let graph = load(&file)?;
            let stdin = io::stdin();
            play::play(&graph, engine, engine_first, budget.budget(), &mut stdin.lock() as &mut dyn BufRead, out)?;
        }
        Command::Serve { port, host, static_dir, capacity, budget } => {
            let config = nimgraph_service::ServiceConfig { capacity, budget: budget.budget(), static_dir };
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new()?;
            eprintln!("listening on http://{addr}");
            runtime.block_on(nimgraph_service::serve(addr, config))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
