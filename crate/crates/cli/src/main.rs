//! `lrcube`: generate, embed, verify and search layer-rainbow latin cubes.
//!
//! Exit codes: 0 success, 1 malformed input or I/O failure, 2 infeasible
//! order (or an extension proved impossible), 3 cube fails verification,
//! 4 search budget exhausted.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand};
use lrcube::amalgamation::color_amalgam;
use lrcube::detachment::realize;
use lrcube::oracle::{self, CountOutcome, SearchLimits, SearchOutcome, Symmetry};
use lrcube::{base_cube, embed, format, verify, Error, LayerRainbowCube, NecessityWitness};

/// Largest order accepted by `generate` and `embed`.
const MAX_ORDER: usize = 1024;

#[derive(Parser)]
#[command(name = "lrcube", version, about = "Layer-rainbow latin cube toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Writes the modular base cube of order N
    Generate {
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Embeds the cube in INPUT into the corner of an order-N cube
    Embed {
        input: PathBuf,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Checks that every layer of the cube in INPUT holds each symbol once
    Verify { input: PathBuf },
    /// Exhaustively searches for an order-N extension of the cube in INPUT
    Oracle {
        input: PathBuf,
        n: usize,
        #[arg(long, default_value_t = 500_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 60_000)]
        time_budget_ms: u64,
        /// Count all extensions instead of stopping at the first
        #[arg(long)]
        count: bool,
        /// Treat symbols outside the corner as interchangeable
        #[arg(long)]
        symmetry: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Times every pipeline stage over a grid; prints CSV
    Bench {
        /// Corner orders, `A-B` or `A`
        #[arg(long, default_value = "2-4")]
        m: OrderRange,
        /// Target orders, `A-B` or `A`; pairs with n < 2m are skipped
        #[arg(long, default_value = "4-12")]
        n: OrderRange,
        /// Comma-separated seeds
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
    },
    /// Writes the per-color edge-kind table of the amalgam as CSV
    DumpTable {
        m: usize,
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Writes the colored extension cells as `x y z color` lines
    DumpExtension {
        m: usize,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy)]
struct OrderRange {
    lo: usize,
    hi: usize,
}

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid order {t:?}"))
        };
        let (lo, hi) = match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("invalid range {s:?}"));
        }
        Ok(OrderRange { lo, hi })
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn infeasible(witness: &NecessityWitness) -> Self {
        Failure {
            code: 2,
            message: format!("infeasible order: {witness}"),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match &e {
            Error::InfeasibleOrder(w) => Failure::infeasible(w),
            Error::NotRainbow(report) => Failure {
                code: 1,
                message: format!("input is not a layer-rainbow cube\n{report}"),
            },
            _ => Failure::malformed(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    // usage errors are malformed input; clap's own code 2 means infeasible here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate { n, out } => {
            check_order("n", n)?;
            let cube = base_cube(n)?;
            emit(out.as_deref(), &format::to_text(&cube))
        }
        Command::Embed {
            input,
            n,
            seed,
            out,
        } => {
            check_order("n", n)?;
            let small = read_rainbow(&input)?;
            let (big, _) = embed(&small, n, seed)?;
            emit(out.as_deref(), &format::to_text(&big))
        }
        Command::Verify { input } => {
            let cube = read_cube(&input)?;
            let report = verify(&cube);
            if report.is_valid() {
                print!("{report}");
                Ok(())
            } else {
                Err(Failure {
                    code: 3,
                    message: report.to_string().trim_end().to_owned(),
                })
            }
        }
        Command::Oracle {
            input,
            n,
            max_nodes,
            time_budget_ms,
            count,
            symmetry,
            out,
        } => {
            if n == 0 || n > oracle::MAX_ORDER {
                return Err(Failure::malformed(format!(
                    "oracle supports 1 <= n <= {}",
                    oracle::MAX_ORDER
                )));
            }
            let limits = SearchLimits::new(max_nodes, Duration::from_millis(time_budget_ms))?;
            let symmetry = if symmetry {
                Symmetry::RelabelNew
            } else {
                Symmetry::None
            };
            let small = read_rainbow(&input)?;
            if count {
                match oracle::count_extensions(&small, n, limits, symmetry)? {
                    CountOutcome::Exact(c) => emit(out.as_deref(), &format!("{c}\n")),
                    CountOutcome::BudgetExhausted { found_so_far } => Err(Failure {
                        code: 4,
                        message: format!("budget exhausted after {found_so_far} extensions"),
                    }),
                }
            } else {
                let result = oracle::brute_force_extend(&small, n, limits, symmetry)?;
                match result.outcome {
                    SearchOutcome::Found(cube) => emit(out.as_deref(), &format::to_text(&cube)),
                    SearchOutcome::ProvedImpossible => Err(Failure {
                        code: 2,
                        message: format!(
                            "no extension exists (search exhausted after {} nodes); {}",
                            result.nodes,
                            NecessityWitness::new(small.order(), n)
                        ),
                    }),
                    SearchOutcome::BudgetExhausted => Err(Failure {
                        code: 4,
                        message: format!("budget exhausted after {} nodes", result.nodes),
                    }),
                }
            }
        }
        Command::Bench { m, n, seeds } => bench(m, n, &seeds),
        Command::DumpTable { m, n, out } => {
            check_pipeline_orders(m, n)?;
            emit(out.as_deref(), &color_amalgam(m, n)?.to_csv())
        }
        Command::DumpExtension { m, n, seed, out } => {
            check_pipeline_orders(m, n)?;
            let ext = realize(&color_amalgam(m, n)?, seed)?;
            emit(out.as_deref(), &ext.to_debug_lines())
        }
    }
}

fn check_order(name: &str, v: usize) -> Result<(), Failure> {
    if v == 0 || v > MAX_ORDER {
        return Err(Failure::malformed(format!(
            "{name} must lie in 1..={MAX_ORDER}, got {v}"
        )));
    }
    Ok(())
}

fn check_pipeline_orders(m: usize, n: usize) -> Result<(), Failure> {
    check_order("n", n)?;
    if m < 2 {
        return Err(Failure::malformed(format!(
            "the amalgam coloring needs m >= 2, got {m}"
        )));
    }
    if n < 2 * m {
        return Err(Failure::infeasible(&NecessityWitness::new(m, n)));
    }
    Ok(())
}

fn read_cube(path: &Path) -> Result<lrcube::CubeArray, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn read_rainbow(path: &Path) -> Result<LayerRainbowCube, Failure> {
    Ok(LayerRainbowCube::new(read_cube(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::malformed(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::malformed(format!("stdout: {e}"))),
    }
}

fn bench(m: OrderRange, n: OrderRange, seeds: &[u64]) -> Result<(), Failure> {
    if seeds.is_empty() {
        return Err(Failure::malformed("no seeds given"));
    }
    check_order("n", n.hi)?;
    let mut out = String::from("m,n,seed,stage,micros\n");
    for mm in m.lo..=m.hi {
        let small = base_cube(mm)?;
        for nn in n.lo.max(2 * mm)..=n.hi {
            for &seed in seeds {
                let (_, report) = embed(&small, nn, seed)?;
                for (stage, elapsed) in &report.timings {
                    out.push_str(&format!(
                        "{mm},{nn},{seed},{stage},{}\n",
                        elapsed.as_micros()
                    ));
                }
            }
        }
    }
    emit(None, &out)
}
