//! `findim`: homological computations and finitistic-dimension checks on
//! bound quiver algebras given in the presentation DSL.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use findim::homological::SyzygyTable;
use findim::igusa_todorov::psi;
use findim::session::Session;
use findim::verdict::{replay, run_request, Config, Hints, Request, Verdict};
use serde_json::{json, Value};


#[derive(Parser, Debug)]
#[command(name = "findim", version, about = "Syzygies, projective dimensions and finitistic-dimension criteria for bound quiver algebras")]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomised parts of module decomposition.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Maximal number of syzygy steps when computing projective dimensions.
    #[arg(long, global = true, default_value_t = 64)]
    cutoff: usize,
    /// Maximal number of steps when exploring syzygy orbits.
    #[arg(long = "orbit-bound", global = true, default_value_t = 32)]
    orbit_bound: usize,
    /// Exit with status 2 when a verdict is inconclusive.
    #[arg(long, global = true)]
    strict: bool,
    /// Rerun every check recorded in a JSON verdict report and compare.
    #[arg(long, value_name = "REPORT")]
    replay: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, graded basis and nilpotency index.
    Basis { file: PathBuf },
    /// Projective dimension of a module.
    Pd {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Successive syzygies of a module with their decompositions.
    Syzygy {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Indecomposable summands of a module.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// The Igusa–Todorov function of a module.
    Psi {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Syzygy orbit of a set of modules.
    Orbit {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        modules: Vec<String>,
        /// Overrides --orbit-bound.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Check the hypotheses of an ideal criterion.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Run a built-in worked example end to end.
    Example {
        #[arg(value_parser = ["4.1", "4.2", "4.3", "4.4", "4.5"])]
        id: String,
        /// Number of parallel arrows in the parametrised family.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Two ideals with IJ·rad A = 0.
    Ij {
        file: PathBuf,
        #[arg(long = "I")]
        i: String,
        #[arg(long = "J")]
        j: String,
        #[command(flatten)]
        hints: HintArgs,
    },
    /// A nested chain of ideals, each killing the radical modulo the previous.
    Chain {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        ideals: Vec<String>,
        #[command(flatten)]
        hints: HintArgs,
    },
    /// Every criterion phrased through powers of the radical.
    Radical {
        file: PathBuf,
        #[command(flatten)]
        hints: HintArgs,
    },
}

/// Assertions about quotients `A/I`, named by `I` (`0` for `A`).
#[derive(Args, Debug, Default)]
struct HintArgs {
    #[arg(long = "assert-rep-finite", value_name = "IDEAL")]
    rep_finite: Vec<String>,
    #[arg(long = "assert-syzygy-finite", value_name = "IDEAL")]
    syzygy_finite: Vec<String>,
    #[arg(long = "assert-syzygy-bounded", value_name = "IDEAL")]
    syzygy_bounded: Vec<String>,
    #[arg(long = "assert-igusa-todorov", value_name = "IDEAL")]
    igusa_todorov: Vec<String>,
}

impl HintArgs {
    fn into_hints(self) -> Hints {
        Hints {
            rep_finite: self.rep_finite,
            syzygy_finite: self.syzygy_finite,
            syzygy_bounded: self.syzygy_bounded,
            igusa_todorov: self.igusa_todorov,
        }
    }
}

struct Outcome {
    report: report::Report,
    inconclusive: bool,
    failed: bool,
}

impl Outcome {
    fn plain(report: report::Report) -> Self {
        Outcome {
            report,
            inconclusive: false,
            failed: false,
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load(path: &PathBuf) -> Result<Session, String> {
    Session::load(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdicts(req: Request, cfg: &Config) -> Result<Outcome, String> {
    let vs = run_request(&req, cfg).map_err(|e| e.to_string())?;
    let inconclusive = vs.iter().any(|v| !v.is_conclusive());
    Ok(Outcome {
        report: report::verdicts(&vs),
        inconclusive,
        failed: false,
    })
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let cfg = Config {
        seed: cli.seed,
        cutoff: cli.cutoff,
        orbit_bound: cli.orbit_bound,
    };
    if let Some(path) = &cli.replay {
        let text = read(path)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let recorded: Vec<Verdict> = match value {
            Value::Array(_) => serde_json::from_value(value),
            other => serde_json::from_value(other).map(|v| vec![v]),
        }
        .map_err(|e| format!("{}: not a verdict report: {e}", path.display()))?;
        let r = replay(&recorded).map_err(|e| e.to_string())?;
        let failed = !r.agrees();
        return Ok(Outcome {
            report: report::replay(&r),
            inconclusive: false,
            failed,
        });
    }
    let Some(command) = cli.command else {
        return Err("no command given; see --help".into());
    };
    match command {
        Command::Basis { file } => {
            let s = load(&file)?;
            Ok(Outcome::plain(report::basis(&s.algebra)))
        }
        Command::Pd { file, module } => {
            let s = load(&file)?;
            let m = s.parse_module(&module).map_err(|e| e.to_string())?;
            let mut t = SyzygyTable::new(&s.algebra, cfg.seed);
            let pd = t.pd(&m, cfg.cutoff);
            Ok(Outcome::plain(report::pd(&module, &pd, &t)))
        }
        Command::Syzygy { file, module, steps } => {
            let s = load(&file)?;
            let m = s.parse_module(&module).map_err(|e| e.to_string())?;
            let mut t = SyzygyTable::new(&s.algebra, cfg.seed);
            let mut out = Vec::new();
            let mut cur = m;
            for step in 0..=steps {
                let d = t.intern(&cur).map_err(|e| e.to_string())?;
                out.push((step, cur.dims().to_vec(), d));
                if cur.is_zero() {
                    break;
                }
                cur = findim::homological::syzygy(&cur);
            }
            Ok(Outcome::plain(report::syzygies(&module, &out, &t)))
        }
        Command::Decompose { file, module } => {
            let s = load(&file)?;
            let m = s.parse_module(&module).map_err(|e| e.to_string())?;
            let mut t = SyzygyTable::new(&s.algebra, cfg.seed);
            let d = t.intern(&m).map_err(|e| e.to_string())?;
            Ok(Outcome::plain(report::decomposition(&module, m.dims(), &d, &t)))
        }
        Command::Psi { file, module } => {
            let s = load(&file)?;
            let m = s.parse_module(&module).map_err(|e| e.to_string())?;
            let mut t = SyzygyTable::new(&s.algebra, cfg.seed);
            let r = psi(&mut t, &m, cfg.cutoff, cfg.orbit_bound).map_err(|e| e.to_string())?;
            Ok(Outcome::plain(report::psi(&module, &r)))
        }
        Command::Orbit { file, modules, bound } => {
            let s = load(&file)?;
            let gens = modules
                .iter()
                .map(|spec| s.parse_module(spec).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let mut t = SyzygyTable::new(&s.algebra, cfg.seed);
            let o = t
                .syzygy_orbit(&gens, bound.unwrap_or(cfg.orbit_bound))
                .map_err(|e| e.to_string())?;
            Ok(Outcome::plain(report::orbit(&modules, &o, &t)))
        }
        Command::Check(CheckCommand::Ij { file, i, j, hints }) => verdicts(
            Request::Ij {
                source: read(&file)?,
                i,
                j,
                hints: hints.into_hints(),
            },
            &cfg,
        ),
        Command::Check(CheckCommand::Chain { file, ideals, hints }) => verdicts(
            Request::Chain {
                source: read(&file)?,
                ideals,
                hints: hints.into_hints(),
            },
            &cfg,
        ),
        Command::Check(CheckCommand::Radical { file, hints }) => verdicts(
            Request::Radical {
                source: read(&file)?,
                hints: hints.into_hints(),
            },
            &cfg,
        ),
        Command::Example { id, n } => verdicts(Request::Example { id, n }, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let json = cli.json;
    let strict = cli.strict;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.report.json).expect("reports serialise"));
            } else {
                print!("{}", out.report.text);
            }
            if out.failed {
                ExitCode::from(1)
            } else if strict && out.inconclusive {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            if json {
                eprintln!("{}", json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}
