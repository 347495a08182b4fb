//! `bookcross`: book crossing numbers, MSO₂ formulas and model checking
//! from the command line.
//!
//! Exit status: 0 success, 1 property false under `--strict`, 2 usage or
//! input error, 3 evaluation budget exhausted.

/// `println!` that exits quietly once stdout is closed (e.g. piped to `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

mod suites;

use bookcross::bookdraw::{
    cr1_exact_with_limit, cr2_exact_with_limit, enumerate_crossing_diagrams,
    is_2page_planar_with_limit, render_svg, BookDrawing, DrawError, DEFAULT_CR1_MAX_N,
    DEFAULT_CR2_MAX_N, DEFAULT_MAX_DIAGRAM_K,
};
use bookcross::checker::{
    model_check_reporting, CheckError, Engine, EvalBudget, DEFAULT_RANK_LIMIT,
};
use bookcross::graph::{is_outerplanar, parse_edge_list, parse_graph6, Graph};
use bookcross::mso::book::{
    build_onepage_with_limit, build_twopage, build_zeta_with_limit, DEFAULT_ONEPAGE_MAX_K,
    DEFAULT_ZETA_MAX_K,
};
use bookcross::mso::build::{build_basic, BASIC_NAMES};
use bookcross::mso::{parse_formula, Formula};
use bookcross::treewidth::{treewidth_exact_with_limit, DEFAULT_TREEWIDTH_MAX_N};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "bookcross",
    version,
    about = "Book crossing numbers and MSO2 model checking for small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Naive,
    Courcelle,
    Auto,
}

#[derive(Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Input format; guessed from the text when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct Strict {
    /// Exit with status 1 when the answer is negative.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock budget in milliseconds.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget_ms: Option<u64>,
    /// Quantifier-rank limit of the decomposition engine.
    #[arg(long, default_value_t = DEFAULT_RANK_LIMIT)]
    rank: usize,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
    /// Evaluate library subformulas literally instead of by direct algorithms.
    #[arg(long)]
    no_intrinsics: bool,
}

impl BudgetArgs {
    fn budget(&self) -> EvalBudget {
        let mut b = EvalBudget {
            rank_limit: self.rank,
            intrinsics: !self.no_intrinsics,
            ..EvalBudget::default()
        };
        if let Some(ms) = self.budget_ms {
            b.max_time = Some(Duration::from_millis(ms));
        }
        b.engine = match self.engine {
            EngineArg::Naive => Engine::Naive,
            EngineArg::Courcelle => Engine::Courcelle,
            EngineArg::Auto => Engine::Auto,
        };
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// 1-page crossing number: prints `k=<int>`.
    Cr1 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CR1_MAX_N)]
        max_n: usize,
        /// Write the optimal drawing here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cut the circular spine before this vertex for linear output.
        #[arg(long)]
        cut: Option<usize>,
    },
    /// 2-page crossing number: prints `k=<int>`.
    Cr2 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CR2_MAX_N)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cut: Option<usize>,
    },
    /// Crossing-free 2-page embedding exists: prints `yes` or `no`.
    Planar2 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CR2_MAX_N)]
        max_n: usize,
        #[command(flatten)]
        strict: Strict,
    },
    /// Outerplanarity: prints `yes` or `no`.
    Outerplanar {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        strict: Strict,
    },
    /// Exact treewidth: prints `tw=<int>`.
    Treewidth {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_TREEWIDTH_MAX_N)]
        max_n: usize,
        /// Write the decomposition here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluates a closed formula: prints `true`, `false` or `unsupported`,
    /// then the engine used.
    MsoCheck {
        #[command(flatten)]
        input: Input,
        /// Formula file in S-expression syntax.
        #[arg(long, conflicts_with = "name", required_unless_present = "name")]
        formula: Option<PathBuf>,
        /// Library formula name (see `formula --list`).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Largest crossing bound the builders accept; formula size grows quickly.
        #[arg(long)]
        max_k: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        strict: Strict,
    },
    /// Prints a library formula.
    Formula {
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        /// Crossing bound for `onepage` and `zeta`.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Largest crossing bound the builders accept; formula size grows quickly.
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        list: bool,
    },
    /// Lists canonical crossing diagrams, one per line.
    Diagrams {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(0..=DEFAULT_MAX_DIAGRAM_K as u64))]
        max_k: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        pages: u8,
    },
    /// Runs a verification suite and prints a pass/fail table.
    Verify {
        /// Suite name, or `all`; `--list` shows them.
        #[arg(required_unless_present = "list")]
        suite: Option<String>,
        #[arg(long)]
        list: bool,
        /// Largest graph order in the corpus (defaults per suite).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_n: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget_ms: Option<u64>,
    },
    /// Writes an SVG arc diagram of an optimal drawing.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        pages: u8,
        /// Use this drawing instead of solving.
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CR2_MAX_N)]
        max_n: usize,
        /// SVG destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Why a command stopped.
enum Stop {
    Usage(String),
    Budget,
    Negative,
}

impl From<CheckError> for Stop {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Budget => Stop::Budget,
            other => Stop::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Stop {
    Stop::Usage(e.to_string())
}

fn read_text(path: &str) -> Result<String, Stop> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(usage)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_graph(input: &Input) -> Result<Graph, Stop> {
    let text = read_text(&input.input)?;
    let format = input.format.unwrap_or_else(|| {
        let body: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if body.len() == 1 && !body[0].contains(char::is_whitespace) {
            Format::Graph6
        } else {
            Format::Edgelist
        }
    });
    match format {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("");
            parse_graph6(line).map_err(usage)
        }
        Format::Edgelist => parse_edge_list(&text).map_err(usage),
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Stop> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn cut(d: &mut BookDrawing, at: Option<usize>) -> Result<(), Stop> {
    if let Some(v) = at {
        let i = d
            .spine
            .iter()
            .position(|&x| x == v)
            .ok_or_else(|| usage(format!("no vertex {v}")))?;
        d.spine.rotate_left(i);
    }
    Ok(())
}

/// Library formula by name; `onepage` and `zeta` take `k` from a `-<k>`
/// suffix or from `--k`.
fn named_formula(name: &str, k: usize, max_k: Option<usize>) -> Result<Formula, Stop> {
    let (base, k) = match name.rsplit_once('-') {
        Some((b @ ("onepage" | "zeta"), n)) => (
            b,
            n.parse()
                .map_err(|_| usage(format!("bad crossing bound in {name:?}")))?,
        ),
        _ => (name, k),
    };
    match base {
        "onepage" => {
            build_onepage_with_limit(k, max_k.unwrap_or(DEFAULT_ONEPAGE_MAX_K)).map_err(usage)
        }
        "twopage" => Ok(build_twopage()),
        "zeta" => build_zeta_with_limit(k, max_k.unwrap_or(DEFAULT_ZETA_MAX_K)).map_err(usage),
        other => build_basic(other).map_err(usage),
    }
}

fn yes_no(answer: bool, strict: &Strict) -> Result<(), Stop> {
    say!("{}", if answer { "yes" } else { "no" });
    if strict.strict && !answer {
        return Err(Stop::Negative);
    }
    Ok(())
}

fn draw_err(e: DrawError) -> Stop {
    usage(e)
}

fn run(cli: Cli) -> Result<(), Stop> {
    match cli.command {
        Command::Cr1 {
            input,
            max_n,
            out,
            cut: at,
        } => {
            let g = read_graph(&input)?;
            let (k, mut d) = cr1_exact_with_limit(&g, max_n).map_err(draw_err)?;
            cut(&mut d, at)?;
            say!("k={k}");
            let text = d.display(&g).to_string();
            write_out(&out, &text)
        }
        Command::Cr2 {
            input,
            max_n,
            out,
            cut: at,
        } => {
            let g = read_graph(&input)?;
            let (k, mut d) = cr2_exact_with_limit(&g, max_n).map_err(draw_err)?;
            cut(&mut d, at)?;
            say!("k={k}");
            let text = d.display(&g).to_string();
            write_out(&out, &text)
        }
        Command::Planar2 {
            input,
            max_n,
            strict,
        } => {
            let g = read_graph(&input)?;
            yes_no(
                is_2page_planar_with_limit(&g, max_n).map_err(draw_err)?,
                &strict,
            )
        }
        Command::Outerplanar { input, strict } => {
            let g = read_graph(&input)?;
            yes_no(is_outerplanar(&g), &strict)
        }
        Command::Treewidth { input, max_n, out } => {
            let g = read_graph(&input)?;
            let (w, td) = treewidth_exact_with_limit(&g, max_n).map_err(usage)?;
            say!("tw={w}");
            write_out(&out, &td.to_string())
        }
        Command::MsoCheck {
            input,
            formula,
            name,
            k,
            max_k,
            budget,
            strict,
        } => {
            let f = match (&formula, &name) {
                (Some(path), _) => {
                    parse_formula(&read_text(&path.to_string_lossy())?).map_err(usage)?
                }
                (None, Some(n)) => named_formula(n, k, max_k)?,
                (None, None) => return Err(usage("give --formula or --name")),
            };
            let g = read_graph(&input)?;
            match model_check_reporting(&g, &f, &budget.budget()) {
                Ok((answer, engine)) => {
                    say!("{answer}");
                    say!(
                        "engine={}",
                        if engine == Engine::Courcelle {
                            "courcelle"
                        } else {
                            "naive"
                        }
                    );
                    if strict.strict && !answer {
                        return Err(Stop::Negative);
                    }
                    Ok(())
                }
                // Only reachable with `--engine courcelle`: the automatic
                // choice falls back to the naive engine instead.
                Err(
                    CheckError::Unsupported
                    | CheckError::RankOverLimit { .. }
                    | CheckError::WidthOverLimit { .. },
                ) => {
                    say!("unsupported");
                    say!("engine=courcelle");
                    Ok(())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Formula {
            name,
            k,
            max_k,
            list,
        } => {
            if list {
                for n in BASIC_NAMES {
                    say!("{n}");
                }
                for n in ["onepage-<k>", "twopage", "zeta-<k>"] {
                    say!("{n}");
                }
                return Ok(());
            }
            let f = named_formula(name.as_deref().unwrap_or_default(), k, max_k)?;
            say!("{f}");
            Ok(())
        }
        Command::Diagrams { max_k, pages } => {
            for k in 0..=max_k as usize {
                for d in enumerate_crossing_diagrams(k, pages).map_err(draw_err)? {
                    say!("k={k} {d}");
                }
            }
            Ok(())
        }
        Command::Verify {
            suite,
            list,
            max_n,
            budget_ms,
        } => {
            if list {
                for s in suites::SUITES {
                    say!("{}", s.name);
                }
                return Ok(());
            }
            let opts = suites::Options {
                max_n: max_n.map(|x| x as usize),
                budget: budget_ms.map(Duration::from_millis),
            };
            let name = suite.unwrap_or_default();
            let picked: Vec<&suites::Suite> = if name == "all" {
                suites::SUITES.iter().collect()
            } else {
                let s = suites::SUITES
                    .iter()
                    .find(|s| s.name == name)
                    .ok_or_else(|| usage(format!("unknown suite {name:?}; try `verify --list`")))?;
                vec![s]
            };
            let mut failed = false;
            say!("suite\tstatus\tclaim\tdetail");
            for s in picked {
                failed |= !suites::run(s, &opts);
            }
            if failed {
                Err(Stop::Negative)
            } else {
                Ok(())
            }
        }
        Command::Render {
            input,
            pages,
            drawing,
            max_n,
            out,
        } => {
            let g = read_graph(&input)?;
            let d = match drawing {
                Some(p) => {
                    BookDrawing::parse(&g, &read_text(&p.to_string_lossy())?).map_err(draw_err)?
                }
                None if pages == 1 => cr1_exact_with_limit(&g, max_n).map_err(draw_err)?.1,
                None => cr2_exact_with_limit(&g, max_n).map_err(draw_err)?.1,
            };
            let svg = render_svg(&g, &d);
            match out {
                Some(_) => write_out(&out, &svg),
                None => {
                    say!("{}", svg.trim_end());
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Stop::Negative) => ExitCode::from(1),
        Err(Stop::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Stop::Budget) => {
            eprintln!("error: evaluation budget exhausted");
            ExitCode::from(3)
        }
    }
}
