use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cww_core::codebook::{synthesize_codebook, EndpointsDocument};
use cww_core::report::{compare_reports, parse_report};
use cww_core::{
    render_report, solve_scenario, Codebook, EncoderMethod, Error, ErrorClass, HeightMode, Methods, ReportFormat,
    RuleBase, Scenario, SolveOptions,
};

#[derive(Parser)]
#[command(name = "cww", version, about = "Perceptual Reasoning and 2-tuple recommendations for welder scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Codebook utilities.
    #[command(subcommand)]
    Codebook(CodebookCommand),
    /// Run the recommendation pipeline on a scenario.
    Infer(InferArgs),
    /// Compare two CSV or structured reports cell by cell.
    Compare {
        left: PathBuf,
        right: PathBuf,
        /// Largest tolerated absolute difference of numeric cells.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum CodebookCommand {
    /// Check a codebook file (JSON, or a CSV word table).
    Validate { path: PathBuf },
    /// Encode a codebook from end-point ranges via synthesized intervals.
    Synthesize {
        #[arg(long)]
        endpoints: PathBuf,
        #[arg(long, value_enum)]
        method: Encoder,
        #[arg(long)]
        seed: u64,
        /// Intervals drawn per word.
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct InferArgs {
    #[arg(long)]
    codebook: PathBuf,
    #[arg(long)]
    rules: PathBuf,
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = HeightArg::Blend)]
    height_mode: HeightArg,
    #[arg(long, default_value_t = cww_core::scheduler::DEFAULT_ALPHA_LEVELS)]
    alpha_levels: usize,
    #[arg(long, default_value_t = cww_core::fou::DEFAULT_GRID_STEP)]
    grid_step: f64,
    /// Recorded in the report provenance.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Md)]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoder {
    Ia,
    Hma,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pr,
    TwoTuple,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeightArg {
    Blend,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Structured,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Self { code: 2, message }
    }

    /// Wraps a core error raised while handling the file `path` in role `what`.
    fn from_core(what: &str, path: &Path, err: Error) -> Self {
        let message = match &err {
            Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => {
                format!("{what} not found: {}", path.display())
            }
            Error::Io { source, .. } => format!("{what} {}: {source}", path.display()),
            other => format!("{what} {}: {other}", path.display()),
        };
        let code = match err.class() {
            ErrorClass::Input => 2,
            ErrorClass::Computation => 3,
        };
        Self { code, message }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("cww: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Codebook(CodebookCommand::Validate { path }) => {
            let cb = Codebook::load(&path).map_err(|e| Failure::from_core("codebook", &path, e))?;
            let words: usize = cb.variables.iter().map(|v| v.words.len()).sum();
            println!("{}: ok ({} variables, {words} words)", path.display(), cb.variables.len());
            Ok(0)
        }
        Command::Codebook(CodebookCommand::Synthesize {
            endpoints,
            method,
            seed,
            n,
            out,
        }) => {
            let text = read(&endpoints, "endpoints")?;
            let doc: EndpointsDocument =
                serde_json::from_str(&text).map_err(|e| Failure::from_core("endpoints", &endpoints, e.into()))?;
            let method = match method {
                Encoder::Ia => EncoderMethod::Ia,
                Encoder::Hma => EncoderMethod::Hma,
            };
            let cb = synthesize_codebook(&doc, method, n, seed).map_err(|e| Failure::from_core("endpoints", &endpoints, e))?;
            let json = cb.to_json_string().map_err(|e| Failure::from_core("output", &out, e))? + "\n";
            write_atomic(&out, &json)?;
            Ok(0)
        }
        Command::Infer(args) => infer(args),
        Command::Compare { left, right, tol } => {
            let a = parse_report(&read(&left, "report")?).map_err(|e| Failure::from_core("report", &left, e))?;
            let b = parse_report(&read(&right, "report")?).map_err(|e| Failure::from_core("report", &right, e))?;
            let diffs = compare_reports(&a, &b, tol);
            for d in &diffs {
                println!("{d}");
            }
            if diffs.is_empty() {
                println!("reports match ({} cells, tol {tol})", a.len());
                Ok(0)
            } else {
                println!("{} differing cells", diffs.len());
                Ok(1)
            }
        }
    }
}

fn infer(args: InferArgs) -> Result<u8, Failure> {
    let codebook = Codebook::load(&args.codebook).map_err(|e| Failure::from_core("codebook", &args.codebook, e))?;
    let rules = RuleBase::load(&args.rules).map_err(|e| Failure::from_core("rules", &args.rules, e))?;
    rules
        .validate(&codebook)
        .map_err(|e| Failure::from_core("rules", &args.rules, e))?;
    let scenario = Scenario::load(&args.scenario).map_err(|e| Failure::from_core("scenario", &args.scenario, e))?;
    if args.alpha_levels < 2 {
        return Err(Failure::input(format!("--alpha-levels must be at least 2, got {}", args.alpha_levels)));
    }
    if !(args.grid_step.is_finite() && args.grid_step > 0.0) {
        return Err(Failure::input(format!("--grid-step must be positive, got {}", args.grid_step)));
    }
    let opts = SolveOptions {
        methods: match args.method {
            MethodArg::Pr => Methods { pr: true, two_tuple: false },
            MethodArg::TwoTuple => Methods { pr: false, two_tuple: true },
            MethodArg::Both => Methods::BOTH,
        },
        height_mode: match args.height_mode {
            HeightArg::Blend => HeightMode::WeightedBlend,
            HeightArg::Min => HeightMode::Min,
        },
        alpha_levels: args.alpha_levels,
        grid_step: args.grid_step,
        seed: args.seed,
    };
    let report =
        solve_scenario(&scenario, &rules, &codebook, &opts).map_err(|e| Failure::from_core("scenario", &args.scenario, e))?;
    let format = match args.format {
        FormatArg::Md => ReportFormat::Md,
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Structured => ReportFormat::Structured,
    };
    let text = render_report(&report, format).map_err(|e| Failure::from_core("scenario", &args.scenario, e))?;
    match &args.out {
        Some(path) => write_atomic(path, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::input(format!("stdout: {e}")))?;
        }
    }
    Ok(0)
}

fn read(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|source| {
        Failure::from_core(
            what,
            path,
            Error::Io {
                path: path.display().to_string(),
                source,
            },
        )
    })
}

/// Writes to a temporary file next to `path`, then renames it into place.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::input(format!("output {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
