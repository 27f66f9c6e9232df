//! `halfhex`: exact counting, kernel evaluation, correlation queries,
//! enumeration, sampling and rendering for nonintersecting stay/step-right
//! walker ensembles (equivalently, half-hexagon lozenge tilings).
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource cap exceeded.

mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, One};
use serde_json::json;

use halfhex_core::ensemble::DEFAULT_ENUM_CAP;
use halfhex_core::render::{parse_paths_ascii, render_ascii, render_svg, RenderMode};
use halfhex_core::verify::{inverse_identity_fault_suite, run_all, SuiteOutcome, SweepConfig};
use halfhex_core::{
    BinomialMatrixSpec, Configuration, EnsembleSpec, Error as CoreError, KernelContext,
    SpaceTimePoint,
};

use output::{
    config_csv_rows, decimal_of, ends_field, matrix_strings, positions_json, rational_str,
    spec_json,
};

#[derive(Parser)]
#[command(
    name = "halfhex",
    version,
    about = "Exact tiling counts, correlation kernels and uniform sampling \
             for nonintersecting stay/step-right walkers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Paths,
    Lozenges,
}

impl From<Mode> for RenderMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Paths => RenderMode::Paths,
            Mode::Lozenges => RenderMode::Lozenges,
        }
    }
}

#[derive(Args)]
struct EnsembleArgs {
    /// Half-hexagon order n (N = n+1 steps, walker i ends at 2i)
    #[arg(long, value_name = "N", conflicts_with_all = ["n", "steps", "ends"])]
    halfhex: Option<usize>,

    /// Number of walkers; must match the number of --ends values
    #[arg(long, requires = "ends")]
    n: Option<usize>,

    /// Number of time steps N
    #[arg(long, requires = "ends")]
    steps: Option<usize>,

    /// Comma-separated end positions y_1 < ... < y_n
    #[arg(long, value_delimiter = ',', requires = "steps")]
    ends: Option<Vec<i64>>,
}

impl EnsembleArgs {
    fn spec(&self) -> Result<EnsembleSpec, CliError> {
        if let Some(order) = self.halfhex {
            if order == 0 {
                return Err(CliError::input("half-hexagon order must be at least 1"));
            }
            return Ok(EnsembleSpec::half_hexagon(order));
        }
        let (Some(steps), Some(ends)) = (self.steps, self.ends.clone()) else {
            return Err(CliError::input(
                "specify either --halfhex <N> or both --steps <N> and --ends <y1,..,yn>",
            ));
        };
        if let Some(n) = self.n {
            if n != ends.len() {
                return Err(CliError::input(format!(
                    "--n {} disagrees with {} end positions",
                    n,
                    ends.len()
                )));
            }
        }
        Ok(EnsembleSpec::new(steps, ends)?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also show a floating-point rendering of scalar results (display only;
    /// exact values stay exact)
    #[arg(long)]
    decimal: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count configurations, i.e. lozenge tilings of the region
    Count {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the exact inverse of the boundary binomial matrix [C(N, y_j - i)]
    Invert {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification sweeps (closed forms vs. independent oracles)
    Verify {
        /// Cap on matrix sizes / walker counts in the sweeps
        #[arg(long, value_name = "N")]
        n_max: Option<usize>,
        /// Number of randomized cases per sweep
        #[arg(long)]
        cases: Option<usize>,
        /// Seed for the case generators (counterexamples replay exactly)
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run the sweep against a deliberately sign-broken inverse and
        /// succeed only if the fault is caught
        #[arg(long)]
        self_test: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the correlation kernel K(r, x; s, y) at one argument tuple
    Kernel {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(value_name = "R")]
        r: usize,
        #[arg(value_name = "X", allow_negative_numbers = true)]
        x: i64,
        #[arg(value_name = "S")]
        s: usize,
        #[arg(value_name = "Y", allow_negative_numbers = true)]
        y: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Probability that walkers occupy all the given sites, as a determinant
    Correlate {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Query sites as comma-separated t:x pairs, e.g. --points 1:1,2:3
        #[arg(long, value_delimiter = ',', required = true, value_name = "T:X")]
        points: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every configuration in lexicographic order
    Enumerate {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Refuse to enumerate more configurations than this
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draw one configuration exactly uniformly at random
    Sample {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// What the svg format should draw
        #[arg(long, value_enum, default_value_t = Mode::Lozenges)]
        mode: Mode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Render a configuration record (stdin or --input) as paths or lozenges
    Render {
        /// File holding one configuration record; stdin when omitted
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Lozenges)]
        mode: Mode,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let code = match err {
            CoreError::EnumerationCapExceeded { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError {
            code: 2,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Count { ensemble, output } => cmd_count(&ensemble, &output),
        Command::Invert { ensemble, output } => cmd_invert(&ensemble, &output),
        Command::Verify {
            n_max,
            cases,
            seed,
            self_test,
            output,
        } => cmd_verify(n_max, cases, seed, self_test, &output),
        Command::Kernel {
            ensemble,
            r,
            x,
            s,
            y,
            output,
        } => cmd_kernel(&ensemble, r, x, s, y, &output),
        Command::Correlate {
            ensemble,
            points,
            output,
        } => cmd_correlate(&ensemble, &points, &output),
        Command::Enumerate {
            ensemble,
            cap,
            output,
        } => cmd_enumerate(&ensemble, cap, &output),
        Command::Sample {
            ensemble,
            seed,
            mode,
            output,
        } => cmd_sample(&ensemble, seed, mode, &output),
        Command::Render {
            input,
            mode,
            output,
        } => cmd_render(input.as_deref(), mode, &output),
    }
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn reject_svg(output: &OutputArgs, what: &str) -> Result<(), CliError> {
    if output.format == Format::Svg {
        return Err(CliError::input(format!("{what} has no svg form")));
    }
    Ok(())
}

fn cmd_count(ensemble: &EnsembleArgs, output: &OutputArgs) -> Result<(), CliError> {
    reject_svg(output, "count")?;
    let spec = ensemble.spec()?;
    let count = spec.count_configurations();
    // For half-hexagon endpoints, compare against the known power of two.
    let predicted = ensemble
        .halfhex
        .map(|n| BigInt::one() << (n * (n + 1) / 2));
    let matches = predicted.as_ref().map(|p| *p == count);

    let content = match output.format {
        Format::Text => {
            let mut s = format!("count = {count}\n");
            if let (Some(p), Some(m)) = (&predicted, matches) {
                s.push_str(&format!("predicted = {p}\nmatch = {m}\n"));
            }
            s
        }
        Format::Json => {
            let mut record = json!({
                "spec": spec_json(&spec),
                "value": count.to_string(),
            });
            if let (Some(p), Some(m)) = (&predicted, matches) {
                record["predicted"] = json!(p.to_string());
                record["match"] = json!(m);
            }
            format!("{record}\n")
        }
        Format::Csv => {
            let mut s = String::from("walkers,steps,ends,count,predicted,match\n");
            s.push_str(&format!(
                "{},{},{},{count},{},{}\n",
                spec.walkers(),
                spec.steps(),
                ends_field(&spec),
                predicted.map(|p| p.to_string()).unwrap_or_default(),
                matches.map(|m| m.to_string()).unwrap_or_default(),
            ));
            s
        }
        Format::Svg => unreachable!(),
    };
    emit(output, &content)
}

fn cmd_invert(ensemble: &EnsembleArgs, output: &OutputArgs) -> Result<(), CliError> {
    reject_svg(output, "invert")?;
    let spec = ensemble.spec()?;
    let params = BinomialMatrixSpec::new(
        BigInt::from(spec.steps() as i64),
        spec.ends().iter().map(|&y| BigInt::from(y)).collect(),
    )?;
    let inverse = params.closed_form_inverse();

    let content = match output.format {
        Format::Text => inverse.to_string(),
        Format::Json => {
            let record = json!({
                "spec": spec_json(&spec),
                "matrix": matrix_strings(&inverse),
            });
            format!("{record}\n")
        }
        Format::Csv => {
            let mut s = String::from("i,j,value\n");
            for i in 1..=inverse.rows() {
                for j in 1..=inverse.cols() {
                    s.push_str(&format!("{i},{j},{}\n", inverse.entry(i, j)));
                }
            }
            s
        }
        Format::Svg => unreachable!(),
    };
    emit(output, &content)
}

fn cmd_verify(
    n_max: Option<usize>,
    cases: Option<usize>,
    seed: u64,
    self_test: bool,
    output: &OutputArgs,
) -> Result<(), CliError> {
    reject_svg(output, "verify")?;
    let full = SweepConfig::full();
    let cfg = SweepConfig {
        n_max: n_max.unwrap_or(full.n_max),
        cases: cases.unwrap_or(if n_max.is_some_and(|n| n < full.n_max) {
            SweepConfig::quick(full.n_max).cases
        } else {
            full.cases
        }),
        seed,
    };

    if self_test {
        let outcome = inverse_identity_fault_suite(&cfg);
        return if outcome.passed() {
            Err(CliError::verification(
                "fault-injected inverse slipped through the sweep",
            ))
        } else {
            emit(
                output,
                "self-test: injected sign fault was caught by the sweep\n",
            )
        };
    }

    let outcomes = run_all(&cfg);
    let all_passed = outcomes.iter().all(SuiteOutcome::passed);
    let content = match output.format {
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                s.push_str(&format!(
                    "suite {}: {} ({} cases, {} ms)\n",
                    o.name,
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.cases,
                    o.millis
                ));
                if let Some(cx) = &o.counterexample {
                    s.push_str(&format!("  counterexample: {cx}\n"));
                }
            }
            s.push_str(if all_passed {
                "all suites passed\n"
            } else {
                "verification failed\n"
            });
            s
        }
        Format::Json => {
            let mut s = String::new();
            for o in &outcomes {
                let record = json!({
                    "suite": o.name,
                    "cases": o.cases,
                    "pass": o.passed(),
                    "millis": o.millis,
                    "counterexample": o.counterexample,
                });
                s.push_str(&format!("{record}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,cases,pass,millis\n");
            for o in &outcomes {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    o.name,
                    o.cases,
                    o.passed(),
                    o.millis
                ));
            }
            s
        }
        Format::Svg => unreachable!(),
    };
    emit(output, &content)?;
    if all_passed {
        Ok(())
    } else {
        Err(CliError::verification("at least one sweep failed"))
    }
}

fn cmd_kernel(
    ensemble: &EnsembleArgs,
    r: usize,
    x: i64,
    s: usize,
    y: i64,
    output: &OutputArgs,
) -> Result<(), CliError> {
    reject_svg(output, "kernel")?;
    let spec = ensemble.spec()?;
    let ctx = KernelContext::new(spec.clone());
    let value = ctx.kernel(r, x, s, y)?;

    let content = match output.format {
        Format::Text => {
            let mut t = format!("K({r}, {x}; {s}, {y}) = {}\n", rational_str(&value));
            if output.decimal {
                t.push_str(&format!("decimal = {}\n", decimal_of(&value)));
            }
            t
        }
        Format::Json => {
            let mut record = json!({
                "spec": spec_json(&spec),
                "query": [[r, x], [s, y]],
                "value": rational_str(&value),
            });
            if output.decimal {
                record["decimal"] = json!(decimal_of(&value));
            }
            format!("{record}\n")
        }
        Format::Csv => {
            let mut t = String::from("r,x,s,y,value");
            if output.decimal {
                t.push_str(",decimal");
            }
            t.push('\n');
            t.push_str(&format!("{r},{x},{s},{y},{}", rational_str(&value)));
            if output.decimal {
                t.push_str(&format!(",{}", decimal_of(&value)));
            }
            t.push('\n');
            t
        }
        Format::Svg => unreachable!(),
    };
    emit(output, &content)
}

fn parse_points(raw: &[String]) -> Result<Vec<SpaceTimePoint>, CliError> {
    raw.iter()
        .map(|pair| {
            let (t, x) = pair
                .split_once(':')
                .ok_or_else(|| CliError::input(format!("point {pair:?} is not T:X")))?;
            let t = t
                .trim()
                .parse::<usize>()
                .map_err(|e| CliError::input(format!("bad time in {pair:?}: {e}")))?;
            let x = x
                .trim()
                .parse::<i64>()
                .map_err(|e| CliError::input(format!("bad position in {pair:?}: {e}")))?;
            Ok(SpaceTimePoint::new(t, x))
        })
        .collect()
}

fn cmd_correlate(
    ensemble: &EnsembleArgs,
    raw_points: &[String],
    output: &OutputArgs,
) -> Result<(), CliError> {
    reject_svg(output, "correlate")?;
    let spec = ensemble.spec()?;
    let points = parse_points(raw_points)?;
    let ctx = KernelContext::new(spec.clone());
    let value = ctx.correlation(&points)?;

    let points_field: Vec<String> = points.iter().map(|p| format!("{}:{}", p.t, p.x)).collect();
    let content = match output.format {
        Format::Text => {
            let mut t = format!("correlation = {}\n", rational_str(&value));
            if output.decimal {
                t.push_str(&format!("decimal = {}\n", decimal_of(&value)));
            }
            t
        }
        Format::Json => {
            let query: Vec<_> = points.iter().map(|p| json!([p.t, p.x])).collect();
            let mut record = json!({
                "spec": spec_json(&spec),
                "query": query,
                "value": rational_str(&value),
            });
            if output.decimal {
                record["decimal"] = json!(decimal_of(&value));
            }
            format!("{record}\n")
        }
        Format::Csv => {
            let mut t = String::from("points,value");
            if output.decimal {
                t.push_str(",decimal");
            }
            t.push('\n');
            t.push_str(&format!("{},{}", points_field.join(" "), rational_str(&value)));
            if output.decimal {
                t.push_str(&format!(",{}", decimal_of(&value)));
            }
            t.push('\n');
            t
        }
        Format::Svg => unreachable!(),
    };
    emit(output, &content)
}

fn cmd_enumerate(ensemble: &EnsembleArgs, cap: u64, output: &OutputArgs) -> Result<(), CliError> {
    reject_svg(output, "enumerate")?;
    let spec = ensemble.spec()?;
    let configs = spec.enumerate_configurations(cap)?;

    let content = match output.format {
        Format::Text => {
            let records: Vec<String> = configs.iter().map(Configuration::to_record).collect();
            records.join("\n")
        }
        Format::Json => {
            let mut s = String::new();
            for c in &configs {
                let record = json!({
                    "spec": spec_json(&spec),
                    "positions": positions_json(c),
                });
                s.push_str(&format!("{record}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("config,t,positions\n");
            for (idx, c) in configs.iter().enumerate() {
                config_csv_rows(&idx.to_string(), c, &mut s);
            }
            s
        }
        Format::Svg => unreachable!(),
    };
    emit(output, &content)
}

fn cmd_sample(
    ensemble: &EnsembleArgs,
    seed: u64,
    mode: Mode,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let spec = ensemble.spec()?;
    let config = spec.sample(seed);

    let content = match output.format {
        Format::Text => config.to_record(),
        Format::Json => {
            let record = json!({
                "spec": spec_json(&spec),
                "seed": seed,
                "positions": positions_json(&config),
            });
            format!("{record}\n")
        }
        Format::Csv => {
            let mut s = String::from("seed,t,positions\n");
            config_csv_rows(&seed.to_string(), &config, &mut s);
            s
        }
        Format::Svg => render_svg(&config, mode.into()),
    };
    emit(output, &content)
}

fn cmd_render(
    input: Option<&std::path::Path>,
    mode: Mode,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    // accept either a position record or a previously rendered path picture
    let config = Configuration::parse_record(&text)
        .or_else(|_| parse_paths_ascii(&text))
        .map_err(CliError::from)?;

    let content = match output.format {
        Format::Text => render_ascii(&config, mode.into()),
        Format::Svg => render_svg(&config, mode.into()),
        Format::Json | Format::Csv => {
            return Err(CliError::input("render supports text and svg only"));
        }
    };
    emit(output, &content)
}
