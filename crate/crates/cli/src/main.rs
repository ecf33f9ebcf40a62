use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use givens::harness::report::{self, to_json};
use givens::harness::thresholds::{approx_error_band, check_table, BENCH_RATIO_BAND};
use givens::harness::{run_accuracy_comparison_with, run_bench, Algorithm, Execution, MIN_BENCH_ITERS};
use givens::{
    approx, givens as baseline, sqrt_free_givens, with_float_value, ApproxKind, ApproxSpec, BranchPolicy, FloatValue,
    FormatKind, GivensFloat,
};

const USAGE: u8 = 2;
const THRESHOLD: u8 = 1;
const LONG_RUN_TRIALS: u64 = 1_000_000_000;

#[derive(Parser)]
#[command(name = "givens", version, about = "Construct real Givens rotations and measure their accuracy")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Floating-point format.
    #[arg(long, global = true, default_value = "f64")]
    format: FormatKind,
    #[arg(long, global = true, value_enum, default_value_t = AlgoArg::SqrtFree)]
    algo: AlgoArg,
    /// Seed of the trial input streams.
    #[arg(long, global = true, env = "GIVENS_SEED", default_value_t = 42)]
    seed: u64,
    /// Number of random trials.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Whether (0, 0) and g = 0 inputs take the special-case branch.
    #[arg(long, global = true, value_enum, default_value_t = Policy::On)]
    policy: Policy,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Print the intermediates of the square-root-free construction.
    #[arg(long, global = true)]
    trace: bool,
    /// Fail (exit 1) on NaN results or rates outside their tolerance bands.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Rotate one input pair; inputs accept decimal or hex-float syntax.
    Rotate {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Ulp error rates against the exact reference over random normal inputs.
    Accuracy {
        /// Run 10^9 trials instead of --n.
        #[arg(long)]
        long_run: bool,
        /// Schedule trials on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Maximum error of the seed approximation over a grid on [0, 1].
    ApproxCheck {
        /// Approximation to sweep; defaults to the one used for --format.
        #[arg(long)]
        kind: Option<ApproxKind>,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        /// Print the coefficients instead of sweeping.
        #[arg(long)]
        dump: bool,
    },
    /// Median latency of both constructions.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
        /// Fail unless the latency ratio is within [0.8, 2.0].
        #[arg(long)]
        strict_bench: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Baseline,
    #[value(name = "sqrt_free", alias = "sqrt-free")]
    SqrtFree,
    Both,
}

impl AlgoArg {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgoArg::Baseline => vec![Algorithm::Baseline],
            AlgoArg::SqrtFree => vec![Algorithm::SqrtFree],
            AlgoArg::Both => Algorithm::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Policy {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rotate { ref f, ref g } => cmd_rotate(&cli.opts, f, g),
        Command::Accuracy { long_run, sequential } => cmd_accuracy(&cli.opts, long_run, sequential),
        Command::ApproxCheck { kind, grid, dump } => cmd_approx_check(&cli.opts, kind, grid, dump),
        Command::Bench { iters, strict_bench } => cmd_bench(&cli.opts, iters, strict_bench),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn cmd_rotate(opts: &Opts, f: &str, g: &str) -> Result<u8, String> {
    let f = FloatValue::parse(opts.format, f).map_err(|e| format!("f: {e}"))?;
    let g = FloatValue::parse(opts.format, g).map_err(|e| format!("g: {e}"))?;
    let algos = opts.algo.algorithms();
    let policy = BranchPolicy { optional_branch: opts.policy == Policy::On };
    let mut any_nan = false;
    let mut json_rows = Vec::new();
    if opts.output == Output::Csv {
        println!("algo,format,c,s,c_hex,s_hex");
    }
    for algo in algos {
        let (c, s, trace) = match (f, g) {
            (FloatValue::F16(f), FloatValue::F16(g)) => rotate_one(algo, f, g, policy, opts.trace),
            (FloatValue::F32(f), FloatValue::F32(g)) => rotate_one(algo, f, g, policy, opts.trace),
            (FloatValue::F64(f), FloatValue::F64(g)) => rotate_one(algo, f, g, policy, opts.trace),
            _ => unreachable!("both inputs parsed in the same format"),
        };
        any_nan |= c.is_nan() || s.is_nan();
        match opts.output {
            Output::Text => {
                println!("{} ({})", algo.table_name(), opts.format.short_name());
                println!("  c = {}  {}", c.to_decimal(), c.to_hex());
                println!("  s = {}  {}", s.to_decimal(), s.to_hex());
                for (name, value) in &trace {
                    println!("  {name} = {value}");
                }
            }
            Output::Csv => println!(
                "{algo},{},{},{},{},{}",
                opts.format.short_name(),
                c.to_decimal(),
                s.to_decimal(),
                c.to_hex(),
                s.to_hex()
            ),
            Output::Json => {
                let mut row = serde_json::json!({
                    "algo": algo.id(),
                    "format": opts.format.short_name(),
                    "c": { "decimal": c.to_decimal(), "hex": c.to_hex() },
                    "s": { "decimal": s.to_decimal(), "hex": s.to_hex() },
                });
                if !trace.is_empty() {
                    let trace: serde_json::Map<_, _> =
                        trace.into_iter().map(|(k, v)| (k.to_owned(), serde_json::Value::String(v))).collect();
                    row["trace"] = serde_json::Value::Object(trace);
                }
                json_rows.push(row);
            }
        }
    }
    if opts.output == Output::Json {
        println!("{}", to_json(&json_rows));
    }
    Ok(if any_nan && opts.strict { THRESHOLD } else { 0 })
}

type Trace = Vec<(&'static str, String)>;

fn rotate_one<T: GivensFloat>(
    algo: Algorithm,
    f: T,
    g: T,
    policy: BranchPolicy,
    want_trace: bool,
) -> (FloatValue, FloatValue, Trace) {
    match algo {
        Algorithm::Baseline => {
            let rot = baseline(f, g, policy);
            (FloatValue::from_float(rot.c), FloatValue::from_float(rot.s), Vec::new())
        }
        Algorithm::SqrtFree => {
            let spec = ApproxSpec::<T>::default_spec();
            let (rot, tr) = sqrt_free_givens(f, g, policy, &spec);
            let mut trace = Vec::new();
            if want_trace {
                let hex = |x: T| FloatValue::from_float(x).to_hex();
                trace = vec![
                    ("branch", format!("{:?}", tr.branch)),
                    ("approx", spec.kind().to_string()),
                    ("t", hex(tr.t)),
                    ("oneplus", hex(tr.oneplus)),
                    ("c_seed", hex(tr.c_seed)),
                    ("s_seed", hex(tr.s_seed)),
                    ("err", hex(tr.err)),
                    ("d", hex(tr.d)),
                    ("fused_correction", tr.fused_correction.to_string()),
                ];
            }
            (FloatValue::from_float(rot.c), FloatValue::from_float(rot.s), trace)
        }
    }
}

fn cmd_accuracy(opts: &Opts, long_run: bool, sequential: bool) -> Result<u8, String> {
    let n = if long_run { LONG_RUN_TRIALS } else { opts.n };
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let tables = run_accuracy_comparison_with(n, opts.format, &opts.algo.algorithms(), opts.seed, exec)
        .map_err(|e| e.to_string())?;
    match opts.output {
        Output::Text => print!("{}", report::rates_text(&tables)),
        Output::Csv => print!("{}", report::rates_csv(&tables)),
        Output::Json => println!("{}", to_json(&tables)),
    }
    if !opts.strict {
        return Ok(0);
    }
    let failed: Vec<_> = tables.iter().flat_map(check_table).filter(|c| !c.pass).collect();
    for c in &failed {
        eprintln!(
            "threshold: {} {} {} {} = {:.4}% outside [{}, {}]",
            c.algo,
            c.format.short_name(),
            c.component,
            c.bucket_label(),
            c.observed,
            c.band.lo,
            c.band.hi
        );
    }
    Ok(if failed.is_empty() { 0 } else { THRESHOLD })
}

fn cmd_approx_check(opts: &Opts, kind: Option<ApproxKind>, grid: usize, dump: bool) -> Result<u8, String> {
    let kind = kind.unwrap_or_else(|| ApproxKind::default_for(opts.format));
    with_float_value!(FloatValue::from_f64(opts.format, 0.0), zero => approx_check_in(opts, zero, kind, grid, dump))
}

fn approx_check_in<T: GivensFloat>(opts: &Opts, _: T, kind: ApproxKind, grid: usize, dump: bool) -> Result<u8, String> {
    let spec = ApproxSpec::<T>::new(kind).map_err(|e| e.to_string())?;
    if dump {
        let d = spec.coefficient_dump();
        match opts.output {
            Output::Json => println!("{}", to_json(&d)),
            Output::Csv => {
                println!("kind,format,part,index,hex");
                for (part, coeffs) in [("numerator", &d.numerator), ("denominator", &d.denominator)] {
                    for (i, h) in coeffs.iter().enumerate() {
                        println!("{},{},{part},{i},{h}", d.kind, d.format.short_name());
                    }
                }
            }
            Output::Text => {
                println!("{} in {}", d.kind.label(), d.format.table_name());
                println!("  numerator:   {}", d.numerator.join(" "));
                println!("  denominator: {}", d.denominator.join(" "));
            }
        }
        return Ok(0);
    }
    let sweep = approx::sweep(&spec, grid).map_err(|e| e.to_string())?;
    let band = approx_error_band(kind);
    let pass = band.contains(sweep.max_abs_error);
    match opts.output {
        Output::Json => println!("{}", to_json(&sweep)),
        Output::Csv => {
            println!("kind,format,grid,max_abs_error,argmax,min_value,max_value");
            println!(
                "{},{},{},{:e},{},{},{}",
                sweep.kind,
                sweep.format.short_name(),
                sweep.grid_size,
                sweep.max_abs_error,
                sweep.argmax,
                sweep.min_value,
                sweep.max_value
            );
        }
        Output::Text => {
            println!("{} in {}, {} grid points", kind.label(), sweep.format.table_name(), sweep.grid_size);
            println!("  max |p - p_hat| = {:.4e} at t = {}", sweep.max_abs_error, sweep.argmax);
            println!("  p_hat range     = [{}, {}]", sweep.min_value, sweep.max_value);
            println!("  expected band   = [{:e}, {:e}] {}", band.lo, band.hi, if pass { "ok" } else { "OUTSIDE" });
        }
    }
    Ok(if opts.strict && !pass { THRESHOLD } else { 0 })
}

fn cmd_bench(opts: &Opts, iters: u64, strict_bench: bool) -> Result<u8, String> {
    if iters < MIN_BENCH_ITERS {
        return Err(format!("--iters must be at least {MIN_BENCH_ITERS}"));
    }
    let report = match run_bench(opts.format, iters) {
        Ok(r) => r,
        Err(e) => return Err(e.to_string()),
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match opts.output {
        Output::Text => print!("{}", report::bench_text(&report)),
        Output::Csv => print!("{}", report::bench_csv(&report)),
        Output::Json => println!("{}", to_json(&report)),
    }
    if strict_bench && !BENCH_RATIO_BAND.contains(report.ratio) {
        let b = BENCH_RATIO_BAND;
        eprintln!("threshold: latency ratio {:.3} outside [{}, {}]", report.ratio, b.lo, b.hi);
        return Ok(THRESHOLD);
    }
    Ok(0)
}
