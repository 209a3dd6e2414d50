use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lutsplit::catalog::{self, FunctionSpec};
use lutsplit::hwmodel::{self, layout_for_width};
use lutsplit::segmentation::{
    plan, split, Acceptance, Algorithm, Partition, SegmentPlan, SplitConfig,
};
use lutsplit::spacing::{footprint_reduction, CountRule};
use lutsplit::stats::{self, StudyConfig};
use lutsplit::{build_table, sample_plan, Error, FixedPointFormat, Result, SegmentedTable};

#[derive(Parser)]
#[command(
    name = "lutsplit",
    version,
    about = "Segmented lookup tables for elementary functions"
)]
struct Cli {
    /// Directory for generated files when no explicit path is given.
    #[arg(long, global = true, env = "LUTSPLIT_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split an interval, build the table and print a report.
    Generate(GenerateArgs),
    /// Evaluate a stored table at the inputs listed in a file.
    Eval(EvalArgs),
    /// Mean footprint reduction of the three splitters over random intervals.
    Study(StudyArgs),
    /// Build a table and write its descriptor and memory image.
    Export(GenerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    None,
    Binary,
    Hierarchical,
    Sequential,
}

#[derive(Clone, Copy, ValueEnum)]
enum AcceptArg {
    Reduction,
    Literal,
}

impl From<AcceptArg> for Acceptance {
    fn from(a: AcceptArg) -> Self {
        match a {
            AcceptArg::Reduction => Acceptance::Reduction,
            AcceptArg::Literal => Acceptance::Literal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountArg {
    Covering,
    Floor,
}

impl From<CountArg> for CountRule {
    fn from(c: CountArg) -> Self {
        match c {
            CountArg::Covering => CountRule::Covering,
            CountArg::Floor => CountRule::Floor,
        }
    }
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Split acceptance rule.
    #[arg(long, value_enum, default_value = "reduction")]
    acceptance: AcceptArg,
    /// Breakpoint counting used while searching for split points.
    #[arg(long, value_enum, default_value = "covering")]
    count_rule: CountArg,
}

#[derive(Args, Clone)]
struct GenerateArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, allow_hyphen_values = true)]
    hi: f64,
    /// Maximum absolute error.
    #[arg(long)]
    ea: f64,
    #[arg(long, value_enum, default_value = "hierarchical")]
    alg: AlgArg,
    /// Minimum relative footprint saving for a split to be kept.
    #[arg(long, default_value_t = 0.1)]
    omega: f64,
    /// Sweep step; defaults to a thousandth of the interval.
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    search: SearchArgs,
    /// Input format `S:W:F`; fitted to the interval when omitted.
    #[arg(long)]
    in_fmt: Option<FixedPointFormat>,
    /// Output format `S:W:F`; fitted to the stored values when omitted.
    #[arg(long)]
    out_fmt: Option<FixedPointFormat>,
    #[arg(long, default_value_t = 87.5)]
    clock_mhz: f64,
    #[arg(long)]
    descriptor: Option<PathBuf>,
    #[arg(long)]
    mem_init: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Table descriptor written by `generate` or `export`.
    #[arg(long)]
    descriptor: PathBuf,
    /// One input per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    inputs: PathBuf,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StudyArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, allow_hyphen_values = true)]
    hi: f64,
    #[arg(long, default_value_t = 9.5367e-7)]
    ea: f64,
    #[arg(long, default_value_t = 100)]
    population: usize,
    #[arg(long, default_value_t = 0.01)]
    omega_min: f64,
    #[arg(long, default_value_t = 0.30)]
    omega_max: f64,
    #[arg(long, default_value_t = 0.01)]
    omega_step: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[command(flatten)]
    search: SearchArgs,
    /// Study CSV destination.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// t-test summary CSV destination.
    #[arg(long)]
    ttest_csv: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::Parse(_) => 2,
        Error::Domain(_) | Error::Range(_) => 3,
        Error::Io { .. } => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_dir = cli.out_dir.as_deref();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(&args, out_dir, false),
        Command::Export(args) => cmd_generate(&args, out_dir, true),
        Command::Eval(args) => cmd_eval(&args),
        Command::Study(args) => cmd_study(&args, out_dir),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(exit_code(&e))
        }
    }
}

fn write_stdout(text: &str) -> Result<()> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Explicit path, or `name` inside the output directory.
fn resolve(explicit: &Option<PathBuf>, out_dir: Option<&Path>, name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| out_dir.map(|d| d.join(name)))
}

struct Generated {
    f: FunctionSpec,
    reference: SegmentPlan,
    plan: SegmentPlan,
    table: SegmentedTable,
}

fn generate(args: &GenerateArgs) -> Result<Generated> {
    let f = catalog::lookup(&args.function)?;
    if !(args.lo < args.hi) {
        return Err(Error::Argument(format!(
            "interval [{}, {}) is empty",
            args.lo, args.hi
        )));
    }
    let reference = plan(&f, args.ea, &Partition::whole(args.lo, args.hi)?)?;
    let partition = match args.alg {
        AlgArg::None => Partition::whole(args.lo, args.hi)?,
        alg => {
            let algorithm = match alg {
                AlgArg::Binary => Algorithm::Binary,
                AlgArg::Hierarchical => Algorithm::Hierarchical,
                _ => Algorithm::Sequential,
            };
            let mut cfg = SplitConfig::new(args.omega, args.ea)
                .with_acceptance(args.search.acceptance.into())
                .with_count_rule(args.search.count_rule.into());
            if let Some(eps) = args.epsilon {
                cfg = cfg.with_epsilon(eps);
            }
            split(algorithm, &f, &cfg, args.lo, args.hi)?
        }
    };
    let plan = plan(&f, args.ea, &partition)?;
    let in_fmt = match args.in_fmt {
        Some(fmt) => fmt,
        None => FixedPointFormat::fitting(args.lo, args.hi, 32)?,
    };
    let out_fmt = match args.out_fmt {
        Some(fmt) => fmt,
        None => {
            let (_, values) = sample_plan(&f, &plan)?;
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            FixedPointFormat::fitting(lo, hi, 32)?
        }
    };
    let table = build_table(&f, &plan, in_fmt, out_fmt)?;
    Ok(Generated {
        f,
        reference,
        plan,
        table,
    })
}

fn report(args: &GenerateArgs, g: &Generated) -> Result<String> {
    let mut s = String::new();
    let t = &g.table;
    let alg = match args.alg {
        AlgArg::None => "none",
        AlgArg::Binary => "binary",
        AlgArg::Hierarchical => "hierarchical",
        AlgArg::Sequential => "sequential",
    };
    let _ = writeln!(
        s,
        "function={} interval=[{}, {}) ea={:e}",
        g.f.id(),
        args.lo,
        args.hi,
        args.ea
    );
    if args.alg == AlgArg::None {
        let _ = writeln!(s, "algorithm=none");
    } else {
        let _ = writeln!(
            s,
            "algorithm={alg} omega={} epsilon={} acceptance={} count_rule={}",
            args.omega,
            args.epsilon
                .unwrap_or((args.hi - args.lo) / lutsplit::segmentation::DEFAULT_SWEEP_CANDIDATES),
            Acceptance::from(args.search.acceptance).describe(),
            CountRule::from(args.search.count_rule).name()
        );
    }
    let _ = writeln!(s, "formats in={} out={}", t.in_fmt(), t.out_fmt());
    let _ = writeln!(s, "partition={}", join(g.plan.partition.boundaries()));
    let _ = writeln!(s, "segments={}", g.plan.partition.segment_count());
    let _ = writeln!(s, "S={}", join(&g.plan.spacings));
    let _ = writeln!(s, "K={}", join(&g.plan.counts));
    let _ = writeln!(s, "M_F^R={}", g.reference.total_footprint);
    if args.alg != AlgArg::None {
        let _ = writeln!(s, "M_F^P={}", g.plan.total_footprint);
    }
    let _ = writeln!(
        s,
        "reduction={:.2}%",
        footprint_reduction(g.reference.total_footprint, g.plan.total_footprint)
    );
    match layout_for_width(t.footprint(), t.out_fmt().width()) {
        Some(b) => {
            let _ = writeln!(
                s,
                "bram entry_width={} entries_per_bram={} bram_count={} address_bits={}",
                b.entry_width, b.entries_per_bram, b.bram_count, b.address_bits
            );
        }
        None => {
            let _ = writeln!(
                s,
                "bram unavailable for {}-bit entries",
                t.out_fmt().width()
            );
        }
    }
    let p = hwmodel::latency_report(t, args.clock_mhz)?;
    let _ = writeln!(
        s,
        "latency_cycles={} (select+address {}, read {}, interpolate {}) ii={} clock_mhz={} eval_time_ns={:.3}",
        p.latency_cycles,
        p.selector_address_cycles,
        p.bram_read_cycles,
        p.interpolation_cycles,
        p.initiation_interval,
        p.clock_mhz,
        p.eval_time_ns
    );
    Ok(s)
}

fn cmd_generate(args: &GenerateArgs, out_dir: Option<&Path>, export: bool) -> Result<u8> {
    let stem = format!(
        "{}_{}",
        args.function,
        match args.alg {
            AlgArg::None => "reference",
            AlgArg::Binary => "binary",
            AlgArg::Hierarchical => "hierarchical",
            AlgArg::Sequential => "sequential",
        }
    );
    let descriptor = resolve(&args.descriptor, out_dir, &format!("{stem}.toml"));
    let mem_init = resolve(&args.mem_init, out_dir, &format!("{stem}.mem"));
    if export && descriptor.is_none() && mem_init.is_none() {
        return Err(Error::Argument(
            "export needs --descriptor, --mem-init or an output directory".into(),
        ));
    }

    let g = generate(args)?;
    let mut text = if export {
        String::new()
    } else {
        report(args, &g)?
    };
    if let Some(path) = &descriptor {
        hwmodel::export_descriptor(&g.table, path)?;
        let _ = writeln!(text, "descriptor={}", path.display());
    }
    if let Some(path) = &mem_init {
        hwmodel::export_mem_init(&g.table, path)?;
        let _ = writeln!(text, "mem_init={}", path.display());
    }
    write_stdout(&text)?;
    Ok(0)
}

fn parse_inputs(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut xs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let x: f64 = line.parse().map_err(|_| {
            Error::Parse(format!(
                "{} line {}: `{line}` is not a number",
                path.display(),
                n + 1
            ))
        })?;
        xs.push(x);
    }
    Ok(xs)
}

fn cmd_eval(args: &EvalArgs) -> Result<u8> {
    let table = hwmodel::load_descriptor(&args.descriptor)?;
    let f = catalog::lookup(table.fn_id())?;
    let xs = parse_inputs(&args.inputs)?;
    let (in_fmt, out_fmt) = (table.in_fmt(), table.out_fmt());

    let mut csv = String::from("x,y_real,y_fixed,abs_err,status\n");
    let (mut worst, mut worst_fixed, mut failed) = (0.0f64, 0.0f64, 0usize);
    for &x in &xs {
        let row = table.evaluate_real(x).and_then(|y| {
            let (word, _) = in_fmt.quantize_saturating(x);
            let fixed = out_fmt.to_real(table.evaluate_fixed(word)?.word);
            Ok((y, fixed, (f.eval(x)? - y).abs()))
        });
        match row {
            Ok((y, fixed, err)) => {
                worst = worst.max(err);
                worst_fixed = worst_fixed.max((f.value(x) - fixed).abs());
                let _ = writeln!(csv, "{x:?},{y:?},{fixed:?},{err:e},ok");
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(csv, "{x:?},,,,{}", e.code());
            }
        }
    }
    let _ = writeln!(
        csv,
        "# rows={} failed={failed} max_abs_err={worst:e} max_fixed_abs_err={worst_fixed:e}",
        xs.len()
    );
    match &args.output {
        Some(path) => write_file(path, &csv)?,
        None => write_stdout(&csv)?,
    }
    Ok(if failed > 0 { 3 } else { 0 })
}

fn cmd_study(args: &StudyArgs, out_dir: Option<&Path>) -> Result<u8> {
    let f = catalog::lookup(&args.function)?;
    if !(args.lo < args.hi) {
        return Err(Error::Argument(format!(
            "study interval [{}, {}) is empty",
            args.lo, args.hi
        )));
    }
    if !(args.omega_step > 0.0 && args.omega_min <= args.omega_max) {
        return Err(Error::Argument("invalid threshold grid".into()));
    }
    let mut cfg = StudyConfig::new(f, args.lo, args.hi, args.ea, args.seed);
    cfg.population_size = args.population;
    cfg.omega_grid = stats::omega_range(args.omega_min, args.omega_max, args.omega_step);
    cfg.acceptance = args.search.acceptance.into();
    cfg.count_rule = args.search.count_rule.into();

    let result = stats::mean_reduction_study(&cfg)?;
    let tests = stats::pairwise_tests(&result, args.alpha)?;
    let study_csv = result.to_csv();
    let tests_csv = stats::tests_to_csv(&tests);

    let mut text = String::new();
    let _ = writeln!(
        text,
        "function={} interval=[{}, {}) population={} thresholds={} seed={} variance=pooled",
        args.function,
        args.lo,
        args.hi,
        args.population,
        cfg.omega_grid.len(),
        args.seed
    );
    for (g, segs) in result.groups.iter().zip(&result.mean_segments) {
        let n = g.samples.len() as f64;
        let _ = writeln!(
            text,
            "{} mean_reduction={:.3}% mean_segments={:.3}",
            g.algorithm,
            g.samples.iter().sum::<f64>() / n,
            segs.iter().sum::<f64>() / n
        );
    }
    for t in &tests {
        let _ = writeln!(
            text,
            "({}, {}) right={} left={} {}_outperforms_{}={}",
            t.g1,
            t.g2,
            u8::from(t.right.reject_h0),
            u8::from(t.left.reject_h0),
            t.g2,
            t.g1,
            t.g2_outperforms
        );
    }

    let study_path = resolve(&args.csv, out_dir, &format!("study_{}.csv", args.function));
    let tests_path = resolve(
        &args.ttest_csv,
        out_dir,
        &format!("ttest_{}.csv", args.function),
    );
    match &study_path {
        Some(p) => {
            write_file(p, &study_csv)?;
            let _ = writeln!(text, "study_csv={}", p.display());
        }
        None => text.push_str(&study_csv),
    }
    match &tests_path {
        Some(p) => {
            write_file(p, &tests_csv)?;
            let _ = writeln!(text, "ttest_csv={}", p.display());
        }
        None => text.push_str(&tests_csv),
    }
    write_stdout(&text)?;
    Ok(0)
}
