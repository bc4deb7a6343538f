use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conevol::float::{BigFloat, ComplexBF};
use conevol::io::{census_lookup, census_names, parse_poly_expr, render_result, write_trace, Format};
use conevol::numerics::{DEFAULT_PRECISION, DEFAULT_TOL_CIRCLE_BITS, DEFAULT_TOL_SELECT_BITS};
use conevol::pipeline::{run_pipeline, APolynomial, GeometricWitness, PipelineConfig};
use conevol::poly::{Var, VarSet};
use conevol::selftest::run_selftest;

const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "conevol", version, about = "Cone-manifold volume polynomials from A-polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute F(V) and the volume for one A-polynomial.
    Compute(ComputeArgs),
    /// List the embedded census entries.
    CensusList,
    /// Run the census regressions.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Human => Format::Human,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Census entry name.
    #[arg(long, conflicts_with = "a_poly", required_unless_present = "a_poly")]
    census: Option<String>,
    /// A-polynomial in M and L, as a file path or an expression.
    #[arg(long, value_name = "FILE_OR_EXPR", allow_hyphen_values = true)]
    a_poly: Option<String>,
    /// Witness meridian eigenvalue on the unit circle.
    #[arg(long, value_name = "RE,IM", allow_hyphen_values = true, requires = "witness_w")]
    witness_m: Option<String>,
    /// Witness value of W = L*Lbar, real and positive.
    #[arg(long, value_name = "RE,IM", allow_hyphen_values = true, requires = "witness_m")]
    witness_w: Option<String>,
    /// Approximate volume used to choose among several candidates.
    #[arg(long, value_name = "FLOAT")]
    volume_hint: Option<f64>,
    /// Force the factor chosen at a step.
    #[arg(long = "factor-index", value_name = "STEP=IDX", value_parser = parse_override)]
    factor_index: Vec<(u8, usize)>,
    #[arg(long, value_name = "BITS", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Write the step trace as JSON.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Unit-circle tolerance in bits.
    #[arg(long, value_name = "BITS", default_value_t = DEFAULT_TOL_CIRCLE_BITS)]
    tol_circle: u32,
    /// Vanishing tolerance for factor selection in bits.
    #[arg(long, value_name = "BITS", default_value_t = DEFAULT_TOL_SELECT_BITS)]
    tol_select: u32,
    /// Prefer arg(m0) in [pi/3, pi/2) among several volume candidates.
    #[arg(long)]
    two_bridge: bool,
    /// Also report the half angle.
    #[arg(long)]
    angle_halving: bool,
    /// Verify every resultant by an independent route.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "BITS", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Write the full report, traces included, as JSON.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
}

fn parse_override(s: &str) -> Result<(u8, usize), String> {
    let (a, b) = s.split_once('=').ok_or("expected STEP=IDX")?;
    let step: u8 = a.trim().parse().map_err(|_| format!("bad step '{a}'"))?;
    let idx: usize = b.trim().parse().map_err(|_| format!("bad index '{b}'"))?;
    Ok((step, idx))
}

fn parse_complex(s: &str, prec: u32) -> Result<ComplexBF, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let re = BigFloat::parse_decimal(re, prec)?;
    let im = BigFloat::parse_decimal(im, prec)?;
    Ok(ComplexBF::new(re, im))
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn read_a_poly(arg: &str) -> Result<APolynomial, String> {
    let (text, source) = if Path::new(arg).is_file() {
        (fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?, arg.to_string())
    } else {
        (arg.to_string(), "command line".to_string())
    };
    let poly = parse_poly_expr(&text, VarSet::of(&[Var::M, Var::L])).map_err(|e| format!("{source}: {e}"))?;
    APolynomial::new(poly, None, source).map_err(|e| e.to_string())
}

fn compute(args: ComputeArgs) -> ExitCode {
    let mut cfg = PipelineConfig {
        precision: args.precision,
        seed: args.seed,
        factor_index_overrides: args.factor_index.iter().copied().collect::<BTreeMap<_, _>>(),
        tol_circle_bits: args.tol_circle,
        tol_select_bits: args.tol_select,
        two_bridge: args.two_bridge,
        angle_halving: args.angle_halving,
        cross_check_resultants: args.cross_check,
    };
    let (a, mut witness) = match (&args.census, &args.a_poly) {
        (Some(name), _) => match census_lookup(name) {
            Ok(e) => {
                cfg.two_bridge |= e.flags.two_bridge;
                cfg.angle_halving |= e.flags.angle_halving;
                let w = e.witness(cfg.precision);
                (e.a_poly, Some(w))
            }
            Err(e) => return usage(e),
        },
        (None, Some(text)) => match read_a_poly(text) {
            Ok(a) => (a, None),
            Err(e) => return usage(e),
        },
        (None, None) => return usage("one of --census or --a-poly is required"),
    };
    if let (Some(m), Some(w)) = (&args.witness_m, &args.witness_w) {
        let parsed = parse_complex(m, cfg.precision).and_then(|m| Ok((m, parse_complex(w, cfg.precision)?)));
        match parsed {
            Ok((m, w)) => witness = Some(GeometricWitness { m, w, volume_hint: None }),
            Err(e) => return usage(format!("bad witness: {e}")),
        }
    }
    if let Some(h) = args.volume_hint {
        match witness.as_mut() {
            Some(w) => w.volume_hint = Some(h),
            None => return usage("--volume-hint needs a witness"),
        }
    }
    match run_pipeline(&a, witness.as_ref(), &cfg) {
        Ok(r) => {
            if let Some(path) = &args.trace {
                if let Err(e) = write_trace(path, &r.trace) {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            print!("{}", render_result(&r, args.format.into()));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn census_list() -> ExitCode {
    for name in census_names() {
        let e = census_lookup(name).expect("listed names resolve");
        if e.name == name {
            println!("{name}\t{}", e.a_poly.poly);
        } else {
            println!("{name}\talias of {}", e.name);
        }
    }
    ExitCode::SUCCESS
}

fn selftest(args: SelftestArgs) -> ExitCode {
    let report = run_selftest(args.seed, args.precision);
    let json = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
    if let Some(path) = &args.trace {
        if let Err(e) = fs::write(path, &json) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    }
    match args.format {
        OutputFormat::Json => print!("{json}"),
        OutputFormat::Human => {
            for e in &report.entries {
                println!("{} {}", if e.passed { "PASS" } else { "FAIL" }, e.name);
                if let Some(err) = &e.error {
                    println!("  error: {err}");
                }
                for c in &e.checks {
                    println!("  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
                }
            }
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Compute(a) => compute(a),
        Command::CensusList => census_list(),
        Command::Selftest(a) => selftest(a),
    }
}
