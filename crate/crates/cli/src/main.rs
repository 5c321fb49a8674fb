//! `su3orb`: orbifold groups, singular loci and curvature of biquotients of
//! `SU(3)`.

mod commands;
mod hexagon;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use su3orb::weights::Weight3;

use report::{error_kind, exit_code, render_value, ErrorBody, ErrorReport, Report, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "su3orb", version, about = "Orbifold biquotients of SU(3)")]
struct Cli {
    /// Emit the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Numeric acceptance threshold; for o5-verify, the flatness bound at
    /// torus points (default 1e-12). Exact commands ignore it.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Torus {
    #[arg(long, allow_hyphen_values = true)]
    a: Weight3,
    #[arg(long, allow_hyphen_values = true)]
    b: Weight3,
    #[arg(long, allow_hyphen_values = true)]
    p: Weight3,
    #[arg(long, allow_hyphen_values = true)]
    q: Weight3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Circle quotient `SU(3)//S^1_{p,q}`: orbifold groups and curvature.
    Analyze7 {
        #[arg(long, allow_hyphen_values = true)]
        p: Weight3,
        #[arg(long, allow_hyphen_values = true)]
        q: Weight3,
    },
    /// Torus quotient `SU(3)//T^2`: kernel and singular locus.
    Analyze6(Torus),
    /// Circle `(a, b)` acting on `E_d`.
    Cohom1 {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: Weight3,
        #[arg(long, allow_hyphen_values = true)]
        b: Weight3,
    },
    /// Exact positive-curvature decision and a positively curved circle.
    Poscurv {
        #[command(flatten)]
        torus: Torus,
        #[arg(long, default_value_t = su3orb::curvature::DEFAULT_CIRCLE_BOUND)]
        bound: u32,
    },
    /// Effective form and reparametrization normal form.
    Normalize(Torus),
    /// Circle quotient of the Wu manifold `SU(3)/SO(3)`.
    Wu {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Weighted projective plane `SU(3)//(SU(2) x S^1_{p,q,r})`.
    Wcp {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
    /// Sampled check of the flat torus in `SU(3)//SU(2)`.
    O5Verify {
        #[arg(long, default_value_t = 0.5)]
        nu: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        torus_points: usize,
        /// Worker threads; results do not depend on it.
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let echo = command_echo(&argv[1..]);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.cmd, cli.tol, echo.clone()) {
        Ok(out) => {
            emit(&out.report, cli.json, out.figure.as_deref());
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let r = ErrorReport {
                    schema_version: SCHEMA_VERSION,
                    command: echo,
                    error: ErrorBody {
                        kind: error_kind(&e),
                        message: e.to_string(),
                        exit_code: code,
                    },
                };
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            }
            eprintln!("error [{}]: {e}", error_kind(&e));
            ExitCode::from(code as u8)
        }
    }
}

// `--threads` never changes a result, so it is left out of the echo to keep
// reports byte-identical across thread counts
fn command_echo(args: &[String]) -> String {
    let mut kept = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--threads" {
            it.next();
        } else if !a.starts_with("--threads=") {
            kept.push(a.as_str());
        }
    }
    kept.join(" ")
}

fn emit(r: &Report, json: bool, figure: Option<&str>) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("serializable"));
        return;
    }
    let mut out = format!("su3orb {}\n", r.command);
    if !r.normalization.is_empty() {
        out.push_str(&format!("normalization: {}\n", r.normalization.join(", ")));
    }
    render_value(&r.result, 0, &mut out);
    if let Some(f) = figure {
        out.push('\n');
        out.push_str(f);
    }
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    print!("{out}");
}
