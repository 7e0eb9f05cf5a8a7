use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncomplex_cli::checks;
use ncomplex_cli::commands::{self, IntegrateSpec};
use ncomplex_cli::error::{CliError, CliResult};
use ncomplex_cli::format::parse_algebra;

#[derive(Parser)]
#[command(name = "ncx", version, about = "Commutative n-complex numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral layout, unit products, canonical basis and nodal sets.
    Info {
        /// Algebra descriptor, e.g. polar:3, planar:4, circular4, hyperbolic4.
        #[arg(required_unless_present = "algebra")]
        descriptor: Option<String>,
        #[arg(long, conflicts_with = "descriptor")]
        algebra: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluates an expression over numbers.
    Eval {
        expr: String,
        /// Value bound to `u`, as descriptor:[c0,...] or a JSON number document.
        #[arg(short = 'u', long = "u")]
        u: Option<String>,
        /// Further bindings, name=number.
        #[arg(long = "let")]
        bindings: Vec<String>,
    },
    /// CSV table of a cosexponential family.
    CosexpTable {
        #[arg(long, default_value = "polar")]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        step: f64,
    },
    /// Factors a polynomial with coefficients in the algebra.
    Factor {
        #[arg(long)]
        algebra: String,
        /// Leading coefficient first; entries are scalars or coefficient lists.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// principal, all or capped:N.
        #[arg(long, default_value = "all")]
        mode: String,
    },
    /// Integrates around a circle in one plane and compares with the expected value.
    Integrate {
        /// JSON request, inline or as a file path; replaces the other flags.
        #[arg(long, conflicts_with_all = ["algebra", "function", "u0", "plane"])]
        spec: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
        /// pole, power:M, exp, sin, cos or poly:[a_m,...,a_0].
        #[arg(long, default_value = "pole")]
        function: String,
        /// Center as a comma separated coefficient list; zero when omitted.
        #[arg(long, allow_hyphen_values = true)]
        u0: Option<String>,
        #[arg(long, default_value_t = 1)]
        plane: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 10_000)]
        vertices: usize,
        #[arg(long, default_value_t = 1)]
        subdivisions: usize,
    },
    /// Randomized self-checks.
    Check {
        /// algebra, spectral, cosexp, functions, factor, residue, riemann, matrep or all.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Restricts the checks to this dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Random samples per algebra.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::usage(format!("bad number `{}`", t.trim()))))
        .collect()
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Info { descriptor, algebra, json } => {
            commands::info(&descriptor.or(algebra).expect("clap requires one of them"), json)
        }
        Command::Eval { expr, u, bindings } => commands::eval(&expr, u.as_deref(), &bindings),
        Command::CosexpTable { family, n, from, to, step } => commands::cosexp_table(&family, n, from, to, step),
        Command::Factor { algebra, coeffs, mode } => commands::factor(&algebra, &coeffs, &mode),
        Command::Integrate { spec, algebra, function, u0, plane, radius, vertices, subdivisions } => {
            let spec = match spec {
                Some(text) => commands::parse_integrate_spec(&text)?,
                None => {
                    let algebra = algebra.ok_or_else(|| CliError::usage("--algebra or --spec is required"))?;
                    let u0 = match u0 {
                        Some(s) => parse_list(&s)?,
                        None => vec![0.0; parse_algebra(&algebra)?.n()],
                    };
                    IntegrateSpec { algebra, function, u0, plane, radius, vertices, subdivisions }
                }
            };
            let (out, pass) = commands::integrate(&spec)?;
            if pass {
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::failure("integral misses its expected value"))
            }
        }
        Command::Check { suite, seed, n, samples, inject_fault } => {
            let opts = checks::CheckOptions { seed, dimension: n, samples, fault: inject_fault };
            let outcomes = checks::run(&suite, opts)?;
            let text = checks::report(&outcomes);
            if outcomes.iter().all(|o| o.pass()) {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::failure("some checks failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = std::io::stdout().flush();
            eprintln!("ncx: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
