use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use tracerank::cli::{self, corpus, parse_job, Job};
use tracerank::error::{Error, Result};
use tracerank::modrank::Scalars;
use tracerank::poly::{Poly, PolyRing};
use tracerank::tracecalc::SlopeSpec;
use tracerank::valuation::{ani_check, cl_witness, ClWitness, newton_polygon, AlgebraicNumber};

#[derive(Parser)]
#[command(name = "tracerank", version, about = "Rank functions and detected slopes of SL2 character-variety curves")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of the job's ideal.
    Gb { job: PathBuf },
    /// Normal form of a polynomial.
    Nf { job: PathBuf, poly: String },
    /// Ideal membership.
    Member { job: PathBuf, poly: String },
    /// Elimination ideal in the kept variables.
    Eliminate {
        job: PathBuf,
        #[arg(required = true)]
        keep: Vec<String>,
    },
    /// Ranks over C, Q and Z at each slope.
    Rank {
        job: PathBuf,
        /// Slopes p/q; defaults to the job's `slopes:` section.
        #[arg(long = "slope")]
        slopes: Vec<String>,
        /// Any of C, Q, Z.
        #[arg(long = "over", value_delimiter = ',', default_values_t = ["C".to_string(), "Q".to_string()])]
        over: Vec<String>,
        /// Print the certificates.
        #[arg(long)]
        certificates: bool,
    },
    /// Closed-surface and slope verdicts.
    Detect {
        job: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also bound the ranks over Z.
        #[arg(long)]
        integer: bool,
    },
    /// Verify the job's basis and generating-set claims.
    Basis { job: PathBuf },
    /// Verify the job's non-freeness claim.
    Nonfree { job: PathBuf },
    /// Newton polygon of a univariate integer polynomial.
    Newton {
        poly: String,
        #[arg(long)]
        prime: String,
        #[arg(long, default_value = "t")]
        var: String,
        /// Also search for a witness of the transformed polynomial.
        #[arg(long)]
        cl: bool,
    },
    /// Algebraic non-integral evidence for a closed surface.
    Ani {
        /// Minimal polynomial of the slope's trace value.
        #[arg(long)]
        slope_value: String,
        /// `word=minpoly` pairs for other trace values.
        #[arg(long = "value")]
        values: Vec<String>,
        #[arg(long, default_value = "t")]
        var: String,
        /// Asserts that the slope is not a boundary slope.
        #[arg(long, required = true)]
        non_boundary: bool,
    },
    /// Run bundled entries (or a job file) against their expectations.
    Corpus { name: String },
    /// Canonical form of a job file.
    Print { job: PathBuf },
}

fn read_job(path: &PathBuf) -> Result<Job> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_job(&text)
}

fn slopes(job: &Job, given: &[String]) -> Result<Vec<SlopeSpec>> {
    if given.is_empty() {
        return cli::Session::new(job).slopes();
    }
    given.iter().map(|s| cli::job::parse_slope(s, (1, 1))).collect()
}

fn algebraic(text: &str, var: &str) -> Result<AlgebraicNumber> {
    let ring = PolyRing::lex(&[var]);
    let p = Poly::parse(&ring, text)?;
    let u = p
        .to_univariate(0)
        .ok_or_else(|| Error::Invalid(format!("`{text}` is not univariate in {var}")))?;
    AlgebraicNumber::new(&u)
}

fn run(cmd: Command) -> Result<(String, i32)> {
    let ok = |s: String| Ok((s, cli::EXIT_OK));
    match cmd {
        Command::Gb { job } => ok(cli::cmd_gb(&read_job(&job)?)?),
        Command::Nf { job, poly } => ok(cli::cmd_nf(&read_job(&job)?, &poly)?),
        Command::Member { job, poly } => ok(cli::cmd_member(&read_job(&job)?, &poly)?),
        Command::Eliminate { job, keep } => ok(cli::cmd_eliminate(&read_job(&job)?, &keep)?),
        Command::Rank { job, slopes: given, over, certificates } => {
            let job = read_job(&job)?;
            let sc = over
                .iter()
                .map(|s| match s.as_str() {
                    "C" => Ok(Scalars::Complex),
                    "Q" => Ok(Scalars::Rational),
                    "Z" => Ok(Scalars::Integer),
                    o => Err(Error::Invalid(format!("--over takes C, Q or Z, not {o}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            ok(cli::cmd_rank(&job, &slopes(&job, &given)?, &sc, certificates)?)
        }
        Command::Detect { job, json, integer } => ok(cli::cmd_detect(&read_job(&job)?, json, integer)?),
        Command::Basis { job } => ok(cli::cmd_basis(&read_job(&job)?)?),
        Command::Nonfree { job } => ok(cli::cmd_nonfree(&read_job(&job)?)?),
        Command::Newton { poly, prime, var, cl } => {
            let p: BigInt = prime
                .parse()
                .map_err(|_| Error::Invalid(format!("`{prime}` is not an integer")))?;
            let h = algebraic(&poly, &var)?;
            let poly = h.minpoly().clone();
            let mut out = newton_polygon(&poly, &p)?.to_string();
            if !out.ends_with('\n') {
                out.push('\n');
            }
            if cl {
                let w = cl_witness(&poly, &p)?;
                if matches!(w, ClWitness::Found { .. }) && !w.verify(&poly, &p)? {
                    return Err(Error::verification("cl", "witness does not verify"));
                }
                out.push_str(&format!("{w}\n"));
            }
            ok(out)
        }
        Command::Ani { slope_value, values, var, non_boundary: _ } => {
            let slope = algebraic(&slope_value, &var)?;
            let vals = values
                .iter()
                .map(|v| {
                    let (w, m) = v
                        .split_once('=')
                        .ok_or_else(|| Error::Invalid(format!("--value `{v}` must be word=minpoly")))?;
                    Ok((w.trim().to_string(), algebraic(m, &var)?))
                })
                .collect::<Result<Vec<_>>>()?;
            ok(format!("{}\n", ani_check(&vals, &slope)?))
        }
        Command::Corpus { name } => {
            let names: Vec<String> = if name == "all" {
                corpus::NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                vec![name]
            };
            let mut text = String::new();
            let mut code = cli::EXIT_OK;
            for n in names {
                let job = match corpus::load(&n) {
                    Some(j) => j?,
                    None => read_job(&PathBuf::from(&n))?,
                };
                let (t, c) = corpus::run_entry(&job);
                text.push_str(&t);
                code = code.max(c);
            }
            Ok((text, code))
        }
        Command::Print { job } => ok(read_job(&job)?.to_text()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
