//! Argument parsing and dispatch for the `cqca` binary.
//!
//! [`run`] takes the full argv and returns the process exit code: 0 on
//! success, 1 when an automaton, state or truncation fails validation, 2 on
//! usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cqca::finite_chain::{
    evolve_finite, global_y_parity, mirror_time, oracle_sweep, truncate_rule, Mirror,
};
use cqca::stabilizer::{asymptotic_rate, entanglement_trajectory, trajectory_csv, validate_state};
use cqca::{
    random_cqca, Boundary, CqcaMatrix, DiagramFormat, FiniteChainError, FiniteOperator, Pauli,
    Period, PhaseVector, SpaceTimeDiagram, TIStabilizerState, ValidatedCqca,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cqca",
    version,
    about = "Clifford quantum cellular automata on the line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Built-in automaton (glider, fractal, identity, swap, shear:<poly>) or a matrix file
    matrix: Option<String>,
    #[arg(long, value_name = "POLY")]
    t11: Option<String>,
    #[arg(long, value_name = "POLY")]
    t12: Option<String>,
    #[arg(long, value_name = "POLY")]
    t21: Option<String>,
    #[arg(long, value_name = "POLY")]
    t22: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Ppm,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the automaton conditions and report the class
    Validate(MatrixArgs),
    /// Class, trace, trace degree and period
    Classify {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 10)]
        cap: u64,
    },
    /// Print the trajectory of an observable, one step per line
    Evolve {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Observable such as ZYX@-1
        #[arg(long, allow_hyphen_values = true)]
        obs: String,
        #[arg(long)]
        steps: u64,
    },
    /// Space-time diagram of an observable
    Diagram {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value = "Z@0", allow_hyphen_values = true)]
        obs: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Write to this file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Entanglement trajectory of a stabilizer state as CSV
    Entangle {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Generator of the initial state
        #[arg(long, default_value = "Z@0", allow_hyphen_values = true)]
        state: String,
        #[arg(long)]
        steps: u64,
        /// Block length for the tripartite count
        #[arg(long)]
        region: Option<u64>,
    },
    /// Predicted versus measured entanglement rate
    Rate {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value = "Z@0", allow_hyphen_values = true)]
        state: String,
        #[arg(long, default_value_t = 256)]
        horizon: u64,
    },
    /// Phase-exact simulation on a finite open chain or ring
    Finite {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        sites: usize,
        /// Periodic boundary instead of an open chain
        #[arg(long)]
        ring: bool,
        /// Operator with one letter per site, optionally prefixed by a phase (+, -, i, -i)
        #[arg(long, allow_hyphen_values = true)]
        obs: Option<String>,
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Mirror time of every single-site Pauli
        #[arg(long)]
        mirror: bool,
        /// Append the global-Y parity to each evolution step
        #[arg(long)]
        parity: bool,
    },
    /// Compare the symbolic ebit count with ring entropies for random automata
    Oracle {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 6)]
        word_length: usize,
        #[arg(long, default_value_t = 2)]
        shear_degree: u32,
        #[arg(long, default_value_t = 64)]
        sites: usize,
        #[arg(long, default_value_t = 20)]
        steps: u64,
        #[arg(long, default_value_t = 5)]
        regions: usize,
    },
}

enum Failure {
    Usage(String),
    Invalid { name: &'static str, detail: String },
}

impl From<FiniteChainError> for Failure {
    fn from(e: FiniteChainError) -> Self {
        Failure::Invalid {
            name: e.name(),
            detail: e.to_string(),
        }
    }
}

/// Runs one command. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid { name, detail }) => {
            let _ = writeln!(out, "{name}");
            let _ = writeln!(err, "{detail}");
            EXIT_INVALID
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Usage(format!("cannot write output: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let mut text = String::new();
    match command {
        Command::Validate(m) => {
            let t = load(&m)?;
            writeln!(
                text,
                "valid, class={}, tr={}",
                t.class(),
                compact(&t.trace().to_string())
            )
            .unwrap();
        }
        Command::Classify { matrix, cap } => {
            let t = load(&matrix)?;
            writeln!(text, "class={}", t.class()).unwrap();
            writeln!(text, "tr={}", compact(&t.trace().to_string())).unwrap();
            writeln!(text, "trace_degree={}", t.trace_degree()).unwrap();
            match t.period(cap) {
                Period::Found(p) => writeln!(text, "period={p}").unwrap(),
                Period::NotPeriodicWithin(c) => writeln!(text, "period=none within {c}").unwrap(),
            }
        }
        Command::Evolve { matrix, obs, steps } => {
            let t = load(&matrix)?;
            let mut v = observable("--obs", &obs)?;
            for k in 0..=steps {
                writeln!(text, "{k} {v}").unwrap();
                if k < steps {
                    v = t.apply(&v);
                }
            }
        }
        Command::Diagram {
            matrix,
            obs,
            steps,
            format,
            output,
        } => {
            let t = load(&matrix)?;
            let v = observable("--obs", &obs)?;
            let format = match format {
                Format::Ascii => DiagramFormat::Ascii,
                Format::Ppm => DiagramFormat::Ppm,
            };
            let mut bytes = SpaceTimeDiagram::build(&t, &v, steps).emit(format);
            if format == DiagramFormat::Ascii {
                bytes.push(b'\n');
            }
            match output {
                Some(path) => fs::write(&path, &bytes)
                    .map_err(|e| Failure::Usage(format!("--output {}: {e}", path.display())))?,
                None => out.write_all(&bytes).map_err(io_failure)?,
            }
        }
        Command::Entangle {
            matrix,
            state,
            steps,
            region,
        } => {
            let t = load(&matrix)?;
            let s = stabilizer_state(&state)?;
            if region == Some(0) {
                return Err(Failure::Usage("--region must be positive".into()));
            }
            text = trajectory_csv(&entanglement_trajectory(&t, &s, steps, region));
        }
        Command::Rate {
            matrix,
            state,
            horizon,
        } => {
            let t = load(&matrix)?;
            let s = stabilizer_state(&state)?;
            let rate = asymptotic_rate(&t, &s, horizon)
                .map_err(|e| Failure::Usage(format!("--horizon: {e}")))?;
            writeln!(text, "{rate}").unwrap();
        }
        Command::Finite {
            matrix,
            sites,
            ring,
            obs,
            steps,
            mirror,
            parity,
        } => {
            let t = load(&matrix)?;
            let boundary = if ring { Boundary::Ring } else { Boundary::Open };
            if mirror && ring {
                return Err(Failure::Usage(
                    "--mirror needs an open chain; drop --ring".into(),
                ));
            }
            let rule = truncate_rule(&t, sites, boundary)?;
            writeln!(
                text,
                "# {sites} sites, {boundary} boundary, automorphism check passed"
            )
            .unwrap();
            if let Some(obs) = obs {
                let op = finite_operator(&obs, sites)?;
                for (k, op) in evolve_finite(&rule, &op, steps).iter().enumerate() {
                    if parity {
                        writeln!(text, "{k}\t{op}\t{:+}", global_y_parity(op)).unwrap();
                    } else {
                        writeln!(text, "{k}\t{op}").unwrap();
                    }
                }
            }
            if mirror {
                writeln!(text, "site\tletter\tmirror_step\timage").unwrap();
                for site in 0..sites {
                    for letter in [Pauli::X, Pauli::Y, Pauli::Z] {
                        match mirror_time(&rule, site, letter)? {
                            Mirror::At {
                                step,
                                letter: image,
                            } => writeln!(
                                text,
                                "{site}\t{}\t{step}\t{}{}",
                                letter.to_char(),
                                image.to_char(),
                                sites - 1 - site
                            )
                            .unwrap(),
                            Mirror::NotMirroredWithin(cap) => {
                                writeln!(text, "{site}\t{}\tnone within {cap}\t-", letter.to_char())
                                    .unwrap()
                            }
                        }
                    }
                }
            }
        }
        Command::Oracle {
            seed,
            samples,
            word_length,
            shear_degree,
            sites,
            steps,
            regions,
        } => {
            if regions == 0 || sites < 2 {
                return Err(Failure::Usage(
                    "--regions must be positive and --sites at least 2".into(),
                ));
            }
            let (mut total, mut bad) = (0usize, 0usize);
            for sample in 0..samples {
                let t = random_cqca(seed.wrapping_add(sample), word_length, shear_degree);
                let checks = oracle_sweep(&t, sites, steps, regions)?;
                let mismatches: Vec<_> = checks.iter().filter(|c| !c.agrees()).collect();
                writeln!(
                    text,
                    "sample {sample}: class={} trace_degree={} checks={} mismatches={}",
                    t.class(),
                    t.trace_degree(),
                    checks.len(),
                    mismatches.len()
                )
                .unwrap();
                for c in &mismatches {
                    writeln!(
                        text,
                        "  step {} n={} |R|={}: symbolic {} ring {}",
                        c.step, c.n, c.region_len, c.symbolic, c.ring
                    )
                    .unwrap();
                }
                total += checks.len();
                bad += mismatches.len();
            }
            writeln!(text, "total checks={total} mismatches={bad}").unwrap();
            out.write_all(text.as_bytes()).map_err(io_failure)?;
            if bad > 0 {
                return Err(Failure::Invalid {
                    name: "OracleMismatch",
                    detail: format!("{bad} of {total} oracle checks disagree"),
                });
            }
            return Ok(());
        }
    }
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn compact(s: &str) -> String {
    s.replace(' ', "")
}

fn load(m: &MatrixArgs) -> Result<ValidatedCqca, Failure> {
    let entries = [
        ("--t11", &m.t11),
        ("--t12", &m.t12),
        ("--t21", &m.t21),
        ("--t22", &m.t22),
    ];
    let any_flag = entries.iter().any(|(_, v)| v.is_some());
    let matrix = match (&m.matrix, any_flag) {
        (Some(_), true) => {
            return Err(Failure::Usage(
                "give either a matrix source or --t11/--t12/--t21/--t22, not both".into(),
            ))
        }
        (None, false) => return Err(Failure::Usage(
            "missing automaton: pass a built-in name, a matrix file, or --t11/--t12/--t21/--t22"
                .into(),
        )),
        (None, true) => {
            let mut polys = Vec::with_capacity(4);
            for (flag, value) in entries {
                let value = value.as_ref().ok_or_else(|| {
                    Failure::Usage(format!("{flag} is required when any matrix entry is given"))
                })?;
                polys.push(
                    value
                        .parse()
                        .map_err(|e| Failure::Usage(format!("{flag}: {e}")))?,
                );
            }
            let [t11, t12, t21, t22]: [_; 4] = polys.try_into().unwrap();
            CqcaMatrix::new(t11, t12, t21, t22)
        }
        (Some(source), false) => match CqcaMatrix::builtin(source) {
            Err(e) => return Err(Failure::Usage(format!("{source}: {e}"))),
            Ok(Some(m)) => m,
            Ok(None) => {
                let body = fs::read_to_string(source).map_err(|e| {
                    Failure::Usage(format!(
                        "{source}: not a built-in automaton or readable file ({e})"
                    ))
                })?;
                body.parse()
                    .map_err(|e| Failure::Usage(format!("{source}: {e}")))?
            }
        },
    };
    matrix.validate().map_err(|e| Failure::Invalid {
        name: e.name(),
        detail: e.to_string(),
    })
}

fn observable(flag: &str, s: &str) -> Result<PhaseVector, Failure> {
    s.parse()
        .map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn stabilizer_state(s: &str) -> Result<TIStabilizerState, Failure> {
    let v = observable("--state", s)?;
    validate_state(&v).map_err(|e| Failure::Invalid {
        name: e.name(),
        detail: e.to_string(),
    })
}

fn finite_operator(s: &str, sites: usize) -> Result<FiniteOperator, Failure> {
    let op: FiniteOperator = s
        .parse()
        .map_err(|e| Failure::Usage(format!("--obs: {e}")))?;
    if op.sites() != sites {
        let e = FiniteChainError::LengthMismatch {
            expected: sites,
            got: op.sites(),
        };
        return Err(Failure::Usage(format!("--obs: {e}")));
    }
    Ok(op)
}
