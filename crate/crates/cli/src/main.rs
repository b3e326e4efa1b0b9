use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zclass_core::circulant::{
    eigen_point, labels_for, CirculantParams, CirculantPoint, GridSpec, RegionRulesRegistry,
    TraceClass,
};
use zclass_core::classify::{ClassLabel, ClassRegistry};
use zclass_core::construct::{
    border_m_to_n, make_singular_f0, make_type_d, rand_instances, BorderAlpha, BorderInterval,
    BorderSpec, InstanceLabel, TypeDSpec,
};
use zclass_core::geninv::{group_inverse, singular_f0_group_inverse, BlockF0Form, PseudoInverseRegistry};
use zclass_core::io::{matrix_json, parse_matrix, parse_vector, rational_json, vector_json, write_matrix_csv};
use zclass_core::lcp::{is_r0, is_semimonotone, q0_necessary_witness, solve_enumerate, LcpInstance};
use zclass_core::linalg::inverse;
use zclass_core::probe::ProbeRegistry;
use zclass_core::rational::parse_rational;
use zclass_core::{Error, RatMatrix, Rational};

#[derive(Parser)]
#[command(name = "zclass", version, about = "Exact classification of Z-matrix subclasses")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test every registered class and report verdicts with witnesses.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
        /// Exit 1 unless the matrix is in this class.
        #[arg(long)]
        require: Option<ClassLabel>,
    },
    /// Exact inverse of a nonsingular matrix.
    Inverse {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Moore-Penrose inverse.
    Pinv {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "frf")]
        method: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Group inverse; exits 1 when it does not exist.
    Ginv {
        #[arg(long)]
        matrix: PathBuf,
        /// Use the closed form for a singular F0 matrix [[A, b], [c^T, 0]].
        #[arg(long)]
        block: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    #[command(subcommand)]
    Lcp(LcpCommand),
    #[command(subcommand)]
    Circulant(CirculantCommand),
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Randomized search for counterexamples.
    Probe {
        /// reverse-ostrowski, fan-f0 or ginv-irreducible-f0
        name: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum LcpCommand {
    /// All solutions of LCP(A, q) by complementary support enumeration.
    Solve {
        #[arg(long)]
        matrix: PathBuf,
        /// Vector file (JSON array, matrix JSON or comma list) or an inline comma list.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// R0, semimonotone and Q0-necessary checks.
    Props {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
enum CirculantCommand {
    /// Region verdict for one point, given as (a, t) or by the first row.
    Region {
        #[arg(long)]
        class: ClassLabel,
        #[arg(long, allow_hyphen_values = true)]
        trace: Option<TraceClass>,
        #[arg(long, allow_hyphen_values = true, requires = "t")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        t: Option<String>,
        /// First row alpha0,alpha1,alpha2 instead of (a, t).
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["a", "t"])]
        alpha: Option<String>,
        #[arg(long, default_value = "corrected")]
        rules: String,
    },
    /// CSV of region membership over a rational grid.
    Grid {
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        trace: TraceClass,
        #[arg(long, default_value = "corrected")]
        rules: String,
        /// Comma separated labels; defaults to every region of the trace class.
        #[arg(long)]
        classes: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "-2")]
        a_min: String,
        #[arg(long, allow_hyphen_values = true, default_value = "3")]
        a_max: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-3")]
        t_min: String,
        #[arg(long, allow_hyphen_values = true, default_value = "3")]
        t_max: String,
        #[arg(long, default_value = "1/4")]
        step: String,
        /// Round coordinates for plotting tools instead of exact output.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        decimal_places: Option<u32>,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Type-D matrix from strictly increasing a1 < ... < an.
    TypeD {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Border an invertible M-matrix into an N-matrix.
    Border {
        #[arg(long)]
        matrix: PathBuf,
        /// Border parameter; the midpoint of the admissible interval by default.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Assemble [[A, b], [c^T, 0]] and check it is a singular F0 matrix.
    SingularF0 {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Seeded random instances of a class.
    Rand {
        #[arg(long)]
        label: InstanceLabel,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Args)]
struct SeedArg {
    #[arg(long, env = "ZCLASS_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    /// Input is well formed but the mathematical precondition fails.
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Result text plus whether it represents a domain rejection.
struct Output {
    text: String,
    rejected: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, rejected: None }
    }

    fn json(v: &Value) -> Self {
        Self::ok(pretty(v))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<RatMatrix, Failure> {
    parse_matrix(&read_text(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// A file path if one exists, otherwise the argument itself.
fn read_vector(arg: &str) -> Result<Vec<Rational>, Failure> {
    let p = Path::new(arg);
    let text = if p.is_file() { read_text(p)? } else { arg.to_string() };
    parse_vector(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn emit_matrix(m: &RatMatrix, format: Format) -> Output {
    match format {
        Format::Json => Output::json(&matrix_json(m)),
        Format::Csv => Output::ok(write_matrix_csv(m)),
    }
}

fn witness_json(w: &Option<Vec<Rational>>) -> Value {
    w.as_deref().map_or(Value::Null, vector_json)
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Classify { matrix, require } => {
            let a = read_matrix(&matrix)?;
            let report = ClassRegistry::default().classify(&a)?;
            let mut out = Output::json(&report.to_json());
            if let Some(label) = require {
                if !report.holds(label) {
                    out.rejected = Some(format!("matrix is not {label}"));
                }
            }
            Ok(out)
        }
        Command::Inverse { matrix, format } => {
            let a = read_matrix(&matrix)?;
            Ok(emit_matrix(&inverse(&a)?, format))
        }
        Command::Pinv { matrix, method, format } => {
            let a = read_matrix(&matrix)?;
            let registry = PseudoInverseRegistry::default();
            if registry.get(&method).is_err() {
                return Err(Failure::Usage(format!(
                    "unknown method {method:?}; available: {}",
                    registry.names().join(", ")
                )));
            }
            let r = registry.pinv(&a, &method)?;
            Ok(match format {
                Format::Json => Output::json(&r.to_json()),
                Format::Csv => emit_matrix(&r.pinv, format),
            })
        }
        Command::Ginv { matrix, block, format } => {
            let a = read_matrix(&matrix)?;
            let r = if block {
                singular_f0_group_inverse(&BlockF0Form::split(&a)?)?
            } else {
                group_inverse(&a)?
            };
            let mut out = match (&r.ginv, format) {
                (Some(x), Format::Csv) => emit_matrix(x, format),
                _ => Output::json(&r.to_json()),
            };
            if !r.exists {
                out.rejected = Some("group inverse does not exist".into());
            }
            Ok(out)
        }
        Command::Lcp(LcpCommand::Solve { matrix, q }) => {
            let a = read_matrix(&matrix)?;
            let inst = LcpInstance::new(a, read_vector(&q)?)?;
            Ok(Output::json(&solve_enumerate(&inst)?.to_json()))
        }
        Command::Lcp(LcpCommand::Props { matrix }) => {
            let a = read_matrix(&matrix)?;
            let (r0, r0_w) = is_r0(&a)?;
            let (semi, semi_w) = is_semimonotone(&a)?;
            let q0 = q0_necessary_witness(&a)?;
            Ok(Output::json(&json!({
                "R0": r0,
                "R0_witness": witness_json(&r0_w),
                "semimonotone": semi,
                "semimonotone_witness": witness_json(&semi_w),
                "Q0_necessary_witness": witness_json(&q0),
            })))
        }
        Command::Circulant(CirculantCommand::Region { class, trace, a, t, alpha, rules }) => {
            let registry = RegionRulesRegistry::default();
            let rules = registry.get(&rules)?;
            let (pt, tc) = match (alpha, a, t) {
                (Some(alpha), _, _) => {
                    let v = read_vector(&alpha)?;
                    let [a0, a1, a2] = <[Rational; 3]>::try_from(v)
                        .map_err(|_| Failure::Usage("--alpha needs three entries".into()))?;
                    let p = CirculantParams::new(a0, a1, a2);
                    let tc = match (p.trace_class, trace) {
                        (Some(found), Some(asked)) if found != asked => {
                            return Err(Failure::Domain(format!(
                                "row sum {} is not in trace class {asked}",
                                p.sum()
                            )))
                        }
                        (Some(found), _) => found,
                        (None, _) => {
                            return Err(Failure::Domain(format!(
                                "row sum {} is neither 1 nor -1",
                                p.sum()
                            )))
                        }
                    };
                    (eigen_point(&p), tc)
                }
                (None, Some(a), Some(t)) => {
                    let tc = trace.ok_or_else(|| Failure::Usage("--trace is required with --a/--t".into()))?;
                    (CirculantPoint::new(rational_arg("a", &a)?, rational_arg("t", &t)?), tc)
                }
                _ => return Err(Failure::Usage("give either --alpha or both --a and --t".into())),
            };
            let v = rules.region(&pt, class, tc)?;
            Ok(Output::json(&json!({
                "a": rational_json(&pt.a),
                "t": rational_json(&pt.t),
                "label": v.label.name(),
                "trace": v.trace_class.to_string(),
                "rules": rules.name(),
                "in_region": v.in_region,
                "boundary": v.boundary,
            })))
        }
        Command::Circulant(CirculantCommand::Grid {
            trace,
            rules,
            classes,
            a_min,
            a_max,
            t_min,
            t_max,
            step,
            decimal_places,
        }) => {
            let registry = RegionRulesRegistry::default();
            let rules = registry.get(&rules)?;
            let grid = GridSpec {
                a_min: rational_arg("a-min", &a_min)?,
                a_max: rational_arg("a-max", &a_max)?,
                t_min: rational_arg("t-min", &t_min)?,
                t_max: rational_arg("t-max", &t_max)?,
                step: rational_arg("step", &step)?,
            };
            let labels = match classes {
                Some(list) => list
                    .split(',')
                    .map(|s| s.trim().parse::<ClassLabel>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Failure::Usage(e.to_string()))?,
                None => labels_for(trace),
            };
            let mut buf = Vec::new();
            zclass_core::circulant::emit_region_grid(
                rules,
                &grid,
                &labels,
                trace,
                decimal_places.map(|p| p as usize),
                &mut buf,
            )?;
            Ok(Output::ok(String::from_utf8(buf).expect("csv output is utf-8")))
        }
        Command::Construct(ConstructCommand::TypeD { a, format }) => {
            let spec = TypeDSpec::new(read_vector(&a)?)?;
            Ok(emit_matrix(&make_type_d(&spec), format))
        }
        Command::Construct(ConstructCommand::Border { matrix, alpha, format }) => {
            let a = read_matrix(&matrix)?;
            let alpha = match alpha {
                Some(s) => BorderAlpha::Value(rational_arg("alpha", &s)?),
                None => BorderAlpha::Midpoint,
            };
            let interval = BorderInterval::of(&a)?;
            if let BorderAlpha::Value(v) = &alpha {
                if !interval.contains(v) {
                    return Err(Failure::Domain(format!(
                        "alpha = {v} is outside the admissible interval ({}, {})",
                        interval.gamma, interval.delta
                    )));
                }
            }
            let n = border_m_to_n(&BorderSpec { a, alpha })?;
            Ok(emit_matrix(&n, format))
        }
        Command::Construct(ConstructCommand::SingularF0 { matrix, b, c, format }) => {
            let a = read_matrix(&matrix)?;
            let form = make_singular_f0(&a, &read_vector(&b)?, &read_vector(&c)?)?;
            Ok(emit_matrix(&form.assemble(), format))
        }
        Command::Construct(ConstructCommand::Rand { label, n, count, seed }) => {
            let ms = rand_instances(label, n, seed.seed, count)?;
            Ok(Output::json(&json!({
                "label": label.name(),
                "n": n,
                "seed": seed.seed,
                "matrices": ms.iter().map(matrix_json).collect::<Vec<_>>(),
            })))
        }
        Command::Probe { name, trials, seed, n } => {
            let registry = ProbeRegistry::default();
            let probe = registry.get(&name).map_err(|_| {
                Failure::Usage(format!(
                    "unknown probe {name:?}; available: {}",
                    registry.names().join(", ")
                ))
            })?;
            let report = probe.run(seed.seed, trials, n)?;
            Ok(Output::json(&report.to_json()))
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            if let Err(e) = write_output(cli.out.as_deref(), &out.text) {
                eprintln!("zclass: writing output: {e}");
                return ExitCode::from(2);
            }
            match out.rejected {
                Some(msg) => {
                    eprintln!("zclass: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("zclass: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("zclass: {msg}");
            ExitCode::from(2)
        }
    }
}
