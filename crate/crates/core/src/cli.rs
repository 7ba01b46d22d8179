//! The `supremal` command line.
//!
//! Exit codes: `0` pass or success, `1` a violation was found, `2` usage or
//! domain error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conditions::{
    check_cartesian_submaximality, check_lsc_numeric, check_separate_submaximality,
    check_submaximal_1d, CheckReport, SumPolicy, TripleGrid, DEFAULT_LSC_DELTA, DEFAULT_LSC_NET,
};
use crate::functional::{evaluate_g, evaluate_h, evaluate_h_hulled, EnergyValue};
use crate::lab::{
    crosscheck_theorem, demo_table_tsv, demonstrate_sequence, hunt_counterexample, WitnessFile,
    WitnessGeometry,
};
use crate::supremand::{
    alphabet_pairs, parse_real, parse_real_list, AnySupremand, Density, LocalDensity,
};
use crate::{Error, ExtReal, Result, StepFunction};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputMode {
    #[default]
    Human,
    Kv,
}

#[derive(Debug, Parser)]
#[command(
    name = "supremal",
    about = "Nonlocal supremal jump energies: evaluation, hulls, submaximality checks, counterexample search",
    after_help = "Supremand specs: sin-ratio-sum | sin-ratio-max | sin-ratio-affine:<alpha> | \
reciprocal-sum-star | constant:<c> | user-grid:<csv file> | user-expression:<expr> (needs --declared-inf).\n\
Numeric lists accept pi multiples: pi = 3.141592653589793, pi/2 = 1.5707963267948966, 3pi/8, -pi."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputMode::Human, global = true)]
    pub output: OutputMode,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SupremandArgs {
    /// Supremand spec, `<name>[:param]`.
    #[arg(long)]
    pub supremand: String,

    /// Declared infimum for user expressions.
    #[arg(long, allow_hyphen_values = true)]
    pub declared_inf: Option<String>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Grid points: a file of numbers or an inline comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,

    #[arg(long, default_value = "skip-undefined")]
    pub sum_policy: String,

    /// Comparison tolerance; defaults to 1e-12 for analytic, 0 for grid supremands.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate H (or G with --local) on a step function file.
    Eval {
        #[arg(long)]
        function: String,
        #[arg(long)]
        supremand: Option<String>,
        /// One-argument density: evaluate the local energy G instead.
        #[arg(long)]
        local: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        declared_inf: Option<String>,
        /// Evaluate with the symmetric-diagonal hull of the supremand.
        #[arg(long)]
        hulled: bool,
    },
    /// Print the symmetric-diagonal hull as a table.
    Hull {
        #[command(flatten)]
        sup: SupremandArgs,
        /// Points to tabulate on (defaults to the alphabet of grid supremands).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Check Cartesian submaximality on all triples of grid points.
    CheckSubmax {
        #[command(flatten)]
        sup: SupremandArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Check separate submaximality on all triples of grid points.
    CheckSeparate {
        #[command(flatten)]
        sup: SupremandArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Check classical submaximality of a one-argument density.
    #[command(name = "check-1d")]
    Check1d {
        /// One-argument density: sin-ratio | abs | neg-abs | constant:<c> | user-expression:<expr in x>.
        #[arg(long, alias = "supremand")]
        local: String,
        #[arg(long, allow_hyphen_values = true)]
        declared_inf: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Numerical lower-semicontinuity test around probe points.
    CheckLsc {
        #[command(flatten)]
        sup: SupremandArgs,
        /// Probe points `x:y,x:y,...`; defaults to all pairs of --grid points.
        #[arg(long, allow_hyphen_values = true)]
        probe: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = DEFAULT_LSC_DELTA)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_LSC_NET)]
        net: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Search for a lower-semicontinuity counterexample on an alphabet.
    Hunt {
        #[command(flatten)]
        sup: SupremandArgs,
        #[arg(long, allow_hyphen_values = true)]
        alphabet: String,
        #[arg(long)]
        tol: Option<f64>,
        /// Write the witness recipe to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Cross-check predicate and brute-force oracle on random tables.
    Crosscheck {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value = "1,2,3", allow_hyphen_values = true)]
        alphabet: String,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Tabulate distances and energies along a witness sequence.
    Demo {
        #[arg(long)]
        witness: String,
        /// Overrides the `supremand` line of the witness file.
        #[arg(long)]
        supremand: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        declared_inf: Option<String>,
        #[arg(long, default_value = "10,100,1000")]
        n: String,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn declared(raw: &Option<String>) -> Result<Option<ExtReal>> {
    raw.as_deref().map(str::parse).transpose()
}

fn supremand(spec: &str, inf: &Option<String>) -> Result<AnySupremand> {
    AnySupremand::from_spec(spec, declared(inf)?)
}

/// A file of numbers (comma, whitespace or newline separated) or an inline list.
fn points(raw: &str) -> Result<Vec<f64>> {
    if Path::new(raw).is_file() {
        let text = read_file(raw)?;
        text.lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| {
                l.split([',', ' ', '\t'])
                    .map(str::to_string)
                    .collect::<Vec<_>>()
            })
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_real(&t))
            .collect()
    } else {
        parse_real_list(raw)
    }
}

fn grid_points(h: &dyn Density, raw: &Option<String>) -> Result<Vec<f64>> {
    match (raw, h.alphabet()) {
        (Some(r), _) => points(r),
        (None, Some(a)) => Ok(a.to_vec()),
        (None, None) => Err(Error::InvalidParameter(
            "--grid is required for analytic supremands".into(),
        )),
    }
}

fn triple_grid(h: &dyn Density, g: &GridArgs) -> Result<(TripleGrid, f64)> {
    let pts = grid_points(h, &g.grid)?;
    let grid = TripleGrid::new(pts, g.sum_policy.parse::<SumPolicy>()?)?;
    Ok((grid, g.tol.unwrap_or_else(|| h.default_tol())))
}

fn emit_report(out: &mut dyn Write, mode: OutputMode, title: &str, r: &CheckReport) -> Result<i32> {
    match mode {
        OutputMode::Kv => write!(out, "check\t{title}\n{}", r.to_kv()),
        OutputMode::Human => write!(out, "{title}\n{r}"),
    }
    .map_err(io)?;
    Ok(if r.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn emit_energy(out: &mut dyn Write, mode: OutputMode, label: &str, e: &EnergyValue) -> Result<()> {
    let pair = e
        .attaining_pair
        .map(|(s, t)| format!("{s},{t}"))
        .unwrap_or_else(|| "none".into());
    match mode {
        OutputMode::Kv => write!(
            out,
            "energy\t{label}\nvalue\t{}\nattaining_pair\t{pair}\n",
            e.value
        ),
        OutputMode::Human => match e.attaining_pair {
            Some((s, t)) => writeln!(
                out,
                "{label}(u) = {}  (attained at jumps {s}, {t})",
                e.value
            ),
            None => writeln!(
                out,
                "{label}(u) = {}  (no jumps: declared infimum)",
                e.value
            ),
        },
    }
    .map_err(io)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mode = cli.output;
    match &cli.command {
        Command::Eval {
            function,
            supremand: spec,
            local,
            declared_inf,
            hulled,
        } => {
            let u: StepFunction = read_file(function)?.parse()?;
            match (spec, local) {
                (None, Some(g)) => {
                    let g = LocalDensity::from_spec(g, declared(declared_inf)?)?;
                    emit_energy(out, mode, "G", &evaluate_g(&u, &g)?)?;
                }
                (Some(s), None) => {
                    let h = supremand(s, declared_inf)?;
                    let (label, e) = if *hulled {
                        ("H_hat", evaluate_h_hulled(&u, &h)?)
                    } else {
                        ("H", evaluate_h(&u, &h)?)
                    };
                    emit_energy(out, mode, label, &e)?;
                }
                _ => {
                    return Err(Error::InvalidParameter(
                        "give exactly one of --supremand and --local".into(),
                    ))
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Hull { sup, grid } => {
            let h = supremand(&sup.supremand, &sup.declared_inf)?;
            let pts = grid_points(&h, grid)?;
            let hull = h.hull();
            match mode {
                OutputMode::Kv => {
                    for (x, y) in alphabet_pairs(&pts) {
                        writeln!(out, "hull\t{x}\t{y}\t{}", hull.eval(x, y)?).map_err(io)?;
                    }
                }
                OutputMode::Human => {
                    let g = crate::GridSupremand::tabulate(&hull, pts)?;
                    writeln!(out, "# hull of {}", h.name()).map_err(io)?;
                    write!(out, "{g}").map_err(io)?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::CheckSubmax { sup, grid } => {
            let h = supremand(&sup.supremand, &sup.declared_inf)?;
            let (g, tol) = triple_grid(&h, grid)?;
            let r = check_cartesian_submaximality(&h, &g, tol)?;
            emit_report(out, mode, "cartesian-submaximality", &r)
        }
        Command::CheckSeparate { sup, grid } => {
            let h = supremand(&sup.supremand, &sup.declared_inf)?;
            let (g, tol) = triple_grid(&h, grid)?;
            let r = check_separate_submaximality(&h, &g, tol)?;
            emit_report(out, mode, "separate-submaximality", &r)
        }
        Command::Check1d {
            local,
            declared_inf,
            grid,
        } => {
            let g = LocalDensity::from_spec(local, declared(declared_inf)?)?;
            let raw = grid
                .grid
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--grid is required".into()))?;
            let tg = TripleGrid::new(points(raw)?, grid.sum_policy.parse()?)?;
            let r = check_submaximal_1d(&g, &tg, grid.tol.unwrap_or(1e-12))?;
            emit_report(out, mode, "submaximality", &r)
        }
        Command::CheckLsc {
            sup,
            probe,
            grid,
            delta,
            net,
            tol,
        } => {
            let h = supremand(&sup.supremand, &sup.declared_inf)?;
            let probes = match (probe, grid) {
                (Some(p), _) => parse_pairs(p)?,
                (None, g) => alphabet_pairs(&grid_points(&h, g)?),
            };
            let r = check_lsc_numeric(&h, &probes, *delta, *net, tol.unwrap_or(h.default_tol()))?;
            emit_report(out, mode, "lower-semicontinuity", &r)
        }
        Command::Hunt {
            sup,
            alphabet,
            tol,
            out: path,
        } => {
            let h = supremand(&sup.supremand, &sup.declared_inf)?;
            let alphabet = points(alphabet)?;
            let tol = tol.unwrap_or(h.default_tol());
            let found = hunt_counterexample(&h, &alphabet, tol, WitnessGeometry::default())?;
            let Some(w) = found else {
                match mode {
                    OutputMode::Kv => writeln!(out, "witness\tnone"),
                    OutputMode::Human => writeln!(out, "no counterexample on this alphabet"),
                }
                .map_err(io)?;
                return Ok(EXIT_PASS);
            };
            let file = WitnessFile {
                supremand: Some(sup.supremand.clone()),
                recipe: w.recipe.clone(),
            };
            let list = |v: &[f64]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let seq = w.recipe.element(w.recipe.min_index())?;
            match mode {
                OutputMode::Kv => write!(
                    out,
                    "witness\tfound\nlimit_jumps\t{}\nsequence_jumps\t{}\nlimit_energy\t{}\nsequence_energy\t{}\ngap\t{}\n",
                    list(w.limit.jump_profile().jumps()),
                    list(seq.jump_profile().jumps()),
                    w.limit_energy,
                    w.sequence_energy_liminf,
                    w.gap
                ),
                OutputMode::Human => write!(
                    out,
                    "counterexample found\n  limit jumps      [{}]\n  sequence jumps   [{}]\n  H(limit)         {}\n  H(u_n)           {}\n  gap              {}\n",
                    list(w.limit.jump_profile().jumps()),
                    list(seq.jump_profile().jumps()),
                    w.limit_energy,
                    w.sequence_energy_liminf,
                    w.gap
                ),
            }
            .map_err(io)?;
            if let Some(p) = path {
                std::fs::write(p, file.to_string()).map_err(|e| Error::Io(format!("{p}: {e}")))?;
            }
            Ok(EXIT_FAIL)
        }
        Command::Crosscheck {
            seed,
            instances,
            alphabet,
            levels,
        } => {
            let r = crosscheck_theorem(*seed, *instances, &points(alphabet)?, *levels)?;
            match mode {
                OutputMode::Kv => write!(out, "{}", r.to_kv()),
                OutputMode::Human => {
                    let mut s = format!(
                        "instances      {}\nagreements     {}\ndisagreements  {}\n  (both fail on {} instances, both pass on {})\n",
                        r.instances,
                        r.agreements,
                        r.disagreements.len(),
                        r.both_failed,
                        r.agreements - r.both_failed
                    );
                    for d in &r.disagreements {
                        s.push_str(&format!(
                            "  instance {}: predicate {}, oracle {}, table {}\n",
                            d.instance,
                            if d.predicate_passed { "pass" } else { "fail" },
                            if d.oracle_passed { "pass" } else { "fail" },
                            d.fingerprint
                        ));
                    }
                    write!(out, "{s}")
                }
            }
            .map_err(io)?;
            Ok(if r.disagreements.is_empty() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::Demo {
            witness,
            supremand: spec,
            declared_inf,
            n,
        } => {
            let file: WitnessFile = read_file(witness)?.parse()?;
            let spec = spec.clone().or(file.supremand.clone()).ok_or_else(|| {
                Error::InvalidParameter("witness file names no supremand; pass --supremand".into())
            })?;
            let h = supremand(&spec, declared_inf)?;
            let ns = n
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad n `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let rows = demonstrate_sequence(&file.recipe, &h, &ns)?;
            write!(out, "{}", demo_table_tsv(&rows)).map_err(io)?;
            Ok(EXIT_PASS)
        }
    }
}

fn parse_pairs(raw: &str) -> Result<Vec<(f64, f64)>> {
    raw.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (x, y) = t
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter(format!("probe `{t}` is not x:y")))?;
            Ok((parse_real(x)?, parse_real(y)?))
        })
        .collect()
}
