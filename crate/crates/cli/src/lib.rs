//! Command-line front end for `rootsig`.
//!
//! [`run`] parses arguments, writes the result to `out` and diagnostics and
//! progress to `err`, and returns the process exit status.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootsig::json::render;
use rootsig::quasi::{fit_quasipolynomial, period_as_u64, DEFAULT_PERIOD_COLUMN_CAP};
use rootsig::signature::DEFAULT_CENSUS_CAP;
use rootsig::tutte::Source;
use rootsig::{
    census_bruteforce, lcm_period_exact, mu_period_bound, period_report, signature,
    tutte11_bruteforce, tutte11_formula, CensusOptions, DeformationSpec, Error, ErrorClass, Family,
    Method, Mode, RootTuple, SignatureTable, TutteEval,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

/// Environment variable read for the default `--workers`.
pub const WORKERS_ENV: &str = "ROOTSIG_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "rootsig",
    version,
    about = "Signatures of type-A root subsets and invariants of deformed arrangements"
)]
struct Cli {
    /// Worker threads for enumerations; 0 uses every core, 1 runs sequentially.
    #[arg(long, global = true, env = WORKERS_ENV, default_value_t = 0)]
    workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    /// Only for `build`.
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Graph,
    Cofactor,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Graph => Method::Graph,
            MethodArg::Cofactor => Method::Cofactor,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Paper,
    Corrected,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Corrected => Mode::Corrected,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Uniform,
    Shi,
    Catalan,
    Linial,
    Ish,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Uniform => Family::Uniform,
            FamilyArg::Shi => Family::Shi,
            FamilyArg::Catalan => Family::Catalan,
            FamilyArg::Linial => Family::Linial,
            FamilyArg::Ish => Family::Ish,
        }
    }
}

/// Which deformation to build.
#[derive(Args, Debug, Clone)]
struct DeformArgs {
    /// Rank of the root system.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = FamilyArg::Uniform)]
    family: FamilyArg,
    /// Lower end of the shift window (uniform family only).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    l: i64,
    /// Upper end of the shift window.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    m: i64,
    /// Explicit shift sets, one per positive root in lexicographic order,
    /// e.g. "0,1;0;1"; overrides --family.
    #[arg(long, allow_hyphen_values = true)]
    shifts: Option<String>,
}

impl DeformArgs {
    fn spec(&self) -> Result<DeformationSpec, Error> {
        if let Some(text) = &self.shifts {
            return Ok(DeformationSpec::General {
                n: self.n,
                sets: parse_shift_sets(text)?,
            });
        }
        Ok(DeformationSpec::from_family(
            self.family.into(),
            self.n,
            self.l,
            self.m,
        ))
    }
}

fn parse_shift_sets(text: &str) -> Result<Vec<Vec<i64>>, Error> {
    text.split(';')
        .map(|set| {
            set.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim().parse::<i64>().map_err(|e| Error::Parse {
                        what: "shift set",
                        detail: format!("{s:?}: {e}"),
                    })
                })
                .collect()
        })
        .collect()
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature of one (n+1)-tuple of positive roots.
    Signature {
        #[arg(long)]
        n: usize,
        /// Semicolon-separated "i,j" pairs, e.g. "1,2;2,3;1,4;2,4".
        #[arg(long)]
        roots: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Graph)]
        method: MethodArg,
        /// Also run the other method and fail on disagreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Exhaustive signature census over all (n+1)-subsets.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Graph)]
        method: MethodArg,
        /// Compare every entry with the closed form.
        #[arg(long)]
        oracle: bool,
        /// Largest n accepted (default 8).
        #[arg(long)]
        cap_override: Option<usize>,
    },
    /// Closed-form signature counts.
    Formula {
        #[arg(long)]
        n: usize,
        /// Compare with the exhaustive census.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        cap_override: Option<usize>,
    },
    /// Deformation matrix of a family or explicit shift sets.
    Build {
        #[command(flatten)]
        deform: DeformArgs,
    },
    /// T(1,1) and T^arith(1,1).
    Tutte {
        #[command(flatten)]
        deform: DeformArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
        mode: ModeArg,
        /// Enumerate bases instead of evaluating the formula.
        #[arg(long, conflicts_with = "oracle")]
        bruteforce: bool,
        /// Run formula and enumeration side by side and fail on mismatch.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact lcm period, base-multiplicity bound and closed form.
    Period {
        #[command(flatten)]
        deform: DeformArgs,
        /// Largest column count for the exact subset enumeration (default 22).
        #[arg(long)]
        cap_override: Option<usize>,
        /// Skip the exact enumeration.
        #[arg(long)]
        no_exact: bool,
        /// Fail unless every computed period agrees.
        #[arg(long)]
        oracle: bool,
    },
    /// Characteristic quasi-polynomial by point counting and interpolation.
    Charquasi {
        #[command(flatten)]
        deform: DeformArgs,
        /// Largest modulus sampled.
        #[arg(long, default_value_t = 45)]
        qmax: u64,
        /// Period to fit with (default: exact lcm period, or the mu bound
        /// above the column cap).
        #[arg(long)]
        period: Option<u64>,
        #[arg(long)]
        cap_override: Option<usize>,
        /// Check that the fitted minimum period equals the exact lcm period.
        #[arg(long)]
        oracle: bool,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    json: Value,
    text: String,
    csv: Option<String>,
    /// Set when an oracle disagreed; the output is still printed.
    mismatch: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            csv: None,
            mismatch: None,
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = execute(&cli, err);
    match result {
        Ok(output) => {
            let body = match cli.format {
                Format::Json => render(&output.json),
                Format::Text => output.text,
                Format::Csv => match output.csv {
                    Some(csv) => csv,
                    None => {
                        let _ = writeln!(err, "error: --format csv is only available for build");
                        return EXIT_USAGE;
                    }
                },
            };
            let _ = write!(out, "{body}");
            match output.mismatch {
                Some(msg) => {
                    let _ = writeln!(err, "oracle mismatch: {msg}");
                    EXIT_MISMATCH
                }
                None => EXIT_OK,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e.class() {
                ErrorClass::Usage => EXIT_USAGE,
                ErrorClass::Hypothesis => EXIT_HYPOTHESIS,
                ErrorClass::Cap => EXIT_CAP,
            }
        }
    }
}

fn progress(err: &mut dyn Write, msg: impl AsRef<str>) {
    let _ = writeln!(err, "{}", msg.as_ref());
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Output, Failure> {
    let workers = cli.workers;
    match &cli.command {
        Command::Signature {
            n,
            roots,
            method,
            oracle,
        } => {
            let tuple = RootTuple::parse(*n, roots)?;
            let method = Method::from(*method);
            let sig = signature(&tuple, method)?;
            let mut output = Output::new(sig.to_json(), format!("{sig}\n"));
            if *oracle {
                let other = match method {
                    Method::Graph => Method::Cofactor,
                    Method::Cofactor => Method::Graph,
                };
                let check = signature(&tuple, other)?;
                if check != sig {
                    output.mismatch =
                        Some(format!("{method:?} gives {sig}, {other:?} gives {check}"));
                }
            }
            Ok(output)
        }
        Command::Census {
            n,
            method,
            oracle,
            cap_override,
        } => {
            let opts = CensusOptions {
                method: (*method).into(),
                workers,
                cap: cap_override.unwrap_or(DEFAULT_CENSUS_CAP),
            };
            let start = Instant::now();
            progress(
                err,
                format!("census n={n}: enumerating ({:?} method)", opts.method),
            );
            let census = census_bruteforce(*n, &opts)?;
            progress(
                err,
                format!(
                    "census n={n}: {} subsets in {:.2}s",
                    census.total(),
                    start.elapsed().as_secs_f64()
                ),
            );
            let table = census.table();
            let mut output = Output::new(table.to_json(), table.to_text());
            if *oracle {
                output.mismatch = compare_tables(&table, &SignatureTable::from_formula(*n));
            }
            Ok(output)
        }
        Command::Formula {
            n,
            oracle,
            cap_override,
        } => {
            if *n == 0 {
                return Err(Error::ZeroRank.into());
            }
            let table = SignatureTable::from_formula(*n);
            let mut output = Output::new(table.to_json(), table.to_text());
            if *oracle {
                let opts = CensusOptions {
                    method: Method::Graph,
                    workers,
                    cap: cap_override.unwrap_or(DEFAULT_CENSUS_CAP),
                };
                progress(
                    err,
                    format!("formula n={n}: running the census for comparison"),
                );
                let census = census_bruteforce(*n, &opts)?;
                output.mismatch = compare_tables(&census.table(), &table);
            }
            Ok(output)
        }
        Command::Build { deform } => {
            let m = deform.spec()?.build()?;
            let mut output = Output::new(m.to_json(), format!("{}\n", m.matrix()));
            output.csv = Some(m.to_csv());
            Ok(output)
        }
        Command::Tutte {
            deform,
            mode,
            bruteforce,
            oracle,
        } => tutte(deform, (*mode).into(), *bruteforce, *oracle, workers, err),
        Command::Period {
            deform,
            cap_override,
            no_exact,
            oracle,
        } => {
            let spec = deform.spec()?;
            let cap = if *no_exact {
                0
            } else {
                cap_override.unwrap_or(DEFAULT_PERIOD_COLUMN_CAP)
            };
            let start = Instant::now();
            progress(err, "period: enumerating column subsets and bases");
            let report = period_report(&spec, cap, workers)?;
            progress(
                err,
                format!("period: done in {:.2}s", start.elapsed().as_secs_f64()),
            );
            let mut text = String::new();
            text.push_str(&format!("rho_exact = {}\n", show(&report.rho_exact)));
            text.push_str(&format!("mu_bound  = {}\n", report.mu_bound));
            text.push_str(&format!("formula   = {}\n", show(&report.formula_value)));
            if let Some(note) = &report.formula_note {
                text.push_str(&format!("note: {note}\n"));
            }
            let mut output = Output::new(report.to_json(), text);
            if *oracle && !report.consistent() {
                output.mismatch = Some("computed periods disagree".into());
            }
            Ok(output)
        }
        Command::Charquasi {
            deform,
            qmax,
            period,
            cap_override,
            oracle,
        } => {
            let dm = deform.spec()?.build()?;
            let cap = cap_override.unwrap_or(DEFAULT_PERIOD_COLUMN_CAP);
            let exact = if dm.column_count() <= cap {
                Some(lcm_period_exact(dm.matrix(), cap, workers)?)
            } else {
                None
            };
            let rho = match (period, &exact) {
                (Some(p), _) => *p,
                (None, Some(e)) => period_as_u64(e)?,
                (None, None) => {
                    progress(
                        err,
                        "charquasi: column count over the cap, fitting with the mu bound",
                    );
                    period_as_u64(&mu_period_bound(&dm, workers)?)?
                }
            };
            if rho == 0 {
                return Err(Failure::Usage("--period must be positive".into()));
            }
            let start = Instant::now();
            progress(
                err,
                format!("charquasi: counting points for q = 1..={qmax}, period {rho}"),
            );
            let qp = fit_quasipolynomial(dm.matrix(), rho, *qmax, workers)?;
            progress(
                err,
                format!("charquasi: done in {:.2}s", start.elapsed().as_secs_f64()),
            );
            let mut output = Output::new(qp.to_json(), qp.to_text());
            if *oracle {
                match exact {
                    Some(e) if period_as_u64(&e)? != qp.minimum_period() => {
                        output.mismatch = Some(format!(
                            "fitted minimum period {} differs from the lcm period {e}",
                            qp.minimum_period()
                        ));
                    }
                    Some(_) => {}
                    None => {
                        return Err(Failure::Usage(
                            "--oracle needs the exact period; raise --cap-override".into(),
                        ))
                    }
                }
            }
            Ok(output)
        }
    }
}

fn show<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn compare_tables(census: &SignatureTable, formula: &SignatureTable) -> Option<String> {
    let diffs: Vec<String> = formula
        .entries
        .iter()
        .filter_map(|(s, f)| {
            let c = census.get(s.a(), s.b());
            (&c != f).then(|| format!("{s}: census {c}, formula {f}"))
        })
        .collect();
    (!diffs.is_empty()).then(|| diffs.join("; "))
}

fn tutte_text(e: &TutteEval) -> String {
    let mut s = format!(
        "{}: T(1,1) = {}, T^arith(1,1) = {}\n",
        e.source, e.base_count, e.arith_sum
    );
    for (i, c) in e.cases.iter().enumerate() {
        s.push_str(&format!(
            "  case {}: {} bases, multiplicity sum {}\n",
            i + 1,
            c.bases,
            c.arith
        ));
    }
    s
}

fn tutte(
    deform: &DeformArgs,
    mode: Mode,
    bruteforce: bool,
    oracle: bool,
    workers: usize,
    err: &mut dyn Write,
) -> Result<Output, Failure> {
    let spec = deform.spec()?;
    let enumerate = |err: &mut dyn Write| -> Result<TutteEval, Failure> {
        let dm = spec.build()?;
        let start = Instant::now();
        progress(
            err,
            format!(
                "tutte: enumerating {}-subsets of {} columns",
                dm.n() + 1,
                dm.column_count()
            ),
        );
        let e = tutte11_bruteforce(&dm, workers)?;
        progress(
            err,
            format!("tutte: done in {:.2}s", start.elapsed().as_secs_f64()),
        );
        Ok(e)
    };
    let formula = || -> Result<TutteEval, Failure> {
        let (l, m) = spec.window().ok_or_else(|| {
            Error::Hypothesis(
                "the closed form needs a uniform window; use --bruteforce for this family".into(),
            )
        })?;
        spec.build()?;
        Ok(tutte11_formula(spec.n(), l, m, mode)?)
    };
    if bruteforce {
        let e = enumerate(err)?;
        return Ok(Output::new(e.to_json(), tutte_text(&e)));
    }
    let f = formula()?;
    if !oracle {
        return Ok(Output::new(f.to_json(), tutte_text(&f)));
    }
    let b = enumerate(err)?;
    let agree = f.same_values(&b);
    let mut m = Map::new();
    m.insert("formula".into(), f.to_json());
    m.insert("bruteforce".into(), b.to_json());
    m.insert("match".into(), json!(agree));
    let text = format!("{}{}match: {agree}\n", tutte_text(&f), tutte_text(&b));
    let mut output = Output::new(Value::Object(m), text);
    if !agree {
        let label = match f.source {
            Source::Formula(mode) => mode.to_string(),
            Source::Bruteforce => unreachable!(),
        };
        output.mismatch = Some(format!(
            "{label} formula gives ({}, {}), enumeration gives ({}, {})",
            f.base_count, f.arith_sum, b.base_count, b.arith_sum
        ));
    }
    Ok(output)
}
