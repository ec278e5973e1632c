//! Argument handling and report rendering for the `seiffert` binary.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seiffert_core::bernoulli::bernoulli_even;
use seiffert_core::means::{blend_mean_j, classical_mean, MeanKind, PositivePair};
use seiffert_core::oracle::Oracle;
use seiffert_core::proof::certify_lambda_chain;
use seiffert_core::series::{SeriesKind, TruncatedSeries};
use seiffert_core::sharp::{
    discover_constants, ordering_chain_verify, prior_bounds_regression, theorem_1_1_verify,
    theorem_1_2_verify, SharpConstantReport, SuiteReport, SweepConfig,
};
use seiffert_core::{Error, Result};

pub const SCHEMA: u32 = 1;
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest gap between a recovered constant and its closed form that still passes.
pub const CONSTANT_GAP_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "seiffert", version, about = "Evaluate means and verify sharp Seiffert-mean bounds")]
pub struct Cli {
    /// Number of random ratios per sweep.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Seed of the ChaCha8 ratio generator.
    #[arg(long, global = true, default_value_t = SweepConfig::default().seed)]
    pub seed: u64,
    /// Largest sampled ratio a/b.
    #[arg(long, global = true, default_value_t = 1e8)]
    pub ratio_max: f64,
    /// Number of series terms.
    #[arg(long, global = true, default_value_t = 40)]
    pub order: usize,
    /// Decimal digits used by the reference evaluator.
    #[arg(long, global = true, default_value_t = 100)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Thm1,
    Thm2,
    Priors,
    Chain,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Bernoulli,
    Cot,
    Csc2,
    Ratio,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one mean at (a, b).
    #[command(allow_negative_numbers = true)]
    Eval {
        /// seiffert, arithmetic, geometric, root-square, contra-harmonic, centroidal, power or blend
        kind: String,
        a: f64,
        b: f64,
        /// Exponent for `power`.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<f64>,
        /// Weight in [1/2, 1] for `blend`.
        #[arg(long)]
        x: Option<f64>,
        /// Also print the reference value with `--precision` digits.
        #[arg(long)]
        exact: bool,
    },
    /// Sweep sampled ratios through the selected inequalities.
    Verify {
        #[arg(value_enum)]
        which: Suite,
        /// Move lower-bound constants past their optimum by this amount.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        alpha_shift: f64,
        /// Move upper-bound constants past their optimum by this amount.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        beta_shift: f64,
    },
    /// Recover the four sharp constants numerically.
    Constants,
    /// Dump exact series coefficients.
    Series {
        #[arg(value_enum)]
        what: SeriesName,
    },
    /// Check the auxiliary-function chain at the sharp blend weight.
    Proof {
        /// Size of the sign-check grid on (1, 1e8).
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
}

/// Validated run settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub samples: usize,
    pub seed: u64,
    pub ratio_max: f64,
    pub series_order: usize,
    pub precision_digits: u32,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let config = RunConfig {
            samples: cli.samples,
            seed: cli.seed,
            ratio_max: cli.ratio_max,
            series_order: cli.order,
            precision_digits: cli.precision,
            output_format: cli.format,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Domain("--samples must be at least 1".into()));
        }
        if !(self.ratio_max > 1.0 && self.ratio_max.is_finite()) {
            return Err(Error::Domain(format!("--ratio-max must exceed 1, got {}", self.ratio_max)));
        }
        if !(1..=seiffert_core::bernoulli::N_MAX).contains(&self.series_order) {
            return Err(Error::Range(format!(
                "--order must lie in 1..={}, got {}",
                seiffert_core::bernoulli::N_MAX,
                self.series_order
            )));
        }
        if !(1..=10_000).contains(&self.precision_digits) {
            return Err(Error::Domain(format!("--precision must lie in 1..=10000, got {}", self.precision_digits)));
        }
        Ok(())
    }

    fn sweep(&self, lower_shift: f64, upper_shift: f64) -> SweepConfig {
        SweepConfig {
            samples: self.samples,
            seed: self.seed,
            ratio_max: self.ratio_max,
            lower_shift,
            upper_shift,
        }
    }
}

/// Text for stdout and stderr plus the process exit code.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Runs a parsed command line; domain and range errors map to exit code 2.
pub fn run(cli: &Cli) -> Outcome {
    let result = RunConfig::from_cli(cli).and_then(|config| match &cli.command {
        Command::Eval { kind, a, b, p, x, exact } => cmd_eval(&config, kind, *a, *b, *p, *x, *exact),
        Command::Verify {
            which,
            alpha_shift,
            beta_shift,
        } => cmd_verify(&config, *which, *alpha_shift, *beta_shift),
        Command::Constants => cmd_constants(&config),
        Command::Series { what } => cmd_series(&config, *what),
        Command::Proof { grid } => cmd_proof(&config, *grid),
    });
    result.unwrap_or_else(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: EXIT_USAGE,
    })
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("reports serialize"));
    out.push('\n');
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    schema: u32,
    kind: &'a str,
    a: f64,
    b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

fn cmd_eval(config: &RunConfig, kind: &str, a: f64, b: f64, p: Option<f64>, x: Option<f64>, exact: bool) -> Result<Outcome> {
    let pair = PositivePair::new(a, b)?;
    let name = kind.trim().to_ascii_lowercase();
    let (value, mean) = match name.as_str() {
        "blend" => {
            let x = x.ok_or_else(|| Error::Domain("blend needs --x".into()))?;
            (blend_mean_j(x, pair)?, None)
        }
        "power" => {
            let p = p.ok_or_else(|| Error::Domain("power needs --p".into()))?;
            let kind = MeanKind::Power(p);
            kind.validate()?;
            (classical_mean(kind, pair)?, Some(kind))
        }
        other => {
            let kind: MeanKind = other.parse()?;
            (classical_mean(kind, pair)?, Some(kind))
        }
    };
    let reference = if exact {
        let o = Oracle::new(config.precision_digits);
        let v = match mean {
            None => o.blend(x.unwrap_or(1.0), a, b),
            Some(MeanKind::Seiffert) => o.seiffert(a, b),
            Some(MeanKind::Arithmetic) => o.arithmetic(a, b),
            Some(MeanKind::Geometric) => o.geometric(a, b),
            Some(MeanKind::RootSquare) => o.root_square(a, b),
            Some(MeanKind::ContraHarmonic) => o.contra_harmonic(a, b),
            Some(MeanKind::Centroidal) => o.centroidal(a, b),
            Some(MeanKind::Power(_)) => {
                return Err(Error::Domain("no reference evaluation for power means".into()));
            }
        };
        Some(v.to_string())
    } else {
        None
    };
    let label = mean.map(|m| m.to_string()).unwrap_or_else(|| "blend".into());
    let mut out = String::new();
    match config.output_format {
        OutputFormat::Plain => {
            writeln!(out, "{value}").unwrap();
            if let Some(r) = &reference {
                writeln!(out, "{r}").unwrap();
            }
        }
        OutputFormat::Json => json_line(
            &mut out,
            &EvalRecord {
                schema: SCHEMA,
                kind: &label,
                a,
                b,
                p: if name == "power" { p } else { None },
                x: if name == "blend" { x } else { None },
                value,
                exact: reference,
            },
        ),
        OutputFormat::Csv => {
            out = csv_text(
                &["kind", "a", "b", "value", "exact"],
                &[vec![label, num(a), num(b), num(value), reference.unwrap_or_default()]],
            );
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: EXIT_PASS,
    })
}

#[derive(Serialize)]
struct SuiteRecord<'a> {
    schema: u32,
    #[serde(flatten)]
    report: &'a SuiteReport,
}

/// Shortest round-trip text, switching to exponent form for very small or large magnitudes.
pub fn num(x: f64) -> String {
    let m = x.abs();
    if m != 0.0 && m.is_finite() && !(1e-4..1e16).contains(&m) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn cmd_verify(config: &RunConfig, which: Suite, alpha_shift: f64, beta_shift: f64) -> Result<Outcome> {
    let sweep = config.sweep(alpha_shift, beta_shift);
    let mut reports = Vec::new();
    if matches!(which, Suite::Thm1 | Suite::All) {
        reports.push(theorem_1_1_verify(&sweep)?);
    }
    if matches!(which, Suite::Thm2 | Suite::All) {
        reports.push(theorem_1_2_verify(&sweep)?);
    }
    if matches!(which, Suite::Priors | Suite::All) {
        reports.push(prior_bounds_regression(&sweep)?);
    }
    if matches!(which, Suite::Chain | Suite::All) {
        reports.push(ordering_chain_verify(&sweep)?);
    }
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    for r in &mut reports {
        r.bounds.sort_by(|a, b| a.name.cmp(&b.name));
    }
    let pass = reports.iter().all(|r| r.pass);

    let mut out = String::new();
    match config.output_format {
        OutputFormat::Json => {
            for r in &reports {
                json_line(&mut out, &SuiteRecord { schema: SCHEMA, report: r });
            }
        }
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                if r.bounds.is_empty() {
                    rows.push(vec![
                        r.suite.clone(),
                        String::new(),
                        String::new(),
                        String::new(),
                        opt(r.witness.map(|w| w.ratio)),
                        num(r.min_slack_left.min(r.min_slack_right)),
                    ]);
                }
                for b in &r.bounds {
                    rows.push(vec![
                        b.name.clone(),
                        num(b.sharp),
                        num(b.implied_extreme),
                        num((b.implied_extreme - b.sharp).abs()),
                        opt(b.witness.map(|w| w.ratio)),
                        num(b.min_slack),
                    ]);
                }
            }
            out = csv_text(&["name", "closed_form", "discovered", "gap", "witness_ratio", "slack"], &rows);
        }
        OutputFormat::Plain => {
            for r in &reports {
                writeln!(
                    out,
                    "{} {} samples={} min_slack_left={:e} min_slack_right={:e}",
                    r.suite,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.n_samples,
                    r.min_slack_left,
                    r.min_slack_right
                )
                .unwrap();
                for b in &r.bounds {
                    writeln!(
                        out,
                        "  {} constant={} tested={} extreme={} at ratio {} violations={}",
                        b.name, b.sharp, b.tested, b.implied_extreme, b.implied_extreme_ratio, b.violations
                    )
                    .unwrap();
                }
                if let Some(w) = r.witness {
                    writeln!(out, "  witness ratio={} slack={:e} lhs={} rhs={}", w.ratio, w.slack, w.lhs, w.rhs).unwrap();
                }
            }
        }
    }
    let mut err = String::new();
    for r in reports.iter().filter(|r| !r.pass) {
        if let Some(w) = r.witness {
            writeln!(err, "{}: violated at ratio {} (slack {:e})", r.suite, w.ratio, w.slack).unwrap();
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: err,
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

#[derive(Serialize)]
struct ConstantRecord<'a> {
    schema: u32,
    #[serde(flatten)]
    report: &'a SharpConstantReport,
}

fn cmd_constants(config: &RunConfig) -> Result<Outcome> {
    let rows = discover_constants(config.samples.max(4))?;
    let pass = rows.iter().all(|r| r.abs_gap <= CONSTANT_GAP_TOLERANCE);
    let mut out = String::new();
    match config.output_format {
        OutputFormat::Json => {
            for r in &rows {
                json_line(&mut out, &ConstantRecord { schema: SCHEMA, report: r });
            }
        }
        OutputFormat::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        num(r.closed_form),
                        num(r.discovered),
                        num(r.abs_gap),
                        opt(r.witness.map(|w| w.ratio)),
                        opt(r.witness.map(|w| w.slack)),
                    ]
                })
                .collect();
            out = csv_text(&["name", "closed_form", "discovered", "gap", "witness_ratio", "slack"], &table);
        }
        OutputFormat::Plain => {
            for r in &rows {
                write!(out, "{:<7} closed={:<20} discovered={:<20} gap={:e}", r.name, num(r.closed_form), num(r.discovered), r.abs_gap).unwrap();
                if let Some(w) = r.witness {
                    write!(out, " witness ratio={} margin={:e} slack={:e}", w.ratio, w.margin, w.slack).unwrap();
                }
                out.push('\n');
            }
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: if pass {
            String::new()
        } else {
            format!("error: a recovered constant is off by more than {CONSTANT_GAP_TOLERANCE:e}\n")
        },
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

#[derive(Serialize)]
struct CoefficientRow {
    n: usize,
    value: String,
}

#[derive(Serialize)]
struct SeriesRecord {
    schema: u32,
    series: &'static str,
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_bound: Option<f64>,
    coefficients: Vec<CoefficientRow>,
}

fn cmd_series(config: &RunConfig, what: SeriesName) -> Result<Outcome> {
    let order = config.series_order;
    let (name, rows, tail) = match what {
        SeriesName::Bernoulli => {
            let rows = (1..=order)
                .map(|n| Ok(CoefficientRow { n, value: bernoulli_even(n)?.to_string() }))
                .collect::<Result<Vec<_>>>()?;
            ("bernoulli", rows, None)
        }
        other => {
            let (name, kind) = match other {
                SeriesName::Cot => ("cot", SeriesKind::Cot),
                SeriesName::Csc2 => ("csc2", SeriesKind::Csc2),
                _ => ("ratio", SeriesKind::Ratio),
            };
            let s = TruncatedSeries::new(kind, order)?;
            let rows = s
                .exact_coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| CoefficientRow { n: i + 1, value: c.to_string() })
                .collect();
            (name, rows, Some((s.radius(), s.tail_bound())))
        }
    };
    let mut out = String::new();
    match config.output_format {
        OutputFormat::Json => json_line(
            &mut out,
            &SeriesRecord {
                schema: SCHEMA,
                series: name,
                order,
                radius: tail.map(|t| t.0),
                tail_bound: tail.map(|t| t.1),
                coefficients: rows,
            },
        ),
        OutputFormat::Csv => {
            let table: Vec<Vec<String>> = rows.iter().map(|r| vec![r.n.to_string(), r.value.clone()]).collect();
            out = csv_text(&["n", "coefficient"], &table);
        }
        OutputFormat::Plain => {
            for r in &rows {
                writeln!(out, "n={}: {}", r.n, r.value).unwrap();
            }
            if let Some((radius, bound)) = tail {
                writeln!(out, "tail bound on 0 < |x| <= {radius}: {bound:e}").unwrap();
            }
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: EXIT_PASS,
    })
}

#[derive(Serialize)]
struct ProofRecord<'a> {
    schema: u32,
    pass: bool,
    #[serde(flatten)]
    certificate: &'a seiffert_core::proof::ChainCertificate,
}

fn cmd_proof(config: &RunConfig, grid: usize) -> Result<Outcome> {
    if grid == 0 {
        return Err(Error::Domain("--grid must be at least 1".into()));
    }
    let cert = certify_lambda_chain(grid)?;
    let residual = cert.critical_points.residuals.iter().copied().fold(0.0, f64::max);
    let pass = cert.critical_points.ordered() && residual < 1e-10 && cert.negative_on_grid && cert.f_at_1e8.abs() <= 1e-6;
    let mut out = String::new();
    match config.output_format {
        OutputFormat::Json => json_line(&mut out, &ProofRecord { schema: SCHEMA, pass, certificate: &cert }),
        OutputFormat::Csv => {
            let cp = &cert.critical_points;
            out = csv_text(
                &["p", "t0", "t1", "t2", "t3", "max_residual", "max_f_on_grid", "f_at_1e8", "pass"],
                &[vec![
                    num(cert.p),
                    num(cp.t0),
                    num(cp.t1),
                    num(cp.t2),
                    num(cp.t3),
                    num(residual),
                    num(cert.max_f_on_grid),
                    num(cert.f_at_1e8),
                    pass.to_string(),
                ]],
            );
        }
        OutputFormat::Plain => {
            let cp = &cert.critical_points;
            writeln!(out, "p = {}", cert.p).unwrap();
            writeln!(out, "switch points: {} < {} < {} < {}", cp.t0, cp.t1, cp.t2, cp.t3).unwrap();
            writeln!(out, "max root residual: {residual:e}").unwrap();
            writeln!(out, "f3(1) = {}, f4(1) = {}, c1 = {}", cert.f3_at_one, cert.f4_at_one, cert.leading_coefficient).unwrap();
            writeln!(out, "max f on {} grid points: {:e}", cert.grid_points, cert.max_f_on_grid).unwrap();
            writeln!(out, "f(1e8) = {:e}, limit = {:e}", cert.f_at_1e8, cert.limit_at_infinity).unwrap();
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}
