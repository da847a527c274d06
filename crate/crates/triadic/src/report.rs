//! Config parsing and the command layer: everything the `triadic` binary
//! does lives here so the examples and tests can drive it in-process.
//!
//! Output contract: stdout carries the report (machine-readable JSON with
//! `--json`, plain text otherwise) and is byte-identical for identical
//! inputs and version; timing goes to stderr only. Exit codes: 0 success,
//! 1 input error, 2 precision/resource exhaustion.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::conjecture::{self, is_prime, FailureCertificate, Status};
use crate::diophantine::{factorial_bounds, solve_factorial, BoundCertificate, ValuationCap};
use crate::error::{Error, Result};
use crate::law::{derive_law, verify_law, ClassLaw, Mismatch, ValuationLaw};
use crate::sequence::RecurrenceSpec;
use crate::tiz::{tiz_set, TizReport, TizStatus, DEFAULT_WINDOW};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A parsed sequence configuration: the recurrence plus optional analysis
/// overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceConfig {
    pub spec: RecurrenceSpec,
    /// Trusted zero-set override; when present, `scan` uses it instead of
    /// certifying one.
    pub tiz: Option<Vec<i64>>,
    /// Zero-search window override.
    pub window: Option<(i64, i64)>,
}

/// Parse `key = value` configuration text.
///
/// Keys: `name` (optional), `a b c x0 x1 x2` (required integers), `tiz`
/// (optional comma-separated integers), `window` (optional `LO,HI`).
/// `#` starts a comment; blank lines are ignored.
pub fn parse_config(text: &str) -> Result<SequenceConfig> {
    let mut seen: BTreeMap<&str, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::Parse {
            line: line_no,
            msg: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let value = value.trim();
        const KEYS: [&str; 9] = ["name", "a", "b", "c", "x0", "x1", "x2", "tiz", "window"];
        let key = KEYS.iter().find(|k| **k == key).ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("unknown key `{key}`"),
        })?;
        if seen.insert(key, (line_no, value.to_string())).is_some() {
            return Err(Error::Parse { line: line_no, msg: format!("duplicate key `{key}`") });
        }
    }
    let int = |key: &str| -> Result<i64> {
        let (line, value) =
            seen.get(key).ok_or_else(|| Error::MissingKey { key: key.into() })?;
        value.parse::<i64>().map_err(|e| Error::Parse {
            line: *line,
            msg: format!("invalid integer for `{key}`: {e}"),
        })
    };
    let mut spec = RecurrenceSpec::new(
        int("a")?,
        int("b")?,
        int("c")?,
        int("x0")?,
        int("x1")?,
        int("x2")?,
    )?;
    if let Some((_, name)) = seen.get("name") {
        spec = spec.with_name(name);
    }
    let tiz = match seen.get("tiz") {
        None => None,
        Some((line, value)) => Some(parse_int_list(value).map_err(|msg| Error::Parse {
            line: *line,
            msg,
        })?),
    };
    let window = match seen.get("window") {
        None => None,
        Some((line, value)) => Some(parse_window(value).map_err(|msg| Error::Parse {
            line: *line,
            msg,
        })?),
    };
    Ok(SequenceConfig { spec, tiz, window })
}

fn parse_int_list(value: &str) -> std::result::Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse::<i64>().map_err(|e| format!("invalid integer `{part}`: {e}"))?);
    }
    Ok(out)
}

fn parse_window(value: &str) -> std::result::Result<(i64, i64), String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err("window must be `LO,HI`".into());
    }
    let lo = parts[0].parse::<i64>().map_err(|e| format!("invalid window bound: {e}"))?;
    let hi = parts[1].parse::<i64>().map_err(|e| format!("invalid window bound: {e}"))?;
    if lo > hi {
        return Err(format!("window is empty: {lo} > {hi}"));
    }
    Ok((lo, hi))
}

/// Command-line surface of the `triadic` binary.
#[derive(Debug, Parser)]
#[command(
    name = "triadic",
    version,
    about = "p-adic valuation analysis for third-order integer linear recurrences"
)]
pub struct Cli {
    /// Sequence config file (`key = value` lines; keys a,b,c,x0,x1,x2,…).
    #[arg(long, global = true, value_name = "FILE")]
    pub seq: Option<std::path::PathBuf>,
    /// Built-in sequence: tribonacci, tripell, or mtripell.
    #[arg(long, global = true, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for scans (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact term x_n.
    Term {
        #[arg(short)]
        n: i64,
    },
    /// Print the period of the sequence modulo p^level.
    Period {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Decide, for every prime in [pmin, pmax], whether the valuation
    /// conjecture fails or holds; one report line per prime.
    Scan {
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// Zero-search window `LO,HI` used when the zero set must be
        /// certified first.
        #[arg(long, value_name = "LO,HI")]
        window: Option<String>,
    },
    /// Certify the twisted-integral-zero set.
    Tiz {
        #[arg(long, value_name = "LO,HI")]
        window: Option<String>,
    },
    /// Derive the per-class valuation law at p.
    Law {
        #[arg(long)]
        p: u64,
        /// Working precision (certified p-adic digits).
        #[arg(long, default_value_t = 8, value_name = "K")]
        precision: u32,
        /// Check every index up to NMAX against the law.
        #[arg(long, value_name = "NMAX")]
        verify_up_to: Option<u64>,
    },
    /// Bound and solve the factorial equation x_n = m!.
    Factorial {
        #[arg(long)]
        p: u64,
        /// Working precision for the law the bounds are derived from.
        #[arg(long, default_value_t = 8, value_name = "K")]
        precision: u32,
    },
}

/// Entry point for the binary: parse `std::env::args`, run, return the exit
/// code.
pub fn cli_main() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(&args, &mut out, &mut err)
}

/// Run the CLI against explicit arguments and streams (testable form).
pub fn run_with<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is an
            // input error.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let started = Instant::now();
    let code = match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            render_error(&e, cli.json, out);
            exit_code_for(&e)
        }
    };
    if std::env::var_os("TRIADIC_QUIET").is_none() {
        let _ = writeln!(err, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    code
}

/// Exit-code policy: precision/resource exhaustion is 2, everything else
/// that errors out is an input problem.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) | Error::ResourceExhausted(_) => 2,
        _ => 1,
    }
}

fn render_error(e: &Error, json: bool, out: &mut dyn Write) {
    if json {
        let line = serde_json::to_string(&ErrorReport { error: e.to_string() })
            .expect("error report serializes");
        let _ = writeln!(out, "{line}");
    } else {
        let _ = writeln!(out, "error: {e}");
    }
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
}

/// Echo of the sequence a report is about.
#[derive(Serialize)]
struct SeqEcho {
    name: Option<String>,
    a: i64,
    b: i64,
    c: i64,
    x0: i64,
    x1: i64,
    x2: i64,
}

impl SeqEcho {
    fn of(spec: &RecurrenceSpec) -> Self {
        SeqEcho {
            name: spec.name.clone(),
            a: spec.a,
            b: spec.b,
            c: spec.c,
            x0: spec.x0,
            x1: spec.x1,
            x2: spec.x2,
        }
    }
}

#[derive(Serialize)]
struct TermReport {
    command: &'static str,
    sequence: SeqEcho,
    n: i64,
    value: String,
    version: &'static str,
}

#[derive(Serialize)]
struct PeriodReport {
    command: &'static str,
    sequence: SeqEcho,
    p: u64,
    level: u32,
    period: u64,
    version: &'static str,
}

/// One scan output line; the key set and order are part of the interface.
#[derive(Serialize)]
struct ScanLine<'a> {
    p: u64,
    verdict: Status,
    witness_ell: Option<u64>,
    certificate: Option<&'a FailureCertificate>,
}

#[derive(Serialize)]
struct TizCliReport<'a> {
    command: &'static str,
    sequence: SeqEcho,
    window: (i64, i64),
    report: &'a TizReport,
    version: &'static str,
}

#[derive(Serialize)]
struct LawCliReport<'a> {
    command: &'static str,
    sequence: SeqEcho,
    p: u64,
    precision: u32,
    law: &'a ValuationLaw,
    underived: &'a [u64],
    verified_up_to: Option<u64>,
    mismatches: &'a [Mismatch],
    version: &'static str,
}

#[derive(Serialize)]
struct FactorialCliReport<'a> {
    command: &'static str,
    sequence: SeqEcho,
    p: u64,
    bounds: &'a BoundCertificate,
    solutions: &'a [(u64, u64)],
    version: &'static str,
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let config = resolve_config(cli)?;
    match &cli.command {
        Command::Term { n } => cmd_term(&config, *n, cli.json, out),
        Command::Period { p, level } => cmd_period(&config, *p, *level, cli.json, out),
        Command::Scan { pmin, pmax, window } => {
            cmd_scan(&config, *pmin, *pmax, window.as_deref(), cli, out)
        }
        Command::Tiz { window } => cmd_tiz(&config, window.as_deref(), cli.json, out),
        Command::Law { p, precision, verify_up_to } => {
            cmd_law(&config, *p, *precision, *verify_up_to, cli.json, out)
        }
        Command::Factorial { p, precision } => {
            cmd_factorial(&config, *p, *precision, cli.json, out)
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<SequenceConfig> {
    match (&cli.seq, &cli.builtin) {
        (Some(_), Some(_)) => {
            Err(Error::Validation("--seq and --builtin are mutually exclusive".into()))
        }
        (None, None) => {
            Err(Error::Validation("a sequence is required: pass --seq FILE or --builtin NAME".into()))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Validation(format!("cannot read {}: {e}", path.display()))
            })?;
            parse_config(&text)
        }
        (None, Some(name)) => {
            let spec = RecurrenceSpec::builtin(name).ok_or_else(|| {
                Error::Validation(format!(
                    "unknown builtin `{name}` (expected tribonacci, tripell, or mtripell)"
                ))
            })?;
            Ok(SequenceConfig { spec, tiz: None, window: None })
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Validation(format!("{p} is not prime")))
    }
}

fn cmd_term(config: &SequenceConfig, n: i64, json: bool, out: &mut dyn Write) -> Result<()> {
    let value = config.spec.term(n)?;
    if json {
        let report = TermReport {
            command: "term",
            sequence: SeqEcho::of(&config.spec),
            n,
            value: value.to_string(),
            version: VERSION,
        };
        emit_json(&report, out);
    } else {
        let _ = writeln!(out, "{value}");
    }
    Ok(())
}

fn cmd_period(
    config: &SequenceConfig,
    p: u64,
    level: u32,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    require_prime(p)?;
    if level == 0 {
        return Err(Error::Validation("--level must be at least 1".into()));
    }
    let period = config.spec.period(p, level)?;
    if json {
        let report = PeriodReport {
            command: "period",
            sequence: SeqEcho::of(&config.spec),
            p,
            level,
            period,
            version: VERSION,
        };
        emit_json(&report, out);
    } else {
        let _ = writeln!(out, "{period}");
    }
    Ok(())
}

/// The zero set a scan consumes: the config override if present, otherwise a
/// freshly certified set — an uncertified set is refused rather than used.
fn resolve_tiz(config: &SequenceConfig, window_flag: Option<&str>) -> Result<Vec<i64>> {
    if let Some(tiz) = &config.tiz {
        return Ok(tiz.clone());
    }
    let window = effective_window(config, window_flag)?;
    let report = tiz_set(&config.spec, window)?;
    match report.status {
        TizStatus::Certified => Ok(report.zero_set),
        TizStatus::Inconclusive => Err(Error::Validation(format!(
            "zero set could not be certified ({}); supply `tiz = …` in the config to override",
            report
                .failed_hypothesis
                .map(|h| format!("{h:?} hypothesis failed"))
                .unwrap_or_else(|| "no hypothesis verdict".into())
        ))),
    }
}

fn effective_window(config: &SequenceConfig, flag: Option<&str>) -> Result<(i64, i64)> {
    match flag {
        Some(s) => parse_window(s).map_err(|msg| Error::Validation(format!("--window: {msg}"))),
        None => Ok(config.window.unwrap_or(DEFAULT_WINDOW)),
    }
}

fn cmd_scan(
    config: &SequenceConfig,
    pmin: u64,
    pmax: u64,
    window_flag: Option<&str>,
    cli: &Cli,
    out: &mut dyn Write,
) -> Result<()> {
    if pmin > pmax {
        return Err(Error::Validation(format!("empty prime range: {pmin} > {pmax}")));
    }
    let tiz = resolve_tiz(config, window_flag)?;
    let spec = &config.spec;
    let verdicts = match cli.threads {
        None => conjecture::scan(spec, pmin, pmax, &tiz),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::ResourceExhausted(format!("thread pool: {e}")))?;
            pool.install(|| conjecture::scan(spec, pmin, pmax, &tiz))
        }
    };
    for v in &verdicts {
        if cli.json {
            let line = ScanLine {
                p: v.p,
                verdict: v.status,
                witness_ell: v.witness_ell,
                certificate: v.certificate.as_ref(),
            };
            emit_json(&line, out);
        } else {
            let mut text = format!("p={} {}", v.p, v.status);
            if let Some(ell) = v.witness_ell {
                text.push_str(&format!(" witness_ell={ell}"));
            }
            if let Some(cert) = &v.certificate {
                text.push_str(&format!(" excluded_class={}", cert.excluded_class));
            }
            if v.status == Status::Holds && !v.holds_classes.is_empty() {
                text.push_str(&format!(" zero_classes={:?}", v.holds_classes));
            }
            if let Some(note) = &v.note {
                text.push_str(&format!(" ({note})"));
            }
            let _ = writeln!(out, "{text}");
        }
    }
    Ok(())
}

fn cmd_tiz(
    config: &SequenceConfig,
    window_flag: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let window = effective_window(config, window_flag)?;
    let report = tiz_set(&config.spec, window)?;
    if json {
        let cli_report = TizCliReport {
            command: "tiz",
            sequence: SeqEcho::of(&config.spec),
            window,
            report: &report,
            version: VERSION,
        };
        emit_json(&cli_report, out);
    } else {
        let status = match report.status {
            TizStatus::Certified => "certified",
            TizStatus::Inconclusive => "inconclusive",
        };
        let _ = writeln!(out, "status: {status}");
        let _ = writeln!(out, "zero_set: {:?}", report.zero_set);
        if let Some(h) = report.failed_hypothesis {
            let _ = writeln!(out, "failed_hypothesis: {h:?}");
        }
        let _ = writeln!(out, "discriminant: {}", report.evidence.disc);
        let ratios: Vec<String> =
            report.evidence.ratios.iter().map(|r| format!("{r:.6}")).collect();
        let _ = writeln!(out, "ratios: [{}]", ratios.join(", "));
        match report.evidence.splitting_prime {
            Some(sp) => {
                let _ = writeln!(out, "splitting_prime: {} roots={:?}", sp.q, sp.roots);
            }
            None => {
                let _ = writeln!(out, "splitting_prime: none");
            }
        }
        let _ = writeln!(out, "window: {:?}", report.evidence.window);
    }
    Ok(())
}

fn cmd_law(
    config: &SequenceConfig,
    p: u64,
    precision: u32,
    verify_up_to: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    require_prime(p)?;
    if precision < 2 {
        return Err(Error::Validation("--precision must be at least 2".into()));
    }
    let outcome = derive_law(&config.spec, p, precision)?;
    let law = outcome.law();
    let mismatches = match verify_up_to {
        Some(n_max) => verify_law(&config.spec, p, law, n_max),
        None => Vec::new(),
    };
    if json {
        let report = LawCliReport {
            command: "law",
            sequence: SeqEcho::of(&config.spec),
            p,
            precision,
            law,
            underived: outcome.underived(),
            verified_up_to: verify_up_to,
            mismatches: &mismatches,
            version: VERSION,
        };
        emit_json(&report, out);
    } else {
        let _ = writeln!(out, "p: {p}");
        let _ = writeln!(out, "modulus: {}", law.modulus);
        for (ell, class) in law.classes.iter().enumerate() {
            let desc = match class {
                ClassLaw::Constant { kappa } => format!("constant kappa={kappa}"),
                ClassLaw::Linear { center, kappa, slope } => {
                    format!("linear center={center} kappa={kappa} slope={slope}")
                }
                ClassLaw::Underived => "underived".into(),
            };
            let _ = writeln!(out, "class {ell}: {desc}");
        }
        if !outcome.underived().is_empty() {
            let _ = writeln!(out, "underived_classes: {:?}", outcome.underived());
        }
        if let Some(n_max) = verify_up_to {
            let _ = writeln!(out, "verified_up_to: {n_max}");
            let _ = writeln!(out, "mismatches: {}", mismatches.len());
            for m in &mismatches {
                let _ = writeln!(
                    out,
                    "  n={} predicted={:?} actual={:?}",
                    m.n, m.predicted, m.actual
                );
            }
        }
    }
    Ok(())
}

fn cmd_factorial(
    config: &SequenceConfig,
    p: u64,
    precision: u32,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    require_prime(p)?;
    let outcome = derive_law(&config.spec, p, precision)?;
    let cap = ValuationCap::from_law(outcome.law())?;
    let cert = factorial_bounds(&config.spec, p, &cap)?;
    let solutions = solve_factorial(&config.spec, &cert);
    if json {
        let report = FactorialCliReport {
            command: "factorial",
            sequence: SeqEcho::of(&config.spec),
            p,
            bounds: &cert,
            solutions: &solutions,
            version: VERSION,
        };
        emit_json(&report, out);
    } else {
        let _ = writeln!(out, "m_max: {}", cert.m_max);
        let _ = writeln!(out, "n_max: {}", cert.n_max);
        let _ = writeln!(out, "gamma: {:.6}", cert.gamma);
        let pairs: Vec<String> =
            solutions.iter().map(|(n, m)| format!("({n},{m})")).collect();
        let _ = writeln!(out, "solutions: [{}]", pairs.join(", "));
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) {
    let line = serde_json::to_string(value).expect("report serializes");
    let _ = writeln!(out, "{line}");
}
