//! The `relconv` command line.
//!
//! [`run`] parses arguments, dispatches to a command and returns the exit
//! code: 0 when every law holds, 1 on a law or assertion failure, 2 on bad
//! input. Output goes to the supplied writers so tests can capture it.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::algebra::{
    builtin_quantale, check_module_laws, check_quantale_laws, check_residuals, finite_quantale, sd_quantale, Builtin,
    Enumerable, LawMode, Quantale, QuantaleModule, RealKind, Sampled, SubsetOptions,
};
use crate::conv::{check_embedding, check_lifting, LiftMode, LiftOptions};
use crate::interval::{check_allen_definability, check_li, venema_relations, FinPoset, PosetJson, Segments};
use crate::itl::{check_itl_algebra, parse_formula, Evaluator, Interval, StreamModel, TraceJson};
use crate::psg::{check_psg_laws, PartialMonoid, PsgJson};
use crate::quantcalc::{
    duration, duration_conv, mean_conv, mean_value, profile_csv, split_profile, Extremum, PcSignal, RInterval,
    SignalJson,
};
use crate::relstruct::{check_rel_assoc, rel_of_psg, RelJson, RelMonoid};
use crate::{Error, Exec, LawReport, Result, DEFAULT_SEED};

mod repro;

pub use repro::{repro, square_semigroup, two_element_group, Repro, ReproCase};

const DEFAULT_HORIZON: usize = 3;

/// Structures bundled with the binary, looked up by file name when the
/// given path does not exist.
const FIXTURES: &[(&str, &str)] = &[
    ("fusion-chain4.json", include_str!("../../fixtures/fusion-chain4.json")),
    ("paper-assoc-counter.json", include_str!("../../fixtures/paper-assoc-counter.json")),
];

#[derive(Debug, Parser)]
#[command(name = "relconv", version, about = "Relational convolution, interval logics and duration calculus")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random tables drawn when the table space is too large to enumerate.
    #[arg(long, global = true, default_value_t = 500)]
    pub samples: usize,
    /// Enumerate every table when |Q|^|X| is at most this.
    #[arg(long, global = true, default_value_t = 4096)]
    pub table_cutoff: usize,
    /// Last time point of finite traces.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Step of dense-grid computations.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub grid: f64,
    /// Run law sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the laws of a quantale, a relational structure or its lifting.
    CheckLaws(CheckLawsArgs),
    /// Evaluate an interval formula over a trace.
    Eval(EvalArgs),
    /// Recompute a known counterexample and assert its inequality.
    Repro {
        #[arg(value_enum)]
        case: ReproCase,
    },
    /// Duration of a signal, or the min/max convolution of two.
    Duration(SignalArgs),
    /// Mean value of a signal, or the min/max convolution of two.
    Mean(SignalArgs),
    /// Check the Allen and Venema correspondences on a poset.
    Allen(AllenArgs),
}

#[derive(Debug, Args)]
pub struct CheckLawsArgs {
    /// Relational monoid JSON.
    #[arg(long, conflicts_with = "psg")]
    pub rel: Option<PathBuf>,
    /// Partial monoid JSON.
    #[arg(long)]
    pub psg: Option<PathBuf>,
    /// Codomain quantale; `sd:NAME` is the semidirect product of NAME with itself.
    #[arg(long, default_value = "bool")]
    pub quantale: String,
    /// Lifting mode for structures, law mode (full, weak, proto) for a bare quantale.
    #[arg(long)]
    pub mode: Option<String>,
    /// Check the interval temporal logic algebra.
    #[arg(long, conflicts_with_all = ["rel", "psg"])]
    pub itl: bool,
    /// Trace JSON for `--itl`.
    #[arg(long, requires = "itl")]
    pub trace: Option<PathBuf>,
    /// Include semi-infinite intervals with `--itl`.
    #[arg(long, requires = "itl")]
    pub infinite: bool,
    /// Also check that δ embeds the structure.
    #[arg(long)]
    pub embedding: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Trace JSON; without it a constant stream of length `--horizon`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub formula: String,
    /// A single interval such as `[0,3]` or `[1,inf]`.
    #[arg(long)]
    pub interval: Option<Interval>,
    /// Include semi-infinite intervals when no trace is given.
    #[arg(long)]
    pub infinite: bool,
}

#[derive(Debug, Args)]
pub struct SignalArgs {
    /// Signal JSON.
    #[arg(long)]
    pub signal: PathBuf,
    /// Second signal; switches to convolution.
    #[arg(long)]
    pub signal2: Option<PathBuf>,
    /// Interval bounds; default to the signal's domain.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    /// Extremum of the convolution: min or max.
    #[arg(long, default_value = "min")]
    pub mode: Extremum,
    /// Write the split-point profile of the convolution as CSV.
    #[arg(long, requires = "signal2")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AllenArgs {
    /// Chain `0..=N`.
    #[arg(long, conflicts_with = "poset")]
    pub chain: Option<usize>,
    /// Poset JSON.
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Drop point segments.
    #[arg(long)]
    pub strict: bool,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Failure = 1,
    InputError = 2,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Failure
        }
    }

    fn of_error(e: &Error) -> Self {
        match e {
            Error::LawViolation { .. } | Error::NoConvergence { .. } => Status::Failure,
            _ => Status::InputError,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Status::InputError } else { Status::Pass };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code as i32;
        }
    };
    let status = match execute(&cli, out) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::of_error(&e)
        }
    };
    status as i32
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    if !cli.grid.is_finite() || cli.grid <= 0.0 {
        return Err(Error::invalid("--grid must be positive"));
    }
    match &cli.command {
        Command::CheckLaws(a) => check_laws(cli, a, out),
        Command::Eval(a) => eval(cli, a, out),
        Command::Repro { case } => repro_cmd(cli, *case, out),
        Command::Duration(a) => signal_cmd(cli, a, false, out),
        Command::Mean(a) => signal_cmd(cli, a, true, out),
        Command::Allen(a) => allen(cli, a, out),
    }
}

impl Cli {
    fn lift_options(&self) -> LiftOptions {
        LiftOptions {
            table_cutoff: self.table_cutoff,
            samples: self.samples,
            seed: self.seed,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
            ..LiftOptions::default()
        }
    }

    fn horizon(&self) -> usize {
        self.horizon.unwrap_or(DEFAULT_HORIZON)
    }
}

fn read_source(path: &Path) -> Result<String> {
    if path.exists() {
        return Ok(fs::read_to_string(path)?);
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    FIXTURES
        .iter()
        .find(|(f, _)| *f == name)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| Error::invalid(format!("cannot read `{}`: no such file or bundled fixture", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("{}: line {}: {e}", path.display(), e.line()),
    })
}

fn emit_report(cli: &Cli, report: &LawReport, out: &mut dyn Write) -> Result<Status> {
    if cli.json {
        writeln!(out, "{}", serde_json::to_string_pretty(report)?)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(Status::of(report.passed()))
}

fn emit_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn real_sample(kind: RealKind) -> Vec<f64> {
    match kind {
        RealKind::MinPlus => vec![0.0, 0.25, 1.0, 2.5, f64::INFINITY],
        RealKind::MaxPlus => vec![f64::NEG_INFINITY, 0.0, 0.5, 1.0, 3.25],
        RealKind::UnitMin | RealKind::UnitMax => vec![0.0, 0.25, 0.5, 1.0],
    }
}

fn check_laws(cli: &Cli, a: &CheckLawsArgs, out: &mut dyn Write) -> Result<Status> {
    if a.itl {
        let model = match &a.trace {
            Some(p) => StreamModel::from_json(&read_json::<TraceJson>(p)?)?,
            None => StreamModel::constant(cli.horizon(), a.infinite),
        };
        return emit_report(cli, &check_itl_algebra(&model, &cli.lift_options())?, out);
    }

    let mut report = LawReport::new("check-laws");
    let structure = if let Some(p) = &a.psg {
        let m = PartialMonoid::from_json(&read_json::<PsgJson>(p)?)?;
        let laws = check_psg_laws(&m);
        let ok = laws.passed();
        report.merge("psg ", laws);
        if !ok {
            return emit_report(cli, &report, out);
        }
        Some(rel_of_psg(&m)?)
    } else if let Some(p) = &a.rel {
        let m = RelMonoid::from_json(&read_json::<RelJson>(p)?)?;
        report.merge("relation ", m.report());
        Some(m)
    } else {
        None
    };

    if let Some(sd_base) = a.quantale.strip_prefix("sd:") {
        let module = QuantaleModule::on_itself(finite_quantale(sd_base)?);
        report.merge("module ", check_module_laws(&module));
        let q = sd_quantale(module)?;
        suite(cli, a, structure.as_ref(), &q, true, &mut report)?;
    } else {
        match builtin_quantale(&a.quantale)? {
            Builtin::Finite(q) => suite(cli, a, structure.as_ref(), &q, true, &mut report)?,
            Builtin::Real(q) => {
                let s = Sampled::new(&q, real_sample(q.kind));
                suite(cli, a, structure.as_ref(), &s, false, &mut report)?;
            }
        }
    }
    report.subject = match &structure {
        Some(m) => format!("{} over {} points", a.quantale, m.len()),
        None => a.quantale.clone(),
    };
    emit_report(cli, &report, out)
}

fn suite<Q: Quantale + Enumerable>(
    cli: &Cli,
    a: &CheckLawsArgs,
    structure: Option<&RelMonoid>,
    q: &Q,
    residuals: bool,
    report: &mut LawReport,
) -> Result<()> {
    let flags = q.flags();
    match structure {
        Some(m) => {
            let mode = match &a.mode {
                Some(s) => s.parse()?,
                None if flags.weak => LiftMode::Weak,
                None if flags.proto => LiftMode::Proto,
                None if q.unit().is_some() && !m.units().is_empty() => LiftMode::Unital,
                None => LiftMode::Quantale,
            };
            report.merge("lifting ", check_lifting(m, q, mode, &cli.lift_options())?);
            if a.embedding {
                report.merge("embedding ", check_embedding(m, q)?);
            }
        }
        None => {
            let mode = match &a.mode {
                Some(s) => s.parse()?,
                None if flags.weak => LawMode::Weak,
                None if flags.proto => LawMode::Proto,
                None => LawMode::Full,
            };
            let subsets = SubsetOptions { sampling: Some((cli.samples, cli.seed)), ..SubsetOptions::default() };
            report.merge("", check_quantale_laws(q, mode, &subsets)?);
            // residuals exist only when composition preserves all joins
            if residuals && mode == LawMode::Full {
                report.merge("residual ", check_residuals(q));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalRow {
    interval: String,
    value: bool,
}

#[derive(Serialize)]
struct EvalOutput {
    formula: String,
    horizon: usize,
    infinite: bool,
    approximate: bool,
    results: Vec<EvalRow>,
}

fn eval(cli: &Cli, a: &EvalArgs, out: &mut dyn Write) -> Result<Status> {
    let formula = parse_formula(&a.formula)?;
    let model = match &a.trace {
        Some(p) => StreamModel::from_json(&read_json::<TraceJson>(p)?)?,
        None => StreamModel::constant(cli.horizon(), a.infinite),
    };
    let mut ev = Evaluator::new(&model);
    let intervals = match a.interval {
        Some(iv) => vec![iv],
        None => ev.frame().intervals(),
    };
    let table = ev.table(&formula)?;
    let mut results = Vec::with_capacity(intervals.len());
    for iv in intervals {
        let x = ev.frame().index(iv)?;
        results.push(EvalRow { interval: iv.to_string(), value: table.get(x) == 1 });
    }
    let doc = EvalOutput {
        formula: formula.to_string(),
        horizon: model.horizon(),
        infinite: model.infinite(),
        approximate: ev.approximate(),
        results,
    };
    if cli.json {
        emit_json(&doc, out)?;
    } else {
        writeln!(out, "{}", doc.formula)?;
        for r in &doc.results {
            writeln!(out, "  {:<8} {}", r.interval, r.value)?;
        }
        if doc.approximate {
            writeln!(out, "note: a greatest fixpoint hit the iteration bound; values are approximate")?;
        }
    }
    Ok(Status::Pass)
}

fn repro_cmd(cli: &Cli, case: ReproCase, out: &mut dyn Write) -> Result<Status> {
    let r = repro(case)?;
    if cli.json {
        emit_json(&r, out)?;
    } else {
        writeln!(out, "{}: {} fails", r.case, r.law)?;
        writeln!(out, "  expected {}", r.expected)?;
        writeln!(out, "  observed {}", r.observed)?;
        writeln!(out, "{}", if r.reproduced { "REPRODUCED" } else { "MISMATCH" })?;
    }
    Ok(Status::of(r.reproduced))
}

#[derive(Serialize)]
struct SignalOutput {
    quantity: &'static str,
    interval: [f64; 2],
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<Extremum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split: Option<f64>,
}

fn signal_cmd(cli: &Cli, a: &SignalArgs, mean: bool, out: &mut dyn Write) -> Result<Status> {
    let b = PcSignal::from_json(&read_json::<SignalJson>(&a.signal)?)?;
    let dom = b.domain();
    let x = RInterval::new(a.lo.unwrap_or(dom.lo), a.hi.unwrap_or(dom.hi))?;
    let doc = match &a.signal2 {
        None => SignalOutput {
            quantity: if mean { "mean" } else { "duration" },
            interval: [x.lo, x.hi],
            value: if mean { mean_value(&b, x)? } else { duration(&b, x)? },
            mode: None,
            split: None,
        },
        Some(p) => {
            let c = PcSignal::from_json(&read_json::<SignalJson>(p)?)?;
            if let Some(csv) = &a.csv {
                fs::write(csv, profile_csv(&split_profile(&b, &c, x, cli.grid)?))?;
            }
            let (value, split) = if mean {
                (mean_conv(&b, &c, x, a.mode, cli.grid)?, None)
            } else {
                let (v, k) = duration_conv(&b, &c, x, a.mode)?;
                (v, Some(k))
            };
            SignalOutput {
                quantity: if mean { "mean-convolution" } else { "duration-convolution" },
                interval: [x.lo, x.hi],
                value,
                mode: Some(a.mode),
                split,
            }
        }
    };
    if cli.json {
        emit_json(&doc, out)?;
    } else {
        let mode = doc.mode.map(|m| format!(" ({m})")).unwrap_or_default();
        write!(out, "{}{mode} over {x} = {}", doc.quantity, doc.value)?;
        if let Some(k) = doc.split {
            write!(out, " at split {k}")?;
        }
        writeln!(out)?;
    }
    Ok(Status::Pass)
}

fn allen(cli: &Cli, a: &AllenArgs, out: &mut dyn Write) -> Result<Status> {
    let poset = match (&a.poset, a.chain) {
        (Some(p), _) => FinPoset::from_json(&read_json::<PosetJson>(p)?)?,
        (None, Some(n)) => FinPoset::chain(n),
        (None, None) => FinPoset::chain(cli.horizon()),
    };
    let seg = Segments::new(&poset, a.strict);
    let mut report = check_allen_definability(&seg)?;
    report.subject = format!(
        "{} segments of a {}-element poset",
        if a.strict { "strict" } else { "closed" },
        poset.len()
    );
    let li = check_li(&poset).map(|[a, b, c, d]| {
        let n = |i| poset.name(i);
        format!("[{},{}] contains incomparable {} and {}", n(a), n(b), n(c), n(d))
    });
    report.record_optional("linear-segments", seg.len() as u64, li);
    let v = venema_relations(&seg);
    let names = seg.names();
    let show = |r: &crate::relstruct::TernaryRel| {
        let n = r.carrier_len() as u64;
        (n.pow(4), check_rel_assoc(r).map(|w| format!("x={}, u={}, v={}, w={}", names[w.x], names[w.u], names[w.v], names[w.w])))
    };
    let (cases, w) = show(&v.c);
    report.record("chop-associativity", cases, w);
    let (cases, w) = show(&v.dv);
    report.record_optional("dv-associativity", cases, w);
    let (cases, w) = show(&v.tv);
    report.record_optional("tv-associativity", cases, w);
    emit_report(cli, &report, out)
}
