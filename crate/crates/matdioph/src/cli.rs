//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use matdioph_core::families::{enumerate_instances, SolutionPair};
use matdioph_core::numtheory::{pell_fundamental, uv_solutions};
use matdioph_core::solver::{classify_with, eigen_condition_check, verify, ClassifyOptions, Payload};
use matdioph_core::{EquationSpec, FamilyDescriptor, Mat2, SpecError};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

use crate::{json as enc, parallel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "matdioph", version, about = "Solve aX^m + bY^n = cI over 2x2 integer matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Route the equation to a parametrization, certificate or reduction.
    Classify {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, default_value_t = 8)]
        uv_limit: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify, then list family members with small parameters.
    Solve {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, default_value_t = 8)]
        uv_limit: usize,
        #[arg(long, default_value_t = 3)]
        param_bound: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check a single pair and report its family.
    Verify {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: Mat2,
        #[arg(long, allow_hyphen_values = true)]
        y: Mat2,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exhaustive search over matrices with entries in [-bound, bound].
    Oracle {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Fundamental solution of u^2 - d v^2 = 1, or solutions of u^2 + ab v^2 = c^2.
    Pell {
        #[arg(long, allow_hyphen_values = true)]
        d: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<BigInt>,
        #[arg(long, default_value_t = 8)]
        uv_limit: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// X^n with trace, determinant and scalar order of X.
    Power {
        #[arg(long, allow_hyphen_values = true)]
        x: Mat2,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct EqArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<BigInt>,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    /// Fermat shape: sets c = lambda^n (a and b default to 1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<BigInt>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A flag whose value parsed but is unusable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub flag: &'static str,
    pub msg: String,
}

impl UsageError {
    fn new(flag: &'static str, msg: impl Into<String>) -> Self {
        UsageError {
            flag,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid value for '{}': {}", self.flag, self.msg)
    }
}

impl EqArgs {
    pub fn spec(&self) -> Result<EquationSpec, UsageError> {
        let one = || Some(BigInt::from(1));
        let (a, b) = match &self.lambda {
            Some(_) => (self.a.clone().or_else(one), self.b.clone().or_else(one)),
            None => (self.a.clone(), self.b.clone()),
        };
        let a = a.ok_or_else(|| UsageError::new("--a", "required"))?;
        let b = b.ok_or_else(|| UsageError::new("--b", "required"))?;
        let c = match (&self.lambda, &self.c) {
            (Some(l), _) if l.is_zero() => return Err(UsageError::new("--lambda", "must be nonzero")),
            (Some(l), None) => Pow::pow(l, self.n),
            (_, Some(c)) => c.clone(),
            (None, None) => return Err(UsageError::new("--c", "required")),
        };
        let spec = EquationSpec::new(a, b, c, self.m, self.n).map_err(spec_error)?;
        match &self.lambda {
            Some(l) => spec.with_lambda(l.clone()).map_err(spec_error),
            None => Ok(spec),
        }
    }
}

fn spec_error(e: SpecError) -> UsageError {
    let flag = match &e {
        SpecError::ZeroCoefficient("a") => "--a",
        SpecError::ZeroCoefficient("b") => "--b",
        SpecError::ZeroCoefficient(_) | SpecError::LambdaMismatch { .. } => "--lambda",
        SpecError::ZeroExponent("m") => "--m",
        SpecError::ZeroExponent(_) => "--n",
        SpecError::NotCoprime(_) => "--c",
    };
    UsageError::new(flag, e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(u)) => {
            let _ = writeln!(err, "error: {u}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NONE
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(UsageError),
    Io(io::Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Classify { eq, uv_limit, out: o } => {
            let spec = eq.spec()?;
            let opts = ClassifyOptions {
                uv_limit: *uv_limit,
                ..ClassifyOptions::default()
            };
            let report = classify_with(&spec, &opts);
            match o.format {
                Format::Json => emit(out, &enc::report(&report))?,
                Format::Text => {
                    writeln!(out, "equation: {spec}")?;
                    write_report_text(out, &report)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Solve {
            eq,
            uv_limit,
            param_bound,
            out: o,
        } => solve(out, &eq.spec()?, *uv_limit, *param_bound, o.format),
        Command::Verify { eq, x, y, out: o } => {
            let spec = eq.spec()?;
            let pair = verify(x, y, &spec);
            let eigen = eigen_condition_check(x, y, &spec);
            match o.format {
                Format::Json => emit(out, &enc::verification(&pair, eigen))?,
                Format::Text => {
                    writeln!(out, "equation: {spec}")?;
                    writeln!(out, "X = {}  Y = {}", pair.x, pair.y)?;
                    writeln!(out, "satisfied: {}", pair.satisfied)?;
                    writeln!(out, "family: {}", family_text(&pair.family))?;
                    writeln!(out, "commuting: {}", pair.commuting)?;
                    writeln!(out, "nontrivial: {}", pair.nontrivial)?;
                    writeln!(out, "eigenvalue condition: {eigen}")?;
                }
            }
            Ok(if pair.satisfied { EXIT_OK } else { EXIT_NONE })
        }
        Command::Oracle {
            eq,
            bound,
            jobs,
            out: o,
        } => {
            let spec = eq.spec()?;
            let (res, pairs) = parallel::tagged(&spec, *bound, *jobs)
                .map_err(|e| UsageError::new("--jobs", e.to_string()))?;
            match o.format {
                Format::Json => {
                    for p in &pairs {
                        serde_json::to_writer(&mut *out, &enc::solution(p)).map_err(io::Error::from)?;
                        writeln!(out)?;
                    }
                }
                Format::Text => {
                    writeln!(out, "equation: {spec}, entries in [-{bound}, {bound}]")?;
                    for p in &pairs {
                        writeln!(out, "{}", pair_text(p))?;
                    }
                    let c = res.counts;
                    writeln!(
                        out,
                        "total {}: commuting {} nontrivial + {} trivial, noncommuting {} nontrivial + {} trivial",
                        c.total(),
                        c.commuting_nontrivial,
                        c.commuting_trivial,
                        c.noncommuting_nontrivial,
                        c.noncommuting_trivial
                    )?;
                }
            }
            Ok(if pairs.is_empty() { EXIT_NONE } else { EXIT_OK })
        }
        Command::Pell {
            d,
            a,
            b,
            c,
            uv_limit,
            out: o,
        } => pell(out, d.as_ref(), [a, b, c], *uv_limit, o.format),
        Command::Power { x, n, out: o } => {
            let p = x.pow_closed(*n);
            let order = x.scalar_order();
            match o.format {
                Format::Json => {
                    let order = order.map_or(Value::Null, |s| json!({"order": s.order, "value": enc::int(&s.value)}));
                    emit(
                        out,
                        &json!({
                            "x": enc::mat(x),
                            "n": n,
                            "power": enc::mat(&p),
                            "trace": enc::int(&x.trace()),
                            "det": enc::int(&x.det()),
                            "scalar_order": order,
                        }),
                    )?
                }
                Format::Text => {
                    writeln!(out, "X^{n} = {p}")?;
                    writeln!(out, "trace {}, det {}", x.trace(), x.det())?;
                    match order {
                        Some(s) => writeln!(out, "X^{} = {}·I", s.order, s.value)?,
                        None => writeln!(out, "no scalar power")?,
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn pell(
    out: &mut dyn Write,
    d: Option<&BigInt>,
    abc: [&Option<BigInt>; 3],
    uv_limit: usize,
    format: Format,
) -> Result<i32, Failure> {
    if let Some(d) = d {
        if let Some(flag) = ["--a", "--b", "--c"].iter().zip(abc).find_map(|(f, v)| v.is_some().then_some(*f)) {
            return Err(UsageError::new(flag, "cannot be combined with --d").into());
        }
        let sol = pell_fundamental(d).map_err(|e| UsageError::new("--d", e.to_string()))?;
        match format {
            Format::Json => emit(out, &enc::pell(&sol))?,
            Format::Text => writeln!(out, "{}^2 - {}·{}^2 = 1", sol.u, d, sol.v)?,
        }
        return Ok(EXIT_OK);
    }
    let [a, b, c] = abc;
    let a = a.as_ref().ok_or_else(|| UsageError::new("--d", "required (or --a, --b, --c)"))?;
    let b = b.as_ref().ok_or_else(|| UsageError::new("--b", "required"))?;
    let c = c.as_ref().ok_or_else(|| UsageError::new("--c", "required"))?;
    if c.is_zero() {
        return Err(UsageError::new("--c", "must be nonzero").into());
    }
    let sols = uv_solutions(a, b, c, uv_limit).map_err(|e| UsageError::new("--b", e.to_string()))?;
    match format {
        Format::Json => emit(out, &enc::uv(a, b, c, &sols))?,
        Format::Text => {
            writeln!(out, "u^2 + ({})·v^2 = ({})^2", a * b, c)?;
            for (u, v) in &sols.pairs {
                writeln!(out, "  u = {u}, v = {v}")?;
            }
            if !sols.complete {
                writeln!(out, "(first {uv_limit} solutions of an infinite set)")?;
            }
        }
    }
    Ok(if sols.pairs.is_empty() { EXIT_NONE } else { EXIT_OK })
}

fn solve(out: &mut dyn Write, spec: &EquationSpec, uv_limit: usize, param_bound: u32, format: Format) -> Result<i32, Failure> {
    let opts = ClassifyOptions {
        uv_limit,
        noncomm_bound: param_bound,
        ..ClassifyOptions::default()
    };
    let report = classify_with(spec, &opts);
    let mut families: Vec<&FamilyDescriptor> = Vec::new();
    let mut uv_complete = true;
    let mut hits = Vec::new();
    for side in &report.sides {
        match &side.payload {
            Payload::Families { families: f, complete } => {
                families.extend(f);
                uv_complete &= complete;
            }
            Payload::ScalarPowers(h) => hits.extend(h),
            _ => {}
        }
    }
    let groups: Vec<(&FamilyDescriptor, Vec<SolutionPair>)> = families
        .into_iter()
        .map(|f| (f, enumerate_instances(f, param_bound)))
        .collect();
    let total = groups.iter().map(|(_, v)| v.len()).sum::<usize>() + hits.len();

    match format {
        Format::Json => {
            let fams: Vec<Value> = groups
                .iter()
                .map(|(f, inst)| {
                    let shape = match f {
                        FamilyDescriptor::PellParametrized(p) => enc::shape(&p.shape()),
                        _ => Value::Null,
                    };
                    json!({
                        "family": enc::family(f),
                        "shape": shape,
                        "instances": inst.iter().map(enc::solution).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(
                out,
                &json!({
                    "spec": enc::spec(spec),
                    "report": enc::report(&report),
                    "truncation": {
                        "uv_limit": uv_limit,
                        "uv_complete": uv_complete,
                        "param_bound": param_bound,
                        "instances_complete": false,
                    },
                    "families": fams,
                    "scalar_power_witnesses": hits.iter().map(|h| json!({
                        "k": h.k, "l": h.l,
                        "alpha": enc::int(&h.alpha), "beta": enc::int(&h.beta),
                        "x": enc::mat(&h.x), "y": enc::mat(&h.y),
                    })).collect::<Vec<_>>(),
                    "total": total,
                }),
            )?;
        }
        Format::Text => {
            writeln!(out, "equation: {spec}")?;
            write_report_text(out, &report)?;
            if uv_complete {
                writeln!(out, "truncation: family list complete; members with parameters in [-{param_bound}, {param_bound}] only")?;
            } else {
                writeln!(
                    out,
                    "truncation: first {uv_limit} (u, v) classes only; members with parameters in [-{param_bound}, {param_bound}] only"
                )?;
            }
            for (f, inst) in &groups {
                writeln!(out, "{f}: {} members", inst.len())?;
                if let FamilyDescriptor::PellParametrized(p) = f {
                    let s = p.shape();
                    writeln!(out, "  X = [[{},{}],[{},{}]]", s.x[0], s.x[1], s.x[2], s.x[3])?;
                    writeln!(out, "  Y = [[{},{}],[{},{}]]", s.y[0], s.y[1], s.y[2], s.y[3])?;
                }
                for p in inst {
                    writeln!(out, "  {}", pair_text(p))?;
                }
            }
            for h in &hits {
                writeln!(
                    out,
                    "X^{} = {}·I, Y^{} = {}·I: X = {}  Y = {}",
                    h.k, h.alpha, h.l, h.beta, h.x, h.y
                )?;
            }
            writeln!(out, "total: {total}")?;
        }
    }
    Ok(if total == 0 { EXIT_NONE } else { EXIT_OK })
}

fn family_text(f: &Option<FamilyDescriptor>) -> String {
    f.as_ref().map_or_else(|| "unclassified".to_string(), ToString::to_string)
}

fn pair_text(p: &SolutionPair) -> String {
    format!(
        "X = {}  Y = {}  {}  {}  {}",
        p.x,
        p.y,
        family_text(&p.family),
        if p.commuting { "commuting" } else { "noncommuting" },
        if p.nontrivial { "nontrivial" } else { "trivial" },
    )
}

fn write_report_text(out: &mut dyn Write, r: &matdioph_core::SolvabilityReport) -> io::Result<()> {
    writeln!(out, "verdict: {} [{}]", r.verdict.name(), r.citation.unwrap_or("-"))?;
    for s in &r.sides {
        writeln!(
            out,
            "  {}: {} [{}] {}",
            s.side.name(),
            s.verdict.name(),
            s.citation.unwrap_or("-"),
            payload_text(&s.payload)
        )?;
    }
    Ok(())
}

fn payload_text(p: &Payload) -> String {
    match p {
        Payload::None => String::new(),
        Payload::Families { families, complete } => {
            let names: Vec<String> = families.iter().map(ToString::to_string).collect();
            let tail = if *complete { "" } else { ", ... (truncated)" };
            format!("{}{tail}", names.join(", "))
        }
        Payload::ScalarPowers(h) => format!("{} scalar-power solutions", h.len()),
        Payload::Reduction(frames) => {
            let dk: Vec<String> = frames.iter().map(|f| format!("(D={}, k={})", f.d, f.k)).collect();
            format!("frames {}", dk.join(" "))
        }
        Payload::Certificate(ax) => {
            let names: Vec<&str> = ax.iter().map(|a| a.name()).collect();
            format!("axioms: {}", names.join(", "))
        }
    }
}
