//! Command-line front end: argument parsing into a [`Query`] and dispatch.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagrams::{
    diagram_summands, enumerate_diagrams, render_diagram, setup, weight, RenderFormat,
};
use crate::mrules::m_table;
use crate::oracles::appendix::verify_appendix;
use crate::oracles::divsym::{
    mixed_eulerian_divsym, permutohedron_volume, volume_from_eulerian, DEFAULT_SEED,
};
use crate::oracles::quotient::mixed_eulerian_quotient;
use crate::oracles::weylsum::mixed_eulerian_weylsum;
use crate::petring::{Composition, PetersonEngine};
use crate::rootsys::{
    build_root_system, weyl_order_formula, CartanType, RootSystem, TypeLabel, DEFAULT_ENUM_CAP,
};
use crate::{factorial, format_q, Error, Result, Q};

/// Environment variable overriding `--seed`.
pub const SEED_ENV: &str = "MIXED_EULERIAN_SEED";

/// Exit code for invalid command lines.
pub const EXIT_USAGE: i32 = 64;
/// Exit code when computation methods disagree.
pub const EXIT_DISAGREE: i32 = 2;
/// Exit code for runtime failures and failed verification.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Method {
    /// Peterson reduction rule (default).
    Reduce,
    /// Left-right diagrams (type A only).
    Diagrams,
    /// Weyl-sum volume expansion.
    Weylsum,
    /// Quotient-ring linear algebra.
    Quotient,
    /// Divided symmetrization (type A only).
    Divsym,
    /// Every method that applies.
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Reduce => "reduce",
            Method::Diagrams => "diagrams",
            Method::Weylsum => "weylsum",
            Method::Quotient => "quotient",
            Method::Divsym => "divsym",
            Method::All => "all",
        }
    }

    fn type_a_only(self) -> bool {
        matches!(self, Method::Diagrams | Method::Divsym)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderArg {
    Ascii,
    Svg,
}

#[derive(Parser, Debug)]
#[command(
    name = "mixed-eulerian",
    version,
    about = "Exact mixed Eulerian numbers for crystallographic root systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: OutputFormat,
    /// Seed for generic evaluation points (overridden by MIXED_EULERIAN_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest Weyl group that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one mixed Eulerian number, e.g. `compute E6 0,1,0,2,3,0`.
    Compute {
        cartan: String,
        composition: String,
        #[arg(long, value_enum, default_value = "reduce")]
        method: Method,
    },
    /// Tabulate all compositions of n into n parts.
    Table {
        cartan: String,
        #[arg(long, value_enum, default_value = "reduce")]
        method: Method,
    },
    /// Enumerate and draw the left-right diagrams of a type A composition.
    Diagrams {
        cartan: String,
        composition: String,
        #[arg(long, value_enum, default_value = "ascii")]
        render: RenderArg,
    },
    /// List the structure constants for every (K, J, i) triple.
    Mtable {
        cartan: String,
        /// Also re-derive each value from Billey's formula and compare.
        #[arg(long)]
        derive: bool,
    },
    /// Volume of the permutohedron with vertex coordinates `a`, e.g. `volume 2,1,0`.
    Volume {
        a: String,
        #[arg(long, value_enum, default_value = "divsym")]
        method: Method,
    },
    /// Run the structure-constant and identity suites.
    Verify {
        /// Types to check; defaults to a fixed list covering every family.
        cartan: Vec<String>,
    },
}

/// Which subcommand a query runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Compute,
    Table,
    Diagrams,
    Mtable,
    Volume,
    Verify,
}

/// A validated command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub command: CommandKind,
    pub cartan: Vec<CartanType>,
    pub composition: Option<Composition>,
    pub format: OutputFormat,
    pub method: Method,
    pub seed: u64,
    pub cap: u64,
    pub out: Option<PathBuf>,
    pub render: RenderFormat,
    pub derive: bool,
    pub volume: Vec<Q>,
}

/// A rejected command line; `code` is 0 for help and version output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError {
    pub code: i32,
    pub message: String,
}

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        UsageError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError::new(format!("error: {e}"))
    }
}

/// Result of running a query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse_cartan(s: &str) -> std::result::Result<CartanType, UsageError> {
    Ok(s.parse::<CartanType>()?)
}

fn parse_comp(s: &str, rank: usize) -> std::result::Result<Composition, UsageError> {
    let c: Composition = s.parse()?;
    c.check(rank)?;
    Ok(c)
}

fn check_method(method: Method, t: &CartanType) -> std::result::Result<(), UsageError> {
    if method.type_a_only() && t.label != TypeLabel::A {
        return Err(UsageError::new(format!(
            "error: method {} is only defined for type A, got {t}",
            method.name()
        )));
    }
    Ok(())
}

/// Parses and validates a command line (`argv[0]` is the program name).
pub fn parse_args<I, S>(argv: I) -> std::result::Result<Query, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let code = match e.kind() {
            clap::error::ErrorKind::DisplayHelp
            | clap::error::ErrorKind::DisplayVersion
            | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
            _ => EXIT_USAGE,
        };
        UsageError {
            code,
            message: e.render().to_string(),
        }
    })?;
    let env_seed = std::env::var(SEED_ENV).ok();
    let seed = match env_seed {
        Some(s) => s.trim().parse::<u64>().map_err(|_| {
            UsageError::new(format!(
                "error: {SEED_ENV} must be an unsigned integer, got {s:?}"
            ))
        })?,
        None => cli.seed.unwrap_or(DEFAULT_SEED),
    };
    let mut q = Query {
        command: CommandKind::Compute,
        cartan: Vec::new(),
        composition: None,
        format: cli.format,
        method: Method::Reduce,
        seed,
        cap: cli.cap,
        out: cli.out,
        render: RenderFormat::Ascii,
        derive: false,
        volume: Vec::new(),
    };
    match cli.command {
        Command::Compute {
            cartan,
            composition,
            method,
        } => {
            let t = parse_cartan(&cartan)?;
            check_method(method, &t)?;
            q.composition = Some(parse_comp(&composition, t.rank)?);
            q.cartan = vec![t];
            q.method = method;
        }
        Command::Table { cartan, method } => {
            let t = parse_cartan(&cartan)?;
            check_method(method, &t)?;
            q.command = CommandKind::Table;
            q.cartan = vec![t];
            q.method = method;
        }
        Command::Diagrams {
            cartan,
            composition,
            render,
        } => {
            let t = parse_cartan(&cartan)?;
            check_method(Method::Diagrams, &t)?;
            q.command = CommandKind::Diagrams;
            q.composition = Some(parse_comp(&composition, t.rank)?);
            q.cartan = vec![t];
            q.method = Method::Diagrams;
            q.render = match render {
                RenderArg::Ascii => RenderFormat::Ascii,
                RenderArg::Svg => RenderFormat::Svg,
            };
        }
        Command::Mtable { cartan, derive } => {
            q.command = CommandKind::Mtable;
            q.cartan = vec![parse_cartan(&cartan)?];
            q.derive = derive;
        }
        Command::Volume { a, method } => {
            if !matches!(method, Method::Divsym | Method::Reduce | Method::All) {
                return Err(UsageError::new(
                    "error: volume supports --method divsym, reduce or all",
                ));
            }
            q.command = CommandKind::Volume;
            q.method = method;
            q.volume = a
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<Q>()
                        .map_err(|_| UsageError::new(format!("error: bad rational {:?}", p.trim())))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if q.volume.is_empty() {
                return Err(UsageError::new(
                    "error: volume needs at least one coordinate",
                ));
            }
        }
        Command::Verify { cartan } => {
            q.command = CommandKind::Verify;
            q.cartan = cartan
                .iter()
                .map(|s| parse_cartan(s))
                .collect::<std::result::Result<_, _>>()?;
        }
    }
    Ok(q)
}

/// Types covered by `verify` when none are given.
pub const DEFAULT_VERIFY: [&str; 9] = ["A4", "B4", "C4", "D5", "G2", "F4", "E6", "E7", "E8"];

/// Methods run for `method` on a root system.
pub fn methods_for(method: Method, rs: &RootSystem, cap: u64) -> Vec<Method> {
    if method != Method::All {
        return vec![method];
    }
    let mut out = vec![Method::Reduce];
    if rs.type_label == TypeLabel::A {
        out.push(Method::Diagrams);
        if factorial(rs.rank + 1) <= BigInt::from(cap) {
            out.push(Method::Divsym);
        }
    }
    if weyl_order_formula(rs.type_label, rs.rank) <= BigInt::from(cap) {
        out.push(Method::Weylsum);
    }
    out.push(Method::Quotient);
    out.sort();
    out
}

/// `A^Φ_c` by one method.
pub fn compute_with(
    method: Method,
    rs: &RootSystem,
    engine: &PetersonEngine,
    comp: &Composition,
    seed: u64,
    cap: u64,
) -> Result<Q> {
    match method {
        Method::Reduce => engine.mixed_eulerian(comp),
        Method::Diagrams => crate::diagrams::mixed_eulerian_diagrams(comp),
        Method::Divsym => mixed_eulerian_divsym(comp, seed),
        Method::Weylsum => mixed_eulerian_weylsum(rs, comp, seed, cap),
        Method::Quotient => mixed_eulerian_quotient(rs, comp),
        Method::All => Err(Error::Internal("method list was not expanded".into())),
    }
}

/// One computed value with every requested method.
#[derive(Clone, Debug, Serialize)]
pub struct ComputeRecord {
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub composition: Vec<usize>,
    pub value: String,
    pub methods: BTreeMap<String, String>,
    pub integer: bool,
}

struct Computed {
    record: ComputeRecord,
    agree: bool,
}

fn compute_record(
    q: &Query,
    rs: &RootSystem,
    engine: &PetersonEngine,
    comp: &Composition,
) -> Result<Computed> {
    let mut values: Vec<(Method, Q)> = Vec::new();
    for m in methods_for(q.method, rs, q.cap) {
        values.push((m, compute_with(m, rs, engine, comp, q.seed, q.cap)?));
    }
    let value = values[0].1.clone();
    let agree = values.iter().all(|(_, v)| *v == value);
    Ok(Computed {
        record: ComputeRecord {
            type_name: rs.cartan_type().to_string(),
            rank: rs.rank,
            composition: comp.parts().to_vec(),
            value: format_q(&value),
            methods: values
                .iter()
                .map(|(m, v)| (m.name().to_string(), format_q(v)))
                .collect(),
            integer: value.is_integer(),
        },
        agree,
    })
}

fn plain_value(r: &ComputeRecord) -> String {
    if r.integer {
        r.value.clone()
    } else {
        format!("{}  [non-integer]", r.value)
    }
}

fn disagreement(r: &ComputeRecord) -> String {
    let mut s = format!(
        "methods disagree for {} ({}):\n",
        r.type_name,
        r.composition
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    for (m, v) in &r.methods {
        let _ = writeln!(s, "  {m}: {v}");
    }
    s
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run_compute(q: &Query) -> Result<Output> {
    let t = &q.cartan[0];
    let rs = build_root_system(t.label, t.rank)?;
    let engine = PetersonEngine::new(rs.clone());
    let comp = q.composition.as_ref().expect("validated composition");
    let c = compute_record(q, &rs, &engine, comp)?;
    let mut out = Output {
        stdout: match q.format {
            OutputFormat::Json => to_json(&c.record),
            OutputFormat::Plain => {
                let mut s = plain_value(&c.record) + "\n";
                if c.record.methods.len() > 1 {
                    for (m, v) in &c.record.methods {
                        let _ = writeln!(s, "  {m}: {v}");
                    }
                }
                s
            }
        },
        ..Default::default()
    };
    if !c.agree {
        out.code = EXIT_DISAGREE;
        out.stderr = disagreement(&c.record);
    }
    Ok(out)
}

fn run_table(q: &Query) -> Result<Output> {
    let t = &q.cartan[0];
    let rs = build_root_system(t.label, t.rank)?;
    let engine = PetersonEngine::new(rs.clone());
    let comps = Composition::all(rs.rank, rs.rank);
    let rows: Vec<Computed> = comps
        .par_iter()
        .map(|c| compute_record(q, &rs, &engine, c))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Output {
        stdout: match q.format {
            OutputFormat::Json => to_json(&rows.iter().map(|r| &r.record).collect::<Vec<_>>()),
            OutputFormat::Plain => {
                let mut s = String::new();
                for r in &rows {
                    let comp: Vec<String> =
                        r.record.composition.iter().map(|c| c.to_string()).collect();
                    let _ = write!(s, "{}\t{}", comp.join(","), plain_value(&r.record));
                    if r.record.methods.len() > 1 {
                        let ms: Vec<String> = r
                            .record
                            .methods
                            .iter()
                            .map(|(m, v)| format!("{m}={v}"))
                            .collect();
                        let _ = write!(s, "\t{}", ms.join(" "));
                    }
                    s.push('\n');
                }
                s
            }
        },
        ..Default::default()
    };
    for r in rows.iter().filter(|r| !r.agree) {
        out.code = EXIT_DISAGREE;
        out.stderr.push_str(&disagreement(&r.record));
    }
    Ok(out)
}

#[derive(Serialize)]
struct DiagramJson {
    weight: String,
    summand: String,
    render: String,
}

#[derive(Serialize)]
struct DiagramsJson {
    #[serde(rename = "type")]
    type_name: String,
    rank: usize,
    composition: Vec<usize>,
    value: String,
    diagrams: Vec<DiagramJson>,
}

fn run_diagrams(q: &Query) -> Result<Output> {
    let t = &q.cartan[0];
    let comp = q.composition.as_ref().expect("validated composition");
    let s = setup(comp)?;
    let ds = enumerate_diagrams(&s);
    let (total, parts) = diagram_summands(comp)?;
    let fmt = match q.render {
        RenderFormat::Ascii => "ascii",
        RenderFormat::Svg => "svg",
    };
    let renders = ds
        .iter()
        .map(|d| render_diagram(d, fmt))
        .collect::<Result<Vec<_>>>()?;
    let out = Output {
        stdout: match q.format {
            OutputFormat::Json => to_json(&DiagramsJson {
                type_name: t.to_string(),
                rank: t.rank,
                composition: comp.parts().to_vec(),
                value: format_q(&total),
                diagrams: ds
                    .iter()
                    .zip(&parts)
                    .zip(renders)
                    .map(|((d, p), r)| DiagramJson {
                        weight: format_q(&weight(d)),
                        summand: format_q(p),
                        render: r,
                    })
                    .collect(),
            }),
            OutputFormat::Plain => {
                let mut text = String::new();
                for (k, r) in renders.iter().enumerate() {
                    if q.render == RenderFormat::Ascii {
                        let _ = writeln!(text, "P{}", k + 1);
                    }
                    text.push_str(r);
                    text.push('\n');
                }
                if q.render == RenderFormat::Ascii {
                    let ps: Vec<String> = parts.iter().map(format_q).collect();
                    let _ = writeln!(
                        text,
                        "{} diagrams, A = {}! * sum(wt) = {} = {}",
                        ds.len(),
                        s.width,
                        if ps.is_empty() {
                            "0".into()
                        } else {
                            ps.join(" + ")
                        },
                        format_q(&total)
                    );
                }
                text
            }
        },
        ..Default::default()
    };
    Ok(out)
}

#[derive(Serialize)]
struct MRow {
    k: String,
    j: String,
    i: usize,
    pair: String,
    i_prime: usize,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived: Option<String>,
}

fn run_mtable(q: &Query) -> Result<Output> {
    let t = &q.cartan[0];
    let rs = build_root_system(t.label, t.rank)?;
    let rows = m_table(&rs, q.derive)?;
    let mut out = Output::default();
    let json_rows: Vec<MRow> = rows
        .iter()
        .map(|r| MRow {
            k: r.k.to_string(),
            j: r.j.to_string(),
            i: r.i,
            pair: r.entry.pair.name(),
            i_prime: r.entry.i_prime,
            value: format_q(&r.entry.value),
            derived: r.derived.as_ref().map(format_q),
        })
        .collect();
    out.stdout = match q.format {
        OutputFormat::Json => to_json(&json_rows),
        OutputFormat::Plain => {
            let mut s = String::new();
            for r in &json_rows {
                let _ = write!(
                    s,
                    "K={} J={} i={}\t{} i'={}\t{}",
                    r.k, r.j, r.i, r.pair, r.i_prime, r.value
                );
                if let Some(d) = &r.derived {
                    let _ = write!(s, "\tderived={d}");
                }
                s.push('\n');
            }
            s
        }
    };
    let bad: Vec<&crate::mrules::TripleCheck> = rows.iter().filter(|r| !r.agrees()).collect();
    if !bad.is_empty() {
        out.code = EXIT_DISAGREE;
        for r in bad {
            let _ = writeln!(
                out.stderr,
                "mismatch K={} J={} i={}: table {} derived {}",
                r.k,
                r.j,
                r.i,
                format_q(&r.entry.value),
                r.derived.as_ref().map(format_q).unwrap_or_default()
            );
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct VolumeJson {
    a: Vec<String>,
    value: String,
    methods: BTreeMap<String, String>,
}

fn run_volume(q: &Query) -> Result<Output> {
    let a = &q.volume;
    let mut methods: BTreeMap<String, Q> = BTreeMap::new();
    if matches!(q.method, Method::Divsym | Method::All) {
        methods.insert("divsym".into(), permutohedron_volume(a, q.seed)?);
    }
    if matches!(q.method, Method::Reduce | Method::All) {
        let v = if a.len() <= 1 {
            Q::from_integer(1.into())
        } else {
            let rs = build_root_system(TypeLabel::A, a.len() - 1)?;
            let engine = PetersonEngine::new(rs);
            volume_from_eulerian(a, |c| engine.mixed_eulerian(c))?
        };
        methods.insert("reduce".into(), v);
    }
    let value = methods.values().next().expect("one method").clone();
    let agree = methods.values().all(|v| *v == value);
    let strs: BTreeMap<String, String> = methods
        .iter()
        .map(|(k, v)| (k.clone(), format_q(v)))
        .collect();
    let mut out = Output {
        stdout: match q.format {
            OutputFormat::Json => to_json(&VolumeJson {
                a: a.iter().map(format_q).collect(),
                value: format_q(&value),
                methods: strs.clone(),
            }),
            OutputFormat::Plain => {
                let mut s = format_q(&value) + "\n";
                if strs.len() > 1 {
                    for (m, v) in &strs {
                        let _ = writeln!(s, "  {m}: {v}");
                    }
                }
                s
            }
        },
        ..Default::default()
    };
    if !agree {
        out.code = EXIT_DISAGREE;
        out.stderr = format!("volume methods disagree: {strs:?}\n");
    }
    Ok(out)
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(rename = "type")]
    type_name: String,
    mtable_triples: usize,
    mtable_mismatches: usize,
    identities: usize,
    identity_failures: usize,
}

fn run_verify(q: &Query) -> Result<Output> {
    let types: Vec<CartanType> = if q.cartan.is_empty() {
        DEFAULT_VERIFY
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?
    } else {
        q.cartan.clone()
    };
    let mut out = Output::default();
    let mut records = Vec::new();
    let mut text = String::new();
    for t in &types {
        let rs = build_root_system(t.label, t.rank)?;
        let rows = m_table(&rs, true)?;
        let mism = rows.iter().filter(|r| !r.agrees()).count();
        let rep = verify_appendix(&rs)?;
        let fails = rep.checks.len() - rep.passed();
        for r in rows.iter().filter(|r| !r.agrees()) {
            let _ = writeln!(
                out.stderr,
                "{t}: m mismatch K={} J={} i={}: table {} derived {}",
                r.k,
                r.j,
                r.i,
                format_q(&r.entry.value),
                r.derived.as_ref().map(format_q).unwrap_or_default()
            );
        }
        for c in rep.checks.iter().filter(|c| !c.holds()) {
            let _ = writeln!(out.stderr, "{t}: {c}");
        }
        let _ = writeln!(
            text,
            "{t}: m-table {}/{} agree, identities {}/{} hold",
            rows.len() - mism,
            rows.len(),
            rep.passed(),
            rep.checks.len()
        );
        if mism > 0 || fails > 0 {
            out.code = EXIT_FAILURE;
        }
        records.push(VerifyJson {
            type_name: t.to_string(),
            mtable_triples: rows.len(),
            mtable_mismatches: mism,
            identities: rep.checks.len(),
            identity_failures: fails,
        });
    }
    out.stdout = match q.format {
        OutputFormat::Json => to_json(&records),
        OutputFormat::Plain => text,
    };
    Ok(out)
}

/// Runs a validated query. Output goes to `--out` when given.
pub fn run(q: &Query) -> Output {
    let result = match q.command {
        CommandKind::Compute => run_compute(q),
        CommandKind::Table => run_table(q),
        CommandKind::Diagrams => run_diagrams(q),
        CommandKind::Mtable => run_mtable(q),
        CommandKind::Volume => run_volume(q),
        CommandKind::Verify => run_verify(q),
    };
    let mut out = match result {
        Ok(o) => o,
        Err(e) => Output {
            code: EXIT_FAILURE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    };
    if let Some(path) = &q.out {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            out.code = EXIT_FAILURE;
            let _ = writeln!(out.stderr, "error: cannot write {}: {e}", path.display());
        } else {
            out.stdout.clear();
        }
    }
    out
}

/// Parses and runs a command line.
pub fn main_with_args<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(q) => run(&q),
        Err(e) if e.code == 0 => Output {
            code: 0,
            stdout: e.message,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.code,
            stdout: String::new(),
            stderr: if e.message.ends_with('\n') {
                e.message
            } else {
                e.message + "\n"
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("mixed-eulerian".to_string())
            .chain(s.split_whitespace().map(String::from))
            .collect()
    }

    #[test]
    fn parse_compute_all() {
        let q = parse_args(args("compute A8 1,0,2,3,0,0,1,1 --method all")).unwrap();
        assert_eq!(q.command, CommandKind::Compute);
        assert_eq!(q.cartan[0].to_string(), "A8");
        assert_eq!(q.composition.unwrap().parts(), &[1, 0, 2, 3, 0, 0, 1, 1]);
        assert_eq!(q.method, Method::All);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_args(args("diagrams B3 1,1,1")).unwrap_err().code,
            EXIT_USAGE
        );
        assert_eq!(
            parse_args(args("compute E6 1,1")).unwrap_err().code,
            EXIT_USAGE
        );
        assert_eq!(
            parse_args(args("compute E5 1,1,1,1,1")).unwrap_err().code,
            EXIT_USAGE
        );
        assert_eq!(
            parse_args(args("compute A2 3,0")).unwrap_err().code,
            EXIT_USAGE
        );
        assert_eq!(parse_args(args("--help")).unwrap_err().code, 0);
    }

    #[test]
    fn g2_table() {
        let out = main_with_args(args("table G2"));
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "2,0\t6\n1,1\t12\n0,2\t18\n");
    }
}
