use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hammock::duality::{enumerate_mincuts, size_profile, MincutStrategy};
use hammock::{
    build_hammock, dual_network, enumerate_minpaths, reliability, run_suite, Check, EdgeSubset,
    Engine, HammockError, HammockNetwork, Kind, Limits, ReliabilityPolynomial, VerifyOptions,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Exact two-terminal reliability of hammock (brick-wall) networks.
#[derive(Debug, Parser)]
#[command(name = "hammock", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest edge count for brute-force reliability.
    #[arg(long, global = true, env = "HAMMOCK_BRUTE_MAX", default_value_t = 24,
          value_parser = clap::value_parser!(u32).range(1..))]
    brute_max_edges: u32,

    /// Largest sweep width for the frontier engine.
    #[arg(long, global = true, env = "HAMMOCK_FRONTIER_MAXW", default_value_t = 8,
          value_parser = clap::value_parser!(u32).range(1..))]
    frontier_max_width: u32,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the network description as JSON.
    Build(NetArgs),
    /// Compute the reliability polynomial.
    Poly(PolyArgs),
    /// Emit a network, its dual and the edge correspondence.
    Dual(NetArgs),
    /// List the minimal pathsets.
    Minpaths(NetArgs),
    /// List the minimal cutsets.
    Mincuts(MincutArgs),
    /// Run the verification suite over a grid of dimensions.
    Verify(VerifyArgs),
    /// Emit (p, h(p)) rows for plotting.
    PlotData(PlotArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

impl KindArg {
    fn kinds(self) -> Vec<Kind> {
        match self {
            KindArg::One => vec![Kind::First],
            KindArg::Two => vec![Kind::Second],
            KindArg::Both => Kind::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Brute,
    Frontier,
    Auto,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Brute => Engine::Brute,
            EngineArg::Frontier => Engine::Frontier,
            EngineArg::Auto => Engine::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Dual,
    Direct,
}

#[derive(Debug, Args)]
struct NetArgs {
    #[arg(long, short = 'l', allow_negative_numbers = true)]
    length: i64,
    #[arg(long, short = 'w', allow_negative_numbers = true)]
    width: i64,
    #[arg(long, short = 'k', value_enum, default_value = "1")]
    kind: KindArg,
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[arg(long, short = 'l', allow_negative_numbers = true, required_unless_present = "input")]
    length: Option<i64>,
    #[arg(long, short = 'w', allow_negative_numbers = true, required_unless_present = "input")]
    width: Option<i64>,
    #[arg(long, short = 'k', value_enum, default_value = "1")]
    kind: KindArg,
    /// Read the network from a JSON file written by `build`.
    #[arg(long, conflicts_with_all = ["length", "width"])]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct MincutArgs {
    #[command(flatten)]
    net: NetArgs,
    /// `dual` maps the dual network's minpaths back; `direct` filters all subsets.
    #[arg(long, value_enum, default_value = "dual")]
    strategy: StrategyArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    max_l: i64,
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    max_w: i64,
    /// Restrict to the named checks (repeatable). Default: all.
    #[arg(long = "check", value_parser = parse_check)]
    checks: Vec<Check>,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[command(flatten)]
    net: NetArgs,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
}

fn parse_check(s: &str) -> Result<Check, String> {
    Check::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check `{s}`, expected one of {}", names.join(", "))
    })
}

/// Input the user can fix: exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.output, &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &anyhow::Error) -> u8 {
    if let Some(h) = e.downcast_ref::<HammockError>() {
        if h.is_resource_limit() {
            3
        } else {
            2
        }
    } else if e.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        brute_max_edges: cli.brute_max_edges as usize,
        frontier_max_width: cli.frontier_max_width as usize,
        ..Limits::default()
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON");
    s.push('\n');
    s
}

/// One value per requested kind, or an array when both were requested.
fn per_kind(kinds: &[Kind], mut f: impl FnMut(Kind) -> anyhow::Result<Value>) -> anyhow::Result<Value> {
    let mut values = kinds.iter().map(|&k| f(k)).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(if values.len() == 1 { values.remove(0) } else { Value::Array(values) })
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let limits = limits(cli);
    match &cli.command {
        Command::Build(a) => {
            let v = per_kind(&a.kind.kinds(), |k| Ok(serde_json::to_value(build_hammock(a.length, a.width, k)?)?))?;
            Ok(Output::ok(pretty(&v)))
        }
        Command::Poly(a) => poly(a, &limits),
        Command::Dual(a) => {
            let v = per_kind(&a.kind.kinds(), |k| {
                let corr = dual_network(&build_hammock(a.length, a.width, k)?);
                Ok(json!({"base": corr.base, "dual": corr.dual, "edge_map": corr.edge_map}))
            })?;
            Ok(Output::ok(pretty(&v)))
        }
        Command::Minpaths(a) => {
            let v = per_kind(&a.kind.kinds(), |k| {
                let net = build_hammock(a.length, a.width, k)?;
                Ok(sets_json(&net, &enumerate_minpaths(&net)))
            })?;
            Ok(Output::ok(pretty(&v)))
        }
        Command::Mincuts(a) => {
            let strategy = match a.strategy {
                StrategyArg::Dual => MincutStrategy::Dual,
                StrategyArg::Direct => MincutStrategy::Direct,
            };
            let v = per_kind(&a.net.kind.kinds(), |k| {
                let net = build_hammock(a.net.length, a.net.width, k)?;
                Ok(sets_json(&net, &enumerate_mincuts(&net, strategy, &limits)?))
            })?;
            Ok(Output::ok(pretty(&v)))
        }
        Command::Verify(a) => {
            if a.max_l < 1 || a.max_w < 1 {
                return Err(HammockError::InvalidDimension { length: a.max_l, width: a.max_w }.into());
            }
            let checks = if a.checks.is_empty() { Check::ALL.to_vec() } else { a.checks.clone() };
            let opts = VerifyOptions { engine: a.engine.into(), limits };
            let reports = run_suite(a.max_l, a.max_w, &checks, &opts)?;
            let failed = reports.iter().any(|r| !r.pass);
            for r in reports.iter().filter(|r| !r.pass) {
                eprintln!("FAILED {}", r.to_json_string());
            }
            Ok(Output { text: pretty(&serde_json::to_value(&reports)?), failed })
        }
        Command::PlotData(a) => plot_data(a, &limits),
    }
}

fn poly(a: &PolyArgs, limits: &Limits) -> anyhow::Result<Output> {
    let networks: Vec<HammockNetwork> = match &a.input {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let net: HammockNetwork = serde_json::from_str(&text)
                .map_err(|e| HammockError::MalformedNetwork(e.to_string()))?;
            vec![net]
        }
        None => {
            let (l, w) = (a.length.expect("required by clap"), a.width.expect("required by clap"));
            a.kind.kinds().into_iter().map(|k| build_hammock(l, w, k)).collect::<Result<_, _>>()?
        }
    };
    let polys: Vec<ReliabilityPolynomial> = networks
        .iter()
        .map(|net| reliability(net, a.engine.into(), limits))
        .collect::<Result<_, _>>()?;
    match a.format {
        Format::Json => {
            let mut values: Vec<Value> = polys
                .iter()
                .map(|p| serde_json::to_value(p.to_json()))
                .collect::<Result<_, _>>()?;
            let v = if values.len() == 1 { values.remove(0) } else { Value::Array(values) };
            Ok(Output::ok(pretty(&v)))
        }
        Format::Csv => match polys.as_slice() {
            [p] => Ok(Output::ok(p.to_csv())),
            _ => Err(UsageError("CSV output takes a single kind; pass --kind 1 or --kind 2".into()).into()),
        },
    }
}

fn sets_json(net: &HammockNetwork, sets: &[EdgeSubset]) -> Value {
    let by_size: serde_json::Map<String, Value> = size_profile(sets)
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.into()))
        .collect();
    json!({
        "l": net.length(),
        "w": net.width(),
        "kind": net.kind().number(),
        "count": sets.len(),
        "by_size": by_size,
        "sets": sets,
    })
}

fn plot_data(a: &PlotArgs, limits: &Limits) -> anyhow::Result<Output> {
    if !(a.step > 0.0 && a.step <= 1.0) {
        return Err(UsageError(format!("step {} must lie in (0, 1]", a.step)).into());
    }
    let intervals = (1.0 / a.step).round();
    if (intervals * a.step - 1.0).abs() > 1e-9 || intervals > 1e7 {
        return Err(UsageError(format!("step {} must divide 1 into at most 10^7 parts", a.step)).into());
    }
    let intervals = intervals as i64;
    let kinds = a.net.kind.kinds();
    let polys = kinds
        .iter()
        .map(|&k| reliability(&build_hammock(a.net.length, a.net.width, k)?, a.engine.into(), limits))
        .collect::<Result<Vec<_>, _>>()?;

    let mut text = String::from("p");
    if kinds.len() == 1 {
        text.push_str(",h");
    } else {
        for k in &kinds {
            text.push_str(&format!(",h_kind{k}"));
        }
    }
    text.push('\n');
    for i in 0..=intervals {
        let p = BigRational::new(BigInt::from(i), BigInt::from(intervals));
        text.push_str(&format!("{}", i as f64 / intervals as f64));
        for poly in &polys {
            let h = poly.eval(&p)?;
            let h = h.to_f64().ok_or_else(|| anyhow!("h({p}) is not representable"))?;
            text.push_str(&format!(",{h}"));
        }
        text.push('\n');
    }
    Ok(Output::ok(text))
}
