//! Command-line front end for the `thh` binary.

mod cache;
mod presets;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::graded::{GradedRingSpec, QuotientSpec, DEFAULT_PRECISION};
use crate::moduli::{
    c_matrix, is_associative, multiplication_from_perturbation, obstruction_degree, Ambient,
    ObstructionKind, Perturbation, Verdict,
};
use crate::polytopes::{enumerate_faces, euler_char_boundary, f_vector, PolytopeKind};
use crate::thh::{
    bokstedt_e2, bokstedt_run, default_filtration, default_q_order, e2_chart_named,
    resolve_cohomology, resolve_homology, ExtensionSystem, ResolutionKind, Variant, MAX_DEGREE,
};

pub use cache::{cache_key, Cache, CacheEntry};
pub use presets::{preset_problem, PresetOptions, Problem, PRESETS};

/// Exit status and message of a failed command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::usage(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "thh",
    version,
    about = "Polytopes, A_n structures and THH of regular quotients"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Cache directory; caching is off when unset.
    #[arg(long, global = true, env = "THH_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Exit with status 3 when a resolution is Unresolved.
    #[arg(long, global = true)]
    pub strict: bool,
    /// TOML file with default precision, truncation-q and degree.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Command {
    /// Faces of K_n or W_n of a given codimension.
    Faces(FacesArgs),
    /// f-vector and boundary Euler characteristic.
    Fvector(FvectorArgs),
    /// E_2 chart of the THH spectral sequences.
    Chart(ChartArgs),
    /// Resolve the hidden extensions.
    Resolve(ResolveArgs),
    /// Bökstedt spectral sequence for k(n).
    Bokstedt(BokstedtArgs),
    /// Associativity and the matrix C of a perturbed multiplication.
    ModuliCheck(ModuliArgs),
    /// Degree of an obstruction class.
    Obstruction(ObstructionArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FacesArgs {
    /// K (associahedron) or W (cyclohedron).
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    /// All codimensions when omitted.
    #[arg(long)]
    pub codim: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FvectorArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Source {
    /// One of ku2, kup, k1, kn.
    #[arg(long)]
    pub preset: Option<String>,
    /// TOML file with a ring, a sequence and optional extensions.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long)]
    pub height: Option<u32>,
    /// Entry c of the 1x1 matrix C = [c u] for the kup preset.
    #[arg(long, allow_hyphen_values = true)]
    pub cmatrix: Option<i64>,
    /// Add the conjectured pure-power terms to the kn preset.
    #[arg(long)]
    pub conjectural: bool,
    #[arg(long)]
    pub truncation_q: Option<u32>,
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ChartArgs {
    #[command(flatten)]
    pub source: Source,
    /// cohomology or homology.
    #[arg(long, default_value = "cohomology")]
    pub variant: String,
    /// Largest filtration shown.
    #[arg(long, default_value_t = 4)]
    pub filtration: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "cohomology")]
    pub variant: String,
    /// Largest total degree reported for homology.
    #[arg(long)]
    pub degree: Option<i64>,
    /// Filtration of the truncated homology module.
    #[arg(long)]
    pub filtration: Option<u32>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BokstedtArgs {
    /// Only bokstedt-kn.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long)]
    pub height: Option<u32>,
    /// Largest total degree; defaults to just below the collapse bound.
    #[arg(long)]
    pub degree: Option<i64>,
    /// Print the E^2 page instead of running the differential.
    #[arg(long)]
    pub e2: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModuliArgs {
    #[arg(long, default_value_t = 3)]
    pub prime: u64,
    /// Number of sequence elements.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Perturbation term `I;J=c` with 1-based index lists, e.g. `1,2;1=1`;
    /// the coefficient is multiplied by the power of u that makes it homogeneous.
    #[arg(long = "term")]
    pub terms: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ObstructionArgs {
    /// Only moore.
    #[arg(long)]
    pub preset: Option<String>,
    /// an-structure, bimodule, trace or cotrace.
    #[arg(long)]
    pub kind: Option<String>,
    /// Degree d of the element x.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// Stage of the structure.
    #[arg(long)]
    pub n: Option<i64>,
    /// even or sphere.
    #[arg(long)]
    pub ambient: Option<String>,
    #[arg(long)]
    pub prime: Option<u64>,
}

/// Defaults read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub precision: Option<u32>,
    pub truncation_q: Option<u32>,
    pub degree: Option<i64>,
}

/// A custom spec file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub base: crate::graded::BaseRing,
    #[serde(default)]
    pub generators: Vec<crate::graded::Generator>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub sequence: Vec<String>,
    pub q_names: Option<Vec<String>>,
    #[serde(default)]
    pub extensions: Vec<String>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn read_toml<T: for<'de> Deserialize<'de>>(
    path: &Path,
    option: &str,
) -> Result<(T, String), CliError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{option}: cannot read {}: {e}", path.display())))?;
    match toml::from_str(&src) {
        Ok(v) => Ok((v, src)),
        Err(e) => {
            let at = e
                .span()
                .map(|s| {
                    let (l, c) = line_col(&src, s.start);
                    format!(" at line {l}, column {c}")
                })
                .unwrap_or_default();
            Err(CliError::usage(format!(
                "{option}: malformed file {}{at}: {}",
                path.display(),
                e.message()
            )))
        }
    }
}

/// Parses and runs a command line, writing to the given streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(i32, String), CliError> {
    let (config, config_src) = match &cli.global.config {
        Some(p) => {
            let (c, s) = read_toml::<Config>(p, "--config")?;
            (c, Some(s))
        }
        None => (Config::default(), None),
    };
    let spec_src = spec_path(&cli.command)
        .map(|p| {
            std::fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("--spec: cannot read {}: {e}", p.display())))
        })
        .transpose()?;
    let request = json!({
        "command": serde_json::to_value(&cli.command).expect("serializable options"),
        "json": cli.global.json,
        "strict": cli.global.strict,
        "config": config_src,
        "spec": spec_src,
    });
    let cache = match (&cli.global.cache_dir, cli.global.no_cache) {
        (Some(dir), false) => Some(Cache::new(dir)),
        _ => None,
    };
    let key = cache_key(&request, env!("CARGO_PKG_VERSION"));
    if let Some(entry) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok((entry.exit_code, entry.output));
    }
    let (code, text) = dispatch(cli, &config)?;
    if let Some(c) = &cache {
        if let Err(e) = c.put(&key, code, &text) {
            let _ = writeln!(err, "warning: result not cached: {e}");
        }
    }
    Ok((code, text))
}

fn spec_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Chart(a) => a.source.spec.as_ref(),
        Command::Resolve(a) => a.source.spec.as_ref(),
        _ => None,
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli, config: &Config) -> Result<(i32, String), CliError> {
    let json = cli.global.json;
    match &cli.command {
        Command::Faces(a) => faces(a, json),
        Command::Fvector(a) => fvector(a, json),
        Command::Chart(a) => chart(a, config, json),
        Command::Resolve(a) => resolve(a, config, json, cli.global.strict),
        Command::Bokstedt(a) => bokstedt(a, config, json),
        Command::ModuliCheck(a) => moduli_check(a, json),
        Command::Obstruction(a) => obstruction(a, json),
    }
}

fn polytope_kind(s: &str) -> Result<PolytopeKind, CliError> {
    s.parse()
        .map_err(|e: Error| CliError::usage(format!("--kind: {e}")))
}

fn faces(a: &FacesArgs, json: bool) -> Result<(i32, String), CliError> {
    let kind = polytope_kind(&a.kind)?;
    if a.n == 0 || a.n > crate::polytopes::MAX_ARITY {
        return Err(CliError::usage(format!(
            "--n: arity must lie in 1..={}",
            crate::polytopes::MAX_ARITY
        )));
    }
    let dim = kind.dim(a.n);
    let codims: Vec<usize> = match a.codim {
        Some(c) if c > dim => {
            return Err(CliError::usage(format!(
                "--codim: {c} exceeds the dimension {dim} of {}_{}",
                kind.letter(),
                a.n
            )))
        }
        Some(c) => vec![c],
        None => (0..=dim).collect(),
    };
    let mut faces = Vec::new();
    for c in codims {
        faces.extend(enumerate_faces(kind, a.n, c)?);
    }
    if json {
        return Ok((
            0,
            render_json(&json!({"count": faces.len(), "faces": faces})),
        ));
    }
    let mut s = String::new();
    for f in &faces {
        writeln!(s, "{f}").unwrap();
    }
    writeln!(s, "{} faces", faces.len()).unwrap();
    Ok((0, s))
}

fn fvector(a: &FvectorArgs, json: bool) -> Result<(i32, String), CliError> {
    let kind = polytope_kind(&a.kind)?;
    if a.n == 0 || a.n > crate::polytopes::MAX_ARITY {
        return Err(CliError::usage(format!(
            "--n: arity must lie in 1..={}",
            crate::polytopes::MAX_ARITY
        )));
    }
    let f = f_vector(kind, a.n)?;
    let chi = euler_char_boundary(kind, a.n)?;
    if json {
        return Ok((
            0,
            render_json(&json!({
                "kind": kind.letter().to_string(),
                "n": a.n,
                "f_vector": f,
                "euler_char_boundary": chi,
            })),
        ));
    }
    let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    Ok((
        0,
        format!(
            "{}_{}: f = ({})\nboundary Euler characteristic: {chi}\n",
            kind.letter(),
            a.n,
            parts.join(", ")
        ),
    ))
}

fn variant(s: &str) -> Result<Variant, CliError> {
    match s {
        "cohomology" => Ok(Variant::Cohomology),
        "homology" => Ok(Variant::Homology),
        other => Err(CliError::usage(format!(
            "--variant: expected cohomology or homology, got '{other}'"
        ))),
    }
}

fn problem(src: &Source, config: &Config) -> Result<Problem, CliError> {
    let precision = src
        .precision
        .or(config.precision)
        .unwrap_or(DEFAULT_PRECISION);
    if !(1..=40).contains(&precision) {
        return Err(CliError::usage("--precision: must lie in 1..=40"));
    }
    let q_order = src.truncation_q.or(config.truncation_q);
    if q_order == Some(0) {
        return Err(CliError::usage("--truncation-q: must be positive"));
    }
    match (&src.preset, &src.spec) {
        (Some(_), Some(_)) => Err(CliError::usage("--spec: cannot be combined with --preset")),
        (None, None) => Err(CliError::usage("--preset: give a preset or a --spec file")),
        (Some(name), None) => preset_problem(
            name,
            &PresetOptions {
                prime: src.prime,
                height: src.height,
                cmatrix: src.cmatrix,
                conjectural: src.conjectural,
                q_order,
                precision,
            },
        ),
        (None, Some(path)) => {
            let (file, _) = read_toml::<SpecFile>(path, "--spec")?;
            let spec = QuotientSpec {
                ring: GradedRingSpec {
                    base: file.base,
                    generators: file.generators,
                    relations: file.relations,
                },
                sequence: file.sequence,
            };
            let nq = q_order.unwrap_or_else(|| {
                let p = spec.ring.base.prime().unwrap_or(2);
                default_q_order(p, 1)
            });
            let mut ext = ExtensionSystem::zero(&spec, file.q_names, nq, precision)
                .map_err(|e| CliError::usage(format!("--spec: {e}")))?;
            if !file.extensions.is_empty() && file.extensions.len() != ext.m() {
                return Err(CliError::usage(format!(
                    "--spec: {} extensions for {} sequence elements",
                    file.extensions.len(),
                    ext.m()
                )));
            }
            for (i, f) in file.extensions.iter().enumerate() {
                ext.set(i, f)
                    .map_err(|e| CliError::usage(format!("--spec: extension {}: {e}", i + 1)))?;
            }
            Ok(Problem { spec, ext })
        }
    }
}

fn chart_value(
    p: &Problem,
    v: Variant,
    filtration: u32,
) -> Result<(crate::thh::Chart, Value), CliError> {
    let names = p.ext.q_names().to_vec();
    let chart = e2_chart_named(&p.spec, v, filtration, &names)?;
    let mut value = serde_json::to_value(&chart).expect("serializable");
    value["extensions"] = serde_json::to_value(p.ext.summary()).expect("serializable");
    Ok((chart, value))
}

fn extensions_text(p: &Problem) -> String {
    let mut s = String::new();
    for e in p.ext.summary() {
        writeln!(s, "extension: {} = {}", e.x, e.f).unwrap();
    }
    if !p.ext.tags.is_empty() {
        let tags: Vec<&str> = p.ext.tags.iter().map(|t| t.as_str()).collect();
        writeln!(s, "tags: {}", tags.join(", ")).unwrap();
    }
    s
}

fn chart(a: &ChartArgs, config: &Config, json: bool) -> Result<(i32, String), CliError> {
    let v = variant(&a.variant)?;
    let p = problem(&a.source, config)?;
    let (chart, value) = chart_value(&p, v, a.filtration)?;
    if json {
        return Ok((0, render_json(&value)));
    }
    Ok((0, format!("{}{}", chart.to_text(), extensions_text(&p))))
}

fn resolve(
    a: &ResolveArgs,
    config: &Config,
    json: bool,
    strict: bool,
) -> Result<(i32, String), CliError> {
    let v = variant(&a.variant)?;
    let p = problem(&a.source, config)?;
    let (chart, mut value) = chart_value(&p, v, 4)?;
    let mut text = format!("{}{}", chart.to_text(), extensions_text(&p));
    let mut code = 0;
    match v {
        Variant::Cohomology => {
            let r = resolve_cohomology(&p.ext)?;
            if r.kind == ResolutionKind::Unresolved && strict {
                code = 3;
            }
            value["result"] = serde_json::to_value(&r).expect("serializable");
            match r.kind {
                ResolutionKind::CompletedBase => {
                    writeln!(text, "result: completed base {}", r.base).unwrap()
                }
                ResolutionKind::Free => writeln!(
                    text,
                    "result: free of rank {} over {} with basis {}",
                    r.rank.unwrap_or(0),
                    r.base,
                    r.basis.join(", ")
                )
                .unwrap(),
                ResolutionKind::Unresolved => writeln!(
                    text,
                    "result: unresolved: {}",
                    r.reason.as_deref().unwrap_or("")
                )
                .unwrap(),
            }
            for rel in &r.relations {
                writeln!(text, "relation: {rel}").unwrap();
            }
        }
        Variant::Homology => {
            let bound = a.degree.or(config.degree).unwrap_or(24);
            if !(0..=MAX_DEGREE).contains(&bound) {
                return Err(CliError::usage(format!(
                    "--degree: must lie in 0..={MAX_DEGREE}"
                )));
            }
            let filtration = a.filtration.unwrap_or_else(|| default_filtration(&p.ext));
            let h = resolve_homology(&p.ext, filtration, bound)?;
            let mut r = serde_json::to_value(&h).expect("serializable");
            let obj = r.as_object_mut().expect("object");
            obj.insert("kind".into(), json!("towers"));
            value["result"] = r;
            for rel in &h.relations {
                writeln!(text, "relation: {rel}").unwrap();
            }
            if h.towers.is_empty() {
                writeln!(text, "no divisible towers through degree {bound}").unwrap();
            } else {
                writeln!(text, "{:>6} | summand", "degree").unwrap();
                for t in &h.towers {
                    writeln!(
                        text,
                        "{:>6} | {} generated by {} (chain {})",
                        t.degree, t.summand, t.generator, t.chain_length
                    )
                    .unwrap();
                }
            }
        }
    }
    if json {
        return Ok((code, render_json(&value)));
    }
    Ok((code, text))
}

fn bokstedt(a: &BokstedtArgs, config: &Config, json: bool) -> Result<(i32, String), CliError> {
    if let Some(name) = &a.preset {
        if name != "bokstedt-kn" {
            return Err(CliError::usage(format!(
                "--preset: the bokstedt verb takes only bokstedt-kn, got '{name}'"
            )));
        }
    }
    let p = a.prime.unwrap_or(3);
    if p == 2 {
        return Err(CliError::usage(
            "--prime: the Bökstedt computation needs an odd prime",
        ));
    }
    presets::check_prime(p, true)?;
    let n = a.height.unwrap_or(1);
    if n == 0 {
        return Err(CliError::usage("--height: must be at least 1"));
    }
    let collapse = 2 * (p as i64).checked_pow(n + 1).unwrap_or(i64::MAX / 4) - 1;
    let bound = a
        .degree
        .or(config.degree)
        .unwrap_or((collapse - 1).min(MAX_DEGREE));
    if !(0..=MAX_DEGREE).contains(&bound) {
        return Err(CliError::usage(format!(
            "--degree: must lie in 0..={MAX_DEGREE}"
        )));
    }
    let e2 = bokstedt_e2(n, p, bound)?;
    let state = if a.e2 { e2 } else { bokstedt_run(&e2)? };
    if json {
        return Ok((
            0,
            render_json(&json!({
                "p": state.p,
                "n": state.n,
                "bound": state.bound,
                "page": state.page,
                "generators": state.generators,
                "collapse_bound": state.collapse_bound,
                "exact_through": state.exact_through,
                "counts": state.counts(),
                "entries": state.entries(),
            })),
        ));
    }
    Ok((0, state.to_text()))
}

fn moduli_spec(p: u64, m: usize) -> QuotientSpec {
    use crate::graded::{BaseRing, Generator};
    let mut gens = vec![Generator::new("u", 2, true)];
    let mut seq = vec![p.to_string()];
    for i in 1..m {
        gens.push(Generator::new(&format!("w{i}"), 0, false));
        seq.push(format!("w{i}"));
    }
    QuotientSpec {
        ring: GradedRingSpec::new(BaseRing::Integers, gens),
        sequence: seq,
    }
}

fn parse_indices(s: &str, m: usize, term: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|x| {
            let i: usize = x
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("--term: bad index '{x}' in '{term}'")))?;
            if i == 0 || i > m {
                return Err(CliError::usage(format!(
                    "--term: index {i} out of range 1..={m} in '{term}'"
                )));
            }
            Ok(i)
        })
        .collect()
}

fn moduli_check(a: &ModuliArgs, json: bool) -> Result<(i32, String), CliError> {
    presets::check_prime(a.prime, false)?;
    if a.m == 0 || a.m > 4 {
        return Err(CliError::usage("--m: must lie in 1..=4"));
    }
    let spec = moduli_spec(a.prime, a.m);
    let mut pert = Perturbation::new(&spec)?;
    for term in &a.terms {
        let (lhs, c) = term
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--term: expected I;J=c, got '{term}'")))?;
        let (i, j) = lhs
            .split_once(';')
            .ok_or_else(|| CliError::usage(format!("--term: expected I;J=c, got '{term}'")))?;
        let i = parse_indices(i, a.m, term)?;
        let j = parse_indices(j, a.m, term)?;
        let c: i64 = c
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--term: bad coefficient in '{term}'")))?;
        let zi: Vec<usize> = i.iter().map(|x| x - 1).collect();
        let zj: Vec<usize> = j.iter().map(|x| x - 1).collect();
        let deg = pert.required_degree(&zi, &zj);
        if deg % 2 != 0 {
            return Err(CliError::usage(format!(
                "--term: '{term}' needs odd degree {deg}"
            )));
        }
        pert.set_str(&i, &j, &format!("{c}*u^{}", deg / 2))
            .map_err(|e| CliError::usage(format!("--term: {e}")))?;
    }
    let table = multiplication_from_perturbation(&pert)?;
    let assoc = is_associative(&table);
    let zero = crate::arith::Poly::zero(pert.ring().nvars());
    let c = c_matrix(&pert, &vec![zero; a.m]).ok();
    let witness = assoc.witness.as_ref().map(|w| w.to_string());
    if json {
        return Ok((
            0,
            render_json(&json!({
                "prime": a.prime,
                "m": a.m,
                "perturbation": pert.to_json(),
                "quadratic": pert.is_quadratic(),
                "associative": assoc.associative,
                "witness": witness,
                "cmatrix": c,
                "cmatrix_invertible": c.as_ref().map(|c| c.is_invertible()),
            })),
        ));
    }
    let mut s = String::new();
    writeln!(s, "A_* = {}", pert.ring()).unwrap();
    writeln!(s, "associative: {}", assoc.associative).unwrap();
    if let Some(w) = witness {
        writeln!(s, "witness: {w}").unwrap();
    }
    match &c {
        Some(c) => {
            for row in c.to_strings() {
                writeln!(s, "C: [{}]", row.join(", ")).unwrap();
            }
            writeln!(s, "C invertible: {}", c.is_invertible()).unwrap();
        }
        None => writeln!(s, "C: not defined (higher terms present)").unwrap(),
    }
    Ok((0, s))
}

fn obstruction(a: &ObstructionArgs, json: bool) -> Result<(i32, String), CliError> {
    let (kind, d, n, ambient) = match a.preset.as_deref() {
        Some("moore") => {
            let p = presets::check_prime(a.prime.unwrap_or(3), false)?;
            (ObstructionKind::AnStructure, 0, p as i64, Ambient::Sphere)
        }
        Some(other) => {
            return Err(CliError::usage(format!(
                "--preset: the obstruction verb takes only moore, got '{other}'"
            )))
        }
        None => {
            let kind = a
                .kind
                .as_deref()
                .unwrap_or("an-structure")
                .parse()
                .map_err(|e: Error| CliError::usage(format!("--kind: {e}")))?;
            let ambient = match a.ambient.as_deref().unwrap_or("even") {
                "even" => Ambient::Even,
                "sphere" => Ambient::Sphere,
                other => {
                    return Err(CliError::usage(format!(
                        "--ambient: expected even or sphere, got '{other}'"
                    )))
                }
            };
            let n =
                a.n.ok_or_else(|| CliError::usage("--n: the stage n is required"))?;
            (kind, a.degree.unwrap_or(0), n, ambient)
        }
    };
    let o = obstruction_degree(kind, d, n, ambient)
        .map_err(|e| CliError::usage(format!("--n: {e}")))?;
    if json {
        return Ok((
            0,
            render_json(&serde_json::to_value(&o).expect("serializable")),
        ));
    }
    let verdict = match &o.verdict {
        Verdict::VanishesForParity => "vanishes for parity".to_string(),
        Verdict::Nonvanishing(r) => format!("nonzero ({r})"),
        Verdict::Undetermined => "not decided by degree".to_string(),
    };
    let mut s = format!(
        "{:?} obstruction at stage {} for |x| = {}: degree {}\n",
        o.kind, o.n, o.d, o.degree
    );
    if let Some(r) = o.torsor_rank {
        writeln!(s, "choices: torsor for {r} copies").unwrap();
    }
    writeln!(s, "verdict: {verdict}").unwrap();
    Ok((0, s))
}
