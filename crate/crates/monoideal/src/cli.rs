//! Subcommand dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use monoideal_core::decomposition::{adeg_profile, associated_primes, standard_pairs};
use monoideal_core::homology::{generation_degree_bounded, regularity};
use monoideal_core::newton::{bezout_check, integral_closure, r_coefficient, rees_valuations, sheaf_r_coefficient};
use monoideal_core::nilpotency::{nilpotency_index, InclusionCheck};
use monoideal_core::sinvariant::{
    curve_lower_bound, pathology_ideal, power_entry, property_checks, s_bracket_with, PowerEntry, SBracket,
};
use monoideal_core::surface::{nef_at, rescale_check, s_invariant_divisorial};
use monoideal_core::{Error, Limits, MonomialIdeal, Rational, Ring};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{known_entries, now, CachedEntry, PowerCache, CACHE_DIR_ENV};
use crate::document::{parse_ideal_file, IdealDocument};
use crate::error::{CliError, Result};
use crate::exact::{parse_rational, ExactQuadratic, ExactRational};
use crate::lattice::parse_lattice_file;
use crate::report::{self, input_ideal, Inputs, Report, Timings};

#[derive(Debug, Parser)]
#[command(name = "monoideal", version, about = "Invariants of monomial ideal sheaves on projective space")]
pub struct Cli {
    /// Emit the JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for independent powers and family members.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on minimal generators for lattice computations.
    #[arg(long, global = true, default_value_t = Limits::default().max_generators)]
    pub max_generators: usize,
    /// Cap on the index of nilpotency searched for.
    #[arg(long, global = true, default_value_t = Limits::default().max_nilpotency_index)]
    pub max_nilpotency: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// Ideal file.
    pub file: PathBuf,
    /// Name of the ideal in the file; defaults to the first one.
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Debug, Args)]
pub struct BracketArgs {
    #[arg(long, default_value_t = 4)]
    pub pmax: u32,
    /// Convergence tolerance, e.g. `1/100` or `0.01`.
    #[arg(long, default_value = "1/100", value_parser = rational_arg)]
    pub tol: Rational,
    /// Power-sequence cache directory.
    #[arg(long, env = CACHE_DIR_ENV)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form, radical and saturation.
    Info(IdealArgs),
    /// Regularity of the sheaf with its witness and Betti table.
    Reg(IdealArgs),
    /// Generation degree of the sheaf.
    Gendeg(IdealArgs),
    /// Generators, generation degree and regularity of a power.
    Power {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long)]
        p: u32,
    },
    /// Rees valuations from the Newton polyhedron.
    Rees(IdealArgs),
    /// Integral closure.
    Closure(IdealArgs),
    /// Arithmetic degrees, associated primes and standard pairs.
    Adeg(IdealArgs),
    /// Index of nilpotency and the effective Nullstellensatz inclusions.
    Nilp {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long, default_value_t = 3)]
        pmax: u32,
    },
    /// Certified bracket around the s-invariant.
    Sinv {
        #[command(flatten)]
        input: IdealArgs,
        #[command(flatten)]
        bracket: BracketArgs,
    },
    /// Degree bound over the Rees valuations at a given s.
    Bezout {
        #[command(flatten)]
        input: IdealArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg, required_unless_present = "from_bracket", conflicts_with = "from_bracket")]
        s: Option<Rational>,
        /// Use the upper endpoint of the certified bracket.
        #[arg(long)]
        from_bracket: bool,
        #[command(flatten)]
        bracket: BracketArgs,
    },
    /// Product, sum and closure properties of two ideals.
    Props {
        file: PathBuf,
        #[arg(long)]
        first: Option<String>,
        #[arg(long)]
        second: Option<String>,
        #[arg(long, default_value_t = 3)]
        pmax: u32,
        #[arg(long, default_value = "1/100", value_parser = rational_arg)]
        tol: Rational,
    },
    /// Nef boundary of sH - C on a surface lattice.
    Surface {
        /// Lattice file.
        file: PathBuf,
        #[arg(long = "H")]
        h: String,
        #[arg(long = "C")]
        c: String,
        /// Check rescaling for all a in 1..=N and b in 0..=N.
        #[arg(long)]
        rescale_up_to: Option<u32>,
    },
    /// The embedded-point family (x^2, x*y*z^d, y^2) in P^3.
    Pathology {
        #[arg(long, default_value = "1..6", value_parser = range_arg)]
        d_range: (u32, u32),
        /// Also compute upper bracket endpoints up to this power.
        #[arg(long)]
        pmax: Option<u32>,
    },
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn range_arg(s: &str) -> std::result::Result<(u32, u32), String> {
    let bad = || format!("`{s}` is not a range `A..B`");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

/// What a command produced, before rendering.
struct Outcome {
    inputs: Inputs,
    results: Value,
    human: String,
    powers_computed: Option<u32>,
    powers_from_cache: Option<u32>,
}

impl Outcome {
    fn new(inputs: Inputs, results: Value, human: String) -> Self {
        Outcome { inputs, results, human, powers_computed: None, powers_from_cache: None }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, human)) => {
            let text =
                if cli.json { serde_json::to_string_pretty(&report).expect("reports serialize") + "\n" } else { human };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the parsed command and returns the report with its human rendering.
pub fn execute(cli: &Cli) -> Result<(Report, String)> {
    let limits =
        Limits { max_generators: cli.max_generators, max_nilpotency_index: cli.max_nilpotency, ..Limits::default() };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let start = Instant::now();
    let outcome = pool.install(|| dispatch(&cli.command, &limits))?;
    let timings = Timings {
        total_seconds: start.elapsed().as_secs_f64(),
        powers_computed: outcome.powers_computed,
        powers_from_cache: outcome.powers_from_cache,
    };
    let report = Report::new(command_name(&cli.command), outcome.inputs, outcome.results, timings);
    Ok((report, outcome.human))
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Info(_) => "info",
        Command::Reg(_) => "reg",
        Command::Gendeg(_) => "gendeg",
        Command::Power { .. } => "power",
        Command::Rees(_) => "rees",
        Command::Closure(_) => "closure",
        Command::Adeg(_) => "adeg",
        Command::Nilp { .. } => "nilp",
        Command::Sinv { .. } => "sinv",
        Command::Bezout { .. } => "bezout",
        Command::Props { .. } => "props",
        Command::Surface { .. } => "surface",
        Command::Pathology { .. } => "pathology",
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_document(path: &Path) -> Result<IdealDocument> {
    parse_ideal_file(&path.display().to_string(), &read_file(path)?)
}

fn load_ideal(args: &IdealArgs) -> Result<(String, MonomialIdeal, Inputs)> {
    let doc = load_document(&args.file)?;
    let named = doc.select(args.ideal.as_deref())?;
    let inputs = Inputs {
        file: Some(args.file.display().to_string()),
        ring: doc.ring.variable_names().to_vec(),
        ideals: vec![input_ideal(&named.name, &named.ideal)],
        parameters: BTreeMap::new(),
    };
    Ok((named.name.clone(), named.ideal.clone(), inputs))
}

fn show(ideal: &MonomialIdeal) -> String {
    ideal.display().to_string()
}

fn var_names(ring: &Ring, vars: &[usize]) -> Vec<String> {
    vars.iter().map(|&j| ring.variable_names()[j].clone()).collect()
}

fn header(name: &str, ideal: &MonomialIdeal) -> String {
    format!("{name} = {} on P^{}\n", show(ideal), ideal.ring().projective_dimension())
}

fn dispatch(command: &Command, limits: &Limits) -> Result<Outcome> {
    match command {
        Command::Info(args) => info(args),
        Command::Reg(args) => reg(args, limits),
        Command::Gendeg(args) => gendeg(args, limits),
        Command::Power { input, p } => power(input, *p, limits),
        Command::Rees(args) => rees(args),
        Command::Closure(args) => closure(args),
        Command::Adeg(args) => adeg(args),
        Command::Nilp { input, pmax } => nilp(input, *pmax, limits),
        Command::Sinv { input, bracket } => sinv(input, bracket, limits),
        Command::Bezout { input, s, from_bracket, bracket } => bezout(input, *s, *from_bracket, bracket, limits),
        Command::Props { file, first, second, pmax, tol } => {
            props(file, first.as_deref(), second.as_deref(), *pmax, *tol, limits)
        }
        Command::Surface { file, h, c, rescale_up_to } => surface(file, h, c, *rescale_up_to),
        Command::Pathology { d_range, pmax } => pathology(*d_range, *pmax, limits),
    }
}

fn info(args: &IdealArgs) -> Result<Outcome> {
    let (name, ideal, inputs) = load_ideal(args)?;
    let radical = ideal.radical();
    let sat = ideal.saturate();
    let results = json!({
        "generators": report::generators(&ideal),
        "num_generators": ideal.num_generators(),
        "max_generator_degree": ideal.max_generator_degree(),
        "radical": report::generators(&radical),
        "saturation": report::generators(&sat),
        "saturated": ideal.is_saturated(),
        "projective_dimension": ideal.ring().projective_dimension(),
    });
    let mut human = header(&name, &ideal);
    let _ = writeln!(human, "generators: {} (max degree {})", ideal.num_generators(), ideal.max_generator_degree());
    let _ = writeln!(human, "radical:    {}", show(&radical));
    let _ = writeln!(human, "saturation: {}{}", show(&sat), if ideal.is_saturated() { " (saturated)" } else { "" });
    Ok(Outcome::new(inputs, results, human))
}

fn reg(args: &IdealArgs, limits: &Limits) -> Result<Outcome> {
    let (name, ideal, inputs) = load_ideal(args)?;
    let r = regularity(&ideal, limits)?;
    let ring = ideal.ring();
    let betti: Vec<Value> = r
        .betti
        .entries()
        .map(|(i, b, v)| json!({"i": i, "multidegree": report::monomial(ring, b), "value": v}))
        .collect();
    let results = json!({
        "regularity": r.regularity,
        "witness": {"i": r.witness.0, "multidegree": report::monomial(ring, &r.witness.1)},
        "saturation": report::generators(&r.saturated_input),
        "betti": betti,
    });
    let mut human = header(&name, &ideal);
    let _ = writeln!(human, "saturation: {}", show(&r.saturated_input));
    let _ = writeln!(human, "regularity: {}", r.regularity);
    let _ = writeln!(human, "witness:    beta_{{{}, {}}}", r.witness.0, ring.display(&r.witness.1));
    let _ = writeln!(human, "graded Betti numbers (i, degree): count");
    for ((i, d), v) in r.betti.graded() {
        let _ = writeln!(human, "  ({i}, {d}): {v}");
    }
    Ok(Outcome::new(inputs, results, human))
}

fn gendeg(args: &IdealArgs, limits: &Limits) -> Result<Outcome> {
    let (name, ideal, inputs) = load_ideal(args)?;
    let r = regularity(&ideal, limits)?;
    let d = generation_degree_bounded(&r.saturated_input, r.regularity)?;
    let results = json!({"generation_degree": d, "regularity": r.regularity});
    let human = format!("{}generation degree: {d}\nregularity:        {}\n", header(&name, &ideal), r.regularity);
    Ok(Outcome::new(inputs, results, human))
}

fn power(args: &IdealArgs, p: u32, limits: &Limits) -> Result<Outcome> {
    let (name, ideal, mut inputs) = load_ideal(args)?;
    inputs.parameters.insert("p".into(), json!(p));
    if p == 0 {
        return Err(Error::Domain("the power must be at least 1".into()).into());
    }
    let pw = ideal.power(p)?;
    let entry = power_entry(&ideal, p, limits)?;
    let results = json!({
        "p": p,
        "generators": report::generators(&pw),
        "num_generators": pw.num_generators(),
        "generation_degree": entry.d,
        "regularity": entry.reg,
    });
    let mut human = header(&name, &ideal);
    let _ = writeln!(human, "power {p}: {} ({} generators)", show(&pw), pw.num_generators());
    let _ = writeln!(human, "d_{p} = {}, reg_{p} = {}", entry.d, entry.reg);
    Ok(Outcome::new(inputs, results, human))
}

fn rees(args: &IdealArgs) -> Result<Outcome> {
    let (name, ideal, inputs) = load_ideal(args)?;
    let ring = ideal.ring();
    let vals = rees_valuations(&ideal)?;
    let r = r_coefficient(&ideal)?;
    let r_sheaf = sheaf_r_coefficient(&ideal)?;
    let rows: Vec<Value> = vals
        .iter()
        .map(|v| {
            json!({
                "normal": v.normal,
                "coefficient": v.coefficient,
                "center": var_names(ring, &v.center),
                "center_dimension": v.center_dimension,
                "distinguished": v.is_distinguished(),
            })
        })
        .collect();
    let results = json!({"valuations": rows, "r": r, "r_sheaf": r_sheaf});
    let mut human = header(&name, &ideal);
    let _ = writeln!(human, "r = {r}, r over distinguished centers = {r_sheaf}");
    let _ = writeln!(human, "{:<20} {:>6}  center", "normal", "coeff");
    for v in &vals {
        let center = var_names(ring, &v.center).iter().map(|n| format!("{n}=0")).collect::<Vec<_>>().join(", ");
        let label =
            if v.is_distinguished() { format!("{{{center}}} dim {}", v.center_dimension) } else { "irrelevant".into() };
        let _ = writeln!(human, "{:<20} {:>6}  {label}", format!("{:?}", v.normal), v.coefficient);
    }
    Ok(Outcome::new(inputs, results, human))
}

fn closure(args: &IdealArgs) -> Result<Outcome> {
    let (name, ideal, inputs) = load_ideal(args)?;
    let closure = integral_closure(&ideal)?;
    let closed = closure == ideal;
    let results = json!({"generators": report::generators(&closure), "integrally_closed": closed});
    let human = format!(
        "{}closure: {}{}\n",
        header(&name, &ideal),
        show(&closure),
        if closed { " (integrally closed)" } else { "" }
    );
    Ok(Outcome::new(inputs, results, human))
}

fn adeg(args: &IdealArgs) -> Result<Outcome> {
    let (name, ideal, inputs) = load_ideal(args)?;
    let ring = ideal.ring();
    let profile = adeg_profile(&ideal)?;
    let primes = associated_primes(&ideal)?;
    let pairs = standard_pairs(&profile.computed_on)?;
    let by_codim: BTreeMap<String, u64> = profile.by_codimension.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let results = json!({
        "computed_on": report::generators(&profile.computed_on),
        "by_codimension": by_codim,
        "total": profile.total(),
        "associated_primes": primes.iter().map(|p| var_names(ring, p.variables())).collect::<Vec<_>>(),
        "standard_pairs": pairs.pairs().iter().map(|p| json!({
            "root": report::monomial(ring, &p.root),
            "free": var_names(ring, &p.free),
        })).collect::<Vec<_>>(),
    });
    let mut human = header(&name, &ideal);
    let _ = writeln!(human, "saturation: {}", show(&profile.computed_on));
    for (k, v) in &profile.by_codimension {
        let _ = writeln!(human, "adeg^{k} = {v}");
    }
    let primes: Vec<String> =
        primes.iter().map(|p| format!("({})", var_names(ring, p.variables()).join(", "))).collect();
    let _ = writeln!(human, "associated primes: {}", primes.join(" "));
    let _ = writeln!(human, "standard pairs: {}", pairs.pairs().len());
    Ok(Outcome::new(inputs, results, human))
}

fn inclusion_rows(checks: &[InclusionCheck]) -> Vec<Value> {
    checks.iter().map(|c| json!({"p": c.p, "exponent": c.exponent, "holds": c.holds})).collect()
}

fn nilp(args: &IdealArgs, pmax: u32, limits: &Limits) -> Result<Outcome> {
    let (name, ideal, mut inputs) = load_ideal(args)?;
    inputs.parameters.insert("pmax".into(), json!(pmax));
    let r = nilpotency_index(&ideal, pmax, limits)?;
    let n = ideal.ring().projective_dimension() as i64;
    let results = json!({
        "index": r.index,
        "computed_on": report::generators(&r.computed_on),
        "r_sheaf": r.r_sheaf,
        "bound": n * r.r_sheaf,
        "within_bound": r.within_bound,
        "increasing": inclusion_rows(&r.increasing),
        "decreasing": inclusion_rows(&r.decreasing),
    });
    let mut human = header(&name, &ideal);
    let _ = writeln!(
        human,
        "index of nilpotency: {} (bound n*r = {}, {})",
        r.index,
        n * r.r_sheaf,
        if r.within_bound { "holds" } else { "fails" }
    );
    let verdict = |h: Option<bool>| match h {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "n/a",
    };
    let _ = writeln!(human, " p  r(n+p-1)        r(n+1-p)");
    for (a, b) in r.increasing.iter().zip(&r.decreasing) {
        let _ = writeln!(
            human,
            "{:>2}  {:>4} {:<10}  {:>4} {}",
            a.p,
            a.exponent,
            verdict(a.holds),
            b.exponent,
            verdict(b.holds)
        );
    }
    Ok(Outcome::new(inputs, results, human))
}

/// Power entries for `1..=pmax`, reusing and extending the cache.
fn cached_entries(
    ideal: &MonomialIdeal,
    pmax: u32,
    limits: &Limits,
    cache: Option<&Path>,
) -> Result<(BTreeMap<u32, PowerEntry>, u32, u32)> {
    let sat = ideal.saturate();
    if sat.is_zero() || sat.is_unit() {
        return Err(Error::Domain("the s-invariant is undefined for the zero or unit sheaf".into()).into());
    }
    let cache = cache.map(PowerCache::new);
    let stored = match &cache {
        Some(c) => c.read(ideal)?,
        None => BTreeMap::new(),
    };
    let missing: Vec<u32> = (1..=pmax).filter(|p| !stored.contains_key(p)).collect();
    let hits = pmax - missing.len() as u32;
    let computed: Vec<(u32, monoideal_core::Result<PowerEntry>)> =
        missing.par_iter().map(|&p| (p, power_entry(ideal, p, limits))).collect();
    let mut fresh = BTreeMap::new();
    let stamp = now();
    for (p, entry) in computed {
        let e = entry?;
        fresh.insert(p, CachedEntry { d: e.d, reg: e.reg, computed_at: stamp });
    }
    let merged = match &cache {
        Some(c) if !fresh.is_empty() => c.merge_write(ideal, &fresh)?,
        _ => {
            let mut all = stored;
            all.extend(fresh);
            all
        }
    };
    Ok((known_entries(&merged), missing.len() as u32, hits))
}

fn bracket_json(ideal: &MonomialIdeal, b: &SBracket, tol: Rational) -> Value {
    let ring = ideal.ring();
    let w = &b.lower_witness;
    let weights: BTreeMap<String, u32> = ring
        .variable_names()
        .iter()
        .cloned()
        .zip(w.full_weights())
        .filter(|(n, _)| *n != ring.variable_names()[w.chart])
        .collect();
    let (p, d_p) = b.upper_witness;
    json!({
        "lower": ExactRational::from(b.lower),
        "upper": ExactRational::from(b.upper),
        "converged": b.converged,
        "tolerance": ExactRational::from(tol),
        "lower_witness": {
            "chart": ring.variable_names()[w.chart],
            "weights": weights,
            "valuation": w.valuation,
            "degree": w.degree,
            "bound": ExactRational::from(w.bound),
        },
        "upper_witness": {"p": p, "d_p": d_p},
        "sequence": b.sequence.entries().iter().map(|(&p, e)| json!({
            "p": p,
            "d": e.d,
            "reg": e.reg,
            "ratio": ExactRational::from(Rational::new(i64::from(e.d), i64::from(p))),
        })).collect::<Vec<_>>(),
    })
}

fn bracket_text(ideal: &MonomialIdeal, b: &SBracket, tol: Rational) -> String {
    let ring = ideal.ring();
    let w = &b.lower_witness;
    let weights: Vec<String> = ring
        .variable_names()
        .iter()
        .zip(w.full_weights())
        .enumerate()
        .filter(|(j, _)| *j != w.chart)
        .map(|(_, (n, v))| format!("{n}={v}"))
        .collect();
    let mut s = String::new();
    let status = if b.converged { "converged" } else { "not converged" };
    let _ = writeln!(s, "s bracket: [{}, {}] ({status}, tolerance {tol})", b.lower, b.upper);
    let _ = writeln!(
        s,
        "lower: {} from the monomial curve in chart {}=1 with weights {} (valuation {}, degree {})",
        w.bound,
        ring.variable_names()[w.chart],
        weights.join(" "),
        w.valuation,
        w.degree
    );
    let (p, d_p) = b.upper_witness;
    let _ = writeln!(s, "upper: d_{p}/{p} = {d_p}/{p}");
    let _ = writeln!(s, " p  d_p  reg_p  d_p/p");
    for (&p, e) in b.sequence.entries() {
        let _ = writeln!(s, "{p:>2}  {:>3}  {:>5}  {}", e.d, e.reg, Rational::new(i64::from(e.d), i64::from(p)));
    }
    s
}

fn compute_bracket(ideal: &MonomialIdeal, args: &BracketArgs, limits: &Limits) -> Result<(SBracket, u32, u32)> {
    let (known, computed, hits) = cached_entries(ideal, args.pmax, limits, args.cache.as_deref())?;
    let b = s_bracket_with(ideal, args.pmax, args.tol, limits, &known)?;
    Ok((b, computed, hits))
}

fn sinv(args: &IdealArgs, bracket: &BracketArgs, limits: &Limits) -> Result<Outcome> {
    let (name, ideal, mut inputs) = load_ideal(args)?;
    inputs.parameters.insert("pmax".into(), json!(bracket.pmax));
    inputs.parameters.insert("tol".into(), json!(bracket.tol.to_string()));
    let (b, computed, hits) = compute_bracket(&ideal, bracket, limits)?;
    let results = bracket_json(&ideal, &b, bracket.tol);
    let human = header(&name, &ideal) + &bracket_text(&ideal, &b, bracket.tol);
    Ok(Outcome {
        powers_computed: Some(computed),
        powers_from_cache: Some(hits),
        ..Outcome::new(inputs, results, human)
    })
}

fn bezout(
    args: &IdealArgs,
    s: Option<Rational>,
    from_bracket: bool,
    bracket: &BracketArgs,
    limits: &Limits,
) -> Result<Outcome> {
    let (name, ideal, mut inputs) = load_ideal(args)?;
    let mut human = header(&name, &ideal);
    let mut counts = (None, None);
    let mut bracket_value = Value::Null;
    let s = match (s, from_bracket) {
        (Some(s), _) => s,
        (None, true) => {
            inputs.parameters.insert("pmax".into(), json!(bracket.pmax));
            inputs.parameters.insert("tol".into(), json!(bracket.tol.to_string()));
            let (b, computed, hits) = compute_bracket(&ideal, bracket, limits)?;
            counts = (Some(computed), Some(hits));
            human += &bracket_text(&ideal, &b, bracket.tol);
            bracket_value = bracket_json(&ideal, &b, bracket.tol);
            b.upper
        }
        (None, false) => return Err(CliError::Usage("bezout needs --s or --from-bracket".into())),
    };
    inputs.parameters.insert("s".into(), json!(s.to_string()));
    let r = bezout_check(&ideal, s)?;
    let ring = ideal.ring();
    let results = json!({
        "s": ExactRational::from(r.s_used),
        "lhs": ExactRational::from(r.lhs),
        "rhs": ExactRational::from(r.rhs),
        "satisfied": r.satisfied,
        "terms": r.terms.iter().map(|(c, d)| json!({"coefficient": c, "center_dimension": d})).collect::<Vec<_>>(),
        "excluded": r.excluded.iter().map(|v| json!({"normal": v.normal, "coefficient": v.coefficient, "center": var_names(ring, &v.center)})).collect::<Vec<_>>(),
        "r_sheaf": r.r_sheaf,
        "corollary_bound": ExactRational::from(r.corollary_bound),
        "corollary_satisfied": r.corollary_satisfied,
        "bracket": bracket_value,
    });
    let verdict = |b: bool| if b { "holds" } else { "fails" };
    let _ = writeln!(human, "s = {}", r.s_used);
    let _ = writeln!(human, "sum r_i s^dim Z_i = {} <= s^n = {}: {}", r.lhs, r.rhs, verdict(r.satisfied));
    let _ =
        writeln!(human, "r = {} <= max(1, s)^n = {}: {}", r.r_sheaf, r.corollary_bound, verdict(r.corollary_satisfied));
    if !r.excluded.is_empty() {
        let _ = writeln!(human, "{} valuation(s) centered on the irrelevant locus excluded", r.excluded.len());
    }
    Ok(Outcome { powers_computed: counts.0, powers_from_cache: counts.1, ..Outcome::new(inputs, results, human) })
}

fn props(
    file: &Path,
    first: Option<&str>,
    second: Option<&str>,
    pmax: u32,
    tol: Rational,
    limits: &Limits,
) -> Result<Outcome> {
    let doc = load_document(file)?;
    let a = doc.select(first)?;
    let b = match second {
        Some(n) => doc.select(Some(n))?,
        None => doc
            .ideals
            .iter()
            .find(|i| i.name != a.name)
            .ok_or_else(|| CliError::Usage("props needs two ideals".into()))?,
    };
    let inputs = Inputs {
        file: Some(file.display().to_string()),
        ring: doc.ring.variable_names().to_vec(),
        ideals: vec![input_ideal(&a.name, &a.ideal), input_ideal(&b.name, &b.ideal)],
        parameters: BTreeMap::from([("pmax".into(), json!(pmax)), ("tol".into(), json!(tol.to_string()))]),
    };
    let r = property_checks(&a.ideal, &b.ideal, pmax, tol, limits)?;
    let product = a.ideal.product(&b.ideal)?;
    let sum = a.ideal.sum(&b.ideal)?;
    let ca = integral_closure(&a.ideal)?;
    let cb = integral_closure(&b.ideal)?;
    let results = json!({
        "first": bracket_json(&a.ideal, &r.first, tol),
        "second": bracket_json(&b.ideal, &r.second, tol),
        "product": bracket_json(&product, &r.product, tol),
        "sum": r.sum.as_ref().map(|s| bracket_json(&sum, s, tol)),
        "first_closure": bracket_json(&ca, &r.first_closure, tol),
        "second_closure": bracket_json(&cb, &r.second_closure, tol),
        "product_holds": r.product_holds,
        "sum_holds": r.sum_holds,
        "closure_overlaps": r.closure_overlaps,
    });
    let mut human = header(&a.name, &a.ideal) + &header(&b.name, &b.ideal);
    let row = |label: &str, br: &SBracket| format!("{label:<16} [{}, {}]\n", br.lower, br.upper);
    human += &row(&a.name, &r.first);
    human += &row(&b.name, &r.second);
    human += &row("product", &r.product);
    match &r.sum {
        Some(s) => human += &row("sum", s),
        None => human += "sum              unit sheaf\n",
    }
    human += &row(&format!("closure of {}", a.name), &r.first_closure);
    human += &row(&format!("closure of {}", b.name), &r.second_closure);
    let verdict = |b: bool| if b { "holds" } else { "fails" };
    let _ = writeln!(human, "product bound:   {}", verdict(r.product_holds));
    let _ = writeln!(human, "sum bound:       {}", r.sum_holds.map_or("n/a", verdict));
    let _ = writeln!(human, "closure overlap: {}", verdict(r.closure_overlaps));
    Ok(Outcome::new(inputs, results, human))
}

fn surface(file: &Path, h: &str, c: &str, rescale_up_to: Option<u32>) -> Result<Outcome> {
    let doc = parse_lattice_file(&file.display().to_string(), &read_file(file)?)?;
    let h_class = doc.class(h)?;
    let c_class = doc.class(c)?;
    let s = s_invariant_divisorial(&doc.lattice, h_class, c_class)?;
    let nef = nef_at(&doc.lattice, h_class, c_class, &s.value)?;
    let below = if s.nef_at_zero {
        None
    } else {
        Some(nef_at(&doc.lattice, h_class, c_class, &s.value.add_rational(-Rational::new(1, 1_000_000)))?)
    };
    let mut rescale = Vec::new();
    if let Some(n) = rescale_up_to {
        for a in 1..=n.max(1) {
            for b in 0..=n {
                let r = rescale_check(&doc.lattice, h_class, c_class, a, b)?;
                rescale.push((a, b, r));
            }
        }
    }
    let inputs = Inputs {
        file: Some(file.display().to_string()),
        parameters: BTreeMap::from([
            ("H".into(), json!(h)),
            ("C".into(), json!(c)),
            ("rescale_up_to".into(), json!(rescale_up_to)),
        ]),
        ..Inputs::default()
    };
    let results = json!({
        "s": ExactQuadratic::from(&s.value),
        "rational": s.value.is_rational(),
        "discriminant": ExactRational::from(s.discriminant),
        "nef_at_zero": s.nef_at_zero,
        "nef_at_s": nef,
        "nef_just_below_s": below,
        "rescale": rescale.iter().map(|(a, b, r)| json!({
            "a": a, "b": b, "holds": r.holds,
            "rescaled": ExactQuadratic::from(&r.rescaled),
            "expected": ExactQuadratic::from(&r.expected),
        })).collect::<Vec<_>>(),
    });
    let mut human = String::new();
    let _ = writeln!(human, "s = {} ~ {:.6}", s.value, s.value.approximate(f64::sqrt));
    let _ = writeln!(
        human,
        "discriminant {} ({})",
        s.discriminant,
        if s.value.is_rational() { "rational" } else { "irrational" }
    );
    if s.nef_at_zero {
        let _ = writeln!(human, "-C is already nef");
    }
    let _ = writeln!(human, "sH - C nef at s: {nef}");
    if let Some(b) = below {
        let _ = writeln!(human, "sH - C nef at s - 1e-6: {b}");
    }
    if !rescale.is_empty() {
        let failed = rescale.iter().filter(|(_, _, r)| !r.holds).count();
        let _ = writeln!(human, "rescaling: {} pairs checked, {failed} failures", rescale.len());
    }
    Ok(Outcome::new(inputs, results, human))
}

struct FamilyRow {
    d: u32,
    ideal: MonomialIdeal,
    lower: Rational,
    upper: Option<Rational>,
    adeg: u64,
    regularity: i64,
    nilpotency: u64,
}

fn pathology((from, to): (u32, u32), pmax: Option<u32>, limits: &Limits) -> Result<Outcome> {
    let ring = Ring::new(["x", "y", "z", "w"])?;
    let rows: Vec<Result<FamilyRow>> = (from..=to)
        .into_par_iter()
        .map(|d| -> Result<FamilyRow> {
            let ideal = pathology_ideal(&ring, d)?;
            let lower = curve_lower_bound(&ideal, None)?.bound;
            let upper = match pmax {
                Some(p) => Some(s_bracket_with(&ideal, p, Rational::new(1, 100), limits, &BTreeMap::new())?.upper),
                None => None,
            };
            Ok(FamilyRow {
                d,
                lower,
                upper,
                adeg: adeg_profile(&ideal)?.get(3),
                regularity: regularity(&ideal, limits)?.regularity,
                nilpotency: nilpotency_index(&ideal, 0, limits)?.index,
                ideal,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let inputs = Inputs {
        ring: ring.variable_names().to_vec(),
        parameters: BTreeMap::from([("d_range".into(), json!([from, to])), ("pmax".into(), json!(pmax))]),
        ..Inputs::default()
    };
    let results = json!({
        "rows": rows.iter().map(|r| json!({
            "d": r.d,
            "generators": report::generators(&r.ideal),
            "s_lower": ExactRational::from(r.lower),
            "s_upper": r.upper.map(ExactRational::from),
            "adeg3": r.adeg,
            "regularity": r.regularity,
            "nilpotency": r.nilpotency,
        })).collect::<Vec<_>>(),
    });
    let mut human = String::from(" d  s-lower  s-upper  adeg3  reg  nilp  ideal\n");
    for r in &rows {
        let upper = r.upper.map_or("-".to_string(), |u| u.to_string());
        let _ = writeln!(
            human,
            "{:>2}  {:>7}  {:>7}  {:>5}  {:>3}  {:>4}  {}",
            r.d,
            r.lower.to_string(),
            upper,
            r.adeg,
            r.regularity,
            r.nilpotency,
            show(&r.ideal)
        );
    }
    Ok(Outcome::new(inputs, results, human))
}
