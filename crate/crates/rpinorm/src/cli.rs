//! Batch command-line driver: norm evaluation, spectra, reconstruction,
//! comparison, and self-verification over JSON/CSV documents.
//!
//! Exit codes: 0 success, 1 invalid input or domain error, 2 capacity or
//! numerical failure. Payload goes to stdout; errors go to stderr as one
//! JSON object per failure. Identical inputs (and seed, where one
//! applies) produce byte-identical output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::norms::{
    lambda_weights, ln_weights, s_weights, sn_perturbed_weights, sn_weights,
    standard_catalog, standard_norm, standard_norm_weights, sup_norm, tail_seminorm,
    tv_norm, weights_of, Classic, WeightSequence,
};
use crate::norms::range_norm;
use crate::oracle::{brute_force_norm, DEFAULT_ENUMERATION_CAP};
use crate::profiles::{
    add, apply_reparam, canonicalize, l_of, separation_margin, star_values,
    total_variation, CriticalProfile, PiecewiseLinearFunction,
};
use crate::pseudodist::{sandwich, DEFAULT_REFINEMENT};
use crate::reconstruct::{
    reconstruct, ProfileOracle, ReconstructionConfig, verify_reconstruction,
};
use crate::sampling::CorpusSampler;
use crate::{Error, Result, DEFAULT_TOL};

/// Name of the environment variable that overrides the default tolerance.
pub const TOL_ENV_VAR: &str = "RPINORM_TOL";

#[derive(Parser)]
#[command(
    name = "rpinorm",
    version,
    about = "Reparametrization invariant norms of piecewise monotone functions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a norm of a function
    Norm(NormArgs),
    /// Emit the S_n or L_n norm sequence
    Spectrum(SpectrumArgs),
    /// Recover a profile from norm queries alone and verify the result
    Reconstruct(ReconstructArgs),
    /// Bound the natural pseudo-distance between two functions
    Compare(CompareArgs),
    /// Run the seeded invariant battery against a function
    Verify(VerifyArgs),
    /// List the named norm catalog with its defining weights
    Catalog,
}

#[derive(Args)]
struct NormArgs {
    /// Function document (JSON)
    #[arg(long)]
    phi: PathBuf,
    /// Norming document (JSON): a function or a norm descriptor
    #[arg(long)]
    psi: Option<PathBuf>,
    /// Named norm: S, Lambda, S_n, L_n, S_n_e, sup, range, tv, tail, asym
    #[arg(long)]
    named: Option<String>,
    /// Index for the S_n, L_n, and S_n_e families
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated perturbation entries for S_n_e
    #[arg(long)]
    e: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "S")]
    S,
    #[value(name = "L")]
    L,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Function document (JSON)
    #[arg(long)]
    phi: PathBuf,
    /// Norm family to sweep
    #[arg(long, value_enum)]
    family: Family,
    /// Largest family index to evaluate
    #[arg(long = "max-n")]
    max_n: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Function document (JSON); treated as the hidden input
    #[arg(long)]
    phi: PathBuf,
    /// Relative tolerance for stabilization and derivative acceptance
    #[arg(long)]
    tol: Option<f64>,
    /// Extra stabilization confirmation steps beyond the default two
    #[arg(long, default_value_t = 0)]
    paranoid: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// First function document (JSON)
    #[arg(long)]
    phi: PathBuf,
    /// Second function document (JSON)
    #[arg(long)]
    psi: PathBuf,
    /// Station refinement for the coupling upper bound
    #[arg(long, default_value_t = DEFAULT_REFINEMENT)]
    refine: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Function document (JSON) the battery is anchored on
    #[arg(long)]
    phi: PathBuf,
    /// Seed for the random partners
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parses arguments, runs one command, prints the payload or the error,
/// and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp
                    | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let err = Error::InvalidInput(e.to_string());
            eprintln!("{}", error_json(&err));
            return err.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(payload) => {
            println!("{payload}");
            0
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            e.exit_code()
        }
    }
}

fn error_json(e: &Error) -> String {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}}).to_string()
}

fn dispatch(command: Command) -> Result<String> {
    match command {
        Command::Norm(args) => cmd_norm(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Reconstruct(args) => cmd_reconstruct(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Catalog => cmd_catalog(),
    }
}

// ---------------------------------------------------------------------------
// Documents.

#[derive(Deserialize)]
struct FunctionDoc {
    function: FunctionBody,
}

#[derive(Deserialize)]
#[serde(tag = "format", rename_all = "lowercase", deny_unknown_fields)]
enum FunctionBody {
    Breakpoints { points: Vec<(f64, f64)> },
    Profile { values: Vec<f64> },
}

#[derive(Deserialize)]
struct NormDoc {
    norm: NormBody,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum NormBody {
    Weights {
        weights: Vec<f64>,
    },
    Named {
        name: String,
        n: Option<usize>,
        e: Option<Vec<f64>>,
    },
    Classic {
        name: String,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Loads a function document and canonicalizes it to its profile.
fn load_profile(path: &Path) -> Result<CriticalProfile> {
    let doc: FunctionDoc = read_json(path)?;
    match doc.function {
        FunctionBody::Breakpoints { points } => {
            Ok(canonicalize(&PiecewiseLinearFunction::new(points)?))
        }
        FunctionBody::Profile { values } => CriticalProfile::reduce(values),
    }
}

/// A norm the CLI can evaluate on a profile.
enum ResolvedNorm {
    Weights(WeightSequence),
    Classic(Classic),
}

impl ResolvedNorm {
    fn evaluate(&self, p: &CriticalProfile) -> f64 {
        match self {
            ResolvedNorm::Weights(w) => standard_norm_weights(p, w),
            ResolvedNorm::Classic(c) => c.evaluate(p),
        }
    }
}

fn classic_by_name(name: &str) -> Option<Classic> {
    match name {
        "sup" => Some(Classic::Sup),
        "range" => Some(Classic::Range),
        "tv" => Some(Classic::Tv),
        "tail" => Some(Classic::Tail),
        "asym" => Some(Classic::Asym),
        _ => None,
    }
}

fn resolve_named(name: &str, n: Option<usize>, e: Option<Vec<f64>>) -> Result<ResolvedNorm> {
    let need_n = |n: Option<usize>| {
        n.ok_or_else(|| {
            Error::InvalidInput(format!("the {name} family needs an index n"))
        })
    };
    let weights = match name {
        "S" => s_weights(),
        "Lambda" => lambda_weights(),
        "S_n" => sn_weights(need_n(n)?)?,
        "L_n" => ln_weights(need_n(n)?)?,
        "S_n_e" => {
            let n = need_n(n)?;
            let e = e.ok_or_else(|| {
                Error::InvalidInput("S_n_e needs a perturbation vector e".into())
            })?;
            sn_perturbed_weights(n, &e)?
        }
        other => {
            return classic_by_name(other).map(ResolvedNorm::Classic).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown norm name {other:?}; expected S, Lambda, S_n, L_n, \
                     S_n_e, sup, range, tv, tail, or asym"
                ))
            })
        }
    };
    Ok(ResolvedNorm::Weights(weights))
}

/// Resolves a `--psi` file, which may hold either a function document
/// (norming profile) or a norm descriptor.
fn resolve_psi_file(path: &Path) -> Result<ResolvedNorm> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("function").is_some() {
        let doc: FunctionDoc = serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let profile = match doc.function {
            FunctionBody::Breakpoints { points } => {
                canonicalize(&PiecewiseLinearFunction::new(points)?)
            }
            FunctionBody::Profile { values } => CriticalProfile::reduce(values)?,
        };
        if profile.is_zero() {
            return Err(Error::InvalidInput(
                "psi must be nonzero: the zero profile does not induce a norm".into(),
            ));
        }
        return Ok(ResolvedNorm::Weights(weights_of(&profile)?));
    }
    if value.get("norm").is_some() {
        let doc: NormDoc = serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        return match doc.norm {
            NormBody::Weights { weights } => {
                Ok(ResolvedNorm::Weights(WeightSequence::new(weights)?))
            }
            NormBody::Named { name, n, e } => resolve_named(&name, n, e),
            NormBody::Classic { name } => {
                classic_by_name(&name).map(ResolvedNorm::Classic).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "unknown classic norm {name:?}; expected sup, range, tv, \
                         tail, or asym"
                    ))
                })
            }
        };
    }
    Err(Error::InvalidInput(format!(
        "{}: document must contain a \"function\" or \"norm\" object",
        path.display()
    )))
}

fn parse_csv_floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!("cannot parse {s:?} as a number"))
            })
        })
        .collect()
}

fn effective_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV_VAR) {
            Ok(text) => text.trim().parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!(
                    "{TOL_ENV_VAR}={text:?} is not a number"
                ))
            })?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(tol)
}

// ---------------------------------------------------------------------------
// Commands.

fn cmd_norm(args: NormArgs) -> Result<String> {
    let phi = load_profile(&args.phi)?;
    let resolved = match (&args.psi, &args.named) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(Error::InvalidInput(
                "provide exactly one of --psi and --named".into(),
            ))
        }
        (Some(path), None) => resolve_psi_file(path)?,
        (None, Some(name)) => {
            let e = args.e.as_deref().map(parse_csv_floats).transpose()?;
            resolve_named(name, args.n, e)?
        }
    };
    Ok(json!({"value": resolved.evaluate(&phi)}).to_string())
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<String> {
    if args.max_n == 0 {
        return Err(Error::InvalidInput("--max-n must be at least 1".into()));
    }
    let phi = load_profile(&args.phi)?;
    let values: Vec<f64> = (1..=args.max_n)
        .map(|n| {
            let weights = match args.family {
                Family::S => sn_weights(n)?,
                Family::L => ln_weights(n)?,
            };
            Ok(standard_norm_weights(&phi, &weights))
        })
        .collect::<Result<_>>()?;
    match args.format {
        OutputFormat::Csv => {
            let mut out = String::from("n,value");
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("\n{},{v}", i + 1));
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let family = match args.family {
                Family::S => "S",
                Family::L => "L",
            };
            Ok(json!({"family": family, "values": values}).to_string())
        }
    }
}

fn cmd_reconstruct(args: ReconstructArgs) -> Result<String> {
    let hidden = load_profile(&args.phi)?;
    let oracle = ProfileOracle::new(hidden.clone())?;
    let config = ReconstructionConfig {
        tol: effective_tol(args.tol)?,
        paranoid: args.paranoid,
        ..Default::default()
    };
    let report = reconstruct(&oracle, &config)?;
    let verification_error = verify_reconstruction(&hidden, &report.profile);
    let diagnostics: Vec<serde_json::Value> = report
        .diagnostics
        .iter()
        .map(|d| {
            json!({
                "name": d.name,
                "expected": d.expected,
                "actual": d.actual,
                "pass": d.pass,
            })
        })
        .collect();
    Ok(json!({
        "profile": report.profile.values(),
        "l": report.l,
        "spectrum": report.spectrum,
        "derivatives": report.derivatives,
        "oracle_calls": report.oracle_calls,
        "epsilon_used": report.epsilon_used,
        "sign_ambiguous": report.sign_ambiguous,
        "match": verification_error <= 1e-6,
        "verification_error": verification_error,
        "diagnostics": diagnostics,
    })
    .to_string())
}

fn cmd_compare(args: CompareArgs) -> Result<String> {
    let phi = load_profile(&args.phi)?;
    let psi = load_profile(&args.psi)?;
    let s = sandwich(&phi, &psi, args.refine, &standard_catalog())?;
    Ok(json!({
        "lower": s.lower,
        "upper": s.upper,
        "refinement": s.refinement,
        "witness_psi": s.witness_psi,
    })
    .to_string())
}

fn cmd_catalog() -> Result<String> {
    let entries: Vec<serde_json::Value> = standard_catalog()
        .iter()
        .map(|(name, w)| {
            json!({"name": name, "weights": w.weights(), "variation": w.variation()})
        })
        .collect();
    Ok(json!({"catalog": entries}).to_string())
}

// ---------------------------------------------------------------------------
// Verify battery.

struct Battery {
    sampler: CorpusSampler,
    checks: Vec<serde_json::Value>,
}

impl Battery {
    fn record(&mut self, name: &'static str, cases: usize) {
        self.checks.push(json!({"name": name, "cases": cases, "pass": true}));
    }

    fn fail(name: &'static str, case: usize, detail: String) -> Error {
        Error::Numerical(format!(
            "invariant {name:?} violated on case {case}: {detail}"
        ))
    }
}

fn approx(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn cmd_verify(args: VerifyArgs) -> Result<String> {
    let phi = load_profile(&args.phi)?;
    let mut b = Battery { sampler: CorpusSampler::new(args.seed), checks: Vec::new() };

    // The anchored function leads every suite it is eligible for; seeded
    // partners fill the remaining cases.
    let anchored = |b: &mut Battery, i: usize, max_interior: usize| {
        if i == 0 {
            phi.clone()
        } else {
            b.sampler.profile(max_interior)
        }
    };

    let cases = 32;
    for i in 0..cases {
        let p = anchored(&mut b, i, 6);
        let s = standard_norm_weights(&p, &s_weights());
        let lam = standard_norm_weights(&p, &lambda_weights());
        if !approx(s, sup_norm(&p)) || !approx(lam, range_norm(&p)) {
            return Err(Battery::fail(
                "closed_forms",
                i,
                format!("S -> {s} vs sup {}; Lambda -> {lam} vs range {}",
                    sup_norm(&p), range_norm(&p)),
            ));
        }
    }
    b.record("closed_forms", cases);

    for i in 0..cases {
        let p = anchored(&mut b, i, 6);
        let q = b.sampler.profile(6);
        let pq = standard_norm(&p, &q)?;
        let qp = standard_norm(&q, &p);
        match qp {
            Ok(qp) if approx(pq, qp) => {}
            Ok(qp) => {
                return Err(Battery::fail("exchange", i, format!("{pq} vs {qp}")))
            }
            // The anchored profile may be zero; exchange only speaks of
            // nonzero pairs.
            Err(_) if p.is_zero() => {}
            Err(e) => return Err(e),
        }
    }
    b.record("exchange", cases);

    let cases = 16;
    for i in 0..cases {
        let p = anchored(&mut b, i, 4);
        let w = b.sampler.weights(3);
        let candidates = star_values(&p);
        let brute = brute_force_norm(&candidates, &w, DEFAULT_ENUMERATION_CAP)?;
        let dp = standard_norm_weights(&p, &w);
        if !approx(brute, dp) {
            return Err(Battery::fail(
                "dp_matches_enumeration",
                i,
                format!("enumeration {brute} vs dp {dp}"),
            ));
        }
    }
    b.record("dp_matches_enumeration", cases);

    for i in 0..cases {
        let p = anchored(&mut b, i, 6);
        let f = b.sampler.realize(&p);
        let h = b.sampler.reparam();
        let g = canonicalize(&apply_reparam(&f, &h));
        let w = b.sampler.weights(4);
        let before = standard_norm_weights(&p, &w);
        let after = standard_norm_weights(&g, &w);
        if !approx(before, after) {
            return Err(Battery::fail(
                "reparametrization_invariance",
                i,
                format!("{before} vs {after} after reparametrization"),
            ));
        }
    }
    b.record("reparametrization_invariance", cases);

    let mut stabilization_cases = 0;
    for i in 0..cases {
        let p = anchored(&mut b, i, 6);
        if !p.is_compact() || p.is_zero() {
            continue;
        }
        stabilization_cases += 1;
        let l = l_of(&p);
        let half_v = total_variation(&p) / 2.0;
        for n in l..=l + 2 {
            let s_n = standard_norm_weights(&p, &sn_weights(n)?);
            if !approx(s_n, half_v) {
                return Err(Battery::fail(
                    "sn_stabilization",
                    i,
                    format!("S_{n} = {s_n}, expected {half_v}"),
                ));
            }
        }
        if l >= 2 {
            let below = standard_norm_weights(&p, &sn_weights(l - 1)?);
            if below > half_v - separation_margin(&p) + 1e-9 {
                return Err(Battery::fail(
                    "sn_stabilization",
                    i,
                    format!("S_{} = {below} too close to {half_v}", l - 1),
                ));
            }
        }
    }
    b.record("sn_stabilization", stabilization_cases);

    let mut bounding_cases = 0;
    for i in 0..cases {
        let p = anchored(&mut b, i, 6);
        let q = b.sampler.profile(6);
        if p.is_zero() {
            continue;
        }
        bounding_cases += 1;
        let norm = standard_norm(&p, &q)?;
        let slack = 1e-9 * norm.abs().max(1.0);
        let coarse_low = tail_seminorm(&p) * sup_norm(&q);
        let coarse_high = tv_norm(&p) * sup_norm(&q);
        if norm < coarse_low - slack || norm > coarse_high + slack {
            return Err(Battery::fail(
                "bounding_lemmas",
                i,
                format!("{norm} outside [{coarse_low}, {coarse_high}]"),
            ));
        }
        if p.is_compact() {
            let tight_low = sup_norm(&p) * range_norm(&q);
            let tight_high = 0.5 * tv_norm(&p) * range_norm(&q);
            if norm < tight_low - slack || norm > tight_high + slack {
                return Err(Battery::fail(
                    "bounding_lemmas",
                    i,
                    format!("{norm} outside compact bounds [{tight_low}, {tight_high}]"),
                ));
            }
        }
    }
    b.record("bounding_lemmas", bounding_cases);

    for i in 0..cases {
        let p = anchored(&mut b, i, 5);
        let q = b.sampler.profile(5);
        let f = b.sampler.realize(&p);
        let g = b.sampler.realize(&q);
        let sum = canonicalize(&add(&f, &g));
        let w = b.sampler.weights(4);
        let lhs = standard_norm_weights(&sum, &w);
        let rhs = standard_norm_weights(&p, &w) + standard_norm_weights(&q, &w);
        if lhs > rhs + 1e-9 * rhs.abs().max(1.0) {
            return Err(Battery::fail(
                "triangle_inequality",
                i,
                format!("{lhs} > {rhs}"),
            ));
        }
    }
    b.record("triangle_inequality", cases);

    let catalog = standard_catalog();
    for i in 0..cases {
        let p = anchored(&mut b, i, 5);
        let q = b.sampler.profile(5);
        let s = sandwich(&p, &q, 64, &catalog)?;
        if s.lower > s.upper + 1e-9 {
            return Err(Battery::fail(
                "sandwich_order",
                i,
                format!("lower {} above upper {}", s.lower, s.upper),
            ));
        }
    }
    b.record("sandwich_order", cases);

    Ok(json!({
        "seed": args.seed,
        "profile": phi.values(),
        "checks": b.checks,
        "all_pass": true,
    })
    .to_string())
}
