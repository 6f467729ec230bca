//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code together with the report text.
//!
//! Exit codes: 0 success, 1 usage, input or parse errors, 2 violated
//! hypotheses (the message names the hypothesis), 3 enumeration budget
//! exhausted.

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sumrank_core::bounds::{self, best_bound_of_kind, code_grid, verify_certificate};
use sumrank_core::product::{
    cyclic_code, product_bound, product_defining_set, skew_cyclic_code, tensor_code,
};
use sumrank_core::{
    build_tower, BoundKind, BoundParams, Error, Level, Metric, SearchLimits, SkewPoly, TowerRef,
    DEFAULT_BUDGET,
};

use crate::json::{code_id, kind_name, CertificateJson, CodeJson, ParamsJson, TowerJson};
use crate::lemmas::sample_lemmas;
use crate::oracle;
use crate::report::{render_text, RunReport};
use crate::spec::{parse_code_spec, BuiltCode, SpecError};
use crate::text::format_skew;

/// Default seed for randomized commands.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "sumrank", version, about = "Cyclic-skew-cyclic sum-rank codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Largest number of codewords a distance computation may enumerate.
    #[arg(long, env = "SUMRANK_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    /// Worker threads for distance enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Hamming,
    Rank,
    Sumrank,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Hamming => Metric::Hamming,
            MetricArg::Rank => Metric::Rank,
            MetricArg::Sumrank => Metric::SumRank,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct TowerArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e_deg: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    h: u32,
    #[arg(long)]
    ell: u32,
    #[arg(long = "N")]
    block_len: u32,
    #[arg(long, default_value_t = 1)]
    sigma_power: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a tower and print its description.
    Tower(TowerArgs),
    /// Code construction.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Exact minimum distance by enumeration.
    Distance {
        #[arg(long)]
        code: String,
        #[arg(long, value_enum, default_value_t = MetricArg::Sumrank)]
        metric: MetricArg,
    },
    /// Check one bound instance against the defining set.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Best certified bound over all three families.
    Search {
        #[arg(long)]
        code: String,
        #[arg(long)]
        max_bound: Option<usize>,
        #[arg(long)]
        max_delta: Option<usize>,
        #[arg(long)]
        max_r: Option<usize>,
        #[arg(long)]
        max_b: Option<i64>,
    },
    /// Product of a cyclic and a skew-cyclic code: distances and product bounds.
    Product {
        /// Spec carrying `f1` (the cyclic factor).
        #[arg(long, requires = "c2", conflicts_with = "code")]
        c1: Option<String>,
        /// Spec carrying `f2` (the skew-cyclic factor).
        #[arg(long, requires = "c1", conflicts_with = "code")]
        c2: Option<String>,
        /// One spec carrying both `f1` and `f2`.
        #[arg(long)]
        code: Option<String>,
    },
    /// Re-check a certificate from scratch.
    Verify {
        #[arg(long)]
        code: String,
        #[arg(long)]
        cert: String,
    },
    /// Sample the rank lemmas on random admissible selections.
    Lemmas {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Construct a code from a spec file.
    Build {
        #[arg(long)]
        code: String,
    },
}

#[derive(Subcommand, Debug)]
enum CertifyCommand {
    Bch {
        #[arg(long)]
        code: String,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        delta: usize,
    },
    Ht {
        #[arg(long)]
        code: String,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        t1: i64,
        #[arg(long)]
        t2: i64,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        r: usize,
    },
    Roos {
        #[arg(long)]
        code: String,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        delta: usize,
        /// Shifts `k_0 < … < k_r`, repeated or comma separated.
        #[arg(
            long = "k",
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        ks: Vec<i64>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            kind: "input",
            message: message.into(),
        }
    }

    fn violated(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            kind: "precondition",
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Self {
                code: 3,
                kind: "budget",
                message: e.to_string(),
            },
            _ => Self::violated(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e.core() {
            Some(core) => {
                let mut err = CliError::from(core.clone());
                err.message = e.to_string();
                err
            }
            None => Self {
                code: 1,
                kind: "parse",
                message: e.to_string(),
            },
        }
    }
}

/// Exit code and everything to print on standard output.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome {
                code,
                stdout: e.render().to_string(),
            };
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let result = execute(&cli);
    let mut report = RunReport::new(name);
    let code = match result {
        Ok(v) => {
            report.result = Some(v);
            0
        }
        Err(e) => {
            report.error = Some(json!({ "kind": e.kind, "message": e.message }));
            e.code
        }
    };
    report.timings.total_ms = started.elapsed().as_secs_f64() * 1e3;
    let stdout = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => render_text(&serde_json::to_value(&report).expect("serializable")),
    };
    Outcome { code, stdout }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Tower(_) => "tower".into(),
        Command::Code(CodeCommand::Build { .. }) => "code build".into(),
        Command::Distance { .. } => "distance".into(),
        Command::Certify(k) => format!(
            "certify {}",
            match k {
                CertifyCommand::Bch { .. } => "bch",
                CertifyCommand::Ht { .. } => "ht",
                CertifyCommand::Roos { .. } => "roos",
            }
        ),
        Command::Search { .. } => "search".into(),
        Command::Product { .. } => "product".into(),
        Command::Verify { .. } => "verify".into(),
        Command::Lemmas { .. } => "lemmas".into(),
    }
}

fn load(path: &str) -> Result<BuiltCode, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    let spec = parse_code_spec(&text).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{path}: {}", err.message);
        err
    })?;
    Ok(spec.build()?)
}

fn tower_from(args: &TowerArgs) -> Result<TowerRef, CliError> {
    let t = build_tower(args.p, args.e_deg, args.m, args.h, args.ell, args.block_len)?
        .with_sigma_power(args.sigma_power)?;
    Ok(std::sync::Arc::new(t))
}

fn canonical_grid(code: &sumrank_core::LinearCode) -> Result<bounds::Grid, CliError> {
    let t = code.tower();
    Ok(code_grid(
        code,
        t.ell_root_in_l(),
        t.find_normal_element().value,
    )?)
}

fn execute(cli: &Cli) -> Result<Value, CliError> {
    let threads = cli.threads.unwrap_or_else(oracle::default_threads);
    let to_value = |v: &dyn erased::Ser| v.value();
    match &cli.command {
        Command::Tower(args) => Ok(to_value(&TowerJson::describe(&tower_from(args)?))),
        Command::Code(CodeCommand::Build { code }) => {
            let built = load(code)?;
            Ok(to_value(&CodeJson::describe(
                &built.code,
                built.generator.as_ref(),
            )))
        }
        Command::Distance { code, metric } => {
            let built = load(code)?;
            let d = oracle::min_distance(&built.code, (*metric).into(), cli.budget, threads)?;
            Ok(json!({
                "code_id": code_id(&built.code),
                "metric": format!("{metric:?}").to_lowercase(),
                "n": built.code.len(),
                "k": built.code.dim(),
                "d": d,
            }))
        }
        Command::Certify(kind) => {
            let (path, params) = match kind {
                CertifyCommand::Bch { code, b, t, delta } => (
                    code,
                    BoundParams::Bch {
                        b: *b,
                        t: *t,
                        delta: *delta,
                    },
                ),
                CertifyCommand::Ht {
                    code,
                    b,
                    t1,
                    t2,
                    delta,
                    r,
                } => (
                    code,
                    BoundParams::Ht {
                        b: *b,
                        t1: *t1,
                        t2: *t2,
                        delta: *delta,
                        r: *r,
                    },
                ),
                CertifyCommand::Roos {
                    code,
                    b,
                    s,
                    delta,
                    ks,
                } => (
                    code,
                    BoundParams::Roos {
                        b: *b,
                        s: *s,
                        delta: *delta,
                        ks: ks.clone(),
                    },
                ),
            };
            let built = load(path)?;
            let grid = canonical_grid(&built.code)?;
            let cert = bounds::check(built.code.tower(), &grid, &params, params.kind())?;
            Ok(to_value(&CertificateJson::describe(&cert, &built.code)))
        }
        Command::Search {
            code,
            max_bound,
            max_delta,
            max_r,
            max_b,
        } => {
            let built = load(code)?;
            let t = built.code.tower();
            let mut limits = SearchLimits::for_tower(t);
            limits.max_bound = max_bound.unwrap_or(limits.max_bound);
            limits.max_delta = max_delta.unwrap_or(limits.max_delta);
            limits.max_r = max_r.unwrap_or(limits.max_r);
            limits.max_b = max_b.unwrap_or(limits.max_b);
            let grid = canonical_grid(&built.code)?;
            let best = bounds::best_bound_search(t, &grid, &limits)?;
            let mut per_kind = serde_json::Map::new();
            for kind in [BoundKind::Bch, BoundKind::Ht, BoundKind::Roos] {
                let c = best_bound_of_kind(t, &grid, &limits, kind)?;
                per_kind.insert(
                    kind_name(kind).into(),
                    c.map_or(Value::Null, |c| {
                        to_value(&CertificateJson::describe(&c, &built.code))
                    }),
                );
            }
            Ok(json!({
                "best": to_value(&CertificateJson::describe(&best, &built.code)),
                "by_kind": per_kind,
            }))
        }
        Command::Product { c1, c2, code } => product(cli, threads, c1, c2, code),
        Command::Verify { code, cert } => {
            let built = load(code)?;
            let text =
                fs::read_to_string(cert).map_err(|e| CliError::input(format!("{cert}: {e}")))?;
            let cj =
                read_certificate(&text).map_err(|e| CliError::input(format!("{cert}: {e}")))?;
            let tower = cj.tower.build().map_err(CliError::violated)?;
            if *tower != **built.code.tower() {
                return Err(CliError::violated(
                    "certificate tower differs from the code's tower",
                ));
            }
            let id = code_id(&built.code);
            if cj.code_id != id {
                return Err(CliError::violated(format!(
                    "certificate is for code {}, spec gives code {id}",
                    cj.code_id
                )));
            }
            let certificate = cj.to_certificate().map_err(CliError::input)?;
            let grid = canonical_grid(&built.code)?;
            verify_certificate(&tower, &grid, &certificate)?;
            Ok(json!({ "valid": true, "kind": cj.kind, "bound": cj.bound, "code_id": id }))
        }
        Command::Lemmas { tower, samples } => {
            let t = tower_from(tower)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let results = sample_lemmas(&t, &mut rng, *samples)?;
            let failures: Vec<Value> = results
                .iter()
                .filter(|s| !s.holds())
                .map(|s| {
                    json!({
                        "selections": s.selection.selections,
                        "k": s.selection.ks,
                        "s": s.selection.s,
                        "b": s.selection.b,
                        "base_rank": s.base_rank,
                        "full_rank": s.full_rank,
                    })
                })
                .collect();
            Ok(json!({
                "seed": cli.seed,
                "samples": results.len(),
                "holds": failures.is_empty(),
                "failures": failures,
            }))
        }
    }
}

/// Accepts a bare certificate or a `certify` report carrying one.
fn read_certificate(text: &str) -> serde_json::Result<CertificateJson> {
    let mut v: Value = serde_json::from_str(text)?;
    if let Some(inner) = v.get_mut("result") {
        v = inner.take();
    }
    serde_json::from_value(v)
}

fn product(
    cli: &Cli,
    threads: usize,
    c1: &Option<String>,
    c2: &Option<String>,
    code: &Option<String>,
) -> Result<Value, CliError> {
    let (a, b) = match (c1, c2, code) {
        (Some(a), Some(b), None) => (load(a)?, load(b)?),
        (None, None, Some(c)) => {
            let c = load(c)?;
            (c.clone(), c)
        }
        _ => return Err(CliError::input("give --c1 and --c2, or --code")),
    };
    if **a.code.tower() != **b.code.tower() {
        return Err(Error::FieldMismatch.into());
    }
    let tower = a.code.tower().clone();
    if !a.is_factored() || !b.is_factored() {
        return Err(CliError::input("product specs need `f1` / `f2` generators"));
    }
    // an absent factor generator is 1
    let f1 = a.f1.unwrap_or_else(|| vec![sumrank_core::Elem::ONE]);
    let f2 =
        b.f2.unwrap_or_else(|| SkewPoly::one(tower.clone(), Level::F));
    let factor1 = cyclic_code(&tower, &f1)?;
    let factor2 = skew_cyclic_code(&f2)?;
    let pc = tensor_code(&factor1, &factor2)?;
    let d_h = oracle::min_distance(&factor1, Metric::Hamming, cli.budget, threads)?;
    let d_r = oracle::min_distance(&factor2, Metric::Rank, cli.budget, threads)?;
    let d_sr = oracle::min_distance(&pc.code, Metric::SumRank, cli.budget, threads)?;
    let a = tower.ell_root_in_l();
    let beta = tower.find_normal_element().value;
    let grid = product_defining_set(&tower, &f1, &f2, a, beta)?;
    let limits = SearchLimits::for_tower(&tower);
    let mut found = Vec::new();
    for kind in [BoundKind::Ht, BoundKind::Roos] {
        if let Some(c) = best_bound_of_kind(&tower, &grid, &limits, kind)? {
            let pb = product_bound(&tower, &f1, &f2, &c.params, d_h, d_r)?;
            found.push(json!({
                "kind": kind_name(kind),
                "params": ParamsJson::from_params(&pb.certificate.params),
                "bound": pb.certificate.bound,
                "dH_lower": pb.d_h_lower,
                "dR_lower": pb.d_r_lower,
            }));
        }
    }
    let f = tower.f();
    Ok(json!({
        "f1": crate::text::format_poly(f, &f1, 'x'),
        "f2": format_skew(&f2),
        "code_id": code_id(&pc.code),
        "k1": pc.k1(),
        "k2": pc.k2(),
        "dH": d_h,
        "dR": d_r,
        "dSR": d_sr,
        "bounds": found,
    }))
}

mod erased {
    use serde::Serialize;
    use serde_json::Value;

    /// Object-safe serialization to a JSON value.
    pub trait Ser {
        fn value(&self) -> Value;
    }

    impl<T: Serialize> Ser for T {
        fn value(&self) -> Value {
            serde_json::to_value(self).expect("serializable")
        }
    }
}
