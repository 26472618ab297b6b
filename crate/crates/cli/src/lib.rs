//! Request handling and report types behind the `hall` binary.

pub mod crosscheck;
pub mod settings;

use std::time::Instant;

use hall_core::arith::PrimeSet;
use hall_core::catalog::{group_order, prime_spectrum, CatalogError, GroupDescriptor};
use hall_core::constructions::{build_group, is_constructible, ConstructionError};
use hall_core::criteria::{decide_pair, decide_solvable_hall, CriteriaError, Decision, Verdict};
use hall_core::oracle::{hall_search, solvable_hall_exists, HallCertificate, OracleError, SearchOptions};
use hall_core::permgrp::PermGroup;
use serde::Serialize;
use thiserror::Error;

pub use settings::Settings;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid prime list `{text}`: {reason}")]
    Pi { text: String, reason: String },
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{0} has no permutation construction (supported: Alt:3..10, Sym:1..10, PSL+:2:q for prime 5 ≤ q ≤ 61)")]
    NotConstructible(String),
    #[error("need at least two primes of π dividing |{descriptor}|, found {sigma}")]
    TooFewPrimes { descriptor: String, sigma: PrimeSet },
    #[error("{path}: line {line}: {reason}")]
    Config { path: String, line: usize, reason: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for an exceeded budget, 3 for an internal contradiction, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Oracle(OracleError::Inconclusive { .. }) => 2,
            CliError::Oracle(OracleError::BiconditionalViolation(_))
            | CliError::Criteria(CriteriaError::InvariantViolation { .. } | CriteriaError::Contradiction { .. }) => 3,
            _ => 1,
        }
    }
}

pub fn parse_pi(text: &str) -> Result<PrimeSet, CliError> {
    let pi = PrimeSet::parse(text).map_err(|reason| CliError::Pi {
        text: text.to_string(),
        reason,
    })?;
    if pi.is_empty() {
        return Err(CliError::Pi {
            text: text.to_string(),
            reason: "empty".into(),
        });
    }
    Ok(pi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Engine,
    Oracle,
    Both,
    Pairs,
    Crosscheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRequest {
    pub descriptor: GroupDescriptor,
    pub pi: PrimeSet,
    pub mode: Mode,
    pub budget_ms: Option<u64>,
    pub threads: usize,
    pub max_enum: u64,
    pub max_degree: usize,
}

impl CheckRequest {
    pub fn new(descriptor: &str, pi: &str, mode: Mode, settings: &Settings) -> Result<Self, CliError> {
        let descriptor = GroupDescriptor::parse(descriptor)?;
        let pi = parse_pi(pi)?;
        if matches!(mode, Mode::Oracle | Mode::Both | Mode::Crosscheck) && !is_constructible(&descriptor) {
            return Err(CliError::NotConstructible(descriptor.to_string()));
        }
        Ok(Self {
            descriptor,
            pi,
            mode,
            budget_ms: settings.budget_ms,
            threads: settings.threads,
            max_enum: settings.limits.max_enum,
            max_degree: settings.limits.max_degree,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub certificate: HallCertificate,
    /// Whether some π-Hall subgroup is solvable.
    pub solvable_hall: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEntry {
    pub pair: PrimeSet,
    pub engine: Verdict,
    pub oracle: Option<HallCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairTable {
    pub entries: Vec<PairEntry>,
    /// Conjunction of the engine's pair verdicts.
    pub combined: Decision,
    /// Whether the oracle found a Hall subgroup for every pair.
    pub oracle_all_found: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Consistency {
    Consistent,
    Mismatch,
    NotComparable,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub engine_ms: f64,
    pub oracle_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub request: CheckRequest,
    pub engine: Option<Verdict>,
    pub oracle: Option<OracleReport>,
    pub pairs: Option<PairTable>,
    pub consistency: Consistency,
    pub timings: Timings,
}

impl CheckReport {
    /// 3 on a mismatch, 2 when nothing was decided, 0 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.consistency == Consistency::Mismatch {
            return 3;
        }
        let engine_unknown = match (&self.pairs, &self.engine) {
            (Some(table), _) => table.combined == Decision::Unknown,
            (None, Some(v)) => v.decision == Decision::Unknown,
            (None, None) => false,
        };
        let oracle_decided = self.oracle.is_some() || self.pairs.as_ref().is_some_and(|t| t.oracle_all_found.is_some());
        if engine_unknown && !oracle_decided {
            2
        } else {
            0
        }
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn compare(engine: Decision, oracle: bool) -> Consistency {
    match engine {
        Decision::Unknown => Consistency::NotComparable,
        d if (d == Decision::Yes) == oracle => Consistency::Consistent,
        _ => Consistency::Mismatch,
    }
}

pub fn oracle_report(g: &PermGroup, pi: &PrimeSet, opts: &SearchOptions) -> Result<OracleReport, CliError> {
    let certificate = hall_search(g, pi, opts)?;
    let solvable_hall = match &certificate.witness {
        None => false,
        Some(w) if w.solvable => true,
        Some(_) => solvable_hall_exists(g, pi, opts)?.exists,
    };
    Ok(OracleReport { certificate, solvable_hall })
}

/// Runs the engine, the oracle, or both, as the request's mode demands.
pub fn run_check(request: CheckRequest, settings: &Settings) -> Result<CheckReport, CliError> {
    let started = Instant::now();
    let mut timings = Timings::default();
    let d = &request.descriptor;
    let mut engine = None;
    let mut oracle = None;
    let mut pairs = None;
    match request.mode {
        Mode::Engine | Mode::Both => {
            let t = Instant::now();
            engine = Some(decide_solvable_hall(d, &request.pi)?);
            timings.engine_ms = millis(t);
        }
        _ => {}
    }
    match request.mode {
        Mode::Oracle | Mode::Both => {
            let t = Instant::now();
            let g = build_group(d, &settings.limits)?;
            oracle = Some(oracle_report(&g, &request.pi, &settings.search_options())?);
            timings.oracle_ms = millis(t);
        }
        Mode::Pairs => pairs = Some(pair_table(&request, settings, &mut timings)?),
        _ => {}
    }
    let consistency = match (&engine, &oracle, &pairs) {
        (Some(v), Some(o), _) => compare(v.decision, o.solvable_hall),
        (_, _, Some(table)) => table_consistency(table),
        _ => Consistency::NotComparable,
    };
    timings.total_ms = millis(started);
    Ok(CheckReport {
        schema_version: SCHEMA_VERSION,
        request,
        engine,
        oracle,
        pairs,
        consistency,
        timings,
    })
}

fn pair_table(request: &CheckRequest, settings: &Settings, timings: &mut Timings) -> Result<PairTable, CliError> {
    let d = &request.descriptor;
    let sigma = request.pi.intersection(&prime_spectrum(d)?);
    if sigma.len() < 2 {
        return Err(CliError::TooFewPrimes {
            descriptor: d.to_string(),
            sigma,
        });
    }
    let group = if is_constructible(d) {
        Some(build_group(d, &settings.limits)?)
    } else {
        None
    };
    let opts = settings.search_options();
    let mut entries = Vec::new();
    for pair in sigma.subsets(2, 2) {
        let ps: Vec<u64> = pair.iter().collect();
        let t = Instant::now();
        let engine = decide_pair(d, ps[0], ps[1])?;
        timings.engine_ms += millis(t);
        let t = Instant::now();
        let oracle = group.as_ref().map(|g| hall_search(g, &pair, &opts)).transpose()?;
        timings.oracle_ms += millis(t);
        entries.push(PairEntry { pair, engine, oracle });
    }
    let decisions: Vec<Decision> = entries.iter().map(|e| e.engine.decision).collect();
    let combined = if decisions.contains(&Decision::No) {
        Decision::No
    } else if decisions.iter().all(|&d| d == Decision::Yes) {
        Decision::Yes
    } else {
        Decision::Unknown
    };
    let oracle_all_found = group
        .is_some()
        .then(|| entries.iter().all(|e| e.oracle.as_ref().is_some_and(|c| c.is_found())));
    Ok(PairTable {
        entries,
        combined,
        oracle_all_found,
    })
}

fn table_consistency(table: &PairTable) -> Consistency {
    let mut out = Consistency::NotComparable;
    for e in &table.entries {
        let Some(cert) = &e.oracle else { continue };
        match compare(e.engine.decision, cert.is_found()) {
            Consistency::Mismatch => return Consistency::Mismatch,
            Consistency::Consistent => out = Consistency::Consistent,
            Consistency::NotComparable => {}
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub schema_version: u32,
    pub descriptor: GroupDescriptor,
    pub order: String,
    pub factorization: String,
    pub formula: String,
    pub spectrum: PrimeSet,
    pub simple: bool,
    pub solvable: bool,
    pub constructible: bool,
}

pub fn run_order(descriptor: &str) -> Result<OrderReport, CliError> {
    let d = GroupDescriptor::parse(descriptor)?;
    let order = group_order(&d)?;
    Ok(OrderReport {
        schema_version: SCHEMA_VERSION,
        order: order.value().to_string(),
        factorization: order.order.to_string(),
        formula: order.formula(),
        spectrum: order.order.primes(),
        simple: d.is_simple(),
        solvable: d.is_solvable(),
        constructible: is_constructible(&d),
        descriptor: d,
    })
}

/// Human-readable rendering of a verdict with its citation trace.
pub fn render_verdict(v: &Verdict) -> String {
    let mut out = format!("verdict: {}\n", v.decision);
    if v.decision == Decision::Yes {
        out += &format!("  solvable: {:?}\n  conjugacy: {:?}\n", v.solvable_note, v.conjugacy_note);
    }
    if let Some(reason) = v.unknown_reason {
        out += &format!("  reason: {reason:?}\n");
    }
    for f in &v.trace {
        out += &format!("  [{}] {}\n      {}\n", f.rule_id, f.conclusion, f.citation);
        let binds: Vec<String> = f
            .bindings
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if !binds.is_empty() {
            out += &format!("      {}\n", binds.join("  "));
        }
    }
    out
}

pub fn render_certificate(c: &HallCertificate) -> String {
    let mut out = format!(
        "oracle: {:?}  σ={}  |G|={}  target={}\n",
        c.kind, c.sigma, c.group_order, c.target_order
    );
    if let Some(w) = &c.witness {
        let gens: Vec<String> = w.generators.iter().map(|g| g.to_string()).collect();
        out += &format!("  witness order {} solvable={}\n  generators: {}\n", w.order, w.solvable, gens.join(" "));
    }
    if let Some(p) = c.fixed_prime {
        let counts: Vec<String> = c.conjugate_counts.iter().map(|k| format!("{}:{}", k.prime, k.count)).collect();
        out += &format!(
            "  fixed prime {p}; Sylow conjugates {}; tuples {} (examined {}, pruned {}); closures {}\n",
            counts.join(" "),
            c.tuple_space,
            c.tuples_examined,
            c.pruned,
            c.closures_computed
        );
    }
    out
}

pub fn render_report(r: &CheckReport) -> String {
    let mut out = format!("{}  π={}\n", r.request.descriptor, r.request.pi);
    if let Some(v) = &r.engine {
        out += &render_verdict(v);
    }
    if let Some(o) = &r.oracle {
        out += &render_certificate(&o.certificate);
        out += &format!("  solvable π-Hall subgroup: {}\n", o.solvable_hall);
    }
    if let Some(t) = &r.pairs {
        for e in &t.entries {
            let oracle = e.oracle.as_ref().map_or("-".to_string(), |c| format!("{:?}", c.kind));
            out += &format!("pair {}: engine {} / oracle {}\n", e.pair, e.engine.decision, oracle);
            for f in &e.engine.trace {
                out += &format!("    [{}] {}\n", f.rule_id, f.conclusion);
            }
        }
        out += &format!("combined: {}", t.combined);
        if let Some(all) = t.oracle_all_found {
            out += &format!("  (oracle: every pair found = {all})");
        }
        out += "\n";
    }
    if r.consistency != Consistency::NotComparable {
        out += &format!("consistency: {:?}\n", r.consistency);
    }
    out
}
