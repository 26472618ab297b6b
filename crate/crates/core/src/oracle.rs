//! Ground truth for Hall-subgroup existence in constructed groups.
//!
//! A π-Hall subgroup contains a full Sylow r-subgroup of G for every
//! r ∈ σ = π ∩ π(G), and is generated by them. Up to conjugacy it contains a
//! fixed Sylow subgroup P₁, so every π-Hall subgroup arises as
//! ⟨P₁, P₂^g₂, …, P_k^g_k⟩ over conjugates of the remaining Sylow subgroups.
//! The search enumerates these tuples level by level, merging equal partial
//! closures and pruning those whose order does not divide |G|_π.

use std::collections::hash_map::Entry;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rayon::ThreadPool;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{pi_part, prime_divisors, PrimeSet};
use crate::constructions::{sylow_conjugates, sylow_in_table, ConstructionError};
use crate::permgrp::{closure_elements, derived_series, Limits, Perm, PermError, PermGroup};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("no prime of {0} divides the group order")]
    EmptySigma(PrimeSet),
    #[error("need at least two primes of π dividing the group order, found {0}")]
    TooFewPrimes(PrimeSet),
    #[error("fixed prime {0} is not in π ∩ π(G)")]
    InvalidFixedPrime(u64),
    #[error("subgroup orders differ: {0} vs {1}")]
    OrderMismatch(String, String),
    #[error("inconclusive: time budget of {budget_ms} ms exceeded")]
    Inconclusive { budget_ms: u128 },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("pairwise criterion violated for {}: solvable Hall subgroup {}, all pairs found {}", .0.sigma, .0.solvable_hall, .0.all_pairs_found)]
    BiconditionalViolation(Box<Theorem1Report>),
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Prime whose Sylow subgroup stays fixed; defaults to the largest conjugate count.
    pub fixed_prime: Option<u64>,
    /// Worker threads; 0 picks the rayon default, 1 runs sequentially.
    pub threads: usize,
    pub budget: Option<Duration>,
    pub limits: Limits,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            fixed_prime: None,
            threads: 1,
            budget: None,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    Found,
    Exhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub generators: Vec<Perm>,
    pub order: u64,
    pub solvable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjugateCount {
    pub prime: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HallCertificate {
    pub kind: CertificateKind,
    pub pi: PrimeSet,
    pub sigma: PrimeSet,
    pub group_order: u64,
    pub target_order: u64,
    pub witness: Option<Witness>,
    pub fixed_prime: Option<u64>,
    pub conjugate_counts: Vec<ConjugateCount>,
    /// Product of the conjugate counts of the non-fixed primes.
    pub tuple_space: u64,
    /// Full tuples whose closure was settled, directly or through a merged prefix.
    pub tuples_examined: u64,
    /// Full tuples skipped because a prefix closure could not lie in a π-Hall subgroup.
    pub pruned: u64,
    pub closures_computed: u64,
}

impl HallCertificate {
    pub fn is_found(&self) -> bool {
        self.kind == CertificateKind::Found
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolvableHallOutcome {
    pub exists: bool,
    pub certificate: HallCertificate,
    /// Distinct non-solvable π-Hall subgroups met before a solvable one (or in total).
    pub nonsolvable_witnesses: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    AnyWitness,
    SolvableWitness,
}

enum TaskResult {
    Skipped,
    Rejected,
    Partial(Vec<Perm>, Vec<Perm>),
    Target(Vec<Perm>, Vec<Perm>),
}

struct Partial {
    gens: Vec<Perm>,
    multiplicity: u64,
}

fn build_pool(threads: usize) -> Result<Option<ThreadPool>, OracleError> {
    if threads == 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| OracleError::ThreadPool(e.to_string()))
}

fn run_tasks<T: Send>(pool: Option<&ThreadPool>, n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    match pool {
        None => (0..n).map(f).collect(),
        Some(pool) => pool.install(|| (0..n).into_par_iter().map(f).collect()),
    }
}

fn witness_from(g: &PermGroup, gens: Vec<Perm>, limits: &Limits) -> Result<Witness, OracleError> {
    let h = PermGroup::new(g.degree(), gens, limits)?;
    let solvable = derived_series(&h, limits)?.solvable;
    Ok(Witness {
        order: h.order_u64().expect("subgroup of an enumerable group"),
        generators: h.generators().to_vec(),
        solvable,
    })
}

fn search(g: &PermGroup, pi: &PrimeSet, opts: &SearchOptions, mode: Mode) -> Result<SolvableHallOutcome, OracleError> {
    let started = Instant::now();
    let limits = &opts.limits;
    let timed_out = |now: Instant| opts.budget.is_some_and(|b| now.duration_since(started) > b);
    let inconclusive = || OracleError::Inconclusive {
        budget_ms: opts.budget.map_or(0, |b| b.as_millis()),
    };

    let group_order = g.order_u64().filter(|&n| n <= limits.max_enum).ok_or_else(|| PermError::EnumerationCap {
        order: g.order().to_string(),
        cap: limits.max_enum,
    })?;
    let sigma = pi.intersection(&prime_divisors(group_order).expect("positive order"));
    if sigma.is_empty() {
        return Err(OracleError::EmptySigma(pi.clone()));
    }
    let target = pi_part(group_order, &sigma).expect("positive order");
    let mut cert = HallCertificate {
        kind: CertificateKind::Found,
        pi: pi.clone(),
        sigma: sigma.clone(),
        group_order,
        target_order: target,
        witness: None,
        fixed_prime: None,
        conjugate_counts: Vec::new(),
        tuple_space: 1,
        tuples_examined: 0,
        pruned: 0,
        closures_computed: 0,
    };
    if target == group_order {
        let witness = witness_from(g, g.generators().to_vec(), limits)?;
        let exists = witness.solvable || mode == Mode::AnyWitness;
        let nonsolvable = usize::from(!witness.solvable);
        cert.witness = Some(witness);
        return Ok(SolvableHallOutcome {
            exists,
            certificate: cert,
            nonsolvable_witnesses: nonsolvable,
        });
    }

    let table = g.enumerate(limits)?;
    let mut classes: Vec<(u64, Vec<Vec<Perm>>)> = Vec::new();
    for r in sigma.iter() {
        let p = sylow_in_table(g, &table, r, limits)?;
        let members = sylow_conjugates(g, &p, limits)?
            .into_iter()
            .map(|c| c.generators().to_vec())
            .collect();
        classes.push((r, members));
        if timed_out(Instant::now()) {
            return Err(inconclusive());
        }
    }
    drop(table);
    cert.conjugate_counts = classes
        .iter()
        .map(|(r, m)| ConjugateCount {
            prime: *r,
            count: m.len() as u64,
        })
        .collect();

    let fixed = match opts.fixed_prime {
        Some(r) if sigma.contains(r) => r,
        Some(r) => return Err(OracleError::InvalidFixedPrime(r)),
        None => {
            classes
                .iter()
                .max_by_key(|(r, m)| (m.len(), std::cmp::Reverse(*r)))
                .expect("σ is nonempty")
                .0
        }
    };
    cert.fixed_prime = Some(fixed);
    let fixed_idx = classes.iter().position(|(r, _)| *r == fixed).unwrap();
    let (_, fixed_members) = classes.remove(fixed_idx);
    classes.sort_by_key(|(r, m)| (m.len(), *r));
    cert.tuple_space = classes.iter().fold(1u64, |acc, (_, m)| acc.saturating_mul(m.len() as u64));

    let start_gens = fixed_members.into_iter().next().expect("a Sylow subgroup");
    if classes.is_empty() {
        cert.witness = Some(witness_from(g, start_gens, limits)?);
        return Ok(SolvableHallOutcome {
            exists: true,
            certificate: cert,
            nonsolvable_witnesses: 0,
        });
    }

    let pool = build_pool(opts.threads)?;
    let degree = g.degree();
    let m = target as usize;
    let mut frontier = vec![Partial {
        gens: start_gens,
        multiplicity: 1,
    }];
    let mut seen_witnesses: FxHashSet<Vec<Perm>> = FxHashSet::default();
    let mut first_nonsolvable: Option<Witness> = None;
    let mut nonsolvable = 0usize;

    for (level, (_, members)) in classes.iter().enumerate() {
        let last = level + 1 == classes.len();
        let remaining_after = classes[level + 1..]
            .iter()
            .fold(1u64, |acc, (_, m)| acc.saturating_mul(m.len() as u64));
        let cancel = AtomicBool::new(false);
        let expired = AtomicBool::new(false);
        let width = members.len();
        let results = run_tasks(pool.as_ref(), frontier.len() * width, |task| {
            if cancel.load(Ordering::Relaxed) || expired.load(Ordering::Relaxed) {
                return TaskResult::Skipped;
            }
            if timed_out(Instant::now()) {
                expired.store(true, Ordering::Relaxed);
                return TaskResult::Skipped;
            }
            let partial = &frontier[task / width];
            let mut gens = partial.gens.clone();
            gens.extend(members[task % width].iter().cloned());
            match closure_elements(degree, &gens, m) {
                Some(mut elements) if m.is_multiple_of(elements.len()) => {
                    elements.sort_unstable();
                    if elements.len() == m {
                        if mode == Mode::AnyWitness {
                            cancel.store(true, Ordering::Relaxed);
                        }
                        TaskResult::Target(elements, gens)
                    } else {
                        TaskResult::Partial(elements, gens)
                    }
                }
                _ => TaskResult::Rejected,
            }
        });
        if expired.load(Ordering::Relaxed) {
            return Err(inconclusive());
        }

        let mut next: Vec<Partial> = Vec::new();
        let mut next_index: FxHashMap<Vec<Perm>, usize> = FxHashMap::default();
        for (task, result) in results.into_iter().enumerate() {
            let multiplicity = frontier[task / width].multiplicity;
            if !matches!(result, TaskResult::Skipped) {
                cert.closures_computed += 1;
            }
            match result {
                TaskResult::Skipped => continue,
                TaskResult::Rejected if last => cert.tuples_examined += multiplicity,
                TaskResult::Rejected => cert.pruned += multiplicity * remaining_after,
                TaskResult::Partial(_, _) if last => cert.tuples_examined += multiplicity,
                TaskResult::Partial(key, gens) => match next_index.entry(key) {
                    Entry::Occupied(e) => next[*e.get()].multiplicity += multiplicity,
                    Entry::Vacant(e) => {
                        e.insert(next.len());
                        next.push(Partial { gens, multiplicity });
                    }
                },
                // every extension of a π-Hall prefix contains it, so the
                // whole subtree is settled by this one closure
                TaskResult::Target(key, gens) => {
                    cert.tuples_examined += multiplicity * remaining_after;
                    if !seen_witnesses.insert(key) {
                        continue;
                    }
                    let witness = witness_from(g, gens, limits)?;
                    if witness.solvable || mode == Mode::AnyWitness {
                        cert.witness = Some(witness);
                        return Ok(SolvableHallOutcome {
                            exists: true,
                            certificate: cert,
                            nonsolvable_witnesses: nonsolvable,
                        });
                    }
                    nonsolvable += 1;
                    first_nonsolvable.get_or_insert(witness);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() && !last {
            // everything below is already accounted for as pruned or settled
            break;
        }
    }

    match first_nonsolvable {
        Some(witness) => cert.witness = Some(witness),
        None => cert.kind = CertificateKind::Exhausted,
    }
    Ok(SolvableHallOutcome {
        exists: false,
        certificate: cert,
        nonsolvable_witnesses: nonsolvable,
    })
}

/// Finds a π-Hall subgroup or certifies that none exists.
pub fn hall_search(g: &PermGroup, pi: &PrimeSet, opts: &SearchOptions) -> Result<HallCertificate, OracleError> {
    Ok(search(g, pi, opts, Mode::AnyWitness)?.certificate)
}

/// Searches every π-Hall subgroup containing the fixed Sylow subgroup for a solvable one.
pub fn solvable_hall_exists(g: &PermGroup, pi: &PrimeSet, opts: &SearchOptions) -> Result<SolvableHallOutcome, OracleError> {
    search(g, pi, opts, Mode::SolvableWitness)
}

#[derive(Debug, Clone, Serialize)]
pub struct PairOutcome {
    pub pair: PrimeSet,
    pub kind: CertificateKind,
    pub certificate: HallCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub pi: PrimeSet,
    pub sigma: PrimeSet,
    pub solvable_hall: bool,
    pub solvable_outcome: SolvableHallOutcome,
    pub pairs: Vec<PairOutcome>,
    pub all_pairs_found: bool,
    pub holds: bool,
}

/// Solvable π-Hall subgroup exists iff a {p,q}-Hall subgroup exists for every pair in σ.
pub fn theorem1_check(g: &PermGroup, pi: &PrimeSet, opts: &SearchOptions) -> Result<Theorem1Report, OracleError> {
    let order = g.order_u64().ok_or_else(|| PermError::EnumerationCap {
        order: g.order().to_string(),
        cap: opts.limits.max_enum,
    })?;
    let sigma = pi.intersection(&prime_divisors(order).expect("positive order"));
    if sigma.len() < 2 {
        return Err(OracleError::TooFewPrimes(sigma));
    }
    let solvable_outcome = solvable_hall_exists(g, &sigma, opts)?;
    let mut pairs = Vec::new();
    for pair in sigma.subsets(2, 2) {
        let certificate = hall_search(g, &pair, opts)?;
        pairs.push(PairOutcome {
            pair,
            kind: certificate.kind,
            certificate,
        });
    }
    let all_pairs_found = pairs.iter().all(|p| p.kind == CertificateKind::Found);
    let solvable_hall = solvable_outcome.exists;
    let report = Theorem1Report {
        pi: pi.clone(),
        sigma,
        solvable_hall,
        solvable_outcome,
        pairs,
        all_pairs_found,
        holds: solvable_hall == all_pairs_found,
    };
    if !report.holds {
        return Err(OracleError::BiconditionalViolation(Box::new(report)));
    }
    Ok(report)
}

/// Whether some element of `g` conjugates `h1` onto `h2`.
pub fn conjugacy_scan(g: &PermGroup, h1: &PermGroup, h2: &PermGroup, limits: &Limits) -> Result<bool, OracleError> {
    if h1.order() != h2.order() {
        return Err(OracleError::OrderMismatch(h1.order().to_string(), h2.order().to_string()));
    }
    let table = g.enumerate(limits)?;
    // equal orders, so h1^x ⊆ h2 already means h1^x = h2
    Ok(table
        .iter()
        .any(|x| h1.generators().iter().all(|s| h2.contains(&s.conjugate_by(x)).unwrap_or(false))))
}
