//! Arithmetic criteria for the existence of a solvable π-Hall subgroup in a
//! simple (or near-simple) group, as a rule engine with a citation trace.
//!
//! Every verdict depends on π only through σ = π ∩ π(S).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{factorial_factorization, mult_order, ArithError, Factorization, PrimeSet};
use crate::catalog::{borel_order, group_order, prime_spectrum, CatalogError, Family, GroupDescriptor, Sign, Sporadic};

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("π must contain at least one prime")]
    EmptyPi,
    #[error("the two primes must be distinct, got {0} twice")]
    SamePrime(u64),
    #[error("need at least two primes of π dividing the group order, found {0}")]
    TooFewPrimes(PrimeSet),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("rule engine inconsistency for {descriptor} and σ = {sigma}: {detail}")]
    InvariantViolation {
        descriptor: String,
        sigma: PrimeSet,
        detail: String,
    },
    #[error("direct verdict {} contradicts pairwise verdict {} for {descriptor}", .direct.decision, .pairwise.decision)]
    Contradiction {
        descriptor: String,
        direct: Box<Verdict>,
        pairwise: Box<Verdict>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolvableNote {
    Solvable,
    SolvableByOddOrder,
    SolvableByTwoPrimeOrder,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConjugacyNote {
    ConjugateClaimed,
    AutInvariantClaimed,
    NoClaim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnknownReason {
    NotSimple,
    AlternatingTwoThree,
    SporadicPair,
    BorelPairUnequal,
    BorelUnsupported,
    SuzukiReeOutsideTable,
    OddPairUncovered,
    Psl2WithoutFurtherPrime,
    ConditionsInconclusive,
    PairwiseUndecided,
}

/// The closed rule catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    R0,
    RFull,
    NotSimple,
    R1,
    R2,
    R3,
    R4SuzukiRee,
    R4Exceptional,
    R4Classical,
    R5,
    R6Psl2,
    R6Psl,
    R6Psp,
    R6POmega,
    R6Exceptional,
    PairSym,
    PairTwoS,
    PairThreeS,
    PairTwoThree,
    Combine,
}

impl RuleId {
    pub const ALL: [RuleId; 20] = [
        RuleId::R0,
        RuleId::RFull,
        RuleId::NotSimple,
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4SuzukiRee,
        RuleId::R4Exceptional,
        RuleId::R4Classical,
        RuleId::R5,
        RuleId::R6Psl2,
        RuleId::R6Psl,
        RuleId::R6Psp,
        RuleId::R6POmega,
        RuleId::R6Exceptional,
        RuleId::PairSym,
        RuleId::PairTwoS,
        RuleId::PairThreeS,
        RuleId::PairTwoThree,
        RuleId::Combine,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RuleId::R0 => "R0",
            RuleId::RFull => "R-full",
            RuleId::NotSimple => "R-nonsimple",
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4SuzukiRee => "R4-suzuki-ree",
            RuleId::R4Exceptional => "R4-exceptional",
            RuleId::R4Classical => "R4-classical",
            RuleId::R5 => "R5",
            RuleId::R6Psl2 => "R6-PSL2",
            RuleId::R6Psl => "R6-PSL",
            RuleId::R6Psp => "R6-PSp",
            RuleId::R6POmega => "R6-POmega",
            RuleId::R6Exceptional => "R6-exceptional",
            RuleId::PairSym => "pair-sym",
            RuleId::PairTwoS => "pair-2s",
            RuleId::PairThreeS => "pair-3s",
            RuleId::PairTwoThree => "pair-23",
            RuleId::Combine => "combine",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::R0 => "Sylow's theorem: a Sylow subgroup has prime-power order",
            RuleId::RFull => "definition of a π-Hall subgroup: for π ⊇ π(S) the only one is S",
            RuleId::NotSimple => "the criteria below are stated for simple groups only",
            RuleId::R1 | RuleId::PairSym => "P. Hall 1956, Theorem A4 (Hall subgroups of symmetric groups)",
            RuleId::R2 => "sporadic groups: pairwise Hall subgroups for |π| ≥ 3 only in J1 with π = {2,3,7}",
            RuleId::R3 => "Revin 1999, Theorem 3.3 (Hall subgroups containing the characteristic lie in a Borel or parabolic subgroup)",
            RuleId::R4SuzukiRee => "Vdovin–Revin 2002, Lemma 14 (odd-order Hall subgroups of Suzuki and Ree groups)",
            RuleId::R4Exceptional => "Vdovin–Revin 2002, Lemmas 7–13 (odd-order Hall subgroups of exceptional groups)",
            RuleId::R4Classical => "Gross 1995, Theorem 4.9 (odd-order Hall subgroups of classical groups reduce to pairs)",
            RuleId::R5 | RuleId::PairTwoS => "Revin–Vdovin 2006, Theorem 5.2 (2 ∈ π, 3 ∉ π, odd characteristic)",
            RuleId::PairThreeS => "Gross 1995, Theorems 4.1, 4.3, 4.5 ({3,s}-Hall subgroups of linear, unitary and symplectic groups)",
            RuleId::R6Psl2 => "Revin–Vdovin 2010, Lemma 3.11 (Hall subgroups of PSL₂(q))",
            RuleId::R6Psl => "Revin–Vdovin 2010, Lemma 4.3 (solvable Hall subgroups of linear and unitary groups)",
            RuleId::R6Psp => "Revin–Vdovin 2010, Lemma 4.4 (solvable Hall subgroups of symplectic groups)",
            RuleId::R6POmega => "Revin–Vdovin 2010, Lemma 6.7 (solvable Hall subgroups of orthogonal groups)",
            RuleId::R6Exceptional => "Revin–Vdovin 2010, Lemmas 7.1–7.6 (solvable Hall subgroups of exceptional groups)",
            RuleId::PairTwoThree => "Revin–Vdovin 2010, Lemmas 3.2, 4.3, 6.7 ({2,3}-Hall subgroups)",
            RuleId::Combine => "solvable π-Hall subgroup exists iff a {p,q}-Hall subgroup exists for every pair p, q ∈ π",
        }
    }

    /// Binding keys a firing of this rule may carry.
    pub fn symbols(self) -> &'static [&'static str] {
        match self {
            RuleId::R0 => &["σ"],
            RuleId::RFull => &["σ", "π(S)", "solvable"],
            RuleId::NotSimple => &["σ", "group"],
            RuleId::R1 => &["σ", "n", "family"],
            RuleId::R2 => &["σ", "group"],
            RuleId::R3 => &["σ", "p", "|S|_σ", "|B|_σ"],
            RuleId::R4SuzukiRee => &["σ", "q", "torus"],
            RuleId::R4Exceptional => &["σ", "q", "r", "e(q,r)", "failed"],
            RuleId::R4Classical => &["σ", "pairs"],
            RuleId::R5 | RuleId::PairTwoS => &["σ", "q", "ε", "η", "t", "n", "m", "q−ε", "failed"],
            RuleId::PairThreeS => &["σ", "q", "ε", "η", "n", "s", "e(q,3)", "e(q,s)", "(q²−1)_3", "condition"],
            RuleId::R6Psl2 => &["σ", "τ", "q", "ε", "q−ε"],
            RuleId::R6Psl => &["σ", "τ", "q", "ε", "η", "n", "m", "A", "B"],
            RuleId::R6Psp => &["σ", "τ", "q", "ε", "n", "failed"],
            RuleId::R6POmega => &["σ", "τ", "q", "ε", "η", "n", "m", "condition"],
            RuleId::R6Exceptional => &["σ", "q", "ε", "η", "family", "failed"],
            RuleId::PairSym => &["n", "σ"],
            RuleId::PairTwoThree => &["q", "ε", "η", "n", "m", "(q²−1)_{2,3}"],
            RuleId::Combine => &["σ", "pairs"],
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleFiring {
    pub rule_id: RuleId,
    pub citation: &'static str,
    pub bindings: BTreeMap<&'static str, String>,
    pub conclusion: String,
}

fn fire(rule: RuleId, conclusion: impl Into<String>, bindings: Vec<(&'static str, String)>) -> RuleFiring {
    for (key, _) in &bindings {
        debug_assert!(rule.symbols().contains(key), "{rule}: undeclared symbol {key}");
    }
    RuleFiring {
        rule_id: rule,
        citation: rule.citation(),
        bindings: bindings.into_iter().collect(),
        conclusion: conclusion.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub solvable_note: SolvableNote,
    pub conjugacy_note: ConjugacyNote,
    pub trace: Vec<RuleFiring>,
    pub unknown_reason: Option<UnknownReason>,
}

impl Verdict {
    fn yes(trace: Vec<RuleFiring>, solvable_note: SolvableNote, conjugacy_note: ConjugacyNote) -> Self {
        Self {
            decision: Decision::Yes,
            solvable_note,
            conjugacy_note,
            trace,
            unknown_reason: None,
        }
    }

    fn no(trace: Vec<RuleFiring>) -> Self {
        Self {
            decision: Decision::No,
            solvable_note: SolvableNote::NotApplicable,
            conjugacy_note: ConjugacyNote::NoClaim,
            trace,
            unknown_reason: None,
        }
    }

    fn unknown(trace: Vec<RuleFiring>, reason: UnknownReason) -> Self {
        Self {
            decision: Decision::Unknown,
            solvable_note: SolvableNote::NotApplicable,
            conjugacy_note: ConjugacyNote::NoClaim,
            trace,
            unknown_reason: Some(reason),
        }
    }

    fn decided(decision: bool, trace: Vec<RuleFiring>, note: SolvableNote, conjugacy: ConjugacyNote) -> Self {
        if decision {
            Self::yes(trace, note, conjugacy)
        } else {
            Self::no(trace)
        }
    }

    pub fn rule_ids(&self) -> Vec<RuleId> {
        self.trace.iter().map(|f| f.rule_id).collect()
    }
}

/// Derived parameters of a (descriptor, π) query.
#[derive(Debug, Clone)]
pub struct CriteriaContext {
    pub descriptor: GroupDescriptor,
    pub pi: PrimeSet,
    pub spectrum: PrimeSet,
    pub sigma: PrimeSet,
    pub tau: PrimeSet,
    pub p: Option<u64>,
    pub q: Option<u64>,
    /// q ≡ ε (mod 4), for odd q.
    pub eps: Option<i64>,
    /// Least prime of σ \ {2}.
    pub t: Option<u64>,
    /// n = 2m or n = 2m + 1.
    pub m: u32,
    pub order: Factorization,
    pub order3part: BigUint,
}

impl CriteriaContext {
    pub fn new(d: &GroupDescriptor, pi: &PrimeSet) -> Result<Self, CriteriaError> {
        if pi.is_empty() {
            return Err(CriteriaError::EmptyPi);
        }
        let order = group_order(d)?.order;
        let spectrum = prime_spectrum(d)?;
        let sigma = pi.intersection(&spectrum);
        let three = PrimeSet::new([3])?;
        let eps = match d.q {
            Some(q) if q % 2 == 1 && d.is_lie_type() => Some(crate::arith::epsilon(q)? as i64),
            _ => None,
        };
        Ok(Self {
            descriptor: d.clone(),
            pi: pi.clone(),
            tau: sigma.without(2).without(3),
            t: sigma.without(2).iter().next(),
            p: if d.is_lie_type() { d.characteristic() } else { None },
            q: d.q,
            eps,
            m: d.half_dimension(),
            order3part: order.pi_part(&three).value().clone(),
            spectrum,
            sigma,
            order,
        })
    }

    fn restrict(&self, primes: &PrimeSet) -> CriteriaContext {
        let sigma = self.sigma.intersection(primes);
        CriteriaContext {
            pi: primes.clone(),
            tau: sigma.without(2).without(3),
            t: sigma.without(2).iter().next(),
            sigma,
            ..self.clone()
        }
    }

    fn q(&self) -> u64 {
        self.q.expect("Lie type has a field size")
    }

    fn eps(&self) -> i64 {
        self.eps.expect("odd characteristic")
    }

    fn eta(&self) -> i64 {
        self.descriptor.eta.value().unwrap_or(1)
    }

    /// q − c as a wide integer.
    fn q_minus(&self, c: i64) -> u128 {
        (self.q() as i128 - c as i128) as u128
    }

    fn divides_q_minus(&self, r: u64, c: i64) -> bool {
        self.q_minus(c).is_multiple_of(r as u128)
    }

    fn in_q_minus_eps(&self, r: u64) -> bool {
        self.divides_q_minus(r, self.eps())
    }

    fn e(&self, r: u64) -> Result<u64, CriteriaError> {
        Ok(mult_order(self.q(), r)?)
    }

    fn q_squared_minus_one(&self) -> u128 {
        let q = self.q() as u128;
        q * q - 1
    }

    fn group_exponent(&self, r: u64) -> u32 {
        self.order.exponent(r)
    }

    fn pairs(&self) -> Vec<PrimeSet> {
        self.sigma.subsets(2, 2)
    }
}

fn part(mut value: u128, primes: &[u64]) -> u128 {
    let mut out = 1u128;
    for &r in primes {
        while value.is_multiple_of(r as u128) {
            value /= r as u128;
            out *= r as u128;
        }
    }
    out
}

fn sign_str(v: i64) -> String {
    if v > 0 { "+1".into() } else { "-1".into() }
}

fn sym_order_primes(n: u32) -> PrimeSet {
    factorial_factorization(n as u64).primes()
}

/// Whether Sym_n has a solvable π-Hall subgroup.
fn sym_has_solvable_hall(n: u32, pi: &PrimeSet) -> bool {
    let sigma = pi.intersection(&sym_order_primes(n));
    match sigma.len() {
        0 | 1 => true,
        2 => sigma.iter().eq([2, 3]) && matches!(n, 3 | 4 | 5 | 7 | 8),
        _ => false,
    }
}

/// Hall subgroups of symmetric groups: Sym_n ∈ E_π.
pub fn sym_has_pair_hall(n: u32, pi: &PrimeSet) -> Verdict {
    let spectrum = sym_order_primes(n);
    let sigma = pi.intersection(&spectrum);
    let (exists, why, note) = if sigma.len() <= 1 {
        (true, "at most one prime of π divides n!", SolvableNote::Solvable)
    } else if sigma == spectrum {
        (true, "π ⊇ π(n!), the group itself", SolvableNote::NotApplicable)
    } else if sigma.len() == 2 {
        let yes = sigma.iter().eq([2, 3]) && matches!(n, 3 | 4 | 5 | 7 | 8);
        let why = if yes { "σ = {2,3} and n ∈ {3,4,5,7,8}" } else { "pairs only for σ = {2,3}, n ∈ {3,4,5,7,8}" };
        (yes, why, SolvableNote::SolvableByTwoPrimeOrder)
    } else if crate::arith::is_prime(n as u64) && sigma == spectrum.without(n as u64) {
        (true, "n prime and σ = π((n−1)!), Sym_{n−1}", SolvableNote::NotApplicable)
    } else {
        (false, "no Hall subgroup for three or more primes", SolvableNote::NotApplicable)
    };
    let firing = fire(
        RuleId::PairSym,
        why,
        vec![("n", n.to_string()), ("σ", sigma.to_string())],
    );
    Verdict::decided(exists, vec![firing], note, ConjugacyNote::NoClaim)
}

/// Whether a solvable π-Hall subgroup exists, with the rules that decided it.
pub fn decide_solvable_hall(d: &GroupDescriptor, pi: &PrimeSet) -> Result<Verdict, CriteriaError> {
    let ctx = CriteriaContext::new(d, pi)?;
    evaluate(&ctx)
}

/// E_{p,q} for a pair of distinct primes.
pub fn decide_pair(d: &GroupDescriptor, p: u64, q_prime: u64) -> Result<Verdict, CriteriaError> {
    if p == q_prime {
        return Err(CriteriaError::SamePrime(p));
    }
    decide_solvable_hall(d, &PrimeSet::new([p, q_prime])?)
}

/// Conjunction of the pair verdicts over σ.
pub fn combine_pairwise(d: &GroupDescriptor, pi: &PrimeSet) -> Result<Verdict, CriteriaError> {
    let ctx = CriteriaContext::new(d, pi)?;
    if ctx.sigma.len() < 2 {
        return Err(CriteriaError::TooFewPrimes(ctx.sigma));
    }
    combine(&ctx, RuleId::Combine, SolvableNote::Solvable, ConjugacyNote::NoClaim)
}

fn combine(ctx: &CriteriaContext, rule: RuleId, note: SolvableNote, conjugacy: ConjugacyNote) -> Result<Verdict, CriteriaError> {
    let mut verdicts = Vec::new();
    for pair in ctx.pairs() {
        let v = evaluate(&ctx.restrict(&pair))?;
        verdicts.push((pair, v));
    }
    let summary: Vec<String> = verdicts.iter().map(|(p, v)| format!("{p}:{}", v.decision)).collect();
    let any_no = verdicts.iter().any(|(_, v)| v.decision == Decision::No);
    let all_yes = verdicts.iter().all(|(_, v)| v.decision == Decision::Yes);
    let conclusion = if any_no {
        "some pair has no Hall subgroup"
    } else if all_yes {
        "every pair has a Hall subgroup"
    } else {
        "some pair is undecided"
    };
    let mut trace = vec![fire(
        rule,
        conclusion,
        vec![("σ", ctx.sigma.to_string()), ("pairs", summary.join(", "))],
    )];
    for (_, v) in &verdicts {
        if any_no && v.decision != Decision::No {
            continue;
        }
        trace.extend(v.trace.iter().cloned());
    }
    Ok(if any_no {
        Verdict::no(trace)
    } else if all_yes {
        Verdict::yes(trace, note, conjugacy)
    } else {
        Verdict::unknown(trace, UnknownReason::PairwiseUndecided)
    })
}

/// Consistency of the direct verdict with the pairwise combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Agreement {
    Agree,
    OneUnknown,
    BothUnknown,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub sigma: PrimeSet,
    pub direct: Option<Verdict>,
    pub pairwise: Option<Verdict>,
    pub agreement: Agreement,
}

pub fn consistency_check(d: &GroupDescriptor, pi: &PrimeSet) -> Result<ConsistencyReport, CriteriaError> {
    let ctx = CriteriaContext::new(d, pi)?;
    if ctx.sigma.len() < 3 {
        return Ok(ConsistencyReport {
            sigma: ctx.sigma,
            direct: None,
            pairwise: None,
            agreement: Agreement::NotApplicable,
        });
    }
    let direct = evaluate(&ctx)?;
    let pairwise = combine(&ctx, RuleId::Combine, SolvableNote::Solvable, ConjugacyNote::NoClaim)?;
    let agreement = match (direct.decision, pairwise.decision) {
        (Decision::Unknown, Decision::Unknown) => Agreement::BothUnknown,
        (Decision::Unknown, _) | (_, Decision::Unknown) => Agreement::OneUnknown,
        (a, b) if a == b => Agreement::Agree,
        _ => {
            return Err(CriteriaError::Contradiction {
                descriptor: d.to_string(),
                direct: Box::new(direct),
                pairwise: Box::new(pairwise),
            })
        }
    };
    Ok(ConsistencyReport {
        sigma: ctx.sigma,
        direct: Some(direct),
        pairwise: Some(pairwise),
        agreement,
    })
}

fn pair_note(ctx: &CriteriaContext, otherwise: SolvableNote) -> SolvableNote {
    if ctx.sigma.len() == 2 {
        SolvableNote::SolvableByTwoPrimeOrder
    } else {
        otherwise
    }
}

fn wide_claim(ctx: &CriteriaContext) -> ConjugacyNote {
    if ctx.sigma.len() > 2 {
        ConjugacyNote::AutInvariantClaimed
    } else {
        ConjugacyNote::NoClaim
    }
}

fn evaluate(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let d = &ctx.descriptor;
    let sigma = &ctx.sigma;
    if sigma.len() <= 1 {
        let firing = fire(RuleId::R0, "σ has at most one prime: a Sylow subgroup", vec![("σ", sigma.to_string())]);
        return Ok(Verdict::yes(vec![firing], SolvableNote::Solvable, ConjugacyNote::ConjugateClaimed));
    }
    if *sigma == ctx.spectrum {
        let solvable = d.is_solvable();
        let firing = fire(
            RuleId::RFull,
            if solvable { "σ = π(S) and S is solvable" } else { "σ = π(S) and S is not solvable" },
            vec![
                ("σ", sigma.to_string()),
                ("π(S)", ctx.spectrum.to_string()),
                ("solvable", solvable.to_string()),
            ],
        );
        return Ok(Verdict::decided(solvable, vec![firing], SolvableNote::Solvable, ConjugacyNote::ConjugateClaimed));
    }
    match d.family {
        Family::Alt | Family::Sym => return Ok(rule_alt_sym(ctx)),
        Family::Spor => return Ok(rule_sporadic(ctx)),
        _ => {}
    }
    if !d.is_simple() {
        let firing = fire(
            RuleId::NotSimple,
            "group is not simple",
            vec![("σ", sigma.to_string()), ("group", d.to_string())],
        );
        return Ok(Verdict::unknown(vec![firing], UnknownReason::NotSimple));
    }
    let p = ctx.p.expect("Lie type has a characteristic");
    if sigma.contains(p) {
        rule_borel(ctx)
    } else if !sigma.contains(2) {
        rule_odd(ctx)
    } else if !sigma.contains(3) {
        let (holds, firing) = two_s_criterion(ctx, RuleId::R5)?;
        let note = pair_note(ctx, SolvableNote::Solvable);
        Ok(Verdict::decided(holds, vec![firing], note, ConjugacyNote::ConjugateClaimed))
    } else {
        rule_two_three(ctx)
    }
}

fn rule_alt_sym(ctx: &CriteriaContext) -> Verdict {
    let d = &ctx.descriptor;
    let binds = || {
        vec![
            ("σ", ctx.sigma.to_string()),
            ("n", d.n.to_string()),
            ("family", format!("{:?}", d.family)),
        ]
    };
    if ctx.sigma.len() >= 3 {
        return Verdict::no(vec![fire(RuleId::R1, "|σ| ≥ 3 forces a pair other than {2,3}", binds())]);
    }
    if !ctx.sigma.iter().eq([2, 3]) {
        return Verdict::no(vec![fire(RuleId::R1, "no {p,q}-Hall subgroup unless {p,q} = {2,3}", binds())]);
    }
    if d.family == Family::Alt {
        let firing = fire(RuleId::R1, "σ = {2,3} in an alternating group is not covered", binds());
        return Verdict::unknown(vec![firing], UnknownReason::AlternatingTwoThree);
    }
    let yes = matches!(d.n, 3 | 4 | 5 | 7 | 8);
    let firing = fire(
        RuleId::R1,
        if yes { "σ = {2,3} and n ∈ {3,4,5,7,8}" } else { "σ = {2,3} but n ∉ {3,4,5,7,8}" },
        binds(),
    );
    Verdict::decided(yes, vec![firing], SolvableNote::SolvableByTwoPrimeOrder, ConjugacyNote::NoClaim)
}

fn rule_sporadic(ctx: &CriteriaContext) -> Verdict {
    let binds = vec![("σ", ctx.sigma.to_string()), ("group", ctx.descriptor.to_string())];
    if ctx.sigma.len() == 2 {
        let firing = fire(RuleId::R2, "pairs in sporadic groups are not covered", binds);
        return Verdict::unknown(vec![firing], UnknownReason::SporadicPair);
    }
    let yes = ctx.descriptor.sporadic == Some(Sporadic::J1) && ctx.sigma.iter().eq([2, 3, 7]);
    let firing = fire(
        RuleId::R2,
        if yes { "J1 with σ = {2,3,7}" } else { "some pair of σ has no Hall subgroup" },
        binds,
    );
    Verdict::decided(yes, vec![firing], SolvableNote::Solvable, ConjugacyNote::AutInvariantClaimed)
}

fn rule_borel(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let p = ctx.p.unwrap();
    let borel = match borel_order(&ctx.descriptor) {
        Ok(b) => b,
        Err(CatalogError::UnsupportedFamily { .. }) => {
            let firing = fire(
                RuleId::R3,
                "Borel subgroup order not available for this family",
                vec![("σ", ctx.sigma.to_string()), ("p", p.to_string())],
            );
            return Ok(Verdict::unknown(vec![firing], UnknownReason::BorelUnsupported));
        }
        Err(e) => return Err(e.into()),
    };
    let s_part = ctx.order.pi_part(&ctx.sigma);
    let b_part = borel.order.pi_part(&ctx.sigma);
    let equal = s_part == b_part;
    let binds = vec![
        ("σ", ctx.sigma.to_string()),
        ("p", p.to_string()),
        ("|S|_σ", s_part.value().to_string()),
        ("|B|_σ", b_part.value().to_string()),
    ];
    if equal {
        let firing = fire(RuleId::R3, "|S|_σ = |B|_σ: a σ-Hall subgroup of the solvable Borel subgroup", binds);
        let note = pair_note(ctx, SolvableNote::Solvable);
        return Ok(Verdict::yes(vec![firing], note, ConjugacyNote::ConjugateClaimed));
    }
    if ctx.sigma.len() >= 3 {
        let firing = fire(RuleId::R3, "|S|_σ ≠ |B|_σ with |σ| ≥ 3: some pair has no Hall subgroup", binds);
        return Ok(Verdict::no(vec![firing]));
    }
    let firing = fire(RuleId::R3, "|S|_σ ≠ |B|_σ for a pair: a parabolic Hall subgroup is not excluded", binds);
    Ok(Verdict::unknown(vec![firing], UnknownReason::BorelPairUnequal))
}

/// 2 ∉ σ and p ∉ σ: odd-order Hall subgroups.
fn rule_odd(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let d = &ctx.descriptor;
    let note = pair_note(ctx, SolvableNote::SolvableByOddOrder);
    if d.family.is_suzuki_ree() {
        return Ok(suzuki_ree_table(ctx));
    }
    if d.family.is_exceptional() {
        let (holds, firing) = exceptional_odd(ctx)?;
        return Ok(Verdict::decided(holds, vec![firing], note, wide_claim(ctx)));
    }
    if ctx.sigma.len() > 2 {
        return combine(ctx, RuleId::R4Classical, note, wide_claim(ctx));
    }
    let s = ctx.sigma.without(3);
    let applicable = ctx.sigma.contains(3) && s.len() == 1;
    if applicable {
        if let Some((holds, firing)) = three_s_criterion(ctx, s.iter().next().unwrap())? {
            return Ok(Verdict::decided(holds, vec![firing], note, ConjugacyNote::NoClaim));
        }
    }
    let firing = fire(
        RuleId::R4Classical,
        "no pair criterion covers this pair of odd primes",
        vec![("σ", ctx.sigma.to_string()), ("pairs", ctx.sigma.to_string())],
    );
    Ok(Verdict::unknown(vec![firing], UnknownReason::OddPairUncovered))
}

fn suzuki_ree_table(ctx: &CriteriaContext) -> Verdict {
    let q = BigUint::from(ctx.q());
    let (base, log) = {
        let p = ctx.p.unwrap();
        let mut k = 0u32;
        let mut x = ctx.q();
        while x > 1 {
            x /= p;
            k += 1;
        }
        (p, k)
    };
    // r = √(pq), so q = p^(2k+1) and r = p^(k+1)
    let r = BigUint::from(base).pow(log.div_ceil(2));
    let one = BigUint::from(1u32);
    let q2 = &q * &q;
    let rq = &r * &q;
    let tori: Vec<(&str, BigUint)> = match ctx.descriptor.family {
        Family::TwF4 => vec![
            ("q²+1", &q2 + &one),
            ("q²−1", &q2 - &one),
            ("q+r+1", &q + &r + &one),
            ("q−r+1", &q + &one - &r),
            ("q²+rq−r−1", &q2 + &rq - &r - &one),
            ("q²−rq+r−1", &q2 + &r - &rq - &one),
            ("q²+rq+q+r+1", &q2 + &rq + &q + &r + &one),
            ("q²−rq+q−r+1", &q2 + &q + &one - &rq - &r),
        ],
        _ => vec![
            ("q−1", &q - &one),
            ("q+r+1", &q + &r + &one),
            ("q−r+1", &q + &one - &r),
        ],
    };
    let hit = tori
        .iter()
        .find(|(_, value)| ctx.sigma.iter().all(|s| (value % BigUint::from(s)).is_zero()));
    let mut binds = vec![("σ", ctx.sigma.to_string()), ("q", ctx.q().to_string())];
    match hit {
        Some((label, _)) => {
            binds.push(("torus", (*label).to_string()));
            let firing = fire(RuleId::R4SuzukiRee, format!("σ ⊆ π({label})"), binds);
            Verdict::yes(vec![firing], pair_note(ctx, SolvableNote::SolvableByOddOrder), wide_claim(ctx))
        }
        None => {
            let firing = fire(RuleId::R4SuzukiRee, "σ lies in no listed torus; the table is only sufficient", binds);
            Verdict::unknown(vec![firing], UnknownReason::SuzukiReeOutsideTable)
        }
    }
}

fn exceptional_odd(ctx: &CriteriaContext) -> Result<(bool, RuleFiring), CriteriaError> {
    let sigma = &ctx.sigma;
    let r = sigma.iter().next().unwrap();
    let er = ctx.e(r)?;
    let mut failed = Vec::new();
    for s in sigma.iter().skip(1) {
        if ctx.e(s)? != er {
            failed.push(format!("(1) e(q,{s}) ≠ e(q,{r})"));
        }
    }
    // a σ-part of x is divisible by k = ab iff a, b ∈ σ both divide x
    let forbidden_product = |c: i64, pairs: &[(u64, u64)]| -> Option<String> {
        pairs
            .iter()
            .find(|(a, b)| {
                sigma.contains(*a) && sigma.contains(*b) && ctx.divides_q_minus(*a, c) && ctx.divides_q_minus(*b, c)
            })
            .map(|(a, b)| format!("{}", a * b))
    };
    match ctx.descriptor.family {
        Family::E6 => {
            if let Some(k) = forbidden_product(ctx.eta(), &[(3, 5)]) {
                failed.push(format!("(2) {k} divides (q−η)_σ"));
            }
        }
        Family::E7 => {
            if er != 1 {
                failed.push("(3) e(q,r) ≠ 1".into());
            }
            if let Some(k) = forbidden_product(1, &[(3, 5), (3, 7), (5, 7)]) {
                failed.push(format!("(3) {k} divides (q−1)_σ"));
            }
        }
        Family::E8 => {
            if er != 2 {
                failed.push("(4) e(q,r) ≠ 2".into());
            }
            if let Some(k) = forbidden_product(-1, &[(3, 5), (3, 7), (5, 7)]) {
                failed.push(format!("(4) {k} divides (q+1)_σ"));
            }
        }
        _ => {}
    }
    let holds = failed.is_empty();
    let firing = fire(
        RuleId::R4Exceptional,
        if holds { "all order conditions hold" } else { "an order condition fails" },
        vec![
            ("σ", sigma.to_string()),
            ("q", ctx.q().to_string()),
            ("r", r.to_string()),
            ("e(q,r)", er.to_string()),
            ("failed", failed.join("; ")),
        ],
    );
    Ok((holds, firing))
}

/// The criterion for 2 ∈ σ, 3 ∉ σ in odd characteristic, with t = min(σ \ {2}).
fn two_s_criterion(ctx: &CriteriaContext, rule: RuleId) -> Result<(bool, RuleFiring), CriteriaError> {
    let d = &ctx.descriptor;
    let sigma = &ctx.sigma;
    let eps = ctx.eps();
    let eta = d.eta.value();
    let t = ctx.t.expect("σ has an odd prime");
    let mut binds = vec![
        ("σ", sigma.to_string()),
        ("q", ctx.q().to_string()),
        ("ε", sign_str(eps)),
        ("t", t.to_string()),
        ("q−ε", ctx.q_minus(eps).to_string()),
    ];
    if let Some(eta) = eta {
        binds.push(("η", sign_str(eta)));
    }
    if d.family == Family::TwG2 && sigma.iter().eq([2, 7]) {
        binds.push(("failed", String::new()));
        return Ok((true, fire(rule, "²G₂(q) with σ = {2,7}", binds)));
    }
    let mut failed = Vec::new();
    if let Some(r) = sigma.iter().find(|&r| !ctx.in_q_minus_eps(r)) {
        failed.push(format!("(1) {r} ∤ q−ε"));
    }
    match d.family {
        Family::PSL => {
            let n = d.n as u64;
            binds.push(("n", n.to_string()));
            if eta == Some(eps) {
                if n >= t {
                    failed.push("(2) n ≥ t".into());
                }
            } else if n + 1 >= 2 * t {
                failed.push("(3) (n+1)/2 ≥ t".into());
            }
        }
        Family::PSp => {
            let n = d.n as u64;
            binds.push(("n", n.to_string()));
            if n >= t {
                failed.push("(2) n ≥ t".into());
            }
        }
        Family::POmega => {
            let m = ctx.m as u64;
            binds.push(("m", m.to_string()));
            if d.n % 2 == 1 || eta == Some(eps) {
                if m >= t {
                    failed.push("(2) m ≥ t".into());
                }
            } else {
                if m > t {
                    failed.push("(4) m−1 ≥ t".into());
                }
                if m.is_multiple_of(2) {
                    failed.push("(4) m even".into());
                }
            }
        }
        Family::E6 if eta == Some(-eps) => {
            if sigma.contains(5) {
                failed.push("(5) 5 ∈ σ".into());
            }
        }
        Family::E7 | Family::E8
            if (sigma.contains(5) || sigma.contains(7)) => {
                failed.push("(6) 5 or 7 ∈ σ".into());
            }
        _ => {}
    }
    let holds = failed.is_empty();
    binds.push(("failed", failed.join("; ")));
    let conclusion = if holds { "all conditions hold" } else { "a condition fails" };
    Ok((holds, fire(rule, conclusion, binds)))
}

/// The {3,s} criterion for linear, unitary and symplectic groups, when it applies.
fn three_s_criterion(ctx: &CriteriaContext, s: u64) -> Result<Option<(bool, RuleFiring)>, CriteriaError> {
    let d = &ctx.descriptor;
    if !matches!(d.family, Family::PSL | Family::PSp) || ctx.eps.is_none() || ctx.p == Some(3) || ctx.p == Some(s) {
        return Ok(None);
    }
    if !ctx.in_q_minus_eps(s) {
        return Ok(None);
    }
    let (e3, es) = (ctx.e(3)?, ctx.e(s)?);
    let n = d.n as u64;
    let q2_3 = part(ctx.q_squared_minus_one(), &[3]);
    let condition = match (d.family, d.eta) {
        (Family::PSL, Sign::Plus) => {
            if e3 == es && n < e3 * s {
                Some("(1) e(q,3) = e(q,s) = a, n < as")
            } else if n == 3 && e3 == 2 && es == 1 && q2_3 == 3 {
                Some("(2) n = 3, e(q,3) = 2, e(q,s) = 1, (q²−1)_3 = 3")
            } else {
                None
            }
        }
        (Family::PSL, _) => {
            if e3 == es && n < 2 * s {
                Some("(3) e(q,3) = e(q,s), n < 2s")
            } else if n == 3 && e3 == 1 && es == 2 && q2_3 == 3 {
                Some("(4) n = 3, e(q,3) = 1, e(q,s) = 2, (q²−1)_3 = 3")
            } else {
                None
            }
        }
        _ => (e3 == es && n < s).then_some("(5) e(q,3) = e(q,s), n < s"),
    };
    let mut binds = vec![
        ("σ", format!("{{3,{s}}}")),
        ("q", ctx.q().to_string()),
        ("ε", sign_str(ctx.eps())),
        ("n", n.to_string()),
        ("s", s.to_string()),
        ("e(q,3)", e3.to_string()),
        ("e(q,s)", es.to_string()),
        ("(q²−1)_3", q2_3.to_string()),
        ("condition", condition.unwrap_or("none").to_string()),
    ];
    if let Some(eta) = d.eta.value() {
        binds.push(("η", sign_str(eta)));
    }
    let holds = condition.is_some();
    let conclusion = if holds {
        "a {3,s}-Hall subgroup exists".to_string()
    } else {
        format!("no {{3,{s}}}-Hall subgroup: e(q,3) = {e3}, e(q,{s}) = {es}")
    };
    Ok(Some((holds, fire(RuleId::PairThreeS, conclusion, binds))))
}

/// Failing {2,s} and {3,s} pair criteria over s ∈ τ.
fn pair_failures(ctx: &CriteriaContext, with_three: bool) -> Result<Vec<RuleFiring>, CriteriaError> {
    let mut out = Vec::new();
    for s in ctx.tau.iter() {
        let pair = ctx.restrict(&PrimeSet::new([2, s])?);
        let (holds, firing) = two_s_criterion(&pair, RuleId::PairTwoS)?;
        if !holds {
            out.push(firing);
        }
        if with_three {
            if let Some((false, firing)) = three_s_criterion(ctx, s)? {
                out.push(firing);
            }
        }
    }
    Ok(out)
}

fn gl2_has_two_three_hall(ctx: &CriteriaContext) -> bool {
    ctx.in_q_minus_eps(3) || part(ctx.q_squared_minus_one(), &[2, 3]) == 24
}

/// {2,3} ⊆ σ, p ∉ σ.
fn rule_two_three(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let d = &ctx.descriptor;
    match d.family {
        Family::PSL if d.n == 2 => rule_psl2(ctx),
        Family::PSL => rule_psl(ctx),
        Family::PSp => rule_psp(ctx),
        Family::POmega => rule_pomega(ctx),
        _ => rule_exceptional_two_three(ctx),
    }
}

fn invariant(ctx: &CriteriaContext, detail: &str) -> CriteriaError {
    CriteriaError::InvariantViolation {
        descriptor: ctx.descriptor.to_string(),
        sigma: ctx.sigma.clone(),
        detail: detail.to_string(),
    }
}

fn rule_psl2(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let eps = ctx.eps();
    let binds = vec![
        ("σ", ctx.sigma.to_string()),
        ("τ", ctx.tau.to_string()),
        ("q", ctx.q().to_string()),
        ("ε", sign_str(eps)),
        ("q−ε", ctx.q_minus(eps).to_string()),
    ];
    if ctx.tau.is_empty() {
        let firing = fire(RuleId::R6Psl2, "σ = {2,3}: no further prime to compare with", binds);
        return Ok(Verdict::unknown(vec![firing], UnknownReason::Psl2WithoutFurtherPrime));
    }
    let inside = ctx.tau.with(3).iter().all(|r| ctx.in_q_minus_eps(r));
    if inside {
        let firing = fire(RuleId::R6Psl2, "{3} ∪ τ ⊆ π(q−ε)", binds);
        return Ok(Verdict::yes(vec![firing], SolvableNote::Solvable, ConjugacyNote::ConjugateClaimed));
    }
    let mut trace = vec![fire(RuleId::R6Psl2, "{3} ∪ τ ⊄ π(q−ε)", binds)];
    let failures = pair_failures(ctx, true)?;
    if failures.is_empty() {
        return Err(invariant(ctx, "PSL₂ rejected without a failing pair"));
    }
    trace.extend(failures);
    Ok(Verdict::no(trace))
}

fn rule_psl(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let d = &ctx.descriptor;
    let q = ctx.q();
    let (n, m) = (d.n, ctx.m);
    let eps = ctx.eps();
    let eta = ctx.eta();
    let two_three = PrimeSet::new([2, 3])?;
    let mod_is = |k: u64, target: i64| (q as i64 - target).rem_euclid(k as i64) == 0;
    let in_q_minus_eta = |r: u64| ctx.divides_q_minus(r, eta);
    let q2 = ctx.q_squared_minus_one();

    let a_congruence = mod_is(12, eta) || (n == 3 && mod_is(4, eta));
    let fact = factorial_factorization(n as u64);
    let cond_a = a_congruence
        && sym_has_solvable_hall(n, &ctx.sigma)
        && ctx.sigma.iter().all(|r| in_q_minus_eta(r) || fact.exponent(r) > 0)
        && ctx
            .sigma
            .iter()
            .filter(|&r| fact.exponent(r) > 0 && !in_q_minus_eta(r))
            .all(|r| ctx.group_exponent(r) == fact.exponent(r));
    let gl2_sigma = if ctx.tau.is_empty() {
        gl2_has_two_three_hall(ctx)
    } else {
        ctx.in_q_minus_eps(3) && ctx.tau.iter().all(|s| ctx.in_q_minus_eps(s))
    };
    let cond_b = mod_is(3, -eta)
        && sym_has_solvable_hall(m, &ctx.sigma)
        && gl2_sigma
        && ctx.sigma.iter().all(|r| q2.is_multiple_of(r as u128));

    let e23 = [
        a_congruence
            && sym_has_solvable_hall(n, &two_three)
            && (in_q_minus_eta(3) || ctx.order3part == BigUint::from(3u32)),
        mod_is(3, -eta) && sym_has_solvable_hall(m, &two_three) && gl2_has_two_three_hall(ctx),
        n == 11 && part(q2, &[2, 3]) == 24 && mod_is(3, -eta) && mod_is(4, eta),
    ];
    let mut failures = pair_failures(ctx, true)?;
    if !e23.iter().any(|&c| c) {
        failures.push(fire(
            RuleId::PairTwoThree,
            "none of the {2,3}-Hall conditions holds",
            vec![
                ("q", q.to_string()),
                ("ε", sign_str(eps)),
                ("η", sign_str(eta)),
                ("n", n.to_string()),
                ("m", m.to_string()),
                ("(q²−1)_{2,3}", part(q2, &[2, 3]).to_string()),
            ],
        ));
    }
    let yes = cond_a || cond_b;
    let no = !failures.is_empty();
    if yes && no {
        return Err(invariant(ctx, "a sufficient condition holds while a necessary pair condition fails"));
    }
    let binds = vec![
        ("σ", ctx.sigma.to_string()),
        ("τ", ctx.tau.to_string()),
        ("q", q.to_string()),
        ("ε", sign_str(eps)),
        ("η", sign_str(eta)),
        ("n", n.to_string()),
        ("m", m.to_string()),
        ("A", cond_a.to_string()),
        ("B", cond_b.to_string()),
    ];
    if yes {
        let firing = fire(RuleId::R6Psl, if cond_a { "condition (A) holds" } else { "condition (B) holds" }, binds);
        return Ok(Verdict::yes(vec![firing], pair_note(ctx, SolvableNote::Solvable), wide_claim(ctx)));
    }
    let mut trace = vec![fire(
        RuleId::R6Psl,
        if no { "a necessary pair condition fails" } else { "neither (A) nor (B), and no pair fails" },
        binds,
    )];
    if no {
        trace.extend(failures);
        return Ok(Verdict::no(trace));
    }
    Ok(Verdict::unknown(trace, UnknownReason::ConditionsInconclusive))
}

fn rule_psp(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let n = ctx.descriptor.n;
    let eps = ctx.eps();
    let two_three = PrimeSet::new([2, 3])?;
    let e3 = ctx.e(3)?;
    let mut same_e = true;
    for s in ctx.tau.iter() {
        same_e &= ctx.e(s)? == e3;
    }
    let sym_ok = sym_has_solvable_hall(n, &two_three);
    let yes = ctx.tau.with(3).iter().all(|r| ctx.in_q_minus_eps(r))
        && ctx.tau.iter().next().is_none_or(|s| (n as u64) < s)
        && same_e
        && sym_ok;
    let mut failures = pair_failures(ctx, true)?;
    if !sym_ok {
        let mut v = sym_has_pair_hall(n, &two_three);
        failures.append(&mut v.trace);
    }
    let no = !failures.is_empty();
    if yes && no {
        return Err(invariant(ctx, "symplectic sufficient condition holds while a pair fails"));
    }
    let failed: Vec<String> = failures.iter().map(|f| f.rule_id.to_string()).collect();
    let binds = vec![
        ("σ", ctx.sigma.to_string()),
        ("τ", ctx.tau.to_string()),
        ("q", ctx.q().to_string()),
        ("ε", sign_str(eps)),
        ("n", n.to_string()),
        ("failed", failed.join(", ")),
    ];
    if yes {
        let firing = fire(RuleId::R6Psp, "{3} ∪ τ ⊆ π(q−ε), n < min τ, Sym_n has a {2,3}-Hall subgroup", binds);
        return Ok(Verdict::yes(vec![firing], pair_note(ctx, SolvableNote::Solvable), wide_claim(ctx)));
    }
    let mut trace = vec![fire(
        RuleId::R6Psp,
        if no { "a necessary condition fails" } else { "sufficient conditions not met" },
        binds,
    )];
    if no {
        trace.extend(failures);
        return Ok(Verdict::no(trace));
    }
    Ok(Verdict::unknown(trace, UnknownReason::ConditionsInconclusive))
}

fn rule_pomega(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let d = &ctx.descriptor;
    let (n, m) = (d.n, ctx.m);
    let eps = ctx.eps();
    let eta = d.eta.value();
    let two_three = PrimeSet::new([2, 3])?;
    let three_in = ctx.in_q_minus_eps(3);
    let odd = n % 2 == 1;
    let eps_m = if m % 2 == 1 { eps } else { 1 };
    let q2_23 = part(ctx.q_squared_minus_one(), &[2, 3]);
    let conditions = [
        ("(1)", odd && three_in && sym_has_solvable_hall(m, &two_three)),
        ("(2)", !odd && eta == Some(eps_m) && three_in && sym_has_solvable_hall(m, &two_three)),
        ("(3)", !odd && eta == Some(-eps_m) && three_in && sym_has_solvable_hall(m - 1, &two_three)),
        ("(4)", n == 11 && three_in && q2_23 == 24),
        ("(5)", n == 12 && eta == Some(-1) && three_in && q2_23 == 24),
    ];
    let holding = conditions.iter().find(|(_, c)| *c).map(|(label, _)| *label);
    let failures = pair_failures(ctx, false)?;
    let yes = holding.is_some() && failures.is_empty();
    let no = !failures.is_empty() || m < 3;
    let mut binds = vec![
        ("σ", ctx.sigma.to_string()),
        ("τ", ctx.tau.to_string()),
        ("q", ctx.q().to_string()),
        ("ε", sign_str(eps)),
        ("n", n.to_string()),
        ("m", m.to_string()),
        ("condition", holding.unwrap_or("none").to_string()),
    ];
    if let Some(eta) = eta {
        binds.push(("η", sign_str(eta)));
    }
    if yes {
        let firing = fire(RuleId::R6POmega, "a {2,3}-Hall condition holds and every {2,s} pair passes", binds);
        return Ok(Verdict::yes(vec![firing], pair_note(ctx, SolvableNote::Solvable), wide_claim(ctx)));
    }
    let mut trace = vec![fire(
        RuleId::R6POmega,
        if no { "a {2,s} pair fails or m < 3" } else { "no listed {2,3}-Hall condition holds" },
        binds,
    )];
    if no {
        trace.extend(failures);
        return Ok(Verdict::no(trace));
    }
    Ok(Verdict::unknown(trace, UnknownReason::ConditionsInconclusive))
}

fn rule_exceptional_two_three(ctx: &CriteriaContext) -> Result<Verdict, CriteriaError> {
    let d = &ctx.descriptor;
    let eps = ctx.eps();
    let family_ok = match d.family {
        Family::F4 | Family::G2 | Family::TD4 => true,
        Family::E6 => d.eta.value() == Some(-eps),
        _ => false,
    };
    let inside = ctx.sigma.iter().all(|r| ctx.in_q_minus_eps(r));
    let failures = pair_failures(ctx, false)?;
    let yes = family_ok && inside && failures.is_empty();
    let mut failed = Vec::new();
    if !family_ok {
        failed.push("family has no {2,3}-Hall subgroup".to_string());
    }
    if !inside {
        failed.push("σ ⊄ π(q−ε)".to_string());
    }
    if !failures.is_empty() {
        failed.push("a {2,s} pair fails".to_string());
    }
    let mut binds = vec![
        ("σ", ctx.sigma.to_string()),
        ("q", ctx.q().to_string()),
        ("ε", sign_str(eps)),
        ("family", format!("{:?}", d.family)),
        ("failed", failed.join("; ")),
    ];
    if let Some(eta) = d.eta.value() {
        binds.push(("η", sign_str(eta)));
    }
    let conclusion = if yes { "σ ⊆ π(q−ε) in F4, G2, ³D4 or E6^(−ε)" } else { "a necessary condition fails" };
    let mut trace = vec![fire(RuleId::R6Exceptional, conclusion, binds)];
    if yes {
        return Ok(Verdict::yes(trace, pair_note(ctx, SolvableNote::Solvable), wide_claim(ctx)));
    }
    trace.extend(failures);
    Ok(Verdict::no(trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> GroupDescriptor {
        GroupDescriptor::parse(text).unwrap()
    }

    fn pi(text: &str) -> PrimeSet {
        PrimeSet::parse(text).unwrap()
    }

    fn decide(desc: &str, primes: &str) -> Verdict {
        decide_solvable_hall(&d(desc), &pi(primes)).unwrap()
    }

    #[test]
    fn psl2_41_two_three_five() {
        let v = decide("PSL+:2:41", "2,3,5");
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.trace[0].rule_id, RuleId::R6Psl2);
        assert_eq!(v.trace[0].bindings["q−ε"], "40");
        let pair = v.trace.iter().find(|f| f.rule_id == RuleId::PairThreeS).unwrap();
        assert_eq!(pair.bindings["e(q,3)"], "2");
        assert_eq!(pair.bindings["e(q,s)"], "1");
        assert_eq!(pair.bindings["s"], "5");
    }

    #[test]
    fn psl2_41_two_five() {
        let v = decide("PSL+:2:41", "2,5");
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.solvable_note, SolvableNote::SolvableByTwoPrimeOrder);
        let f = &v.trace[0];
        assert_eq!(f.rule_id, RuleId::R5);
        assert_eq!((f.bindings["ε"].as_str(), f.bindings["t"].as_str(), f.bindings["n"].as_str()), ("+1", "5", "2"));
    }

    #[test]
    fn psl2_41_two_three_is_unknown() {
        let v = decide("PSL+:2:41", "2,3");
        assert_eq!(v.decision, Decision::Unknown);
        assert_eq!(v.unknown_reason, Some(UnknownReason::Psl2WithoutFurtherPrime));
    }

    #[test]
    fn spec_examples() {
        assert_eq!(decide("Sym:8", "2,3").decision, Decision::Yes);
        assert_eq!(decide("Sym:6", "2,3").decision, Decision::No);
        assert_eq!(decide("Spor:J1", "2,3,7").decision, Decision::Yes);
        assert_eq!(decide("Spor:J1", "2,3,5").decision, Decision::No);
        assert_eq!(decide("Spor:J1", "2,3").unknown_reason, Some(UnknownReason::SporadicPair));
        assert_eq!(decide("2G2:27", "2,7").decision, Decision::Yes);
        let v = decide("PSL+:2:7", "3,7");
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.trace[0].rule_id, RuleId::R3);
        assert_eq!(v.trace[0].bindings["|B|_σ"], "21");
    }

    #[test]
    fn pair_verdicts() {
        let v = decide_pair(&d("PSL+:2:41"), 3, 5).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.trace[0].rule_id, RuleId::PairThreeS);
        assert_eq!(decide_pair(&d("PSL+:2:41"), 2, 5).unwrap().decision, Decision::Yes);
        assert_eq!(decide_pair(&d("Sym:6"), 2, 3).unwrap().decision, Decision::No);
        assert!(matches!(decide_pair(&d("Sym:6"), 3, 3), Err(CriteriaError::SamePrime(3))));
    }

    #[test]
    fn pairwise_combination() {
        assert_eq!(combine_pairwise(&d("PSL+:2:41"), &pi("2,3,5")).unwrap().decision, Decision::No);
        assert_eq!(combine_pairwise(&d("PSL+:2:41"), &pi("2,5")).unwrap().decision, Decision::Yes);
        assert_eq!(combine_pairwise(&d("Alt:5"), &pi("2,3,5")).unwrap().decision, Decision::No);
        assert!(matches!(
            combine_pairwise(&d("Alt:5"), &pi("2,7")),
            Err(CriteriaError::TooFewPrimes(_))
        ));
    }

    #[test]
    fn consistency_reports() {
        let r = consistency_check(&d("PSL+:2:41"), &pi("2,3,5")).unwrap();
        assert_eq!(r.agreement, Agreement::Agree);
        let r = consistency_check(&d("Spor:J1"), &pi("2,3,7")).unwrap();
        assert_eq!(r.agreement, Agreement::OneUnknown);
        let r = consistency_check(&d("2G2:27"), &pi("2,7,11")).unwrap();
        assert_eq!(r.agreement, Agreement::NotApplicable);
    }

    #[test]
    fn symmetric_group_helper() {
        assert_eq!(sym_has_pair_hall(7, &pi("2,3")).decision, Decision::Yes);
        assert_eq!(sym_has_pair_hall(6, &pi("2,3")).decision, Decision::No);
        assert_eq!(sym_has_pair_hall(4, &pi("2,3,5")).decision, Decision::Yes);
        assert_eq!(sym_has_pair_hall(7, &pi("2,3,5")).decision, Decision::Yes);
        assert_eq!(sym_has_pair_hall(8, &pi("2,3,5")).decision, Decision::No);
    }

    #[test]
    fn full_spectrum_and_small_sigma() {
        assert_eq!(decide("Alt:5", "2,3,5").decision, Decision::No);
        assert_eq!(decide("Sym:4", "2,3").decision, Decision::Yes);
        let v = decide("E8:7", "11");
        assert_eq!((v.decision, v.trace[0].rule_id), (Decision::Yes, RuleId::R0));
        assert_eq!(decide("PSp:2:2", "2,3").unknown_reason, Some(UnknownReason::NotSimple));
    }

    #[test]
    fn outside_primes_do_not_matter() {
        for (desc, primes) in [("PSL+:2:41", "2,3,5"), ("PSL+:2:41", "2,5"), ("Spor:J1", "2,3,7"), ("Sym:7", "2,3")] {
            let base = decide(desc, primes);
            let wider = decide(desc, &format!("{primes},97,101"));
            assert_eq!(base, wider, "{desc}");
        }
    }

    #[test]
    fn rule_catalog_is_closed() {
        for rule in RuleId::ALL {
            assert!(!rule.citation().is_empty());
            assert!(!rule.symbols().is_empty());
        }
    }

    #[test]
    fn suzuki_ree_tables() {
        // ²B₂(8): q−1 = 7, q±r+1 = 13, 5
        assert_eq!(decide("2B2:8", "5,13").unknown_reason, Some(UnknownReason::SuzukiReeOutsideTable));
        assert_eq!(decide("2B2:8", "13").decision, Decision::Yes);
        // ²F₄(8): q²−rq+q−r+1 = 37 and q²+rq+q+r+1 = 109 are separate tori
        let v = decide("2F4:8", "37,109");
        assert_eq!(v.unknown_reason, Some(UnknownReason::SuzukiReeOutsideTable));
        let v = decide("2F4:8", "5,13");
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.trace[0].bindings["torus"], "q²+1");
    }

    #[test]
    fn exceptional_odd_conditions() {
        // G₂(4): e(4,3) = 1, e(4,5) = 2
        assert_eq!(decide("G2:4", "3,5").decision, Decision::No);
        // G₂(5): e(5,3) = 2, e(5,7) = 6
        assert_eq!(decide("G2:5", "3,7").decision, Decision::No);
        // G₂(7): e(7,3) = 1, e(7,19)=3 → fails; e(7,43) = 6
        assert_eq!(decide("G2:7", "3,43").decision, Decision::No);
        // G₂(16): 16 ≡ 1 mod 3 and mod 5 → e = 1 for both
        assert_eq!(decide("G2:16", "3,5").decision, Decision::Yes);
    }
}
