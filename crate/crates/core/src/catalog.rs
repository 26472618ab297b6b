//! Symbolic descriptors of finite simple groups and their exact orders.
//!
//! Orders are assembled from independently factored terms (powers of q and
//! cyclotomic values Φ_d(q)), so no single large integer is ever factored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, factorial_factorization, factorize, ArithError, Factorization, PrimeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("syntax error in `{text}`: {reason}")]
    Syntax { text: String, reason: String },
    #[error("invalid descriptor `{text}`: {constraint}")]
    Constraint { text: String, constraint: String },
    #[error("unsupported family for {what}: {descriptor}")]
    UnsupportedFamily { what: &'static str, descriptor: String },
    #[error("cyclotomic value Φ_{d}({q}) = {value} exceeds the 64-bit factoring range")]
    TermTooLarge { d: u32, q: u64, value: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Alt,
    Sym,
    Spor,
    PSL,
    PSp,
    POmega,
    G2,
    F4,
    E6,
    E7,
    E8,
    /// ³D₄
    TD4,
    /// ²B₂ (Suzuki)
    TwB2,
    /// ²G₂ (Ree)
    TwG2,
    /// ²F₄ (Ree)
    TwF4,
}

impl Family {
    pub fn is_lie_type(self) -> bool {
        !matches!(self, Family::Alt | Family::Sym | Family::Spor)
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::PSL | Family::PSp | Family::POmega)
    }

    pub fn is_exceptional(self) -> bool {
        self.is_lie_type() && !self.is_classical()
    }

    pub fn is_suzuki_ree(self) -> bool {
        matches!(self, Family::TwB2 | Family::TwG2 | Family::TwF4)
    }
}

/// The sign η ∈ {+, −, ∘}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    None,
}

impl Sign {
    /// +1 / −1, or `None` for ∘.
    pub fn value(self) -> Option<i64> {
        match self {
            Sign::Plus => Some(1),
            Sign::Minus => Some(-1),
            Sign::None => None,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::None => "",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sporadic {
    J1,
}

/// Symbolic identity of a (near-)simple group.
///
/// `n` means: degree for Alt/Sym, dimension for PSL, half-rank for PSp (the
/// group is PSp_{2n}(q)), ambient dimension for POmega; it is 0 elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GroupDescriptor {
    pub family: Family,
    pub n: u32,
    pub eta: Sign,
    pub q: Option<u64>,
    pub sporadic: Option<Sporadic>,
}

impl GroupDescriptor {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let syntax = |reason: &str| CatalogError::Syntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = text.split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let (name, eta) = match head.strip_suffix('+') {
            Some(stem) => (stem, Sign::Plus),
            None => match head.strip_suffix('-') {
                Some(stem) => (stem, Sign::Minus),
                None => (head, Sign::None),
            },
        };
        let family = match name {
            "Alt" => Family::Alt,
            "Sym" => Family::Sym,
            "Spor" => Family::Spor,
            "PSL" => Family::PSL,
            "PSp" => Family::PSp,
            "POmega" => Family::POmega,
            "G2" => Family::G2,
            "F4" => Family::F4,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "3D4" => Family::TD4,
            "2B2" => Family::TwB2,
            "2G2" => Family::TwG2,
            "2F4" => Family::TwF4,
            _ => return Err(syntax("unknown family")),
        };
        let signed = matches!(family, Family::PSL | Family::POmega | Family::E6);
        if eta != Sign::None && !signed {
            return Err(syntax("this family takes no sign"));
        }
        let number = |s: &str| -> Result<u64, CatalogError> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax("expected a decimal integer"));
            }
            s.parse::<u64>().map_err(|_| syntax("integer out of range"))
        };
        let small = |s: &str| -> Result<u32, CatalogError> {
            u32::try_from(number(s)?).map_err(|_| syntax("integer out of range"))
        };
        let mut d = GroupDescriptor {
            family,
            n: 0,
            eta,
            q: None,
            sporadic: None,
        };
        match family {
            Family::Alt | Family::Sym => {
                let [n] = args[..] else {
                    return Err(syntax("expected `<family>:<n>`"));
                };
                d.n = small(n)?;
            }
            Family::Spor => match args[..] {
                ["J1"] => d.sporadic = Some(Sporadic::J1),
                [_] => return Err(syntax("only the sporadic group J1 is supported")),
                _ => return Err(syntax("expected `Spor:<name>`")),
            },
            Family::PSL | Family::PSp | Family::POmega => {
                let [n, q] = args[..] else {
                    return Err(syntax("expected `<family>:<n>:<q>`"));
                };
                d.n = small(n)?;
                d.q = Some(number(q)?);
            }
            _ => {
                let [q] = args[..] else {
                    return Err(syntax("expected `<family>:<q>`"));
                };
                d.q = Some(number(q)?);
            }
        }
        if family == Family::PSL && eta == Sign::None {
            return Err(syntax("PSL requires a sign `+` or `-`"));
        }
        if family == Family::E6 && eta == Sign::None {
            return Err(syntax("E6 requires a sign `+` or `-`"));
        }
        d.validate().map_err(|constraint| CatalogError::Constraint {
            text: text.to_string(),
            constraint,
        })?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), String> {
        if let Some(q) = self.q {
            let f = factorize(q).map_err(|e| e.to_string())?;
            if q < 2 || f.factors().len() != 1 {
                return Err(format!("q = {q} must be a prime power"));
            }
        }
        let odd_power_of = |base: u64, min_k: u32| -> Result<(), String> {
            let q = self.q.unwrap_or(0);
            let (p, e) = factorize(q).map_err(|e| e.to_string())?.factors()[0];
            if p != base || e % 2 == 0 || e < 2 * min_k + 1 {
                return Err(format!(
                    "q must be {base}^(2k+1) with k ≥ {min_k} (exponent must be odd ≥ {})",
                    2 * min_k + 1
                ));
            }
            Ok(())
        };
        match self.family {
            Family::Alt if self.n < 3 => Err("Alt requires n ≥ 3".into()),
            Family::Sym if self.n < 1 => Err("Sym requires n ≥ 1".into()),
            Family::PSL if self.n < 2 => Err("PSL requires n ≥ 2".into()),
            Family::PSp if self.n < 2 => Err("PSp requires n ≥ 2".into()),
            Family::POmega if self.n < 7 => Err("POmega requires dimension n ≥ 7".into()),
            Family::POmega if self.n % 2 == 1 && self.eta != Sign::None => {
                Err("POmega of odd dimension takes no sign".into())
            }
            Family::POmega if self.n.is_multiple_of(2) && self.eta == Sign::None => {
                Err("POmega of even dimension requires a sign".into())
            }
            Family::TwB2 => odd_power_of(2, 1),
            Family::TwG2 => odd_power_of(3, 1),
            Family::TwF4 => odd_power_of(2, 0),
            _ => Ok(()),
        }
    }

    /// Defining characteristic p of a group of Lie type.
    pub fn characteristic(&self) -> Option<u64> {
        let q = self.q?;
        Some(factorize(q).ok()?.factors()[0].0)
    }

    /// The parameter m with n = 2m or n = 2m + 1 (POmega and Sym contexts).
    pub fn half_dimension(&self) -> u32 {
        self.n / 2
    }

    pub fn is_lie_type(&self) -> bool {
        self.family.is_lie_type()
    }

    /// Solvable members of the families (small-parameter degeneracies).
    pub fn is_solvable(&self) -> bool {
        let q = self.q.unwrap_or(0);
        match self.family {
            Family::Alt | Family::Sym => self.n <= 4,
            Family::PSL => (self.n == 2 && q <= 3) || (self.n == 3 && self.eta == Sign::Minus && q == 2),
            _ => false,
        }
    }

    /// Whether the descriptor names a nonabelian simple group.
    pub fn is_simple(&self) -> bool {
        let q = self.q.unwrap_or(0);
        match self.family {
            Family::Alt => self.n >= 5,
            Family::Sym => false,
            Family::Spor => true,
            Family::PSL => !self.is_solvable(),
            Family::PSp => !(self.n == 2 && q == 2),
            Family::G2 | Family::TwF4 => q != 2,
            _ => true,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.q.unwrap_or(0);
        let sign = self.eta.symbol();
        match self.family {
            Family::Alt => write!(f, "Alt:{}", self.n),
            Family::Sym => write!(f, "Sym:{}", self.n),
            Family::Spor => write!(f, "Spor:J1"),
            Family::PSL => write!(f, "PSL{sign}:{}:{q}", self.n),
            Family::PSp => write!(f, "PSp:{}:{q}", self.n),
            Family::POmega => write!(f, "POmega{sign}:{}:{q}", self.n),
            Family::G2 => write!(f, "G2:{q}"),
            Family::F4 => write!(f, "F4:{q}"),
            Family::E6 => write!(f, "E6{sign}:{q}"),
            Family::E7 => write!(f, "E7:{q}"),
            Family::E8 => write!(f, "E8:{q}"),
            Family::TD4 => write!(f, "3D4:{q}"),
            Family::TwB2 => write!(f, "2B2:{q}"),
            Family::TwG2 => write!(f, "2G2:{q}"),
            Family::TwF4 => write!(f, "2F4:{q}"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl TryFrom<String> for GroupDescriptor {
    type Error = CatalogError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Self::parse(&value)
    }
}

impl From<GroupDescriptor> for String {
    fn from(value: GroupDescriptor) -> Self {
        value.to_string()
    }
}

/// One symbolic factor of an order formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderTerm {
    /// q^k
    QPower(u32),
    /// q^k − 1
    QMinus(u32),
    /// q^k + 1
    QPlus(u32),
    /// Φ_d(q)
    Phi(u32),
    /// n!
    Factorial(u32),
    Constant(u64),
}

impl OrderTerm {
    /// q^k − η^k for a sign η = ±1.
    fn q_minus_signed(k: u32, eta: i64) -> OrderTerm {
        if eta > 0 || k.is_multiple_of(2) {
            OrderTerm::QMinus(k)
        } else {
            OrderTerm::QPlus(k)
        }
    }

    pub fn evaluate(&self, q: u64) -> BigUint {
        let qb = BigUint::from(q);
        match *self {
            OrderTerm::QPower(k) => qb.pow(k),
            OrderTerm::QMinus(k) => qb.pow(k) - 1u32,
            OrderTerm::QPlus(k) => qb.pow(k) + 1u32,
            OrderTerm::Phi(d) => cyclotomic_value(d, q),
            OrderTerm::Factorial(n) => (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i),
            OrderTerm::Constant(c) => BigUint::from(c),
        }
    }

    /// Cyclotomic indices d with this term = ∏ Φ_d(q).
    fn cyclotomic_indices(&self) -> Vec<u32> {
        match *self {
            OrderTerm::QMinus(k) => divisors(k),
            OrderTerm::QPlus(k) => divisors(2 * k).into_iter().filter(|d| k % d != 0).collect(),
            OrderTerm::Phi(d) => vec![d],
            _ => Vec::new(),
        }
    }

    pub fn factorize(&self, q: u64) -> Result<Factorization, CatalogError> {
        match *self {
            OrderTerm::QPower(k) => Ok(factorize(q)?.pow(k)),
            OrderTerm::Factorial(n) => Ok(factorial_factorization(n as u64)),
            OrderTerm::Constant(c) => Ok(factorize(c)?),
            _ => {
                let mut acc = Factorization::one();
                for d in self.cyclotomic_indices() {
                    let value = cyclotomic_value(d, q);
                    let small = u64::try_from(&value).map_err(|_| CatalogError::TermTooLarge {
                        d,
                        q,
                        value: value.to_string(),
                    })?;
                    acc = acc.mul(&factorize(small)?);
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::QPower(k) => write!(f, "q^{k}"),
            OrderTerm::QMinus(k) => write!(f, "(q^{k}-1)"),
            OrderTerm::QPlus(k) => write!(f, "(q^{k}+1)"),
            OrderTerm::Phi(d) => write!(f, "Φ{d}(q)"),
            OrderTerm::Factorial(n) => write!(f, "{n}!"),
            OrderTerm::Constant(c) => write!(f, "{c}"),
        }
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(n: u32) -> i32 {
    let f = factorize(n as u64).expect("n ≥ 1");
    if f.factors().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Φ_d(q) = ∏_{k | d} (q^k − 1)^{μ(d/k)}.
pub fn cyclotomic_value(d: u32, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in divisors(d) {
        let term = qb.pow(k) - 1u32;
        match mobius(d / k) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// An exact group order with the symbolic terms it was assembled from:
/// `order = ∏ terms / divisor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOrder {
    pub order: Factorization,
    pub terms: Vec<OrderTerm>,
    pub divisor: u64,
}

impl GroupOrder {
    fn assemble(q: u64, terms: Vec<OrderTerm>, divisor: u64) -> Result<Self, CatalogError> {
        let mut acc = Factorization::one();
        for t in &terms {
            acc = acc.mul(&t.factorize(q)?);
        }
        let order = acc.div_exact(&factorize(divisor)?)?;
        Ok(Self { order, terms, divisor })
    }

    pub fn value(&self) -> &BigUint {
        self.order.value()
    }

    /// Renders the symbolic formula, e.g. `q^1·(q^2-1)/2`.
    pub fn formula(&self) -> String {
        let body: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        if self.divisor == 1 {
            body.join("·")
        } else {
            format!("{}/{}", body.join("·"), self.divisor)
        }
    }
}

const J1_ORDER: u64 = 175_560;

fn signed_mod(q: u64, eta: i64, m: u64) -> u64 {
    ((q as i128 - eta as i128).rem_euclid(m as i128)) as u64
}

pub fn group_order(d: &GroupDescriptor) -> Result<GroupOrder, CatalogError> {
    use OrderTerm::*;
    let q = d.q.unwrap_or(0);
    let n = d.n;
    let eta = d.eta.value().unwrap_or(1);
    match d.family {
        Family::Alt => GroupOrder::assemble(0, vec![Factorial(n)], 2),
        Family::Sym => GroupOrder::assemble(0, vec![Factorial(n)], 1),
        Family::Spor => GroupOrder::assemble(0, vec![Constant(J1_ORDER)], 1),
        Family::PSL => {
            let mut terms = vec![QPower(n * (n - 1) / 2)];
            terms.extend((2..=n).map(|i| OrderTerm::q_minus_signed(i, eta)));
            let div = arith::gcd(n as u64, signed_mod(q, eta, n as u64));
            GroupOrder::assemble(q, terms, if n == 1 { 1 } else { div.max(1) })
        }
        Family::PSp => {
            let mut terms = vec![QPower(n * n)];
            terms.extend((1..=n).map(|i| QMinus(2 * i)));
            GroupOrder::assemble(q, terms, arith::gcd(2, q - 1))
        }
        Family::POmega if n % 2 == 1 => {
            let m = n / 2;
            let mut terms = vec![QPower(m * m)];
            terms.extend((1..=m).map(|i| QMinus(2 * i)));
            GroupOrder::assemble(q, terms, arith::gcd(2, q - 1))
        }
        Family::POmega => {
            let m = n / 2;
            let mut terms = vec![QPower(m * (m - 1)), if eta > 0 { QMinus(m) } else { QPlus(m) }];
            terms.extend((1..m).map(|i| QMinus(2 * i)));
            let qm_minus_eta = (arith::pow_mod(q, m as u64, 4) as i64 - eta).rem_euclid(4) as u64;
            GroupOrder::assemble(q, terms, arith::gcd(4, qm_minus_eta))
        }
        Family::G2 => GroupOrder::assemble(q, vec![QPower(6), QMinus(6), QMinus(2)], 1),
        Family::F4 => GroupOrder::assemble(
            q,
            vec![QPower(24), QMinus(12), QMinus(8), QMinus(6), QMinus(2)],
            1,
        ),
        Family::E6 => {
            let terms = vec![
                QPower(36),
                QMinus(12),
                OrderTerm::q_minus_signed(9, eta),
                QMinus(8),
                QMinus(6),
                OrderTerm::q_minus_signed(5, eta),
                QMinus(2),
            ];
            GroupOrder::assemble(q, terms, arith::gcd(3, signed_mod(q, eta, 3)))
        }
        Family::E7 => GroupOrder::assemble(
            q,
            vec![
                QPower(63),
                QMinus(18),
                QMinus(14),
                QMinus(12),
                QMinus(10),
                QMinus(8),
                QMinus(6),
                QMinus(2),
            ],
            arith::gcd(2, q - 1),
        ),
        Family::E8 => GroupOrder::assemble(
            q,
            vec![
                QPower(120),
                QMinus(30),
                QMinus(24),
                QMinus(20),
                QMinus(18),
                QMinus(14),
                QMinus(12),
                QMinus(8),
                QMinus(2),
            ],
            1,
        ),
        // q^8 + q^4 + 1 = Φ3·Φ6·Φ12
        Family::TD4 => GroupOrder::assemble(
            q,
            vec![QPower(12), Phi(3), Phi(6), Phi(12), QMinus(6), QMinus(2)],
            1,
        ),
        Family::TwB2 => GroupOrder::assemble(q, vec![QPower(2), QPlus(2), QMinus(1)], 1),
        Family::TwG2 => GroupOrder::assemble(q, vec![QPower(3), QPlus(3), QMinus(1)], 1),
        Family::TwF4 => GroupOrder::assemble(
            q,
            vec![QPower(12), QPlus(6), QMinus(4), QPlus(3), QMinus(1)],
            1,
        ),
    }
}

pub fn prime_spectrum(d: &GroupDescriptor) -> Result<PrimeSet, CatalogError> {
    Ok(group_order(d)?.order.primes())
}

/// Order of a Borel subgroup, for PSL_n(q) (linear) and PSp_{2n}(q).
pub fn borel_order(d: &GroupDescriptor) -> Result<GroupOrder, CatalogError> {
    use OrderTerm::*;
    let q = d.q.unwrap_or(0);
    let n = d.n;
    match (d.family, d.eta) {
        (Family::PSL, Sign::Plus) => {
            let mut terms = vec![QPower(n * (n - 1) / 2)];
            terms.extend(std::iter::repeat_n(QMinus(1), n as usize - 1));
            GroupOrder::assemble(q, terms, arith::gcd(n as u64, q - 1))
        }
        (Family::PSp, _) => {
            let mut terms = vec![QPower(n * n)];
            terms.extend(std::iter::repeat_n(QMinus(1), n as usize));
            GroupOrder::assemble(q, terms, arith::gcd(2, q - 1))
        }
        _ => Err(CatalogError::UnsupportedFamily {
            what: "Borel subgroup order",
            descriptor: d.to_string(),
        }),
    }
}

/// Whether `value` is a product of primes from `primes` (1 counts).
pub fn is_pi_number(value: &BigUint, primes: &PrimeSet) -> bool {
    let mut rest = value.clone();
    for p in primes.iter() {
        let pb = BigUint::from(p);
        while (&rest % &pb) == BigUint::from(0u32) && rest > BigUint::from(0u32) {
            rest /= &pb;
        }
    }
    rest.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GroupDescriptor {
        GroupDescriptor::parse(s).unwrap()
    }

    fn order_u64(s: &str) -> u64 {
        group_order(&d(s)).unwrap().order.to_u64().unwrap()
    }

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = d("PSL+:2:41");
        assert_eq!((g.family, g.n, g.eta, g.q), (Family::PSL, 2, Sign::Plus, Some(41)));
        let r = d("2G2:27");
        assert_eq!((r.family, r.q), (Family::TwG2, Some(27)));
        let err = GroupDescriptor::parse("2B2:4").unwrap_err();
        assert!(matches!(err, CatalogError::Constraint { .. }));
        assert!(err.to_string().contains("exponent must be odd"), "{err}");
    }

    #[test]
    fn parse_rejections() {
        for bad in [
            "PSL:2:41", "PSL+:2", "PSL+:1:7", "PSL+:2:6", "Alt:2", "Spor:M11", "G2+:5",
            "POmega:8:3", "POmega+:9:3", "POmega+:6:3", "2G2:3", "2B2:2", "E6:5", "Foo:3",
            "Alt:x", "Alt:+5", "PSp:1:3", "",
        ] {
            assert!(GroupDescriptor::parse(bad).is_err(), "{bad} should fail");
        }
        assert!(GroupDescriptor::parse("2F4:2").is_ok());
    }

    #[test]
    fn render_round_trip() {
        for s in [
            "Alt:5", "Sym:8", "Spor:J1", "PSL+:2:41", "PSL-:3:5", "PSp:2:3", "POmega:7:3",
            "POmega+:8:3", "POmega-:10:5", "G2:5", "F4:7", "E6+:5", "E6-:7", "E7:5", "E8:7",
            "3D4:5", "2B2:8", "2G2:27", "2F4:8",
        ] {
            assert_eq!(d(s).to_string(), s);
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(order_u64("PSL+:2:41"), 34440);
        assert_eq!(order_u64("Alt:5"), 60);
        assert_eq!(order_u64("PSL+:2:7"), 168);
        assert_eq!(order_u64("PSL+:3:2"), 168);
        assert_eq!(order_u64("PSL+:2:4"), 60);
        assert_eq!(order_u64("PSL+:2:9"), 360);
        assert_eq!(order_u64("PSL-:3:3"), 6048);
        assert_eq!(order_u64("PSL-:3:2"), 72);
        assert_eq!(order_u64("PSp:2:3"), 25920);
        assert_eq!(order_u64("PSL+:4:2"), 20160);
        assert_eq!(order_u64("Spor:J1"), 175560);
        assert_eq!(order_u64("Sym:7"), 5040);
        assert_eq!(order_u64("G2:3"), 4_245_696);
        assert_eq!(order_u64("2B2:8"), 29120);
        assert_eq!(order_u64("2G2:27"), 10_073_444_472);
        assert_eq!(order_u64("3D4:2"), 211_341_312);
        assert_eq!(order_u64("2F4:2"), 35_942_400);
        assert_eq!(order_u64("POmega:7:3"), 4_585_351_680);
        assert_eq!(order_u64("POmega+:8:2"), 174_182_400);
        assert_eq!(order_u64("POmega-:8:2"), 197_406_720);
        assert_eq!(order_u64("PSp:3:2"), 1_451_520);
    }

    #[test]
    fn large_orders_match_formula() {
        // E8(2) and E6^-(2) compared against direct big-integer evaluation
        for s in ["E8:2", "E6-:2", "E6+:4", "E7:3", "F4:2", "POmega-:12:3", "PSL+:10:7"] {
            let g = group_order(&d(s)).unwrap();
            let q = d(s).q.unwrap();
            let direct = g.terms.iter().fold(BigUint::one(), |acc, t| acc * t.evaluate(q)) / g.divisor;
            assert_eq!(&direct, g.value(), "{s}");
        }
        let e8 = group_order(&d("E8:2")).unwrap();
        assert_eq!(
            e8.value().to_string(),
            "337804753143634806261388190614085595079991692242467651576160959909068800000"
        );
    }

    #[test]
    fn spectra() {
        assert_eq!(prime_spectrum(&d("PSL+:2:41")).unwrap(), set(&[2, 3, 5, 7, 41]));
        assert_eq!(prime_spectrum(&d("Alt:5")).unwrap(), set(&[2, 3, 5]));
        assert_eq!(prime_spectrum(&d("Spor:J1")).unwrap(), set(&[2, 3, 5, 7, 11, 19]));
    }

    #[test]
    fn borel_examples() {
        let b = borel_order(&d("PSL+:2:7")).unwrap();
        assert_eq!(b.order.to_u64(), Some(21));
        assert_eq!(borel_order(&d("PSL+:2:41")).unwrap().order.to_u64(), Some(820));
        assert!(matches!(
            borel_order(&d("POmega+:8:3")),
            Err(CatalogError::UnsupportedFamily { .. })
        ));
        // |PSp_4(3)| / |B| = number of full flags = (q^4-1)(q^2-1)/(q-1)^2
        let g = group_order(&d("PSp:2:3")).unwrap().order;
        let b = borel_order(&d("PSp:2:3")).unwrap().order;
        assert_eq!(g.div_exact(&b).unwrap().to_u64(), Some(80 * 8 / 4));
    }

    #[test]
    fn borel_index_is_flag_count() {
        // |SL_n(q) : B| = ∏_{i=1}^{n} (q^i − 1)/(q − 1)
        for n in 2..=5u32 {
            for q in [2u64, 3, 4, 5, 7, 9] {
                let desc = d(&format!("PSL+:{n}:{q}"));
                let g = group_order(&desc).unwrap().order;
                let b = borel_order(&desc).unwrap().order;
                let flags: u64 = (1..=n).map(|i| (q.pow(i) - 1) / (q - 1)).product();
                assert!(b.divides(&g));
                assert_eq!(g.div_exact(&b).unwrap().to_u64(), Some(flags), "{desc}");
            }
        }
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_value(1, 7), BigUint::from(6u32));
        assert_eq!(cyclotomic_value(12, 2), BigUint::from(13u32));
        assert_eq!(cyclotomic_value(3, 2) * cyclotomic_value(6, 2) * cyclotomic_value(12, 2), BigUint::from(273u32));
    }

    #[test]
    fn simplicity_flags() {
        assert!(!d("PSL+:2:3").is_simple());
        assert!(d("PSL+:2:3").is_solvable());
        assert!(!d("PSL-:3:2").is_simple());
        assert!(!d("PSp:2:2").is_simple());
        assert!(d("PSL+:2:5").is_simple());
        assert!(!d("Sym:5").is_simple());
        assert!(d("Sym:4").is_solvable());
    }

    #[test]
    fn pi_number_check() {
        assert!(is_pi_number(&BigUint::from(24u32), &set(&[2, 3])));
        assert!(!is_pi_number(&BigUint::from(120u32), &set(&[2, 3])));
        assert!(is_pi_number(&BigUint::one(), &PrimeSet::empty()));
    }
}
