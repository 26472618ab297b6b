//! Exact integer arithmetic used by every criterion: factorizations, prime
//! sets, π-parts, multiplicative orders and the ε sign of an odd prime power.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero has no factorization")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{modulus} divides {base}; multiplicative order undefined")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("epsilon is defined for odd q only, got {0}")]
    EvenModulus(u64),
    #[error("{0} does not divide the dividend exactly")]
    Inexact(String),
}

/// Deterministic Miller–Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite set of primes. Membership is validated on construction.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        Self(BTreeSet::new())
    }

    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, ArithError> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            set.insert(p);
        }
        Ok(Self(set))
    }

    /// Builds a set from values already known to be prime.
    pub(crate) fn from_known_primes<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        Self(primes.into_iter().collect())
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        Self(self.0.intersection(&other.0).copied().collect())
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        Self(self.0.difference(&other.0).copied().collect())
    }

    pub fn without(&self, p: u64) -> PrimeSet {
        let mut set = self.0.clone();
        set.remove(&p);
        Self(set)
    }

    pub fn with(&self, p: u64) -> PrimeSet {
        let mut set = self.0.clone();
        set.insert(p);
        Self(set)
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// All subsets with size in `min..=max`, in lexicographic order of the
    /// sorted prime list.
    pub fn subsets(&self, min: usize, max: usize) -> Vec<PrimeSet> {
        let primes: Vec<u64> = self.iter().collect();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << primes.len()) {
            let size = mask.count_ones() as usize;
            if size < min || size > max {
                continue;
            }
            out.push(Self(
                primes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect(),
            ));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Parses a comma separated list such as `2,3,5`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut primes = Vec::new();
        for part in text.split(',') {
            let value: u64 = part
                .parse()
                .map_err(|_| format!("`{part}` is not a decimal integer"))?;
            primes.push(value);
        }
        Self::new(primes).map_err(|e| e.to_string())
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = ArithError;
    fn try_from(value: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(value: PrimeSet) -> Self {
        value.0.into_iter().collect()
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// An exact prime factorization. `factors` is sorted by prime with positive
/// exponents, and `value` is their product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Assembles a factorization from (prime, exponent) pairs. Zero exponents
    /// are dropped and repeated primes are merged.
    pub fn from_factors<I: IntoIterator<Item = (u64, u32)>>(factors: I) -> Result<Self, ArithError> {
        let mut acc = Self::one();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            acc = acc.mul(&Self::prime_power(p, e));
        }
        Ok(acc)
    }

    fn prime_power(p: u64, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self {
            value: BigUint::from(p).pow(e),
            factors: vec![(p, e)],
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// The value as a `u64`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.value).ok()
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn primes(&self) -> PrimeSet {
        PrimeSet::from_known_primes(self.factors.iter().map(|&(p, _)| p))
    }

    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, a)), Some(&(q, b))) if p == q => {
                    merged.push((p, a + b));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, a)), Some(&(q, _))) if p < q => {
                    merged.push((p, a));
                    i += 1;
                }
                (Some(_), Some(&(q, b))) | (None, Some(&(q, b))) => {
                    merged.push((q, b));
                    j += 1;
                }
                (Some(&(p, a)), None) => {
                    merged.push((p, a));
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Factorization {
            value: &self.value * &other.value,
            factors: merged,
        }
    }

    pub fn pow(&self, e: u32) -> Factorization {
        Factorization {
            value: self.value.pow(e),
            factors: if e == 0 {
                Vec::new()
            } else {
                self.factors.iter().map(|&(p, a)| (p, a * e)).collect()
            },
        }
    }

    /// Exact quotient; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Factorization) -> Result<Factorization, ArithError> {
        let mut factors = self.factors.clone();
        for &(p, b) in &divisor.factors {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some((_, a)) if *a >= b => *a -= b,
                _ => return Err(ArithError::Inexact(divisor.value.to_string())),
            }
        }
        factors.retain(|&(_, a)| a > 0);
        Ok(Factorization {
            value: &self.value / &divisor.value,
            factors,
        })
    }

    /// The largest divisor supported on `pi`.
    pub fn pi_part(&self, pi: &PrimeSet) -> Factorization {
        let factors: Vec<(u64, u32)> = self
            .factors
            .iter()
            .copied()
            .filter(|&(p, _)| pi.contains(p))
            .collect();
        let value = factors
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e));
        Factorization { value, factors }
    }

    /// The largest divisor coprime to every prime of `pi`.
    pub fn pi_complement_part(&self, pi: &PrimeSet) -> Factorization {
        self.pi_part(&self.primes().difference(pi))
    }

    pub fn divides(&self, other: &Factorization) -> bool {
        self.factors.iter().all(|&(p, e)| other.exponent(p) >= e)
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {self}", self.value)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial division with a primality shortcut for the remaining cofactor.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    for p in [2u64, 3] {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut d = 5u64;
    let mut rest_is_prime = is_prime(rest);
    while rest > 1 && !rest_is_prime && d.saturating_mul(d) <= rest {
        for cand in [d, d + 2] {
            let mut e = 0;
            while rest.is_multiple_of(cand) {
                rest /= cand;
                e += 1;
            }
            if e > 0 {
                factors.push((cand, e));
                rest_is_prime = is_prime(rest);
            }
        }
        d += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    factors.sort_unstable();
    Ok(Factorization {
        value: BigUint::from(n),
        factors,
    })
}

pub fn prime_divisors(n: u64) -> Result<PrimeSet, ArithError> {
    Ok(factorize(n)?.primes())
}

/// The π-part of `n`: the largest divisor of `n` all of whose prime divisors
/// lie in `pi`.
pub fn pi_part(n: u64, pi: &PrimeSet) -> Result<u64, ArithError> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .filter(|&&(p, _)| pi.contains(p))
        .map(|&(p, e)| p.pow(e))
        .product())
}

/// Multiplicative order of `q` modulo the prime `r`, written e(q, r).
///
/// For r = 2 this returns 1 when q ≡ 1 (mod 4) and 2 otherwise; no criterion
/// relies on that case beyond having a defined value.
pub fn mult_order(q: u64, r: u64) -> Result<u64, ArithError> {
    if !is_prime(r) {
        return Err(ArithError::NotPrime(r));
    }
    if q.is_multiple_of(r) {
        return Err(ArithError::NotCoprime { base: q, modulus: r });
    }
    if r == 2 {
        return Ok(if q % 4 == 1 { 1 } else { 2 });
    }
    // Strip prime factors of r - 1 while the power stays 1.
    let mut order = r - 1;
    for &(p, _) in factorize(r - 1)?.factors() {
        while order.is_multiple_of(p) && pow_mod(q, order / p, r) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// The sign ε ∈ {+1, −1} with q ≡ ε (mod 4).
pub fn epsilon(q: u64) -> Result<i8, ArithError> {
    if q.is_multiple_of(2) {
        return Err(ArithError::EvenModulus(q));
    }
    Ok(if q % 4 == 1 { 1 } else { -1 })
}

/// Factorization of n!, via Legendre's formula.
pub fn factorial_factorization(n: u64) -> Factorization {
    let factors = (2..=n).filter(|&p| is_prime(p)).map(|p| {
        let mut e = 0u32;
        let mut pk = p;
        while pk <= n {
            e += (n / pk) as u32;
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
        (p, e)
    });
    // Primes are generated in increasing order with positive exponents.
    let factors: Vec<(u64, u32)> = factors.collect();
    let value = factors
        .iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e));
    Factorization { value, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        out
    }

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(naive_factor(34440), vec![(2, 3), (3, 1), (5, 1), (7, 1), (41, 1)]);
        assert_eq!(factorize(34440).unwrap().factors(), naive_factor(34440).as_slice());
        assert_eq!(factorize(24).unwrap().factors(), &[(2, 3), (3, 1)]);
        assert_eq!(factorize(0), Err(ArithError::Zero));
    }

    #[test]
    fn factorize_large_semiprime() {
        let (a, b) = (1_000_003u64, 999_983u64);
        let f = factorize(a * b).unwrap();
        assert_eq!(f.factors(), &[(b, 1), (a, 1)]);
    }

    #[test]
    fn prime_divisor_examples() {
        assert_eq!(prime_divisors(40).unwrap(), set(&[2, 5]));
        assert_eq!(prime_divisors(34440).unwrap(), set(&[2, 3, 5, 7, 41]));
        assert!(prime_divisors(1).unwrap().is_empty());
    }

    #[test]
    fn pi_part_examples() {
        assert_eq!(pi_part(120, &set(&[2, 3])).unwrap(), 24);
        assert_eq!(pi_part(34440, &set(&[2, 3, 5])).unwrap(), 120);
        let n = 9_699_690;
        assert_eq!(pi_part(n, &prime_divisors(n).unwrap()).unwrap(), n);
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(41, 5).unwrap(), 1);
        assert_eq!(mult_order(41, 3).unwrap(), 2);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert!(matches!(mult_order(15, 5), Err(ArithError::NotCoprime { .. })));
        assert!(matches!(mult_order(4, 9), Err(ArithError::NotPrime(9))));
        assert_eq!(mult_order(5, 2).unwrap(), 1);
        assert_eq!(mult_order(7, 2).unwrap(), 2);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(41).unwrap(), 1);
        assert_eq!(epsilon(11).unwrap(), -1);
        assert_eq!(epsilon(13).unwrap(), 1);
        assert_eq!(epsilon(8), Err(ArithError::EvenModulus(8)));
    }

    #[test]
    fn primality_edge_cases() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        // strong pseudoprime to bases 2..=37 is beyond u64; check a Carmichael number
        assert!(!is_prime(561));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization_arithmetic() {
        let a = factorize(360).unwrap();
        let b = factorize(84).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.to_u64(), Some(360 * 84));
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&factorize(7).unwrap()).is_err());
        assert_eq!(a.pow(3).to_u64(), Some(360u64.pow(3)));
        assert_eq!(factorial_factorization(8).to_u64(), Some(40320));
        assert_eq!(factorial_factorization(1), Factorization::one());
    }

    #[test]
    fn subsets_are_sized_and_sorted() {
        let s = set(&[2, 3, 5, 7]);
        let subs = s.subsets(2, 3);
        assert_eq!(subs.len(), 6 + 4);
        assert_eq!(subs[0], set(&[2, 3]));
        assert!(subs.iter().all(|x| (2..=3).contains(&x.len())));
    }

    #[test]
    fn prime_set_parse() {
        assert_eq!(PrimeSet::parse("5,2,3").unwrap(), set(&[2, 3, 5]));
        assert!(PrimeSet::parse("2,4").is_err());
        assert!(PrimeSet::parse("2, 3").is_err());
        assert_eq!(set(&[3, 2]).to_string(), "{2,3}");
    }
}
