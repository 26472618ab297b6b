//! Permutation realizations of Sym_n, Alt_n and PSL₂(q) for prime q, plus
//! Sylow subgroups and their conjugation orbits.

use std::fmt;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::arith::{is_prime, pi_part, PrimeSet};
use crate::catalog::{Family, GroupDescriptor, Sign};
use crate::permgrp::{closure_elements, ElementTable, Limits, Perm, PermError, PermGroup};

pub const MAX_SYMMETRIC_DEGREE: u32 = 10;
pub const PSL2_FIELD_RANGE: std::ops::RangeInclusive<u64> = 5..=61;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no permutation construction for `{0}` (supported: Alt:n and Sym:n with n ≤ 10, PSL+:2:q with q prime in 5..=61)")]
    Unsupported(String),
    #[error("{r} does not divide the group order")]
    PrimeNotDividing { r: u64 },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A point of the projective line over GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjectivePoint {
    Infinity,
    Residue(u64),
}

impl ProjectivePoint {
    /// Index in the fixed ordering `[∞, 0, 1, …, q−1]`.
    pub fn index(self) -> usize {
        match self {
            ProjectivePoint::Infinity => 0,
            ProjectivePoint::Residue(k) => k as usize + 1,
        }
    }

    pub fn from_index(index: usize) -> Self {
        match index {
            0 => ProjectivePoint::Infinity,
            k => ProjectivePoint::Residue(k as u64 - 1),
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Infinity => write!(f, "∞"),
            ProjectivePoint::Residue(k) => write!(f, "{k}"),
        }
    }
}

pub fn is_constructible(d: &GroupDescriptor) -> bool {
    match d.family {
        Family::Alt => d.n >= 3 && d.n <= MAX_SYMMETRIC_DEGREE,
        Family::Sym => d.n <= MAX_SYMMETRIC_DEGREE,
        Family::PSL => {
            d.n == 2
                && d.eta == Sign::Plus
                && d.q.is_some_and(|q| is_prime(q) && PSL2_FIELD_RANGE.contains(&q))
        }
        _ => false,
    }
}

pub fn build_group(d: &GroupDescriptor, limits: &Limits) -> Result<PermGroup, ConstructionError> {
    if !is_constructible(d) {
        return Err(ConstructionError::Unsupported(d.to_string()));
    }
    let group = match d.family {
        Family::Alt => PermGroup::new(d.n as usize, alternating_generators(d.n as usize), limits)?,
        Family::Sym => PermGroup::new(d.n as usize, symmetric_generators(d.n as usize), limits)?,
        _ => {
            let q = d.q.expect("constructible PSL has a field size");
            PermGroup::new(q as usize + 1, psl2_generators(q), limits)?
        }
    };
    Ok(group)
}

fn cycle(degree: usize, points: &[usize]) -> Perm {
    Perm::from_cycles(degree, &[points]).expect("distinct points in range")
}

/// `(0 1)` and the n-cycle; empty for n ≤ 1.
pub fn symmetric_generators(n: usize) -> Vec<Perm> {
    if n <= 1 {
        return Vec::new();
    }
    let full: Vec<usize> = (0..n).collect();
    vec![cycle(n, &[0, 1]), cycle(n, &full)]
}

/// `(0 1 2)` with the n-cycle (n odd) or the cycle on `1..n` (n even).
pub fn alternating_generators(n: usize) -> Vec<Perm> {
    assert!(n >= 3);
    let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    vec![cycle(n, &[0, 1, 2]), cycle(n, &long)]
}

/// `x ↦ x + 1` and `x ↦ −1/x` on the projective line.
pub fn psl2_generators(q: u64) -> Vec<Perm> {
    let translate = |p: ProjectivePoint| match p {
        ProjectivePoint::Infinity => ProjectivePoint::Infinity,
        ProjectivePoint::Residue(k) => ProjectivePoint::Residue((k + 1) % q),
    };
    let invert = |p: ProjectivePoint| match p {
        ProjectivePoint::Infinity => ProjectivePoint::Residue(0),
        ProjectivePoint::Residue(0) => ProjectivePoint::Infinity,
        ProjectivePoint::Residue(k) => {
            let inv = crate::arith::pow_mod(k, q - 2, q);
            ProjectivePoint::Residue((q - inv) % q)
        }
    };
    vec![projective_perm(q, translate), projective_perm(q, invert)]
}

fn projective_perm(q: u64, f: impl Fn(ProjectivePoint) -> ProjectivePoint) -> Perm {
    let images: Vec<usize> = (0..=q as usize)
        .map(|i| f(ProjectivePoint::from_index(i)).index())
        .collect();
    Perm::from_images(&images).expect("Möbius maps are bijections")
}

fn is_power_of(mut n: u64, r: u64) -> bool {
    if n <= 1 {
        return false;
    }
    while n.is_multiple_of(r) {
        n /= r;
    }
    n == 1
}

fn normalizes(x: &Perm, p: &PermGroup) -> bool {
    p.generators().iter().all(|s| p.contains(&s.conjugate_by(x)).unwrap_or(false))
}

pub fn sylow(g: &PermGroup, r: u64, limits: &Limits) -> Result<PermGroup, ConstructionError> {
    let table = g.enumerate(limits)?;
    sylow_in_table(g, &table, r, limits)
}

/// Sylow r-subgroup by normalizer ascent over a precomputed element table.
pub fn sylow_in_table(
    g: &PermGroup,
    table: &ElementTable,
    r: u64,
    limits: &Limits,
) -> Result<PermGroup, ConstructionError> {
    let order = g.order_u64().expect("enumerable groups fit in u64");
    let singleton = PrimeSet::new([r]).map_err(|_| ConstructionError::PrimeNotDividing { r })?;
    let target = pi_part(order, &singleton).expect("order is positive");
    if target == 1 {
        return Err(ConstructionError::PrimeNotDividing { r });
    }
    let r_elements: Vec<(&Perm, u64)> = table
        .iter()
        .map(|x| (x, x.order()))
        .filter(|&(_, o)| is_power_of(o, r))
        .collect();
    let start = r_elements
        .iter()
        .max_by_key(|&&(x, o)| (o, std::cmp::Reverse(x)))
        .expect("Cauchy: an element of order r exists")
        .0;
    let mut p = PermGroup::new(g.degree(), vec![start.clone()], limits)?;
    while p.order_u64() != Some(target) {
        let y = r_elements
            .iter()
            .map(|&(x, _)| x)
            .find(|x| !p.contains(x).unwrap_or(true) && normalizes(x, &p))
            .expect("a proper r-subgroup has an r-element of its normalizer outside it");
        p = p.with_generator(y.clone(), limits)?;
    }
    Ok(p)
}

/// Sorted element list: the canonical identity of a small subgroup.
pub fn subgroup_key(degree: usize, gens: &[Perm], order: usize) -> Vec<Perm> {
    let mut elements = closure_elements(degree, gens, order).expect("order bound is exact");
    elements.sort_unstable();
    elements
}

/// The conjugation orbit of `p_sub` under `g`, deduplicated by canonical key.
pub fn sylow_conjugates(g: &PermGroup, p_sub: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>, ConstructionError> {
    if !p_sub.is_subgroup_of(g) {
        return Err(ConstructionError::Unsupported("subgroup not contained in the group".into()));
    }
    let order = p_sub.order_u64().filter(|&o| o <= limits.max_enum).ok_or_else(|| {
        PermError::EnumerationCap {
            order: p_sub.order().to_string(),
            cap: limits.max_enum,
        }
    })? as usize;
    let degree = g.degree();
    let mut seen: FxHashSet<Vec<Perm>> = FxHashSet::default();
    seen.insert(subgroup_key(degree, p_sub.generators(), order));
    let mut orbit = vec![p_sub.clone()];
    let mut i = 0;
    while i < orbit.len() {
        for x in g.generators() {
            let gens: Vec<Perm> = orbit[i].generators().iter().map(|s| s.conjugate_by(x)).collect();
            let key = subgroup_key(degree, &gens, order);
            if seen.insert(key) {
                orbit.push(PermGroup::new(degree, gens, limits)?);
            }
        }
        i += 1;
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::group_order;
    use crate::permgrp::normalizer_scan;

    fn build(text: &str) -> PermGroup {
        build_group(&GroupDescriptor::parse(text).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn orders_match_catalog() {
        for text in ["Alt:5", "Alt:3", "Sym:1", "Sym:2", "Sym:6", "Alt:8", "PSL+:2:7", "PSL+:2:41", "PSL+:2:61"] {
            let d = GroupDescriptor::parse(text).unwrap();
            let g = build_group(&d, &Limits::default()).unwrap();
            assert_eq!(g.order(), group_order(&d).unwrap().value(), "{text}");
        }
        assert_eq!(build("Alt:5").degree(), 5);
        assert_eq!(build("PSL+:2:7").degree(), 8);
        assert_eq!(build("PSL+:2:41").order_u64(), Some(34440));
    }

    #[test]
    fn unsupported_descriptors() {
        for text in ["PSL+:2:9", "PSL+:2:67", "PSL-:2:7", "PSL+:3:5", "Alt:11", "Spor:J1", "G2:3"] {
            let d = GroupDescriptor::parse(text).unwrap();
            assert!(matches!(build_group(&d, &Limits::default()), Err(ConstructionError::Unsupported(_))), "{text}");
        }
    }

    #[test]
    fn projective_generators_are_bit_exact() {
        let gens = psl2_generators(5);
        // points [∞,0,1,2,3,4] at indices 0..=5
        assert_eq!(gens[0].images(), vec![0, 2, 3, 4, 5, 1]);
        // −1/x over GF(5): 1↦4, 2↦2, 3↦3, 4↦1
        assert_eq!(gens[1].images(), vec![1, 0, 5, 3, 4, 2]);
        assert_eq!(ProjectivePoint::from_index(3), ProjectivePoint::Residue(2));
        assert_eq!(ProjectivePoint::Infinity.index(), 0);
    }

    #[test]
    fn point_stabilizer_is_borel() {
        for q in [5u64, 7, 11, 13] {
            let g = build(&format!("PSL+:2:{q}"));
            let table = g.enumerate(&Limits::default()).unwrap();
            let stab = table.iter().filter(|x| x.image(0) == 0).count() as u64;
            assert_eq!(stab, q * (q - 1) / 2);
            // 2-transitivity: the stabilizer of ∞ is transitive on the residues
            let orbit: FxHashSet<usize> = table.iter().filter(|x| x.image(0) == 0).map(|x| x.image(1)).collect();
            assert_eq!(orbit.len() as u64, q);
        }
    }

    #[test]
    fn sylow_orders() {
        let limits = Limits::default();
        let g = build("PSL+:2:41");
        assert_eq!(sylow(&g, 2, &limits).unwrap().order_u64(), Some(8));
        assert_eq!(sylow(&g, 41, &limits).unwrap().order_u64(), Some(41));
        assert_eq!(sylow(&build("Sym:4"), 2, &limits).unwrap().order_u64(), Some(8));
        assert!(matches!(sylow(&g, 11, &limits), Err(ConstructionError::PrimeNotDividing { r: 11 })));
    }

    #[test]
    fn conjugate_counts() {
        let limits = Limits::default();
        let g = build("PSL+:2:41");
        for (r, count) in [(5u64, 861usize), (3, 820), (41, 42), (7, 820)] {
            let p = sylow(&g, r, &limits).unwrap();
            let conj = sylow_conjugates(&g, &p, &limits).unwrap();
            assert_eq!(conj.len(), count, "r = {r}");
            assert_eq!(count as u64 % r, 1);
            assert!(conj.iter().all(|c| c.order() == p.order()));
            if r == 5 {
                let n = normalizer_scan(&g, &p, &limits).unwrap();
                assert_eq!(n.order_u64(), Some(40));
                assert_eq!(34440 / 40, count as u64);
            }
        }
        // Alt:4 ⊲ Sym:4 contains the normal Sylow-2 of Alt:4
        let a4 = build("Alt:4");
        let v4 = sylow(&a4, 2, &limits).unwrap();
        assert_eq!(sylow_conjugates(&a4, &v4, &limits).unwrap().len(), 1);
    }
}
