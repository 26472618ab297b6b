//! Permutation-group kernel: deterministic Schreier–Sims, membership,
//! element enumeration, normalizers by scan, and derived series.
//!
//! Permutations act on the right: `x^(ab) = (x^a)^b`, so `a.compose(&b)`
//! applies `a` first.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashSet;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Points are stored as bytes, which bounds any degree by this value.
pub const HARD_DEGREE_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    EnumerationCap { order: String, cap: u64 },
    #[error("image list is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("cannot parse permutation `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

/// Configurable size caps for the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_degree: usize,
    pub max_enum: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_degree: 128,
            max_enum: 200_000,
        }
    }
}

impl Limits {
    pub fn check_degree(&self, degree: usize) -> Result<(), PermError> {
        let cap = self.max_degree.min(HARD_DEGREE_LIMIT);
        if degree > cap {
            return Err(PermError::DegreeCap { degree, cap });
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u8]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= HARD_DEGREE_LIMIT);
        Self {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree > HARD_DEGREE_LIMIT {
            return Err(PermError::DegreeCap {
                degree,
                cap: HARD_DEGREE_LIMIT,
            });
        }
        let mut seen = vec![false; degree];
        for &x in images {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijection(degree));
            }
        }
        Ok(Self {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || std::mem::replace(&mut touched[x], true) {
                    return Err(PermError::NotBijection(degree));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses cycle notation such as `(0,1,2)(3,4)`; `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self, PermError> {
        let err = |reason: &str| PermError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| err("expected `(`"))?
                .get(..body_end - 1)
                .unwrap_or_default();
            if !body.is_empty() {
                let cycle = body
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| err("bad point")))
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(cycle);
            }
            rest = rest[body_end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs).map_err(|e| err(&e.to_string()))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i != x as usize).map(|(i, _)| i)
    }

    /// `self` then `other`.
    #[inline]
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv.into() }
    }

    pub fn pow(&self, mut exp: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    /// `x⁻¹·self·x`
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        let mut out = vec![0u8; self.degree()];
        // (x⁻¹ s x) maps x(i) to x(s(i))
        for i in 0..self.degree() {
            out[x.images[i] as usize] = x.images[self.images[i] as usize];
        }
        Perm { images: out.into() }
    }

    /// `[a, b] = a⁻¹·b⁻¹·a·b`
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc / crate::arith::gcd(acc, c.len() as u64) * c.len() as u64)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[b] = (u, u⁻¹)` with `base^u = b`.
    transversal: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        let id = Perm::identity(degree);
        self.transversal[self.base] = Some((id.clone(), id));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for x in &self.gens {
                let c = x.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().0.compose(x);
                    let u_inv = u.inverse();
                    self.transversal[c] = Some((u, u_inv));
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set, stored as a stabilizer chain.
#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Perm]) -> Self {
        let mut strong: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in &strong {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.first_moved().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.base).collect();
            let level_gens: Vec<Perm> = strong
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            chain.levels[i].gens = level_gens;
            chain.levels[i].rebuild_orbit();
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match chain.failing_schreier_generator(level) {
                Some((y, j)) => {
                    if j == chain.levels.len() {
                        let b = y.first_moved().expect("non-identity residue");
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in level + 1..=j {
                        chain.levels[l].gens.push(y.clone());
                        chain.levels[l].rebuild_orbit();
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// Sifts every Schreier generator of `level` through the deeper levels and
    /// returns the first non-trivial residue with the level where it stopped.
    fn failing_schreier_generator(&self, level: usize) -> Option<(Perm, usize)> {
        let lv = &self.levels[level];
        for &b in &lv.orbit {
            let u = &lv.transversal[b].as_ref().unwrap().0;
            for x in &lv.gens {
                let c = x.image(b);
                let uc_inv = &lv.transversal[c].as_ref().unwrap().1;
                let h = u.compose(x).compose(uc_inv);
                if h.is_identity() {
                    continue;
                }
                let (y, j) = self.strip_from(h, level + 1);
                if !y.is_identity() {
                    return Some((y, j));
                }
            }
        }
        None
    }

    fn strip_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.image(level.base);
            match &level.transversal[b] {
                None => return (g, k),
                Some((_, u_inv)) => g = g.compose(u_inv),
            }
        }
        (g, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        let (residue, _) = self.strip_from(g.clone(), 0);
        residue.is_identity()
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn elements(&self) -> Vec<Perm> {
        let mut elems = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for e in &elems {
                for &b in &level.orbit {
                    next.push(e.compose(&level.transversal[b].as_ref().unwrap().0));
                }
            }
            elems = next;
        }
        elems
    }
}

/// A permutation group with its stabilizer chain built eagerly.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>, limits: &Limits) -> Result<Self, PermError> {
        limits.check_degree(degree)?;
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &generators);
        let order = chain.order();
        Ok(Self {
            degree,
            generators,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new(), &Limits { max_degree: HARD_DEGREE_LIMIT, max_enum: 1 })
            .expect("degree within hard limit")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Exact order, the product of the basic orbit lengths.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, x: &Perm) -> Result<bool, PermError> {
        if x.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        Ok(self.chain.contains(x))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain.contains(g))
    }

    /// Same underlying set of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn with_generator(&self, g: Perm, limits: &Limits) -> Result<PermGroup, PermError> {
        let mut gens = self.generators.clone();
        gens.push(g);
        PermGroup::new(self.degree, gens, limits)
    }

    pub fn enumerate(&self, limits: &Limits) -> Result<ElementTable, PermError> {
        match self.order_u64() {
            Some(n) if n <= limits.max_enum => {}
            _ => {
                return Err(PermError::EnumerationCap {
                    order: self.order.to_string(),
                    cap: limits.max_enum,
                })
            }
        }
        Ok(ElementTable::from_elements(self.chain.elements()))
    }
}

/// Group generated by `gens`, with exact order.
pub fn closure(gens: &[Perm], limits: &Limits) -> Result<PermGroup, PermError> {
    let first = gens.first().ok_or(PermError::NoGenerators)?;
    PermGroup::new(first.degree(), gens.to_vec(), limits)
}

/// Every element of a group, with hashed membership.
#[derive(Debug, Clone)]
pub struct ElementTable {
    elements: Vec<Perm>,
    index: FxHashSet<Perm>,
}

impl ElementTable {
    fn from_elements(elements: Vec<Perm>) -> Self {
        let index = elements.iter().cloned().collect();
        Self { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.index.contains(x)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Perm> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[Perm] {
        &self.elements
    }
}

/// Elements of `⟨gens⟩`, or `None` as soon as more than `limit` are found.
pub fn closure_elements(degree: usize, gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: FxHashSet<Perm> = FxHashSet::default();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let h = elements[i].compose(g);
            if !seen.contains(&h) {
                if elements.len() >= limit {
                    return None;
                }
                seen.insert(h.clone());
                elements.push(h);
            }
        }
        i += 1;
    }
    Some(elements)
}

/// `N_G(sub)`, found by scanning every element of `g`.
pub fn normalizer_scan(g: &PermGroup, sub: &PermGroup, limits: &Limits) -> Result<PermGroup, PermError> {
    if sub.degree() != g.degree() {
        return Err(PermError::DegreeMismatch {
            expected: g.degree(),
            found: sub.degree(),
        });
    }
    let table = g.enumerate(limits)?;
    let mut normalizer = PermGroup::new(g.degree(), sub.generators().to_vec(), limits)?;
    for x in table.iter() {
        if normalizer.chain.contains(x) {
            continue;
        }
        if sub.generators().iter().all(|s| sub.chain.contains(&s.conjugate_by(x))) {
            normalizer = normalizer.with_generator(x.clone(), limits)?;
        }
    }
    Ok(normalizer)
}

/// `sub^x`, generated by the conjugated generators.
pub fn conjugate_subgroup(sub: &PermGroup, x: &Perm, limits: &Limits) -> Result<PermGroup, PermError> {
    if x.degree() != sub.degree() {
        return Err(PermError::DegreeMismatch {
            expected: sub.degree(),
            found: x.degree(),
        });
    }
    let gens = sub.generators().iter().map(|s| s.conjugate_by(x)).collect();
    PermGroup::new(sub.degree(), gens, limits)
}

/// Smallest normal subgroup of `g` containing `gens`.
pub fn normal_closure(g: &PermGroup, gens: Vec<Perm>, limits: &Limits) -> Result<PermGroup, PermError> {
    let mut n = PermGroup::new(g.degree(), gens, limits)?;
    let mut pending: Vec<Perm> = n.generators().to_vec();
    while let Some(s) = pending.pop() {
        for x in g.generators() {
            let c = s.conjugate_by(x);
            if !n.chain.contains(&c) {
                n = n.with_generator(c.clone(), limits)?;
                pending.push(c);
            }
        }
    }
    Ok(n)
}

/// Commutator subgroup, as the normal closure of the generator commutators.
pub fn derived_subgroup(g: &PermGroup, limits: &Limits) -> Result<PermGroup, PermError> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Perm::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, comms, limits)
}

#[derive(Debug, Clone)]
pub struct DerivedSeries {
    /// G = G⁽⁰⁾ > G⁽¹⁾ > … ; strictly decreasing, ending at 1 or at a perfect term.
    pub terms: Vec<PermGroup>,
    pub solvable: bool,
}

impl DerivedSeries {
    pub fn orders(&self) -> Vec<BigUint> {
        self.terms.iter().map(|t| t.order().clone()).collect()
    }
}

pub fn derived_series(g: &PermGroup, limits: &Limits) -> Result<DerivedSeries, PermError> {
    if g.order_u64().is_none_or(|n| n > limits.max_enum) {
        return Err(PermError::EnumerationCap {
            order: g.order().to_string(),
            cap: limits.max_enum,
        });
    }
    let mut terms = vec![g.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            return Ok(DerivedSeries { terms, solvable: true });
        }
        let next = derived_subgroup(last, limits)?;
        if next.order() == last.order() {
            return Ok(DerivedSeries { terms, solvable: false });
        }
        terms.push(next);
    }
}

pub fn is_solvable(g: &PermGroup, limits: &Limits) -> Result<bool, PermError> {
    Ok(derived_series(g, limits)?.solvable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let shift: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![cyc(n, &[&[0, 1]]), cyc(n, &[&shift])], &Limits::default()).unwrap()
    }

    fn alt4() -> PermGroup {
        PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])], &Limits::default()).unwrap()
    }

    #[test]
    fn perm_basics() {
        let a = cyc(5, &[&[0, 1, 2]]);
        let b = cyc(5, &[&[3, 4]]);
        assert_eq!(a.compose(&b).order(), 6);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(5));
        assert_eq!(a.pow(3), Perm::identity(5));
        assert_eq!(a.to_string(), "(0,1,2)");
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert_eq!(Perm::parse(5, "(0,1,2)(3,4)").unwrap(), a.compose(&b));
        assert_eq!(Perm::parse(4, "()").unwrap(), Perm::identity(4));
        assert!(Perm::parse(3, "(0,1,5)").is_err());
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        // right action: 0 -(a)-> 1 -(b)-> 1
        let c = cyc(3, &[&[1, 2]]);
        let ab = cyc(3, &[&[0, 1]]).compose(&c);
        assert_eq!(ab.image(0), 2);
    }

    #[test]
    fn conjugation_matches_definition() {
        let s = cyc(6, &[&[0, 1, 2], &[3, 4]]);
        let x = cyc(6, &[&[0, 5, 3, 1]]);
        assert_eq!(s.conjugate_by(&x), x.inverse().compose(&s).compose(&x));
    }

    #[test]
    fn orders() {
        assert_eq!(sym(4).order_u64(), Some(24));
        assert_eq!(sym(7).order_u64(), Some(5040));
        assert_eq!(PermGroup::trivial(5).order_u64(), Some(1));
        let c5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]])], &Limits::default()).unwrap();
        assert_eq!(c5.order_u64(), Some(5));
        assert_eq!(sym(5).order_u64(), Some(120));
        assert_eq!(sym(20).order().to_string(), "2432902008176640000");
    }

    #[test]
    fn order_is_generator_independent() {
        let a = cyc(6, &[&[0, 1, 2, 3, 4, 5]]);
        let b = cyc(6, &[&[0, 1]]);
        let g1 = PermGroup::new(6, vec![a.clone(), b.clone()], &Limits::default()).unwrap();
        let g2 = PermGroup::new(6, vec![b.clone(), a.clone(), a.compose(&b)], &Limits::default()).unwrap();
        assert_eq!(g1.order(), g2.order());
        assert!(g1.same_group(&g2));
    }

    #[test]
    fn membership() {
        let a4 = alt4();
        assert!(a4.contains(&cyc(4, &[&[0, 2, 3]])).unwrap());
        assert!(!a4.contains(&cyc(4, &[&[0, 1]])).unwrap());
        assert!(a4.contains(&Perm::identity(4)).unwrap());
        assert!(matches!(a4.contains(&Perm::identity(5)), Err(PermError::DegreeMismatch { .. })));
    }

    #[test]
    fn enumeration() {
        let table = sym(7).enumerate(&Limits::default()).unwrap();
        assert_eq!(table.len(), 5040);
        let distinct: FxHashSet<&Perm> = table.iter().collect();
        assert_eq!(distinct.len(), 5040);
        assert_eq!(PermGroup::trivial(3).enumerate(&Limits::default()).unwrap().len(), 1);
        let tight = Limits { max_enum: 100, ..Limits::default() };
        assert!(matches!(sym(5).enumerate(&tight), Err(PermError::EnumerationCap { .. })));
    }

    #[test]
    fn degree_cap() {
        let limits = Limits { max_degree: 4, ..Limits::default() };
        assert!(matches!(
            PermGroup::new(5, vec![], &limits),
            Err(PermError::DegreeCap { degree: 5, cap: 4 })
        ));
    }

    #[test]
    fn bounded_closure() {
        let gens = [cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        assert_eq!(closure_elements(5, &gens, 120).unwrap().len(), 120);
        assert!(closure_elements(5, &gens, 119).is_none());
        assert_eq!(closure_elements(5, &[], 10).unwrap().len(), 1);
    }

    #[test]
    fn normalizers() {
        let g = sym(4);
        let limits = Limits::default();
        let v4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])], &limits).unwrap();
        assert_eq!(normalizer_scan(&g, &v4, &limits).unwrap().order_u64(), Some(24));
        let c3 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2]])], &limits).unwrap();
        assert_eq!(normalizer_scan(&g, &c3, &limits).unwrap().order_u64(), Some(6));
        assert!(normalizer_scan(&g, &g, &limits).unwrap().same_group(&g));
        assert!(normalizer_scan(&g, &PermGroup::trivial(4), &limits).unwrap().same_group(&g));
    }

    #[test]
    fn derived_series_examples() {
        let limits = Limits::default();
        let s4 = derived_series(&sym(4), &limits).unwrap();
        let orders: Vec<u64> = s4.terms.iter().map(|t| t.order_u64().unwrap()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(s4.solvable);

        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])], &limits).unwrap();
        let series = derived_series(&a5, &limits).unwrap();
        assert_eq!(series.terms.len(), 1);
        assert_eq!(series.terms[0].order_u64(), Some(60));
        assert!(!series.solvable);

        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])], &limits).unwrap();
        let series = derived_series(&c6, &limits).unwrap();
        assert_eq!(series.terms.len(), 2);
        assert!(series.terms[1].is_trivial() && series.solvable);
    }

    #[test]
    fn conjugates() {
        let limits = Limits::default();
        let p = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]])], &limits).unwrap();
        let same = conjugate_subgroup(&p, &Perm::identity(5), &limits).unwrap();
        assert!(same.same_group(&p));
        let moved = conjugate_subgroup(&p, &cyc(5, &[&[2, 3, 4]]), &limits).unwrap();
        assert_eq!(moved.order(), p.order());
        assert!(!moved.same_group(&p));
    }
}
