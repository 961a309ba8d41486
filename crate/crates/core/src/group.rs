//! Permutation groups backed by a base and strong generating set.
//!
//! Construction is a deterministic Schreier–Sims: base points are chosen as
//! the first point moved by the generator that needs one, and Schreier
//! generators are examined in orbit order, so the same input generator list
//! always yields the same chain and the same element traversal order.

use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::limits::Limits;
use crate::perm::{lcm, Permutation, Point};

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One level of the stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    base_point: Point,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// Orbit of `base_point` under `gens`, in discovery order; `orbit[0]` is the base point.
    orbit: Vec<Point>,
    /// Point -> position in `orbit`, or `NOT_IN_ORBIT`.
    position: Vec<u32>,
    /// `transversal[k]` maps the base point to `orbit[k]`.
    transversal: Vec<Permutation>,
    /// Inverses of `transversal`, used when sifting.
    inverses: Vec<Permutation>,
}

impl Level {
    fn new(base_point: Point, gens: Vec<Permutation>, degree: usize) -> Level {
        let mut level = Level {
            base_point,
            gens,
            orbit: Vec::new(),
            position: vec![NOT_IN_ORBIT; degree],
            transversal: Vec::new(),
            inverses: Vec::new(),
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.clear();
        self.position.iter_mut().for_each(|p| *p = NOT_IN_ORBIT);
        self.orbit.push(self.base_point);
        self.transversal.push(Permutation::identity(degree));
        self.position[self.base_point as usize] = 0;
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.position[gamma as usize] == NOT_IN_ORBIT {
                    self.position[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    let u = self.transversal[k].compose(s);
                    self.transversal.push(u);
                }
            }
            k += 1;
        }
        self.inverses = self.transversal.iter().map(Permutation::inverse).collect();
    }

    fn rep_inverse(&self, point: Point) -> Option<&Permutation> {
        match self.position[point as usize] {
            NOT_IN_ORBIT => None,
            k => Some(&self.inverses[k as usize]),
        }
    }
}

/// An immutable finite permutation group.
///
/// A `PermGroup` stands for both ambient groups and subgroups; operations
/// that need an ambient group take it as an explicit argument. Cloning is
/// cheap because the stabilizer chain is shared.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<[Level]>,
    order: u64,
}

impl PermGroup {
    /// `⟨gens⟩` on `degree` points. An empty generator list gives the trivial group.
    pub fn from_generators(gens: &[Permutation], degree: usize) -> Result<PermGroup> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let levels = schreier_sims(degree, Vec::new(), &generators);
        PermGroup::from_levels(degree, generators, levels)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: Arc::from(Vec::new()),
            order: 1,
        }
    }

    fn from_levels(degree: usize, generators: Vec<Permutation>, levels: Vec<Level>) -> Result<PermGroup> {
        let mut order: u64 = 1;
        for level in &levels {
            order = order
                .checked_mul(level.orbit.len() as u64)
                .ok_or(GroupError::OrderOverflow)?;
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: Arc::from(levels),
            order,
        })
    }

    /// The group generated by `self` together with `extra`, reusing the
    /// existing chain as the starting point of Schreier–Sims.
    pub fn extended(&self, extra: &[Permutation]) -> Result<PermGroup> {
        for g in extra {
            self.check_degree(g)?;
        }
        let new: Vec<Permutation> = extra.iter().filter(|g| !self.has(g)).cloned().collect();
        if new.is_empty() {
            return Ok(self.clone());
        }
        let mut generators = self.generators.clone();
        generators.extend(new.iter().cloned());
        let levels = schreier_sims(self.degree, self.chain.to_vec(), &new);
        PermGroup::from_levels(self.degree, generators, levels)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators this group was built from (identities removed).
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<Point> {
        self.chain.iter().map(|l| l.base_point).collect()
    }

    /// All strong generators, deduplicated, in chain order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in self.chain.iter() {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sizes of the basic orbits; their product is the order.
    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(())
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.has(g))
    }

    /// Membership for a permutation already known to have the right degree.
    pub(crate) fn has(&self, g: &Permutation) -> bool {
        let (residue, depth) = strip(&self.chain, g.clone(), 0);
        depth == self.chain.len() && residue.is_identity()
    }

    /// `self ≤ other`, tested on generators.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order <= other.order
            && other.order.is_multiple_of(self.order)
            && self.generators.iter().all(|g| other.has(g))
    }

    /// Same element set: equal orders and generator containment one way.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Position of `g` in the traversal order, or `None` if `g ∉ self`.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        let mut h = g.clone();
        let mut rank: u64 = 0;
        for level in self.chain.iter() {
            let beta = h.apply(level.base_point);
            let k = level.position[beta as usize];
            if k == NOT_IN_ORBIT {
                return None;
            }
            rank = rank * level.orbit.len() as u64 + k as u64;
            h = h.compose(&level.inverses[k as usize]);
        }
        h.is_identity().then_some(rank)
    }

    /// Element at position `rank` of the traversal order; rank 0 is the identity.
    pub fn unrank(&self, rank: u64) -> Permutation {
        assert!(rank < self.order, "rank {rank} out of range for order {}", self.order);
        let mut digits = vec![0usize; self.chain.len()];
        let mut r = rank;
        for (i, level) in self.chain.iter().enumerate().rev() {
            let n = level.orbit.len() as u64;
            digits[i] = (r % n) as usize;
            r /= n;
        }
        // g = u_{k-1} ⋯ u_1 u_0
        let mut g = Permutation::identity(self.degree);
        for (i, level) in self.chain.iter().enumerate().rev() {
            g = g.compose(&level.transversal[digits[i]]);
        }
        g
    }

    /// Every element exactly once, in traversal (rank) order.
    pub fn elements(&self, limits: &Limits) -> Result<Elements<'_>> {
        limits.check_elements("element enumeration", self.order)?;
        Ok(self.elements_unbounded())
    }

    pub(crate) fn elements_unbounded(&self) -> Elements<'_> {
        Elements::new(self)
    }

    /// The conjugate group `g⁻¹ self g`, with the stabilizer chain transported by `g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<PermGroup> {
        self.check_degree(g)?;
        let ginv = g.inverse();
        let conj = |x: &Permutation| ginv.compose(x).compose(g);
        let levels = self
            .chain
            .iter()
            .map(|level| {
                let orbit: Vec<Point> = level.orbit.iter().map(|&p| g.apply(p)).collect();
                let mut position = vec![NOT_IN_ORBIT; self.degree];
                for (k, &p) in orbit.iter().enumerate() {
                    position[p as usize] = k as u32;
                }
                Level {
                    base_point: g.apply(level.base_point),
                    gens: level.gens.iter().map(conj).collect(),
                    orbit,
                    position,
                    transversal: level.transversal.iter().map(conj).collect(),
                    inverses: level.inverses.iter().map(conj).collect(),
                }
            })
            .collect::<Vec<_>>();
        Ok(PermGroup {
            degree: self.degree,
            generators: self.generators.iter().map(conj).collect(),
            chain: Arc::from(levels),
            order: self.order,
        })
    }

    /// Orbits on points as a canonical labelling: entry `i` is the smallest point in the orbit of `i`.
    pub fn orbit_labels(&self) -> Vec<Point> {
        let mut parent: Vec<Point> = (0..self.degree as Point).collect();
        fn find(parent: &mut [Point], mut x: Point) -> Point {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        for g in &self.generators {
            for i in 0..self.degree as Point {
                let a = find(&mut parent, i);
                let b = find(&mut parent, g.apply(i));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        (0..self.degree as Point).map(|i| find(&mut parent, i)).collect()
    }

    /// Coset-canonical representative of `N·g` where `N = self`: the element
    /// of the coset whose images of the base points are lexicographically least.
    pub(crate) fn canonical_coset_rep(&self, g: &Permutation) -> Permutation {
        // n g over n ∈ N is determined by the base images b_i^n; choose them greedily.
        let mut current = g.clone();
        let mut prefix = Permutation::identity(self.degree);
        for level in self.chain.iter() {
            // current = prefix · g with prefix fixing the earlier base points
            let (best_k, _) = level
                .orbit
                .iter()
                .enumerate()
                .map(|(k, &beta)| (k, current.apply(beta)))
                .min_by_key(|&(_, img)| img)
                .expect("orbit is never empty");
            let u = &level.transversal[best_k];
            prefix = u.compose(&prefix);
            current = prefix.compose(g);
        }
        current
    }
}

/// Group element traversal driven by the stabilizer chain.
pub struct Elements<'a> {
    group: &'a PermGroup,
    next: u64,
}

impl<'a> Elements<'a> {
    fn new(group: &'a PermGroup) -> Self {
        Elements { group, next: 0 }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next >= self.group.order {
            return None;
        }
        let g = self.group.unrank(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.group.order - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Elements<'_> {}

/// Sift `g` through `chain` starting at level `from`. Returns the residue and
/// the level at which sifting stopped (`chain.len()` if it went all the way).
fn strip(chain: &[Level], mut g: Permutation, from: usize) -> (Permutation, usize) {
    for (i, level) in chain.iter().enumerate().skip(from) {
        let beta = g.apply(level.base_point);
        match level.rep_inverse(beta) {
            None => return (g, i),
            Some(u_inv) => g = g.compose(u_inv),
        }
    }
    (g, chain.len())
}

fn first_unfixed_base(base: &[Point], g: &Permutation) -> Option<usize> {
    base.iter().position(|&b| g.apply(b) != b)
}

/// Deterministic Schreier–Sims. `levels` may hold a complete chain for a
/// subgroup; `new_gens` are added to it.
fn schreier_sims(degree: usize, mut levels: Vec<Level>, new_gens: &[Permutation]) -> Vec<Level> {
    let mut base: Vec<Point> = levels.iter().map(|l| l.base_point).collect();
    for g in new_gens {
        if g.is_identity() {
            continue;
        }
        if first_unfixed_base(&base, g).is_none() {
            let b = g.first_moved_point().expect("non-identity moves a point");
            base.push(b);
            levels.push(Level::new(b, Vec::new(), degree));
        }
        // g belongs to every level up to (and including) its first moved base point
        let depth = first_unfixed_base(&base, g).expect("g moves a base point");
        for level in levels.iter_mut().take(depth + 1) {
            level.gens.push(g.clone());
        }
    }
    for level in levels.iter_mut() {
        level.recompute_orbit(degree);
    }

    let mut i = levels.len() as isize - 1;
    'outer: while i >= 0 {
        let li = i as usize;
        let orbit_len = levels[li].orbit.len();
        let mut k = 0;
        while k < orbit_len.max(levels[li].orbit.len()) {
            if k >= levels[li].orbit.len() {
                break;
            }
            let beta = levels[li].orbit[k];
            let gens_len = levels[li].gens.len();
            for s_idx in 0..gens_len {
                let s = levels[li].gens[s_idx].clone();
                let u_beta = levels[li].transversal[k].clone();
                let gamma = s.apply(beta);
                let u_gamma_inv = levels[li].rep_inverse(gamma).expect("orbit is closed").clone();
                let schreier = u_beta.compose(&s).compose(&u_gamma_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, depth) = strip(&levels, schreier, li + 1);
                if depth < levels.len() || !residue.is_identity() {
                    let mut depth = depth;
                    if depth == levels.len() {
                        let b = residue.first_moved_point().expect("non-identity residue");
                        levels.push(Level::new(b, Vec::new(), degree));
                        depth = levels.len() - 1;
                    }
                    for level in levels.iter_mut().take(depth + 1).skip(li + 1) {
                        level.gens.push(residue.clone());
                    }
                    for level in levels.iter_mut().take(depth + 1).skip(li + 1) {
                        level.recompute_orbit(degree);
                    }
                    i = depth as isize;
                    continue 'outer;
                }
            }
            k += 1;
        }
        i -= 1;
    }
    levels
}

/// Structural flags of a group relative to a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GroupFlags {
    pub is_abelian: bool,
    pub is_p_group: bool,
    pub is_elementary_abelian: bool,
    pub is_cyclic: bool,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// Prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub(crate) fn is_power_of(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

impl PermGroup {
    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Flags computed from the generators and the order.
    pub fn classify_flags(&self, p: u64) -> Result<GroupFlags> {
        require_prime(p)?;
        let is_abelian = self.is_abelian();
        let is_p_group = is_power_of(self.order, p);
        let is_elementary_abelian =
            is_abelian && is_p_group && self.generators.iter().all(|g| p.is_multiple_of(g.order()));
        // an abelian group's exponent is the lcm of its generator orders
        let exponent = self.generators.iter().map(|g| g.order()).fold(1, lcm);
        let is_cyclic = is_abelian && exponent == self.order;
        Ok(GroupFlags {
            is_abelian,
            is_p_group,
            is_elementary_abelian,
            is_cyclic,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    fn group(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s, n)).collect();
        PermGroup::from_generators(&gens, n).unwrap()
    }

    /// Naive closure used as the oracle for orders.
    fn closure(gens: &[Permutation], n: usize) -> HashSet<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(n);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn trivial_and_small_orders() {
        assert_eq!(PermGroup::from_generators(&[], 4).unwrap().order(), 1);
        let s4 = group(&["(1,2,3,4)", "(1,3)"], 4);
        // (1,2,3,4) and (1,3) generate D8, not S4: the closure decides
        let oracle = closure(s4.generators(), 4).len() as u64;
        assert_eq!(s4.order(), oracle);
        assert_eq!(oracle, 8);
        assert_eq!(group(&["(1,2,3)"], 4).order(), 3);
    }

    #[test]
    fn spec_s4_generators_brute_force() {
        // 0-indexed (0 1 2 3) and (0 2): closure of the two generators
        let a = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 2]]).unwrap();
        let oracle = closure(&[a.clone(), b.clone()], 4).len() as u64;
        let g = PermGroup::from_generators(&[a, b], 4).unwrap();
        assert_eq!(g.order(), oracle);
    }

    #[test]
    fn s4_full_order() {
        let g = group(&["(1,2,3,4)", "(1,2)"], 4);
        assert_eq!(g.order(), 24);
        assert_eq!(closure(g.generators(), 4).len(), 24);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = p("(1,2)", 3);
        let b = p("(1,2)", 4);
        assert!(matches!(
            PermGroup::from_generators(&[a, b.clone()], 3),
            Err(GroupError::DegreeMismatch { .. })
        ));
        let g = group(&["(1,2,3)"], 3);
        assert!(g.contains(&b).is_err());
    }

    #[test]
    fn membership_examples() {
        let a4 = group(&["(1,2,3)", "(2,3,4)"], 4);
        assert_eq!(a4.order(), 12);
        assert!(a4.contains(&Permutation::identity(4)).unwrap());
        assert!(!a4.contains(&p("(1,2)", 4)).unwrap());
        let c4 = group(&["(1,2,3,4)"], 4);
        assert!(c4.contains(&p("(1,3)(2,4)", 4)).unwrap());
        assert!(!c4.contains(&p("(1,2)(3,4)", 4)).unwrap());
    }

    #[test]
    fn elements_are_distinct_and_ranked() {
        let s4 = group(&["(1,2,3,4)", "(1,2)"], 4);
        let elems: Vec<_> = s4.elements(&Limits::default()).unwrap().collect();
        assert_eq!(elems.len(), 24);
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        assert!(elems[0].is_identity());
        for (r, e) in elems.iter().enumerate() {
            assert_eq!(s4.rank(e), Some(r as u64));
        }
        let c3 = group(&["(1,2,3)"], 4);
        assert_eq!(c3.elements(&Limits::default()).unwrap().count(), 3);
        assert_eq!(c3.rank(&p("(1,2)", 4)), None);
    }

    #[test]
    fn element_bound_is_enforced() {
        let s4 = group(&["(1,2,3,4)", "(1,2)"], 4);
        let tight = Limits {
            element_bound: 10,
            ..Limits::default()
        };
        match s4.elements(&tight) {
            Err(GroupError::BoundExceeded { bound, needed, .. }) => {
                assert_eq!(bound, 10);
                assert_eq!(needed, 24);
            }
            other => panic!("expected a bound error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn rebuilding_from_strong_generators_keeps_order() {
        let g = group(&["(1,2,3,4,5)", "(1,2)"], 6);
        let rebuilt = PermGroup::from_generators(&g.strong_generators(), 6).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(rebuilt.order(), 120);
        assert_eq!(g.basic_orbit_sizes().iter().product::<usize>() as u64, g.order());
    }

    #[test]
    fn conjugate_transports_the_chain() {
        let h = group(&["(1,2,3)", "(1,2)"], 5);
        let g = p("(1,4,5)(2,3)", 5);
        let hg = h.conjugate(&g).unwrap();
        assert_eq!(hg.order(), 6);
        for x in h.elements_unbounded() {
            assert!(hg.has(&x.conjugate_by(&g)));
        }
        let direct = PermGroup::from_generators(
            &h.generators().iter().map(|x| x.conjugate_by(&g)).collect::<Vec<_>>(),
            5,
        )
        .unwrap();
        assert!(direct.same_elements(&hg));
        for r in 0..hg.order() {
            assert_eq!(hg.rank(&hg.unrank(r)), Some(r));
        }
    }

    #[test]
    fn extended_matches_fresh_build() {
        let c3 = group(&["(1,2,3)"], 4);
        let a4 = c3.extended(&[p("(1,2,4)", 4)]).unwrap();
        assert_eq!(a4.order(), 12);
        let s4 = a4.extended(&[p("(1,2)", 4)]).unwrap();
        assert_eq!(s4.order(), 24);
    }

    #[test]
    fn flags() {
        let c3 = group(&["(1,2,3)"], 4);
        let f = c3.classify_flags(3).unwrap();
        assert!(f.is_abelian && f.is_p_group && f.is_elementary_abelian && f.is_cyclic);
        let d8 = group(&["(1,2,3,4)", "(1,3)"], 4);
        let f = d8.classify_flags(2).unwrap();
        assert!(f.is_p_group && !f.is_abelian && !f.is_cyclic);
        let v4 = group(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        let f = v4.classify_flags(2).unwrap();
        assert!(f.is_elementary_abelian && !f.is_cyclic);
        assert_eq!(c3.classify_flags(4), Err(GroupError::NotPrime(4)));
        let c4 = group(&["(1,2,3,4)"], 4);
        let f = c4.classify_flags(2).unwrap();
        assert!(f.is_cyclic && !f.is_elementary_abelian);
    }

    #[test]
    fn canonical_coset_rep_is_constant_on_cosets() {
        let v4 = group(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        let s4 = group(&["(1,2,3,4)", "(1,2)"], 4);
        let mut reps = HashSet::new();
        for g in s4.elements_unbounded() {
            let rep = v4.canonical_coset_rep(&g);
            // rep lies in V4·g
            assert!(v4.has(&rep.compose(&g.inverse())));
            for n in v4.elements_unbounded() {
                assert_eq!(v4.canonical_coset_rep(&n.compose(&g)), rep);
            }
            reps.insert(rep);
        }
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn number_helpers() {
        assert_eq!(prime_divisors(62400), vec![2, 3, 5, 13]);
        assert_eq!(p_part(62400, 2), 64);
        assert!(is_prime(17) && !is_prime(1) && !is_prime(21));
    }
}
