//! Characteristic subgroups and group-class tests: Sylow subgroups, `O_p`,
//! `O_{p'}`, the solvable radical, the Fitting subgroup, (p-)solvability,
//! p-nilpotency and Frobenius tests.

use crate::error::{GroupError, Result};
use crate::group::{is_power_of, p_part, prime_divisors, require_prime, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::{gcd, Permutation};
use crate::subgroup::{
    self, centralizer, class_partition, conjugate_orbit, intersection, join, normal_closure, normal_core,
    normalizes, require_subgroup,
};

fn is_p_element(x: &Permutation, p: u64) -> bool {
    is_power_of(x.order(), p)
}

/// A subgroup of order `|G|_p`.
///
/// Starts from the first p-element of largest order in traversal order and
/// grows by p-elements of the normalizer, scanned in traversal order.
pub fn sylow_subgroup(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    limits.check_elements("Sylow subgroup", g.order())?;
    let mut seed: Option<Permutation> = None;
    let mut best = 1;
    for x in g.elements_unbounded() {
        let o = x.order();
        if o > best && is_power_of(o, p) {
            best = o;
            seed = Some(x);
            if o == target {
                break;
            }
        }
    }
    let mut h = PermGroup::from_generators(&[seed.expect("p divides |G|")], g.degree())?;
    while h.order() < target {
        let n = subgroup::normalizer(g, &h, limits)?;
        let y = n
            .elements_unbounded()
            .find(|y| is_p_element(y, p) && !h.has(y))
            .ok_or_else(|| GroupError::Hypothesis("Sylow growth stalled".into()))?;
        h = h.extended(&[y])?;
        debug_assert!(is_power_of(h.order(), p));
    }
    Ok(h)
}

/// `O_p(G)`, the core of a Sylow p-subgroup.
pub fn o_p(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    let s = sylow_subgroup(g, p, limits)?;
    if s.is_trivial() {
        return Ok(s);
    }
    normal_core(g, &s, limits)
}

/// Join of `⟨x^G⟩` over class representatives `x` whose closure passes `keep`.
fn class_closure_join(
    g: &PermGroup,
    limits: &Limits,
    mut skip: impl FnMut(&Permutation) -> bool,
    mut keep: impl FnMut(&PermGroup) -> Result<bool>,
) -> Result<PermGroup> {
    let classes = class_partition(g, limits)?.classes;
    let mut acc = PermGroup::trivial(g.degree());
    for c in &classes {
        let x = &c.representative;
        if x.is_identity() || acc.has(x) || skip(x) {
            continue;
        }
        let closure = subgroup::normal_closure_of_elements(g, std::slice::from_ref(x))?;
        if keep(&closure)? {
            acc = join(&acc, &closure)?;
        }
    }
    Ok(acc)
}

/// `O_{p'}(G)`, the largest normal subgroup of order prime to `p`.
pub fn o_p_prime(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    if !g.order().is_multiple_of(p) {
        return Ok(g.clone());
    }
    class_closure_join(g, limits, |x| x.order() % p == 0, |c| Ok(c.order() % p != 0))
}

/// `R(G)`, the largest normal solvable subgroup.
pub fn solvable_radical(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if is_solvable(g)? {
        return Ok(g.clone());
    }
    class_closure_join(g, limits, |_| false, is_solvable)
}

/// `F(G)`, the product of the `O_p(G)`.
pub fn fitting(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let mut acc = PermGroup::trivial(g.degree());
    for p in prime_divisors(g.order()) {
        acc = join(&acc, &o_p(g, p, limits)?)?;
    }
    Ok(acc)
}

pub fn is_solvable(g: &PermGroup) -> Result<bool> {
    Ok(subgroup::derived_series(g)?.last().expect("non-empty").is_trivial())
}

pub fn is_nilpotent(g: &PermGroup, limits: &Limits) -> Result<bool> {
    Ok(fitting(g, limits)?.order() == g.order())
}

/// Upper p-series computed in `G` itself: each term is the preimage of
/// `O_{p'}` or `O_p` of the quotient by the previous term, obtained as a
/// join of lifted class closures `⟨x^G⟩K`.
pub fn is_p_solvable(g: &PermGroup, p: u64, limits: &Limits) -> Result<bool> {
    require_prime(p)?;
    if !g.order().is_multiple_of(p) || is_power_of(g.order(), p) {
        return Ok(true);
    }
    if is_solvable(g)? {
        return Ok(true);
    }
    let classes = class_partition(g, limits)?.classes;
    let mut k = PermGroup::trivial(g.degree());
    loop {
        let before = k.order();
        for want_p in [false, true] {
            let base = k.clone();
            let mut acc = k.clone();
            for c in &classes {
                let x = &c.representative;
                if acc.has(x) {
                    continue;
                }
                let closure = subgroup::normal_closure_of_elements(g, std::slice::from_ref(x))?;
                let lifted = join(&closure, &base)?;
                let index = lifted.order() / base.order();
                let ok = if want_p {
                    is_power_of(index, p)
                } else {
                    !index.is_multiple_of(p)
                };
                if ok {
                    acc = join(&acc, &lifted)?;
                }
            }
            k = acc;
        }
        if k.order() == g.order() {
            return Ok(true);
        }
        if k.order() == before {
            return Ok(false);
        }
    }
}

/// Has a normal p-complement.
pub fn is_p_nilpotent(g: &PermGroup, p: u64, limits: &Limits) -> Result<bool> {
    require_prime(p)?;
    let complement = g.order() / p_part(g.order(), p);
    Ok(o_p_prime(g, p, limits)?.order() == complement)
}

/// `H` is a Frobenius complement in `G`: self-normalizing, and `H ∩ H^g = 1`
/// for every conjugate other than `H`.
pub fn is_frobenius_with_complement(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool> {
    require_subgroup(h, g, "H is not a subgroup of G")?;
    if h.is_trivial() || h.order() == g.order() {
        return Err(GroupError::Hypothesis("a Frobenius complement must satisfy 1 < H < G".into()));
    }
    let orbit = conjugate_orbit(g, h, limits)?;
    if orbit.normalizer.order() != h.order() {
        return Ok(false);
    }
    for k in orbit.conjugates.iter().skip(1) {
        if !intersection(h, k, limits)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G` is a Frobenius group: some proper nontrivial subgroup is a Frobenius
/// complement. Candidates come from the subgroup lattice, one per class.
pub fn is_frobenius_group(g: &PermGroup, limits: &Limits) -> Result<bool> {
    if g.order() < 6 {
        return Ok(false);
    }
    let lattice = SubgroupLattice::new(g, limits)?;
    for i in lattice.class_representatives() {
        let order = lattice.order(i);
        if order == 1 || order == g.order() {
            continue;
        }
        // a complement has order coprime to its index
        if gcd(order, g.order() / order) != 1 {
            continue;
        }
        if is_frobenius_with_complement(g, &lattice.subgroup(i), limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Conjugation by `x` induces a Frobenius automorphism on `K`: every power
/// of `x` that acts nontrivially on `K` fixes only the identity.
pub fn induces_frobenius_automorphism(
    g: &PermGroup,
    x: &Permutation,
    k: &PermGroup,
    limits: &Limits,
) -> Result<bool> {
    if x.degree() != g.degree() || k.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: x.degree().max(k.degree()),
        });
    }
    if !normalizes(x, k) {
        return Err(GroupError::NotNormal("K is not normalized by x".into()));
    }
    if k.is_trivial() {
        return Ok(true);
    }
    let ord = x.order() as i64;
    for e in 1..ord {
        let y = x.pow(e);
        if k.generators().iter().all(|z| z.commutes_with(&y)) {
            continue;
        }
        if !centralizer(k, &[y], limits)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G` is simple and nonabelian: every nontrivial class closure is `G`.
pub fn is_simple_nonabelian(g: &PermGroup, limits: &Limits) -> Result<bool> {
    if g.is_abelian() {
        return Ok(false);
    }
    for c in class_partition(g, limits)?.classes {
        if c.representative.is_identity() {
            continue;
        }
        let closure = normal_closure(g, &PermGroup::from_generators(&[c.representative], g.degree())?)?;
        if closure.order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-group memo for the characteristic subgroups used by the verifiers.
#[derive(Debug)]
pub struct StructureCache {
    group: PermGroup,
    limits: Limits,
    sylow: Vec<(u64, PermGroup)>,
    o_p_prime: Vec<(u64, PermGroup)>,
    radical: Option<PermGroup>,
}

impl StructureCache {
    pub fn new(group: &PermGroup, limits: &Limits) -> Self {
        StructureCache {
            group: group.clone(),
            limits: *limits,
            sylow: Vec::new(),
            o_p_prime: Vec::new(),
            radical: None,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn sylow(&mut self, p: u64) -> Result<PermGroup> {
        if let Some((_, s)) = self.sylow.iter().find(|(q, _)| *q == p) {
            return Ok(s.clone());
        }
        let s = sylow_subgroup(&self.group, p, &self.limits)?;
        self.sylow.push((p, s.clone()));
        Ok(s)
    }

    pub fn o_p_prime(&mut self, p: u64) -> Result<PermGroup> {
        if let Some((_, s)) = self.o_p_prime.iter().find(|(q, _)| *q == p) {
            return Ok(s.clone());
        }
        let s = o_p_prime(&self.group, p, &self.limits)?;
        self.o_p_prime.push((p, s.clone()));
        Ok(s)
    }

    pub fn radical(&mut self) -> Result<PermGroup> {
        if let Some(r) = &self.radical {
            return Ok(r.clone());
        }
        let r = solvable_radical(&self.group, &self.limits)?;
        self.radical = Some(r.clone());
        Ok(r)
    }
}

/// Normal-subgroup-lattice versions of `O_{p'}` and `R`, used as oracles.
pub mod lattice_oracle {
    use super::*;

    fn largest_normal(g: &PermGroup, limits: &Limits, pred: impl Fn(&PermGroup) -> Result<bool>) -> Result<PermGroup> {
        let lattice = SubgroupLattice::new(g, limits)?;
        let mut best: Option<usize> = None;
        for i in lattice.normal_nodes() {
            if pred(&lattice.subgroup(i))? && best.is_none_or(|b| lattice.order(i) > lattice.order(b)) {
                best = Some(i);
            }
        }
        let best = best.expect("the trivial subgroup always qualifies");
        // the largest qualifying normal subgroup must contain every other one
        for i in lattice.normal_nodes() {
            if pred(&lattice.subgroup(i))? && !lattice.contains(best, i) {
                return Err(GroupError::Hypothesis("no unique largest normal subgroup".into()));
            }
        }
        Ok(lattice.subgroup(best))
    }

    pub fn o_p_prime(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
        largest_normal(g, limits, |n| Ok(n.order() % p != 0))
    }

    pub fn solvable_radical(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        largest_normal(g, limits, is_solvable)
    }

    /// p-solvability through the upper p-series with explicit coset-action quotients.
    pub fn is_p_solvable_by_quotients(g: &PermGroup, p: u64, limits: &Limits) -> Result<bool> {
        let mut k = PermGroup::trivial(g.degree());
        loop {
            let before = k.order();
            let q = subgroup::coset_action(g, &k, limits)?;
            let o = super::o_p_prime(&q.image, p, limits)?;
            k = q.preimage(&o)?;
            let q = subgroup::coset_action(g, &k, limits)?;
            let o = super::o_p(&q.image, p, limits)?;
            k = q.preimage(&o)?;
            if k.order() == g.order() {
                return Ok(true);
            }
            if k.order() == before {
                return Ok(false);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<_> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, Some(n)).unwrap())
            .collect();
        PermGroup::from_generators(&gens, n).unwrap()
    }

    fn s4() -> PermGroup {
        grp(&["(1,2,3,4)", "(1,2)"], 4)
    }

    fn a5() -> PermGroup {
        grp(&["(1,2,3,4,5)", "(1,2,3)"], 5)
    }

    fn f21() -> PermGroup {
        grp(&["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"], 7)
    }

    const L: Limits = Limits {
        element_bound: 1_000_000,
        subgroup_bound: 2000,
    };

    #[test]
    fn sylows() {
        assert_eq!(sylow_subgroup(&s4(), 2, &L).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&s4(), 3, &L).unwrap().order(), 3);
        assert!(sylow_subgroup(&s4(), 5, &L).unwrap().is_trivial());
        assert_eq!(sylow_subgroup(&a5(), 2, &L).unwrap().order(), 4);
        assert!(sylow_subgroup(&s4(), 4, &L).is_err());
    }

    #[test]
    fn o_p_and_friends() {
        assert_eq!(o_p(&s4(), 2, &L).unwrap().order(), 4);
        assert!(o_p(&a5(), 2, &L).unwrap().is_trivial());
        assert_eq!(o_p_prime(&s4(), 3, &L).unwrap().order(), 4);
        assert!(o_p_prime(&a5(), 2, &L).unwrap().is_trivial());
        let c3 = grp(&["(1,2,3)"], 3);
        assert_eq!(o_p_prime(&c3, 2, &L).unwrap().order(), 3);
        assert_eq!(fitting(&s4(), &L).unwrap().order(), 4);
        assert!(fitting(&a5(), &L).unwrap().is_trivial());
        assert!(solvable_radical(&a5(), &L).unwrap().is_trivial());
        assert_eq!(solvable_radical(&s4(), &L).unwrap().order(), 24);
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&s4()).unwrap());
        assert!(!is_solvable(&a5()).unwrap());
        assert!(is_solvable(&PermGroup::trivial(3)).unwrap());
        assert!(!is_p_solvable(&a5(), 5, &L).unwrap());
        assert!(!is_p_solvable(&a5(), 2, &L).unwrap());
        assert!(is_p_solvable(&a5(), 7, &L).unwrap());
        assert!(is_p_solvable(&s4(), 2, &L).unwrap());
    }

    #[test]
    fn p_nilpotency() {
        assert!(!is_p_nilpotent(&s4(), 2, &L).unwrap());
        let s3 = grp(&["(1,2)", "(1,2,3)"], 3);
        assert!(!is_p_nilpotent(&s3, 3, &L).unwrap());
        assert!(is_p_nilpotent(&s3, 2, &L).unwrap());
        assert!(is_p_nilpotent(&s4(), 5, &L).unwrap());
    }

    #[test]
    fn frobenius() {
        let s3 = grp(&["(1,2)", "(1,2,3)"], 3);
        assert!(is_frobenius_with_complement(&s3, &grp(&["(1,2)"], 3), &L).unwrap());
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        assert!(is_frobenius_with_complement(&a4, &grp(&["(1,2,3)"], 4), &L).unwrap());
        assert!(is_frobenius_group(&a4, &L).unwrap());
        assert!(is_frobenius_group(&f21(), &L).unwrap());
        assert!(!is_frobenius_group(&s4(), &L).unwrap());
        assert!(!is_frobenius_group(&grp(&["(1,2,3,4)"], 4), &L).unwrap());
    }

    #[test]
    fn frobenius_automorphisms() {
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        let v4 = grp(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        let x = Permutation::parse_cycles("(1,2,3)", Some(4)).unwrap();
        assert!(induces_frobenius_automorphism(&a4, &x, &v4, &L).unwrap());
        assert!(induces_frobenius_automorphism(&a4, &x, &PermGroup::trivial(4), &L).unwrap());
        let y = Permutation::parse_cycles("(1,2,3,4)", Some(4)).unwrap();
        assert!(!induces_frobenius_automorphism(&s4(), &y, &a4, &L).unwrap());
        let c3 = grp(&["(1,2,3)"], 4);
        assert!(induces_frobenius_automorphism(&s4(), &y, &c3, &L).is_err());
    }

    #[test]
    fn p_solvable_agrees_with_quotient_tower() {
        for g in [s4(), a5(), f21(), grp(&["(1,2,3,4,5)", "(1,2)"], 5)] {
            for p in [2, 3, 5, 7] {
                assert_eq!(
                    is_p_solvable(&g, p, &L).unwrap(),
                    lattice_oracle::is_p_solvable_by_quotients(&g, p, &L).unwrap(),
                    "order {} p {p}",
                    g.order()
                );
            }
        }
    }

    #[test]
    fn simplicity() {
        assert!(is_simple_nonabelian(&a5(), &L).unwrap());
        assert!(!is_simple_nonabelian(&s4(), &L).unwrap());
    }
}
