//! Statement-level checks over concrete groups and corpora.
//!
//! Each verifier enumerates the instances satisfying a statement's
//! hypothesis, checks the conclusion on each, and returns a
//! [`VerificationReport`]. Hypothesis instances for the p-subgroup
//! statements are taken one per `G`-conjugacy class; every predicate
//! involved is invariant under conjugation.

mod examples;
mod lemmas;
mod report;
mod sweep;
mod theorems;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::subgroup::{conjugate_orbit, intersection, normal_closure_of_elements, normalizer};

pub use examples::{conjugate_pair_generating, order15_witness, reproduce_examples, u3_3_pair_orders};
pub use lemmas::{
    fischer_sides, verify_fischer, FischerSides, verify_fischer_all, verify_lemma211, verify_lemma22, verify_lemma23, verify_lemma29,
    verify_lemma_suite, verify_wielandt_pack,
};
pub use report::{Counterexample, VerificationReport};
pub use sweep::{sweep, SweepSummary};
pub use theorems::{
    cor_radical_instance, cor_special_instance, recheck, verify_cor_generation, verify_cor_radical,
    verify_cor_special, verify_th1, verify_th2, verify_th3, verify_th5,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Th1,
    Th2,
    Th3,
    Th5,
    CorGeneration,
    CorSpecial,
    CorRadical,
    Lemma22,
    Lemma23,
    Lemma29,
    Lemma211,
    Fischer,
    WielandtPack,
    Examples,
}

impl Statement {
    pub const ALL: [Statement; 14] = [
        Statement::Th1,
        Statement::Th2,
        Statement::Th3,
        Statement::Th5,
        Statement::CorGeneration,
        Statement::CorSpecial,
        Statement::CorRadical,
        Statement::Lemma22,
        Statement::Lemma23,
        Statement::Lemma29,
        Statement::Lemma211,
        Statement::Fischer,
        Statement::WielandtPack,
        Statement::Examples,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::Th1 => "th1",
            Statement::Th2 => "th2",
            Statement::Th3 => "th3",
            Statement::Th5 => "th5",
            Statement::CorGeneration => "cor_generation",
            Statement::CorSpecial => "cor_special",
            Statement::CorRadical => "cor_radical",
            Statement::Lemma22 => "lemma22",
            Statement::Lemma23 => "lemma23",
            Statement::Lemma29 => "lemma29",
            Statement::Lemma211 => "lemma211",
            Statement::Fischer => "fischer",
            Statement::WielandtPack => "wielandt_pack",
            Statement::Examples => "examples",
        }
    }

    pub fn takes_prime(self) -> bool {
        matches!(
            self,
            Statement::Th2
                | Statement::Th3
                | Statement::Th5
                | Statement::CorSpecial
                | Statement::CorRadical
                | Statement::Lemma22
                | Statement::Lemma23
                | Statement::Lemma29
                | Statement::Lemma211
        )
    }

    pub fn needs_odd_prime(self) -> bool {
        matches!(self, Statement::Th2 | Statement::CorSpecial)
    }

    /// Run the statement on one group. `Examples` ignores the group.
    pub fn run(self, name: &str, g: &PermGroup, p: Option<u64>, limits: &Limits) -> Result<Vec<VerificationReport>> {
        let prime = || {
            p.ok_or_else(|| GroupError::Parse(format!("statement {} needs a prime", self.id())))
        };
        let one = |r: Result<VerificationReport>| r.map(|r| vec![r]);
        match self {
            Statement::Th1 => one(verify_th1(name, g, limits)),
            Statement::Th2 => one(verify_th2(name, g, prime()?, limits)),
            Statement::Th3 => one(verify_th3(name, g, prime()?, limits)),
            Statement::Th5 => one(verify_th5(name, g, prime()?, limits)),
            Statement::CorGeneration => one(verify_cor_generation(name, g, limits)),
            Statement::CorSpecial => one(verify_cor_special(name, g, prime()?, limits)),
            Statement::CorRadical => one(verify_cor_radical(name, g, prime()?, limits)),
            Statement::Lemma22 => one(verify_lemma22(name, g, prime()?, limits)),
            Statement::Lemma23 => one(verify_lemma23(name, g, prime()?, limits)),
            Statement::Lemma29 => one(verify_lemma29(name, g, prime()?, limits)),
            Statement::Lemma211 => one(verify_lemma211(name, g, prime()?, limits)),
            Statement::Fischer => one(verify_fischer_all(name, g, limits)),
            Statement::WielandtPack => one(verify_wielandt_pack(name, g, limits)),
            Statement::Examples => reproduce_examples(limits),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Statement> {
        Statement::ALL
            .into_iter()
            .find(|st| st.id() == s)
            .ok_or_else(|| GroupError::Parse(format!("unknown statement '{s}'")))
    }
}

pub(crate) fn timed<F>(f: F) -> Result<VerificationReport>
where
    F: FnOnce() -> Result<VerificationReport>,
{
    let start = Instant::now();
    let mut r = f()?;
    r.millis = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// `|AB| = |A||B| / |A ∩ B|`.
pub(crate) fn product_order(a: &PermGroup, b: &PermGroup, limits: &Limits) -> Result<u64> {
    let meet = intersection(a, b, limits)?.order();
    Ok(a.order() / meet * b.order())
}

fn element_key(h: &PermGroup) -> Vec<Permutation> {
    let mut v: Vec<Permutation> = h.elements_unbounded().collect();
    v.sort();
    v
}

/// Nontrivial `p`-subgroups of `G` satisfying `keep`, one per conjugacy class.
///
/// Every `p`-subgroup is conjugate into a fixed Sylow subgroup `P`, so the
/// candidates are the subgroups of `P`, deduplicated under `G`-conjugacy.
/// The result is ordered by subgroup order, then by position in the
/// lattice of `P`.
pub fn p_subgroup_classes<F>(g: &PermGroup, p: u64, limits: &Limits, keep: F) -> Result<Vec<PermGroup>>
where
    F: Fn(&PermGroup) -> bool,
{
    let sylow = crate::structure::sylow_subgroup(g, p, limits)?;
    if sylow.is_trivial() {
        return Ok(Vec::new());
    }
    let lattice = SubgroupLattice::new(&sylow, limits)?;
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut reps = Vec::new();
    for i in 0..lattice.len() {
        if lattice.order(i) == 1 {
            continue;
        }
        let h = lattice.subgroup(i);
        if !keep(&h) {
            continue;
        }
        if seen.contains(&element_key(&h)) {
            continue;
        }
        for k in conjugate_orbit(g, &h, limits)?.conjugates {
            seen.insert(element_key(&k));
        }
        reps.push(h);
    }
    Ok(reps)
}

/// A Sylow `p`-subgroup of `G` containing the `p`-subgroup `h`.
pub fn sylow_containing(g: &PermGroup, h: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    let target = crate::group::p_part(g.order(), p);
    let mut q = h.clone();
    while q.order() < target {
        let n = normalizer(g, &q, limits)?;
        let s = crate::structure::sylow_subgroup(&n, p, limits)?;
        if s.order() == q.order() {
            return Err(GroupError::Hypothesis("subgroup is not a p-subgroup".into()));
        }
        q = s;
    }
    Ok(q)
}

/// Normal subgroups of `G`: the full list from the lattice when it fits the
/// subgroup bound, otherwise the normal closures of the element classes
/// together with the derived series.
pub fn normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    if g.order() <= limits.subgroup_bound {
        let lattice = SubgroupLattice::new(g, limits)?;
        return Ok(lattice.normal_nodes().into_iter().map(|i| lattice.subgroup(i)).collect());
    }
    let mut out: Vec<PermGroup> = Vec::new();
    let push = |n: PermGroup, out: &mut Vec<PermGroup>| {
        if !out.iter().any(|m| m.same_elements(&n)) {
            out.push(n);
        }
    };
    push(PermGroup::trivial(g.degree()), &mut out);
    for c in crate::subgroup::conjugacy_classes(g, limits)? {
        push(normal_closure_of_elements(g, &[c.representative])?, &mut out);
    }
    for d in crate::subgroup::derived_series(g)? {
        push(d, &mut out);
    }
    out.sort_by_key(|n| n.order());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn statement_ids_round_trip() {
        for s in Statement::ALL {
            assert_eq!(s.id().parse::<Statement>().unwrap(), s);
        }
        assert!("th4".parse::<Statement>().is_err());
    }

    #[test]
    fn p_subgroup_class_counts() {
        let l = Limits::default();
        let s4 = catalog::construct("S4").unwrap();
        // 2-subgroups of S4 up to conjugacy: C2 (two classes), V4 (two), C4, D8.
        assert_eq!(p_subgroup_classes(&s4, 2, &l, |_| true).unwrap().len(), 6);
        assert_eq!(p_subgroup_classes(&s4, 3, &l, |_| true).unwrap().len(), 1);
        assert!(p_subgroup_classes(&s4, 5, &l, |_| true).unwrap().is_empty());
        let a5 = catalog::construct("A5").unwrap();
        assert_eq!(p_subgroup_classes(&a5, 2, &l, |_| true).unwrap().len(), 2);
    }

    #[test]
    fn sylow_overgroups() {
        let l = Limits::default();
        let s4 = catalog::construct("S4").unwrap();
        let h = PermGroup::from_generators(&[Permutation::parse_cycles("(1,2)", Some(4)).unwrap()], 4).unwrap();
        let p = sylow_containing(&s4, &h, 2, &l).unwrap();
        assert_eq!(p.order(), 8);
        assert!(h.is_subgroup_of(&p));
    }

    #[test]
    fn normal_subgroup_lists() {
        let l = Limits::default();
        let s4 = catalog::construct("S4").unwrap();
        let orders: Vec<u64> = normal_subgroups(&s4, &l).unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let small = Limits {
            subgroup_bound: 10,
            ..l
        };
        let orders: Vec<u64> = normal_subgroups(&s4, &small).unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }
}
