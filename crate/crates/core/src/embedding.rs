//! Subgroup-embedding predicates.
//!
//! The closure conditions depend on `g` only through the conjugate `H^g`, so
//! they run over one conjugate per coset of `N_G(H)`. The γ-triple condition
//! and abnormality depend on `g` itself and scan elements. Loops run in
//! parallel and report the first violation in traversal order, so the
//! witness does not depend on the number of worker threads.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{GroupError, Result};
use crate::group::{is_power_of, PermGroup};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::subgroup::{
    conjugate_orbit, intersection, is_normal, join, join_elements, normal_closure, require_subgroup,
    ConjugateOrbit,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureKind {
    Weak,
    Strong,
    Extreme,
}

impl ClosureKind {
    pub fn name(self) -> &'static str {
        match self {
            ClosureKind::Weak => "weakly-closed",
            ClosureKind::Strong => "strongly-closed",
            ClosureKind::Extreme => "extremely-closed",
        }
    }
}

/// Outcome of one predicate check. On failure `witness_element` is the
/// offending `g` and `witness_subgroup` the subgroup exhibiting the failure.
#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub predicate: String,
    pub holds: bool,
    pub witness_element: Option<Permutation>,
    pub witness_subgroup: Option<PermGroup>,
    pub elapsed: Duration,
}

impl EmbeddingReport {
    fn new(predicate: &str, violation: Option<(Permutation, Option<PermGroup>)>, start: Instant) -> Self {
        let holds = violation.is_none();
        let (witness_element, witness_subgroup) = match violation {
            Some((g, s)) => (Some(g), s),
            None => (None, None),
        };
        EmbeddingReport {
            predicate: predicate.to_string(),
            holds,
            witness_element,
            witness_subgroup,
            elapsed: start.elapsed(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "predicate": self.predicate,
            "holds": self.holds,
            "witness_element": self.witness_element.as_ref().map(|g| g.to_string()),
            "witness_element_order": self.witness_element.as_ref().map(|g| g.order()),
            "witness_subgroup": self.witness_subgroup.as_ref().map(subgroup_json),
            "millis": self.elapsed.as_millis() as u64,
        })
    }
}

pub fn subgroup_json(h: &PermGroup) -> Value {
    json!({
        "order": h.order(),
        "generators": h.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.predicate, if self.holds { "holds" } else { "fails" })?;
        if let Some(g) = &self.witness_element {
            write!(f, "; witness g = {g} (order {})", g.order())?;
        }
        if let Some(s) = &self.witness_subgroup {
            let gens: Vec<String> = s.generators().iter().map(|x| x.to_string()).collect();
            write!(f, "; witness subgroup of order {} = <{}>", s.order(), gens.join(", "))?;
        }
        write!(f, " ({} ms)", self.elapsed.as_millis())
    }
}

type Violation = (Permutation, Option<PermGroup>);

fn first_violation<F>(count: usize, check: F) -> Result<Option<Violation>>
where
    F: Fn(usize) -> Result<Option<Violation>> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(&check)
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// An element of the coset `N_G(H)·t` outside `M`, if one exists.
fn element_outside(t: &Permutation, normalizer: &PermGroup, m: &PermGroup) -> Option<Permutation> {
    if !m.has(t) {
        return Some(t.clone());
    }
    normalizer
        .generators()
        .iter()
        .find(|n| !m.has(n))
        .map(|n| n.compose(t))
}

/// Evaluate one closure condition for a single conjugate `K = H^g`.
fn conjugate_violates(
    kind: ClosureKind,
    h: &PermGroup,
    m: &PermGroup,
    k: &PermGroup,
    limits: &Limits,
) -> Result<Option<PermGroup>> {
    match kind {
        ClosureKind::Extreme => {
            let t = join(h, k)?;
            let meet = intersection(&t, m, limits)?;
            Ok((!meet.same_elements(h)).then_some(t))
        }
        ClosureKind::Strong => {
            if k.is_subgroup_of(h) {
                return Ok(None);
            }
            let meet = intersection(m, k, limits)?;
            Ok((!meet.is_subgroup_of(h)).then_some(meet))
        }
        ClosureKind::Weak => Ok((k.is_subgroup_of(m) && !k.same_elements(h)).then(|| k.clone())),
    }
}

fn closed_with_orbit(
    kind: ClosureKind,
    h: &PermGroup,
    m: &PermGroup,
    all_g: bool,
    orbit: &ConjugateOrbit,
    limits: &Limits,
) -> Result<Option<Violation>> {
    first_violation(orbit.len(), |i| {
        let t = &orbit.transversal[i];
        let g = if kind == ClosureKind::Extreme && !all_g {
            match element_outside(t, &orbit.normalizer, m) {
                Some(g) => g,
                None => return Ok(None),
            }
        } else {
            t.clone()
        };
        Ok(conjugate_violates(kind, h, m, &orbit.conjugates[i], limits)?.map(|s| (g, Some(s))))
    })
}

/// `H` is weakly, strongly or extremely closed in `M` with respect to `G`.
///
/// For `Extreme` the condition `⟨H,H^g⟩ ∩ M = H` is required for
/// `g ∈ G − M`, or for every `g ∈ G` when `all_g` is set.
pub fn is_closed(
    kind: ClosureKind,
    h: &PermGroup,
    m: &PermGroup,
    g: &PermGroup,
    all_g: bool,
    limits: &Limits,
) -> Result<EmbeddingReport> {
    let start = Instant::now();
    require_subgroup(h, m, "H is not a subgroup of M")?;
    require_subgroup(m, g, "M is not a subgroup of G")?;
    let orbit = conjugate_orbit(g, h, limits)?;
    let v = closed_with_orbit(kind, h, m, all_g, &orbit, limits)?;
    Ok(EmbeddingReport::new(kind.name(), v, start))
}

/// The closure condition taken in `M = N_G(H)`.
pub fn is_closed_in_g(kind: ClosureKind, h: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<EmbeddingReport> {
    let start = Instant::now();
    require_subgroup(h, g, "H is not a subgroup of G")?;
    let orbit = conjugate_orbit(g, h, limits)?;
    let v = closed_with_orbit(kind, h, &orbit.normalizer.clone(), false, &orbit, limits)?;
    Ok(EmbeddingReport::new(kind.name(), v, start))
}

/// `⟨H,H^g⟩ ∩ N_G(H) = H` for all `g ∈ G`.
pub fn is_extremely_closed_in_g(h: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<EmbeddingReport> {
    is_closed_in_g(ClosureKind::Extreme, h, g, limits)
}

/// Recheck a reported witness independently of the search.
pub fn witness_violates(
    kind: ClosureKind,
    h: &PermGroup,
    m: &PermGroup,
    all_g: bool,
    w: &Permutation,
    limits: &Limits,
) -> Result<bool> {
    if kind == ClosureKind::Extreme && !all_g && m.has(w) {
        return Ok(false);
    }
    let k = h.conjugate(w)?;
    Ok(conjugate_violates(kind, h, m, &k, limits)?.is_some())
}

/// `H^g` is conjugate to `H` inside `⟨H,H^g⟩` for every `g`.
pub fn is_pronormal(h: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<EmbeddingReport> {
    let start = Instant::now();
    require_subgroup(h, g, "H is not a subgroup of G")?;
    let orbit = conjugate_orbit(g, h, limits)?;
    let v = first_violation(orbit.len(), |i| {
        let k = &orbit.conjugates[i];
        if k.same_elements(h) {
            return Ok(None);
        }
        let t = join(h, k)?;
        let inner = conjugate_orbit(&t, h, limits)?;
        if inner.conjugates.iter().any(|c| c.same_elements(k)) {
            Ok(None)
        } else {
            Ok(Some((orbit.transversal[i].clone(), Some(t))))
        }
    })?;
    Ok(EmbeddingReport::new("pronormal", v, start))
}

/// `g ∈ ⟨H,H^g⟩` for every `g ∈ G`.
pub fn is_abnormal(h: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<EmbeddingReport> {
    let start = Instant::now();
    require_subgroup(h, g, "H is not a subgroup of G")?;
    limits.check_elements("abnormality scan", g.order())?;
    let v = first_violation(g.order() as usize, |r| {
        let x = g.unrank(r as u64);
        if h.has(&x) {
            return Ok(None);
        }
        let t = join(h, &h.conjugate(&x)?)?;
        Ok((!t.has(&x)).then_some((x, Some(t))))
    })?;
    Ok(EmbeddingReport::new("abnormal", v, start))
}

/// `x^G ∩ P = {x}`. The witness is a conjugating element `c` with `x^c ∈ P − {x}`.
pub fn is_isolated(x: &Permutation, p: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<EmbeddingReport> {
    let start = Instant::now();
    require_subgroup(p, g, "P is not a subgroup of G")?;
    if !p.contains(x)? {
        return Err(GroupError::NotContained("x is not in P".into()));
    }
    let q = crate::group::prime_divisors(x.order());
    if q.len() > 1 || q.first().is_some_and(|&q| !is_power_of(p.order(), q)) {
        return Err(GroupError::Hypothesis("x must be a p-element of the p-group P".into()));
    }
    limits.check_elements("conjugacy class", g.order())?;
    let mut seen = std::collections::HashSet::new();
    seen.insert(x.clone());
    let mut orbit = vec![(x.clone(), x.identity_like())];
    let mut k = 0;
    let mut violation = None;
    'bfs: while k < orbit.len() {
        for s in g.generators() {
            let (y, c) = &orbit[k];
            let z = y.conjugate_by(s);
            if seen.insert(z.clone()) {
                let cz = c.compose(s);
                if p.has(&z) {
                    let witness = PermGroup::from_generators(&[z], g.degree())?;
                    violation = Some((cz, Some(witness)));
                    break 'bfs;
                }
                orbit.push((z, cz));
            }
        }
        k += 1;
    }
    Ok(EmbeddingReport::new("isolated", violation, start))
}

trait IdentityLike {
    fn identity_like(&self) -> Permutation;
}

impl IdentityLike for Permutation {
    fn identity_like(&self) -> Permutation {
        Permutation::identity(self.degree())
    }
}

/// Flags for a triple `H ≤ M ≤ G`.
#[derive(Clone, Debug)]
pub struct TripleClassification {
    pub h_normal_in_m: bool,
    /// `H ⊴ M` and `⟨H^G⟩ ∩ M = H`.
    pub special: bool,
    /// `⟨H^G⟩ ∩ N_G(H) = H`.
    pub ne: bool,
    /// `H ⊴ M` and `M ∩ M^g ≤ H` for all `g ∈ G − M`.
    pub w_triple: bool,
    /// `H < M < G` and `⟨H,g⟩ ∩ M = H` for all `g ∈ G − M`.
    pub gamma: bool,
    pub closure_meet_m_order: u64,
    pub w_witness: Option<Permutation>,
    pub gamma_witness: Option<Permutation>,
}

impl TripleClassification {
    pub fn to_json(&self) -> Value {
        json!({
            "h_normal_in_m": self.h_normal_in_m,
            "special": self.special,
            "ne": self.ne,
            "w_triple": self.w_triple,
            "gamma": self.gamma,
            "closure_meet_m_order": self.closure_meet_m_order,
            "w_witness": self.w_witness.as_ref().map(|g| g.to_string()),
            "gamma_witness": self.gamma_witness.as_ref().map(|g| g.to_string()),
        })
    }
}

/// First `g ∈ G − M` in traversal order with `M ∩ M^g ≰ H`.
pub fn w_triple_witness(g: &PermGroup, m: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<Option<Permutation>> {
    let orbit = conjugate_orbit(g, m, limits)?;
    Ok(first_violation(orbit.len(), |i| {
        let t = &orbit.transversal[i];
        let Some(x) = element_outside(t, &orbit.normalizer, m) else {
            return Ok(None);
        };
        let meet = intersection(m, &orbit.conjugates[i], limits)?;
        Ok((!meet.is_subgroup_of(h)).then_some((x, None)))
    })?
    .map(|(x, _)| x))
}

/// First `x ∈ G − M` in traversal order with `⟨H,x⟩ ∩ M ≠ H`.
pub fn gamma_witness(g: &PermGroup, m: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<Option<Permutation>> {
    limits.check_elements("γ-triple scan", g.order())?;
    Ok(first_violation(g.order() as usize, |r| {
        let x = g.unrank(r as u64);
        Ok((!m.has(&x) && gamma_element_violates(h, m, &x, limits)?).then_some((x, None)))
    })?
    .map(|(x, _)| x))
}

/// `⟨H,x⟩ ∩ M ≠ H`.
pub fn gamma_element_violates(h: &PermGroup, m: &PermGroup, x: &Permutation, limits: &Limits) -> Result<bool> {
    let t = join_elements(h, std::slice::from_ref(x))?;
    Ok(!intersection(&t, m, limits)?.same_elements(h))
}

pub fn classify_triple(g: &PermGroup, m: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<TripleClassification> {
    require_subgroup(h, m, "H is not a subgroup of M")?;
    require_subgroup(m, g, "M is not a subgroup of G")?;
    let h_normal_in_m = is_normal(m, h);
    let closure = normal_closure(g, h)?;
    let meet = intersection(&closure, m, limits)?;
    let special = h_normal_in_m && meet.same_elements(h);
    let n = crate::subgroup::normalizer(g, h, limits)?;
    let ne = intersection(&closure, &n, limits)?.same_elements(h);
    let w_witness = if h_normal_in_m {
        w_triple_witness(g, m, h, limits)?
    } else {
        None
    };
    let w_triple = h_normal_in_m && w_witness.is_none();
    let chain = h.order() < m.order() && m.order() < g.order();
    let gamma_witness = if chain { gamma_witness(g, m, h, limits)? } else { None };
    Ok(TripleClassification {
        h_normal_in_m,
        special,
        ne,
        w_triple,
        gamma: chain && gamma_witness.is_none(),
        closure_meet_m_order: meet.order(),
        w_witness,
        gamma_witness,
    })
}

/// Reference implementations quantifying over every element of `G`.
pub mod naive {
    use super::*;

    fn elements(g: &PermGroup, limits: &Limits) -> Result<Vec<Permutation>> {
        Ok(g.elements(limits)?.collect())
    }

    pub fn is_closed(
        kind: ClosureKind,
        h: &PermGroup,
        m: &PermGroup,
        g: &PermGroup,
        all_g: bool,
        limits: &Limits,
    ) -> Result<bool> {
        for x in elements(g, limits)? {
            if kind == ClosureKind::Extreme && !all_g && m.has(&x) {
                continue;
            }
            let k = h.conjugate(&x)?;
            let bad = match kind {
                ClosureKind::Extreme => !intersection(&join(h, &k)?, m, limits)?.same_elements(h),
                ClosureKind::Strong => k.elements_unbounded().any(|y| m.has(&y) && !h.has(&y)),
                ClosureKind::Weak => k.is_subgroup_of(m) && !k.same_elements(h),
            };
            if bad {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn normalizer(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        crate::subgroup::naive::normalizer(g, h, limits)
    }

    pub fn is_pronormal(h: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<bool> {
        for x in elements(g, limits)? {
            let k = h.conjugate(&x)?;
            let t = join(h, &k)?;
            let ok = t.elements_unbounded().any(|u| h.conjugate(&u).is_ok_and(|hu| hu.same_elements(&k)));
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_abnormal(h: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<bool> {
        for x in elements(g, limits)? {
            let a = join(h, &h.conjugate(&x)?)?;
            let b = join_elements(h, std::slice::from_ref(&x))?;
            if !a.same_elements(&b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_isolated(x: &Permutation, p: &PermGroup, g: &PermGroup, limits: &Limits) -> Result<bool> {
        for c in elements(g, limits)? {
            let y = x.conjugate_by(&c);
            if &y != x && p.has(&y) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_special(g: &PermGroup, m: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool> {
        let normal = elements(m, limits)?.iter().all(|x| h.conjugate(x).is_ok_and(|k| k.same_elements(h)));
        let closure = crate::subgroup::naive::normal_closure(g, h, limits)?;
        Ok(normal && intersection(&closure, m, limits)?.same_elements(h))
    }

    pub fn is_ne(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool> {
        let n = normalizer(g, h, limits)?;
        let closure = crate::subgroup::naive::normal_closure(g, h, limits)?;
        Ok(intersection(&closure, &n, limits)?.same_elements(h))
    }

    pub fn is_w_triple(g: &PermGroup, m: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool> {
        if !is_normal(m, h) {
            return Ok(false);
        }
        for x in elements(g, limits)? {
            if m.has(&x) {
                continue;
            }
            if !intersection(m, &m.conjugate(&x)?, limits)?.is_subgroup_of(h) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_gamma(g: &PermGroup, m: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<bool> {
        if !(h.order() < m.order() && m.order() < g.order()) {
            return Ok(false);
        }
        for x in elements(g, limits)? {
            if !m.has(&x) && gamma_element_violates(h, m, &x, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    fn grp(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s, n)).collect();
        PermGroup::from_generators(&gens, n).unwrap()
    }

    const L: Limits = Limits {
        element_bound: 1_000_000,
        subgroup_bound: 2000,
    };

    #[test]
    fn example_one_in_s4() {
        let g = catalog::construct("S4").unwrap();
        let h = grp(&["(1,2,3)"], 4);
        let m = crate::subgroup::normalizer(&g, &h, &L).unwrap();
        assert_eq!(m.order(), 6);
        assert!(is_closed(ClosureKind::Extreme, &h, &m, &g, false, &L).unwrap().holds);
        assert!(is_closed(ClosureKind::Extreme, &h, &m, &g, true, &L).unwrap().holds);
        let t = classify_triple(&g, &m, &h, &L).unwrap();
        assert!(t.special && t.ne && !t.gamma);
        let w = t.gamma_witness.unwrap();
        assert!(!m.has(&w));
        assert!(gamma_element_violates(&h, &m, &w, &L).unwrap());
        let named_g = p("(1,3,2,4)", 4);
        assert!(gamma_element_violates(&h, &m, &named_g, &L).unwrap());
        assert_eq!(join_elements(&h, &[named_g]).unwrap().order(), 24);
    }

    #[test]
    fn normal_subgroups_are_closed() {
        let g = catalog::construct("S4").unwrap();
        let v4 = grp(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        for kind in [ClosureKind::Weak, ClosureKind::Strong, ClosureKind::Extreme] {
            assert!(is_closed(kind, &v4, &g, &g, false, &L).unwrap().holds);
            assert!(is_closed_in_g(kind, &v4, &g, &L).unwrap().holds);
        }
        let t = classify_triple(&g, &g, &v4, &L).unwrap();
        assert!(t.special);
    }

    #[test]
    fn pronormal_and_abnormal() {
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        let h = grp(&["(1,2)(3,4)"], 4);
        let r = is_pronormal(&h, &a4, &L).unwrap();
        assert!(!r.holds && r.witness_element.is_some());
        let s4 = catalog::construct("S4").unwrap();
        let sylow = crate::structure::sylow_subgroup(&s4, 2, &L).unwrap();
        assert!(is_pronormal(&sylow, &s4, &L).unwrap().holds);
        assert!(is_abnormal(&s4, &s4, &L).unwrap().holds);
        let c3 = grp(&["(1,2,3)"], 4);
        let r = is_abnormal(&c3, &s4, &L).unwrap();
        assert!(!r.holds);
        let n = crate::subgroup::normalizer(&s4, &c3, &L).unwrap();
        assert!(is_abnormal(&n, &s4, &L).unwrap().holds);
    }

    #[test]
    fn isolation() {
        let s4 = catalog::construct("S4").unwrap();
        let sylow = crate::structure::sylow_subgroup(&s4, 2, &L).unwrap();
        let x = p("(1,2)(3,4)", 4);
        let x = if sylow.has(&x) { x } else { p("(1,3)(2,4)", 4) };
        let r = is_isolated(&x, &sylow, &s4, &L).unwrap();
        assert!(!r.holds);
        let c = r.witness_element.unwrap();
        let y = x.conjugate_by(&c);
        assert!(y != x && sylow.has(&y));
        let c4 = grp(&["(1,2,3,4)"], 4);
        assert!(is_isolated(&p("(1,3)(2,4)", 4), &c4, &c4, &L).unwrap().holds);
    }

    #[test]
    fn witnesses_recheck() {
        let g = catalog::construct("A5").unwrap();
        let h = grp(&["(1,2)(3,4)"], 5);
        for kind in [ClosureKind::Weak, ClosureKind::Strong, ClosureKind::Extreme] {
            let n = crate::subgroup::normalizer(&g, &h, &L).unwrap();
            let r = is_closed(kind, &h, &n, &g, false, &L).unwrap();
            assert_eq!(r.holds, naive::is_closed(kind, &h, &n, &g, false, &L).unwrap());
            if let Some(w) = &r.witness_element {
                assert!(witness_violates(kind, &h, &n, false, w, &L).unwrap());
            }
        }
    }
}
