use std::collections::BTreeMap;

use rayon::prelude::*;

use super::report::{Counterexample, VerificationReport};
use crate::catalog;
use crate::embedding::{
    classify_triple, gamma_element_violates, is_closed, is_extremely_closed_in_g, is_isolated, witness_violates,
    ClosureKind,
};
use crate::error::Result;
use crate::group::PermGroup;
use crate::lattice::maximal_subgroups;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::structure::{is_frobenius_group, is_frobenius_with_complement, sylow_subgroup};
use crate::subgroup::{
    center, centralizer_of_subgroup, conjugacy_classes, class_elements, conjugate_orbit, derived_subgroup,
    intersection, is_normal, join, join_elements, normal_closure, normalizer,
};

/// One block of assertions about a named example. Each assertion counts as
/// an instance; the first failing one becomes the counterexample.
struct Block {
    r: VerificationReport,
    h: PermGroup,
}

impl Block {
    fn new(label: &str, group: &str, h: PermGroup) -> Self {
        let mut r = VerificationReport::new("examples", group, None);
        r.label = Some(label.to_string());
        Block { r, h }
    }

    fn check(&mut self, what: &str, ok: bool) {
        self.r.instance();
        self.r.checks += 1;
        if !ok {
            self.r.note(format!("FAILED: {what}"));
            self.r.fail(Counterexample::new("example", &self.h, what));
        }
    }

    fn value(&mut self, what: &str, v: impl std::fmt::Display) {
        self.r.note(format!("{what} = {v}"));
    }

    fn finish(mut self, start: std::time::Instant) -> VerificationReport {
        self.r.millis = start.elapsed().as_millis() as u64;
        self.r
    }
}

fn cyc(s: &str, n: usize) -> Result<Permutation> {
    Permutation::parse_cycles(s, Some(n))
}

fn example1(limits: &Limits) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let g = catalog::construct("S4")?;
    let h = PermGroup::from_generators(&[cyc("(1,2,3)", 4)?], 4)?;
    let mut b = Block::new("example1", "S4", h.clone());
    let m = normalizer(&g, &h, limits)?;
    b.check("|N_G(H)| = 6", m.order() == 6);
    let closure = normal_closure(&g, &h)?;
    b.check("<H^G> = A4", closure.same_elements(&catalog::alternating(4)?));
    b.check("<H^G> ∩ M = H", intersection(&closure, &m, limits)?.same_elements(&h));
    b.check(
        "H is extremely closed in M w.r.t. G",
        is_closed(ClosureKind::Extreme, &h, &m, &g, false, limits)?.holds,
    );
    b.check(
        "<H,H^g> ∩ M = H for all g in G",
        is_closed(ClosureKind::Extreme, &h, &m, &g, true, limits)?.holds,
    );
    let gp = cyc("(1,3,2,4)", 4)?;
    b.check("(1,3,2,4) lies outside M", !m.contains(&gp)?);
    b.check("<H,(1,3,2,4)> = G", join_elements(&h, std::slice::from_ref(&gp))?.order() == 24);
    b.check("(1,3,2,4) violates the γ condition", gamma_element_violates(&h, &m, &gp, limits)?);
    let t = classify_triple(&g, &m, &h, limits)?;
    b.check("(G,M,H) is not a γ-triple", !t.gamma);
    if let Some(w) = &t.gamma_witness {
        b.value("first γ witness in traversal order", w);
    }
    Ok(b.finish(start))
}

fn example2(limits: &Limits) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let g = catalog::construct_with("X54", limits)?;
    let e = catalog::x54_elements();
    let h = PermGroup::from_generators(std::slice::from_ref(&e.a), 54)?;
    let mut b = Block::new("example2", "X54", h.clone());
    b.check("|G| = 54", g.order() == 54);
    let sylow3 = sylow_subgroup(&g, 3, limits)?;
    b.check(
        "the subgroup of order 27 is normal, nonabelian, of exponent 3",
        sylow3.order() == 27
            && is_normal(&g, &sylow3)
            && !sylow3.is_abelian()
            && sylow3.elements(limits)?.all(|x| x.order() <= 3),
    );
    let n = normalizer(&g, &h, limits)?;
    let c = centralizer_of_subgroup(&g, &h, limits)?;
    b.check("N_G(H) = C_G(H) of order 6", n.same_elements(&c) && n.order() == 6);
    b.check("N_G(H) = H<z>", n.same_elements(&join_elements(&h, std::slice::from_ref(&e.z))?));
    let closure = normal_closure(&g, &h)?;
    b.check("<H^G> = G", closure.order() == g.order());
    b.check("H is extremely closed in G", is_extremely_closed_in_g(&h, &g, limits)?.holds);
    let t = classify_triple(&g, &n, &h, limits)?;
    b.check("(G,N_G(H),H) is not special", !t.special);
    b.check("|<H^G> ∩ N_G(H)| = 6", t.closure_meet_m_order == 6);
    let orbit = conjugate_orbit(&g, &h, limits)?;
    let mut all_dihedral = true;
    for k in orbit.conjugates.iter().filter(|k| !k.same_elements(&h)) {
        let t = join(&h, k)?;
        all_dihedral &= t.order() == 6 && !t.is_abelian() && is_frobenius_with_complement(&t, &h, limits)?;
    }
    b.check(
        "every <H,H^g> with g outside N_G(H) is dihedral of order 6 and Frobenius",
        all_dihedral,
    );
    b.value("conjugates of H", orbit.len());
    Ok(b.finish(start))
}

fn frattini_of_p_group(p: &PermGroup, prime: u64, limits: &Limits) -> Result<PermGroup> {
    let powers: Vec<Permutation> = p.elements(limits)?.map(|x| x.pow(prime as i64)).collect();
    join_elements(&derived_subgroup(p)?, &powers)
}

fn example3(limits: &Limits) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let g = catalog::construct_with("U3_4", limits)?;
    let p = sylow_subgroup(&g, 2, limits)?;
    let h = center(&p, limits)?;
    let mut b = Block::new("example3", "U3_4", h.clone());
    b.check("|G| = 62400", g.order() == 62400);
    b.check("|P| = 64", p.order() == 64);
    b.check("Z(P) = Φ(P)", h.same_elements(&frattini_of_p_group(&p, 2, limits)?));
    b.value("|H|", h.order());
    let n = normalizer(&g, &h, limits)?;
    b.value("|N_G(H)|", n.order());
    b.check(
        "H is strongly closed in N_G(H) w.r.t. G",
        is_closed(ClosureKind::Strong, &h, &n, &g, false, limits)?.holds,
    );
    let ext = is_extremely_closed_in_g(&h, &g, limits)?;
    b.check("H is not extremely closed in G", !ext.holds);
    if let Some(w) = &ext.witness_element {
        b.check(
            "the reported witness reproduces the violation",
            witness_violates(ClosureKind::Extreme, &h, &n, false, w, limits)?,
        );
        b.value("first witness in traversal order has order", w.order());
    }
    match order15_witness(&g, &h, &n, limits)? {
        Some((w, t, meet)) => {
            b.check("witness g has order 15", w.order() == 15);
            b.check("|<H,H^g>| = 60", t == 60);
            b.check("|<H,H^g> ∩ N_G(H)| = 12", meet == 12);
            b.check(
                "the order-15 witness reproduces the violation",
                witness_violates(ClosureKind::Extreme, &h, &n, false, &w, limits)?,
            );
            b.value("g", &w);
        }
        None => b.check("some violating g of order 15 exists", false),
    }
    Ok(b.finish(start))
}

/// Search the violating conjugates of `H`, in transversal order, for one
/// realized by an element `g` of order 15 with `|⟨H,H^g⟩| = 60` and
/// `|⟨H,H^g⟩ ∩ N| = 12`. The elements realizing `H^t` form the coset `N·t`.
pub fn order15_witness(
    g: &PermGroup,
    h: &PermGroup,
    n: &PermGroup,
    limits: &Limits,
) -> Result<Option<(Permutation, u64, u64)>> {
    let orbit = conjugate_orbit(g, h, limits)?;
    let n_elems: Vec<Permutation> = n.elements(limits)?.collect();
    for (t, k) in orbit.transversal.iter().zip(&orbit.conjugates) {
        let tt = join(h, k)?;
        let meet = intersection(&tt, n, limits)?;
        if meet.same_elements(h) || tt.order() != 60 || meet.order() != 12 {
            continue;
        }
        if let Some(w) = n_elems.iter().map(|x| x.compose(t)).find(|w| w.order() == 15) {
            return Ok(Some((w, tt.order(), meet.order())));
        }
    }
    Ok(None)
}

fn l2_17(limits: &Limits) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let g = catalog::construct_with("L2_17", limits)?;
    let p = sylow_subgroup(&g, 2, limits)?;
    let mut b = Block::new("l2_17", "L2_17", p.clone());
    b.check("|G| = 2448", g.order() == 2448);
    b.check("|P| = 16", p.order() == 16);
    b.check("P is self-normalizing", normalizer(&g, &p, limits)?.order() == 16);
    b.check("P is nonabelian", !p.is_abelian());
    b.check("P is extremely closed in G", is_extremely_closed_in_g(&p, &g, limits)?.holds);
    let z = center(&p, limits)?;
    if let Some(x) = z.generators().iter().find(|x| x.order() == 2) {
        b.value("central involution of P isolated in P", is_isolated(x, &p, &g, limits)?.holds);
    }
    Ok(b.finish(start))
}

/// Orders of `⟨x,y⟩` over all ordered pairs from the class of 56 elements
/// of order 3 in `U₃(3)`, and whether every order-24 subgroup has a normal
/// Sylow 2-subgroup of order 8. `None` if no such class exists.
pub fn u3_3_pair_orders(g: &PermGroup, limits: &Limits) -> Result<Option<(BTreeMap<u64, u64>, bool, bool)>> {
    let Some(c) = conjugacy_classes(g, limits)?
        .into_iter()
        .find(|c| c.element_order == 3 && c.size == 56)
    else {
        return Ok(None);
    };
    let class = class_elements(g, &c.representative, limits)?;
    let pairs: Vec<(usize, usize)> = (0..class.len())
        .flat_map(|i| (0..class.len()).map(move |j| (i, j)))
        .collect();
    let results = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<(u64, bool)> {
            let t = PermGroup::from_generators(&[class[i].clone(), class[j].clone()], g.degree())?;
            let ok = match t.order() {
                3 => true,
                24 => {
                    let s = sylow_subgroup(&t, 2, limits)?;
                    s.order() == 8 && is_normal(&t, &s)
                }
                _ => false,
            };
            Ok((t.order(), ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut counts = BTreeMap::new();
    let mut all_ok = true;
    for (order, ok) in &results {
        *counts.entry(*order).or_insert(0) += 1;
        all_ok &= ok;
    }
    let frobenius_24 = match results.iter().position(|(o, _)| *o == 24) {
        Some(idx) => {
            let (i, j) = pairs[idx];
            let t = PermGroup::from_generators(&[class[i].clone(), class[j].clone()], g.degree())?;
            is_frobenius_group(&t, limits)?
        }
        None => false,
    };
    Ok(Some((counts, all_ok, frobenius_24)))
}

fn u3_3(limits: &Limits) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let g = catalog::construct_with("U3_3", limits)?;
    let classes = conjugacy_classes(&g, limits)?;
    let rep = classes
        .iter()
        .find(|c| c.element_order == 3 && c.size == 56)
        .map(|c| c.representative.clone());
    let h = match &rep {
        Some(x) => PermGroup::from_generators(std::slice::from_ref(x), g.degree())?,
        None => PermGroup::trivial(g.degree()),
    };
    let mut b = Block::new("u3_3", "U3_3", h.clone());
    b.check("|G| = 6048", g.order() == 6048);
    b.check("a class of 56 elements of order 3 exists", rep.is_some());
    if rep.is_some() {
        if let Some((counts, all_ok, frob)) = u3_3_pair_orders(&g, limits)? {
            b.check("every <x,x^g> has order 3 or 24", counts.keys().all(|o| *o == 3 || *o == 24));
            b.check("order-24 pairs occur", counts.contains_key(&24));
            b.check("every order-24 <x,x^g> has a normal Sylow 2-subgroup of order 8", all_ok);
            b.check("the order-24 <x,x^g> is not a Frobenius group", !frob);
            let described: Vec<String> = counts.iter().map(|(o, c)| format!("{c} pairs of order {o}")).collect();
            b.value("ordered pairs", described.join(", "));
        }
        let ext = is_extremely_closed_in_g(&h, &g, limits)?;
        b.check("<x> is not extremely closed in G", !ext.holds);
    }
    Ok(b.finish(start))
}

/// The first pair of distinct conjugates `H^a, H^b` (by transversal
/// position) that generates `G`, over all unordered pairs.
pub fn conjugate_pair_generating(
    g: &PermGroup,
    h: &PermGroup,
    limits: &Limits,
) -> Result<Option<(Permutation, Permutation)>> {
    let orbit = conjugate_orbit(g, h, limits)?;
    let pairs: Vec<(usize, usize)> = (0..orbit.len())
        .flat_map(|i| (i + 1..orbit.len()).map(move |j| (i, j)))
        .collect();
    let found = pairs
        .par_iter()
        .map(|&(i, j)| join(&orbit.conjugates[i], &orbit.conjugates[j]).map(|t| (t.order() == g.order()).then_some((i, j))))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();
    Ok(found.map(|(i, j)| (orbit.transversal[i].clone(), orbit.transversal[j].clone())))
}

fn a5_caveat(limits: &Limits) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let g = catalog::construct("A5")?;
    let m = maximal_subgroups(&g, limits)?.into_iter().find(|m| m.order() == 6);
    let h = match &m {
        Some(m) => sylow_subgroup(m, 2, limits)?,
        None => PermGroup::trivial(5),
    };
    let mut b = Block::new("a5_caveat", "A5", h.clone());
    let Some(m) = m else {
        b.check("A5 has a maximal subgroup of order 6", false);
        return Ok(b.finish(start));
    };
    b.check("the maximal subgroup M of order 6 is nonabelian, so M ≅ S3", !m.is_abelian());
    b.check("|M:H| = 3", m.order() / h.order() == 3);
    b.check("H is not normal in M", !is_normal(&m, &h));
    let pair = conjugate_pair_generating(&g, &h, limits)?;
    b.check("no two conjugates of H generate A5", pair.is_none());
    b.value("conjugates of H", conjugate_orbit(&g, &h, limits)?.len());
    Ok(b.finish(start))
}

/// Every example block, in a fixed order.
pub fn reproduce_examples(limits: &Limits) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        example1(limits)?,
        example2(limits)?,
        example3(limits)?,
        l2_17(limits)?,
        u3_3(limits)?,
        a5_caveat(limits)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_blocks_pass() {
        let l = Limits::default();
        for r in [example1(&l).unwrap(), example2(&l).unwrap(), a5_caveat(&l).unwrap()] {
            assert!(r.holds && !r.vacuous, "{r}");
        }
    }

    #[test]
    fn generating_pairs_in_a5() {
        let l = Limits::default();
        let a5 = catalog::construct("A5").unwrap();
        let v4 = PermGroup::from_generators(
            &[cyc("(1,2)(3,4)", 5).unwrap(), cyc("(1,3)(2,4)", 5).unwrap()],
            5,
        )
        .unwrap();
        assert!(conjugate_pair_generating(&a5, &v4, &l).unwrap().is_some());
    }
}
