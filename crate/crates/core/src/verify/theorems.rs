use std::collections::HashSet;

use rayon::prelude::*;

use super::report::{Counterexample, VerificationReport};
use super::{p_subgroup_classes, product_order, timed};
use crate::embedding::{self, is_closed, is_extremely_closed_in_g, ClosureKind};
use crate::error::{GroupError, Result};
use crate::group::{is_prime, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::structure::{self, is_p_solvable, is_simple_nonabelian, sylow_subgroup};
use crate::subgroup::{conjugate_orbit, intersection, join, normal_closure, normalizer};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

fn require_odd_prime(p: u64, statement: &str) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(GroupError::Hypothesis(format!("{statement} requires an odd prime")));
    }
    Ok(())
}

/// Maximal subgroups `M` of `G`, one per conjugacy class, as lattice indices.
pub(super) fn maximal_class_reps(lattice: &SubgroupLattice) -> Vec<usize> {
    let mut seen = HashSet::new();
    lattice
        .maximal_below(lattice.top())
        .into_iter()
        .filter(|&m| seen.insert(lattice.class_of(m)))
        .collect()
}

/// For every maximal `M` and maximal `H < M` with `⟨H,H^g⟩ ∩ M = H` for
/// all `g ∈ G`: `⟨H^G⟩ ∩ M = H`.
pub fn verify_th1(name: &str, g: &PermGroup, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("th1", name, None);
        let lattice = SubgroupLattice::new(g, limits)?;
        for mi in maximal_class_reps(&lattice) {
            let m = lattice.subgroup(mi);
            for hi in lattice.maximal_below(mi) {
                let h = lattice.subgroup(hi);
                r.checks += 1;
                if !is_closed(ClosureKind::Extreme, &h, &m, g, true, limits)?.holds {
                    continue;
                }
                r.instance();
                let closure = normal_closure(g, &h)?;
                let meet = intersection(&closure, &m, limits)?;
                if !meet.same_elements(&h) {
                    r.fail(
                        Counterexample::new("special", &h, "<H^G> ∩ M differs from H")
                            .with_m(&m)
                            .with_order("<H^G>", closure.order())
                            .with_order("<H^G> ∩ M", meet.order()),
                    );
                }
            }
        }
        Ok(r)
    })
}

/// `⟨H^G⟩ ∩ N_G(H) = H`; a counterexample when it fails.
pub fn cor_special_instance(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<Option<Counterexample>> {
    let n = normalizer(g, h, limits)?;
    let closure = normal_closure(g, h)?;
    let meet = intersection(&closure, &n, limits)?;
    Ok((!meet.same_elements(h)).then(|| {
        Counterexample::new("special", h, "<H^G> ∩ N_G(H) differs from H")
            .with_m(&n)
            .with_order("<H^G>", closure.order())
            .with_order("<H^G> ∩ N_G(H)", meet.order())
    }))
}

/// `H ≤ R(G)`; a counterexample when it fails.
pub fn cor_radical_instance(h: &PermGroup, radical: &PermGroup) -> Option<Counterexample> {
    (!h.is_subgroup_of(radical))
        .then(|| Counterexample::new("radical", h, "H is not contained in R(G)").with_order("R(G)", radical.order()))
}

/// `|N_G(H)·O_{p'}(G)| = |G|`.
fn factorization_instance(
    g: &PermGroup,
    h: &PermGroup,
    opp: &PermGroup,
    limits: &Limits,
) -> Result<Option<Counterexample>> {
    let n = normalizer(g, h, limits)?;
    let prod = product_order(&n, opp, limits)?;
    Ok((prod != g.order()).then(|| {
        Counterexample::new("factorization", h, "N_G(H)·O_p'(G) is a proper subset of G")
            .with_m(&n)
            .with_order("O_p'(G)", opp.order())
            .with_order("N_G(H)·O_p'(G)", prod)
    }))
}

fn not_closed_note(h: &PermGroup, rep: &embedding::EmbeddingReport) -> String {
    let mut s = format!("H of order {} is not extremely closed", h.order());
    if let Some(w) = &rep.witness_element {
        s.push_str(&format!(": g = {w}"));
    }
    if let Some(t) = &rep.witness_subgroup {
        s.push_str(&format!(", |<H,H^g>| = {}", t.order()));
    }
    s
}

/// Order-`p` subgroups `H` (odd `p`) extremely closed in `G` satisfy
/// `⟨H^G⟩ ∩ N_G(H) = H` and `G = N_G(H)·O_{p'}(G)`.
pub fn verify_th2(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    require_odd_prime(p, "th2")?;
    timed(|| {
        let mut r = VerificationReport::new("th2", name, Some(p));
        if !g.order().is_multiple_of(p) {
            r.note(format!("{p} does not divide |G|"));
            return Ok(r);
        }
        let opp = structure::o_p_prime(g, p, limits)?;
        let (mut frob_pairs, mut frob_total) = (0u64, 0u64);
        for h in p_subgroup_classes(g, p, limits, |h| h.order() == p)? {
            r.checks += 1;
            let ext = is_extremely_closed_in_g(&h, g, limits)?;
            if !ext.holds {
                r.note(not_closed_note(&h, &ext));
                continue;
            }
            r.instance();
            if let Some(cx) = cor_special_instance(g, &h, limits)? {
                r.fail(cx);
            }
            if let Some(cx) = factorization_instance(g, &h, &opp, limits)? {
                r.fail(cx);
            }
            let orbit = conjugate_orbit(g, &h, limits)?;
            for k in orbit.conjugates.iter().filter(|k| !k.same_elements(&h)) {
                let t = join(&h, k)?;
                frob_total += 1;
                if structure::is_frobenius_with_complement(&t, &h, limits)? {
                    frob_pairs += 1;
                }
            }
        }
        if frob_total > 0 {
            r.note(format!(
                "informative: {frob_pairs} of {frob_total} pairs <H,H^g> with H^g != H are Frobenius with complement H"
            ));
        }
        Ok(r)
    })
}

fn abelian_closed_instances(
    r: &mut VerificationReport,
    g: &PermGroup,
    p: u64,
    limits: &Limits,
    mut check: impl FnMut(&mut VerificationReport, &PermGroup) -> Result<()>,
) -> Result<()> {
    for h in p_subgroup_classes(g, p, limits, |h| h.is_abelian())? {
        r.checks += 1;
        if !is_extremely_closed_in_g(&h, g, limits)?.holds {
            continue;
        }
        r.instance();
        check(r, &h)?;
    }
    Ok(())
}

/// Abelian `p`-subgroups extremely closed in `G` satisfy
/// `G = N_G(H)·O_{p'}(G)`; for odd `p` also `⟨H^G⟩ ∩ N_G(H) = H` and
/// `H ≤ R(G)`.
pub fn verify_th3(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    require_prime(p)?;
    timed(|| {
        let mut r = VerificationReport::new("th3", name, Some(p));
        if !g.order().is_multiple_of(p) {
            r.note(format!("{p} does not divide |G|"));
            return Ok(r);
        }
        let opp = structure::o_p_prime(g, p, limits)?;
        let radical = if p == 2 { None } else { Some(structure::solvable_radical(g, limits)?) };
        abelian_closed_instances(&mut r, g, p, limits, |r, h| {
            if let Some(cx) = factorization_instance(g, h, &opp, limits)? {
                r.fail(cx);
            }
            if let Some(rad) = &radical {
                if let Some(cx) = cor_special_instance(g, h, limits)? {
                    r.fail(cx);
                }
                if let Some(cx) = cor_radical_instance(h, rad) {
                    r.fail(cx);
                }
            }
            Ok(())
        })?;
        let sylow = sylow_subgroup(g, p, limits)?;
        if !sylow.is_abelian() && is_extremely_closed_in_g(&sylow, g, limits)?.holds {
            let n = normalizer(g, &sylow, limits)?;
            r.note(format!(
                "the Sylow {p}-subgroup (order {}) is nonabelian and extremely closed, |N_G(P)| = {}, |O_p'(G)| = {}, |N_G(P)·O_p'(G)| = {}",
                sylow.order(),
                n.order(),
                opp.order(),
                product_order(&n, &opp, limits)?
            ));
        }
        Ok(r)
    })
}

/// Odd `p`: abelian extremely closed `p`-subgroups satisfy `⟨H^G⟩ ∩ N_G(H) = H`.
pub fn verify_cor_special(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    require_odd_prime(p, "cor_special")?;
    timed(|| {
        let mut r = VerificationReport::new("cor_special", name, Some(p));
        abelian_closed_instances(&mut r, g, p, limits, |r, h| {
            if let Some(cx) = cor_special_instance(g, h, limits)? {
                r.fail(cx);
            }
            Ok(())
        })?;
        Ok(r)
    })
}

/// Abelian extremely closed `p`-subgroups lie in the solvable radical.
pub fn verify_cor_radical(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    require_prime(p)?;
    timed(|| {
        let mut r = VerificationReport::new("cor_radical", name, Some(p));
        let radical = structure::solvable_radical(g, limits)?;
        abelian_closed_instances(&mut r, g, p, limits, |r, h| {
            if let Some(cx) = cor_radical_instance(h, &radical) {
                r.fail(cx);
            }
            Ok(())
        })?;
        Ok(r)
    })
}

/// First `g` (by transversal position) with `⟨H,H^g⟩ = G`.
pub(super) fn generating_conjugate(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<Option<Permutation>> {
    let orbit = conjugate_orbit(g, h, limits)?;
    let found = (0..orbit.len())
        .into_par_iter()
        .map(|i| join(h, &orbit.conjugates[i]).map(|t| (t.order() == g.order()).then_some(i)))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();
    Ok(found.map(|i| orbit.transversal[i].clone()))
}

/// Simple nonabelian `G`, maximal `M`, `H ⊴ M` of prime index: some
/// `⟨H,H^g⟩` equals `G`. Non-normal subgroups of prime index are recorded
/// in the notes.
pub fn verify_cor_generation(name: &str, g: &PermGroup, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("cor_generation", name, None);
        if !is_simple_nonabelian(g, limits)? {
            r.note("G is not simple and nonabelian");
            return Ok(r);
        }
        let lattice = SubgroupLattice::new(g, limits)?;
        for mi in maximal_class_reps(&lattice) {
            let m = lattice.subgroup(mi);
            for hi in lattice.maximal_below(mi) {
                let index = lattice.order(mi) / lattice.order(hi);
                if !is_prime(index) {
                    continue;
                }
                r.checks += 1;
                let h = lattice.subgroup(hi);
                let witness = generating_conjugate(g, &h, limits)?;
                if lattice.is_normal_in(hi, mi) {
                    r.instance();
                    if witness.is_none() {
                        r.fail(
                            Counterexample::new("generation", &h, "no two conjugates of H generate G")
                                .with_m(&m),
                        );
                    }
                } else if witness.is_none() {
                    r.note(format!(
                        "non-normal H of prime index {index} in M of order {}: no two conjugates of H generate G",
                        m.order()
                    ));
                }
            }
        }
        Ok(r)
    })
}

/// `G` is `p`-solvable exactly when every `⟨P,P^g⟩` is, for a Sylow `P`.
pub fn verify_th5(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    require_prime(p)?;
    timed(|| {
        let mut r = VerificationReport::new("th5", name, Some(p));
        if !g.order().is_multiple_of(p) {
            r.note(format!("{p} does not divide |G|: both sides hold trivially"));
            return Ok(r);
        }
        let sylow = sylow_subgroup(g, p, limits)?;
        let lhs = is_p_solvable(g, p, limits)?;
        let orbit = conjugate_orbit(g, &sylow, limits)?;
        let witness = (0..orbit.len())
            .into_par_iter()
            .map(|i| -> Result<Option<(usize, u64)>> {
                if orbit.conjugates[i].same_elements(&sylow) {
                    return Ok(None);
                }
                let t = join(&sylow, &orbit.conjugates[i])?;
                Ok((!is_p_solvable(&t, p, limits)?).then_some((i, t.order())))
            })
            .find_map_first(|x| match x {
                Ok(None) => None,
                other => Some(other),
            })
            .transpose()?
            .flatten();
        r.instance();
        r.checks = match witness {
            Some((i, _)) => i as u64,
            None => orbit.len() as u64 - 1,
        };
        let rhs = witness.is_none();
        match (lhs, witness) {
            (true, None) => r.note("G is p-solvable and every <P,P^g> is p-solvable"),
            (false, Some((i, order))) => r.note(format!(
                "G is not p-solvable; g = {} gives <P,P^g> of order {order}, not p-solvable",
                orbit.transversal[i]
            )),
            (true, Some((i, order))) => r.fail(
                Counterexample::new("p-solvability", &sylow, "G is p-solvable but <P,P^g> is not")
                    .with_g(&orbit.transversal[i])
                    .with_order("<P,P^g>", order),
            ),
            (false, None) => r.fail(Counterexample::new(
                "p-solvability",
                &sylow,
                "G is not p-solvable but every <P,P^g> is",
            )),
        }
        debug_assert_eq!(lhs, rhs || !r.holds);
        Ok(r)
    })
}

fn parse_group(gens: &[String], degree: usize) -> Result<PermGroup> {
    let perms = gens
        .iter()
        .map(|s| Permutation::parse_cycles(s, Some(degree)))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(&perms, degree)
}

/// Re-evaluate a counterexample with the naive all-elements oracles.
/// Returns true when the reported instance satisfies the hypothesis and
/// violates the recorded conclusion.
pub fn recheck(statement: &str, g: &PermGroup, p: Option<u64>, cx: &Counterexample, limits: &Limits) -> Result<bool> {
    use crate::embedding::naive;
    use crate::structure::lattice_oracle;
    let h = parse_group(&cx.h, g.degree())?;
    if statement == "th1" {
        let m = parse_group(
            cx.m.as_ref().ok_or_else(|| GroupError::Parse("th1 counterexample without M".into()))?,
            g.degree(),
        )?;
        let closure = crate::subgroup::naive::normal_closure(g, &h, limits)?;
        return Ok(naive::is_closed(ClosureKind::Extreme, &h, &m, g, true, limits)?
            && !intersection(&closure, &m, limits)?.same_elements(&h));
    }
    if !matches!(statement, "th2" | "th3" | "cor_special" | "cor_radical") {
        return Err(GroupError::Hypothesis(format!("no independent recheck for {statement}")));
    }
    let n = naive::normalizer(g, &h, limits)?;
    if !naive::is_closed(ClosureKind::Extreme, &h, &n, g, false, limits)? {
        return Ok(false);
    }
    match cx.conclusion.as_str() {
        "special" => {
            let closure = crate::subgroup::naive::normal_closure(g, &h, limits)?;
            Ok(!intersection(&closure, &n, limits)?.same_elements(&h))
        }
        "factorization" => {
            let p = p.ok_or_else(|| GroupError::Parse("factorization recheck needs a prime".into()))?;
            let opp = lattice_oracle::o_p_prime(g, p, limits)?;
            Ok(product_order(&n, &opp, limits)? != g.order())
        }
        "radical" => Ok(!h.is_subgroup_of(&lattice_oracle::solvable_radical(g, limits)?)),
        other => Err(GroupError::Parse(format!("unknown conclusion '{other}'"))),
    }
}
