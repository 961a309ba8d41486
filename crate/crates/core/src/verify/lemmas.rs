use super::report::{Counterexample, VerificationReport};
use super::{normal_subgroups, p_subgroup_classes, product_order, sylow_containing, timed};
use crate::embedding::{is_closed, is_extremely_closed_in_g, is_pronormal, w_triple_witness, ClosureKind};
use crate::error::{GroupError, Result};
use crate::group::{p_part, PermGroup};
use crate::lattice::SubgroupLattice;
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::structure::{self, induces_frobenius_automorphism, is_frobenius_group, is_solvable};
use crate::subgroup::{
    centralizer, class_elements, coset_action, conjugacy_classes, conjugate_orbit, derived_subgroup, intersection,
    is_normal, join, normal_closure, normal_closure_of_elements, normalizer,
};

/// Extremely closed nontrivial `p`-subgroups of `G`, one per class.
fn closed_p_subgroups(g: &PermGroup, p: u64, limits: &Limits) -> Result<(u64, Vec<PermGroup>)> {
    let candidates = p_subgroup_classes(g, p, limits, |_| true)?;
    let total = candidates.len() as u64;
    let mut out = Vec::new();
    for h in candidates {
        if is_extremely_closed_in_g(&h, g, limits)?.holds {
            out.push(h);
        }
    }
    Ok((total, out))
}

fn proper_normals(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    Ok(normal_subgroups(g, limits)?
        .into_iter()
        .filter(|n| !n.is_trivial() && n.order() != g.order())
        .collect())
}

/// Basic properties of every extremely closed `p`-subgroup `H`, up to
/// conjugacy: `H` is a self-normalizing Sylow subgroup of each `⟨H,H^g⟩`,
/// it is pronormal and normal in its Sylow overgroups, and its image stays
/// extremely closed with matching normalizer modulo proper normal `K`.
/// Abelian `H` also gives `⟨H,H^g⟩ = H·O_{p'}(⟨H,H^g⟩)`.
pub fn verify_lemma22(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("lemma22", name, Some(p));
        let (total, closed) = closed_p_subgroups(g, p, limits)?;
        r.checks = total;
        let normals = proper_normals(g, limits)?;
        for h in closed {
            r.instance();
            let n = normalizer(g, &h, limits)?;
            let orbit = conjugate_orbit(g, &h, limits)?;
            let opp_t = |t: &PermGroup| structure::o_p_prime(t, p, limits);
            for (t_el, k) in orbit.transversal.iter().zip(&orbit.conjugates) {
                let t = join(&h, k)?;
                let nt = normalizer(&t, &h, limits)?;
                if !nt.same_elements(&h) || p_part(t.order(), p) != h.order() {
                    r.fail(
                        Counterexample::new("lemma22(i)", &h, "H is not a self-normalizing Sylow subgroup of <H,H^g>")
                            .with_g(t_el)
                            .with_order("<H,H^g>", t.order())
                            .with_order("N_T(H)", nt.order()),
                    );
                }
                if h.is_abelian() {
                    let o = opp_t(&t)?;
                    if h.order() * o.order() != t.order() {
                        r.fail(
                            Counterexample::new("lemma22(v)", &h, "<H,H^g> is not H·O_p'(<H,H^g>)")
                                .with_g(t_el)
                                .with_order("<H,H^g>", t.order())
                                .with_order("O_p'(<H,H^g>)", o.order()),
                        );
                    }
                }
            }
            let pro = is_pronormal(&h, g, limits)?;
            if !pro.holds {
                let mut cx = Counterexample::new("lemma22(ii)", &h, "H is not pronormal");
                if let Some(w) = &pro.witness_element {
                    cx = cx.with_g(w);
                }
                r.fail(cx);
            }
            let sylow = sylow_containing(g, &h, p, limits)?;
            if !sylow.is_subgroup_of(&n) {
                r.fail(
                    Counterexample::new("lemma22(vii)", &h, "a Sylow overgroup of H does not normalize H")
                        .with_m(&sylow),
                );
            }
            for k in &normals {
                let q = coset_action(g, k, limits)?;
                let hbar = q.map_subgroup(&h)?;
                let nbar = q.map_subgroup(&n)?;
                let n_of_hbar = normalizer(&q.image, &hbar, limits)?;
                if n_of_hbar.order() != nbar.order() {
                    r.fail(
                        Counterexample::new("lemma22(iv)", &h, "N_{G/K}(HK/K) differs from N_G(H)K/K")
                            .with_m(k)
                            .with_order("N_{G/K}(HK/K)", n_of_hbar.order())
                            .with_order("N_G(H)K/K", nbar.order()),
                    );
                }
                if !is_extremely_closed_in_g(&hbar, &q.image, limits)?.holds {
                    r.fail(
                        Counterexample::new("lemma22(vi)", &h, "HK/K is not extremely closed in G/K").with_m(k),
                    );
                }
            }
        }
        Ok(r)
    })
}

/// Strong closure of an extremely closed `p`-subgroup in its Sylow
/// overgroup, and the behaviour of `H ∩ K` for normal `K`.
pub fn verify_lemma23(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("lemma23", name, Some(p));
        let (total, closed) = closed_p_subgroups(g, p, limits)?;
        r.checks = total;
        let normals = normal_subgroups(g, limits)?;
        for h in closed {
            r.instance();
            let sylow = sylow_containing(g, &h, p, limits)?;
            if !is_closed(ClosureKind::Strong, &h, &sylow, g, false, limits)?.holds {
                r.fail(Counterexample::new("lemma23(i)", &h, "H is not strongly closed in P").with_m(&sylow));
            }
            let n = normalizer(g, &h, limits)?;
            for k in &normals {
                let q = intersection(&h, k, limits)?;
                let rr = intersection(&sylow, k, limits)?;
                if !is_closed(ClosureKind::Strong, &q, &rr, k, false, limits)?.holds {
                    r.fail(
                        Counterexample::new("lemma23(ii)", &h, "H ∩ K is not strongly closed in P ∩ K w.r.t. K")
                            .with_m(k),
                    );
                }
                if k.is_subgroup_of(&n) && !is_normal(g, &q) {
                    r.fail(Counterexample::new("lemma23(iii)", &h, "H ∩ K is not normal in G").with_m(k));
                }
            }
        }
        Ok(r)
    })
}

/// Abelian `p`-subgroups with `⟨H^G⟩ ∩ N_G(H) = H`: `O_{p'}(⟨H^G⟩)` is a
/// normal complement to `N_G(H)` and `⟨H^G⟩` is solvable.
pub fn verify_lemma211(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("lemma211", name, Some(p));
        for h in p_subgroup_classes(g, p, limits, |h| h.is_abelian())? {
            r.checks += 1;
            if super::cor_special_instance(g, &h, limits)?.is_some() {
                continue;
            }
            r.instance();
            let n = normalizer(g, &h, limits)?;
            let l = normal_closure(g, &h)?;
            let o = structure::o_p_prime(&l, p, limits)?;
            let meet = intersection(&o, &n, limits)?;
            let ok = is_normal(g, &o)
                && meet.is_trivial()
                && product_order(&n, &o, limits)? == g.order()
                && h.order() * o.order() == l.order()
                && is_solvable(&l)?;
            if !ok {
                r.fail(
                    Counterexample::new("lemma211", &h, "O_p'(<H^G>) is not a normal complement to N_G(H)")
                        .with_m(&n)
                        .with_order("<H^G>", l.order())
                        .with_order("O_p'(<H^G>)", o.order())
                        .with_order("O_p'(<H^G>) ∩ N_G(H)", meet.order()),
                );
            }
        }
        Ok(r)
    })
}

/// Centralizer generation for a `p`-group `A` acting on the solvable
/// `p'`-group `K = O_{p'}(G)`, `p` odd:
/// `C_{[K,A]}(A) = ⟨C_{[k,A]}(A) : k ∈ K⟩`. `A` runs over a Sylow
/// `p`-subgroup and the cyclic subgroups of its generators.
pub fn verify_lemma29(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("lemma29", name, Some(p));
        if p == 2 {
            r.note("the centralizer generation check applies to odd primes only");
            return Ok(r);
        }
        let k = structure::o_p_prime(g, p, limits)?;
        let sylow = structure::sylow_subgroup(g, p, limits)?;
        if k.is_trivial() || sylow.is_trivial() {
            r.note("O_p'(G) or the Sylow p-subgroup is trivial");
            return Ok(r);
        }
        if !is_solvable(&k)? {
            r.note("O_p'(G) is not solvable");
            return Ok(r);
        }
        let mut actors = vec![sylow.clone()];
        for x in sylow.generators() {
            let c = PermGroup::from_generators(std::slice::from_ref(x), g.degree())?;
            if !actors.iter().any(|a| a.same_elements(&c)) {
                actors.push(c);
            }
        }
        let k_elems: Vec<Permutation> = k.elements(limits)?.collect();
        for a in actors {
            r.checks += 1;
            limits.check_elements("commutator scan", k.order().saturating_mul(a.order()))?;
            r.instance();
            let a_elems: Vec<Permutation> = a.elements(limits)?.collect();
            let commutators = |x: &Permutation| -> Vec<Permutation> {
                a_elems.iter().map(|y| x.commutator(y)).filter(|c| !c.is_identity()).collect()
            };
            let all: Vec<Permutation> = k_elems.iter().flat_map(commutators).collect();
            let ka = PermGroup::from_generators(&all, g.degree())?;
            let lhs = centralizer(&ka, a.generators(), limits)?;
            let mut pieces = Vec::new();
            for x in &k_elems {
                let kx = PermGroup::from_generators(&commutators(x), g.degree())?;
                pieces.extend(centralizer(&kx, a.generators(), limits)?.generators().iter().cloned());
            }
            let rhs = PermGroup::from_generators(&pieces, g.degree())?;
            if !lhs.same_elements(&rhs) {
                r.fail(
                    Counterexample::new("lemma29", &a, "C_[K,A](A) differs from the join of the C_[k,A](A)")
                        .with_m(&k)
                        .with_order("C_[K,A](A)", lhs.order())
                        .with_order("<C_[k,A](A)>", rhs.order()),
                );
            }
        }
        Ok(r)
    })
}

/// The four lemma reports for one group and prime.
pub fn verify_lemma_suite(name: &str, g: &PermGroup, p: u64, limits: &Limits) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        verify_lemma22(name, g, p, limits)?,
        verify_lemma23(name, g, p, limits)?,
        verify_lemma29(name, g, p, limits)?,
        verify_lemma211(name, g, p, limits)?,
    ])
}

/// The two sides of Fischer's equivalence for the class of `x`.
#[derive(Clone, Debug)]
pub struct FischerSides {
    /// Some class member induces a Frobenius automorphism on `G'`.
    pub lhs: bool,
    /// Every two distinct class members generate a Frobenius group.
    pub rhs: bool,
    /// A class member `y` with `⟨x,y⟩` not Frobenius.
    pub non_frobenius: Option<Permutation>,
    pub checks: u64,
}

pub fn fischer_sides(g: &PermGroup, x: &Permutation, limits: &Limits) -> Result<FischerSides> {
    let class = class_elements(g, x, limits)?;
    let derived = derived_subgroup(g)?;
    let mut lhs = false;
    for d in &class {
        if induces_frobenius_automorphism(g, d, &derived, limits)? {
            lhs = true;
            break;
        }
    }
    // Every pair of distinct class members is conjugate to a pair (x, y).
    let mut non_frobenius = None;
    let mut checks = 0;
    for y in class.iter().filter(|y| *y != x) {
        checks += 1;
        let t = PermGroup::from_generators(&[x.clone(), y.clone()], g.degree())?;
        if !is_frobenius_group(&t, limits)? {
            non_frobenius = Some(y.clone());
            break;
        }
    }
    Ok(FischerSides {
        lhs,
        rhs: non_frobenius.is_none(),
        non_frobenius,
        checks,
    })
}

fn fischer_hypothesis(g: &PermGroup, x: &Permutation) -> Result<()> {
    if !g.contains(x)? {
        return Err(GroupError::NotContained("the class representative is not in G".into()));
    }
    if x.order() <= 2 {
        return Err(GroupError::Hypothesis("the class representative must have order greater than 2".into()));
    }
    if normal_closure_of_elements(g, std::slice::from_ref(x))?.order() != g.order() {
        return Err(GroupError::Hypothesis("the conjugacy class does not generate G".into()));
    }
    Ok(())
}

fn record_fischer(r: &mut VerificationReport, g: &PermGroup, x: &Permutation, limits: &Limits) -> Result<()> {
    let s = fischer_sides(g, x, limits)?;
    r.instance();
    r.checks += s.checks;
    r.note(format!(
        "class of {x}: Frobenius automorphism on G' = {}, all pairs Frobenius = {}",
        s.lhs, s.rhs
    ));
    if s.lhs != s.rhs {
        let h = PermGroup::from_generators(std::slice::from_ref(x), g.degree())?;
        let mut cx = Counterexample::new("fischer", &h, "the two sides of the equivalence differ");
        if let Some(y) = &s.non_frobenius {
            cx = cx.with_g(y);
        }
        r.fail(cx);
    }
    Ok(())
}

/// Some member of the class `D` of `x` induces a Frobenius automorphism on
/// `G'` exactly when every two distinct members of `D` generate a
/// Frobenius group. Requires `|x| > 2` and `⟨D⟩ = G`.
pub fn verify_fischer(name: &str, g: &PermGroup, x: &Permutation, limits: &Limits) -> Result<VerificationReport> {
    fischer_hypothesis(g, x)?;
    timed(|| {
        let mut r = VerificationReport::new("fischer", name, None);
        record_fischer(&mut r, g, x, limits)?;
        Ok(r)
    })
}

/// [`verify_fischer`] over every element class satisfying the hypotheses.
pub fn verify_fischer_all(name: &str, g: &PermGroup, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("fischer", name, None);
        for c in conjugacy_classes(g, limits)? {
            if fischer_hypothesis(g, &c.representative).is_ok() {
                record_fischer(&mut r, g, &c.representative, limits)?;
            }
        }
        Ok(r)
    })
}

/// For every `H ⊴ M < G` with `H < M`: the W-triple condition agrees with
/// "`N_G(D) ≤ M` for all `D ≤ M`, `D ≰ H`"; every W-triple has a normal
/// `K` with `G = MK`, `M ∩ K = H`, and is special.
pub fn verify_wielandt_pack(name: &str, g: &PermGroup, limits: &Limits) -> Result<VerificationReport> {
    timed(|| {
        let mut r = VerificationReport::new("wielandt_pack", name, None);
        let lattice = SubgroupLattice::new(g, limits)?;
        let top = lattice.top();
        let norm: Vec<usize> = (0..lattice.len()).map(|i| lattice.normalizer(i)).collect();
        let normals = lattice.normal_nodes();
        let mut triples = 0;
        for m in lattice.class_representatives() {
            if m == top {
                continue;
            }
            let mg = lattice.subgroup(m);
            for h in lattice.below(m) {
                if h == m || !lattice.is_normal_in(h, m) {
                    continue;
                }
                r.checks += 1;
                let hg = lattice.subgroup(h);
                let w = w_triple_witness(g, &mg, &hg, limits)?;
                let by_normalizers = lattice
                    .below(m)
                    .into_iter()
                    .filter(|&d| !lattice.contains(h, d))
                    .all(|d| lattice.contains(m, norm[d]));
                if w.is_none() != by_normalizers {
                    let mut cx = Counterexample::new("lemma26", &hg, "W-triple test and normalizer test disagree")
                        .with_m(&mg);
                    if let Some(x) = &w {
                        cx = cx.with_g(x);
                    }
                    r.fail(cx);
                }
                if w.is_some() {
                    continue;
                }
                r.instance();
                triples += 1;
                let complement = normals
                    .iter()
                    .find(|&&k| lattice.join(m, k) == top && lattice.meet(m, k) == h);
                if complement.is_none() {
                    r.fail(
                        Counterexample::new("wielandt", &hg, "no normal K with G = MK and M ∩ K = H").with_m(&mg),
                    );
                }
                let closure = *normals
                    .iter()
                    .find(|&&k| lattice.contains(k, h))
                    .expect("G itself is normal");
                if lattice.meet(closure, m) != h {
                    r.fail(
                        Counterexample::new("special", &hg, "<H^G> ∩ M differs from H")
                            .with_m(&mg)
                            .with_order("<H^G>", lattice.order(closure)),
                    );
                }
            }
        }
        r.note(format!("{triples} W-triples among {} pairs H ⊴ M < G", r.checks));
        Ok(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn l() -> Limits {
        Limits::default()
    }

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    #[test]
    fn lemma_suite_on_s4_and_x54() {
        let s4 = catalog::construct("S4").unwrap();
        for r in verify_lemma_suite("S4", &s4, 3, &l()).unwrap() {
            assert!(r.holds, "{r}");
        }
        let r = verify_lemma22("S4", &s4, 3, &l()).unwrap();
        assert_eq!(r.instances, 1);
        let x54 = catalog::construct("X54").unwrap();
        for r in verify_lemma_suite("X54", &x54, 2, &l()).unwrap() {
            assert!(r.holds, "{r}");
        }
        let c5 = catalog::construct("C5").unwrap();
        assert!(verify_lemma22("C5", &c5, 2, &l()).unwrap().vacuous);
    }

    #[test]
    fn lemma29_has_instances() {
        let f21 = catalog::construct("F21").unwrap();
        let r = verify_lemma29("F21", &f21, 3, &l()).unwrap();
        assert!(r.holds && !r.vacuous, "{r}");
        let a4 = catalog::construct("A4").unwrap();
        let r = verify_lemma29("A4", &a4, 3, &l()).unwrap();
        assert!(r.holds && !r.vacuous, "{r}");
    }

    #[test]
    fn fischer_examples() {
        let a4 = catalog::construct("A4").unwrap();
        let r = verify_fischer("A4", &a4, &p("(1,2,3)", 4), &l()).unwrap();
        assert!(r.holds && r.notes[0].ends_with("= true, all pairs Frobenius = true"), "{r}");
        let s4 = catalog::construct("S4").unwrap();
        let r = verify_fischer("S4", &s4, &p("(1,2,3,4)", 4), &l()).unwrap();
        assert!(r.holds && r.notes[0].ends_with("= false, all pairs Frobenius = false"), "{r}");
        let f21 = catalog::construct("F21").unwrap();
        let x = f21.generators()[1].clone();
        assert_eq!(x.order(), 3);
        let r = verify_fischer("F21", &f21, &x, &l()).unwrap();
        assert!(r.holds && r.notes[0].ends_with("= true, all pairs Frobenius = true"), "{r}");
        assert!(matches!(
            verify_fischer("S4", &s4, &p("(1,2)", 4), &l()),
            Err(GroupError::Hypothesis(_))
        ));
        assert!(matches!(
            verify_fischer("S4", &s4, &p("(1,2,3)", 4), &l()),
            Err(GroupError::Hypothesis(_))
        ));
    }

    #[test]
    fn wielandt_examples() {
        let s3 = catalog::construct("S3").unwrap();
        let r = verify_wielandt_pack("S3", &s3, &l()).unwrap();
        assert!(r.holds && !r.vacuous, "{r}");
        let c5 = catalog::construct("C5").unwrap();
        assert!(verify_wielandt_pack("C5", &c5, &l()).unwrap().vacuous);
        let s4 = catalog::construct("S4").unwrap();
        assert!(verify_wielandt_pack("S4", &s4, &l()).unwrap().holds);
    }
}
