//! Subgroup operators: conjugation, joins, intersections, normalizers,
//! centralizers, closures, quotients by normal subgroups and conjugacy classes.
//!
//! Functions that scan elements take a [`Limits`] and fail with a resource
//! error instead of running away on large inputs.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::{Permutation, Point};

fn same_degree(a: &PermGroup, b: &PermGroup) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    Ok(())
}

pub(crate) fn require_subgroup(h: &PermGroup, g: &PermGroup, what: &str) -> Result<()> {
    same_degree(g, h)?;
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotContained(what.to_string()));
    }
    Ok(())
}

/// `H^g`.
pub fn conjugate_subgroup(h: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    h.conjugate(g)
}

/// `⟨A, B⟩`.
pub fn join(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    same_degree(a, b)?;
    if b.order() > a.order() {
        b.extended(a.generators())
    } else {
        a.extended(b.generators())
    }
}

/// `⟨A, extra⟩`.
pub fn join_elements(a: &PermGroup, extra: &[Permutation]) -> Result<PermGroup> {
    a.extended(extra)
}

/// `A ∩ B`, by scanning the smaller group.
pub fn intersection(a: &PermGroup, b: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    same_degree(a, b)?;
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    limits.check_elements("intersection", small.order())?;
    let target = crate::perm::gcd(small.order(), large.order());
    let mut result = PermGroup::trivial(a.degree());
    // generators of `small` that lie in `large` are a cheap head start
    let inside: Vec<Permutation> = small.generators().iter().filter(|g| large.has(g)).cloned().collect();
    result = result.extended(&inside)?;
    for x in small.elements_unbounded() {
        if result.order() == target {
            break;
        }
        if !result.has(&x) && large.has(&x) {
            result = result.extended(&[x])?;
        }
    }
    Ok(result)
}

/// The orbit of a subgroup under conjugation, with a right transversal of
/// its normalizer. `conjugates[i] = H^{transversal[i]}`, `conjugates[0] = H`.
#[derive(Clone, Debug)]
pub struct ConjugateOrbit {
    pub normalizer: PermGroup,
    pub transversal: Vec<Permutation>,
    pub conjugates: Vec<PermGroup>,
}

impl ConjugateOrbit {
    pub fn len(&self) -> usize {
        self.conjugates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjugates.is_empty()
    }
}

/// Subgroups up to this order are keyed by their sorted element list.
const ELEMENT_KEY_LIMIT: u64 = 256;

#[derive(Hash, PartialEq, Eq)]
enum ConjKey {
    Elements(Vec<Permutation>),
    Orbits(Vec<Point>),
}

/// Conjugates of `H` under `G`, found by a breadth-first search over the
/// generators of `G`; the normalizer comes out of the same search as the
/// group of Schreier generators.
pub fn conjugate_orbit(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<ConjugateOrbit> {
    require_subgroup(h, g, "H is not a subgroup of G")?;
    limits.check_elements("normalizer", g.order())?;
    let degree = g.degree();
    let small = h.order() <= ELEMENT_KEY_LIMIT;
    let h_elements: Vec<Permutation> = if small {
        h.elements_unbounded().collect()
    } else {
        Vec::new()
    };
    let key_of = |x: &Permutation, conj: Option<&PermGroup>| -> ConjKey {
        if small {
            let mut els: Vec<Permutation> = h_elements.iter().map(|e| e.conjugate_by(x)).collect();
            els.sort();
            ConjKey::Elements(els)
        } else {
            ConjKey::Orbits(conj.expect("large keys need the group").orbit_labels())
        }
    };

    let mut transversal = vec![Permutation::identity(degree)];
    let mut conjugates = vec![h.clone()];
    let mut index: HashMap<ConjKey, Vec<usize>> = HashMap::new();
    index.insert(key_of(&transversal[0], Some(h)), vec![0]);
    let mut normalizer = h.clone();

    let mut i = 0;
    while i < conjugates.len() {
        for s in g.generators() {
            let x = transversal[i].compose(s);
            let candidate = if small { None } else { Some(h.conjugate(&x)?) };
            let key = key_of(&x, candidate.as_ref());
            let found = match index.get(&key) {
                None => None,
                Some(bucket) if small => Some(bucket[0]),
                Some(bucket) => {
                    let c = candidate.as_ref().expect("built for large keys");
                    bucket.iter().copied().find(|&j| c.same_elements(&conjugates[j]))
                }
            };
            match found {
                Some(j) => {
                    let schreier = x.compose(&transversal[j].inverse());
                    if !normalizer.has(&schreier) {
                        normalizer = normalizer.extended(&[schreier])?;
                    }
                }
                None => {
                    let conj = match candidate {
                        Some(c) => c,
                        None => h.conjugate(&x)?,
                    };
                    index.entry(key).or_default().push(conjugates.len());
                    conjugates.push(conj);
                    transversal.push(x);
                }
            }
        }
        i += 1;
    }
    debug_assert_eq!(normalizer.order() * conjugates.len() as u64, g.order());
    Ok(ConjugateOrbit {
        normalizer,
        transversal,
        conjugates,
    })
}

/// `N_G(H)`.
pub fn normalizer(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    Ok(conjugate_orbit(g, h, limits)?.normalizer)
}

/// Elements of `G` commuting with every permutation in `targets`.
pub fn centralizer(g: &PermGroup, targets: &[Permutation], limits: &Limits) -> Result<PermGroup> {
    for t in targets {
        if t.degree() != g.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: g.degree(),
                found: t.degree(),
            });
        }
    }
    limits.check_elements("centralizer", g.order())?;
    let inside: Vec<Permutation> = g
        .generators()
        .iter()
        .filter(|x| targets.iter().all(|t| t.commutes_with(x)))
        .cloned()
        .collect();
    let mut result = PermGroup::trivial(g.degree()).extended(&inside)?;
    if result.order() == g.order() {
        return Ok(result);
    }
    for x in g.elements_unbounded() {
        if !result.has(&x) && targets.iter().all(|t| t.commutes_with(&x)) {
            result = result.extended(&[x])?;
        }
    }
    Ok(result)
}

/// `C_G(H)`.
pub fn centralizer_of_subgroup(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    same_degree(g, h)?;
    centralizer(g, h.generators(), limits)
}

/// `Z(G)`.
pub fn center(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    centralizer(g, g.generators(), limits)
}

/// `⟨H^G⟩`: close the generators of `H` under conjugation by the generators of `G`.
pub fn normal_closure(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    same_degree(g, h)?;
    closure_under(g.generators(), h.clone())
}

/// Normal closure of a set of elements.
pub fn normal_closure_of_elements(g: &PermGroup, xs: &[Permutation]) -> Result<PermGroup> {
    let start = PermGroup::from_generators(xs, g.degree())?;
    closure_under(g.generators(), start)
}

fn closure_under(conjugators: &[Permutation], start: PermGroup) -> Result<PermGroup> {
    let mut current = start;
    let mut queue: Vec<Permutation> = current.generators().to_vec();
    let mut i = 0;
    while i < queue.len() {
        for s in conjugators {
            let y = queue[i].conjugate_by(s);
            if !current.has(&y) {
                current = current.extended(std::slice::from_ref(&y))?;
                queue.push(y);
            }
        }
        i += 1;
    }
    Ok(current)
}

/// `G'`, the normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_of_elements(g, &comms)
}

/// `[G, G', G'', …]`, ending with the first repeated term.
pub fn derived_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("non-empty");
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        let done = next.is_trivial();
        series.push(next);
        if done {
            return Ok(series);
        }
    }
}

/// Largest normal subgroup of `G` contained in `H`.
pub fn normal_core(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let orbit = conjugate_orbit(g, h, limits)?;
    let mut core = h.clone();
    for k in orbit.conjugates.iter().skip(1) {
        if core.is_trivial() {
            break;
        }
        if !core.is_subgroup_of(k) {
            core = intersection(&core, k, limits)?;
        }
    }
    Ok(core)
}

/// `N ⊴ G`, tested on generators.
pub fn is_normal(g: &PermGroup, n: &PermGroup) -> bool {
    g.degree() == n.degree()
        && n.generators()
            .iter()
            .all(|x| g.generators().iter().all(|s| n.has(&x.conjugate_by(s))))
}

/// `x` normalizes `K`.
pub fn normalizes(x: &Permutation, k: &PermGroup) -> bool {
    k.generators().iter().all(|y| k.has(&y.conjugate_by(x)))
}

/// The action of `G` on the right cosets of a normal subgroup `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Image of `G`, acting on `index` points; faithful on `G/N`.
    pub image: PermGroup,
    pub kernel: PermGroup,
    /// `reps[i]` is the canonical representative of coset `i`; coset 0 is `N`.
    pub reps: Vec<Permutation>,
    index_of: HashMap<Permutation, usize>,
}

impl Quotient {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    fn coset_of(&self, x: &Permutation) -> usize {
        self.index_of[&self.kernel.canonical_coset_rep(x)]
    }

    /// Image of an element of `G`.
    pub fn map(&self, g: &Permutation) -> Permutation {
        let images: Vec<Point> = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.compose(g)) as Point)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Image of a subgroup of `G`.
    pub fn map_subgroup(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens: Vec<Permutation> = h.generators().iter().map(|g| self.map(g)).collect();
        PermGroup::from_generators(&gens, self.index())
    }

    /// Some element of `G` mapping to `sigma`.
    pub fn lift(&self, sigma: &Permutation) -> Permutation {
        self.reps[sigma.apply(0) as usize].clone()
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, s: &PermGroup) -> Result<PermGroup> {
        let lifts: Vec<Permutation> = s.generators().iter().map(|x| self.lift(x)).collect();
        self.kernel.extended(&lifts)
    }
}

pub fn coset_action(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<Quotient> {
    require_subgroup(n, g, "N is not a subgroup of G")?;
    if !is_normal(g, n) {
        return Err(GroupError::NotNormal("N".into()));
    }
    let index = g.order() / n.order();
    limits.check_elements("coset action", index)?;
    let first = n.canonical_coset_rep(&g.identity());
    let mut reps = vec![first.clone()];
    let mut index_of = HashMap::new();
    index_of.insert(first, 0usize);
    let mut i = 0;
    while i < reps.len() {
        for s in g.generators() {
            let r = n.canonical_coset_rep(&reps[i].compose(s));
            if !index_of.contains_key(&r) {
                index_of.insert(r.clone(), reps.len());
                reps.push(r);
            }
        }
        i += 1;
    }
    debug_assert_eq!(reps.len() as u64, index);
    let mut q = Quotient {
        image: PermGroup::trivial(reps.len()),
        kernel: n.clone(),
        reps,
        index_of,
    };
    q.image = q.map_subgroup(g)?;
    Ok(q)
}

/// One conjugacy class of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

/// Conjugacy classes together with the class index of every element, by rank.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<u32>,
}

impl ClassPartition {
    pub fn class_of_element(&self, g: &PermGroup, x: &Permutation) -> Option<usize> {
        g.rank(x).map(|r| self.class_of[r as usize] as usize)
    }
}

/// Classes in order of their first element in traversal order.
pub fn class_partition(g: &PermGroup, limits: &Limits) -> Result<ClassPartition> {
    limits.check_elements("conjugacy classes", g.order())?;
    let n = g.order() as usize;
    let mut seen = FixedBitSet::with_capacity(n);
    let mut class_of = vec![0u32; n];
    let mut classes = Vec::new();
    for r in 0..n {
        if seen.contains(r) {
            continue;
        }
        let id = classes.len() as u32;
        let x = g.unrank(r as u64);
        let mut orbit = vec![x.clone()];
        seen.insert(r);
        class_of[r] = id;
        let mut k = 0;
        while k < orbit.len() {
            for s in g.generators() {
                let y = orbit[k].conjugate_by(s);
                let ry = g.rank(&y).expect("conjugates stay in G") as usize;
                if !seen.contains(ry) {
                    seen.insert(ry);
                    class_of[ry] = id;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        classes.push(ConjClass {
            element_order: x.order(),
            representative: x,
            size: orbit.len() as u64,
        });
    }
    Ok(ClassPartition { classes, class_of })
}

pub fn conjugacy_classes(g: &PermGroup, limits: &Limits) -> Result<Vec<ConjClass>> {
    Ok(class_partition(g, limits)?.classes)
}

/// The members of `x^G`, in discovery order starting from `x`.
pub fn class_elements(g: &PermGroup, x: &Permutation, limits: &Limits) -> Result<Vec<Permutation>> {
    if x.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: x.degree(),
        });
    }
    limits.check_elements("conjugacy class", g.order())?;
    let mut seen = std::collections::HashSet::new();
    seen.insert(x.clone());
    let mut orbit = vec![x.clone()];
    let mut k = 0;
    while k < orbit.len() {
        for s in g.generators() {
            let y = orbit[k].conjugate_by(s);
            if seen.insert(y.clone()) {
                orbit.push(y);
            }
        }
        k += 1;
    }
    Ok(orbit)
}

/// Full-scan reference implementations, kept as oracles.
pub mod naive {
    use super::*;

    /// `{g ∈ G : H^g = H}` by testing every element of `G`.
    pub fn normalizer(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        require_subgroup(h, g, "H is not a subgroup of G")?;
        limits.check_elements("normalizer", g.order())?;
        let mut result = h.clone();
        for x in g.elements_unbounded() {
            if !result.has(&x) && normalizes(&x, h) {
                result = result.extended(&[x])?;
            }
        }
        Ok(result)
    }

    /// `⟨H^g : g ∈ G⟩` by conjugating with every element.
    pub fn normal_closure(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        limits.check_elements("normal closure", g.order())?;
        let mut result = h.clone();
        for x in g.elements_unbounded() {
            let conj: Vec<Permutation> = h.generators().iter().map(|y| y.conjugate_by(&x)).collect();
            result = result.extended(&conj)?;
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    fn grp(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s, n)).collect();
        PermGroup::from_generators(&gens, n).unwrap()
    }

    fn s4() -> PermGroup {
        grp(&["(1,2,3,4)", "(1,2)"], 4)
    }

    const L: Limits = Limits {
        element_bound: 1_000_000,
        subgroup_bound: 2000,
    };

    #[test]
    fn conjugation_examples() {
        let h = grp(&["(1,2,3)"], 4);
        let hg = conjugate_subgroup(&h, &p("(1,3,2,4)", 4)).unwrap();
        assert_eq!(hg.order(), 3);
        assert!(!hg.same_elements(&h));
        // with right actions (1,2,3)^(1,3,2,4) = (3,4,2); the left-action
        // conjugate g(1,2,3)g⁻¹ generates ⟨(3,1,4)⟩ instead
        assert!(hg.contains(&p("(3,4,2)", 4)).unwrap());
        let left = conjugate_subgroup(&h, &p("(1,3,2,4)", 4).inverse()).unwrap();
        assert!(left.contains(&p("(3,1,4)", 4)).unwrap());
        assert!(conjugate_subgroup(&h, &Permutation::identity(4)).unwrap().same_elements(&h));
    }

    #[test]
    fn join_and_intersection() {
        let a = grp(&["(1,2,3)"], 4);
        let b = grp(&["(1,2,4)"], 4);
        assert_eq!(join(&a, &b).unwrap().order(), 12);
        assert!(join(&a, &a).unwrap().same_elements(&a));
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        let s3 = grp(&["(1,2)", "(1,2,3)"], 4);
        let i = intersection(&a4, &s3, &L).unwrap();
        assert!(i.same_elements(&a));
        assert!(intersection(&s4(), &s4(), &L).unwrap().same_elements(&s4()));
    }

    #[test]
    fn normalizer_examples() {
        let g = s4();
        let h = grp(&["(1,2,3)"], 4);
        let orbit = conjugate_orbit(&g, &h, &L).unwrap();
        assert_eq!(orbit.normalizer.order(), 6);
        assert_eq!(orbit.len(), 4);
        for (t, k) in orbit.transversal.iter().zip(&orbit.conjugates) {
            assert!(h.conjugate(t).unwrap().same_elements(k));
        }
        let v4 = grp(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        assert_eq!(normalizer(&g, &v4, &L).unwrap().order(), 24);
        assert!(naive::normalizer(&g, &h, &L).unwrap().same_elements(&orbit.normalizer));
    }

    #[test]
    fn centralizers_and_centers() {
        let g = s4();
        assert_eq!(centralizer(&g, &[p("(1,2,3,4)", 4)], &L).unwrap().order(), 4);
        assert_eq!(centralizer(&g, &[Permutation::identity(4)], &L).unwrap().order(), 24);
        assert!(center(&g, &L).unwrap().is_trivial());
        let c4 = grp(&["(1,2,3,4)"], 4);
        assert_eq!(center(&c4, &L).unwrap().order(), 4);
    }

    #[test]
    fn closures_and_series() {
        let g = s4();
        let h = grp(&["(1,2,3)"], 4);
        let nc = normal_closure(&g, &h).unwrap();
        assert_eq!(nc.order(), 12);
        assert!(is_normal(&g, &nc));
        let orders: Vec<u64> = derived_series(&g).unwrap().iter().map(|x| x.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        let a5 = grp(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let orders: Vec<u64> = derived_series(&a5).unwrap().iter().map(|x| x.order()).collect();
        assert_eq!(orders, vec![60]);
        let c3 = grp(&["(1,2,3)"], 3);
        let orders: Vec<u64> = derived_series(&c3).unwrap().iter().map(|x| x.order()).collect();
        assert_eq!(orders, vec![3, 1]);
    }

    #[test]
    fn cores() {
        let g = s4();
        let s3 = grp(&["(1,2)", "(1,2,3)"], 4);
        assert!(normal_core(&g, &s3, &L).unwrap().is_trivial());
        let d8 = grp(&["(1,2,3,4)", "(1,3)"], 4);
        assert_eq!(normal_core(&g, &d8, &L).unwrap().order(), 4);
    }

    #[test]
    fn coset_actions() {
        let g = s4();
        let v4 = grp(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        let q = coset_action(&g, &v4, &L).unwrap();
        assert_eq!(q.image.order(), 6);
        assert_eq!(q.image.degree(), 6);
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        assert_eq!(coset_action(&a4, &v4, &L).unwrap().image.order(), 3);
        let whole = coset_action(&g, &g, &L).unwrap();
        assert_eq!((whole.image.order(), whole.image.degree()), (1, 1));
        let h = grp(&["(1,2,3)"], 4);
        assert!(matches!(coset_action(&g, &h, &L), Err(GroupError::NotNormal(_))));
        // map is a homomorphism with kernel V4
        for x in g.elements_unbounded() {
            for y in g.generators() {
                assert_eq!(q.map(&x.compose(y)), q.map(&x).compose(&q.map(y)));
            }
            assert_eq!(q.map(&x).is_identity(), v4.has(&x));
        }
        let pre = q.preimage(&q.map_subgroup(&h).unwrap()).unwrap();
        assert_eq!(pre.order(), 12);
    }

    #[test]
    fn class_examples() {
        let mut sizes: Vec<u64> = conjugacy_classes(&s4(), &L).unwrap().iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let c4 = grp(&["(1,2,3,4)"], 4);
        assert_eq!(conjugacy_classes(&c4, &L).unwrap().len(), 4);
        assert_eq!(class_elements(&s4(), &p("(1,2)(3,4)", 4), &L).unwrap().len(), 3);
    }
}
