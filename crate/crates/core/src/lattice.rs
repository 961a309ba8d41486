//! Subgroup lattices of small groups by cyclic closure.
//!
//! Elements are identified with their rank in the group's traversal order and
//! a full multiplication table is built, so subgroups are plain bitsets over
//! ranks. Every subgroup is a join of cyclic subgroups, so closing the set of
//! cyclic subgroups under joins with a single cyclic subgroup reaches them all.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Node {
    pub bits: FixedBitSet,
    /// Generating ranks.
    pub gens: Vec<u32>,
    pub order: u64,
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: PermGroup,
    elements: Vec<Permutation>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    nodes: Vec<Node>,
    lookup: HashMap<FixedBitSet, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn new(g: &PermGroup, limits: &Limits) -> Result<SubgroupLattice> {
        limits.check_lattice("subgroup lattice", g.order())?;
        let n = g.order() as usize;
        let elements: Vec<Permutation> = g.elements_unbounded().collect();
        let mut mult = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                mult[a * n + b] = g.rank(&x.compose(y)).expect("closed under products") as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mult[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut lattice = SubgroupLattice {
            group: g.clone(),
            elements,
            mult,
            inv,
            nodes: Vec::new(),
            lookup: HashMap::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        lattice.enumerate();
        lattice.classify();
        Ok(lattice)
    }

    fn n(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n() + b as usize]
    }

    /// Subgroup generated by the given ranks, starting from a known subgroup.
    fn close(&self, start: &FixedBitSet, gens: &[u32]) -> FixedBitSet {
        let mut bits = start.clone();
        let mut list: Vec<u32> = bits.ones().map(|r| r as u32).collect();
        if list.is_empty() {
            bits.insert(0);
            list.push(0);
        }
        let mut k = 0;
        while k < list.len() {
            for &s in gens {
                let y = self.mul(list[k], s);
                if !bits.contains(y as usize) {
                    bits.insert(y as usize);
                    list.push(y);
                }
            }
            k += 1;
        }
        bits
    }

    fn enumerate(&mut self) {
        let n = self.n();
        let mut nodes: Vec<Node> = Vec::new();
        let mut lookup: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut trivial = FixedBitSet::with_capacity(n);
        trivial.insert(0);
        lookup.insert(trivial.clone(), 0);
        nodes.push(Node {
            bits: trivial.clone(),
            gens: Vec::new(),
            order: 1,
        });
        let mut cyclic: Vec<usize> = Vec::new();
        for r in 1..n as u32 {
            let bits = self.close(&trivial, &[r]);
            if !lookup.contains_key(&bits) {
                lookup.insert(bits.clone(), nodes.len());
                cyclic.push(nodes.len());
                nodes.push(Node {
                    order: bits.count_ones(..) as u64,
                    bits,
                    gens: vec![r],
                });
            }
        }
        let mut i = 1;
        while i < nodes.len() {
            for &c in &cyclic {
                let gen = nodes[c].gens[0];
                if nodes[i].bits.contains(gen as usize) {
                    continue;
                }
                let bits = self.close(&nodes[i].bits, &[nodes[i].gens.as_slice(), &[gen]].concat());
                if !lookup.contains_key(&bits) {
                    let mut gens = nodes[i].gens.clone();
                    gens.push(gen);
                    lookup.insert(bits.clone(), nodes.len());
                    nodes.push(Node {
                        order: bits.count_ones(..) as u64,
                        bits,
                        gens,
                    });
                }
            }
            i += 1;
        }
        // stable order: by subgroup order, then by discovery
        let mut perm: Vec<usize> = (0..nodes.len()).collect();
        perm.sort_by_key(|&k| nodes[k].order);
        let mut slots: Vec<Option<Node>> = nodes.into_iter().map(Some).collect();
        self.nodes = perm.iter().map(|&k| slots[k].take().expect("each node moved once")).collect();
        self.lookup = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, node)| (node.bits.clone(), k))
            .collect();
    }

    fn conjugate_bits(&self, bits: &FixedBitSet, g: u32) -> FixedBitSet {
        let gi = self.inv[g as usize];
        let mut out = FixedBitSet::with_capacity(self.n());
        for e in bits.ones() {
            out.insert(self.mul(self.mul(gi, e as u32), g) as usize);
        }
        out
    }

    fn generator_ranks(&self) -> Vec<u32> {
        self.group
            .generators()
            .iter()
            .map(|x| self.group.rank(x).expect("generator") as u32)
            .collect()
    }

    fn classify(&mut self) {
        let gens = self.generator_ranks();
        let mut class_of = vec![usize::MAX; self.nodes.len()];
        let mut classes = Vec::new();
        for start in 0..self.nodes.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                for &s in &gens {
                    let c = self.conjugate_bits(&self.nodes[members[k]].bits, s);
                    let j = self.lookup[&c];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn order(&self, i: usize) -> u64 {
        self.nodes[i].order
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The subgroup at node `i` as a permutation group.
    pub fn subgroup(&self, i: usize) -> PermGroup {
        let gens: Vec<Permutation> = self.nodes[i]
            .gens
            .iter()
            .map(|&r| self.elements[r as usize].clone())
            .collect();
        PermGroup::from_generators(&gens, self.group.degree()).expect("degrees agree")
    }

    pub fn element(&self, rank: usize) -> &Permutation {
        &self.elements[rank]
    }

    /// Node index of a subgroup of the lattice's group.
    pub fn find(&self, h: &PermGroup) -> Option<usize> {
        let mut bits = FixedBitSet::with_capacity(self.n());
        for x in h.elements_unbounded() {
            bits.insert(self.group.rank(&x)? as usize);
        }
        self.lookup.get(&bits).copied()
    }

    /// Node `j` is contained in node `i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.nodes[j].bits.is_subset(&self.nodes[i].bits)
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Conjugacy classes of subgroups, each sorted, in order of first member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// One representative (the smallest index) per conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.classes[self.class_of[i]].len() == 1
    }

    /// Node `i` is a normal subgroup of node `j`.
    pub fn is_normal_in(&self, i: usize, j: usize) -> bool {
        self.contains(j, i)
            && self.nodes[j]
                .gens
                .iter()
                .all(|&g| self.conjugate_bits(&self.nodes[i].bits, g) == self.nodes[i].bits)
    }

    pub fn normal_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }

    /// Nodes contained in node `i`.
    pub fn below(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.contains(i, j)).collect()
    }

    /// Nodes containing node `i`.
    pub fn above(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.contains(j, i)).collect()
    }

    /// Maximal proper subgroups of node `i`.
    pub fn maximal_below(&self, i: usize) -> Vec<usize> {
        let proper: Vec<usize> = self.below(i).into_iter().filter(|&j| j != i).collect();
        proper
            .iter()
            .copied()
            .filter(|&j| {
                !proper
                    .iter()
                    .any(|&k| k != j && self.nodes[k].order > self.nodes[j].order && self.contains(k, j))
            })
            .collect()
    }

    /// `N_G(node)` as a bitset of ranks.
    pub fn normalizer_bits(&self, i: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n());
        for g in 0..self.n() as u32 {
            if self.conjugate_bits(&self.nodes[i].bits, g) == self.nodes[i].bits {
                out.insert(g as usize);
            }
        }
        out
    }

    /// Node index of `N_G(node)`.
    pub fn normalizer(&self, i: usize) -> usize {
        self.lookup[&self.normalizer_bits(i)]
    }

    /// Node index of the intersection of two nodes.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let mut bits = self.nodes[i].bits.clone();
        bits.intersect_with(&self.nodes[j].bits);
        self.lookup[&bits]
    }

    /// Node index of the join of two nodes.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let bits = self.close(&self.nodes[i].bits, &[self.nodes[i].gens.as_slice(), &self.nodes[j].gens].concat());
        self.lookup[&bits]
    }
}

/// All subgroups of `G`, or one per conjugacy class, ordered by size.
pub fn all_subgroups(g: &PermGroup, up_to_conjugacy: bool, limits: &Limits) -> Result<Vec<PermGroup>> {
    let lattice = SubgroupLattice::new(g, limits)?;
    let ids: Vec<usize> = if up_to_conjugacy {
        lattice.class_representatives()
    } else {
        (0..lattice.len()).collect()
    };
    Ok(ids.into_iter().map(|i| lattice.subgroup(i)).collect())
}

pub fn maximal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    let lattice = SubgroupLattice::new(g, limits)?;
    Ok(lattice
        .maximal_below(lattice.top())
        .into_iter()
        .map(|i| lattice.subgroup(i))
        .collect())
}

/// `Φ(G)`, the intersection of the maximal subgroups (`G` itself when trivial).
pub fn frattini(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let lattice = SubgroupLattice::new(g, limits)?;
    let top = lattice.top();
    let mut current = top;
    for m in lattice.maximal_below(top) {
        current = lattice.meet(current, m);
    }
    Ok(lattice.subgroup(current))
}
