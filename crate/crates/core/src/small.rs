//! Cayley-table arithmetic for tiny groups, with subgroups as bitsets over
//! the element list. Backs the exhaustive normal-subgroup enumeration used by
//! the potent-filtration search.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest group the table engine accepts.
pub const TABLE_CAP: u128 = 4096;

pub struct SmallGroup {
    elems: Vec<Permutation>,
    /// `mul[a * n + b]` is the index of `elems[a] * elems[b]`.
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
    identity: u32,
}

/// A subgroup as a bitset over element indices, with a generating set.
#[derive(Clone, Debug)]
pub struct SmallSubgroup {
    pub bits: FixedBitSet,
    pub gens: Vec<u32>,
}

/// Equality as sets of elements.
impl PartialEq for SmallSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for SmallSubgroup {}

impl SmallSubgroup {
    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn is_subset(&self, other: &SmallSubgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl SmallGroup {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let elems: Vec<Permutation> = g.enumerate(TABLE_CAP)?.collect();
        let n = elems.len();
        let index: HashMap<&Permutation, u32> =
            elems.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let mut mul = vec![0u32; n * n];
        for (a, x) in elems.iter().enumerate() {
            for (b, y) in elems.iter().enumerate() {
                mul[a * n + b] = index[&x.then(y)];
            }
        }
        let inv = elems.iter().map(|x| index[&x.inverse()]).collect();
        let gens = g.generators().iter().map(|x| index[x]).collect();
        let identity = index[&Permutation::identity(g.degree())];
        Ok(SmallGroup {
            elems,
            mul,
            inv,
            gens,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elems[i as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elems.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn conj(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn whole(&self) -> SmallSubgroup {
        self.generate(&self.gens)
    }

    pub fn trivial(&self) -> SmallSubgroup {
        self.generate(&[])
    }

    /// Closure of the identity under right multiplication by `seeds`.
    pub fn generate(&self, seeds: &[u32]) -> SmallSubgroup {
        let n = self.elems.len();
        let mut bits = FixedBitSet::with_capacity(n);
        let gens: Vec<u32> = seeds.iter().copied().filter(|&s| s != self.identity).collect();
        let mut queue = vec![self.identity];
        bits.insert(self.identity as usize);
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &s in &gens {
                let y = self.mul(x, s);
                if !bits.put(y as usize) {
                    queue.push(y);
                }
            }
            k += 1;
        }
        SmallSubgroup { bits, gens }
    }

    /// Normal closure of `seeds` under conjugation by the whole group.
    pub fn normal_closure(&self, seeds: &[u32]) -> SmallSubgroup {
        let mut h = self.generate(seeds);
        loop {
            let mut extra = Vec::new();
            for &x in &h.gens {
                for &g in &self.gens {
                    let c = self.conj(x, g);
                    if !h.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return h;
            }
            let mut gens = h.gens.clone();
            gens.extend(extra);
            h = self.generate(&gens);
        }
    }

    pub fn join(&self, a: &SmallSubgroup, b: &SmallSubgroup) -> SmallSubgroup {
        if b.is_subset(a) {
            return a.clone();
        }
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().copied().filter(|&x| !a.contains(x)));
        self.generate(&gens)
    }

    /// `[A, G]` for a normal subgroup `A`.
    pub fn commutator_with_whole(&self, a: &SmallSubgroup) -> SmallSubgroup {
        let seeds: Vec<u32> = a
            .gens
            .iter()
            .flat_map(|&x| self.gens.iter().map(move |&g| (x, g)))
            .map(|(x, g)| self.comm(x, g))
            .collect();
        self.normal_closure(&seeds)
    }

    /// `[A, G, .., G]` with `G` repeated `k` times; `k = 0` returns `A`.
    pub fn iterated_commutator_with_whole(&self, a: &SmallSubgroup, k: u32) -> SmallSubgroup {
        let mut cur = a.clone();
        for _ in 0..k {
            let next = self.commutator_with_whole(&cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    /// `A^q`, from the `q`-th powers of all elements of `A`.
    pub fn power(&self, a: &SmallSubgroup, q: u64) -> SmallSubgroup {
        let seeds: Vec<u32> = a.bits.ones().map(|x| self.pow(x as u32, q)).collect();
        let mut h = self.trivial();
        for s in seeds {
            if !h.contains(s) {
                let mut gens = h.gens.clone();
                gens.push(s);
                h = self.generate(&gens);
            }
        }
        h
    }

    pub fn to_perm_group(&self, h: &SmallSubgroup) -> PermGroup {
        let degree = self.elems[0].degree();
        let gens = h.gens.iter().map(|&x| self.elems[x as usize].clone()).collect();
        PermGroup::new(degree, gens).expect("elements share the degree")
    }

    pub fn from_perm_group(&self, h: &PermGroup) -> Result<SmallSubgroup> {
        let index: HashMap<&Permutation, u32> = self
            .elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x, i as u32))
            .collect();
        let mut gens = Vec::new();
        for g in h.generators() {
            match index.get(g) {
                Some(&i) => gens.push(i),
                None => {
                    return Err(Error::PreconditionViolated(
                        "subgroup is not contained in the table group".into(),
                    ))
                }
            }
        }
        Ok(self.generate(&gens))
    }

    /// Every normal subgroup, as joins of normal closures of single elements.
    /// Returns `None` when more than `cap` are found.
    pub fn normal_subgroups(&self, cap: usize) -> Option<Vec<SmallSubgroup>> {
        let n = self.elems.len() as u32;
        let mut covered = FixedBitSet::with_capacity(n as usize);
        let mut atoms: Vec<SmallSubgroup> = Vec::new();
        for x in 0..n {
            if x == self.identity || covered.contains(x as usize) {
                continue;
            }
            // conjugates of x share its normal closure
            let cls = self.normal_closure(&[x]);
            let mut stack = vec![x];
            covered.insert(x as usize);
            while let Some(y) = stack.pop() {
                for &g in &self.gens {
                    let z = self.conj(y, g);
                    if !covered.put(z as usize) {
                        stack.push(z);
                    }
                }
            }
            if !atoms.contains(&cls) {
                atoms.push(cls);
            }
        }
        let mut all = vec![self.trivial()];
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        seen.insert(all[0].bits.clone(), 0);
        let mut k = 0;
        while k < all.len() {
            for atom in &atoms {
                if atom.is_subset(&all[k]) {
                    continue;
                }
                let j = self.join(&all[k], atom);
                if !seen.contains_key(&j.bits) {
                    seen.insert(j.bits.clone(), all.len());
                    all.push(j);
                    if all.len() > cap {
                        return None;
                    }
                }
            }
            k += 1;
        }
        all.sort_by(|a, b| {
            b.order()
                .cmp(&a.order())
                .then_with(|| a.bits.as_slice().cmp(b.bits.as_slice()))
        });
        Some(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::GroupRecipe;

    fn table(id: &str) -> SmallGroup {
        SmallGroup::new(&id.parse::<GroupRecipe>().unwrap().build().unwrap()).unwrap()
    }

    #[test]
    fn normal_subgroup_counts() {
        // D_8: 1, Z, two Klein fours, C_4, D_8
        assert_eq!(table("dihedral:4").normal_subgroups(100).unwrap().len(), 6);
        // Q_8: 1, Z, three C_4, Q_8
        assert_eq!(table("extraspecial:2:-").normal_subgroups(100).unwrap().len(), 6);
        // S_4: 1, V_4, A_4, S_4
        assert_eq!(table("symmetric:4").normal_subgroups(100).unwrap().len(), 4);
        // C_2^3: every one of the 16 subspaces
        assert_eq!(
            table("elementary_abelian:2:3")
                .normal_subgroups(100)
                .unwrap()
                .len(),
            16
        );
        assert!(table("elementary_abelian:2:3").normal_subgroups(10).is_none());
    }

    #[test]
    fn arithmetic_matches_permutations() {
        let t = table("dihedral:4");
        let whole = t.whole();
        assert_eq!(whole.order(), 8);
        let z = t.commutator_with_whole(&whole);
        assert_eq!(z.order(), 2);
        assert_eq!(t.power(&whole, 2), z);
        assert_eq!(t.iterated_commutator_with_whole(&whole, 2).order(), 1);
        assert_eq!(t.iterated_commutator_with_whole(&whole, 0), whole);
        let back = t.from_perm_group(&t.to_perm_group(&z)).unwrap();
        assert_eq!(back, z);
    }
}
