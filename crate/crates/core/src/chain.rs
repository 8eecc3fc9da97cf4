//! Deterministic Schreier–Sims with explicit transversals.
//!
//! Generators are added one at a time with [`StabChain::extend`], so the same
//! structure doubles as an incremental subgroup builder: brute-force scans keep
//! a chain for the subgroup found so far and only extend it with elements that
//! do not already sift through.

use rand::Rng;

use crate::perm::{Permutation, Point};

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<Point>,
    /// Position of each point in `orbit`, or `ABSENT`.
    index: Vec<u32>,
    /// `transversal[k]` maps `base` to `orbit[k]`.
    transversal: Vec<Permutation>,
    inverse: Vec<Permutation>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut index = vec![ABSENT; degree];
        index[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as Point],
            index,
            transversal: vec![Permutation::identity(degree)],
            inverse: vec![Permutation::identity(degree)],
        }
    }

    pub fn base_point(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[Point] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }

    fn push_point(&mut self, point: usize, rep: Permutation) {
        self.index[point] = self.orbit.len() as u32;
        self.orbit.push(point as Point);
        self.inverse.push(rep.inverse());
        self.transversal.push(rep);
    }

    /// Schreier generator for orbit position `k` and generator `s`, or extends
    /// the orbit when `s` leads somewhere new.
    fn process(&mut self, k: usize, s: &Permutation, pending: &mut Vec<Permutation>) {
        let img = s.apply(self.orbit[k] as usize);
        let pos = self.index[img];
        let u = self.transversal[k].then(s);
        if pos == ABSENT {
            self.push_point(img, u);
        } else {
            let sg = u.then(&self.inverse[pos as usize]);
            if !sg.is_identity() {
                pending.push(sg);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators<'a, I>(degree: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.extend(g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    /// Adds `g` to the group. Returns `false` when `g` was already a member.
    pub fn extend(&mut self, g: Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        self.extend_at(0, g)
    }

    fn extend_at(&mut self, depth: usize, g: Permutation) -> bool {
        let (residue, _) = self.sift_from(depth, g);
        if residue.is_identity() {
            return false;
        }
        if depth == self.levels.len() {
            let b = residue
                .first_moved_point()
                .expect("nontrivial residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        let mut pending = Vec::new();
        {
            let level = &mut self.levels[depth];
            let old_len = level.orbit.len();
            level.gens.push(residue.clone());
            for k in 0..old_len {
                level.process(k, &residue, &mut pending);
            }
            let mut k = old_len;
            while k < level.orbit.len() {
                for s_idx in 0..level.gens.len() {
                    let s = level.gens[s_idx].clone();
                    level.process(k, &s, &mut pending);
                }
                k += 1;
            }
        }
        for sg in pending {
            self.extend_at(depth + 1, sg);
        }
        true
    }

    /// Strips `g` through the levels starting at `depth`; returns the residue
    /// and the level where sifting stopped.
    fn sift_from(&self, depth: usize, g: Permutation) -> (Permutation, usize) {
        let mut h = g;
        for (j, level) in self.levels.iter().enumerate().skip(depth) {
            let img = h.apply(level.base);
            let pos = level.index[img];
            if pos == ABSENT {
                return (h, j);
            }
            if pos != 0 {
                h = h.then(&level.inverse[pos as usize]);
            }
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.sift_from(0, g.clone()).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).is_identity()
    }

    /// Union of the level generators.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Uniform element: a random transversal element from every level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.random_range(0..level.transversal.len());
            g = g.then(&level.transversal[k]);
        }
        g
    }

    pub fn elements(&self) -> Elements<'_> {
        Elements::new(self)
    }
}

/// Every group element exactly once, in a fixed order determined by the chain.
///
/// Element `(i_1, .., i_k)` is `u_k[i_k] * .. * u_1[i_1]`; the top level index
/// varies fastest.
pub struct Elements<'a> {
    chain: &'a StabChain,
    counters: Vec<usize>,
    /// `prefix[j]` is the product of the chosen transversal elements of levels
    /// deeper than `j`.
    prefix: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let k = chain.levels.len();
        let mut prefix = vec![Permutation::identity(chain.degree); k + 1];
        for j in (0..k).rev() {
            prefix[j] = prefix[j + 1].then(&chain.levels[j].transversal[0]);
        }
        Elements {
            chain,
            counters: vec![0; k],
            prefix,
            done: false,
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.chain.levels;
        if levels.is_empty() {
            self.done = true;
            return Some(Permutation::identity(self.chain.degree));
        }
        let out = self.prefix[1].then(&levels[0].transversal[self.counters[0]]);
        // advance the odometer
        let mut j = 0;
        loop {
            if j == levels.len() {
                self.done = true;
                break;
            }
            self.counters[j] += 1;
            if self.counters[j] < levels[j].transversal.len() {
                break;
            }
            self.counters[j] = 0;
            j += 1;
        }
        if !self.done && j > 0 {
            for t in (1..=j).rev() {
                self.prefix[t] = self.prefix[t + 1].then(&levels[t].transversal[self.counters[t]]);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        let s4 = StabChain::from_generators(4, &[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(s4.order(), 24);
        assert_eq!(StabChain::new(5).order(), 1);
        let c5 = StabChain::from_generators(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        assert_eq!(c5.order(), 5);
    }

    #[test]
    fn elements_are_distinct_members() {
        let gens = [cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])];
        let chain = StabChain::from_generators(6, &gens);
        assert_eq!(chain.order(), 720);
        let all: HashSet<Permutation> = chain.elements().collect();
        assert_eq!(all.len(), 720);
        assert!(all.iter().all(|g| chain.contains(g)));
    }

    #[test]
    fn extend_reports_membership() {
        let mut chain = StabChain::new(3);
        assert!(chain.extend(cyc(3, &[&[0, 1, 2]])));
        assert!(!chain.extend(cyc(3, &[&[0, 2, 1]])));
        assert!(!chain.contains(&cyc(3, &[&[0, 1]])));
        assert!(chain.extend(cyc(3, &[&[0, 1]])));
        assert_eq!(chain.order(), 6);
    }
}
