//! Brute-force oracles over explicit element sets. Nothing here touches the
//! stabilizer chain, the coset machinery or the Cayley-table engine.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use psolv::catalog::default_catalog;
use psolv::group::PermGroup;
use psolv::perm::Permutation;

pub type Set = HashSet<Permutation>;

pub fn identity(n: usize) -> Permutation {
    Permutation::identity(n)
}

pub fn mul(a: &Permutation, b: &Permutation) -> Permutation {
    a.compose(b).unwrap()
}

/// x^k by repeated multiplication.
pub fn power(x: &Permutation, k: u64) -> Permutation {
    let mut acc = identity(x.degree());
    for _ in 0..k {
        acc = mul(&acc, x);
    }
    acc
}

pub fn comm(a: &Permutation, b: &Permutation) -> Permutation {
    mul(&mul(&a.inverse(), &b.inverse()), &mul(a, b))
}

pub fn conj(a: &Permutation, g: &Permutation) -> Permutation {
    mul(&mul(&g.inverse(), a), g)
}

/// Subgroup generated by `seeds`, by closing under right multiplication.
pub fn closure<'a>(n: usize, seeds: impl IntoIterator<Item = &'a Permutation>) -> Set {
    let gens: Vec<Permutation> = seeds.into_iter().cloned().collect();
    let mut set = Set::new();
    let mut frontier = vec![identity(n)];
    set.insert(identity(n));
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = mul(&x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn elements(g: &PermGroup) -> Set {
    closure(g.degree(), g.generators())
}

pub fn key(s: &Set) -> BTreeSet<Permutation> {
    s.iter().cloned().collect()
}

pub fn same(g: &PermGroup, s: &Set) -> bool {
    elements(g) == *s
}

pub fn commutator_set(n: usize, a: &Set, b: &Set) -> Set {
    let cs: Set = a.iter().flat_map(|x| b.iter().map(move |y| comm(x, y))).collect();
    closure(n, &cs)
}

pub fn power_set(n: usize, a: &Set, q: u64) -> Set {
    let ps: Set = a.iter().map(|x| power(x, q)).collect();
    closure(n, &ps)
}

pub fn normal_closure_set(n: usize, g: &Set, s: &Set) -> Set {
    let cs: Set = s.iter().flat_map(|x| g.iter().map(move |y| conj(x, y))).collect();
    closure(n, &cs)
}

pub fn normalizer_set(g: &Set, h: &Set) -> Set {
    g.iter()
        .filter(|y| h.iter().all(|x| h.contains(&conj(x, y))))
        .cloned()
        .collect()
}

pub fn centralizer_set(g: &Set, s: &Set) -> Set {
    g.iter()
        .filter(|y| s.iter().all(|x| mul(x, y) == mul(y, x)))
        .cloned()
        .collect()
}

pub fn is_normal_set(g: &Set, h: &Set) -> bool {
    h.iter().all(|x| g.iter().all(|y| h.contains(&conj(x, y))))
}

pub fn element_order(x: &Permutation) -> u64 {
    let id = identity(x.degree());
    let mut y = x.clone();
    let mut k = 1;
    while y != id {
        y = mul(&y, x);
        k += 1;
    }
    k
}

pub fn exponent_set(s: &Set) -> u64 {
    s.iter().map(element_order).fold(1, |a, b| a / gcd(a, b) * b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn conjugacy_classes(g: &Set) -> Vec<Set> {
    let mut seen = Set::new();
    let mut out = Vec::new();
    let mut all: Vec<&Permutation> = g.iter().collect();
    all.sort();
    for x in all {
        if seen.contains(x) {
            continue;
        }
        let cls: Set = g.iter().map(|y| conj(x, y)).collect();
        seen.extend(cls.iter().cloned());
        out.push(cls);
    }
    out
}

/// Every normal subgroup: each is a union of classes closed under products,
/// so joins of class closures reach all of them.
pub fn normal_subgroups(n: usize, g: &Set) -> Vec<Set> {
    let classes = conjugacy_classes(g);
    let trivial: Set = [identity(n)].into_iter().collect();
    let mut seen: HashSet<BTreeSet<Permutation>> = HashSet::new();
    seen.insert(key(&trivial));
    let mut out = vec![trivial];
    let mut k = 0;
    while k < out.len() {
        for c in &classes {
            let rep = c.iter().next().unwrap();
            if out[k].contains(rep) {
                continue;
            }
            let seeds: Vec<Permutation> = out[k].iter().chain(c.iter()).cloned().collect();
            let m = closure(n, &seeds);
            if seen.insert(key(&m)) {
                out.push(m);
            }
        }
        k += 1;
    }
    out
}

/// Largest member of `normals` containing `base` with `|N : base|` accepted by
/// `index_ok`. Such members are closed under products, so the largest is
/// the unique maximal one.
pub fn largest_over(normals: &[Set], base: &Set, index_ok: impl Fn(usize) -> bool) -> Set {
    normals
        .iter()
        .filter(|m| base.is_subset(m) && index_ok(m.len() / base.len()))
        .max_by_key(|m| m.len())
        .cloned()
        .expect("base itself qualifies")
}

pub struct UpperOracle {
    pub orders: Vec<usize>,
    pub p_length: usize,
    pub solvable: bool,
    pub o_pprime: Set,
    pub o_pprime_p: Set,
}

/// Upper p-series from the normal-subgroup list, using the correspondence
/// between normal subgroups of `G/K` and normal subgroups of `G` over `K`.
pub fn upper_series(n: usize, g: &Set, p: usize) -> UpperOracle {
    let normals = normal_subgroups(n, g);
    let coprime = |i: usize| !i.is_multiple_of(p);
    let ppower = |i: usize| is_power_of(i, p);
    let mut cur: Set = [identity(n)].into_iter().collect();
    let mut orders = vec![1];
    let mut terms = Vec::new();
    let mut p_length = 0;
    let mut stalled = 0;
    let mut step = 0;
    while cur.len() < g.len() && stalled < 2 {
        let next = if step % 2 == 0 {
            largest_over(&normals, &cur, coprime)
        } else {
            largest_over(&normals, &cur, ppower)
        };
        if next.len() > cur.len() {
            if step % 2 == 1 {
                p_length += 1;
            }
            stalled = 0;
        } else {
            stalled += 1;
        }
        orders.push(next.len());
        terms.push(next.clone());
        cur = next;
        step += 1;
    }
    let trivial: Set = [identity(n)].into_iter().collect();
    let o_pprime = largest_over(&normals, &trivial, coprime);
    let o_pprime_p = largest_over(&normals, &o_pprime, ppower);
    UpperOracle {
        orders,
        p_length,
        solvable: cur.len() == g.len(),
        o_pprime,
        o_pprime_p,
    }
}

/// Largest normal p-subgroup.
pub fn o_p_set(n: usize, g: &Set, p: usize) -> Set {
    let normals = normal_subgroups(n, g);
    let trivial: Set = [identity(n)].into_iter().collect();
    largest_over(&normals, &trivial, |i| is_power_of(i, p))
}

pub fn lower_central(n: usize, p: &Set) -> Vec<Set> {
    let mut out = vec![p.clone()];
    loop {
        let next = commutator_set(n, out.last().unwrap(), p);
        if next.len() == out.last().unwrap().len() {
            return out;
        }
        out.push(next);
    }
}

pub fn catalog(max_order: u128) -> Vec<(String, PermGroup)> {
    default_catalog()
        .into_iter()
        .map(|r| (r.id(), r.build().unwrap()))
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

pub fn build(id: &str) -> PermGroup {
    id.parse::<psolv::catalog::GroupRecipe>()
        .unwrap()
        .build()
        .unwrap()
}

pub fn group_of(n: usize, s: &Set) -> PermGroup {
    PermGroup::new(n, s.iter().cloned().collect()).unwrap()
}
