//! Subgroup series and characteristic cores: lower central and derived
//! series, exponents, Frattini subgroups of p-groups, Sylow subgroups,
//! `O_p`, `O_{p'}` and the upper p-series with its p-length.

use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{commutator, intersect, join, normal_closure_of, power_subgroup, quotient};
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::{p_part, require_prime, Limits, PermGroup};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
    UpperP,
}

#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub label: String,
    pub group: PermGroup,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub prime: Option<u64>,
    pub terms: Vec<SeriesTerm>,
    pub p_length: Option<usize>,
    pub is_p_solvable: Option<bool>,
}

impl SeriesReport {
    /// `(label, order)` pairs.
    pub fn orders(&self) -> Vec<(String, u128)> {
        self.terms
            .iter()
            .map(|t| (t.label.clone(), t.group.order()))
            .collect()
    }

    pub fn last(&self) -> &PermGroup {
        &self.terms.last().expect("series has at least one term").group
    }
}

/// Descending series `X_1 = G`, `X_{i+1} = step(X_i)`; stops at the trivial
/// group or after the first repeated term (which is kept).
fn descending_series<F>(g: &PermGroup, kind: SeriesKind, prefix: &str, step: F) -> Result<SeriesReport>
where
    F: Fn(&PermGroup) -> Result<PermGroup>,
{
    let mut terms = vec![SeriesTerm {
        label: format!("{prefix}1"),
        group: g.clone(),
    }];
    loop {
        let cur = &terms.last().unwrap().group;
        if cur.is_trivial() {
            break;
        }
        let next = step(cur)?;
        let repeated = next.same_as(cur);
        terms.push(SeriesTerm {
            label: format!("{prefix}{}", terms.len() + 1),
            group: next,
        });
        if repeated {
            break;
        }
    }
    Ok(SeriesReport {
        kind,
        prime: None,
        terms,
        p_length: None,
        is_p_solvable: None,
    })
}

/// `γ_1 = P`, `γ_{i+1} = [γ_i, P]`.
pub fn lower_central_series(p: &PermGroup) -> SeriesReport {
    descending_series(p, SeriesKind::LowerCentral, "gamma_", |x| commutator(x, p)).expect("same domain")
}

pub fn derived_series(g: &PermGroup) -> SeriesReport {
    descending_series(g, SeriesKind::Derived, "G^", |x| commutator(x, x)).expect("same domain")
}

/// `γ_i(P)` for `i ≥ 1`; trivial or stable beyond the computed series.
pub fn gamma(p: &PermGroup, i: usize) -> PermGroup {
    let s = lower_central_series(p);
    gamma_from(&s, i)
}

pub(crate) fn gamma_from(series: &SeriesReport, i: usize) -> PermGroup {
    assert!(i >= 1, "lower central series is indexed from 1");
    let idx = (i - 1).min(series.terms.len() - 1);
    series.terms[idx].group.clone()
}

/// Nilpotency class, or `None` when the lower central series stalls above 1.
pub fn nilpotency_class(p: &PermGroup) -> Option<usize> {
    let s = lower_central_series(p);
    if s.last().is_trivial() {
        Some(s.terms.len() - 1)
    } else {
        None
    }
}

/// lcm of the element orders.
pub fn exponent(g: &PermGroup, limits: &Limits) -> Result<u128> {
    let mut e = 1u128;
    for x in g.enumerate(limits.enum_cap)? {
        e = e.lcm(&(x.order() as u128));
    }
    Ok(e)
}

/// Exponent of `HK/K`: lcm over `x ∈ H` of the least `m` with `x^m ∈ K`.
pub fn exponent_modulo(h: &PermGroup, k: &PermGroup, limits: &Limits) -> Result<u128> {
    h.check_same_domain(k)?;
    let mut e = 1u128;
    for x in h.enumerate(limits.enum_cap)? {
        let ord = x.order();
        let m = divisors(ord)
            .into_iter()
            .find(|&d| k.has(&x.pow(d as i128)))
            .expect("x^ord is the identity");
        e = e.lcm(&(m as u128));
    }
    Ok(e)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.extend(upper);
    out
}

fn require_p_group(g: &PermGroup, p: u64) -> Result<()> {
    if g.is_p_group(p) {
        Ok(())
    } else {
        Err(Error::NotAPGroup { p, order: g.order() })
    }
}

/// `Φ(P) = P^p [P, P]` for a p-group `P`.
pub fn frattini_p(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    require_p_group(g, p)?;
    join(&power_subgroup(g, p, limits)?, &commutator(g, g)?)
}

fn is_p_element(x: &Permutation, p: u64) -> bool {
    crate::group::is_power_of(x.order() as u128, p)
}

/// The p-part of `x`: its power of p-power order.
fn p_component(x: &Permutation, p: u64) -> Permutation {
    let ord = x.order() as u128;
    x.pow((ord / p_part(ord, p)) as i128)
}

const SYLOW_RESTARTS: u64 = 32;

/// A Sylow p-subgroup, grown from a p-element one normalizing p-element at a time.
pub fn sylow(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    let order = g.order();
    let target = p_part(order, p);
    if target == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    if target == order {
        return Ok(g.clone());
    }
    for attempt in 0..SYLOW_RESTARTS {
        let x = g.random_element(attempt);
        if !x.order().is_multiple_of(p) {
            continue;
        }
        if let Some(s) = grow_sylow(g, p_component(&x, p), p, target, limits)? {
            return Ok(s);
        }
    }
    for x in g.enumerate(limits.enum_cap)? {
        if x.order() % p == 0 {
            if let Some(s) = grow_sylow(g, p_component(&x, p), p, target, limits)? {
                return Ok(s);
            }
        }
    }
    Err(Error::InternalMismatch(format!(
        "no Sylow {p}-subgroup of order {target} found"
    )))
}

fn grow_sylow(
    g: &PermGroup,
    seed: Permutation,
    p: u64,
    target: u128,
    limits: &Limits,
) -> Result<Option<PermGroup>> {
    let mut chain = StabChain::new(g.degree());
    chain.extend(seed.clone());
    let mut gens = vec![seed];
    while chain.order() < target {
        let found = g.enumerate(limits.enum_cap)?.find(|y| {
            !chain.contains(y)
                && is_p_element(y, p)
                && gens.iter().all(|s| chain.contains(&s.conjugate_by(y)))
        });
        match found {
            Some(y) => {
                chain.extend(y.clone());
                gens.push(y);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(PermGroup::from_parts(g.degree(), gens, Some(chain))))
}

fn conjugate_subgroup(h: &PermGroup, g: &Permutation) -> PermGroup {
    let gens = h.generators().iter().map(|x| x.conjugate_by(g)).collect();
    PermGroup::from_parts(h.degree(), gens, None)
}

/// `O_p(G)` as the intersection of the conjugates of a Sylow p-subgroup.
pub fn o_p_via_core(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    let mut core = sylow(g, p, limits)?;
    loop {
        let mut changed = false;
        for s in g.generators() {
            let conj = conjugate_subgroup(&core, s);
            if !core.is_subgroup_of(&conj) {
                core = intersect(&core, &conj, limits)?;
                changed = true;
            }
        }
        if !changed {
            return Ok(core);
        }
    }
}

/// `O_p(G)` as the subgroup generated by p-elements with p-group normal closure.
pub fn o_p_via_elements(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    // every such element lies in each Sylow subgroup, so scanning one suffices
    let sylow = sylow(g, p, limits)?;
    let candidates: Vec<Permutation> = sylow.enumerate(limits.enum_cap)?.collect();
    Ok(core_by_scan(g, candidates, limits, |h| h.is_p_group(p)))
}

/// Generated by the candidate elements whose normal closure satisfies `ok`.
/// A failing element rules out its whole conjugacy class.
fn core_by_scan<F>(g: &PermGroup, candidates: Vec<Permutation>, limits: &Limits, ok: F) -> PermGroup
where
    F: Fn(&PermGroup) -> bool,
{
    let mut acc = PermGroup::trivial(g.degree());
    let mut failed: HashSet<Permutation> = HashSet::new();
    for x in candidates {
        if x.is_identity() || acc.has(&x) || failed.contains(&x) {
            continue;
        }
        let closure = normal_closure_of(g, std::slice::from_ref(&x));
        if ok(&closure) {
            acc = join(&acc, &closure).expect("same domain");
        } else {
            mark_class(g, &x, &mut failed, limits.enum_cap);
        }
    }
    acc
}

fn mark_class(g: &PermGroup, x: &Permutation, seen: &mut HashSet<Permutation>, cap: u128) {
    let mut stack = vec![x.clone()];
    seen.insert(x.clone());
    while let Some(y) = stack.pop() {
        for s in g.generators() {
            let z = y.conjugate_by(s);
            if seen.len() as u128 >= cap {
                return;
            }
            if seen.insert(z.clone()) {
                stack.push(z);
            }
        }
    }
}

/// `O_p(G)`, computed two independent ways; disagreement is an internal error.
pub fn o_p(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    if g.is_p_group(p) {
        return Ok(g.clone());
    }
    let a = o_p_via_core(g, p, limits)?;
    let b = o_p_via_elements(g, p, limits)?;
    if !a.same_as(&b) {
        return Err(Error::InternalMismatch(format!(
            "O_{p} via Sylow core has order {}, via elements {}",
            a.order(),
            b.order()
        )));
    }
    Ok(a)
}

/// `O_{p'}(G)`: generated by p'-elements whose normal closure is a p'-group.
pub fn o_pprime(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    if g.is_pprime_group(p) {
        return Ok(g.clone());
    }
    if g.is_p_group(p) {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let candidates: Vec<Permutation> = g
        .enumerate(limits.enum_cap)?
        .filter(|x| x.order() % p != 0)
        .collect();
    Ok(core_by_scan(g, candidates, limits, |h| h.is_pprime_group(p)))
}

fn upper_label(p: u64, steps: usize) -> String {
    if steps == 0 {
        return "1".to_string();
    }
    let symbols: Vec<String> = (0..steps)
        .map(|i| {
            if i % 2 == 0 {
                format!("{p}'")
            } else {
                format!("{p}")
            }
        })
        .collect();
    format!("O_{{{}}}", symbols.join(","))
}

/// `1 ≤ O_{p'} ≤ O_{p',p} ≤ O_{p',p,p'} ≤ ...`, each term the preimage of the
/// matching core of the quotient by the previous one.
pub fn upper_p_series(g: &PermGroup, p: u64, limits: &Limits) -> Result<SeriesReport> {
    require_prime(p)?;
    let mut current = PermGroup::trivial(g.degree());
    let mut terms = vec![SeriesTerm {
        label: upper_label(p, 0),
        group: current.clone(),
    }];
    let mut p_length = 0;
    let mut stalled = 0;
    let mut solvable = false;
    let target = g.order();
    while current.order() < target {
        let pprime_step = (terms.len() - 1) % 2 == 0;
        let q = quotient(g, &current, limits)?;
        let core = if pprime_step {
            o_pprime(q.image(), p, limits)?
        } else {
            o_p(q.image(), p, limits)?
        };
        let next = q.preimage(&core);
        let grew = next.order() > current.order();
        if grew && !pprime_step {
            p_length += 1;
        }
        terms.push(SeriesTerm {
            label: upper_label(p, terms.len()),
            group: next.clone(),
        });
        if grew {
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 2 {
                break;
            }
        }
        current = next;
    }
    if current.order() == target {
        solvable = true;
    }
    Ok(SeriesReport {
        kind: SeriesKind::UpperP,
        prime: Some(p),
        terms,
        p_length: Some(p_length),
        is_p_solvable: Some(solvable),
    })
}

pub fn p_length(g: &PermGroup, p: u64, limits: &Limits) -> Result<usize> {
    Ok(upper_p_series(g, p, limits)?.p_length.unwrap_or(0))
}

pub fn is_p_solvable(g: &PermGroup, p: u64, limits: &Limits) -> Result<bool> {
    Ok(upper_p_series(g, p, limits)?.is_p_solvable.unwrap_or(false))
}

/// `O_{p',p}(G)`: the preimage of `O_p(G/O_{p'}(G))`.
pub fn o_pprime_p(g: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    require_prime(p)?;
    let opp = o_pprime(g, p, limits)?;
    let q = quotient(g, &opp, limits)?;
    let core = o_p(q.image(), p, limits)?;
    Ok(q.preimage(&core))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|c| cyc(n, c)).collect()).unwrap()
    }

    fn s3() -> PermGroup {
        grp(3, &[&[&[0, 1]], &[&[0, 1, 2]]])
    }

    fn s4() -> PermGroup {
        grp(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]])
    }

    fn d8() -> PermGroup {
        grp(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]])
    }

    fn a5() -> PermGroup {
        grp(5, &[&[&[0, 1, 2]], &[&[0, 1, 2, 3, 4]]])
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn lower_central_examples() {
        let c4 = grp(4, &[&[&[0, 1, 2, 3]]]);
        assert_eq!(
            lower_central_series(&c4)
                .orders()
                .iter()
                .map(|t| t.1)
                .collect::<Vec<_>>(),
            vec![4, 1]
        );
        let d = lower_central_series(&d8());
        assert_eq!(d.orders().iter().map(|t| t.1).collect::<Vec<_>>(), vec![8, 2, 1]);
        let s = lower_central_series(&s3());
        assert_eq!(s.orders().iter().map(|t| t.1).collect::<Vec<_>>(), vec![6, 3, 3]);
        assert_eq!(nilpotency_class(&d8()), Some(2));
        assert_eq!(nilpotency_class(&s3()), None);
    }

    #[test]
    fn derived_series_of_s4() {
        let d = derived_series(&s4());
        assert_eq!(
            d.orders().iter().map(|t| t.1).collect::<Vec<_>>(),
            vec![24, 12, 4, 1]
        );
    }

    #[test]
    fn exponent_examples() {
        let e = grp(4, &[&[&[0, 1]], &[&[2, 3]]]);
        assert_eq!(exponent(&e, &lim()).unwrap(), 2);
        assert_eq!(exponent(&s3(), &lim()).unwrap(), 6);
        assert_eq!(exponent(&d8(), &lim()).unwrap(), 4);
        let v4 = grp(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
        assert_eq!(exponent_modulo(&s4(), &v4, &lim()).unwrap(), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }

    #[test]
    fn frattini_examples() {
        let e = grp(4, &[&[&[0, 1]], &[&[2, 3]]]);
        assert!(frattini_p(&e, 2, &lim()).unwrap().is_trivial());
        let c9 = grp(9, &[&[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]]);
        assert_eq!(frattini_p(&c9, 3, &lim()).unwrap().order(), 3);
        let f = frattini_p(&d8(), 2, &lim()).unwrap();
        assert_eq!(f.order(), 2);
        assert!(f.has(&cyc(4, &[&[0, 2], &[1, 3]])));
        assert!(matches!(
            frattini_p(&s3(), 2, &lim()),
            Err(Error::NotAPGroup { .. })
        ));
    }

    #[test]
    fn sylow_examples() {
        let p = sylow(&s4(), 2, &lim()).unwrap();
        assert_eq!(p.order(), 8);
        assert!(p.is_subgroup_of(&s4()));
        assert!(sylow(&d8(), 2, &lim()).unwrap().same_as(&d8()));
        let a3 = sylow(&s3(), 3, &lim()).unwrap();
        assert!(a3.same_as(&grp(3, &[&[&[0, 1, 2]]])));
        assert!(sylow(&s3(), 5, &lim()).unwrap().is_trivial());
        assert_eq!(sylow(&a5(), 2, &lim()).unwrap().order(), 4);
        assert_eq!(sylow(&s3(), 4, &lim()).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn cores() {
        let v4 = grp(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
        assert!(o_p(&s4(), 2, &lim()).unwrap().same_as(&v4));
        assert!(o_p(&d8(), 2, &lim()).unwrap().same_as(&d8()));
        assert!(o_p(&s3(), 2, &lim()).unwrap().is_trivial());
        let a3 = grp(3, &[&[&[0, 1, 2]]]);
        assert!(o_pprime(&s3(), 2, &lim()).unwrap().same_as(&a3));
        assert!(o_pprime(&d8(), 2, &lim()).unwrap().is_trivial());
        assert!(o_pprime(&s4(), 2, &lim()).unwrap().is_trivial());
        assert!(o_pprime_p(&s4(), 2, &lim()).unwrap().same_as(&v4));
    }

    #[test]
    fn upper_series_of_s4() {
        let s = upper_p_series(&s4(), 2, &lim()).unwrap();
        assert_eq!(s.p_length, Some(2));
        assert_eq!(s.is_p_solvable, Some(true));
        let orders: Vec<u128> = s.orders().iter().map(|t| t.1).collect();
        assert_eq!(orders, vec![1, 1, 4, 12, 24]);
        assert_eq!(s.terms[2].label, "O_{2',2}");
    }

    #[test]
    fn p_length_examples() {
        assert_eq!(p_length(&d8(), 2, &lim()).unwrap(), 1);
        let c15 = grp(15, &[&[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14]]]);
        assert_eq!(p_length(&c15, 2, &lim()).unwrap(), 0);
        assert!(is_p_solvable(&c15, 2, &lim()).unwrap());
        assert_eq!(p_length(&s3(), 3, &lim()).unwrap(), 1);
        assert!(!is_p_solvable(&a5(), 2, &lim()).unwrap());
        assert!(is_p_solvable(&a5(), 7, &lim()).unwrap());
    }
}
