//! Potent filtrations of p-groups and the `E_{k,r}(P)` family.
//!
//! A chain `N_1 ≥ N_2 ≥ .. ≥ N_k = 1` of normal subgroups of a p-group `P` is
//! a potent filtration of type `ℓ` when `[N_i, P] ≤ N_{i+1}` and
//! `[N_i, P, .., P] ≤ N_{i+1}^p` with `P` repeated `ℓ` times. A subgroup is
//! PF-embedded of type `ℓ` when some potent filtration starts at it.
//!
//! Type 0 is read literally: the second inclusion becomes `N_i ≤ N_{i+1}^p`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{commutator, iterated_commutator, join_all, power_subgroup};
use crate::error::{Error, Result};
use crate::group::{require_prime, Limits, PermGroup};
use crate::perm::Permutation;
use crate::series::{exponent, lower_central_series, SeriesReport};
use crate::small::{SmallGroup, SmallSubgroup};
use crate::verdict::{describe_subgroup, Verdict};

/// Longest filtration the candidate builders will produce.
pub const FILTRATION_LENGTH_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct Filtration {
    pub ambient: PermGroup,
    pub prime: u64,
    pub type_ell: u32,
    pub terms: Vec<PermGroup>,
}

impl Filtration {
    pub fn new(ambient: PermGroup, prime: u64, type_ell: u32, terms: Vec<PermGroup>) -> Self {
        Filtration {
            ambient,
            prime,
            type_ell,
            terms,
        }
    }

    pub fn orders(&self) -> Vec<u128> {
        self.terms.iter().map(|t| t.order()).collect()
    }
}

/// Which defining condition failed first. Condition 0 means a term is not a
/// normal subgroup of the ambient group; 1–4 are the chain, end, commutator
/// and power conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfFailure {
    pub condition: u8,
    /// 1-based index of the offending term.
    pub term: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfVerdict {
    pub valid: bool,
    pub first_failure: Option<PfFailure>,
}

impl PfVerdict {
    fn ok() -> Self {
        PfVerdict {
            valid: true,
            first_failure: None,
        }
    }

    fn fail(condition: u8, term: usize, witness: Option<&Permutation>) -> Self {
        PfVerdict {
            valid: false,
            first_failure: Some(PfFailure {
                condition,
                term,
                witness: witness.map(|w| w.to_string()),
            }),
        }
    }
}

fn require_p_group(g: &PermGroup, p: u64) -> Result<()> {
    require_prime(p)?;
    if g.is_p_group(p) {
        Ok(())
    } else {
        Err(Error::NotAPGroup { p, order: g.order() })
    }
}

fn first_outside<'a>(h: &'a PermGroup, k: &PermGroup) -> Option<&'a Permutation> {
    h.generators().iter().find(|g| !k.has(g))
}

/// `[N,_ℓ P]`, with `ℓ = 0` giving `N`.
fn iterated_with(n: &PermGroup, p: &PermGroup, ell: u32) -> Result<PermGroup> {
    if ell == 0 {
        Ok(n.clone())
    } else {
        iterated_commutator(n, p, ell as u64)
    }
}

/// Checks the four defining conditions in order and reports the first failure.
pub fn verify_potent_filtration(f: &Filtration, limits: &Limits) -> Result<PfVerdict> {
    let p = &f.ambient;
    require_p_group(p, f.prime)?;
    for (i, n) in f.terms.iter().enumerate() {
        if let Some(w) = first_outside(n, p) {
            return Ok(PfVerdict::fail(0, i + 1, Some(w)));
        }
        if !n.is_normalized_by(p) {
            return Ok(PfVerdict::fail(0, i + 1, None));
        }
    }
    for i in 1..f.terms.len() {
        if let Some(w) = first_outside(&f.terms[i], &f.terms[i - 1]) {
            return Ok(PfVerdict::fail(1, i + 1, Some(w)));
        }
    }
    if let Some(last) = f.terms.last() {
        if let Some(w) = last.generators().iter().find(|g| !g.is_identity()) {
            return Ok(PfVerdict::fail(2, f.terms.len(), Some(w)));
        }
    }
    for i in 0..f.terms.len().saturating_sub(1) {
        let c = commutator(&f.terms[i], p)?;
        if let Some(w) = first_outside(&c, &f.terms[i + 1]) {
            return Ok(PfVerdict::fail(3, i + 1, Some(w)));
        }
    }
    for i in 0..f.terms.len().saturating_sub(1) {
        let c = iterated_with(&f.terms[i], p, f.type_ell)?;
        let pw = power_subgroup(&f.terms[i + 1], f.prime, limits)?;
        if let Some(w) = first_outside(&c, &pw) {
            return Ok(PfVerdict::fail(4, i + 1, Some(w)));
        }
    }
    Ok(PfVerdict::ok())
}

/// On a valid filtration: `[N_i^p, P] = [N_i, P]^p` term by term, and both
/// `([N_i, P])_i` and `(N_i^p)_i` are potent filtrations of the same type.
pub fn check_prop1(f: &Filtration, limits: &Limits) -> Result<Verdict> {
    let pg = &f.ambient;
    let base = verify_potent_filtration(f, limits)?;
    let mut v = Verdict::new("prop1")
        .hypothesis(base.valid)
        .param("p", f.prime)
        .param("ell", f.type_ell)
        .param("length", f.terms.len() as u64);
    if !base.valid {
        v.note("input filtration is not potent; nothing to check");
        return Ok(v);
    }
    let mut identity_ok = true;
    let mut commutators = Vec::with_capacity(f.terms.len());
    let mut powers = Vec::with_capacity(f.terms.len());
    for (i, n) in f.terms.iter().enumerate() {
        let np = power_subgroup(n, f.prime, limits)?;
        let c = commutator(n, pg)?;
        let lhs = commutator(&np, pg)?;
        let rhs = power_subgroup(&c, f.prime, limits)?;
        if !lhs.same_as(&rhs) {
            identity_ok = false;
            v.witness_subgroup(format!("[N_{}^p, P]", i + 1), &lhs);
            v.witness_subgroup(format!("[N_{}, P]^p", i + 1), &rhs);
        }
        commutators.push(c);
        powers.push(np);
    }
    let comm_f = Filtration::new(pg.clone(), f.prime, f.type_ell, commutators);
    let pow_f = Filtration::new(pg.clone(), f.prime, f.type_ell, powers);
    let comm_v = verify_potent_filtration(&comm_f, limits)?;
    let pow_v = verify_potent_filtration(&pow_f, limits)?;
    v.set_param("power_commutator_identity", identity_ok);
    v.set_param("commutator_filtration_valid", comm_v.valid);
    v.set_param("power_filtration_valid", pow_v.valid);
    for (name, pv) in [("commutator", &comm_v), ("power", &pow_v)] {
        if let Some(fail) = &pv.first_failure {
            v.witness(
                format!("{name} filtration failure"),
                format!("condition {} at term {}", fail.condition, fail.term),
            );
        }
    }
    v.conclude(identity_ok && comm_v.valid && pow_v.valid);
    Ok(v)
}

/// Cached lower central series and exponent of a p-group, for evaluating
/// many `E_{k,r}` at once.
pub struct EkrContext {
    pub group: PermGroup,
    pub prime: u64,
    lcs: SeriesReport,
    /// Nilpotency class.
    pub class: usize,
    /// `p^e` is the exponent.
    pub exponent_log: u32,
    cache: HashMap<(usize, u32), PermGroup>,
}

/// One factor `γ_i(P)^{p^j}` that entered a product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EkrTerm {
    pub i: usize,
    pub j: u32,
    pub order: u128,
}

#[derive(Clone, Debug)]
pub struct Ekr {
    pub k: usize,
    pub r: usize,
    pub group: PermGroup,
    /// The factors used: for each `i` only the least qualifying `j`, since
    /// larger `j` give smaller subgroups.
    pub terms: Vec<EkrTerm>,
}

impl EkrContext {
    pub fn new(p_group: &PermGroup, p: u64, limits: &Limits) -> Result<Self> {
        require_p_group(p_group, p)?;
        let lcs = lower_central_series(p_group);
        let class = lcs.terms.len() - 1;
        let exp = exponent(p_group, limits)?;
        let mut e = 0;
        let mut x = 1u128;
        while x < exp {
            x *= p as u128;
            e += 1;
        }
        Ok(EkrContext {
            group: p_group.clone(),
            prime: p,
            lcs,
            class,
            exponent_log: e,
            cache: HashMap::new(),
        })
    }

    /// `γ_i(P)`, trivial beyond the class.
    pub fn gamma(&self, i: usize) -> PermGroup {
        crate::series::gamma_from(&self.lcs, i)
    }

    fn gamma_power(&mut self, i: usize, j: u32, limits: &Limits) -> Result<PermGroup> {
        if let Some(h) = self.cache.get(&(i, j)) {
            return Ok(h.clone());
        }
        let q = (self.prime).checked_pow(j).ok_or(Error::Overflow("p^j"))?;
        let h = power_subgroup(&self.gamma(i), q, limits)?;
        self.cache.insert((i, j), h.clone());
        Ok(h)
    }

    /// `E_{k,r}(P)`: the product of `γ_i(P)^{p^j}` over `i + j(p-1) ≥ k`, `i ≥ r`.
    /// Indices run over `r ≤ i ≤ class` and `0 ≤ j ≤ e`; everything outside is
    /// trivial. `k = 0` behaves as `k = 1`.
    pub fn ekr(&mut self, k: usize, r: usize, limits: &Limits) -> Result<Ekr> {
        if r == 0 {
            return Err(Error::PreconditionViolated("E_{k,r} needs r ≥ 1".into()));
        }
        let step = self.prime as usize - 1;
        let mut factors = Vec::new();
        let mut terms = Vec::new();
        for i in r..=self.class {
            let j = if k > i { (k - i).div_ceil(step) as u32 } else { 0 };
            if j > self.exponent_log {
                continue;
            }
            let h = self.gamma_power(i, j, limits)?;
            terms.push(EkrTerm {
                i,
                j,
                order: h.order(),
            });
            factors.push(h);
        }
        let group = join_all(self.group.degree(), &factors)?;
        Ok(Ekr { k, r, group, terms })
    }
}

pub fn compute_ekr(p_group: &PermGroup, p: u64, k: usize, r: usize, limits: &Limits) -> Result<Ekr> {
    EkrContext::new(p_group, p, limits)?.ekr(k, r, limits)
}

/// The three chains tried as witnesses that `E_{k,r}(P)` is PF-embedded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    /// `N_i = E_{k+i-1, r+i-1}`.
    Diagonal,
    /// `N_i = E_{k+i-1, r}`.
    Shifted,
    /// `N_1 = E_{k,r}`, `N_{i+1} = [N_i, P]`.
    Commutator,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub kind: CandidateKind,
    pub filtration: Filtration,
    pub verdict: PfVerdict,
}

/// Builds the three type-(p-1) candidate filtrations starting at `E_{k,r}(P)`
/// and verifies each.
pub fn ekr_pf_candidates(
    p_group: &PermGroup,
    p: u64,
    k: usize,
    r: usize,
    limits: &Limits,
) -> Result<Vec<Candidate>> {
    let mut ctx = EkrContext::new(p_group, p, limits)?;
    ekr_pf_candidates_in(&mut ctx, k, r, limits)
}

pub fn ekr_pf_candidates_in(
    ctx: &mut EkrContext,
    k: usize,
    r: usize,
    limits: &Limits,
) -> Result<Vec<Candidate>> {
    let ell = ctx.prime as u32 - 1;
    let mut out = Vec::new();
    for kind in [
        CandidateKind::Diagonal,
        CandidateKind::Shifted,
        CandidateKind::Commutator,
    ] {
        // repeated consecutive terms are dropped; the chain stays potent
        let mut terms = vec![ctx.ekr(k, r, limits)?.group];
        let mut i = 0;
        while !terms.last().unwrap().is_trivial() {
            i += 1;
            if i >= FILTRATION_LENGTH_CAP {
                return Err(Error::LengthCapExceeded {
                    cap: FILTRATION_LENGTH_CAP,
                });
            }
            let last = terms.last().unwrap();
            let next = match kind {
                CandidateKind::Diagonal => ctx.ekr(k + i, r + i, limits)?.group,
                CandidateKind::Shifted => ctx.ekr(k + i, r, limits)?.group,
                CandidateKind::Commutator => commutator(last, &ctx.group)?,
            };
            if !next.same_as(last) {
                terms.push(next);
            }
        }
        let filtration = Filtration::new(ctx.group.clone(), ctx.prime, ell, terms);
        let verdict = verify_potent_filtration(&filtration, limits)?;
        out.push(Candidate {
            kind,
            filtration,
            verdict,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Filtration),
    NotPfEmbedded,
    /// Budget spent or group outside the exhaustive regime.
    Exhausted,
}

/// Largest p-group on which normal subgroups are enumerated exhaustively.
pub fn exhaustive_order_cap(p: u64) -> u128 {
    match p {
        2 => 512,
        3 => 729,
        5 => 3125,
        _ => (p as u128).pow(3),
    }
}

/// Normal-subgroup lattice of a tiny p-group, with the data the chain search
/// needs cached per node.
pub struct NormalLattice {
    pub group: PermGroup,
    pub prime: u64,
    table: SmallGroup,
    nodes: Vec<SmallSubgroup>,
    index: HashMap<fixedbitset::FixedBitSet, usize>,
    commutator: Vec<usize>,
    power: Vec<usize>,
}

impl NormalLattice {
    /// `None` when `P` is outside the exhaustive regime or has more normal
    /// subgroups than the budget allows.
    pub fn new(p_group: &PermGroup, p: u64, limits: &Limits) -> Result<Option<Self>> {
        require_p_group(p_group, p)?;
        if p_group.order() > exhaustive_order_cap(p) {
            return Ok(None);
        }
        let table = SmallGroup::new(p_group)?;
        let cap = limits.search_budget.min(50_000) as usize;
        let Some(nodes) = table.normal_subgroups(cap) else {
            return Ok(None);
        };
        let index: HashMap<_, _> = nodes
            .iter()
            .enumerate()
            .map(|(i, h)| (h.bits.clone(), i))
            .collect();
        let commutator = nodes
            .iter()
            .map(|h| index[&table.commutator_with_whole(h).bits])
            .collect();
        let power = nodes.iter().map(|h| index[&table.power(h, p).bits]).collect();
        Ok(Some(NormalLattice {
            group: p_group.clone(),
            prime: p,
            table,
            nodes,
            index,
            commutator,
            power,
        }))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Normal subgroups, largest first.
    pub fn subgroups(&self) -> Vec<PermGroup> {
        self.nodes.iter().map(|h| self.table.to_perm_group(h)).collect()
    }

    fn locate(&self, n: &PermGroup) -> Option<usize> {
        let bits = self.table.from_perm_group(n).ok()?.bits;
        self.index.get(&bits).copied()
    }

    fn iterated(&self, node: usize, ell: u32) -> usize {
        let mut cur = node;
        for _ in 0..ell {
            let next = self.commutator[cur];
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    /// Depth-first search for a potent filtration of type `ell` from `n` down to 1.
    pub fn search(&self, n: &PermGroup, ell: u32, budget: u64) -> SearchOutcome {
        let Some(start) = self.locate(n) else {
            // not a normal subgroup of P
            return SearchOutcome::NotPfEmbedded;
        };
        let mut dead = vec![false; self.nodes.len()];
        let mut spent = 0u64;
        let mut path = vec![start];
        match self.descend(start, ell, &mut dead, &mut spent, budget, &mut path) {
            Some(true) => {
                let terms = path
                    .iter()
                    .map(|&i| self.table.to_perm_group(&self.nodes[i]))
                    .collect();
                SearchOutcome::Found(Filtration::new(self.group.clone(), self.prime, ell, terms))
            }
            Some(false) => SearchOutcome::NotPfEmbedded,
            None => SearchOutcome::Exhausted,
        }
    }

    /// `Some(true)` when `path` was extended to the trivial subgroup,
    /// `Some(false)` when no extension exists, `None` when out of budget.
    fn descend(
        &self,
        node: usize,
        ell: u32,
        dead: &mut [bool],
        spent: &mut u64,
        budget: u64,
        path: &mut Vec<usize>,
    ) -> Option<bool> {
        if self.nodes[node].order() == 1 {
            return Some(true);
        }
        if dead[node] {
            return Some(false);
        }
        let lower = &self.nodes[self.commutator[node]];
        let upper_comm = &self.nodes[self.iterated(node, ell)];
        let here = &self.nodes[node];
        // smallest candidates first, so short chains are found first
        for m in (0..self.nodes.len()).rev() {
            *spent += 1;
            if *spent > budget {
                return None;
            }
            let cand = &self.nodes[m];
            if m == node || dead[m] || !cand.is_subset(here) || !lower.is_subset(cand) {
                continue;
            }
            if !upper_comm.is_subset(&self.nodes[self.power[m]]) {
                continue;
            }
            path.push(m);
            match self.descend(m, ell, dead, spent, budget, path)? {
                true => return Some(true),
                false => {
                    path.pop();
                }
            }
        }
        dead[node] = true;
        Some(false)
    }
}

/// Decides whether `n` is PF-embedded of type `ell` in `P` by exhaustive
/// search over chains of normal subgroups.
pub fn pf_embedded_search(
    p_group: &PermGroup,
    p: u64,
    n: &PermGroup,
    ell: u32,
    limits: &Limits,
) -> Result<SearchOutcome> {
    if n.is_trivial() {
        return Ok(SearchOutcome::Found(Filtration::new(
            p_group.clone(),
            p,
            ell,
            vec![n.clone()],
        )));
    }
    match NormalLattice::new(p_group, p, limits)? {
        Some(lattice) => Ok(lattice.search(n, ell, limits.search_budget)),
        None => Ok(SearchOutcome::Exhausted),
    }
}

/// `order N <gens>` for each term.
pub fn describe_filtration(f: &Filtration) -> String {
    f.terms
        .iter()
        .map(describe_subgroup)
        .collect::<Vec<_>>()
        .join(" > ")
}
