//! Checkers for the statements about p-length, potent filtrations and the
//! cores of p-solvable groups. Each returns a [`Verdict`]: whether the
//! hypothesis held on the instance and, if so, whether the conclusion did.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{commutator, iterated_commutator, join_all, power_subgroup, QuotientGroup};
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, Unipotency};
use crate::group::{p_part, require_prime, Limits, PermGroup};
use crate::perm::Permutation;
use crate::pf::{
    exhaustive_order_cap, verify_potent_filtration, EkrContext, Filtration, NormalLattice, SearchOutcome,
};
use crate::series::{
    exponent, exponent_modulo, o_p, o_pprime, o_pprime_p, sylow, upper_p_series, SeriesReport,
};
use crate::verdict::{describe_subgroup, order_value, Verdict};

fn pow_checked(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::Overflow("prime power"))
}

fn require_solvable(g: &PermGroup, p: u64, limits: &Limits) -> Result<SeriesReport> {
    let series = upper_p_series(g, p, limits)?;
    if series.is_p_solvable != Some(true) {
        return Err(Error::NotPSolvable { p });
    }
    Ok(series)
}

/// `(r, s)` pairs with `γ_{ℓ(p-1)}(P) ≤ γ_r(P)^{p^s}` and `ℓ(p-1) < r + s(p-1)`,
/// in order of ascending `s`, then `r`.
fn main_hypothesis_hits(ctx: &mut EkrContext, ell: u32, limits: &Limits) -> Result<Vec<(usize, u32)>> {
    let p = ctx.prime;
    let step = (p - 1) as usize;
    let top = ell as usize * step;
    let target = ctx.gamma(top);
    let mut hits = Vec::new();
    for s in 0..=ctx.exponent_log {
        // r past the class gives the trivial subgroup; top + 1 is the
        // least such r that qualifies with s = 0
        for r in 1..=(ctx.class + 1).max(top + 1) {
            if top >= r + s as usize * step {
                continue;
            }
            let q = pow_checked(p, s)?;
            let rhs = power_subgroup(&ctx.gamma(r), q, limits)?;
            if target.is_subgroup_of(&rhs) {
                hits.push((r, s));
            }
        }
    }
    Ok(hits)
}

/// `γ_{ℓ(p-1)}(P) ≤ E_{ℓ(p-1)+1,1}(P)`.
pub fn theorem6_hypothesis(ctx: &mut EkrContext, ell: u32, limits: &Limits) -> Result<bool> {
    let top = ell as usize * (ctx.prime as usize - 1);
    let e = ctx.ekr(top + 1, 1, limits)?;
    Ok(ctx.gamma(top).is_subgroup_of(&e.group))
}

fn require_ell(ell: u32) -> Result<()> {
    if ell == 0 {
        Err(Error::PreconditionViolated("ℓ must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Scans for `(r, s)` witnessing the main hypothesis on a p-group, and checks
/// that any hit implies the weaker hypothesis `γ_{ℓ(p-1)} ≤ E_{ℓ(p-1)+1,1}`.
pub fn check_main_hypothesis(p_group: &PermGroup, p: u64, ell: u32, limits: &Limits) -> Result<Verdict> {
    require_ell(ell)?;
    let mut ctx = EkrContext::new(p_group, p, limits)?;
    let hits = main_hypothesis_hits(&mut ctx, ell, limits)?;
    let top = ell as usize * (p as usize - 1);
    let special = ctx
        .gamma(top)
        .is_subgroup_of(&power_subgroup(p_group, pow_checked(p, ell)?, limits)?);
    let mut v = Verdict::new("main_hypothesis")
        .hypothesis(!hits.is_empty())
        .param("p", p)
        .param("ell", ell)
        .param("class", ctx.class as u64)
        .param("exponent_log", ctx.exponent_log)
        .param(
            "hits",
            json!(hits
                .iter()
                .map(|&(r, s)| json!({"r": r, "s": s}))
                .collect::<Vec<_>>()),
        )
        .param("special_case", special);
    if let Some(&(r, s)) = hits.first() {
        v.set_param("r", r as u64);
        v.set_param("s", s);
    } else {
        v.note(format!(
            "no (r, s) with r ≤ {} and s ≤ {} qualifies",
            (ctx.class + 1).max(top + 1),
            ctx.exponent_log
        ));
    }
    if special && hits.is_empty() {
        v.note("special case holds without a scanned hit");
    }
    let implied = theorem6_hypothesis(&mut ctx, ell, limits)?;
    v.set_param("theorem6_hypothesis", implied);
    v.conclude(implied && (!special || !hits.is_empty()));
    Ok(v)
}

/// Which hypothesis selects `ℓ` in [`verify_chain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainHypothesis {
    /// `γ_{ℓ(p-1)}(P) ≤ γ_r(P)^{p^s}` for some `ℓ(p-1) < r + s(p-1)`.
    Main,
    /// `γ_{ℓ(p-1)}(P) ≤ E_{ℓ(p-1)+1,1}(P)`.
    Theorem6,
}

impl ChainHypothesis {
    fn holds(self, ctx: &mut EkrContext, ell: u32, limits: &Limits) -> Result<bool> {
        match self {
            ChainHypothesis::Main => Ok(!main_hypothesis_hits(ctx, ell, limits)?.is_empty()),
            ChainHypothesis::Theorem6 => theorem6_hypothesis(ctx, ell, limits),
        }
    }
}

/// Least `ℓ ≥ 1` satisfying the hypothesis. One exists: once `ℓ(p-1)`
/// exceeds the class, `γ_{ℓ(p-1)} = 1`.
pub fn minimal_ell(ctx: &mut EkrContext, which: ChainHypothesis, limits: &Limits) -> Result<u32> {
    // the hypothesis holds as soon as ℓ(p-1) exceeds the class
    let last = ctx.class as u32 + 1;
    for ell in 1..=last {
        if which.holds(ctx, ell, limits)? {
            return Ok(ell);
        }
    }
    Err(Error::InternalMismatch(format!(
        "hypothesis fails at ℓ = {last}, past the class"
    )))
}

/// The mechanical links from the bound on the exponent of `P/E^{p²}` to the
/// exponent of `P O_{p',p}/O_{p',p}`, with `E = E_{(ℓ-1)(p-1),1}(P)`:
/// (i) `E^{p²} ≤ O_{p',p}(G)`; (ii) `P^{p^{ℓ+1}} ≤ E^{p²}` and the exponent of
/// `P/E^{p²}` divides `p^{ℓ+1}`; (iii) the exponent of the image of `P` in
/// `G/O_{p',p}(G)` divides that of `P/E^{p²}` and hence `p^{ℓ+1}`.
///
/// With `ell = None` the least `ℓ` satisfying the hypothesis is used.
pub fn verify_chain(
    g: &PermGroup,
    p: u64,
    ell: Option<u32>,
    which: ChainHypothesis,
    limits: &Limits,
) -> Result<Verdict> {
    require_prime(p)?;
    let series = require_solvable(g, p, limits)?;
    let sylow_p = sylow(g, p, limits)?;
    let mut ctx = EkrContext::new(&sylow_p, p, limits)?;
    let ell = match ell {
        Some(l) => {
            require_ell(l)?;
            l
        }
        None => minimal_ell(&mut ctx, which, limits)?,
    };
    let statement = match which {
        ChainHypothesis::Main => "main",
        ChainHypothesis::Theorem6 => "thm6",
    };
    let holds = which.holds(&mut ctx, ell, limits)?;
    let p_length = series.p_length.unwrap_or(0);
    let mut v = Verdict::new(statement)
        .hypothesis(holds)
        .param("p", p)
        .param("ell", ell)
        .param("p_length", p_length as u64)
        .param("sylow_order", order_value(sylow_p.order()))
        .param("sylow_exponent_log", ctx.exponent_log);
    if !holds {
        return Ok(v);
    }
    let step = p as usize - 1;
    let e = ctx.ekr((ell as usize - 1) * step, 1, limits)?;
    let e2 = power_subgroup(&e.group, p * p, limits)?;
    let core = o_pprime_p(g, p, limits)?;
    let bound = pow_checked(p, ell + 1)? as u128;

    let link1 = e2.is_subgroup_of(&core);
    let p_pow = power_subgroup(&sylow_p, bound as u64, limits)?;
    let exp_e2 = exponent_modulo(&sylow_p, &e2, limits)?;
    let link2 = p_pow.is_subgroup_of(&e2) && bound.is_multiple_of(exp_e2);
    let exp_core = exponent_modulo(&sylow_p, &core, limits)?;
    let link3 = exp_e2 % exp_core == 0 && bound.is_multiple_of(exp_core);

    v.set_param("e_order", order_value(e.group.order()));
    v.set_param("e_p2_order", order_value(e2.order()));
    v.set_param("core_order", order_value(core.order()));
    v.set_param("exponent_mod_e_p2", order_value(exp_e2));
    v.set_param("exponent_mod_core", order_value(exp_core));
    v.set_param("bound", order_value(bound));
    v.set_param("link_i", link1);
    v.set_param("link_ii", link2);
    v.set_param("link_iii", link3);
    if !link1 {
        v.witness_subgroup("E^{p^2}", &e2);
        v.witness_subgroup("O_{p',p}(G)", &core);
    }
    if !link2 {
        v.witness_subgroup("P^{p^{l+1}}", &p_pow);
    }
    v.conclude(link1 && link2 && link3);
    Ok(v)
}

pub fn verify_main(g: &PermGroup, p: u64, ell: Option<u32>, limits: &Limits) -> Result<Verdict> {
    verify_chain(g, p, ell, ChainHypothesis::Main, limits)
}

pub fn verify_theorem6(g: &PermGroup, p: u64, ell: Option<u32>, limits: &Limits) -> Result<Verdict> {
    verify_chain(g, p, ell, ChainHypothesis::Theorem6, limits)
}

/// Whether `f` is a valid filtration of the given type inside a Sylow
/// p-subgroup of `g`. Notes the reason when not.
fn filtration_in_sylow(
    g: &PermGroup,
    f: &Filtration,
    ell: u32,
    v: &mut Verdict,
    limits: &Limits,
) -> Result<bool> {
    let p = f.prime;
    if f.type_ell != ell {
        v.note(format!("filtration has type {}, expected {ell}", f.type_ell));
        return Ok(false);
    }
    if !f.ambient.is_subgroup_of(g) || f.ambient.order() != p_part(g.order(), p) {
        v.note("filtration ambient group is not a Sylow subgroup");
        return Ok(false);
    }
    let pv = verify_potent_filtration(f, limits)?;
    if let Some(fail) = pv.first_failure {
        v.note(format!(
            "filtration invalid: condition {} at term {}",
            fail.condition, fail.term
        ));
        return Ok(false);
    }
    Ok(true)
}

fn first_term(f: &Filtration) -> PermGroup {
    f.terms
        .first()
        .cloned()
        .unwrap_or_else(|| PermGroup::trivial(f.ambient.degree()))
}

/// A subgroup PF-embedded of type `p-2` in a Sylow p-subgroup lies in
/// `O_{p',p}(G)`. Needs `p ≥ 3`.
pub fn verify_prop3(g: &PermGroup, f: &Filtration, limits: &Limits) -> Result<Verdict> {
    let p = f.prime;
    require_prime(p)?;
    if p < 3 {
        return Err(Error::PreconditionViolated(
            "type p-2 filtrations need p ≥ 3".into(),
        ));
    }
    require_solvable(g, p, limits)?;
    let n = first_term(f);
    let mut v = Verdict::new("prop3")
        .param("p", p)
        .param("n_order", order_value(n.order()));
    let valid = filtration_in_sylow(g, f, p as u32 - 2, &mut v, limits)?;
    v.hypothesis_holds = valid;
    if !valid {
        return Ok(v);
    }
    let core = o_pprime_p(g, p, limits)?;
    v.set_param("core_order", order_value(core.order()));
    let ok = n.is_subgroup_of(&core);
    if !ok {
        v.witness_subgroup("N", &n);
        v.witness_subgroup("O_{p',p}(G)", &core);
    }
    v.conclude(ok);
    Ok(v)
}

/// A subgroup `N` PF-embedded of type `p-1` satisfies `N^p ≤ O_{p',p}(G)` for
/// `p ≥ 5`, `N^{p²} ≤ O_{p',p}(G)` for `p = 3` and `N ≤ O_{p',p}(G)` for `p = 2`.
pub fn verify_prop4(g: &PermGroup, f: &Filtration, limits: &Limits) -> Result<Verdict> {
    let p = f.prime;
    require_prime(p)?;
    require_solvable(g, p, limits)?;
    let n = first_term(f);
    let (case, q) = match p {
        2 => ("c", 1),
        3 => ("b", 9),
        _ => ("a", p),
    };
    let mut v = Verdict::new("prop4")
        .param("p", p)
        .param("case", case)
        .param("n_order", order_value(n.order()));
    let valid = filtration_in_sylow(g, f, p as u32 - 1, &mut v, limits)?;
    v.hypothesis_holds = valid;
    if !valid {
        return Ok(v);
    }
    let core = o_pprime_p(g, p, limits)?;
    let target = power_subgroup(&n, q, limits)?;
    v.set_param("core_order", order_value(core.order()));
    v.set_param("power_order", order_value(target.order()));
    let ok = target.is_subgroup_of(&core);
    if !ok {
        v.witness_subgroup("N power", &target);
        v.witness_subgroup("O_{p',p}(G)", &core);
    }
    v.conclude(ok);
    Ok(v)
}

/// With `O_{p'}(G) = 1` and `N ⊴ G`: if `[O_p(G),_l N] = 1` then `N ≤ O_p(G)`.
pub fn verify_lemma8(g: &PermGroup, p: u64, n: &PermGroup, l: u32, limits: &Limits) -> Result<Verdict> {
    require_prime(p)?;
    require_solvable(g, p, limits)?;
    if !o_pprime(g, p, limits)?.is_trivial() {
        return Err(Error::PreconditionViolated("O_{p'}(G) is not trivial".into()));
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let op = o_p(g, p, limits)?;
    let c = iterated_commutator(&op, n, l as u64)?;
    let mut v = Verdict::new("lemma8")
        .hypothesis(c.is_trivial())
        .param("p", p)
        .param("l", l)
        .param("n_order", order_value(n.order()))
        .param("op_order", order_value(op.order()));
    if !c.is_trivial() {
        v.witness_subgroup("[O_p(G),_l N]", &c);
        return Ok(v);
    }
    let ok = n.is_subgroup_of(&op);
    if !ok {
        v.witness_subgroup("N", n);
    }
    v.conclude(ok);
    Ok(v)
}

/// `[V, M^{p^{r+l}}] ≤ [V,M]^{p^{r+l}} · ∏_{i=1}^{r+l} [V,_{p^i} M]^{p^{r+l-i}}`
/// for normal subgroups `V`, `M` of a p-group.
pub fn check_o24_inclusion(
    parent: &PermGroup,
    v_sub: &PermGroup,
    m_sub: &PermGroup,
    p: u64,
    r: u32,
    l: u32,
    limits: &Limits,
) -> Result<Verdict> {
    require_prime(p)?;
    let t = r + l;
    let normal = v_sub.is_normal_in(parent) && m_sub.is_normal_in(parent);
    let mut v = Verdict::new("o24")
        .hypothesis(parent.is_p_group(p) && normal)
        .param("p", p)
        .param("r", r)
        .param("l", l)
        .param("v_order", order_value(v_sub.order()))
        .param("m_order", order_value(m_sub.order()));
    if !v.hypothesis_holds {
        v.note("needs V and M normal in a p-group");
        return Ok(v);
    }
    let q = pow_checked(p, t)?;
    let lhs = commutator(v_sub, &power_subgroup(m_sub, q, limits)?)?;
    let mut factors = vec![power_subgroup(&commutator(v_sub, m_sub)?, q, limits)?];
    for i in 1..=t {
        let reps = pow_checked(p, i)?;
        let c = iterated_commutator(v_sub, m_sub, reps)?;
        factors.push(power_subgroup(&c, pow_checked(p, t - i)?, limits)?);
    }
    let rhs = join_all(parent.degree(), &factors)?;
    v.set_param("lhs_order", order_value(lhs.order()));
    v.set_param("rhs_order", order_value(rhs.order()));
    let ok = lhs.is_subgroup_of(&rhs);
    if !ok {
        v.witness_subgroup("lhs", &lhs);
        v.witness_subgroup("rhs", &rhs);
    }
    v.conclude(ok);
    Ok(v)
}

/// Conjugation action of a group on an elementary abelian p-subgroup `V`,
/// written in a fixed basis.
pub struct LinearAction {
    pub prime: u64,
    basis: Vec<Permutation>,
    coords: HashMap<Permutation, Vec<u64>>,
}

impl LinearAction {
    /// Basis: the generators of `V` that enlarge the span, in order.
    pub fn new(v_sub: &PermGroup, p: u64, limits: &Limits) -> Result<Self> {
        require_prime(p)?;
        if !v_sub.is_abelian() || v_sub.generators().iter().any(|g| !g.pow(p as i128).is_identity()) {
            return Err(Error::KernelNotElementaryAbelian);
        }
        if v_sub.order() > limits.enum_cap {
            return Err(Error::CapExceeded {
                what: "vector space",
                size: v_sub.order(),
                cap: limits.enum_cap,
            });
        }
        let degree = v_sub.degree();
        let mut basis: Vec<Permutation> = Vec::new();
        let mut coords: HashMap<Permutation, Vec<u64>> = HashMap::new();
        coords.insert(Permutation::identity(degree), Vec::new());
        for g in v_sub.generators() {
            if coords.contains_key(g) {
                continue;
            }
            // span(basis + g) = { x g^c }
            let old: Vec<(Permutation, Vec<u64>)> = coords.drain().collect();
            let mut gc = Permutation::identity(degree);
            for c in 0..p {
                for (x, xv) in &old {
                    let mut v = xv.clone();
                    v.push(c);
                    coords.insert(x.then(&gc), v);
                }
                gc = gc.then(g);
            }
            basis.push(g.clone());
        }
        Ok(LinearAction {
            prime: p,
            basis,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    /// Coordinates of `x`, or `None` when `x ∉ V`.
    pub fn coordinates(&self, x: &Permutation) -> Option<Vec<u64>> {
        let v = self.coords.get(x)?;
        let mut out = v.clone();
        out.resize(self.dim(), 0);
        Some(out)
    }

    /// `T(g)`: row `i` holds the coordinates of `b_i^g`.
    pub fn matrix(&self, g: &Permutation) -> Result<FpMatrix> {
        let mut rows = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let image = self
                .coordinates(&b.conjugate_by(g))
                .ok_or_else(|| Error::PreconditionViolated(format!("{g} does not normalize V")))?;
            rows.push(image.into_iter().map(|x| x as i64).collect());
        }
        FpMatrix::from_rows(self.prime, &rows)
    }

    /// Checks `b(T(g) - 1) = [b, g]` on every basis vector.
    pub fn check_identity(&self, g: &Permutation) -> Result<bool> {
        let t = self.matrix(g)?;
        let id = FpMatrix::identity(self.prime, self.dim())?;
        let diff = t.sub(&id);
        for (i, b) in self.basis.iter().enumerate() {
            let mut unit = vec![0; self.dim()];
            unit[i] = 1;
            let lhs = diff.apply(&unit);
            match self.coordinates(&Permutation::commutator(b, g)) {
                Some(rhs) if rhs == lhs => {}
                _ => return Ok(false),
            }
            debug_assert_eq!(self.coordinates(b), Some(unit));
        }
        Ok(true)
    }
}

/// `T(g)` for the action of the base group on an elementary abelian kernel.
pub fn action_matrix(q: &QuotientGroup, g: &Permutation, p: u64, limits: &Limits) -> Result<FpMatrix> {
    LinearAction::new(q.kernel(), p, limits)?.matrix(g)
}

/// On `V = O_p(G)` elementary abelian: the defining identity on every basis
/// vector and generator, and `T(gh) = T(g)T(h)` on `pairs` random pairs.
pub fn verify_linear_action(
    g: &PermGroup,
    p: u64,
    seed: u64,
    pairs: usize,
    limits: &Limits,
) -> Result<Verdict> {
    require_prime(p)?;
    let op = o_p(g, p, limits)?;
    let action = match LinearAction::new(&op, p, limits) {
        Ok(a) => Some(a),
        Err(Error::KernelNotElementaryAbelian) => None,
        Err(e) => return Err(e),
    };
    let mut v = Verdict::new("linear_action")
        .param("p", p)
        .param("v_order", order_value(op.order()))
        .param("pairs", pairs as u64);
    let Some(action) = action.filter(|a| a.dim() > 0) else {
        v.note("O_p(G) is trivial or not elementary abelian");
        return Ok(v);
    };
    v.hypothesis_holds = true;
    v.set_param("dim", action.dim() as u64);
    let mut identity_ok = true;
    let mut unipotency = Vec::new();
    for x in g.generators() {
        if !action.check_identity(x)? {
            identity_ok = false;
            v.witness_element("identity fails for", x);
        }
        let t = action.matrix(x)?;
        unipotency.push(match t.unipotency_degree() {
            Unipotency::Degree(m) => json!(m),
            Unipotency::NotUnipotent => json!(null),
        });
    }
    v.set_param("generator_unipotency", unipotency);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chain = g.chain();
    let mut hom_ok = true;
    for _ in 0..pairs {
        let a = chain.random_element(&mut rng);
        let b = chain.random_element(&mut rng);
        if action.matrix(&a.then(&b))? != action.matrix(&a)?.mul(&action.matrix(&b)?) {
            hom_ok = false;
            v.witness("homomorphism fails for", format!("{a} and {b}"));
            break;
        }
    }
    v.set_param("identity_holds", identity_ok);
    v.set_param("homomorphism_holds", hom_ok);
    v.conclude(identity_ok && hom_ok);
    Ok(v)
}

/// `p_length(G) ≤ e` where `p^e` is the exponent of a Sylow p-subgroup.
/// Report-only for `p = 2`.
pub fn check_hall_higman(g: &PermGroup, p: u64, limits: &Limits) -> Result<Verdict> {
    require_prime(p)?;
    let series = upper_p_series(g, p, limits)?;
    let solvable = series.is_p_solvable == Some(true);
    let mut v = Verdict::new("hall_higman").hypothesis(solvable).param("p", p);
    if p == 2 {
        v = v.report_only();
    }
    if !solvable {
        return Ok(v);
    }
    let exp = exponent(&sylow(g, p, limits)?, limits)?;
    let mut e = 0u32;
    let mut x = 1u128;
    while x < exp {
        x *= p as u128;
        e += 1;
    }
    let len = series.p_length.unwrap_or(0);
    v.set_param("p_length", len as u64);
    v.set_param("sylow_exponent_log", e);
    v.conclude(len as u32 <= e);
    Ok(v)
}

/// One PF-embedded subgroup found during the scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Question7Entry {
    pub subgroup: String,
    pub order: u128,
    pub filtration: Vec<u128>,
    /// `N ≤ O_{p',p}(G)`.
    pub in_core: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Question7Group {
    pub group_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core_order: Option<u128>,
    #[serde(default)]
    pub entries: Vec<Question7Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Question7Report {
    pub prime: u64,
    pub note: String,
    pub groups: Vec<Question7Group>,
}

impl Question7Report {
    /// Instances where a PF-embedded `N` is not contained in the core.
    pub fn candidates(&self) -> impl Iterator<Item = (&str, &Question7Entry)> {
        self.groups.iter().flat_map(|g| {
            g.entries
                .iter()
                .filter(|e| !e.in_core)
                .map(move |e| (g.group_id.as_str(), e))
        })
    }
}

/// For each p-solvable group, every normal subgroup of a small Sylow
/// p-subgroup that is PF-embedded of type `p-1`, and whether it lies in
/// `O_{p',p}(G)`. Never asserts.
pub fn question7_scan(groups: &[(String, PermGroup)], p: u64, limits: &Limits) -> Result<Question7Report> {
    require_prime(p)?;
    let mut out = Vec::new();
    for (id, g) in groups {
        let mut entry = Question7Group {
            group_id: id.clone(),
            skipped: None,
            core_order: None,
            entries: Vec::new(),
        };
        if upper_p_series(g, p, limits)?.is_p_solvable != Some(true) {
            entry.skipped = Some(format!("not {p}-solvable"));
            out.push(entry);
            continue;
        }
        let sylow_p = sylow(g, p, limits)?;
        if sylow_p.order() > exhaustive_order_cap(p) {
            entry.skipped = Some("Sylow subgroup too large for exhaustive search".into());
            out.push(entry);
            continue;
        }
        let Some(lattice) = NormalLattice::new(&sylow_p, p, limits)? else {
            entry.skipped = Some("normal subgroup lattice too large".into());
            out.push(entry);
            continue;
        };
        let core = o_pprime_p(g, p, limits)?;
        entry.core_order = Some(core.order());
        for n in lattice.subgroups() {
            if let SearchOutcome::Found(f) = lattice.search(&n, p as u32 - 1, limits.search_budget) {
                entry.entries.push(Question7Entry {
                    subgroup: describe_subgroup(&n),
                    order: n.order(),
                    filtration: f.orders(),
                    in_core: n.is_subgroup_of(&core),
                });
            }
        }
        out.push(entry);
    }
    Ok(Question7Report {
        prime: p,
        note: "containment is tested against O_{p',p}(G); the question as posed names O_{p,p'}(G)".into(),
        groups: out,
    })
}
