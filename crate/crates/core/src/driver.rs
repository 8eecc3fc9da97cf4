//! Batch runner: applies every checker to each catalog group for one prime.

use rayon::prelude::*;
use serde_json::json;

use crate::catalog::GroupRecipe;
use crate::error::Result;
use crate::group::{Limits, PermGroup};
use crate::pf::{
    check_prop1, ekr_pf_candidates_in, exhaustive_order_cap, EkrContext, Filtration, NormalLattice,
    SearchOutcome,
};
use crate::report::{Report, ReportDocument};
use crate::series::{o_p, o_pprime, sylow, upper_p_series};
use crate::small::{SmallGroup, TABLE_CAP};
use crate::theorems::{
    check_hall_higman, check_main_hypothesis, check_o24_inclusion, question7_scan, theorem6_hypothesis,
    verify_lemma8, verify_linear_action, verify_main, verify_prop3, verify_prop4, verify_theorem6,
};
use crate::verdict::{describe_subgroup, order_value, Verdict};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub prime: u64,
    pub seed: u64,
    pub limits: Limits,
    /// Largest `ℓ` tried by the hypothesis scans.
    pub max_ell: u32,
    /// Random pairs for the homomorphism check of the linear action.
    pub action_pairs: usize,
    /// Cap on `(V, M, r, l)` instances per group for the inclusion check.
    pub o24_per_group: usize,
}

impl RunOptions {
    pub fn new(prime: u64, seed: u64) -> Self {
        RunOptions {
            prime,
            seed,
            limits: Limits::default(),
            max_ell: 3,
            action_pairs: 1000,
            o24_per_group: 6,
        }
    }
}

/// FNV-1a, so per-group seeds do not depend on scheduling.
fn group_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325 ^ seed, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn error_verdict(statement: &str, err: &crate::error::Error) -> Verdict {
    let mut v = Verdict::new(statement).report_only();
    v.note(format!("skipped: {err}"));
    v
}

/// Runs `f`, turning an error into a report-only note.
fn attempt(out: &mut Vec<Verdict>, statement: &str, f: impl FnOnce() -> Result<Verdict>) {
    out.push(f().unwrap_or_else(|e| error_verdict(statement, &e)));
}

/// Every statement applicable to one group.
pub fn check_group(id: &str, g: &PermGroup, opts: &RunOptions) -> Vec<Verdict> {
    let p = opts.prime;
    let lim = &opts.limits;
    let seed = group_seed(opts.seed, id);
    let mut out = Vec::new();

    let series = match upper_p_series(g, p, lim) {
        Ok(s) => s,
        Err(e) => return vec![error_verdict("p_length", &e)],
    };
    let solvable = series.is_p_solvable == Some(true);
    let mut summary = Verdict::new("p_length")
        .hypothesis(true)
        .report_only()
        .param("p", p)
        .param("order", order_value(g.order()))
        .param("is_p_solvable", solvable)
        .param(
            "series",
            json!(series
                .orders()
                .into_iter()
                .map(|(l, o)| json!([l, order_value(o)]))
                .collect::<Vec<_>>()),
        );
    if solvable {
        summary.set_param("p_length", series.p_length.unwrap_or(0) as u64);
    }
    out.push(summary);
    attempt(&mut out, "hall_higman", || check_hall_higman(g, p, lim));
    attempt(&mut out, "linear_action", || {
        verify_linear_action(g, p, seed, opts.action_pairs, lim)
    });
    if solvable {
        attempt(&mut out, "main", || verify_main(g, p, None, lim));
        attempt(&mut out, "thm6", || verify_theorem6(g, p, None, lim));
        lemma8_instances(g, opts, &mut out);
    }

    let Ok(sylow_p) = sylow(g, p, lim) else {
        return out;
    };
    if sylow_p.is_trivial() {
        return out;
    }
    for ell in 1..=opts.max_ell {
        attempt(&mut out, "main_hypothesis", || {
            check_main_hypothesis(&sylow_p, p, ell, lim)
        });
    }
    if let Ok(mut ctx) = EkrContext::new(&sylow_p, p, lim) {
        for ell in 1..=opts.max_ell {
            let k = (ell as usize - 1) * (p as usize - 1);
            match ekr_pf_candidates_in(&mut ctx, k, 1, lim) {
                Ok(cands) => {
                    let mut v = Verdict::new("ekr_candidates")
                        .hypothesis(true)
                        .report_only()
                        .param("p", p)
                        .param("k", k as u64)
                        .param("r", 1)
                        .param("ell", ell);
                    if let Ok(h) = theorem6_hypothesis(&mut ctx, ell, lim) {
                        v.set_param("theorem6_hypothesis", h);
                    }
                    for c in &cands {
                        v.set_param(
                            &format!("{:?}", c.kind).to_lowercase(),
                            json!({"valid": c.verdict.valid, "orders": c.filtration.orders()}),
                        );
                    }
                    out.push(v);
                    for c in cands.into_iter().filter(|c| c.verdict.valid) {
                        attempt(&mut out, "prop1", || check_prop1(&c.filtration, lim));
                    }
                }
                Err(e) => out.push(error_verdict("ekr_candidates", &e)),
            }
        }
    }
    if sylow_p.order() <= exhaustive_order_cap(p) {
        if let Ok(Some(lattice)) = NormalLattice::new(&sylow_p, p, lim) {
            filtration_instances(g, solvable, &lattice, opts, &mut out);
            o24_instances(&sylow_p, &lattice, opts, &mut out);
        }
    }
    if solvable {
        match question7_scan(&[(id.to_string(), g.clone())], p, lim) {
            Ok(report) => {
                let mut v = Verdict::new("question7")
                    .hypothesis(true)
                    .report_only()
                    .param("p", p);
                let group = &report.groups[0];
                if let Some(reason) = &group.skipped {
                    v.note(format!("skipped: {reason}"));
                }
                v.set_param("pf_embedded", group.entries.len() as u64);
                let outside: Vec<_> = group.entries.iter().filter(|e| !e.in_core).collect();
                v.set_param("outside_core", outside.len() as u64);
                for e in outside {
                    v.witness("outside O_{p',p}(G)", e.subgroup.clone());
                }
                v.note(report.note);
                out.push(v);
            }
            Err(e) => out.push(error_verdict("question7", &e)),
        }
    }
    out
}

/// Normal subgroups of `g` when the Cayley table fits; otherwise a few
/// characteristic ones.
fn normal_subgroups_of(g: &PermGroup, p: u64, lim: &Limits) -> Vec<PermGroup> {
    if g.order() <= TABLE_CAP {
        if let Ok(t) = SmallGroup::new(g) {
            if let Some(list) = t.normal_subgroups(512) {
                return list.iter().map(|h| t.to_perm_group(h)).collect();
            }
        }
    }
    let mut out = vec![PermGroup::trivial(g.degree()), g.clone()];
    if let Ok(op) = o_p(g, p, lim) {
        out.push(op);
    }
    out
}

fn lemma8_instances(g: &PermGroup, opts: &RunOptions, out: &mut Vec<Verdict>) {
    let p = opts.prime;
    let lim = &opts.limits;
    match o_pprime(g, p, lim) {
        Ok(h) if h.is_trivial() => {}
        _ => return,
    }
    for n in normal_subgroups_of(g, p, lim) {
        for l in 1..=3 {
            attempt(out, "lemma8", || verify_lemma8(g, p, &n, l, lim));
        }
    }
}

/// `(G, N, F)` triples from exhaustive search in the Sylow subgroup: type
/// `p-1` feeds the fourth proposition, type `p-2` (for `p ≥ 3`) the third.
/// Every filtration found is also run through the power-commutator check.
fn filtration_instances(
    g: &PermGroup,
    solvable: bool,
    lattice: &NormalLattice,
    opts: &RunOptions,
    out: &mut Vec<Verdict>,
) {
    let p = opts.prime;
    let lim = &opts.limits;
    let mut types = vec![p as u32 - 1];
    if p >= 3 {
        types.push(p as u32 - 2);
    }
    for n in lattice.subgroups() {
        for &ell in &types {
            let f: Filtration = match lattice.search(&n, ell, lim.search_budget) {
                SearchOutcome::Found(f) => f,
                SearchOutcome::NotPfEmbedded => continue,
                SearchOutcome::Exhausted => {
                    let mut v = Verdict::new("pf_search").report_only().param("ell", ell);
                    v.witness_subgroup("N", &n);
                    v.note("search budget exhausted");
                    out.push(v);
                    continue;
                }
            };
            if !solvable {
                // the propositions assume p-solvability
            } else if ell == p as u32 - 1 {
                attempt(out, "prop4", || verify_prop4(g, &f, lim));
            } else {
                attempt(out, "prop3", || verify_prop3(g, &f, lim));
            }
            attempt(out, "prop1", || check_prop1(&f, lim));
        }
    }
}

/// Pairs of distinct nontrivial normal subgroups of the Sylow subgroup,
/// largest first, each with `(r, l) ∈ {(1, 1), (2, 1)}`.
fn o24_instances(sylow_p: &PermGroup, lattice: &NormalLattice, opts: &RunOptions, out: &mut Vec<Verdict>) {
    let subs = lattice.subgroups();
    let nontrivial: Vec<usize> = (0..subs.len()).filter(|&i| !subs[i].is_trivial()).collect();
    let mut pairs: Vec<(usize, usize)> = nontrivial
        .iter()
        .flat_map(|&i| nontrivial.iter().map(move |&j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    if pairs.is_empty() && !nontrivial.is_empty() {
        pairs.push((nontrivial[0], nontrivial[0]));
    }
    let lim = &opts.limits;
    let instances = pairs
        .into_iter()
        .flat_map(|pair| [(pair, 1, 1), (pair, 2, 1)])
        .take(opts.o24_per_group);
    for ((i, j), r, l) in instances {
        attempt(out, "o24", || {
            let mut v = check_o24_inclusion(sylow_p, &subs[i], &subs[j], opts.prime, r, l, lim)?;
            v.witness("V", describe_subgroup(&subs[i]));
            v.witness("M", describe_subgroup(&subs[j]));
            Ok(v)
        });
    }
}

/// Runs every recipe; the output order follows the recipe order and does not
/// depend on thread scheduling.
pub fn run_catalog(recipes: &[GroupRecipe], opts: &RunOptions) -> ReportDocument {
    let per_group: Vec<Vec<Report>> = recipes
        .par_iter()
        .map(|recipe| {
            let id = recipe.id();
            match recipe.build() {
                Ok(g) => check_group(&id, &g, opts)
                    .into_iter()
                    .map(|v| Report::new(id.clone(), v))
                    .collect(),
                Err(e) => vec![Report::new(id, error_verdict("build", &e))],
            }
        })
        .collect();
    ReportDocument::new(per_group.into_iter().flatten().collect())
}
