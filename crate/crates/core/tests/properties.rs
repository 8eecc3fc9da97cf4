mod common;

use common::*;
use proptest::prelude::*;
use psolv::algebra::{commutator, join, normal_closure, power_subgroup, quotient};
use psolv::catalog::GroupRecipe;
use psolv::format::{emit_group, parse_group};
use psolv::group::{Limits, PermGroup};
use psolv::perm::Permutation;
use psolv::pf::{
    compute_ekr, exhaustive_order_cap, verify_potent_filtration, EkrContext, Filtration, NormalLattice,
    SearchOutcome,
};
use psolv::report::{emit_report, parse_report, OutputFormat, Report, ReportDocument};
use psolv::series::{gamma, nilpotency_class};
use psolv::theorems::check_main_hypothesis;
use psolv::verdict::Verdict;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=9).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn gens(n: usize, max: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(n), 1..=max)
}

fn group(n: usize, max: usize) -> impl Strategy<Value = PermGroup> {
    gens(n, max).prop_map(move |g| PermGroup::new(n, g).unwrap())
}

/// Catalog p-groups of order at most `p^6`.
fn small_p_groups() -> Vec<(String, PermGroup, u64)> {
    let mut out = Vec::new();
    for (id, g) in catalog(u128::MAX) {
        for p in [2u64, 3, 5] {
            if g.order() > 1 && g.is_p_group(p) && g.order() <= (p as u128).pow(6) {
                out.push((id.clone(), g.clone(), p));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn group_axioms((a, b, c) in triple()) {
        let id = identity(a.degree());
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &id), a.clone());
        prop_assert_eq!(mul(&id, &a), a.clone());
        prop_assert_eq!(mul(&a, &a.inverse()), id.clone());
        prop_assert_eq!(mul(&a.inverse(), &a), id);
        // right action: apply a, then b
        for x in 0..a.degree() {
            prop_assert_eq!(mul(&a, &b).apply(x), b.apply(a.apply(x)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_matches_closure(g in group(6, 3), probes in prop::collection::vec(perm(6), 20)) {
        let els = elements(&g);
        prop_assert_eq!(g.order(), els.len() as u128);
        for x in &probes {
            prop_assert_eq!(g.contains(x).unwrap(), els.contains(x));
        }
    }

    #[test]
    fn commutator_is_symmetric(a in group(6, 2), b in group(6, 2)) {
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        prop_assert!(ab.same_as(&ba));
        prop_assert!(same(&ab, &commutator_set(6, &elements(&a), &elements(&b))));
    }

    #[test]
    fn power_subgroup_is_normal_in_the_parent(g in group(6, 2), x in perm(6), q in 2u64..=6) {
        let lim = Limits::default();
        let seed = PermGroup::new(6, vec![x]).unwrap();
        let g = join(&g, &seed).unwrap();
        let n = normal_closure(&g, &seed).unwrap();
        let nq = power_subgroup(&n, q, &lim).unwrap();
        prop_assert!(nq.is_subgroup_of(&n));
        prop_assert!(nq.is_normal_in(&g));
        prop_assert!(same(&nq, &power_set(6, &elements(&n), q)));
    }

    #[test]
    fn preimage_inverts_projection_over_the_kernel(g in group(6, 2), x in perm(6), h in gens(6, 2)) {
        let lim = Limits::default();
        let g = join(&g, &PermGroup::new(6, vec![x.clone()]).unwrap()).unwrap();
        let k = normal_closure(&g, &PermGroup::new(6, vec![x]).unwrap()).unwrap();
        let h: Vec<Permutation> = h.into_iter().filter(|y| g.has(y)).collect();
        let hk = join(&PermGroup::new(6, h).unwrap(), &k).unwrap();
        let q = quotient(&g, &k, &lim).unwrap();
        prop_assert!(q.preimage(&q.project_subgroup(&hk)).same_as(&hk));
        prop_assert_eq!(q.image().order() * k.order(), g.order());
    }

    #[test]
    fn group_files_round_trip(g in group(7, 3)) {
        let text = emit_group(&g);
        let back = parse_group(&text).unwrap();
        prop_assert_eq!(back.generators(), g.generators());
        prop_assert_eq!(back.order(), g.order());
    }

    #[test]
    fn reports_round_trip(
        id in "[a-z_:0-9]{1,12}",
        stmt in "[a-z0-9_]{1,10}",
        hyp in any::<bool>(),
        concl in any::<Option<bool>>(),
        k in any::<u32>(),
        note in ".{0,20}",
        timing in any::<Option<u64>>(),
    ) {
        let mut v = Verdict::new(stmt).hypothesis(hyp).param("k", k);
        if let (true, Some(c)) = (hyp, concl) {
            v.conclude(c);
        }
        v.note(note);
        let mut r = Report::new(id, v);
        r.timing_ms = timing;
        let doc = ReportDocument::new(vec![r]);
        let text = emit_report(&doc, OutputFormat::Structured);
        prop_assert_eq!(parse_report(&text).unwrap(), doc);
    }
}

#[test]
fn gamma_series_descends_through_normal_subgroups() {
    for (id, g, _) in small_p_groups() {
        let class = nilpotency_class(&g).expect("p-groups are nilpotent");
        for i in 1..=class + 1 {
            let (a, b) = (gamma(&g, i), gamma(&g, i + 1));
            assert!(b.is_subgroup_of(&a), "{id} gamma_{i}");
            assert!(a.is_normal_in(&g), "{id} gamma_{i}");
        }
        assert!(gamma(&g, class + 1).is_trivial(), "{id}");
    }
}

#[test]
fn ekr_is_monotone_normal_and_contains_powers() {
    let lim = Limits::default();
    for (id, g, p) in small_p_groups() {
        let mut ctx = EkrContext::new(&g, p, &lim).unwrap();
        let class = ctx.class;
        let kmax = (class + 2) * p as usize;
        for r in 1..=class + 1 {
            for k in 0..=kmax {
                let e = ctx.ekr(k, r, &lim).unwrap().group;
                assert!(e.is_normal_in(&g), "{id} E_{k},{r}");
                assert!(
                    ctx.ekr(k + 1, r, &lim).unwrap().group.is_subgroup_of(&e),
                    "{id} k {k},{r}"
                );
                assert!(
                    ctx.ekr(k, r + 1, &lim).unwrap().group.is_subgroup_of(&e),
                    "{id} r {k},{r}"
                );
            }
        }
        for j in 0..=ctx.exponent_log + 1 {
            let q = p.pow(j);
            let pj = power_subgroup(&g, q, &lim).unwrap();
            let e = compute_ekr(&g, p, 1 + j as usize * (p as usize - 1), 1, &lim).unwrap();
            assert!(pj.is_subgroup_of(&e.group), "{id} j={j}");
        }
    }
}

#[test]
fn main_hypothesis_implies_theorem6_hypothesis() {
    let lim = Limits::default();
    for (id, g, p) in small_p_groups() {
        for ell in 1..=4 {
            let v = check_main_hypothesis(&g, p, ell, &lim).unwrap();
            assert!(!v.is_finding(), "{id} ell={ell}: {v:?}");
        }
    }
}

#[test]
fn search_agrees_with_verifier() {
    let lim = Limits::default();
    let mut found = 0;
    for (id, g, p) in small_p_groups() {
        if g.order() > exhaustive_order_cap(p) {
            continue;
        }
        let Some(lattice) = NormalLattice::new(&g, p, &lim).unwrap() else {
            continue;
        };
        for n in lattice.subgroups() {
            for ell in 0..=p as u32 {
                if let SearchOutcome::Found(f) = lattice.search(&n, ell, lim.search_budget) {
                    let verdict = verify_potent_filtration(&f, &lim).unwrap();
                    assert!(verdict.valid, "{id} ell={ell}: {:?}", verdict.first_failure);
                    assert!(f.terms[0].same_as(&n), "{id}");
                    assert_eq!(f.type_ell, ell);
                    found += 1;
                }
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn abelian_groups_carry_the_one_term_filtration() {
    let lim = Limits::default();
    for (id, g, p) in small_p_groups() {
        if !g.is_abelian() {
            continue;
        }
        let f = Filtration::new(g.clone(), p, 1, vec![g.clone(), PermGroup::trivial(g.degree())]);
        assert!(verify_potent_filtration(&f, &lim).unwrap().valid, "{id}");
    }
}

#[test]
fn recipes_parse_back_from_their_ids() {
    for recipe in psolv::catalog::default_catalog() {
        let again: GroupRecipe = recipe.id().parse().unwrap();
        assert_eq!(again.id(), recipe.id());
    }
}
