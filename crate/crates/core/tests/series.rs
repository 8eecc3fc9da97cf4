mod common;

use common::*;
use psolv::group::Limits;
use psolv::series::{
    exponent, gamma, lower_central_series, nilpotency_class, o_p, o_p_via_core, o_p_via_elements, o_pprime,
    o_pprime_p, p_length, sylow, upper_p_series,
};

const PRIMES: [u64; 3] = [2, 3, 5];

#[test]
fn cores_and_upper_series_match_normal_subgroup_enumeration() {
    let lim = Limits::default();
    for (id, g) in catalog(2_000) {
        let n = g.degree();
        let gs = elements(&g);
        for p in PRIMES {
            let oracle = upper_series(n, &gs, p as usize);
            assert!(
                same(&o_p(&g, p, &lim).unwrap(), &o_p_set(n, &gs, p as usize)),
                "{id} O_{p}"
            );
            assert!(o_p_via_core(&g, p, &lim)
                .unwrap()
                .same_as(&o_p_via_elements(&g, p, &lim).unwrap()));
            assert!(
                same(&o_pprime(&g, p, &lim).unwrap(), &oracle.o_pprime),
                "{id} O_p' p={p}"
            );
            assert!(
                same(&o_pprime_p(&g, p, &lim).unwrap(), &oracle.o_pprime_p),
                "{id} O_p',p p={p}"
            );

            let series = upper_p_series(&g, p, &lim).unwrap();
            assert_eq!(series.is_p_solvable, Some(oracle.solvable), "{id} p={p}");
            assert_eq!(series.last().same_as(&g), oracle.solvable, "{id} p={p}");
            if oracle.solvable {
                assert_eq!(series.p_length, Some(oracle.p_length), "{id} p={p}");
                assert_eq!(p_length(&g, p, &lim).unwrap(), oracle.p_length, "{id} p={p}");
            }
            let orders: Vec<u128> = series.orders().into_iter().map(|(_, o)| o).collect();
            assert!(
                orders.windows(2).all(|w| w[0] <= w[1] && w[1] % w[0] == 0),
                "{id}"
            );
            for (o, want) in orders.iter().zip(&oracle.orders) {
                assert_eq!(
                    *o, *want as u128,
                    "{id} p={p} series {orders:?} vs {:?}",
                    oracle.orders
                );
            }
        }
    }
}

#[test]
fn o_p_contains_every_normal_p_subgroup() {
    let lim = Limits::default();
    for (id, g) in catalog(2_000) {
        let n = g.degree();
        let gs = elements(&g);
        let normals = normal_subgroups(n, &gs);
        for p in PRIMES {
            let op = elements(&o_p(&g, p, &lim).unwrap());
            for m in normals.iter().filter(|m| is_power_of(m.len(), p as usize)) {
                assert!(m.is_subset(&op), "{id} p={p}");
            }
        }
    }
}

#[test]
fn labels_alternate_starting_with_p_prime() {
    let lim = Limits::default();
    for (id, g) in catalog(u128::MAX) {
        for p in PRIMES {
            let labels: Vec<String> = upper_p_series(&g, p, &lim)
                .unwrap()
                .orders()
                .into_iter()
                .map(|(l, _)| l)
                .collect();
            for (i, pair) in labels.windows(2).enumerate() {
                assert_ne!(pair[0], pair[1], "{id} p={p} at {i}: {labels:?}");
            }
        }
    }
}

#[test]
fn lower_central_series_matches_commutator_closure() {
    for (id, g) in catalog(2_000) {
        let n = g.degree();
        let gs = elements(&g);
        let oracle = lower_central(n, &gs);
        for (i, want) in oracle.iter().enumerate() {
            let got = gamma(&g, i + 1);
            assert!(same(&got, want), "{id} gamma_{}", i + 1);
            assert!(is_normal_set(&gs, want), "{id}");
        }
        let nilpotent = oracle.last().unwrap().len() == 1;
        // a stalled series keeps its repeated term
        let report = lower_central_series(&g);
        assert_eq!(report.terms.len(), oracle.len() + usize::from(!nilpotent), "{id}");
        assert_eq!(nilpotency_class(&g).is_some(), nilpotent, "{id}");
        if nilpotent {
            assert_eq!(nilpotency_class(&g), Some(oracle.len() - 1), "{id}");
        }
    }
}

#[test]
fn exponent_and_sylow_orders() {
    let lim = Limits::default();
    for (id, g) in catalog(u128::MAX) {
        let gs = elements(&g);
        assert_eq!(exponent(&g, &lim).unwrap(), exponent_set(&gs) as u128, "{id}");
        for p in PRIMES {
            let s = sylow(&g, p, &lim).unwrap();
            assert!(s.is_subgroup_of(&g));
            assert!(s.is_p_group(p));
            assert_eq!(s.order(), psolv::group::p_part(g.order(), p), "{id} p={p}");
        }
    }
}

#[test]
fn p_length_of_p_groups_and_p_prime_groups() {
    let lim = Limits::default();
    for (id, g) in catalog(u128::MAX) {
        for p in PRIMES {
            if g.order() > 1 && g.is_p_group(p) {
                assert_eq!(p_length(&g, p, &lim).unwrap(), 1, "{id} p={p}");
            }
            if g.is_pprime_group(p) {
                assert_eq!(p_length(&g, p, &lim).unwrap(), 0, "{id} p={p}");
            }
        }
    }
}
