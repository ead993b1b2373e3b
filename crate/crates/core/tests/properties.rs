use proptest::prelude::*;
use proptest::sample::select;

use theta_core::completion::{completion_classes, is_groupoid_object, ObjectKind};
use theta_core::flags::random::{random_set_flag, rng};
use theta_core::flags::{cech_flag, extract_flag, flag_catalog, flagged_nerve};
use theta_core::segal::is_segal;
use theta_core::strict::catalog::finite_catalog;
use theta_core::strict::{count_functors, from_theta, is_gaunt, is_strict_groupoid, suspend};
use theta_core::theta::{closed_slice_poset, compose, enumerate_morphisms, factor_active_closed, objects_up_to, ThetaObj};
use theta_core::theta_set::{check_functoriality, e_nerve, nerve, representable, theta_set_product, ThetaSet};

fn object(bound: usize) -> impl Strategy<Value = ThetaObj> {
    (1..=3usize).prop_flat_map(move |h| select(objects_up_to(h, bound)))
}

/// Three objects of one height.
fn triple(bound: usize) -> impl Strategy<Value = (ThetaObj, ThetaObj, ThetaObj, ThetaObj)> {
    (1..=3usize).prop_flat_map(move |h| {
        let objs = objects_up_to(h, bound);
        (select(objs.clone()), select(objs.clone()), select(objs.clone()), select(objs))
    })
}

fn catalog_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (1..=2usize).prop_flat_map(|h| {
        let n = finite_catalog(h).len();
        (Just(h), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_at_full_bound((s, t, u, v) in triple(6), picks in any::<[prop::sample::Index; 3]>()) {
        let (f, g, h) = (enumerate_morphisms(&s, &t).unwrap(), enumerate_morphisms(&t, &u).unwrap(), enumerate_morphisms(&u, &v).unwrap());
        prop_assume!(!f.is_empty() && !g.is_empty() && !h.is_empty());
        let (f, g, h) = (picks[0].get(&f), picks[1].get(&g), picks[2].get(&h));
        prop_assert_eq!(compose(h, &compose(g, f).unwrap()).unwrap(), compose(&compose(h, g).unwrap(), f).unwrap());
    }

    #[test]
    fn closed_maps_compose_to_closed((s, t, u, _) in triple(6)) {
        let f: Vec<_> = enumerate_morphisms(&s, &t).unwrap().into_iter().filter(|m| m.is_closed()).collect();
        let g: Vec<_> = enumerate_morphisms(&t, &u).unwrap().into_iter().filter(|m| m.is_closed()).collect();
        for a in &f {
            for b in &g {
                prop_assert!(compose(b, a).unwrap().is_closed());
            }
        }
    }

    #[test]
    fn factorization_recomposes((s, t, _, _) in triple(6)) {
        for m in enumerate_morphisms(&s, &t).unwrap() {
            let (a, c) = factor_active_closed(&m);
            prop_assert!(a.is_active() && c.is_closed());
            prop_assert_eq!(compose(&c, &a).unwrap(), m);
            if a.is_closed() {
                prop_assert!(a.is_identity());
            }
        }
    }

    #[test]
    fn hom_enumeration_is_deterministic((s, t, _, _) in triple(6)) {
        let a = enumerate_morphisms(&s, &t).unwrap();
        let mut b = enumerate_morphisms(&s, &t).unwrap();
        b.sort_by_key(|m| format!("{m:?}"));
        let mut a2 = a.clone();
        a2.sort_by_key(|m| format!("{m:?}"));
        prop_assert_eq!(a2, b);
    }

    #[test]
    fn cell_posets_have_a_top_exactly_for_cells(t in object(6)) {
        prop_assert_eq!(closed_slice_poset(&t, true).maximum().is_some(), t.is_cell());
    }

    #[test]
    fn theta_embeds_fully_faithfully((s, t, _, _) in triple(5)) {
        let (cs, ct) = (from_theta(&s), from_theta(&t));
        prop_assert!(is_gaunt(&ct));
        prop_assert_eq!(count_functors(&cs, &ct).unwrap(), enumerate_morphisms(&s, &t).unwrap().len());
    }

    #[test]
    fn representables_are_segal(t in object(5)) {
        prop_assert!(is_segal(&representable(&t), 5).unwrap().ok());
    }

    #[test]
    fn gaunt_nerves_have_trivial_completion(t in object(4), i in any::<prop::sample::Index>()) {
        let cats: Vec<_> = finite_catalog(t.height()).into_iter().filter(|(_, c)| is_gaunt(c)).collect();
        let (_, c) = i.get(&cats);
        let cl = completion_classes(&nerve(c.clone()), &t).unwrap();
        prop_assert_eq!(cl.classes.len(), cl.elements);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn segal_is_stable_under_products((h, a, b) in catalog_pair()) {
        let cats = finite_catalog(h);
        let p = theta_set_product(nerve(cats[a].1.clone()), nerve(cats[b].1.clone())).unwrap();
        prop_assert!(is_segal(&p, 4).unwrap().ok());
    }

    #[test]
    fn suspensions_of_nonempty_categories_are_not_groupoids((h, a, _) in catalog_pair()) {
        let c = &finite_catalog(h)[a].1;
        // the suspension of the empty category is two points
        prop_assert_eq!(is_strict_groupoid(&suspend(c)), c.object_count() == 0);
    }

    #[test]
    fn cech_nerves_of_flags_round_trip(seed in 0u64..1000, h in 1..=3usize) {
        let flag = random_set_flag(&mut rng(seed), h, 6);
        let x = cech_flag(flag.clone()).unwrap();
        prop_assert!(is_groupoid_object(&x, ObjectKind::Generic).unwrap());
        prop_assert!(is_segal(&x, 4).unwrap().ok());
        prop_assert!(extract_flag(&x).unwrap().is_isomorphic(&flag));
    }

    #[test]
    fn flag_strategies_agree(h in 1..=3usize, i in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        let cat = flag_catalog(h).unwrap();
        let (_, seq) = i.get(&cat);
        let t = t.get(&objects_up_to(h, 5)).clone();
        let f = flagged_nerve(seq.clone());
        let (mut a, mut b) = (f.eval_ladder(&t).unwrap(), f.eval_pullback(&t).unwrap());
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn nerves_and_height_one_e_nerves_are_functorial() {
    for h in 1..=2 {
        for (name, c) in finite_catalog(h) {
            assert!(check_functoriality(&nerve(c), 4, 7).unwrap().is_none(), "{name}");
        }
    }
    for p in 0..=3 {
        assert!(check_functoriality(&e_nerve(&ThetaObj::linear(p, 1)), 4, 9).unwrap().is_none());
    }
    assert!(check_functoriality(&representable(&ThetaObj::cell(2, 2)), 4, 8).unwrap().is_none());
}

#[test]
fn flagged_nerves_are_segal() {
    for h in 1..=3 {
        for (name, seq) in flag_catalog(h).unwrap() {
            assert!(is_segal(&flagged_nerve(seq), 5).unwrap().ok(), "{name} at height {h}");
        }
    }
}

#[test]
fn e_nerve_units_are_elements() {
    for t in objects_up_to(2, 5) {
        let e = e_nerve(&t);
        assert!(e.eval(&t).unwrap().index_of(&theta_core::theta_set::ENerve::unit(&t)).is_some(), "{t}");
    }
}
