mod common;

use std::sync::Arc;

use gph_core::graph::GraphMorphism;
use gph_core::homotopy::homotopy_equivalent;
use gph_core::model::{factorize_bounded, is_acyclic_bounded, is_surjecting, is_whiskering};
use gph_core::search::{enumerate_morphisms, Budget};
use rand::Rng;

#[test]
fn complete_factorizations_are_sound() {
    let mut r = common::rng(0x5eed_2001);
    let mut complete = 0;
    for _ in 0..150 {
        let x = Arc::new(common::random_graph(&mut r, 3, 3));
        let y = Arc::new(common::random_graph(&mut r, 3, 4));
        let maps = enumerate_morphisms(&x, &y, &mut Budget::default()).unwrap();
        if maps.is_empty() {
            continue;
        }
        let f = &maps[r.gen_range(0..maps.len())];
        let fact = factorize_bounded(f, 4).unwrap();
        assert!(is_whiskering(&fact.w));
        let pw = fact.w.then(&fact.p).unwrap();
        assert_eq!(pw.node_map(), f.node_map());
        assert_eq!(pw.arc_map(), f.arc_map());
        if fact.complete {
            complete += 1;
            assert!(is_surjecting(&fact.p));
        }
    }
    assert!(complete > 10, "only {complete} complete factorizations");
}

#[test]
fn whiskerings_are_weak_equivalences() {
    let mut r = common::rng(0x5eed_2002);
    for _ in 0..60 {
        let x = Arc::new(common::random_graph(&mut r, 4, 6));
        let k = r.gen_range(1..=4);
        let w = common::random_whiskering(&mut r, &x, k);
        assert!(is_whiskering(&w));
        assert!(is_acyclic_bounded(&w, 5, &mut Budget::default()).unwrap());
        assert!(homotopy_equivalent(&x, w.target()).unwrap());
    }
}

#[test]
fn identities_are_in_every_class() {
    for g in common::iso_corpus(2, 3) {
        let id = GraphMorphism::identity(&Arc::new(g));
        assert!(is_surjecting(&id));
        assert!(is_whiskering(&id));
        assert!(is_acyclic_bounded(&id, 4, &mut Budget::default()).unwrap());
    }
}
