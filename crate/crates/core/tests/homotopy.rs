mod common;

use std::sync::Arc;

use gph_core::graph::coproduct;
use gph_core::homotopy::{hom_count_bounded, homotopy_equivalent, signature};
use gph_core::spectral::cycle_counts;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[test]
fn both_decision_routes_agree_on_the_corpus() {
    let corpus = common::iso_corpus(3, 3);
    for x in &corpus {
        for y in &corpus {
            // an internal disagreement would surface as an error
            let verdict = homotopy_equivalent(x, y).unwrap();
            let n = x.node_count().max(y.node_count()) + 3;
            assert_eq!(verdict, cycle_counts(x, n) == cycle_counts(y, n));
        }
    }
}

#[test]
fn relabeling_preserves_the_verdict() {
    for (k, g) in common::random_graphs(0x5eed_3001, 60, 5, 8).into_iter().enumerate() {
        let h = g.relabel(|n| format!("{n}#{k}"), |a| format!("arc/{a}")).unwrap();
        assert!(homotopy_equivalent(&g, &h).unwrap());
        assert_eq!(signature(&g), signature(&h));
    }
}

#[test]
fn signature_multiplies_over_coproducts() {
    let corpus = common::iso_corpus(2, 3);
    for x in &corpus {
        for y in &corpus {
            let (x, y) = (Arc::new(x.clone()), Arc::new(y.clone()));
            let sum = coproduct(&x, &y).graph;
            assert_eq!(signature(&sum).polynomial(), &(signature(&x).polynomial() * signature(&y).polynomial()));
        }
    }
}

#[test]
fn self_hom_count_is_positive_with_a_cycle() {
    for g in common::iso_corpus(3, 4) {
        for n in 1..=4 {
            let has_cycle = cycle_counts(&g, n).iter().any(|c| !c.is_zero());
            let count = hom_count_bounded(&g, &g, n).unwrap();
            if has_cycle {
                assert!(count >= BigInt::one(), "{g:?}");
            }
        }
    }
}
