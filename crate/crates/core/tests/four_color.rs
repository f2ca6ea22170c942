use proptest::prelude::*;

use colorsat::harness::play_four_color;
use colorsat::strategies::{by_name, lemma_preconditions, min_final_edges_given_cover, Lemma, RandomLegal};
use colorsat::{GameConfig, Graph, Player, VertexSet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn accounting_holds_against_random(n in 5usize..40, s in any::<u64>(), first in prop_oneof![Just(Player::Maxi), Just(Player::Mini)]) {
        let config = GameConfig::new(n, 4, first).unwrap();
        let (tr, rep) = play_four_color(config, &mut RandomLegal::new(s)).unwrap();
        tr.validate().unwrap();
        prop_assert!(rep.accounting_holds(n), "{:?}", rep.sizes());
        prop_assert!(rep.cliques.windows(2).all(|w| w[0].birth <= w[1].birth));
        // The final graph is complete 4-partite and separates every clique.
        let bound = min_final_edges_given_cover(&rep.sizes(), n, 4).unwrap();
        prop_assert!(bound <= tr.score());
    }
}

#[test]
fn accounting_holds_against_the_star() {
    for n in [12, 25, 33] {
        for first in [Player::Maxi, Player::Mini] {
            let config = GameConfig::new(n, 4, first).unwrap();
            let mut mini = by_name("mini-star", &config, Player::Mini).unwrap();
            let (_, rep) = play_four_color(config, mini.as_mut()).unwrap();
            assert!(rep.accounting_holds(n), "n={n} first={first}");
            assert!(rep.count(2) <= 2 * rep.count(4));
        }
    }
}

#[test]
fn cover_minimum_frozen_values() {
    // A triangle on 6 vertices: the free vertices join one triangle class, 4+1+1.
    assert_eq!(min_final_edges_given_cover(&[3], 6, 4).unwrap(), 9);
    // No cliques: one class, no edges.
    assert_eq!(min_final_edges_given_cover(&[], 8, 4).unwrap(), 0);
    // Two K4 force every class to hold one vertex of each.
    assert_eq!(min_final_edges_given_cover(&[4, 4], 8, 4).unwrap(), 24);
    // K4 + K3 + K2 + one free vertex on 10: classes 4,3,2,1.
    assert_eq!(min_final_edges_given_cover(&[4, 3, 2], 10, 4).unwrap(), 35);
    assert!(min_final_edges_given_cover(&[5], 8, 4).is_err());
}

#[test]
fn k3_precondition_needs_room() {
    let g = Graph::new(6);
    let w = VertexSet::from_vertices(6, [0, 1]);
    assert!(lemma_preconditions(Lemma::K3, &g, &w, 0).is_err());
}
