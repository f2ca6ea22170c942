use proptest::prelude::*;

use colorsat::harness::{clique_lower_bound, full_degree_count, groups_are_cliques, star_upper_bound};
use colorsat::strategies::{by_name, RandomLegal};
use colorsat::game::TranscriptError;
use colorsat::{is_saturated, run_game, Game, GameConfig, Player, Transcript};

fn player() -> impl Strategy<Value = Player> {
    prop_oneof![Just(Player::Maxi), Just(Player::Mini)]
}

fn play(config: GameConfig, maxi: &str, mini: &str) -> Transcript {
    let mut a = by_name(maxi, &config, Player::Maxi).unwrap();
    let mut b = by_name(mini, &config, Player::Mini).unwrap();
    run_game(config, a.as_mut(), b.as_mut()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_games_end_inside_the_sandwich(n in 3usize..16, k in 2usize..6, s in any::<u64>(), first in player()) {
        prop_assume!(k < n);
        let config = GameConfig::new(n, k, first).unwrap();
        let tr = run_game(config, &mut RandomLegal::new(s), &mut RandomLegal::new(s ^ 1)).unwrap();
        prop_assert!(tr.complete);
        prop_assert!(config.sat() <= tr.score() && tr.score() <= config.ex());
        prop_assert!(is_saturated(&tr.final_graph, k));
        prop_assert_eq!(tr.final_graph.complete_multipartite_parts().unwrap().len(), k);
        prop_assert_eq!(tr.moves.len(), tr.score());
        tr.validate().unwrap();
    }

    #[test]
    fn transcripts_round_trip_through_json(n in 3usize..12, k in 2usize..5, s in any::<u64>(), first in player()) {
        prop_assume!(k < n);
        let tr = play(GameConfig::new(n, k, first).unwrap(), &format!("random:{s}"), "greedy-min");
        let back = Transcript::from_json(&tr.to_json()).unwrap();
        prop_assert_eq!(&back, &tr);
        back.validate().unwrap();
    }

    #[test]
    fn clique_strategy_keeps_its_bound(n in 4usize..20, k in 3usize..8, s in any::<u64>(), first in player()) {
        prop_assume!(k < n);
        let tr = play(GameConfig::new(n, k, first).unwrap(), "maxi-clique", &format!("random:{s}"));
        prop_assert!(tr.score() >= clique_lower_bound(n, k));
        prop_assert!(groups_are_cliques(&tr.final_graph, k));
    }

    #[test]
    fn seeded_clique_tie_breaking_keeps_its_bound(n in 4usize..16, k in 3usize..7, s in any::<u64>(), first in player()) {
        prop_assume!(k < n);
        let tr = play(GameConfig::new(n, k, first).unwrap(), &format!("maxi-clique:{s}"), "greedy-max");
        prop_assert!(tr.score() >= clique_lower_bound(n, k));
    }

    #[test]
    fn star_strategy_keeps_its_bound(n in 5usize..20, k in 4usize..10, s in any::<u64>(), first in player()) {
        prop_assume!(k < n);
        let tr = play(GameConfig::new(n, k, first).unwrap(), &format!("random:{s}"), &format!("mini-star:{s}"));
        prop_assert!(tr.score() <= star_upper_bound(n, k));
        prop_assert!(full_degree_count(&tr.final_graph) >= (k - 1) / 3);
    }

    #[test]
    fn balanced_reaches_turan_at_k2(n in 3usize..14, s in any::<u64>(), first in player()) {
        let tr = play(GameConfig::new(n, 2, first).unwrap(), "balanced", &format!("random:{s}"));
        prop_assert_eq!(tr.score(), n * n / 4);
    }
}

#[test]
fn tampered_transcripts_are_rejected() {
    let tr = play(GameConfig::new(6, 3, Player::Maxi).unwrap(), "maxi-clique", "mini-star");
    let mut swapped = tr.clone();
    swapped.moves[0].player = Player::Mini;
    assert!(matches!(swapped.validate(), Err(TranscriptError::Alternation { .. })));
    let mut short = tr.clone();
    short.moves.pop();
    assert_eq!(short.validate(), Err(TranscriptError::FinalMismatch));
}

#[test]
fn partial_game_is_not_final() {
    let mut game = Game::new(GameConfig::new(5, 2, Player::Mini).unwrap());
    let e = game.position().first_legal().unwrap();
    game.play(e).unwrap();
    let tr = game.transcript();
    assert!(!tr.complete);
    tr.validate().unwrap();
    assert!(Transcript::from_json(&tr.to_json()).unwrap().validate().is_ok());
}
