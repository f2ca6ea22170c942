use proptest::prelude::*;

use colorsat::solver::{solve, strategy_regret, OptimalStrategy, Solver, SolverError, SolverOptions};
use colorsat::strategies::RandomLegal;
use colorsat::{run_game, GameConfig, Graph, Player};

fn value(n: usize, k: usize, first: Player) -> usize {
    solve(n, k, SolverOptions::default()).unwrap().score(first)
}

// (n, k, maxi-first, mini-first), computed once by the solver and frozen.
const FROZEN: &[(usize, usize, usize, usize)] = &[
    (3, 2, 2, 2),
    (4, 2, 4, 4),
    (5, 2, 6, 6),
    (6, 2, 9, 9),
    (7, 2, 12, 12),
    (8, 2, 16, 16),
    (4, 3, 5, 5),
    (5, 3, 8, 8),
    (6, 3, 12, 11),
    (7, 3, 16, 16),
    (5, 4, 9, 9),
    (6, 4, 13, 13),
    (7, 4, 18, 18),
    (6, 5, 14, 14),
    (7, 5, 19, 19),
    (7, 6, 20, 20),
];

#[test]
fn frozen_values() {
    for &(n, k, a, b) in FROZEN {
        let r = solve(n, k, SolverOptions::default()).unwrap();
        assert_eq!((r.score_maxi_first(), r.score_mini_first()), (a, b), "n={n} k={k}");
    }
}

#[test]
fn values_sit_in_the_sandwich() {
    for n in 3..=8 {
        for k in 2..n {
            let cfg = GameConfig::new(n, k, Player::Maxi).unwrap();
            let r = solve(n, k, SolverOptions::default()).unwrap();
            for s in [r.score_maxi_first(), r.score_mini_first()] {
                assert!(cfg.sat() <= s && s <= cfg.ex(), "n={n} k={k} s={s}");
            }
        }
    }
}

#[test]
fn principal_variation_replays_to_the_value() {
    for (n, k) in [(6, 3), (7, 4), (8, 2)] {
        for first in [Player::Maxi, Player::Mini] {
            let mut s = Solver::new(n, k, first, SolverOptions::default()).unwrap();
            let line = s.solve_root().unwrap();
            let mut g = Graph::new(n);
            for &e in &line.principal_variation {
                g.add_edge(e).unwrap();
            }
            assert_eq!(g.edge_count(), line.score);
            assert!(colorsat::is_saturated(&g, k));
        }
    }
}

#[test]
fn budget_is_reported() {
    assert!(matches!(
        Solver::new(20, 4, Player::Maxi, SolverOptions::default()),
        Err(SolverError::BudgetExceeded { .. })
    ));
}

#[test]
fn clique_strategy_has_no_regret_at_k2() {
    for n in [4, 6] {
        for first in [Player::Maxi, Player::Mini] {
            assert_eq!(strategy_regret("maxi-clique", n, 2, Player::Maxi, first).unwrap(), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The optimal side guarantees the game value against any opponent.
    #[test]
    fn optimal_play_guarantees_the_value(n in 4usize..8, k in 2usize..5, s in any::<u64>(), first in prop_oneof![Just(Player::Maxi), Just(Player::Mini)]) {
        prop_assume!(k < n);
        let config = GameConfig::new(n, k, first).unwrap();
        let v = value(n, k, first);
        let mut opt_maxi = OptimalStrategy::shared(config, Player::Maxi).unwrap();
        let low = run_game(config, &mut opt_maxi, &mut RandomLegal::new(s)).unwrap().score();
        let mut opt_mini = OptimalStrategy::shared(config, Player::Mini).unwrap();
        let high = run_game(config, &mut RandomLegal::new(s), &mut opt_mini).unwrap().score();
        prop_assert!(low >= v, "optimal Maxi got {} < {}", low, v);
        prop_assert!(high <= v, "optimal Mini got {} > {}", high, v);
    }
}
