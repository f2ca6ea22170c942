//! Move choosers: the three constructive strategies, the k = 2 balancing
//! strategy, simple baselines, and the solver-backed optimal player.

mod balanced;
mod baseline;
mod clique;
mod cover;
mod four_color;
mod star;

pub use balanced::BalancedStrategy;
pub use baseline::{GreedyDegreeSum, RandomLegal};
pub use clique::CliqueStrategy;
pub use cover::min_final_edges_given_cover;
pub use four_color::{lemma_preconditions, CliqueRecord, Condition, FourColorReport, FourColorStrategy, Lemma};
pub use star::StarStrategy;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::Position;
use crate::game::{GameConfig, Player, Strategy, StrategyError};
use crate::graph::Edge;
use crate::solver::OptimalStrategy;

/// Resolves every free choice of a strategy: the first candidate, or a
/// seeded uniform pick.
#[derive(Clone, Debug)]
pub struct Chooser {
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    pub fn lowest() -> Self {
        Self { rng: None }
    }

    pub fn seeded(seed: u64) -> Self {
        Self {
            rng: Some(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    pub fn from_seed(seed: Option<u64>) -> Self {
        seed.map_or_else(Self::lowest, Self::seeded)
    }

    pub fn is_seeded(&self) -> bool {
        self.rng.is_some()
    }

    pub fn pick<T: Copy>(&mut self, items: &[T]) -> Option<T> {
        match &mut self.rng {
            _ if items.is_empty() => None,
            None => Some(items[0]),
            Some(rng) => Some(items[rng.gen_range(0..items.len())]),
        }
    }

    /// `(S1)`: an arbitrary legal edge.
    pub fn legal_edge(&mut self, pos: &Position) -> Result<Edge, StrategyError> {
        let found = if self.rng.is_some() {
            self.pick(&pos.legal_moves())
        } else {
            pos.first_legal()
        };
        found.ok_or_else(|| StrategyError::Invariant("asked to move on a saturated board".into()))
    }
}

/// Split `"base:seed"` into its parts; the seed is optional.
fn parse_name(name: &str) -> Result<(&str, Option<u64>), StrategyError> {
    match name.split_once(':') {
        None => Ok((name, None)),
        Some((base, seed)) => seed
            .parse()
            .map(|s| (base, Some(s)))
            .map_err(|_| StrategyError::UnknownStrategy(name.to_string())),
    }
}

/// Names accepted by [`by_name`], without seed suffixes.
pub const STRATEGY_NAMES: &[&str] = &[
    "maxi-clique",
    "mini-star",
    "maxi-4color",
    "balanced",
    "random",
    "greedy-max",
    "greedy-min",
    "optimal",
];

/// Build the strategy called `name` to play `side` in `config`.
///
/// `random:SEED` needs its seed; the constructive strategies accept an
/// optional `:SEED` that switches their tie-breaking to seeded random.
pub fn by_name(
    name: &str,
    config: &GameConfig,
    side: Player,
) -> Result<Box<dyn Strategy>, StrategyError> {
    let (base, seed) = parse_name(name)?;
    let only = |wanted: Player| {
        if side == wanted {
            Ok(())
        } else {
            Err(StrategyError::Unsupported(format!("{base} plays only as {wanted}")))
        }
    };
    Ok(match base {
        "maxi-clique" => {
            only(Player::Maxi)?;
            if config.k == 2 {
                // m = 1 leaves the clique strategy nothing to do at k = 2.
                Box::new(BalancedStrategy::new(name, *config, Chooser::from_seed(seed)))
            } else {
                Box::new(CliqueStrategy::new(*config, Chooser::from_seed(seed))?)
            }
        }
        "mini-star" => {
            only(Player::Mini)?;
            Box::new(StarStrategy::new(*config, Chooser::from_seed(seed)))
        }
        "maxi-4color" => {
            only(Player::Maxi)?;
            Box::new(FourColorStrategy::new(*config)?)
        }
        "balanced" => {
            if config.k != 2 {
                return Err(StrategyError::Unsupported("balanced needs k = 2".into()));
            }
            Box::new(BalancedStrategy::new(name, *config, Chooser::from_seed(seed)))
        }
        "random" => {
            let seed = seed.ok_or_else(|| StrategyError::UnknownStrategy(name.to_string()))?;
            Box::new(RandomLegal::new(seed))
        }
        "greedy-max" | "greedy-min" if seed.is_none() => {
            Box::new(GreedyDegreeSum::new(base == "greedy-max"))
        }
        "optimal" if seed.is_none() => Box::new(
            OptimalStrategy::shared(*config, side).map_err(|e| StrategyError::Solver(e.to_string()))?,
        ),
        _ => return Err(StrategyError::UnknownStrategy(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        let cfg = GameConfig::new(6, 4, Player::Maxi).unwrap();
        for name in ["maxi-clique", "maxi-clique:3", "maxi-4color", "greedy-max", "random:9", "optimal"] {
            assert!(by_name(name, &cfg, Player::Maxi).is_ok(), "{name}");
        }
        assert!(by_name("mini-star", &cfg, Player::Mini).is_ok());
        assert!(by_name("mini-star", &cfg, Player::Maxi).is_err());
        assert!(by_name("random", &cfg, Player::Mini).is_err());
        assert!(by_name("nope", &cfg, Player::Mini).is_err());
        assert!(by_name("balanced", &cfg, Player::Maxi).is_err());
    }

    #[test]
    fn chooser_lowest_and_seeded() {
        let mut c = Chooser::lowest();
        assert_eq!(c.pick(&[3, 1, 2]), Some(3));
        let picks = |seed| {
            let mut c = Chooser::seeded(seed);
            (0..8).map(|_| c.pick(&[0, 1, 2, 3]).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(picks(5), picks(5));
        assert_eq!(Chooser::lowest().pick::<u8>(&[]), None);
    }
}
