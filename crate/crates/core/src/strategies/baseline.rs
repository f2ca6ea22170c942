//! Adversaries for testing: uniform random and degree-sum greedy.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::Position;
use crate::game::{Strategy, StrategyError};
use crate::graph::Edge;

fn saturated() -> StrategyError {
    StrategyError::Invariant("asked to move on a saturated board".into())
}

/// Uniform over legal moves; the sequence depends only on the seed and the
/// positions seen.
#[derive(Clone, Debug)]
pub struct RandomLegal {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomLegal {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomLegal {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn choose(&mut self, pos: &Position, _t: usize) -> Result<Edge, StrategyError> {
        pos.legal_moves().choose(&mut self.rng).copied().ok_or_else(saturated)
    }
}

/// Legal edge with the largest (or smallest) `deg(u) + deg(v)`, first in
/// lexicographic order among ties.
#[derive(Clone, Debug)]
pub struct GreedyDegreeSum {
    maximize: bool,
}

impl GreedyDegreeSum {
    pub fn new(maximize: bool) -> Self {
        Self { maximize }
    }
}

impl Strategy for GreedyDegreeSum {
    fn name(&self) -> String {
        if self.maximize { "greedy-max" } else { "greedy-min" }.into()
    }

    fn choose(&mut self, pos: &Position, _t: usize) -> Result<Edge, StrategyError> {
        let g = pos.graph();
        let key = |e: &Edge| {
            let s = (g.degree(e.u) + g.degree(e.v)) as i64;
            if self.maximize {
                -s
            } else {
                s
            }
        };
        // `min_by_key` keeps the first of equal keys, and `legal_iter` is
        // lexicographic.
        pos.legal_iter().min_by_key(key).ok_or_else(saturated)
    }
}
