//! Maxi's clique strategy: split `V` into groups of size `m = ⌈k/2⌉` and
//! complete every group into a clique while keeping `D(B,t)` empty.

use crate::coloring::Position;
use crate::game::{GameConfig, Move, Player, Strategy, StrategyError};
use crate::graph::{Edge, Graph, Vertex, VertexSet};
use crate::potential::{find_min_dangerous_set, has_dangerous_set_flow, QueryContext, Scope};

use super::Chooser;

#[derive(Clone, Debug)]
pub struct CliqueStrategy {
    config: GameConfig,
    chooser: Chooser,
    m: usize,
    groups: Vec<VertexSet>,
    group_of: Vec<usize>,
    /// Only full vertices enter `B`, and full vertices stay full.
    b: VertexSet,
    last: Option<Edge>,
}

impl CliqueStrategy {
    pub fn new(config: GameConfig, chooser: Chooser) -> Result<Self, StrategyError> {
        let m = config.k.div_ceil(2);
        if m < 2 {
            return Err(StrategyError::Unsupported(
                "the clique strategy needs k >= 3".into(),
            ));
        }
        let n = config.n;
        let groups: Vec<VertexSet> = (0..n)
            .step_by(m)
            .map(|s| VertexSet::from_vertices(n, s..(s + m).min(n)))
            .collect();
        let group_of = (0..n).map(|v| v / m).collect();
        Ok(Self {
            config,
            chooser,
            m,
            groups,
            group_of,
            b: VertexSet::new(n),
            last: None,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn groups(&self) -> &[VertexSet] {
        &self.groups
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    fn group(&self, v: Vertex) -> &VertexSet {
        &self.groups[self.group_of[v]]
    }

    /// `α(v,t) = |Γ_t(v) ∩ V_i|` for the group `V_i ∋ v`.
    fn alpha(&self, g: &Graph, v: Vertex) -> usize {
        g.degree_into(v, self.group(v))
    }

    fn is_full(&self, g: &Graph, v: Vertex) -> bool {
        self.alpha(g, v) + 1 == self.group(v).len()
    }

    fn weights(&self, g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|v| self.alpha(g, v)).collect()
    }

    /// Missing edges inside the group of `v`, as `(v, partner)` pairs.
    fn missing_partners(&self, g: &Graph, v: Vertex) -> Vec<Edge> {
        self.group(v)
            .iter()
            .filter(|&u| u != v && !g.has_edge(u, v))
            .map(|u| Edge::new(v, u))
            .collect()
    }

    fn dangerous_now(&self, g: &Graph) -> bool {
        has_dangerous_set_flow(g, &Scope::outside(&self.b), &self.weights(g))
    }

    /// Candidates for (S2)/(S3): missing group edges at non-full vertices of
    /// `pool`, ordered by the vertex first.
    fn group_edges_in(&self, g: &Graph, pool: &VertexSet) -> Vec<Edge> {
        let mut out = Vec::new();
        for v in pool.iter() {
            if !self.is_full(g, v) {
                let edges = self.missing_partners(g, v);
                if !self.chooser.is_seeded() && !edges.is_empty() {
                    return edges;
                }
                out.extend(edges);
            }
        }
        out
    }
}

impl Strategy for CliqueStrategy {
    fn name(&self) -> String {
        "maxi-clique".into()
    }

    fn choose(&mut self, pos: &Position, t: usize) -> Result<Edge, StrategyError> {
        let g = pos.graph();
        let n = g.n();
        let ctx = self.last.map_or(QueryContext::General, QueryContext::AfterEdge);
        let report = find_min_dangerous_set(g, &Scope::outside(&self.b), &self.weights(g), ctx)?;
        let outside = self.b.complement();

        // (U1)
        let mut a0 = report.a0;
        if outside.iter().all(|v| self.is_full(g, v)) {
            self.b = VertexSet::full(n);
            a0 = None;
        } else if let Some(a) = a0.as_ref().filter(|a| a.iter().all(|v| self.is_full(g, v))) {
            self.b.union_with(a);
            if self.dangerous_now(g) {
                return Err(StrategyError::Invariant(format!(
                    "t={t}: D(B,t-1) non-empty after absorbing A0 = {a:?}"
                )));
            }
            a0 = None;
        }

        let edge = if self.b.len() == n {
            // (S1)
            self.chooser.legal_edge(pos)?
        } else {
            let pool = a0.unwrap_or_else(|| self.b.complement());
            let rule = if pool.len() < outside.len() { "S3" } else { "S2" };
            let candidates = self.group_edges_in(g, &pool);
            self.chooser.pick(&candidates).ok_or_else(|| {
                StrategyError::Invariant(format!("t={t}: rule {rule} found no group edge in {pool:?}"))
            })?
        };
        // (I3)
        if !pos.is_legal(edge) {
            return Err(StrategyError::Invariant(format!("t={t}: chosen edge {edge} is illegal")));
        }
        Ok(edge)
    }

    fn observe(&mut self, mv: &Move, pos: &Position) -> Result<(), StrategyError> {
        self.last = Some(mv.edge);
        let g = pos.graph();
        // (I2)
        if mv.player == Player::Maxi && self.dangerous_now(g) {
            return Err(StrategyError::Invariant(format!(
                "t={}: D(B(t),t) non-empty after Maxi's move",
                mv.t
            )));
        }
        // (I4)
        let open = (0..g.n()).any(|v| !self.b.contains(v) && !self.is_full(g, v));
        if open && pos.is_saturated() {
            return Err(StrategyError::Invariant(format!(
                "t={}: saturated with a non-full vertex outside B",
                mv.t
            )));
        }
        debug_assert_eq!(pos.k(), self.config.k);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;

    fn strategy(n: usize, k: usize, first: Player) -> (Game, CliqueStrategy) {
        let cfg = GameConfig::new(n, k, first).unwrap();
        (Game::new(cfg), CliqueStrategy::new(cfg, Chooser::lowest()).unwrap())
    }

    fn step(game: &mut Game, s: &mut CliqueStrategy, e: Edge) {
        let mv = game.play(e).unwrap();
        s.observe(&mv, game.position()).unwrap();
    }

    #[test]
    fn opens_inside_first_group() {
        let (game, mut s) = strategy(6, 3, Player::Maxi);
        assert_eq!(s.choose(game.position(), 1).unwrap(), Edge::new(0, 1));
    }

    #[test]
    fn answers_cross_group_edge_with_group_partner() {
        let (mut game, mut s) = strategy(6, 3, Player::Mini);
        step(&mut game, &mut s, Edge::new(2, 4));
        assert_eq!(s.choose(game.position(), 2).unwrap(), Edge::new(2, 3));
    }

    #[test]
    fn groups_follow_index_chunks() {
        let (_, s) = strategy(7, 5, Player::Maxi);
        assert_eq!(s.m(), 3);
        let sizes: Vec<_> = s.groups().iter().map(VertexSet::len).collect();
        assert_eq!(sizes, [3, 3, 1]);
    }

    #[test]
    fn all_full_falls_back_to_smallest_legal_edge() {
        let (mut game, mut s) = strategy(4, 3, Player::Maxi);
        for e in [Edge::new(0, 1), Edge::new(2, 3)] {
            step(&mut game, &mut s, e);
        }
        let e = s.choose(game.position(), 3).unwrap();
        assert_eq!(s.b().len(), 4);
        assert_eq!(e, Edge::new(0, 2));
    }

    #[test]
    fn rejects_k2() {
        let cfg = GameConfig::new(4, 2, Player::Maxi).unwrap();
        assert!(CliqueStrategy::new(cfg, Chooser::lowest()).is_err());
    }
}
