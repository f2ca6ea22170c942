//! Mini's star strategy: designate `ℓ = ⌊(k-1)/3⌋` star vertices and
//! connect each of them to every other vertex.

use crate::coloring::{lemma21_violated, Position};
use crate::game::{GameConfig, Move, Player, Strategy, StrategyError};
use crate::graph::{Edge, Graph, VertexSet};
use crate::potential::{find_min_dangerous_set, has_dangerous_set_flow, QueryContext, Scope};

use super::Chooser;

#[derive(Clone, Debug)]
pub struct StarStrategy {
    config: GameConfig,
    chooser: Chooser,
    ell: usize,
    /// `S ⊆ B`; `S` induces a clique.
    s: VertexSet,
    b: VertexSet,
    last: Option<Edge>,
}

impl StarStrategy {
    pub fn new(config: GameConfig, chooser: Chooser) -> Self {
        let n = config.n;
        Self {
            config,
            chooser,
            ell: (config.k - 1) / 3,
            s: VertexSet::new(n),
            b: VertexSet::new(n),
            last: None,
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    /// `U = V∖B`, `C = B∖S`.
    fn scope(&self) -> Scope {
        Scope {
            ground: self.b.complement(),
            cut: self.b.difference(&self.s),
        }
    }

    /// `α(v,S,t) = |Γ_t(v) ∩ S|`.
    fn weights(&self, g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|v| g.degree_into(v, &self.s)).collect()
    }

    fn dangerous_now(&self, g: &Graph) -> bool {
        has_dangerous_set_flow(g, &self.scope(), &self.weights(g))
    }

    /// Non-edges between `pool` and `S`, ordered by the `pool` vertex.
    fn star_edges(&self, g: &Graph, pool: &VertexSet) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in pool.iter() {
            for v in self.s.iter().filter(|&v| !g.has_edge(u, v)) {
                out.push(Edge::new(u, v));
                if !self.chooser.is_seeded() {
                    return out;
                }
            }
        }
        out
    }

    fn saturates_star(&self, g: &Graph, z: &VertexSet) -> bool {
        z.iter().all(|u| self.s.iter().all(|v| g.has_edge(u, v)))
    }

    fn pick_vertex(&mut self, pool: &VertexSet) -> Option<usize> {
        self.chooser.pick(&pool.iter().collect::<Vec<_>>())
    }

    /// The update loop; returns `A0(B,S,t-1)` when the final `D` is non-empty.
    fn update(&mut self, g: &Graph, t: usize) -> Result<Option<VertexSet>, StrategyError> {
        let n = g.n();
        let ctx = self.last.map_or(QueryContext::General, QueryContext::AfterEdge);
        let mut a0 = find_min_dangerous_set(g, &self.scope(), &self.weights(g), ctx)?.a0;
        let mut z = a0.clone().unwrap_or_else(|| self.b.complement());
        let mut rounds = 0;
        while self.b.len() < n && self.saturates_star(g, &z) {
            rounds += 1;
            if rounds > 2 * n {
                return Err(StrategyError::Invariant(format!("t={t}: update loop exceeded 2n rounds")));
            }
            if z == self.b.complement() && self.s.len() == self.ell {
                self.b = VertexSet::full(n);
                break;
            }
            match &a0 {
                None => {
                    // (U1)
                    let v = self.pick_vertex(&self.b.complement()).expect("B != V");
                    self.s.insert(v);
                    self.b.insert(v);
                }
                Some(a) if self.s.len() == self.ell => {
                    // (U2)
                    self.b.union_with(a);
                }
                Some(a) => {
                    // (U3)
                    let v = self.pick_vertex(a).ok_or_else(|| {
                        StrategyError::Invariant(format!("t={t}: empty A0 in (U3)"))
                    })?;
                    self.s.insert(v);
                    self.b.insert(v);
                }
            }
            if self.dangerous_now(g) {
                return Err(StrategyError::Invariant(format!(
                    "t={t}: D(B,S,t-1) non-empty after an update"
                )));
            }
            a0 = None;
            z = self.b.complement();
        }
        Ok(a0)
    }

    /// `2|E[A]| + |E[A,B∖S]| < (k-ℓ)|A|` for every non-empty `A ⊆ V∖B`.
    fn reduced_criterion_holds(&self, g: &Graph) -> bool {
        let (h, map) = g.induced(&self.s.complement());
        let base = VertexSet::from_vertices(
            h.n(),
            map.iter().enumerate().filter(|(_, &v)| self.b.contains(v)).map(|(i, _)| i),
        );
        !lemma21_violated(&h, &base, self.config.k - self.ell)
    }
}

impl Strategy for StarStrategy {
    fn name(&self) -> String {
        "mini-star".into()
    }

    fn choose(&mut self, pos: &Position, t: usize) -> Result<Edge, StrategyError> {
        let g = pos.graph();
        let a0 = self.update(g, t)?;
        let edge = if self.b.len() == g.n() {
            // (S1)
            self.chooser.legal_edge(pos)?
        } else {
            // (S2) pools V∖B, (S3) pools A0.
            let pool = a0.unwrap_or_else(|| self.b.complement());
            let candidates = self.star_edges(g, &pool);
            self.chooser.pick(&candidates).ok_or_else(|| {
                StrategyError::Invariant(format!("t={t}: no star edge from {pool:?}"))
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
        if mv.player == Player::Mini {
            // (I2)
            if self.dangerous_now(g) {
                return Err(StrategyError::Invariant(format!(
                    "t={}: D(B,S,t) non-empty after Mini's move",
                    mv.t
                )));
            }
            if !self.reduced_criterion_holds(g) {
                return Err(StrategyError::Invariant(format!(
                    "t={}: (k-l)-colorability criterion fails on V∖S",
                    mv.t
                )));
            }
        }
        // (I4)
        let open = self.b.complement();
        if !self.saturates_star(g, &open) && pos.is_saturated() {
            return Err(StrategyError::Invariant(format!(
                "t={}: saturated with a star edge into V∖B missing",
                mv.t
            )));
        }
        Ok(())
    }
}
