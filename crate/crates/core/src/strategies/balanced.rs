//! Maxi at `k = 2`: keep the components of the bipartite position as
//! balanced as possible.

use std::collections::VecDeque;

use crate::coloring::Position;
use crate::game::{GameConfig, Strategy, StrategyError};
use crate::graph::{Edge, Graph, Vertex};

use super::Chooser;

#[derive(Clone, Debug)]
pub struct BalancedStrategy {
    label: String,
    chooser: Chooser,
}

/// A connected component with its two colour classes.
#[derive(Clone, Debug)]
struct Component {
    sides: [Vec<Vertex>; 2],
}

impl Component {
    fn size(&self) -> usize {
        self.sides[0].len() + self.sides[1].len()
    }

    fn imbalance(&self) -> usize {
        self.sides[0].len().abs_diff(self.sides[1].len())
    }

    fn larger(&self) -> &[Vertex] {
        if self.sides[0].len() >= self.sides[1].len() {
            &self.sides[0]
        } else {
            &self.sides[1]
        }
    }

    fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.sides.iter().flatten().copied()
    }
}

/// Components in order of their lowest vertex; `None` if `g` is not bipartite.
fn components(g: &Graph) -> Option<Vec<Component>> {
    let n = g.n();
    let mut side = vec![usize::MAX; n];
    let mut out = Vec::new();
    for root in 0..n {
        if side[root] != usize::MAX {
            continue;
        }
        let mut comp = Component {
            sides: [Vec::new(), Vec::new()],
        };
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            comp.sides[side[u]].push(u);
            for w in g.neighbor_iter(u) {
                if side[w] == usize::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
        comp.sides.iter_mut().for_each(|s| s.sort_unstable());
        out.push(comp);
    }
    Some(out)
}

fn cross(a: &[Vertex], b: &[Vertex], g: &Graph) -> Vec<Edge> {
    let mut out: Vec<Edge> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| Edge::new(x, y)))
        .filter(|e| !g.contains(*e))
        .collect();
    out.sort_unstable();
    out
}

impl BalancedStrategy {
    pub fn new(label: &str, _config: GameConfig, chooser: Chooser) -> Self {
        Self {
            label: label.to_string(),
            chooser,
        }
    }

    fn candidates(g: &Graph) -> Vec<Edge> {
        let Some(comps) = components(g) else {
            return Vec::new();
        };
        let isolated: Vec<Vertex> = comps.iter().filter(|c| c.size() == 1).map(|c| c.sides[0][0]).collect();
        let nontrivial: Vec<&Component> = comps.iter().filter(|c| c.size() > 1).collect();
        let mut lopsided: Vec<&Component> = nontrivial.iter().copied().filter(|c| c.imbalance() > 0).collect();
        // Most imbalanced first; the sort is stable so ties keep vertex order.
        lopsided.sort_by_key(|c| std::cmp::Reverse(c.imbalance()));

        if let (Some(c), false) = (lopsided.first(), isolated.is_empty()) {
            return cross(&isolated, c.larger(), g);
        }
        if lopsided.len() >= 2 {
            return cross(lopsided[0].larger(), lopsided[1].larger(), g);
        }
        let inner: Vec<Edge> = nontrivial
            .iter()
            .flat_map(|c| cross(&c.sides[0], &c.sides[1], g))
            .collect();
        if !inner.is_empty() {
            return inner;
        }
        if nontrivial.len() >= 2 {
            let a: Vec<Vertex> = nontrivial[0].vertices().collect();
            let b: Vec<Vertex> = nontrivial[1].vertices().collect();
            return cross(&a, &b, g);
        }
        if isolated.len() >= 2 {
            return vec![Edge::new(isolated[0], isolated[1])];
        }
        if let Some(&x) = isolated.first() {
            return (0..g.n()).filter(|&y| y != x).map(|y| Edge::new(x, y)).collect();
        }
        Vec::new()
    }
}

impl Strategy for BalancedStrategy {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn choose(&mut self, pos: &Position, _t: usize) -> Result<Edge, StrategyError> {
        let legal: Vec<Edge> = Self::candidates(pos.graph())
            .into_iter()
            .filter(|&e| pos.is_legal(e))
            .collect();
        match self.chooser.pick(&legal) {
            Some(e) => Ok(e),
            None => self.chooser.legal_edge(pos),
        }
    }
}
