//! Maxi's strategy for `k = 4`: cover the recently used vertices greedily
//! by vertex-disjoint cliques of size 4, 3 or 2.
//!
//! Clique `i` is born at a Mini time `t_i` and leaves the uncovered set
//! `W(i)`; `φ(i)` counts the edges of `G(t_i)` with an endpoint in `W(i)`.
//! Plans are re-read from the live graph on every turn, so edges Mini plays
//! into a target only shorten the construction.

use std::fmt;

use crate::coloring::Position;
use crate::game::{GameConfig, Move, Player, Strategy, StrategyError};
use crate::graph::{Edge, Graph, Vertex, VertexSet};

/// Construction that produced a clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// The opening triangle.
    Base,
    K3,
    K4,
    K2,
}

impl Lemma {
    /// Latest birth time relative to the previous one.
    fn time_bound(self) -> usize {
        match self {
            Lemma::Base | Lemma::K3 => 6,
            Lemma::K4 => 8,
            Lemma::K2 => 2,
        }
    }
}

/// The four conditions, one of which every clique after the first meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `φ ≤ 3`, triangle.
    I,
    /// `φ ≤ 5`, `K4`.
    II,
    /// `φ ≤ 4`, the previous clique is a `K4`.
    III,
    /// `φ ≤ 3`, the clique two back is a `K4`.
    IV,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::III => "(iii)",
            Condition::IV => "(iv)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueRecord {
    pub vertices: Vec<Vertex>,
    pub birth: usize,
    pub phi: usize,
    pub lemma: Lemma,
    pub condition: Condition,
    /// Born when the game ended on a Maxi move, so `birth` is Maxi's time.
    pub at_game_end: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FourColorReport {
    pub cliques: Vec<CliqueRecord>,
    /// Birth time of the clique after which `|W| < 5`.
    pub stop: Option<usize>,
}

impl FourColorReport {
    /// `a_s` for clique size `s`, counted over the whole collection.
    pub fn count(&self, size: usize) -> usize {
        self.cliques.iter().filter(|c| c.vertices.len() == size).count()
    }

    pub fn covered(&self) -> usize {
        self.cliques.iter().map(|c| c.vertices.len()).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cliques.iter().map(|c| c.vertices.len()).collect()
    }

    /// `2a₂ + 3a₃ + 4a₄ > n - 5` and `a₂ ≤ 2a₄`, at stop.
    pub fn accounting_holds(&self, n: usize) -> bool {
        self.stop.is_some() && self.covered() + 5 > n && self.count(2) <= 2 * self.count(4)
    }
}

#[derive(Clone, Debug)]
enum Target {
    K3 { x: Vertex, y: Vertex, z: Option<Vertex> },
    K4([Vertex; 4]),
    K2(Vertex, Vertex),
}

#[derive(Clone, Debug)]
struct Plan {
    target: Target,
    lemma: Lemma,
    condition: Condition,
    start: usize,
    start_phi: usize,
    /// Set for the `|W| = 5` endgame `K4`, which runs without the `|W| ≥ 6`
    /// precondition.
    endgame: bool,
}

impl Plan {
    fn vertices(&self) -> Option<Vec<Vertex>> {
        match self.target {
            Target::K3 { x, y, z } => z.map(|z| vec![x, y, z]),
            Target::K4(v) => Some(v.to_vec()),
            Target::K2(x, y) => Some(vec![x, y]),
        }
    }

    fn complete_in(&self, g: &Graph) -> Option<Vec<Vertex>> {
        let vs = self.vertices()?;
        let set = VertexSet::from_vertices(g.n(), vs.iter().copied());
        g.is_clique(&set).then_some(vs)
    }
}

fn missing_in(g: &Graph, vs: &[Vertex]) -> Option<Edge> {
    let mut edges: Vec<Edge> = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if !g.has_edge(a, b) {
                edges.push(Edge::new(a, b));
            }
        }
    }
    edges.into_iter().min()
}

/// Edges of `g` with an endpoint in `w`.
fn touching(g: &Graph, w: &VertexSet) -> usize {
    let inner = g.edges().filter(|e| w.contains(e.u) && w.contains(e.v)).count();
    w.iter().map(|v| g.degree(v)).sum::<usize>() - inner
}

fn edges_in(g: &Graph, w: &VertexSet) -> Vec<Edge> {
    g.edges().filter(|e| w.contains(e.u) && w.contains(e.v)).collect()
}

/// Edges of `E[W]` whose endpoints both have degree one in `g`.
fn isolated_edges(g: &Graph, w: &VertexSet) -> Vec<Edge> {
    edges_in(g, w)
        .into_iter()
        .filter(|e| g.degree(e.u) == 1 && g.degree(e.v) == 1)
        .collect()
}

fn triangle_in(g: &Graph, w: &VertexSet) -> Option<[Vertex; 3]> {
    for e in edges_in(g, w) {
        let common = g.neighbors(e.u).intersection(&g.neighbors(e.v)).intersection(w);
        let z = common.iter().find(|&z| z > e.v);
        if let Some(z) = z {
            return Some([e.u, e.v, z]);
        }
    }
    None
}

/// A path `x - y - z` inside `w`, lowest centre `y` first.
fn path_in(g: &Graph, w: &VertexSet) -> Option<(Vertex, Vertex, Vertex)> {
    w.iter().find_map(|y| {
        let mut nb = g.neighbors(y).intersection(w).iter().collect::<Vec<_>>().into_iter();
        match (nb.next(), nb.next()) {
            (Some(x), Some(z)) => Some((x, y, z)),
            _ => None,
        }
    })
}

/// Non-adjacent pair in `w` with the largest degree sum, lexicographically
/// first among ties.
fn heaviest_pair(g: &Graph, w: &VertexSet) -> Option<(Vertex, Vertex)> {
    let vs: Vec<Vertex> = w.iter().collect();
    let mut best: Option<(usize, Vertex, Vertex)> = None;
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            let s = g.degree(x) + g.degree(y);
            if !g.has_edge(x, y) && best.is_none_or(|(b, _, _)| s > b) {
                best = Some((s, x, y));
            }
        }
    }
    best.map(|(_, x, y)| (x, y))
}

/// Third triangle vertex: fewest edges left touching `W∖{x,y,z}`, then
/// largest degree, then lowest index.
fn pick_z(g: &Graph, w: &VertexSet, x: Vertex, y: Vertex) -> Option<Vertex> {
    let mut rest = w.clone();
    rest.remove(x);
    rest.remove(y);
    rest.iter().min_by_key(|&z| {
        let mut left = rest.clone();
        left.remove(z);
        (touching(g, &left), std::cmp::Reverse(g.degree(z)), z)
    })
}

/// Check the hypotheses of a clique construction at a birth time.
///
/// `w` is the uncovered set and `phi` its potential.
pub fn lemma_preconditions(lemma: Lemma, g: &Graph, w: &VertexSet, phi: usize) -> Result<(), StrategyError> {
    let fail = |what: String| Err(StrategyError::Precondition(format!("{lemma:?}: {what}")));
    match lemma {
        Lemma::Base => Ok(()),
        Lemma::K3 => {
            if phi > 3 {
                return fail(format!("phi = {phi} > 3"));
            }
            if w.len() < 4 {
                return fail(format!("|W| = {} < 4", w.len()));
            }
            let iso = isolated_edges(g, w).len();
            if iso > 1 {
                return fail(format!("{iso} isolated edges in E[W]"));
            }
            Ok(())
        }
        Lemma::K4 => {
            if w.len() < 6 {
                return fail(format!("|W| = {} < 6", w.len()));
            }
            if isolated_edges(g, w).len() < 2 {
                return fail("fewer than two isolated edges in E[W]".into());
            }
            Ok(())
        }
        Lemma::K2 => {
            if phi > 5 {
                return fail(format!("phi = {phi} > 5"));
            }
            if w.len() < 3 {
                return fail(format!("|W| = {} < 3", w.len()));
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug)]
pub struct FourColorStrategy {
    config: GameConfig,
    covered: VertexSet,
    plan: Option<Plan>,
    last_birth: usize,
    last_phi: usize,
    report: FourColorReport,
    first_mini_edge: Option<Edge>,
}

impl FourColorStrategy {
    pub fn new(config: GameConfig) -> Result<Self, StrategyError> {
        if config.k != 4 {
            return Err(StrategyError::Unsupported("maxi-4color needs k = 4".into()));
        }
        Ok(Self {
            config,
            covered: VertexSet::new(config.n),
            plan: None,
            last_birth: 0,
            last_phi: 0,
            report: FourColorReport::default(),
            first_mini_edge: None,
        })
    }

    pub fn report(&self) -> &FourColorReport {
        &self.report
    }

    fn stopped(&self) -> bool {
        self.report.stop.is_some()
    }

    fn uncovered(&self) -> VertexSet {
        self.covered.complement()
    }

    fn base_plan(&self, t: usize) -> Result<Plan, StrategyError> {
        let (x, y) = match self.config.first_player {
            Player::Maxi => (0, 1),
            Player::Mini => {
                let e = self.first_mini_edge.ok_or_else(|| {
                    StrategyError::Invariant(format!("t={t}: Mini's opening edge was not observed"))
                })?;
                (e.u, e.v)
            }
        };
        Ok(Plan {
            target: Target::K3 { x, y, z: None },
            lemma: Lemma::Base,
            condition: Condition::I,
            start: 0,
            start_phi: 0,
            endgame: false,
        })
    }

    fn record(&mut self, g: &Graph, plan: &Plan, vertices: Vec<Vertex>, birth: usize, at_game_end: bool) -> Result<(), StrategyError> {
        for &v in &vertices {
            if !self.covered.insert(v) {
                return Err(StrategyError::Invariant(format!("clique vertex {v} already covered")));
            }
        }
        let phi = touching(g, &self.uncovered());
        let (lemma, size) = (plan.lemma, vertices.len());
        let err = |what: String| Err(StrategyError::Invariant(format!("{lemma:?} clique born at {birth}: {what}")));

        if birth > plan.start + lemma.time_bound() {
            return err(format!("started at {}, bound {}", plan.start, lemma.time_bound()));
        }
        let phi_bound = match lemma {
            Lemma::Base if self.config.first_player == Player::Mini => 2,
            Lemma::Base | Lemma::K3 => 3,
            Lemma::K4 => plan.start_phi + 2,
            Lemma::K2 => plan.start_phi.saturating_sub(1).max(1),
        };
        if phi > phi_bound {
            return err(format!("phi = {phi} > {phi_bound}"));
        }
        let back = |j: usize| {
            let c = &self.report.cliques;
            c.len().checked_sub(j).map(|i| c[i].vertices.len())
        };
        let meets = match plan.condition {
            Condition::I => phi <= 3 && size == 3,
            Condition::II => phi <= 5 && size == 4,
            Condition::III => phi <= 4 && back(1) == Some(4),
            Condition::IV => phi <= 3 && back(2) == Some(4),
        };
        if !meets {
            return err(format!("condition {} fails with phi = {phi}", plan.condition));
        }
        self.report.cliques.push(CliqueRecord {
            vertices,
            birth,
            phi,
            lemma,
            condition: plan.condition,
            at_game_end,
        });
        self.last_birth = birth;
        self.last_phi = phi;
        if self.covered.len() + 5 > g.n() {
            self.report.stop = Some(birth);
        }
        Ok(())
    }

    /// Open the next construction at birth time `tau`, adopting cliques that
    /// already exist in `G(tau)`.
    fn dispatch(&mut self, g: &Graph, tau: usize) -> Result<(), StrategyError> {
        while !self.stopped() {
            let w = self.uncovered();
            let phi = self.last_phi;
            let previous = self.report.cliques.last().map(|c| c.condition).unwrap_or(Condition::I);
            let mk = |target, lemma, condition| Plan {
                target,
                lemma,
                condition,
                start: tau,
                start_phi: phi,
                endgame: false,
            };
            let plan = match previous {
                Condition::I | Condition::IV => {
                    let iso = isolated_edges(g, &w);
                    if iso.len() >= 2 {
                        let endgame = w.len() == 5;
                        if !endgame {
                            lemma_preconditions(Lemma::K4, g, &w, phi)?;
                        }
                        let mut vs = [iso[0].u, iso[0].v, iso[1].u, iso[1].v];
                        vs.sort_unstable();
                        Plan {
                            endgame,
                            ..mk(Target::K4(vs), Lemma::K4, Condition::II)
                        }
                    } else {
                        lemma_preconditions(Lemma::K3, g, &w, phi)?;
                        if let Some(tri) = triangle_in(g, &w) {
                            let plan = mk(Target::K3 { x: tri[0], y: tri[1], z: Some(tri[2]) }, Lemma::K3, Condition::I);
                            self.record(g, &plan, tri.to_vec(), tau, false)?;
                            continue;
                        }
                        let target = if let Some((x, y, z)) = path_in(g, &w) {
                            Target::K3 { x, y, z: Some(z) }
                        } else if let Some(&e) = edges_in(g, &w).first() {
                            Target::K3 { x: e.u, y: e.v, z: pick_z(g, &w, e.u, e.v) }
                        } else {
                            let (x, y) = heaviest_pair(g, &w).ok_or_else(|| {
                                StrategyError::Invariant(format!("t={tau}: no pair left in W"))
                            })?;
                            Target::K3 { x, y, z: None }
                        };
                        mk(target, Lemma::K3, Condition::I)
                    }
                }
                Condition::II | Condition::III => {
                    lemma_preconditions(Lemma::K2, g, &w, phi)?;
                    let condition = if previous == Condition::II { Condition::III } else { Condition::IV };
                    if let Some(&e) = edges_in(g, &w).first() {
                        let plan = mk(Target::K2(e.u, e.v), Lemma::K2, condition);
                        self.record(g, &plan, vec![e.u, e.v], tau, false)?;
                        continue;
                    }
                    let (x, y) = heaviest_pair(g, &w).ok_or_else(|| {
                        StrategyError::Invariant(format!("t={tau}: no pair left in W"))
                    })?;
                    mk(Target::K2(x, y), Lemma::K2, condition)
                }
            };
            self.plan = Some(plan);
            return Ok(());
        }
        Ok(())
    }

    fn next_edge(&mut self, g: &Graph, t: usize) -> Result<Edge, StrategyError> {
        let w = self.uncovered();
        let plan = self
            .plan
            .as_mut()
            .ok_or_else(|| StrategyError::Invariant(format!("t={t}: no construction in progress")))?;
        let edge = match &mut plan.target {
            Target::K3 { x, y, z } => {
                if !g.has_edge(*x, *y) {
                    Some(Edge::new(*x, *y))
                } else {
                    if z.is_none() {
                        *z = pick_z(g, &w, *x, *y);
                    }
                    z.and_then(|z| missing_in(g, &[*x, *y, z]))
                }
            }
            Target::K4(vs) => missing_in(g, vs),
            Target::K2(x, y) => missing_in(g, &[*x, *y]),
        };
        edge.ok_or_else(|| StrategyError::Invariant(format!("t={t}: plan {:?} has no edge to play", plan.target)))
    }
}

impl Strategy for FourColorStrategy {
    fn name(&self) -> String {
        "maxi-4color".into()
    }

    fn choose(&mut self, pos: &Position, t: usize) -> Result<Edge, StrategyError> {
        let g = pos.graph();
        if self.plan.is_none() && self.report.cliques.is_empty() && !self.stopped() {
            self.plan = Some(self.base_plan(t)?);
        }
        if let Some(plan) = self.plan.clone() {
            if let Some(vs) = plan.complete_in(g) {
                // `t - 1` is Mini's move, the first Mini time with the target complete.
                self.plan = None;
                self.record(g, &plan, vs, t - 1, false)?;
                self.dispatch(g, t - 1)?;
            }
        }
        if self.stopped() {
            return pos
                .first_legal()
                .ok_or_else(|| StrategyError::Invariant("asked to move on a saturated board".into()));
        }
        let edge = self.next_edge(g, t)?;
        if !pos.is_legal(edge) {
            let lemma = self.plan.as_ref().map(|p| (p.lemma, p.endgame));
            return Err(StrategyError::Invariant(format!("t={t}: planned edge {edge} of {lemma:?} is illegal")));
        }
        Ok(edge)
    }

    fn observe(&mut self, mv: &Move, pos: &Position) -> Result<(), StrategyError> {
        if mv.t == 1 && mv.player == Player::Mini {
            self.first_mini_edge = Some(mv.edge);
        }
        if pos.is_saturated() && !self.stopped() {
            if let Some(plan) = self.plan.take() {
                if let Some(vs) = plan.complete_in(pos.graph()) {
                    self.record(pos.graph(), &plan, vs, mv.t, mv.player == Player::Maxi)?;
                } else {
                    self.plan = Some(plan);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::run_game;
    use crate::strategies::{GreedyDegreeSum, RandomLegal};

    fn play(n: usize, first: Player, mini: &mut dyn Strategy) -> (FourColorReport, usize) {
        let cfg = GameConfig::new(n, 4, first).unwrap();
        let mut maxi = FourColorStrategy::new(cfg).unwrap();
        let tr = run_game(cfg, &mut maxi, mini).unwrap();
        (maxi.report().clone(), tr.score())
    }

    #[test]
    fn maxi_first_opens_with_triangle() {
        let (report, _) = play(12, Player::Maxi, &mut GreedyDegreeSum::new(false));
        let first = &report.cliques[0];
        assert_eq!(first.lemma, Lemma::Base);
        assert_eq!(first.birth, 6);
        assert!(first.phi <= 3);
        assert_eq!(&first.vertices[..2], &[0, 1]);
    }

    #[test]
    fn mini_first_extends_opening_edge() {
        let (report, _) = play(12, Player::Mini, &mut GreedyDegreeSum::new(false));
        let first = &report.cliques[0];
        assert_eq!(first.birth, 5);
        assert!(first.phi <= 2);
        assert_eq!(&first.vertices[..2], &[0, 1]);
    }

    #[test]
    fn accounting_against_random() {
        for seed in 0..6 {
            for first in [Player::Maxi, Player::Mini] {
                let (report, _) = play(16, first, &mut RandomLegal::new(seed));
                assert!(report.accounting_holds(16), "seed {seed} {first}: {report:?}");
            }
        }
    }

    #[test]
    fn k4_precondition_rejects_five_vertices() {
        let g = Graph::from_edges(8, [(3, 4), (5, 6)]).unwrap();
        let w = VertexSet::from_vertices(8, 3..8);
        assert!(matches!(
            lemma_preconditions(Lemma::K4, &g, &w, 2),
            Err(StrategyError::Precondition(_))
        ));
        let w6 = VertexSet::from_vertices(8, 2..8);
        assert!(lemma_preconditions(Lemma::K4, &g, &w6, 2).is_ok());
    }

    #[test]
    fn choice_of_z_avoids_survivors() {
        // Degrees tie, so the lowest-index rule alone would take 4 and leave
        // both counted edges touching W.
        let g = Graph::from_edges(8, [(4, 5), (0, 6)]).unwrap();
        let w = VertexSet::from_vertices(8, 2..8);
        assert_eq!(pick_z(&g, &w, 2, 3), Some(6));
    }
}
