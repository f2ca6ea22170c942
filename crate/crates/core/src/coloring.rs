//! Exact k-colorability, the coloring-extension criterion, and the
//! incremental legal-move cache that serves as the game's rules engine.

use thiserror::Error;

use crate::flow::{FlowNetwork, INF};
use crate::graph::{binom2, Edge, Graph, Vertex, VertexSet};

/// A proper assignment of classes `0..k` to every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    colors: Vec<u16>,
}

impl Coloring {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v] as usize
    }

    pub fn colors(&self) -> impl Iterator<Item = usize> + '_ {
        self.colors.iter().map(|&c| c as usize)
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && self.colors.iter().all(|&c| (c as usize) < self.k)
            && g.edges().all(|e| self.colors[e.u] != self.colors[e.v])
    }
}

/// A proper `k`-coloring of `g`, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.n();
    if k == 0 {
        return (n == 0).then(|| Coloring { k, colors: vec![] });
    }
    if k >= n {
        return Some(Coloring {
            k,
            colors: (0..n as u16).collect(),
        });
    }
    assert!(k <= u16::MAX as usize, "color budget {k} too large");

    // Alternate peeling below degree k with removing dominated vertices
    // (`x ≁ y`, `N(x) ⊆ N(y)`: `x` can copy `y`'s color). Both are undone in
    // reverse order after the core is colored.
    let mut present = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut undo: Vec<Reduction> = Vec::new();
    let remove = |v: Vertex, present: &mut VertexSet, deg: &mut [usize]| {
        present.remove(v);
        for u in g.neighbor_iter(v) {
            deg[u] -= 1;
        }
    };
    loop {
        let mut changed = false;
        loop {
            let Some(v) = present.iter().find(|&v| deg[v] < k) else { break };
            remove(v, &mut present, &mut deg);
            undo.push(Reduction::Peeled(v));
            changed = true;
        }
        let verts: Vec<Vertex> = present.iter().collect();
        for &x in &verts {
            if !present.contains(x) {
                continue;
            }
            let nx = g.neighbors(x).intersection(&present);
            let host = present
                .iter()
                .find(|&y| y != x && !g.has_edge(x, y) && nx.is_subset(&g.neighbors(y)));
            if let Some(y) = host {
                remove(x, &mut present, &mut deg);
                undo.push(Reduction::Dominated(x, y));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut colors = vec![u16::MAX; n];
    if !present.is_empty() {
        let (sub, map) = g.induced(&present);
        let local = CoreSearch::new(&sub, k).solve()?;
        for (i, &v) in map.iter().enumerate() {
            colors[v] = local[i];
        }
    }
    let mut used = vec![false; k];
    for step in undo.iter().rev() {
        match *step {
            Reduction::Dominated(x, y) => colors[x] = colors[y],
            Reduction::Peeled(v) => {
                used.iter_mut().for_each(|x| *x = false);
                for u in g.neighbor_iter(v) {
                    if colors[u] != u16::MAX {
                        used[colors[u] as usize] = true;
                    }
                }
                let c = used.iter().position(|&x| !x).expect("peeled vertex has a free color");
                colors[v] = c as u16;
            }
        }
    }
    Some(Coloring { k, colors })
}

#[derive(Clone, Copy, Debug)]
enum Reduction {
    Peeled(Vertex),
    /// The first vertex copies the second's color.
    Dominated(Vertex, Vertex),
}

pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    k_coloring(g, k).is_some()
}

/// DSATUR backtracking on a graph whose minimum degree is at least `k`.
struct CoreSearch<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<u16>,
    // counts[v * k + c]: colored neighbours of v holding color c
    counts: Vec<u16>,
    saturation: Vec<usize>,
}

impl<'a> CoreSearch<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.n();
        Self {
            g,
            k,
            colors: vec![u16::MAX; n],
            counts: vec![0; n * k],
            saturation: vec![0; n],
        }
    }

    fn assign(&mut self, v: Vertex, c: u16) {
        self.colors[v] = c;
        for u in self.g.neighbor_iter(v) {
            let slot = &mut self.counts[u * self.k + c as usize];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.colors[v] as usize;
        self.colors[v] = u16::MAX;
        for u in self.g.neighbor_iter(v) {
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn greedy_clique(&self) -> Vec<Vertex> {
        let n = self.g.n();
        let mut by_degree: Vec<Vertex> = (0..n).collect();
        by_degree.sort_by_key(|&v| std::cmp::Reverse(self.g.degree(v)));
        let mut best = Vec::new();
        for &seed in by_degree.iter().take(8) {
            let mut clique = vec![seed];
            let mut cand = self.g.neighbors(seed);
            while let Some(v) = cand
                .iter()
                .max_by_key(|&v| (self.g.degree_into(v, &cand), std::cmp::Reverse(v)))
            {
                clique.push(v);
                cand = cand.intersection(&self.g.neighbors(v));
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    fn solve(mut self) -> Option<Vec<u16>> {
        let clique = self.greedy_clique();
        if clique.len() > self.k {
            return None;
        }
        for (i, &v) in clique.iter().enumerate() {
            self.assign(v, i as u16);
        }
        let remaining = self.g.n() - clique.len();
        let used = clique.len();
        self.search(remaining, used).then_some(self.colors)
    }

    fn search(&mut self, remaining: usize, used: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let n = self.g.n();
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..n {
            if self.colors[v] != u16::MAX {
                continue;
            }
            let sat = self.saturation[v];
            if sat >= self.k {
                return false;
            }
            let cand = (sat, self.g.degree(v));
            if pick == usize::MAX || cand > key {
                pick = v;
                key = cand;
            }
        }
        // Colors above `used` are interchangeable; only the first is tried.
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.counts[pick * self.k + c] != 0 {
                continue;
            }
            self.assign(pick, c as u16);
            if self.search(remaining - 1, used.max(c + 1)) {
                return true;
            }
            self.unassign(pick);
        }
        false
    }
}

/// Extension criterion: `G[B]` is `k`-colorable and every non-empty `A ⊆ V∖B`
/// satisfies `2|E[A]| + |E[A,B]| < k|A|`. Sufficient for `k`-colorability.
pub fn lemma21_extendable(g: &Graph, b: &VertexSet, k: usize) -> bool {
    let (gb, _) = g.induced(b);
    is_k_colorable(&gb, k) && !lemma21_violated(g, b, k)
}

/// Whether some non-empty `A ⊆ V∖B` has `2|E[A]| + |E[A,B]| >= k|A|`.
///
/// Max-closure formulation scaled by `n+1` so that only non-empty sets can
/// reach a positive value: profit `2(n+1)` per edge inside `A`, cost
/// `(n+1)(k - deg_B(v)) - 1` per vertex.
pub(crate) fn lemma21_violated(g: &Graph, b: &VertexSet, k: usize) -> bool {
    let n = g.n();
    let free = b.complement();
    let verts: Vec<Vertex> = free.iter().collect();
    if verts.is_empty() {
        return false;
    }
    let scale = n as i64 + 1;
    let mut index = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let inner: Vec<Edge> = g
        .edges()
        .filter(|e| free.contains(e.u) && free.contains(e.v))
        .collect();
    let s = verts.len() + inner.len();
    let t = s + 1;
    let mut net = FlowNetwork::new(t + 1);
    let mut positive = 0i64;
    for (j, e) in inner.iter().enumerate() {
        let node = verts.len() + j;
        let profit = 2 * scale;
        positive += profit;
        net.add_arc(s, node, profit);
        net.add_arc(node, index[e.u], INF);
        net.add_arc(node, index[e.v], INF);
    }
    for (i, &v) in verts.iter().enumerate() {
        let cost = scale * (k as i64 - g.degree_into(v, b) as i64) - 1;
        if cost > 0 {
            net.add_arc(i, t, cost);
        } else {
            positive -= cost;
            net.add_arc(s, i, -cost);
        }
    }
    positive - net.max_flow(s, t) > 0
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("vertex out of range in {0}")]
    OutOfRange(Edge),
    #[error("edge present: {0}")]
    EdgePresent(Edge),
    #[error("edge {edge} breaks {k}-colorability")]
    BreaksColorability { edge: Edge, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not {k}-colorable")]
pub struct NotColorable {
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairStatus {
    Present,
    Illegal,
    /// Witness slot whose coloring separates the pair.
    Legal(u32),
}

/// A `k`-colorable graph together with an exact, incrementally maintained
/// classification of every vertex pair as present, legal or illegal.
///
/// Every legal pair points at a stored proper coloring of the current graph
/// that gives its endpoints different colors. Illegality is permanent
/// because adding edges never restores colorability.
#[derive(Clone)]
pub struct Position {
    k: usize,
    graph: Graph,
    status: Vec<PairStatus>,
    witnesses: Vec<Option<Vec<u16>>>,
    legal: usize,
}

impl Position {
    pub fn empty(n: usize, k: usize) -> Self {
        Self::new(Graph::new(n), k).expect("the empty graph is colorable")
    }

    pub fn new(graph: Graph, k: usize) -> Result<Self, NotColorable> {
        let base = k_coloring(&graph, k).ok_or(NotColorable { k })?;
        let n = graph.n();
        let mut pos = Self {
            k,
            status: vec![PairStatus::Illegal; n * n],
            witnesses: vec![Some(base.colors)],
            graph,
            legal: 0,
        };
        for u in 0..n {
            for v in u + 1..n {
                if pos.graph.has_edge(u, v) {
                    pos.status[u * n + v] = PairStatus::Present;
                } else {
                    pos.status[u * n + v] = pos.classify(u, v);
                    if matches!(pos.status[u * n + v], PairStatus::Legal(_)) {
                        pos.legal += 1;
                    }
                }
            }
        }
        Ok(pos)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_legal(&self, e: Edge) -> bool {
        e.v < self.n() && matches!(self.status[e.u * self.n() + e.v], PairStatus::Legal(_))
    }

    pub fn legal_count(&self) -> usize {
        self.legal
    }

    pub fn is_saturated(&self) -> bool {
        self.legal == 0
    }

    /// Legal moves in lexicographic order.
    pub fn legal_moves(&self) -> Vec<Edge> {
        self.legal_iter().collect()
    }

    pub fn legal_iter(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| matches!(self.status[u * n + v], PairStatus::Legal(_)))
                .map(move |v| Edge { u, v })
        })
    }

    pub fn first_legal(&self) -> Option<Edge> {
        self.legal_iter().next()
    }

    /// Why `e` cannot be played, or `Ok` if it can.
    pub fn check(&self, e: Edge) -> Result<(), IllegalMove> {
        let n = self.n();
        if e.v >= n {
            return Err(IllegalMove::OutOfRange(e));
        }
        match self.status[e.u * n + e.v] {
            PairStatus::Present => Err(IllegalMove::EdgePresent(e)),
            PairStatus::Illegal => Err(IllegalMove::BreaksColorability { edge: e, k: self.k }),
            PairStatus::Legal(_) => Ok(()),
        }
    }

    /// A proper coloring of the current graph.
    pub fn witness(&self) -> Coloring {
        let colors = self
            .witnesses
            .iter()
            .flatten()
            .next()
            .cloned()
            .unwrap_or_else(|| k_coloring(&self.graph, self.k).expect("position is colorable").colors);
        Coloring { k: self.k, colors }
    }

    pub fn play(&mut self, e: Edge) -> Result<(), IllegalMove> {
        self.check(e)?;
        let n = self.n();
        let (a, b) = (e.u, e.v);
        self.graph
            .add_edge(e)
            .expect("checked pair is absent and in range");
        self.status[a * n + b] = PairStatus::Present;
        self.legal -= 1;

        for slot in self.witnesses.iter_mut() {
            let Some(w) = slot else { continue };
            if w[a] == w[b] && !repair(&self.graph, self.k, w, a, b) {
                *slot = None;
            }
        }

        let mut refs = vec![0u32; self.witnesses.len()];
        for u in 0..n {
            for v in u + 1..n {
                let idx = u * n + v;
                let PairStatus::Legal(id) = self.status[idx] else {
                    continue;
                };
                let still = self.witnesses[id as usize]
                    .as_ref()
                    .is_some_and(|w| w[u] != w[v]);
                if still {
                    refs[id as usize] += 1;
                    continue;
                }
                let fresh = self.classify(u, v);
                self.status[idx] = fresh;
                match fresh {
                    PairStatus::Legal(id) => {
                        if id as usize >= refs.len() {
                            refs.resize(id as usize + 1, 0);
                        }
                        refs[id as usize] += 1;
                    }
                    _ => self.legal -= 1,
                }
            }
        }
        // Unreferenced witnesses only slow down later lookups.
        for (slot, &r) in self.witnesses.iter_mut().zip(&refs) {
            if r == 0 {
                *slot = None;
            }
        }
        Ok(())
    }

    /// Decide a pair that no longer has a valid witness.
    fn classify(&mut self, u: Vertex, v: Vertex) -> PairStatus {
        for (id, w) in self.witnesses.iter().enumerate() {
            if let Some(w) = w {
                if w[u] != w[v] {
                    return PairStatus::Legal(id as u32);
                }
            }
        }
        let mut with = self.graph.clone();
        with.add_edge(Edge::new(u, v)).expect("pair is absent");
        let mut found = None;
        for w in self.witnesses.iter().flatten() {
            let mut c = w.clone();
            if repair(&with, self.k, &mut c, u, v) {
                found = Some(c);
                break;
            }
        }
        let found = found.or_else(|| k_coloring(&with, self.k).map(|c| c.colors));
        match found {
            Some(c) => {
                let id = match self.witnesses.iter().position(Option::is_none) {
                    Some(free) => {
                        self.witnesses[free] = Some(c);
                        free
                    }
                    None => {
                        self.witnesses.push(Some(c));
                        self.witnesses.len() - 1
                    }
                };
                PairStatus::Legal(id as u32)
            }
            None => PairStatus::Illegal,
        }
    }
}

/// Recolor `a` or `b` to a free color so that `w` is proper on `g`, which
/// contains the edge `ab` and is otherwise properly colored by `w`.
fn repair(g: &Graph, k: usize, w: &mut [u16], a: Vertex, b: Vertex) -> bool {
    for x in [a, b] {
        let mut used = vec![false; k];
        for y in g.neighbor_iter(x) {
            used[w[y] as usize] = true;
        }
        if let Some(c) = used.iter().position(|&f| !f) {
            w[x] = c as u16;
            return true;
        }
    }
    false
}

/// Non-edges `e` with `g + e` still `k`-colorable, lexicographically sorted.
/// Empty when `g` itself is not `k`-colorable.
pub fn legal_moves(g: &Graph, k: usize) -> Vec<Edge> {
    match Position::new(g.clone(), k) {
        Ok(pos) => pos.legal_moves(),
        Err(_) => Vec::new(),
    }
}

/// A `k`-colorable graph to which no edge can be added.
///
/// Such a graph is complete multipartite with exactly `k` classes, or
/// complete.
pub fn is_saturated(g: &Graph, k: usize) -> bool {
    match g.complete_multipartite_parts() {
        Some(parts) => parts.len() <= k && (parts.len() == k || g.edge_count() == binom2(g.n())),
        None => false,
    }
}
