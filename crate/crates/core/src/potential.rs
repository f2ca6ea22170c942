//! The potential `φ(A,B) = |E[A]| + |E[A,B]|` and the dangerous-set search
//! shared by the clique and star strategies.
//!
//! A query fixes a ground set `U` (the candidate sets `A ⊆ U`), a cut set
//! `C` disjoint from `U` (edges from `A` into `C` count towards `φ`), and
//! additive weights `w`. A violator is a non-empty `A ⊆ U` with
//! `w(A) < φ(A, C)`.
//!
//! Deficiency `φ(A,C) - w(A)` is supermodular in `A`, so its maximizers form
//! a lattice. The max-flow below assigns every counted edge to an endpoint
//! in `U` with vertex capacities `w`; its min cut value is
//! `total - max_A deficiency`, and the residual-reachable vertices form the
//! least maximizer.

use thiserror::Error;

use crate::flow::{FlowNetwork, INF};
use crate::graph::{Edge, Graph, GraphError, Vertex, VertexSet};

/// Ground sets up to this size are searched by subset enumeration.
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("weights cover {got} vertices, graph has {n}")]
    Weights { got: usize, n: usize },
    #[error("lemma-context query broke its structure: {0}")]
    LemmaContext(String),
}

/// `|E[A]| + |E[A,B]|`.
pub fn phi(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize, GraphError> {
    let (inner, cut) = g.induced_and_cut_counts(a, b)?;
    Ok(inner + cut)
}

/// Ground and cut sets of a dangerous-set query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    pub ground: VertexSet,
    pub cut: VertexSet,
}

impl Scope {
    pub fn new(ground: VertexSet, cut: VertexSet) -> Result<Self, GraphError> {
        if let Some(v) = ground.intersection(&cut).first() {
            return Err(GraphError::Overlap(v));
        }
        Ok(Self { ground, cut })
    }

    /// `U = V∖B`, `C = B`.
    pub fn outside(b: &VertexSet) -> Self {
        Self {
            ground: b.complement(),
            cut: b.clone(),
        }
    }

    /// Vertices of `U` whose sets gained potential through `e`: both
    /// endpoints if `e ⊆ U`, the `U`-endpoint if the other lies in `C`.
    pub fn mandatory(&self, e: Edge) -> Option<VertexSet> {
        let (iu, iv) = (self.ground.contains(e.u), self.ground.contains(e.v));
        let n = self.ground.universe();
        match (iu, iv) {
            (true, true) => Some(VertexSet::from_vertices(n, [e.u, e.v])),
            (true, false) if self.cut.contains(e.v) => Some(VertexSet::from_vertices(n, [e.u])),
            (false, true) if self.cut.contains(e.u) => Some(VertexSet::from_vertices(n, [e.v])),
            _ => None,
        }
    }
}

/// How much the caller knows about the query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryContext {
    /// No structural assumption.
    General,
    /// The position had no violator before `Edge` was added (weights may
    /// only have grown). Violators then all contain the edge's mandatory
    /// endpoints, have deficit exactly one, and are closed under
    /// intersection; these facts are asserted.
    AfterEdge(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DangerousSetReport {
    /// Intersection of all violators; `None` when no violator exists.
    pub a0: Option<VertexSet>,
    /// `φ(A0,C) - w(A0)`; zero when nothing was found.
    pub deficit: i64,
}

impl DangerousSetReport {
    pub fn found(&self) -> bool {
        self.a0.is_some()
    }

    fn none() -> Self {
        Self { a0: None, deficit: 0 }
    }
}

fn deficit_of(g: &Graph, scope: &Scope, w: &[usize], a: &VertexSet) -> i64 {
    let (inner, cut) = g.induced_and_cut_counts_unchecked(a, &scope.cut);
    (inner + cut) as i64 - a.iter().map(|v| w[v] as i64).sum::<i64>()
}

fn check_weights(g: &Graph, w: &[usize]) -> Result<(), PotentialError> {
    if w.len() != g.n() {
        return Err(PotentialError::Weights {
            got: w.len(),
            n: g.n(),
        });
    }
    Ok(())
}

/// Hall-type feasibility test: true iff some violator exists.
pub fn has_dangerous_set_flow(g: &Graph, scope: &Scope, w: &[usize]) -> bool {
    max_deficiency(g, scope, w).0 > 0
}

/// `(max_A deficiency, least maximizer)` over `A ⊆ U`, including `A = ∅`.
pub fn max_deficiency(g: &Graph, scope: &Scope, w: &[usize]) -> (i64, VertexSet) {
    let n = g.n();
    let verts: Vec<Vertex> = scope.ground.iter().collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let inner: Vec<Edge> = g
        .edges()
        .filter(|e| scope.ground.contains(e.u) && scope.ground.contains(e.v))
        .collect();
    let s = verts.len() + inner.len();
    let t = s + 1;
    let mut net = FlowNetwork::new(t + 1);
    let mut total = inner.len() as i64;
    for (j, e) in inner.iter().enumerate() {
        let node = verts.len() + j;
        net.add_arc(s, node, 1);
        net.add_arc(node, index[e.u], INF);
        net.add_arc(node, index[e.v], INF);
    }
    for (i, &v) in verts.iter().enumerate() {
        let cd = g.degree_into(v, &scope.cut) as i64;
        if cd > 0 {
            total += cd;
            net.add_arc(s, i, cd);
        }
        if w[v] > 0 {
            net.add_arc(i, t, w[v] as i64);
        }
    }
    let deficiency = total - net.max_flow(s, t);
    let reach = net.residual_reachable(s);
    let least = VertexSet::from_vertices(
        n,
        verts.iter().enumerate().filter(|(i, _)| reach[*i]).map(|(_, &v)| v),
    );
    (deficiency, least)
}

/// Search for the violators of `scope` under weights `w` and report their
/// intersection `A0`.
pub fn find_min_dangerous_set(
    g: &Graph,
    scope: &Scope,
    w: &[usize],
    ctx: QueryContext,
) -> Result<DangerousSetReport, PotentialError> {
    check_weights(g, w)?;
    if let Some(v) = scope.ground.intersection(&scope.cut).first() {
        return Err(GraphError::Overlap(v).into());
    }
    match ctx {
        QueryContext::General => Ok(if scope.ground.len() <= ENUMERATION_LIMIT {
            enumerate(g, scope, w, None)
        } else {
            general_flow(g, scope, w)
        }),
        QueryContext::AfterEdge(e) => {
            let Some(mandatory) = scope.mandatory(e) else {
                return Ok(DangerousSetReport::none());
            };
            let report = if scope.ground.len() <= ENUMERATION_LIMIT {
                let report = enumerate(g, scope, w, Some(&mandatory));
                if report.found() && report.deficit != 1 {
                    return Err(PotentialError::LemmaContext(format!(
                        "intersection {:?} has deficit {}",
                        report.a0, report.deficit
                    )));
                }
                report
            } else {
                let (d, least) = max_deficiency(g, scope, w);
                if d <= 0 {
                    DangerousSetReport::none()
                } else if d != 1 {
                    return Err(PotentialError::LemmaContext(format!(
                        "maximum deficit {d}, expected 1"
                    )));
                } else {
                    DangerousSetReport {
                        a0: Some(least),
                        deficit: 1,
                    }
                }
            };
            if let Some(a0) = &report.a0 {
                if !mandatory.is_subset(a0) {
                    return Err(PotentialError::LemmaContext(format!(
                        "A0 {a0:?} misses the endpoints {mandatory:?} of the new edge"
                    )));
                }
            }
            Ok(report)
        }
    }
}

/// Exhaustive search over subsets of the ground set, optionally restricted
/// to supersets of `required`. In the restricted mode every violator must
/// have deficit one; a larger deficit is reported with the intersection.
fn enumerate(
    g: &Graph,
    scope: &Scope,
    w: &[usize],
    required: Option<&VertexSet>,
) -> DangerousSetReport {
    let verts: Vec<Vertex> = scope.ground.iter().collect();
    let m = verts.len();
    debug_assert!(m <= 20);
    let mut adj = vec![0u32; m];
    let mut cut_deg = vec![0i64; m];
    let mut req_mask = 0u32;
    for (i, &v) in verts.iter().enumerate() {
        for (j, &u) in verts.iter().enumerate() {
            if g.has_edge(u, v) {
                adj[i] |= 1 << j;
            }
        }
        cut_deg[i] = g.degree_into(v, &scope.cut) as i64 - w[v] as i64;
        if required.is_some_and(|r| r.contains(v)) {
            req_mask |= 1 << i;
        }
    }
    let mut meet = u32::MAX;
    let mut found = false;
    let mut worst = 0i64;
    for mask in 1u32..(1 << m) {
        if mask & req_mask != req_mask {
            continue;
        }
        let mut twice_inner = 0i64;
        let mut rest = 0i64;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            twice_inner += (adj[i] & mask).count_ones() as i64;
            rest += cut_deg[i];
        }
        let d = twice_inner / 2 + rest;
        if d > 0 {
            found = true;
            meet &= mask;
            worst = worst.max(d);
        }
    }
    if !found {
        return DangerousSetReport::none();
    }
    let a0 = VertexSet::from_vertices(
        g.n(),
        (0..m).filter(|&i| meet >> i & 1 == 1).map(|i| verts[i]),
    );
    let mut deficit = deficit_of(g, scope, w, &a0);
    if required.is_some() && worst > 1 {
        deficit = worst;
    }
    DangerousSetReport {
        a0: Some(a0),
        deficit,
    }
}

/// Exact intersection of all violators: `v` lies in every violator iff no
/// violator exists once `v` is removed from the ground set.
fn general_flow(g: &Graph, scope: &Scope, w: &[usize]) -> DangerousSetReport {
    if !has_dangerous_set_flow(g, scope, w) {
        return DangerousSetReport::none();
    }
    let mut a0 = VertexSet::new(g.n());
    for v in scope.ground.iter() {
        let mut ground = scope.ground.clone();
        ground.remove(v);
        let sub = Scope {
            ground,
            cut: scope.cut.clone(),
        };
        if !has_dangerous_set_flow(g, &sub, w) {
            a0.insert(v);
        }
    }
    let deficit = deficit_of(g, scope, w, &a0);
    DangerousSetReport {
        a0: Some(a0),
        deficit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[Vertex]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn phi_examples() {
        let empty = Graph::new(4);
        assert_eq!(phi(&empty, &set(4, &[0, 1]), &set(4, &[2])).unwrap(), 0);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(phi(&tri, &set(3, &[0, 1]), &set(3, &[2])).unwrap(), 3);
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(phi(&star, &set(5, &[1, 2, 3, 4]), &set(5, &[0])).unwrap(), 4);
        assert!(phi(&tri, &set(3, &[0]), &set(3, &[0])).is_err());
    }

    #[test]
    fn dangerous_set_examples() {
        let n = 3;
        let none = VertexSet::new(n);
        let r = find_min_dangerous_set(&Graph::new(n), &Scope::outside(&none), &[0; 3], QueryContext::General)
            .unwrap();
        assert!(!r.found());

        let g = Graph::from_edges(n, [(0, 1)]).unwrap();
        for ctx in [QueryContext::General, QueryContext::AfterEdge(Edge::new(0, 1))] {
            let r = find_min_dangerous_set(&g, &Scope::outside(&none), &[0; 3], ctx).unwrap();
            assert_eq!(r.a0, Some(set(n, &[0, 1])));
            assert_eq!(r.deficit, 1);
        }

        let b = set(n, &[1]);
        let r = find_min_dangerous_set(&g, &Scope::outside(&b), &[0; 3], QueryContext::General).unwrap();
        assert_eq!(r.a0, Some(set(n, &[0])));
        assert_eq!(r.deficit, 1);
    }

    #[test]
    fn flow_examples() {
        let none = VertexSet::new(3);
        let e = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(has_dangerous_set_flow(&e, &Scope::outside(&none), &[0, 0, 0]));
        assert!(!has_dangerous_set_flow(&e, &Scope::outside(&none), &[1, 0, 0]));
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!has_dangerous_set_flow(&tri, &Scope::outside(&none), &[1, 1, 1]));
    }

    #[test]
    fn general_flow_matches_enumeration_on_a_fixed_instance() {
        // Two disjoint violators {0,1} and {2,3}: their intersection is empty.
        let g = Graph::from_edges(14, [(0, 1), (2, 3)]).unwrap();
        let scope = Scope::outside(&VertexSet::new(14));
        let w = vec![0; 14];
        let a = enumerate(&g, &scope, &w, None);
        let b = general_flow(&g, &scope, &w);
        assert_eq!(a.a0, Some(VertexSet::new(14)));
        assert_eq!(a, b);
    }

    #[test]
    fn lemma_context_rejects_double_deficit() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let scope = Scope::outside(&VertexSet::new(3));
        let r = find_min_dangerous_set(&g, &scope, &[0; 3], QueryContext::AfterEdge(Edge::new(1, 2)));
        assert!(matches!(r, Err(PotentialError::LemmaContext(_))));
    }
}
