//! Fixed-order simple graphs stored as bit rows, plus the closed-form
//! extremal quantities of the colorability game.
//!
//! Vertices are the dense integers `0..n`. Every row is `words(n)` 64-bit
//! words long, so the same representation serves the solver (n ≤ 16) and
//! the large bound sweeps (n in the hundreds).

use std::fmt;

use thiserror::Error;

/// A vertex is addressed by its position in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0} is already present")]
    DuplicateEdge(Edge),
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(Vertex),
    #[error("parameters out of range: {0}")]
    Parameter(String),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A subset of `0..n` backed by a word-parallel bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, vertices: I) -> Self {
        let mut s = Self::new(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(n: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(n));
        Self { n, bits }
    }

    /// Size of the ground set `0..n`.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        let had = self.contains(v);
        self.bits[v / 64] |= 1 << (v % 64);
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) -> bool {
        let had = self.contains(v);
        if had {
            self.bits[v / 64] &= !(1 << (v % 64));
        }
        had
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<Vertex> {
        for (i, &w) in self.bits.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        iter_bits(&self.bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.zip_with(self, |a, _| !a);
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    /// Size of the intersection with a raw adjacency row.
    #[inline]
    pub fn count_in_row(&self, row: &[u64]) -> usize {
        self.bits
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn trim(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = Vertex> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// An unordered vertex pair, stored with `u < v`. Ordering is lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Normalizes the endpoint order.
    ///
    /// # Panics
    /// Panics if `a == b`; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("self-loop")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Self { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Self { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// A simple graph on `0..n` with symmetric adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            rows: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::new(n);
        for (a, b) in edges {
            g.add_edge(Edge::try_new(a, b)?)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Adjacency row of `v` as raw words.
    #[inline]
    pub fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && b < self.n && self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        for x in [e.u, e.v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if e.u == e.v {
            return Err(GraphError::SelfLoop(e.u));
        }
        if self.has_edge(e.u, e.v) {
            return Err(GraphError::DuplicateEdge(e));
        }
        self.insert_unchecked(e.u, e.v);
        Ok(())
    }

    /// Copy of the graph with one more edge.
    pub fn with_edge(&self, e: Edge) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.add_edge(e)?;
        Ok(g)
    }

    fn insert_unchecked(&mut self, a: Vertex, b: Vertex) {
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
        self.edges += 1;
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `v` inside `set`.
    #[inline]
    pub fn degree_into(&self, v: Vertex, set: &VertexSet) -> usize {
        set.count_in_row(self.row(v))
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn neighbor_iter(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            iter_bits(self.row(u))
                .filter(move |&v| v > u)
                .map(move |v| Edge { u, v })
        })
    }

    /// Missing vertex pairs in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| Edge { u, v })
        })
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.len();
        set.iter().all(|v| self.degree_into(v, set) == k - 1)
    }

    /// Subgraph induced by `set`, relabelled in increasing vertex order.
    /// The second component maps new labels back to the original vertices.
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<Vertex>) {
        let map: Vec<Vertex> = set.iter().collect();
        let mut g = Graph::new(map.len());
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.insert_unchecked(i, j);
                }
            }
        }
        (g, map)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for e in self.non_edges() {
            g.insert_unchecked(e.u, e.v);
        }
        g
    }

    /// `(|E[A]|, |E[A,B]|)`: edges inside `a` and edges between `a` and `b`.
    pub fn induced_and_cut_counts(
        &self,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<(usize, usize), GraphError> {
        if let Some(v) = a.intersection(b).first() {
            return Err(GraphError::Overlap(v));
        }
        Ok(self.induced_and_cut_counts_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn induced_and_cut_counts_unchecked(
        &self,
        a: &VertexSet,
        b: &VertexSet,
    ) -> (usize, usize) {
        let mut twice_inner = 0;
        let mut cut = 0;
        for v in a.iter() {
            let row = self.row(v);
            twice_inner += a.count_in_row(row);
            cut += b.count_in_row(row);
        }
        (twice_inner / 2, cut)
    }

    /// If the graph is complete multipartite, its independent classes sorted
    /// by decreasing size (ties by smallest member).
    pub fn complete_multipartite_parts(&self) -> Option<Vec<VertexSet>> {
        let mut assigned = VertexSet::new(self.n);
        let mut parts = Vec::new();
        for v in 0..self.n {
            if assigned.contains(v) {
                continue;
            }
            let mut class = self.neighbors(v).complement();
            // Non-adjacency must be an equivalence relation.
            for u in class.iter() {
                let mut other = self.neighbors(u).complement();
                other.insert(u);
                if other != class {
                    return None;
                }
            }
            class.insert(v);
            assigned.union_with(&class);
            parts.push(class);
        }
        parts.sort_by(|a, b| b.len().cmp(&a.len()).then(a.first().cmp(&b.first())));
        Some(parts)
    }

    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        encode_graph6_size(self.n, &mut out);
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
        let text = text.trim_end_matches(['\n', '\r']);
        let (bytes, base) = match text.strip_prefix(">>graph6<<") {
            Some(rest) => (rest.as_bytes(), 10),
            None => (text.as_bytes(), 0),
        };
        let err = |offset: usize, reason: &str| GraphError::Graph6 {
            offset: base + offset,
            reason: reason.to_string(),
        };
        for (i, &c) in bytes.iter().enumerate() {
            if !(63..=126).contains(&c) {
                return Err(err(i, "byte outside the printable range 63..=126"));
            }
        }
        let (n, mut pos) = match bytes {
            [] => return Err(err(0, "empty input")),
            [126, 126, rest @ ..] => {
                if rest.len() < 6 {
                    return Err(err(2, "truncated 36-bit size field"));
                }
                (decode_sextets(&rest[..6]), 8)
            }
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(err(1, "truncated 18-bit size field"));
                }
                let n = decode_sextets(&rest[..3]);
                if n < 63 {
                    return Err(err(1, "non-canonical size field"));
                }
                (n, 4)
            }
            [c, ..] => ((*c - 63) as usize, 1),
        };
        let total_bits = binom2(n);
        let needed = total_bits.div_ceil(6);
        if bytes.len() - pos != needed {
            return Err(err(
                bytes.len().min(pos + needed),
                &format!("expected {needed} adjacency bytes, found {}", bytes.len() - pos),
            ));
        }
        let mut g = Graph::new(n);
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                let byte = bytes[pos + bit / 6] - 63;
                if byte >> (5 - bit % 6) & 1 == 1 {
                    g.insert_unchecked(i, j);
                }
                bit += 1;
            }
        }
        pos += total_bits / 6;
        if !total_bits.is_multiple_of(6) {
            let pad_mask = (1u8 << (6 - total_bits % 6)) - 1;
            if (bytes[pos] - 63) & pad_mask != 0 {
                return Err(err(pos, "non-zero padding bits"));
            }
        }
        Ok(g)
    }
}

fn encode_graph6_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn decode_sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &c| (acc << 6) | (c - 63) as usize)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {})", self.n, self.edges, self.to_graph6())
    }
}

/// Edge count of the balanced complete `k`-partite graph on `n` vertices,
/// i.e. the largest number of edges of a `k`-colorable graph.
pub fn turan_number(n: usize, k: usize) -> Result<usize, GraphError> {
    if k == 0 || k > n {
        return Err(GraphError::Parameter(format!(
            "turan_number needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let (q, r) = (n / k, n % k);
    Ok(binom2(n) - r * binom2(q + 1) - (k - r) * binom2(q))
}

/// `(k-1)(n-1) - C(k-1, 2)`: the fewest edges of a saturated `k`-colorable graph.
pub fn saturation_number(n: usize, k: usize) -> Result<usize, GraphError> {
    if k == 0 || k >= n {
        return Err(GraphError::Parameter(format!(
            "saturation_number needs 1 <= k < n, got n={n}, k={k}"
        )));
    }
    Ok((k - 1) * (n - 1) - binom2(k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn add_edge_counts_and_rejects_duplicates() {
        let mut g = Graph::new(3);
        g.add_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
        assert_eq!(
            g.add_edge(Edge::new(1, 0)),
            Err(GraphError::DuplicateEdge(Edge::new(0, 1)))
        );
        g.add_edge(Edge::new(1, 2)).unwrap();
        g.add_edge(Edge::new(0, 2)).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(
            g.add_edge(Edge::new(0, 3)),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(Edge::try_new(2, 2).is_err());
    }

    #[test]
    fn induced_and_cut_counts_examples() {
        let g = triangle();
        let a = VertexSet::from_vertices(3, [0, 1]);
        let b = VertexSet::from_vertices(3, [2]);
        assert_eq!(g.induced_and_cut_counts(&a, &b).unwrap(), (1, 2));
        assert_eq!(
            g.induced_and_cut_counts(&VertexSet::new(3), &b).unwrap(),
            (0, 0)
        );
        let single = VertexSet::from_vertices(3, [0]);
        assert_eq!(
            g.induced_and_cut_counts(&single, &VertexSet::new(3)).unwrap(),
            (0, 0)
        );
        assert_eq!(
            g.induced_and_cut_counts(&a, &a),
            Err(GraphError::Overlap(0))
        );
    }

    #[test]
    fn graph6_known_encodings() {
        // Reference strings produced by nauty's geng/showg conventions.
        assert_eq!(Graph::new(0).to_graph6(), "?");
        assert_eq!(triangle().to_graph6(), "Bw");
        assert_eq!(Graph::complete(4).to_graph6(), "C~");
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.to_graph6(), "Ch");
        for g in [Graph::new(0), triangle(), p4, Graph::complete(70)] {
            assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
        }
        assert_eq!(Graph::from_graph6(">>graph6<<Bw\n").unwrap(), triangle());
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        assert!(matches!(
            Graph::from_graph6(" w"),
            Err(GraphError::Graph6 { offset: 0, .. })
        ));
        assert!(matches!(
            Graph::from_graph6("B"),
            Err(GraphError::Graph6 { .. })
        ));
        assert!(matches!(
            Graph::from_graph6("Bww"),
            Err(GraphError::Graph6 { .. })
        ));
        // 'x' sets a padding bit for n = 3.
        assert!(matches!(
            Graph::from_graph6("Bx"),
            Err(GraphError::Graph6 { offset: 1, .. })
        ));
        assert!(Graph::from_graph6("").is_err());
    }

    #[test]
    fn extremal_numbers() {
        assert_eq!(turan_number(4, 2).unwrap(), 4);
        assert_eq!(turan_number(10, 3).unwrap(), 33);
        for n in 1..12 {
            assert_eq!(turan_number(n, n).unwrap(), binom2(n));
        }
        assert!(turan_number(3, 4).is_err());
        assert!(turan_number(3, 0).is_err());

        assert_eq!(saturation_number(5, 3).unwrap(), 7);
        assert_eq!(saturation_number(10, 4).unwrap(), 24);
        for n in 3..20 {
            assert_eq!(saturation_number(n, 2).unwrap(), n - 1);
        }
        assert!(saturation_number(4, 4).is_err());
    }

    #[test]
    fn multipartite_parts_examples() {
        let k22 = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let sizes = |g: &Graph| {
            g.complete_multipartite_parts()
                .map(|p| p.iter().map(VertexSet::len).collect::<Vec<_>>())
        };
        assert_eq!(sizes(&k22), Some(vec![2, 2]));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(sizes(&p3), Some(vec![2, 1]));
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(sizes(&p4), None);
        assert_eq!(sizes(&Graph::new(0)), Some(vec![]));
        assert_eq!(sizes(&Graph::new(3)), Some(vec![3]));
    }

    #[test]
    fn vertex_set_ops_across_words() {
        let a = VertexSet::from_vertices(130, [0, 63, 64, 129]);
        let b = VertexSet::from_vertices(130, [63, 100]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![63]);
        assert_eq!(a.difference(&b).len(), 3);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.complement().len(), 126);
        assert!(!a.contains(130));
        assert_eq!(a.first(), Some(0));
    }
}
