//! Canonical labeling for graphs on at most 16 vertices.
//!
//! Components are labelled separately and concatenated in sorted order.
//! Inside a component: label-invariant colour refinement, then an
//! individualization tree over the first non-singleton cell, keeping the
//! greatest leaf code. Twins (`N(u)∖{v} = N(v)∖{u}`) in the branching cell
//! are swapped by an automorphism, so only one of them is branched on.

use std::fmt;

use crate::graph::{Graph, GraphError};

/// Largest `n` the key can hold: `C(16,2) = 120` bits.
pub const MAX_CANON_N: usize = 16;

/// Adjacency bits of the canonical relabelling in graph6 order (`(i,j)`
/// with `i < j`, column by column), most significant bit first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: u8,
    bits: u128,
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

#[inline]
fn pair_bit(i: usize, j: usize) -> u128 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    1u128 << (127 - pair_index(i, j))
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for j in 1..n {
            for i in 0..j {
                if self.bits & pair_bit(i, j) != 0 {
                    g.add_edge(crate::graph::Edge::new(i, j)).expect("fresh pair");
                }
            }
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        self.to_graph().to_graph6()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, GraphError> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(GraphError::Parameter(format!(
            "canonical labeling supports n <= {MAX_CANON_N}, got {n}"
        )));
    }
    let rows: Vec<u16> = (0..n).map(|v| g.row(v)[0] as u16).collect();
    Ok(canonical_rows(&rows))
}

/// Canonical key of the graph with adjacency rows `rows` (`n ≤ 16`).
pub(crate) fn canonical_rows(rows: &[u16]) -> CanonicalKey {
    let n = rows.len();
    let mut seen = 0u16;
    let mut comps: Vec<(usize, u128, Vec<usize>)> = Vec::new();
    for root in 0..n {
        if seen >> root & 1 == 1 {
            continue;
        }
        let mut comp = 1u16 << root;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = rows[v] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        seen |= comp;
        let verts: Vec<usize> = (0..n).filter(|&v| comp >> v & 1 == 1).collect();
        let (code, order) = label_component(rows, &verts);
        comps.push((verts.len(), code, order));
    }
    comps.sort_by_key(|c| std::cmp::Reverse((c.0, c.1)));
    let mut label = [0usize; MAX_CANON_N];
    let mut next = 0;
    for (_, _, order) in &comps {
        for &v in order {
            label[v] = next;
            next += 1;
        }
    }
    CanonicalKey {
        n: n as u8,
        bits: encode(rows, &label),
    }
}

fn encode(rows: &[u16], label: &[usize]) -> u128 {
    let mut bits = 0u128;
    for (u, &row) in rows.iter().enumerate() {
        let mut r = row & !((2u16 << u).wrapping_sub(1));
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            bits |= pair_bit(label[u], label[v]);
        }
    }
    bits
}

/// Search state on a component with local indices `0..m`.
struct Component {
    rows: Vec<u16>,
}

impl Component {
    /// Refine `color` (dense ranks) to the coarsest equitable colouring
    /// finer than it. Ranks are assigned by sorting invariant signatures.
    fn refine(&self, color: &mut [u8]) {
        let m = self.rows.len();
        let mut cells = count_cells(color);
        loop {
            let mut sigs: Vec<(Vec<u8>, usize)> = (0..m)
                .map(|v| {
                    let mut sig = vec![0u8; cells + 1];
                    sig[0] = color[v];
                    let mut r = self.rows[v];
                    while r != 0 {
                        let u = r.trailing_zeros() as usize;
                        r &= r - 1;
                        sig[1 + color[u] as usize] += 1;
                    }
                    (sig, v)
                })
                .collect();
            sigs.sort();
            let mut rank = 0u8;
            for i in 0..m {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    rank += 1;
                }
                color[sigs[i].1] = rank;
            }
            let now = rank as usize + 1;
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    fn search(&self, color: &mut [u8], best: &mut Option<(u128, Vec<usize>)>) {
        let m = self.rows.len();
        self.refine(color);
        let cells = count_cells(color);
        if cells == m {
            let label: Vec<usize> = color.iter().map(|&c| c as usize).collect();
            let code = encode(&self.rows, &label);
            if best.as_ref().is_none_or(|(b, _)| code > *b) {
                *best = Some((code, label));
            }
            return;
        }
        let mut sizes = vec![0usize; cells];
        color.iter().for_each(|&c| sizes[c as usize] += 1);
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete colouring") as u8;
        let members: Vec<usize> = (0..m).filter(|&v| color[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            let twin = tried.iter().any(|&u| {
                let (bu, bv) = (1u16 << u, 1u16 << v);
                self.rows[u] & !bv == self.rows[v] & !bu
            });
            if twin {
                continue;
            }
            tried.push(v);
            let mut next = color.to_vec();
            for (u, c) in next.iter_mut().enumerate() {
                if *c > target || (*c == target && u != v) {
                    *c += 1;
                }
            }
            self.search(&mut next, best);
        }
    }
}

fn count_cells(color: &[u8]) -> usize {
    color.iter().copied().max().map_or(0, |c| c as usize + 1)
}

/// Code and canonical vertex order of the component on `verts`.
fn label_component(rows: &[u16], verts: &[usize]) -> (u128, Vec<usize>) {
    let m = verts.len();
    if m == 1 {
        return (0, verts.to_vec());
    }
    let mut local = [usize::MAX; MAX_CANON_N];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let comp = Component {
        rows: verts
            .iter()
            .map(|&v| {
                let mut r = rows[v];
                let mut out = 0u16;
                while r != 0 {
                    let u = r.trailing_zeros() as usize;
                    r &= r - 1;
                    out |= 1 << local[u];
                }
                out
            })
            .collect(),
    };
    let mut best = None;
    comp.search(&mut vec![0; m], &mut best);
    let (code, label) = best.expect("at least one leaf");
    let mut order = vec![0usize; m];
    for (i, &l) in label.iter().enumerate() {
        order[l] = verts[i];
    }
    (code, order)
}
