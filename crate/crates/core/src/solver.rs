//! Exact game values by memoized minimax over canonical positions.
//!
//! One [`Solver`] serves one `(n, k, first player)`: the side to move is
//! fixed by the edge count, so the table is keyed by the graph alone.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::canon::{canonical_rows, CanonicalKey, MAX_CANON_N};
use crate::coloring::Position;
use crate::game::{run_game, GameConfig, Player, Strategy, StrategyError};
use crate::graph::{saturation_number, turan_number, Edge, Graph, GraphError};
use crate::strategies::by_name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("n = {n} exceeds the solver budget n <= {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cache file: {0}")]
    Cache(String),
    #[error("regret game failed: {0}")]
    Game(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Enumerate moves in reverse lexicographic order.
    pub reverse_moves: bool,
    /// Keep the transposition table; isomorphic siblings are merged
    /// regardless.
    pub memoize: bool,
    /// Largest `n` accepted; `None` means the default for `k`.
    pub budget: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            reverse_moves: false,
            memoize: true,
            budget: None,
        }
    }
}

pub fn default_budget(k: usize) -> usize {
    if k == 2 {
        12
    } else {
        9
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub nodes_expanded: u64,
    pub table_hits: u64,
}

/// Graph on at most 16 vertices as bit rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SmallGraph {
    n: usize,
    rows: [u16; MAX_CANON_N],
    edges: usize,
}

impl SmallGraph {
    fn from_graph(g: &Graph) -> Self {
        let mut rows = [0u16; MAX_CANON_N];
        for (v, r) in rows.iter_mut().enumerate().take(g.n()) {
            *r = g.row(v)[0] as u16;
        }
        Self {
            n: g.n(),
            rows,
            edges: g.edge_count(),
        }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    fn with(&self, u: usize, v: usize) -> Self {
        let mut g = *self;
        g.rows[u] |= 1 << v;
        g.rows[v] |= 1 << u;
        g.edges += 1;
        g
    }

    fn key(&self) -> CanonicalKey {
        canonical_rows(&self.rows[..self.n])
    }
}

/// A proper `k`-colouring by backtracking in decreasing-degree order.
fn small_coloring(g: &SmallGraph, k: usize) -> Option<[u8; MAX_CANON_N]> {
    let n = g.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.rows[v].count_ones()));
    let mut color = [u8::MAX; MAX_CANON_N];
    fn go(g: &SmallGraph, k: usize, order: &[usize], i: usize, used: usize, color: &mut [u8; MAX_CANON_N]) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        let mut banned = 0u32;
        let mut r = g.rows[v];
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            if color[u] != u8::MAX {
                banned |= 1 << color[u];
            }
        }
        for c in 0..k.min(used + 1) {
            if banned >> c & 1 == 0 {
                color[v] = c as u8;
                if go(g, k, order, i + 1, used.max(c + 1), color) {
                    return true;
                }
            }
        }
        color[v] = u8::MAX;
        false
    }
    go(g, k, &order, 0, 0, &mut color).then_some(color)
}

/// Legal moves of `g`, lexicographic.
fn small_legal(g: &SmallGraph, k: usize) -> Vec<(usize, usize)> {
    let Some(first) = small_coloring(g, k) else {
        return Vec::new();
    };
    let mut witnesses = vec![first];
    let mut out = Vec::new();
    for u in 0..g.n {
        for v in u + 1..g.n {
            if g.has(u, v) {
                continue;
            }
            if witnesses.iter().any(|w| w[u] != w[v]) {
                out.push((u, v));
            } else if let Some(w) = small_coloring(&g.with(u, v), k) {
                witnesses.push(w);
                out.push((u, v));
            }
        }
    }
    out
}

pub struct Solver {
    n: usize,
    k: usize,
    first: Player,
    options: SolverOptions,
    sat: usize,
    ex: usize,
    table: HashMap<CanonicalKey, u8>,
    stats: SolverStats,
}

impl Solver {
    pub fn new(n: usize, k: usize, first: Player, options: SolverOptions) -> Result<Self, SolverError> {
        GameConfig::new(n, k, first)?;
        let budget = options.budget.unwrap_or_else(|| default_budget(k)).min(MAX_CANON_N);
        if n > budget {
            return Err(SolverError::BudgetExceeded { n, budget });
        }
        Ok(Self {
            n,
            k,
            first,
            options,
            sat: saturation_number(n, k)?,
            ex: turan_number(n, k)?,
            table: HashMap::new(),
            stats: SolverStats::default(),
        })
    }

    /// The solver for `(n, k, first)` with default options, shared across
    /// the process.
    pub fn shared(n: usize, k: usize, first: Player) -> Result<Arc<Mutex<Solver>>, SolverError> {
        type Registry = Mutex<HashMap<(usize, usize, Player), Arc<Mutex<Solver>>>>;
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        let mut reg = REGISTRY.get_or_init(Default::default).lock().expect("registry poisoned");
        if let Some(s) = reg.get(&(n, k, first)) {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(Mutex::new(Solver::new(n, k, first, SolverOptions::default())?));
        reg.insert((n, k, first), Arc::clone(&s));
        Ok(s)
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    fn to_move(&self, edges: usize) -> Player {
        if edges.is_multiple_of(2) {
            self.first
        } else {
            self.first.other()
        }
    }

    fn moves(&self, g: &SmallGraph) -> Vec<(usize, usize)> {
        let mut m = small_legal(g, self.k);
        if self.options.reverse_moves {
            m.reverse();
        }
        m
    }

    /// `key` is the canonical key of `g`.
    fn eval(&mut self, g: &SmallGraph, key: CanonicalKey) -> usize {
        if self.options.memoize {
            if let Some(&v) = self.table.get(&key) {
                self.stats.table_hits += 1;
                return v as usize;
            }
        }
        let moves = self.moves(g);
        let value = if moves.is_empty() {
            g.edges
        } else {
            self.stats.nodes_expanded += 1;
            let maxi = self.to_move(g.edges) == Player::Maxi;
            let goal = if maxi { self.ex } else { self.sat };
            let mut best: Option<usize> = None;
            let mut seen = HashSet::new();
            for (u, v) in moves {
                let child = g.with(u, v);
                let ck = child.key();
                if !seen.insert(ck) {
                    continue;
                }
                let s = self.eval(&child, ck);
                best = Some(match best {
                    None => s,
                    Some(b) if maxi => b.max(s),
                    Some(b) => b.min(s),
                });
                if best == Some(goal) {
                    break;
                }
            }
            best.expect("non-empty move list")
        };
        if self.options.memoize {
            self.table.insert(key, value as u8);
        }
        value
    }

    fn check_graph(&self, g: &Graph) -> Result<SmallGraph, SolverError> {
        if g.n() != self.n {
            return Err(GraphError::Parameter(format!("graph has {} vertices, solver {}", g.n(), self.n)).into());
        }
        Ok(SmallGraph::from_graph(g))
    }

    /// Final score under optimal play from `g`, with the side to move
    /// determined by the edge count.
    pub fn value(&mut self, g: &Graph) -> Result<usize, SolverError> {
        let small = self.check_graph(g)?;
        if self.sat == self.ex {
            return Ok(self.ex);
        }
        Ok(self.eval(&small, small.key()))
    }

    /// The lexicographically first optimal move at `g`, if any.
    pub fn best_move(&mut self, g: &Graph) -> Result<Option<Edge>, SolverError> {
        let small = self.check_graph(g)?;
        let maxi = self.to_move(small.edges) == Player::Maxi;
        let mut best: Option<(usize, Edge)> = None;
        for (u, v) in small_legal(&small, self.k) {
            let child = small.with(u, v);
            let s = if self.sat == self.ex { self.ex } else { self.eval(&child, child.key()) };
            let better = best.is_none_or(|(b, _)| if maxi { s > b } else { s < b });
            if better {
                best = Some((s, Edge::new(u, v)));
            }
        }
        Ok(best.map(|(_, e)| e))
    }

    /// Game value from the empty board and one optimal line.
    pub fn solve_root(&mut self) -> Result<Line, SolverError> {
        let mut g = Graph::new(self.n);
        let score = self.value(&g)?;
        let mut principal_variation = Vec::new();
        while let Some(e) = self.best_move(&g)? {
            g.add_edge(e)?;
            principal_variation.push(e);
        }
        debug_assert_eq!(g.edge_count(), score);
        Ok(Line { score, principal_variation })
    }

    /// Write the table as `graph6 value` lines.
    pub fn save(&self, path: &Path) -> Result<(), SolverError> {
        let io = |e: std::io::Error| SolverError::Cache(e.to_string());
        let mut f = std::io::BufWriter::new(fs::File::create(path).map_err(io)?);
        let mut entries: Vec<_> = self.table.iter().collect();
        entries.sort();
        for (k, v) in entries {
            writeln!(f, "{} {}", k.to_graph6(), v).map_err(io)?;
        }
        f.flush().map_err(io)
    }

    /// Merge entries from a file written by [`Solver::save`] for the same
    /// `(n, k, first player)`. Returns the number of lines read.
    pub fn load(&mut self, path: &Path) -> Result<usize, SolverError> {
        let io = |e: std::io::Error| SolverError::Cache(e.to_string());
        let f = BufReader::new(fs::File::open(path).map_err(io)?);
        let mut count = 0;
        for (i, line) in f.lines().enumerate() {
            let line = line.map_err(io)?;
            let bad = |why: &str| SolverError::Cache(format!("line {}: {why}", i + 1));
            let (g6, v) = line.split_once(' ').ok_or_else(|| bad("expected `graph6 value`"))?;
            let g = Graph::from_graph6(g6)?;
            let value: u8 = v.trim().parse().map_err(|_| bad("bad value"))?;
            let small = self.check_graph(&g)?;
            self.table.insert(small.key(), value);
            count += 1;
        }
        Ok(count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub score: usize,
    pub principal_variation: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreResult {
    pub n: usize,
    pub k: usize,
    pub maxi_first: Line,
    pub mini_first: Line,
    pub stats: SolverStats,
}

impl ScoreResult {
    pub fn score_maxi_first(&self) -> usize {
        self.maxi_first.score
    }

    pub fn score_mini_first(&self) -> usize {
        self.mini_first.score
    }

    pub fn score(&self, first: Player) -> usize {
        match first {
            Player::Maxi => self.maxi_first.score,
            Player::Mini => self.mini_first.score,
        }
    }
}

/// `s(n, χ>k)` for both starting players.
pub fn solve(n: usize, k: usize, options: SolverOptions) -> Result<ScoreResult, SolverError> {
    let mut a = Solver::new(n, k, Player::Maxi, options)?;
    let mut b = Solver::new(n, k, Player::Mini, options)?;
    let (maxi_first, mini_first) = (a.solve_root()?, b.solve_root()?);
    let stats = SolverStats {
        nodes_expanded: a.stats.nodes_expanded + b.stats.nodes_expanded,
        table_hits: a.stats.table_hits + b.stats.table_hits,
    };
    Ok(ScoreResult {
        n,
        k,
        maxi_first,
        mini_first,
        stats,
    })
}

/// Plays optimally using the shared solver for its configuration.
pub struct OptimalStrategy {
    solver: Arc<Mutex<Solver>>,
}

impl OptimalStrategy {
    pub fn shared(config: GameConfig, _side: Player) -> Result<Self, SolverError> {
        Ok(Self {
            solver: Solver::shared(config.n, config.k, config.first_player)?,
        })
    }
}

impl Strategy for OptimalStrategy {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn choose(&mut self, pos: &Position, _t: usize) -> Result<Edge, StrategyError> {
        let mut solver = self.solver.lock().expect("solver poisoned");
        solver
            .best_move(pos.graph())
            .map_err(|e| StrategyError::Solver(e.to_string()))?
            .ok_or_else(|| StrategyError::Invariant("asked to move on a saturated board".into()))
    }
}

/// `|score of strategy vs optimal adversary - s(n,χ>k)|`.
pub fn strategy_regret(name: &str, n: usize, k: usize, side: Player, first: Player) -> Result<usize, SolverError> {
    let config = GameConfig::new(n, k, first)?;
    let value = Solver::shared(n, k, first)?
        .lock()
        .expect("solver poisoned")
        .value(&Graph::new(n))?;
    let game = |e: StrategyError| SolverError::Game(e.to_string());
    let mut ours = by_name(name, &config, side).map_err(game)?;
    let mut opponent: Box<dyn Strategy> = Box::new(OptimalStrategy::shared(config, side.other())?);
    let (maxi, mini) = match side {
        Player::Maxi => (&mut ours, &mut opponent),
        Player::Mini => (&mut opponent, &mut ours),
    };
    let tr = run_game(config, maxi.as_mut(), mini.as_mut()).map_err(|e| SolverError::Game(e.to_string()))?;
    Ok(tr.score().abs_diff(value))
}
