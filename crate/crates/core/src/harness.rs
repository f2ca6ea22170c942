//! Bound verification, parameter sweeps and the text-mode game loop.

use std::fmt;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::game::{run_game, Game, GameConfig, GameError, Player, Strategy, StrategyError, Transcript};
use crate::graph::{binom2, Graph, GraphError};
use crate::solver::default_budget;
use crate::strategies::{by_name, FourColorReport, FourColorStrategy};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Maxi's clique strategy: `s ≥ ⌈C(n,2)(1 - 1/⌈k/2⌉)⌉`.
    CliqueLower,
    /// Mini's star strategy: `s ≤ ⌊C(n,2)(1 - 1/(k-ℓ))⌋ + n`.
    StarUpper,
    /// `k = 4`: `|s - n²/3| ≤ C·n`.
    FourColor,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::CliqueLower => "1.2",
            Theorem::StarUpper => "1.3",
            Theorem::FourColor => "1.4",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub n: usize,
    pub k: usize,
    pub first: Player,
    pub maxi: String,
    pub mini: String,
    /// Lower bound for 1.2, upper bound for 1.3, `n²/3` for 1.4.
    pub bound: f64,
    pub observed: Option<usize>,
    /// For 1.4, `|score - n²/3| / n`.
    pub constant: Option<f64>,
    /// The final-graph structure behind the bound: group cliques for 1.2,
    /// `ℓ` vertices of degree `n-1` for 1.3, clique accounting for 1.4.
    pub structure: bool,
    pub pass: bool,
    pub error: Option<String>,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} thm {} n={} k={} first={} {} vs {}: observed {} bound {}",
            self.theorem,
            self.n,
            self.k,
            self.first,
            self.maxi,
            self.mini,
            self.observed.map_or("-".into(), |s| s.to_string()),
            self.bound
        )?;
        if let Some(c) = self.constant {
            write!(f, " C={c:.3}")?;
        }
        if !self.structure {
            write!(f, " structure=broken")?;
        }
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}

/// `⌈C(n,2)(m-1)/m⌉` with `m = ⌈k/2⌉`.
pub fn clique_lower_bound(n: usize, k: usize) -> usize {
    let m = k.div_ceil(2);
    (binom2(n) * (m - 1)).div_ceil(m)
}

/// `⌊C(n,2)(k-ℓ-1)/(k-ℓ)⌋ + n` with `ℓ = ⌊(k-1)/3⌋`.
pub fn star_upper_bound(n: usize, k: usize) -> usize {
    let d = k - (k - 1) / 3;
    binom2(n) * (d - 1) / d + n
}

/// Whether every index-chunk group of size `⌈k/2⌉` induces a clique.
pub fn groups_are_cliques(g: &Graph, k: usize) -> bool {
    let m = k.div_ceil(2);
    (0..g.n()).all(|u| (u + 1..((u / m) + 1) * m).filter(|&v| v < g.n()).all(|v| g.has_edge(u, v)))
}

/// Number of vertices adjacent to all others.
pub fn full_degree_count(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) + 1 == g.n()).count()
}

/// Opponents for bound checks.
#[derive(Clone, Debug)]
pub struct Panel {
    pub adversaries: Vec<String>,
    /// `optimal` joins for `n` up to this value and within the solver budget.
    pub optimal_up_to: usize,
    pub thm14_constant: f64,
}

pub const THM14_DEFAULT_CONSTANT: f64 = 4.0;

impl Panel {
    pub fn standard() -> Self {
        let mut adversaries: Vec<String> = (0..5).map(|s| format!("random:{s}")).collect();
        adversaries.extend(["greedy-max".to_string(), "greedy-min".to_string()]);
        Self {
            adversaries,
            optimal_up_to: 8,
            thm14_constant: THM14_DEFAULT_CONSTANT,
        }
    }

    fn for_cell(&self, n: usize, k: usize) -> Vec<String> {
        let mut out = self.adversaries.clone();
        if n <= self.optimal_up_to && n <= default_budget(k) {
            out.push("optimal".into());
        }
        out
    }
}

fn play_named(config: GameConfig, maxi: &str, mini: &str) -> Result<Transcript, HarnessError> {
    let mut a = by_name(maxi, &config, Player::Maxi)?;
    let mut b = by_name(mini, &config, Player::Mini)?;
    Ok(run_game(config, a.as_mut(), b.as_mut())?)
}

/// A `maxi-4color` game with its clique bookkeeping.
pub fn play_four_color(config: GameConfig, mini: &mut dyn Strategy) -> Result<(Transcript, FourColorReport), HarnessError> {
    let mut maxi = FourColorStrategy::new(config)?;
    let tr = run_game(config, &mut maxi, mini)?;
    Ok((tr, maxi.report().clone()))
}

struct Cell {
    theorem: Theorem,
    n: usize,
    k: usize,
    first: Player,
    maxi: String,
    mini: String,
}

fn run_cell(cell: &Cell, panel: &Panel) -> BoundReport {
    let Cell { theorem, n, k, first, .. } = *cell;
    let third = (n * n) as f64 / 3.0;
    let bound = match theorem {
        Theorem::CliqueLower => clique_lower_bound(n, k) as f64,
        Theorem::StarUpper => star_upper_bound(n, k) as f64,
        Theorem::FourColor => third,
    };
    let mut report = BoundReport {
        theorem,
        n,
        k,
        first,
        maxi: cell.maxi.clone(),
        mini: cell.mini.clone(),
        bound,
        observed: None,
        constant: None,
        structure: false,
        pass: false,
        error: None,
    };
    let outcome = GameConfig::new(n, k, first).map_err(HarnessError::from).and_then(|config| {
        if cell.maxi == "maxi-4color" {
            let mut mini = by_name(&cell.mini, &config, Player::Mini)?;
            let (tr, acc) = play_four_color(config, mini.as_mut())?;
            Ok((tr, acc.accounting_holds(n)))
        } else {
            let tr = play_named(config, &cell.maxi, &cell.mini)?;
            let structure = match theorem {
                Theorem::CliqueLower => groups_are_cliques(&tr.final_graph, k),
                _ => full_degree_count(&tr.final_graph) >= (k - 1) / 3,
            };
            Ok((tr, structure))
        }
    });
    match outcome {
        Err(e) => report.error = Some(e.to_string()),
        Ok((tr, structure)) => {
            let s = tr.score();
            report.observed = Some(s);
            report.structure = structure;
            let c = panel.thm14_constant * n as f64;
            let within = match theorem {
                Theorem::CliqueLower => s as f64 >= bound,
                Theorem::StarUpper => s as f64 <= bound,
                Theorem::FourColor => {
                    report.constant = Some((s as f64 - third).abs() / n as f64);
                    let upper = cell.mini != "mini-star" || s as f64 <= third + c;
                    s as f64 >= third - c && upper
                }
            };
            report.pass = within && structure;
        }
    }
    report
}

/// Check the requested theorems on every `(n, k)` cell against the panel,
/// for both starting players. Reports come back in a fixed order.
pub fn verify_bounds(ns: &[usize], ks: &[usize], panel: &Panel, theorems: &[Theorem]) -> Vec<BoundReport> {
    let mut cells = Vec::new();
    for &theorem in theorems {
        for &k in ks {
            let applies = match theorem {
                Theorem::CliqueLower => k >= 3,
                Theorem::StarUpper => k >= 4,
                Theorem::FourColor => k == 4,
            };
            if !applies {
                continue;
            }
            for &n in ns.iter().filter(|&&n| n > k) {
                for first in [Player::Maxi, Player::Mini] {
                    let mut push = |maxi: &str, mini: &str| {
                        cells.push(Cell { theorem, n, k, first, maxi: maxi.into(), mini: mini.into() })
                    };
                    match theorem {
                        Theorem::CliqueLower => panel.for_cell(n, k).iter().for_each(|a| push("maxi-clique", a)),
                        Theorem::StarUpper => panel.for_cell(n, k).iter().for_each(|a| push(a, "mini-star")),
                        Theorem::FourColor => {
                            push("maxi-4color", "mini-star");
                            panel.for_cell(n, k).iter().for_each(|a| push("maxi-4color", a));
                        }
                    }
                }
            }
        }
    }
    cells.par_iter().map(|c| run_cell(c, panel)).collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub first: Player,
    pub seed: u64,
    pub maxi: String,
    pub mini: String,
    pub score: usize,
    pub sat: usize,
    pub ex: usize,
    pub plies: usize,
}

pub const SWEEP_HEADER: &str = "n,k,first,seed,maxi,mini,score,sat,ex,plies";

/// `random` without a seed takes the row's seed.
fn seeded(name: &str, seed: u64) -> String {
    if name == "random" {
        format!("random:{seed}")
    } else {
        name.to_string()
    }
}

/// Play every `(n, k, first, seed)` cell with `n > k` and return the rows
/// in that nesting order.
pub fn sweep_rows(
    ns: &[usize],
    ks: &[usize],
    firsts: &[Player],
    seeds: &[u64],
    maxi: &str,
    mini: &str,
) -> Result<Vec<SweepRow>, HarnessError> {
    let mut cells = Vec::new();
    for &n in ns {
        for &k in ks.iter().filter(|&&k| k >= 2 && k < n) {
            for &first in firsts {
                for &seed in seeds {
                    cells.push((n, k, first, seed));
                }
            }
        }
    }
    cells
        .par_iter()
        .map(|&(n, k, first, seed)| {
            let config = GameConfig::new(n, k, first)?;
            let (a, b) = (seeded(maxi, seed), seeded(mini, seed));
            let tr = play_named(config, &a, &b)?;
            Ok(SweepRow {
                n,
                k,
                first,
                seed,
                maxi: a,
                mini: b,
                score: tr.score(),
                sat: config.sat(),
                ex: config.ex(),
                plies: tr.moves.len(),
            })
        })
        .collect()
}

/// Write a sweep as CSV; the header is written even when no cell applies.
pub fn run_sweep<W: Write>(
    ns: &[usize],
    ks: &[usize],
    firsts: &[Player],
    seeds: &[u64],
    maxi: &str,
    mini: &str,
    out: W,
) -> Result<usize, HarnessError> {
    let rows = sweep_rows(ns, ks, firsts, seeds, maxi, mini)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SWEEP_HEADER.split(','))?;
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(rows.len())
}

fn render<W: Write>(game: &Game, out: &mut W) -> std::io::Result<()> {
    let g = game.position().graph();
    writeln!(out, "t={} edges={} legal moves={}", game.next_t(), g.edge_count(), game.position().legal_count())?;
    for v in 0..g.n() {
        let nb: Vec<String> = g.neighbor_iter(v).map(|u| u.to_string()).collect();
        writeln!(out, "  {v}: {}", nb.join(" "))?;
    }
    Ok(())
}

/// Text-mode game: the human enters `u v` on their turns. `quit` or end of
/// input returns the transcript so far with `complete = false`.
pub fn interactive_play<R: BufRead, W: Write>(
    config: GameConfig,
    human: Player,
    opponent: &str,
    input: R,
    mut out: W,
) -> Result<Transcript, HarnessError> {
    let mut bot = by_name(opponent, &config, human.other())?;
    let mut game = Game::new(config);
    let mut lines = input.lines();
    while !game.is_over() {
        let t = game.next_t();
        let mv = if game.to_move() == human {
            render(&game, &mut out)?;
            write!(out, "your move (u v, or quit): ")?;
            out.flush()?;
            let Some(line) = lines.next().transpose()? else {
                writeln!(out)?;
                return Ok(game.transcript());
            };
            let line = line.trim();
            if line == "quit" {
                return Ok(game.transcript());
            }
            let parsed: Vec<usize> = line.split_whitespace().filter_map(|x| x.parse().ok()).collect();
            let &[u, v] = parsed.as_slice() else {
                writeln!(out, "enter two vertex numbers")?;
                continue;
            };
            let e = match crate::graph::Edge::try_new(u, v) {
                Ok(e) => e,
                Err(err) => {
                    writeln!(out, "illegal: {err}")?;
                    continue;
                }
            };
            match game.play(e) {
                Ok(mv) => mv,
                Err(err) => {
                    writeln!(out, "illegal: {err}")?;
                    continue;
                }
            }
        } else {
            let e = bot.choose(game.position(), t)?;
            let mv = game.play(e).map_err(|source| GameError::IllegalMove {
                player: human.other(),
                strategy: bot.name(),
                ply: t,
                source,
            })?;
            writeln!(out, "{} plays {}", bot.name(), e)?;
            mv
        };
        bot.observe(&mv, game.position())?;
    }
    render(&game, &mut out)?;
    writeln!(out, "game over: score {}", game.position().graph().edge_count())?;
    Ok(game.transcript())
}
