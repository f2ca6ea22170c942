//! Turn alternation, move validation, transcripts and replay.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{IllegalMove, Position};
use crate::graph::{saturation_number, turan_number, Edge, Graph, GraphError};
use crate::potential::PotentialError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Maxi,
    Mini,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Player::Maxi => Player::Mini,
            Player::Mini => Player::Maxi,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Maxi => "maxi",
            Player::Mini => "mini",
        })
    }
}

impl std::str::FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maxi" => Ok(Player::Maxi),
            "mini" => Ok(Player::Mini),
            other => Err(format!("unknown player {other:?}, expected maxi or mini")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameConfig {
    pub n: usize,
    pub k: usize,
    pub first_player: Player,
}

impl GameConfig {
    /// Requires `n > k >= 2`.
    pub fn new(n: usize, k: usize, first_player: Player) -> Result<Self, GraphError> {
        if k < 2 || n <= k {
            return Err(GraphError::Parameter(format!(
                "game needs n > k >= 2, got n={n}, k={k}"
            )));
        }
        Ok(Self { n, k, first_player })
    }

    /// The player making move number `t` (counting from 1).
    pub fn player_at(&self, t: usize) -> Player {
        if t % 2 == 1 {
            self.first_player
        } else {
            self.first_player.other()
        }
    }

    pub fn sat(&self) -> usize {
        saturation_number(self.n, self.k).expect("config invariant n > k")
    }

    pub fn ex(&self) -> usize {
        turan_number(self.n, self.k).expect("config invariant n > k")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub t: usize,
    pub player: Player,
    pub edge: Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("strategy unsupported here: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("solver: {0}")]
    Solver(String),
}

/// A move chooser. `choose` is only called on non-saturated positions, and
/// `observe` after every move of either player with the updated position.
pub trait Strategy: Send {
    fn name(&self) -> String;

    fn choose(&mut self, pos: &Position, t: usize) -> Result<Edge, StrategyError>;

    fn observe(&mut self, _mv: &Move, _pos: &Position) -> Result<(), StrategyError> {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("{strategy} ({player}) played an illegal move at ply {ply}: {source}")]
    IllegalMove {
        player: Player,
        strategy: String,
        ply: usize,
        source: IllegalMove,
    },
    #[error("{strategy} ({player}) failed at ply {ply}: {source}")]
    Strategy {
        player: Player,
        strategy: String,
        ply: usize,
        source: StrategyError,
    },
}

/// A game in progress; `run_game` drives one to completion.
pub struct Game {
    config: GameConfig,
    pos: Position,
    moves: Vec<Move>,
}

impl Game {
    pub fn new(config: GameConfig) -> Self {
        Self {
            config,
            pos: Position::empty(config.n, config.k),
            moves: Vec::new(),
        }
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn position(&self) -> &Position {
        &self.pos
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Time of the next move.
    pub fn next_t(&self) -> usize {
        self.moves.len() + 1
    }

    pub fn to_move(&self) -> Player {
        self.config.player_at(self.next_t())
    }

    pub fn is_over(&self) -> bool {
        self.pos.is_saturated()
    }

    pub fn play(&mut self, e: Edge) -> Result<Move, IllegalMove> {
        self.pos.play(e)?;
        let mv = Move {
            t: self.next_t(),
            player: self.to_move(),
            edge: e,
        };
        self.moves.push(mv);
        Ok(mv)
    }

    /// Snapshot, flagged final exactly when the board is saturated.
    pub fn transcript(&self) -> Transcript {
        Transcript {
            config: self.config,
            moves: self.moves.clone(),
            final_graph: self.pos.graph().clone(),
            complete: self.is_over(),
        }
    }
}

/// Play `maxi` against `mini` until the board is saturated.
pub fn run_game(
    config: GameConfig,
    maxi: &mut dyn Strategy,
    mini: &mut dyn Strategy,
) -> Result<Transcript, GameError> {
    let mut game = Game::new(config);
    while !game.is_over() {
        let t = game.next_t();
        let player = game.to_move();
        let mover: &mut dyn Strategy = match player {
            Player::Maxi => &mut *maxi,
            Player::Mini => &mut *mini,
        };
        let e = mover
            .choose(game.position(), t)
            .map_err(|source| GameError::Strategy {
                player,
                strategy: mover.name(),
                ply: t,
                source,
            })?;
        let mv = game.play(e).map_err(|source| GameError::IllegalMove {
            player,
            strategy: mover.name(),
            ply: t,
            source,
        })?;
        for who in [Player::Maxi, Player::Mini] {
            let s: &mut dyn Strategy = match who {
                Player::Maxi => &mut *maxi,
                Player::Mini => &mut *mini,
            };
            s.observe(&mv, game.position())
                .map_err(|source| GameError::Strategy {
                    player: who,
                    strategy: s.name(),
                    ply: t,
                    source,
                })?;
        }
    }
    Ok(game.transcript())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub config: GameConfig,
    pub moves: Vec<Move>,
    pub final_graph: Graph,
    /// False for a game abandoned before saturation.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("move {index} has time {found}, expected {expected}")]
    Time {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("move at t={t} attributed to {found}, expected {expected}")]
    Alternation {
        t: usize,
        found: Player,
        expected: Player,
    },
    #[error("move at t={t} is illegal: {source}")]
    Illegal { t: usize, source: IllegalMove },
    #[error("replayed graph differs from the recorded final graph")]
    FinalMismatch,
    #[error("final graph is not saturated")]
    NotSaturated,
    #[error("recorded score {recorded} differs from {actual}")]
    Score { recorded: usize, actual: usize },
    #[error("bad transcript config: {0}")]
    Config(#[from] GraphError),
    #[error("JSON: {0}")]
    Json(String),
}

impl Transcript {
    pub fn score(&self) -> usize {
        self.final_graph.edge_count()
    }

    /// Replay from the empty graph, checking timing, alternation, legality,
    /// the final graph and (for complete transcripts) saturation.
    pub fn validate(&self) -> Result<(), TranscriptError> {
        let cfg = GameConfig::new(self.config.n, self.config.k, self.config.first_player)?;
        let mut pos = Position::empty(cfg.n, cfg.k);
        for (i, mv) in self.moves.iter().enumerate() {
            if mv.t != i + 1 {
                return Err(TranscriptError::Time {
                    index: i,
                    found: mv.t,
                    expected: i + 1,
                });
            }
            let expected = cfg.player_at(mv.t);
            if mv.player != expected {
                return Err(TranscriptError::Alternation {
                    t: mv.t,
                    found: mv.player,
                    expected,
                });
            }
            pos.play(mv.edge)
                .map_err(|source| TranscriptError::Illegal { t: mv.t, source })?;
        }
        if pos.graph() != &self.final_graph {
            return Err(TranscriptError::FinalMismatch);
        }
        if self.complete && !pos.is_saturated() {
            return Err(TranscriptError::NotSaturated);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TranscriptJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TranscriptError> {
        let raw: TranscriptJson =
            serde_json::from_str(text).map_err(|e| TranscriptError::Json(e.to_string()))?;
        let config = GameConfig::new(raw.n, raw.k, raw.first_player)?;
        let mut moves = Vec::with_capacity(raw.moves.len());
        for m in raw.moves {
            let edge = Edge::try_new(m.u, m.v)?;
            moves.push(Move {
                t: m.t,
                player: m.player,
                edge,
            });
        }
        let final_graph = Graph::from_graph6(&raw.final_graph6)?;
        if final_graph.edge_count() != raw.score {
            return Err(TranscriptError::Score {
                recorded: raw.score,
                actual: final_graph.edge_count(),
            });
        }
        Ok(Self {
            config,
            moves,
            final_graph,
            complete: raw.complete,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    t: usize,
    player: Player,
    u: usize,
    v: usize,
}

fn is_true(b: &bool) -> bool {
    *b
}

fn yes() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
struct TranscriptJson {
    n: usize,
    k: usize,
    first_player: Player,
    moves: Vec<MoveJson>,
    final_graph6: String,
    score: usize,
    #[serde(rename = "final", default = "yes", skip_serializing_if = "is_true")]
    complete: bool,
}

impl From<&Transcript> for TranscriptJson {
    fn from(t: &Transcript) -> Self {
        Self {
            n: t.config.n,
            k: t.config.k,
            first_player: t.config.first_player,
            moves: t
                .moves
                .iter()
                .map(|m| MoveJson {
                    t: m.t,
                    player: m.player,
                    u: m.edge.u,
                    v: m.edge.v,
                })
                .collect(),
            final_graph6: t.final_graph.to_graph6(),
            score: t.score(),
            complete: t.complete,
        }
    }
}
