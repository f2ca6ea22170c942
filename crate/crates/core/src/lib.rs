//! The colorability saturation game: two players alternately add edges to
//! an `n`-vertex graph while it stays `k`-colorable; Maxi wants the final
//! graph to have many edges, Mini few.

pub mod canon;
pub mod coloring;
mod flow;
pub mod game;
pub mod graph;
pub mod harness;
pub mod potential;
pub mod solver;
pub mod strategies;

pub use coloring::{is_k_colorable, is_saturated, k_coloring, legal_moves, lemma21_extendable, Coloring, Position};
pub use game::{run_game, Game, GameConfig, GameError, Move, Player, Strategy, StrategyError, Transcript};
pub use graph::{binom2, saturation_number, turan_number, Edge, Graph, GraphError, Vertex, VertexSet};
