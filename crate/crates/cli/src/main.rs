use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use colorsat::harness::{interactive_play, run_sweep, verify_bounds, Panel, Theorem};
use colorsat::solver::{solve, Solver, SolverOptions};
use colorsat::strategies::by_name;
use colorsat::{run_game, GameConfig, Player, Transcript};

#[derive(Parser, Debug)]
#[command(author, version, about = "The k-colorability saturation game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GameArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "maxi")]
    first: Player,
    #[arg(long, default_value = "maxi-clique")]
    maxi: String,
    #[arg(long, default_value = "mini-star")]
    mini: String,
    /// Appended to `random` as `random:SEED`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play one game and print the score and moves.
    Play {
        #[command(flatten)]
        game: GameArgs,
        /// Write the transcript JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact game value for both starting players.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Option<usize>,
        /// Save the Maxi-first transposition table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play every cell of a parameter grid and write CSV.
    Sweep {
        /// `A..B` (inclusive), `A,B,C` or `A`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        /// `maxi`, `mini` or `both`.
        #[arg(long, default_value = "both")]
        first: String,
        #[arg(long, default_value = "maxi-clique")]
        maxi: String,
        #[arg(long, default_value = "random")]
        mini: String,
        #[arg(long, default_value = "0")]
        seeds: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the bounds against the adversary panel; exits 1 on any failure.
    Verify {
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        /// Any of `1.2,1.3,1.4`.
        #[arg(long, default_value = "1.2,1.3,1.4")]
        theorems: String,
        /// `C` in `|s - n²/3| ≤ C·n`.
        #[arg(long)]
        constant: Option<f64>,
        /// Include `optimal` in the panel up to this `n`.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play against a strategy from the terminal.
    Interactive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "maxi")]
        first: Player,
        /// The side the human plays.
        #[arg(long, default_value = "mini")]
        side: Player,
        #[arg(long, default_value = "maxi-clique")]
        opponent: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play one game and write its transcript JSON, or just the final graph6.
    Export {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        graph6: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
    std::ops::RangeInclusive<T>: Iterator<Item = T>,
{
    if let Some((a, b)) = text.split_once("..") {
        let (a, b): (T, T) = (a.trim().parse()?, b.trim().parse()?);
        return Ok((a..=b).collect());
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<T>().with_context(|| format!("bad list entry {s:?}")))
        .collect()
}

fn parse_firsts(text: &str) -> Result<Vec<Player>> {
    match text {
        "both" => Ok(vec![Player::Maxi, Player::Mini]),
        one => Ok(vec![one.parse().map_err(|e| anyhow::anyhow!("{e}"))?]),
    }
}

fn with_seed(name: &str, seed: Option<u64>) -> String {
    match seed {
        Some(s) if name == "random" => format!("random:{s}"),
        _ => name.to_string(),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn play(game: &GameArgs) -> Result<Transcript> {
    let config = GameConfig::new(game.n, game.k, game.first)?;
    let mut maxi = by_name(&with_seed(&game.maxi, game.seed), &config, Player::Maxi)?;
    let mut mini = by_name(&with_seed(&game.mini, game.seed), &config, Player::Mini)?;
    Ok(run_game(config, maxi.as_mut(), mini.as_mut())?)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Play { game, out } => {
            let tr = play(&game)?;
            let cfg = tr.config;
            println!("score {} (sat {}, ex {}) after {} moves", tr.score(), cfg.sat(), cfg.ex(), tr.moves.len());
            for mv in &tr.moves {
                println!("  t={:<3} {:<4} {}", mv.t, mv.player, mv.edge);
            }
            if let Some(p) = out {
                std::fs::write(&p, tr.to_json())?;
            }
        }
        Command::Solve { n, k, budget, out } => {
            let options = SolverOptions { budget, ..Default::default() };
            let r = solve(n, k, options)?;
            for (first, line) in [(Player::Maxi, &r.maxi_first), (Player::Mini, &r.mini_first)] {
                let pv: Vec<String> = line.principal_variation.iter().map(|e| e.to_string()).collect();
                println!("n={n} k={k} first={first}: score {} pv {}", line.score, pv.join(" "));
            }
            println!("nodes {} table hits {}", r.stats.nodes_expanded, r.stats.table_hits);
            if let Some(p) = out {
                let mut s = Solver::new(n, k, Player::Maxi, options)?;
                s.solve_root()?;
                s.save(&p)?;
            }
        }
        Command::Sweep { n, k, first, maxi, mini, seeds, seed, out } => {
            let seeds: Vec<u64> = match seed {
                Some(s) => vec![s],
                None => parse_list(&seeds)?,
            };
            let rows = run_sweep(
                &parse_list(&n)?,
                &parse_list(&k)?,
                &parse_firsts(&first)?,
                &seeds,
                &maxi,
                &mini,
                sink(out.as_deref())?,
            )?;
            eprintln!("{rows} rows");
        }
        Command::Verify { n, k, theorems, constant, budget, out } => {
            let mut panel = Panel::standard();
            if let Some(c) = constant {
                panel.thm14_constant = c;
            }
            if let Some(b) = budget {
                panel.optimal_up_to = b;
            }
            let theorems: Vec<Theorem> = theorems
                .split(',')
                .map(|t| match t.trim() {
                    "1.2" => Ok(Theorem::CliqueLower),
                    "1.3" => Ok(Theorem::StarUpper),
                    "1.4" => Ok(Theorem::FourColor),
                    other => bail!("unknown bound {other:?}"),
                })
                .collect::<Result<_>>()?;
            let reports = verify_bounds(&parse_list(&n)?, &parse_list(&k)?, &panel, &theorems);
            let mut w = sink(out.as_deref())?;
            for r in &reports {
                writeln!(w, "{r}")?;
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            writeln!(w, "{} reports, {failed} failed", reports.len())?;
            w.flush()?;
            return Ok(failed == 0);
        }
        Command::Interactive { n, k, first, side, opponent, out } => {
            let config = GameConfig::new(n, k, first)?;
            let tr = interactive_play(config, side, &opponent, io::stdin().lock(), io::stdout().lock())?;
            if !tr.complete {
                eprintln!("game abandoned after {} moves", tr.moves.len());
            }
            if let Some(p) = out {
                std::fs::write(&p, tr.to_json())?;
            }
        }
        Command::Export { game, graph6, out } => {
            let tr = play(&game)?;
            let mut w = sink(out.as_deref())?;
            if graph6 {
                writeln!(w, "{}", tr.final_graph.to_graph6())?;
            } else {
                writeln!(w, "{}", tr.to_json())?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
