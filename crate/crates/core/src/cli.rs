//! Command-line front end. `run` does the work and reports a yes/no answer;
//! `main_with_args` maps it to exit codes 0 (yes), 1 (no) and 2 (error).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::arena::{load_game, parity_product_with_budget, write_parity_game, Arena, Game, Lasso, LassoFile, LexParityGame};
use crate::automata::DEFAULT_DPW_BUDGET;
use crate::dot::export_dot;
use crate::equilibrium::{
    check_emptiness, check_existence, verify_ltl_profile, verify_profile, Options, VerifyReport, Witness, WitnessFile,
    DEFAULT_MAX_Z_VECTORS,
};
use crate::error::{Error, Result};
use crate::ltl::parse_formula;
use crate::oracle::negation_demo;
use crate::rational::{fmt_q, parse_q, Q};
use crate::zerosum::{lex_value, punishing_table};

#[derive(Debug, Parser)]
#[command(name = "lexeq", version, about = "Strict epsilon Nash equilibria for lexicographic LTL/parity and mean-payoff games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Budgets {
    /// State budget for each LTL to parity automaton translation.
    #[arg(long, default_value_t = DEFAULT_DPW_BUDGET)]
    pub max_dpw_states: usize,
    /// Budget on threshold vectors examined by the search.
    #[arg(long, default_value_t = DEFAULT_MAX_Z_VECTORS)]
    pub max_z_vectors: usize,
    /// Worker threads for the threshold search.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

impl Budgets {
    fn options(&self) -> Options {
        Options { max_dpw_states: self.max_dpw_states, max_z_vectors: self.max_z_vectors, jobs: self.jobs }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emptiness check, or existence check with --formula.
    Check {
        #[arg(long)]
        game: PathBuf,
        /// Tolerance as an exact rational p/q.
        #[arg(long)]
        epsilon: String,
        /// LTL formula the equilibrium play must satisfy.
        #[arg(long)]
        formula: Option<String>,
        /// Where to write the witness JSON on success.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Punishing-value table: one `agent state sat mp` line per pair.
    Value {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DPW_BUDGET)]
        max_dpw_states: usize,
    },
    /// Lexicographic value of a two-agent game, the first agent maximizing.
    Zerosum {
        #[arg(long)]
        game: PathBuf,
        /// Start state (default: the initial state).
        #[arg(long)]
        state: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DPW_BUDGET)]
        max_dpw_states: usize,
    },
    /// Write the parity product of an LTL game in the game file format.
    Product {
        #[arg(long)]
        game: PathBuf,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DPW_BUDGET)]
        max_dpw_states: usize,
    },
    /// Payoff of every agent on a lasso.
    Eval {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        lasso: PathBuf,
    },
    /// Check that a witness profile is a strict epsilon equilibrium.
    Verify {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = DEFAULT_DPW_BUDGET)]
        max_dpw_states: usize,
    },
    /// Prefix averages showing why mean payoff is not closed under negation.
    DemoNegation,
    /// DOT export of a game, optionally highlighting a witness play.
    Dot {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Tolerance in the strict `p/q` form, non-negative.
pub fn parse_epsilon(s: &str) -> Result<Q> {
    if !s.contains('/') {
        return Err(Error::BadInput(format!("epsilon must be a rational p/q, got {s:?}")));
    }
    let eps = parse_q(s)?;
    if eps < Q::from_integer(0.into()) {
        return Err(Error::BadInput(format!("epsilon must be non-negative, got {s}")));
    }
    Ok(eps)
}

fn parity_view(game: &Game, budget: usize) -> Result<LexParityGame> {
    match game {
        Game::Parity(g) => Ok(g.clone()),
        Game::Ltl(g) => Ok(parity_product_with_budget(g, budget)?.game),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Lasso as state names, `prefix | cycle`.
pub fn format_play(arena: &Arena, l: &Lasso) -> String {
    let names = |xs: &[(usize, usize)]| xs.iter().map(|&(s, _)| arena.states[s].as_str()).collect::<Vec<_>>().join(" ");
    format!("{} | {}", names(&l.prefix), names(&l.cycle)).trim_start().to_string()
}

fn write_witness(out: &mut dyn Write, arena: &Arena, w: &Witness) -> Result<()> {
    writeln!(out, "epsilon: {}", fmt_q(&w.epsilon))?;
    for (a, p) in arena.agents.iter().zip(&w.payoffs) {
        writeln!(out, "{a}: {p}")?;
    }
    writeln!(out, "play: {}", format_play(arena, &w.play))?;
    let sizes: Vec<String> = arena.agents.iter().zip(&w.profile).map(|(a, m)| format!("{a}={}", m.num_states())).collect();
    writeln!(out, "machines: {}", sizes.join(" "))?;
    Ok(())
}

fn write_report(out: &mut dyn Write, arena: &Arena, r: &VerifyReport) -> Result<()> {
    for (a, p) in arena.agents.iter().zip(&r.payoffs) {
        writeln!(out, "{a}: {p}")?;
    }
    for d in &r.violations {
        writeln!(out, "violation: {} step {} action {} reaches {}", arena.agents[d.agent], d.step, arena.actions[d.action], d.value)?;
    }
    Ok(())
}

/// Runs one subcommand, writing its report to `out`. Returns the yes/no answer.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Check { game, epsilon, formula, witness, budgets } => {
            let eps = parse_epsilon(epsilon)?;
            let g = load_game(game)?;
            let opts = budgets.options();
            let found = match formula {
                None => check_emptiness(&g, &eps, &opts)?,
                Some(f) => {
                    let phi = parse_formula(f)?;
                    match &g {
                        Game::Ltl(lg) => check_existence(lg, &phi, &eps, &opts)?,
                        Game::Parity(_) => return Err(Error::BadInput("--formula needs a game with LTL goals".into())),
                    }
                }
            };
            match found {
                Some(w) => {
                    writeln!(out, "RESULT: YES")?;
                    write_witness(out, g.arena(), &w)?;
                    if let Some(p) = witness {
                        std::fs::write(p, serde_json::to_string_pretty(&WitnessFile::new(g.arena(), &w))?)?;
                    }
                    Ok(true)
                }
                None => {
                    writeln!(out, "RESULT: NO")?;
                    Ok(false)
                }
            }
        }
        Command::Value { game, max_dpw_states } => {
            let h = parity_view(&load_game(game)?, *max_dpw_states)?;
            let table = punishing_table(&h);
            for (a, agent) in h.arena.agents.iter().enumerate() {
                for (s, state) in h.arena.states.iter().enumerate() {
                    let p = table.get(a, s);
                    writeln!(out, "{agent} {state} {} {}", if p.sat { "T" } else { "F" }, fmt_q(&p.mp))?;
                }
            }
            Ok(true)
        }
        Command::Zerosum { game, state, max_dpw_states } => {
            let g = load_game(game)?;
            if g.arena().num_agents() != 2 {
                return Err(Error::BadInput(format!("zerosum needs exactly two agents, got {}", g.arena().num_agents())));
            }
            let h = parity_view(&g, *max_dpw_states)?;
            let start = match state {
                None => h.arena.initial,
                Some(name) => match &g {
                    Game::Parity(_) => h.arena.state_index(name)?,
                    Game::Ltl(_) => return Err(Error::BadInput("--state is only supported for parity games".into())),
                },
            };
            writeln!(out, "{}: {}", h.arena.agents[0], lex_value(&h, start))?;
            Ok(true)
        }
        Command::Product { game, out: path, max_dpw_states } => {
            let h = parity_view(&load_game(game)?, *max_dpw_states)?;
            emit(out, path.as_deref(), &(serde_json::to_string_pretty(&write_parity_game(&h))? + "\n"))?;
            Ok(true)
        }
        Command::Eval { game, lasso } => {
            let g = load_game(game)?;
            let file: LassoFile = read_json(lasso)?;
            let l = file.to_lasso(g.arena())?;
            l.check(g.arena(), l.start())?;
            for (a, p) in g.arena().agents.iter().zip(g.payoffs(&l)) {
                writeln!(out, "{a}: {p}")?;
            }
            Ok(true)
        }
        Command::Verify { game, witness, epsilon, max_dpw_states } => {
            let eps = parse_epsilon(epsilon)?;
            let g = load_game(game)?;
            let file: WitnessFile = read_json(witness)?;
            let w = file.to_witness(g.arena())?;
            let report = match &g {
                Game::Parity(h) => verify_profile(h, &w.profile, &eps)?,
                Game::Ltl(lg) => verify_ltl_profile(lg, &w.profile, &eps, *max_dpw_states)?,
            };
            writeln!(out, "RESULT: {}", if report.accepted() { "YES" } else { "NO" })?;
            write_report(out, g.arena(), &report)?;
            Ok(report.accepted())
        }
        Command::DemoNegation => {
            write!(out, "{}", negation_demo()?)?;
            Ok(true)
        }
        Command::Dot { game, witness, out: path } => {
            let g = load_game(game)?;
            let play = match witness {
                Some(p) => Some(read_json::<WitnessFile>(p)?.play.to_lasso(g.arena())?),
                None => None,
            };
            emit(out, path.as_deref(), &export_dot(&g, play.as_ref()))?;
            Ok(true)
        }
    }
}

/// Single-line error text: `error[kind]: message`.
pub fn error_line(e: &Error) -> String {
    format!("error[{}]: {}", e.kind(), e).replace(['\n', '\r'], " ")
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "error[usage]: {first}");
            return 2;
        }
    };
    match run(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "{}", error_line(&e));
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(std::iter::once("lexeq").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn epsilon_must_be_a_fraction() {
        assert!(parse_epsilon("1/2").is_ok());
        assert!(parse_epsilon("0.5").is_err());
        assert!(parse_epsilon("1").is_err());
        assert!(parse_epsilon("-1/2").is_err());
    }

    #[test]
    fn errors_are_single_line_with_code_two() {
        let (code, out, err) = run_args(&["check", "--game", "/nonexistent.json", "--epsilon", "0/1"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1);
        assert!(err.starts_with("error[io]:"));
        let (code, _, err) = run_args(&["check", "--epsilon", "0/1"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn negation_demo_exits_zero() {
        let (code, out, _) = run_args(&["demo-negation"]);
        assert_eq!(code, 0);
        assert!(out.contains("n=5"));
    }
}
