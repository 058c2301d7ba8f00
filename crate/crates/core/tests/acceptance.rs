//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Random instances come from fixed seeds.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lexeq::arena::{load_game, parity_product, Arena, Game, Lasso, LexLtlGame, Payoff};
use lexeq::automata::ltl_to_dpw;
use lexeq::cli::main_with_args;
use lexeq::equilibrium::{check_emptiness, embed_ltl_game, verify_ltl_profile, Options, WitnessFile};
use lexeq::ltl::{eval_masks, parse_formula, LassoWord, Ltl};
use lexeq::oracle::{bounded_unroll_eval, brute_fsne_ltl, brute_lex_value_exact, brute_threshold_lasso, negation_demo, unroll_bound};
use lexeq::pathfinder::{find_threshold_lasso, MultiWeightedGraph};
use lexeq::rational::{fmt_q, frac, parse_q, q, Q};
use lexeq::zerosum::{lex_values, simulate_profile, Player, StrategyMachine, TurnBasedGame};

type Check = Result<String, String>;

/// (id, name, time limit in seconds, check)
type Criterion = (&'static str, &'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn games_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games")
}

fn game_path(name: &str) -> String {
    games_dir().join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("lexeq-acceptance-{}-{name}", std::process::id()))
}

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("lexeq").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn ltl_game(name: &str) -> LexLtlGame {
    match load_game(&games_dir().join(name)).expect("load game") {
        Game::Ltl(g) => g,
        Game::Parity(_) => panic!("{name} has parity goals"),
    }
}

fn witness_from(path: &PathBuf, arena: &Arena) -> Result<lexeq::equilibrium::Witness, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let file: WitnessFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    file.to_witness(arena).map_err(|e| e.to_string())
}

fn play_masks(g: &LexLtlGame, l: &Lasso) -> (Vec<u64>, Vec<u64>) {
    (l.prefix.iter().map(|&(s, _)| g.labels[s]).collect(), l.cycle.iter().map(|&(s, _)| g.labels[s]).collect())
}

fn criterion_1() -> Check {
    let g = ltl_game("warehouse.json");
    let wpath = scratch("warehouse-emptiness.json");
    let (code, out, err) =
        cli(&["check", "--game", &game_path("warehouse.json"), "--epsilon", "0/1", "--witness", wpath.to_str().unwrap()]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    ensure(out.starts_with("RESULT: YES\n"), || format!("unexpected output {out:?}"))?;
    let w = witness_from(&wpath, &g.arena)?;
    let _ = std::fs::remove_file(&wpath);
    let expected = Payoff::new(true, frac(1, 6));
    let actual = g.payoffs(&w.play);
    ensure(actual.iter().all(|p| *p == expected), || format!("payoffs {actual:?}"))?;
    let report =
        verify_ltl_profile(&g, &w.profile, &Q::from_integer(0.into()), Options::default().max_dpw_states).map_err(|e| e.to_string())?;
    ensure(report.accepted(), || format!("witness rejected: {:?}", report.violations))?;
    Ok(format!("payoffs (T,1/6) (T,1/6), cycle length {}, witness verified", w.play.cycle.len()))
}

/// Idle profile: both robots stay forever. The exact best deviation gain is
/// reported and the verdict checked on both sides of it.
fn idle_profile() -> Check {
    let g = ltl_game("warehouse.json");
    let stay = g.arena.action_index("stay").map_err(|e| e.to_string())?;
    let profile = vec![StrategyMachine::constant(stay, g.arena.num_decisions()); 2];
    let budget = Options::default().max_dpw_states;
    let at = |eps: &Q| verify_ltl_profile(&g, &profile, eps, budget).map_err(|e| e.to_string());
    let report = at(&frac(1, 6))?;
    let pay = &report.payoffs;
    ensure(pay.iter().all(|p| *p == Payoff::new(true, q(0))), || format!("idle payoffs {pay:?}"))?;
    let d: Vec<Payoff> = report.best.iter().map(|b| b.as_ref().map(|d| d.value.clone()).unwrap()).collect();
    ensure(d.iter().all(|p| *p == Payoff::new(true, frac(1, 6))), || format!("best deviations {d:?}"))?;
    ensure(!report.accepted(), || "accepted at 1/6".into())?;
    ensure(at(&frac(1, 5))?.accepted(), || "rejected at 1/5".into())?;
    Ok("d* = (T,1/6) per robot over idle (T,0): rejected at eps = 1/6 (strict), accepted at 1/5".into())
}

fn criterion_2() -> Check {
    let g = ltl_game("warehouse.json");
    let text = "(G F load1) & (G F load2)";
    let wpath = scratch("warehouse-existence.json");
    let (code, out, err) = cli(&[
        "check",
        "--game",
        &game_path("warehouse.json"),
        "--epsilon",
        "0/1",
        "--formula",
        text,
        "--witness",
        wpath.to_str().unwrap(),
    ]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    ensure(out.starts_with("RESULT: YES\n"), || format!("unexpected output {out:?}"))?;
    let w = witness_from(&wpath, &g.arena)?;
    let _ = std::fs::remove_file(&wpath);
    let phi = parse_formula(text).map_err(|e| e.to_string())?;
    let (pre, cyc) = play_masks(&g, &w.play);
    ensure(eval_masks(&phi, &g.atoms, &pre, &cyc), || "play violates the formula".into())?;
    let report = verify_ltl_profile(&g, &w.profile, &q(0), Options::default().max_dpw_states).map_err(|e| e.to_string())?;
    ensure(report.accepted(), || format!("witness rejected: {:?}", report.violations))?;
    let pay: Vec<String> = report.payoffs.iter().map(|p| p.to_string()).collect();
    Ok(format!("play satisfies the formula, payoffs [{}], witness verified", pay.join("; ")))
}

fn criterion_3() -> Check {
    let mut times = Vec::new();
    for eps in ["0/1", "1/10", "1/2", "1/1"] {
        let t = Instant::now();
        let (code, out, err) = cli(&["check", "--game", &game_path("pennies.json"), "--epsilon", eps]);
        let dt = t.elapsed();
        ensure(code == 1 && out.starts_with("RESULT: NO\n"), || format!("eps {eps}: exit {code} {out:?} {err}"))?;
        ensure(dt < Duration::from_secs(5), || format!("eps {eps} took {dt:?}"))?;
        times.push(format!("{eps}:{:.2}s", dt.as_secs_f64()));
    }
    Ok(format!("NO for every epsilon ({})", times.join(" ")))
}

fn criterion_4() -> Check {
    let game = load_game(&games_dir().join("pressure.json")).map_err(|e| e.to_string())?;
    let Game::Parity(h) = &game else { return Err("pressure game should have parity goals".into()) };
    let tb = TurnBasedGame {
        owner: vec![Player::Max; h.arena.num_states()],
        succ: h.arena.adjacency(),
        weight: h.weights[0].clone(),
        priority: h.priorities[0].clone(),
    };
    let sup = brute_lex_value_exact(&tb).map_err(|e| e.to_string())?[h.arena.initial].clone();
    ensure(sup == Payoff::new(true, q(10)), || format!("oracle value {sup:?}"))?;
    let opts = Options::default();
    let t = Instant::now();
    let none = check_emptiness(&game, &q(0), &opts).map_err(|e| e.to_string())?;
    ensure(none.is_none(), || "witness found at eps = 0".into())?;
    let eps = frac(1, 10);
    let w = check_emptiness(&game, &eps, &opts).map_err(|e| e.to_string())?.ok_or("no witness at eps = 1/10")?;
    let dt = t.elapsed();
    let mp = &w.payoffs[0].mp;
    ensure(w.payoffs[0].sat && *mp > &sup.mp - &eps && *mp < sup.mp, || format!("witness payoff {}", w.payoffs[0]))?;
    ensure(dt < Duration::from_secs(5), || format!("took {dt:?}"))?;
    Ok(format!("NO at 0, YES at 1/10 with cycle mean {} (sup (T,10) not attained)", fmt_q(mp)))
}

fn random_turn_game(rng: &mut ChaCha8Rng) -> TurnBasedGame {
    let n = rng.gen_range(1..=6);
    TurnBasedGame {
        owner: (0..n).map(|_| if rng.gen() { Player::Max } else { Player::Min }).collect(),
        succ: (0..n).map(|_| random_succ(rng, n)).collect(),
        weight: (0..n).map(|_| rng.gen_range(-3..=3)).collect(),
        priority: (0..n).map(|_| rng.gen_range(0..=3)).collect(),
    }
}

fn random_succ(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=n.min(3));
    let mut s: BTreeSet<usize> = BTreeSet::new();
    while s.len() < k {
        s.insert(rng.gen_range(0..n));
    }
    s.into_iter().collect()
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut vertices = 0;
    for i in 0..100 {
        let g = random_turn_game(&mut rng);
        let fast = lex_values(&g);
        let slow = brute_lex_value_exact(&g).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("game {i}: {g:?}\nsolver {fast:?}\noracle {slow:?}"))?;
        vertices += g.len();
    }
    Ok(format!("100 games, {vertices} vertices, all values equal"))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut yes, mut no) = (0, 0);
    for i in 0..500 {
        let n = rng.gen_range(1..=6);
        let g = MultiWeightedGraph {
            adj: (0..n).map(|_| random_succ(&mut rng, n)).collect(),
            weights: (0..2).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect(),
            priorities: (0..2).map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect()).collect(),
            start: 0,
        };
        let f: Vec<Payoff> = (0..2).map(|_| Payoff::new(rng.gen(), frac(rng.gen_range(-4..=2), rng.gen_range(1..=2)))).collect();
        let fast = find_threshold_lasso(&g, &f);
        let slow = brute_threshold_lasso(&g, &f, 12).map_err(|e| e.to_string())?;
        ensure(fast.is_some() == slow.is_some(), || {
            format!("graph {i}: {g:?} f {f:?}: solver {} oracle {}", fast.is_some(), slow.is_some())
        })?;
        if let Some(l) = &fast {
            for (a, fa) in f.iter().enumerate() {
                ensure(l.payoff(&g, a) > *fa, || format!("graph {i}: lasso misses threshold of index {a}"))?;
            }
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("500 graphs agree ({yes} with a lasso, {no} without)"))
}

fn random_formula(rng: &mut ChaCha8Rng, atoms: &[&str], size: usize) -> Ltl {
    if size <= 1 {
        return match rng.gen_range(0..6) {
            0 => Ltl::True,
            1 => Ltl::False,
            _ => Ltl::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    if size == 2 || rng.gen_bool(0.4) {
        let f = random_formula(rng, atoms, size - 1);
        return match rng.gen_range(0..4) {
            0 => Ltl::not(f),
            1 => Ltl::next(f),
            2 => Ltl::eventually(f),
            _ => Ltl::always(f),
        };
    }
    let left = rng.gen_range(1..=size - 2);
    let a = random_formula(rng, atoms, left);
    let b = random_formula(rng, atoms, size - 1 - left);
    match rng.gen_range(0..4) {
        0 => Ltl::and(a, b),
        1 => Ltl::or(a, b),
        2 => Ltl::implies(a, b),
        _ => Ltl::until(a, b),
    }
}

/// All lassos over `letters` masks with `|prefix| + |cycle| <= max`.
fn all_lassos(letters: u64, max: usize) -> Vec<(Vec<u64>, Vec<u64>)> {
    let mut out = Vec::new();
    for total in 1..=max {
        for cyc in 1..=total {
            let count = letters.pow(total as u32);
            for code in 0..count {
                let mut c = code;
                let word: Vec<u64> = (0..total)
                    .map(|_| {
                        let l = c % letters;
                        c /= letters;
                        l
                    })
                    .collect();
                out.push((word[..total - cyc].to_vec(), word[total - cyc..].to_vec()));
            }
        }
    }
    out
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let atoms = ["p", "q"];
    let names: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
    let lassos = all_lassos(4, 5);
    let words: Vec<LassoWord> = lassos
        .iter()
        .map(|(pre, cyc)| {
            let set = |m: &u64| (0..2).filter(|i| m >> i & 1 == 1).map(|i| names[i].clone()).collect::<BTreeSet<_>>();
            LassoWord::new(pre.iter().map(set).collect(), cyc.iter().map(set).collect())
        })
        .collect();
    let mut states = 0;
    for i in 0..200 {
        let size = rng.gen_range(1..=6);
        let f = random_formula(&mut rng, &atoms, size);
        let dpw = ltl_to_dpw(&f, &names).map_err(|e| e.to_string())?;
        states = states.max(dpw.num_states());
        for ((pre, cyc), w) in lassos.iter().zip(&words) {
            let auto = dpw.accepts_masks(pre, cyc);
            let exact = eval_masks(&f, &names, pre, cyc);
            let unrolled = bounded_unroll_eval(&f, w, unroll_bound(&f, w)).map_err(|e| e.to_string())?;
            ensure(auto == exact && exact == unrolled, || {
                format!("formula {i} {f}: lasso {pre:?}({cyc:?})^w automaton {auto} evaluator {exact} unrolled {unrolled}")
            })?;
        }
    }
    Ok(format!("200 formulas x {} lassos agree, largest automaton {states} states", lassos.len()))
}

fn random_arena(rng: &mut ChaCha8Rng, agents: usize, max_states: usize) -> Arena {
    let n = rng.gen_range(2..=max_states);
    let decisions = 1usize << agents;
    Arena {
        agents: (0..agents).map(|a| format!("a{a}")).collect(),
        actions: vec!["x".into(), "y".into()],
        states: (0..n).map(|s| format!("s{s}")).collect(),
        initial: 0,
        succ: (0..n).map(|_| (0..decisions).map(|_| rng.gen_range(0..n)).collect()).collect(),
    }
}

fn random_machine(rng: &mut ChaCha8Rng, decisions: usize) -> StrategyMachine {
    let m = rng.gen_range(1..=3);
    StrategyMachine {
        initial: 0,
        update: (0..m).map(|_| (0..decisions).map(|_| rng.gen_range(0..m)).collect()).collect(),
        output: (0..m).map(|_| rng.gen_range(0..2)).collect(),
        labels: (0..m).map(|i| format!("m{i}")).collect(),
    }
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let atoms = ["p", "q"];
    let mut profiles = 0;
    for i in 0..50 {
        let arena = random_arena(&mut rng, 2, 4);
        let n = arena.num_states();
        let g = LexLtlGame {
            weights: (0..2).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect(),
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            labels: (0..n).map(|_| rng.gen_range(0..4)).collect(),
            goals: (0..2)
                .map(|_| {
                    let s = rng.gen_range(1..=5);
                    random_formula(&mut rng, &atoms, s)
                })
                .collect(),
            arena,
        };
        let prod = parity_product(&g).map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let profile: Vec<StrategyMachine> = (0..2).map(|_| random_machine(&mut rng, g.arena.num_decisions())).collect();
            let play = simulate_profile(&g.arena, &profile, g.arena.initial);
            let lifted = simulate_profile(&prod.game.arena, &profile, prod.game.arena.initial);
            let (a, b) = (g.payoffs(&play), prod.game.payoffs(&lifted));
            ensure(a == b, || format!("game {i}: arena payoffs {a:?} product payoffs {b:?}"))?;
            profiles += 1;
        }
    }
    Ok(format!("{profiles} profiles over 50 games: identical payoffs"))
}

fn criterion_9() -> Check {
    let report = negation_demo().map_err(|e| e.to_string())?;
    ensure(report.rows.len() == 6, || format!("{} rows", report.rows.len()))?;
    for r in &report.rows {
        ensure(r.avg_a <= frac(1, 4) && r.avg_b >= frac(3, 4), || format!("row n={} violates the bounds", r.n))?;
    }
    ensure(report.rows[1].a == 11 && report.rows[1].b == 35, || "a_1/b_1 differ from 11/35".into())?;
    Ok("avg(a_n) <= 1/4 and avg(b_n) >= 3/4 for n = 0..5".into())
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let atoms = ["p", "q"];
    let half = parse_q("1/2").map_err(|e| e.to_string())?;
    let (mut yes, mut no) = (0, 0);
    for i in 0..20 {
        let mut arena = random_arena(&mut rng, 2, 4);
        if i % 2 == 1 {
            // successor depends only on whether the two actions match, as in matching pennies
            for row in arena.succ.iter_mut() {
                let (same, diff) = (row[0], row[1]);
                *row = vec![same, diff, diff, same];
            }
        }
        let labels = (0..arena.num_states()).map(|_| rng.gen_range(0..4)).collect();
        let size = rng.gen_range(1..=4);
        let first = random_formula(&mut rng, &atoms, size);
        // odd games are zero-sum on the qualitative goal, which rules out many equilibria
        let second = if i % 2 == 1 { Ltl::not(first.clone()) } else { random_formula(&mut rng, &atoms, size) };
        let goals = vec![first, second];
        let g = embed_ltl_game(arena, atoms.iter().map(|s| s.to_string()).collect(), labels, goals);
        let solver = check_emptiness(&Game::Ltl(g.clone()), &half, &Options::default()).map_err(|e| e.to_string())?;
        let oracle = brute_fsne_ltl(&g, 2, 8).map_err(|e| e.to_string())?;
        ensure(solver.is_some() == oracle.is_some(), || {
            format!("game {i}: goals {} / {}: solver {} oracle {}", g.goals[0], g.goals[1], solver.is_some(), oracle.is_some())
        })?;
        if let Some(w) = solver {
            ensure(w.payoffs.iter().all(|p| p.mp == q(0)), || format!("game {i}: nonzero mean payoff"))?;
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("20 games agree ({yes} with an equilibrium, {no} without)"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1", "warehouse emptiness at eps 0", 60, criterion_1),
        ("1b", "warehouse idle profile", 60, idle_profile),
        ("2", "warehouse existence with G F load", 120, criterion_2),
        ("3", "matching pennies has no equilibrium", 20, criterion_3),
        ("4", "pressure game needs epsilon", 5, criterion_4),
        ("5", "zero-sum values vs enumeration", 600, criterion_5),
        ("6", "threshold lassos vs enumeration", 600, criterion_6),
        ("7", "automata vs lasso evaluation", 900, criterion_7),
        ("8", "payoff invariance under the product", 600, criterion_8),
        ("9", "negation demo", 1, criterion_9),
        ("10", "embedded LTL games vs bounded search", 600, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let dt = start.elapsed();
        let outcome = match outcome {
            Ok(_) if dt > Duration::from_secs(limit) => Err(format!("exceeded {limit}s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({:.2}s) {detail}", dt.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {id} [{name}]: FAIL ({:.2}s) {}", dt.as_secs_f64(), why.replace('\n', " | "));
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
