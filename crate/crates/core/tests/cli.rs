use std::path::PathBuf;
use std::process::Command;

fn games() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("lexeq-cli-{}-{name}", std::process::id()))
}

fn lexeq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lexeq")).args(args).output().expect("run lexeq");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn game(name: &str) -> String {
    games().join(name).to_string_lossy().into_owned()
}

#[test]
fn warehouse_existence_writes_a_witness() {
    let w = scratch("w.json");
    let (code, out, _) = lexeq(&[
        "check",
        "--game",
        &game("warehouse.json"),
        "--epsilon",
        "0/1",
        "--formula",
        "(G F load1) & (G F load2)",
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("RESULT: YES"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    for robot in ["robot1", "robot2"] {
        assert_eq!(doc["payoffs"][robot]["mp"], "1/6");
    }
    let (code, out, _) = lexeq(&["verify", "--game", &game("warehouse.json"), "--witness", w.to_str().unwrap(), "--epsilon", "0/1"]);
    assert_eq!((code, out.lines().next()), (0, Some("RESULT: YES")));
    std::fs::remove_file(w).unwrap();
}

#[test]
fn pennies_exits_one() {
    let (code, out, err) = lexeq(&["check", "--game", &game("pennies.json"), "--epsilon", "0/1"]);
    assert_eq!((code, out.as_str(), err.as_str()), (1, "RESULT: NO\n", ""));
}

#[test]
fn eval_on_an_even_self_loop() {
    let dir = scratch("eval");
    std::fs::create_dir_all(&dir).unwrap();
    let g = dir.join("g.json");
    let l = dir.join("l.json");
    std::fs::write(&g, r#"{"agents":["a"],"actions":["x"],"states":[{"name":"s","weights":{"a":5}}],"initial":"s","transitions":[{"from":"s","decision":{"a":"x"},"to":"s"}],"goals_parity":{"a":{"s":2}}}"#).unwrap();
    std::fs::write(&l, r#"{"prefix":[],"cycle":[{"state":"s","decision":{"a":"x"}}]}"#).unwrap();
    let (code, out, _) = lexeq(&["eval", "--game", g.to_str().unwrap(), "--lasso", l.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "a: sat=T mp=5/1\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn product_gives_the_same_verdict() {
    let p = scratch("product.json");
    let (code, _, _) = lexeq(&["product", "--game", &game("warehouse.json"), "--out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let direct = lexeq(&["check", "--game", &game("warehouse.json"), "--epsilon", "0/1"]);
    let via = lexeq(&["check", "--game", p.to_str().unwrap(), "--epsilon", "0/1"]);
    assert_eq!(direct.0, via.0);
    assert_eq!(direct.1.lines().take(4).collect::<Vec<_>>(), via.1.lines().take(4).collect::<Vec<_>>());
    std::fs::remove_file(p).unwrap();
}

#[test]
fn dot_is_stable_and_highlights_the_play() {
    let w = scratch("dot-w.json");
    let (code, _, _) = lexeq(&["check", "--game", &game("warehouse.json"), "--epsilon", "0/1", "--witness", w.to_str().unwrap()]);
    assert_eq!(code, 0);
    let args = ["dot", "--game", &game("warehouse.json"), "--witness", w.to_str().unwrap()];
    let (code, a, _) = lexeq(&args);
    let (_, b, _) = lexeq(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a.matches("color=red").count(), 7);
    assert_eq!(a.matches("peripheries=2").count(), 1);
    std::fs::remove_file(w).unwrap();
}

#[test]
fn errors_are_one_line_with_exit_two() {
    for args in [
        vec!["check", "--game", "/nonexistent.json", "--epsilon", "0/1"],
        vec!["check", "--game", "/nonexistent.json", "--epsilon", "0.5"],
        vec!["frobnicate"],
    ] {
        let (code, out, err) = lexeq(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error["));
    }
}
