use std::ffi::{CStr, CString};
use std::ptr;

use lexeq_ffi::*;

const PRESSURE: &str = include_str!("../../../games/pressure.json");
const PENNIES: &str = include_str!("../../../games/pennies.json");

fn load(json: &str) -> *mut LexeqGame {
    let src = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lexeq_game_from_json(src.as_ptr(), &mut g) }, LexeqStatus::Yes);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lexeq_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn pressure_game_answers_depend_on_epsilon() {
    let g = load(PRESSURE);
    let mut n = 0;
    assert_eq!(unsafe { lexeq_game_num_agents(g, &mut n) }, LexeqStatus::Yes);
    assert_eq!(n, 1);
    let zero = CString::new("0/1").unwrap();
    assert_eq!(unsafe { lexeq_check(g, zero.as_ptr(), ptr::null(), ptr::null_mut()) }, LexeqStatus::No);
    let tenth = CString::new("1/10").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { lexeq_check(g, tenth.as_ptr(), ptr::null(), &mut w) }, LexeqStatus::Yes);
    let doc = unsafe { CStr::from_ptr(w) }.to_str().unwrap().to_owned();
    assert!(doc.contains("\"1000/101\""));
    unsafe {
        lexeq_string_free(w);
        lexeq_game_free(g);
    }
}

#[test]
fn pennies_existence_is_no() {
    let g = load(PENNIES);
    let eps = CString::new("1/2").unwrap();
    let phi = CString::new("F same").unwrap();
    assert_eq!(unsafe { lexeq_check(g, eps.as_ptr(), phi.as_ptr(), ptr::null_mut()) }, LexeqStatus::No);
    unsafe { lexeq_game_free(g) };
}

#[test]
fn eval_reports_payoffs() {
    let g = load(PRESSURE);
    let lasso = CString::new(r#"{"prefix":[],"cycle":[{"state":"s0","decision":{"a":"stay"}}]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lexeq_eval(g, lasso.as_ptr(), &mut out) }, LexeqStatus::Yes);
    assert_eq!(unsafe { CStr::from_ptr(out) }.to_str().unwrap(), "a: sat=F mp=10/1\n");
    unsafe {
        lexeq_string_free(out);
        lexeq_game_free(g);
    }
}

#[test]
fn errors_map_to_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lexeq_game_from_json(ptr::null(), &mut g) }, LexeqStatus::NullArgument);
    let bad = CString::new("{").unwrap();
    assert_eq!(unsafe { lexeq_game_from_json(bad.as_ptr(), &mut g) }, LexeqStatus::BadInput);
    assert!(last_error().starts_with("json"));
    let g = load(PRESSURE);
    let eps = CString::new("0.1").unwrap();
    assert_eq!(unsafe { lexeq_check(g, eps.as_ptr(), ptr::null(), ptr::null_mut()) }, LexeqStatus::BadInput);
    assert!(last_error().contains("p/q"));
    let phi = CString::new("F (").unwrap();
    let eps = CString::new("0/1").unwrap();
    assert_eq!(unsafe { lexeq_check(g, eps.as_ptr(), phi.as_ptr(), ptr::null_mut()) }, LexeqStatus::Syntax);
    unsafe { lexeq_game_free(g) };
    unsafe { lexeq_game_free(ptr::null_mut()) };
}

#[test]
fn header_declares_the_api() {
    let h = include_str!("../include/lexeq.h");
    for name in [
        "lexeq_game_from_json",
        "lexeq_game_free",
        "lexeq_check",
        "lexeq_eval",
        "lexeq_string_free",
        "lexeq_last_error",
        "LEXEQ_STATUS_NO",
        "typedef struct LexeqGame LexeqGame",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}
