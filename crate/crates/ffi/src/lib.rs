//! C ABI over the lexeq solver. Games are opaque handles; every call returns
//! a `LexeqStatus` and stores a message for `lexeq_last_error` on failure.
//! Strings handed out by the library are freed with `lexeq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lexeq::arena::{parse_game, Game, LassoFile};
use lexeq::cli::parse_epsilon;
use lexeq::equilibrium::{check_emptiness, check_existence, Options, WitnessFile};
use lexeq::ltl::parse_formula;
use lexeq::Error;

/// Result of a call. `Yes` and `No` are answers; negative values are errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexeqStatus {
    Yes = 0,
    No = 1,
    NullArgument = -1,
    InvalidUtf8 = -2,
    Syntax = -3,
    InvalidGame = -4,
    Budget = -5,
    BadInput = -6,
    Io = -7,
    Panic = -8,
}

/// Loaded game.
pub struct LexeqGame {
    game: Game,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LexeqStatus {
    match e {
        Error::Syntax { .. } => LexeqStatus::Syntax,
        Error::Invalid(_) => LexeqStatus::InvalidGame,
        Error::Budget(_) | Error::SizeCap(_) => LexeqStatus::Budget,
        Error::BadInput(_) | Error::Json(_) => LexeqStatus::BadInput,
        Error::Io(_) => LexeqStatus::Io,
    }
}

struct Fail(LexeqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<LexeqStatus, Fail>) -> LexeqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            LexeqStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LexeqStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LexeqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn hand_out(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn lexeq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Parses a game document. On success `*out` owns a handle for
/// `lexeq_game_free`.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexeq_game_from_json(json: *const c_char, out: *mut *mut LexeqGame) -> LexeqStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(LexeqStatus::NullArgument, "out is null".into()));
        }
        let game = parse_game(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(LexeqGame { game }));
        Ok(LexeqStatus::Yes)
    })
}

/// Releases a game handle. Null is ignored.
///
/// # Safety
/// `game` is null or a handle from `lexeq_game_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lexeq_game_free(game: *mut LexeqGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of agents of the game.
///
/// # Safety
/// `game` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexeq_game_num_agents(game: *const LexeqGame, out: *mut usize) -> LexeqStatus {
    guard(|| {
        if game.is_null() || out.is_null() {
            return Err(Fail(LexeqStatus::NullArgument, "game or out is null".into()));
        }
        *out = (*game).game.arena().num_agents();
        Ok(LexeqStatus::Yes)
    })
}

/// Decides whether a strict epsilon equilibrium exists (`formula` null) or
/// one whose play satisfies the LTL `formula`. `epsilon` is `p/q`. On `Yes`
/// and non-null `witness_json`, the witness document is stored there.
///
/// # Safety
/// `game` is a live handle; strings are NUL-terminated or, for `formula`,
/// null; `witness_json` is null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexeq_check(
    game: *const LexeqGame,
    epsilon: *const c_char,
    formula: *const c_char,
    witness_json: *mut *mut c_char,
) -> LexeqStatus {
    guard(|| {
        if game.is_null() {
            return Err(Fail(LexeqStatus::NullArgument, "game is null".into()));
        }
        let g = &(*game).game;
        let eps = parse_epsilon(text(epsilon, "epsilon")?)?;
        let opts = Options::default();
        let found = if formula.is_null() {
            check_emptiness(g, &eps, &opts)?
        } else {
            let phi = parse_formula(text(formula, "formula")?)?;
            match g {
                Game::Ltl(lg) => check_existence(lg, &phi, &eps, &opts)?,
                Game::Parity(_) => return Err(Fail(LexeqStatus::BadInput, "formula needs a game with LTL goals".into())),
            }
        };
        let Some(w) = found else { return Ok(LexeqStatus::No) };
        if !witness_json.is_null() {
            let doc = serde_json::to_string(&WitnessFile::new(g.arena(), &w)).map_err(Error::from)?;
            *witness_json = hand_out(doc);
        }
        Ok(LexeqStatus::Yes)
    })
}

/// Payoffs on a lasso document, one `agent: sat=T mp=p/q` line per agent.
///
/// # Safety
/// `game` is a live handle; `lasso_json` is NUL-terminated; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn lexeq_eval(game: *const LexeqGame, lasso_json: *const c_char, out: *mut *mut c_char) -> LexeqStatus {
    guard(|| {
        if game.is_null() || out.is_null() {
            return Err(Fail(LexeqStatus::NullArgument, "game or out is null".into()));
        }
        let g = &(*game).game;
        let file: LassoFile = serde_json::from_str(text(lasso_json, "lasso_json")?).map_err(Error::from)?;
        let l = file.to_lasso(g.arena())?;
        l.check(g.arena(), l.start())?;
        let lines: String = g.arena().agents.iter().zip(g.payoffs(&l)).map(|(a, p)| format!("{a}: {p}\n")).collect();
        *out = hand_out(lines);
        Ok(LexeqStatus::Yes)
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lexeq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
