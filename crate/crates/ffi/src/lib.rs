//! C ABI over the slrsim core.
//!
//! Corpora and strategy outcomes cross the boundary as opaque handles.
//! Every function returns an [`SlrStatus`]; on failure the message is kept
//! per thread and read with [`slr_last_error`]. Strings handed out by this
//! library are owned by the caller and released with [`slr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use slrsim::analytics::{compute_metrics, Metrics};
use slrsim::corpus::{validate, Corpus};
use slrsim::engine::{run_strategy, EngineError, StrategyOutcome, StrategySpec};
use slrsim::ingest::{corpus_from_json, load_corpus, LoadError};
use slrsim::report::render_citation_graph;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlrStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A file could not be read.
    Io = 3,
    /// Input text was not well-formed.
    Parse = 4,
    /// Input was well-formed but rejected by the model or the engine.
    Invalid = 5,
    /// Snowballing hit the iteration cap; the partial outcome is returned.
    CapExceeded = 6,
    /// An internal error was caught at the boundary.
    Panic = 7,
}

/// Loaded corpus.
pub struct SlrCorpus(Corpus);

/// Result of running one strategy.
pub struct SlrOutcome(StrategyOutcome);

/// Precision, recall and F-measure in percent.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlrMetrics {
    /// NaN when nothing was visited.
    pub precision: f64,
    pub precision_is_nan: bool,
    pub recall: f64,
    pub f_measure: f64,
    pub hits: usize,
    pub visited: usize,
    pub oracle_size: usize,
}

impl From<&Metrics> for SlrMetrics {
    fn from(m: &Metrics) -> Self {
        SlrMetrics {
            precision: m.precision.unwrap_or(f64::NAN),
            precision_is_nan: m.precision.is_none(),
            recall: m.recall,
            f_measure: m.f_measure,
            hits: m.hits,
            visited: m.visited,
            oracle_size: m.oracle_size,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SlrStatus, String);

type Result<T> = std::result::Result<T, Failure>;

fn fail<T>(status: SlrStatus, message: impl ToString) -> Result<T> {
    Err(Failure(status, message.to_string()))
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

/// Runs `body`, turning failures and panics into a status code.
fn guard(body: impl FnOnce() -> Result<SlrStatus>) -> SlrStatus {
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == SlrStatus::Ok {
                set_last_error(None);
            }
            status
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(Some(message));
            status
        }
        Err(_) => {
            set_last_error(Some("internal error".into()));
            SlrStatus::Panic
        }
    }
}

unsafe fn text<'a>(ptr: *const c_char, what: &str) -> Result<&'a str> {
    if ptr.is_null() {
        return fail(SlrStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .or_else(|_| fail(SlrStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn borrow<'a, T>(ptr: *const T, what: &str) -> Result<&'a T> {
    ptr.as_ref().map_or_else(
        || fail(SlrStatus::NullPointer, format!("{what} is null")),
        Ok,
    )
}

unsafe fn store<T>(out: *mut T, value: T) -> Result<()> {
    if out.is_null() {
        return fail(SlrStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

fn load_failure(e: LoadError) -> Failure {
    let status = match e {
        LoadError::Io { .. } => SlrStatus::Io,
        _ => SlrStatus::Parse,
    };
    Failure(status, e.to_string())
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn slr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Loads a corpus from a JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_corpus_load(
    path: *const c_char,
    out: *mut *mut SlrCorpus,
) -> SlrStatus {
    guard(|| {
        let path = text(path, "path")?;
        let corpus = load_corpus(path).map_err(load_failure)?;
        store(out, Box::into_raw(Box::new(SlrCorpus(corpus))))?;
        Ok(SlrStatus::Ok)
    })
}

/// Parses a corpus from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_corpus_from_json(
    json: *const c_char,
    out: *mut *mut SlrCorpus,
) -> SlrStatus {
    guard(|| {
        let json = text(json, "json")?;
        let corpus = corpus_from_json(json).map_err(load_failure)?;
        store(out, Box::into_raw(Box::new(SlrCorpus(corpus))))?;
        Ok(SlrStatus::Ok)
    })
}

/// Releases a corpus. Null is ignored.
///
/// # Safety
/// `corpus` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn slr_corpus_free(corpus: *mut SlrCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// Number of papers in a corpus, stubs included.
///
/// # Safety
/// `corpus` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_corpus_paper_count(
    corpus: *const SlrCorpus,
    out: *mut usize,
) -> SlrStatus {
    guard(|| {
        let corpus = borrow(corpus, "corpus")?;
        store(out, corpus.0.len())?;
        Ok(SlrStatus::Ok)
    })
}

/// Validation diagnostics of a corpus as a JSON array.
///
/// Returns `SLR_STATUS_INVALID` when any diagnostic is an error; the
/// array is written either way.
///
/// # Safety
/// `corpus` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_corpus_validate_json(
    corpus: *const SlrCorpus,
    out: *mut *mut c_char,
) -> SlrStatus {
    guard(|| {
        let corpus = borrow(corpus, "corpus")?;
        let diagnostics = validate(&corpus.0);
        let json = serde_json::to_string(&diagnostics).or_else(|e| fail(SlrStatus::Panic, e))?;
        store(out, owned_string(json))?;
        match diagnostics.iter().filter(|d| d.is_error()).count() {
            0 => Ok(SlrStatus::Ok),
            n => fail(SlrStatus::Invalid, format!("{n} validation error(s)")),
        }
    })
}

/// Runs a strategy given as JSON.
///
/// When the iteration cap is reached the partial outcome is still written
/// to `out` and `SLR_STATUS_CAP_EXCEEDED` is returned.
///
/// # Safety
/// `corpus` must be a live handle, `spec_json` a NUL-terminated string and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_run_strategy_json(
    corpus: *const SlrCorpus,
    spec_json: *const c_char,
    out: *mut *mut SlrOutcome,
) -> SlrStatus {
    guard(|| {
        let corpus = borrow(corpus, "corpus")?;
        let spec: StrategySpec = serde_json::from_str(text(spec_json, "spec")?)
            .or_else(|e| fail(SlrStatus::Parse, format!("strategy spec: {e}")))?;
        if out.is_null() {
            return fail(SlrStatus::NullPointer, "output pointer is null");
        }
        match run_strategy(&corpus.0, &spec) {
            Ok(outcome) => {
                store(out, Box::into_raw(Box::new(SlrOutcome(outcome))))?;
                Ok(SlrStatus::Ok)
            }
            Err(EngineError::StrategyCapExceeded {
                max_iterations,
                partial,
            }) => {
                let message = EngineError::StrategyCapExceeded {
                    max_iterations,
                    partial: partial.clone(),
                }
                .to_string();
                store(out, Box::into_raw(Box::new(SlrOutcome(*partial))))?;
                set_last_error(Some(message));
                Ok(SlrStatus::CapExceeded)
            }
            Err(e) => fail(SlrStatus::Invalid, e),
        }
    })
}

/// Final metrics of an outcome.
///
/// # Safety
/// `outcome` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_outcome_metrics(
    outcome: *const SlrOutcome,
    out: *mut SlrMetrics,
) -> SlrStatus {
    guard(|| {
        let outcome = borrow(outcome, "outcome")?;
        store(out, SlrMetrics::from(&outcome.0.final_metrics))?;
        Ok(SlrStatus::Ok)
    })
}

/// Iteration trace of an outcome as a JSON array.
///
/// # Safety
/// `outcome` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_outcome_trace_json(
    outcome: *const SlrOutcome,
    out: *mut *mut c_char,
) -> SlrStatus {
    guard(|| {
        let outcome = borrow(outcome, "outcome")?;
        let json =
            serde_json::to_string(&outcome.0.trace).or_else(|e| fail(SlrStatus::Panic, e))?;
        store(out, owned_string(json))?;
        Ok(SlrStatus::Ok)
    })
}

/// Releases an outcome. Null is ignored.
///
/// # Safety
/// `outcome` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn slr_outcome_free(outcome: *mut SlrOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// Metrics for `hits` relevant papers out of `visited`, against an oracle
/// of `oracle_size` papers.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_compute_metrics(
    hits: usize,
    visited: usize,
    oracle_size: usize,
    out: *mut SlrMetrics,
) -> SlrStatus {
    guard(|| {
        let m =
            compute_metrics(hits, visited, oracle_size).or_else(|e| fail(SlrStatus::Invalid, e))?;
        store(out, SlrMetrics::from(&m))?;
        Ok(SlrStatus::Ok)
    })
}

/// Graphviz rendering of the citation graph an outcome explored.
///
/// # Safety
/// `corpus` and `outcome` must be live handles and `out` a writable
/// pointer. The outcome must come from a run over the same corpus.
#[no_mangle]
pub unsafe extern "C" fn slr_render_dot(
    corpus: *const SlrCorpus,
    outcome: *const SlrOutcome,
    all_edges: bool,
    out: *mut *mut c_char,
) -> SlrStatus {
    guard(|| {
        let corpus = borrow(corpus, "corpus")?;
        let outcome = borrow(outcome, "outcome")?;
        store(
            out,
            owned_string(render_citation_graph(&corpus.0, &outcome.0, all_edges)),
        )?;
        Ok(SlrStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn slr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
