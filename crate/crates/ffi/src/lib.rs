//! C ABI over the plankb toolkit.
//!
//! Objects cross the boundary as opaque handles created by `plankb_*_new` or
//! `plankb_*_parse` style constructors and released by the matching
//! `plankb_*_free`. Every fallible call returns a [`PlankbStatus`]; the
//! message of the most recent failure on the calling thread is available from
//! [`plankb_last_error`]. Strings returned through out-parameters are owned by
//! the caller and must be released with [`plankb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plankb::kg::{export_turtle, import_turtle, validate_axioms, Graph, ValidationMode};
use plankb::macros::{mine_pairs, MacroReport};
use plankb::mapper::{
    build_graph, display_term, from_json, iri, map_domain, map_ipc_results, parse_args, run_competency, CompetencyQuery,
};
use plankb::pddl::{parse_domain, print_domain, DomainDef};
use plankb::select::{read_ipc_csv, select_ontology, select_random};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlankbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    MappingError = 4,
    QueryError = 5,
    SelectionError = 6,
    MacroError = 7,
    /// A Rust panic was caught at the boundary.
    InternalError = 8,
}

/// Planner selection policy.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlankbPolicy {
    Ontology = 0,
    Random = 1,
}

/// Parsed PDDL domain.
pub struct PlankbDomain {
    inner: DomainDef,
}

/// In-memory knowledge graph.
pub struct PlankbGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: PlankbStatus, msg: impl ToString) -> PlankbStatus {
    set_error(msg.to_string());
    status
}

/// Runs `f` with panics turned into [`PlankbStatus::InternalError`].
fn guard(f: impl FnOnce() -> Result<(), (PlankbStatus, String)>) -> PlankbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlankbStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(PlankbStatus::InternalError, msg)
        }
    }
}

type Res<T> = Result<T, (PlankbStatus, String)>;

fn null(name: &str) -> (PlankbStatus, String) {
    (PlankbStatus::NullArgument, format!("{name} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, name: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (PlankbStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn handle_mut<'a, T>(p: *mut T, name: &str) -> Res<&'a mut T> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| (PlankbStatus::InternalError, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next plankb call on the same thread.
#[no_mangle]
pub extern "C" fn plankb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn plankb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn plankb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses PDDL domain text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_domain_parse(text: *const c_char, out: *mut *mut PlankbDomain) -> PlankbStatus {
    guard(|| {
        let src = c_str(text, "text")?;
        let d = parse_domain(src).map_err(|e| (PlankbStatus::ParseError, e.to_string()))?;
        put(out, PlankbDomain { inner: d })
    })
}

/// Canonical PDDL text of a domain.
///
/// # Safety
/// `domain` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_domain_print(domain: *const PlankbDomain, out: *mut *mut c_char) -> PlankbStatus {
    guard(|| {
        let d = handle(domain, "domain")?;
        put_string(out, print_domain(&d.inner))
    })
}

/// Number of action schemas, or 0 for NULL.
///
/// # Safety
/// `domain` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn plankb_domain_action_count(domain: *const PlankbDomain) -> usize {
    domain.as_ref().map_or(0, |d| d.inner.actions.len())
}

/// # Safety
/// `domain` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plankb_domain_free(domain: *mut PlankbDomain) {
    if !domain.is_null() {
        drop(Box::from_raw(domain));
    }
}

/// Creates an empty graph.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_new(out: *mut *mut PlankbGraph) -> PlankbStatus {
    guard(|| put(out, PlankbGraph { inner: Graph::new() }))
}

/// Reads a graph from Turtle text.
///
/// # Safety
/// `turtle` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_from_turtle(turtle: *const c_char, out: *mut *mut PlankbGraph) -> PlankbStatus {
    guard(|| {
        let src = c_str(turtle, "turtle")?;
        let g = import_turtle(src).map_err(|e| (PlankbStatus::ParseError, e.to_string()))?;
        put(out, PlankbGraph { inner: g })
    })
}

/// Serializes a graph as Turtle.
///
/// # Safety
/// `graph` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_to_turtle(graph: *const PlankbGraph, out: *mut *mut c_char) -> PlankbStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        put_string(out, export_turtle(&g.inner))
    })
}

/// Number of triples, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_len(graph: *const PlankbGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.len())
}

/// Adds the mapping of a domain (without problems) to a graph.
///
/// # Safety
/// `graph` and `domain` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_add_domain(graph: *mut PlankbGraph, domain: *const PlankbDomain) -> PlankbStatus {
    guard(|| {
        let g = handle_mut(graph, "graph")?;
        let d = handle(domain, "domain")?;
        let triples = map_domain(&d.inner).map_err(|e| (PlankbStatus::MappingError, e.to_string()))?;
        g.inner.extend(triples).map_err(|e| (PlankbStatus::MappingError, e.to_string()))?;
        Ok(())
    })
}

/// Adds a domain, its problems and stored plans given as an interchange
/// JSON document.
///
/// # Safety
/// `graph` must be a live handle and `json` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_add_json(graph: *mut PlankbGraph, json: *const c_char) -> PlankbStatus {
    guard(|| {
        let g = handle_mut(graph, "graph")?;
        let src = c_str(json, "json")?;
        let value: serde_json::Value = serde_json::from_str(src).map_err(|e| (PlankbStatus::ParseError, e.to_string()))?;
        let (d, problems, plans) = from_json(&value).map_err(|e| (PlankbStatus::ParseError, e.to_string()))?;
        build_graph(&mut g.inner, &d, &problems, &plans).map_err(|e| (PlankbStatus::MappingError, e.to_string()))
    })
}

/// Adds `planner,domain,solved,total` competition results.
///
/// # Safety
/// `graph` must be a live handle and `csv` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_add_results_csv(graph: *mut PlankbGraph, csv: *const c_char) -> PlankbStatus {
    guard(|| {
        let g = handle_mut(graph, "graph")?;
        let src = c_str(csv, "csv")?;
        let rows = read_ipc_csv(src.as_bytes()).map_err(|e| (PlankbStatus::ParseError, e.to_string()))?;
        let triples = map_ipc_results(&rows).map_err(|e| (PlankbStatus::MappingError, e.to_string()))?;
        g.inner.extend(triples).map_err(|e| (PlankbStatus::MappingError, e.to_string()))?;
        Ok(())
    })
}

/// Counts ontology axiom violations. `post_solve` non-zero also checks the
/// axioms that only hold once problems have plans.
///
/// # Safety
/// `graph` must be a live handle and `count` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_validate(graph: *const PlankbGraph, post_solve: i32, count: *mut usize) -> PlankbStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let mode = if post_solve != 0 { ValidationMode::PostSolve } else { ValidationMode::PreSolve };
        let n = validate_axioms(&g.inner, mode).len();
        let slot = count.as_mut().ok_or_else(|| null("count"))?;
        *slot = n;
        Ok(())
    })
}

/// Answers competency question `id` (`"C1"`..`"C10"`). `args` holds
/// `key=value` pairs separated by newlines and may be NULL. The answer is a
/// JSON array of objects mapping each variable to its compact text.
///
/// # Safety
/// `graph` must be a live handle, `id` a NUL-terminated string, `args` NULL
/// or a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_query(
    graph: *const PlankbGraph,
    id: *const c_char,
    args: *const c_char,
    out: *mut *mut c_char,
) -> PlankbStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let q: CompetencyQuery =
            c_str(id, "id")?.parse().map_err(|e: plankb::mapper::CompetencyError| (PlankbStatus::QueryError, e.to_string()))?;
        let raw = if args.is_null() { "" } else { c_str(args, "args")? };
        let parsed =
            parse_args(raw.lines().map(str::trim).filter(|l| !l.is_empty())).map_err(|e| (PlankbStatus::QueryError, e))?;
        let rows = run_competency(&g.inner, q, &parsed).map_err(|e| (PlankbStatus::QueryError, e.to_string()))?;
        let json: Vec<serde_json::Map<String, serde_json::Value>> = rows
            .iter()
            .map(|r| r.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(display_term(v)))).collect())
            .collect();
        put_string(out, serde_json::to_string(&json).expect("rows serialize"))
    })
}

/// Chooses a planner for `domain` among every planner in the graph. The
/// outcome is written as JSON.
///
/// # Safety
/// `graph` must be a live handle, `domain` a NUL-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_select_planner(
    graph: *const PlankbGraph,
    domain: *const c_char,
    policy: PlankbPolicy,
    seed: u64,
    out: *mut *mut c_char,
) -> PlankbStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let d = iri::resolve(c_str(domain, "domain")?, iri::domain);
        let mut cands: Vec<_> =
            g.inner.instances_of(&plankb::kg::plan_class(plankb::kg::class::PLANNER)).into_iter().cloned().collect();
        cands.sort();
        let outcome = match policy {
            PlankbPolicy::Ontology => select_ontology(&g.inner, &d, &cands),
            PlankbPolicy::Random => select_random(&cands, seed),
        }
        .map_err(|e| (PlankbStatus::SelectionError, e.to_string()))?;
        put_string(out, serde_json::to_string(&outcome).expect("outcome serializes"))
    })
}

/// Mines adjacent action pairs from the stored plans of `domain` and writes
/// the ranked report as JSON. `pddl` may be NULL; when given, chaining is
/// checked against it.
///
/// # Safety
/// `graph` must be a live handle, `pddl` NULL or a live handle, `domain` a
/// NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plankb_mine_macros(
    graph: *const PlankbGraph,
    domain: *const c_char,
    pddl: *const PlankbDomain,
    out: *mut *mut c_char,
) -> PlankbStatus {
    guard(|| {
        let g = handle(graph, "graph")?;
        let name = c_str(domain, "domain")?;
        let pairs =
            mine_pairs(&g.inner, &iri::resolve(name, iri::domain)).map_err(|e| (PlankbStatus::MacroError, e.to_string()))?;
        let d = pddl.as_ref().map(|d| &d.inner);
        let report = MacroReport::build(d.map_or(name, |d| d.name.as_str()), &pairs, d);
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plankb_graph_free(graph: *mut PlankbGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}
