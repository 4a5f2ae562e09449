//! C ABI over `disthom`.
//!
//! Every function returns a [`DhStatus`]; results come back through out
//! pointers. Handles are opaque and owned by the caller once returned: free
//! them with the matching `dh_*_free`. Strings returned through `char **`
//! are NUL-terminated UTF-8 and must be released with [`dh_string_free`].
//! After a non-`OK` status, [`dh_last_error`] describes the failure on the
//! calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use disthom::construction::{
    gs_prefix, prefix_rigidity_check, run, verify_state, BranchSpec, ConstructionError, ConstructionState,
};
use disthom::graph::{emit_graph, parse_graph, Graph, GraphFormat};
use disthom::hom::{count_homomorphisms, find_homomorphism, HomError, VertexMap};
use disthom::oracle::{fresh_common_neighbor, fresh_neighbor, Oracle, OracleError, OracleSpec, WitnessBudget};
use disthom::symmetry::{
    automorphism_group, chromatic_number, distinguishing_chromatic_number, distinguishing_number,
    find_distinguishing, is_distinguishing, SymmetryError,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DhStatus {
    Ok = 0,
    /// The search finished without a result, or the property is false.
    NotFound = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    Parse = 4,
    /// A witness search hit its id cap; retry with a larger one.
    SearchExhausted = 5,
    GroupTooLarge = 6,
    /// A construction step failed verification.
    Invariant = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DhFormat {
    Json = 0,
    Dot = 1,
}

/// A finite graph.
pub struct DhGraph(Graph);

/// A countable graph on the naturals.
pub struct DhOracle(Arc<dyn Oracle>);

/// A construction state.
pub struct DhConstruction(ConstructionState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(DhStatus, String);

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<DhStatus, Fail>) -> DhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DhStatus::Panic
        }
    }
}

impl From<HomError> for Fail {
    fn from(e: HomError) -> Self {
        Fail(DhStatus::InvalidArgument, e.to_string())
    }
}

impl From<SymmetryError> for Fail {
    fn from(e: SymmetryError) -> Self {
        let status = match e {
            SymmetryError::GroupTooLarge { .. } => DhStatus::GroupTooLarge,
            _ => DhStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        let status = match e {
            OracleError::SearchExhausted { .. } => DhStatus::SearchExhausted,
            OracleError::Malformed(_) => DhStatus::Parse,
            _ => DhStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<ConstructionError> for Fail {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Oracle(o) => o.into(),
            ConstructionError::Symmetry(s) => s.into(),
            ConstructionError::InvariantViolated { .. } => Fail(DhStatus::Invariant, e.to_string()),
            ConstructionError::BranchSpecExhausted(_) => Fail(DhStatus::NotFound, e.to_string()),
            ConstructionError::Malformed(_) | ConstructionError::BadBranchSpec(_) => Fail(DhStatus::Parse, e.to_string()),
            _ => Fail(DhStatus::InvalidArgument, e.to_string()),
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(DhStatus::NullPointer, format!("{what} is null")))
}

unsafe fn borrow_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(DhStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(DhStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(DhStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DhStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(DhStatus::InvalidArgument, "output contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"n": .., "edges": [[u, v], ..]}`.
#[no_mangle]
pub unsafe extern "C" fn dh_graph_from_json(json: *const c_char, out: *mut *mut DhGraph) -> DhStatus {
    guard(|| {
        let g = parse_graph(text(json, "json")?.as_bytes()).map_err(|e| Fail(DhStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(DhGraph(g))), "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_graph_free(g: *mut DhGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn dh_graph_order(g: *const DhGraph, out: *mut usize) -> DhStatus {
    guard(|| {
        put(out, borrow(g, "graph")?.0.order(), "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_graph_edge_count(g: *const DhGraph, out: *mut usize) -> DhStatus {
    guard(|| {
        put(out, borrow(g, "graph")?.0.edge_count(), "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_graph_emit(g: *const DhGraph, format: DhFormat, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let fmt = match format {
            DhFormat::Json => GraphFormat::Json,
            DhFormat::Dot => GraphFormat::Dot,
        };
        put_string(out, emit_graph(&borrow(g, "graph")?.0, fmt))?;
        Ok(DhStatus::Ok)
    })
}

/// Some homomorphism `g → h` as `{"map": [..]}`, or `NOT_FOUND`.
#[no_mangle]
pub unsafe extern "C" fn dh_find_homomorphism(
    g: *const DhGraph,
    h: *const DhGraph,
    out: *mut *mut c_char,
) -> DhStatus {
    guard(|| match find_homomorphism(&borrow(g, "g")?.0, &borrow(h, "h")?.0) {
        Some(f) => put_string(out, f.to_json()).map(|()| DhStatus::Ok),
        None => Ok(DhStatus::NotFound),
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_count_homomorphisms(g: *const DhGraph, h: *const DhGraph, out: *mut u64) -> DhStatus {
    guard(|| {
        let n = count_homomorphisms(&borrow(g, "g")?.0, &borrow(h, "h")?.0);
        put(out, n as u64, "out")?;
        Ok(DhStatus::Ok)
    })
}

/// First distinguishing homomorphism `g → h` as `{"map": [..]}`.
#[no_mangle]
pub unsafe extern "C" fn dh_find_distinguishing(
    g: *const DhGraph,
    h: *const DhGraph,
    out: *mut *mut c_char,
) -> DhStatus {
    guard(|| match find_distinguishing(&borrow(g, "g")?.0, &borrow(h, "h")?.0) {
        Some(f) => put_string(out, f.to_json()).map(|()| DhStatus::Ok),
        None => Ok(DhStatus::NotFound),
    })
}

/// `OK` if the map `image[0..len]` is a distinguishing homomorphism,
/// `NOT_FOUND` if it is a homomorphism that some nontrivial automorphism
/// preserves.
#[no_mangle]
pub unsafe extern "C" fn dh_is_distinguishing(
    g: *const DhGraph,
    h: *const DhGraph,
    image: *const usize,
    len: usize,
) -> DhStatus {
    guard(|| {
        let (g, h) = (&borrow(g, "g")?.0, &borrow(h, "h")?.0);
        if image.is_null() && len > 0 {
            return Err(Fail(DhStatus::NullPointer, "image is null".into()));
        }
        let image = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(image, len).to_vec() };
        let f = VertexMap::between(image, g, h)?;
        Ok(if is_distinguishing(g, h, &f)?.is_distinguishing() { DhStatus::Ok } else { DhStatus::NotFound })
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_automorphism_group_order(g: *const DhGraph, cap: usize, out: *mut u64) -> DhStatus {
    guard(|| {
        let group = automorphism_group(&borrow(g, "graph")?.0, cap)?;
        put(out, group.order() as u64, "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_chromatic_number(g: *const DhGraph, out: *mut usize) -> DhStatus {
    guard(|| {
        put(out, chromatic_number(&borrow(g, "graph")?.0), "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_distinguishing_number(g: *const DhGraph, out: *mut usize) -> DhStatus {
    guard(|| {
        put(out, distinguishing_number(&borrow(g, "graph")?.0), "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_distinguishing_chromatic_number(g: *const DhGraph, out: *mut usize) -> DhStatus {
    guard(|| {
        put(out, distinguishing_chromatic_number(&borrow(g, "graph")?.0), "out")?;
        Ok(DhStatus::Ok)
    })
}

/// Builds one of the built-in oracles from its spec JSON.
#[no_mangle]
pub unsafe extern "C" fn dh_oracle_from_json(spec: *const c_char, out: *mut *mut DhOracle) -> DhStatus {
    guard(|| {
        let o = OracleSpec::parse(text(spec, "spec")?.as_bytes())?.build()?;
        put(out, Box::into_raw(Box::new(DhOracle(Arc::new(o)))), "out")?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_oracle_free(o: *mut DhOracle) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

#[no_mangle]
pub unsafe extern "C" fn dh_oracle_adjacent(o: *const DhOracle, u: u64, v: u64, out: *mut bool) -> DhStatus {
    guard(|| {
        put(out, borrow(o, "oracle")?.0.adjacent(u, v), "out")?;
        Ok(DhStatus::Ok)
    })
}

unsafe fn avoid_set(avoid: *const u64, len: usize) -> Result<BTreeSet<u64>, Fail> {
    if len == 0 {
        return Ok(BTreeSet::new());
    }
    if avoid.is_null() {
        return Err(Fail(DhStatus::NullPointer, "avoid is null".into()));
    }
    Ok(std::slice::from_raw_parts(avoid, len).iter().copied().collect())
}

/// Least fresh neighbour of `u` (when `u == v`) or common neighbour of `u`
/// and `v`, avoiding `avoid[0..len]`, with ids up to `cap`.
#[no_mangle]
pub unsafe extern "C" fn dh_fresh_common_neighbor(
    o: *const DhOracle,
    u: u64,
    v: u64,
    avoid: *const u64,
    len: usize,
    cap: u64,
    out: *mut u64,
) -> DhStatus {
    guard(|| {
        let o = borrow(o, "oracle")?.0.as_ref();
        let avoid = avoid_set(avoid, len)?;
        let b = WitnessBudget::new(cap)?;
        let w = if u == v { fresh_neighbor(o, u, &avoid, b)? } else { fresh_common_neighbor(o, u, v, &avoid, b)? };
        put(out, w, "out")?;
        Ok(DhStatus::Ok)
    })
}

/// Runs the construction to `steps` processed pairs. On `SEARCH_EXHAUSTED`
/// the last verified state (if any) is still returned through `out`.
#[no_mangle]
pub unsafe extern "C" fn dh_construction_run(
    o: *const DhOracle,
    branch_spec: *const c_char,
    steps: usize,
    cap: u64,
    out: *mut *mut DhConstruction,
) -> DhStatus {
    guard(|| {
        let o = Arc::clone(&borrow(o, "oracle")?.0);
        let spec = BranchSpec::parse(text(branch_spec, "branch_spec")?)?;
        let b = WitnessBudget::new(cap)?;
        if out.is_null() {
            return Err(Fail(DhStatus::NullPointer, "out is null".into()));
        }
        match run(o, spec, steps, b) {
            Ok(state) => {
                out.write(Box::into_raw(Box::new(DhConstruction(state))));
                Ok(DhStatus::Ok)
            }
            Err(failure) => {
                out.write(failure.state.map_or(ptr::null_mut(), |s| Box::into_raw(Box::new(DhConstruction(*s)))));
                Err(failure.error.into())
            }
        }
    })
}

/// One more step; the state is unchanged on failure.
#[no_mangle]
pub unsafe extern "C" fn dh_construction_step(c: *mut DhConstruction) -> DhStatus {
    guard(|| {
        borrow_mut(c, "construction")?.0.step()?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_construction_t(c: *const DhConstruction, out: *mut usize) -> DhStatus {
    guard(|| {
        put(out, borrow(c, "construction")?.0.t(), "out")?;
        Ok(DhStatus::Ok)
    })
}

/// `OK` if every check passes, `INVARIANT` otherwise; the report JSON is
/// written to `report` when it is non-NULL.
#[no_mangle]
pub unsafe extern "C" fn dh_construction_verify(c: *const DhConstruction, report: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let r = verify_state(&borrow(c, "construction")?.0);
        if !report.is_null() {
            put_string(report, serde_json::to_string(&r).expect("report serializes"))?;
        }
        if r.all_pass() {
            Ok(DhStatus::Ok)
        } else {
            Err(Fail(DhStatus::Invariant, format!("failed: {}", r.failed_names().join(", "))))
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_construction_to_json(c: *const DhConstruction, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        put_string(out, borrow(c, "construction")?.0.to_dump().to_json())?;
        Ok(DhStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dh_construction_free(c: *mut DhConstruction) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The labelling into `h ∨ K₂` as `{"assignments": [[v, "H:i" | "K2:1" | "K2:2"], ..]}`.
#[no_mangle]
pub unsafe extern "C" fn dh_gs_prefix(
    c: *const DhConstruction,
    h: *const DhGraph,
    out: *mut *mut c_char,
) -> DhStatus {
    guard(|| {
        let gs = gs_prefix(&borrow(c, "construction")?.0, &borrow(h, "h")?.0)?;
        put_string(out, gs.to_json())?;
        Ok(DhStatus::Ok)
    })
}

/// `OK` if every fibre-preserving automorphism of the finite window fixes
/// the tree pointwise and swaps no processed pair, `NOT_FOUND` otherwise.
#[no_mangle]
pub unsafe extern "C" fn dh_prefix_rigidity(c: *const DhConstruction, h: *const DhGraph, cap: usize) -> DhStatus {
    guard(|| {
        let state = &borrow(c, "construction")?.0;
        let gs = gs_prefix(state, &borrow(h, "h")?.0)?;
        let report = prefix_rigidity_check(state, &gs, cap)?;
        Ok(if report.pass() { DhStatus::Ok } else { DhStatus::NotFound })
    })
}
