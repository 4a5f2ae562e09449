use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::construction::{
    gs_prefix, prefix_rigidity_check, resume, run_with, verify_state, BranchSpec, ConstructionState, StateDump,
};
use crate::graph::{emit_graph, parse_graph, Graph, GraphFormat};
use crate::hom::{
    count_homomorphisms, enumerate_homomorphisms, find_homomorphism, first_violation, fixation, is_core,
    is_uniquely_h_colourable, VertexMap,
};
use crate::oracle::{cec_witness_path, is_cec_bounded, GraphOracle, Oracle, OracleSpec, WitnessBudget};
use crate::symmetry::lemma1::{default_corpus, lemma1_property_checks};
use crate::symmetry::{
    automorphism_group, chromatic_number, distinguishing_chromatic_number, distinguishing_number,
    find_distinguishing, is_distinguishing, Distinction,
};

use super::{
    read, AutCmd, CecCmd, Cli, CliError, Command, ConstructCmd, DistCmd, Format, GraphOnly, GraphPair, GsCmd,
    HomCmd, Invariant, Lemma1Cmd, OracleArgs, Outcome, PairOnly,
};

type Failure = (CliError, Option<String>);

fn plain<T>(r: Result<T, CliError>) -> Result<T, Failure> {
    r.map_err(|e| (e, None))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_pair(p: &GraphPair) -> Result<(Graph, Graph), CliError> {
    Ok((load_graph(&p.g)?, load_graph(&p.h)?))
}

fn load_map(path: &Path, g: &Graph, h: &Graph) -> Result<VertexMap, CliError> {
    VertexMap::from_json(&read(path)?, g, h).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_oracle(args: &OracleArgs) -> Result<(GraphOracle, WitnessBudget), CliError> {
    let mut spec = OracleSpec::parse(&read(&args.oracle)?)?;
    if let Some(seed) = args.seed {
        if matches!(spec, OracleSpec::RadoBit {}) {
            return Err(CliError::Usage("--seed has no effect on the rado-bit oracle".into()));
        }
        spec = spec.with_seed(seed);
    }
    Ok((spec.build()?, WitnessBudget::new(args.cap)?))
}

fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON value is serializable")
}

fn require_json(cli: &Cli, what: &str) -> Result<(), CliError> {
    if cli.common.format == Format::Dot {
        return Err(CliError::Usage(format!("--format dot is only valid for graph output, not {what}")));
    }
    Ok(())
}

pub(super) fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    if !matches!(cli.command, Command::Fixation { .. }) {
        plain(require_json(cli, "this command"))?;
    }
    match &cli.command {
        Command::Hom(cmd) => plain(hom(cmd)),
        Command::Dist(cmd) => plain(dist(cmd)),
        Command::Aut(AutCmd::Group { g, elements }) => plain(aut(g, *elements, cli.common.group_cap)),
        Command::Invariant { which, g } => plain(invariant(*which, g)),
        Command::Core(GraphOnly::Check { g }) => plain((|| {
            let c = is_core(&load_graph(g)?);
            Ok(Outcome::verdict(c, to_string(&json!({ "core": c })), format!("core: {c}")))
        })()),
        Command::Unique(PairOnly::Check(pair)) => plain((|| {
            let (g, h) = load_pair(pair)?;
            let u = is_uniquely_h_colourable(&g, &h);
            Ok(Outcome::verdict(u, to_string(&json!({ "uniquely_colourable": u })), format!("uniquely H-colourable: {u}")))
        })()),
        Command::Fixation { pair, f } => plain(fix(cli, pair, f.as_deref())),
        Command::Lemma1(Lemma1Cmd::RunSuite { jobs }) => plain((|| {
            let report = lemma1_property_checks(&default_corpus(), cli.common.group_cap, *jobs)?;
            let failures = report.failures().count();
            let summary = format!("{} checks, {failures} failed", report.entries.len());
            Ok(Outcome::verdict(report.all_pass(), serde_json::to_string(&report).expect("report"), summary))
        })()),
        Command::Cec(cmd) => plain(cec(cmd)),
        Command::Construct(cmd) => construct(cmd),
        Command::Gs(cmd) => plain(gs(cmd, cli.common.group_cap)),
    }
}

fn hom(cmd: &HomCmd) -> Result<Outcome, CliError> {
    match cmd {
        HomCmd::Find(pair) => {
            let (g, h) = load_pair(pair)?;
            Ok(match find_homomorphism(&g, &h) {
                Some(f) => Outcome::ok(f.to_json(), "found"),
                None => Outcome::verdict(false, to_string(&json!({ "found": false, "reason": "no homomorphism" })), "no homomorphism"),
            })
        }
        HomCmd::Check { pair, f } => {
            let (g, h) = load_pair(pair)?;
            let f = load_map(f, &g, &h)?;
            Ok(match first_violation(&g, &h, &f)? {
                None => Outcome::ok(to_string(&json!({ "homomorphism": true })), "homomorphism"),
                Some((u, v)) => Outcome::verdict(
                    false,
                    to_string(&json!({ "homomorphism": false, "violation": [u, v] })),
                    format!("edge {u}–{v} maps to a non-edge"),
                ),
            })
        }
        HomCmd::Enumerate { pair, limit } => {
            let (g, h) = load_pair(pair)?;
            let maps: Vec<Vec<usize>> = match limit {
                Some(n) => enumerate_homomorphisms(&g, &h).take(*n).map(|f| f.image().to_vec()).collect(),
                None => enumerate_homomorphisms(&g, &h).map(|f| f.image().to_vec()).collect(),
            };
            let count = if limit.is_some() { count_homomorphisms(&g, &h) } else { maps.len() };
            let summary = format!("{count} homomorphisms");
            Ok(Outcome::ok(to_string(&json!({ "count": count, "maps": maps })), summary))
        }
    }
}

fn dist(cmd: &DistCmd) -> Result<Outcome, CliError> {
    match cmd {
        DistCmd::Check { pair, f } => {
            let (g, h) = load_pair(pair)?;
            let f = load_map(f, &g, &h)?;
            Ok(match is_distinguishing(&g, &h, &f)? {
                Distinction::Distinguishing => {
                    Outcome::ok(to_string(&json!({ "distinguishing": true })), "distinguishing")
                }
                Distinction::Preserved { witness } => Outcome::verdict(
                    false,
                    to_string(&json!({ "distinguishing": false, "witness": witness })),
                    format!("preserved by {:?}", witness.image()),
                ),
            })
        }
        DistCmd::Search(pair) => {
            let (g, h) = load_pair(pair)?;
            Ok(match find_distinguishing(&g, &h) {
                Some(f) => Outcome::ok(f.to_json(), "found"),
                None => Outcome::verdict(
                    false,
                    to_string(&json!({ "found": false, "reason": "no distinguishing homomorphism" })),
                    "no distinguishing homomorphism",
                ),
            })
        }
    }
}

fn aut(g: &Path, elements: bool, cap: usize) -> Result<Outcome, CliError> {
    let group = automorphism_group(&load_graph(g)?, cap)?;
    let mut out = json!({ "order": group.order(), "generators": group.generators() });
    if elements {
        out["elements"] = json!(group.elements());
    }
    Ok(Outcome::ok(to_string(&out), format!("|Aut| = {}", group.order())))
}

fn invariant(which: Invariant, g: &Path) -> Result<Outcome, CliError> {
    let g = load_graph(g)?;
    let (name, value) = match which {
        Invariant::Chi => ("χ", chromatic_number(&g)),
        Invariant::ChiD => ("χ_D", distinguishing_chromatic_number(&g)),
        Invariant::D => ("D", distinguishing_number(&g)),
    };
    Ok(Outcome::ok(value.to_string(), format!("{name} = {value}")))
}

fn fix(cli: &Cli, pair: &GraphPair, f: Option<&Path>) -> Result<Outcome, CliError> {
    let (g, h) = load_pair(pair)?;
    let f = match f {
        Some(p) => load_map(p, &g, &h)?,
        None => match find_homomorphism(&g, &h) {
            Some(f) => f,
            None => {
                return Ok(Outcome::verdict(
                    false,
                    to_string(&json!({ "found": false, "reason": "g is not H-colourable" })),
                    "no homomorphism to fix",
                ))
            }
        },
    };
    let fx = fixation(&g, &f, &h)?;
    let summary = format!("|V| = {}, |E| = {}", fx.graph.order(), fx.graph.edge_count());
    let output = match cli.common.format {
        Format::Dot => emit_graph(&fx.graph, GraphFormat::Dot),
        Format::Json => {
            let graph: Value = serde_json::from_str(&emit_graph(&fx.graph, GraphFormat::Json)).expect("graph JSON");
            to_string(&json!({ "graph": graph, "canonical": fx.canonical.image() }))
        }
    };
    Ok(Outcome::ok(output, summary))
}

fn cec(cmd: &CecCmd) -> Result<Outcome, CliError> {
    match cmd {
        CecCmd::Witness { oracle, u, v, avoid } => {
            let (o, b) = load_oracle(oracle)?;
            let avoid: BTreeSet<u64> = avoid.iter().copied().collect();
            let path = cec_witness_path(&o, *u, *v, &avoid, b)?;
            let summary = format!("path of length {}", path.len() - 1);
            Ok(Outcome::ok(to_string(&json!({ "path": path })), summary))
        }
        CecCmd::BoundedCheck { g, t_max } => {
            let ok = is_cec_bounded(&load_graph(g)?, *t_max);
            Ok(Outcome::verdict(ok, to_string(&json!({ "cec": ok, "t_max": t_max })), format!("c.e.c. up to |T| = {t_max}: {ok}")))
        }
    }
}

fn load_state(path: &Path, oracle: Option<&Path>) -> Result<ConstructionState, CliError> {
    let dump = StateDump::parse(&read(path)?)?;
    let state = match oracle {
        None => ConstructionState::from_dump_builtin(&dump, WitnessBudget::default())?,
        Some(p) => {
            let spec = OracleSpec::parse(&read(p)?)?;
            ConstructionState::from_dump(&dump, Arc::new(spec.build()?), WitnessBudget::default())?
        }
    };
    Ok(state)
}

fn construct(cmd: &ConstructCmd) -> Result<Outcome, Failure> {
    match cmd {
        ConstructCmd::Run { oracle, s, steps, resume: from, verify } => {
            let (o, b) = plain(load_oracle(oracle))?;
            let spec = plain(BranchSpec::parse(s).map_err(CliError::from))?;
            let o: Arc<dyn Oracle> = Arc::new(o);
            let result = match from {
                None => run_with(o, spec, *steps, b, |_| {}),
                Some(path) => {
                    let dump = plain(StateDump::parse(&plain(read(path))?).map_err(CliError::from))?;
                    let state = plain(ConstructionState::from_dump(&dump, o, b).map_err(CliError::from))?;
                    resume(state, *steps)
                }
            };
            match result {
                Ok(state) => {
                    let report = verify_state(&state);
                    let summary = format!(
                        "t = {}, {} branches, checks {}",
                        state.t(),
                        state.branches().len(),
                        if report.all_pass() { "pass" } else { "FAIL" }
                    );
                    let pass = !*verify || report.all_pass();
                    Ok(Outcome::verdict(pass, state.to_dump().to_json(), summary))
                }
                Err(failure) => {
                    let partial = failure.state.as_ref().map(|s| s.to_dump().to_json());
                    let reached = failure.state.as_ref().map_or(0, |s| s.t());
                    let e = CliError::from(failure.error);
                    Err((annotate(e, reached), partial))
                }
            }
        }
        ConstructCmd::Verify { state, oracle } => plain((|| {
            let state = load_state(state, oracle.as_deref())?;
            let report = verify_state(&state);
            let summary = if report.all_pass() {
                "all checks pass".to_string()
            } else {
                format!("failed: {}", report.failed_names().join(", "))
            };
            Ok(Outcome::verdict(report.all_pass(), serde_json::to_string(&report).expect("report"), summary))
        })()),
    }
}

fn annotate(e: CliError, reached: usize) -> CliError {
    match e {
        CliError::Budget(m) => CliError::Budget(format!("{m}; last verified state has t = {reached}")),
        other => other,
    }
}

fn gs(cmd: &GsCmd, cap: usize) -> Result<Outcome, CliError> {
    match cmd {
        GsCmd::Emit { state, h } => {
            let state = load_state(state, None)?;
            let h = load_graph(h)?;
            let gs = gs_prefix(&state, &h)?;
            let summary = format!("{} vertices labelled", gs.assignments().len());
            Ok(Outcome::ok(gs.to_json(), summary))
        }
        GsCmd::Rigidity { state, h } => {
            let state = load_state(state, None)?;
            let h = load_graph(h)?;
            let gs = gs_prefix(&state, &h)?;
            let report = prefix_rigidity_check(&state, &gs, cap)?;
            let summary = format!(
                "window of {} vertices, {} fibre-preserving automorphisms, rigid: {}",
                report.window_order,
                report.preserving_automorphisms,
                report.pass()
            );
            Ok(Outcome::verdict(report.pass(), serde_json::to_string(&report).expect("report"), summary))
        }
    }
}
