//! Executable checks of the basic facts about distinguishing homomorphisms:
//! preserving automorphisms form a subgroup, post-composing with an
//! automorphism of the target does not change the verdict, uniquely
//! H-colourable graphs are all-or-nothing, and unions of non-isomorphic
//! connected pieces stay distinguishing.

use serde::Serialize;

use crate::graph::{disjoint_union, make_complete, make_cycle, make_path, Graph};
use crate::hom::{compose, enumerate_homomorphisms, is_uniquely_h_colourable, VertexMap};

use super::{
    automorphism_group, is_distinguishing, is_isomorphic, is_preserving, preserving_subgroup, Distinction,
    PermGroup, Permutation, SymmetryError,
};

#[derive(Clone, Debug)]
pub struct Lemma1Case {
    pub id: String,
    pub g: Graph,
    pub h: Graph,
    pub f: VertexMap,
}

/// One line of the report: `{"item": "L1-3", "case": .., "pass": .., "witness": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub item: String,
    pub case: String,
    pub pass: bool,
    pub witness: Option<Permutation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub entries: Vec<ReportEntry>,
}

impl Lemma1Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn count(&self, item: &str) -> usize {
        self.entries.iter().filter(|e| e.item == item).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn entry(item: &str, case: &str, pass: bool, witness: Option<Permutation>) -> ReportEntry {
    ReportEntry { item: item.to_string(), case: case.to_string(), pass, witness }
}

fn named_graphs() -> Vec<(&'static str, Graph)> {
    let g = |n, e: &[(usize, usize)]| Graph::from_edges(n, e.iter().copied()).expect("corpus graph");
    vec![
        ("P1", make_path(1)),
        ("P2", make_path(2)),
        ("P3", make_path(3)),
        ("P4", make_path(4)),
        ("P5", make_path(5)),
        ("C3", make_cycle(3).unwrap()),
        ("C4", make_cycle(4).unwrap()),
        ("C5", make_cycle(5).unwrap()),
        ("C6", make_cycle(6).unwrap()),
        ("C7", make_cycle(7).unwrap()),
        ("C8", make_cycle(8).unwrap()),
        ("K4", make_complete(4)),
        ("star3", g(4, &[(0, 1), (0, 2), (0, 3)])),
        ("paw", g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)])),
        ("C5+pendant", g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])),
        ("C4+pendant", g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])),
        ("K2,3", g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])),
        ("prism", g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])),
        ("W4", g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])),
        ("cube", g(8, &[(0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7)])),
        ("spider", g(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)])),
        ("2K2", disjoint_union(&make_complete(2), &make_complete(2))),
        ("bull", g(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)])),
    ]
}

fn targets() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", make_complete(2)),
        ("K3", make_complete(3)),
        ("C5", make_cycle(5).unwrap()),
        ("K4", make_complete(4)),
    ]
}

/// Desk-scale corpus: for each graph and target with some homomorphism, the
/// lexicographically first homomorphism and, when different, the first
/// distinguishing one.
pub fn default_corpus() -> Vec<Lemma1Case> {
    let mut cases = Vec::new();
    for (hname, h) in targets() {
        for (gname, g) in named_graphs() {
            let mut homs = enumerate_homomorphisms(&g, &h);
            let Some(first) = homs.next() else { continue };
            let first_distinguishing = std::iter::once(first.clone())
                .chain(homs)
                .find(|f| is_distinguishing(&g, &h, f).map(|d| d.is_distinguishing()).unwrap_or(false));
            cases.push(Lemma1Case { id: format!("{gname}->{hname}#first"), g: g.clone(), h: h.clone(), f: first.clone() });
            if let Some(d) = first_distinguishing.filter(|d| *d != first) {
                cases.push(Lemma1Case { id: format!("{gname}->{hname}#dist"), g: g.clone(), h: h.clone(), f: d });
            }
        }
    }
    cases
}

fn check_subgroup(case: &Lemma1Case, cap: usize) -> Result<ReportEntry, SymmetryError> {
    let full = automorphism_group(&case.g, cap)?;
    let mut members = Vec::new();
    for a in full.elements() {
        if is_preserving(a, &case.f)? {
            members.push(a.clone());
        }
    }
    let filtered = PermGroup::from_elements(case.g.order(), members);
    let searched = preserving_subgroup(&case.g, &case.f, cap)?;
    let offender = filtered
        .elements()
        .iter()
        .find(|a| !filtered.contains(&a.inverse()) || filtered.elements().iter().any(|b| !filtered.contains(&a.after(b))))
        .cloned();
    let pass = filtered.satisfies_subgroup_axioms() && filtered == searched;
    Ok(entry("L1-1", &case.id, pass, if pass { None } else { offender }))
}

fn check_target_automorphisms(case: &Lemma1Case, cap: usize) -> Result<ReportEntry, SymmetryError> {
    let base = is_distinguishing(&case.g, &case.h, &case.f)?.is_distinguishing();
    for beta in automorphism_group(&case.h, cap)?.elements() {
        let relabel = VertexMap::new(beta.image().to_vec(), case.h.order())?;
        let moved = compose(&case.f, &relabel)?;
        if is_distinguishing(&case.g, &case.h, &moved)?.is_distinguishing() != base {
            return Ok(entry("L1-3", &case.id, false, Some(beta.clone())));
        }
    }
    Ok(entry("L1-3", &case.id, true, None))
}

fn check_uniquely_colourable(case: &Lemma1Case) -> Result<Option<ReportEntry>, SymmetryError> {
    if !is_uniquely_h_colourable(&case.g, &case.h) {
        return Ok(None);
    }
    let mut verdict: Option<bool> = None;
    for f in enumerate_homomorphisms(&case.g, &case.h) {
        let d = is_distinguishing(&case.g, &case.h, &f)?;
        match verdict {
            None => verdict = Some(d.is_distinguishing()),
            Some(v) if v != d.is_distinguishing() => {
                return Ok(Some(entry("L1-4", &case.id, false, d.witness().cloned())));
            }
            Some(_) => {}
        }
    }
    Ok(Some(entry("L1-4", &case.id, true, None)))
}

fn union_map(f1: &VertexMap, f2: &VertexMap) -> Result<VertexMap, SymmetryError> {
    let image = f1.image().iter().chain(f2.image()).copied().collect();
    Ok(VertexMap::new(image, f1.codomain_order())?)
}

fn check_union(a: &Lemma1Case, b: &Lemma1Case) -> Result<ReportEntry, SymmetryError> {
    let g = disjoint_union(&a.g, &b.g);
    let f = union_map(&a.f, &b.f)?;
    let verdict = is_distinguishing(&g, &a.h, &f)?;
    let id = format!("{}+{}", a.id, b.id);
    Ok(match verdict {
        Distinction::Distinguishing => entry("L1-5", &id, true, None),
        Distinction::Preserved { witness } => entry("L1-5", &id, false, Some(witness)),
    })
}

fn union_candidates(corpus: &[Lemma1Case]) -> Result<Vec<(usize, usize)>, SymmetryError> {
    let mut eligible = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        if c.g.is_connected() && c.g.order() > 0 && is_distinguishing(&c.g, &c.h, &c.f)?.is_distinguishing() {
            eligible.push(i);
        }
    }
    let mut pairs = Vec::new();
    for (x, &i) in eligible.iter().enumerate() {
        for &j in &eligible[x + 1..] {
            let (a, b) = (&corpus[i], &corpus[j]);
            if a.h == b.h && !is_isomorphic(&a.g, &b.g) {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs)
}

enum Task {
    Case(usize),
    Union(usize, usize),
}

fn run_task(corpus: &[Lemma1Case], task: &Task, cap: usize) -> Result<Vec<ReportEntry>, SymmetryError> {
    match *task {
        Task::Case(i) => {
            let case = &corpus[i];
            let mut out = vec![check_subgroup(case, cap)?, check_target_automorphisms(case, cap)?];
            out.extend(check_uniquely_colourable(case)?);
            Ok(out)
        }
        Task::Union(i, j) => Ok(vec![check_union(&corpus[i], &corpus[j])?]),
    }
}

/// Runs every check over the corpus on `jobs` threads. Entries come back in
/// task order no matter how many threads ran.
pub fn lemma1_property_checks(corpus: &[Lemma1Case], cap: usize, jobs: usize) -> Result<Lemma1Report, SymmetryError> {
    let mut tasks: Vec<Task> = (0..corpus.len()).map(Task::Case).collect();
    tasks.extend(union_candidates(corpus)?.into_iter().map(|(i, j)| Task::Union(i, j)));
    let jobs = jobs.max(1);
    let results: Vec<Result<Vec<ReportEntry>, SymmetryError>> = if jobs == 1 {
        tasks.iter().map(|t| run_task(corpus, t, cap)).collect()
    } else {
        let chunk = tasks.len().div_ceil(jobs).max(1);
        std::thread::scope(|scope| {
            let handles: Vec<_> = tasks
                .chunks(chunk)
                .map(|part| scope.spawn(move || part.iter().map(|t| run_task(corpus, t, cap)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("lemma1 worker panicked")).collect()
        })
    };
    let mut entries = Vec::new();
    for r in results {
        entries.extend(r?);
    }
    Ok(Lemma1Report { entries })
}
