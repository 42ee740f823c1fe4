//! The `verify` report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lpa::catalog::{
    self, equations_for, expectations, family, label_expansions, membership_stats, rank_check, verify_on_variety,
    E6_LOOPED_ORBITS, E6_ORBITS, E6_QUOTIENT_EDGES,
};
use lpa::explore::{ExchangeGraph, Status};
use lpa::symmetry::{check_orbit_rows, quotient_graph, SymmetryMap};
use serde::Serialize;

use crate::context::{self, Class, Failure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEntry {
    pub name: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: String,
    pub seeds: usize,
    pub variables: usize,
    pub edges: usize,
    pub status: String,
    /// variables per label family
    pub families: BTreeMap<String, usize>,
    /// seeds per variable, by label family
    pub membership: BTreeMap<String, Vec<usize>>,
    pub orbits: Vec<OrbitEntry>,
    pub positivity: bool,
    /// vanishing residuals and total equations
    pub residuals: Option<(usize, usize)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "seed: {}", self.seed).unwrap();
        writeln!(s, "seeds: {}, variables: {}, edges: {}", self.seeds, self.variables, self.edges).unwrap();
        writeln!(s, "status: {}", self.status).unwrap();
        if !self.families.is_empty() {
            let f: Vec<String> = self.families.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            writeln!(s, "families: {}", f.join(" ")).unwrap();
        }
        if !self.membership.is_empty() {
            let m: Vec<String> = self
                .membership
                .iter()
                .map(|(k, v)| format!("{k}:{}", v.iter().map(usize::to_string).collect::<Vec<_>>().join("/")))
                .collect();
            writeln!(s, "membership: {}", m.join(" ")).unwrap();
        }
        if !self.orbits.is_empty() {
            let o: Vec<String> = self.orbits.iter().map(|o| format!("{}:{}", o.name, o.size)).collect();
            writeln!(s, "orbits: {}", o.join(" ")).unwrap();
        }
        writeln!(s, "positivity: {}", if self.positivity { "pass" } else { "FAIL" }).unwrap();
        if let Some((ok, total)) = self.residuals {
            writeln!(s, "residuals: {ok}/{total} vanish").unwrap();
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(s, "[{mark}] {}: expected {}, got {}", c.name, c.expected, c.actual).unwrap();
        }
        writeln!(s, "result: {}", if self.passed() { "pass" } else { "FAIL" }).unwrap();
        s
    }
}

fn check(checks: &mut Vec<Check>, name: &str, expected: impl ToString, actual: impl ToString) {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    let passed = expected == actual;
    checks.push(Check { name: name.into(), expected, actual, passed });
}

fn pairs<K: ToString, V: ToString>(it: impl IntoIterator<Item = (K, V)>) -> String {
    it.into_iter().map(|(k, v)| format!("{}:{}", k.to_string(), v.to_string())).collect::<Vec<_>>().join(" ")
}

pub fn build(class: &Class, graph: &ExchangeGraph, gens: Option<&[SymmetryMap]>) -> Result<Report, Failure> {
    let mut checks = Vec::new();
    let complete = graph.status == Status::Complete;
    check(&mut checks, "exploration", "complete", if complete { "complete" } else { "budget exhausted" });
    let positivity = graph.positivity();
    let mut report = Report {
        seed: class.name.clone(),
        seeds: graph.len(),
        variables: graph.variables.len(),
        edges: graph.edges().len(),
        status: if complete { "complete".into() } else { "budget exhausted".into() },
        families: BTreeMap::new(),
        membership: BTreeMap::new(),
        orbits: Vec::new(),
        positivity: positivity.passed(),
        residuals: None,
        checks: Vec::new(),
    };
    let (Some(name), true) = (class.builtin, complete) else {
        report.checks = checks;
        return Ok(report);
    };
    let expected = expectations(name).expect("every built-in has expectations");
    check(&mut checks, "seeds", expected.seeds, report.seeds);
    check(&mut checks, "cluster variables", expected.variables, report.variables);
    check(&mut checks, "exchange graph edges", expected.edges, report.edges);
    if let Some(p) = catalog::profile(name) {
        let r = rank_check(&p).err().unwrap_or_else(|| "ok".into());
        check(&mut checks, "rank = dim + 1 - h", "ok", r);
        check(&mut checks, "seed rank", p.rank, class.seed.rank());
    }

    let labels = context::labels(class, graph)?.expect("complete built-in class");
    for l in &labels {
        *report.families.entry(family(l).to_string()).or_insert(0) += 1;
    }
    check(
        &mut checks,
        "label families",
        pairs(expected.families.iter().copied()),
        pairs(expected.families.iter().map(|(f, _)| (f, report.families.get(*f).copied().unwrap_or(0)))),
    );
    report.membership = membership_stats(&graph.membership(), &labels);
    if !expected.membership.is_empty() {
        let actual = expected.membership.iter().map(|(f, _)| {
            let v = report.membership.get(*f).cloned().unwrap_or_default();
            (f, v.iter().map(usize::to_string).collect::<Vec<_>>().join("/"))
        });
        check(&mut checks, "seeds per variable", pairs(expected.membership.iter().copied()), pairs(actual));
    }
    if !expected.faces.is_empty() {
        let census = graph.face_census()?;
        check(&mut checks, "rank-2 cycles", pairs(expected.faces.iter().copied()), pairs(census));
    }
    check(&mut checks, "positivity", "pass", if positivity.passed() { "pass" } else { "fail" });

    if let Ok(eqs) = equations_for::<lpa::Integer>(name) {
        let labeling = label_expansions(name)?;
        let residuals = verify_on_variety(&labeling.as_map(), class.seed.table(), &eqs)?;
        let ok = residuals.iter().filter(|r| r.vanishes).count();
        report.residuals = Some((ok, residuals.len()));
        check(&mut checks, "equation residuals", format!("{}/{}", eqs.equations.len(), eqs.equations.len()), format!("{ok}/{}", residuals.len()));
    }

    if let Some(gens) = gens {
        let p = context::orbits(class, graph, gens, Some(&labels))?;
        report.orbits = p.names.iter().zip(p.sizes()).map(|(n, s)| OrbitEntry { name: n.clone(), size: s }).collect();
        if !expected.orbit_sizes.is_empty() {
            check(&mut checks, "orbit sizes", pairs(expected.orbit_sizes.iter().copied()), pairs(p.size_census()));
        }
        if name == "e6" {
            let structural: Vec<String> = check_orbit_rows(graph, &p, &labels, &E6_ORBITS)
                .into_iter()
                .filter(|m| m.is_structural())
                .map(|m| m.to_string())
                .collect();
            check(&mut checks, "orbit transitions", "none differ", if structural.is_empty() { "none differ".into() } else { structural.join("; ") });
            let q = quotient_graph(graph, &p);
            let mut want: Vec<(&str, &str)> =
                E6_QUOTIENT_EDGES.iter().map(|&(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
            want.sort_unstable();
            check(&mut checks, "quotient adjacency", fmt_pairs(&want), fmt_pairs(&q.adjacent_pairs()));
            check(&mut checks, "quotient loops", E6_LOOPED_ORBITS.join(" "), q.loops().join(" "));
        }
    }

    if name == "e6" {
        let missing = graph.seeds().filter(|s| !s.has_nontrivial_hat()).count();
        check(&mut checks, "seeds without a nontrivial exchange denominator", 0, missing);
    }
    report.checks = checks;
    Ok(report)
}

fn fmt_pairs(v: &[(&str, &str)]) -> String {
    v.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}
