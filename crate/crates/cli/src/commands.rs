use std::fmt::Write as _;
use std::time::Instant;

use lpa::catalog::E6_ORBITS;
use lpa::explore::{mutation_cycle, Status};
use lpa::parser::serialize_laurent;
use lpa::symmetry::{quotient_graph, Partition};
use serde_json::json;

use crate::args::{Cli, Command, Format};
use crate::context::{self, Class, Failure};
use crate::export;
use crate::render::{parse_slot, render};
use crate::report;

/// Text written by a command, and the failure to report after writing it.
pub struct Outcome {
    pub output: String,
    pub failure: Option<Failure>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, failure: None }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn exhausted(g: &lpa::explore::ExchangeGraph) -> Option<Failure> {
    (g.status == Status::BudgetExhausted)
        .then(|| Failure::Runtime(format!("budget exhausted after {} seeds; results are partial", g.len())))
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Export { .. } => Format::Dot,
        _ => Format::Text,
    });
    if format == Format::Dot && !matches!(cli.command, Command::Export { .. }) {
        return Err(Failure::Usage("--format dot is only supported by export".into()));
    }
    let class = || context::load_seed(cli.seed.as_deref());
    let budget = context::budget(cli.budget);
    match &cli.command {
        Command::Mutate { at } => mutate(&class()?, at, format),
        Command::Explore => {
            let class = class()?;
            let g = context::explore_class(&class, budget, cli.workers)?;
            let labels = context::labels(&class, &g)?;
            let vars = g.variable_strings();
            let output = if format == Format::Json {
                json_text(&json!({
                    "seed": class.name,
                    "seeds": g.len(),
                    "variables": vars,
                    "labels": labels,
                    "edges": g.edges().len(),
                    "status": if g.is_complete() { "complete" } else { "budget exhausted" },
                }))
            } else {
                let mut s = format!("seeds: {}, variables: {}\nedges: {}\n", g.len(), vars.len(), g.edges().len());
                writeln!(s, "status: {}", if g.is_complete() { "complete" } else { "budget exhausted" }).unwrap();
                s.push_str("variables:\n");
                for (k, v) in vars.iter().enumerate() {
                    match &labels {
                        Some(l) => writeln!(s, "  {} = {v}", l[k]).unwrap(),
                        None => writeln!(s, "  {v}").unwrap(),
                    }
                }
                s
            };
            Ok(Outcome { output, failure: exhausted(&g) })
        }
        Command::Verify => {
            let start = Instant::now();
            let class = class()?;
            let g = context::explore_class(&class, budget, cli.workers)?;
            let gens = context::symmetries(&class, cli.symmetry.as_deref())?;
            let r = report::build(&class, &g, gens.as_deref())?;
            log::info!("verify took {:.2?}", start.elapsed());
            eprintln!("elapsed: {:.2?}", start.elapsed());
            let output = if format == Format::Json {
                json_text(&serde_json::to_value(&r).expect("serializable"))
            } else {
                r.render_text()
            };
            let failure = (!r.passed()).then(|| Failure::Mismatch(format!("{}: verification failed", class.name)));
            Ok(Outcome { output, failure })
        }
        Command::Orbits => {
            let class = class()?;
            let (g, p, names) = partition(&class, cli, budget)?;
            let q = quotient_graph(&g, &p);
            let reps: Vec<Vec<String>> = (0..p.len())
                .map(|o| representative(&class, &g, &p, o, &names))
                .collect();
            let output = if format == Format::Json {
                let orbits: Vec<_> = (0..p.len())
                    .map(|o| json!({"name": p.names[o], "size": p.orbits[o].len(), "representative": reps[o]}))
                    .collect();
                let edges: Vec<_> = q
                    .edges
                    .iter()
                    .map(|(&(a, b), &m)| json!({"from": q.names[a], "to": q.names[b], "multiplicity": m}))
                    .collect();
                json_text(&json!({"seed": class.name, "orbits": orbits, "quotient_edges": edges}))
            } else {
                let mut s = format!("orbits: {}\n", p.len());
                let census: Vec<String> = p.size_census().iter().map(|(k, v)| format!("{v}x{k}")).collect();
                writeln!(s, "sizes: {}", census.join(" + ")).unwrap();
                for (o, rep) in reps.iter().enumerate() {
                    writeln!(s, "{} {} {}", p.names[o], p.orbits[o].len(), rep.join(" ")).unwrap();
                }
                s.push_str("quotient edges:\n");
                for (&(a, b), &m) in &q.edges {
                    writeln!(s, "  {} - {} x{m}", q.names[a], q.names[b]).unwrap();
                }
                s
            };
            Ok(Outcome::ok(output))
        }
        Command::Cycles { pair } => {
            let class = class()?;
            if let Some(pair) = pair {
                let (i, j) = (pair[0], pair[1]);
                let rank = class.seed.rank();
                if !(1..=rank).contains(&i) || !(1..=rank).contains(&j) || i == j {
                    return Err(Failure::Usage(format!("--pair needs two distinct slots in 1..={rank}")));
                }
                let len = mutation_cycle(&class.seed, i - 1, j - 1, budget)?;
                let output = if format == Format::Json {
                    json_text(&json!({"seed": class.name, "pair": [i, j], "length": len}))
                } else {
                    format!("cycle {i},{j}: {len}\n")
                };
                return Ok(Outcome::ok(output));
            }
            let g = context::explore_class(&class, budget, cli.workers)?;
            let census = g.face_census()?;
            let faces: usize = census.values().sum();
            let output = if format == Format::Json {
                let c: serde_json::Map<String, serde_json::Value> =
                    census.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                json_text(&json!({"seed": class.name, "vertices": g.len(), "edges": g.edges().len(), "faces": faces, "census": c}))
            } else {
                let mut s = format!("vertices: {}, edges: {}, faces: {}\n", g.len(), g.edges().len(), faces);
                for (len, count) in &census {
                    writeln!(s, "length {len}: {count}").unwrap();
                }
                s
            };
            Ok(Outcome::ok(output))
        }
        Command::Positivity => {
            let class = class()?;
            let g = context::explore_class(&class, budget, cli.workers)?;
            let r = g.positivity();
            let output = if format == Format::Json {
                json_text(&json!({
                    "seed": class.name,
                    "variables": r.variables,
                    "exchange_polynomials": r.exchange_polynomials,
                    "failures": r.failures,
                    "passed": r.passed(),
                }))
            } else {
                let mut s = format!(
                    "variables checked: {}\nexchange polynomials checked: {}\n",
                    r.variables, r.exchange_polynomials
                );
                for f in &r.failures {
                    writeln!(s, "negative coefficient: {f}").unwrap();
                }
                writeln!(s, "positivity: {}", if r.passed() { "pass" } else { "FAIL" }).unwrap();
                s
            };
            let failure = if !r.passed() {
                Some(Failure::Mismatch("positivity fails".into()))
            } else {
                exhausted(&g)
            };
            Ok(Outcome { output, failure })
        }
        Command::Export { quotient } => {
            let class = class()?;
            if *quotient {
                let (g, p, _) = partition(&class, cli, budget)?;
                let q = quotient_graph(&g, &p);
                let output = match format {
                    Format::Json => export::quotient_json(&q),
                    _ => export::quotient_dot(&q),
                };
                return Ok(Outcome::ok(output));
            }
            let g = context::explore_class(&class, budget, cli.workers)?;
            let output = match format {
                Format::Json => export::graph_json(&g),
                _ => {
                    let labels = context::labels(&class, &g)?;
                    export::graph_dot(&g, &context::variable_names(&g, labels.as_deref()))
                }
            };
            Ok(Outcome { output, failure: exhausted(&g) })
        }
        Command::Serve => unreachable!("serve is handled by the caller"),
    }
}

fn mutate(class: &Class, at: &[String], format: Format) -> Result<Outcome, Failure> {
    let mut seed = class.seed.clone();
    let table = seed.table().clone();
    let mut steps = Vec::new();
    for a in at {
        let slot = parse_slot(&seed, a)?;
        seed = seed.mutate(slot)?;
        steps.push((slot + 1, serialize_laurent(&seed.cluster()[slot], &table)));
    }
    let r = render(&seed, None);
    let output = if format == Format::Json {
        let steps: Vec<_> = steps.iter().map(|(s, v)| json!({"slot": s, "new_variable": v})).collect();
        json_text(&json!({"seed": class.name, "steps": steps, "result": r}))
    } else {
        let names = table.cluster_names();
        let mut s = String::new();
        for (slot, v) in &steps {
            writeln!(s, "mutate {slot} ({}): {v}", names[slot - 1]).unwrap();
        }
        s.push_str("cluster:\n");
        for (k, c) in r.cluster.iter().enumerate() {
            writeln!(s, "  {}: {c}", k + 1).unwrap();
        }
        s.push_str("exchange:\n");
        for (k, (f, h)) in r.exchange.iter().zip(&r.hats).enumerate() {
            writeln!(s, "  {}: {f}    hat: {h}", k + 1).unwrap();
        }
        s
    };
    Ok(Outcome::ok(output))
}

type Partitioned = (lpa::explore::ExchangeGraph, Partition, Vec<String>);

fn partition(class: &Class, cli: &Cli, budget: lpa::explore::Budget) -> Result<Partitioned, Failure> {
    let gens = context::symmetries(class, cli.symmetry.as_deref())?
        .ok_or_else(|| Failure::Usage("no symmetry: pass --symmetry with a file".into()))?;
    let g = context::explore_class(class, budget, cli.workers)?;
    let labels = context::labels(class, &g)?;
    let p = context::orbits(class, &g, &gens, labels.as_deref())?;
    let names = context::variable_names(&g, labels.as_deref());
    Ok((g, p, names))
}

/// Cluster of an orbit's representative: the catalog's where it exists,
/// otherwise the seed with the smallest key.
fn representative(class: &Class, g: &lpa::explore::ExchangeGraph, p: &Partition, o: usize, names: &[String]) -> Vec<String> {
    if class.builtin == Some("e6") {
        if let Some(row) = E6_ORBITS.iter().find(|r| r.name == p.names[o]) {
            return row.cluster.iter().map(|s| s.to_string()).collect();
        }
    }
    let mut v: Vec<String> = g.nodes[p.orbits[o][0]].variables.iter().map(|&v| names[v].clone()).collect();
    v.sort();
    v
}
