//! DOT and JSON renderings of exchange graphs and their quotients.

use std::fmt::Write as _;

use lpa::explore::ExchangeGraph;
use lpa::symmetry::QuotientGraph;
use serde::Serialize;

#[derive(Serialize)]
struct JsonNode {
    id: String,
    cluster: Vec<String>,
    exchange: Vec<String>,
}

#[derive(Serialize)]
struct JsonEdge {
    from: String,
    to: String,
    slot: usize,
    new_variable: String,
}

#[derive(Serialize)]
struct JsonGraph {
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

/// `{"nodes":[{"id","cluster","exchange"}],"edges":[{"from","to","slot","new_variable"}]}`
/// with key hashes as ids and 1-based slots.
pub fn graph_json(g: &ExchangeGraph) -> String {
    let vars = g.variable_strings();
    let ids: Vec<String> = g.keys().map(|k| k.hex()).collect();
    let nodes = g
        .nodes
        .iter()
        .zip(&ids)
        .map(|(n, id)| JsonNode {
            id: id.clone(),
            cluster: n.variables.iter().map(|&v| vars[v].clone()).collect(),
            exchange: n.seed.exchange_strings(n.seed.table().cluster_names()),
        })
        .collect();
    let edges = g
        .edges()
        .into_iter()
        .map(|e| JsonEdge {
            from: ids[e.from].clone(),
            to: ids[e.to].clone(),
            slot: e.slot + 1,
            new_variable: vars[e.new_variable].clone(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&JsonGraph { nodes, edges }).expect("serializable");
    s.push('\n');
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

/// DOT with nodes labeled by their sorted variable lists and edges by the
/// mutated slot.
pub fn graph_dot(g: &ExchangeGraph, names: &[String]) -> String {
    let mut s = String::from("graph exchange {\n");
    for (k, n) in g.nodes.iter().enumerate() {
        let mut vars: Vec<&str> = n.variables.iter().map(|&v| names[v].as_str()).collect();
        vars.sort_unstable();
        writeln!(s, "  n{k} [label={}];", quote(&vars.join("\n"))).unwrap();
    }
    for e in g.edges() {
        writeln!(s, "  n{} -- n{} [label={}];", e.from, e.to, quote(&(e.slot + 1).to_string())).unwrap();
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct QuotientNode<'a> {
    id: &'a str,
    size: usize,
}

#[derive(Serialize)]
struct QuotientEdge<'a> {
    from: &'a str,
    to: &'a str,
    multiplicity: usize,
}

#[derive(Serialize)]
struct QuotientJson<'a> {
    nodes: Vec<QuotientNode<'a>>,
    edges: Vec<QuotientEdge<'a>>,
}

pub fn quotient_json(q: &QuotientGraph) -> String {
    let nodes = q.names.iter().zip(&q.sizes).map(|(n, &size)| QuotientNode { id: n, size }).collect();
    let edges = q
        .edges
        .iter()
        .map(|(&(a, b), &m)| QuotientEdge { from: &q.names[a], to: &q.names[b], multiplicity: m })
        .collect();
    let mut s = serde_json::to_string_pretty(&QuotientJson { nodes, edges }).expect("serializable");
    s.push('\n');
    s
}

pub fn quotient_dot(q: &QuotientGraph) -> String {
    let mut s = String::from("graph quotient {\n");
    for (n, size) in q.names.iter().zip(&q.sizes) {
        writeln!(s, "  {} [label={}];", quote(n), quote(&format!("{n} ({size})"))).unwrap();
    }
    for (&(a, b), &m) in &q.edges {
        writeln!(s, "  {} -- {} [label={}];", quote(&q.names[a]), quote(&q.names[b]), quote(&m.to_string())).unwrap();
    }
    s.push_str("}\n");
    s
}
