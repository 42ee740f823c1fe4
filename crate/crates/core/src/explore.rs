//! Breadth-first enumeration of mutation classes and exchange graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::parser::serialize_laurent;
use crate::poly::{Coefficient, LaurentExpansion};
use crate::seed::{CanonicalKey, Seed};

pub const DEFAULT_MAX_SEEDS: usize = 10_000;
pub const DEFAULT_MAX_TERMS: usize = 200_000;

/// Limits for an exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_seeds: usize,
    /// Largest numerator (in terms) any expansion may reach.
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_seeds: DEFAULT_MAX_SEEDS, max_terms: DEFAULT_MAX_TERMS }
    }
}

impl Budget {
    pub fn seeds(max_seeds: usize) -> Self {
        Self { max_seeds, ..Self::default() }
    }

    /// Default budget, with `LPA_BUDGET` overriding the seed limit.
    pub fn from_env() -> Self {
        match std::env::var("LPA_BUDGET").ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) if n > 0 => Self::seeds(n),
            _ => Self::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// Stopped early; the graph holds only the seeds discovered so far.
    BudgetExhausted,
}

/// Outcome of a finite-type check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteType {
    Finite(usize),
    /// The budget ran out after this many seeds; nothing is known beyond.
    Unknown(usize),
}

#[derive(Clone, Debug)]
pub struct Node<C: Coefficient> {
    pub key: CanonicalKey,
    /// Representative with slots in canonical order.
    pub seed: Seed<C>,
    /// Index into [`ExchangeGraph::variables`] for each slot.
    pub variables: Vec<usize>,
}

/// An undirected mutation edge, listed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// 0-based slot at `from`.
    pub slot: usize,
    /// Slot at `to` leading back.
    pub back_slot: usize,
    /// Index into [`ExchangeGraph::variables`] of the variable created at `to`.
    pub new_variable: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph<C: Coefficient = num_bigint::BigInt> {
    /// Sorted by key.
    pub nodes: Vec<Node<C>>,
    pub root: usize,
    /// Sign-normalized cluster variables, sorted by serialization.
    pub variables: Vec<LaurentExpansion<C>>,
    /// `neighbors[v][slot]`: node reached by mutating `slot` at `v`; `None`
    /// only when the budget ran out first.
    pub neighbors: Vec<Vec<Option<usize>>>,
    pub status: Status,
    index: HashMap<CanonicalKey, usize>,
}

struct Discovered<C: Coefficient> {
    key: CanonicalKey,
    seed: Seed<C>,
    targets: Vec<Option<usize>>,
}

/// Explores the mutation class of `seed`.
///
/// Mutations of a BFS level run on `workers` threads; results are merged in
/// a fixed order, so the graph does not depend on scheduling.
pub fn explore<C: Coefficient>(seed: &Seed<C>, budget: Budget, workers: usize) -> Result<ExchangeGraph<C>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Catalog(format!("cannot start worker pool: {e}")))?;
    pool.install(|| explore_in_pool(seed, budget))
}

fn explore_in_pool<C: Coefficient>(seed: &Seed<C>, budget: Budget) -> Result<ExchangeGraph<C>> {
    let rank = seed.rank();
    let root = seed.canonical_form();
    check_terms(&root, budget)?;
    let mut found: Vec<Discovered<C>> =
        vec![Discovered { key: root.canonical_key(), seed: root, targets: vec![None; rank] }];
    let mut index: HashMap<CanonicalKey, usize> = HashMap::new();
    index.insert(found[0].key.clone(), 0);
    let mut frontier = vec![0usize];
    let mut status = Status::Complete;

    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> =
            frontier.iter().flat_map(|&v| (0..rank).map(move |s| (v, s))).collect();
        let results: Vec<Result<(CanonicalKey, Seed<C>)>> = jobs
            .par_iter()
            .map(|&(v, s)| {
                let next = found[v].seed.mutate(s)?.canonical_form();
                check_terms(&next, budget)?;
                Ok((next.canonical_key(), next))
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (&(v, s), result) in jobs.iter().zip(results) {
            let (key, next) = result?;
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if found.len() >= budget.max_seeds {
                        status = Status::BudgetExhausted;
                        continue;
                    }
                    let t = found.len();
                    index.insert(key.clone(), t);
                    found.push(Discovered { key, seed: next, targets: vec![None; rank] });
                    next_frontier.push(t);
                    t
                }
            };
            found[v].targets[s] = Some(target);
        }
        if status == Status::BudgetExhausted {
            break;
        }
        frontier = next_frontier;
    }
    Ok(assemble(found, status))
}

fn check_terms<C: Coefficient>(seed: &Seed<C>, budget: Budget) -> Result<()> {
    if let Some(e) = seed.cluster().iter().find(|e| e.numerator().len() > budget.max_terms) {
        return Err(Error::Catalog(format!(
            "expansion with {} terms exceeds the term budget of {}",
            e.numerator().len(),
            budget.max_terms
        )));
    }
    Ok(())
}

/// Renumbers nodes in key order and collects the variables.
fn assemble<C: Coefficient>(found: Vec<Discovered<C>>, status: Status) -> ExchangeGraph<C> {
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].key.cmp(&found[b].key));
    let mut renumber = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }

    let mut by_string: BTreeMap<String, LaurentExpansion<C>> = BTreeMap::new();
    for d in &found {
        for e in d.seed.cluster() {
            by_string.entry(serialize_laurent(e, d.seed.table())).or_insert_with(|| e.clone());
        }
    }
    let var_index: HashMap<String, usize> =
        by_string.keys().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let variables: Vec<LaurentExpansion<C>> = by_string.into_values().collect();

    let mut neighbors = vec![Vec::new(); found.len()];
    let mut nodes = Vec::with_capacity(found.len());
    let mut index = HashMap::new();
    let mut slots: Vec<Option<Discovered<C>>> = found.into_iter().map(Some).collect();
    for (new, &old) in order.iter().enumerate() {
        let d = slots[old].take().unwrap();
        let ids = d
            .seed
            .cluster()
            .iter()
            .map(|e| var_index[&serialize_laurent(e, d.seed.table())])
            .collect();
        neighbors[new] = d.targets.iter().map(|t| t.map(|t| renumber[t])).collect();
        index.insert(d.key.clone(), new);
        nodes.push(Node { key: d.key, seed: d.seed, variables: ids });
    }
    ExchangeGraph { root: renumber[0], nodes, variables, neighbors, status, index }
}

impl<C: Coefficient> ExchangeGraph<C> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn node_of(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.nodes.iter().map(|n| &n.key)
    }

    pub fn seeds(&self) -> impl Iterator<Item = &Seed<C>> {
        self.nodes.iter().map(|n| &n.seed)
    }

    /// Slot at `to` that leads back to `from`, i.e. holds the variable that
    /// is in `to` but not in `from`.
    fn back_slot(&self, from: usize, to: usize) -> usize {
        let old = &self.nodes[from].variables;
        self.nodes[to]
            .variables
            .iter()
            .position(|v| !old.contains(v))
            .expect("adjacent seeds differ in one variable")
    }

    /// Each undirected edge once, ordered by `(from, slot)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (v, targets) in self.neighbors.iter().enumerate() {
            for (slot, t) in targets.iter().enumerate() {
                let Some(t) = *t else { continue };
                let back = self.back_slot(v, t);
                if (v, slot) < (t, back) {
                    out.push(Edge {
                        from: v,
                        to: t,
                        slot,
                        back_slot: back,
                        new_variable: self.nodes[t].variables[back],
                    });
                }
            }
        }
        out
    }

    /// Number of seeds containing each variable.
    pub fn membership(&self) -> Vec<usize> {
        let mut counts = vec![0; self.variables.len()];
        for n in &self.nodes {
            for &v in &n.variables {
                counts[v] += 1;
            }
        }
        counts
    }

    /// Rank-2 cycles: for each seed and pair of slots, alternately mutate
    /// the two slots not holding the other `n - 2` variables, following the
    /// graph. Returns cycle length to number of distinct cycles.
    pub fn face_census(&self) -> Result<BTreeMap<usize, usize>> {
        if !self.is_complete() {
            return Err(Error::BudgetExhausted(self.len()));
        }
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        let rank = self.nodes.first().map_or(0, |n| n.seed.rank());
        for start in 0..self.len() {
            for i in 0..rank {
                for j in i + 1..rank {
                    let mut cycle = self.walk_face(start, i, j);
                    cycle.sort_unstable();
                    faces.insert(cycle);
                }
            }
        }
        let mut census = BTreeMap::new();
        for f in faces {
            *census.entry(f.len()).or_insert(0) += 1;
        }
        Ok(census)
    }

    fn walk_face(&self, start: usize, i: usize, j: usize) -> Vec<usize> {
        let fixed: Vec<usize> = self.nodes[start]
            .variables
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, &v)| v)
            .collect();
        let mut visited = vec![start];
        let mut current = start;
        let mut slot = i;
        loop {
            let next = self.neighbors[current][slot].expect("complete graph");
            if next == start {
                return visited;
            }
            let back = self.back_slot(current, next);
            // the other free slot of `next`
            slot = (0..rank_of(&self.nodes[next]))
                .find(|&k| k != back && !fixed.contains(&self.nodes[next].variables[k]))
                .expect("two free slots");
            visited.push(next);
            current = next;
        }
    }

    /// Checks every cluster variable and every exchange polynomial of the
    /// class for negative coefficients.
    pub fn positivity(&self) -> PositivityReport {
        let mut failures = Vec::new();
        let names = self.variable_strings();
        for (v, e) in self.variables.iter().enumerate() {
            if !e.is_positive() {
                failures.push(format!("cluster variable {}", names[v]));
            }
        }
        let mut exchange = 0;
        for (k, n) in self.nodes.iter().enumerate() {
            for (slot, p) in n.seed.exchange().iter().enumerate() {
                exchange += 1;
                if !p.is_positive() {
                    failures.push(format!("seed {k} slot {}: exchange polynomial", slot + 1));
                }
            }
        }
        PositivityReport { variables: self.variables.len(), exchange_polynomials: exchange, failures }
    }

    /// Serialized variables, in [`Self::variables`] order.
    pub fn variable_strings(&self) -> Vec<String> {
        match self.nodes.first() {
            Some(n) => self.variables.iter().map(|e| serialize_laurent(e, n.seed.table())).collect(),
            None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub variables: usize,
    pub exchange_polynomials: usize,
    pub failures: Vec<String>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rank_of<C: Coefficient>(n: &Node<C>) -> usize {
    n.variables.len()
}

/// All seeds of the class, in key order.
pub fn mutation_class<C: Coefficient>(seed: &Seed<C>, budget: Budget) -> Result<(Vec<Seed<C>>, Status)> {
    let g = explore(seed, budget, 1)?;
    let status = g.status;
    Ok((g.nodes.into_iter().map(|n| n.seed).collect(), status))
}

/// All cluster variables of the class, sign-normalized and sorted.
pub fn variable_class<C: Coefficient>(
    seed: &Seed<C>,
    budget: Budget,
) -> Result<(Vec<LaurentExpansion<C>>, Status)> {
    let g = explore(seed, budget, 1)?;
    Ok((g.variables, g.status))
}

pub fn is_finite_type<C: Coefficient>(seed: &Seed<C>, budget: Budget) -> Result<FiniteType> {
    let g = explore(seed, budget, 1)?;
    Ok(match g.status {
        Status::Complete => FiniteType::Finite(g.len()),
        Status::BudgetExhausted => FiniteType::Unknown(g.len()),
    })
}

/// Alternately mutates `seed` at slots `i` and `j` (0-based) until its
/// equivalence class recurs; returns the number of distinct seeds visited.
pub fn mutation_cycle<C: Coefficient>(seed: &Seed<C>, i: usize, j: usize, budget: Budget) -> Result<usize> {
    if i == j || i >= seed.rank() || j >= seed.rank() {
        return Err(Error::BadSlot { slot: i.max(j) + 1, rank: seed.rank() });
    }
    let start = seed.canonical_key();
    let mut current = seed.clone();
    let mut slot = i;
    for step in 1..=budget.max_seeds {
        current = current.mutate(slot)?;
        if current.canonical_key() == start {
            return Ok(step);
        }
        slot = if slot == i { j } else { i };
    }
    Err(Error::BudgetExhausted(budget.max_seeds))
}
