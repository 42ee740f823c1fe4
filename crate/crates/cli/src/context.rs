//! Loading seeds and symmetries, and the labeled analysis shared by the
//! subcommands and the server.

use std::fmt;
use std::path::Path;

use lpa::catalog::{builtin_seed, classify_variables, label_expansions, BUILTIN_NAMES, E6_ORBITS};
use lpa::explore::{explore, Budget, ExchangeGraph};
use lpa::parser::{parse_seed_file_struct, seed_from_file};
use lpa::symmetry::{builtin_symmetries, name_orbits, orbit_partition, parse_symmetry_file, Partition, SymmetryMap};
use lpa::ZSeed;

/// Why a command failed, with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unknown seed, unreadable input: exit 2.
    Usage(String),
    /// A check did not pass: exit 1.
    Mismatch(String),
    /// Computation failed: exit 1.
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Mismatch(_) | Self::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Mismatch(m) | Self::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<lpa::Error> for Failure {
    fn from(e: lpa::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

/// A loaded seed. `builtin` is set when the seed is one of the built-ins,
/// whether named directly or read from a file with the same content.
#[derive(Clone, Debug)]
pub struct Class {
    pub name: String,
    pub builtin: Option<&'static str>,
    pub seed: ZSeed,
}

pub fn load_seed(spec: Option<&str>) -> Result<Class, Failure> {
    let spec = spec.ok_or_else(|| Failure::Usage("--seed is required".into()))?;
    if let Some(&name) = BUILTIN_NAMES.iter().find(|&&n| n == spec) {
        return Ok(Class { name: name.to_string(), builtin: Some(name), seed: builtin_seed(name)? });
    }
    if !Path::new(spec).exists() {
        return Err(Failure::Usage(format!(
            "unknown seed {spec:?}: not a built-in ({}) and not a file",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("cannot read {spec}: {e}")))?;
    let file = parse_seed_file_struct(&text).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    let seed: ZSeed = seed_from_file(&file).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    let builtin = BUILTIN_NAMES.iter().copied().find(|&n| {
        n == file.name
            && builtin_seed::<lpa::Integer>(n)
                .is_ok_and(|b| **b.table() == **seed.table() && b.strict_key() == seed.strict_key())
    });
    Ok(Class { name: file.name, builtin, seed })
}

pub fn budget(flag: Option<usize>) -> Budget {
    match flag {
        Some(n) => Budget { max_seeds: n, ..Budget::from_env() },
        None => Budget::from_env(),
    }
}

/// The symmetry group to use: the flag if given, otherwise the built-in
/// group of a built-in seed.
pub fn symmetries(class: &Class, flag: Option<&str>) -> Result<Option<Vec<SymmetryMap>>, Failure> {
    let spec = match (flag, class.builtin) {
        (Some(s), _) => s,
        (None, Some(b)) => b,
        (None, None) => return Ok(None),
    };
    let gens = if BUILTIN_NAMES.contains(&spec) {
        let gens = builtin_symmetries(spec)?;
        if gens.first().is_some_and(|g| **g.table() != **class.seed.table()) {
            return Err(Failure::Usage(format!("symmetry {spec} acts on a different seed")));
        }
        gens
    } else {
        let text =
            std::fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("cannot read symmetry {spec}: {e}")))?;
        parse_symmetry_file(&text, class.seed.table()).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?
    };
    Ok(Some(gens))
}

pub fn explore_class(class: &Class, budget: Budget, workers: usize) -> Result<ExchangeGraph, Failure> {
    Ok(explore(&class.seed, budget, workers)?)
}

/// Labels of the graph's variables, for built-in classes.
pub fn labels(class: &Class, graph: &ExchangeGraph) -> Result<Option<Vec<String>>, Failure> {
    let Some(name) = class.builtin else { return Ok(None) };
    if !graph.is_complete() {
        return Ok(None);
    }
    let labeling = label_expansions(name)?;
    Ok(Some(classify_variables(&graph.variables, &labeling, class.seed.table())?))
}

/// Orbit partition, with the catalog's orbit names where they exist.
pub fn orbits(
    class: &Class,
    graph: &ExchangeGraph,
    gens: &[SymmetryMap],
    labels: Option<&[String]>,
) -> Result<Partition, Failure> {
    if !graph.is_complete() {
        return Err(Failure::Runtime(format!("budget exhausted after {} seeds", graph.len())));
    }
    let mut p = orbit_partition(graph, gens)?;
    if let (Some("e6"), Some(labels)) = (class.builtin, labels) {
        if p.len() == E6_ORBITS.len() {
            name_orbits(graph, &mut p, labels, &E6_ORBITS)?;
        }
    }
    Ok(p)
}

/// Variable names for display: labels when known, expansions otherwise.
pub fn variable_names(graph: &ExchangeGraph, labels: Option<&[String]>) -> Vec<String> {
    match labels {
        Some(l) => l.to_vec(),
        None => graph.variable_strings(),
    }
}
