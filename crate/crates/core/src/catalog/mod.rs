//! Built-in seeds and the data needed to check them: variable labels,
//! defining equations and numerical invariants.

mod equations;
mod labels;
mod profiles;
mod tables;

use crate::error::{Error, Result};
use crate::parser::{parse_polynomial, seed_file_for, SeedFile};
use crate::poly::{Coefficient, VariableTable};
use crate::seed::Seed;

pub use equations::{
    e4_equations, e5_equations, e6_equations, equations_for, verify_on_variety, Equation, EquationOrbit, EquationSet, Families, Residual,
    E4_FAMILIES, E5_FAMILIES, E6_FAMILIES,
};
pub use labels::{classify_variables, family, label_expansions, membership_stats, Labeling};
pub(crate) use labels::initial_definitions;
pub use profiles::{expectations, profile, rank_check, Expectations, VarietyProfile};
pub use tables::{OrbitRow, E6_LOOPED_ORBITS, E6_ORBITS, E6_QUOTIENT_EDGES};

pub const BUILTIN_NAMES: [&str; 4] = ["a2-toy", "e4", "e5", "e6"];

struct Definition {
    name: &'static str,
    cluster: &'static [&'static str],
    frozen: &'static [&'static str],
    exchange: &'static [&'static str],
}

const A2_TOY: Definition = Definition {
    name: "a2-toy",
    cluster: &["x1", "x2"],
    frozen: &[],
    exchange: &["1 + x2", "1 + x1"],
};

const E4: Definition = Definition {
    name: "e4",
    cluster: &["x1", "x2"],
    frozen: &["a1", "a2", "a3", "a4", "a5"],
    exchange: &["a2*x2 + a4*a5", "a1*x1 + a3*a4"],
};

const E5: Definition = Definition {
    name: "e5",
    cluster: &["x1", "x2", "x3"],
    frozen: &["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"],
    exchange: &[
        "a5*x2 + a8*x3 + a2*a3",
        "a6*x1*x3 + a3*a4*x1 + a8*a1*x3 + a1*a2*a3",
        "a4*x1 + a7*x2 + a1*a2",
    ],
};

// Cayley plane; y3 = x3*z3 - a3*x2 - a10*x4.
const E6: Definition = Definition {
    name: "e6",
    cluster: &["x1", "x2", "x3", "x4", "y3"],
    frozen: &["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12"],
    exchange: &[
        "y3 + a12*a1",
        "a2*x1*(y3 + a10*x4) + a9*x3*(y3 + a1*a12) + x1*x3*(a7*x4 + a4*a12)",
        "y3 + a3*x2 + a10*x4",
        "a11*(y3 + a3*x2) + x3*(a4*x1 + a6*x2 + a1*a9)",
        "x1*x4*(a5*x2 + a7*x3 + a2*a10) + a12*x3*(a4*x1 + a1*a9) + a12*x2*(a6*x3 + a8*x4 + a3*a11)",
    ],
};

fn definition(name: &str) -> Result<&'static Definition> {
    [&A2_TOY, &E4, &E5, &E6]
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::Unknown { kind: "seed", name: name.to_string() })
}

pub fn builtin_table(name: &str) -> Result<VariableTable> {
    let d = definition(name)?;
    Ok(VariableTable::new(d.cluster.iter().copied(), d.frozen.iter().copied())?)
}

pub fn builtin_seed<C: Coefficient>(name: &str) -> Result<Seed<C>> {
    let d = definition(name)?;
    let table = builtin_table(name)?;
    let exchange = d
        .exchange
        .iter()
        .map(|s| parse_polynomial(s, &table))
        .collect::<Result<Vec<_>, _>>()?;
    Seed::initial(table, exchange)
}

/// The seed file shipped for a built-in seed.
pub fn builtin_seed_file(name: &str) -> Result<SeedFile> {
    let seed = builtin_seed::<crate::Integer>(name)?;
    Ok(seed_file_for(name, seed.table(), seed.exchange()))
}
