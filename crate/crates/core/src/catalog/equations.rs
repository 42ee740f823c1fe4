//! Defining equations of the varieties in spinor coordinates, generated from
//! one representative per orbit of the index rotation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::parser::{parse_polynomial, serialize_laurent};
use crate::poly::{Coefficient, LaurentExpansion, Polynomial, VariableTable};

/// Index families of a coordinate system: letter and period.
pub type Families = &'static [(char, i64)];

pub const E4_FAMILIES: Families = &[('a', 5), ('x', 5)];
pub const E5_FAMILIES: Families = &[('a', 8), ('x', 8)];
pub const E6_FAMILIES: Families = &[('a', 12), ('x', 12), ('z', 3)];

/// Replaces every `f{k}` by `f` followed by `k + shift` reduced into
/// `1..=period` of family `f`. Families without a period are left alone.
pub(crate) fn instantiate(template: &str, shift: i64, families: &[(char, i64)]) -> String {
    let mut out = String::with_capacity(template.len());
    let mut chars = template.chars().peekable();
    let mut last = ' ';
    while let Some(c) = chars.next() {
        if c != '{' {
            out.push(c);
            last = c;
            continue;
        }
        let mut digits = String::new();
        for d in chars.by_ref() {
            if d == '}' {
                break;
            }
            digits.push(d);
        }
        let k: i64 = digits.parse().expect("template index");
        let period = families.iter().find(|(f, _)| *f == last).map(|(_, p)| *p);
        let idx = match period {
            Some(m) => (k + shift - 1).rem_euclid(m) + 1,
            None => k + shift,
        };
        out.push_str(&idx.to_string());
    }
    out
}

/// One equation `lhs = rhs`, a rotation conjugate of a catalog
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation<C: Coefficient = crate::Integer> {
    /// Orbit tag and shift, e.g. `a3` is the representative of orbit `a`
    /// shifted by 3.
    pub name: String,
    pub lhs: Polynomial<C>,
    pub rhs: Polynomial<C>,
}

impl<C: Coefficient> Equation<C> {
    /// `lhs - rhs`, sign-normalized; equations are compared by this.
    pub fn normal_form(&self) -> Polynomial<C> {
        (&self.lhs - &self.rhs).sign_normalized()
    }
}

/// Coordinates and equations of one variety.
#[derive(Clone, Debug)]
pub struct EquationSet<C: Coefficient = crate::Integer> {
    /// Spinor coordinates as "cluster" names, `a_i` frozen.
    pub table: VariableTable,
    pub families: Families,
    pub equations: Vec<Equation<C>>,
}

/// A representative equation and the number of its rotation conjugates.
#[derive(Clone, Copy, Debug)]
pub struct EquationOrbit {
    pub tag: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub shifts: i64,
}

type Orbit = EquationOrbit;

impl<C: Coefficient> EquationSet<C> {
    /// All conjugates of `orbits`, over coordinates named by `families`
    /// (family `a` frozen).
    pub fn generate(families: Families, orbits: &[EquationOrbit]) -> Self {
        build(families, orbits)
    }

    /// Sign-normalized `lhs - rhs` of every equation, sorted.
    pub fn normal_forms(&self) -> Vec<Polynomial<C>> {
        let mut v: Vec<_> = self.equations.iter().map(Equation::normal_form).collect();
        v.sort_by(|a, b| a.terms().cmp(b.terms()));
        v
    }
}

fn build<C: Coefficient>(families: Families, orbits: &[Orbit]) -> EquationSet<C> {
    let mut cluster = Vec::new();
    let mut frozen = Vec::new();
    for &(f, m) in families {
        let names = (1..=m).map(|k| format!("{f}{k}"));
        if f == 'a' {
            frozen.extend(names);
        } else {
            cluster.extend(names);
        }
    }
    let table = VariableTable::new(cluster, frozen).expect("coordinate names are distinct");
    let mut equations = Vec::new();
    for o in orbits {
        for s in 0..o.shifts {
            let lhs = parse_polynomial(&instantiate(o.lhs, s, families), &table).expect("built-in equation");
            let rhs = parse_polynomial(&instantiate(o.rhs, s, families), &table).expect("built-in equation");
            equations.push(Equation { name: format!("{}{}", o.tag, s), lhs, rhs });
        }
    }
    EquationSet { table, families, equations }
}

/// Plücker relations of Gr(2,5): `x_k x_{k+2} = a_{k+1} x_{k+1} + a_{k+3} a_{k+4}`.
pub fn e4_equations<C: Coefficient>() -> EquationSet<C> {
    build(
        E4_FAMILIES,
        &[Orbit { tag: "a", lhs: "x{1}*x{3}", rhs: "a{2}*x{2} + a{4}*a{5}", shifts: 5 }],
    )
}

/// The ten quadrics of OGr(5,10).
pub fn e5_equations<C: Coefficient>() -> EquationSet<C> {
    build(
        E5_FAMILIES,
        &[
            Orbit { tag: "a", lhs: "x{1}*x{4}", rhs: "a{5}*x{2} + a{8}*x{3} + a{2}*a{3}", shifts: 8 },
            Orbit { tag: "b", lhs: "x{2}*x{6} - a{2}*a{6}", rhs: "x{4}*x{8} - a{4}*a{8}", shifts: 2 },
        ],
    )
}

/// The 27 quadrics of the Cayley plane: orbits of size 12, 12 and 3.
pub fn e6_equations<C: Coefficient>() -> EquationSet<C> {
    build(
        E6_FAMILIES,
        &[
            Orbit {
                tag: "a",
                lhs: "x{1}*x{6}",
                rhs: "a{6}*x{3} + a{1}*z{2} + a{8}*x{4} + a{3}*a{11}",
                shifts: 12,
            },
            Orbit {
                tag: "b",
                lhs: "x{1}*x{5}",
                rhs: "x{3}*z{3} - a{3}*x{2} - a{10}*x{4} + a{1}*a{12}",
                shifts: 12,
            },
            Orbit {
                tag: "c",
                lhs: "z{1}*z{2}",
                rhs: "x{3}*x{9} + x{6}*x{12} + a{2}*a{8} + a{5}*a{11}",
                shifts: 3,
            },
        ],
    )
}

pub fn equations_for<C: Coefficient>(name: &str) -> Result<EquationSet<C>> {
    match name {
        "e4" => Ok(e4_equations()),
        "e5" => Ok(e5_equations()),
        "e6" => Ok(e6_equations()),
        _ => Err(Error::Unknown { kind: "equation set", name: name.to_string() }),
    }
}

/// Value of `lhs - rhs` for one equation.
#[derive(Clone, Debug)]
pub struct Residual {
    pub name: String,
    /// Serialized residual; `"0"` when the equation holds.
    pub value: String,
    pub vanishes: bool,
}

/// Substitutes expansions for the coordinates of `eqs` and reports every
/// residual. Frozen names map to the frozen variables of `target`.
pub fn verify_on_variety<C: Coefficient>(
    expansions: &HashMap<String, LaurentExpansion<C>>,
    target: &VariableTable,
    eqs: &EquationSet<C>,
) -> Result<Vec<Residual>> {
    let nvars = target.len();
    let mut images = Vec::with_capacity(eqs.table.len());
    for v in 0..eqs.table.len() {
        let name = eqs.table.name(v);
        let image = if eqs.table.is_frozen(v) {
            target.index_of(name).map(|k| LaurentExpansion::variable(nvars, k))
        } else {
            expansions.get(name).cloned()
        };
        images.push(image.ok_or_else(|| Error::Catalog(format!("no expansion for {name}")))?);
    }
    Ok(eqs
        .equations
        .iter()
        .map(|e| {
            let r = (&e.lhs - &e.rhs).evaluate(&images);
            Residual { name: e.name.clone(), value: serialize_laurent(&r, target), vanishes: r.is_zero() }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::serialize_polynomial;
    use crate::Integer;

    #[test]
    fn instantiation_wraps_per_family() {
        assert_eq!(instantiate("x{1}*x{6} + a{8}*z{2}", 11, E6_FAMILIES), "x12*x5 + a7*z1");
        assert_eq!(instantiate("z{1}*z{2}", 3, E6_FAMILIES), "z1*z2");
    }

    #[test]
    fn e6_has_27_equations() {
        let eqs = e6_equations::<Integer>();
        assert_eq!(eqs.equations.len(), 27);
        let a0 = &eqs.equations[0];
        assert_eq!(serialize_polynomial(&a0.lhs, &eqs.table), "x1*x6");
        assert_eq!(serialize_polynomial(&a0.rhs, &eqs.table), "a6*x3 + a8*x4 + a1*z2 + a3*a11");
        let c = |s: i64| {
            let t = &eqs.table;
            parse_polynomial::<Integer>(&instantiate("z{1}*z{2} - x{3}*x{9} - x{6}*x{12} - a{2}*a{8} - a{5}*a{11}", s, E6_FAMILIES), t).unwrap()
        };
        assert_eq!(c(3), c(0));
    }
}
