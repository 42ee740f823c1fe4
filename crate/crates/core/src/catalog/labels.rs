//! Named cluster variables of the built-in classes.
//!
//! Every label is computed from the defining relations of its variety, as a
//! Laurent expansion in the initial cluster, without using mutation. The
//! mutation class can then be checked against these names.

use std::collections::{BTreeMap, HashMap};

use super::builtin_table;
use super::equations::instantiate;
use crate::error::{Error, Result};
use crate::parser::{parse_polynomial, serialize_laurent};
use crate::poly::{Coefficient, LaurentExpansion, VariableTable};

/// Label families with their periods, in display order.
fn label_families(name: &str) -> Result<&'static [(char, i64)]> {
    Ok(match name {
        "a2-toy" => &[('x', 5)],
        "e4" => &[('x', 5), ('a', 5)],
        "e5" => &[('x', 8), ('q', 2), ('a', 8)],
        "e6" => &[('x', 12), ('z', 3), ('y', 12), ('t', 3), ('u', 2), ('a', 12)],
        _ => return Err(Error::Unknown { kind: "labeled class", name: name.to_string() }),
    })
}

/// Names of the cluster variables of a built-in class.
#[derive(Clone, Debug)]
pub struct Labeling<C: Coefficient = crate::Integer> {
    entries: Vec<(String, LaurentExpansion<C>)>,
    index: HashMap<LaurentExpansion<C>, usize>,
}

impl<C: Coefficient> Labeling<C> {
    fn new(entries: Vec<(String, LaurentExpansion<C>)>) -> Self {
        let index = entries.iter().enumerate().map(|(i, (_, e))| (e.sign_normalized(), i)).collect();
        Self { entries, index }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn get(&self, label: &str) -> Option<&LaurentExpansion<C>> {
        self.entries.iter().find(|(n, _)| n == label).map(|(_, e)| e)
    }

    /// Label of an expansion, up to sign.
    pub fn label_of(&self, e: &LaurentExpansion<C>) -> Option<&str> {
        self.index.get(&e.sign_normalized()).map(|&i| self.entries[i].0.as_str())
    }

    pub fn as_map(&self) -> HashMap<String, LaurentExpansion<C>> {
        self.entries.iter().cloned().collect()
    }

    /// Value of an expression in labels and the frozen variables of
    /// `target`.
    pub fn evaluate(&self, expr: &str, target: &VariableTable) -> Result<LaurentExpansion<C>> {
        let names = VariableTable::new(self.names(), target.frozen_names().iter().map(String::as_str))?;
        let p = parse_polynomial::<C>(expr, &names)?;
        let nvars = target.len();
        let mut images: Vec<_> = self.entries.iter().map(|(_, e)| e.clone()).collect();
        for f in target.frozen_names() {
            images.push(LaurentExpansion::variable(nvars, target.index_of(f).expect("frozen name")));
        }
        Ok(p.evaluate(&images))
    }
}

/// Family of a label: its alphabetic prefix.
pub fn family(label: &str) -> &str {
    label.trim_end_matches(|c: char| c.is_ascii_digit())
}

struct Builder<C: Coefficient> {
    target: VariableTable,
    families: &'static [(char, i64)],
    /// every label that can occur, as one parsing table
    names: VariableTable,
    known: HashMap<String, LaurentExpansion<C>>,
}

impl<C: Coefficient> Builder<C> {
    fn new(name: &str) -> Result<Self> {
        let target = builtin_table(name)?;
        let families = label_families(name)?;
        let all: Vec<String> = families
            .iter()
            .filter(|(f, _)| *f != 'a')
            .flat_map(|&(f, m)| (1..=m).map(move |k| format!("{f}{k}")))
            .collect();
        let names = VariableTable::new(all, target.frozen_names().to_vec())?;
        let nvars = target.len();
        let mut known = HashMap::new();
        for k in 0..target.rank() {
            known.insert(target.name(k).to_string(), LaurentExpansion::variable(nvars, k));
        }
        Ok(Self { target, families, names, known })
    }

    fn eval(&self, template: &str, shift: i64) -> Result<LaurentExpansion<C>> {
        let src = instantiate(template, shift, self.families);
        let p = parse_polynomial::<C>(&src, &self.names)?;
        let nvars = self.target.len();
        let mut images = Vec::with_capacity(self.names.len());
        for v in 0..self.names.len() {
            let name = self.names.name(v);
            let image = if self.names.is_frozen(v) {
                Some(LaurentExpansion::variable(nvars, self.target.index_of(name).expect("frozen")))
            } else if p.depends_on(v) {
                self.known.get(name).cloned()
            } else {
                Some(LaurentExpansion::zero(nvars))
            };
            images.push(image.ok_or_else(|| Error::Catalog(format!("{name} used before it is known in {src}")))?);
        }
        Ok(p.evaluate(&images))
    }

    /// Defines `label = numerator / denominator`; a label defined twice must
    /// get the same value both times.
    fn define(&mut self, label: &str, numerator: &str, denominator: &str, shift: i64) -> Result<()> {
        let label = instantiate(label, shift, self.families);
        let num = self.eval(numerator, shift)?;
        let den = self.eval(denominator, shift)?;
        let value = num.exact_div(&den).ok_or_else(|| {
            Error::Catalog(format!("{label} is not a Laurent polynomial in the initial cluster"))
        })?;
        match self.known.get(&label) {
            Some(old) if old.sign_normalized() != value.sign_normalized() => Err(Error::Catalog(format!(
                "inconsistent values for {label}: {} and {}",
                serialize_laurent(old, &self.target),
                serialize_laurent(&value, &self.target)
            ))),
            Some(_) => Ok(()),
            None => {
                self.known.insert(label, value);
                Ok(())
            }
        }
    }

    fn finish(self) -> Result<Labeling<C>> {
        let mut entries = Vec::new();
        for &(f, m) in self.families {
            if f == 'a' {
                continue;
            }
            for k in 1..=m {
                let label = format!("{f}{k}");
                let e = self
                    .known
                    .get(&label)
                    .ok_or_else(|| Error::Catalog(format!("{label} was never defined")))?;
                entries.push((label, e.clone()));
            }
        }
        Ok(Labeling::new(entries))
    }
}

/// Expansions of every named variable of a built-in class.
pub fn label_expansions<C: Coefficient>(name: &str) -> Result<Labeling<C>> {
    let mut b = Builder::<C>::new(name)?;
    match name {
        "a2-toy" => {
            for s in 0..5 {
                b.define("x{3}", "1 + x{2}", "x{1}", s)?;
            }
        }
        "e4" => {
            for s in 0..5 {
                b.define("x{3}", "a{2}*x{2} + a{4}*a{5}", "x{1}", s)?;
            }
        }
        "e5" => {
            for s in 0..8 {
                b.define("x{4}", "a{5}*x{2} + a{8}*x{3} + a{2}*a{3}", "x{1}", s)?;
            }
            for s in 0..8 {
                b.define("q{1}", "x{1}*x{5} - a{1}*a{5}", "1", s)?;
            }
        }
        "e6" => {
            // y{3}*y{4}
            let y_product = "x{2}*x{5}*(a{6}*x{3} + a{8}*x{4} + a{3}*a{11}) \
                             + a{13}*x{4}*(a{5}*x{2} + a{2}*a{10}) \
                             + a{13}*x{3}*(a{7}*x{4} + a{9}*x{5} + a{4}*a{12})";
            for s in 0..12 {
                b.define("x{5}", "y{3} + a{1}*a{12}", "x{1}", s)?;
                b.define("y{4}", y_product, "y{3}", s)?;
            }
            for s in 0..12 {
                b.define("z{2}", "y{2} + a{2}*x{1} + a{9}*x{3}", "x{2}", s)?;
                b.define("t{1}", "x{1}*x{4}*x{7}*x{10} - a{3}*a{6}*a{9}*a{12}", "1", s)?;
                b.define(
                    "u{1}",
                    "x{1}*x{5}*x{9} - a{4}*a{5}*x{1} - a{8}*a{9}*x{5} - a{12}*a{1}*x{9} \
                     - a{1}*a{5}*a{9} - a{4}*a{8}*a{12}",
                    "1",
                    s,
                )?;
            }
        }
        _ => unreachable!("label_families rejects unknown names"),
    }
    b.finish()
}

/// Spinor-coordinate expressions of the initial cluster variables.
pub(crate) fn initial_definitions(name: &str) -> Result<Vec<&'static str>> {
    Ok(match name {
        "a2-toy" | "e4" => vec!["x1", "x2"],
        "e5" => vec!["x1", "x2", "x3"],
        "e6" => vec!["x1", "x2", "x3", "x4", "x3*z3 - a3*x2 - a10*x4"],
        _ => return Err(Error::Unknown { kind: "coordinate system", name: name.to_string() }),
    })
}

/// Labels for each of `vars`, which must be exactly the labeled variables.
pub fn classify_variables<C: Coefficient>(
    vars: &[LaurentExpansion<C>],
    labeling: &Labeling<C>,
    table: &VariableTable,
) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(vars.len());
    let mut used = std::collections::HashSet::new();
    for v in vars {
        let label = labeling.label_of(v).ok_or_else(|| {
            Error::Catalog(format!("unlabeled cluster variable {}", serialize_laurent(v, table)))
        })?;
        if !used.insert(label) {
            return Err(Error::Catalog(format!("two variables labeled {label}")));
        }
        out.push(label.to_string());
    }
    if let Some(missing) = labeling.names().find(|n| !used.contains(n)) {
        return Err(Error::Catalog(format!("label {missing} does not occur in the class")));
    }
    Ok(out)
}

/// Distinct membership counts of each label family, e.g. every `x` lies in
/// 60 seeds gives `x -> [60]`.
pub fn membership_stats(membership: &[usize], labels: &[String]) -> BTreeMap<String, Vec<usize>> {
    let mut out: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (count, label) in membership.iter().zip(labels) {
        let v = out.entry(family(label).to_string()).or_default();
        if !v.contains(count) {
            v.push(*count);
            v.sort_unstable();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Integer;

    fn strings(name: &str) -> HashMap<String, String> {
        let t = builtin_table(name).unwrap();
        label_expansions::<Integer>(name)
            .unwrap()
            .as_map()
            .into_iter()
            .map(|(k, v)| (k, serialize_laurent(&v, &t)))
            .collect()
    }

    #[test]
    fn toy_labels() {
        let l = strings("a2-toy");
        assert_eq!(l["x3"], "(1 + x2)/x1");
        assert_eq!(l["x4"], "(1 + x1 + x2)/(x1*x2)");
        assert_eq!(l["x5"], "(1 + x1)/x2");
    }

    #[test]
    fn e4_labels() {
        let l = strings("e4");
        assert_eq!(l["x4"], "(a1*a5*x1 + a2*a3*x2 + a3*a4*a5)/(x1*x2)");
    }

    #[test]
    fn e6_label_counts() {
        let l = label_expansions::<Integer>("e6").map_err(|e| e.to_string()).unwrap();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for n in l.names() {
            *counts.entry(family(n)).or_default() += 1;
        }
        assert_eq!(counts, HashMap::from([("x", 12), ("z", 3), ("y", 12), ("t", 3), ("u", 2)]));
    }
}
