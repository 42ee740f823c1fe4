//! Text formats: polynomial expressions, Laurent expansions and seed files.
//!
//! Grammar for expressions:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ['^' uint]
//! base   := uint | ident | '(' expr ')'
//! ```
//!
//! Serialized polynomials list terms by increasing total degree, and within
//! one degree by decreasing lexicographic order, so `1 + x2` and
//! `a2*x2 + a4*a5` print as written. Inside a term, frozen variables come
//! before cluster variables.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError};
use crate::poly::{Coefficient, LaurentExpansion, Monomial, Polynomial, VariableTable};
use crate::seed::Seed;

pub fn parse_polynomial<C: Coefficient>(
    src: &str,
    table: &VariableTable,
) -> Result<Polynomial<C>, ParseError> {
    let mut parser = Parser { chars: src.chars().collect(), pos: 0, table };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected {:?}", parser.chars[parser.pos])));
    }
    Ok(p)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    table: &'a VariableTable,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(message, self.pos + 1)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr<C: Coefficient>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let negate = self.peek() == Some('-');
        if negate {
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term<C: Coefficient>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor<C: Coefficient>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let base = self.base()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some('-') => return Err(self.error("negative exponent")),
            Some(c) if c.is_ascii_digit() => {}
            Some(c) => return Err(self.error(format!("expected exponent, found {c:?}"))),
            None => return Err(self.error("expected exponent, found end of input")),
        }
        let digits = self.digits();
        if self.chars.get(self.pos) == Some(&'.') {
            return Err(self.error("fractional exponent"));
        }
        let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        if e > u16::MAX as u32 {
            return Err(self.error("exponent too large"));
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn base<C: Coefficient>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let nvars = self.table.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                if self.chars.get(self.pos) == Some(&'.') {
                    return Err(self.error("non-integer constant"));
                }
                let value = C::from_str_radix(&digits, 10)
                    .map_err(|_| self.error("integer constant out of range"))?;
                Ok(Polynomial::constant(nvars, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.table.index_of(&name) {
                    Some(v) => Ok(Polynomial::variable(nvars, v)),
                    None => Err(ParseError::new(format!("unknown identifier {name:?}"), start + 1)),
                }
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Variable indices in printing order: frozen first, then cluster.
fn print_order(table: &VariableTable) -> impl Iterator<Item = usize> {
    let n = table.rank();
    (n..table.len()).chain(0..n)
}

fn write_monomial(out: &mut String, m: &Monomial, table: &VariableTable) {
    let mut first = true;
    for v in print_order(table) {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(table.name(v));
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

pub fn serialize_polynomial<C: Coefficient>(p: &Polynomial<C>, table: &VariableTable) -> String {
    assert_eq!(p.nvars(), table.len(), "polynomial and table disagree");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<&(Monomial, C)> = p.terms().iter().collect();
    // stored ascending grlex: stable sort by degree keeps decreasing lex after reversal
    terms.reverse();
    terms.sort_by_key(|(m, _)| m.degree());
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            let _ = write!(out, "{abs}");
        } else {
            if !abs.is_one() {
                let _ = write!(out, "{abs}*");
            }
            write_monomial(&mut out, m, table);
        }
    }
    out
}

pub fn serialize_laurent<C: Coefficient>(e: &LaurentExpansion<C>, table: &VariableTable) -> String {
    let num = serialize_polynomial(e.numerator(), table);
    let den = e.denominator();
    if den.is_one() {
        return num;
    }
    let mut out = String::new();
    if e.numerator().len() > 1 {
        let _ = write!(out, "({num})");
    } else {
        out.push_str(&num);
    }
    out.push('/');
    let mut den_str = String::new();
    write_monomial(&mut den_str, den, table);
    if den.support().count() > 1 {
        let _ = write!(out, "({den_str})");
    } else {
        out.push_str(&den_str);
    }
    out
}

/// Parses `N` or `(N)/(d)` as written by [`serialize_laurent`].
pub fn parse_laurent<C: Coefficient>(
    src: &str,
    table: &VariableTable,
) -> Result<LaurentExpansion<C>, ParseError> {
    let Some(slash) = top_level_slash(src) else {
        return parse_polynomial(src, table).map(LaurentExpansion::from_polynomial);
    };
    let num: Polynomial<C> = parse_polynomial(&src[..slash], table)?;
    let den: Polynomial<C> = parse_polynomial(&src[slash + 1..], table).map_err(|e| ParseError {
        message: e.message,
        position: e.position + slash + 1,
    })?;
    let position = src[..slash].chars().count() + 2;
    if !den.is_term() || !den.leading_coefficient().is_some_and(|c| c.is_one()) {
        return Err(ParseError::new("denominator must be a monomial", position));
    }
    let (m, _) = den.leading_term().unwrap();
    Ok(LaurentExpansion::new(num, m.clone()))
}

fn top_level_slash(src: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// On-disk seed description.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub name: String,
    pub frozen: Vec<String>,
    pub cluster: Vec<String>,
    pub exchange: ExchangeMap,
}

/// Cluster name to expression, in file order; duplicate keys are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExchangeMap(pub Vec<(String, String)>);

impl<'de> Deserialize<'de> for ExchangeMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExchangeMap;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from cluster names to expressions")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<ExchangeMap, A::Error> {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    if !seen.insert(k.clone()) {
                        return Err(serde::de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    out.push((k, v));
                }
                Ok(ExchangeMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl Serialize for ExchangeMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for SeedFile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("frozen", &self.frozen)?;
        map.serialize_entry("cluster", &self.cluster)?;
        map.serialize_entry("exchange", &self.exchange)?;
        map.end()
    }
}

pub fn parse_seed_file_struct(src: &str) -> Result<SeedFile, Error> {
    serde_json::from_str(src).map_err(|e| Error::Schema(e.to_string()))
}

pub fn parse_seed_file<C: Coefficient>(src: &str) -> Result<Seed<C>, Error> {
    let file = parse_seed_file_struct(src)?;
    seed_from_file(&file)
}

pub fn seed_from_file<C: Coefficient>(file: &SeedFile) -> Result<Seed<C>, Error> {
    let table = VariableTable::new(file.cluster.clone(), file.frozen.clone())?;
    let mut exchange = vec![None; file.cluster.len()];
    for (name, expr) in &file.exchange.0 {
        let Some(slot) = file.cluster.iter().position(|c| c == name) else {
            return Err(Error::Schema(format!("exchange key {name:?} is not a cluster variable")));
        };
        exchange[slot] = Some(parse_polynomial::<C>(expr, &table)?);
    }
    let mut polys = Vec::with_capacity(exchange.len());
    for (slot, p) in exchange.into_iter().enumerate() {
        match p {
            Some(p) => polys.push(p),
            None => {
                return Err(Error::Schema(format!(
                    "no exchange polynomial for {:?}",
                    file.cluster[slot]
                )))
            }
        }
    }
    Seed::initial(table, polys)
}

/// Seed file for an initial seed, exchange entries in cluster order.
pub fn seed_file_for<C: Coefficient>(name: &str, table: &VariableTable, exchange: &[Polynomial<C>]) -> SeedFile {
    SeedFile {
        name: name.to_string(),
        frozen: table.frozen_names().to_vec(),
        cluster: table.cluster_names().to_vec(),
        exchange: ExchangeMap(
            table
                .cluster_names()
                .iter()
                .zip(exchange)
                .map(|(n, p)| (n.clone(), serialize_polynomial(p, table)))
                .collect(),
        ),
    }
}

pub fn serialize_seed_file(file: &SeedFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("seed files serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn e5_table() -> VariableTable {
        VariableTable::new(
            ["x1", "x2", "x3"],
            ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"],
        )
        .unwrap()
    }

    fn p(s: &str) -> Polynomial<BigInt> {
        parse_polynomial(s, &e5_table()).unwrap()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(p("a2*x2 + a4*a5").len(), 2);
        assert!(p("0").is_zero());
        assert_eq!(p("(1+x1)^2"), p("1 + 2*x1 + x1^2"));
        assert_eq!(p(" - x1 -x2"), -p("x1 + x2"));
    }

    #[test]
    fn serializes_in_display_order() {
        let t = e5_table();
        let f2 = "a6*x1*x3 + a3*a4*x1 + a1*a8*x3 + a1*a2*a3";
        assert_eq!(serialize_polynomial(&p(f2), &t), f2);
        assert_eq!(serialize_polynomial(&p("x2 + 1"), &t), "1 + x2");
        assert_eq!(serialize_polynomial(&p("a8*x3 + a5*x2 + a2*a3"), &t), "a5*x2 + a8*x3 + a2*a3");
        assert_eq!(serialize_polynomial(&p("0"), &t), "0");
        assert_eq!(serialize_polynomial(&p("-3*x1^2 + 2 - x2"), &t), "2 - x2 - 3*x1^2");
    }

    #[test]
    fn laurent_text() {
        let t = e5_table();
        let e: LaurentExpansion<BigInt> = parse_laurent("(1 + x1 + x2)/(x1*x2)", &t).unwrap();
        assert_eq!(serialize_laurent(&e, &t), "(1 + x1 + x2)/(x1*x2)");
        let e: LaurentExpansion<BigInt> = parse_laurent("(1 + x2)/x1", &t).unwrap();
        assert_eq!(serialize_laurent(&e, &t), "(1 + x2)/x1");
        let e: LaurentExpansion<BigInt> = parse_laurent("x2/x1^2", &t).unwrap();
        assert_eq!(serialize_laurent(&e, &t), "x2/x1^2");
        assert!(parse_laurent::<BigInt>("x2/(1 + x1)", &t).is_err());
    }

    #[test]
    fn error_positions() {
        let t = e5_table();
        let err = parse_polynomial::<BigInt>("x1 + b7", &t).unwrap_err();
        assert_eq!(err.position, 6);
        assert!(err.message.contains("unknown identifier"));
        assert_eq!(parse_polynomial::<BigInt>("x1^-2", &t).unwrap_err().message, "negative exponent");
        assert_eq!(parse_polynomial::<BigInt>("x1^2.5", &t).unwrap_err().message, "fractional exponent");
        assert!(parse_polynomial::<BigInt>("x1 x2", &t).is_err());
        assert!(parse_polynomial::<BigInt>("x1*-x2", &t).is_err());
        assert!(parse_polynomial::<BigInt>("(x1", &t).is_err());
        assert!(parse_polynomial::<BigInt>("", &t).is_err());
    }

    #[test]
    fn seed_file_duplicates_rejected() {
        let src = r#"{"name":"t","frozen":[],"cluster":["x1","x2"],
            "exchange":{"x1":"1 + x2","x1":"1 + x2"}}"#;
        assert!(matches!(parse_seed_file::<BigInt>(src), Err(Error::Schema(_))));
        let src = r#"{"name":"t","name":"u","frozen":[],"cluster":["x1","x2"],
            "exchange":{"x1":"1 + x2","x2":"1 + x1"}}"#;
        assert!(matches!(parse_seed_file::<BigInt>(src), Err(Error::Schema(_))));
    }
}
