//! Sparse multivariate polynomials with exact integer-like coefficients.
//!
//! A [`Polynomial`] lives in a ring with a fixed number of variables. The
//! names of those variables are only needed at the text boundary and are kept
//! in a [`VariableTable`]; arithmetic only checks that the arities agree.
//!
//! Terms are stored sorted by graded-lexicographic order on exponent vectors,
//! so equal polynomials have identical term lists.

mod gcd;
mod laurent;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::Signed;
use smallvec::SmallVec;

pub use laurent::LaurentExpansion;

use crate::error::PolyError;

/// Coefficient ring for [`Polynomial`]: an exact Euclidean domain with signs.
///
/// Implemented for `BigInt` (the default everywhere) as well as machine
/// integers, which are faster but can overflow on large inputs.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Signed
    + Integer
    + AddAssign
    + SubAssign
    + Send
    + Sync
    + 'static
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Signed
        + Integer
        + AddAssign
        + SubAssign
        + Send
        + Sync
        + 'static
{
}

/// Names of the variables of a polynomial ring.
///
/// Cluster variables occupy indices `0..cluster.len()`, frozen variables
/// follow. This order is also the variable order used by the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    cluster: Vec<String>,
    frozen: Vec<String>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(
        cluster: impl IntoIterator<Item = S>,
        frozen: impl IntoIterator<Item = S>,
    ) -> Result<Self, PolyError> {
        let cluster: Vec<String> = cluster.into_iter().map(Into::into).collect();
        let frozen: Vec<String> = frozen.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for name in cluster.iter().chain(&frozen) {
            if !is_identifier(name) {
                return Err(PolyError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PolyError::DuplicateName(name.clone()));
            }
        }
        Ok(Self { cluster, frozen })
    }

    pub fn len(&self) -> usize {
        self.cluster.len() + self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn cluster_names(&self) -> &[String] {
        &self.cluster
    }

    pub fn frozen_names(&self) -> &[String] {
        &self.frozen
    }

    pub fn name(&self, index: usize) -> &str {
        if index < self.cluster.len() {
            &self.cluster[index]
        } else {
            &self.frozen[index - self.cluster.len()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.cluster
            .iter()
            .position(|n| n == name)
            .or_else(|| self.frozen.iter().position(|n| n == name).map(|i| i + self.cluster.len()))
    }

    pub fn is_frozen(&self, index: usize) -> bool {
        index >= self.cluster.len()
    }

    /// Same frozen variables, different cluster names.
    pub fn with_cluster_names(&self, names: Vec<String>) -> Result<Self, PolyError> {
        if names.len() != self.cluster.len() {
            return Err(PolyError::ArityMismatch(names.len(), self.cluster.len()));
        }
        Self::new(names, self.frozen.clone())
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

type Exponents = SmallVec<[u16; 24]>;

/// A monomial, ordered graded-lexicographically: by total degree, then by the
/// exponent of the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { degree: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Self { degree: exps.iter().map(|&e| e as u32).sum(), exps: SmallVec::from_slice(exps) }
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn set_exponent(&mut self, var: usize, e: u16) {
        self.degree = self.degree - self.exps[var] as u32 + e as u32;
        self.exps[var] = e;
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps: Exponents = self.exps.iter().map(|&a| a * k as u16).collect();
        Monomial { degree: self.degree * k, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { degree: self.degree - other.degree, exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial { degree: exps.iter().map(|&e| e as u32).sum(), exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial { degree: exps.iter().map(|&e| e as u32).sum(), exps }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub(crate) fn permute(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial { degree: self.degree, exps }
    }
}

/// Sparse polynomial with coefficients in `C`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C = num_bigint::BigInt> {
    nvars: usize,
    // ascending monomial order, no zero coefficients
    terms: Vec<(Monomial, C)>,
}

impl<C: Coefficient> Debug for Polynomial<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.terms.iter().map(|(m, c)| (c, m))).finish()
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::term(Monomial::variable(nvars, var), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Self { nvars, terms: vec![(m, c)] }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    /// Collects terms in any order, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(C::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Self { nvars, terms }
    }

    fn from_sorted(nvars: usize, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// `±1`.
    pub fn is_unit(&self) -> bool {
        self.is_constant() && self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    /// A single term (a monomial times a constant).
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> C {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).min().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut present = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for v in m.support() {
                present[v] = true;
            }
        }
        (0..self.nvars).filter(|&v| present[v]).collect()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &C> {
        self.terms.iter().map(|(_, c)| c)
    }

    /// Every coefficient is strictly positive (false for zero).
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.terms.iter().all(|(_, c)| c.is_positive())
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let neg = |c: &C| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), neg(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.clone() + neg(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), neg(c))));
        Self::from_sorted(self.nvars, out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.is_term() {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.is_term() {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity_and_hasher(self.terms.len() * other.terms.len() / 2 + 1, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.clone() * cb.clone();
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Multiplication by a single term preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.clone() * c.clone())).collect();
        Self::from_sorted(self.nvars, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(m, &C::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_impl(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_impl(&base);
            }
        }
        result
    }

    /// Divides every coefficient by `c`; `None` unless all are divisible.
    pub fn div_scalar(&self, c: &C) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, tc) in &self.terms {
            let (q, r) = tc.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(Self::from_sorted(self.nvars, terms))
    }

    /// Divides by a monomial; `None` unless it divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, c) in &self.terms {
            terms.push((tm.div(m)?, c.clone()));
        }
        Some(Self::from_sorted(self.nvars, terms))
    }

    /// Exact quotient `q` with `self = q * divisor`, or `None`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        self.check_arity(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.exact_div_unchecked(divisor))
    }

    pub(crate) fn exact_div_unchecked(&self, divisor: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if divisor.is_term() {
            let (m, c) = (&divisor.terms[0].0, &divisor.terms[0].1);
            return self.div_monomial(m)?.div_scalar(c);
        }
        if self.total_degree() < divisor.total_degree() || self.len() < 2 {
            return None;
        }
        // per-variable degree bounds reject most non-divisors cheaply
        for v in 0..self.nvars {
            let dd = divisor.degree_in(v);
            if dd > self.degree_in(v) || divisor.min_degree_in(v) > self.min_degree_in(v) {
                return None;
            }
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let rest = &divisor.terms[..divisor.terms.len() - 1];
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let t = m.div(&lm)?;
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in rest {
                let key = t.mul(dm);
                let sub = q.clone() * dc.clone();
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= sub;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-sub);
                    }
                }
            }
            quotient.push((t, q));
        }
        quotient.reverse();
        Some(Self::from_sorted(self.nvars, quotient))
    }

    /// Largest `m` such that `q^m` divides `self`.
    pub fn divisibility_order(&self, q: &Self) -> Result<u32, PolyError> {
        self.check_arity(q)?;
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if q.is_constant() && q.terms[0].1.abs().is_one() {
            return Err(PolyError::UnitDivisor);
        }
        if self.is_zero() {
            return Err(PolyError::ZeroDividend);
        }
        let mut count = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.exact_div_unchecked(q) {
            count += 1;
            cur = next;
        }
        Ok(count)
    }

    /// Greatest common divisor over the integers, with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        Ok(gcd::gcd(self, other))
    }

    /// gcd of the coefficients, positive (zero for the zero polynomial).
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for c in self.coefficients() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multiplies by -1 if the leading coefficient is negative.
    pub fn sign_normalized(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn is_sign_normalized(&self) -> bool {
        !self.leading_coefficient().is_some_and(|c| c.is_negative())
    }

    /// Sets `var` to zero.
    pub fn specialize_zero(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(var) == 0).cloned().collect();
        Self::from_sorted(self.nvars, terms)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one(self.nvars);
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Splits `self = m * q` with `m` the largest monomial factor and `q`
    /// sign-normalized.
    pub fn strip_monomial(&self) -> Result<(Monomial, Self), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let m = self.monomial_content();
        let q = self.div_monomial(&m).expect("monomial content divides every term");
        Ok((m, q.sign_normalized()))
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry `k`
    /// multiplies `var^k` and does not involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(var) as usize;
            let mut m = m.clone();
            m.set_exponent(var, 0);
            buckets[k].push((m, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                Self::from_sorted(self.nvars, t)
            })
            .collect()
    }

    /// Renames variables: variable `i` becomes `map[i]` in a ring with
    /// `nvars` variables. `map` must be injective on the support.
    pub fn permute_variables(&self, map: &[usize], nvars: usize) -> Self {
        Self::from_terms(nvars, self.terms.iter().map(|(m, c)| (m.permute(map, nvars), c.clone())))
    }

    /// Substitutes `var <- value` for a polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let coeffs = self.coefficients_in(var);
        let mut acc = Self::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul_impl(value).merge(c, false);
        }
        acc
    }

    /// Substitutes `var <- num / den` and returns the reduced result.
    ///
    /// `den` must be a monomial in cluster variables of `table`.
    pub fn substitute_rational(
        &self,
        table: &VariableTable,
        var: usize,
        num: &Self,
        den: &Monomial,
    ) -> Result<LaurentExpansion<C>, PolyError> {
        self.check_arity(num)?;
        if den.support().any(|v| table.is_frozen(v)) {
            return Err(PolyError::FrozenDenominator(
                den.support().filter(|&v| table.is_frozen(v)).map(|v| table.name(v).to_string()).collect(),
            ));
        }
        let deg = self.degree_in(var) as u32;
        if deg == 0 {
            return Ok(LaurentExpansion::from_polynomial(self.clone()));
        }
        // sum_k c_k num^k den^(deg-k), over den^deg
        let coeffs = self.coefficients_in(var);
        let mut acc = Self::zero(self.nvars);
        let mut num_pow = Self::one(self.nvars);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let part = c.mul_impl(&num_pow).mul_monomial(&den.pow(deg - k as u32));
                acc = acc.merge(&part, false);
            }
            if k < deg as usize {
                num_pow = num_pow.mul_impl(num);
            }
        }
        Ok(LaurentExpansion::new(acc, den.pow(deg)))
    }

    /// Evaluates at Laurent expansions, one per variable, in a ring with the
    /// arity of the images. Returns the reduced value.
    pub fn evaluate(&self, images: &[LaurentExpansion<C>]) -> LaurentExpansion<C> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |e| e.nvars());
        if self.is_zero() {
            return LaurentExpansion::zero(target);
        }
        let degs: Vec<u16> = (0..self.nvars).map(|v| self.degree_in(v)).collect();
        // common denominator prod den_v^deg_v
        let mut common = Monomial::one(target);
        for (v, &d) in degs.iter().enumerate() {
            if d > 0 {
                common = common.mul(&images[v].denominator().pow(d as u32));
            }
        }
        let mut powers: Vec<Vec<Polynomial<C>>> = images
            .iter()
            .map(|img| vec![Polynomial::one(img.nvars()), img.numerator().clone()])
            .collect();
        let mut acc: HashMap<Monomial, C> = HashMap::default();
        for (m, c) in &self.terms {
            let mut term_mono = Monomial::one(target);
            let mut factors: Vec<(usize, u16)> = Vec::new();
            for v in 0..self.nvars {
                let e = m.exponent(v);
                let missing = degs[v] - e;
                if missing > 0 {
                    term_mono = term_mono.mul(&images[v].denominator().pow(missing as u32));
                }
                if e > 0 {
                    factors.push((v, e));
                }
            }
            let mut prod = Polynomial::term(term_mono, c.clone());
            // multiply small factors first
            factors.sort_by_key(|&(v, e)| images[v].numerator().len().pow(e as u32));
            for (v, e) in factors {
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_impl(&cache[1]);
                    cache.push(next);
                }
                prod = prod.mul_impl(&cache[e as usize]);
            }
            for (pm, pc) in prod.terms {
                *acc.entry(pm).or_insert_with(C::zero) += pc;
            }
        }
        LaurentExpansion::new(Polynomial::from_map(target, acc), common)
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;
    use num_bigint::BigInt;

    fn table() -> VariableTable {
        VariableTable::new(["x1", "x2", "x3"], ["a1", "a3", "a4", "a5", "a9"]).unwrap()
    }

    fn p(s: &str) -> Polynomial<BigInt> {
        parse_polynomial(s, &table()).unwrap()
    }

    #[test]
    fn distributes() {
        assert_eq!(&p("1 + x2") * &p("x1"), p("x1 + x1*x2"));
        assert_eq!(&p("a1*x1 + a3*a4") + &p("0"), p("a1*x1 + a3*a4"));
    }

    #[test]
    fn product_of_two_binomials_has_four_terms() {
        let prod = &p("1 + x1") * &p("1 + x2");
        assert_eq!(prod.len(), 4);
        assert_eq!(prod, p("1 + x1 + x2 + x1*x2"));
    }

    #[test]
    fn mismatched_arity_is_an_error() {
        let other = Polynomial::<BigInt>::variable(2, 0);
        assert!(matches!(p("x1").checked_mul(&other), Err(PolyError::ArityMismatch(8, 2))));
    }

    #[test]
    fn exact_division() {
        let d = p("1 + x2");
        let q = p("a1*x1 + a3*a4");
        assert_eq!((&d * &q).exact_div(&d).unwrap(), Some(q));
        assert_eq!(p("1 + x1 + x2").exact_div(&p("1 + x1")).unwrap(), None);
        assert_eq!(p("0").exact_div(&p("x1 + 7")).unwrap(), Some(p("0")));
        assert!(matches!(p("x1").exact_div(&p("0")), Err(PolyError::DivisionByZero)));
        assert_eq!(p("4*x1 + 6").exact_div(&p("2")).unwrap(), Some(p("2*x1 + 3")));
        assert_eq!(p("4*x1 + 6").exact_div(&p("4")).unwrap(), None);
    }

    #[test]
    fn divisibility_orders() {
        let q = p("1 + x2");
        assert_eq!((&q.pow(3) * &p("x1")).divisibility_order(&q).unwrap(), 3);
        assert_eq!(p("1 + x1").divisibility_order(&q).unwrap(), 0);
        assert!(matches!(p("x1").divisibility_order(&p("-1")), Err(PolyError::UnitDivisor)));
    }

    #[test]
    fn specialization() {
        assert_eq!(p("a5*x2 + a1*x3 + a3*a4").specialize_zero(1), p("a1*x3 + a3*a4"));
        assert_eq!(p("x1 + a1").specialize_zero(2), p("x1 + a1"));
        assert!(p("x1*x2").specialize_zero(0).is_zero());
    }

    #[test]
    fn strips_monomials() {
        let (m, q) = p("x1^2*x2*(1 + x3)").strip_monomial().unwrap();
        assert_eq!(Polynomial::from_monomial(m), p("x1^2*x2"));
        assert_eq!(q, p("1 + x3"));
        let (m, q) = p("1 + x1").strip_monomial().unwrap();
        assert!(m.is_one());
        assert_eq!(q, p("1 + x1"));
        let (m, q) = p("a1*x1*x3 + a1*a9*x3").strip_monomial().unwrap();
        assert_eq!(Polynomial::from_monomial(m), p("a1*x3"));
        assert_eq!(q, p("x1 + a9"));
        assert!(matches!(p("0").strip_monomial(), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn substitution_examples() {
        let t = table();
        let r = p("1 + x1").substitute_rational(&t, 0, &p("1 + x2"), &Monomial::variable(8, 0)).unwrap();
        assert_eq!(r.numerator(), &p("x1 + 1 + x2"));
        assert_eq!(Polynomial::from_monomial(r.denominator().clone()), p("x1"));

        let r = p("a1 + x2").substitute_rational(&t, 0, &p("1 + x2"), &Monomial::variable(8, 0)).unwrap();
        assert_eq!(r.numerator(), &p("a1 + x2"));
        assert!(r.denominator().is_one());

        let r = p("x1^2").substitute_rational(&t, 0, &p("1 + x3"), &Monomial::variable(8, 1)).unwrap();
        assert_eq!(r.numerator(), &p("(1 + x3)^2"));
        assert_eq!(Polynomial::from_monomial(r.denominator().clone()), p("x2^2"));

        let frozen = Monomial::variable(8, 4);
        assert!(matches!(
            p("x1").substitute_rational(&t, 0, &p("x2"), &frozen),
            Err(PolyError::FrozenDenominator(_))
        ));
    }

    #[test]
    fn machine_integer_coefficients() {
        let a = Polynomial::<i64>::variable(2, 0) + Polynomial::one(2);
        let b = Polynomial::<i64>::variable(2, 1) + Polynomial::one(2);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), Some(a.clone()));
        assert_eq!(prod.gcd(&(&a * &a)).unwrap(), a);
    }
}
