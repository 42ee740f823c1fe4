//! Seeds, exchange Laurent polynomials, mutation and equivalence.
//!
//! A seed of rank `n` lives over one [`VariableTable`] holding the initial
//! cluster and the frozen variables. Cluster variables are stored as Laurent
//! expansions in the initial cluster. Exchange polynomials use the same
//! table, but there cluster position `k` stands for whatever variable
//! currently sits in slot `k`.

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result, Violation};
use crate::parser::{serialize_laurent, serialize_polynomial};
use crate::poly::{Coefficient, LaurentExpansion, Monomial, Polynomial, VariableTable};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed<C: Coefficient = num_bigint::BigInt> {
    table: Arc<VariableTable>,
    cluster: Vec<LaurentExpansion<C>>,
    exchange: Vec<Polynomial<C>>,
    hats: Vec<Monomial>,
}

/// Identity of a seed up to signs and reordering of slots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("keys are built from strings")
    }

    /// Short stable identifier: hex SHA-256 of the key.
    pub fn hex(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", &self.hex()[..12])
    }
}

impl<C: Coefficient> Seed<C> {
    /// The seed whose cluster is the table's cluster variables.
    pub fn initial(table: VariableTable, exchange: Vec<Polynomial<C>>) -> Result<Self> {
        let n = table.rank();
        let nvars = table.len();
        if exchange.len() != n {
            return Err(Error::Schema(format!(
                "{} exchange polynomials for {} cluster variables",
                exchange.len(),
                n
            )));
        }
        if let Some(p) = exchange.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::Poly(crate::error::PolyError::ArityMismatch(p.nvars(), nvars)));
        }
        let cluster = (0..n).map(|k| LaurentExpansion::variable(nvars, k)).collect();
        Self::from_parts(Arc::new(table), cluster, exchange)
    }

    /// Builds and validates a seed from its cluster and exchange data.
    pub fn from_parts(
        table: Arc<VariableTable>,
        cluster: Vec<LaurentExpansion<C>>,
        exchange: Vec<Polynomial<C>>,
    ) -> Result<Self> {
        let violations = validate_exchange(&table, &exchange);
        if !violations.is_empty() {
            return Err(Error::InvalidSeed(violations));
        }
        let hats = exchange_laurent(&exchange)?;
        Ok(Self { table, cluster, exchange, hats })
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn cluster(&self) -> &[LaurentExpansion<C>] {
        &self.cluster
    }

    pub fn exchange(&self) -> &[Polynomial<C>] {
        &self.exchange
    }

    /// Denominator monomial of each exchange Laurent polynomial.
    pub fn hat_denominators(&self) -> &[Monomial] {
        &self.hats
    }

    /// `F̂_i = F_i / hat_i` as a Laurent polynomial in slot symbols.
    pub fn exchange_laurent_polynomial(&self, slot: usize) -> LaurentExpansion<C> {
        LaurentExpansion::new(self.exchange[slot].clone(), self.hats[slot].clone())
    }

    /// LP1/LP2 checks; an empty list means the seed is valid.
    pub fn validate(&self) -> Vec<Violation> {
        validate_exchange(&self.table, &self.exchange)
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.rank() {
            return Err(Error::BadSlot { slot: slot + 1, rank: self.rank() });
        }
        Ok(())
    }

    /// Images of the table's variables: slot expansions, frozen variables
    /// fixed.
    fn images(&self) -> Vec<LaurentExpansion<C>> {
        let nvars = self.table.len();
        self.cluster
            .iter()
            .cloned()
            .chain((self.rank()..nvars).map(|v| LaurentExpansion::variable(nvars, v)))
            .collect()
    }

    /// The variable replacing slot `slot` (0-based) under mutation:
    /// `F̂_i` evaluated at the cluster, divided by the old variable.
    pub fn exchanged_variable(&self, slot: usize) -> Result<LaurentExpansion<C>> {
        self.check_slot(slot)?;
        let value = self.exchange[slot].evaluate(&self.images());
        let mut divisor = self.cluster[slot].clone();
        for k in self.hats[slot].support() {
            divisor = divisor.mul(&self.cluster[k].pow(self.hats[slot].exponent(k) as u32));
        }
        value.exact_div(&divisor).ok_or_else(|| {
            Error::EscapedClass(format!(
                "exchange relation at slot {} is not Laurent in the initial cluster",
                slot + 1
            ))
        })
    }

    /// Mutation at `slot` (0-based).
    pub fn mutate(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        let i = slot;
        let new_var = self.exchanged_variable(i)?;
        let mut cluster = self.cluster.clone();
        cluster[i] = new_var;
        let mut exchange = self.exchange.clone();
        for (j, fj) in self.exchange.iter().enumerate() {
            if j != i && fj.depends_on(i) {
                exchange[j] = self.mutated_exchange(i, j)?;
            }
        }
        Self::from_parts(self.table.clone(), cluster, exchange)
    }

    /// `F_j'` for a mutation at slot `i`, where `F_j` depends on slot `i`.
    fn mutated_exchange(&self, i: usize, j: usize) -> Result<Polynomial<C>> {
        let fi = &self.exchange[i];
        let fj = &self.exchange[j];
        let hat = &self.hats[i];
        if hat.exponent(j) > 0 {
            return Err(Error::EscapedClass(format!(
                "slot {} occurs in the denominator of the exchange Laurent polynomial at slot {}",
                j + 1,
                i + 1
            )));
        }
        // G = F̂_i with slot j set to zero; slot i now names the new variable
        let g = fi.specialize_zero(j);
        let substituted = if g.is_zero() {
            log::warn!("degenerate substitution at slots {} and {}", i + 1, j + 1);
            fj.specialize_zero(i)
        } else {
            let den = hat.mul(&Monomial::variable(self.table.len(), i));
            fj.substitute_rational(&self.table, i, &g, &den)?.into_parts().0
        };
        let mut numerator = substituted;
        if !g.is_zero() {
            let (_, core) = g.strip_monomial()?;
            if !core.is_constant() {
                loop {
                    let d = numerator.gcd(&core)?;
                    if d.is_term() {
                        break;
                    }
                    numerator = numerator.exact_div_unchecked(&d).expect("gcd divides");
                }
            }
        }
        let (_, normalized) = numerator.strip_monomial().map_err(|_| {
            Error::EscapedClass(format!("exchange polynomial at slot {} vanished", j + 1))
        })?;
        Ok(normalized)
    }

    /// Slots ordered by their serialized sign-normalized expansions.
    fn canonical_order(&self) -> Vec<usize> {
        let strings: Vec<String> = self
            .cluster
            .iter()
            .map(|e| serialize_laurent(&e.sign_normalized(), &self.table))
            .collect();
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by(|&a, &b| strings[a].cmp(&strings[b]).then(a.cmp(&b)));
        order
    }

    /// The same seed with slot `order[p]` moved to position `p`, signs
    /// normalized.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let n = self.rank();
        let nvars = self.table.len();
        let mut map: Vec<usize> = (0..nvars).collect();
        for (p, &old) in order.iter().enumerate() {
            map[old] = p;
        }
        let cluster = order.iter().map(|&k| self.cluster[k].sign_normalized()).collect();
        let exchange: Vec<Polynomial<C>> = order
            .iter()
            .map(|&k| self.exchange[k].permute_variables(&map, nvars).sign_normalized())
            .collect();
        let hats = order.iter().map(|&k| self.hats[k].permute(&map, nvars)).collect();
        debug_assert_eq!(order.len(), n);
        Self { table: self.table.clone(), cluster, exchange, hats }
    }

    /// Representative of the equivalence class with slots in canonical order.
    pub fn canonical_form(&self) -> Self {
        self.reordered(&self.canonical_order())
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.canonical_form().key_as_is()
    }

    /// Index-wise equivalence: signs only, no reordering of slots.
    pub fn strict_key(&self) -> CanonicalKey {
        let identity: Vec<usize> = (0..self.rank()).collect();
        self.reordered(&identity).key_as_is()
    }

    fn key_as_is(&self) -> CanonicalKey {
        let mut out = String::new();
        for (e, f) in self.cluster.iter().zip(&self.exchange) {
            out.push_str(&serialize_laurent(e, &self.table));
            out.push('\t');
            out.push_str(&serialize_polynomial(f, &self.table));
            out.push('\n');
        }
        CanonicalKey(out.into_bytes())
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Position of a variable in the cluster, up to sign.
    pub fn slot_of(&self, var: &LaurentExpansion<C>) -> Option<usize> {
        let target = var.sign_normalized();
        self.cluster.iter().position(|e| e.sign_normalized() == target)
    }

    /// Expansions serialized over the initial cluster.
    pub fn cluster_strings(&self) -> Vec<String> {
        self.cluster.iter().map(|e| serialize_laurent(e, &self.table)).collect()
    }

    /// Exchange polynomials with slot `k` printed as `names[k]`.
    pub fn exchange_strings(&self, names: &[String]) -> Vec<String> {
        let table = self.table.with_cluster_names(names.to_vec()).expect("one name per slot");
        self.exchange.iter().map(|f| serialize_polynomial(f, &table)).collect()
    }

    /// Hat denominators with slot `k` printed as `names[k]`; `1` if trivial.
    pub fn hat_strings(&self, names: &[String]) -> Vec<String> {
        let table = self.table.with_cluster_names(names.to_vec()).expect("one name per slot");
        self.hats
            .iter()
            .map(|m| serialize_polynomial(&Polynomial::<C>::from_monomial(m.clone()), &table))
            .collect()
    }

    /// Some slot has `F_i != F̂_i`.
    pub fn has_nontrivial_hat(&self) -> bool {
        self.hats.iter().any(|m| !m.is_one())
    }

    /// Every coefficient of every expansion and exchange polynomial is
    /// positive.
    pub fn is_positive(&self) -> bool {
        self.cluster.iter().all(|e| e.is_positive()) && self.exchange.iter().all(|f| f.is_positive())
    }

    /// Replaces the cluster while keeping the exchange data.
    #[cfg(test)]
    pub(crate) fn with_cluster(&self, cluster: Vec<LaurentExpansion<C>>) -> Self {
        Self { cluster, ..self.clone() }
    }

    /// The same seed, re-expressed with its own cluster as the initial one.
    pub fn rebased(&self) -> Self {
        let nvars = self.table.len();
        let cluster = (0..self.rank()).map(|k| LaurentExpansion::variable(nvars, k)).collect();
        Self { cluster, ..self.clone() }
    }
}

fn validate_exchange<C: Coefficient>(table: &VariableTable, exchange: &[Polynomial<C>]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, f) in exchange.iter().enumerate() {
        let slot = i + 1;
        let mut push = |message: String| out.push(Violation { slot, message });
        if f.nvars() != table.len() {
            push("polynomial over the wrong ring".into());
            continue;
        }
        if f.is_zero() {
            push("exchange polynomial is zero".into());
            continue;
        }
        if f.is_constant() {
            push(if f.coefficients().all(|c| c.abs().is_one()) {
                "exchange polynomial is a unit".into()
            } else {
                "exchange polynomial is constant".into()
            });
            continue;
        }
        if f.depends_on(i) {
            push(format!("depends on its own cluster variable {}", table.name(i)));
        }
        let m = f.monomial_content();
        let cluster_divisors: Vec<&str> =
            m.support().filter(|&v| !table.is_frozen(v)).map(|v| table.name(v)).collect();
        if !cluster_divisors.is_empty() {
            push(format!("divisible by cluster variable {}", cluster_divisors.join(", ")));
        } else if !m.is_one() {
            push("has a monomial factor".into());
        }
    }
    out
}

/// Denominators of the exchange Laurent polynomials: the exponent of slot `j`
/// in the denominator for slot `i` is the largest `m` such that `F_j^m`
/// divides `F_i` after `x_j <- F_j / x_j` and clearing `x_j`.
pub fn exchange_laurent<C: Coefficient>(exchange: &[Polynomial<C>]) -> Result<Vec<Monomial>> {
    let n = exchange.len();
    let mut hats = Vec::with_capacity(n);
    for (i, fi) in exchange.iter().enumerate() {
        let nvars = fi.nvars();
        let mut exps = vec![0u16; nvars];
        for (j, fj) in exchange.iter().enumerate() {
            if j == i {
                continue;
            }
            if !fi.depends_on(j) {
                // F_i is unchanged by the substitution; it can still be a
                // multiple of F_j when several slots share one polynomial
                exps[j] = fi.divisibility_order(fj)? as u16;
                continue;
            }
            let d = fi.degree_in(j) as u32;
            // F_i(x_j <- F_j/x_j) * x_j^d, expanded through the x_j-coefficients
            let coeffs = fi.coefficients_in(j);
            let xj = Monomial::variable(nvars, j);
            let mut acc = Polynomial::zero(nvars);
            let mut fj_pow = Polynomial::one(nvars);
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(c * &fj_pow).mul_monomial(&xj.pow(d - k as u32));
                }
                fj_pow = &fj_pow * fj;
            }
            exps[j] = acc.divisibility_order(fj)? as u16;
        }
        hats.push(Monomial::from_exponents(&exps));
    }
    Ok(hats)
}
