//! Multivariate gcd over the integers by recursive primitive remainder
//! sequences.


use super::{Coefficient, Monomial, Polynomial};

pub(super) fn gcd<C: Coefficient>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    if a.is_zero() {
        return b.sign_normalized();
    }
    if b.is_zero() {
        return a.sign_normalized();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a = a.div_monomial(&mono).unwrap();
    let b = b.div_monomial(&mono).unwrap();
    gcd_inner(&a, &b).mul_monomial(&mono).sign_normalized()
}

impl<C: Coefficient> Polynomial<C> {
    fn primitive(&self) -> (C, Self) {
        let c = self.content();
        if c.is_one() || c.is_zero() {
            return (C::one(), self.clone());
        }
        (c.clone(), self.div_scalar(&c).unwrap())
    }
}

/// gcd of two nonzero polynomials; the result's sign is not normalized.
fn gcd_inner<C: Coefficient>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    let nvars = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() || a.is_term() || b.is_term() {
        return term_gcd(a, b);
    }
    // a common exact-divisor case is cheap to detect
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.exact_div_unchecked(small).is_some() {
        return small.clone();
    }

    let va = a.variables();
    let vb = b.variables();
    // a variable in only one argument cannot occur in the gcd
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_with_coefficients(a, v, b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_with_coefficients(b, v, a);
    }
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("nonconstant polynomials have a variable");

    let (ca, pa) = split_content(a, v);
    let (cb, pb) = split_content(b, v);
    let c = gcd_inner(&ca, &cb);
    let p = primitive_prs(pa, pb, v, nvars);
    &c * &p
}

/// gcd when one argument is a constant or a single term.
fn term_gcd<C: Coefficient>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    let c = a.content().gcd(&b.content());
    Polynomial::term(a.monomial_content().gcd(&b.monomial_content()), c)
}

/// gcd(a, b) where `b` does not involve `v`: the gcd of `b` with every
/// coefficient of `a` as a polynomial in `v`.
fn gcd_with_coefficients<C: Coefficient>(
    a: &Polynomial<C>,
    v: usize,
    b: &Polynomial<C>,
) -> Polynomial<C> {
    let mut coeffs = a.coefficients_in(v);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    let mut g = b.clone();
    for c in &coeffs {
        g = gcd_inner(&g, c);
        if g.is_unit() {
            break;
        }
    }
    g
}

/// Content with respect to `v` (a polynomial free of `v`) and the primitive
/// part.
fn split_content<C: Coefficient>(a: &Polynomial<C>, v: usize) -> (Polynomial<C>, Polynomial<C>) {
    let mut coeffs = a.coefficients_in(v);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        if g.is_unit() {
            break;
        }
        g = gcd_inner(&g, c);
    }
    let g = g.sign_normalized();
    if g.is_unit() {
        return (Polynomial::one(a.nvars()), a.clone());
    }
    let p = a.exact_div_unchecked(&g).expect("content divides");
    (g, p)
}

fn leading_coefficient_in<C: Coefficient>(a: &Polynomial<C>, v: usize) -> (u16, Polynomial<C>) {
    let d = a.degree_in(v);
    let coeffs = a.coefficients_in(v);
    (d, coeffs[d as usize].clone())
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn pseudo_remainder<C: Coefficient>(a: &Polynomial<C>, b: &Polynomial<C>, v: usize) -> Polynomial<C> {
    let nvars = a.nvars();
    let (db, lb) = leading_coefficient_in(b, v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = leading_coefficient_in(&r, v);
        if dr < db {
            return r;
        }
        let shift = Monomial::variable(nvars, v).pow((dr - db) as u32);
        let sub = (&lr * b).mul_monomial(&shift);
        r = &(&lb * &r) - &sub;
        // keep coefficients small: dividing by the integer content does not
        // change the eventual primitive part
        let (_, pr) = r.primitive();
        r = pr;
    }
}

/// gcd of two polynomials primitive with respect to `v`.
fn primitive_prs<C: Coefficient>(
    a: Polynomial<C>,
    b: Polynomial<C>,
    v: usize,
    nvars: usize,
) -> Polynomial<C> {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if b.degree_in(v) == 0 {
            // b is a nonzero v-free primitive polynomial, hence a unit
            return Polynomial::one(nvars);
        }
        if a.exact_div_unchecked(&b).is_some() {
            return b;
        }
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        let (_, pr) = split_content(&r, v);
        a = b;
        b = pr;
    }
}
