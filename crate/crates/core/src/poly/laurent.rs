use super::{Coefficient, Monomial, Polynomial};

/// A Laurent polynomial `numerator / denominator` with a monomial
/// denominator, kept reduced: no variable divides both.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentExpansion<C: Coefficient = num_bigint::BigInt> {
    numerator: Polynomial<C>,
    denominator: Monomial,
}

impl<C: Coefficient> LaurentExpansion<C> {
    pub fn new(numerator: Polynomial<C>, denominator: Monomial) -> Self {
        debug_assert_eq!(numerator.nvars(), denominator.nvars());
        if numerator.is_zero() {
            return Self::zero(numerator.nvars());
        }
        let common = numerator.monomial_content().gcd(&denominator);
        if common.is_one() {
            return Self { numerator, denominator };
        }
        Self {
            numerator: numerator.div_monomial(&common).unwrap(),
            denominator: denominator.div(&common).unwrap(),
        }
    }

    pub fn from_polynomial(p: Polynomial<C>) -> Self {
        let nvars = p.nvars();
        Self { numerator: p, denominator: Monomial::one(nvars) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::from_polynomial(Polynomial::variable(nvars, var))
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &Polynomial<C> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Monomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    /// All numerator coefficients strictly positive.
    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.numerator * &other.numerator, self.denominator.mul(&other.denominator))
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.denominator.lcm(&other.denominator);
        let a = self.numerator.mul_monomial(&den.div(&self.denominator).unwrap());
        let b = other.numerator.mul_monomial(&den.div(&other.denominator).unwrap());
        Self::new(&a + &b, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { numerator: -self.numerator.clone(), denominator: self.denominator.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.numerator.scale(c), self.denominator.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::new(self.numerator.pow(k), self.denominator.pow(k))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Self::new(self.numerator.clone(), self.denominator.mul(m))
    }

    /// Exact quotient in the Laurent polynomial ring, or `None` when `other`
    /// does not divide `self` there.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (m, q) = other.numerator.strip_monomial().ok()?;
        let sign_flip = other.numerator.leading_coefficient() != q.leading_coefficient();
        let n = self.numerator.exact_div_unchecked(&q)?;
        let n = if sign_flip { -n } else { n };
        Some(Self::new(n.mul_monomial(&other.denominator), self.denominator.mul(&m)))
    }

    /// Multiplies by -1 if the numerator's leading coefficient is negative.
    pub fn sign_normalized(&self) -> Self {
        Self { numerator: self.numerator.sign_normalized(), denominator: self.denominator.clone() }
    }

    /// `numerator * denominator^-1` as a pair of polynomials.
    pub fn into_parts(self) -> (Polynomial<C>, Monomial) {
        (self.numerator, self.denominator)
    }

    /// Rewrites in the ring with variables renamed by `map`.
    pub fn permute_variables(&self, map: &[usize], nvars: usize) -> Self {
        Self::new(
            self.numerator.permute_variables(map, nvars),
            self.denominator.permute(map, nvars),
        )
    }

    pub fn is_one(&self) -> bool {
        self.denominator.is_one()
            && self.numerator.is_constant()
            && self.numerator.leading_coefficient().is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;
    use crate::poly::VariableTable;
    use num_bigint::BigInt;

    fn e(num: &str, den: &[u16]) -> LaurentExpansion<BigInt> {
        let t = VariableTable::new(["x1", "x2"], ["a"]).unwrap();
        let mut exps = den.to_vec();
        exps.resize(3, 0);
        LaurentExpansion::new(parse_polynomial(num, &t).unwrap(), Monomial::from_exponents(&exps))
    }

    #[test]
    fn reduces_on_construction() {
        assert_eq!(e("x1*x2 + x1", &[1, 0]), e("x2 + 1", &[]));
        assert_eq!(e("x1*x2 + x1", &[2, 1]), e("x2 + 1", &[1, 1]));
        assert!(e("0", &[3, 1]).is_polynomial());
    }

    #[test]
    fn toy_recursion() {
        // x3 = (1 + x2)/x1, x4 = (1 + x3)/x2
        let x3 = e("1 + x2", &[1, 0]);
        let one = e("1", &[]);
        let x2 = e("x2", &[]);
        let x4 = one.add(&x3).exact_div(&x2).unwrap();
        assert_eq!(x4, e("1 + x1 + x2", &[1, 1]));
        let x5 = one.add(&x4).exact_div(&x3).unwrap();
        assert_eq!(x5, e("1 + x1", &[0, 1]));
        let x6 = one.add(&x5).exact_div(&x4).unwrap();
        assert_eq!(x6, e("x1", &[]));
    }

    #[test]
    fn division_failures() {
        assert_eq!(e("1 + x1", &[]).exact_div(&e("1 + x2", &[])), None);
        assert_eq!(e("1", &[]).exact_div(&e("0", &[])), None);
        assert_eq!(e("x1 + 1", &[]).exact_div(&e("-x1 - 1", &[0, 1])), Some(e("-x2", &[])));
    }
}
