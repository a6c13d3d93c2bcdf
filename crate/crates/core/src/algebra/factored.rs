use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{exact_divide_linear, LinForm, Poly, Rational};
use crate::error::{Error, Result};

/// `numerator / ∏ factor^multiplicity` with linear-form factors.
///
/// Factors are stored in canonical scaling (coprime integers, positive
/// leading coefficient) with the scalar absorbed into the numerator, so
/// two factors match iff they are proportional. The representation is not
/// necessarily reduced; [`FactoredRational::normalize`] cancels every
/// factor that divides the numerator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactoredRational {
    num: Poly,
    den: BTreeMap<LinForm, u32>,
}

impl FactoredRational {
    pub fn zero(ny: usize) -> Self {
        Self::from_poly(Poly::zero(ny))
    }

    pub fn one(ny: usize) -> Self {
        Self::from_poly(Poly::one(ny))
    }

    pub fn from_poly(num: Poly) -> Self {
        FactoredRational {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn new<I>(num: Poly, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LinForm, u32)>,
    {
        let ny = num.num_y_vars();
        let mut num = num;
        let mut den = BTreeMap::new();
        for (l, k) in factors {
            if l.num_y_vars() != ny {
                return Err(Error::VarCountMismatch {
                    left: ny,
                    right: l.num_y_vars(),
                });
            }
            if k == 0 {
                continue;
            }
            let (s, c) = l.canonical();
            if !s.is_one() {
                num = num.scale(&s.recip().pow(k as i32));
            }
            *den.entry(c).or_insert(0) += k;
        }
        Ok(FactoredRational { num, den })
    }

    /// `1 / ∏ forms`, e.g. the reciprocal of an Euler class.
    pub fn reciprocal_of_product(ny: usize, forms: &[LinForm]) -> Result<Self> {
        Self::new(Poly::one(ny), forms.iter().cloned().map(|l| (l, 1)))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Canonical factors with multiplicities.
    pub fn factors(&self) -> impl Iterator<Item = (&LinForm, u32)> {
        self.den.iter().map(|(l, &k)| (l, k))
    }

    pub fn factor_list(&self) -> Vec<(LinForm, u32)> {
        self.den.iter().map(|(l, &k)| (l.clone(), k)).collect()
    }

    pub fn num_y_vars(&self) -> usize {
        self.num.num_y_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn has_empty_denominator(&self) -> bool {
        self.den.is_empty()
    }

    /// Total multiplicity of the denominator.
    pub fn pole_order(&self) -> u32 {
        self.den.values().sum()
    }

    pub fn denominator_poly(&self) -> Poly {
        let ny = self.num_y_vars();
        self.den
            .iter()
            .fold(Poly::one(ny), |acc, (l, &k)| &acc * &l.to_poly().pow(k))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.num_y_vars() != other.num_y_vars() {
            return Err(Error::VarCountMismatch {
                left: self.num_y_vars(),
                right: other.num_y_vars(),
            });
        }
        Ok(())
    }

    /// Numerator rewritten over the denominator `target`, which must be a
    /// multiple of `self`'s denominator.
    fn lift_numerator(&self, target: &BTreeMap<LinForm, u32>) -> Poly {
        let mut num = self.num.clone();
        for (l, &k) in target {
            let have = self.den.get(l).copied().unwrap_or(0);
            if k > have {
                num = &num * &l.to_poly().pow(k - have);
            }
        }
        num
    }

    /// Sum over the least common multiple of the two factored denominators.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut den = self.den.clone();
        for (l, &k) in &other.den {
            let slot = den.entry(l.clone()).or_insert(0);
            *slot = (*slot).max(k);
        }
        let num = &self.lift_numerator(&den) + &other.lift_numerator(&den);
        if num.is_zero() {
            return Ok(Self::zero(self.num_y_vars()));
        }
        Ok(FactoredRational { num, den })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let num = self.num.checked_mul(&other.num)?;
        if num.is_zero() {
            return Ok(Self::zero(self.num_y_vars()));
        }
        let mut den = self.den.clone();
        for (l, &k) in &other.den {
            *den.entry(l.clone()).or_insert(0) += k;
        }
        Ok(FactoredRational { num, den })
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        FactoredRational {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_y_vars());
        }
        FactoredRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Divides by a single linear form (multiplicity one).
    pub fn div_linear(&self, l: &LinForm) -> Result<Self> {
        let mut factors = self.factor_list();
        factors.push((l.clone(), 1));
        Self::new(self.num.clone(), factors)
    }

    /// Cancels every linear factor that divides the numerator. The result
    /// is canonical: equal values give structurally equal results.
    pub fn normalize(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.num_y_vars());
        }
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (l, &k) in &self.den {
            let mut left = k;
            while left > 0 {
                match exact_divide_linear(&num, l).expect("factor shares variable count") {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(l.clone(), left);
            }
        }
        FactoredRational { num, den }
    }

    /// `Some(p)` if the value is a polynomial.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.den.is_empty() {
            return Some(self.num.clone());
        }
        let n = self.normalize();
        n.den.is_empty().then_some(n.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_poly().is_some()
    }

    /// Value equality regardless of representation.
    pub fn value_eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.num.is_zero(),
            Err(_) => false,
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// `∂/∂X` by the quotient rule, keeping the denominator factored:
    /// `(N/∏ lʲ^aʲ)' = (N'·∏ lʲ − N·Σ aʲ mʲ ∏_{i≠j} lᵢ) / ∏ lʲ^(aʲ+1)`.
    pub fn derivative_x(&self) -> Self {
        let ny = self.num_y_vars();
        if self.den.is_empty() {
            return Self::from_poly(self.num.derivative_x());
        }
        let forms: Vec<(Poly, Rational, u32)> = self
            .den
            .iter()
            .map(|(l, &k)| (l.to_poly(), l.x_coeff().clone(), k))
            .collect();
        let all = forms.iter().fold(Poly::one(ny), |acc, f| &acc * &f.0);
        let mut num = &self.num.derivative_x() * &all;
        for (j, (_, m, k)) in forms.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let others = forms
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .fold(Poly::one(ny), |acc, (_, f)| &acc * &f.0);
            let c = m * Rational::from_integer((*k).into());
            num = &num - &(&self.num * &others).scale(&c);
        }
        let den = self.den.iter().map(|(l, &k)| (l.clone(), k + 1)).collect();
        FactoredRational { num, den }
    }

    /// Value after `X ↦ c(Y)` for a pure-Y form `c`. `None` if some factor
    /// vanishes there (the point is a pole).
    pub fn substitute_x(&self, c: &LinForm) -> Option<Self> {
        let num = self.num.substitute_x(c).ok()?;
        let mut factors = Vec::with_capacity(self.den.len());
        for (l, &k) in &self.den {
            factors.push((l.substitute_x(c)?, k));
        }
        Self::new(num, factors).ok()
    }

    /// Text form accepted by [`super::parse_factored`].
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.den.is_empty() {
            return self.num.to_text();
        }
        let mut s = String::new();
        let _ = write!(s, "({})/(", self.num);
        for (i, (l, &k)) in self.den.iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let _ = write!(s, "({})", l);
            if k > 1 {
                let _ = write!(s, "^{}", k);
            }
        }
        s.push(')');
        s
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Divides `p` successively by each factor (with multiplicity). Returns
/// the full quotient, or `None` at the first factor that does not divide.
///
/// Linear forms are irreducible in a unique factorization domain, so the
/// verdict does not depend on the order of division.
pub fn divides_product(p: &Poly, factors: &[(LinForm, u32)]) -> Result<Option<Poly>> {
    let mut q = p.clone();
    for (l, k) in factors {
        for _ in 0..*k {
            match exact_divide_linear(&q, l)? {
                Some(next) => q = next,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(q))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FactoredRational> for &FactoredRational {
            type Output = FactoredRational;
            /// # Panics
            /// If the operands have different Y-variable counts.
            fn $method(self, rhs: &FactoredRational) -> FactoredRational {
                self.$checked(rhs).expect("variable count mismatch")
            }
        }
        impl $tr<FactoredRational> for FactoredRational {
            type Output = FactoredRational;
            fn $method(self, rhs: FactoredRational) -> FactoredRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        FactoredRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_factored, parse_poly, rat, ratio};
    use alloc::vec;

    fn fr(s: &str, m: usize) -> FactoredRational {
        parse_factored(s, m).unwrap()
    }

    fn lf(c: &[i64]) -> LinForm {
        LinForm::from_ints(c).unwrap()
    }

    #[test]
    fn common_denominator() {
        let s = &fr("1/(X+Y1)", 1) + &fr("1/(X-Y1)", 1);
        assert_eq!(s.numerator(), &parse_poly("2*X", 1).unwrap());
        assert_eq!(s.factor_list(), vec![(lf(&[1, -1]), 1), (lf(&[1, 1]), 1)]);
    }

    #[test]
    fn normalize_cancels() {
        let n = fr("(X^2-Y1^2)/(X+Y1)", 1).normalize();
        assert!(n.has_empty_denominator());
        assert_eq!(n.numerator(), &parse_poly("X - Y1", 1).unwrap());
    }

    #[test]
    fn additive_inverse() {
        let a = fr("(X*Y1 + 3)/((X-2*Y1)^2*(X+Y1))", 1);
        assert!((&a + &-&a).is_zero());
    }

    #[test]
    fn scaled_factors_absorb_into_numerator() {
        let a = FactoredRational::new(Poly::one(0), vec![(lf(&[2]), 1)]).unwrap();
        assert_eq!(a.numerator(), &Poly::constant(0, ratio(1, 2)));
        assert_eq!(a.factor_list(), vec![(lf(&[1]), 1)]);
        let b = FactoredRational::new(Poly::constant(0, rat(-1)), vec![(lf(&[-1]), 1)]).unwrap();
        assert!(b.value_eq(&fr("1/X", 0)));
    }

    #[test]
    fn derivative_matches_quotient_rule() {
        // d/dX 1/(X+Y1)^2 = -2/(X+Y1)^3
        let d = fr("1/(X+Y1)^2", 1).derivative_x();
        assert!(d.value_eq(&fr("-2/(X+Y1)^3", 1)));
        let d = fr("X/((X+Y1)*(X-Y1))", 1).derivative_x();
        assert!(d.value_eq(&fr("(-X^2-Y1^2)/((X+Y1)^2*(X-Y1)^2)", 1)));
    }

    #[test]
    fn product_division() {
        let p = parse_poly("X^2 - Y1^2", 1).unwrap();
        let one = divides_product(&p, &[(lf(&[1, 1]), 1), (lf(&[1, -1]), 1)]).unwrap();
        assert_eq!(one, Some(Poly::one(1)));
        assert_eq!(divides_product(&p, &[(lf(&[1, 1]), 2)]).unwrap(), None);
    }
}
