use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// Homogeneous linear form `m·X + Σ βi·Yi`.
///
/// Tangent weights and the denominator factors of localization sums are
/// both linear forms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinForm {
    x: Rational,
    y: Vec<Rational>,
}

impl LinForm {
    pub fn new(x: Rational, y: Vec<Rational>) -> Result<Self> {
        let l = LinForm { x, y };
        if l.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        Ok(l)
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        let mut it = coeffs.iter().map(|&c| Rational::from_integer(c.into()));
        let x = it.next().unwrap_or_else(Rational::zero);
        LinForm::new(x, it.collect())
    }

    /// `coeffs[0]` is the X-coefficient, the rest are Y-coefficients.
    pub fn from_coefficients(coeffs: Vec<Rational>) -> Result<Self> {
        let mut it = coeffs.into_iter();
        let x = it.next().unwrap_or_else(Rational::zero);
        LinForm::new(x, it.collect())
    }

    /// Reads a linear form from a degree-1 homogeneous polynomial.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        if p.is_zero() || !p.is_homogeneous_of(1) {
            return None;
        }
        let n = p.nvars();
        let coeffs = (0..n)
            .map(|v| p.coeff(&Monomial::var(n, v, 1)))
            .collect();
        LinForm::from_coefficients(coeffs).ok()
    }

    pub fn num_y_vars(&self) -> usize {
        self.y.len()
    }

    pub fn x_coeff(&self) -> &Rational {
        &self.x
    }

    pub fn y_coeffs(&self) -> &[Rational] {
        &self.y
    }

    /// All coefficients, `X` first.
    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        core::iter::once(&self.x).chain(self.y.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().all(Zero::is_zero)
    }

    pub fn is_pure_y(&self) -> bool {
        self.x.is_zero()
    }

    pub fn to_poly(&self) -> Poly {
        let ny = self.y.len();
        Poly::from_terms(
            ny,
            self.coefficients()
                .enumerate()
                .map(|(v, c)| (Monomial::var(ny + 1, v, 1), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> LinForm {
        LinForm {
            x: &self.x * c,
            y: self.y.iter().map(|b| b * c).collect(),
        }
    }

    pub fn neg(&self) -> LinForm {
        self.scale(&-Rational::one())
    }

    /// Splits `self = scale · canonical` where `canonical` has coprime
    /// integer coefficients and its first nonzero coefficient (X first,
    /// then Y1, …) is positive.
    pub fn canonical(&self) -> (Rational, LinForm) {
        let mut lcm = BigInt::one();
        for c in self.coefficients() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.coefficients() {
            let n = (c * Rational::from_integer(lcm.clone())).to_integer();
            gcd = gcd.gcd(&n);
        }
        let lead_negative = self
            .coefficients()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        if lead_negative {
            gcd = -gcd;
        }
        let factor = Rational::new(lcm, gcd);
        (factor.recip(), self.scale(&factor))
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().0.is_one()
    }

    /// The pole location `c(Y) = -β(Y)/m` of `1/(m·X + β(Y))`. Requires a
    /// nonzero X-coefficient.
    pub fn x_root(&self) -> Option<LinForm> {
        if self.x.is_zero() {
            return None;
        }
        let inv = -self.x.recip();
        Some(LinForm {
            x: Rational::zero(),
            y: self.y.iter().map(|b| b * &inv).collect(),
        })
    }

    /// Value after `X ↦ c(Y)` for a pure-Y form `c`: `m·c(Y) + β(Y)`.
    /// `None` when that value vanishes identically.
    pub fn substitute_x(&self, c: &LinForm) -> Option<LinForm> {
        debug_assert!(c.is_pure_y());
        let y: Vec<Rational> = self
            .y
            .iter()
            .zip(&c.y)
            .map(|(b, cb)| b + &self.x * cb)
            .collect();
        LinForm::new(Rational::zero(), y).ok()
    }

    /// Evaluates an integer pairing `⟨w, v⟩` treating the coefficient vector
    /// `(m, β1, …)` as `w`.
    pub fn dot(&self, v: &[Rational]) -> Rational {
        self.coefficients()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn to_text(&self) -> String {
        self.to_poly().to_text()
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use alloc::vec;

    #[test]
    fn canonical_scaling() {
        let l = LinForm::new(ratio(-2, 3), vec![ratio(4, 3), rat(0)]).unwrap();
        let (s, c) = l.canonical();
        assert_eq!(c, LinForm::from_ints(&[1, -2, 0]).unwrap());
        assert_eq!(s, ratio(-2, 3));
        assert_eq!(c.scale(&s), l);

        let pure = LinForm::from_ints(&[0, -3, 6]).unwrap();
        let (s, c) = pure.canonical();
        assert_eq!(c, LinForm::from_ints(&[0, 1, -2]).unwrap());
        assert_eq!(s, rat(-3));
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(LinForm::from_ints(&[0, 0]), Err(Error::ZeroLinearForm));
    }

    #[test]
    fn roots_and_substitution() {
        let l = LinForm::from_ints(&[2, 4, -2]).unwrap();
        let root = l.x_root().unwrap();
        assert_eq!(root, LinForm::from_ints(&[0, -2, 1]).unwrap());
        assert!(l.substitute_x(&root).is_none());
        let other = LinForm::from_ints(&[1, 0, 0]).unwrap();
        assert_eq!(other.substitute_x(&root).unwrap(), root);
    }

    #[test]
    fn poly_round_trip() {
        let l = LinForm::from_ints(&[3, 0, -1]).unwrap();
        assert_eq!(LinForm::from_poly(&l.to_poly()), Some(l));
        assert_eq!(LinForm::from_poly(&Poly::one(2)), None);
    }
}
