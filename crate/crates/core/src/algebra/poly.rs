use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{LinForm, Rational};
use crate::error::{Error, Result};

/// Exponent vector `(e_X, e_Y1, …, e_Ym)`.
///
/// Ordered graded-lexicographically: total degree first, then
/// lexicographic with `X` as the most significant variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `var^exp` in `nvars` variables (index 0 is `X`).
    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e[var] = exp;
        Monomial(e)
    }

    /// All monomials in `nvars` variables of total degree `<= max_degree`,
    /// in increasing graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut of_degree = Vec::new();
            let mut cur = vec![0u32; nvars];
            compositions(&mut cur, 0, d, &mut of_degree);
            of_degree.sort();
            out.extend(of_degree);
        }
        out
    }
}

fn compositions(cur: &mut Vec<u32>, idx: usize, left: u32, out: &mut Vec<Monomial>) {
    if idx + 1 >= cur.len() {
        if cur.is_empty() {
            if left == 0 {
                out.push(Monomial(Vec::new()));
            }
            return;
        }
        cur[idx] = left;
        out.push(Monomial(cur.clone()));
        cur[idx] = 0;
        return;
    }
    for e in 0..=left {
        cur[idx] = e;
        compositions(cur, idx + 1, left - e, out);
    }
    cur[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `X, Y1, …, Ym` with rational coefficients.
///
/// Sparse and canonical: no zero coefficients are stored, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    ny: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ny: usize) -> Self {
        Poly {
            ny,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ny: usize) -> Self {
        Self::constant(ny, Rational::one())
    }

    pub fn constant(ny: usize, c: Rational) -> Self {
        Self::monomial(ny, Monomial::one(ny + 1), c)
    }

    pub fn monomial(ny: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ny + 1, "monomial has wrong number of variables");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ny, terms }
    }

    /// Variable by index: 0 is `X`, `i >= 1` is `Yi`.
    pub fn var(ny: usize, var: usize) -> Self {
        assert!(var <= ny, "variable index out of range");
        Self::monomial(ny, Monomial::var(ny + 1, var, 1), Rational::one())
    }

    pub fn x(ny: usize) -> Self {
        Self::var(ny, 0)
    }

    /// `Yi`, 1-based.
    pub fn y(ny: usize, i: usize) -> Self {
        assert!(i >= 1, "Y variables are 1-based");
        Self::var(ny, i)
    }

    pub fn from_terms<I>(ny: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(ny);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ny + 1, "monomial has wrong number of variables");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn num_y_vars(&self) -> usize {
        self.ny
    }

    pub fn nvars(&self) -> usize {
        self.ny + 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.degree_in(0)
    }

    /// `true` if every term has total degree `d` (the zero polynomial counts).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn involves_x(&self) -> bool {
        self.terms.keys().any(|m| m.exp(0) > 0)
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.ny != other.ny {
            return Err(Error::VarCountMismatch {
                left: self.ny,
                right: other.ny,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.ny);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ny);
        }
        Poly {
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ny);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.ny);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Formal partial derivative in `X`.
    pub fn derivative_x(&self) -> Poly {
        self.derivative(0)
    }

    /// Splits by powers of `var`: `self = Σ_k coeffs[k] · var^k`, where the
    /// coefficients no longer involve `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.ny))
                .add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Replaces `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        self.check_same(value)?;
        let mut out = Poly::zero(self.ny);
        let mut powers: Vec<Poly> = vec![Poly::one(self.ny)];
        for (e, coeff) in self.coefficients_in(var) {
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out = &out + &(&coeff * &powers[e as usize]);
        }
        Ok(out)
    }

    /// Replaces `X` by the pure-`Y` linear form `c`.
    pub fn substitute_x(&self, c: &LinForm) -> Result<Poly> {
        if !c.x_coeff().is_zero() {
            return Err(Error::SubstitutionInvolvesX);
        }
        if c.num_y_vars() != self.ny {
            return Err(Error::VarCountMismatch {
                left: self.ny,
                right: c.num_y_vars(),
            });
        }
        self.substitute(0, &c.to_poly())
    }

    /// Substitutes every variable at once: variable `i` becomes `images[i]`.
    /// All images must share one variable count, which becomes the count of
    /// the result.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images.first().map(Poly::num_y_vars).unwrap_or(0);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[v].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Keeps only the pure `X` part (all `Y` set to zero), as a polynomial
    /// with no `Y` variables.
    pub fn project_to_x(&self) -> Poly {
        let mut out = Poly::zero(0);
        for (m, c) in &self.terms {
            if m.exponents()[1..].iter().all(|&e| e == 0) {
                out.add_term(Monomial(vec![m.exp(0)]), c.clone());
            }
        }
        out
    }

    /// Coefficient of `X^k` as a univariate polynomial (requires no `Y`).
    pub fn x_coeff(&self, k: u32) -> Rational {
        let mut e = vec![0; self.nvars()];
        e[0] = k;
        if self.ny == 0 {
            return self.coeff(&Monomial(e));
        }
        self.terms
            .iter()
            .filter(|(m, _)| m.exp(0) == k && m.exponents()[1..].iter().all(|&v| v == 0))
            .map(|(_, c)| c.clone())
            .next()
            .unwrap_or_else(Rational::zero)
    }

    /// Re-homes the polynomial into `ny` Y-variables. Fails if a dropped
    /// variable is actually used.
    pub fn with_num_y_vars(&self, ny: usize) -> Result<Poly> {
        let mut out = Poly::zero(ny);
        for (m, c) in &self.terms {
            let e = m.exponents();
            if e.len() > ny + 1 && e[ny + 1..].iter().any(|&v| v > 0) {
                return Err(Error::VarCountMismatch {
                    left: self.ny,
                    right: ny,
                });
            }
            let mut ne: Vec<u32> = e.iter().copied().take(ny + 1).collect();
            ne.resize(ny + 1, 0);
            out.add_term(Monomial(ne), c.clone());
        }
        Ok(out)
    }

    /// Canonical text form, terms in decreasing graded-lex order.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if m.is_one() {
                let _ = write!(s, "{}", a);
                continue;
            }
            if !a.is_one() {
                let _ = write!(s, "{}*", a);
            }
            let mut first = true;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                if v == 0 {
                    s.push('X');
                } else {
                    let _ = write!(s, "Y{}", v);
                }
                if e > 1 {
                    let _ = write!(s, "^{}", e);
                }
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Divides `p` by the linear form `l` exactly.
///
/// Takes the first variable with a nonzero coefficient in `l` as the main
/// variable and performs univariate long division over the polynomial
/// ring in the other variables. The leading coefficient of `l` in the main
/// variable is a nonzero constant, so each step is exact. Returns `None`
/// when the remainder is nonzero.
pub fn exact_divide_linear(p: &Poly, l: &LinForm) -> Result<Option<Poly>> {
    if l.is_zero() {
        return Err(Error::ZeroLinearForm);
    }
    if l.num_y_vars() != p.num_y_vars() {
        return Err(Error::VarCountMismatch {
            left: p.num_y_vars(),
            right: l.num_y_vars(),
        });
    }
    let ny = p.num_y_vars();
    let (var, lead) = l
        .coefficients()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .expect("nonzero form");
    let lp = l.to_poly();
    let inv_lead = lead.recip();
    let mut rem = p.clone();
    let mut quot = Poly::zero(ny);
    while let Some(d) = rem.degree_in(var).filter(|&d| d > 0) {
        let top = rem
            .coefficients_in(var)
            .remove(&d)
            .expect("degree is attained");
        let step = top
            .scale(&inv_lead)
            .mul_monomial(&Monomial::var(ny + 1, var, d - 1));
        rem = &rem - &(&step * &lp);
        quot = &quot + &step;
    }
    Ok(rem.is_zero().then_some(quot))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// # Panics
            /// If the operands have different Y-variable counts.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial variable count mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ny: self.ny,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
