//! Fixed-point data, Euler classes, the residue operator `Res_X^+` and the
//! localization sums built from it.
//!
//! A [`Space`] is the complete fixed-point dataset of a Hamiltonian torus
//! action with isolated fixed points: for every point its value under the
//! circle moment map and its tangent weights, written as linear forms in
//! `X, Y1, …, Ym` where `X` is dual to the distinguished circle and the
//! `Yi` vanish on it. An [`EquivClass`] is given by its restrictions to the
//! fixed points.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{binomial, factorial, FactoredRational, LinForm, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPoint {
    label: String,
    moment: Rational,
    weights: Vec<LinForm>,
}

impl FixedPoint {
    /// Weights are stored sorted; their order carries no meaning.
    pub fn new(label: impl Into<String>, moment: Rational, mut weights: Vec<LinForm>) -> Self {
        weights.sort();
        FixedPoint {
            label: label.into(),
            moment,
            weights,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn moment(&self) -> &Rational {
        &self.moment
    }

    pub fn weights(&self) -> &[LinForm] {
        &self.weights
    }

    /// Equivariant Euler class: the product of the tangent weights.
    pub fn euler_poly(&self) -> Poly {
        let ny = self.weights[0].num_y_vars();
        self.weights
            .iter()
            .fold(Poly::one(ny), |acc, w| &acc * &w.to_poly())
    }

    /// `1 / e_F`, ready to be multiplied into localization sums.
    pub fn euler_reciprocal(&self) -> FactoredRational {
        let ny = self.weights[0].num_y_vars();
        FactoredRational::reciprocal_of_product(ny, &self.weights)
            .expect("weights share the variable count")
    }

    /// Euler class of the part of the tangent space along which the moment
    /// decreases (weights with negative X-coefficient).
    pub fn descending_euler(&self) -> Poly {
        self.euler_of(|w| w.x_coeff().is_negative())
    }

    /// Euler class of the ascending part (positive X-coefficient).
    pub fn ascending_euler(&self) -> Poly {
        self.euler_of(|w| w.x_coeff().is_positive())
    }

    fn euler_of(&self, keep: impl Fn(&LinForm) -> bool) -> Poly {
        let ny = self.weights[0].num_y_vars();
        self.weights
            .iter()
            .filter(|w| keep(w))
            .fold(Poly::one(ny), |acc, w| &acc * &w.to_poly())
    }
}

#[derive(Clone, Default, Debug)]
pub struct SpaceOptions {
    /// Added to every moment value; moment maps are defined up to a constant.
    pub shift: Option<Rational>,
    /// Skip the regular-value and two-sidedness checks.
    pub allow_degenerate: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Space {
    ny: usize,
    dim_half: usize,
    points: Vec<FixedPoint>,
}

impl Space {
    pub fn new(
        ny: usize,
        dim_half: usize,
        points: Vec<FixedPoint>,
        opts: &SpaceOptions,
    ) -> Result<Space> {
        if dim_half == 0 {
            return Err(Error::ZeroDimension);
        }
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.label.as_str()) {
                return Err(Error::DuplicateLabel {
                    label: p.label.clone(),
                });
            }
            if p.weights.len() != dim_half {
                return Err(Error::WeightCount {
                    label: p.label.clone(),
                    expected: dim_half,
                    found: p.weights.len(),
                });
            }
            for w in &p.weights {
                if w.num_y_vars() != ny {
                    return Err(Error::VarCountMismatch {
                        left: ny,
                        right: w.num_y_vars(),
                    });
                }
                if w.x_coeff().is_zero() {
                    return Err(Error::WeightVanishesOnCircle {
                        label: p.label.clone(),
                        weight: w.to_text(),
                    });
                }
            }
        }
        let points = match &opts.shift {
            Some(s) => points
                .into_iter()
                .map(|mut p| {
                    p.moment += s;
                    p
                })
                .collect(),
            None => points,
        };
        let space = Space {
            ny,
            dim_half,
            points,
        };
        if !opts.allow_degenerate {
            space.check_regular()?;
        }
        Ok(space)
    }

    pub fn num_y_vars(&self) -> usize {
        self.ny
    }

    pub fn dim_half(&self) -> usize {
        self.dim_half
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point(&self, label: &str) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|p| p.label.as_str())
    }

    /// 0 must be a regular value (no fixed point at moment 0) and both
    /// sides of 0 must be populated.
    pub fn check_regular(&self) -> Result<()> {
        if let Some(p) = self.points.iter().find(|p| p.moment.is_zero()) {
            return Err(Error::NonRegularValue {
                label: p.label.clone(),
            });
        }
        if self.points.iter().all(|p| p.moment.is_positive()) {
            return Err(Error::OneSided { side: "positive" });
        }
        if self.points.iter().all(|p| p.moment.is_negative()) {
            return Err(Error::OneSided { side: "negative" });
        }
        Ok(())
    }

    /// All points by increasing moment (ties keep input order).
    pub fn by_moment(&self) -> Vec<&FixedPoint> {
        let mut v: Vec<&FixedPoint> = self.points.iter().collect();
        v.sort_by(|a, b| a.moment.cmp(&b.moment));
        v
    }
}

/// `(𝓕₋, 𝓕₊)`, each ordered by increasing moment.
pub fn split_fixed_points(space: &Space) -> Result<(Vec<&FixedPoint>, Vec<&FixedPoint>)> {
    if let Some(p) = space.points.iter().find(|p| p.moment.is_zero()) {
        return Err(Error::NonRegularValue {
            label: p.label.clone(),
        });
    }
    Ok(space.by_moment().into_iter().partition(|p| p.moment.is_negative()))
}

/// An equivariant class, recorded by its restriction to every fixed point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivClass {
    name: String,
    degree: u32,
    restrictions: BTreeMap<String, Poly>,
}

impl EquivClass {
    pub fn new(name: impl Into<String>, degree: u32, restrictions: BTreeMap<String, Poly>) -> Self {
        EquivClass {
            name: name.into(),
            degree,
            restrictions,
        }
    }

    /// The class restricting to `f(point)` at every point.
    pub fn from_fn(
        space: &Space,
        name: impl Into<String>,
        degree: u32,
        mut f: impl FnMut(&FixedPoint) -> Poly,
    ) -> Self {
        let restrictions = space
            .points
            .iter()
            .map(|p| (p.label.clone(), f(p)))
            .collect();
        EquivClass::new(name, degree, restrictions)
    }

    /// The pullback of a polynomial from a point: `p` everywhere.
    pub fn constant(space: &Space, name: impl Into<String>, p: &Poly) -> Self {
        let degree = p.total_degree().unwrap_or(0);
        Self::from_fn(space, name, degree, |_| p.clone())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn restrictions(&self) -> &BTreeMap<String, Poly> {
        &self.restrictions
    }

    pub fn at(&self, label: &str) -> Option<&Poly> {
        self.restrictions.get(label)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Pointwise product. Labels missing on either side are dropped.
    pub fn product(&self, other: &EquivClass) -> EquivClass {
        let restrictions = self
            .restrictions
            .iter()
            .filter_map(|(l, a)| other.restrictions.get(l).map(|b| (l.clone(), a * b)))
            .collect();
        EquivClass::new(
            alloc::format!("{}*{}", self.name, other.name),
            self.degree + other.degree,
            restrictions,
        )
    }

    /// Multiplies every restriction by the polynomial `p`.
    pub fn mul_poly(&self, p: &Poly) -> EquivClass {
        EquivClass {
            name: alloc::format!("({})*{}", p, self.name),
            degree: self.degree + p.total_degree().unwrap_or(0),
            restrictions: self
                .restrictions
                .iter()
                .map(|(l, r)| (l.clone(), r * p))
                .collect(),
        }
    }

    /// Pointwise sum; keeps `self`'s name and degree.
    pub fn add(&self, other: &EquivClass) -> EquivClass {
        let mut restrictions = self.restrictions.clone();
        for (l, b) in &other.restrictions {
            let slot = restrictions
                .entry(l.clone())
                .or_insert_with(|| Poly::zero(b.num_y_vars()));
            *slot = &*slot + b;
        }
        EquivClass {
            name: self.name.clone(),
            degree: self.degree,
            restrictions,
        }
    }

    /// Total on the space's labels, no foreign labels, and every
    /// restriction homogeneous of the declared degree (or zero).
    pub fn validate(&self, space: &Space) -> Result<()> {
        for l in self.restrictions.keys() {
            if space.point(l).is_none() {
                return Err(Error::UnknownLabel {
                    class: self.name.clone(),
                    label: l.clone(),
                });
            }
        }
        for p in space.points() {
            let r = self.restrictions.get(p.label()).ok_or_else(|| Error::MissingRestriction {
                class: self.name.clone(),
                label: p.label.clone(),
            })?;
            if r.num_y_vars() != space.num_y_vars() {
                return Err(Error::VarCountMismatch {
                    left: space.num_y_vars(),
                    right: r.num_y_vars(),
                });
            }
            if !r.is_homogeneous_of(self.degree) {
                return Err(Error::NotHomogeneous {
                    class: self.name.clone(),
                    label: p.label.clone(),
                    degree: self.degree,
                });
            }
        }
        Ok(())
    }

    fn require(&self, label: &str) -> Result<&Poly> {
        self.restrictions
            .get(label)
            .ok_or_else(|| Error::MissingRestriction {
                class: self.name.clone(),
                label: label.to_string(),
            })
    }
}

fn check_poles(h: &FactoredRational) -> Result<()> {
    match h.factors().find(|(l, _)| l.x_coeff().is_zero()) {
        Some((l, _)) => Err(Error::PoleOnCircleAxis {
            factor: l.to_text(),
        }),
        None => Ok(()),
    }
}

/// Sum of the residues of `h·dX` over all poles in `X`, with the `Yi`
/// treated as constants.
///
/// A pole of order `a` at `X = c(Y)` contributes
/// `1/(a-1)! · ∂_X^{a-1}[h·(X - c)^a]` evaluated at `X = c`. Canonical
/// factor scaling makes distinct factors have distinct poles, so each
/// factor is one pole location. The result only involves the `Yi`.
pub fn res_plus(h: &FactoredRational) -> Result<FactoredRational> {
    check_poles(h)?;
    let ny = h.num_y_vars();
    let factors = h.factor_list();
    let mut total = FactoredRational::zero(ny);
    for (i, (l, a)) in factors.iter().enumerate() {
        let root = l.x_root().expect("checked nonzero X-coefficient");
        // h·(X - c)^a = num / (m^a · ∏ other factors)
        let m = l.x_coeff();
        let others = factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, f)| f.clone());
        let mut g = FactoredRational::new(h.numerator().scale(&m.pow(*a as i32).recip()), others)?;
        for _ in 1..*a {
            g = g.derivative_x();
        }
        let at_pole = g
            .substitute_x(&root)
            .expect("canonical factors have distinct poles");
        total = total.checked_add(&at_pole.scale(&factorial(a - 1).recip()))?;
    }
    Ok(total.normalize())
}

/// Residue by Laurent expansion at `X = ∞`: expand every
/// `1/(mX + β(Y))^a = (mX)^{-a} Σ_j C(a+j-1, j) (-β/(mX))^j`, multiply by the
/// numerator and read off the coefficient of `X^{-1}`.
///
/// With numerator X-degree `d` and total pole order `D`, a numerator term
/// `X^e` meets the series term of order `J` at `X^{e - D - J}`, so only
/// `J = e + 1 - D <= d + 1 - D` contributes; the expansion is truncated
/// there.
pub fn res_gk(h: &FactoredRational) -> Result<FactoredRational> {
    check_poles(h)?;
    let ny = h.num_y_vars();
    let num = h.numerator();
    let big_d = h.pole_order();
    let dp = match num.x_degree() {
        Some(d) => d,
        None => return Ok(FactoredRational::zero(ny)),
    };
    if dp + 1 < big_d {
        return Ok(FactoredRational::zero(ny));
    }
    let jmax = (dp + 1 - big_d) as usize;

    // series[J] = coefficient of X^{-D-J} in 1/∏ factors
    let mut series = vec![Poly::zero(ny); jmax + 1];
    series[0] = Poly::one(ny);
    for (l, a) in h.factors() {
        let m = l.x_coeff();
        let beta = LinForm::from_coefficients(
            core::iter::once(Rational::zero())
                .chain(l.y_coeffs().iter().cloned())
                .collect(),
        )
        .map(|b| b.to_poly())
        .unwrap_or_else(|_| Poly::zero(ny));
        let mut expansion = Vec::with_capacity(jmax + 1);
        let mut beta_pow = Poly::one(ny);
        for j in 0..=jmax as u32 {
            let mut c = binomial(a + j - 1, j) * m.pow((a + j) as i32).recip();
            if j % 2 == 1 {
                c = -c;
            }
            expansion.push(beta_pow.scale(&c));
            beta_pow = &beta_pow * &beta;
        }
        let mut next = vec![Poly::zero(ny); jmax + 1];
        for (i, s) in series.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (j, t) in expansion.iter().enumerate().take(jmax + 1 - i) {
                next[i + j] = &next[i + j] + &(s * t);
            }
        }
        series = next;
    }

    let mut out = Poly::zero(ny);
    for (e, coeff) in num.coefficients_in(0) {
        if e + 1 < big_d {
            continue;
        }
        let j = (e + 1 - big_d) as usize;
        debug_assert!(j <= jmax);
        out = &out + &(&coeff * &series[j]);
    }
    Ok(FactoredRational::from_poly(out))
}

fn localized_term(point: &FixedPoint, restriction: &Poly) -> FactoredRational {
    point.euler_reciprocal().mul_poly(restriction)
}

/// `Σ_{F∈𝓕} η|_F / e_F`, normalized. For a genuine class this is a
/// polynomial.
pub fn abbv_sum(space: &Space, eta: &EquivClass) -> Result<FactoredRational> {
    let mut total = FactoredRational::zero(space.num_y_vars());
    for p in space.points() {
        total = total.checked_add(&localized_term(p, eta.require(p.label())?))?;
    }
    Ok(total.normalize())
}

pub fn is_polynomial(sum: &FactoredRational) -> bool {
    sum.normalize().has_empty_denominator()
}

/// Value of a reduction pairing, with a flag telling whether it came out
/// polynomial in the `Yi` (it does for genuine classes).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pairing {
    pub value: FactoredRational,
    pub is_polynomial: bool,
}

/// `Σ_{F∈𝓕₊} Res_X^+ η|_F / e_F`: the integral of `κ(η)` over the
/// reduced space, with the normalizing constant set to 1.
pub fn reduced_integral(space: &Space, eta: &EquivClass) -> Result<Pairing> {
    let (_, plus) = split_fixed_points(space)?;
    let mut total = FactoredRational::zero(space.num_y_vars());
    for p in plus {
        let r = res_plus(&localized_term(p, eta.require(p.label())?))?;
        total = total.checked_add(&r)?;
    }
    let value = total.normalize();
    let is_polynomial = value.has_empty_denominator();
    Ok(Pairing {
        value,
        is_polynomial,
    })
}

/// `κ(η)κ(ζ)[N_red] = Σ_{F∈𝓕₊} Res_X^+ (ηζ)|_F / e_F`.
pub fn pairing(space: &Space, eta: &EquivClass, zeta: &EquivClass) -> Result<Pairing> {
    reduced_integral(space, &eta.product(zeta))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassFailure {
    Structure(Error),
    NotPolynomial {
        witness: String,
        sum: FactoredRational,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassReport {
    pub class: String,
    pub witnesses_checked: usize,
    pub failure: Option<ClassFailure>,
}

impl ClassReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Necessary conditions for `η` to be a genuine class: homogeneity and
/// polynomiality of `Σ_F (η·w)|_F / e_F` for `w = 1` and every witness.
pub fn validate_class(space: &Space, eta: &EquivClass, witnesses: &[EquivClass]) -> ClassReport {
    let mut report = ClassReport {
        class: eta.name.clone(),
        witnesses_checked: 0,
        failure: None,
    };
    if let Err(e) = eta.validate(space) {
        report.failure = Some(ClassFailure::Structure(e));
        return report;
    }
    let one = EquivClass::constant(space, "1", &Poly::one(space.num_y_vars()));
    for w in core::iter::once(&one).chain(witnesses) {
        report.witnesses_checked += 1;
        match abbv_sum(space, &eta.product(w)) {
            Ok(sum) if sum.has_empty_denominator() => {}
            Ok(sum) => {
                report.failure = Some(ClassFailure::NotPolynomial {
                    witness: w.name.clone(),
                    sum,
                });
                return report;
            }
            Err(e) => {
                report.failure = Some(ClassFailure::Structure(e));
                return report;
            }
        }
    }
    report
}
