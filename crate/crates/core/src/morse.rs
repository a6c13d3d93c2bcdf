//! Canonical Morse bases and the constructive description of the kernel of
//! the equivariant Kirwan map.
//!
//! With `f = ⟨μ, ξ⟩` as Morse function, every fixed point `F` carries
//! classes `α⁻(F)` and `α⁺(F)`: `α⁻(F)` vanishes below `F` and restricts to
//! the Euler class of the descending directions at `F`, `α⁺(F)` vanishes
//! above `F` and restricts to the ascending Euler class. Descending
//! directions are the weights with negative X-coefficient.
//!
//! [`decompose`] splits a class `η` into `η₋ + η₊` with rational
//! coefficients over the `α⁻` basis, `η₊` vanishing on `𝓕₋` and `η₋` on
//! `𝓕₊`. [`kernel_test`] decides whether those coefficients are in fact
//! polynomial; if so `η = ξ₋ + ξ₊` with `ξ± ∈ K±` is returned, otherwise a
//! test class `ζ` with `κ(η)κ(ζ)[N_red] ≠ 0` is produced.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Signed;

use crate::algebra::{divides_product, FactoredRational, LinForm, Monomial, Poly};
use crate::error::{Error, Result};
use crate::localization::{pairing, res_plus, split_fixed_points, EquivClass, FixedPoint, Space};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CanonicalBasis {
    pub alpha_minus: BTreeMap<String, EquivClass>,
    pub alpha_plus: BTreeMap<String, EquivClass>,
}

impl CanonicalBasis {
    pub fn minus(&self, label: &str) -> Result<&EquivClass> {
        self.alpha_minus
            .get(label)
            .ok_or_else(|| Error::MissingBasisClass {
                family: "alpha_minus",
                label: label.to_string(),
            })
    }

    pub fn plus(&self, label: &str) -> Result<&EquivClass> {
        self.alpha_plus
            .get(label)
            .ok_or_else(|| Error::MissingBasisClass {
                family: "alpha_plus",
                label: label.to_string(),
            })
    }

    /// All basis classes, `α⁻` first, each family in label order.
    pub fn classes(&self) -> impl Iterator<Item = &EquivClass> {
        self.alpha_minus.values().chain(self.alpha_plus.values())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisViolation {
    Missing {
        family: &'static str,
        label: String,
    },
    Structure {
        family: &'static str,
        label: String,
        error: Error,
    },
    /// `family(of)` does not vanish at `at`, which lies strictly below
    /// (for `α⁻`) or above (for `α⁺`) `of`.
    Triangular {
        family: &'static str,
        of: String,
        at: String,
        value: Poly,
    },
    Diagonal {
        family: &'static str,
        label: String,
        expected: Poly,
        found: Poly,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BasisReport {
    pub violations: Vec<BasisViolation>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the triangularity and diagonal conditions of both families and
/// reports every violation.
pub fn validate_basis(space: &Space, basis: &CanonicalBasis) -> BasisReport {
    let mut report = BasisReport::default();
    for (family, classes) in [("alpha_minus", &basis.alpha_minus), ("alpha_plus", &basis.alpha_plus)] {
        let descending = family == "alpha_minus";
        for f in space.points() {
            let Some(class) = classes.get(f.label()) else {
                report.violations.push(BasisViolation::Missing {
                    family,
                    label: f.label().to_string(),
                });
                continue;
            };
            if let Err(error) = class.validate(space) {
                report.violations.push(BasisViolation::Structure {
                    family,
                    label: f.label().to_string(),
                    error,
                });
                continue;
            }
            let expected = if descending {
                f.descending_euler()
            } else {
                f.ascending_euler()
            };
            let found = class.at(f.label()).expect("validated").clone();
            if found != expected {
                report.violations.push(BasisViolation::Diagonal {
                    family,
                    label: f.label().to_string(),
                    expected,
                    found,
                });
            }
            for g in space.points() {
                let must_vanish = if descending {
                    g.moment() < f.moment()
                } else {
                    g.moment() > f.moment()
                };
                let value = class.at(g.label()).expect("validated");
                if must_vanish && !value.is_zero() {
                    report.violations.push(BasisViolation::Triangular {
                        family,
                        of: f.label().to_string(),
                        at: g.label().to_string(),
                        value: value.clone(),
                    });
                }
            }
        }
    }
    report
}

/// Result of splitting `η = η₋ + η₊` over the `α⁻` basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    /// Polynomial coefficients `p_F` with `η = Σ_F p_F α⁻(F)`.
    pub expansion: BTreeMap<String, Poly>,
    /// Corrections `r_k` transferred from `η₋` to `η₊`, over `𝓕₊` in
    /// increasing moment order.
    pub corrections: Vec<(String, FactoredRational)>,
    /// Coefficients of `η₋` on `α⁻(F)` for every `F`.
    pub minus_coeffs: BTreeMap<String, FactoredRational>,
    /// Coefficients `p_F / q_F` of `η₊` on `α⁻(F)`, `F ∈ 𝓕₊`. Kept
    /// unreduced so `q_F` is the factored denominator the construction
    /// produced.
    pub plus_coeffs: BTreeMap<String, FactoredRational>,
    /// Restrictions of `η₋` and `η₊` to every fixed point (normalized).
    pub eta_minus: BTreeMap<String, FactoredRational>,
    pub eta_plus: BTreeMap<String, FactoredRational>,
}

fn check_ties(plus: &[&FixedPoint]) -> Result<()> {
    for w in plus.windows(2) {
        if w[0].moment() == w[1].moment() {
            return Err(Error::TiedMomentValues {
                first: w[0].label().to_string(),
                second: w[1].label().to_string(),
            });
        }
    }
    Ok(())
}

fn descending_weights(f: &FixedPoint) -> Vec<(LinForm, u32)> {
    f.weights()
        .iter()
        .filter(|w| w.x_coeff().is_negative())
        .map(|w| (w.clone(), 1))
        .collect()
}

/// Expands `η = Σ_F p_F α⁻(F)` by back-substitution in increasing moment
/// order: at each `F` the running remainder vanishes below `F`, so its
/// restriction to `F` is a polynomial multiple of the descending Euler
/// class.
pub fn expand_over_basis(
    space: &Space,
    basis: &CanonicalBasis,
    eta: &EquivClass,
) -> Result<BTreeMap<String, Poly>> {
    let mut rem: BTreeMap<String, Poly> = BTreeMap::new();
    for f in space.points() {
        let r = eta.at(f.label()).ok_or_else(|| Error::MissingRestriction {
            class: eta.name().to_string(),
            label: f.label().to_string(),
        })?;
        rem.insert(f.label().to_string(), r.clone());
    }
    let mut expansion = BTreeMap::new();
    for f in space.by_moment() {
        let alpha = basis.minus(f.label())?;
        if f.descending_euler().is_zero() {
            return Err(Error::ZeroDiagonal {
                label: f.label().to_string(),
            });
        }
        let r = &rem[f.label()];
        let p = divides_product(r, &descending_weights(f))?.ok_or_else(|| Error::NotInSpan {
            class: eta.name().to_string(),
            label: f.label().to_string(),
        })?;
        if !p.is_zero() {
            for g in space.points() {
                let a = alpha.at(g.label()).ok_or_else(|| Error::MissingRestriction {
                    class: alpha.name().to_string(),
                    label: g.label().to_string(),
                })?;
                let slot = rem.get_mut(g.label()).expect("total");
                *slot = &*slot - &(&p * a);
            }
        }
        expansion.insert(f.label().to_string(), p);
    }
    if let Some((label, _)) = rem.iter().find(|(_, r)| !r.is_zero()) {
        return Err(Error::NotInSpan {
            class: eta.name().to_string(),
            label: label.clone(),
        });
    }
    Ok(expansion)
}

/// Splits `η` into `η₋ + η₊` with `η₊|𝓕₋ = 0` and `η₋|𝓕₊ = 0`.
///
/// After the polynomial expansion, `η̃₋ = Σ_{F∈𝓕₋} p_F α⁻(F)` is corrected
/// point by point: for `F_1, F_2, …` in `𝓕₊` with increasing moment,
/// `r_k = η̃₋|F_k / e(ν⁻F_k)` and `r_k α⁻(F_k)` is moved from `η₋` to `η₊`.
/// Requires pairwise distinct moments on `𝓕₊`.
pub fn decompose(space: &Space, basis: &CanonicalBasis, eta: &EquivClass) -> Result<Decomposition> {
    let ny = space.num_y_vars();
    let (minus, plus) = split_fixed_points(space)?;
    check_ties(&plus)?;
    let expansion = expand_over_basis(space, basis, eta)?;

    let mut minus_coeffs = BTreeMap::new();
    let mut plus_coeffs = BTreeMap::new();
    let mut eta_minus: BTreeMap<String, FactoredRational> = space
        .labels()
        .map(|l| (l.to_string(), FactoredRational::zero(ny)))
        .collect();
    for f in &minus {
        let p = &expansion[f.label()];
        minus_coeffs.insert(f.label().to_string(), FactoredRational::from_poly(p.clone()));
        if p.is_zero() {
            continue;
        }
        let alpha = basis.minus(f.label())?;
        for (g, slot) in eta_minus.iter_mut() {
            let a = alpha.at(g).expect("checked during expansion");
            *slot = slot.checked_add(&FactoredRational::from_poly(p * a))?;
        }
    }

    let mut corrections = Vec::with_capacity(plus.len());
    for f in &plus {
        let label = f.label();
        let current = eta_minus[label].normalize();
        let r = FactoredRational::new(current.numerator().clone(), {
            let mut fs = current.factor_list();
            fs.extend(descending_weights(f));
            fs
        })?;
        let alpha = basis.minus(label)?;
        if !r.is_zero() {
            for (g, slot) in eta_minus.iter_mut() {
                let a = alpha.at(g).expect("checked during expansion");
                *slot = slot.checked_sub(&r.mul_poly(a))?.normalize();
            }
        }
        let p = FactoredRational::from_poly(expansion[label].clone());
        minus_coeffs.insert(label.to_string(), -&r);
        plus_coeffs.insert(label.to_string(), p.checked_add(&r)?);
        corrections.push((label.to_string(), r));
    }

    let mut eta_plus = BTreeMap::new();
    for (l, m) in eta_minus.iter_mut() {
        *m = m.normalize();
        let total = FactoredRational::from_poly(eta.at(l).expect("total").clone());
        eta_plus.insert(l.clone(), total.checked_sub(m)?.normalize());
    }

    Ok(Decomposition {
        expansion,
        corrections,
        minus_coeffs,
        plus_coeffs,
        eta_minus,
        eta_plus,
    })
}

/// Evidence that `η ∉ ker κ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelWitness {
    /// First `F_k ∈ 𝓕₊` whose coefficient is not polynomial.
    pub point: String,
    /// That coefficient in lowest terms, `p / q`.
    pub coefficient: FactoredRational,
    /// Polynomial `p` with `Res_X^+(p · coefficient) ≠ 0`.
    pub multiplier: Poly,
    pub residue: FactoredRational,
    /// `ζ = p · α⁺(F_k)`.
    pub zeta: EquivClass,
    /// `κ(η)κ(ζ)[N_red]`, computed directly from the fixed-point data.
    pub pairing: FactoredRational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KernelVerdict {
    InKernel {
        decomposition: Decomposition,
        /// `ξ₊ ∈ K₊` (vanishes on `𝓕₋`).
        xi_plus: EquivClass,
        /// `ξ₋ ∈ K₋` (vanishes on `𝓕₊`).
        xi_minus: EquivClass,
        /// Polynomial coefficients of `ξ₊` over `α⁻(F)`, `F ∈ 𝓕₊`.
        plus_coeffs: BTreeMap<String, Poly>,
    },
    NotInKernel {
        decomposition: Decomposition,
        witness: KernelWitness,
    },
}

impl KernelVerdict {
    pub fn in_kernel(&self) -> bool {
        matches!(self, KernelVerdict::InKernel { .. })
    }

    pub fn decomposition(&self) -> &Decomposition {
        match self {
            KernelVerdict::InKernel { decomposition, .. } => decomposition,
            KernelVerdict::NotInKernel { decomposition, .. } => decomposition,
        }
    }
}

/// Decides `η ∈ ker κ_S = K₋ ⊕ K₊`.
///
/// Runs [`decompose`] and checks, in increasing moment order over `𝓕₊`,
/// that each `q_F` divides `p_F`. When all divide, `ξ₊ = η₊` and
/// `ξ₋ = η − ξ₊` are returned as classes and re-verified. Otherwise a
/// witness is built at the first failing point: with `p_F/q_F` in lowest
/// terms and `l` its first denominator factor, the multiplier starts at
/// `q_F / l` and is multiplied by monomials of degree up to the pole order
/// until `Res_X^+(multiplier · p_F/q_F) ≠ 0`.
pub fn kernel_test(space: &Space, basis: &CanonicalBasis, eta: &EquivClass) -> Result<KernelVerdict> {
    let decomposition = decompose(space, basis, eta)?;
    let ny = space.num_y_vars();
    let (_, plus) = split_fixed_points(space)?;

    let mut quotients = BTreeMap::new();
    for f in &plus {
        let c = &decomposition.plus_coeffs[f.label()];
        match divides_product(c.numerator(), &c.factor_list())? {
            Some(q) => {
                quotients.insert(f.label().to_string(), q);
            }
            None => {
                let witness = build_witness(space, basis, eta, f, c)?;
                return Ok(KernelVerdict::NotInKernel {
                    decomposition,
                    witness,
                });
            }
        }
    }

    let mut xi_plus = BTreeMap::new();
    for g in space.points() {
        let mut acc = Poly::zero(ny);
        for (label, q) in &quotients {
            if q.is_zero() {
                continue;
            }
            let a = basis.minus(label)?.at(g.label()).expect("checked during expansion");
            acc = &acc + &(q * a);
        }
        xi_plus.insert(g.label().to_string(), acc);
    }
    let mut xi_minus = BTreeMap::new();
    for g in space.points() {
        let e = eta.at(g.label()).expect("total");
        xi_minus.insert(g.label().to_string(), e - &xi_plus[g.label()]);
    }
    for g in space.points() {
        let (wrong, which) = if g.moment().is_negative() {
            (&xi_plus[g.label()], "xi_plus")
        } else {
            (&xi_minus[g.label()], "xi_minus")
        };
        if !wrong.is_zero() {
            return Err(Error::BasisVerification {
                msg: format!("{} does not vanish at `{}`", which, g.label()),
            });
        }
    }
    Ok(KernelVerdict::InKernel {
        decomposition,
        xi_plus: EquivClass::new(format!("xi_plus({})", eta.name()), eta.degree(), xi_plus),
        xi_minus: EquivClass::new(format!("xi_minus({})", eta.name()), eta.degree(), xi_minus),
        plus_coeffs: quotients,
    })
}

/// For `h = f/g` in lowest terms with a nonempty denominator, a polynomial
/// `p` with `Res_X^+(p·h) ≠ 0`, together with that residue.
///
/// With `l` the first denominator factor, the search starts at `g / l`
/// and multiplies by monomials of degree up to the pole order. The first
/// candidate already works: it leaves `f / l`, whose residue is
/// `f(c(Y)) / m` at the root of `l`, nonzero because `l` does not divide
/// `f`. Returns `None` for polynomial `h`.
pub fn residue_witness(h: &FactoredRational) -> Result<Option<(Poly, FactoredRational)>> {
    let reduced = h.normalize();
    let factors = reduced.factor_list();
    let Some((first, mult)) = factors.first().cloned() else {
        return Ok(None);
    };
    let ny = reduced.num_y_vars();
    let mut base = first.to_poly().pow(mult - 1);
    for (l, k) in &factors[1..] {
        base = &base * &l.to_poly().pow(*k);
    }
    for m in Monomial::all_up_to(ny + 1, reduced.pole_order()) {
        let multiplier = base.mul_monomial(&m);
        let residue = res_plus(&reduced.mul_poly(&multiplier))?;
        if !residue.is_zero() {
            return Ok(Some((multiplier, residue)));
        }
    }
    unreachable!("no nonzero residue in the bounded multiplier family")
}

fn build_witness(
    space: &Space,
    basis: &CanonicalBasis,
    eta: &EquivClass,
    f: &FixedPoint,
    coefficient: &FactoredRational,
) -> Result<KernelWitness> {
    let (multiplier, residue) =
        residue_witness(coefficient)?.expect("a non-polynomial coefficient has a pole");
    let zeta = basis
        .plus(f.label())?
        .mul_poly(&multiplier)
        .renamed(format!("({})*alpha_plus({})", multiplier, f.label()));
    let pairing = pairing(space, eta, &zeta)?.value;
    Ok(KernelWitness {
        point: f.label().to_string(),
        coefficient: coefficient.normalize(),
        multiplier,
        residue,
        zeta,
        pairing,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriterionOutcome {
    pub checked: usize,
    /// First `ζ` with a nonzero residue, and that residue.
    pub failure: Option<(String, FactoredRational)>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Evaluates `Σ_{F∈𝓕₊} Res_X^+ (ηζ)|_F / e_F` for each supplied `ζ`.
///
/// A nonzero value proves `η ∉ ker κ_S`. Passing is only conclusive when
/// the `ζ` span enough of the cohomology; use [`kernel_test`] for a
/// decision.
pub fn residue_criterion(space: &Space, eta: &EquivClass, zetas: &[EquivClass]) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome {
        checked: 0,
        failure: None,
    };
    for z in zetas {
        out.checked += 1;
        let v = pairing(space, eta, z)?.value;
        if !v.is_zero() {
            out.failure = Some((z.name().to_string(), v));
            break;
        }
    }
    Ok(out)
}

/// Basis classes (both families) times every monomial of degree
/// `<= max_degree`: a test family for [`residue_criterion`].
pub fn monomial_test_family(space: &Space, basis: &CanonicalBasis, max_degree: u32) -> Vec<EquivClass> {
    let ny = space.num_y_vars();
    let monomials = Monomial::all_up_to(ny + 1, max_degree);
    let mut out = Vec::new();
    for class in basis.classes() {
        for m in &monomials {
            let p = Poly::monomial(ny, m.clone(), crate::algebra::rat(1));
            out.push(class.mul_poly(&p).renamed(format!("({})*{}", p, class.name())));
        }
    }
    out
}

/// Largest pole order of `1/e_F` over the space.
pub fn max_pole_order(space: &Space) -> u32 {
    space
        .points()
        .iter()
        .map(|p| p.euler_reciprocal().pole_order())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};
    use crate::localization::SpaceOptions;
    use alloc::vec;

    fn cp1() -> (Space, CanonicalBasis) {
        let lf = |c: i64| LinForm::from_ints(&[c]).unwrap();
        let space = Space::new(
            0,
            1,
            vec![
                FixedPoint::new("p-", rat(-1), vec![lf(1)]),
                FixedPoint::new("p+", rat(1), vec![lf(-1)]),
            ],
            &SpaceOptions::default(),
        )
        .unwrap();
        let mk = |name: &str, a: &str, b: &str| {
            let mut r = BTreeMap::new();
            r.insert("p-".to_string(), parse_poly(a, 0).unwrap());
            r.insert("p+".to_string(), parse_poly(b, 0).unwrap());
            let deg = r.values().filter_map(|p| p.total_degree()).max().unwrap_or(0);
            EquivClass::new(name, deg, r)
        };
        let mut basis = CanonicalBasis::default();
        basis.alpha_minus.insert("p-".into(), mk("alpha_minus(p-)", "1", "1"));
        basis.alpha_minus.insert("p+".into(), mk("alpha_minus(p+)", "0", "-X"));
        basis.alpha_plus.insert("p-".into(), mk("alpha_plus(p-)", "X", "0"));
        basis.alpha_plus.insert("p+".into(), mk("alpha_plus(p+)", "1", "1"));
        (space, basis)
    }

    fn class(name: &str, deg: u32, a: &str, b: &str) -> EquivClass {
        let mut r = BTreeMap::new();
        r.insert("p-".to_string(), parse_poly(a, 0).unwrap());
        r.insert("p+".to_string(), parse_poly(b, 0).unwrap());
        EquivClass::new(name, deg, r)
    }

    #[test]
    fn cp1_basis_validates() {
        let (s, b) = cp1();
        assert!(validate_basis(&s, &b).passed());
    }

    #[test]
    fn doubled_diagonal_fails() {
        let (s, mut b) = cp1();
        b.alpha_minus.insert("p+".into(), class("bad", 1, "0", "-2*X"));
        let r = validate_basis(&s, &b);
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(&r.violations[0], BasisViolation::Diagonal { label, .. } if label == "p+"));
    }

    #[test]
    fn triangularity_violation_names_the_pair() {
        let (s, mut b) = cp1();
        b.alpha_minus.insert("p+".into(), class("bad", 1, "X", "-X"));
        let r = validate_basis(&s, &b);
        assert!(r.violations.iter().any(|v| matches!(
            v,
            BasisViolation::Triangular { family: "alpha_minus", of, at, .. } if of == "p+" && at == "p-"
        )));
    }

    #[test]
    fn decompose_one_on_cp1() {
        let (s, b) = cp1();
        let d = decompose(&s, &b, &class("1", 0, "1", "1")).unwrap();
        assert_eq!(d.expansion["p-"], Poly::one(0));
        assert!(d.expansion["p+"].is_zero());
        assert_eq!(d.corrections.len(), 1);
        let r = &d.corrections[0].1;
        assert!(r.value_eq(&crate::algebra::parse_factored("1/(-X)", 0).unwrap()));
        // η₊ = r·α⁻(p+) = (0, 1), η₋ = (1, 0)
        assert!(d.eta_plus["p-"].is_zero());
        assert_eq!(d.eta_plus["p+"], FactoredRational::one(0));
        assert_eq!(d.eta_minus["p-"], FactoredRational::one(0));
        assert!(d.eta_minus["p+"].is_zero());
    }

    #[test]
    fn kernel_on_cp1() {
        let (s, b) = cp1();
        let v = kernel_test(&s, &b, b.minus("p+").unwrap()).unwrap();
        match &v {
            KernelVerdict::InKernel { xi_plus, xi_minus, .. } => {
                assert_eq!(xi_plus.restrictions(), b.minus("p+").unwrap().restrictions());
                assert!(xi_minus.restrictions().values().all(Poly::is_zero));
            }
            other => panic!("{:?}", other),
        }

        let v = kernel_test(&s, &b, &class("1", 0, "1", "1")).unwrap();
        match v {
            KernelVerdict::NotInKernel { witness, .. } => {
                assert_eq!(witness.point, "p+");
                assert_eq!(witness.residue, FactoredRational::from_poly(Poly::constant(0, rat(-1))));
                assert_eq!(witness.pairing, witness.residue);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn residue_criterion_rejects_one() {
        let (s, b) = cp1();
        let one = class("1", 0, "1", "1");
        let out = residue_criterion(&s, &one, &[one.clone()]).unwrap();
        assert_eq!(out.failure.unwrap().1, FactoredRational::from_poly(Poly::constant(0, rat(-1))));
        let a = b.minus("p+").unwrap();
        let fam = monomial_test_family(&s, &b, 3);
        assert!(residue_criterion(&s, a, &fam).unwrap().passed());
    }

    #[test]
    fn not_in_span_is_reported() {
        let (s, b) = cp1();
        // (1, 0) is not a genuine class: 1 - 0 is not divisible by -X
        let bad = class("bad", 0, "1", "0");
        assert!(matches!(decompose(&s, &b, &bad), Err(Error::NotInSpan { .. })));
    }

    #[test]
    fn ties_on_positive_side_rejected() {
        let lf = |c: &[i64]| LinForm::from_ints(c).unwrap();
        let s = Space::new(
            0,
            1,
            vec![
                FixedPoint::new("a", rat(-1), vec![lf(&[1])]),
                FixedPoint::new("b", rat(1), vec![lf(&[-1])]),
                FixedPoint::new("c", rat(1), vec![lf(&[-1])]),
            ],
            &SpaceOptions::default(),
        )
        .unwrap();
        let one = EquivClass::constant(&s, "1", &Poly::one(0));
        assert!(matches!(
            decompose(&s, &CanonicalBasis::default(), &one),
            Err(Error::TiedMomentValues { .. })
        ));
    }
}
