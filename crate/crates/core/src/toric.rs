//! Torus spaces built from products of projective spaces, generic circle
//! selection and the rewrite into circle coordinates `(X, Y1..Y(r-1))`.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, LinForm, Poly, Rational};
use crate::error::{Error, Result};
use crate::localization::{EquivClass, FixedPoint, Space, SpaceOptions};
use crate::morse::{validate_basis, CanonicalBasis};

/// A fixed point of the full torus: moment vector, integer tangent weights
/// and, for each projective factor, the index of the coordinate point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusPoint {
    pub label: String,
    pub moment: Vec<Rational>,
    pub weights: Vec<Vec<i64>>,
    pub coords: Vec<usize>,
}

/// A `CP^n` factor whose characters are `Λ_0 = 0` and
/// `Λ_i = e_{offset + i - 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProjectiveFactor {
    pub offset: usize,
    pub n: usize,
}

impl ProjectiveFactor {
    pub fn character(&self, rank: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        if i > 0 {
            v[self.offset + i - 1] = 1;
        }
        v
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusSpace {
    rank: usize,
    points: Vec<TorusPoint>,
    factors: Vec<ProjectiveFactor>,
}

impl TorusSpace {
    pub fn new(rank: usize, points: Vec<TorusPoint>, factors: Vec<ProjectiveFactor>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTorus { msg });
        if rank == 0 {
            return bad("rank must be positive".into());
        }
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        let nweights = points[0].weights.len();
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.label.as_str()) {
                return Err(Error::DuplicateLabel { label: p.label.clone() });
            }
            if p.moment.len() != rank {
                return bad(format!("`{}` has a moment of length {}", p.label, p.moment.len()));
            }
            if p.weights.len() != nweights {
                return Err(Error::WeightCount {
                    label: p.label.clone(),
                    expected: nweights,
                    found: p.weights.len(),
                });
            }
            for w in &p.weights {
                if w.len() != rank {
                    return bad(format!("`{}` has a weight of length {}", p.label, w.len()));
                }
                if w.iter().all(|c| *c == 0) {
                    return bad(format!("`{}` has a zero weight", p.label));
                }
            }
            if p.coords.len() != factors.len() {
                return bad(format!("`{}` has {} factor coordinates", p.label, p.coords.len()));
            }
            for (c, f) in p.coords.iter().zip(&factors) {
                if *c > f.n {
                    return bad(format!("`{}` has factor coordinate {} > {}", p.label, c, f.n));
                }
            }
        }
        for f in &factors {
            if f.n == 0 || f.offset + f.n > rank {
                return bad(format!("factor CP^{} at offset {} does not fit rank {}", f.n, f.offset, rank));
            }
        }
        Ok(TorusSpace { rank, points, factors })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    pub fn factors(&self) -> &[ProjectiveFactor] {
        &self.factors
    }

    /// Every tangent weight of every point, deduplicated.
    pub fn all_weights(&self) -> BTreeSet<Vec<i64>> {
        self.points.iter().flat_map(|p| p.weights.iter().cloned()).collect()
    }
}

/// `CP^n` with fixed points `p0..pn`; the weights at `p_i` are
/// `Λ_j - Λ_i`, `j ≠ i`, and the moment of `p_i` is `Λ_i`.
pub fn cpn_space(n: usize) -> Result<TorusSpace> {
    if n == 0 {
        return Err(Error::InvalidTorus {
            msg: "CP^n needs n >= 1".into(),
        });
    }
    let f = ProjectiveFactor { offset: 0, n };
    let points = (0..=n)
        .map(|i| {
            let li = f.character(n, i);
            let weights = (0..=n)
                .filter(|&j| j != i)
                .map(|j| f.character(n, j).iter().zip(&li).map(|(a, b)| a - b).collect())
                .collect();
            TorusPoint {
                label: format!("p{}", i),
                moment: li.iter().map(|&c| rat(c)).collect(),
                weights,
                coords: vec![i],
            }
        })
        .collect();
    TorusSpace::new(n, points, vec![f])
}

/// Product of two torus spaces; labels are joined as `a.b`.
pub fn product_space(a: &TorusSpace, b: &TorusSpace) -> Result<TorusSpace> {
    let rank = a.rank + b.rank;
    let pad = |w: &[i64], front: usize, back: usize| {
        let mut v = vec![0; front];
        v.extend_from_slice(w);
        v.extend(core::iter::repeat(0).take(back));
        v
    };
    let mut points = Vec::with_capacity(a.points.len() * b.points.len());
    for p in &a.points {
        for q in &b.points {
            let mut moment = p.moment.clone();
            moment.extend(q.moment.iter().cloned());
            let mut weights: Vec<Vec<i64>> = p.weights.iter().map(|w| pad(w, 0, b.rank)).collect();
            weights.extend(q.weights.iter().map(|w| pad(w, a.rank, 0)));
            let mut coords = p.coords.clone();
            coords.extend_from_slice(&q.coords);
            points.push(TorusPoint {
                label: format!("{}.{}", p.label, q.label),
                moment,
                weights,
                coords,
            });
        }
    }
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().map(|f| ProjectiveFactor {
        offset: f.offset + a.rank,
        n: f.n,
    }));
    TorusSpace::new(rank, points, factors)
}

/// A circle `ξ` together with a unimodular matrix whose first row is `ξ`.
/// Weight `w` has circle coordinates `completion · w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleChoice {
    pub xi: Vec<i64>,
    pub completion: Vec<Vec<i64>>,
}

impl CircleChoice {
    /// Completes a primitive `ξ`.
    pub fn new(xi: Vec<i64>) -> Result<Self> {
        let completion = unimodular_completion(&xi)?;
        Ok(CircleChoice { xi, completion })
    }

    pub fn with_completion(xi: Vec<i64>, completion: Vec<Vec<i64>>) -> Result<Self> {
        let r = xi.len();
        if completion.len() != r || completion.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidTorus {
                msg: format!("completion must be {}x{}", r, r),
            });
        }
        if completion[0] != xi {
            return Err(Error::InvalidTorus {
                msg: "first row of the completion must equal xi".into(),
            });
        }
        if determinant(&completion).abs() != BigInt::one() {
            return Err(Error::InvalidTorus {
                msg: "completion is not unimodular".into(),
            });
        }
        Ok(CircleChoice { xi, completion })
    }

    pub fn pair(&self, w: &[i64]) -> i64 {
        self.xi.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    pub fn pair_moment(&self, m: &[Rational]) -> Rational {
        self.xi
            .iter()
            .zip(m)
            .fold(Rational::zero(), |acc, (a, b)| acc + rat(*a) * b)
    }

    /// Circle coordinates `(X, Y1, ..)` of an integer character.
    pub fn coordinates(&self, w: &[i64]) -> Vec<i64> {
        self.completion
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn character_poly(&self, w: &[i64]) -> Poly {
        let c = self.coordinates(w);
        let ny = c.len() - 1;
        c.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .fold(Poly::zero(ny), |acc, (i, v)| &acc + &Poly::var(ny, i).scale(&rat(*v)))
    }

    pub fn character_form(&self, w: &[i64]) -> Result<LinForm> {
        LinForm::from_ints(&self.coordinates(w))
    }

    /// No weight is orthogonal to `ξ` and the
    /// values `⟨μ(F), ξ⟩` are pairwise distinct.
    pub fn is_generic_for(&self, space: &TorusSpace) -> bool {
        if self.xi.len() != space.rank {
            return false;
        }
        if space.all_weights().iter().any(|w| self.pair(w) == 0) {
            return false;
        }
        let values: BTreeSet<Rational> = space.points.iter().map(|p| self.pair_moment(&p.moment)).collect();
        values.len() == space.points.len()
    }
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

fn determinant(m: &[Vec<i64>]) -> BigInt {
    // Bareiss fraction-free elimination
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer matrix `C` with first row `ξ` and `det C = ±1`.
///
/// Reduces `ξ` to `e_1` by integer row operations `M` while maintaining
/// `B = M⁻¹`; the first column of `B` is then `ξ` and `C = Bᵀ`.
pub fn unimodular_completion(xi: &[i64]) -> Result<Vec<Vec<i64>>> {
    let r = xi.len();
    if r == 0 || gcd_all(xi) != 1 {
        return Err(Error::InvalidTorus {
            msg: format!("{:?} is not a primitive vector", xi),
        });
    }
    let mut v = xi.to_vec();
    let mut b: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    loop {
        let nonzero: Vec<usize> = (0..r).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 {
            break;
        }
        let i = *nonzero.iter().min_by_key(|&&i| v[i].abs()).expect("nonzero");
        for &j in &nonzero {
            if j == i {
                continue;
            }
            let q = v[j].div_euclid(v[i]);
            v[j] -= q * v[i];
            for row in b.iter_mut() {
                row[i] += q * row[j];
            }
        }
    }
    let i = (0..r).find(|&i| v[i] != 0).expect("primitive");
    if i != 0 {
        v.swap(0, i);
        for row in b.iter_mut() {
            row.swap(0, i);
        }
    }
    if v[0] < 0 {
        for row in b.iter_mut() {
            row[0] = -row[0];
        }
    }
    let c: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| b[j][i]).collect()).collect();
    debug_assert_eq!(c[0], xi);
    debug_assert_eq!(determinant(&c).abs(), BigInt::one());
    Ok(c)
}

/// Primitive nonnegative vectors of length `r` with sup-norm `s`, in
/// lexicographic order.
fn candidates(r: usize, s: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    loop {
        if cur.iter().any(|&c| c == s) && gcd_all(&cur) == 1 {
            out.push(cur.clone());
        }
        let mut k = r;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < s {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// First generic circle in the fixed enumeration order: sup-norm
/// `1..=bound`, then lexicographic over nonnegative entries.
pub fn generic_circle(space: &TorusSpace, bound: u32) -> Result<CircleChoice> {
    for s in 1..=i64::from(bound) {
        for xi in candidates(space.rank, s) {
            let choice = CircleChoice::new(xi)?;
            if choice.is_generic_for(space) {
                return Ok(choice);
            }
        }
    }
    Err(Error::SearchExhausted { bound })
}

/// Shift placing 0 midway between the two sorted circle moments around the
/// median.
pub fn default_shift(space: &TorusSpace, choice: &CircleChoice) -> Rational {
    let mut values: Vec<Rational> = space.points.iter().map(|p| choice.pair_moment(&p.moment)).collect();
    values.sort();
    values.dedup();
    if values.len() < 2 {
        return -values.first().cloned().unwrap_or_else(Rational::zero) + rat(1);
    }
    let k = values.len() / 2;
    -(&values[k - 1] + &values[k]) / rat(2)
}

/// Rewrites the torus data along `ξ`: weights through the completion and
/// moments `⟨μ(F), ξ⟩ + shift`.
pub fn to_circle_space(space: &TorusSpace, choice: &CircleChoice, shift: &Rational) -> Result<Space> {
    if !choice.is_generic_for(space) {
        return Err(Error::InvalidTorus {
            msg: format!("circle {:?} is not generic", choice.xi),
        });
    }
    let points = space
        .points
        .iter()
        .map(|p| {
            let weights = p
                .weights
                .iter()
                .map(|w| choice.character_form(w))
                .collect::<Result<Vec<_>>>()?;
            Ok(FixedPoint::new(p.label.clone(), choice.pair_moment(&p.moment) + shift, weights))
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = space.points[0].weights.len();
    Space::new(space.rank - 1, dim, points, &SpaceOptions::default())
}

/// `∏_{j ∈ js} (ĥ_f − Λ_j)` where `ĥ_f|_p = Λ_{coord_f(p)}`.
pub fn hyperplane_product(
    space: &TorusSpace,
    choice: &CircleChoice,
    factor: usize,
    js: &[usize],
    name: impl Into<String>,
) -> EquivClass {
    let f = space.factors[factor];
    let ny = space.rank - 1;
    let mut restrictions = BTreeMap::new();
    for p in &space.points {
        let h = f.character(space.rank, p.coords[factor]);
        let mut acc = Poly::one(ny);
        for &j in js {
            let d: Vec<i64> = h.iter().zip(f.character(space.rank, j)).map(|(a, b)| a - b).collect();
            acc = &acc * &choice.character_poly(&d);
        }
        restrictions.insert(p.label.clone(), acc);
    }
    EquivClass::new(name, js.len() as u32, restrictions)
}

/// Classes `one` and the hyperplane classes `h1, h2, ..` (one per factor).
pub fn standard_classes(space: &TorusSpace, choice: &CircleChoice) -> Vec<EquivClass> {
    let ny = space.rank - 1;
    let one = EquivClass::new(
        "one",
        0,
        space.points.iter().map(|p| (p.label.clone(), Poly::one(ny))).collect(),
    );
    let mut out = vec![one];
    for k in 0..space.factors.len() {
        out.push(hyperplane_product(space, choice, k, &[0], format!("h{}", k + 1)));
    }
    out
}

/// Factor points ordered by their `ξ`-pairing.
fn factor_order(space: &TorusSpace, choice: &CircleChoice, factor: usize) -> Vec<usize> {
    let f = space.factors[factor];
    let mut idx: Vec<usize> = (0..=f.n).collect();
    idx.sort_by_key(|&i| choice.pair(&f.character(space.rank, i)));
    idx
}

/// Canonical classes: per factor `α⁻(p_i) = ∏_{j earlier}(Λ_j − ĥ)` and
/// `α⁺(p_i) = ∏_{j later}(Λ_j − ĥ)`, multiplied over the factors. The
/// result is accepted only if [`validate_basis`] passes on `circle`.
pub fn canonical_basis(space: &TorusSpace, choice: &CircleChoice, circle: &Space) -> Result<CanonicalBasis> {
    let ny = space.rank - 1;
    let orders: Vec<Vec<usize>> = (0..space.factors.len()).map(|k| factor_order(space, choice, k)).collect();
    let mut basis = CanonicalBasis::default();
    for p in &space.points {
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for (k, order) in orders.iter().enumerate() {
            let pos = order.iter().position(|&i| i == p.coords[k]).expect("coordinate in factor");
            let (earlier, later) = (&order[..pos], &order[pos + 1..]);
            let sign = |n: usize| if n % 2 == 0 { rat(1) } else { rat(-1) };
            minus.push(
                hyperplane_product(space, choice, k, earlier, "")
                    .mul_poly(&Poly::constant(ny, sign(earlier.len()))),
            );
            plus.push(
                hyperplane_product(space, choice, k, later, "").mul_poly(&Poly::constant(ny, sign(later.len()))),
            );
        }
        let fold = |cs: Vec<EquivClass>, name: String| {
            cs.into_iter()
                .reduce(|a, b| a.product(&b))
                .expect("at least one factor")
                .renamed(name)
        };
        basis
            .alpha_minus
            .insert(p.label.clone(), fold(minus, format!("alpha_minus({})", p.label)));
        basis
            .alpha_plus
            .insert(p.label.clone(), fold(plus, format!("alpha_plus({})", p.label)));
    }
    let report = validate_basis(circle, &basis);
    if let Some(v) = report.violations.first() {
        return Err(Error::BasisVerification {
            msg: format!("{:?}", v),
        });
    }
    Ok(basis)
}

/// A torus space together with a certified circle, the reduced circle
/// space, its canonical basis and the standard classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ToricModel {
    pub torus: TorusSpace,
    pub choice: CircleChoice,
    pub shift: Rational,
    pub space: Space,
    pub basis: CanonicalBasis,
    pub classes: Vec<EquivClass>,
}

impl ToricModel {
    pub fn build(torus: TorusSpace, bound: u32, shift: Option<Rational>) -> Result<Self> {
        let choice = generic_circle(&torus, bound)?;
        let shift = shift.unwrap_or_else(|| default_shift(&torus, &choice));
        Self::with_circle(torus, choice, shift)
    }

    pub fn with_circle(torus: TorusSpace, choice: CircleChoice, shift: Rational) -> Result<Self> {
        let space = to_circle_space(&torus, &choice, &shift)?;
        let basis = canonical_basis(&torus, &choice, &space)?;
        let classes = standard_classes(&torus, &choice);
        Ok(ToricModel {
            torus,
            choice,
            shift,
            space,
            basis,
            classes,
        })
    }

    pub fn class(&self, name: &str) -> Option<&EquivClass> {
        self.classes
            .iter()
            .chain(self.basis.classes())
            .find(|c| c.name() == name)
    }
}

/// Names `h1`, `h2`, .. of the hyperplane classes, for display.
pub fn hyperplane_names(space: &TorusSpace) -> Vec<String> {
    (1..=space.factors.len()).map(|k| format!("h{}", k)).collect()
}

/// Signed pairing of every weight with `ξ`, for reports.
pub fn weight_pairings(space: &TorusSpace, choice: &CircleChoice) -> Vec<(Vec<i64>, i64)> {
    space
        .all_weights()
        .into_iter()
        .map(|w| {
            let v = choice.pair(&w);
            (w, v)
        })
        .collect()
}

impl core::fmt::Display for CircleChoice {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let xs: Vec<String> = self.xi.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", xs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, ratio};
    use crate::localization::{abbv_sum, is_polynomial};

    #[test]
    fn cp1_rewrites_to_the_standard_fixture() {
        let t = cpn_space(1).unwrap();
        let c = generic_circle(&t, 4).unwrap();
        assert_eq!(c.xi, vec![1]);
        assert_eq!(c.completion, vec![vec![1]]);
        let shift = default_shift(&t, &c);
        assert_eq!(shift, ratio(-1, 2));
        let s = to_circle_space(&t, &c, &shift).unwrap();
        let p0 = s.point("p0").unwrap();
        assert_eq!(p0.moment(), &ratio(-1, 2));
        assert_eq!(p0.weights(), &[LinForm::from_ints(&[1]).unwrap()]);
        assert_eq!(s.point("p1").unwrap().weights(), &[LinForm::from_ints(&[-1]).unwrap()]);
    }

    #[test]
    fn cp2_circle_is_one_two() {
        let t = cpn_space(2).unwrap();
        let c = generic_circle(&t, 4).unwrap();
        assert_eq!(c.xi, vec![1, 2]);
        let mut pairs: Vec<i64> = weight_pairings(&t, &c).into_iter().map(|(_, v)| v).collect();
        pairs.sort();
        assert_eq!(pairs, vec![-2, -1, -1, 1, 1, 2]);
        let shift = default_shift(&t, &c);
        let s = to_circle_space(&t, &c, &shift).unwrap();
        let ms: Vec<Rational> = ["p0", "p1", "p2"].iter().map(|l| s.point(l).unwrap().moment().clone()).collect();
        assert_eq!(ms, vec![ratio(-1, 2), ratio(1, 2), ratio(3, 2)]);
    }

    #[test]
    fn completion_is_unimodular() {
        for xi in [vec![1, 2], vec![3, 5], vec![2, 3, 7], vec![-4, 9], vec![0, 0, 1], vec![6, 10, 15]] {
            let c = unimodular_completion(&xi).unwrap();
            assert_eq!(c[0], xi);
            assert_eq!(determinant(&c).abs(), BigInt::one());
        }
        assert!(unimodular_completion(&[2, 4]).is_err());
    }

    #[test]
    fn rank_one_completion_is_identity() {
        let c = CircleChoice::new(vec![1]).unwrap();
        assert_eq!(c.coordinates(&[-3]), vec![-3]);
    }

    #[test]
    fn hyperplane_example_on_cp2() {
        let t = cpn_space(2).unwrap();
        let c = generic_circle(&t, 4).unwrap();
        let a = hyperplane_product(&t, &c, 0, &[0], "a1");
        // Λ1 = e1 ↦ (1, 0), Λ2 = e2 ↦ (2, 1) under C = [[1,2],[0,1]]
        assert_eq!(c.completion, vec![vec![1, 2], vec![0, 1]]);
        assert!(a.at("p0").unwrap().is_zero());
        assert_eq!(a.at("p1").unwrap(), &parse_poly("X", 1).unwrap());
        assert_eq!(a.at("p2").unwrap(), &parse_poly("2*X + Y1", 1).unwrap());
    }

    #[test]
    fn bases_validate_and_are_abbv_polynomial() {
        for n in 1..=3 {
            let m = ToricModel::build(cpn_space(n).unwrap(), 8, None).unwrap();
            let classes: Vec<&EquivClass> = m.basis.classes().collect();
            for a in &classes {
                assert!(is_polynomial(&abbv_sum(&m.space, a).unwrap()));
                for b in &classes {
                    assert!(is_polynomial(&abbv_sum(&m.space, &a.product(b)).unwrap()));
                }
            }
        }
    }

    #[test]
    fn product_of_projective_lines() {
        let p1 = cpn_space(1).unwrap();
        let t = product_space(&p1, &p1).unwrap();
        assert_eq!(t.points().len(), 4);
        assert!(t.points().iter().all(|p| p.weights.len() == 2));
        let p = t.points().iter().find(|p| p.label == "p1.p0").unwrap();
        assert_eq!(p.moment, vec![rat(1), rat(0)]);
        let m = ToricModel::build(t, 8, None).unwrap();
        assert_eq!(m.choice.xi, vec![1, 2]);
        assert_eq!(m.basis.alpha_minus.len(), 4);
        assert_eq!(hyperplane_names(&m.torus), vec!["h1", "h2"]);
    }

    #[test]
    fn antipodal_weights_find_a_circle() {
        let w = |a: i64, b: i64| vec![a, b];
        let points = vec![
            TorusPoint {
                label: "a".into(),
                moment: vec![rat(0), rat(0)],
                weights: vec![w(1, 0), w(-1, 0), w(0, 1), w(0, -1), w(1, -1), w(-1, 1)],
                coords: vec![],
            },
            TorusPoint {
                label: "b".into(),
                moment: vec![rat(1), rat(1)],
                weights: vec![w(1, 0), w(-1, 0), w(0, 1), w(0, -1), w(1, -1), w(-1, 1)],
                coords: vec![],
            },
        ];
        let t = TorusSpace::new(2, points, vec![]).unwrap();
        let c = generic_circle(&t, 3).unwrap();
        assert!(c.is_generic_for(&t));
        assert_eq!(c.xi, vec![1, 2]);
        assert!(matches!(generic_circle(&t, 1), Err(Error::SearchExhausted { bound: 1 })));
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(candidates(2, 1), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(candidates(2, 2), vec![vec![1, 2], vec![2, 1]]);
    }
}
