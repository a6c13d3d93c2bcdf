//! Reduction in stages: the one-variable residue test at each stage and
//! the staged kernel walk over explicitly supplied stage data.
//!
//! At stage `j` every fixed point carries an Euler class `c_F · X_j^{d_F}`
//! and class restrictions, which are projected onto `X_j` by setting every
//! other variable to zero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::localization::{EquivClass, Space};

/// Sets every variable except `X` to zero. The result has no Y variables.
pub fn pi_project(p: &Poly) -> Poly {
    p.project_to_x()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StagePoint {
    pub label: String,
    pub moment: Rational,
    pub euler_exponent: u32,
    pub euler_coeff: Rational,
    pub restrictions: BTreeMap<String, Poly>,
}

impl StagePoint {
    fn restriction(&self, stage: usize, name: &str) -> Result<Poly> {
        self.restrictions
            .get(name)
            .map(pi_project)
            .ok_or_else(|| Error::UnknownStageClass {
                stage,
                name: name.to_string(),
            })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StageSpace {
    index: usize,
    points: Vec<StagePoint>,
    transfer: BTreeMap<String, String>,
}

impl StageSpace {
    pub fn new(index: usize, points: Vec<StagePoint>, transfer: BTreeMap<String, String>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidStage { stage: index, msg });
        if points.is_empty() {
            return bad("no fixed points".into());
        }
        let names: BTreeSet<&String> = points[0].restrictions.keys().collect();
        let mut labels = BTreeSet::new();
        for p in &points {
            if !labels.insert(p.label.as_str()) {
                return bad(format!("duplicate label `{}`", p.label));
            }
            if p.euler_coeff.is_zero() {
                return bad(format!("`{}` has zero Euler coefficient", p.label));
            }
            if p.moment.is_zero() {
                return bad(format!("`{}` has moment 0", p.label));
            }
            if p.restrictions.keys().collect::<BTreeSet<_>>() != names {
                return bad(format!("`{}` does not restrict the same classes as `{}`", p.label, points[0].label));
            }
        }
        Ok(StageSpace {
            index,
            points,
            transfer,
        })
    }

    /// Single stage from a circle space, projecting out every Y variable:
    /// `e_F` becomes `(∏ m_k) X^n`.
    pub fn from_space(space: &Space, classes: &[EquivClass]) -> Result<Self> {
        let points = space
            .points()
            .iter()
            .map(|f| {
                let coeff = f
                    .weights()
                    .iter()
                    .fold(Rational::from_integer(1.into()), |acc, w| acc * w.x_coeff());
                let mut restrictions = BTreeMap::new();
                for c in classes {
                    let r = c.at(f.label()).ok_or_else(|| Error::MissingRestriction {
                        class: c.name().to_string(),
                        label: f.label().to_string(),
                    })?;
                    restrictions.insert(c.name().to_string(), pi_project(r));
                }
                Ok(StagePoint {
                    label: f.label().to_string(),
                    moment: f.moment().clone(),
                    euler_exponent: f.weights().len() as u32,
                    euler_coeff: coeff,
                    restrictions,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StageSpace::new(1, points, BTreeMap::new())
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn points(&self) -> &[StagePoint] {
        &self.points
    }

    pub fn transfer(&self) -> &BTreeMap<String, String> {
        &self.transfer
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.points[0].restrictions.keys().map(String::as_str)
    }

    pub fn has_class(&self, name: &str) -> bool {
        self.points[0].restrictions.contains_key(name)
    }

    pub fn max_euler_exponent(&self) -> u32 {
        self.points.iter().map(|p| p.euler_exponent).max().unwrap_or(0)
    }

    fn require(&self, name: &str) -> Result<()> {
        if self.has_class(name) {
            Ok(())
        } else {
            Err(Error::UnknownStageClass {
                stage: self.index,
                name: name.to_string(),
            })
        }
    }

    /// Coefficient of `X^k` in `Σ_F p_F / (c_F X^{d_F})` over the points
    /// selected by `keep`.
    fn laurent_coeff<F>(&self, k: i64, keep: F, p: impl Fn(&StagePoint) -> Result<Poly>) -> Result<Rational>
    where
        F: Fn(&StagePoint) -> bool,
    {
        let mut acc = Rational::zero();
        for f in self.points.iter().filter(|f| keep(f)) {
            let e = k + i64::from(f.euler_exponent);
            if e < 0 {
                continue;
            }
            let c = p(f)?.coeff(&Monomial::new(alloc::vec![e as u32]));
            acc += c / &f.euler_coeff;
        }
        Ok(acc)
    }

    /// `Res_{X=0} Σ_{F∈𝓕₊} (ηζ X^t)|_F / e_F`.
    pub fn positive_residue(&self, eta: &str, zeta: &str, t: u32) -> Result<Rational> {
        let stage = self.index;
        self.laurent_coeff(
            -1 - i64::from(t),
            |f| f.moment.is_positive(),
            |f| Ok(&f.restriction(stage, eta)? * &f.restriction(stage, zeta)?),
        )
    }

    /// Full localization sum `Σ_F η|_F / e_F` as a Laurent polynomial,
    /// keyed by exponent.
    pub fn abbv_laurent(&self, at: impl Fn(&StagePoint) -> Poly) -> BTreeMap<i64, Rational> {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for f in &self.points {
            for (m, c) in at(f).terms() {
                let e = i64::from(m.exp(0)) - i64::from(f.euler_exponent);
                let v = out.entry(e).or_insert_with(Rational::zero);
                *v += c / &f.euler_coeff;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The same stage with every Euler coefficient multiplied by `s`.
    pub fn rescaled(&self, s: &Rational) -> StageSpace {
        let mut out = self.clone();
        for p in out.points.iter_mut() {
            p.euler_coeff = &p.euler_coeff * s;
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StageWitness {
    pub stage: usize,
    pub class: String,
    pub zeta: String,
    pub power: u32,
    pub coefficient: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResTest {
    pub checked: usize,
    pub witness: Option<StageWitness>,
}

impl ResTest {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Membership in the stage's residue kernel, tested against every stage
/// class times `X^t`, `t = 0..=D` with `D` the largest Euler exponent.
pub fn ker_res_test(stage: &StageSpace, eta: &str) -> Result<ResTest> {
    ker_res_test_with(stage, eta, 0)
}

/// As [`ker_res_test`] with `extra` additional powers of `X`.
pub fn ker_res_test_with(stage: &StageSpace, eta: &str, extra: u32) -> Result<ResTest> {
    stage.require(eta)?;
    let top = stage.max_euler_exponent() + extra;
    let mut checked = 0;
    for zeta in stage.class_names() {
        for t in 0..=top {
            checked += 1;
            let c = stage.positive_residue(eta, zeta, t)?;
            if !c.is_zero() {
                return Ok(ResTest {
                    checked,
                    witness: Some(StageWitness {
                        stage: stage.index,
                        class: eta.to_string(),
                        zeta: zeta.to_string(),
                        power: t,
                        coefficient: c,
                    }),
                });
            }
        }
    }
    Ok(ResTest { checked, witness: None })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StageChain {
    stages: Vec<StageSpace>,
}

impl StageChain {
    pub fn new(stages: Vec<StageSpace>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidStage {
                stage: 0,
                msg: "empty chain".into(),
            });
        }
        for (i, s) in stages.iter().enumerate() {
            if s.index != i + 1 {
                return Err(Error::InvalidStage {
                    stage: s.index,
                    msg: format!("expected stage index {}", i + 1),
                });
            }
        }
        Ok(StageChain { stages })
    }

    pub fn stages(&self) -> &[StageSpace] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Name of the image of `name` (a stage-1 class) at every stage, as far
    /// as the transfer maps reach.
    pub fn trace(&self, name: &str) -> Vec<Option<String>> {
        let mut out = Vec::with_capacity(self.stages.len());
        let mut cur = Some(name.to_string());
        for (i, s) in self.stages.iter().enumerate() {
            if i > 0 {
                cur = cur.and_then(|c| s.transfer.get(&c).cloned());
            }
            out.push(cur.clone());
        }
        out
    }

    pub fn with_stage(&self, i: usize, stage: StageSpace) -> StageChain {
        let mut out = self.clone();
        out.stages[i] = stage;
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StageVerdict {
    /// The first stage whose residue test passes.
    Detected { stage: usize, witnesses: Vec<StageWitness> },
    NotDetected { witnesses: Vec<StageWitness> },
}

impl StageVerdict {
    pub fn detected_at(&self) -> Option<usize> {
        match self {
            StageVerdict::Detected { stage, .. } => Some(*stage),
            StageVerdict::NotDetected { .. } => None,
        }
    }

    pub fn witnesses(&self) -> &[StageWitness] {
        match self {
            StageVerdict::Detected { witnesses, .. } | StageVerdict::NotDetected { witnesses } => witnesses,
        }
    }
}

/// Walks the chain, carrying `alpha` along the transfer maps, and stops at
/// the first stage where the projected class lies in the residue kernel.
pub fn kernel_via_stages(chain: &StageChain, alpha: &str) -> Result<StageVerdict> {
    let mut witnesses = Vec::new();
    let mut name = alpha.to_string();
    for (i, stage) in chain.stages.iter().enumerate() {
        if i > 0 {
            name = stage
                .transfer
                .get(&name)
                .cloned()
                .ok_or_else(|| Error::BrokenTransfer {
                    stage: stage.index,
                    name: name.clone(),
                })?;
        }
        let t = ker_res_test(stage, &name)?;
        match t.witness {
            None => {
                return Ok(StageVerdict::Detected {
                    stage: stage.index,
                    witnesses,
                })
            }
            Some(w) => witnesses.push(w),
        }
    }
    Ok(StageVerdict::NotDetected { witnesses })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConsistencyIssue {
    /// The localization sum of a class or product has a negative power.
    NotPolynomial { stage: usize, class: String },
    /// Residue pairings at stage `j - 1` and integrals at stage `j` are not
    /// proportional by a single nonzero constant.
    PairingMismatch {
        stage: usize,
        first: String,
        second: String,
        previous: Rational,
        current: Rational,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConsistencyReport {
    pub class: String,
    pub stages_checked: usize,
    pub issues: Vec<ConsistencyIssue>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks the supplied data against itself.
///
/// At each stage the localization sum of every class and every pairwise
/// product must be a polynomial in `X_j`. For `j ≥ 2`, for every pair of
/// stage `j-1` classes with transfer images, the positive residue of their
/// product at stage `j-1` and the degree-0 part of the localization sum of
/// the images at stage `j` must agree up to one nonzero constant per stage.
/// `name` must be a stage-1 class and have an image wherever the chain is
/// walked.
pub fn stage_consistency_check(chain: &StageChain, name: &str) -> Result<ConsistencyReport> {
    chain.stages[0].require(name)?;
    let mut issues = Vec::new();
    for stage in &chain.stages {
        let names: Vec<&str> = stage.class_names().collect();
        let j = stage.index;
        for (a_i, a) in names.iter().enumerate() {
            for b in names.iter().skip(a_i).map(Some).chain([None]) {
                let label = match b {
                    Some(b) => format!("{}*{}", a, b),
                    None => a.to_string(),
                };
                let sum = stage.abbv_laurent(|f| {
                    let ra = f.restriction(j, a).expect("class present");
                    match b {
                        Some(b) => &ra * &f.restriction(j, b).expect("class present"),
                        None => ra,
                    }
                });
                if sum.keys().any(|&e| e < 0) {
                    issues.push(ConsistencyIssue::NotPolynomial {
                        stage: j,
                        class: label,
                    });
                }
            }
        }
    }
    for w in chain.stages.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let names: Vec<(&str, &str)> = prev
            .class_names()
            .filter_map(|n| cur.transfer.get(n).map(|m| (n, m.as_str())))
            .collect();
        for (_, m) in &names {
            cur.require(m)?;
        }
        let mut ratio: Option<Rational> = None;
        for (i, (a, ta)) in names.iter().enumerate() {
            for (b, tb) in names.iter().skip(i) {
                let previous = prev.positive_residue(a, b, 0)?;
                let current = cur
                    .abbv_laurent(|f| {
                        &f.restriction(cur.index, ta).expect("checked") * &f.restriction(cur.index, tb).expect("checked")
                    })
                    .get(&0)
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let consistent = match (previous.is_zero(), current.is_zero()) {
                    (true, true) => true,
                    (false, false) => {
                        let r = &current / &previous;
                        match &ratio {
                            Some(known) => *known == r,
                            None => {
                                ratio = Some(r);
                                true
                            }
                        }
                    }
                    _ => false,
                };
                if !consistent {
                    issues.push(ConsistencyIssue::PairingMismatch {
                        stage: cur.index,
                        first: a.to_string(),
                        second: b.to_string(),
                        previous,
                        current,
                    });
                }
            }
        }
    }
    Ok(ConsistencyReport {
        class: name.to_string(),
        stages_checked: chain.stages.len(),
        issues,
    })
}
