//! JSON file formats: spaces with classes, canonical bases, stage chains and
//! toric bundles.
//!
//! Rationals are written as strings (`"3/2"`, `"-1"`); integers are also
//! accepted as JSON numbers on input. Polynomials use the text grammar of
//! `kres_core::algebra`. Maps are `BTreeMap`s so output keys are sorted.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use kres_core::algebra::{format_rational, infer_num_y_vars, parse_poly, parse_rational, LinForm, Poly, Rational};
use kres_core::localization::{EquivClass, FixedPoint, Space, SpaceOptions};
use kres_core::morse::CanonicalBasis;
use kres_core::stages::{StageChain, StagePoint, StageSpace};
use kres_core::toric::{CircleChoice, ProjectiveFactor, ToricModel, TorusPoint, TorusSpace};

/// A rational given either as a JSON integer or as a string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    Int(i64),
    Text(String),
}

impl RatValue {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RatValue::Int(n) => Ok(Rational::from_integer((*n).into())),
            RatValue::Text(s) => parse_rational(s).ok_or_else(|| anyhow!("`{}` is not a rational number", s)),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RatValue::Text(format_rational(r))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub label: String,
    pub moment: RatValue,
    pub weights: Vec<Vec<RatValue>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub restrictions: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusPointFile {
    pub label: String,
    pub moment: Vec<RatValue>,
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub coords: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    pub offset: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusFile {
    pub rank: usize,
    #[serde(default)]
    pub factors: Vec<FactorFile>,
    pub points: Vec<TorusPointFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleFile {
    pub xi: Vec<i64>,
    pub completion: Vec<Vec<i64>>,
    pub shift: RatValue,
}

/// Space file. The basis keys and the toric sections are optional, so one
/// file can serve as space file, basis file and toric bundle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub num_y_vars: usize,
    pub dim_half: usize,
    pub points: Vec<PointFile>,
    #[serde(default)]
    pub classes: BTreeMap<String, ClassFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_minus: Option<BTreeMap<String, ClassFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_plus: Option<BTreeMap<String, ClassFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<CircleFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub alpha_minus: BTreeMap<String, ClassFile>,
    pub alpha_plus: BTreeMap<String, ClassFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StagePointFile {
    pub label: String,
    pub moment: RatValue,
    pub euler_exponent: u32,
    pub euler_coeff: RatValue,
    pub restrictions: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageFile {
    pub j: usize,
    pub points: Vec<StagePointFile>,
    #[serde(default)]
    pub transfer: BTreeMap<String, String>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("schema error in {}", path.display()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    // round-trip through Value so every map is key-sorted
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

fn parse_in(text: &str, ny: usize, what: &str) -> Result<Poly> {
    parse_poly(text, ny).map_err(|e| anyhow!("{}: `{}`: {}", what, text, e))
}

impl ClassFile {
    pub fn to_class(&self, name: &str, ny: usize) -> Result<EquivClass> {
        let mut restrictions = BTreeMap::new();
        for (label, text) in &self.restrictions {
            restrictions.insert(label.clone(), parse_in(text, ny, &format!("class `{}` at `{}`", name, label))?);
        }
        let degree = match self.degree {
            Some(d) => d,
            None => restrictions.values().filter_map(Poly::total_degree).max().unwrap_or(0),
        };
        Ok(EquivClass::new(name, degree, restrictions))
    }

    pub fn from_class(c: &EquivClass) -> Self {
        ClassFile {
            degree: Some(c.degree()),
            restrictions: c.restrictions().iter().map(|(l, p)| (l.clone(), p.to_text())).collect(),
        }
    }
}

fn classes_of(map: &BTreeMap<String, ClassFile>, ny: usize, name: impl Fn(&str) -> String) -> Result<BTreeMap<String, EquivClass>> {
    map.iter()
        .map(|(k, c)| Ok((k.clone(), c.to_class(&name(k), ny)?)))
        .collect()
}

pub fn basis_from_maps(
    minus: &BTreeMap<String, ClassFile>,
    plus: &BTreeMap<String, ClassFile>,
    ny: usize,
) -> Result<CanonicalBasis> {
    Ok(CanonicalBasis {
        alpha_minus: classes_of(minus, ny, |l| format!("alpha_minus({})", l))?,
        alpha_plus: classes_of(plus, ny, |l| format!("alpha_plus({})", l))?,
    })
}

/// Everything read from a space file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub space: Space,
    pub classes: BTreeMap<String, EquivClass>,
    pub basis: Option<CanonicalBasis>,
}

impl Loaded {
    /// A class by name: user classes, then `alpha_minus(p)`/`alpha_plus(p)`,
    /// then a polynomial in the text grammar, taken as a constant class.
    pub fn class(&self, name: &str) -> Result<EquivClass> {
        if let Some(c) = self.classes.get(name) {
            return Ok(c.clone());
        }
        if let Some(b) = &self.basis {
            if let Some(c) = b.classes().find(|c| c.name() == name) {
                return Ok(c.clone());
            }
        }
        let p = parse_poly(name, self.space.num_y_vars())
            .map_err(|e| anyhow!("`{}` is neither a known class nor a polynomial ({})", name, e))?;
        let degree = p.total_degree().unwrap_or(0);
        if !p.is_homogeneous_of(degree) {
            bail!("polynomial `{}` is not homogeneous", name);
        }
        let c = EquivClass::constant(&self.space, name, &p);
        Ok(EquivClass::new(name, degree, c.restrictions().clone()))
    }
}

impl SpaceFile {
    pub fn to_space(&self, opts: &SpaceOptions) -> Result<Space> {
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let moment = p.moment.to_rational().with_context(|| format!("moment of `{}`", p.label))?;
            let mut weights = Vec::with_capacity(p.weights.len());
            for w in &p.weights {
                if w.len() != self.num_y_vars + 1 {
                    bail!(
                        "weight of `{}` has {} entries, expected {}",
                        p.label,
                        w.len(),
                        self.num_y_vars + 1
                    );
                }
                let coeffs = w.iter().map(RatValue::to_rational).collect::<Result<Vec<_>>>()?;
                weights.push(LinForm::from_coefficients(coeffs).with_context(|| format!("weight of `{}`", p.label))?);
            }
            points.push(FixedPoint::new(p.label.clone(), moment, weights));
        }
        Ok(Space::new(self.num_y_vars, self.dim_half, points, opts)?)
    }

    pub fn load(&self, opts: &SpaceOptions) -> Result<Loaded> {
        let space = self.to_space(opts)?;
        let ny = self.num_y_vars;
        let classes = classes_of(&self.classes, ny, str::to_string)?;
        let basis = match (&self.alpha_minus, &self.alpha_plus) {
            (Some(m), Some(p)) => Some(basis_from_maps(m, p, ny)?),
            (None, None) => None,
            _ => bail!("basis needs both `alpha_minus` and `alpha_plus`"),
        };
        Ok(Loaded { space, classes, basis })
    }

    pub fn from_space(space: &Space) -> Self {
        SpaceFile {
            num_y_vars: space.num_y_vars(),
            dim_half: space.dim_half(),
            points: space
                .points()
                .iter()
                .map(|p| PointFile {
                    label: p.label().to_string(),
                    moment: RatValue::from_rational(p.moment()),
                    weights: p
                        .weights()
                        .iter()
                        .map(|w| w.coefficients().map(rational_value).collect())
                        .collect(),
                })
                .collect(),
            classes: BTreeMap::new(),
            alpha_minus: None,
            alpha_plus: None,
            torus: None,
            circle: None,
        }
    }

    pub fn with_classes<'a>(mut self, classes: impl IntoIterator<Item = &'a EquivClass>) -> Self {
        for c in classes {
            self.classes.insert(c.name().to_string(), ClassFile::from_class(c));
        }
        self
    }

    pub fn with_basis(mut self, basis: &CanonicalBasis) -> Self {
        let conv = |m: &BTreeMap<String, EquivClass>| m.iter().map(|(l, c)| (l.clone(), ClassFile::from_class(c))).collect();
        self.alpha_minus = Some(conv(&basis.alpha_minus));
        self.alpha_plus = Some(conv(&basis.alpha_plus));
        self
    }

    /// Complete toric bundle of a built model.
    pub fn from_model(m: &ToricModel) -> Self {
        let mut f = SpaceFile::from_space(&m.space).with_classes(&m.classes).with_basis(&m.basis);
        f.torus = Some(TorusFile::from_torus(&m.torus));
        f.circle = Some(CircleFile {
            xi: m.choice.xi.clone(),
            completion: m.choice.completion.clone(),
            shift: RatValue::from_rational(&m.shift),
        });
        f
    }
}

/// Integral rationals as JSON numbers when they fit, otherwise strings.
fn rational_value(r: &Rational) -> RatValue {
    if r.is_integer() {
        if let Ok(n) = r.to_integer().to_string().parse::<i64>() {
            return RatValue::Int(n);
        }
    }
    RatValue::from_rational(r)
}

impl BasisFile {
    pub fn to_basis(&self, ny: usize) -> Result<CanonicalBasis> {
        basis_from_maps(&self.alpha_minus, &self.alpha_plus, ny)
    }
}

/// Reads a space file; `basis` may name a separate basis file.
pub fn load_space(path: &Path, basis: Option<&Path>, opts: &SpaceOptions) -> Result<Loaded> {
    let file: SpaceFile = read_json(path)?;
    let mut loaded = file.load(opts).with_context(|| format!("invalid space in {}", path.display()))?;
    if let Some(bp) = basis {
        let bf: BasisFile = read_json_lenient_basis(bp)?;
        loaded.basis = Some(
            bf.to_basis(loaded.space.num_y_vars())
                .with_context(|| format!("invalid basis in {}", bp.display()))?,
        );
    }
    Ok(loaded)
}

/// A basis file may also be a full space file carrying the basis keys.
fn read_json_lenient_basis(path: &Path) -> Result<BasisFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("schema error in {}", path.display()))?;
    let pick = |k: &str| {
        value
            .get(k)
            .cloned()
            .ok_or_else(|| anyhow!("schema error in {}: missing `{}`", path.display(), k))
    };
    Ok(BasisFile {
        alpha_minus: serde_json::from_value(pick("alpha_minus")?)
            .with_context(|| format!("schema error in {}: `alpha_minus`", path.display()))?,
        alpha_plus: serde_json::from_value(pick("alpha_plus")?)
            .with_context(|| format!("schema error in {}: `alpha_plus`", path.display()))?,
    })
}

impl TorusFile {
    pub fn to_torus(&self) -> Result<TorusSpace> {
        let points = self
            .points
            .iter()
            .map(|p| {
                Ok(TorusPoint {
                    label: p.label.clone(),
                    moment: p.moment.iter().map(RatValue::to_rational).collect::<Result<_>>()?,
                    weights: p.weights.clone(),
                    coords: p.coords.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let factors = self
            .factors
            .iter()
            .map(|f| ProjectiveFactor { offset: f.offset, n: f.n })
            .collect();
        Ok(TorusSpace::new(self.rank, points, factors)?)
    }

    pub fn from_torus(t: &TorusSpace) -> Self {
        TorusFile {
            rank: t.rank(),
            factors: t
                .factors()
                .iter()
                .map(|f| FactorFile { offset: f.offset, n: f.n })
                .collect(),
            points: t
                .points()
                .iter()
                .map(|p| TorusPointFile {
                    label: p.label.clone(),
                    moment: p.moment.iter().map(rational_value).collect(),
                    weights: p.weights.clone(),
                    coords: p.coords.clone(),
                })
                .collect(),
        }
    }
}

/// Torus section of a toric bundle, with its recorded circle if present.
pub fn load_torus(path: &Path) -> Result<(TorusSpace, Option<CircleChoice>)> {
    let file: SpaceFile = read_json(path)?;
    let torus = file
        .torus
        .as_ref()
        .ok_or_else(|| anyhow!("{} has no `torus` section", path.display()))?
        .to_torus()
        .with_context(|| format!("invalid torus in {}", path.display()))?;
    let circle = match &file.circle {
        Some(c) => Some(CircleChoice::with_completion(c.xi.clone(), c.completion.clone())?),
        None => None,
    };
    Ok((torus, circle))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChainFile {
    Stages(Vec<StageFile>),
    Wrapped { stages: Vec<StageFile> },
}

impl ChainFile {
    pub fn stages(&self) -> &[StageFile] {
        match self {
            ChainFile::Stages(s) | ChainFile::Wrapped { stages: s } => s,
        }
    }

    pub fn to_chain(&self) -> Result<StageChain> {
        let mut out = Vec::new();
        for s in self.stages() {
            let mut points = Vec::with_capacity(s.points.len());
            for p in &s.points {
                let mut restrictions = BTreeMap::new();
                for (name, text) in &p.restrictions {
                    let ny = infer_num_y_vars(text).map_err(|e| anyhow!("stage {}: `{}`: {}", s.j, text, e))?;
                    let what = format!("stage {} class `{}` at `{}`", s.j, name, p.label);
                    restrictions.insert(name.clone(), parse_in(text, ny, &what)?);
                }
                points.push(StagePoint {
                    label: p.label.clone(),
                    moment: p.moment.to_rational()?,
                    euler_exponent: p.euler_exponent,
                    euler_coeff: p.euler_coeff.to_rational()?,
                    restrictions,
                });
            }
            out.push(StageSpace::new(s.j, points, s.transfer.clone())?);
        }
        Ok(StageChain::new(out)?)
    }

    pub fn from_chain(chain: &StageChain) -> Self {
        ChainFile::Stages(
            chain
                .stages()
                .iter()
                .map(|s| StageFile {
                    j: s.index(),
                    points: s
                        .points()
                        .iter()
                        .map(|p| StagePointFile {
                            label: p.label.clone(),
                            moment: RatValue::from_rational(&p.moment),
                            euler_exponent: p.euler_exponent,
                            euler_coeff: RatValue::from_rational(&p.euler_coeff),
                            restrictions: p.restrictions.iter().map(|(k, v)| (k.clone(), v.to_text())).collect(),
                        })
                        .collect(),
                    transfer: s.transfer().clone(),
                })
                .collect(),
        )
    }
}

pub fn load_chain(path: &Path) -> Result<StageChain> {
    let file: ChainFile = read_json(path)?;
    file.to_chain().with_context(|| format!("invalid stage chain in {}", path.display()))
}
