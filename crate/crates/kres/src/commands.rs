use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use kres_core::algebra::{infer_num_y_vars, parse_factored, parse_rational, Rational};
use kres_core::localization::{pairing, res_gk, res_plus, validate_class, ClassFailure, EquivClass, SpaceOptions};
use kres_core::morse::{kernel_test, monomial_test_family, residue_criterion, validate_basis, KernelVerdict};
use kres_core::stages::{kernel_via_stages, stage_consistency_check, ConsistencyIssue, StageVerdict};
use kres_core::toric::{cpn_space, product_space, ToricModel, TorusSpace};

use crate::io::{load_chain, load_space, load_torus, SpaceFile};
use crate::report::{self, envelope, Report, Status};

pub const DEFAULT_BOUND: u32 = 16;

fn finish(command: Vec<String>, status: Status, body: Value, human: String, start: Instant) -> Report {
    let payload = envelope(&command, status, body);
    Report {
        command,
        status,
        payload,
        human,
        elapsed: start.elapsed(),
    }
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().filter(|s| !s.is_empty()).map(|s| s.to_string()).collect()
}

pub fn validate(space_file: &Path, basis_file: Option<&Path>) -> Result<Report> {
    let start = Instant::now();
    let command = argv(&[
        "validate",
        &space_file.display().to_string(),
        &basis_file.map(|p| p.display().to_string()).unwrap_or_default(),
    ]);
    let loaded = load_space(space_file, basis_file, &SpaceOptions::default())?;
    let space = &loaded.space;
    let mut human = format!(
        "space: {} fixed points, {} Y variables, half-dimension {}\n",
        space.points().len(),
        space.num_y_vars(),
        space.dim_half()
    );
    let mut ok = true;

    let mut all: Vec<EquivClass> = loaded.classes.values().cloned().collect();
    if let Some(b) = &loaded.basis {
        all.extend(b.classes().cloned());
    }
    let mut classes = Map::new();
    for c in &all {
        let r = validate_class(space, c, &all);
        let entry = match &r.failure {
            None => json!({ "ok": true, "witnesses_checked": r.witnesses_checked }),
            Some(ClassFailure::Structure(e)) => json!({ "ok": false, "error": e.to_string() }),
            Some(ClassFailure::NotPolynomial { witness, sum }) => json!({
                "ok": false,
                "error": "localization sum is not polynomial",
                "witness": witness,
                "sum": report::fr(sum),
            }),
        };
        ok &= r.passed();
        let _ = writeln!(human, "class {}: {}", c.name(), if r.passed() { "ok" } else { "FAILED" });
        if let Some(f) = &r.failure {
            let _ = writeln!(human, "  {:?}", f);
        }
        classes.insert(c.name().to_string(), entry);
    }

    let mut body = json!({
        "space": {
            "points": space.points().len(),
            "num_y_vars": space.num_y_vars(),
            "dim_half": space.dim_half(),
        },
        "classes": classes,
    });
    if let Some(b) = &loaded.basis {
        let r = validate_basis(space, b);
        ok &= r.passed();
        let violations: Vec<String> = r.violations.iter().map(|v| format!("{:?}", v)).collect();
        let _ = writeln!(
            human,
            "basis: {}",
            if r.passed() { "ok".to_string() } else { format!("{} violations", violations.len()) }
        );
        for v in &violations {
            let _ = writeln!(human, "  {}", v);
        }
        body["basis"] = json!({ "ok": r.passed(), "violations": violations });
    }
    let status = if ok { Status::Pass } else { Status::Invalid };
    Ok(finish(command, status, body, human, start))
}

pub fn residue(expr: &str) -> Result<Report> {
    let start = Instant::now();
    let text = if Path::new(expr).is_file() {
        std::fs::read_to_string(expr).with_context(|| format!("reading {}", expr))?
    } else {
        expr.to_string()
    };
    let text = text.trim();
    let ny = infer_num_y_vars(text).map_err(|e| anyhow!("`{}`: {}", text, e))?;
    let h = parse_factored(text, ny).map_err(|e| anyhow!("`{}`: {}", text, e))?;
    let plus = res_plus(&h)?;
    let gk = res_gk(&h)?;
    let equal = plus.value_eq(&gk);
    let human = format!(
        "h       = {}\nres_plus = {}\nres_gk   = {}\nequal    = {}\n",
        h.to_text(),
        plus.to_text(),
        gk.to_text(),
        equal
    );
    let body = json!({
        "input": h.to_text(),
        "res_plus": report::fr(&plus),
        "res_gk": report::fr(&gk),
        "equal": equal,
    });
    let status = if equal { Status::Pass } else { Status::Reject };
    Ok(finish(argv(&["residue", expr]), status, body, human, start))
}

pub fn pairing_cmd(space_file: &Path, basis_file: Option<&Path>, eta: &str, zeta: &str) -> Result<Report> {
    let start = Instant::now();
    let loaded = load_space(space_file, basis_file, &SpaceOptions::default())?;
    let (a, b) = (loaded.class(eta)?, loaded.class(zeta)?);
    a.validate(&loaded.space)?;
    b.validate(&loaded.space)?;
    let p = pairing(&loaded.space, &a, &b)?;
    let mut human = format!("<{}, {}> = {}\n", a.name(), b.name(), p.value.to_text());
    let mut body = json!({
        "eta": a.name(),
        "zeta": b.name(),
        "value": report::fr(&p.value),
        "is_polynomial": p.is_polynomial,
    });
    if !p.is_polynomial {
        let w = "pairing is not polynomial in Y; the inputs are probably not genuine classes";
        body["warning"] = json!(w);
        let _ = writeln!(human, "warning: {}", w);
    }
    Ok(finish(
        argv(&["pairing", &space_file.display().to_string(), eta, zeta]),
        Status::Pass,
        body,
        human,
        start,
    ))
}

fn verdict_json(v: &KernelVerdict) -> Value {
    let d = v.decomposition();
    let frmap = |m: &std::collections::BTreeMap<String, kres_core::FactoredRational>| -> Map<String, Value> {
        m.iter().map(|(k, x)| (k.clone(), report::fr(x))).collect()
    };
    let mut out = json!({
        "in_kernel": v.in_kernel(),
        "decomposition": {
            "expansion": d.expansion.iter().map(|(k, p)| (k.clone(), json!(p.to_text()))).collect::<Map<_, _>>(),
            "corrections": d.corrections.iter().map(|(k, r)| json!([k, r.to_text()])).collect::<Vec<_>>(),
            "minus_coeffs": frmap(&d.minus_coeffs),
            "plus_coeffs": frmap(&d.plus_coeffs),
            "eta_minus": frmap(&d.eta_minus),
            "eta_plus": frmap(&d.eta_plus),
        },
    });
    match v {
        KernelVerdict::InKernel {
            xi_plus,
            xi_minus,
            plus_coeffs,
            ..
        } => {
            out["xi_plus"] = report::class(xi_plus);
            out["xi_minus"] = report::class(xi_minus);
            out["xi_plus_coeffs"] = plus_coeffs
                .iter()
                .map(|(k, p)| (k.clone(), json!(p.to_text())))
                .collect::<Map<_, _>>()
                .into();
        }
        KernelVerdict::NotInKernel { witness, .. } => {
            out["witness"] = json!({
                "point": witness.point,
                "coefficient": report::fr(&witness.coefficient),
                "multiplier": witness.multiplier.to_text(),
                "residue": report::fr(&witness.residue),
                "zeta": report::class(&witness.zeta),
                "pairing": report::fr(&witness.pairing),
            });
        }
    }
    out
}

pub fn kernel(
    space_file: &Path,
    basis_file: Option<&Path>,
    eta: &str,
    degree: Option<u32>,
    expect_kernel: bool,
) -> Result<Report> {
    let start = Instant::now();
    let loaded = load_space(space_file, basis_file, &SpaceOptions::default())?;
    let basis = loaded
        .basis
        .as_ref()
        .ok_or_else(|| anyhow!("no canonical basis: pass a basis file or use a space file with `alpha_minus`/`alpha_plus`"))?;
    let r = validate_basis(&loaded.space, basis);
    if let Some(v) = r.violations.first() {
        bail!("canonical basis fails validation: {:?}", v);
    }
    let class = loaded.class(eta)?;
    class.validate(&loaded.space)?;
    let v = kernel_test(&loaded.space, basis, &class)?;
    let mut body = verdict_json(&v);
    let mut human = String::new();
    match &v {
        KernelVerdict::InKernel { xi_plus, xi_minus, .. } => {
            let _ = writeln!(human, "{} is in the kernel: eta = xi_minus + xi_plus", class.name());
            for (l, p) in xi_plus.restrictions() {
                let _ = writeln!(human, "  {:>8}: xi_plus = {}, xi_minus = {}", l, p, xi_minus.at(l).expect("total"));
            }
        }
        KernelVerdict::NotInKernel { witness, .. } => {
            let _ = writeln!(human, "{} is NOT in the kernel", class.name());
            let _ = writeln!(human, "  coefficient at {}: {}", witness.point, witness.coefficient.to_text());
            let _ = writeln!(human, "  zeta = ({}) * alpha_plus({})", witness.multiplier, witness.point);
            let _ = writeln!(human, "  pairing <eta, zeta> = {}", witness.pairing.to_text());
        }
    }
    if let Some(d) = degree {
        let family = monomial_test_family(&loaded.space, basis, d);
        let c = residue_criterion(&loaded.space, &class, &family)?;
        let agree = c.passed() == v.in_kernel();
        body["criterion"] = json!({
            "degree": d,
            "checked": c.checked,
            "passed": c.passed(),
            "failure": c.failure.as_ref().map(|(z, x)| json!({ "zeta": z, "value": x.to_text() })),
            "agrees": agree,
        });
        let _ = writeln!(
            human,
            "residue criterion (degree {}): {} after {} test classes; {}",
            d,
            if c.passed() { "all zero" } else { "nonzero" },
            c.checked,
            if agree { "agrees" } else { "DISAGREES" }
        );
    }
    let status = if expect_kernel && !v.in_kernel() {
        Status::Reject
    } else {
        Status::Pass
    };
    let mut cmd = vec!["kernel".to_string(), space_file.display().to_string()];
    if let Some(b) = basis_file {
        cmd.push(b.display().to_string());
    }
    cmd.push(eta.to_string());
    Ok(finish(cmd, status, body, human, start))
}

pub fn stages(chain_file: &Path, class: &str, expect_kernel: bool) -> Result<Report> {
    let start = Instant::now();
    let chain = load_chain(chain_file)?;
    let consistency = stage_consistency_check(&chain, class)?;
    let verdict = kernel_via_stages(&chain, class)?;
    let witnesses: Vec<Value> = verdict
        .witnesses()
        .iter()
        .map(|w| {
            json!({
                "stage": w.stage,
                "class": w.class,
                "zeta": w.zeta,
                "power": w.power,
                "coefficient": w.coefficient.to_string(),
            })
        })
        .collect();
    let issues: Vec<String> = consistency
        .issues
        .iter()
        .map(|i| match i {
            ConsistencyIssue::NotPolynomial { stage, class } => {
                format!("stage {}: localization sum of {} has negative powers", stage, class)
            }
            ConsistencyIssue::PairingMismatch {
                stage,
                first,
                second,
                previous,
                current,
            } => format!(
                "stage {}: pairing of {} and {} is {} but the previous stage gives {}",
                stage, first, second, current, previous
            ),
        })
        .collect();
    let mut human = String::new();
    match &verdict {
        StageVerdict::Detected { stage, .. } => {
            let _ = writeln!(human, "{}: in the kernel, detected at stage {}", class, stage);
        }
        StageVerdict::NotDetected { .. } => {
            let _ = writeln!(human, "{}: not detected at any stage (not in the kernel)", class);
        }
    }
    for w in verdict.witnesses() {
        let _ = writeln!(
            human,
            "  stage {}: residue with {}*X^{} is {}",
            w.stage, w.zeta, w.power, w.coefficient
        );
    }
    let _ = writeln!(
        human,
        "consistency: {}",
        if consistency.passed() { "ok" } else { "FAILED" }
    );
    for i in &issues {
        let _ = writeln!(human, "  {}", i);
    }
    let body = json!({
        "class": class,
        "stages": chain.len(),
        "detected_at": verdict.detected_at(),
        "witnesses": witnesses,
        "trace": chain.trace(class),
        "consistency": { "ok": consistency.passed(), "issues": issues },
    });
    let status = if !consistency.passed() {
        Status::Invalid
    } else if expect_kernel && verdict.detected_at().is_none() {
        Status::Reject
    } else {
        Status::Pass
    };
    Ok(finish(
        argv(&["stages", "check", &chain_file.display().to_string(), class]),
        status,
        body,
        human,
        start,
    ))
}

fn parse_shift(shift: Option<&str>) -> Result<Option<Rational>> {
    shift
        .map(|s| parse_rational(s).ok_or_else(|| anyhow!("`{}` is not a rational number", s)))
        .transpose()
}

fn toric_report(command: Vec<String>, model: &ToricModel, start: Instant) -> Result<Report> {
    let bundle = SpaceFile::from_model(model);
    let payload = serde_json::to_value(&bundle)?;
    let mut human = format!(
        "circle xi = {}, shift = {}, {} fixed points\n",
        model.choice, model.shift, model.space.points().len()
    );
    for p in model.space.by_moment() {
        let ws: Vec<String> = p.weights().iter().map(|w| w.to_text()).collect();
        let _ = writeln!(human, "  {:>8}  moment {:>6}  weights {}", p.label(), p.moment().to_string(), ws.join(", "));
    }
    Ok(Report {
        command,
        status: Status::Pass,
        payload,
        human,
        elapsed: start.elapsed(),
    })
}

pub fn build_model(torus: TorusSpace, bound: u32, shift: Option<&str>) -> Result<ToricModel> {
    Ok(ToricModel::build(torus, bound, parse_shift(shift)?)?)
}

pub fn toric_cpn(n: usize, bound: u32, shift: Option<&str>) -> Result<Report> {
    let start = Instant::now();
    let model = build_model(cpn_space(n)?, bound, shift)?;
    let mut cmd = vec!["toric".into(), "cpn".into(), n.to_string(), "--bound".into(), bound.to_string()];
    if let Some(s) = shift {
        cmd.extend(["--shift".to_string(), s.to_string()]);
    }
    toric_report(cmd, &model, start)
}

pub fn toric_product(a: &Path, b: &Path, bound: u32, shift: Option<&str>) -> Result<Report> {
    let start = Instant::now();
    let (ta, _) = load_torus(a)?;
    let (tb, _) = load_torus(b)?;
    let model = build_model(product_space(&ta, &tb)?, bound, shift)?;
    let mut cmd = vec![
        "toric".into(),
        "product".into(),
        a.display().to_string(),
        b.display().to_string(),
        "--bound".into(),
        bound.to_string(),
    ];
    if let Some(s) = shift {
        cmd.extend(["--shift".to_string(), s.to_string()]);
    }
    toric_report(cmd, &model, start)
}
