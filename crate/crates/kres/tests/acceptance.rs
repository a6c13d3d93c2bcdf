//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kres_core::algebra::{divides_product, parse_poly, ratio, FactoredRational, LinForm, Monomial, Poly, Rational};
use kres_core::localization::{abbv_sum, is_polynomial, res_gk, res_plus, split_fixed_points, EquivClass};
use kres_core::morse::{
    decompose, kernel_test, max_pole_order, monomial_test_family, residue_criterion, residue_witness, KernelVerdict,
};
use kres_core::stages::{ker_res_test, kernel_via_stages, StageVerdict};
use kres_core::toric::{cpn_space, ToricModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6b72_6573;

type Check = Result<String, String>;

fn rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    ratio(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn nonzero(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    loop {
        let r = rational(rng, num, den);
        if r != ratio(0, 1) {
            return r;
        }
    }
}

fn linform(rng: &mut ChaCha8Rng, ny: usize) -> LinForm {
    let x = nonzero(rng, 5, 3);
    let ys = (0..ny).map(|_| rational(rng, 5, 3)).collect();
    LinForm::new(x, ys).unwrap()
}

fn poly(rng: &mut ChaCha8Rng, ny: usize, max_deg: u32, max_terms: usize) -> Poly {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n).map(|_| {
        let d = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; ny + 1];
        for _ in 0..d {
            e[rng.gen_range(0..=ny)] += 1;
        }
        (Monomial::new(e), rational(rng, 9, 4))
    });
    Poly::from_terms(ny, terms.collect::<Vec<_>>())
}

fn mono(ny: usize, x: u32) -> Poly {
    let mut e = vec![0; ny + 1];
    e[0] = x;
    Poly::monomial(ny, Monomial::new(e), ratio(1, 1))
}

fn model(n: usize) -> ToricModel {
    ToricModel::build(cpn_space(n).unwrap(), 16, None).unwrap()
}

fn c1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..100 {
        let ny = rng.gen_range(0..=4);
        let ys = (0..ny).map(|_| rational(&mut rng, 50, 17)).collect();
        let l = LinForm::new(ratio(1, 1), ys).unwrap();
        let h = FactoredRational::new(Poly::one(ny), [(l, 1)]).unwrap();
        let r = res_plus(&h).map_err(|e| e.to_string())?;
        if r != FactoredRational::one(ny) {
            return Err(format!("case {}: {} gave {}", i, h.to_text(), r.to_text()));
        }
    }
    Ok("100 unit forms, residue 1".into())
}

fn c2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut poles = 0;
    for i in 0..600 {
        let ny = rng.gen_range(0..=3);
        let nf = rng.gen_range(0..=4);
        let fs: Vec<(LinForm, u32)> = (0..nf).map(|_| (linform(&mut rng, ny), rng.gen_range(1..=2))).collect();
        let h = FactoredRational::new(poly(&mut rng, ny, 6, 6), fs).unwrap();
        if !h.normalize().factor_list().is_empty() {
            poles += 1;
        }
        let a = res_plus(&h).map_err(|e| e.to_string())?;
        let b = res_gk(&h).map_err(|e| e.to_string())?;
        if !a.value_eq(&b) {
            return Err(format!("case {}: {} vs {} for {}", i, a.to_text(), b.to_text(), h.to_text()));
        }
    }
    Ok(format!("600 functions ({} with poles) agree", poles))
}

fn c3() -> Check {
    let mut sums = 0;
    for n in 1..=3 {
        let m = model(n);
        let classes: Vec<&EquivClass> = m.basis.classes().collect();
        for (i, a) in classes.iter().enumerate() {
            let s = abbv_sum(&m.space, a).map_err(|e| e.to_string())?;
            if !is_polynomial(&s) {
                return Err(format!("CP^{} {}: {}", n, a.name(), s.to_text()));
            }
            sums += 1;
            for b in &classes[i..] {
                let s = abbv_sum(&m.space, &a.product(b)).map_err(|e| e.to_string())?;
                if !is_polynomial(&s) {
                    return Err(format!("CP^{} {}*{}: {}", n, a.name(), b.name(), s.to_text()));
                }
                sums += 1;
            }
        }
    }
    Ok(format!("{} localization sums polynomial on CP^1..CP^3", sums))
}

fn c4() -> Check {
    let m = model(1);
    let (_, plus) = split_fixed_points(&m.space).unwrap();
    let top = plus[0].label().to_string();
    let a = m.basis.minus(&top).unwrap();
    for k in 0..=6 {
        let eta = a.mul_poly(&mono(0, k));
        if !kernel_test(&m.space, &m.basis, &eta).map_err(|e| e.to_string())?.in_kernel() {
            return Err(format!("alpha_minus({})*X^{} not in kernel", top, k));
        }
    }
    let one = EquivClass::constant(&m.space, "1", &Poly::one(0));
    let mut notes = vec![format!("alpha_minus({})*X^k in kernel for k <= 6", top)];
    match kernel_test(&m.space, &m.basis, &one).map_err(|e| e.to_string())? {
        KernelVerdict::NotInKernel { witness, .. } => {
            let v = witness.pairing.to_text();
            if v != "1" && v != "-1" {
                return Err(format!("eta = 1: witness pairing {}", v));
            }
            notes.push(format!("eta = 1 not in kernel, pairing {}", v));
        }
        KernelVerdict::InKernel { .. } => return Err("eta = 1 reported in kernel".into()),
    }
    let x = parse_poly("X", 0).unwrap();
    let eta = EquivClass::new("X", 1, EquivClass::constant(&m.space, "X", &x).restrictions().clone());
    match kernel_test(&m.space, &m.basis, &eta).map_err(|e| e.to_string())? {
        KernelVerdict::NotInKernel { witness, .. } => {
            let v = witness.pairing.to_text();
            if v != "1" && v != "-1" {
                return Err(format!("eta = X: witness pairing {}", v));
            }
            notes.push(format!("eta = X not in kernel, pairing {}", v));
            Ok(notes.join("; "))
        }
        KernelVerdict::InKernel { decomposition, plus_coeffs, .. } => {
            let parts: Vec<String> = decomposition
                .eta_plus
                .iter()
                .map(|(l, v)| format!("eta_plus|{} = {}", l, v.to_text()))
                .chain(plus_coeffs.iter().map(|(l, v)| format!("q_{} = {}", l, v.to_text())))
                .collect();
            notes.push(format!("eta = X is in the kernel ({})", parts.join(", ")));
            Err(notes.join("; "))
        }
    }
}

fn c5_c6() -> (Check, Check) {
    let m = model(2);
    let ny = m.space.num_y_vars();
    let (minus, plus) = split_fixed_points(&m.space).unwrap();
    let pole = max_pole_order(&m.space);
    let mut cases = 0;
    let mut kernel = 0;
    let mut contract: Check = Ok(String::new());
    for base in m.basis.classes() {
        for mo in Monomial::all_up_to(ny + 1, 4) {
            let eta = base.mul_poly(&Poly::monomial(ny, mo, ratio(1, 1)));
            let d = pole + eta.degree() + 2;
            let family = monomial_test_family(&m.space, &m.basis, d);
            let v = match kernel_test(&m.space, &m.basis, &eta) {
                Ok(v) => v,
                Err(e) => return (Err(e.to_string()), Err("not run".into())),
            };
            let c = match residue_criterion(&m.space, &eta, &family) {
                Ok(c) => c,
                Err(e) => return (Err(e.to_string()), Err("not run".into())),
            };
            if v.in_kernel() != c.passed() {
                return (
                    Err(format!("{}: kernel_test {} vs criterion {}", eta.name(), v.in_kernel(), c.passed())),
                    Err("not run".into()),
                );
            }
            cases += 1;
            kernel += v.in_kernel() as usize;

            if contract.is_ok() {
                let dec = match decompose(&m.space, &m.basis, &eta) {
                    Ok(d) => d,
                    Err(e) => {
                        contract = Err(format!("{}: {}", eta.name(), e));
                        continue;
                    }
                };
                for f in m.space.points() {
                    let l = f.label();
                    let sum = dec.eta_minus[l].checked_add(&dec.eta_plus[l]).unwrap();
                    if !sum.value_eq(&FactoredRational::from_poly(eta.at(l).unwrap().clone())) {
                        contract = Err(format!("{}: sum differs at {}", eta.name(), l));
                    }
                }
                for f in &minus {
                    if !dec.eta_plus[f.label()].is_zero() {
                        contract = Err(format!("{}: eta_plus nonzero at {}", eta.name(), f.label()));
                    }
                }
                for f in &plus {
                    if !dec.eta_minus[f.label()].is_zero() {
                        contract = Err(format!("{}: eta_minus nonzero at {}", eta.name(), f.label()));
                    }
                    if dec.plus_coeffs[f.label()].factors().any(|(l, _)| l.is_pure_y()) {
                        contract = Err(format!("{}: pure-Y factor in q_{}", eta.name(), f.label()));
                    }
                }
            }
        }
    }
    let contract = contract.map(|_| format!("{} decompositions satisfy the contract", cases));
    (Ok(format!("{} classes agree ({} in kernel)", cases, kernel)), contract)
}

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    for i in 0..200 {
        let ny = rng.gen_range(0..=3);
        let nf = rng.gen_range(1..=3);
        let fs: Vec<(LinForm, u32)> = (0..nf).map(|_| (linform(&mut rng, ny), 1)).collect();
        let g = fs.iter().fold(Poly::one(ny), |acc, (l, k)| &acc * &l.to_poly().pow(*k));
        let q = poly(&mut rng, ny, 3, 4);
        let f = &q * &g;
        match divides_product(&f, &fs).map_err(|e| e.to_string())? {
            Some(back) if &back * &g == f => {}
            _ => return Err(format!("case {}: constructed multiple not divided", i)),
        }
        let c = nonzero(&mut rng, 9, 4);
        let bad = &f + &Poly::constant(ny, c);
        if divides_product(&bad, &fs).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("case {}: perturbed numerator divided", i));
        }
        let h = FactoredRational::new(bad, fs.clone()).unwrap();
        let Some((p, r)) = residue_witness(&h).map_err(|e| e.to_string())? else {
            return Err(format!("case {}: no witness", i));
        };
        let check = res_plus(&h.mul_poly(&p)).map_err(|e| e.to_string())?;
        if r.is_zero() || !check.value_eq(&r) {
            return Err(format!("case {}: witness residue {} / {}", i, r.to_text(), check.to_text()));
        }
    }
    Ok("200 pairs divide back; perturbed ones give nonzero witness residues".into())
}

fn c8() -> Check {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/cp1xcp1_stages.json");
    let chain = kres::io::load_chain(&path).map_err(|e| e.to_string())?;
    let at = |name: &str| kernel_via_stages(&chain, name).map_err(|e| e.to_string());
    if at("h1")?.detected_at() != Some(2) {
        return Err("h1 not detected at stage 2".into());
    }
    if ker_res_test(&chain.stages()[0], "h1").map_err(|e| e.to_string())?.passed() {
        return Err("h1 already detected at stage 1".into());
    }
    if at("kill1")?.detected_at() != Some(1) {
        return Err("kill1 not detected at stage 1".into());
    }
    match at("one")? {
        StageVerdict::NotDetected { witnesses } => {
            for j in 1..=chain.len() {
                if !witnesses.iter().any(|w| w.stage == j && w.coefficient != ratio(0, 1)) {
                    return Err(format!("one: no nonzero witness at stage {}", j));
                }
            }
        }
        v => return Err(format!("one: {:?}", v.detected_at())),
    }
    Ok("h1 at stage 2, kill1 at stage 1, one not detected".into())
}

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    for i in 0..1000 {
        let ny = rng.gen_range(0..=3);
        let p = poly(&mut rng, ny, 6, 8);
        let text = p.to_text();
        match parse_poly(&text, ny) {
            Ok(q) if q == p => {}
            Ok(q) => return Err(format!("case {}: {} reparsed as {}", i, text, q.to_text())),
            Err(e) => return Err(format!("case {}: {}: {}", i, text, e)),
        }
    }
    Ok("1000 polynomials round-trip".into())
}

fn timed(f: impl FnOnce() -> Check) -> (Check, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn report(n: u32, limit: Duration, (r, took): (Check, Duration)) -> bool {
    let r = r.and_then(|s| {
        if took < limit {
            Ok(s)
        } else {
            Err(format!("{} (took {:.2?}, limit {:?})", s, took, limit))
        }
    });
    match &r {
        Ok(s) => println!("criterion {}: PASS  {} [{:.2?}]", n, s, took),
        Err(s) => println!("criterion {}: FAIL  {} [{:.2?}]", n, s, took),
    }
    r.is_ok()
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= report(1, secs(1), timed(c1));
    ok &= report(2, secs(30), timed(c2));
    ok &= report(3, secs(10), timed(c3));
    ok &= report(4, secs(1), timed(c4));
    let t = Instant::now();
    let (r5, r6) = c5_c6();
    let took = t.elapsed();
    ok &= report(5, secs(300), (r5, took));
    ok &= report(6, secs(300), (r6, took));
    ok &= report(7, secs(30), timed(c7));
    ok &= report(8, secs(5), timed(c8));
    ok &= report(9, secs(5), timed(c9));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
