use std::path::PathBuf;

use moriwaki_core::bigness::{
    certify_moriwaki_big, check_criterion, construct_witness, BignessCertificate, CriterionOutcome, Relation,
    SideCondition, EFFECTIVITY_NOTE,
};
use moriwaki_core::cone::{
    classify_moriwaki, cone_section, dual_curve, facets, intersect, is_satake_type, moriwaki_decompose,
    predict_base_locus, BaseLocusStatement, CurveClass,
};
use moriwaki_core::divisor::{brill_noether_class, canonical_divisor, petri_hat_class, WitnessClass, WitnessKind};
use moriwaki_core::lcm::{canonical_kappa_known, classify_alpha, zariski_obstruction, ObstructionVerdict, Regime};
use moriwaki_core::petri::{check_ecco1, polynomial_inequality_suite, reduction_chain};
use moriwaki_core::Rat;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::artifact;
use crate::config::Config;
use crate::error::CliError;
use crate::parse;
use crate::report::{class, classification, int_num, num, nums, Provenance, Report};

use Provenance::{Derived, Input, PaperFormula};

/// What a command produced: the report, an optional artifact for stdout,
/// warnings, and whether every check it ran held.
pub struct Output {
    pub report: Option<Report>,
    pub artifact: Option<String>,
    pub warnings: Vec<String>,
    pub ok: bool,
}

impl Output {
    fn report(report: Report, ok: bool) -> Self {
        Self { report: Some(report), artifact: None, warnings: Vec::new(), ok }
    }
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

const MAIN_STATEMENT: &str = "B+(D) lies in the boundary iff D is a strict M-divisor; \
B-(D) lies in the boundary iff D is an M-divisor";

fn statement_name(s: BaseLocusStatement) -> &'static str {
    match s {
        BaseLocusStatement::BminusInBoundary => "BminusInBoundary",
        BaseLocusStatement::BplusInBoundary => "BplusInBoundary",
        BaseLocusStatement::BplusEqualsBoundary => "BplusEqualsBoundary",
        BaseLocusStatement::BminusMeetsInterior => "BminusMeetsInterior",
    }
}

fn curve(c: &CurveClass) -> Value {
    json!({ "lambda": num(&c.lam, Derived), "delta": nums(&c.del, Derived) })
}

pub fn classify(g: u32, class_args: &[String]) -> Result<Output, CliError> {
    let (d, prov) = parse::divisor(g, class_args)?;
    let c = classify_moriwaki(&d);
    let prediction = predict_base_locus(&d);
    let pairings: Vec<Value> = facets(g)
        .into_iter()
        .map(|f| {
            let gamma = dual_curve(g, f);
            let p = intersect(&d, &gamma).expect("same genus");
            json!({ "facet": f.to_string(), "curve": curve(&gamma), "pairing": num(&p, Derived) })
        })
        .collect();
    let decomposition = if c.is_m_divisor() {
        let (beta, e) = moriwaki_decompose(&d)?;
        json!({ "beta": num(&beta, Derived), "effective_boundary_part": class(&e, Derived) })
    } else {
        Value::Null
    };
    let slope = d.slope().ok().map(|s| num(&s, Derived)).unwrap_or(Value::Null);
    let outputs = json!({
        "class": class(&d, prov),
        "zero": d.is_zero(),
        "classification": classification(&c),
        "pairings": pairings,
        "decomposition": decomposition,
        "slope": slope,
        "satake_type": is_satake_type(&d),
        "base_locus": {
            "statement": statement_name(prediction.statement),
            "justification": prediction.justification,
            "theorem": MAIN_STATEMENT,
        },
    });
    let report = Report::new("classify", inputs(&[("genus", json!(g)), ("class", json!(class_args))]), outputs);
    Ok(Output::report(report, true))
}

fn relation(r: Relation) -> &'static str {
    match r {
        Relation::Gt => ">",
        Relation::Ge => ">=",
        Relation::Lt => "<",
    }
}

fn side_condition(c: &SideCondition) -> Value {
    json!({
        "name": c.name,
        "lhs": num(&c.lhs, Derived),
        "relation": relation(c.relation),
        "rhs": num(&c.rhs, Derived),
        "holds": c.holds,
    })
}

fn witness(w: &WitnessClass) -> Value {
    let params = match &w.kind {
        WitnessKind::BrillNoether { r, s } => json!({ "r": r, "s": s }),
        // the gamma values appear once, as side conditions of the certificate
        WitnessKind::PetriHat { d, gammas } => json!({ "d": d, "gamma_count": gammas.len() }),
    };
    json!({ "kind": w.name(), "params": params, "class": class(&w.base, PaperFormula) })
}

fn certificate(c: &BignessCertificate, subject_prov: Provenance) -> Value {
    json!({
        "genus": c.subject.genus(),
        "subject": class(&c.subject, subject_prov),
        "witness": witness(&c.witness),
        "v": num(&c.v, Derived),
        "lambda_part": num(&c.lambda_part, Derived),
        "boundary_part": nums(&c.boundary_part, Derived),
        "identity": "subject = lambda_part*lambda + v*witness + sum_i boundary_part_i*delta_i",
        "side_conditions": c.side_conditions.iter().map(side_condition).collect::<Vec<_>>(),
        "moriwaki_verdict": crate::report::verdict_name(classify_moriwaki(&c.subject).verdict),
        "verified": c.verify(),
    })
}

pub enum CertifyTarget {
    Genera(Vec<u32>),
    Explicit { genus: u32, divisor: String, witness: String },
}

fn explicit_witness(g: u32, name: &str) -> Result<WitnessClass, CliError> {
    Ok(match name {
        "auto" => construct_witness(g)?,
        "BN" => brill_noether_class(g)?,
        "PetriHat" => petri_hat_class(g)?,
        _ => return Err(CliError::Parse(format!("unknown witness `{name}`; expected BN, PetriHat or auto"))),
    })
}

pub fn certify_big(target: CertifyTarget) -> Result<Output, CliError> {
    match target {
        CertifyTarget::Genera(gs) => {
            // each task builds its own factorial memo; results keep input order
            let results: Vec<Result<BignessCertificate, CliError>> =
                gs.par_iter().map(|&g| certify_moriwaki_big(g).map_err(CliError::from)).collect();
            let mut records = Vec::with_capacity(gs.len());
            let mut ok = true;
            for (g, r) in gs.iter().zip(results) {
                match r {
                    Ok(c) => {
                        ok &= c.verify();
                        records.push(certificate(&c, PaperFormula));
                    }
                    Err(CliError::Failure(msg)) => {
                        ok = false;
                        records.push(json!({ "genus": g, "failure": msg }));
                    }
                    Err(e) => return Err(e),
                }
            }
            let outputs = json!({
                "certificates": records,
                "count": gs.len(),
                "all_verified": ok,
                "effectivity": EFFECTIVITY_NOTE,
            });
            let report = Report::new("certify-big", inputs(&[("genera", json!(gs)), ("subject", json!("M"))]), outputs);
            Ok(Output::report(report, ok))
        }
        CertifyTarget::Explicit { genus, divisor, witness: wname } => {
            let (d, prov) = parse::divisor_flag(genus, &divisor)?;
            let w = explicit_witness(genus, &wname)?;
            let (outputs, ok) = match check_criterion(&d, &w)? {
                CriterionOutcome::Certified(c) => {
                    let ok = c.verify();
                    (json!({ "certified": true, "certificate": certificate(&c, prov), "effectivity": EFFECTIVITY_NOTE }), ok)
                }
                CriterionOutcome::Failed(f) => (
                    json!({
                        "certified": false,
                        "subject": class(&d, prov),
                        "witness": witness(&w),
                        "failed": f.failed.iter().map(side_condition).collect::<Vec<_>>(),
                    }),
                    false,
                ),
            };
            let report = Report::new(
                "certify-big",
                inputs(&[("genus", json!(genus)), ("divisor", json!(divisor)), ("witness", json!(wname))]),
                outputs,
            );
            Ok(Output::report(report, ok))
        }
    }
}

fn audit_one(d: u64, brief: bool) -> Result<(Value, bool), CliError> {
    let ecco = check_ecco1(d);
    let ecco_json = json!({
        "all_hold": ecco.all_hold(),
        "worst_case_holds": ecco.worst_case_holds,
        "rows": if brief { Value::Null } else {
            Value::Array(ecco.rows.iter().map(|r| json!({
                "i": r.i, "f_hat": num(&r.lhs, PaperFormula), "bound": num(&r.rhs, Derived),
                "holds": r.holds, "reduced_holds": r.reduced_holds,
            })).collect())
        },
    });
    if d < 4 {
        let ok = ecco.all_hold();
        return Ok((json!({ "d": d, "k": d - 1, "vacuous": true, "all_hold": ok, "ecco1": ecco_json }), ok));
    }
    let a = reduction_chain(d - 1)?;
    let ok = a.all_hold() && ecco.all_hold();
    let claims: Vec<Value> = a
        .claims
        .iter()
        .map(|c| json!({ "name": c.name, "holds": c.holds, "checked": c.checked }))
        .collect();
    let mut rec = json!({
        "d": d,
        "k": a.k,
        "vacuous": false,
        "all_hold": ok,
        "central": num(&a.central, PaperFormula),
        "gamma_min": num(a.gammas.iter().map(|(_, g)| g).min().expect("k >= 3"), Derived),
        "k1": a.k1.to_string(),
        "k2": a.k2.to_string(),
        "claims": claims,
        "ecco1": ecco_json,
    });
    if !brief {
        let pairs = |v: &[(u64, Rat)], key: &str, p: Provenance| -> Value {
            v.iter().map(|(i, x)| json!({ "i": i, key: num(x, p) })).collect()
        };
        rec["gammas"] = pairs(&a.gammas, "gamma", PaperFormula);
        rec["c"] = pairs(&a.c, "c", Derived);
        rec["ladder"] = a
            .ladder
            .iter()
            .map(|s| json!({ "h": s.h, "a": num(&s.a, Derived), "a_prime": num(&s.a_prime, Derived) }))
            .collect();
    }
    Ok((rec, ok))
}

pub fn audit_petri(d_max: u64, poly_max: i64, brief: bool) -> Result<Output, CliError> {
    if d_max < 3 {
        return Err(CliError::Domain(format!("--d-max must be at least 3, got {d_max}")));
    }
    if poly_max < 3 {
        return Err(CliError::Domain(format!("--poly-max must be at least 3, got {poly_max}")));
    }
    let ds: Vec<u64> = (3..=d_max).collect();
    let results: Vec<Result<(Value, bool), CliError>> = ds.par_iter().map(|&d| audit_one(d, brief)).collect();
    let mut records = Vec::with_capacity(ds.len());
    let mut ok = true;
    for r in results {
        let (rec, good) = r?;
        ok &= good;
        records.push(rec);
    }
    let polys: Vec<Value> = polynomial_inequality_suite(poly_max)
        .iter()
        .map(|p| {
            ok &= p.holds();
            json!({
                "name": p.name,
                "variable": p.variable.to_string(),
                "from": p.from,
                "to": p.to,
                "strict": p.strict,
                "checked": p.checked,
                "holds": p.holds(),
                "first_failure": p.first_failure.map(|(x, v)| json!({ "at": x, "value": v.to_string() })),
            })
        })
        .collect();
    let outputs = json!({ "records": records, "polynomials": polys, "all_hold": ok });
    let report = Report::new(
        "audit-petri",
        inputs(&[("d_max", json!(d_max)), ("poly_max", json!(poly_max)), ("brief", json!(brief))]),
        outputs,
    );
    Ok(Output::report(report, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionFormat {
    Json,
    Csv,
    Svg,
}

pub fn section(g: u32, format: SectionFormat, out: Option<PathBuf>, cfg: &Config) -> Result<Output, CliError> {
    let slope = cfg.slope(g);
    let s = cone_section(g, slope.as_ref().map(|(s, _)| s), &cfg.nef_bound)?;
    let mut warnings = Vec::new();
    if s.psef.is_none() {
        warnings.push(format!("slope of the effective cone for g={g} is unknown; psef rays omitted"));
    }
    let ray = |r: &moriwaki_core::cone::SectionRay, p: Provenance| json!({ "a": int_num(&r.a, p), "b": int_num(&r.b, p) });
    let slope_prov = slope.as_ref().map(|(_, p)| *p).unwrap_or(Derived);
    let outputs = json!({
        "plane": ["lambda", "delta"],
        "coordinates": "(a, b) stands for a*lambda - b*delta",
        "nef": [ray(&s.nef[0], Derived), ray(&s.nef[1], Provenance::Config)],
        "mor": [ray(&s.moriwaki[0], Derived), ray(&s.moriwaki[1], PaperFormula)],
        "mor_binding_facet": s.moriwaki_binding.to_string(),
        "psef": s.psef.as_ref().map(|p| vec![ray(&p[0], Derived), ray(&p[1], slope_prov)]),
        "slope": slope.as_ref().map(|(v, p)| num(v, *p)),
    });
    let artifact = match format {
        SectionFormat::Json => None,
        SectionFormat::Csv => Some(artifact::csv(&s)),
        SectionFormat::Svg => Some(artifact::svg(&s)),
    };
    let fmt_name = match format {
        SectionFormat::Json => "json",
        SectionFormat::Csv => "csv",
        SectionFormat::Svg => "svg",
    };
    let mut input = inputs(&[
        ("genus", json!(g)),
        ("format", json!(fmt_name)),
        ("nef_bound", num(&cfg.nef_bound, Provenance::Config)),
    ]);
    let (report, stdout_artifact) = match (artifact, out) {
        (Some(text), Some(path)) => {
            std::fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            input.insert("out".into(), json!(path.display().to_string()));
            (Some(Report::new("section", input, outputs)), None)
        }
        (Some(text), None) => (None, Some(text)),
        (None, _) => (Some(Report::new("section", input, outputs)), None),
    };
    Ok(Output { report, artifact: stdout_artifact, warnings, ok: true })
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::IsoOverMg => "IsoOverMg",
        Regime::ContractsHyperelliptic => "ContractsHyperelliptic",
        Regime::HyperellipticInBminus => "HyperellipticInBminus",
    }
}

pub fn alpha(g: u32, alpha_text: &str, cfg: &Config) -> Result<Output, CliError> {
    let a = parse::rat(alpha_text)?;
    let slope = cfg.slope(g);
    let c = classify_alpha(g, &a, &cfg.positivity(g))?;
    let ka = moriwaki_core::divisor::k_alpha(g, &a)?;
    let outputs = json!({
        "regime": regime_name(c.regime),
        "class": class(&ka, PaperFormula),
        "classification": classification(&c.moriwaki),
        "ample": c.ample,
        "nef": c.nef,
        "big": c.big,
        "alpha_star": num(&c.alpha_star, PaperFormula),
        "alpha_nef": num(&c.alpha_nef, Provenance::Config),
        "alpha_psef": c.alpha_psef.as_ref().map(|x| num(x, slope.as_ref().map(|(_, p)| *p).unwrap_or(Derived))),
        "ray_slope": num(&c.ray_slope, Derived),
        "cornalba_harris_factor": c.cornalba_harris_factor.as_ref().map(|t| num(t, Derived)),
        "caveat": c.caveat(),
    });
    let report = Report::new(
        "alpha",
        inputs(&[
            ("genus", json!(g)),
            ("alpha", num(&a, Input)),
            ("nef_bound", num(&cfg.nef_bound, Provenance::Config)),
            ("slope", slope.as_ref().map(|(s, p)| num(s, *p)).unwrap_or(Value::Null)),
        ]),
        outputs,
    );
    Ok(Output::report(report, true))
}

pub fn obstruction(g: u32, class_args: &[String], kappa: Option<bool>) -> Result<Output, CliError> {
    let (d, prov) = parse::divisor(g, class_args)?;
    let is_canonical = canonical_divisor(g)? == d;
    let (kappa, source) = match kappa {
        Some(k) => (k, "input"),
        None if is_canonical && canonical_kappa_known(g) => (true, "known for the canonical class when g >= 22"),
        None => (false, "not asserted"),
    };
    let r = zariski_obstruction(&d, kappa);
    let verdict = match r.verdict {
        ObstructionVerdict::NoZariskiDecomposition => "NoZariskiDecomposition",
        ObstructionVerdict::NoObstruction => "NoObstruction",
    };
    let witness = r.witness.as_ref().map(|w| {
        json!({ "facet": w.facet.to_string(), "curve": curve(&w.curve), "pairing": num(&w.pairing, Derived) })
    });
    let outputs = json!({
        "class": class(&r.subject, prov),
        "classification": classification(&r.classification),
        "kappa_at_least_one": kappa,
        "kappa_source": source,
        "verdict": verdict,
        "witness": witness,
        "narrative": r.narrative,
    });
    let report = Report::new("obstruction", inputs(&[("genus", json!(g)), ("class", json!(class_args))]), outputs);
    Ok(Output::report(report, true))
}
