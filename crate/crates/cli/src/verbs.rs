//! One function per verb. Each returns a report carrying both renderings.

use serde_json::{json, Map, Value};

use wia_core::exactnum::{ramification, BaseField, Embedding, FieldElem, Ordering};
use wia_core::hyperbolic::{
    classify_at_real_closure, hyperbolic_over_sqrt, is_hyperbolic_inv, weakly_hyperbolic, Status, Verdict,
};
use wia_core::involution::{inv_signature, profile, quat_orth_iso, trace_form, QuatKind};
use wia_core::oracle::{find_isotropic_vector, SearchBudget};
use wia_core::qform::{is_hyperbolic_form, is_isotropic, witt_decompose, QForm};
use wia_core::syntax::{parse_elem, parse_expr, parse_form, parse_generators, parse_inv, Expr};
use wia_core::wittring::{form_torsion_order, t_hyperbolic_form, Preordering, TorsionOrder};
use wia_core::{Error, Result};

pub struct Report {
    pub json: Value,
    pub text: String,
    pub undecided: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Report {
        Report { json, text, undecided: false }
    }
}

fn verdict(v: Verdict) -> Report {
    let text = match v.status {
        Status::True => format!("True ({})", v.criterion),
        Status::False => format!("False ({})", v.criterion),
        Status::Undecided => format!("Undecided ({})", v.criterion),
    };
    let undecided = !v.is_decided();
    Report { json: serde_json::to_value(&v).expect("serializable"), text, undecided }
}

pub fn sign(base: BaseField, src: &str) -> Result<Report> {
    let expr = parse_expr(base, src)?;
    let mut map = Map::new();
    let mut parts = Vec::new();
    for p in base.orderings() {
        let s: i64 = match &expr {
            Expr::Form(f) => f.signature(&p)?,
            Expr::Inv(e) => inv_signature(e, &p)? as i64,
            Expr::Preord(_) => return Err(Error::ShapeMismatch("sign takes a form or an involution".into())),
        };
        parts.push(format!("{p}: {s}"));
        map.insert(p.to_string(), json!(s));
    }
    Ok(Report::new(Value::Object(map), format!("{{{}}}", parts.join(", "))))
}

pub fn witt(base: BaseField, src: &str) -> Result<Report> {
    let d = witt_decompose(&parse_form(base, src)?)?;
    let witnesses: Vec<Value> = d
        .isotropic_witnesses
        .iter()
        .map(|w| json!({ "dim": w.dim, "coords": w.coords }))
        .collect();
    let json = json!({
        "anisotropic_part": d.anisotropic_part.to_string(),
        "witt_index": d.witt_index,
        "isotropic_witnesses": witnesses,
    });
    let text = format!("{} x H + {}", d.witt_index, d.anisotropic_part);
    Ok(Report::new(json, text))
}

pub fn hyp(base: BaseField, src: &str) -> Result<Report> {
    match parse_expr(base, src)? {
        Expr::Form(f) => Ok(verdict(Verdict::decided(is_hyperbolic_form(&f)?, "local-invariants"))),
        Expr::Inv(e) => Ok(verdict(is_hyperbolic_inv(&e)?)),
        Expr::Preord(_) => Err(Error::ShapeMismatch("hyp takes a form or an involution".into())),
    }
}

pub fn weak_hyp(base: BaseField, src: &str) -> Result<Report> {
    let w = weakly_hyperbolic(&parse_inv(base, src)?)?;
    let text = match w.witness_n {
        Some(n) => format!("{} (2^{n} x hyperbolic)", w.weakly_hyperbolic),
        None => w.weakly_hyperbolic.to_string(),
    };
    Ok(Report::new(serde_json::to_value(&w).expect("serializable"), text))
}

pub fn torsion_order(base: BaseField, src: &str) -> Result<Report> {
    let o = form_torsion_order(&parse_form(base, src)?)?;
    let (json, text) = match o {
        TorsionOrder::Finite(n) => (json!({ "torsion_order": n }), n.to_string()),
        TorsionOrder::Infinite => (json!({ "torsion_order": "infinite" }), "infinite".to_string()),
    };
    Ok(Report::new(json, text))
}

pub fn t_hyp(base: BaseField, preord: &str, src: &str) -> Result<Report> {
    let t = Preordering::new(base, parse_generators(base, preord)?)?;
    let (hyperbolic, witness) = match parse_expr(base, src)? {
        Expr::Form(f) => {
            let r = t_hyperbolic_form(&f, &t)?;
            (r.hyperbolic, r.witness)
        }
        Expr::Inv(e) => {
            let r = wia_core::hyperbolic::t_hyperbolic_inv(&e, &t)?;
            (r.hyperbolic, r.witness)
        }
        Expr::Preord(_) => return Err(Error::ShapeMismatch("t-hyp takes a form or an involution".into())),
    };
    let witness = witness.map(|w| w.to_string());
    let text = match &witness {
        Some(w) => format!("{hyperbolic} (witness {w})"),
        None => hyperbolic.to_string(),
    };
    Ok(Report::new(json!({ "hyperbolic": hyperbolic, "witness": witness }), text))
}

fn pick_ordering(base: BaseField, which: Option<&str>) -> Result<Ordering> {
    let all = base.orderings();
    let want = match which {
        None => return all.into_iter().next().ok_or(Error::NonrealOrdering),
        Some("plus") => Embedding::Plus,
        Some("minus") => Embedding::Minus,
        Some(other) => return Err(Error::InvalidArgument(format!("ordering {other}: expected plus or minus"))),
    };
    all.into_iter().find(|p| p.embedding == want).ok_or(Error::OrderingMismatch)
}

pub fn classify(base: BaseField, ordering: Option<&str>, src: &str) -> Result<Report> {
    let p = pick_ordering(base, ordering)?;
    let c = classify_at_real_closure(&parse_inv(base, src)?, &p)?;
    let text = format!(
        "case ({}) at {p}: r = {}, hyperbolic over the closure: {}, twice: {}",
        c.case_label, c.r, c.hyperbolic_over_closure, c.two_times_hyperbolic_over_closure
    );
    Ok(Report::new(serde_json::to_value(&c).expect("serializable"), text))
}

pub fn trace(base: BaseField, src: &str) -> Result<Report> {
    let t = trace_form(&parse_inv(base, src)?)?.expanded();
    Ok(Report::new(json!({ "trace_form": t.to_string(), "dim": t.dim() }), t.to_string()))
}

fn quat_atom(base: BaseField, src: &str) -> Result<(QuatKind, FieldElem, FieldElem)> {
    let e = parse_inv(base, src)?;
    e.quat_slots().ok_or_else(|| Error::ShapeMismatch(format!("{e} is not a quaternion atom")))
}

pub fn iso_quat(base: BaseField, left: &str, right: &str) -> Result<Report> {
    let (k1, a, b) = quat_atom(base, left)?;
    let (k2, c, d) = quat_atom(base, right)?;
    let iso = match (k1, k2) {
        (QuatKind::Orth, QuatKind::Orth) => quat_orth_iso(&a, &b, &c, &d)?,
        // canonical involutions are isomorphic exactly when the algebras are
        (QuatKind::Symp, QuatKind::Symp) => {
            let cls = |x: &FieldElem| x.as_rational().ok_or(Error::UnsupportedField).and_then(FieldElem::rational_class);
            ramification(&cls(&a)?, &cls(&b)?) == ramification(&cls(&c)?, &cls(&d)?)
        }
        _ => false,
    };
    Ok(Report::new(json!({ "isomorphic": iso }), iso.to_string()))
}

pub fn profile_report(base: BaseField, src: &str) -> Result<Report> {
    let p = profile(&parse_inv(base, src)?)?;
    let json = serde_json::to_value(&p).expect("serializable");
    let ram = match &p.brauer_ramification {
        Some(r) => {
            let places: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", places.join(", "))
        }
        None => "n/a".into(),
    };
    let text = format!(
        "type {:?}, degree {}, centre {}, ramification {ram}, index {}{}",
        p.inv_type,
        p.degree,
        json["centre"],
        p.index.map_or("n/a".to_string(), |i| i.to_string()),
        if p.degenerate { ", degenerate" } else { "" }
    );
    Ok(Report::new(json, text))
}

pub fn hyp_sqrt(base: BaseField, adjoin: &str, src: &str) -> Result<Report> {
    let a = parse_elem(base, adjoin)?;
    Ok(verdict(hyperbolic_over_sqrt(&parse_inv(base, src)?, &a)?))
}

pub fn isotropic(base: BaseField, budget: &SearchBudget, src: &str) -> Result<Report> {
    let f: QForm = parse_form(base, src)?;
    let iso = is_isotropic(&f)?;
    let vector = if iso { find_isotropic_vector(&f, budget)? } else { None };
    let vector: Option<Vec<String>> = vector.map(|v| v.iter().map(|x| x.to_string()).collect());
    let text = match &vector {
        Some(v) => format!("true, vector ({})", v.join(",")),
        None if iso => "true, no vector within the search budget".into(),
        None => "false".into(),
    };
    Ok(Report::new(json!({ "isotropic": iso, "vector": vector }), text))
}
