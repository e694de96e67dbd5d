//! Hyperbolicity deciders for involution expressions: hyperbolic, weakly
//! hyperbolic, T-hyperbolic, after a quadratic extension, and over a real
//! closure.

mod normal;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::integer::exact_sqrt;
use crate::exactnum::{BaseField, FieldElem, Ordering};
use crate::involution::{
    class_int, embeds_quadratic_etale, inv_signature, profile, real_ramified, trace_form, InvExpr, InvType, QuatKind,
};
use crate::qform::{is_hyperbolic_form, is_pfister_multiple, witt_decompose, QForm};
use crate::wittring::{delta, form_torsion_order, t_positive_pfister_candidates, Preordering, TorsionOrder};


#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    True,
    False,
    Undecided,
}

/// Three-valued decision. Decided verdicts name the criterion applied;
/// undecided ones name the shape that no criterion covers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub criterion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn decided(value: bool, criterion: &str) -> Verdict {
        Verdict { status: if value { Status::True } else { Status::False }, criterion: criterion.to_string(), witness: None }
    }

    pub fn undecided(shape: &str) -> Verdict {
        Verdict { status: Status::Undecided, criterion: format!("unsupported: {shape}"), witness: None }
    }

    pub fn is_decided(&self) -> bool {
        self.status != Status::Undecided
    }

    /// Some(true/false) when decided.
    pub fn value(&self) -> Option<bool> {
        match self.status {
            Status::True => Some(true),
            Status::False => Some(false),
            Status::Undecided => None,
        }
    }
}

fn require_rational(psi: &InvExpr) -> Result<()> {
    psi.check()?;
    if psi.base().is_rational() {
        Ok(())
    } else {
        Err(Error::UnsupportedField)
    }
}

pub fn is_hyperbolic_inv(psi: &InvExpr) -> Result<Verdict> {
    require_rational(psi)?;
    Ok(match normal::decide(psi)? {
        Some(d) => Verdict {
            status: if d.value { Status::True } else { Status::False },
            criterion: d.criterion.to_string(),
            witness: d.witness,
        },
        None => Verdict::undecided(&psi.to_string()),
    })
}

fn rational_class(x: &FieldElem) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    class_int(x)
}

/// Whether 2^n x (a .| b) is hyperbolic over Q.
pub fn two_power_hyperbolic_orth_quat(a: &FieldElem, b: &FieldElem, n: u32) -> Result<bool> {
    let (ca, cb) = (rational_class(a)?, rational_class(b)?);
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(normal::final_criterion(&ca, &cb, n))
}

/// Certificate for a = x(y + b) with x in D(2^n - 1) and y in D(2^n - 1) or 0;
/// for n = 1 it is a in D<1,1> or a in D<1,b>.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FinalWitness {
    /// a = x(y + b), with x and y given as sums of 2^n - 1 squares.
    Product { x_roots: Vec<BigRational>, y_roots: Vec<BigRational> },
    /// a = s^2 + t^2
    TwoSquares { s: BigRational, t: BigRational },
    /// a = s^2 + b t^2
    SquarePlusB { s: BigRational, t: BigRational },
}

fn sum_sq(v: &[BigRational]) -> BigRational {
    v.iter().map(|x| x * x).sum()
}

impl FinalWitness {
    pub fn x_y(&self) -> Option<(BigRational, BigRational)> {
        match self {
            FinalWitness::Product { x_roots, y_roots } => Some((sum_sq(x_roots), sum_sq(y_roots))),
            _ => None,
        }
    }

    /// Exact re-verification against a, b and n.
    pub fn verify(&self, a: &BigRational, b: &BigRational, n: u32) -> bool {
        match self {
            FinalWitness::TwoSquares { s, t } => n == 1 && &(s * s + t * t) == a,
            FinalWitness::SquarePlusB { s, t } => n == 1 && &(s * s + b * t * t) == a,
            FinalWitness::Product { x_roots, y_roots } => {
                let m = (1usize << n) - 1;
                let (x, y) = (sum_sq(x_roots), sum_sq(y_roots));
                x_roots.len() == m && y_roots.len() == m && !x.is_zero() && &(x * (y + b)) == a
            }
        }
    }
}

/// a = u^2 + s t^2 from an isotropic vector of <1, s, -a>.
fn binary_rep(v: &[BigRational], a: &BigRational) -> (BigRational, BigRational) {
    if !v[2].is_zero() {
        return (&v[0] / &v[2], &v[1] / &v[2]);
    }
    // <1,s> isotropic: s = -r^2 with r = v0/v1, and a = u^2 - (rt)^2
    let r = &v[0] / &v[1];
    let two = BigRational::from_integer(2.into());
    let u = (a + BigRational::one()) / &two;
    let w = (a - BigRational::one()) / &two;
    (u, w / r)
}

/// Reconstructs an explicit witness when 2^n x (a .| b) is hyperbolic.
pub fn final_witness(a: &FieldElem, b: &FieldElem, n: u32) -> Result<Option<FinalWitness>> {
    if !two_power_hyperbolic_orth_quat(a, b, n)? {
        return Ok(None);
    }
    let ar = a.as_rational().ok_or(Error::UnsupportedField)?.clone();
    let q = BaseField::Rationals;
    let one = FieldElem::one(q);
    if n == 1 {
        for (second, two_sq) in [(one.clone(), true), (b.clone(), false)] {
            let form = QForm::new(q, vec![one.clone(), second, -a])?;
            if let Some(v) = witt_decompose(&form)?.isotropic_witnesses.first() {
                let (s, t) = binary_rep(&v.dense(), &ar);
                return Ok(Some(if two_sq { FinalWitness::TwoSquares { s, t } } else { FinalWitness::SquarePlusB { s, t } }));
            }
        }
        return Err(Error::InternalInconsistency(format!("no n = 1 witness for ({a} .| {b})")));
    }
    // (2^n - 1) x <<a>> + <b>, ordered as <1 (m times), -a (m times), b>
    let m = (1usize << n) - 1;
    let mut entries = vec![one; m];
    entries.extend(std::iter::repeat(-a).take(m));
    entries.push(b.clone());
    let form = QForm::new(q, entries)?;
    let v0 = witt_decompose(&form)?
        .isotropic_witnesses
        .first()
        .ok_or_else(|| Error::InternalInconsistency("isotropic form without witness".into()))?
        .dense();
    let gram = |v: &[BigRational], w: &[BigRational]| -> BigRational {
        v.iter().zip(w).zip(form.entries()).map(|((x, y), e)| x * y * e.as_rational().expect("rational")).sum()
    };
    // a sum q^2 = sum p^2 + b w^2 gives x = w^2 / sum q^2, y = sum p^2 / w^2
    let split = |v: &[BigRational]| -> Option<FinalWitness> {
        let q2 = sum_sq(&v[m..2 * m]);
        let w = &v[2 * m];
        if q2.is_zero() || w.is_zero() {
            return None;
        }
        let x_roots = v[m..2 * m].iter().map(|x| w * x / &q2).collect();
        let y_roots = v[..m].iter().map(|x| x / w).collect();
        Some(FinalWitness::Product { x_roots, y_roots })
    };
    if let Some(wit) = split(&v0) {
        return Ok(Some(wit));
    }
    // move along the isotropic cone: t v + u stays isotropic for t = -q(u) / 2B(v,u)
    let dim = 2 * m + 1;
    for i in 0..dim {
        for j in i..dim {
            let mut u = vec![BigRational::zero(); dim];
            u[i] += BigRational::one();
            u[j] += BigRational::one();
            let bvu = gram(&v0, &u);
            if bvu.is_zero() {
                continue;
            }
            let t = -gram(&u, &u) / (BigRational::from_integer(2.into()) * bvu);
            let v: Vec<BigRational> = v0.iter().zip(&u).map(|(x, y)| &t * x + y).collect();
            if let Some(wit) = split(&v) {
                return Ok(Some(wit));
            }
        }
    }
    Err(Error::InternalInconsistency(format!("no witness reconstructed for 2^{n} x ({a} .| {b})")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakHyperbolicity {
    pub weakly_hyperbolic: bool,
    /// Least n with 2^n x Psi hyperbolic, when the shape is decided.
    pub witness_n: Option<u32>,
}

/// Cap on the multiples tested for expressions of nonzero signature.
pub const NONZERO_SIGNATURE_CAP: u32 = 5;

/// m for the Delta bound: degree, halved for symplectic involutions.
fn delta_m(psi: &InvExpr) -> Result<u64> {
    let p = profile(psi)?;
    Ok(match p.inv_type {
        InvType::Symplectic => p.degree / 2,
        _ => p.degree,
    })
}

/// A priori search bound for the least n with 2^n x Psi hyperbolic.
pub fn multiple_search_bound(psi: &InvExpr) -> Result<u32> {
    if !weakly_hyperbolic_by_signature(psi)? {
        return Ok(NONZERO_SIGNATURE_CAP);
    }
    let sq = InvExpr::tensor(psi.clone(), psi.clone())?;
    let split = profile(&sq)?.index == Some(1);
    if split && is_hyperbolic_inv(&sq)?.status == Status::True {
        return Ok(delta(delta_m(psi)?.max(1)) as u32);
    }
    // 2^t kills the trace form; then (2^(t+1) x Psi)^2 is split hyperbolic
    let t = match form_torsion_order(&trace_form(psi)?.expanded())? {
        TorsionOrder::Finite(o) => o.trailing_zeros() + 1,
        TorsionOrder::Infinite => return Err(Error::InternalInconsistency(format!("{psi}: signature 0 but trace not torsion"))),
    };
    let m = delta_m(psi)?.max(1) << t;
    Ok(t + delta(m) as u32)
}

fn weakly_hyperbolic_by_signature(psi: &InvExpr) -> Result<bool> {
    for p in psi.base().orderings() {
        if inv_signature(psi, &p)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn weakly_hyperbolic(psi: &InvExpr) -> Result<WeakHyperbolicity> {
    psi.check()?;
    let weak = weakly_hyperbolic_by_signature(psi)?;
    if !psi.base().is_rational() || !weak {
        return Ok(WeakHyperbolicity { weakly_hyperbolic: weak, witness_n: None });
    }
    if !is_hyperbolic_inv(psi)?.is_decided() {
        return Ok(WeakHyperbolicity { weakly_hyperbolic: weak, witness_n: None });
    }
    let bound = multiple_search_bound(psi)?;
    for n in 0..=bound {
        let e = if n == 0 { psi.clone() } else { InvExpr::multiple(1usize << n, psi.clone())? };
        match is_hyperbolic_inv(&e)?.status {
            Status::True => return Ok(WeakHyperbolicity { weakly_hyperbolic: true, witness_n: Some(n) }),
            Status::False => {}
            Status::Undecided => return Ok(WeakHyperbolicity { weakly_hyperbolic: true, witness_n: None }),
        }
    }
    Err(Error::InternalInconsistency(format!("{psi}: signature 0 but no hyperbolic 2^n multiple with n <= {bound}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TInvHyperbolicity {
    pub hyperbolic: bool,
    /// A T-positive Pfister form theta with Ad(theta) (x) Psi hyperbolic.
    #[serde(serialize_with = "ser_opt_form")]
    pub witness: Option<QForm>,
}

fn ser_opt_form<S: serde::Serializer>(f: &Option<QForm>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_some(&f.to_string()),
        None => s.serialize_none(),
    }
}

const T_WITNESS_SLOTS: usize = 4;

pub fn t_hyperbolic_inv(psi: &InvExpr, t: &Preordering) -> Result<TInvHyperbolicity> {
    psi.check()?;
    if psi.base() != t.base() {
        return Err(Error::MixedFields);
    }
    let mut hyperbolic = true;
    for p in t.x_t() {
        if inv_signature(psi, p)? != 0 {
            hyperbolic = false;
        }
    }
    if !hyperbolic || !psi.base().is_rational() || !is_hyperbolic_inv(psi)?.is_decided() {
        return Ok(TInvHyperbolicity { hyperbolic, witness: None });
    }
    let tr = trace_form(psi)?.expanded();
    for theta in t_positive_pfister_candidates(t, T_WITNESS_SLOTS) {
        if !is_hyperbolic_form(&theta.tensor(&tr)?)? {
            continue;
        }
        let e = InvExpr::tensor(InvExpr::ad(theta.clone())?, psi.clone())?;
        if is_hyperbolic_inv(&e)?.status == Status::True {
            return Ok(TInvHyperbolicity { hyperbolic, witness: Some(theta) });
        }
    }
    Ok(TInvHyperbolicity { hyperbolic, witness: None })
}

/// Whether the expression is, after normalization, a bare adjoint involution.
fn adjoint_part(psi: &InvExpr) -> Option<QForm> {
    match psi {
        InvExpr::Ad(phi) => Some(phi.clone()),
        InvExpr::Id(b) => Some(QForm::ones(*b, 1)),
        InvExpr::Multiple(m, e) => adjoint_part(e).map(|f| f.multiple(*m).expect("same field")),
        InvExpr::Tensor(l, r) => Some(adjoint_part(l)?.tensor(&adjoint_part(r)?).expect("same field")),
        _ => None,
    }
}

/// Hyperbolicity of Psi over Q(sqrt a).
pub fn hyperbolic_over_sqrt(psi: &InvExpr, a: &FieldElem) -> Result<Verdict> {
    require_rational(psi)?;
    rational_class(a)?;
    if a.is_square() {
        return is_hyperbolic_inv(psi);
    }
    if let Some(phi) = adjoint_part(psi) {
        let an = witt_decompose(&phi)?.anisotropic_part;
        let ok = an.dim() == 0 || is_pfister_multiple(&an, a)?;
        let mut v = Verdict::decided(ok, "quext-pfister-multiple");
        v.witness = Some(json!({"anisotropic_part": an.to_string()}));
        return Ok(v);
    }
    let e = embeds_quadratic_etale(a, psi)?;
    Ok(match e.status {
        Status::True => Verdict { status: Status::True, criterion: "quext-embed".into(), witness: e.witness },
        // not an adjoint shape, so embedding is the only route
        Status::False if psi.quat_slots().is_some() || matches!(psi, InvExpr::UnitCan(_)) => {
            let split_orth = matches!(psi.quat_slots(), Some((QuatKind::Orth, ..)))
                && profile(psi)?.index == Some(1);
            if split_orth {
                // (b .| c) split is Ad<<b>>
                let (_, b, _) = psi.quat_slots().expect("atom");
                let ok = is_pfister_multiple(&QForm::pfister(BaseField::Rationals, &[b])?, a)?;
                Verdict::decided(ok, "quext-pfister-multiple")
            } else {
                Verdict::decided(false, "quext-embed")
            }
        }
        _ => Verdict::undecided(&format!("{psi} over Q(sqrt {a})")),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealClosureClass {
    pub case_label: char,
    pub r: u64,
    pub hyperbolic_over_closure: bool,
    pub two_times_hyperbolic_over_closure: bool,
}

fn unitary_centre(psi: &InvExpr) -> Option<FieldElem> {
    match psi {
        InvExpr::UnitCan(c) => Some(c.clone()),
        InvExpr::Tensor(l, r) => unitary_centre(l).or_else(|| unitary_centre(r)),
        InvExpr::Multiple(_, e) => unitary_centre(e),
        _ => None,
    }
}

fn exact_root(n: u64, what: &InvExpr) -> Result<u64> {
    exact_sqrt(&BigInt::from(n))
        .map(|r| r.try_into().expect("fits"))
        .ok_or_else(|| Error::InternalInconsistency(format!("{what}: {n} is not a square")))
}

pub fn classify_at_real_closure(psi: &InvExpr, p: &Ordering) -> Result<RealClosureClass> {
    psi.check()?;
    if !psi.base().is_real() || !p.base.is_real() {
        return Err(Error::NonrealOrdering);
    }
    if p.base != psi.base() {
        return Err(Error::OrderingMismatch);
    }
    let prof = profile(psi)?;
    let s = trace_form(psi)?.expanded().signature(p)?;
    if s < 0 {
        return Err(Error::InternalInconsistency(format!("{psi}: negative trace signature {s}")));
    }
    let s = s as u64;
    let zero_sig = |label: char, r: u64, hyp: bool| -> Result<RealClosureClass> {
        if s != 0 {
            return Err(Error::InternalInconsistency(format!("{psi}: case ({label}) with trace signature {s}")));
        }
        Ok(RealClosureClass { case_label: label, r, hyperbolic_over_closure: hyp, two_times_hyperbolic_over_closure: true })
    };
    let from_root = |label: char, k: u64| -> Result<RealClosureClass> {
        if s % k != 0 {
            return Err(Error::InternalInconsistency(format!("{psi}: trace signature {s} not divisible by {k}")));
        }
        let r = exact_root(s / k, psi)?;
        Ok(RealClosureClass { case_label: label, r, hyperbolic_over_closure: r == 0, two_times_hyperbolic_over_closure: r == 0 })
    };
    match prof.inv_type {
        InvType::Orthogonal if real_ramified(psi, p) => {
            let r = prof.degree / 2;
            zero_sig('b', r, r % 2 == 0)
        }
        InvType::Orthogonal => from_root('a', 1),
        InvType::Symplectic if real_ramified(psi, p) => from_root('d', 4),
        InvType::Symplectic => zero_sig('c', prof.degree / 2, true),
        InvType::Unitary => {
            let c = unitary_centre(psi).expect("unitary expression has a centre");
            if c.sign_at(p) > 0 {
                zero_sig('f', prof.degree, true)
            } else {
                from_root('e', 2)
            }
        }
    }
}

/// Checks the 2-power bounds: if Psi^2 is split hyperbolic then
/// 2^Delta(m) x Psi is hyperbolic, and for a quaternion atom that
/// 2^m x Psi^2 hyperbolic forces 2^(m+1) x Psi hyperbolic, conversely when split.
pub fn gkar_bound_check(psi: &InvExpr) -> Result<bool> {
    require_rational(psi)?;
    let hyp = |e: &InvExpr| -> Result<bool> {
        is_hyperbolic_inv(e)?.value().ok_or_else(|| Error::UndecidableShape(e.to_string()))
    };
    let mult = |k: u32, e: &InvExpr| -> Result<InvExpr> {
        if k == 0 {
            Ok(e.clone())
        } else {
            InvExpr::multiple(1usize << k, e.clone())
        }
    };
    let sq = InvExpr::tensor(psi.clone(), psi.clone())?;
    let mut ok = true;
    if profile(&sq)?.index == Some(1) && hyp(&sq)? {
        let d = delta(delta_m(psi)?.max(1)) as u32;
        ok &= hyp(&mult(d, psi)?)?;
    }
    if psi.quat_slots().is_some() {
        let split = profile(psi)?.index == Some(1);
        for m in 0..=2u32 {
            let lhs = hyp(&mult(m, &sq)?)?;
            let rhs = hyp(&mult(m + 1, psi)?)?;
            if lhs && !rhs {
                ok = false;
            }
            if split && rhs && !lhs {
                ok = false;
            }
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Embedding;

    fn q(n: i64) -> FieldElem {
        FieldElem::q(n)
    }

    fn f(e: &[i64]) -> QForm {
        QForm::from_ints(e).unwrap()
    }

    fn st(e: &InvExpr) -> Status {
        is_hyperbolic_inv(e).unwrap().status
    }

    #[test]
    fn deciders() {
        assert_eq!(st(&InvExpr::UnitCan(q(1))), Status::True);
        let ss = InvExpr::QuatSS(q(-1), q(-1));
        let v = is_hyperbolic_inv(&InvExpr::tensor(ss.clone(), ss.clone()).unwrap()).unwrap();
        assert_eq!(v.status, Status::False);
        assert_eq!(v.criterion, "bqhyp-split-factor");
        let j = is_hyperbolic_inv(&InvExpr::tensor(InvExpr::Ad(f(&[1, -2])), ss.clone()).unwrap()).unwrap();
        assert_eq!((j.status, j.criterion.as_str()), (Status::True, "jacobson-trace"));
        assert_eq!(st(&InvExpr::Ad(f(&[1, -1]))), Status::True);
        assert_eq!(st(&InvExpr::Ad(f(&[1, 1]))), Status::False);
        assert_eq!(st(&InvExpr::QuatOO(q(-1), q(-1))), Status::False);
        assert_eq!(st(&InvExpr::QuatOO(q(1), q(3))), Status::True);
        let two = |a: i64, b: i64| is_hyperbolic_inv(&InvExpr::multiple(2, InvExpr::QuatOO(q(a), q(b))).unwrap()).unwrap();
        let v = two(-1, -1);
        assert_eq!((v.status, v.criterion.as_str()), (Status::True, "final-n1"));
        assert_eq!(two(-1, 3).status, Status::False);
        assert_eq!(two(3, 3).status, Status::True);
        let s = serde_json::to_string(&Verdict::decided(false, "bqhyp-split-factor")).unwrap();
        assert_eq!(s, r#"{"status":"False","criterion":"bqhyp-split-factor"}"#);
    }

    #[test]
    fn final_criteria() {
        assert!(two_power_hyperbolic_orth_quat(&q(2), &q(-1), 1).unwrap());
        assert!(!two_power_hyperbolic_orth_quat(&q(-1), &q(1), 1).unwrap());
        assert!(two_power_hyperbolic_orth_quat(&q(7), &q(-1), 2).unwrap());
        assert_eq!(two_power_hyperbolic_orth_quat(&q(0), &q(1), 1), Err(Error::ZeroElement));
        for (a, b, n) in [(7, -1, 2), (2, -1, 1), (5, 3, 1), (-3, -5, 3), (6, 1, 2)] {
            let w = final_witness(&q(a), &q(b), n).unwrap();
            if let Some(w) = w {
                assert!(w.verify(&BigRational::from_integer(a.into()), &BigRational::from_integer(b.into()), n), "{a} {b} {n} {w:?}");
            }
        }
    }

    #[test]
    fn weak_and_t() {
        assert!(!weakly_hyperbolic(&InvExpr::QuatSS(q(-1), q(-1))).unwrap().weakly_hyperbolic);
        let w = weakly_hyperbolic(&InvExpr::Ad(f(&[1, -2]))).unwrap();
        assert_eq!(w, WeakHyperbolicity { weakly_hyperbolic: true, witness_n: Some(1) });
        assert!(!weakly_hyperbolic(&InvExpr::Ad(f(&[1, 1]))).unwrap().weakly_hyperbolic);
        let t = Preordering::sums_of_squares(BaseField::Rationals).unwrap();
        let r = t_hyperbolic_inv(&InvExpr::Ad(f(&[1, -7])), &t).unwrap();
        assert!(r.hyperbolic);
        assert_eq!(r.witness, Some(QForm::pfister(BaseField::Rationals, &[q(-1), q(-1)]).unwrap()));
        assert!(!t_hyperbolic_inv(&InvExpr::Ad(f(&[1, 1])), &t).unwrap().hyperbolic);
        let k = BaseField::quadratic(2).unwrap();
        let s2 = FieldElem::sqrt_d(k).unwrap();
        let e = InvExpr::QuatSS(s2.clone(), FieldElem::from_int(k, -1));
        // <<sqrt 2, -1>> has signature 0 where sqrt 2 > 0 and 4 where sqrt 2 < 0
        let tp = Preordering::new(k, vec![s2.clone()]).unwrap();
        assert!(t_hyperbolic_inv(&e, &tp).unwrap().hyperbolic);
        let tm = Preordering::new(k, vec![-&s2]).unwrap();
        assert!(!t_hyperbolic_inv(&e, &tm).unwrap().hyperbolic);
    }

    #[test]
    fn over_sqrt() {
        let v = |e: InvExpr, a: i64| hyperbolic_over_sqrt(&e, &q(a)).unwrap().status;
        assert_eq!(v(InvExpr::Ad(f(&[1, -7, 2, -14])), 7), Status::True);
        assert_eq!(v(InvExpr::Ad(f(&[1, 1])), 7), Status::False);
        assert_eq!(v(InvExpr::QuatSS(q(2), q(3)), -1), Status::True);
    }

    #[test]
    fn real_closure() {
        let p = Ordering { base: BaseField::Rationals, embedding: Embedding::Canonical };
        let c = |e: InvExpr| classify_at_real_closure(&e, &p).unwrap();
        let d = c(InvExpr::QuatSS(q(-1), q(-1)));
        assert_eq!((d.case_label, d.r), ('d', 1));
        let a = c(InvExpr::Ad(f(&[1, 1, -1])));
        assert_eq!((a.case_label, a.r), ('a', 1));
        let u = c(InvExpr::UnitCan(q(1)));
        assert_eq!(u.case_label, 'f');
        assert!(u.hyperbolic_over_closure);
        let b = c(InvExpr::QuatOO(q(-1), q(-1)));
        assert_eq!((b.case_label, b.r, b.hyperbolic_over_closure, b.two_times_hyperbolic_over_closure), ('b', 1, false, true));
        let k = BaseField::quadratic(-2).unwrap();
        let ord = Ordering { base: k, embedding: Embedding::Canonical };
        assert_eq!(
            classify_at_real_closure(&InvExpr::Id(k), &ord),
            Err(Error::NonrealOrdering)
        );
    }

    #[test]
    fn gkar() {
        assert!(gkar_bound_check(&InvExpr::Ad(f(&[1, -2]))).unwrap());
        assert!(gkar_bound_check(&InvExpr::QuatOO(q(2), q(-1))).unwrap());
        assert!(gkar_bound_check(&InvExpr::Ad(f(&[1]))).unwrap());
    }
}
