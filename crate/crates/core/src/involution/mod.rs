//! Algebras with involution as expression trees: profiles (type, degree,
//! centre, Brauer data), trace forms and signatures.

mod quat;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{is_local_square_int, ramification, BaseField, FieldElem, Ordering, Place};
use crate::qform::QForm;

pub use quat::{embeds_quadratic_etale, flip_flop, g_membership, quat_orth_iso, real_ramified};

/// An algebra with involution built from atoms by tensor products and multiples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InvExpr {
    /// (K, id).
    Id(BaseField),
    /// (a)_K: K(sqrt a) with its conjugation.
    UnitCan(FieldElem),
    /// (a .| b): orthogonal, i negated, j fixed.
    QuatOO(FieldElem, FieldElem),
    /// (a .|. b): the canonical symplectic involution.
    QuatSS(FieldElem, FieldElem),
    /// (a | b), isomorphic to (-ab .| b).
    QuatPO(FieldElem, FieldElem),
    /// (a |. b), isomorphic to (b .| a).
    QuatOP(FieldElem, FieldElem),
    Ad(QForm),
    Tensor(Box<InvExpr>, Box<InvExpr>),
    /// m x Psi = Ad(m x <1>) tensor Psi.
    Multiple(usize, Box<InvExpr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuatKind {
    Orth,
    Symp,
}

fn nonzero(xs: &[&FieldElem]) -> Result<()> {
    if xs.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroElement);
    }
    Ok(())
}

impl InvExpr {
    pub fn unit(a: FieldElem) -> Result<InvExpr> {
        nonzero(&[&a])?;
        Ok(InvExpr::UnitCan(a))
    }

    pub fn quat(kind: QuatKind, a: FieldElem, b: FieldElem) -> Result<InvExpr> {
        nonzero(&[&a, &b])?;
        a.check_same(&b)?;
        Ok(match kind {
            QuatKind::Orth => InvExpr::QuatOO(a, b),
            QuatKind::Symp => InvExpr::QuatSS(a, b),
        })
    }

    pub fn ad(phi: QForm) -> Result<InvExpr> {
        if phi.dim() == 0 {
            return Err(Error::InvalidArgument("Ad needs a nonzero form".into()));
        }
        Ok(InvExpr::Ad(phi))
    }

    /// Tensor product; unitary factors must share their centre.
    pub fn tensor(l: InvExpr, r: InvExpr) -> Result<InvExpr> {
        let t = InvExpr::Tensor(Box::new(l), Box::new(r));
        t.check()?;
        Ok(t)
    }

    pub fn multiple(m: usize, e: InvExpr) -> Result<InvExpr> {
        if m == 0 {
            return Err(Error::InvalidArgument("multiple needs m >= 1".into()));
        }
        Ok(InvExpr::Multiple(m, Box::new(e)))
    }

    /// Psi tensored with itself m times, nested to the left.
    pub fn power(e: InvExpr, m: usize) -> Result<InvExpr> {
        if m == 0 {
            return Err(Error::InvalidArgument("power needs m >= 1".into()));
        }
        let mut acc = e.clone();
        for _ in 1..m {
            acc = InvExpr::tensor(acc, e.clone())?;
        }
        Ok(acc)
    }

    pub fn base(&self) -> BaseField {
        match self {
            InvExpr::Id(b) => *b,
            InvExpr::UnitCan(a) => a.base(),
            InvExpr::QuatOO(a, _) | InvExpr::QuatSS(a, _) | InvExpr::QuatPO(a, _) | InvExpr::QuatOP(a, _) => {
                a.base()
            }
            InvExpr::Ad(phi) => phi.base(),
            InvExpr::Tensor(l, _) => l.base(),
            InvExpr::Multiple(_, e) => e.base(),
        }
    }

    /// Validates fields, nonzero slots and unitary centres.
    pub fn check(&self) -> Result<()> {
        self.centre_class().map(|_| ())
    }

    /// The quaternion atom as (kind, a, b) after rewriting (a | b) and (a |. b)
    /// into the orthogonal shape.
    pub fn quat_slots(&self) -> Option<(QuatKind, FieldElem, FieldElem)> {
        match self {
            InvExpr::QuatOO(a, b) => Some((QuatKind::Orth, a.clone(), b.clone())),
            InvExpr::QuatSS(a, b) => Some((QuatKind::Symp, a.clone(), b.clone())),
            InvExpr::QuatPO(a, b) => Some((QuatKind::Orth, -(a * b), b.clone())),
            InvExpr::QuatOP(a, b) => Some((QuatKind::Orth, b.clone(), a.clone())),
            _ => None,
        }
    }

    /// Common centre element of the unitary factors, if any.
    fn centre_class(&self) -> Result<Option<FieldElem>> {
        match self {
            InvExpr::Id(_) => Ok(None),
            InvExpr::UnitCan(a) => {
                nonzero(&[a])?;
                Ok(Some(a.clone()))
            }
            InvExpr::QuatOO(a, b) | InvExpr::QuatSS(a, b) | InvExpr::QuatPO(a, b) | InvExpr::QuatOP(a, b) => {
                nonzero(&[a, b])?;
                a.check_same(b)?;
                Ok(None)
            }
            InvExpr::Ad(phi) => {
                if phi.dim() == 0 {
                    return Err(Error::InvalidArgument("Ad needs a nonzero form".into()));
                }
                Ok(None)
            }
            InvExpr::Tensor(l, r) => {
                if l.base() != r.base() {
                    return Err(Error::MixedFields);
                }
                match (l.centre_class()?, r.centre_class()?) {
                    (Some(c), Some(d)) => {
                        if c.same_square_class(&d)? {
                            Ok(Some(c))
                        } else {
                            Err(Error::MixedUnitaryCentres)
                        }
                    }
                    (c, d) => Ok(c.or(d)),
                }
            }
            InvExpr::Multiple(m, e) => {
                if *m == 0 {
                    return Err(Error::InvalidArgument("multiple needs m >= 1".into()));
                }
                e.centre_class()
            }
        }
    }

    fn kind_sign(&self) -> i8 {
        match self {
            InvExpr::Id(_) | InvExpr::Ad(_) | InvExpr::QuatOO(..) | InvExpr::QuatPO(..) | InvExpr::QuatOP(..) => 1,
            InvExpr::QuatSS(..) => -1,
            InvExpr::UnitCan(_) => 0,
            InvExpr::Tensor(l, r) => l.kind_sign() * r.kind_sign(),
            InvExpr::Multiple(_, e) => e.kind_sign(),
        }
    }

    fn degree(&self) -> u64 {
        match self {
            InvExpr::Id(_) | InvExpr::UnitCan(_) => 1,
            InvExpr::QuatOO(..) | InvExpr::QuatSS(..) | InvExpr::QuatPO(..) | InvExpr::QuatOP(..) => 2,
            InvExpr::Ad(phi) => phi.dim() as u64,
            InvExpr::Tensor(l, r) => l.degree() * r.degree(),
            InvExpr::Multiple(m, e) => *m as u64 * e.degree(),
        }
    }

    /// Ramification of the first-kind part, over Q.
    fn lifted_ramification(&self) -> Result<BTreeSet<Place>> {
        if let Some((_, a, b)) = self.quat_slots() {
            return Ok(ramification(&class_int(&a)?, &class_int(&b)?));
        }
        match self {
            InvExpr::Tensor(l, r) => {
                let x = l.lifted_ramification()?;
                let y = r.lifted_ramification()?;
                Ok(x.symmetric_difference(&y).cloned().collect())
            }
            InvExpr::Multiple(_, e) => e.lifted_ramification(),
            _ => Ok(BTreeSet::new()),
        }
    }
}

/// Squarefree integer class of a rational field element.
pub(crate) fn class_int(x: &FieldElem) -> Result<BigInt> {
    let q = x.as_rational().ok_or(Error::UnsupportedField)?;
    FieldElem::rational_class(q)
}

impl fmt::Display for InvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvExpr::Id(_) => f.write_str("id"),
            InvExpr::UnitCan(a) => write!(f, "u({a})"),
            InvExpr::QuatOO(a, b) => write!(f, "qo({a},{b})"),
            InvExpr::QuatSS(a, b) => write!(f, "qs({a},{b})"),
            InvExpr::QuatPO(a, b) => write!(f, "qpo({a},{b})"),
            InvExpr::QuatOP(a, b) => write!(f, "qop({a},{b})"),
            InvExpr::Ad(phi) => write!(f, "ad({phi})"),
            InvExpr::Tensor(l, r) => write!(f, "tens({l},{r})"),
            InvExpr::Multiple(m, e) => write!(f, "nx({m},{e})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvType {
    Orthogonal,
    Symplectic,
    Unitary,
}

impl InvType {
    /// +1, -1 or 0.
    pub fn epsilon(self) -> i64 {
        match self {
            InvType::Orthogonal => 1,
            InvType::Symplectic => -1,
            InvType::Unitary => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Centre {
    Base,
    /// K(sqrt c) with c the canonical square class representative.
    Quadratic(String),
    SplitEtale,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvProfile {
    #[serde(rename = "type")]
    pub inv_type: InvType,
    pub degree: u64,
    pub centre: Centre,
    /// Places where the Brauer class is nontrivial; None over quadratic fields.
    pub brauer_ramification: Option<BTreeSet<Place>>,
    pub index: Option<u8>,
    pub degenerate: bool,
}

pub fn profile(psi: &InvExpr) -> Result<InvProfile> {
    let centre = psi.centre_class()?;
    let inv_type = match psi.kind_sign() {
        1 => InvType::Orthogonal,
        -1 => InvType::Symplectic,
        _ => InvType::Unitary,
    };
    let degenerate = centre.as_ref().is_some_and(|c| c.is_square());
    let centre_out = match &centre {
        None => Centre::Base,
        Some(_) if degenerate => Centre::SplitEtale,
        Some(c) => Centre::Quadratic(c.square_class()?.to_string()),
    };
    let (ram, index) = if psi.base().is_rational() {
        let mut r = psi.lifted_ramification()?;
        if let Some(c) = &centre {
            // a local invariant survives over Q(sqrt c) only where c is a local square
            let ci = class_int(c)?;
            r.retain(|v| is_local_square_int(&ci, v));
        }
        let idx = if r.is_empty() { 1 } else { 2 };
        (Some(r), Some(idx))
    } else {
        (None, None)
    };
    Ok(InvProfile { inv_type, degree: psi.degree(), centre: centre_out, brauer_ramification: ram, index, degenerate })
}

/// dim_K of the underlying algebra: [Z:K] deg^2.
pub fn algebra_dim(psi: &InvExpr) -> Result<u64> {
    let p = profile(psi)?;
    let k = if p.inv_type == InvType::Unitary { 2 } else { 1 };
    Ok(k * p.degree * p.degree)
}

/// Trace form in factored shape: [2 x] [<<c>> tensor] core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    pub pfister_factor: Option<FieldElem>,
    pub core: QForm,
    pub scale_two: bool,
}

impl TraceForm {
    pub fn expanded(&self) -> QForm {
        let base = self.core.base();
        let mut f = match &self.pfister_factor {
            Some(c) => QForm::pfister(base, std::slice::from_ref(c))
                .and_then(|p| p.tensor(&self.core))
                .expect("same field"),
            None => self.core.clone(),
        };
        if self.scale_two {
            f = f.scale(&FieldElem::from_int(base, 2)).expect("nonzero");
        }
        f
    }
}

impl fmt::Display for TraceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expanded())
    }
}

pub fn trace_form(psi: &InvExpr) -> Result<TraceForm> {
    psi.check()?;
    trace_rec(psi)
}

fn trace_rec(psi: &InvExpr) -> Result<TraceForm> {
    let base = psi.base();
    if let Some((kind, a, b)) = psi.quat_slots() {
        let second = match kind {
            QuatKind::Orth => -b,
            QuatKind::Symp => b,
        };
        return Ok(TraceForm { pfister_factor: None, core: QForm::pfister(base, &[a, second])?, scale_two: true });
    }
    Ok(match psi {
        InvExpr::Id(_) => TraceForm { pfister_factor: None, core: QForm::ones(base, 1), scale_two: false },
        InvExpr::UnitCan(c) => {
            TraceForm { pfister_factor: Some(c.clone()), core: QForm::ones(base, 1), scale_two: false }
        }
        InvExpr::Ad(phi) => TraceForm { pfister_factor: None, core: phi.tensor(phi)?, scale_two: false },
        InvExpr::Tensor(l, r) => {
            let x = trace_rec(l)?;
            let y = trace_rec(r)?;
            TraceForm {
                pfister_factor: x.pfister_factor.or(y.pfister_factor),
                core: x.core.tensor(&y.core)?,
                scale_two: x.scale_two ^ y.scale_two,
            }
        }
        InvExpr::Multiple(m, e) => {
            let x = trace_rec(e)?;
            TraceForm { core: x.core.tensor(&QForm::ones(base, m * m))?, ..x }
        }
        _ => unreachable!("quaternion atoms handled above"),
    })
}

/// sign_P(Psi): the square root of sign_P(Tr Psi) / [Z:K].
pub fn inv_signature(psi: &InvExpr, p: &Ordering) -> Result<u64> {
    if p.base != psi.base() {
        return Err(Error::OrderingMismatch);
    }
    let prof = profile(psi)?;
    let k: i64 = if prof.inv_type == InvType::Unitary { 2 } else { 1 };
    let s = trace_form(psi)?.expanded().signature(p)?;
    if s < 0 || s % k != 0 {
        return Err(Error::InternalInconsistency(format!("trace signature {s} of {psi} is not {k} s^2")));
    }
    let q = (s / k) as u64;
    let r = (q as f64).sqrt().round() as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == q {
            return Ok(c);
        }
    }
    Err(Error::InternalInconsistency(format!("trace signature {s} of {psi} is not {k} s^2")))
}

/// (dim Sym, dim Skew).
pub fn sym_skew_dims(psi: &InvExpr) -> Result<(u64, u64)> {
    let p = profile(psi)?;
    if p.degenerate {
        return Err(Error::DegenerateAlgebra);
    }
    let n = p.degree;
    Ok(match p.inv_type {
        InvType::Orthogonal => (n * (n + 1) / 2, n * (n - 1) / 2),
        InvType::Symplectic => (n * (n - 1) / 2, n * (n + 1) / 2),
        InvType::Unitary => (n * n, n * n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldElem::q(n)
    }
    fn f(e: &[i64]) -> QForm {
        QForm::from_ints(e).unwrap()
    }
    const QQ: Ordering = Ordering { base: BaseField::Rationals, embedding: crate::exactnum::Embedding::Canonical };

    #[test]
    fn profiles() {
        let h = InvExpr::QuatSS(q(-1), q(-1));
        let p = profile(&h).unwrap();
        assert_eq!(p.inv_type, InvType::Symplectic);
        assert_eq!(p.degree, 2);
        assert_eq!(p.brauer_ramification.unwrap(), [Place::RealInfinite, Place::prime(2)].into());
        assert_eq!(p.index, Some(2));
        let p2 = profile(&InvExpr::tensor(h.clone(), h).unwrap()).unwrap();
        assert_eq!((p2.inv_type, p2.degree, p2.index), (InvType::Orthogonal, 4, Some(1)));
        assert!(p2.brauer_ramification.unwrap().is_empty());
        let u = profile(&InvExpr::UnitCan(q(4))).unwrap();
        assert!(u.degenerate);
        assert_eq!((u.inv_type, u.degree), (InvType::Unitary, 1));
        assert_eq!(
            InvExpr::tensor(InvExpr::UnitCan(q(2)), InvExpr::UnitCan(q(3))),
            Err(Error::MixedUnitaryCentres)
        );
    }

    #[test]
    fn traces() {
        assert_eq!(trace_form(&InvExpr::UnitCan(q(7))).unwrap().expanded(), f(&[1, -7]));
        assert_eq!(trace_form(&InvExpr::QuatSS(q(-1), q(-1))).unwrap().expanded(), f(&[2, 2, 2, 2]));
        assert_eq!(trace_form(&InvExpr::Ad(f(&[1, 1]))).unwrap().expanded(), f(&[1, 1, 1, 1]));
        // (a | b) behaves as (-ab .| b)
        let t = trace_form(&InvExpr::QuatPO(q(2), q(3))).unwrap().expanded();
        assert_eq!(t, trace_form(&InvExpr::QuatOO(q(-6), q(3))).unwrap().expanded());
    }

    #[test]
    fn signatures() {
        assert_eq!(inv_signature(&InvExpr::QuatSS(q(-1), q(-1)), &QQ), Ok(2));
        assert_eq!(inv_signature(&InvExpr::Ad(f(&[1, -1])), &QQ), Ok(0));
        assert_eq!(inv_signature(&InvExpr::UnitCan(q(-1)), &QQ), Ok(1));
    }

    #[test]
    fn sym_skew() {
        assert_eq!(sym_skew_dims(&InvExpr::QuatSS(q(-1), q(-1))), Ok((1, 3)));
        assert_eq!(sym_skew_dims(&InvExpr::Ad(f(&[1, 1]))), Ok((3, 1)));
        assert_eq!(sym_skew_dims(&InvExpr::UnitCan(q(-1))), Ok((1, 1)));
        assert_eq!(sym_skew_dims(&InvExpr::UnitCan(q(9))), Err(Error::DegenerateAlgebra));
    }
}
