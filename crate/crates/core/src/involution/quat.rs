//! Quaternion atoms: isomorphism, flip-flop rewrites, similitude factors and
//! embeddings of quadratic etale algebras.

use serde_json::json;

use super::{class_int, InvExpr, QuatKind};
use crate::error::{Error, Result};
use crate::exactnum::{BaseField, FieldElem, Ordering};
use crate::hyperbolic::Verdict;
use crate::qform::{is_hyperbolic_form, is_pfister_multiple, represents, witt_decompose, QForm};

fn rational_only(xs: &[&FieldElem]) -> Result<()> {
    for x in xs {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !x.base().is_rational() {
            return Err(Error::UnsupportedField);
        }
    }
    Ok(())
}

/// Whether (a .| b) and (c .| d) are isomorphic over Q.
pub fn quat_orth_iso(a: &FieldElem, b: &FieldElem, c: &FieldElem, d: &FieldElem) -> Result<bool> {
    rational_only(&[a, b, c, d])?;
    if class_int(a)? != class_int(c)? {
        return Ok(false);
    }
    represents(&QForm::pfister(BaseField::Rationals, std::slice::from_ref(a))?, &(b * d))
}

/// Rewrites a tensor of two quaternion atoms by the flip-flop identities
/// (a .| b)(c .| d) = (a .|. bc)(c .|. ad) and (a .| b)(c .|. d) = (a .|. bc)(c .| ad),
/// in either direction.
pub fn flip_flop(psi: &InvExpr) -> Result<InvExpr> {
    let (l, r) = match psi {
        InvExpr::Tensor(l, r) => (l.as_ref(), r.as_ref()),
        _ => return Err(Error::ShapeMismatch(format!("{psi} is not a tensor of two quaternion atoms"))),
    };
    let out = match (l, r) {
        (InvExpr::QuatOO(a, b), InvExpr::QuatOO(c, d)) => (InvExpr::QuatSS(a.clone(), b * c), InvExpr::QuatSS(c.clone(), a * d)),
        (InvExpr::QuatOO(a, b), InvExpr::QuatSS(c, d)) => (InvExpr::QuatSS(a.clone(), b * c), InvExpr::QuatOO(c.clone(), a * d)),
        (InvExpr::QuatSS(a, x), InvExpr::QuatSS(c, y)) => {
            (InvExpr::QuatOO(a.clone(), x.div(c)?), InvExpr::QuatOO(c.clone(), y.div(a)?))
        }
        (InvExpr::QuatSS(a, x), InvExpr::QuatOO(c, y)) => {
            (InvExpr::QuatOO(a.clone(), x.div(c)?), InvExpr::QuatSS(c.clone(), y.div(a)?))
        }
        _ => return Err(Error::ShapeMismatch(format!("{psi} has no flip-flop shape"))),
    };
    InvExpr::tensor(out.0, out.1)
}

/// Membership of u in the group G(Psi) of similitude factors, for atoms over Q.
pub fn g_membership(psi: &InvExpr, u: &FieldElem) -> Result<bool> {
    rational_only(&[u])?;
    if !psi.base().is_rational() {
        return Err(Error::UnsupportedField);
    }
    let q = BaseField::Rationals;
    if let Some((kind, a, b)) = psi.quat_slots() {
        return match kind {
            QuatKind::Symp => represents(&QForm::pfister(q, &[a, b])?, u),
            QuatKind::Orth => {
                let pa = QForm::pfister(q, &[a])?;
                Ok(represents(&pa, u)? || represents(&pa, &u.div(&b)?)?)
            }
        };
    }
    match psi {
        InvExpr::UnitCan(c) => represents(&QForm::pfister(q, std::slice::from_ref(c))?, u),
        InvExpr::Id(_) => Ok(u.is_square()),
        InvExpr::Ad(phi) => crate::qform::witt_equivalent(phi, &phi.scale(u)?),
        _ => Err(Error::UnsupportedShape(format!("similitude factors of {psi}"))),
    }
}

/// Whether (a)_K embeds into Psi, on the shapes where this is decided directly.
pub fn embeds_quadratic_etale(a: &FieldElem, psi: &InvExpr) -> Result<Verdict> {
    rational_only(&[a])?;
    psi.check()?;
    if !psi.base().is_rational() {
        return Err(Error::UnsupportedField);
    }
    let q = BaseField::Rationals;
    let yes_no = |b: bool, c: &str| Verdict::decided(b, c);
    if let Some((kind, b, c)) = psi.quat_slots() {
        return Ok(match kind {
            // skew elements are the multiples of i, with i^2 = b
            QuatKind::Orth => yes_no(class_int(a)? == class_int(&b)?, "embed-skew-line"),
            QuatKind::Symp => {
                let pure = QForm::new(q, vec![b.clone(), c.clone(), -(&b * &c)])?;
                yes_no(represents(&pure, a)?, "embed-pure-quaternion")
            }
        });
    }
    match psi {
        InvExpr::UnitCan(c) => Ok(yes_no(class_int(a)? == class_int(c)?, "embed-centre")),
        InvExpr::Id(_) => Ok(yes_no(false, "embed-degree")),
        InvExpr::Ad(phi) => {
            if a.is_square() {
                return Ok(yes_no(is_hyperbolic_form(phi)?, "hyper-char"));
            }
            let d = witt_decompose(phi)?;
            let ok = d.witt_index % 2 == 0
                && (d.anisotropic_part.dim() == 0 || is_pfister_multiple(&d.anisotropic_part, a)?);
            let mut v = yes_no(ok, "embed-pfister-multiple");
            v.witness = Some(json!({
                "anisotropic_part": d.anisotropic_part.to_string(),
                "witt_index": d.witt_index,
            }));
            Ok(v)
        }
        _ => Ok(Verdict::undecided(&format!("embedding into {psi}"))),
    }
}

/// Whether the real place induced by P ramifies: an odd number of quaternion
/// atoms with both slots negative at P.
pub fn real_ramified(psi: &InvExpr, p: &Ordering) -> bool {
    if let Some((_, a, b)) = psi.quat_slots() {
        return a.sign_at(p) < 0 && b.sign_at(p) < 0;
    }
    match psi {
        InvExpr::Tensor(l, r) => real_ramified(l, p) ^ real_ramified(r, p),
        InvExpr::Multiple(_, e) => real_ramified(e, p),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::Status;

    fn q(n: i64) -> FieldElem {
        FieldElem::q(n)
    }

    #[test]
    fn orth_iso() {
        assert_eq!(quat_orth_iso(&q(2), &q(3), &q(2), &q(6)), Ok(true));
        assert_eq!(quat_orth_iso(&q(2), &q(3), &q(3), &q(2)), Ok(false));
        assert_eq!(quat_orth_iso(&q(5), &q(7), &q(5), &q(7)), Ok(true));
        assert_eq!(quat_orth_iso(&q(0), &q(7), &q(5), &q(7)), Err(Error::ZeroElement));
    }

    #[test]
    fn flip_flops() {
        let (a, b, c, d) = (q(2), q(3), q(5), q(7));
        let t = InvExpr::tensor(InvExpr::QuatOO(a.clone(), b.clone()), InvExpr::QuatOO(c.clone(), d.clone())).unwrap();
        let s = flip_flop(&t).unwrap();
        assert_eq!(
            s,
            InvExpr::tensor(InvExpr::QuatSS(q(2), q(15)), InvExpr::QuatSS(q(5), q(14))).unwrap()
        );
        assert_eq!(flip_flop(&s).unwrap(), t);
        let m = InvExpr::tensor(InvExpr::QuatOO(a, b), InvExpr::QuatSS(c, d)).unwrap();
        assert_eq!(
            flip_flop(&m).unwrap(),
            InvExpr::tensor(InvExpr::QuatSS(q(2), q(15)), InvExpr::QuatOO(q(5), q(14))).unwrap()
        );
        let e = InvExpr::tensor(InvExpr::QuatOO(q(-1), q(1)), InvExpr::QuatOO(q(-1), q(-1))).unwrap();
        assert_eq!(
            flip_flop(&e).unwrap(),
            InvExpr::tensor(InvExpr::QuatSS(q(-1), q(-1)), InvExpr::QuatSS(q(-1), q(1))).unwrap()
        );
        assert!(matches!(flip_flop(&InvExpr::Id(BaseField::Rationals)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn similitudes() {
        assert_eq!(g_membership(&InvExpr::QuatSS(q(-1), q(-1)), &q(2)), Ok(true));
        assert_eq!(g_membership(&InvExpr::QuatSS(q(-1), q(-1)), &q(-1)), Ok(false));
        assert_eq!(g_membership(&InvExpr::QuatOO(q(2), q(3)), &q(3)), Ok(true));
    }

    #[test]
    fn embeddings() {
        let st = |a: i64, e: InvExpr| embeds_quadratic_etale(&q(a), &e).unwrap().status;
        assert_eq!(st(-1, InvExpr::QuatSS(q(2), q(3))), Status::True);
        assert_eq!(st(7, InvExpr::Ad(QForm::from_ints(&[1, -7]).unwrap())), Status::True);
        assert_eq!(st(5, InvExpr::QuatOO(q(2), q(3))), Status::False);
        let t = InvExpr::tensor(InvExpr::QuatOO(q(2), q(3)), InvExpr::QuatOO(q(2), q(3))).unwrap();
        assert_eq!(st(5, t), Status::Undecided);
    }
}
