//! Isotropy and isometry decisions over Q from local invariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::QForm;
use crate::error::{Error, Result};
use crate::exactnum::integer::squarefree_part;
use crate::exactnum::{hilbert_int, is_local_square_int, relevant_places, FieldElem, Place};

/// Square classes with multiplicities.
fn class_counts(a: &[BigInt]) -> BTreeMap<BigInt, u64> {
    let mut m = BTreeMap::new();
    for x in a {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

/// Squarefree class of the product of squarefree entries.
pub(crate) fn det_ints(a: &[BigInt]) -> BigInt {
    let mut d = BigInt::one();
    for (s, c) in class_counts(a) {
        if c % 2 == 1 {
            d = squarefree_part(&(d * s));
        }
    }
    d
}

/// The product over i < j of (a_i, a_j)_v.
pub(crate) fn hasse_ints(a: &[BigInt], v: &Place) -> i8 {
    let counts: Vec<(BigInt, u64)> = class_counts(a).into_iter().collect();
    let mut e = 1i8;
    for (i, (s, cs)) in counts.iter().enumerate() {
        if (cs * (cs - 1) / 2) % 2 == 1 {
            e *= hilbert_int(s, s, v);
        }
        for (t, ct) in &counts[i + 1..] {
            if (cs * ct) % 2 == 1 {
                e *= hilbert_int(s, t, v);
            }
        }
    }
    e
}

fn signature_ints(a: &[BigInt]) -> i64 {
    a.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum()
}

fn local_isotropic(a: &[BigInt], v: &Place) -> bool {
    let n = a.len();
    if let Place::RealInfinite = v {
        return signature_ints(a).unsigned_abs() < n as u64;
    }
    let d = det_ints(a);
    match n {
        0 | 1 => false,
        2 => is_local_square_int(&(-d), v),
        3 => hilbert_int(&BigInt::from(-1), &(-d), v) == hasse_ints(a, v),
        4 => {
            !is_local_square_int(&d, v)
                || hasse_ints(a, v) == hilbert_int(&BigInt::from(-1), &BigInt::from(-1), v)
        }
        _ => true,
    }
}

/// Isotropy of <a1..an> for squarefree integer entries.
pub(crate) fn iso_ints(a: &[BigInt]) -> bool {
    match a.len() {
        0 | 1 => false,
        2 => {
            let p = -(&a[0] * &a[1]);
            p.is_positive() && crate::exactnum::integer::exact_sqrt(&p).is_some()
        }
        3 | 4 => relevant_places(a.iter()).iter().all(|v| local_isotropic(a, v)),
        n => signature_ints(a).unsigned_abs() < n as u64,
    }
}

/// Hyperbolicity of <a1..an> for squarefree integer entries, from dimension,
/// signature, discriminant and Hasse invariants.
pub(crate) fn hyperbolic_ints(a: &[BigInt]) -> bool {
    let n = a.len();
    if n % 2 == 1 || signature_ints(a) != 0 {
        return false;
    }
    let m = (n / 2) as u64;
    let target_det = if m % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
    if det_ints(a) != target_det {
        return false;
    }
    let pairs_odd = (m * m.saturating_sub(1) / 2) % 2 == 1;
    relevant_places(a.iter())
        .iter()
        .filter(|v| !matches!(v, Place::RealInfinite))
        .all(|v| {
            let h = if pairs_odd { hilbert_int(&BigInt::from(-1), &BigInt::from(-1), v) } else { 1 };
            hasse_ints(a, v) == h
        })
}

/// Isotropy over Q by Hasse-Minkowski.
pub fn is_isotropic(phi: &QForm) -> Result<bool> {
    Ok(iso_ints(&phi.rational_classes()?))
}

/// Whether a lies in D(phi).
pub fn represents(phi: &QForm, a: &FieldElem) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if a.base() != phi.base() {
        return Err(Error::MixedFields);
    }
    let mut c = phi.rational_classes()?;
    let ca = FieldElem::rational_class(a.as_rational().expect("rational"))?;
    if c.len() == 1 {
        return Ok(c[0] == ca);
    }
    if iso_ints(&c) {
        return Ok(true);
    }
    c.push(-ca);
    Ok(iso_ints(&c))
}

pub fn is_hyperbolic_form(phi: &QForm) -> Result<bool> {
    Ok(hyperbolic_ints(&phi.rational_classes()?))
}

pub fn witt_equivalent(phi: &QForm, psi: &QForm) -> Result<bool> {
    if phi.base() != psi.base() {
        return Err(Error::MixedFields);
    }
    is_hyperbolic_form(&phi.perp(&psi.neg())?)
}

/// Discriminant-free determinant class of a form over Q.
pub fn determinant_class(phi: &QForm) -> Result<BigInt> {
    Ok(det_ints(&phi.rational_classes()?))
}

/// Hasse invariant at a place (product of Hilbert symbols over pairs of entries).
pub fn hasse_invariant(phi: &QForm, v: &Place) -> Result<i8> {
    Ok(hasse_ints(&phi.rational_classes()?, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(e: &[i64]) -> QForm {
        QForm::from_ints(e).unwrap()
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic(&f(&[1, -1])).unwrap());
        assert!(!is_isotropic(&f(&[1, 1, -7])).unwrap());
        assert!(is_isotropic(&f(&[1, 1, -2])).unwrap());
        assert!(is_isotropic(&f(&[1, 1, 1, 1, -7])).unwrap());
        assert!(!is_isotropic(&f(&[1, 1, -7, -7])).unwrap());
        assert!(!is_isotropic(&f(&[1, 1, 1])).unwrap());
        assert!(!is_isotropic(&f(&[3])).unwrap());
        let q2 = crate::exactnum::BaseField::quadratic(2).unwrap();
        assert_eq!(is_isotropic(&QForm::ones(q2, 2)), Err(Error::UnsupportedField));
    }

    #[test]
    fn represents_examples() {
        assert!(represents(&f(&[1, 1]), &FieldElem::q(2)).unwrap());
        assert!(!represents(&f(&[1, 1]), &FieldElem::q(7)).unwrap());
        assert!(represents(&f(&[1, -7]), &FieldElem::q(-7)).unwrap());
        assert!(represents(&f(&[5]), &FieldElem::q(20)).unwrap());
        assert_eq!(represents(&f(&[1]), &FieldElem::q(0)), Err(Error::ZeroElement));
    }

    #[test]
    fn hyperbolic_examples() {
        assert!(is_hyperbolic_form(&f(&[1, -1])).unwrap());
        // <<7,7>> = <<7,-1>> is anisotropic: 7 is not a sum of two squares
        assert!(!is_hyperbolic_form(&f(&[1, -7, -7, 49])).unwrap());
        assert!(!is_isotropic(&f(&[1, -7, -7, 49])).unwrap());
        assert!(is_hyperbolic_form(&f(&[1, -2, -2, 4])).unwrap());
        assert!(witt_equivalent(&f(&[1, 1]), &f(&[2, 2])).unwrap());
        assert!(!witt_equivalent(&f(&[1, 1]), &f(&[3, 3])).unwrap());
        assert!(!is_hyperbolic_form(&f(&[1, -7, 1, -7])).unwrap());
        assert!(is_hyperbolic_form(&f(&[1, -7, 1, -7, 1, -7, 1, -7])).unwrap());
        assert!(is_hyperbolic_form(&f(&[1, 1, -2, -2])).unwrap());
    }
}
