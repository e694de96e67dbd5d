//! Diagonal quadratic forms: constructors, signatures, and (over Q) isotropy
//! and Witt decomposition.

mod classes;
mod isotropy;
mod witt;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{BaseField, FieldElem, Ordering};

pub use isotropy::{
    determinant_class, hasse_invariant, is_hyperbolic_form, is_isotropic, represents, witt_equivalent,
};
pub(crate) use isotropy::{hyperbolic_ints, iso_ints};
pub use witt::{is_pfister_multiple, ternary_zero, witt_decompose, CoordVector, WittDecomposition};
pub(crate) use witt::anisotropic_ints;

/// The form <a1, ..., an>; the empty list is the zero form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QForm {
    base: BaseField,
    entries: Vec<FieldElem>,
}

impl QForm {
    pub fn new(base: BaseField, entries: Vec<FieldElem>) -> Result<QForm> {
        for e in &entries {
            if e.base() != base {
                return Err(Error::MixedFields);
            }
            if e.is_zero() {
                return Err(Error::ZeroElement);
            }
        }
        Ok(QForm { base, entries })
    }

    /// Form over Q with integer entries.
    pub fn from_ints(entries: &[i64]) -> Result<QForm> {
        QForm::new(BaseField::Rationals, entries.iter().map(|&n| FieldElem::q(n)).collect())
    }

    pub(crate) fn from_bigints(entries: &[BigInt]) -> QForm {
        QForm {
            base: BaseField::Rationals,
            entries: entries.iter().map(|n| FieldElem::from_bigint(BaseField::Rationals, n.clone())).collect(),
        }
    }

    pub fn zero(base: BaseField) -> QForm {
        QForm { base, entries: Vec::new() }
    }

    /// m x <1>.
    pub fn ones(base: BaseField, m: usize) -> QForm {
        QForm { base, entries: vec![FieldElem::one(base); m] }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn same_field(&self, other: &QForm) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn perp(&self, other: &QForm) -> Result<QForm> {
        self.same_field(other)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(QForm { base: self.base, entries })
    }

    pub fn tensor(&self, other: &QForm) -> Result<QForm> {
        self.same_field(other)?;
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for x in &self.entries {
            for y in &other.entries {
                entries.push(x * y);
            }
        }
        Ok(QForm { base: self.base, entries })
    }

    pub fn scale(&self, a: &FieldElem) -> Result<QForm> {
        if a.base() != self.base {
            return Err(Error::MixedFields);
        }
        if a.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(QForm { base: self.base, entries: self.entries.iter().map(|x| x * a).collect() })
    }

    pub fn neg(&self) -> QForm {
        QForm { base: self.base, entries: self.entries.iter().map(|x| -x).collect() }
    }

    /// m x phi.
    pub fn multiple(&self, m: usize) -> Result<QForm> {
        if m == 0 {
            return Err(Error::InvalidArgument("multiple needs m >= 1".into()));
        }
        let mut entries = Vec::with_capacity(self.dim() * m);
        for _ in 0..m {
            entries.extend(self.entries.iter().cloned());
        }
        Ok(QForm { base: self.base, entries })
    }

    /// The m-fold tensor power.
    pub fn power(&self, m: usize) -> Result<QForm> {
        if m == 0 {
            return Err(Error::InvalidArgument("power needs m >= 1".into()));
        }
        let mut out = self.clone();
        for _ in 1..m {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    /// <<a1, ..., an>> = <1, -a1> x ... x <1, -an>.
    pub fn pfister(base: BaseField, slots: &[FieldElem]) -> Result<QForm> {
        let mut out = QForm::ones(base, 1);
        for a in slots {
            if a.base() != base {
                return Err(Error::MixedFields);
            }
            if a.is_zero() {
                return Err(Error::ZeroScalar);
            }
            out = out.tensor(&QForm { base, entries: vec![FieldElem::one(base), -a] })?;
        }
        Ok(out)
    }

    pub fn signature(&self, p: &Ordering) -> Result<i64> {
        if p.base != self.base {
            return Err(Error::OrderingMismatch);
        }
        Ok(self.entries.iter().map(|x| x.sign_at(p) as i64).sum())
    }

    /// Signatures at every ordering of the base field.
    pub fn signatures(&self) -> Vec<(Ordering, i64)> {
        self.base
            .orderings()
            .into_iter()
            .map(|p| (p, self.signature(&p).expect("own ordering")))
            .collect()
    }

    /// Squarefree integer representatives of the entries; Q only.
    pub fn rational_classes(&self) -> Result<Vec<BigInt>> {
        if !self.base.is_rational() {
            return Err(Error::UnsupportedField);
        }
        self.entries
            .iter()
            .map(|e| FieldElem::rational_class(e.as_rational().expect("rational entry")))
            .collect()
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("diag(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let q = BaseField::Rationals;
        assert_eq!(QForm::pfister(q, &[FieldElem::q(7)]).unwrap(), QForm::from_ints(&[1, -7]).unwrap());
        assert_eq!(
            QForm::pfister(q, &[FieldElem::q(-1), FieldElem::q(-1)]).unwrap(),
            QForm::from_ints(&[1, 1, 1, 1]).unwrap()
        );
        assert_eq!(
            QForm::from_ints(&[1, -2]).unwrap().multiple(2).unwrap(),
            QForm::from_ints(&[1, -2, 1, -2]).unwrap()
        );
        assert_eq!(
            QForm::from_ints(&[1]).unwrap().scale(&FieldElem::q(0)),
            Err(Error::ZeroScalar)
        );
        let q2 = BaseField::quadratic(2).unwrap();
        assert_eq!(
            QForm::ones(q2, 1).perp(&QForm::ones(q, 1)),
            Err(Error::MixedFields)
        );
    }

    #[test]
    fn signatures() {
        let p = BaseField::Rationals.orderings()[0];
        assert_eq!(QForm::from_ints(&[1, 1, -2]).unwrap().signature(&p), Ok(1));
        assert_eq!(QForm::from_ints(&[1, -7]).unwrap().signature(&p), Ok(0));
        let q2 = BaseField::quadratic(2).unwrap();
        let f = QForm::new(q2, vec![FieldElem::sqrt_d(q2).unwrap()]).unwrap();
        let s: Vec<i64> = f.signatures().into_iter().map(|(_, s)| s).collect();
        assert_eq!(s, vec![1, -1]);
        assert_eq!(f.signature(&p), Err(Error::OrderingMismatch));
    }
}
