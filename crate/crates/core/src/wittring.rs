//! The Witt ring of Q, Lewis polynomials, torsion orders and preorderings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::integer::squarefree_part;
use crate::exactnum::{BaseField, FieldElem, Ordering};
use crate::qform::{anisotropic_ints, hyperbolic_ints, QForm};

/// A Witt class over Q, stored by an anisotropic representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClass {
    classes: Vec<BigInt>,
}

impl WittClass {
    pub fn of(phi: &QForm) -> Result<WittClass> {
        Self::from_classes(phi.rational_classes()?)
    }

    fn from_classes(c: Vec<BigInt>) -> Result<WittClass> {
        let mut a = anisotropic_ints(&c)?;
        a.sort();
        Ok(WittClass { classes: a })
    }

    pub fn zero() -> WittClass {
        WittClass { classes: Vec::new() }
    }

    pub fn representative(&self) -> QForm {
        QForm::from_bigints(&self.classes)
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn signature(&self) -> i64 {
        self.classes.iter().map(|x| if x > &BigInt::from(0) { 1 } else { -1 }).sum()
    }

    /// Equality of classes (representatives are only unique up to isometry).
    pub fn equivalent(&self, other: &WittClass) -> bool {
        witt_add(self, &witt_neg(other)).is_zero()
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative())
    }
}

pub fn witt_add(x: &WittClass, y: &WittClass) -> WittClass {
    let mut c = x.classes.clone();
    c.extend(y.classes.iter().cloned());
    WittClass::from_classes(c).expect("decomposition over Q")
}

pub fn witt_neg(x: &WittClass) -> WittClass {
    WittClass { classes: x.classes.iter().map(|a| -a).collect() }
}

pub fn witt_mul(x: &WittClass, y: &WittClass) -> WittClass {
    let mut c = Vec::with_capacity(x.dim() * y.dim());
    for a in &x.classes {
        for b in &y.classes {
            c.push(squarefree_part(&(a * b)));
        }
    }
    WittClass::from_classes(c).expect("decomposition over Q")
}

/// The class of |m| x <sign(m)>.
pub fn witt_int(m: i64) -> WittClass {
    let s = BigInt::from(m.signum());
    WittClass { classes: vec![s; m.unsigned_abs() as usize] }
}

/// L_n(X) = prod_{i=0}^{n} (X - n + 2i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LewisPolynomial {
    pub n: usize,
}

impl LewisPolynomial {
    pub fn roots(&self) -> Vec<i64> {
        let n = self.n as i64;
        (0..=n).map(|i| n - 2 * i).collect()
    }
}

/// Partial products of prod (alpha - c) over the given roots, in order.
pub fn eval_from_roots(alpha: &WittClass, roots: &[i64]) -> Vec<WittClass> {
    let mut acc = witt_int(1);
    let mut out = Vec::with_capacity(roots.len());
    for &c in roots {
        let factor = witt_add(alpha, &witt_int(-c));
        acc = witt_mul(&acc, &factor);
        out.push(acc.clone());
    }
    out
}

/// L_{dim phi}([phi]) together with the products after each linear factor.
pub fn lewis_eval_steps(phi: &QForm) -> Result<Vec<WittClass>> {
    let alpha = WittClass::of(phi)?;
    let roots = LewisPolynomial { n: phi.dim() }.roots();
    Ok(eval_from_roots(&alpha, &roots))
}

pub fn lewis_eval(phi: &QForm) -> Result<WittClass> {
    Ok(lewis_eval_steps(phi)?.pop().expect("at least one factor"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TorsionOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for TorsionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionOrder::Finite(n) => write!(f, "{n}"),
            TorsionOrder::Infinite => f.write_str("Infinite"),
        }
    }
}

const TORSION_DOUBLING_CAP: u32 = 16;

/// Least 2-power m with m x alpha = 0, or Infinite when the signature is nonzero.
pub fn torsion_order(alpha: &WittClass) -> Result<TorsionOrder> {
    if alpha.signature() != 0 {
        return Ok(TorsionOrder::Infinite);
    }
    let mut cur = alpha.classes.clone();
    for k in 0..=TORSION_DOUBLING_CAP {
        if cur.is_empty() || hyperbolic_ints(&cur) {
            return Ok(TorsionOrder::Finite(1u64 << k));
        }
        let mut doubled = cur.clone();
        doubled.extend(cur.iter().cloned());
        cur = doubled;
    }
    Err(Error::InternalInconsistency(format!("{alpha} has signature 0 but no 2-power multiple vanished")))
}

/// Torsion order of the Witt class of a form over Q.
pub fn form_torsion_order(phi: &QForm) -> Result<TorsionOrder> {
    torsion_order(&WittClass::of(phi)?)
}

/// A preordering given by finitely many generators over the sums of squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preordering {
    base: BaseField,
    generators: Vec<FieldElem>,
    x_t: Vec<Ordering>,
}

impl Preordering {
    pub fn new(base: BaseField, generators: Vec<FieldElem>) -> Result<Preordering> {
        for g in &generators {
            if g.base() != base {
                return Err(Error::MixedFields);
            }
            if g.is_zero() {
                return Err(Error::ZeroElement);
            }
        }
        let x_t: Vec<Ordering> = base
            .orderings()
            .into_iter()
            .filter(|p| generators.iter().all(|g| g.sign_at(p) > 0))
            .collect();
        if x_t.is_empty() {
            return Err(Error::ImproperPreordering);
        }
        Ok(Preordering { base, generators, x_t })
    }

    /// The preordering of sums of squares.
    pub fn sums_of_squares(base: BaseField) -> Result<Preordering> {
        Preordering::new(base, Vec::new())
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn generators(&self) -> &[FieldElem] {
        &self.generators
    }

    /// The orderings containing T.
    pub fn x_t(&self) -> &[Ordering] {
        &self.x_t
    }

    /// Products of nonempty subsets of the generators, up to square classes.
    fn generator_products(&self) -> Vec<FieldElem> {
        let mut out: Vec<FieldElem> = Vec::new();
        let n = self.generators.len().min(12);
        for mask in 1u32..(1 << n) {
            let mut p = FieldElem::one(self.base);
            for (i, g) in self.generators.iter().take(n).enumerate() {
                if mask & (1 << i) != 0 {
                    p = &p * g;
                }
            }
            let c = p.square_class().expect("nonzero");
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Display for Preordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("preord(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

fn check(phi: &QForm, t: &Preordering) -> Result<()> {
    if phi.base() != t.base {
        Err(Error::MixedFields)
    } else {
        Ok(())
    }
}

pub fn t_signature(phi: &QForm, t: &Preordering) -> Result<BTreeMap<Ordering, i64>> {
    check(phi, t)?;
    t.x_t.iter().map(|p| Ok((*p, phi.signature(p)?))).collect()
}

pub fn t_positive(phi: &QForm, t: &Preordering) -> Result<bool> {
    check(phi, t)?;
    Ok(phi.dim() >= 1 && phi.entries().iter().all(|a| t.x_t.iter().all(|p| a.sign_at(p) > 0)))
}

pub fn t_isotropic(phi: &QForm, t: &Preordering) -> Result<bool> {
    check(phi, t)?;
    let n = phi.dim() as i64;
    Ok(t.x_t.iter().all(|p| phi.signature(p).expect("same field").abs() < n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct THyperbolic {
    pub hyperbolic: bool,
    /// A T-positive Pfister form tau with tau x phi hyperbolic (over Q only).
    pub witness: Option<QForm>,
}

const WITNESS_MAX_SLOTS: usize = 6;

/// Multisets of size k drawn from n items, as index lists.
pub(crate) fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Candidate T-positive Pfister forms <<t1..tk>> with slots in {-1} and
/// minus products of generators, by increasing k.
pub fn t_positive_pfister_candidates(t: &Preordering, max_slots: usize) -> Vec<QForm> {
    let base = t.base;
    let mut slots = vec![FieldElem::from_int(base, -1)];
    for p in t.generator_products() {
        let s = -&p;
        let c = s.square_class().expect("nonzero");
        if !slots.iter().any(|x| x.square_class().expect("nonzero") == c) {
            slots.push(s);
        }
    }
    let mut out = Vec::new();
    for k in 0..=max_slots {
        for ms in multisets(slots.len(), k) {
            let chosen: Vec<FieldElem> = ms.iter().map(|&i| slots[i].clone()).collect();
            out.push(QForm::pfister(base, &chosen).expect("nonzero slots"));
        }
    }
    out
}

pub fn t_hyperbolic_form(phi: &QForm, t: &Preordering) -> Result<THyperbolic> {
    let sig = t_signature(phi, t)?;
    let hyperbolic = sig.values().all(|&s| s == 0);
    if !hyperbolic || !phi.base().is_rational() {
        return Ok(THyperbolic { hyperbolic, witness: None });
    }
    let alpha = WittClass::of(phi)?;
    for tau in t_positive_pfister_candidates(t, WITNESS_MAX_SLOTS) {
        if witt_mul(&WittClass::of(&tau)?, &alpha).is_zero() {
            return Ok(THyperbolic { hyperbolic, witness: Some(tau) });
        }
    }
    Err(Error::InternalInconsistency(format!("no T-positive Pfister witness for {phi}")))
}

/// Number of binary digits 1 of n.
pub fn digit_count(n: u64) -> u32 {
    n.count_ones()
}

/// Delta(n) = 2n - 1 - d(n) - d(n-1).
pub fn delta(n: u64) -> u64 {
    assert!(n >= 1, "delta needs n >= 1");
    2 * n - 1 - digit_count(n) as u64 - digit_count(n - 1) as u64
}

/// The exponent of 2 in n!, equal to n - d(n).
pub fn factorial_two_adic(n: u64) -> u64 {
    n - digit_count(n) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(e: &[i64]) -> QForm {
        QForm::from_ints(e).unwrap()
    }
    fn w(e: &[i64]) -> WittClass {
        WittClass::of(&f(e)).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert!(witt_add(&w(&[1]), &w(&[-1])).is_zero());
        assert!(witt_mul(&w(&[1, 1]), &w(&[1, -2])).is_zero());
        assert_eq!(witt_int(3), w(&[1, 1, 1]));
        assert!(witt_int(-2).equivalent(&w(&[-1, -1])));
    }

    #[test]
    fn lewis_examples() {
        assert!(lewis_eval(&f(&[5])).unwrap().is_zero());
        let steps = lewis_eval_steps(&f(&[1, 1])).unwrap();
        assert!(steps[0].is_zero());
        assert!(lewis_eval(&f(&[1, 1, -7])).unwrap().is_zero());
        assert_eq!(LewisPolynomial { n: 3 }.roots(), vec![3, 1, -1, -3]);
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(&w(&[1, -7])), Ok(TorsionOrder::Finite(4)));
        assert_eq!(torsion_order(&w(&[1, -2])), Ok(TorsionOrder::Finite(2)));
        assert_eq!(torsion_order(&w(&[1, 1])), Ok(TorsionOrder::Infinite));
        assert_eq!(torsion_order(&WittClass::zero()), Ok(TorsionOrder::Finite(1)));
    }

    #[test]
    fn preordering_examples() {
        let q2 = BaseField::quadratic(2).unwrap();
        let s = FieldElem::sqrt_d(q2).unwrap();
        let t = Preordering::new(q2, vec![s.clone()]).unwrap();
        let phi = QForm::new(q2, vec![s.clone()]).unwrap();
        let sig = t_signature(&phi, &t).unwrap();
        assert_eq!(sig.into_iter().map(|(p, v)| (p.to_string(), v)).collect::<Vec<_>>(), vec![("Plus".into(), 1)]);
        assert!(t_positive(&phi, &t).unwrap());

        let tq = Preordering::sums_of_squares(BaseField::Rationals).unwrap();
        assert!(t_positive(&f(&[1, 2]), &tq).unwrap());
        assert!(!t_positive(&f(&[-1]), &tq).unwrap());
        assert!(t_isotropic(&f(&[1, -2]), &tq).unwrap());
        assert!(!t_isotropic(&f(&[1, 1]), &tq).unwrap());
        let tm = Preordering::new(q2, vec![-&s]).unwrap();
        let phi2 = QForm::new(q2, vec![FieldElem::one(q2), s.clone()]).unwrap();
        assert!(t_isotropic(&phi2, &tm).unwrap());

        let h = t_hyperbolic_form(&f(&[1, -7]), &tq).unwrap();
        assert!(h.hyperbolic);
        assert_eq!(h.witness, Some(f(&[1, 1, 1, 1])));
        assert!(!t_hyperbolic_form(&f(&[1, 1]), &tq).unwrap().hyperbolic);
        let h = t_hyperbolic_form(&QForm::new(q2, vec![FieldElem::one(q2), -&s]).unwrap(), &t).unwrap();
        assert_eq!(h, THyperbolic { hyperbolic: true, witness: None });
        assert_eq!(Preordering::new(BaseField::Rationals, vec![FieldElem::q(-1)]), Err(Error::ImproperPreordering));
        assert_eq!(
            Preordering::sums_of_squares(BaseField::quadratic(-1).unwrap()),
            Err(Error::ImproperPreordering)
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(digit_count(6), 2);
        assert_eq!(delta(4), 4);
        assert_eq!(delta(2), 1);
        assert_eq!(factorial_two_adic(4), 3);
    }
}
