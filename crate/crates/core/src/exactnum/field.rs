use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::integer::{exact_sqrt, is_squarefree, squarefree_decompose, squarefree_part};
use super::Rational;
use crate::error::{Error, Result};

/// The base field: Q or Q(sqrt d) with d squarefree, d != 0, 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseField {
    Rationals,
    Quadratic(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Embedding {
    Canonical,
    Plus,
    Minus,
}

/// A real ordering of a base field, given by a real embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ordering {
    pub base: BaseField,
    pub embedding: Embedding,
}

impl BaseField {
    pub fn quadratic(d: i64) -> Result<BaseField> {
        if d == 0 || d == 1 || !is_squarefree(&BigInt::from(d)) {
            return Err(Error::InvalidArgument(format!("{d} is not a squarefree integer other than 0, 1")));
        }
        Ok(BaseField::Quadratic(d))
    }

    pub fn d(&self) -> Option<i64> {
        match self {
            BaseField::Rationals => None,
            BaseField::Quadratic(d) => Some(*d),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, BaseField::Rationals)
    }

    pub fn is_real(&self) -> bool {
        !self.orderings().is_empty()
    }

    pub fn orderings(&self) -> Vec<Ordering> {
        match *self {
            BaseField::Rationals => vec![Ordering { base: *self, embedding: Embedding::Canonical }],
            BaseField::Quadratic(d) if d > 0 => vec![
                Ordering { base: *self, embedding: Embedding::Plus },
                Ordering { base: *self, embedding: Embedding::Minus },
            ],
            BaseField::Quadratic(_) => vec![],
        }
    }

    /// Field join used when mixing a rational constant into a quadratic field.
    pub fn join(self, other: BaseField) -> Result<BaseField> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            _ => Err(Error::MixedFields),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Quadratic(d) => write!(f, "Q(sqrt {d})"),
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.embedding {
            Embedding::Canonical => "Canonical",
            Embedding::Plus => "Plus",
            Embedding::Minus => "Minus",
        };
        f.write_str(s)
    }
}

/// An element a + b*sqrt(d) of a base field (b = 0 over Q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    base: BaseField,
    a: Rational,
    b: Rational,
}

impl FieldElem {
    pub fn new(base: BaseField, a: Rational, b: Rational) -> FieldElem {
        let b = if base.is_rational() { Rational::zero() } else { b };
        FieldElem { base, a, b }
    }

    pub fn rational(base: BaseField, a: Rational) -> FieldElem {
        FieldElem { base, a, b: Rational::zero() }
    }

    pub fn from_int(base: BaseField, n: i64) -> FieldElem {
        Self::rational(base, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(base: BaseField, n: BigInt) -> FieldElem {
        Self::rational(base, Rational::from_integer(n))
    }

    /// Element of Q from an integer.
    pub fn q(n: i64) -> FieldElem {
        Self::from_int(BaseField::Rationals, n)
    }

    pub fn q_frac(n: i64, d: i64) -> FieldElem {
        Self::rational(BaseField::Rationals, Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// sqrt(d) itself; None over Q.
    pub fn sqrt_d(base: BaseField) -> Option<FieldElem> {
        base.d().map(|_| FieldElem { base, a: Rational::zero(), b: Rational::one() })
    }

    pub fn zero(base: BaseField) -> FieldElem {
        Self::from_int(base, 0)
    }

    pub fn one(base: BaseField) -> FieldElem {
        Self::from_int(base, 1)
    }

    pub fn base(&self) -> BaseField {
        self.base
    }
    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, when b = 0.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn d_rat(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.base.d().unwrap_or(0)))
    }

    pub fn conj(&self) -> FieldElem {
        FieldElem { base: self.base, a: self.a.clone(), b: -self.b.clone() }
    }

    /// Norm to Q: a^2 - d b^2.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.d_rat() * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(FieldElem { base: self.base, a: &c.a / &n, b: &c.b / &n })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut r = FieldElem::one(self.base);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// A square root in the same field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(q) = rational_sqrt(&self.a).filter(|_| self.b.is_zero()) {
            return Some(FieldElem::rational(self.base, q));
        }
        let d = self.base.d()?;
        let dr = self.d_rat();
        if self.b.is_zero() {
            // a = d * t^2 gives sqrt(a) = t sqrt(d)
            let t = rational_sqrt(&(&self.a / &dr))?;
            let _ = d;
            return Some(FieldElem { base: self.base, a: Rational::zero(), b: t });
        }
        let n = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt(&cand) {
                let v = &self.b / (&two * &u);
                return Some(FieldElem { base: self.base, a: u, b: v });
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Sign under the real embedding selected by `p`; exact.
    pub fn sign_at(&self, p: &Ordering) -> i8 {
        let sb = match p.embedding {
            Embedding::Minus => -sign_of(&self.b),
            _ => sign_of(&self.b),
        };
        let sa = sign_of(&self.a);
        if p.base.d().is_none() || sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * self.d_rat();
        match lhs.cmp(&rhs) {
            CmpOrdering::Greater => sa,
            CmpOrdering::Less => sb,
            CmpOrdering::Equal => 0,
        }
    }

    /// The integer squarefree representative of a nonzero rational, with sign.
    pub fn rational_class(q: &Rational) -> Result<BigInt> {
        if q.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(squarefree_part(&(q.numer() * q.denom())))
    }

    /// Canonical representative of the square class of x.
    pub fn square_class(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.b.is_zero() {
            let s = Self::rational_class(&self.a)?;
            return Ok(match self.base.d() {
                None => FieldElem::from_bigint(self.base, s),
                Some(d) => {
                    // s and s*d lie in the same class once sqrt(d) is adjoined
                    let t = squarefree_part(&(&s * BigInt::from(d)));
                    let pick = match t.abs().cmp(&s.abs()) {
                        CmpOrdering::Less => t,
                        CmpOrdering::Greater => s,
                        CmpOrdering::Equal => s.max(t),
                    };
                    FieldElem::from_bigint(self.base, pick)
                }
            });
        }
        let l = self.a.denom().lcm(self.b.denom());
        let l2 = Rational::from_integer(&l * &l);
        let a = (&self.a * &l2).to_integer();
        let b = (&self.b * &l2).to_integer();
        let g = a.gcd(&b);
        let (_, r) = squarefree_decompose(&g);
        let r2 = &r * &r;
        Ok(FieldElem {
            base: self.base,
            a: Rational::from_integer(a / &r2),
            b: Rational::from_integer(b / &r2),
        })
    }

    /// Whether x and y lie in the same square class (both nonzero).
    pub fn same_square_class(&self, other: &FieldElem) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.base != other.base {
            return Err(Error::MixedFields);
        }
        Ok((self * other).is_square())
    }

    pub fn check_same(&self, other: &FieldElem) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Rational square root, if q is a square in Q.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

fn binop(x: &FieldElem, y: &FieldElem) -> BaseField {
    assert_eq!(x.base, y.base, "arithmetic across base fields");
    x.base
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        let base = binop(self, o);
        FieldElem { base, a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        let base = binop(self, o);
        FieldElem { base, a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        let base = binop(self, o);
        let d = self.d_rat();
        FieldElem {
            base,
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { base: self.base, a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let mag = {
            let n = self.b.numer().abs();
            let coeff = if n.is_one() { String::new() } else { n.to_string() };
            if self.b.denom().is_one() {
                format!("{coeff}s")
            } else {
                format!("{coeff}s/{}", self.b.denom())
            }
        };
        let neg = self.b.is_negative();
        if self.a.is_zero() {
            write!(f, "{}{}", if neg { "-" } else { "" }, mag)
        } else {
            write!(f, "{}{}{}", fmt_rational(&self.a), if neg { "-" } else { "+" }, mag)
        }
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

/// Structural total order (for use as map keys); not a field ordering.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        (self.base, &self.a, &self.b).cmp(&(other.base, &other.a, &other.b))
    }
}
