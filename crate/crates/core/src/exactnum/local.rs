use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::integer::{is_prime, prime_divisors, valuation};
use super::Rational;
use crate::error::{Error, Result};

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    RealInfinite,
    Finite(BigInt),
}

impl Place {
    pub fn prime(p: i64) -> Place {
        Place::Finite(BigInt::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::RealInfinite => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Legendre symbol (a|p) for an odd prime p.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if !is_prime(p) || p == &BigInt::from(2) {
        return Err(Error::BadPrime(p.to_string()));
    }
    Ok(legendre_unchecked(a, p))
}

fn legendre_unchecked(a: &BigInt, p: &BigInt) -> i8 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e: BigInt = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// A nonzero rational as an integer in the same square class.
fn integral(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

fn split_unit(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let v = valuation(n, p);
    (v, n / p.pow(v))
}

/// epsilon(u) = (u-1)/2 mod 2 and omega(u) = (u^2-1)/8 mod 2 for odd u.
fn eps(u: &BigInt) -> u32 {
    (u.mod_floor(&BigInt::from(4)).to_u32().unwrap() - 1) / 2
}

fn omega(u: &BigInt) -> u32 {
    match u.mod_floor(&BigInt::from(8)).to_u32().unwrap() {
        1 | 7 => 0,
        _ => 1,
    }
}

/// Hilbert symbol (a, b)_v over Q.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(hilbert_int(&integral(a), &integral(b), v))
}

/// Hilbert symbol on nonzero integers.
pub fn hilbert_int(a: &BigInt, b: &BigInt, v: &Place) -> i8 {
    match v {
        Place::RealInfinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split_unit(a, p);
            let (beta, w) = split_unit(b, p);
            let mut e: u32;
            if p == &BigInt::from(2) {
                e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                e %= 2;
                if e == 0 {
                    1
                } else {
                    -1
                }
            } else {
                e = (alpha * beta) % 2;
                let ep: BigInt = (p - 1u32) >> 1;
                let mut s: i8 = if e == 1 && ep.is_odd() { -1 } else { 1 };
                if beta % 2 == 1 {
                    s *= legendre_unchecked(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= legendre_unchecked(&w, p);
                }
                s
            }
        }
    }
}

/// Whether a nonzero integer is a square in the completion at v.
pub fn is_local_square_int(n: &BigInt, v: &Place) -> bool {
    match v {
        Place::RealInfinite => n.is_positive(),
        Place::Finite(p) => {
            let (k, u) = split_unit(n, p);
            if k % 2 == 1 {
                return false;
            }
            if p == &BigInt::from(2) {
                u.mod_floor(&BigInt::from(8)).is_one()
            } else {
                legendre_unchecked(&u, p) == 1
            }
        }
    }
}

pub fn is_local_square(q: &Rational, v: &Place) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(is_local_square_int(&integral(q), v))
}

/// The real place, 2, and every prime dividing one of the given nonzero integers.
pub fn relevant_places<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BTreeSet<Place> {
    let mut out = BTreeSet::new();
    out.insert(Place::RealInfinite);
    out.insert(Place::prime(2));
    for n in values {
        if n.abs() > BigInt::one() {
            for p in prime_divisors(n) {
                out.insert(Place::Finite(p));
            }
        }
    }
    out
}

/// Places where the quaternion algebra (a, b)_Q ramifies.
pub fn ramification(a: &BigInt, b: &BigInt) -> BTreeSet<Place> {
    relevant_places([a, b])
        .into_iter()
        .filter(|v| hilbert_int(a, b, v) == -1)
        .collect()
}
