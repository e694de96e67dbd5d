//! Anisotropic parts over Q on square classes alone, without coordinates.
//! A split-off complement is rebuilt from its local invariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::isotropy::{det_ints, hasse_ints, hyperbolic_ints, iso_ints};
use crate::error::{Error, Result};
use crate::exactnum::integer::{is_prime, prime_divisors, squarefree_part};
use crate::exactnum::{hilbert_int, is_local_square_int, relevant_places, Place};

const MAX_TABULATED_PRIMES: usize = 20;
/// Auxiliary primes tried when no product of bad primes is represented.
const AUX_PRIME_LIMIT: i64 = 1 << 16;

/// A form known only through its invariants, with its Hasse invariant
/// tabulated on a set of places outside which it is trivial.
struct Invariants {
    dim: usize,
    det: BigInt,
    sig: i64,
    hasse: BTreeMap<Place, i8>,
}

impl Invariants {
    fn new(dim: usize, det: BigInt, sig: i64, base: &[BigInt], twist: (BigInt, BigInt)) -> Invariants {
        let mut vals = base.to_vec();
        vals.extend([det.clone(), twist.0.clone(), twist.1.clone()]);
        let hasse = relevant_places(vals.iter())
            .into_iter()
            .map(|v| {
                let h = hasse_ints(base, &v) * hilbert_int(&twist.0, &twist.1, &v);
                (v, h)
            })
            .collect();
        Invariants { dim, det, sig, hasse }
    }

    fn places_with(&self, x: &BigInt) -> Vec<Place> {
        let mut out: Vec<Place> = self.hasse.keys().cloned().collect();
        for p in prime_divisors(x) {
            let v = Place::Finite(p);
            if !self.hasse.contains_key(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Whether the form represents x, via isotropy of F + <-x>.
    fn represents(&self, x: &BigInt) -> bool {
        let m = self.dim + 1;
        let sig = self.sig - if x.is_positive() { 1 } else { -1 };
        if sig.unsigned_abs() >= m as u64 {
            return false;
        }
        if m >= 5 {
            return true;
        }
        let neg_x = -x;
        let d = squarefree_part(&(&neg_x * &self.det));
        let minus_one = BigInt::from(-1);
        self.places_with(x).iter().filter(|v| !matches!(v, Place::RealInfinite)).all(|v| {
            let s = self.hasse.get(v).copied().unwrap_or(1) * hilbert_int(&self.det, &neg_x, v);
            match m {
                2 => is_local_square_int(&(-&d), v),
                3 => hilbert_int(&minus_one, &(-&d), v) == s,
                _ => !is_local_square_int(&d, v) || s == hilbert_int(&minus_one, &minus_one, v),
            }
        })
    }

    /// A squarefree x represented by the form: signed products of the
    /// tabulated primes, times at most one auxiliary prime.
    fn represented_value(&self) -> Result<BigInt> {
        let primes: Vec<BigInt> = self
            .hasse
            .keys()
            .filter_map(|v| match v {
                Place::Finite(p) => Some(p.clone()),
                Place::RealInfinite => None,
            })
            .collect();
        if primes.len() > MAX_TABULATED_PRIMES {
            return Err(Error::InternalInconsistency(format!("{} bad primes in a complement", primes.len())));
        }
        let mut products: Vec<BigInt> = (0u32..1 << primes.len())
            .map(|mask| {
                primes.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| p.clone()).product()
            })
            .collect();
        products.sort();
        let aux = std::iter::once(BigInt::one())
            .chain((3..AUX_PRIME_LIMIT).map(BigInt::from).filter(|q| is_prime(q) && !primes.contains(q)));
        for q in aux {
            for p in &products {
                for x in [p * &q, -(p * &q)] {
                    if self.represents(&x) {
                        return Ok(x);
                    }
                }
            }
        }
        Err(Error::InternalInconsistency("no value represented by a complement".into()))
    }

    fn build(mut self) -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(self.dim);
        while self.dim > 1 {
            let x = self.represented_value()?;
            // F = <x> + F2 with s(F) = (x, det F2) s(F2)
            let det2 = squarefree_part(&(&self.det * &x));
            for v in self.places_with(&x) {
                let h = self.hasse.get(&v).copied().unwrap_or(1) * hilbert_int(&x, &det2, &v);
                self.hasse.insert(v, h);
            }
            self.det = det2;
            self.sig -= if x.is_positive() { 1 } else { -1 };
            self.dim -= 1;
            out.push(x);
        }
        if self.dim == 1 {
            out.push(self.det.clone());
        }
        Ok(out)
    }
}

/// The complement C of a hyperbolic plane in the isotropic form b = H + C.
fn complement(b: &[BigInt]) -> Result<Vec<BigInt>> {
    let det_b = det_ints(b);
    let det_c = squarefree_part(&(-&det_b));
    if b.len() == 2 {
        return Ok(Vec::new());
    }
    if b.len() == 3 {
        return Ok(vec![det_c]);
    }
    // s(H + C) = (-1, det C) s(C)
    let sig = b.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum();
    let inv = Invariants::new(b.len() - 2, det_c.clone(), sig, b, (BigInt::from(-1), det_c));
    let c = inv.build()?;
    let mut check: Vec<BigInt> = b.to_vec();
    check.extend(c.iter().map(|x| -x));
    check.push(BigInt::one());
    check.push(BigInt::from(-1));
    if !hyperbolic_ints(&check) {
        return Err(Error::InternalInconsistency("rebuilt complement has the wrong invariants".into()));
    }
    Ok(c)
}

/// A small isotropic subset of indices, of size at most 5.
fn support(vals: &[BigInt]) -> Vec<usize> {
    let n = vals.len();
    let pool: Vec<usize> = if n <= 5 {
        (0..n).collect()
    } else {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| vals[i].abs().cmp(&vals[j].abs()).then(i.cmp(&j)));
        let mut pool = idx[..5].to_vec();
        let pos = pool.iter().any(|&i| vals[i].is_positive());
        let neg = pool.iter().any(|&i| vals[i].is_negative());
        if !(pos && neg) {
            let other = idx.iter().copied().find(|&i| vals[i].is_positive() != pos).expect("indefinite form");
            pool[4] = other;
        }
        pool
    };
    for size in 2..pool.len() {
        for sub in super::witt::subsets(&pool, size) {
            let s: Vec<BigInt> = sub.iter().map(|&i| vals[i].clone()).collect();
            if iso_ints(&s) {
                return sub;
            }
        }
    }
    pool
}

/// Anisotropic part of a form with squarefree integer entries, as classes.
pub(crate) fn anisotropic_classes(a: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut vals: Vec<BigInt> = Vec::with_capacity(a.len());
    for x in a {
        // cancel <s, -s> on the way in
        if let Some(i) = vals.iter().position(|y| y == &-x) {
            vals.swap_remove(i);
        } else {
            vals.push(x.clone());
        }
    }
    while iso_ints(&vals) {
        let sub = support(&vals);
        let b: Vec<BigInt> = sub.iter().map(|&i| vals[i].clone()).collect();
        let c = complement(&b)?;
        let mut next: Vec<BigInt> = vals.iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|(_, x)| x.clone()).collect();
        next.extend(c);
        vals = next;
    }
    Ok(vals)
}
