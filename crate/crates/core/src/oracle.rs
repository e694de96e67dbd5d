//! Brute-force searches used to certify decisions made from local invariants.
//! Nothing here proves non-existence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::integer::{exact_sqrt, squarefree_decompose};
use crate::qform::QForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub height_bound: u64,
    pub escalation_factor: u64,
    pub max_rounds: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { height_bound: 50, escalation_factor: 4, max_rounds: 5 }
    }
}

impl SearchBudget {
    pub fn new(height_bound: u64, escalation_factor: u64, max_rounds: u32) -> Result<SearchBudget> {
        if height_bound == 0 || escalation_factor == 0 || max_rounds == 0 {
            return Err(Error::InvalidArgument("search budget entries must be positive".into()));
        }
        Ok(SearchBudget { height_bound, escalation_factor, max_rounds })
    }

    /// Height limit of each escalation round.
    pub fn rounds(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut h = self.height_bound;
        for _ in 0..self.max_rounds {
            out.push(h);
            h = h.saturating_mul(self.escalation_factor);
        }
        out
    }

    pub fn max_height(&self) -> u64 {
        *self.rounds().last().expect("at least one round")
    }
}

fn isqrt_exact(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2).max(0)..=r + 2).find(|x| x * x == n)
}

/// First nonnegative solution of sum c_i w_i^2 = 0 with max |w_i| = h, in
/// colex order; w_0 is solved for.
fn search_level(c: &[i128], h: i128) -> Option<Vec<i128>> {
    let n = c.len();
    let mut w = vec![0i128; n];
    // odometer over w_1..w_{n-1}, most significant last
    loop {
        let top = w[1..].iter().any(|&x| x == h);
        let s: i128 = (1..n).map(|i| c[i] * w[i] * w[i]).sum();
        if s % c[0] == 0 {
            if let Some(w0) = isqrt_exact(-s / c[0]) {
                if w0 <= h && (top || w0 == h) && (w0 != 0 || w[1..].iter().any(|&x| x != 0)) {
                    let mut v = w.clone();
                    v[0] = w0;
                    return Some(v);
                }
            }
        }
        let mut i = 1;
        loop {
            if i == n {
                return None;
            }
            if w[i] < h {
                w[i] += 1;
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// A primitive integer isotropic vector of phi over Q, by increasing height
/// with escalating limits.
pub fn find_isotropic_vector(phi: &QForm, budget: &SearchBudget) -> Result<Option<Vec<BigInt>>> {
    if phi.dim() < 2 {
        return Ok(None);
    }
    // a = p/q with pq = s r^2; w solves <s> iff v = w q / r solves <a>
    let mut cls = Vec::new();
    let mut scale = Vec::new();
    for e in phi.entries() {
        let a = e.as_rational().ok_or(Error::UnsupportedField)?;
        let (s, r) = squarefree_decompose(&(a.numer() * a.denom()));
        let s = s.to_i128().filter(|x| x.abs() < 1 << 40).ok_or_else(|| Error::InvalidArgument("entries too large to search".into()))?;
        cls.push(s);
        scale.push(BigRational::new(a.denom().clone(), r));
    }
    let mut h = 0u64;
    for limit in budget.rounds() {
        while h < limit {
            h += 1;
            if let Some(w) = search_level(&cls, h as i128) {
                let v: Vec<BigRational> =
                    w.iter().zip(&scale).map(|(x, s)| BigRational::from_integer(BigInt::from(*x)) * s).collect();
                let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
                let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                return Ok(Some(ints.into_iter().map(|x| x / &g).collect()));
            }
        }
    }
    Ok(None)
}

fn rational_square_root(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    Some(BigRational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

/// A solution of x^2 - a y^2 = t with x, y >= 0, searching y = Y/q by
/// increasing max(q, Y), smaller q first.
pub fn norm_equation(a: &BigRational, t: &BigRational, budget: &SearchBudget) -> Option<(BigRational, BigRational)> {
    if a.is_zero() || t.is_zero() {
        return None;
    }
    let hmax = budget.max_height();
    for h in 0..=hmax {
        let h_b = BigInt::from(h);
        let mut pairs: Vec<(BigInt, BigInt)> = Vec::new();
        // pairs with max(q, Y) = h, q >= 1
        for q in 1..=h {
            let qb = BigInt::from(q);
            if q == h {
                for y in 0..=h {
                    pairs.push((qb.clone(), BigInt::from(y)));
                }
            } else {
                pairs.push((qb, h_b.clone()));
            }
        }
        for (q, y) in pairs {
            let yr = BigRational::new(y, q);
            let rhs = t + a * &yr * &yr;
            if let Some(x) = rational_square_root(&rhs) {
                return Some((x, yr));
            }
        }
    }
    None
}

/// Nonincreasing tuples of m nonnegative integers with sum of squares n.
fn squares_tuple(n: &BigInt, m: usize, cap: &BigInt) -> Option<Vec<BigInt>> {
    if m == 0 {
        return n.is_zero().then(Vec::new);
    }
    if n.is_zero() {
        return Some(vec![BigInt::zero(); m]);
    }
    // the largest entry is at least sqrt(n/m)
    let mut x = n.sqrt().min(cap.clone());
    loop {
        let x2 = &x * &x;
        if &x2 * BigInt::from(m) < *n {
            return None;
        }
        if let Some(mut rest) = squares_tuple(&(n - &x2), m - 1, &x) {
            rest.insert(0, x);
            return Some(rest);
        }
        if x.is_zero() {
            return None;
        }
        x -= 1;
    }
}

/// A rational m-tuple with sum of squares q, trying denominators in order.
pub fn sum_squares_witness(q: &BigRational, m: usize, budget: &SearchBudget) -> Option<Vec<BigRational>> {
    if !q.is_positive() || m == 0 {
        return None;
    }
    for d in 1..=budget.max_height() {
        let db = BigInt::from(d);
        let n = q * BigRational::from_integer(&db * &db);
        if !n.is_integer() {
            continue;
        }
        let n = n.to_integer();
        if let Some(t) = squares_tuple(&n, m, &n) {
            return Some(t.into_iter().map(|x| BigRational::new(x, db.clone())).collect());
        }
    }
    None
}
