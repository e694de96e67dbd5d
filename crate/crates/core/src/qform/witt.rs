//! Witt decomposition over Q with explicit isotropic vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::isotropy::iso_ints;
use super::QForm;
use crate::error::{Error, Result};
use crate::exactnum::integer::{exact_sqrt, sqrt_mod_squarefree, squarefree_decompose, squarefree_part};
use crate::exactnum::{rational_sqrt, BaseField, FieldElem, Rational};

/// Sparse coordinate vector in the basis of the input form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordVector {
    pub dim: usize,
    /// (index, coefficient) with increasing indices and nonzero coefficients.
    pub coords: Vec<(usize, String)>,
    #[serde(skip)]
    values: Vec<(usize, Rational)>,
}

impl CoordVector {
    fn from_sparse(dim: usize, v: &Sparse) -> CoordVector {
        let values: Vec<(usize, Rational)> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        CoordVector {
            dim,
            coords: values.iter().map(|(i, c)| (*i, c.to_string())).collect(),
            values,
        }
    }

    pub fn dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, c) in &self.values {
            out[*i] = c.clone();
        }
        out
    }

    pub fn support(&self) -> &[(usize, Rational)] {
        &self.values
    }
}

#[derive(Clone, Debug)]
pub struct WittDecomposition {
    pub anisotropic_part: QForm,
    pub witt_index: usize,
    pub isotropic_witnesses: Vec<CoordVector>,
}

type Sparse = Vec<(usize, Rational)>;

fn r_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

fn sp_scale(v: &Sparse, c: &Rational) -> Sparse {
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

fn sp_add(u: &Sparse, v: &Sparse) -> Sparse {
    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, x) in u.iter().chain(v.iter()) {
        *m.entry(*i).or_insert_with(Rational::zero) += x;
    }
    m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Current orthogonal basis element: squarefree value and its vector in input coordinates.
#[derive(Clone)]
struct Slot {
    value: BigInt,
    vec: Sparse,
}

fn normalized(value: &Rational, vec: Sparse) -> Slot {
    let s = FieldElem::rational_class(value).expect("nonzero");
    let r = rational_sqrt(&(value / r_int(&s))).expect("same class");
    Slot { value: s, vec: sp_scale(&vec, &(Rational::one() / r)) }
}

/// Integer zero of a x^2 + b y^2 + c z^2 = 0 for an isotropic ternary with
/// squarefree integer coefficients.
pub fn ternary_zero(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<[BigInt; 3]> {
    // (cz)^2 = -ac x^2 - bc y^2
    let (w, x, y) = legendre_solve(&(-(a * c)), &(-(b * c)))?;
    let v = [c * &x, c * &y, w];
    Ok(primitive(v))
}

fn primitive<const N: usize>(v: [BigInt; N]) -> [BigInt; N] {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.map(|x| x / &g)
}

/// Nonzero (W, X, Y) with W^2 = A X^2 + B Y^2, for nonzero A, B when solvable.
fn legendre_solve(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    let (sa, ka) = squarefree_decompose(a);
    let (sb, kb) = squarefree_decompose(b);
    let (w, x, y) = descent(&sa, &sb, 0)?;
    Ok((w * &ka * &kb, x * kb, y * ka))
}

fn descent(a: &BigInt, b: &BigInt, depth: usize) -> Result<(BigInt, BigInt, BigInt)> {
    if depth > 4096 {
        return Err(Error::InternalInconsistency("descent did not terminate".into()));
    }
    let one = BigInt::one();
    if a.is_one() {
        return Ok((one.clone(), one, BigInt::zero()));
    }
    if b.is_one() {
        return Ok((one.clone(), BigInt::zero(), one));
    }
    if a.abs() > b.abs() {
        let (w, x, y) = descent(b, a, depth + 1)?;
        return Ok((w, y, x));
    }
    if b.abs() <= one {
        // a = b = -1
        return Err(Error::InternalInconsistency("W^2 = -X^2 - Y^2 has no nonzero solution".into()));
    }
    let m = b.abs();
    let mut r = sqrt_mod_squarefree(a, &m)
        .ok_or_else(|| Error::InternalInconsistency(format!("{a} is not a square modulo {m}")))?;
    if &r * 2 > m {
        r -= &m;
    }
    let t = (&r * &r - a) / b;
    if t.is_zero() {
        return Ok((r, one, BigInt::zero()));
    }
    let (ts, tm) = squarefree_decompose(&t);
    let (w1, x1, y1) = descent(a, &ts, depth + 1)?;
    let w = &r * &w1 + a * &x1;
    let x = &w1 + &r * &x1;
    let y = &ts * &tm * &y1;
    let [w, x, y] = primitive([w, x, y]);
    Ok((w, x, y))
}

/// Coprime pairs (x, y), x >= 0, by increasing max(|x|, |y|).
fn small_pairs(limit: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..=limit).flat_map(|h| {
        let mut v = Vec::new();
        for x in 0..=h {
            for y in [h, -h] {
                if x.gcd(&y) == 1 {
                    v.push((x, y));
                }
            }
            if x == h {
                for y in -(h - 1)..h {
                    if x.gcd(&y) == 1 {
                        v.push((x, y));
                    }
                }
            }
        }
        v.into_iter()
    })
}

const SPLIT_SEARCH_LIMIT: i64 = 4000;

/// A nonzero rational zero of an isotropic diagonal form with squarefree
/// integer coefficients (dim <= 5).
fn isotropic_vector(a: &[BigInt]) -> Result<Vec<Rational>> {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if iso_ints(&[a[i].clone(), a[j].clone()]) {
                let r = exact_sqrt(&(-(&a[i] * &a[j]))).expect("square");
                let mut v = vec![Rational::zero(); n];
                v[i] = r_int(&r);
                v[j] = r_int(&a[i]);
                return Ok(v);
            }
        }
    }
    if n == 3 {
        let z = ternary_zero(&a[0], &a[1], &a[2])?;
        return Ok(z.iter().map(r_int).collect());
    }
    if n == 4 {
        for skip in 0..4 {
            let idx: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
            let sub: Vec<BigInt> = idx.iter().map(|&i| a[i].clone()).collect();
            if iso_ints(&sub) {
                let z = ternary_zero(&sub[0], &sub[1], &sub[2])?;
                let mut v = vec![Rational::zero(); 4];
                for (k, &i) in idx.iter().enumerate() {
                    v[i] = r_int(&z[k]);
                }
                return Ok(v);
            }
        }
    }
    if n < 4 {
        return Err(Error::InternalInconsistency("isotropic vector requested for anisotropic form".into()));
    }
    // <a0, a1> represents t with t perped to the rest isotropic
    for (x, y) in small_pairs(SPLIT_SEARCH_LIMIT) {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let t = &a[0] * &x * &x + &a[1] * &y * &y;
        if t.is_zero() {
            continue;
        }
        let ts = squarefree_part(&t);
        let mut rest: Vec<BigInt> = a[2..].to_vec();
        rest.push(ts.clone());
        if !iso_ints(&rest) {
            continue;
        }
        let sub = isotropic_vector(&rest)?;
        // t = ts * k^2 with k rational, so t (w/k)^2 = ts w^2
        let k = rational_sqrt(&(r_int(&t) / r_int(&ts))).expect("same class");
        let w = &sub[n - 2] / k;
        let mut v = vec![r_int(&x) * &w, r_int(&y) * &w];
        v.extend(sub[..n - 2].iter().cloned());
        return Ok(v);
    }
    Err(Error::InternalInconsistency("no splitting value found within the search limit".into()))
}

fn bilinear(vals: &[BigInt], x: &[Rational], y: &[Rational]) -> Rational {
    vals.iter()
        .zip(x.iter().zip(y.iter()))
        .map(|(a, (u, v))| r_int(a) * u * v)
        .sum()
}

/// Splits a hyperbolic plane off the span of `slots` containing the isotropic
/// vector `v` (coordinates in that span); returns the orthogonal complement.
fn split_off(slots: &[Slot], v: &[Rational]) -> Vec<Slot> {
    let k = slots.len();
    let vals: Vec<BigInt> = slots.iter().map(|s| s.value.clone()).collect();
    let j = (0..k).find(|&j| !v[j].is_zero()).expect("nonzero vector");
    let mut w = vec![Rational::zero(); k];
    w[j] = Rational::one() / (r_int(&vals[j]) * &v[j]);
    let c = bilinear(&vals, &w, &w);
    let half = c / Rational::from_integer(BigInt::from(2));
    let wp: Vec<Rational> = w.iter().zip(v.iter()).map(|(wi, vi)| wi - &half * vi).collect();
    // project basis vectors onto the orthogonal complement of <v, w'>
    let mut cands: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut e = vec![Rational::zero(); k];
            e[i] = Rational::one();
            let bw = bilinear(&vals, &e, &wp);
            let bv = bilinear(&vals, &e, v);
            (0..k).map(|t| &e[t] - &bw * &v[t] - &bv * &wp[t]).collect()
        })
        .collect();
    let basis = independent(&mut cands, k - 2);
    let diag = diagonalize(&vals, basis);
    diag.into_iter()
        .map(|u| {
            let q = bilinear(&vals, &u, &u);
            let mut vec: Sparse = Vec::new();
            for (t, s) in slots.iter().enumerate() {
                if !u[t].is_zero() {
                    vec = sp_add(&vec, &sp_scale(&s.vec, &u[t]));
                }
            }
            normalized(&q, vec)
        })
        .collect()
}

/// Picks `r` linearly independent vectors from `cands`.
fn independent(cands: &mut [Vec<Rational>], r: usize) -> Vec<Vec<Rational>> {
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    for c in cands.iter() {
        let mut x = c.clone();
        for (p, row) in &reduced {
            if !x[*p].is_zero() {
                let f = &x[*p] / &row[*p];
                for t in 0..x.len() {
                    x[t] = &x[t] - &f * &row[t];
                }
            }
        }
        if let Some(p) = (0..x.len()).find(|&t| !x[t].is_zero()) {
            reduced.push((p, x));
            chosen.push(c.clone());
            if chosen.len() == r {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), r, "complement has the wrong rank");
    chosen
}

/// Orthogonalizes a basis of a nondegenerate subspace.
fn diagonalize(vals: &[BigInt], mut b: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = b.len();
    for i in 0..n {
        if bilinear(vals, &b[i], &b[i]).is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !bilinear(vals, &b[j], &b[j]).is_zero()) {
                b.swap(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !bilinear(vals, &b[i], &b[j]).is_zero()) {
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(bj.iter()) {
                    *x += y;
                }
            }
        }
        let qi = bilinear(vals, &b[i], &b[i]);
        assert!(!qi.is_zero(), "degenerate complement");
        let bi = b[i].clone();
        for bj in b.iter_mut().skip(i + 1) {
            let f = bilinear(vals, bj, &bi) / &qi;
            if !f.is_zero() {
                for (x, y) in bj.iter_mut().zip(bi.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    b
}

/// Chooses a small isotropic sub-collection of slot indices.
fn isotropic_support(slots: &[Slot]) -> Vec<usize> {
    let n = slots.len();
    let pool: Vec<usize> = if n <= 5 {
        (0..n).collect()
    } else {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| slots[i].value.abs().cmp(&slots[j].value.abs()).then(i.cmp(&j)));
        let mut pool: Vec<usize> = idx[..5].to_vec();
        let pos = pool.iter().any(|&i| slots[i].value.is_positive());
        let neg = pool.iter().any(|&i| slots[i].value.is_negative());
        if !(pos && neg) {
            let want_pos = !pos;
            let other = idx
                .iter()
                .copied()
                .find(|&i| slots[i].value.is_positive() == want_pos)
                .expect("indefinite form");
            pool[4] = other;
        }
        pool
    };
    let vals = |s: &[usize]| -> Vec<BigInt> { s.iter().map(|&i| slots[i].value.clone()).collect() };
    let m = pool.len();
    for size in 2..m {
        for sub in subsets(&pool, size) {
            if iso_ints(&vals(&sub)) {
                return sub;
            }
        }
    }
    pool
}

pub(super) fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

struct Decomposed {
    slots: Vec<Slot>,
    index: usize,
    witnesses: Vec<Sparse>,
}

fn decompose_classes(values: &[Rational]) -> Result<Decomposed> {
    let mut slots: Vec<Slot> = values
        .iter()
        .enumerate()
        .map(|(i, q)| normalized(q, vec![(i, Rational::one())]))
        .collect();
    let mut index = 0;
    let mut witnesses = Vec::new();

    // cancel pairs <s, -s> first
    let mut by_class: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, s) in slots.iter().enumerate() {
        by_class.entry(s.value.clone()).or_default().push(i);
    }
    let mut removed = vec![false; slots.len()];
    for (s, idx) in by_class.iter() {
        if !s.is_positive() {
            continue;
        }
        if let Some(neg) = by_class.get(&(-s)) {
            for (&i, &j) in idx.iter().zip(neg.iter()) {
                witnesses.push(sp_add(&slots[i].vec, &slots[j].vec));
                removed[i] = true;
                removed[j] = true;
                index += 1;
            }
        }
    }
    slots = slots.into_iter().zip(removed).filter(|(_, r)| !r).map(|(s, _)| s).collect();

    loop {
        let vals: Vec<BigInt> = slots.iter().map(|s| s.value.clone()).collect();
        if !iso_ints(&vals) {
            break;
        }
        let support = isotropic_support(&slots);
        let sub_slots: Vec<Slot> = support.iter().map(|&i| slots[i].clone()).collect();
        let sub_vals: Vec<BigInt> = sub_slots.iter().map(|s| s.value.clone()).collect();
        let v = isotropic_vector(&sub_vals)?;
        let mut wit: Sparse = Vec::new();
        for (t, s) in sub_slots.iter().enumerate() {
            if !v[t].is_zero() {
                wit = sp_add(&wit, &sp_scale(&s.vec, &v[t]));
            }
        }
        witnesses.push(wit);
        let complement = split_off(&sub_slots, &v);
        let mut next: Vec<Slot> = slots
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !support.contains(i))
            .map(|(_, s)| s)
            .collect();
        next.extend(complement);
        slots = next;
        index += 1;
    }
    Ok(Decomposed { slots, index, witnesses })
}

/// Splits off hyperbolic planes until the remainder is anisotropic.
pub fn witt_decompose(phi: &QForm) -> Result<WittDecomposition> {
    if !phi.base().is_rational() {
        return Err(Error::UnsupportedField);
    }
    let values: Vec<Rational> = phi.entries().iter().map(|e| e.as_rational().unwrap().clone()).collect();
    let d = decompose_classes(&values)?;
    let n = phi.dim();
    Ok(WittDecomposition {
        anisotropic_part: QForm::from_bigints(&d.slots.iter().map(|s| s.value.clone()).collect::<Vec<_>>()),
        witt_index: d.index,
        isotropic_witnesses: d.witnesses.iter().map(|w| CoordVector::from_sparse(n, w)).collect(),
    })
}

/// Anisotropic part of a form with squarefree integer entries.
pub(crate) fn anisotropic_ints(a: &[BigInt]) -> Result<Vec<BigInt>> {
    super::classes::anisotropic_classes(a)
}

/// Greedy test that an anisotropic phi is a multiple of <<a>>.
pub fn is_pfister_multiple(phi: &QForm, a: &FieldElem) -> Result<bool> {
    if !phi.base().is_rational() || !a.base().is_rational() {
        return Err(Error::UnsupportedField);
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if a.is_square() {
        return Err(Error::SquareArgument(a.to_string()));
    }
    let ac = FieldElem::rational_class(a.as_rational().unwrap())?;
    let mut cur = phi.rational_classes()?;
    if cur.len() % 2 == 1 {
        return Ok(false);
    }
    while let Some(x) = cur.first().cloned() {
        // x<<a>> must split off: cur + <-x, xa> has Witt index >= 2
        let mut test = cur.clone();
        test.push(-&x);
        test.push(squarefree_part(&(&x * &ac)));
        let d = anisotropic_ints(&test)?;
        if test.len() - d.len() < 4 {
            return Ok(false);
        }
        // the complement of x<<a>> in cur is Witt-equivalent to the anisotropic remainder
        if d.len() + 2 != cur.len() {
            return Ok(false);
        }
        cur = d;
    }
    Ok(true)
}

impl QForm {
    pub fn over_q(entries: Vec<Rational>) -> Result<QForm> {
        QForm::new(
            BaseField::Rationals,
            entries.into_iter().map(|q| FieldElem::rational(BaseField::Rationals, q)).collect(),
        )
    }
}
