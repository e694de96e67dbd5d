//! Normal form Ad(phi) (x) quaternion atoms (x) (c)_K over Q and the
//! hyperbolicity decision tree on it.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::integer::squarefree_part;
use crate::exactnum::{ramification, Place};
use crate::involution::{class_int, InvExpr, QuatKind};
use crate::qform::{anisotropic_ints, hyperbolic_ints, iso_ints, QForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Atom {
    pub kind: QuatKindKey,
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum QuatKindKey {
    Orth,
    Symp,
}

/// Ad(phi) tensor atoms tensor (c)_K, with phi kept anisotropic; an empty phi
/// means the adjoint factor is hyperbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Normal {
    pub phi: Vec<BigInt>,
    pub atoms: Vec<Atom>,
    pub unit: Option<BigInt>,
}

pub(crate) struct Decision {
    pub value: bool,
    pub criterion: &'static str,
    pub witness: Option<Value>,
}

fn sf(x: &BigInt) -> BigInt {
    squarefree_part(x)
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    sf(&(a * b))
}

fn tensor_lists(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for s in x {
        for t in y {
            out.push(mul(s, t));
        }
    }
    out
}

fn aniso(x: Vec<BigInt>) -> Result<Vec<BigInt>> {
    let mut a = anisotropic_ints(&x)?;
    a.sort();
    Ok(a)
}

/// m x phi in the Witt ring, by doubling.
fn multiple_aniso(phi: &[BigInt], m: usize) -> Result<Vec<BigInt>> {
    let mut acc: Vec<BigInt> = Vec::new();
    let mut pow = phi.to_vec();
    let mut k = m;
    while k > 0 {
        if k & 1 == 1 {
            let mut s = acc.clone();
            s.extend(pow.iter().cloned());
            acc = aniso(s)?;
        }
        k >>= 1;
        if k > 0 {
            let mut d = pow.clone();
            d.extend(pow.iter().cloned());
            pow = aniso(d)?;
        }
    }
    Ok(acc)
}

fn pf(slots: &[&BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for s in slots {
        let ms = sf(&-(*s));
        out = tensor_lists(&out, &[BigInt::one(), ms]);
    }
    out
}

pub(crate) fn flatten(psi: &InvExpr) -> Result<Normal> {
    if let Some((kind, a, b)) = psi.quat_slots() {
        let kind = match kind {
            QuatKind::Orth => QuatKindKey::Orth,
            QuatKind::Symp => QuatKindKey::Symp,
        };
        return Ok(Normal { phi: vec![BigInt::one()], atoms: vec![Atom { kind, a: class_int(&a)?, b: class_int(&b)? }], unit: None });
    }
    Ok(match psi {
        InvExpr::Id(_) => Normal { phi: vec![BigInt::one()], atoms: vec![], unit: None },
        InvExpr::UnitCan(c) => Normal { phi: vec![BigInt::one()], atoms: vec![], unit: Some(class_int(c)?) },
        InvExpr::Ad(phi) => Normal { phi: aniso(phi.rational_classes()?)?, atoms: vec![], unit: None },
        InvExpr::Tensor(l, r) => {
            let x = flatten(l)?;
            let y = flatten(r)?;
            let unit = match (x.unit, y.unit) {
                (Some(c), Some(d)) if c != d => return Err(Error::MixedUnitaryCentres),
                (c, d) => c.or(d),
            };
            let mut atoms = x.atoms;
            atoms.extend(y.atoms);
            Normal { phi: aniso(tensor_lists(&x.phi, &y.phi))?, atoms, unit }
        }
        InvExpr::Multiple(m, e) => {
            let x = flatten(e)?;
            Normal { phi: multiple_aniso(&x.phi, *m)?, ..x }
        }
        _ => unreachable!("quaternion atoms handled above"),
    })
}

fn ram(a: &Atom) -> BTreeSet<Place> {
    ramification(&a.a, &a.b)
}

fn split(a: &Atom) -> bool {
    ram(a).is_empty()
}

fn orth_iso(x: &Atom, y: &Atom) -> bool {
    // (a .| b) = (c .| d) iff a = c and bd is a norm from Q(sqrt a)
    x.a == y.a && {
        let n = mul(&x.b, &y.b);
        let q = [BigInt::one(), sf(&-&x.a), sf(&-&n)];
        iso_ints(&q)
    }
}

fn decided(value: bool, criterion: &'static str, witness: Option<Value>) -> Option<Decision> {
    Some(Decision { value, criterion, witness })
}

fn fmt_list(x: &[BigInt]) -> String {
    QForm::from_bigints(x).to_string()
}

/// Applies the isomorphism-preserving simplifications; returns a decision if
/// one of the trivial criteria already applies.
fn simplify(n: &mut Normal) -> Result<Option<Decision>> {
    loop {
        if n.unit.as_ref().is_some_and(|c| c.is_one()) {
            return Ok(decided(true, "trivial-hyper", Some(json!({"reason": "degenerate unitary"}))));
        }
        if n.phi.is_empty() {
            return Ok(decided(true, "hypermult", Some(json!({"reason": "hyperbolic adjoint factor"}))));
        }
        for a in &n.atoms {
            if a.kind == QuatKindKey::Symp && split(a) {
                return Ok(decided(true, "trivial-hyper", Some(json!({"reason": "split symplectic factor"}))));
            }
            if a.kind == QuatKindKey::Orth && a.a.is_one() {
                return Ok(decided(true, "hyper-char-skew", Some(json!({"reason": "skew element squaring to 1"}))));
            }
        }
        if n.unit.is_none() && n.phi.len() == 1 && n.atoms.len() == 2 && n.atoms.iter().all(|a| a.kind == QuatKindKey::Symp) {
            return Ok(decided(false, "bqhyp-split-factor", None));
        }
        if n.unit.is_none() {
            let symp = n.atoms.iter().filter(|a| a.kind == QuatKindKey::Symp).count();
            let mut r: BTreeSet<Place> = BTreeSet::new();
            for a in &n.atoms {
                r = r.symmetric_difference(&ram(a)).cloned().collect();
            }
            if symp % 2 == 1 && r.is_empty() {
                return Ok(decided(true, "trivial-hyper", Some(json!({"reason": "split symplectic"}))));
            }
        }
        // a split (a .| b) is Ad<<a>>
        if let Some(i) = n.atoms.iter().position(|a| a.kind == QuatKindKey::Orth && split(a)) {
            let a = n.atoms.remove(i);
            n.phi = aniso(tensor_lists(&n.phi, &pf(&[&a.a])))?;
            continue;
        }
        // Psi (x) Psi = Ad(Tr Psi) for equal atoms
        let mut merged = false;
        'outer: for i in 0..n.atoms.len() {
            for j in i + 1..n.atoms.len() {
                let (x, y) = (&n.atoms[i], &n.atoms[j]);
                if x.kind != y.kind {
                    continue;
                }
                let same = match x.kind {
                    QuatKindKey::Symp => ram(x) == ram(y),
                    QuatKindKey::Orth => orth_iso(x, y),
                };
                if same {
                    let tr = match x.kind {
                        QuatKindKey::Symp => pf(&[&x.a, &x.b]),
                        QuatKindKey::Orth => pf(&[&x.a, &sf(&-&x.b)]),
                    };
                    n.phi = aniso(tensor_lists(&n.phi, &tr))?;
                    n.atoms.remove(j);
                    n.atoms.remove(i);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            n.atoms.sort();
            return Ok(None);
        }
    }
}

/// Whether phi is similar to 2^k x <1>; returns k.
fn similar_to_ones(phi: &[BigInt]) -> Option<u32> {
    let n = phi.len();
    if !n.is_power_of_two() || n < 2 {
        return None;
    }
    let s = &phi[0];
    let mut test: Vec<BigInt> = phi.iter().map(|x| mul(x, s)).collect();
    test.extend(std::iter::repeat(BigInt::from(-1)).take(n));
    if hyperbolic_ints(&test) {
        Some(n.trailing_zeros())
    } else {
        None
    }
}

/// 2 x (a .| b) and 2^k x (a .| b) over Q.
pub(crate) fn final_criterion(a: &BigInt, b: &BigInt, k: u32) -> bool {
    if k == 1 {
        // a in D<1,1> or a in D<1,b>; a universal <1,b> is isotropic
        let one = BigInt::one();
        a.is_one()
            || iso_ints(&[one.clone(), one.clone(), sf(&-a)])
            || iso_ints(&[one.clone(), b.clone()])
            || iso_ints(&[one, b.clone(), sf(&-a)])
    } else {
        let m = (1usize << k) - 1;
        let mut f = Vec::new();
        for _ in 0..m {
            f.push(BigInt::one());
            f.push(sf(&-a));
        }
        f.push(b.clone());
        iso_ints(&f)
    }
}

fn terminal(n: &Normal) -> Result<Option<Decision>> {
    let q = |x: &[BigInt]| fmt_list(x);
    match (n.atoms.len(), &n.unit) {
        (0, None) => Ok(decided(false, "adjoint-form", Some(json!({"anisotropic_part": q(&n.phi)})))),
        (0, Some(c)) => {
            let f = tensor_lists(&n.phi, &pf(&[c]));
            Ok(decided(hyperbolic_ints(&f), "jacobson-trace", Some(json!({"form": q(&f)}))))
        }
        (1, None) => {
            let a = &n.atoms[0];
            match a.kind {
                QuatKindKey::Symp => {
                    let f = tensor_lists(&n.phi, &pf(&[&a.a, &a.b]));
                    Ok(decided(hyperbolic_ints(&f), "jacobson-trace", Some(json!({"form": q(&f)}))))
                }
                QuatKindKey::Orth => {
                    if n.phi.len() == 1 {
                        return Ok(decided(false, "hyper-char-skew", None));
                    }
                    match similar_to_ones(&n.phi) {
                        Some(1) => Ok(decided(final_criterion(&a.a, &a.b, 1), "final-n1", None)),
                        Some(k) => Ok(decided(final_criterion(&a.a, &a.b, k), "final-n", Some(json!({"n": k})))),
                        None => Ok(None),
                    }
                }
            }
        }
        _ => Ok(None),
    }
}

fn flip(x: &Atom, y: &Atom) -> (Atom, Atom) {
    use QuatKindKey::*;
    let (a, b, c, d) = (&x.a, &x.b, &y.a, &y.b);
    // quotients equal products up to squares
    let (k1, k2) = match (x.kind, y.kind) {
        (Orth, Orth) => (Symp, Symp),
        (Orth, Symp) => (Symp, Orth),
        (Symp, Symp) => (Orth, Orth),
        (Symp, Orth) => (Orth, Symp),
    };
    (Atom { kind: k1, a: a.clone(), b: mul(b, c) }, Atom { kind: k2, a: c.clone(), b: mul(a, d) })
}

/// All flip-flops of pairs (i, j) with i or j at least `fresh`.
fn flips(phi: &[BigInt], atoms: &[Atom], unit: &Option<BigInt>, fresh: usize, out: &mut Vec<Normal>) {
    let k = atoms.len();
    for i in 0..k {
        for j in 0..k {
            if i == j || (i < fresh && j < fresh) {
                continue;
            }
            let (x, y) = flip(&atoms[i], &atoms[j]);
            let mut rest: Vec<Atom> =
                atoms.iter().enumerate().filter(|(t, _)| *t != i && *t != j).map(|(_, a)| a.clone()).collect();
            rest.push(x);
            rest.push(y);
            out.push(Normal { phi: phi.to_vec(), atoms: rest, unit: unit.clone() });
        }
    }
}

fn children(n: &Normal) -> Vec<Normal> {
    let mut out = Vec::new();
    flips(&n.phi, &n.atoms, &n.unit, 0, &mut out);
    // Ad<x,y> = (g .| 1) with g = -xy, and a 4-dimensional phi of square
    // determinant is similar to <<g,h>>; the new split atoms only help once
    // flipped against an existing one, since simplify would absorb them back
    let mut slots = Vec::new();
    if n.phi.len() == 2 {
        slots.push(sf(&-(&n.phi[0] * &n.phi[1])));
    }
    if n.phi.len() == 4 {
        let det = n.phi.iter().fold(BigInt::one(), |acc, x| mul(&acc, x));
        if det.is_one() {
            let s = &n.phi[0];
            slots.push(sf(&-mul(&n.phi[1], s)));
            slots.push(sf(&-mul(&n.phi[2], s)));
        }
    }
    if !slots.is_empty() {
        let mut atoms = n.atoms.clone();
        let fresh = atoms.len();
        atoms.extend(slots.into_iter().map(|g| Atom { kind: QuatKindKey::Orth, a: g, b: BigInt::one() }));
        flips(&[BigInt::one()], &atoms, &n.unit, fresh, &mut out);
    }
    out
}

pub(crate) const REWRITE_DEPTH: usize = 3;

fn search(n: Normal, depth: usize, seen: &mut HashSet<Normal>) -> Result<Option<Decision>> {
    let mut n = n;
    if let Some(d) = simplify(&mut n)? {
        return Ok(Some(d));
    }
    if let Some(d) = terminal(&n)? {
        return Ok(Some(d));
    }
    if depth == 0 || !seen.insert(n.clone()) {
        return Ok(None);
    }
    for c in children(&n) {
        if let Some(mut d) = search(c, depth - 1, seen)? {
            let mut w = d.witness.take().unwrap_or_else(|| json!({}));
            let steps = w.get("rewrites").and_then(|v| v.as_u64()).unwrap_or(0);
            w["rewrites"] = json!(steps + 1);
            d.witness = Some(w);
            return Ok(Some(d));
        }
    }
    Ok(None)
}

pub(crate) fn decide(psi: &InvExpr) -> Result<Option<Decision>> {
    let n = flatten(psi)?;
    search(n, REWRITE_DEPTH, &mut HashSet::new())
}
