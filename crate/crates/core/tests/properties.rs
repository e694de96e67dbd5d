use num_bigint::BigInt;
use proptest::prelude::*;

use wia_core::exactnum::{hilbert_int, relevant_places, BaseField, FieldElem};
use wia_core::involution::{flip_flop, inv_signature, profile, trace_form, InvExpr, InvType};
use wia_core::qform::{is_hyperbolic_form, is_isotropic, witt_decompose, witt_equivalent, QForm};
use wia_core::syntax::parse_inv;
use wia_core::wittring::{witt_add, witt_mul, witt_neg, WittClass};

fn nz(h: i64) -> impl Strategy<Value = i64> {
    (-h..=h).prop_filter("nonzero", |x| *x != 0)
}

fn form(max_dim: usize) -> impl Strategy<Value = QForm> {
    prop::collection::vec(nz(40), 1..=max_dim).prop_map(|e| QForm::from_ints(&e).unwrap())
}

fn q(n: i64) -> FieldElem {
    FieldElem::q(n)
}

fn atom() -> impl Strategy<Value = InvExpr> {
    (0..4usize, nz(15), nz(15)).prop_map(|(k, a, b)| match k {
        0 => InvExpr::QuatOO(q(a), q(b)),
        1 => InvExpr::QuatSS(q(a), q(b)),
        2 => InvExpr::QuatPO(q(a), q(b)),
        _ => InvExpr::QuatOP(q(a), q(b)),
    })
}

fn expr() -> impl Strategy<Value = InvExpr> {
    let leaf = prop_oneof![
        atom(),
        nz(15).prop_map(|c| InvExpr::UnitCan(q(c))),
        form(3).prop_map(InvExpr::Ad),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_filter_map("compatible centres", |(l, r)| InvExpr::tensor(l, r).ok()),
            (1..=3usize, inner).prop_filter_map("multiple", |(m, e)| InvExpr::multiple(m, e).ok()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfister_forms_are_isotropic_only_when_hyperbolic(slots in prop::collection::vec(nz(30), 1..=3)) {
        let s: Vec<FieldElem> = slots.iter().map(|&x| q(x)).collect();
        let p = QForm::pfister(BaseField::Rationals, &s).unwrap();
        prop_assert_eq!(is_isotropic(&p).unwrap(), is_hyperbolic_form(&p).unwrap());
    }

    #[test]
    fn decomposition_splits_exactly(phi in form(6)) {
        let d = witt_decompose(&phi).unwrap();
        prop_assert_eq!(2 * d.witt_index + d.anisotropic_part.dim(), phi.dim());
        prop_assert!(!is_isotropic(&d.anisotropic_part).unwrap());
        prop_assert!(witt_equivalent(&phi, &d.anisotropic_part).unwrap());
    }

    #[test]
    fn witt_ring_laws(a in form(4), b in form(4), c in form(3)) {
        let (x, y, z) = (WittClass::of(&a).unwrap(), WittClass::of(&b).unwrap(), WittClass::of(&c).unwrap());
        prop_assert!(witt_add(&x, &witt_neg(&x)).is_zero());
        prop_assert!(witt_add(&x, &y).equivalent(&witt_add(&y, &x)));
        let lhs = witt_mul(&x, &witt_add(&y, &z));
        let rhs = witt_add(&witt_mul(&x, &y), &witt_mul(&x, &z));
        prop_assert!(lhs.equivalent(&rhs));
        let p = &BaseField::Rationals.orderings()[0];
        prop_assert_eq!(witt_mul(&x, &y).signature(), a.signature(p).unwrap() * b.signature(p).unwrap());
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(a in nz(200), b in nz(200), c in nz(200)) {
        let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        let bc = &b * &c;
        for v in relevant_places([&a, &b, &c]) {
            prop_assert_eq!(hilbert_int(&a, &b, &v), hilbert_int(&b, &a, &v));
            prop_assert_eq!(hilbert_int(&a, &bc, &v), hilbert_int(&a, &b, &v) * hilbert_int(&a, &c, &v));
        }
    }

    #[test]
    /// Scaled by <2>, not doubled.
    fn quaternion_traces(a in nz(30), b in nz(30)) {
        let oo = trace_form(&InvExpr::QuatOO(q(a), q(b))).unwrap().expanded();
        let ss = trace_form(&InvExpr::QuatSS(q(a), q(b))).unwrap().expanded();
        let p_oo = QForm::pfister(BaseField::Rationals, &[q(a), q(-b)]).unwrap().scale(&q(2)).unwrap();
        let p_ss = QForm::pfister(BaseField::Rationals, &[q(a), q(b)]).unwrap().scale(&q(2)).unwrap();
        prop_assert!(witt_equivalent(&oo, &p_oo).unwrap());
        prop_assert!(witt_equivalent(&ss, &p_ss).unwrap());
    }

    #[test]
    fn trace_signature_is_a_square(e in expr()) {
        let k = if profile(&e).unwrap().inv_type == InvType::Unitary { 2 } else { 1 };
        let tr = trace_form(&e).unwrap().expanded();
        for p in BaseField::Rationals.orderings() {
            let s = inv_signature(&e, &p).unwrap() as i64;
            prop_assert_eq!(tr.signature(&p).unwrap(), k * s * s);
        }
    }

    #[test]
    fn flip_flop_preserves_invariants(l in atom(), r in atom()) {
        let norm = |e: InvExpr| match e.quat_slots() {
            Some((wia_core::involution::QuatKind::Orth, a, b)) => InvExpr::QuatOO(a, b),
            Some((_, a, b)) => InvExpr::QuatSS(a, b),
            None => e,
        };
        let e = InvExpr::tensor(norm(l), norm(r)).unwrap();
        let f = flip_flop(&e).unwrap();
        prop_assert_eq!(profile(&e).unwrap(), profile(&f).unwrap());
        prop_assert!(witt_equivalent(&trace_form(&e).unwrap().expanded(), &trace_form(&f).unwrap().expanded()).unwrap());
        let back = flip_flop(&f).unwrap();
        prop_assert!(witt_equivalent(&trace_form(&e).unwrap().expanded(), &trace_form(&back).unwrap().expanded()).unwrap());
    }

    #[test]
    fn display_round_trips(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_inv(BaseField::Rationals, &text).unwrap(), e);
    }
}
