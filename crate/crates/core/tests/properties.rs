mod common;

use common::*;
use proptest::prelude::*;
use sofic_core::asymptotic::{decompose, is_triple, realize};
use sofic_core::periodic::period_invariants;
use sofic_core::pumping::{escapes, in_bk, psi_k};
use sofic_core::{AsymptoticTriple, Symbol};

fn binary(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0u16..2, 0..=max)
}

fn nonempty(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0u16..2, 1..=max)
}

proptest! {
    #[test]
    fn admissible_is_factor_closed(w in binary(20)) {
        let t = gm();
        if t.shift.is_admissible(&w) {
            for i in 0..=w.len() {
                prop_assert!(t.shift.is_admissible(&w[i..]));
                prop_assert!(t.shift.is_admissible(&w[..i]));
            }
        }
    }

    #[test]
    fn even_membership_matches_scanner(w in binary(30)) {
        prop_assert_eq!(even().shift.is_admissible(&w), even_ok(&w));
    }

    #[test]
    fn class_of_is_a_homomorphism(u in binary(10), v in binary(10)) {
        let t = even();
        let sg = t.shift.semigroup();
        if let (Some(a), Some(b)) = (sg.class_of(&u), sg.class_of(&v)) {
            let mut uv = u.clone();
            uv.extend_from_slice(&v);
            let prod = sg.class_of(&uv);
            prop_assert_eq!(prod, Some(sg.mul(a, b)));
            prop_assert_eq!(sg.is_zero(sg.mul(a, b)), !(t.admissible)(&uv));
        }
    }

    #[test]
    fn psi_preserves_class_and_is_idempotent(w in binary(24)) {
        for t in [gm(), even()] {
            if !(t.admissible)(&w) || !in_bk(&t.shift, &w, 1).unwrap() {
                continue;
            }
            let out = psi_k(&t.shift, &w, 1).unwrap();
            let sg = t.shift.semigroup();
            prop_assert_eq!(out.len(), w.len());
            prop_assert_eq!(sg.class_of(&out), sg.class_of(&w));
            prop_assert!(escapes(&t.shift, &out, 1).unwrap());
            prop_assert_eq!(psi_k(&t.shift, &out, 1).unwrap(), out);
        }
    }

    #[test]
    fn realize_then_decompose(am in nonempty(3), c in binary(4), ap in nonempty(3), s in -30i64..30) {
        let (mut c, mut ap) = (c, ap);
        match c.len() {
            0 => *ap.last_mut().unwrap() = 1 - am[am.len() - 1],
            n => {
                c[0] = 1 - am[0];
                c[n - 1] = 1 - ap[ap.len() - 1];
            }
        }
        let t = full2();
        let tr = AsymptoticTriple::new(am, c, ap);
        prop_assume!(is_triple(&t.shift, &tr));
        prop_assert_eq!(decompose(&realize(s, &tr)).unwrap(), (s, tr));
    }

    #[test]
    fn power_classes_stabilize(a in binary(5)) {
        for t in [gm(), even(), full2()] {
            prop_assume!(!a.is_empty());
            if !naive_primitive(&a) || !naive_periodic(&t, &a) {
                continue;
            }
            let inv = period_invariants(&t.shift, &a).unwrap();
            let sg = t.shift.semigroup();
            let class = |k: usize| sg.class_of(&repeat(&a, k));
            for j in 0..6 {
                prop_assert_eq!(class(inv.q * inv.r + j), class(inv.q * inv.r + j + inv.r));
            }
        }
    }
}
