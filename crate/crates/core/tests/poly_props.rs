//! Property tests for the sparse polynomial layer.

use greenberg_core::ff::FiniteField;
use greenberg_core::poly::{Coeff, CoeffRing, Poly};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

const VARS: [&str; 3] = ["x", "y", "z"];

fn arb_poly(ring: CoeffRing) -> impl Strategy<Value = Poly> {
    let coeff = match ring {
        CoeffRing::Int => (-6i64..=6).boxed(),
        CoeffRing::FF(ref f) => (0..f.order() as i64).boxed(),
    };
    prop::collection::vec((coeff, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(move |terms| {
        let mut acc = Poly::zero(ring.clone());
        for (c, ex, ey, ez) in terms {
            let coeff = match &ring {
                CoeffRing::Int => Coeff::Int(BigInt::from(c)),
                CoeffRing::FF(f) => Coeff::FF(f.elem_from_index(c as u64)),
            };
            let mut term = Poly::constant(ring.clone(), coeff);
            for (v, e) in VARS.iter().zip([ex, ey, ez]) {
                if e > 0 {
                    term = term
                        .mul(&Poly::var(v, ring.clone()).pow(e as u64).unwrap())
                        .unwrap();
                }
            }
            acc = acc.add(&term).unwrap();
        }
        acc
    })
}

fn f2() -> CoeffRing {
    CoeffRing::FF(Arc::new(FiniteField::prime(2).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_over_int(a in arb_poly(CoeffRing::Int),
                            b in arb_poly(CoeffRing::Int),
                            c in arb_poly(CoeffRing::Int)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn substitution_composes(f in arb_poly(f2()), g in arb_poly(f2()), h in arb_poly(f2())) {
        let first: BTreeMap<String, Poly> =
            BTreeMap::from([("x".to_string(), g.clone()), ("y".to_string(), h.clone())]);
        let second: BTreeMap<String, Poly> =
            BTreeMap::from([("x".to_string(), h.clone()), ("z".to_string(), g.clone())]);
        let lhs = f.substitute(&first).unwrap().substitute(&second).unwrap();
        let composed: BTreeMap<String, Poly> = {
            let mut m: BTreeMap<String, Poly> = first
                .iter()
                .map(|(k, v)| (k.clone(), v.substitute(&second).unwrap()))
                .collect();
            for (k, v) in &second {
                m.entry(k.clone()).or_insert_with(|| v.clone());
            }
            m
        };
        prop_assert_eq!(lhs, f.substitute(&composed).unwrap());
    }

    #[test]
    fn render_parse_round_trip(a in arb_poly(CoeffRing::Int)) {
        let text = a.render();
        prop_assert_eq!(Poly::parse(&text, CoeffRing::Int).unwrap(), a);
    }
}
