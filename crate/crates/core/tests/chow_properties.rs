use cyclicover_core::{Ambient, ChowClass, Multidegree};
use num_rational::BigRational;
use proptest::prelude::*;

fn ambient_strategy() -> impl Strategy<Value = Ambient> {
    prop::collection::vec(1u32..=3, 1..=3).prop_map(|d| Ambient::new(d).unwrap())
}

fn class_strategy(z: Ambient) -> impl Strategy<Value = ChowClass> {
    let t = z.factors();
    prop::collection::vec((prop::collection::vec(0i64..=3, t), -4i64..=4), 0..5).prop_map(
        move |terms| {
            let mut c = ChowClass::zero(&z);
            for (m, k) in terms {
                let mut mono = ChowClass::constant(&z, BigRational::from_integer(k.into()));
                for (i, e) in m.iter().enumerate() {
                    let h = ChowClass::generator(&z, i).unwrap();
                    for _ in 0..*e {
                        mono = mono.mul(&h).unwrap();
                    }
                }
                c = c.add(&mono).unwrap();
            }
            c
        },
    )
}

fn with_classes(k: usize) -> impl Strategy<Value = (Ambient, Vec<ChowClass>)> {
    ambient_strategy()
        .prop_flat_map(move |z| (Just(z.clone()), prop::collection::vec(class_strategy(z), k)))
}

proptest! {
    #[test]
    fn unit_times_inverse_is_one((z, cs) in with_classes(1)) {
        let one = ChowClass::one(&z);
        // force the constant term to 1
        let shift = ChowClass::constant(&z, cs[0].constant_term());
        let a = cs[0].sub(&shift).unwrap().add(&one).unwrap();
        let inv = a.inverse_unit().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), one);
    }

    #[test]
    fn multiplication_is_commutative_and_associative((_z, cs) in with_classes(3)) {
        let (a, b, c) = (&cs[0], &cs[1], &cs[2]);
        prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        prop_assert_eq!(
            a.mul(b).unwrap().mul(c).unwrap(),
            a.mul(&b.mul(c).unwrap()).unwrap()
        );
    }

    #[test]
    fn euler_characteristic_of_product(z in ambient_strategy()) {
        let e = ChowClass::total_chern(&z).integrate();
        prop_assert_eq!(e, BigRational::from_integer(z.euler().into()));
    }

    #[test]
    fn truncation_kills_top_power((z, cs) in with_classes(1), pick in 0usize..3) {
        let i = pick % z.factors();
        let h = ChowClass::generator(&z, i).unwrap();
        let mut a = cs[0].clone();
        for _ in 0..z.factor_dims()[i] {
            a = a.mul(&h).unwrap();
        }
        prop_assert!(a.mul(&h).unwrap().is_zero());
    }

    #[test]
    fn stored_terms_are_nonzero_and_bounded((z, cs) in with_classes(2)) {
        let p = cs[0].mul(&cs[1]).unwrap().add(&cs[0]).unwrap();
        for (e, c) in p.terms() {
            prop_assert!(*c != BigRational::from_integer(0.into()));
            for (k, &n) in e.iter().zip(z.factor_dims()) {
                prop_assert!(u32::from(*k) <= n);
            }
        }
    }
}

#[test]
fn class_of_is_linear_in_the_degree() {
    let z = Ambient::new(vec![1, 2]).unwrap();
    let a = ChowClass::class_of(&z, &Multidegree::from([1, 2])).unwrap();
    let b = ChowClass::class_of(&z, &Multidegree::from([2, 0])).unwrap();
    let s = ChowClass::class_of(&z, &Multidegree::from([3, 2])).unwrap();
    assert_eq!(a.add(&b).unwrap(), s);
}
