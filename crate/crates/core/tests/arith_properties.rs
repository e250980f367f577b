use proptest::prelude::*;
use sl2_boundary::arith::{int, rat, Pochhammer};
use sl2_boundary::{Error, Rational, RationalFunction, WeightPolynomial};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = WeightPolynomial> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(WeightPolynomial::new)
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), poly(2))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        if a != int(0) {
            prop_assert_eq!(&a * a.recip(), int(1));
        }
    }

    #[test]
    fn reduce_is_idempotent_and_preserves_values(f in ratfunc(), x in small_rat()) {
        let r = f.reduce();
        prop_assert_eq!(&r.reduce(), &r);
        prop_assert_eq!(&r, &f);
        prop_assert!(r.denom().leading() == int(1));
        match (f.eval(&x), r.eval(&x)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(Error::Pole { .. }), Err(Error::Pole { .. })) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn pochhammer_recurrence(k in small_rat(), l in 0usize..=30) {
        let lhs = k.pochhammer(l + 1);
        prop_assert_eq!(lhs, k.pochhammer(l) * (&k - int(l as i64)));
        let kf = RationalFunction::h0_plus(3);
        let lhs = kf.pochhammer(l.min(8) + 1);
        let rhs = &kf.pochhammer(l.min(8)) * &(&kf - &RationalFunction::from_int(l.min(8) as i64));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn reduce_examples() {
    let h = WeightPolynomial::h0();
    let f = RationalFunction::new(&(&h * &h) - &WeightPolynomial::from_ints(&[4]), &h - &WeightPolynomial::from_ints(&[2])).unwrap();
    assert_eq!(f, RationalFunction::h0_plus(2));
    let z = RationalFunction::new(WeightPolynomial::zero(), WeightPolynomial::from_ints(&[1, 1])).unwrap();
    assert!(z.is_zero() && z.denom().as_constant() == Some(int(1)));
    let c = RationalFunction::new(WeightPolynomial::from_ints(&[2, 2]), WeightPolynomial::from_ints(&[4, 4])).unwrap();
    assert_eq!(c.as_constant(), Some(rat(1, 2)));
    assert!(matches!(
        RationalFunction::new(WeightPolynomial::one(), WeightPolynomial::zero()),
        Err(Error::Malformed(_))
    ));
}

#[test]
fn eval_examples() {
    let f = RationalFunction::h0_plus(-2).inv().unwrap();
    assert_eq!(f.eval(&int(4)).unwrap(), rat(1, 2));
    match f.eval(&int(2)) {
        Err(Error::Pole { h0, .. }) => assert_eq!(h0, int(2)),
        other => panic!("{other:?}"),
    }
    let g = RationalFunction::h0_plus(1).div(&(&RationalFunction::h0() * &RationalFunction::h0())).unwrap();
    assert_eq!(g.eval(&int(2)).unwrap(), rat(3, 4));
}

#[test]
fn pochhammer_examples() {
    assert_eq!(rat(7, 3).pochhammer(0), int(1));
    assert_eq!(int(3).pochhammer(2), int(6));
    let k = &RationalFunction::from_int(2) - &RationalFunction::h0();
    assert_eq!(k.pochhammer(1), k);
}
