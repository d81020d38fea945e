use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use qdamp_core::bargmann::{
    dilate, from_fock, q_derivative, q_difference_quotient, qwh_commutator,
    scale_generator_identity, to_fock, Polynomial, QParam,
};
use qdamp_core::fock::{FockSpace, StateVector};

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-60i64..60, 1i64..24), 0..=max_degree + 1).prop_map(|cs| {
        Polynomial::from_coeffs(
            cs.into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    })
}

fn deformation() -> impl Strategy<Value = QParam> {
    prop_oneof![
        Just(QParam::ratio(2, 1).unwrap()),
        Just(QParam::ratio(3, 2).unwrap()),
        Just(QParam::ratio(7, 5).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deformed_commutator_is_dilation(f in polynomial(64), q in deformation()) {
        prop_assert_eq!(qwh_commutator(&f, &q), dilate(&f, &q));
    }

    #[test]
    fn closed_form_matches_difference_quotient(f in polynomial(64), q in deformation()) {
        prop_assert_eq!(q_derivative(&f, &q), q_difference_quotient(&f, &q).unwrap());
    }

    #[test]
    fn dilation_inverts(f in polynomial(64), q in deformation()) {
        prop_assert_eq!(dilate(&dilate(&f, &q), &q.inverse()), f);
    }

    #[test]
    fn scale_generator_sides_agree(f in polynomial(64)) {
        let (lhs, rhs) = scale_generator_identity(&f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fock_round_trip(f in polynomial(40)) {
        let space = FockSpace::new(48).unwrap();
        let back = from_fock(&to_fock(&f, space).unwrap()).unwrap();
        for k in 0..=40 {
            let want = f.coeff(k);
            let got = back.coeff(k);
            let scale = num_traits::Signed::abs(&want);
            let err = num_traits::Signed::abs(&(&got - &want));
            prop_assert!(err <= scale * BigRational::new(1.into(), 100_000_000_000_000i64.into()));
        }
    }

    #[test]
    fn amplitude_round_trip(amps in prop::collection::vec(-3.0..3.0f64, 32)) {
        let space = FockSpace::new(32).unwrap();
        let v = StateVector::from_amplitudes(space, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap();
        let again = to_fock(&from_fock(&v).unwrap(), space).unwrap();
        for n in 0..32 {
            let (x, y) = (v.amplitude(n).re, again.amplitude(n).re);
            prop_assert!((x - y).abs() <= 1e-14 * x.abs().max(f64::MIN_POSITIVE));
        }
    }
}
