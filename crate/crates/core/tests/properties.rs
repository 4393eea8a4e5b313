use std::f64::consts::PI;

use proptest::prelude::*;
use su11::characters::character;
use su11::orthogonality::{orthogonality_integral, OrthoRequest};
use su11::rep_matrix::{matrix_element, matrix_element_cartan};
use su11::tensor_product::{decompose, multiplicity};
use su11::{CartanCoords, GroupElement, HalfInteger, RepLabel};

fn coords(max_tau: f64) -> impl Strategy<Value = CartanCoords> {
    (0.0..max_tau, 0.0..2.0 * PI, -2.0 * PI..2.0 * PI).prop_map(|(t, p, s)| CartanCoords::new(t, p, s).unwrap())
}

fn element(max_tau: f64) -> impl Strategy<Value = GroupElement> {
    coords(max_tau).prop_map(|c| GroupElement::from_cartan(&c))
}

fn label() -> impl Strategy<Value = RepLabel> {
    (2i64..=8).prop_map(|t| RepLabel::from_twice(t).unwrap())
}

fn close(a: &GroupElement, b: &GroupElement, tol: f64) -> bool {
    (a.alpha() - b.alpha()).norm() < tol && (a.beta() - b.beta()).norm() < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cartan_round_trip(g in element(4.0)) {
        let back = GroupElement::from_cartan(&g.to_cartan());
        prop_assert!(close(&g, &back, 1e-10 * (1.0 + g.alpha().norm())));
    }

    #[test]
    fn multiplication_is_associative(a in element(2.0), b in element(2.0), c in element(2.0)) {
        let l = a.multiply(&b).multiply(&c);
        let r = a.multiply(&b.multiply(&c));
        prop_assert!(close(&l, &r, 1e-10 * l.alpha().norm()));
    }

    #[test]
    fn products_and_inverses_stay_in_group(a in element(3.0), b in element(3.0)) {
        let p = a.multiply(&b.inverse());
        prop_assert!((p.determinant() - 1.0).abs() < 1e-9);
        prop_assert!(close(&a.multiply(&a.inverse()), &GroupElement::identity(), 1e-10 * a.alpha().norm_sqr()));
    }

    #[test]
    fn algebraic_and_cartan_forms_agree(eta in label(), n in 0usize..13, np in 0usize..13, c in coords(4.0)) {
        let a = matrix_element(eta, n, np, &GroupElement::from_cartan(&c));
        let b = matrix_element_cartan(eta, n, np, &c);
        prop_assert!((a - b).norm() <= 1e-11 * (1.0 + a.norm()));
    }

    #[test]
    fn swapped_indices_have_equal_modulus(eta in label(), n in 0usize..15, np in 0usize..15, g in element(3.0)) {
        let a = matrix_element(eta, n, np, &g).norm();
        let b = matrix_element(eta, np, n, &g).norm();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn inverse_is_adjoint(eta in label(), n in 0usize..10, np in 0usize..10, g in element(2.0)) {
        let a = matrix_element(eta, n, np, &g.inverse());
        let b = matrix_element(eta, np, n, &g).conj();
        prop_assert!((a - b).norm() <= 1e-11 * (1.0 + a.norm()));
    }

    #[test]
    fn character_is_a_class_function(eta in label(), g in element(3.0), h in element(1.0)) {
        let conj = h.multiply(&g).multiply(&h.inverse());
        prop_assert!((conj.alpha().re - g.alpha().re).abs() <= 1e-11 * g.alpha().norm_sqr());
        if let (Ok(a), Ok(b)) = (character(eta, &g), character(eta, &conj)) {
            prop_assert!((a.value - b.value).norm() <= 1e-10 * (1.0 + a.value.norm()));
        }
    }

    #[test]
    fn half_integer_display_round_trip(twice in -40i64..40) {
        let h = HalfInteger::from_twice(twice);
        prop_assert_eq!(h.to_string().parse::<HalfInteger>().unwrap(), h);
        prop_assert_eq!(format!("{}", h.value()).parse::<HalfInteger>().unwrap(), h);
    }

    #[test]
    fn orthogonality_is_hermitian(e1 in label(), e2 in label(), m in 0usize..9, mp in 0usize..9, n in 0usize..9, np in 0usize..9) {
        let a = orthogonality_integral(&OrthoRequest::new(e1, e2, m, mp, n, np));
        let b = orthogonality_integral(&OrthoRequest::new(e2, e1, n, np, m, mp));
        prop_assert_eq!(a.angular_selected, b.angular_selected);
        prop_assert!((a.value - b.value).abs() <= 1e-12 * (1.0 + a.value.abs()));
    }

    #[test]
    fn multiplicity_is_symmetric_and_matches_spectrum(e1 in label(), e2 in label(), t3 in 2i64..40) {
        let e3 = RepLabel::from_twice(t3).unwrap();
        prop_assert_eq!(multiplicity(e1, e2, e3), multiplicity(e2, e1, e3));
        let listed = decompose(e1, e2, 20).terms.iter().any(|t| t.eta3 == e3);
        prop_assert_eq!(listed, multiplicity(e1, e2, e3) == 1);
    }
}
