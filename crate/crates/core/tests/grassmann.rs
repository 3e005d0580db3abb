mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use spinor_grass::exterior::{gamma_linear, GeneratorIndex, Multivector};
use spinor_grass::grassmann::{
    affine_chart, big_cell_frame, cartan_big_cell, cartan_coordinates, cartan_frame_plucker, cartan_image,
    frobenius_basis_sign, frobenius_label, is_isotropic, plucker_coordinate, plucker_coordinates, projective_equal,
    projective_ratio, Frame, Parity,
};
use spinor_grass::identities::check_main_theorem;
use spinor_grass::linalg::{random_skew, random_skew_with, seeded_rng};
use spinor_grass::partition::{Partition, StrictPartition};
use spinor_grass::suite::{random_frame, random_invertible, random_isotropic_frame};
use spinor_grass::{det_exact, rational, Error, IndexSet, Matrix, Rational};

/// `Γ_w` for the vector in column `col` of the frame.
fn gamma_column(frame: &Frame, col: usize, v: &Multivector) -> Multivector {
    let n = frame.n();
    let mut acc = Multivector::zero(n);
    for row in 0..2 * n {
        let c = frame.matrix().get(row, col);
        if c.is_zero() {
            continue;
        }
        let g = if row < n { GeneratorIndex::e(row + 1) } else { GeneratorIndex::f(row + 1 - n) };
        acc = acc.add(&gamma_linear(g, v).unwrap().scale(c)).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cartan_image_is_annihilated_by_the_frame(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let frame = random_isotropic_frame(n, &mut rng, 9);
        prop_assert!(is_isotropic(&frame));
        let c = cartan_image(&frame).unwrap();
        prop_assert!(!c.is_zero());
        for col in 0..n {
            prop_assert!(gamma_column(&frame, col, &c).is_zero());
        }
        // Pure spinors live in one parity.
        let parities: std::collections::BTreeSet<usize> = c.terms().map(|(k, _)| k.len() % 2).collect();
        prop_assert_eq!(parities.len(), 1);
    }

    #[test]
    fn cartan_image_is_basis_independent(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let frame = random_isotropic_frame(n, &mut rng, 9);
        let g = random_invertible(n, &mut rng, 5);
        let moved = frame.rebased(&g).unwrap();
        prop_assert!(projective_equal(&cartan_image(&frame).unwrap(), &cartan_image(&moved).unwrap()).unwrap());
    }

    #[test]
    fn plucker_coordinates_scale_by_det(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let frame = random_frame(n, &mut rng, 9);
        let g = random_invertible(n, &mut rng, 5);
        let moved = plucker_coordinates(&frame.rebased(&g).unwrap());
        let base = plucker_coordinates(&frame);
        let det = det_exact(&g).unwrap();
        for (lambda, q) in base.iter() {
            prop_assert_eq!(moved.get(lambda), q * &det);
        }
        prop_assert_eq!(projective_ratio(&moved, &base).unwrap(), Some(det));
    }

    #[test]
    fn main_theorem_on_both_components(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let frame = random_isotropic_frame(n, &mut rng, 9);
        let report = check_main_theorem(&frame).unwrap();
        prop_assert!(report.passed, "{}", serde_json::to_string(&report).unwrap());
    }
}

#[test]
fn plucker_coordinates_are_decreasing_row_minors() {
    let mut rng = seeded_rng(5);
    for n in 1..=4 {
        let frame = random_frame(n, &mut rng, 9);
        let pl = plucker_coordinates(&frame);
        assert_eq!(pl.len(), common::binomial(2 * n, n));
        let cols: Vec<usize> = (1..=n).collect();
        for (lambda, q) in pl.iter() {
            let rows = lambda.particle_positions(n).unwrap();
            assert_eq!(q, &common::det_by_cofactors(&common::pick(frame.matrix(), &rows, &cols)), "{lambda:?}");
        }
        assert!(matches!(plucker_coordinate(&frame, &Partition::new(vec![n + 1]).unwrap()), Err(Error::BoxOverflow(..))));
    }
}

#[test]
fn big_cell_kappa_is_a_signed_pfaffian() {
    for n in 1..=6 {
        let a = random_skew(n, 100 + n as u64, 9);
        let kappa = cartan_big_cell(&a);
        assert_eq!(kappa.len(), 1 << (n - 1));
        for (alpha, k) in kappa.iter() {
            let order = alpha.index_set(n).unwrap().to_vec_decreasing();
            let pf = common::pfaffian_by_matchings(&common::pick(a.matrix(), &order, &order));
            let sign = if (order.len() / 2) % 2 == 0 { Rational::one() } else { -Rational::one() };
            assert_eq!(k, &(sign * pf), "N={n} α={alpha:?}");
        }
    }
}

#[test]
fn clifford_route_agrees_with_exponential_on_the_big_cell() {
    let mut rng = seeded_rng(77);
    for n in 1..=5 {
        let a = random_skew_with(n, &mut rng, 9);
        let via_frame = cartan_coordinates(&big_cell_frame(&a)).unwrap();
        assert!(projective_equal(&via_frame, &cartan_big_cell(&a)).unwrap());
        assert_eq!(via_frame.parity(), Parity::of(n));
    }
}

#[test]
fn cartan_frame_pairing_is_one_constant_times_minors() {
    // <f_{I(α)} ∧ *e_{I(β)} | Pl> / det(A_(I(α)|I(β))) does not depend on (α, β).
    for n in 1..=4 {
        let a = random_skew(n, 200 + n as u64, 9);
        let pl = plucker_coordinates(&big_cell_frame(&a));
        let mut ratio: Option<Rational> = None;
        for alpha in StrictPartition::all_in_range(n) {
            for beta in StrictPartition::all_in_range(n) {
                if alpha.len() != beta.len() {
                    continue;
                }
                assert!(frobenius_label(&alpha, &beta, n).unwrap().fits_box(n));
                frobenius_basis_sign(&alpha, &beta, n).unwrap();
                let minor = det_exact(
                    &spinor_grass::linalg::submatrix(a.matrix(), &alpha.index_set(n).unwrap(), &beta.index_set(n).unwrap())
                        .unwrap(),
                )
                .unwrap();
                let framed = cartan_frame_plucker(&pl, &alpha, &beta).unwrap();
                if minor.is_zero() {
                    assert!(framed.is_zero());
                    continue;
                }
                let r = framed / minor;
                match &ratio {
                    None => ratio = Some(r),
                    Some(x) => assert_eq!(x, &r, "N={n} α={alpha:?} β={beta:?}"),
                }
            }
        }
    }
}

#[test]
fn affine_chart_recovers_the_skew_matrix() {
    let mut rng = seeded_rng(3);
    for n in 1..=5 {
        let a = random_skew_with(n, &mut rng, 9);
        let g = random_invertible(n, &mut rng, 4);
        assert_eq!(affine_chart(&big_cell_frame(&a).rebased(&g).unwrap()).unwrap(), a);
    }
}

#[test]
fn odd_component_sits_outside_the_big_cell() {
    for n in 1..=4 {
        let frame = Frame::canonical_odd(n);
        assert!(is_isotropic(&frame));
        assert_eq!(plucker_coordinates(&frame).get(&Partition::empty()), Rational::zero());
        assert!(matches!(affine_chart(&frame), Err(Error::NotInBigCell)));
        let c = cartan_coordinates(&frame).unwrap();
        assert_eq!(c.parity(), Parity::of(n + 1));
    }
}

#[test]
fn swapping_rows_preserves_isotropy() {
    let a = random_skew(4, 8, 9);
    for bits in 0..16u64 {
        let swapped = big_cell_frame(&a).swap_rows(&IndexSet::from_bits(4, bits).unwrap()).unwrap();
        assert!(is_isotropic(&swapped));
        let c = cartan_coordinates(&swapped).unwrap();
        assert_eq!(c.parity(), Parity::of(4 + bits.count_ones() as usize));
    }
}

#[test]
fn frame_json_round_trip() {
    let frame = big_cell_frame(&random_skew(3, 4, 9));
    let text = serde_json::to_string(&frame).unwrap();
    let back: Frame = serde_json::from_str(&text).unwrap();
    assert_eq!(back, frame);
    let flat = r#"{"n":2,"w":{"rows":4,"cols":2,"entries":[["1","0"],["0","0"],["0","0"],["0","0"]]}}"#;
    assert!(serde_json::from_str::<Frame>(flat).is_err());
    let coords = serde_json::to_value(cartan_big_cell(&random_skew(2, 1, 9))).unwrap();
    assert_eq!(coords[0]["label"], serde_json::json!([]));
    assert_eq!(coords[0]["value"], "1");
}

#[test]
fn frame_shape_errors() {
    assert!(matches!(Frame::new(2, Matrix::zeros(3, 2)), Err(Error::ShapeMismatch(_))));
    let wide = Matrix::from_fn(2, 3, |_, _| rational::one());
    assert!(matches!(Frame::big_cell(&wide), Err(Error::NotSquare(2, 3))));
}
