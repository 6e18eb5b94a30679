//! Property tests for the constant-slope model pipeline and the lift
//! family: Perron bracketing against the characteristic polynomial,
//! semiconjugacy identities, measure transport, and the threshold
//! factorization.

use proptest::prelude::*;

use slopelab_core::lift::{
    lift_measure_to_period, project_measure_to_circle, transitivity_check, LambdaFamilyMap,
    Transitivity,
};
use slopelab_core::map::PiecewiseAffineMap;
use slopelab_core::markov::{eigen_measure_from_masses, markov_semiconjugacy, TransitionMatrix};
use slopelab_core::measure::{eigen_residual, StepDensityMeasure};
use slopelab_core::scalar::ExactScalar;

fn grid(num: i64, den: i64) -> ExactScalar {
    ExactScalar::from_ratio(num, den).unwrap()
}

fn s(text: &str) -> ExactScalar {
    ExactScalar::parse(text).unwrap()
}

/// A Markov interval map on an equal-width partition whose branch images
/// are contiguous unions of cells, with the intended 0-1 matrix.
fn markov_map(
    states: usize,
) -> impl Strategy<Value = (PiecewiseAffineMap, Vec<ExactScalar>, Vec<Vec<u8>>)> {
    prop::collection::vec((0..states, 1..=states, prop::bool::ANY), states).prop_map(
        move |rows| {
            let partition: Vec<ExactScalar> = (0..=states)
                .map(|i| grid(i as i64, states as i64))
                .collect();
            let mut values = Vec::new();
            let mut matrix = vec![vec![0u8; states]; states];
            for (i, (lo, len, falling)) in rows.iter().enumerate() {
                let lo = *lo;
                let hi = (lo + len).min(states);
                for row in matrix[i][lo..hi].iter_mut() {
                    *row = 1;
                }
                if *falling {
                    values.push(partition[hi].clone());
                    values.push(partition[lo].clone());
                } else {
                    values.push(partition[lo].clone());
                    values.push(partition[hi].clone());
                }
            }
            let f =
                PiecewiseAffineMap::interval_from_values(partition.clone(), values, false)
                    .unwrap();
            (f, partition, matrix)
        },
    )
}

fn any_markov_map(
) -> impl Strategy<Value = (PiecewiseAffineMap, Vec<ExactScalar>, Vec<Vec<u8>>)> {
    prop_oneof![markov_map(2), markov_map(3)]
}

/// `det(A - xI)` for 0-1 matrices of size 2 or 3, expanded by hand.
fn char_poly_at(entries: &[Vec<u8>], x: &ExactScalar) -> ExactScalar {
    let e = |i: usize, j: usize| {
        let cell = ExactScalar::from_int(entries[i][j] as i64);
        if i == j {
            cell - x
        } else {
            cell
        }
    };
    match entries.len() {
        2 => &e(0, 0) * &e(1, 1) - &e(0, 1) * &e(1, 0),
        3 => {
            let m = |a: ExactScalar, b: ExactScalar| a * b;
            &e(0, 0) * &(&m(e(1, 1), e(2, 2)) - &m(e(1, 2), e(2, 1)))
                - &e(0, 1) * &(&m(e(1, 0), e(2, 2)) - &m(e(1, 2), e(2, 0)))
                + &e(0, 2) * &(&m(e(1, 0), e(2, 1)) - &m(e(1, 1), e(2, 0)))
        }
        n => panic!("oracle handles 2x2 and 3x3 only, got {n}"),
    }
}

fn rational_lambda_above_threshold() -> impl Strategy<Value = ExactScalar> {
    (113i64..=320, 1i64..=25)
        .prop_map(|(n, d)| grid(n, d))
        .prop_filter("below threshold", |l| {
            l > &(ExactScalar::from_int(2) + s("0+1*sqrt(5)"))
        })
}

/// A window step measure on `[0, 1]` with positive rational densities.
fn unit_window_measure() -> impl Strategy<Value = StepDensityMeasure> {
    prop::sample::subsequence((1..12i64).collect::<Vec<_>>(), 0..=3).prop_flat_map(|mid| {
        let cells = mid.len() + 1;
        prop::collection::vec((1i64..=12, 1i64..=6), cells).prop_map(move |ds| {
            let mut breakpoints = vec![ExactScalar::zero()];
            breakpoints.extend(mid.iter().map(|k| grid(*k, 12)));
            breakpoints.push(ExactScalar::one());
            let densities = ds.iter().map(|(n, d)| grid(*n, *d)).collect();
            StepDensityMeasure::window(breakpoints, densities).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transition_matrices_read_off_the_construction((f, partition, matrix) in any_markov_map()) {
        let built = TransitionMatrix::from_map(&f, &partition).unwrap();
        prop_assert_eq!(built.entries(), &matrix[..]);
    }

    #[test]
    fn perron_enclosures_bracket_the_characteristic_root(
        (f, partition, _matrix) in any_markov_map(),
        tol_exp in 3u32..=9,
    ) {
        let matrix = TransitionMatrix::from_map(&f, &partition).unwrap();
        prop_assume!(matrix.is_irreducible());
        let tol = ExactScalar::from_int(10).powi(tol_exp).recip().unwrap();
        let data = matrix.perron_enclosure(&tol).unwrap();
        prop_assert!(data.enclosure.width() <= tol);
        let p_lo = char_poly_at(matrix.entries(), data.enclosure.lo());
        let p_hi = char_poly_at(matrix.entries(), data.enclosure.hi());
        prop_assert!(!(&p_lo * &p_hi).is_positive());
        for mass in &data.masses {
            prop_assert!(mass.is_positive());
        }
        if let Some(exact) = matrix.exact_perron().unwrap() {
            prop_assert!(data.enclosure.contains(&exact.lambda));
            prop_assert!(char_poly_at(matrix.entries(), &exact.lambda).is_zero());
        }
    }

    #[test]
    fn the_model_factor_is_eigen_for_lebesgue((f, partition, _matrix) in any_markov_map()) {
        let matrix = TransitionMatrix::from_map(&f, &partition).unwrap();
        prop_assume!(matrix.is_irreducible());
        let Some(perron) = matrix.exact_perron().unwrap() else {
            return Ok(());
        };
        let measure = eigen_measure_from_masses(&partition, &perron.masses).unwrap();
        prop_assume!(eigen_residual(&f, &measure, &perron.lambda).unwrap().is_zero());

        let model = markov_semiconjugacy(&f, &partition).unwrap();
        let g = model.semiconjugacy.factor();
        let lebesgue =
            StepDensityMeasure::lebesgue_on(ExactScalar::zero(), ExactScalar::one()).unwrap();
        let g_slope = g.is_constant_slope();
        prop_assert_eq!(g_slope.as_ref(), Some(&perron.lambda));
        prop_assert!(eigen_residual(g, &lebesgue, &perron.lambda).unwrap().is_zero());
        model.semiconjugacy.verify().unwrap();
    }

    #[test]
    fn the_semiconjugacy_commutes_at_random_points(
        (f, partition, _matrix) in any_markov_map(),
        num in 1i64..144,
    ) {
        let matrix = TransitionMatrix::from_map(&f, &partition).unwrap();
        prop_assume!(matrix.is_irreducible());
        let Ok(model) = markov_semiconjugacy(&f, &partition) else {
            return Ok(());
        };
        let semi = &model.semiconjugacy;
        let x = grid(num, 144);
        // Breakpoint hits on either floor are legitimately ambiguous for
        // a discontinuous map; every interior point must commute.
        let (Ok(fx), Ok(phix)) = (f.evaluate(&x), semi.phi().eval(&x)) else {
            return Ok(());
        };
        let (Ok(left), Ok(right)) = (semi.phi().eval(&fx), semi.factor().evaluate(&phix)) else {
            return Ok(());
        };
        prop_assert_eq!(left, right);
    }

    #[test]
    fn eigen_measures_stretch_images_by_the_root(
        (f, partition, _matrix) in any_markov_map(),
        a_num in 1i64..=5,
        b_num in 7i64..=11,
    ) {
        let matrix = TransitionMatrix::from_map(&f, &partition).unwrap();
        prop_assume!(matrix.is_irreducible());
        let Ok(model) = markov_semiconjugacy(&f, &partition) else {
            return Ok(());
        };
        let mu = &model.measure;
        let lambda = &model.perron.lambda;
        // A subinterval strictly inside each branch cell.
        for (i, law) in f.laws().iter().enumerate() {
            let (lo, hi) = f.cell(i);
            let width = &hi - &lo;
            let a = &lo + &(&width * &grid(a_num, 12));
            let b = &lo + &(&width * &grid(b_num, 12));
            let (img_a, img_b) = law.image_of(&a, &b);
            prop_assert_eq!(
                mu.measure_of(&img_a, &img_b).unwrap(),
                lambda * &mu.measure_of(&a, &b).unwrap()
            );
        }
    }

    #[test]
    fn measure_transport_round_trips(nu in unit_window_measure(), k in -3i64..=3) {
        let upstairs = lift_measure_to_period(&nu, k).unwrap();
        let (lo, hi) = upstairs.window_bounds().unwrap();
        prop_assert_eq!(&lo, &ExactScalar::from_int(k));
        prop_assert_eq!(&hi, &(&lo + &ExactScalar::one()));
        let back = project_measure_to_circle(&upstairs).unwrap();
        prop_assert!(back.l1_distance(&nu).unwrap().is_zero());
    }

    #[test]
    fn threshold_margin_factors_over_the_golden_field(lambda in rational_lambda_above_threshold()) {
        let family = LambdaFamilyMap::make(&lambda).unwrap();
        let root5 = s("0+1*sqrt(5)");
        let two = ExactScalar::from_int(2);
        let plus = &lambda - &(&two + &root5);
        let minus = &lambda - &(&two - &root5);
        let product = (&plus * &minus) / &(&two * &lambda);
        prop_assert_eq!(family.margin(), &product);
    }

    #[test]
    fn quadratic_parameters_keep_the_margin_identity(
        a in 5i64..=9,
        b_num in 1i64..=4,
        b_den in 1i64..=3,
    ) {
        // lambda = a + (b_num/b_den) sqrt(5) is far above the threshold.
        let lambda = ExactScalar::from_int(a) + grid(b_num, b_den) * s("0+1*sqrt(5)");
        let family = LambdaFamilyMap::make(&lambda).unwrap();
        let two = ExactScalar::from_int(2);
        let five = ExactScalar::from_int(5);
        let shifted = &lambda - &two;
        let closed = (&(&shifted * &shifted) - &five) / &(&two * &lambda);
        prop_assert_eq!(family.margin(), &closed);
        prop_assert!(family.margin().is_positive());
    }

    #[test]
    fn certified_witnesses_straddle_one_period(lambda in rational_lambda_above_threshold()) {
        let family = LambdaFamilyMap::make(&lambda).unwrap();
        let map = family.map();
        let Transitivity::Certified { witnesses } = transitivity_check(map).unwrap() else {
            panic!("family parameters above the threshold are certified");
        };
        prop_assert_eq!(witnesses.len(), 2);
        for w in &witnesses {
            let down_image = map.evaluate(&w.down).unwrap();
            let up_image = map.evaluate(&w.up).unwrap();
            prop_assert_eq!(down_image, &w.down - &ExactScalar::one());
            prop_assert_eq!(up_image, &w.up + &ExactScalar::one());
        }
        // The rising-branch lower crossing and the falling-branch upper
        // crossing sit less than a period apart, yet their images differ
        // by more than two.
        let x_l = &witnesses[0].down;
        let x_r = &witnesses[1].up;
        prop_assert!(x_r > x_l);
        prop_assert!(&(x_r - x_l) < &ExactScalar::one());
        let spread = map.evaluate(x_r).unwrap() - map.evaluate(x_l).unwrap();
        prop_assert!(&spread > &ExactScalar::from_int(2));
    }
}
