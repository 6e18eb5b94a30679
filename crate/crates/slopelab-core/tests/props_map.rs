//! Property tests for piecewise affine maps: composition algebra, the
//! deck relation of lifts, and the composed-partition oracle.

use proptest::prelude::*;

use slopelab_core::map::{MapKind, PiecewiseAffineMap};
use slopelab_core::scalar::{self, ExactScalar};

fn grid(num: i64, den: i64) -> ExactScalar {
    ExactScalar::from_ratio(num, den).unwrap()
}

/// Interior cut points drawn from the 1/24 grid, sorted and distinct.
fn cuts() -> impl Strategy<Value = Vec<ExactScalar>> {
    prop::sample::subsequence((1..24i64).collect::<Vec<_>>(), 0..=3)
        .prop_map(|ks| ks.into_iter().map(|k| grid(k, 24)).collect())
}

/// Node values with every consecutive pair distinct, so each branch is
/// strictly monotone.
fn node_values(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<ExactScalar>> {
    prop::collection::vec(lo..=hi, len)
        .prop_filter("flat branch", |v| v.windows(2).all(|w| w[0] != w[1]))
        .prop_map(|v| v.into_iter().map(|k| grid(k, 24)).collect())
}

/// A continuous self-map of `[0, 1]` by connecting random dots.
fn interval_map() -> impl Strategy<Value = PiecewiseAffineMap> {
    cuts().prop_flat_map(|mid| {
        let len = mid.len() + 2;
        node_values(len, 0, 24).prop_map(move |values| {
            let mut breakpoints = vec![ExactScalar::zero()];
            breakpoints.extend(mid.iter().cloned());
            breakpoints.push(ExactScalar::one());
            PiecewiseAffineMap::interval_from_values(breakpoints, values, true).unwrap()
        })
    })
}

/// A continuous degree-one circle lift from random dots over one period.
fn circle_lift() -> impl Strategy<Value = PiecewiseAffineMap> {
    cuts().prop_flat_map(|mid| {
        let len = mid.len() + 1;
        node_values(len, -24, 48)
            .prop_filter("flat wrap branch", |v| {
                v[v.len() - 1] != &v[0] + &ExactScalar::one()
            })
            .prop_map(move |values| {
                let mut breakpoints = vec![ExactScalar::zero()];
                breakpoints.extend(mid.iter().cloned());
                PiecewiseAffineMap::lift_from_values(breakpoints, values, true).unwrap()
            })
    })
}

fn either_map() -> impl Strategy<Value = PiecewiseAffineMap> {
    prop_oneof![interval_map(), circle_lift()]
}

type MapTriple = (PiecewiseAffineMap, PiecewiseAffineMap, PiecewiseAffineMap);

fn same_kind_triple() -> impl Strategy<Value = MapTriple> {
    prop_oneof![
        (interval_map(), interval_map(), interval_map()),
        (circle_lift(), circle_lift(), circle_lift()),
    ]
}

/// The composed partition as the module contract words it: the inner
/// breakpoints plus inner preimages of outer breakpoints (or their
/// integer translates) strictly inside each branch image.
fn composed_partition_oracle(
    inner: &PiecewiseAffineMap,
    outer: &PiecewiseAffineMap,
) -> Vec<ExactScalar> {
    let mut cuts: Vec<ExactScalar> = inner.breakpoints().to_vec();
    for (i, law) in inner.laws().iter().enumerate() {
        let (lo, hi) = inner.cell(i);
        let (img_lo, img_hi) = law.image_of(&lo, &hi);
        let targets = match inner.kind() {
            MapKind::Interval => outer
                .breakpoints()
                .iter()
                .filter(|q| *q > &img_lo && *q < &img_hi)
                .cloned()
                .collect::<Vec<_>>(),
            MapKind::CircleLift => outer.breakpoint_translates_within(&img_lo, &img_hi),
        };
        for q in targets {
            cuts.push(law.invert(&q));
        }
    }
    scalar::sort_dedup(&mut cuts);
    cuts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((f, g, h) in same_kind_triple()) {
        let left = PiecewiseAffineMap::compose(
            &PiecewiseAffineMap::compose(&f, &g).unwrap(),
            &h,
        ).unwrap();
        let right = PiecewiseAffineMap::compose(
            &f,
            &PiecewiseAffineMap::compose(&g, &h).unwrap(),
        ).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_evaluates_pointwise(
        f in interval_map(),
        g in interval_map(),
        num in 0i64..=96,
    ) {
        let x = grid(num, 96);
        let composed = PiecewiseAffineMap::compose(&f, &g).unwrap();
        let via_steps = g.evaluate(&f.evaluate(&x).unwrap()).unwrap();
        prop_assert_eq!(composed.evaluate(&x).unwrap(), via_steps);
    }

    #[test]
    fn lifts_commute_with_the_deck_translation(
        f in circle_lift(),
        num in 0i64..96,
        shift in -3i64..=3,
    ) {
        let x = grid(num, 96);
        let translated = &x + &ExactScalar::from_int(shift);
        let direct = f.evaluate(&translated).unwrap();
        let moved = f.evaluate(&x).unwrap() + ExactScalar::from_int(shift);
        prop_assert_eq!(direct, moved);
    }

    #[test]
    fn iterates_add_like_exponents(f in either_map(), m in 1u32..=2, n in 1u32..=2) {
        let combined = f.iterate(m + n).unwrap();
        let staged = PiecewiseAffineMap::compose(
            &f.iterate(m).unwrap(),
            &f.iterate(n).unwrap(),
        ).unwrap();
        prop_assert_eq!(combined, staged);
    }

    #[test]
    fn composed_partition_matches_the_refinement_oracle((f, g, _h) in same_kind_triple()) {
        let composed = PiecewiseAffineMap::compose(&f, &g).unwrap();
        let oracle = composed_partition_oracle(&f, &g);
        prop_assert_eq!(composed.breakpoints(), &oracle[..]);
    }

    #[test]
    fn composition_multiplies_constant_slopes(f in circle_lift(), g in circle_lift()) {
        if let (Some(a), Some(b)) = (f.is_constant_slope(), g.is_constant_slope()) {
            let composed = PiecewiseAffineMap::compose(&f, &g).unwrap();
            prop_assert_eq!(composed.is_constant_slope(), Some(a * b));
        }
    }
}
