//! Property tests: structural laws of the algebra (reduction vs oracle,
//! chain-map relations between slices, invariance under basis changes) on
//! seeded random inputs, plus corpus-level laws of the derived invariants.

mod support;

use proptest::prelude::*;

use kc::builders;
use kc::homology::Analysis;
use kc::invariants::{ell_distance, gordian_lower, ideal_of};
use kc::polyalg::{graded_reduce, truncated_homology_dim, Gf2Poly};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The graded reduction recovers exactly the module the input was built
    /// from, and its truncated dimensions match the untruncated-free
    /// Gaussian oracle at every level.
    #[test]
    fn reduction_recovers_the_planted_module(seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let planted = support::random_graded_matrix(&mut rng, 6, 3);
        let decomp = graded_reduce(&planted.matrix).unwrap();
        prop_assert_eq!(decomp.free_rank(), planted.free_rank);
        let mut orders = decomp.torsion_orders();
        orders.sort_unstable();
        prop_assert_eq!(&orders, &planted.torsion_orders);
        let horizon = orders.last().copied().unwrap_or(0) + 2;
        for n in 1..=horizon {
            prop_assert_eq!(
                truncated_homology_dim(&planted.matrix, n),
                decomp.truncated_dim(n),
                "truncation level {}", n
            );
        }
    }

    /// Expressing a decomposition's own class representatives returns unit
    /// coordinates, and a torsion representative times its order expresses
    /// to zero.
    #[test]
    fn express_round_trips_class_representatives(seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let planted = support::random_graded_matrix(&mut rng, 6, 3);
        let decomp = graded_reduce(&planted.matrix).unwrap();
        for (i, rep) in decomp.free_classes().iter().enumerate() {
            let coords = decomp.express(rep).unwrap();
            for (j, c) in coords.free.iter().enumerate() {
                let expected = if i == j { Gf2Poly::one() } else { Gf2Poly::zero() };
                prop_assert_eq!(c, &expected);
            }
            prop_assert!(coords.torsion.iter().all(Gf2Poly::is_zero));
        }
        for (i, (rep, order)) in decomp.torsion_classes().iter().enumerate() {
            let coords = decomp.express(rep).unwrap();
            prop_assert!(coords.free.iter().all(Gf2Poly::is_zero));
            for (j, c) in coords.torsion.iter().enumerate() {
                let expected = if i == j { Gf2Poly::one() } else { Gf2Poly::zero() };
                prop_assert_eq!(c, &expected);
            }
            let killed: Vec<Gf2Poly> = rep.iter().map(|p| p.shifted(*order)).collect();
            let coords = decomp.express(&killed).unwrap();
            prop_assert!(coords.is_zero(), "U^order kills the class");
        }
    }

    /// Random complexes stay valid under tensor and double dual, reduction
    /// is idempotent, and tensoring with the unknot changes nothing but
    /// generator names.
    #[test]
    fn complex_operations_preserve_structure(seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let k = support::random_complex(&mut rng);
        let k2 = support::random_complex(&mut rng);

        k.tensor(&k2).validate().unwrap();
        k.dual().validate().unwrap();
        prop_assert_eq!(&k.dual().dual(), &k);

        let reduced = k.reduce();
        prop_assert_eq!(&reduced.reduce(), &reduced);

        let padded = k.tensor(&builders::unknot());
        prop_assert_eq!(padded.len(), k.len());
        let arrows: Vec<_> = padded.arrows().collect();
        let original: Vec<_> = k.arrows().collect();
        prop_assert_eq!(arrows, original);
        for i in 0..k.len() {
            prop_assert_eq!(padded.maslov(i), k.maslov(i));
            prop_assert_eq!(padded.alexander(i), k.alexander(i));
        }
    }

    /// Multiplication by w (resp. u) is a chain map between adjacent slices:
    /// every boundary entry satisfies e(s+1) = e(s) − ε(source) + ε(target).
    #[test]
    fn slice_transition_maps_are_chain_maps(seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let k = support::random_complex(&mut rng);
        let window = 4;
        for s in -window..=window {
            let here = k.slice(s).boundary;
            let up = k.slice(s + 1).boundary;
            let down = k.slice(s - 1).boundary;
            let w_eps = k.w_map(s);
            let u_eps = k.u_map(s);
            for (row, col, e) in here.entries() {
                let expect_up = i64::from(e) - i64::from(w_eps[col]) + i64::from(w_eps[row]);
                prop_assert_eq!(up.entry(row, col).map(i64::from), Some(expect_up));
                let expect_down = i64::from(e) - i64::from(u_eps[col]) + i64::from(u_eps[row]);
                prop_assert_eq!(down.entry(row, col).map(i64::from), Some(expect_down));
            }
            prop_assert_eq!(here.entries().count(), up.entries().count());
            prop_assert_eq!(here.entries().count(), down.entries().count());
        }
    }

    /// Slice homology summaries (free rank and torsion orders) are blind to
    /// the generator order of the complex.
    #[test]
    fn slice_homology_ignores_generator_order(seed in any::<u64>()) {
        let mut rng = support::rng(seed);
        let k = support::random_complex(&mut rng);
        let shuffled = support::permuted(&k, &mut rng);
        for s in -4..=4 {
            let a = graded_reduce(&k.slice(s).boundary).unwrap();
            let b = graded_reduce(&shuffled.slice(s).boundary).unwrap();
            prop_assert_eq!(a.free_rank(), b.free_rank());
            let mut oa = a.torsion_orders();
            let mut ob = b.torsion_orders();
            oa.sort_unstable();
            ob.sort_unstable();
            prop_assert_eq!(oa, ob);
        }
    }
}

/// ℓ of a sequence against itself is zero, against the trivial sequence it
/// climbs all the way to the last entry, and the found shift is minimal.
#[test]
fn ell_distance_is_minimal_and_normalized() {
    let trivial = kc::homology::IdealSequence(vec![0]);
    for (name, k) in support::knot_corpus() {
        let analysis = Analysis::new(&k).unwrap();
        let seq = analysis.ideal_sequence().unwrap();
        assert_eq!(ell_distance(&seq, &seq), 0, "{name}: self-distance");
        let last = *seq.0.last().unwrap();
        assert_eq!(ell_distance(&seq, &trivial), last, "{name}: vs trivial");
        for (name2, k2) in support::knot_corpus() {
            let seq2 = Analysis::new(&k2).unwrap().ideal_sequence().unwrap();
            let p = ell_distance(&seq, &seq2);
            assert!(p <= last, "{name} vs {name2}: capped by the last entry");
            let lhs = ideal_of(&seq);
            let rhs = ideal_of(&seq2);
            assert!(
                lhs.first_uncontained(&rhs, p).is_none(),
                "{name} vs {name2}: shift {p} suffices"
            );
            if p > 0 {
                assert!(
                    lhs.first_uncontained(&rhs, p - 1).is_some(),
                    "{name} vs {name2}: shift {} already works", p - 1
                );
            }
        }
    }
}

/// The Gordian bound is symmetric in its arguments and vanishes on
/// identical inputs.
#[test]
fn gordian_bound_is_symmetric_and_reflexively_zero() {
    let corpus = support::knot_corpus();
    for (name, k) in &corpus {
        let self_bound = gordian_lower(k, k).unwrap();
        assert_eq!(self_bound.bound, 0, "{name}: d(K, K) bound");
    }
    for (name, k) in &corpus {
        for (name2, k2) in &corpus {
            let ab = gordian_lower(k, k2).unwrap();
            let ba = gordian_lower(k2, k).unwrap();
            assert_eq!(ab, ba, "{name} vs {name2}: symmetry");
        }
    }
}
