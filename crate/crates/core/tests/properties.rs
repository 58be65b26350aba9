mod common;

use amorph_core::columns::column_sets;
use amorph_core::discrepancy::{discrepancy_substitution, DiscrepancyAnalysis};
use amorph_core::empirical::{greedy_separated, mismatch_density, window_mismatch, OrbitSample};
use amorph_core::invariants::{amorphic_complexity, classify, nonconstant_ap_counts, Ac};
use amorph_core::matrices::{growth_types, CountMatrix, GrowthType};
use amorph_core::structure::{height, pure_base};
use amorph_core::{Alphabet, Substitution, Word};
use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::*;

fn substitution(max_letters: usize, max_length: usize) -> impl Strategy<Value = Substitution> {
    (2..=max_letters, 2..=max_length).prop_flat_map(|(n, k)| {
        prop::collection::vec(prop::collection::vec(0..n as u32, k), n).prop_map(move |rules| {
            let alphabet = Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap();
            Substitution::new(alphabet, rules.into_iter().map(Word::new).collect()).unwrap()
        })
    })
}

fn primitive(max_letters: usize, max_length: usize) -> impl Strategy<Value = Substitution> {
    substitution(max_letters, max_length).prop_filter("primitive", |s| s.is_primitive())
}

fn matrix(max_order: usize) -> impl Strategy<Value = CountMatrix> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![3 => Just(0u64), 2 => 1..=3u64], n * n)
            .prop_map(move |entries| CountMatrix::from_u64(n, &entries))
    })
}

fn ac_value(ac: Ac) -> f64 {
    ac.value()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incidence_of_power_is_matrix_power(s in substitution(4, 3), n in 1usize..=4) {
        prop_assert_eq!(s.power(n).unwrap().incidence_matrix(), s.incidence_matrix().pow(n as u32));
    }

    #[test]
    fn fixed_point_prefix_is_fixed(s in primitive(4, 4)) {
        let (_, p) = s.fixed_point_seed();
        let x = s.fixed_point_prefix(200).unwrap();
        let image = s.power(p).unwrap().apply(&x).unwrap();
        prop_assert_eq!(&image[..200], &x[..]);
    }

    #[test]
    fn column_sets_are_closed(s in substitution(4, 4)) {
        let family = column_sets(&s);
        for set in family.sets() {
            for map in s.column_maps() {
                prop_assert!(family.contains(&map.image_of(set)));
            }
        }
    }

    #[test]
    fn primitivity_survives_powers(s in substitution(3, 3), n in 1usize..=3) {
        prop_assert_eq!(s.is_primitive(), s.power(n).unwrap().is_primitive());
    }

    #[test]
    fn growth_types_commute_with_relabelling(m in matrix(6), seed in any::<u64>()) {
        let n = m.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let before = growth_types(&m, &vec![false; n]).unwrap();
        let after = growth_types(&m.permuted(&perm), &vec![false; n]).unwrap();
        for i in 0..n {
            prop_assert_eq!(before[i].compare(&after[perm[i]]), std::cmp::Ordering::Equal);
        }
    }

    #[test]
    fn column_norms_grow_like_the_growth_type(m in matrix(6)) {
        let n = m.order();
        let top = growth_types(&m, &vec![false; n])
            .unwrap()
            .into_iter()
            .max_by(|a, b| a.compare(b))
            .unwrap_or(GrowthType::ERASING);
        prop_assume!(top.rate >= 1.0);
        let steps = 8u32;
        let a = m.pow(steps).norm1().to_f64().unwrap();
        let b = m.pow(2 * steps).norm1().to_f64().unwrap();
        let observed = (b / a).powf(1.0 / steps as f64);
        let predicted = top.rate * 2f64.powf(top.degree as f64 / steps as f64);
        prop_assert!((observed / predicted - 1.0).abs() < 0.1, "observed {} predicted {}", observed, predicted);
    }

    #[test]
    fn heights_agree_with_residues(s in primitive(4, 4)) {
        prop_assert_eq!(height(&s).unwrap(), height_by_residues(&s));
    }

    #[test]
    fn pure_base_has_height_one(s in primitive(4, 3)) {
        let pb = pure_base(&s).unwrap();
        prop_assert_eq!(height(&pb.pure_base).unwrap(), 1);
        prop_assert_eq!(pb.pure_base.length(), s.length().pow(pb.power as u32));
    }

    #[test]
    fn discrepancy_power_identity(s in primitive(3, 3), n in 1usize..=4) {
        let base = pure_base(&s).unwrap().pure_base;
        let phi_s = discrepancy_substitution(&base).unwrap();
        let of_power = discrepancy_substitution(&base.power(n).unwrap()).unwrap();
        let iterate = phi_s.iterate(n).unwrap();
        prop_assert_eq!(of_power.rules(), iterate.rules());
    }

    #[test]
    fn pair_images_count_differences(s in primitive(4, 3), n in 0usize..=5) {
        let base = pure_base(&s).unwrap().pure_base;
        let phi_s = discrepancy_substitution(&base).unwrap();
        for (p, &(a, b)) in pairs(base.size()).iter().enumerate() {
            let mut word = vec![p as u32];
            for _ in 0..n {
                word = phi_s.apply(&word);
            }
            prop_assert_eq!(word.len(), difference_count(&base, a, b, n));
        }
    }

    #[test]
    fn rate_of_power_is_power_of_rate(s in primitive(3, 3), n in 1usize..=3) {
        let rate = DiscrepancyAnalysis::new(&s).unwrap().discrepancy_type.exact_rate();
        let of_power = DiscrepancyAnalysis::new(&s.power(n).unwrap()).unwrap().discrepancy_type.exact_rate();
        let expected = rate.powi(n as i32);
        prop_assert!((of_power - expected).abs() <= 1e-8 * expected.max(1.0));
    }

    #[test]
    fn ac_is_invariant_under_powers(s in primitive(3, 3), n in 1usize..=3) {
        let a = ac_value(amorphic_complexity(&s).unwrap());
        let b = ac_value(amorphic_complexity(&s.power(n).unwrap()).unwrap());
        prop_assert!(a == b || (a - b).abs() <= 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn rate_extremes(s in primitive(4, 4)) {
        let report = classify(&s).unwrap();
        let base = pure_base(&s).unwrap().pure_base;
        // finite iff the images of the pure base agree after as many steps
        // as there are pairs; skip cases whose words get too long to compare
        let k = base.length();
        let horizon = base.size() * base.size().saturating_sub(1) / 2;
        prop_assume!(k.checked_pow(horizon as u32).is_some_and(|len| len <= 1 << 20));
        let collapses = (0..=horizon).any(|n| {
            let first = iterate_word(&base, 0, n);
            base.letters().all(|a| iterate_word(&base, a, n) == first)
        });
        prop_assert_eq!(report.lambda_s() == 0.0, collapses);
        let no_coincidence = !column_sets(&base).has_singleton();
        prop_assert_eq!((report.lambda_s() - s.length() as f64).abs() <= 1e-9, no_coincidence);
    }

    #[test]
    fn ap_counts_match_brute_force(s in primitive(4, 4)) {
        let base = pure_base(&s).unwrap().pure_base;
        let k = base.length();
        let m_max = (1..=6).take_while(|&m| k.pow(m as u32) <= 20_000).last().unwrap_or(1);
        let counts = nonconstant_ap_counts(&base, m_max).unwrap();
        for (m, c) in counts.iter().enumerate() {
            prop_assert_eq!(c.to_string(), nonconstant_columns(&base, m).to_string());
        }
        // periodic sequences can lose the nonconstant identity column
        if classify(&s).unwrap().lambda_s() > 0.0 {
            prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn densities_are_symmetric_and_nearly_triangular(s in primitive(3, 3), i in 0usize..64, j in 0usize..64, l in 0usize..64) {
        let n = 512;
        let sample = OrbitSample::new(s.fixed_point_prefix(n + 64).unwrap(), (0..64).collect(), n).unwrap();
        let d = |a, b| mismatch_density(&sample, a, b, None);
        prop_assert_eq!(d(i, j), d(j, i));
        prop_assert!(d(i, l) <= d(i, j) + d(j, l) + 2.0 / n as f64);
        let analysis = DiscrepancyAnalysis::new(&s).unwrap();
        if analysis.pure.height == 1 {
            let filtered = mismatch_density(&sample, i, j, Some(&analysis.maximal_pairs));
            prop_assert!(filtered <= d(i, j) + 1e-12);
        }
    }

    #[test]
    fn greedy_sets_are_maximal(s in primitive(3, 3), nu in 0.01f64..0.5) {
        let n = 512;
        let x = s.fixed_point_prefix(n + 48).unwrap();
        let distances: Vec<Vec<f64>> = (0..48)
            .map(|a| (0..48).map(|b| window_mismatch(&x[a..a + n], &x[b..b + n], None)).collect())
            .collect();
        let kept = greedy_separated(&distances, nu);
        for (a, row) in distances.iter().enumerate() {
            if !kept.contains(&a) {
                prop_assert!(kept.iter().any(|&b| row[b] < nu));
            }
        }
        for (p, &a) in kept.iter().enumerate() {
            for &b in &kept[p + 1..] {
                prop_assert!(distances[a][b] >= nu);
            }
        }
    }
}
