//! Exact results checked against brute-force oracles.

mod common;

use amorph_core::catalog;
use amorph_core::discrepancy::{discrepancy_substitution, DiscrepancyAnalysis};
use amorph_core::invariants::{kernel_monoid, nonconstant_ap_counts};
use amorph_core::structure::{height, pure_base};
use amorph_core::Substitution;

use common::*;

fn pure(subst: &Substitution) -> Substitution {
    pure_base(subst).unwrap().pure_base
}

#[test]
fn pair_lengths_count_differences() {
    for (name, subst) in catalog::all() {
        let base = pure(&subst);
        let phi_s = discrepancy_substitution(&subst).unwrap();
        for (p, &(a, b)) in pairs(base.size()).iter().enumerate() {
            let mut word = vec![p as u32];
            for n in 0..=5 {
                assert_eq!(
                    word.len(),
                    difference_count(&base, a, b, n),
                    "{name}: pair {p} at n = {n}"
                );
                word = phi_s.apply(&word);
            }
        }
    }
}

#[test]
fn discrepancy_of_a_power_is_the_iterate() {
    for (name, subst) in catalog::all() {
        let base = pure(&subst);
        let phi_s = discrepancy_substitution(&base).unwrap();
        for n in 1..=4 {
            let of_power = discrepancy_substitution(&base.power(n).unwrap()).unwrap();
            let iterate = phi_s.iterate(n).unwrap();
            assert_eq!(of_power.rules(), iterate.rules(), "{name}, n = {n}");
        }
    }
}

#[test]
fn e3_pair_lengths_follow_the_recurrence() {
    let e3 = catalog::e3();
    for n in 0..=5u32 {
        let u = 2usize.pow(n) + n as usize * 2usize.pow(n) / 2;
        assert_eq!(difference_count(&e3, 0, 1, n as usize), u);
        assert_eq!(difference_count(&e3, 0, 2, n as usize), u);
        assert_eq!(difference_count(&e3, 1, 2, n as usize), 2usize.pow(n));
    }
    let analysis = DiscrepancyAnalysis::new(&e3).unwrap();
    let types: Vec<(f64, u32)> = analysis.pair_types.iter().map(|t| (t.rate, t.degree)).collect();
    assert_eq!(types, vec![(2.0, 1), (2.0, 1), (2.0, 0)]);
}

#[test]
fn heights_match_the_residue_oracle() {
    for (name, subst) in catalog::all() {
        assert_eq!(height(&subst).unwrap(), height_by_residues(&subst), "{name}");
    }
}

#[test]
fn pure_base_decodes_to_the_fixed_point() {
    let e4 = catalog::e4();
    let pb = pure_base(&e4).unwrap();
    let blocks = pb.pure_base.fixed_point_prefix(50).unwrap();
    let decoded = pb.decode(&blocks);
    assert_eq!(&decoded[..], &e4.fixed_point_prefix(100).unwrap()[..]);
}

#[test]
fn ap_counts_match_column_enumeration() {
    for (name, subst) in catalog::all() {
        let base = pure(&subst);
        let k = base.length();
        let mut m_max = 0;
        while k.pow(m_max as u32 + 1) <= 1_000_000 && m_max < 8 {
            m_max += 1;
        }
        let counts = nonconstant_ap_counts(&base, m_max).unwrap();
        for (m, count) in counts.iter().enumerate() {
            assert_eq!(count.to_string(), nonconstant_columns(&base, m).to_string(), "{name}, m = {m}");
        }
    }
}

#[test]
fn monoid_elements_are_the_columns_of_powers() {
    for (name, subst) in catalog::all() {
        let base = pure(&subst);
        let kernel = kernel_monoid(&base).unwrap();
        let mut brute = std::collections::BTreeSet::new();
        for m in 0..=4 {
            brute.extend(distinct_columns(&base, m));
        }
        let monoid: std::collections::BTreeSet<Vec<u32>> =
            kernel.elements().iter().map(|e| e.map.table().to_vec()).collect();
        assert_eq!(monoid, brute, "{name}");
    }
}

#[test]
fn e6_kernel_sequences_are_arithmetic_subsequences() {
    let e6 = catalog::e6();
    let x = e6.fixed_point_prefix(5usize.pow(3) * 64).unwrap();
    let kernel = kernel_monoid(&e6).unwrap();
    let expected: std::collections::BTreeSet<Vec<u32>> = kernel
        .elements()
        .iter()
        .map(|e| x[..64].iter().map(|&a| e.map.apply(a)).collect())
        .collect();
    let mut found = std::collections::BTreeSet::new();
    for m in 0..=3u32 {
        let step = 5usize.pow(m);
        for j in 0..step {
            found.insert((0..64).map(|n| x[step * n + j]).collect::<Vec<u32>>());
        }
    }
    assert_eq!(found, expected);
    assert_eq!(found.len(), 5);
}
