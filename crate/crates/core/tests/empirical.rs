//! Orbit-based estimates checked against exact values.

use amorph_core::catalog;
use amorph_core::empirical::{
    fit_slope, lipschitz_ratio_probe, separation_profile, window_mismatch, ProfileParams,
};
use amorph_core::invariants::kernel_monoid;
use amorph_core::{Alphabet, Substitution, Word};

#[test]
fn e6_kernel_sequence_density_matches_letter_frequency() {
    let e6 = catalog::e6();
    let n = 5usize.pow(7);
    let x = e6.fixed_point_prefix(n).unwrap();
    let kernel = kernel_monoid(&e6).unwrap();
    let identity: Vec<u32> = e6.letters().collect();
    let g = kernel
        .elements()
        .iter()
        .find(|e| !e.is_constant() && e.map.table() != identity.as_slice())
        .expect("E6 has a nonconstant kernel map besides the identity");
    let y: Vec<u32> = x.iter().map(|&a| g.map.apply(a)).collect();
    let zeros = vec![0u32; n];
    let d1 = window_mismatch(&y, &zeros, None);
    assert!((d1 - 0.25).abs() <= 0.02, "D_1 = {d1}");

    // independent check: the frequency of letter 1 in a long prefix
    let ones = x.iter().filter(|&&a| a == 1).count() as f64 / n as f64;
    assert!((ones - 0.25).abs() <= 0.02, "frequency = {ones}");
}

#[test]
fn e2_lipschitz_floor_holds_at_the_frozen_seed() {
    let probe = lipschitz_ratio_probe(&catalog::e2(), 64, 1 << 14, 1729).unwrap();
    assert_eq!(probe.rows.len(), 64);
    assert!(probe.min_ratio >= 0.5, "min ratio {}", probe.min_ratio);
    assert!(probe.rows.iter().all(|r| r.ds <= r.d1 + 1e-12));
    assert_eq!(probe.monotonicity_failures, 0);
}

#[test]
fn lipschitz_probe_rejects_systems_without_discrete_spectrum() {
    assert!(lipschitz_ratio_probe(&catalog::thue_morse(), 8, 1024, 1).is_err());
}

#[test]
fn finite_system_profile_stays_bounded() {
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    let s = Substitution::new(alphabet, vec![Word::new(vec![0, 1]), Word::new(vec![0, 1])]).unwrap();
    let params = ProfileParams {
        points: 64,
        window: 1 << 10,
        ..ProfileParams::default()
    };
    let profile = separation_profile(&s, &params).unwrap();
    // the fixed point is (ab)^ω with two distinct shifts
    assert!(profile.counts.iter().all(|&c| c <= 2), "{:?}", profile.counts);
}

#[test]
fn e5_slope_is_close_to_one() {
    let profile = separation_profile(&catalog::e5(), &ProfileParams::default()).unwrap();
    assert!(profile.counts.windows(2).all(|w| w[0] <= w[1]));
    assert!(profile.counts.iter().all(|&c| c <= profile.points));
    let fit = fit_slope(&profile).unwrap();
    assert!((0.75..=1.25).contains(&fit.slope), "slope {}", fit.slope);
}

#[test]
fn profiles_are_deterministic() {
    let params = ProfileParams {
        points: 64,
        window: 1 << 10,
        ..ProfileParams::default()
    };
    let a = separation_profile(&catalog::e1(), &params).unwrap();
    let b = separation_profile(&catalog::e1(), &params).unwrap();
    assert_eq!(a, b);
}
