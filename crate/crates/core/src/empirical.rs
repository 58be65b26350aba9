//! Orbit-based estimates: finite-window mismatch densities, greedy separated
//! sets and the log-log slope of their sizes.
//!
//! All densities are one-sided window averages. Orbit points are shifts
//! `T^i x` of a fixed point, represented by windows `x[i .. i + N)`.

use std::io::{self, Write};
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::discrepancy::{DiscrepancyAnalysis, MaximalPairSet};
use crate::error::{bail, Result};
use crate::matrices::rates_equal;
use crate::structure::require_analyzable;
use crate::substitution::{Letter, Substitution, Word};

pub const DEFAULT_POINTS: usize = 256;
pub const DEFAULT_WINDOW: usize = 8192;
pub const DEFAULT_WORK_CAP: u64 = 1 << 38;
pub const DEFAULT_NU_MAX: f64 = 0.25;
pub const DEFAULT_NU_MIN: f64 = 1.0 / 256.0;

/// Fraction of grid points dropped at each end before fitting.
const TRIM_FRACTION: f64 = 0.2;

#[derive(Debug, Clone)]
pub struct OrbitSample {
    prefix: Word,
    offsets: Vec<usize>,
    window: usize,
}

impl OrbitSample {
    pub fn new(prefix: Word, offsets: Vec<usize>, window: usize) -> Result<Self> {
        if let Some(&bad) = offsets.iter().find(|&&o| o + window > prefix.len()) {
            bail!(InvalidInput, "offset {bad} with window {window} overruns the prefix");
        }
        Ok(Self { prefix, offsets, window })
    }

    /// The first `points` shifts of the fixed point of `subst`.
    pub fn from_substitution(subst: &Substitution, points: usize, window: usize) -> Result<Self> {
        let prefix = subst.fixed_point_prefix(points + window)?;
        Self::new(prefix, (0..points).collect(), window)
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn window_at(&self, shift: usize) -> &[Letter] {
        &self.prefix[shift..shift + self.window]
    }
}

/// Fraction of positions where `x` and `y` differ, or with a filter, where
/// the two letters form a pair in it. Compares the common length.
pub fn window_mismatch(x: &[Letter], y: &[Letter], filter: Option<&MaximalPairSet>) -> f64 {
    let n = x.len().min(y.len());
    if n == 0 {
        return 0.0;
    }
    let hits = match filter {
        None => x.iter().zip(y).filter(|(a, b)| a != b).count(),
        Some(s) => x.iter().zip(y).filter(|(&a, &b)| s.contains(a, b)).count(),
    };
    hits as f64 / n as f64
}

/// Density estimate between the orbit points `T^i x` and `T^j x`.
pub fn mismatch_density(sample: &OrbitSample, i: usize, j: usize, filter: Option<&MaximalPairSet>) -> f64 {
    window_mismatch(sample.window_at(i), sample.window_at(j), filter)
}

/// Symmetric matrix of unfiltered densities between all sample points,
/// indexed like `sample.offsets()`.
pub fn density_matrix(sample: &OrbitSample) -> Vec<Vec<f64>> {
    let offsets = sample.offsets();
    let m = offsets.len();
    let upper: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|a| {
            (a + 1..m)
                .map(|b| mismatch_density(sample, offsets[a], offsets[b], None))
                .collect()
        })
        .collect();
    let mut full = vec![vec![0.0; m]; m];
    for (a, row) in upper.iter().enumerate() {
        for (t, &d) in row.iter().enumerate() {
            let b = a + 1 + t;
            full[a][b] = d;
            full[b][a] = d;
        }
    }
    full
}

/// Indices kept by a scan in index order that keeps a point iff its distance
/// to every previously kept point is at least `nu`.
pub fn greedy_separated(distances: &[Vec<f64>], nu: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for (i, row) in distances.iter().enumerate() {
        if kept.iter().all(|&j| row[j] >= nu) {
            kept.push(i);
        }
    }
    kept
}

/// `nu_max · 2^{-j/2}` for `j = 0, 1, …` while the value stays at or above
/// `nu_min`.
pub fn geometric_grid(nu_max: f64, nu_min: f64) -> Vec<f64> {
    let ratio = std::f64::consts::FRAC_1_SQRT_2;
    let mut grid = Vec::new();
    let mut nu = nu_max;
    while nu >= nu_min * (1.0 - 1e-9) {
        grid.push(nu);
        nu *= ratio;
    }
    grid
}

pub fn default_grid() -> Vec<f64> {
    geometric_grid(DEFAULT_NU_MAX, DEFAULT_NU_MIN)
}

#[derive(Debug, Clone)]
pub struct ProfileParams {
    pub points: usize,
    pub window: usize,
    pub nu_grid: Vec<f64>,
    /// Upper bound on `points² · window` symbol comparisons.
    pub work_cap: u64,
}

impl Default for ProfileParams {
    fn default() -> Self {
        Self {
            points: DEFAULT_POINTS,
            window: DEFAULT_WINDOW,
            nu_grid: default_grid(),
            work_cap: DEFAULT_WORK_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationProfile {
    /// Strictly decreasing.
    pub nu_grid: Vec<f64>,
    /// Separated-set sizes, nondecreasing along the grid.
    pub counts: Vec<usize>,
    pub points: usize,
    pub window: usize,
}

pub fn separation_profile(subst: &Substitution, params: &ProfileParams) -> Result<SeparationProfile> {
    require_analyzable(subst)?;
    if params.points < 32 {
        bail!(InvalidInput, "need at least 32 sample points");
    }
    if params.window < 1 << 10 {
        bail!(InvalidInput, "window must be at least 1024");
    }
    let grid = &params.nu_grid;
    if grid.is_empty() || grid.iter().any(|&nu| !(nu > 0.0 && nu <= 1.0)) {
        bail!(InvalidInput, "ν grid must be non-empty and inside (0, 1]");
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        bail!(InvalidInput, "ν grid must be strictly decreasing");
    }
    let work = (params.points as u64)
        .saturating_mul(params.points as u64)
        .saturating_mul(params.window as u64);
    if work > params.work_cap {
        bail!(Resource, "{work} symbol comparisons exceed the cap {}", params.work_cap);
    }
    let sample = OrbitSample::from_substitution(subst, params.points, params.window)?;
    let distances = density_matrix(&sample);
    let mut counts = Vec::with_capacity(grid.len());
    let mut best = 0usize;
    for &nu in grid {
        best = best.max(greedy_separated(&distances, nu).len());
        counts.push(best);
    }
    Ok(SeparationProfile {
        nu_grid: grid.clone(),
        counts,
        points: params.points,
        window: params.window,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    /// Grid indices used by the regression.
    pub range: Range<usize>,
}

/// Least-squares slope of `log count` against `-log ν`.
///
/// Usable points have `2 <= count < points` (a count equal to the number of
/// sample points is saturated). Usable points must be contiguous along the
/// grid; the longest run is taken, and 20% of it is trimmed from each end.
pub fn fit_slope(profile: &SeparationProfile) -> Result<SlopeFit> {
    let usable = |c: usize| c >= 2 && c < profile.points;
    let mut best: Range<usize> = 0..0;
    let mut start = None;
    for i in 0..=profile.counts.len() {
        match (profile.counts.get(i).is_some_and(|&c| usable(c)), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if i - s > best.len() {
                    best = s..i;
                }
                start = None;
            }
            _ => {}
        }
    }
    if best.len() < 4 {
        bail!(Estimation, "only {} usable grid points; need 4", best.len());
    }
    let trim = (TRIM_FRACTION * best.len() as f64).floor() as usize;
    let range = best.start + trim..best.end - trim;
    let xs: Vec<f64> = profile.nu_grid[range.clone()].iter().map(|nu| -nu.ln()).collect();
    let ys: Vec<f64> = profile.counts[range.clone()].iter().map(|&c| (c as f64).ln()).collect();
    Ok(SlopeFit {
        slope: least_squares_slope(&xs, &ys),
        range,
    })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub i: usize,
    pub j: usize,
    pub d1: f64,
    pub ds: f64,
}

#[derive(Debug, Clone)]
pub struct LipschitzProbe {
    pub min_ratio: f64,
    /// Sampled pairs that passed the `D_1 >= 0.01` filter.
    pub rows: Vec<DensityRow>,
    /// Pairs whose ratio dropped by more than the slack after applying `φ`.
    pub monotonicity_failures: usize,
}

pub const LIPSCHITZ_MIN_D1: f64 = 0.01;
pub const LIPSCHITZ_SLACK: f64 = 0.05;

/// Samples shift pairs of the pure-base fixed point and reports the smallest
/// `D_S / D_1` ratio, where `D_S` counts only mismatches forming a pair of
/// maximal growth. Each pair is also compared with its image under `φ`,
/// whose ratio should not be smaller.
pub fn lipschitz_ratio_probe(subst: &Substitution, samples: usize, window: usize, seed: u64) -> Result<LipschitzProbe> {
    require_analyzable(subst)?;
    let analysis = DiscrepancyAnalysis::new(subst)?;
    let pure = &analysis.pure.pure_base;
    let k = pure.length();
    let rate = analysis.discrepancy_type.exact_rate();
    if rate == 0.0 || rates_equal(rate, k as f64) {
        bail!(Precondition, "probe needs an infinite system with discrete spectrum");
    }
    let spread = 4 * window;
    let prefix = pure.fixed_point_prefix(k * (spread + window))?;
    let filter = &analysis.maximal_pairs;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut failures = 0;
    let mut attempts = 0;
    while rows.len() < samples && attempts < samples * 64 {
        attempts += 1;
        let (i, j) = (rng.random_range(0..spread), rng.random_range(0..spread));
        let (x, y) = (&prefix[i..i + window], &prefix[j..j + window]);
        let d1 = window_mismatch(x, y, None);
        if d1 < LIPSCHITZ_MIN_D1 {
            continue;
        }
        let ds = window_mismatch(x, y, Some(filter));
        let (fx, fy) = (&prefix[k * i..k * (i + window)], &prefix[k * j..k * (j + window)]);
        let image_ratio = window_mismatch(fx, fy, Some(filter)) / window_mismatch(fx, fy, None);
        if image_ratio + LIPSCHITZ_SLACK < ds / d1 {
            failures += 1;
        }
        rows.push(DensityRow { i, j, d1, ds });
    }
    if rows.is_empty() {
        bail!(Estimation, "no sampled pair reached D_1 >= {LIPSCHITZ_MIN_D1}");
    }
    let min_ratio = rows.iter().map(|r| r.ds / r.d1).fold(f64::INFINITY, f64::min);
    Ok(LipschitzProbe {
        min_ratio,
        rows,
        monotonicity_failures: failures,
    })
}

pub fn write_profile_csv<W: Write>(profile: &SeparationProfile, mut out: W) -> io::Result<()> {
    writeln!(out, "nu,count")?;
    for (nu, count) in profile.nu_grid.iter().zip(&profile.counts) {
        writeln!(out, "{nu},{count}")?;
    }
    Ok(())
}

pub fn write_density_csv<W: Write>(rows: &[DensityRow], mut out: W) -> io::Result<()> {
    writeln!(out, "i,j,d1,ds")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.i, r.j, r.d1, r.ds)?;
    }
    Ok(())
}
