use crate::error::{bail, Result};
use crate::substitution::{checked_pow, Alphabet, Substitution, Word};

use super::{classify, Ac};

/// A binary substitution of length `k^n` with amorphic complexity
/// `n log k / (n log k - log l)`.
///
/// Columns `0..l` swap the two letters; of the remaining columns the first is
/// constant `0`, the second (if any) constant `1`, the rest constant `0`.
/// The result is checked with [`classify`] before it is returned.
pub fn synthesize_target_ac(k: usize, n: usize, l: usize) -> Result<Substitution> {
    if k < 2 || n < 1 {
        bail!(InvalidInput, "need k >= 2 and n >= 1");
    }
    let Some(len) = checked_pow(k, n).filter(|&len| len <= 1 << 20) else {
        bail!(Resource, "length {k}^{n} is too large");
    };
    if len < 3 {
        bail!(Precondition, "length {k}^{n} leaves no room for a swap column and a coincidence");
    }
    if l < 1 || l >= len {
        bail!(InvalidInput, "l must satisfy 1 <= l < {len}");
    }

    let column = |i: usize, letter: u32| -> u32 {
        if i < l {
            1 - letter
        } else if i == l + 1 {
            1
        } else {
            0
        }
    };
    let rules = (0..2u32)
        .map(|a| Word::new((0..len).map(|i| column(i, a)).collect()))
        .collect();
    let subst = Substitution::new(Alphabet::new(["0", "1"])?, rules)?;

    let report = classify(&subst)
        .map_err(|e| crate::Error::Internal(format!("synthesized substitution failed analysis: {e}")))?;
    let log_k = (len as f64).ln();
    let expected = log_k / (log_k - (l as f64).ln());
    let ac_ok = match report.ac {
        Ac::Finite(v) => (v - expected).abs() <= 1e-9,
        _ => false,
    };
    if report.height != 1 || !crate::matrices::rates_equal(report.lambda_s(), l as f64) || !ac_ok {
        bail!(
            Internal,
            "synthesized ({k}, {n}, {l}) has height {}, λ_s {}, ac {}",
            report.height,
            report.lambda_s(),
            report.ac
        );
    }
    Ok(subst)
}
