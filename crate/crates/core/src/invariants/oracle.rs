use rayon::prelude::*;

use crate::error::{bail, Result};
use crate::substitution::Letter;

pub const MAX_T: usize = 3;
pub const MAX_WINDOW: usize = 32;

/// Positions `G` and letters `a < b` such that every word in `{a, b}^G`
/// occurs in the prefix along some shift of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullWitness {
    pub positions: Vec<usize>,
    pub letters: (Letter, Letter),
}

/// Brute-force search for a witness that the sequence is not `t`-null.
///
/// Position sets are tried in lexicographic order, and for each one the
/// letter pairs in lexicographic order; the first hit is returned. `None`
/// only means no witness exists within this prefix and window.
pub fn null_witness_search(prefix: &[Letter], t: usize, window: usize) -> Result<Option<NullWitness>> {
    if t == 0 || t > MAX_T {
        bail!(Resource, "t must lie in 1..={MAX_T}");
    }
    if window == 0 || window > MAX_WINDOW {
        bail!(Resource, "window must lie in 1..={MAX_WINDOW}");
    }
    if t > window {
        bail!(InvalidInput, "t = {t} exceeds the window {window}");
    }
    if prefix.len() < 4 * window {
        bail!(Precondition, "prefix of length {} is shorter than 4 x window", prefix.len());
    }
    let mut letters: Vec<Letter> = prefix.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let pairs: Vec<(Letter, Letter)> = letters
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| letters[i + 1..].iter().map(move |&b| (a, b)))
        .collect();

    let sets = position_sets(window, t);
    let found = sets.par_iter().find_map_first(|g| {
        pairs
            .iter()
            .find(|&&pair| realizes_all(prefix, g, pair))
            .map(|&pair| NullWitness {
                positions: g.clone(),
                letters: pair,
            })
    });
    Ok(found)
}

fn position_sets(window: usize, t: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, window: usize, t: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == t {
            out.push(current.clone());
            return;
        }
        for p in start..window {
            current.push(p);
            extend(p + 1, window, t, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, window, t, &mut Vec::new(), &mut out);
    out
}

fn realizes_all(prefix: &[Letter], g: &[usize], (a, b): (Letter, Letter)) -> bool {
    let span = *g.last().expect("non-empty position set");
    let full = (1u32 << g.len()) - 1;
    let mut seen = vec![false; 1 << g.len()];
    let mut remaining = full + 1;
    for s in 0..prefix.len() - span {
        let mut mask = 0usize;
        let mut ok = true;
        for (bit, &p) in g.iter().enumerate() {
            match prefix[s + p] {
                x if x == a => {}
                x if x == b => mask |= 1 << bit,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && !std::mem::replace(&mut seen[mask], true) {
            remaining -= 1;
            if remaining == 0 {
                return true;
            }
        }
    }
    false
}
