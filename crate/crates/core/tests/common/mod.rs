//! Brute-force oracles. Each one materialises words or columns directly and
//! shares no code path with the analysis it checks.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use amorph_core::{Letter, Substitution};

/// `φ^n(a)` by repeated concatenation.
pub fn iterate_word(subst: &Substitution, letter: Letter, n: usize) -> Vec<Letter> {
    let mut w = vec![letter];
    for _ in 0..n {
        w = w.iter().flat_map(|&b| subst.rule(b).iter().copied()).collect();
    }
    w
}

/// Positions where `φ^n(a)` and `φ^n(b)` differ.
pub fn difference_count(subst: &Substitution, a: Letter, b: Letter, n: usize) -> usize {
    let (x, y) = (iterate_word(subst, a, n), iterate_word(subst, b, n));
    x.iter().zip(&y).filter(|(p, q)| p != q).count()
}

/// Column `j` of `φ^m` read off the materialised images.
pub fn column_of_power(images: &[Vec<Letter>], j: usize) -> Vec<Letter> {
    images.iter().map(|w| w[j]).collect()
}

/// Number of columns of `φ^m` taking at least two values.
pub fn nonconstant_columns(subst: &Substitution, m: usize) -> usize {
    let images: Vec<Vec<Letter>> = subst.letters().map(|a| iterate_word(subst, a, m)).collect();
    (0..images[0].len())
        .filter(|&j| {
            let col = column_of_power(&images, j);
            col.iter().any(|&c| c != col[0])
        })
        .count()
}

/// Distinct columns of `φ^m` as image tables.
pub fn distinct_columns(subst: &Substitution, m: usize) -> BTreeSet<Vec<Letter>> {
    let images: Vec<Vec<Letter>> = subst.letters().map(|a| iterate_word(subst, a, m)).collect();
    (0..images[0].len()).map(|j| column_of_power(&images, j)).collect()
}

/// Height through residues: the pairs (letter, position mod n) occurring in
/// the fixed point are closed under `(b, r) -> (φ^p(b)_i, (r·K + i) mod n)`.
/// `n` divides every return time of `x_0` iff `x_0` only occurs at residue 0.
pub fn height_by_residues(subst: &Substitution) -> usize {
    let k = subst.length();
    let (seed, p) = first_letter_cycle(subst);
    let images: Vec<Vec<Letter>> = subst.letters().map(|a| iterate_word(subst, a, p)).collect();
    let big_k = images[0].len();
    let mut best = 1;
    for n in 2..=subst.size() * 2 {
        if gcd(n, k) != 1 {
            continue;
        }
        let mut seen = HashSet::from([(seed, 0usize)]);
        let mut stack = vec![(seed, 0usize)];
        while let Some((b, r)) = stack.pop() {
            for (i, &c) in images[b as usize].iter().enumerate() {
                let next = (c, (r * big_k + i) % n);
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        if seen.iter().all(|&(c, r)| c != seed || r == 0) {
            best = best.max(n);
        }
    }
    best
}

/// Least letter on a cycle of `a -> φ(a)_0` and the cycle length.
pub fn first_letter_cycle(subst: &Substitution) -> (Letter, usize) {
    for start in subst.letters() {
        let mut a = subst.rule(start)[0];
        for len in 1..=subst.size() {
            if a == start {
                return (start, len);
            }
            a = subst.rule(a)[0];
        }
    }
    unreachable!("the first-letter map has a cycle")
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct unordered pairs of the alphabet in lexicographic order.
pub fn pairs(size: usize) -> Vec<(Letter, Letter)> {
    let mut out = Vec::new();
    for a in 0..size as Letter {
        for b in a + 1..size as Letter {
            out.push((a, b));
        }
    }
    out
}
