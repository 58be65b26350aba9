//! Height and pure base.
//!
//! The height `h` of a primitive length-`k` substitution is the largest
//! integer coprime to `k` dividing every return time of the initial letter of
//! a fixed point. The pure base is the induced length-`k` substitution on the
//! `h`-blocks read at positions divisible by `h`; it always has height one.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{bail, Error, Result};
use crate::substitution::{Alphabet, Letter, Substitution, Word, DEFAULT_WORD_CAP};

pub(crate) fn require_analyzable(subst: &Substitution) -> Result<()> {
    if subst.length() < 2 {
        bail!(Precondition, "substitution length must be at least 2");
    }
    if !subst.is_primitive() {
        bail!(Precondition, "substitution is not primitive");
    }
    Ok(())
}

/// Height of a primitive substitution.
///
/// Let `x` be the fixed point of `ψ = φ^p` and `K = k^p`. Every letter of `x`
/// occupies a single residue class modulo the height. With `f(b)` the first
/// occurrence of `b`, an occurrence of `b` at `q` puts `ψ(b)_i` at `Kq + i`.
/// So `g = gcd(K·f(b) + i − f(ψ(b)_i))` over all `b` and `i` is the largest
/// modulus that splits the letters into residue classes. The height is its
/// part coprime to `k`.
pub fn height(subst: &Substitution) -> Result<usize> {
    require_analyzable(subst)?;
    let k = subst.length();
    let (_, p) = subst.fixed_point_seed();
    let psi = subst.power(p)?;
    let first = first_occurrences(subst)?;
    let big_k = psi.length() as i128;
    let mut g = 0i128;
    for b in psi.letters() {
        for (i, &c) in psi.rule(b).iter().enumerate() {
            g = g.gcd(&(big_k * first[b as usize] as i128 + i as i128 - first[c as usize] as i128));
        }
    }
    let g = usize::try_from(g).map_err(|_| Error::Internal("height modulus overflow".into()))?;
    let h = if g == 0 { 1 } else { coprime_part(g, k) };
    // h <= k as well once the system is known to be infinite; see classify
    if h > subst.size() {
        bail!(Internal, "height {h} exceeds the alphabet size {}", subst.size());
    }
    Ok(h)
}

/// First position of every letter in the fixed point.
fn first_occurrences(subst: &Substitution) -> Result<Vec<usize>> {
    let mut len = subst.length() * subst.size();
    loop {
        let prefix = subst.fixed_point_prefix(len)?;
        let mut first = vec![usize::MAX; subst.size()];
        for (m, &a) in prefix.iter().enumerate().rev() {
            first[a as usize] = m;
        }
        if first.iter().all(|&f| f != usize::MAX) {
            return Ok(first);
        }
        if len >= DEFAULT_WORD_CAP {
            bail!(Resource, "not every letter occurs within {len} letters of the fixed point");
        }
        len = (len * subst.length()).min(DEFAULT_WORD_CAP);
    }
}

/// Largest divisor of `g` sharing no prime factor with `k`.
fn coprime_part(mut g: usize, k: usize) -> usize {
    loop {
        let common = g.gcd(&k);
        if common == 1 {
            return g;
        }
        g /= common;
    }
}

/// A pure base together with the block decoding back to the original letters.
#[derive(Debug, Clone)]
pub struct PureBaseResult {
    pub height: usize,
    /// The pure base is built from `φ^power`. This is 1 unless `φ` itself has
    /// no fixed point and the height exceeds one; then blocks are pushed
    /// through the power `φ^p` that fixes the sequence, and the pure base has
    /// length `k^p`.
    pub power: usize,
    /// The pure base, over the block alphabet.
    pub pure_base: Substitution,
    /// `blocks[b]` is the original `h`-letter word encoded by block letter `b`.
    pub blocks: Vec<Word>,
}

impl PureBaseResult {
    pub fn block_alphabet(&self) -> &Alphabet {
        self.pure_base.alphabet()
    }

    /// Replaces each block letter by its underlying `h` letters.
    pub fn decode(&self, word: &[Letter]) -> Word {
        word.iter()
            .flat_map(|&b| self.blocks[b as usize].iter().copied())
            .collect::<Vec<_>>()
            .into()
    }
}

pub fn pure_base(subst: &Substitution) -> Result<PureBaseResult> {
    let h = height(subst)?;
    if h == 1 {
        return Ok(PureBaseResult {
            height: 1,
            power: 1,
            pure_base: subst.clone(),
            blocks: subst.letters().map(|a| Word::new(vec![a])).collect(),
        });
    }
    let (_, power) = subst.fixed_point_seed();
    let powered;
    let subst = if power > 1 {
        powered = subst.power(power)?;
        &powered
    } else {
        subst
    };
    let k = subst.length();
    let prefix = subst.fixed_point_prefix(h * k * k)?;

    let mut blocks: Vec<Vec<Letter>> = Vec::new();
    let mut index: HashMap<Vec<Letter>, Letter> = HashMap::new();
    let mut add = |block: &[Letter], blocks: &mut Vec<Vec<Letter>>| -> Letter {
        if let Some(&id) = index.get(block) {
            return id;
        }
        let id = blocks.len() as Letter;
        index.insert(block.to_vec(), id);
        blocks.push(block.to_vec());
        id
    };
    for chunk in prefix.chunks_exact(h) {
        add(chunk, &mut blocks);
    }

    let budget = subst.size().saturating_pow(h as u32);
    let mut rules: Vec<Option<Vec<Letter>>> = Vec::new();
    let mut queue: VecDeque<usize> = (0..blocks.len()).collect();
    while let Some(b) = queue.pop_front() {
        let image = subst.apply_unchecked(&blocks[b]);
        let mut rule = Vec::with_capacity(k);
        for chunk in image.chunks_exact(h) {
            let before = blocks.len();
            let id = add(chunk, &mut blocks);
            if blocks.len() > before {
                queue.push_back(id as usize);
            }
            rule.push(id);
        }
        if blocks.len() > budget {
            bail!(Internal, "block closure exceeded {budget} candidate blocks");
        }
        if rules.len() < blocks.len() {
            rules.resize(blocks.len(), None);
        }
        rules[b] = Some(rule);
    }

    let original = subst.alphabet();
    let join = if original.is_compact() { "" } else { "." };
    let tokens: Vec<String> = blocks
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|&a| original.token(a))
                .collect::<Vec<_>>()
                .join(join)
        })
        .collect();
    let alphabet = Alphabet::new(tokens)?;
    let rules = rules
        .into_iter()
        .map(|r| r.map(Word::new).ok_or_else(|| Error::Internal("block without a rule".into())))
        .collect::<Result<Vec<_>>>()?;
    let pure_base = Substitution::new(alphabet, rules)?;
    Ok(PureBaseResult {
        height: h,
        power,
        pure_base,
        blocks: blocks.into_iter().map(Word::new).collect(),
    })
}
