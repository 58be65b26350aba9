//! Alphabets, words and constant-length substitutions.
//!
//! Letters are arbitrary text tokens. Internally every letter is a dense index
//! into its [`Alphabet`], and words are plain index vectors; all matrix and
//! column computations run on those indices.

use std::collections::HashMap;
use std::fmt;

use crate::columns::ColumnMap;
use crate::error::{bail, Error, Result};
use crate::matrices::CountMatrix;

/// Dense index of a letter inside its alphabet.
pub type Letter = u32;

/// Longest word (in symbols) any operation is allowed to materialize.
pub const DEFAULT_WORD_CAP: usize = 1 << 26;

/// An ordered, non-empty set of distinct letter tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            bail!(InvalidInput, "alphabet must not be empty");
        }
        let mut index = HashMap::with_capacity(letters.len());
        for (i, token) in letters.iter().enumerate() {
            if token.is_empty() || token.chars().any(char::is_whitespace) {
                bail!(InvalidInput, "letter token {token:?} is empty or contains whitespace");
            }
            if index.insert(token.clone(), i as Letter).is_some() {
                bail!(InvalidInput, "duplicate letter {token:?}");
            }
        }
        Ok(Self { letters, index })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.letters[letter as usize]
    }

    pub fn lookup(&self, token: &str) -> Option<Letter> {
        self.index.get(token).copied()
    }

    /// True when every token is a single character, so words can be printed
    /// without separators.
    pub fn is_compact(&self) -> bool {
        self.letters.iter().all(|t| t.chars().count() == 1)
    }

    /// Reads a word written with single-character tokens.
    pub fn parse_compact(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                self.lookup(c.encode_utf8(&mut [0; 4]))
                    .ok_or_else(|| Error::InvalidInput(format!("letter {c:?} is not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Renders a word; compact alphabets are concatenated, others are
    /// space-separated.
    pub fn render(&self, word: &[Letter]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&l| self.token(l))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A finite word as a sequence of letter indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(symbols: Vec<Letter>) -> Self {
        Self(symbols)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(symbols: Vec<Letter>) -> Self {
        Self(symbols)
    }
}

impl std::ops::Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// A substitution of constant length `k`: one image word of length `k` per
/// letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    rules: Vec<Word>,
    length: usize,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, rules: Vec<Word>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            bail!(
                InvalidInput,
                "expected {} rules, got {}",
                alphabet.len(),
                rules.len()
            );
        }
        let length = rules[0].len();
        if length == 0 {
            bail!(InvalidInput, "images must be non-empty");
        }
        for (a, rule) in rules.iter().enumerate() {
            if rule.len() != length {
                bail!(
                    Precondition,
                    "non-constant length: image of {:?} has length {}, expected {}",
                    alphabet.token(a as Letter),
                    rule.len(),
                    length
                );
            }
            if let Some(&bad) = rule.iter().find(|&&s| s as usize >= alphabet.len()) {
                bail!(InvalidInput, "symbol index {bad} outside the alphabet");
            }
        }
        Ok(Self { alphabet, rules, length })
    }

    /// Builds a substitution from `(letter, image)` pairs where every letter
    /// is a single character and images are written compactly.
    pub fn from_compact(rules: &[(&str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(rules.iter().map(|(l, _)| *l))?;
        let images = rules
            .iter()
            .map(|(_, image)| alphabet.parse_compact(image))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, images)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn rule(&self, letter: Letter) -> &[Letter] {
        &self.rules[letter as usize]
    }

    /// The common image length `k`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.alphabet.len() as Letter
    }

    /// Applies the substitution to a word by concatenating images.
    pub fn apply(&self, word: &[Letter]) -> Result<Word> {
        if let Some(&bad) = word.iter().find(|&&s| s as usize >= self.size()) {
            bail!(InvalidInput, "symbol index {bad} outside the alphabet");
        }
        Ok(Word(self.apply_unchecked(word)))
    }

    pub(crate) fn apply_unchecked(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(word.len() * self.length);
        for &s in word {
            out.extend_from_slice(&self.rules[s as usize]);
        }
        out
    }

    /// The substitution `φ^n` of length `k^n`, using the default word cap.
    pub fn power(&self, n: usize) -> Result<Self> {
        self.power_capped(n, DEFAULT_WORD_CAP)
    }

    pub fn power_capped(&self, n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            bail!(InvalidInput, "power exponent must be positive");
        }
        let len = checked_pow(self.length, n)
            .filter(|&len| len <= cap)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "image length {}^{} exceeds the word cap {}",
                    self.length, n, cap
                ))
            })?;
        let mut rules = self.rules.clone();
        for _ in 1..n {
            rules = rules.iter().map(|w| Word(self.apply_unchecked(w))).collect();
        }
        debug_assert!(rules.iter().all(|w| w.len() == len));
        Ok(Self {
            alphabet: self.alphabet.clone(),
            rules,
            length: len,
        })
    }

    /// Entry `(a, b)` counts the occurrences of `a` in the image of `b`.
    pub fn incidence_matrix(&self) -> CountMatrix {
        let n = self.size();
        let mut counts = vec![0u64; n * n];
        for (b, rule) in self.rules.iter().enumerate() {
            for &a in rule.iter() {
                counts[a as usize * n + b] += 1;
            }
        }
        CountMatrix::from_u64(n, &counts)
    }

    /// Whether some power of the incidence matrix is entrywise positive.
    ///
    /// Squares the boolean occurrence matrix until the exponent passes the
    /// Wielandt bound `(n-1)^2 + 1`; a primitive matrix is positive at every
    /// exponent from there on, a non-primitive one never is.
    pub fn is_primitive(&self) -> bool {
        let n = self.size();
        let mut reach = vec![false; n * n];
        for (b, rule) in self.rules.iter().enumerate() {
            for &a in rule.iter() {
                reach[b * n + a as usize] = true;
            }
        }
        let bound = (n - 1) * (n - 1) + 1;
        let mut exponent = 1usize;
        while exponent < bound {
            reach = bool_square(&reach, n);
            exponent *= 2;
        }
        reach.iter().all(|&r| r)
    }

    pub fn column_map(&self, i: usize) -> ColumnMap {
        ColumnMap::new(self.rules.iter().map(|w| w[i]).collect())
    }

    pub fn column_maps(&self) -> Vec<ColumnMap> {
        (0..self.length).map(|i| self.column_map(i)).collect()
    }

    /// The least letter lying on a cycle of the first-letter map
    /// `a ↦ φ(a)_0`, together with the cycle length.
    pub fn fixed_point_seed(&self) -> (Letter, usize) {
        let first = |a: Letter| self.rules[a as usize][0];
        let n = self.size();
        for a in self.letters() {
            let mut b = first(a);
            for p in 1..=n {
                if b == a {
                    return (a, p);
                }
                b = first(b);
            }
        }
        unreachable!("a self-map of a finite set always has a cycle")
    }

    /// The first `n_symbols` symbols of the one-sided fixed point of `φ^p`
    /// grown from [`fixed_point_seed`](Self::fixed_point_seed).
    pub fn fixed_point_prefix(&self, n_symbols: usize) -> Result<Word> {
        if n_symbols == 0 {
            bail!(InvalidInput, "prefix length must be positive");
        }
        if n_symbols > DEFAULT_WORD_CAP {
            bail!(Resource, "prefix of {n_symbols} symbols exceeds the word cap");
        }
        if !self.is_primitive() {
            bail!(Precondition, "fixed points are only generated for primitive substitutions");
        }
        if self.length < 2 && n_symbols > 1 {
            bail!(Precondition, "a length-1 substitution has no growing fixed point");
        }
        let (seed, period) = self.fixed_point_seed();
        let mut word = vec![seed];
        while word.len() < n_symbols {
            for _ in 0..period {
                let mut next = self.apply_unchecked(&word);
                next.truncate(n_symbols);
                word = next;
            }
        }
        word.truncate(n_symbols);
        Ok(Word(word))
    }

    /// Renders the rule for `letter` as `a -> aac`.
    pub fn render_rule(&self, letter: Letter) -> String {
        format!(
            "{} -> {}",
            self.alphabet.token(letter),
            self.alphabet.render(self.rule(letter))
        )
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.letters() {
            writeln!(f, "{}", self.render_rule(a))?;
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}

fn bool_square(m: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if m[i * n + j] {
                for l in 0..n {
                    if m[j * n + l] {
                        out[i * n + l] = true;
                    }
                }
            }
        }
    }
    out
}
