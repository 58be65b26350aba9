//! The discrepancy substitution on unordered pairs of distinct letters.
//!
//! For a height-one substitution, the pair `{a, b}` maps to the word of pairs
//! `{φ(a)_i, φ(b)_i}` over exactly those positions `i` where the two images
//! differ. Its growth rate `λ_s` drives the amorphic complexity; the pairs
//! growing at rate `λ_s` form the maximal set `S`.

use std::fmt;

use crate::error::{bail, Result};
use crate::matrices::{
    self, block_charpoly, integer_root, rates_equal, CharPoly, ComponentDecomposition, CountMatrix,
    GrowthType, RATE_TOLERANCE,
};
use crate::structure::{self, PureBaseResult};
use crate::substitution::{Alphabet, Letter, Substitution, DEFAULT_WORD_CAP};

/// An unordered pair of distinct letters, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterPair {
    lo: Letter,
    hi: Letter,
}

impl LetterPair {
    /// `None` when `a == b`.
    pub fn new(a: Letter, b: Letter) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Self { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(Self { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> Letter {
        self.lo
    }

    pub fn hi(&self) -> Letter {
        self.hi
    }

    pub fn label(&self, alphabet: &Alphabet) -> String {
        let sep = if alphabet.is_compact() { "" } else { " " };
        format!("({}{}{})", alphabet.token(self.lo), sep, alphabet.token(self.hi))
    }
}

/// Position of `{lo, hi}` in the lexicographic list of pairs over `n`
/// letters.
pub fn pair_index(n: usize, pair: LetterPair) -> usize {
    let (a, b) = (pair.lo as usize, pair.hi as usize);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

pub fn all_pairs(n: usize) -> Vec<LetterPair> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n as Letter {
        for b in a + 1..n as Letter {
            out.push(LetterPair { lo: a, hi: b });
        }
    }
    out
}

/// A possibly erasing, variable-length substitution over letter pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralSubstitution {
    base: Alphabet,
    pairs: Vec<LetterPair>,
    /// Rules as pair indices.
    rules: Vec<Vec<u32>>,
    erasing: Vec<bool>,
}

impl GeneralSubstitution {
    fn from_rules(base: Alphabet, rules: Vec<Vec<u32>>) -> Self {
        let pairs = all_pairs(base.len());
        let erasing = erasing_set(&rules);
        Self {
            base,
            pairs,
            rules,
            erasing,
        }
    }

    /// The alphabet whose pairs this substitution acts on.
    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn pairs(&self) -> &[LetterPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn rules(&self) -> &[Vec<u32>] {
        &self.rules
    }

    pub fn rule(&self, pair: usize) -> &[u32] {
        &self.rules[pair]
    }

    pub fn erasing(&self) -> &[bool] {
        &self.erasing
    }

    pub fn index_of(&self, a: Letter, b: Letter) -> Option<usize> {
        LetterPair::new(a, b).map(|p| pair_index(self.base.len(), p))
    }

    pub fn label(&self, pair: usize) -> String {
        self.pairs[pair].label(&self.base)
    }

    pub fn render_word(&self, word: &[u32]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter().map(|&p| self.label(p as usize)).collect()
    }

    pub fn render_rule(&self, pair: usize) -> String {
        format!("{} -> {}", self.label(pair), self.render_word(&self.rules[pair]))
    }

    pub fn apply(&self, word: &[u32]) -> Vec<u32> {
        word.iter()
            .flat_map(|&p| self.rules[p as usize].iter().copied())
            .collect()
    }

    /// Entry `(q, p)` counts the occurrences of pair `q` in the image of `p`.
    pub fn incidence_matrix(&self) -> CountMatrix {
        let n = self.len();
        let mut counts = vec![0u64; n * n];
        for (p, rule) in self.rules.iter().enumerate() {
            for &q in rule {
                counts[q as usize * n + p] += 1;
            }
        }
        CountMatrix::from_u64(n, &counts)
    }

    /// The `n`-th iterate, materialised. Fails if any image would exceed the
    /// word cap.
    pub fn iterate(&self, n: usize) -> Result<GeneralSubstitution> {
        if n == 0 {
            bail!(InvalidInput, "iterate exponent must be positive");
        }
        let mut rules = self.rules.clone();
        for _ in 1..n {
            rules = rules.iter().map(|w| self.apply(w)).collect();
            if rules.iter().any(|w| w.len() > DEFAULT_WORD_CAP) {
                bail!(Resource, "iterated pair image exceeds the word cap");
            }
        }
        Ok(Self::from_rules(self.base.clone(), rules))
    }
}

/// Pairs whose image dies out: the least fixed point of "every pair in my
/// rule is erasing".
fn erasing_set(rules: &[Vec<u32>]) -> Vec<bool> {
    let mut erasing: Vec<bool> = rules.iter().map(Vec::is_empty).collect();
    loop {
        let mut changed = false;
        for (p, rule) in rules.iter().enumerate() {
            if !erasing[p] && rule.iter().all(|&q| erasing[q as usize]) {
                erasing[p] = true;
                changed = true;
            }
        }
        if !changed {
            return erasing;
        }
    }
}

/// The discrepancy substitution of `subst` taken as is, without purifying
/// first. Only meaningful as the true discrepancy substitution when `subst`
/// has height one.
pub fn raw_discrepancy_substitution(subst: &Substitution) -> GeneralSubstitution {
    let n = subst.size();
    let rules = all_pairs(n)
        .into_iter()
        .map(|pair| {
            let (wa, wb) = (subst.rule(pair.lo), subst.rule(pair.hi));
            wa.iter()
                .zip(wb)
                .filter_map(|(&x, &y)| LetterPair::new(x, y))
                .map(|p| pair_index(n, p) as u32)
                .collect()
        })
        .collect();
    GeneralSubstitution::from_rules(subst.alphabet().clone(), rules)
}

/// The discrepancy substitution of the pure base of `subst`.
pub fn discrepancy_substitution(subst: &Substitution) -> Result<GeneralSubstitution> {
    let pure = structure::pure_base(subst)?;
    Ok(raw_discrepancy_substitution(&pure.pure_base))
}

/// The dominant component of the pair growth graph.
#[derive(Debug, Clone)]
pub struct CriticalComponent {
    /// Pair indices in the component.
    pub members: Vec<usize>,
    pub charpoly: CharPoly,
}

/// `(λ_s, d_s)` plus the exact data needed to reproduce `λ_s`.
#[derive(Debug, Clone)]
pub struct DiscrepancyType {
    pub rate: f64,
    pub degree: u32,
    /// `None` when every pair is erasing.
    pub critical: Option<CriticalComponent>,
    /// Set when `rate` is an exact integer root of the critical polynomial.
    pub integer_rate: Option<u64>,
}

impl DiscrepancyType {
    /// The type of `φ` given the type of `φ^p`.
    fn root(self, p: usize) -> Self {
        let integer_rate = self.integer_rate.and_then(|u| {
            let v = (u as f64).powf(1.0 / p as f64).round() as u64;
            (v.checked_pow(p as u32) == Some(u)).then_some(v)
        });
        Self {
            rate: self.rate.powf(1.0 / p as f64),
            degree: self.degree,
            critical: self.critical.map(|c| CriticalComponent {
                members: c.members,
                charpoly: c.charpoly.in_power(p),
            }),
            integer_rate,
        }
    }

    /// The rate with integer values snapped to exact integers.
    pub fn exact_rate(&self) -> f64 {
        self.integer_rate.map_or(self.rate, |r| r as f64)
    }

    pub fn growth_type(&self) -> GrowthType {
        GrowthType {
            rate: self.exact_rate(),
            degree: self.degree,
        }
    }
}

impl fmt::Display for DiscrepancyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.growth_type())
    }
}

/// Pairs of maximal growth rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalPairSet {
    base_size: usize,
    member: Vec<bool>,
}

impl MaximalPairSet {
    pub fn new(base_size: usize, member: Vec<bool>) -> Self {
        assert_eq!(member.len(), base_size * base_size.saturating_sub(1) / 2);
        Self { base_size, member }
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn contains(&self, a: Letter, b: Letter) -> bool {
        LetterPair::new(a, b).is_some_and(|p| self.member[pair_index(self.base_size, p)])
    }

    pub fn contains_index(&self, pair: usize) -> bool {
        self.member[pair]
    }

    pub fn pairs(&self) -> Vec<LetterPair> {
        all_pairs(self.base_size)
            .into_iter()
            .zip(&self.member)
            .filter(|(_, &m)| m)
            .map(|(p, _)| p)
            .collect()
    }

    /// Finds `({a, b}, c)` with `{a, b}` in the set but neither `{a, c}` nor
    /// `{b, c}`.
    pub fn transitivity_violation(&self) -> Option<(LetterPair, Letter)> {
        for pair in self.pairs() {
            for c in 0..self.base_size as Letter {
                if c == pair.lo || c == pair.hi {
                    continue;
                }
                if !self.contains(pair.lo, c) && !self.contains(pair.hi, c) {
                    return Some((pair, c));
                }
            }
        }
        None
    }
}

/// Everything derived from the discrepancy substitution of one input.
#[derive(Debug, Clone)]
pub struct DiscrepancyAnalysis {
    pub pure: PureBaseResult,
    pub substitution: GeneralSubstitution,
    pub decomposition: ComponentDecomposition,
    /// Growth type per pair, in pair order.
    pub pair_types: Vec<GrowthType>,
    pub discrepancy_type: DiscrepancyType,
    pub maximal_pairs: MaximalPairSet,
}

impl DiscrepancyAnalysis {
    pub fn new(subst: &Substitution) -> Result<Self> {
        let pure = structure::pure_base(subst)?;
        let k = pure.pure_base.length();
        let phi_s = raw_discrepancy_substitution(&pure.pure_base);
        let (decomposition, mut pair_types, mut discrepancy_type) = growth_data(&phi_s, k)?;
        if pure.power > 1 {
            // the pure base belongs to φ^p; report rates per application of φ
            let p = pure.power;
            discrepancy_type = discrepancy_type.root(p);
            for t in &mut pair_types {
                t.rate = t.rate.powf(1.0 / p as f64);
            }
        }
        let member = pair_types
            .iter()
            .map(|t| rates_equal(t.rate, discrepancy_type.rate))
            .collect();
        let maximal_pairs = MaximalPairSet::new(phi_s.base().len(), member);
        if let Some((pair, c)) = maximal_pairs.transitivity_violation() {
            bail!(
                Internal,
                "maximal pair set is not transitive: {} with {}",
                pair.label(phi_s.base()),
                phi_s.base().token(c)
            );
        }
        Ok(Self {
            pure,
            substitution: phi_s,
            decomposition,
            pair_types,
            discrepancy_type,
            maximal_pairs,
        })
    }
}

/// Decomposition, per-pair growth types and the maximal type of a pair
/// substitution whose base substitution has length `k`.
pub(crate) fn growth_data(
    phi_s: &GeneralSubstitution,
    k: usize,
) -> Result<(ComponentDecomposition, Vec<GrowthType>, DiscrepancyType)> {
    let matrix = phi_s.incidence_matrix();
    let decomposition = matrices::decompose(&matrix)?;
    let pair_types = matrices::growth_types_from(&decomposition, phi_s.erasing());
    let top = pair_types
        .iter()
        .copied()
        .max_by(|a, b| a.compare(b))
        .unwrap_or(GrowthType::ERASING);

    let (critical, integer_rate) = if top.rate == 0.0 {
        (None, Some(0))
    } else {
        let component = decomposition
            .components
            .iter()
            .filter(|c| rates_equal(c.radius, top.rate))
            .min_by_key(|c| c.members[0])
            .expect("the maximal rate is attained by some component");
        let charpoly = block_charpoly(&matrix, &component.members);
        let integer_rate = integer_root(component.radius, &charpoly);
        (
            Some(CriticalComponent {
                members: component.members.clone(),
                charpoly,
            }),
            integer_rate,
        )
    };
    let rate = top.rate;
    if rate != 0.0 && !(1.0 - RATE_TOLERANCE..=k as f64 + RATE_TOLERANCE).contains(&rate) {
        bail!(Internal, "discrepancy rate {rate} outside {{0}} ∪ [1, {k}]");
    }
    Ok((
        decomposition,
        pair_types,
        DiscrepancyType {
            rate,
            degree: top.degree,
            critical,
            integer_rate,
        },
    ))
}

pub fn discrepancy_rate_type(subst: &Substitution) -> Result<DiscrepancyType> {
    Ok(DiscrepancyAnalysis::new(subst)?.discrepancy_type)
}

pub fn maximal_growth_pairs(subst: &Substitution) -> Result<MaximalPairSet> {
    Ok(DiscrepancyAnalysis::new(subst)?.maximal_pairs)
}

/// Discrepancy type of `subst` computed without purification. Differs from
/// the true discrepancy type when the height exceeds one.
pub fn unpurified_rate_type(subst: &Substitution) -> Result<DiscrepancyType> {
    let phi_s = raw_discrepancy_substitution(subst);
    Ok(growth_data(&phi_s, subst.length())?.2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn rules(subst: &Substitution) -> Vec<String> {
        let phi_s = discrepancy_substitution(subst).unwrap();
        (0..phi_s.len()).map(|p| phi_s.render_rule(p)).collect()
    }

    #[test]
    fn e1_rules() {
        assert_eq!(
            rules(&catalog::e1()),
            vec!["(ab) -> (ac)", "(ac) -> (bc)", "(bc) -> (ac)(bc)"]
        );
    }

    #[test]
    fn e6_rules() {
        assert_eq!(
            rules(&catalog::e6()),
            vec!["(01) -> (01)(02)", "(02) -> (02)", "(12) -> (12)(02)"]
        );
    }

    #[test]
    fn e2_rules_and_matrix() {
        let phi_s = discrepancy_substitution(&catalog::e2()).unwrap();
        assert_eq!(phi_s.render_rule(0), "(ab) -> (ab)(ac)(ac)");
        assert_eq!(phi_s.render_rule(1), "(ac) -> (ac)(ab)(ac)");
        assert_eq!(phi_s.render_rule(2), "(bc) -> (bc)(bc)");
        // column (ac) holds one (ab) and two (ac)
        assert_eq!(
            phi_s.incidence_matrix().to_u64_rows(),
            vec![vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 2]]
        );
    }

    #[test]
    fn identical_images_erase() {
        let s = Substitution::from_compact(&[("a", "ab"), ("b", "ab")]).unwrap();
        let phi_s = raw_discrepancy_substitution(&s);
        assert_eq!(phi_s.render_rule(0), "(ab) -> ε");
        assert_eq!(phi_s.erasing(), &[true]);
    }

    #[test]
    fn erasing_propagates() {
        let erasing = erasing_set(&[vec![], vec![0, 0], vec![2], vec![1, 3]]);
        assert_eq!(erasing, vec![true, true, false, false]);
    }

    #[test]
    fn rate_types() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let e1 = discrepancy_rate_type(&catalog::e1()).unwrap();
        assert!((e1.rate - golden).abs() < 1e-9);
        assert_eq!(e1.degree, 0);
        assert_eq!(e1.critical.unwrap().charpoly.to_string(), "t^2 - t - 1");

        let e2 = discrepancy_rate_type(&catalog::e2()).unwrap();
        assert_eq!((e2.integer_rate, e2.degree), (Some(3), 0));

        let e3 = discrepancy_rate_type(&catalog::e3()).unwrap();
        assert_eq!((e3.integer_rate, e3.degree), (Some(2), 1));
    }

    #[test]
    fn maximal_sets() {
        let e2 = maximal_growth_pairs(&catalog::e2()).unwrap();
        assert_eq!(e2.pairs(), vec![LetterPair::new(0, 1).unwrap(), LetterPair::new(0, 2).unwrap()]);
        assert!(!e2.contains(1, 2));
        assert_eq!(maximal_growth_pairs(&catalog::e3()).unwrap().pairs().len(), 3);
        assert_eq!(maximal_growth_pairs(&catalog::e5()).unwrap().pairs().len(), 3);
    }

    #[test]
    fn transitivity_violation_is_detected() {
        // only {0,1} over three letters: 2 is related to neither
        let set = MaximalPairSet::new(3, vec![true, false, false]);
        assert!(set.transitivity_violation().is_some());
        assert!(MaximalPairSet::new(3, vec![true, true, false]).transitivity_violation().is_none());
    }

    #[test]
    fn e4_unpurified_rate_is_three() {
        let raw = unpurified_rate_type(&catalog::e4()).unwrap();
        assert_eq!(raw.integer_rate, Some(3));
        let pure = discrepancy_rate_type(&catalog::e4()).unwrap();
        assert_eq!(pure.integer_rate, Some(2));
    }

    #[test]
    fn pair_indexing_is_lexicographic() {
        for n in 2..7 {
            for (i, p) in all_pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, p), i);
            }
        }
    }
}
