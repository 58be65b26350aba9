use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::discrepancy::DiscrepancyAnalysis;
use crate::error::Result;
use crate::matrices::RATE_TOLERANCE;
use crate::substitution::{Alphabet, Substitution, Word};

use super::graph_condition;

/// Draws a primitive substitution with `2..=max_letters` letters and length
/// `2..=max_length` by rejection sampling.
pub fn random_primitive<R: Rng>(rng: &mut R, max_letters: usize, max_length: usize) -> Substitution {
    loop {
        let n = rng.random_range(2..=max_letters.max(2));
        let k = rng.random_range(2..=max_length.max(2));
        let alphabet = Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
            .expect("distinct single letters");
        let rules = (0..n)
            .map(|_| Word::new((0..k).map(|_| rng.random_range(0..n as u32)).collect()))
            .collect();
        let subst = Substitution::new(alphabet, rules).expect("constant length by construction");
        if subst.is_primitive() {
            return subst;
        }
    }
}

#[derive(Debug, Clone)]
pub struct CrossValidationCase {
    pub substitution: Substitution,
    pub lambda_s: f64,
    pub graph_condition: bool,
    /// Empty when both checks pass.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub seed: u64,
    pub cases: Vec<CrossValidationCase>,
}

impl CrossValidation {
    pub fn violation_count(&self) -> usize {
        self.cases.iter().filter(|c| !c.violations.is_empty()).count()
    }
}

/// Checks, on `count` seeded random primitive substitutions, that the graph
/// condition holds exactly when `λ_s <= 1` and that `λ_s` lies in
/// `{0} ∪ [1, k]`.
///
/// Substitutions are drawn sequentially from one generator and analysed in
/// parallel; the result is identical for a given seed.
pub fn cross_validate(seed: u64, count: usize, max_letters: usize, max_length: usize) -> Result<CrossValidation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let substitutions: Vec<Substitution> = (0..count)
        .map(|_| random_primitive(&mut rng, max_letters, max_length))
        .collect();
    let cases = substitutions
        .into_par_iter()
        .map(|subst| {
            let analysis = DiscrepancyAnalysis::new(&subst)?;
            let lambda_s = analysis.discrepancy_type.exact_rate();
            let graph = graph_condition(&subst)?;
            let k = subst.length() as f64;
            let mut violations = Vec::new();
            if graph != (lambda_s <= 1.0 + RATE_TOLERANCE) {
                violations.push(format!("graph condition {graph} with λ_s = {lambda_s}"));
            }
            let in_range = lambda_s == 0.0 || (1.0 - RATE_TOLERANCE..=k + RATE_TOLERANCE).contains(&lambda_s);
            if !in_range {
                violations.push(format!("λ_s = {lambda_s} outside {{0}} ∪ [1, {k}]"));
            }
            Ok(CrossValidationCase {
                substitution: subst,
                lambda_s,
                graph_condition: graph,
                violations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossValidation { seed, cases })
}
