//! Headline invariants: amorphic complexity, the spectral and nullness
//! verdicts, the kernel monoid and the column-set graph condition.

mod graph;
mod kernel;
mod oracle;
mod random;
mod synth;

use std::fmt;

pub use graph::graph_condition;
pub use kernel::{kernel_monoid, nonconstant_ap_counts, KernelDescriptor, MonoidElement, MAX_AP_DEPTH};
pub use oracle::{null_witness_search, NullWitness};
pub use random::{cross_validate, random_primitive, CrossValidation, CrossValidationCase};
pub use synth::synthesize_target_ac;

use crate::columns::column_sets;
use crate::discrepancy::{unpurified_rate_type, DiscrepancyAnalysis, DiscrepancyType};
use crate::error::{bail, Result};
use crate::matrices::{rates_equal, GrowthType, RATE_TOLERANCE};
use crate::structure::require_analyzable;
use crate::substitution::Substitution;

/// Amorphic complexity of a substitution subshift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ac {
    /// Finite system.
    Zero,
    Finite(f64),
    /// No discrete spectrum.
    Infinity,
}

impl Ac {
    /// `ac = log k / (log k - log λ)`, with the two degenerate rates handled
    /// exactly.
    pub fn from_rate(k: usize, rate: f64) -> Ac {
        if rate == 0.0 {
            Ac::Zero
        } else if rates_equal(rate, k as f64) {
            Ac::Infinity
        } else {
            let log_k = (k as f64).ln();
            Ac::Finite(log_k / (log_k - rate.ln()))
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Ac::Zero => 0.0,
            Ac::Finite(v) => *v,
            Ac::Infinity => f64::INFINITY,
        }
    }

    pub fn class(&self) -> &'static str {
        match self {
            Ac::Zero => "zero",
            Ac::Finite(_) => "finite",
            Ac::Infinity => "infinite",
        }
    }

    /// Within tolerance of 0 or 1.
    pub fn is_at_most_one(&self) -> bool {
        match self {
            Ac::Zero => true,
            Ac::Finite(v) => (v - 1.0).abs() <= RATE_TOLERANCE,
            Ac::Infinity => false,
        }
    }
}

impl fmt::Display for Ac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ac::Zero => write!(f, "0"),
            Ac::Finite(v) => write!(f, "{v:.6}"),
            Ac::Infinity => write!(f, "infinity"),
        }
    }
}

pub fn amorphic_complexity(subst: &Substitution) -> Result<Ac> {
    require_analyzable(subst)?;
    let analysis = DiscrepancyAnalysis::new(subst)?;
    Ok(Ac::from_rate(subst.length(), analysis.discrepancy_type.exact_rate()))
}

/// One pair of the pure base with its growth type under the discrepancy
/// substitution.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub label: String,
    pub rule: String,
    pub growth: GrowthType,
    pub maximal: bool,
}

/// Everything the exact analysis says about one substitution.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub alphabet: Vec<String>,
    pub length: usize,
    pub primitive: bool,
    pub height: usize,
    /// Rules of the pure base, rendered.
    pub pure_base_rules: Vec<String>,
    pub pairs: Vec<PairReport>,
    pub discrepancy: DiscrepancyType,
    pub ac: Ac,
    pub finite_system: bool,
    pub discrete_spectrum: bool,
    pub null_and_tame: bool,
    pub graph_condition: bool,
    /// Maximal equicontinuous factor of an infinite system.
    pub mef: Option<String>,
    /// Discrepancy type of the unpurified substitution, when the height
    /// exceeds one.
    pub unpurified: Option<DiscrepancyType>,
}

impl AnalysisReport {
    pub fn lambda_s(&self) -> f64 {
        self.discrepancy.exact_rate()
    }

    pub fn d_s(&self) -> u32 {
        self.discrepancy.degree
    }
}

pub fn classify(subst: &Substitution) -> Result<AnalysisReport> {
    require_analyzable(subst)?;
    let k = subst.length();
    let analysis = DiscrepancyAnalysis::new(subst)?;
    let pure = &analysis.pure.pure_base;
    let phi_s = &analysis.substitution;
    let lambda = analysis.discrepancy_type.exact_rate();
    let ac = Ac::from_rate(k, lambda);

    let family = column_sets(pure);
    let discrete_spectrum = family.has_singleton();
    let graph = graph::family_condition(&family);

    // finiteness, independently: φ_s is nilpotent iff λ_s = 0, and then
    // φ_s^n is already erasing for n = number of pairs.
    let kernel = KernelDescriptor::new(pure);
    let depth = phi_s.len().max(1);
    let collapsed = kernel
        .columns_at_depth(depth)
        .into_iter()
        .all(|e| kernel.elements()[e].is_constant());
    let finite_system = lambda == 0.0;
    if collapsed != finite_system {
        bail!(
            Internal,
            "finiteness disagrees: λ_s = {lambda} but columns of φ^{depth} constant = {collapsed}"
        );
    }
    if !finite_system && analysis.pure.height > k {
        bail!(Internal, "height {} exceeds k = {k} for an infinite system", analysis.pure.height);
    }
    let infinite_ac = matches!(ac, Ac::Infinity);
    if infinite_ac == discrete_spectrum {
        bail!(
            Internal,
            "spectrum disagrees: ac = {ac} but pure base coincidence = {discrete_spectrum}"
        );
    }
    if graph != (lambda <= 1.0 + RATE_TOLERANCE) {
        bail!(Internal, "graph condition {graph} disagrees with λ_s = {lambda}");
    }

    let unpurified = if analysis.pure.height > 1 {
        Some(unpurified_rate_type(subst)?)
    } else {
        None
    };
    let pairs = (0..phi_s.len())
        .map(|p| PairReport {
            label: phi_s.label(p),
            rule: phi_s.render_rule(p),
            growth: analysis.pair_types[p],
            maximal: analysis.maximal_pairs.contains_index(p),
        })
        .collect();
    let mef = (!finite_system).then(|| format!("Z_{k} x Z/{}Z", analysis.pure.height));

    Ok(AnalysisReport {
        alphabet: subst.alphabet().letters().to_vec(),
        length: k,
        primitive: true,
        height: analysis.pure.height,
        pure_base_rules: pure.letters().map(|a| pure.render_rule(a)).collect(),
        pairs,
        discrepancy: analysis.discrepancy_type,
        ac,
        finite_system,
        discrete_spectrum,
        null_and_tame: ac.is_at_most_one(),
        graph_condition: graph,
        mef,
        unpurified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ac_value(s: &Substitution) -> f64 {
        amorphic_complexity(s).unwrap().value()
    }

    #[test]
    fn formula_values() {
        assert!((ac_value(&catalog::e1()) - 1.779430).abs() < 1e-4);
        assert!((ac_value(&catalog::e2()) - 4.818842).abs() < 1e-4);
        assert!((ac_value(&catalog::e3()) - 2.0).abs() < 1e-9);
        assert!((ac_value(&catalog::e4()) - 2.709511).abs() < 1e-4);
        assert_eq!(amorphic_complexity(&catalog::thue_morse()).unwrap(), Ac::Infinity);
        assert_eq!(ac_value(&catalog::e5()), 1.0);
    }

    #[test]
    fn classify_examples() {
        let e5 = classify(&catalog::e5()).unwrap();
        assert!(!e5.finite_system && e5.discrete_spectrum && e5.null_and_tame && e5.graph_condition);
        assert_eq!(e5.mef.as_deref(), Some("Z_4 x Z/1Z"));

        let tm = classify(&catalog::thue_morse()).unwrap();
        assert!(!tm.discrete_spectrum && !tm.null_and_tame && !tm.graph_condition);

        let e4 = classify(&catalog::e4()).unwrap();
        assert_eq!(e4.height, 2);
        assert_eq!(e4.unpurified.unwrap().integer_rate, Some(3));
        assert_eq!(e4.mef.as_deref(), Some("Z_3 x Z/2Z"));
    }

    #[test]
    fn equal_rules_give_a_finite_system() {
        let s = Substitution::from_compact(&[("a", "ab"), ("b", "ab")]).unwrap();
        let report = classify(&s).unwrap();
        assert!(report.finite_system);
        assert_eq!(report.ac, Ac::Zero);
        assert!(report.null_and_tame);
        assert_eq!(report.mef, None);
    }

    #[test]
    fn rejects_non_primitive() {
        let s = Substitution::from_compact(&[("a", "aa"), ("b", "bb")]).unwrap();
        assert!(classify(&s).is_err());
    }
}
