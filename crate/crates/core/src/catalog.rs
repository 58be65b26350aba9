//! Reference substitutions used throughout the test suites.

use crate::substitution::Substitution;

fn build(rules: &[(&str, &str)]) -> Substitution {
    Substitution::from_compact(rules).expect("catalog entries are well formed")
}

/// `a→aac, b→acc, c→aab`: golden-ratio discrepancy rate.
pub fn e1() -> Substitution {
    build(&[("a", "aac"), ("b", "acc"), ("c", "aab")])
}

/// `a→baac, b→bbca, c→bcba`: discrepancy type (3, 0), two growth classes.
pub fn e2() -> Substitution {
    build(&[("a", "baac"), ("b", "bbca"), ("c", "bcba")])
}

/// `a→aaac, b→abbb, c→accb`: discrepancy type (2, 1).
pub fn e3() -> Substitution {
    build(&[("a", "aaac"), ("b", "abbb"), ("c", "accb")])
}

/// `0→010, 1→102, 2→201`: height 2.
pub fn e4() -> Substitution {
    build(&[("0", "010"), ("1", "102"), ("2", "201")])
}

/// `0→0012, 1→1012, 2→2012`: one non-constant column.
pub fn e5() -> Substitution {
    build(&[("0", "0012"), ("1", "1012"), ("2", "2012")])
}

/// `0→00012, 1→12012, 2→20012`: null with polynomially many non-constant
/// progressions.
pub fn e6() -> Substitution {
    build(&[("0", "00012"), ("1", "12012"), ("2", "20012")])
}

pub fn thue_morse() -> Substitution {
    build(&[("a", "ab"), ("b", "ba")])
}

pub fn period_doubling() -> Substitution {
    build(&[("a", "ab"), ("b", "aa")])
}

/// Every named example with its short name.
pub fn all() -> Vec<(&'static str, Substitution)> {
    vec![
        ("e1", e1()),
        ("e2", e2()),
        ("e3", e3()),
        ("e4", e4()),
        ("e5", e5()),
        ("e6", e6()),
        ("tm", thue_morse()),
        ("pd", period_doubling()),
    ]
}

pub fn by_name(name: &str) -> Option<Substitution> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}
