//! Nonnegative integer matrices: strongly connected decomposition,
//! per-component Perron roots, and per-index growth types.
//!
//! Growth is read off the digraph with an edge `a → b` whenever `M[b][a] > 0`,
//! i.e. whenever letter `b` occurs in the image of `a` for an incidence
//! matrix. For an index `a` with growth type `(λ, d)` the column sums of `M^n`
//! at `a` behave like `λ^n n^d`.

mod charpoly;
pub(crate) mod scc;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

pub use charpoly::CharPoly;

use crate::error::{bail, Error, Result};

/// Two Perron roots closer than this are treated as equal.
pub const RATE_TOLERANCE: f64 = 1e-9;

const POWER_ITERATION_CAP: usize = 100_000;

/// A square matrix of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    order: usize,
    entries: Vec<BigUint>,
}

impl CountMatrix {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            entries: vec![BigUint::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zero(order);
        for i in 0..order {
            m.entries[i * order + i] = BigUint::from(1u8);
        }
        m
    }

    /// Row-major construction from machine integers.
    pub fn from_u64(order: usize, entries: &[u64]) -> Self {
        assert_eq!(entries.len(), order * order, "entry count must be order²");
        Self {
            order,
            entries: entries.iter().map(|&e| BigUint::from(e)).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            bail!(InvalidInput, "matrix must be square");
        }
        let flat: Vec<u64> = rows.iter().flatten().copied().collect();
        Ok(Self::from_u64(order, &flat))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigUint) {
        self.entries[row * self.order + col] = value;
    }

    pub fn is_positive_at(&self, row: usize, col: usize) -> bool {
        !self.get(row, col).is_zero()
    }

    pub fn mul(&self, other: &CountMatrix) -> CountMatrix {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut out = Self::zero(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> CountMatrix {
        let mut result = Self::identity(self.order);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn column_sums(&self) -> Vec<BigUint> {
        (0..self.order)
            .map(|j| (0..self.order).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Maximum column sum.
    pub fn norm1(&self) -> BigUint {
        self.column_sums().into_iter().max().unwrap_or_default()
    }

    /// Simultaneous row/column relabelling: entry `(i, j)` moves to
    /// `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> CountMatrix {
        let n = self.order;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    /// Entries as machine integers. Panics on overflow; intended for tests
    /// and small displays.
    pub fn to_u64_rows(&self) -> Vec<Vec<u64>> {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| self.get(i, j).to_u64().expect("entry fits in u64"))
                    .collect()
            })
            .collect()
    }

    fn submatrix_f64(&self, members: &[usize]) -> Vec<f64> {
        let mut out = Vec::with_capacity(members.len() * members.len());
        for &i in members {
            for &j in members {
                out.push(self.get(i, j).to_f64().unwrap_or(f64::INFINITY));
            }
        }
        out
    }

    fn submatrix_int(&self, members: &[usize]) -> Vec<Vec<BigInt>> {
        members
            .iter()
            .map(|&i| members.iter().map(|&j| BigInt::from(self.get(i, j).clone())).collect())
            .collect()
    }

    /// Growth digraph: `a → b` iff `M[b][a] > 0`.
    fn growth_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).filter(|&b| self.is_positive_at(b, a)).collect())
            .collect()
    }
}

impl fmt::Display for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One strongly connected component of the growth digraph.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub members: Vec<usize>,
    /// Perron root of the diagonal block; `0` for a trivial 1×1 zero block.
    pub radius: f64,
}

/// Frobenius normal form data: the components, their condensation DAG and
/// per-component Perron roots.
///
/// Components are listed in reverse topological order: every condensation
/// edge goes from a later component to an earlier one.
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    pub component_of: Vec<usize>,
    /// Deduplicated, sorted successor lists between distinct components.
    pub condensation: Vec<Vec<usize>>,
}

impl ComponentDecomposition {
    /// The largest radius over components reachable from `component`,
    /// including itself, paired with the longest chain of components at that
    /// radius. Indexed by component.
    fn reach_profile(&self) -> Vec<(f64, u32)> {
        let mut profile: Vec<(f64, u32)> = Vec::with_capacity(self.components.len());
        // successors always precede their sources in `components`
        for (c, comp) in self.components.iter().enumerate() {
            let best = self.condensation[c]
                .iter()
                .map(|&s| profile[s].0)
                .fold(comp.radius, f64::max);
            let own = u32::from(rates_equal(comp.radius, best));
            let chain = self.condensation[c]
                .iter()
                .filter(|&&s| rates_equal(profile[s].0, best))
                .map(|&s| profile[s].1)
                .max()
                .unwrap_or(0);
            profile.push((best, own + chain));
        }
        profile
    }

    /// Components reachable from `start`, itself included.
    pub fn reachable_from(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.components.len()];
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(c) = stack.pop() {
            if std::mem::replace(&mut seen[c], true) {
                continue;
            }
            out.push(c);
            stack.extend(self.condensation[c].iter().copied());
        }
        out.sort_unstable();
        out
    }
}

pub fn decompose(m: &CountMatrix) -> Result<ComponentDecomposition> {
    let adjacency = m.growth_adjacency();
    let groups = scc::tarjan(&adjacency);
    let mut component_of = vec![0usize; m.order()];
    for (c, members) in groups.iter().enumerate() {
        for &v in members {
            component_of[v] = c;
        }
    }
    let mut condensation = vec![Vec::new(); groups.len()];
    for (a, targets) in adjacency.iter().enumerate() {
        for &b in targets {
            let (ca, cb) = (component_of[a], component_of[b]);
            if ca != cb {
                condensation[ca].push(cb);
            }
        }
    }
    for succ in &mut condensation {
        succ.sort_unstable();
        succ.dedup();
    }
    let components = groups
        .into_iter()
        .map(|members| {
            let radius = spectral_radius(m, &members)?;
            Ok(Component { members, radius })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentDecomposition {
        components,
        component_of,
        condensation,
    })
}

/// Perron root of the diagonal block of `m` on `members`, which must be a
/// strongly connected index set (or a single index).
///
/// Runs power iteration on `B + I`, which is primitive whenever `B` is
/// irreducible, and stops once the Collatz–Wielandt bracket
/// `min (Bx)_i/x_i ≤ ρ ≤ max (Bx)_i/x_i` is tighter than `1e-12` relative.
pub fn spectral_radius(m: &CountMatrix, members: &[usize]) -> Result<f64> {
    match members {
        [] => bail!(InvalidInput, "empty index set"),
        [i] => return Ok(m.get(*i, *i).to_f64().unwrap_or(f64::INFINITY)),
        _ => {}
    }
    let n = members.len();
    let mut block = m.submatrix_f64(members);
    for i in 0..n {
        block[i * n + i] += 1.0;
    }
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut bracket = (0.0, f64::INFINITY);
    for _ in 0..POWER_ITERATION_CAP {
        for i in 0..n {
            y[i] = (0..n).map(|j| block[i * n + j] * x[j]).sum();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        bracket = (lo, hi);
        if hi - lo <= 1e-12 * hi.max(1.0) {
            return Ok(0.5 * (lo + hi) - 1.0);
        }
        let scale = y.iter().copied().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
    }
    let (lo, hi) = bracket;
    if hi - lo <= 1e-10 {
        return Ok(0.5 * (lo + hi) - 1.0);
    }
    Err(Error::Numeric(format!(
        "power iteration did not converge on a block of order {n}: bracket [{lo}, {hi}]"
    )))
}

/// Exact characteristic polynomial of the diagonal block on `members`.
pub fn block_charpoly(m: &CountMatrix, members: &[usize]) -> CharPoly {
    CharPoly::of_rows(&m.submatrix_int(members))
}

/// If `radius` is within tolerance of an integer that is an exact root of
/// `poly`, that integer.
pub fn integer_root(radius: f64, poly: &CharPoly) -> Option<u64> {
    let snapped = radius.round();
    if snapped < 0.0 || (radius - snapped).abs() > RATE_TOLERANCE {
        return None;
    }
    let candidate = snapped as u64;
    poly.eval(&BigInt::from(candidate)).is_zero().then_some(candidate)
}

pub fn rates_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= RATE_TOLERANCE
}

/// Growth type `(λ, d)`: the index's iterated column sums grow like
/// `λ^n · n^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthType {
    pub rate: f64,
    pub degree: u32,
}

impl GrowthType {
    /// Convention for erasing indices.
    pub const ERASING: GrowthType = GrowthType { rate: 0.0, degree: 1 };

    /// Lexicographic order on `(rate, degree)`, rates compared up to
    /// [`RATE_TOLERANCE`].
    pub fn compare(&self, other: &GrowthType) -> Ordering {
        if rates_equal(self.rate, other.rate) {
            self.degree.cmp(&other.degree)
        } else if self.rate < other.rate {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for GrowthType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rate(self.rate), self.degree)
    }
}

/// Rates that are integers up to tolerance print as integers.
pub fn format_rate(rate: f64) -> String {
    if (rate - rate.round()).abs() <= RATE_TOLERANCE {
        format!("{}", rate.round() as i64)
    } else {
        format!("{rate:.10}")
    }
}

/// Growth type of every index. `erasing[i]` marks indices whose images die
/// out; they get [`GrowthType::ERASING`].
pub fn growth_types(m: &CountMatrix, erasing: &[bool]) -> Result<Vec<GrowthType>> {
    let decomposition = decompose(m)?;
    Ok(growth_types_from(&decomposition, erasing))
}

pub fn growth_types_from(decomposition: &ComponentDecomposition, erasing: &[bool]) -> Vec<GrowthType> {
    let profile = decomposition.reach_profile();
    decomposition
        .component_of
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if erasing.get(i).copied().unwrap_or(false) {
                GrowthType::ERASING
            } else {
                let (rate, chain) = profile[c];
                GrowthType {
                    rate,
                    degree: chain.saturating_sub(1),
                }
            }
        })
        .collect()
}
