use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact characteristic polynomial `det(tI - A)` of an integer matrix.
/// Coefficients are stored lowest degree first; the polynomial is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Faddeev–LeVerrier recursion. Every division is exact over the
    /// integers.
    pub fn of_rows(rows: &[Vec<BigInt>]) -> Self {
        let n = rows.len();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} I
            let mut next = mul(rows, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &coeffs[n - k + 1];
            }
            let am = mul(rows, &next);
            let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
            let (q, r) = (&trace / BigInt::from(k), &trace % BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
            coeffs[n - k] = -q;
            m = next;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `P(t^p)`, whose roots are the `p`-th roots of the roots of `P`.
    pub fn in_power(&self, p: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.degree() * p + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs[d * p] = c.clone();
        }
        Self { coeffs }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !magnitude.is_one() || deg == 0;
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{deg}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
