//! The matrix representation `ς : R_n → M_n`.
//!
//! `ς(u) = Σ u_ℓ g^(ℓ-1)` where `g` is the signed cyclic shift with
//! `g e_1 = -e_n` and `g e_ℓ = e_(ℓ-1)`. Every matrix in the image is
//! negacyclic: its first row is `u` and each further row is the previous one
//! rotated right with the wrapped entry negated.

use crate::algebra::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};

/// A dense row-major `n × n` real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SigmaMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn negate(&self) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn matmul(&self, other: &SigmaMatrix) -> Result<SigmaMatrix> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(SigmaMatrix { n, entries: out })
    }

    pub fn max_abs_diff(&self, other: &SigmaMatrix) -> f64 {
        self.entries.iter().zip(&other.entries).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest deviation from the negacyclic pattern generated by row 0.
    pub fn negacyclic_deviation(&self) -> f64 {
        let n = self.n;
        let first = self.row(0);
        let mut dev: f64 = 0.0;
        for r in 1..n {
            for c in 0..n {
                let expected = if c >= r { first[c - r] } else { -first[n + c - r] };
                dev = dev.max((self.get(r, c) - expected).abs());
            }
        }
        dev
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let Some(lu) = Lu::factor(self) else {
            return 0.0;
        };
        lu.determinant()
    }

    fn transpose(&self) -> SigmaMatrix {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c];
            }
        }
        SigmaMatrix { n, entries }
    }
}

/// LU factorization `P A = L U` with partial pivoting.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    /// Returns `None` only when a pivot column is exactly zero.
    pub(crate) fn factor(a: &SigmaMatrix) -> Option<Lu> {
        let n = a.n;
        let mut lu = a.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|r| (r, lu[r * n + k].abs()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                return None;
            }
            if p != k {
                for c in 0..n {
                    lu.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[k * n + k];
            for r in k + 1..n {
                let f = lu[r * n + k] / pivot;
                lu[r * n + k] = f;
                if f != 0.0 {
                    for c in k + 1..n {
                        lu[r * n + c] -= f * lu[k * n + c];
                    }
                }
            }
        }
        Some(Lu { n, lu, perm, swaps })
    }

    pub(crate) fn determinant(&self) -> f64 {
        let diag: f64 = (0..self.n).map(|i| self.lu[i * self.n + i]).product();
        if self.swaps.is_multiple_of(2) {
            diag
        } else {
            -diag
        }
    }

    pub(crate) fn pivot_ratio(&self) -> f64 {
        let (lo, hi) = (0..self.n)
            .map(|i| self.lu[i * self.n + i].abs())
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), p| (lo.min(p), hi.max(p)));
        if hi == 0.0 {
            0.0
        } else {
            lo / hi
        }
    }

    pub(crate) fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }
}

/// Matrix of `g^ℓ`. Any integer exponent is accepted and reduced mod `2n`.
pub fn generator_power(ctx: &AlgebraContext, l: i64) -> SigmaMatrix {
    let n = ctx.n();
    let period = 2 * n as i64;
    let l = l.rem_euclid(period) as usize;
    let (shift, sign) = if l >= n { (l - n, -1.0) } else { (l, 1.0) };
    // g^s for 0 <= s < n has block form [[0, I_(n-s)], [-I_s, 0]].
    let mut entries = vec![0.0; n * n];
    for r in 0..n {
        let c = r + shift;
        if c < n {
            entries[r * n + c] = sign;
        } else {
            entries[r * n + (c - n)] = -sign;
        }
    }
    SigmaMatrix { n, entries }
}

/// `ς(u)`; entry `(r, c)` is `u_(c-r)` above the diagonal and `-u_(n+c-r)`
/// below it (0-based).
pub fn sigma(u: &Element) -> SigmaMatrix {
    let n = u.n();
    let c = u.coeffs();
    let mut entries = vec![0.0; n * n];
    for r in 0..n {
        for col in 0..n {
            entries[r * n + col] = if col >= r { c[col - r] } else { -c[n + col - r] };
        }
    }
    SigmaMatrix { n, entries }
}

/// Reads an element back from a negacyclic matrix.
pub fn sigma_inverse(ctx: &AlgebraContext, m: &SigmaMatrix) -> Result<Element> {
    if m.n != ctx.n() {
        return Err(AlgebraError::DimensionMismatch { expected: ctx.n(), found: m.n });
    }
    let scale = m.row(0).iter().fold(1.0f64, |s, x| s.max(x.abs()));
    let deviation = m.negacyclic_deviation();
    if deviation > ctx.tol_eq() * scale {
        return Err(AlgebraError::NotNegacyclic { deviation });
    }
    ctx.element(m.row(0).to_vec())
}

/// Solves `x · ς(u) = e_1`, i.e. `ς(u)^T x^T = e_1`, returning `x`.
/// Fails when the pivot ratio of the factorization is at or below `tol_zero`.
pub(crate) fn solve_left_identity(u: &Element) -> Result<Element> {
    let ctx = *u.context();
    let at = sigma(u).transpose();
    let lu = Lu::factor(&at).ok_or(AlgebraError::ZeroDivisor { ratio: 0.0 })?;
    let ratio = lu.pivot_ratio();
    if ratio <= ctx.tol_zero() {
        return Err(AlgebraError::ZeroDivisor { ratio });
    }
    let mut rhs = vec![0.0; ctx.n()];
    rhs[0] = 1.0;
    let x = lu.solve(&rhs);
    if x.iter().any(|v| !v.is_finite()) {
        return Err(AlgebraError::ZeroDivisor { ratio });
    }
    Ok(Element::from_raw(ctx, x))
}
