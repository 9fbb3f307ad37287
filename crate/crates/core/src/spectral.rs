//! Spectral arithmetic.
//!
//! Because `g^n = -I`, the representation `ς(u)` is diagonalized by the odd
//! powers of `ω = exp(iπ/n)`: its eigenvalues are `λ_k = u(ω^(2k+1))` for
//! `k = 0, ..., n-1`, with `u(x) = Σ u_ℓ x^(ℓ-1)`. Twisting the coefficients
//! by `ω^j` turns this into a plain length-`n` DFT, so products, determinants
//! and inverses all cost `O(n log n)`.
//!
//! For real elements the spectrum is conjugate symmetric:
//! `λ_(n-1-k) = conj(λ_k)`. When `n` is odd the middle eigenvalue
//! `λ_((n-1)/2) = u(-1)` is real.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::algebra::{multiply_naive, AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::par::Execution;

/// Below this size eigenvalues are evaluated directly in `O(n^2)` and
/// products use the plain convolution; both beat the FFT there.
pub const DIRECT_EVAL_THRESHOLD: usize = 64;

/// The eigenvalues `λ_0, ..., λ_(n-1)` of `ς(u)`, in order of increasing `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn pointwise_mul(&self, other: &Spectrum) -> Result<Spectrum> {
        if self.n() != other.n() {
            return Err(AlgebraError::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(Spectrum::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect()))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `min|λ| / max|λ|`; zero for the zero element.
    pub fn eigen_ratio(&self) -> f64 {
        let (lo, hi) =
            self.values.iter().map(|z| z.norm()).fold((f64::INFINITY, 0.0f64), |(lo, hi), a| (lo.min(a), hi.max(a)));
        if hi == 0.0 {
            0.0
        } else {
            lo / hi
        }
    }

    /// `det ς(u)` assuming this is the spectrum of a real element.
    pub fn determinant(&self) -> Determinant {
        determinant_of_real_spectrum(self)
    }

    /// Largest `|λ_(n-1-k) - conj(λ_k)|`.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let n = self.n();
        (0..n).fold(0.0, |m, k| m.max((self.values[n - 1 - k] - self.values[k].conj()).norm()))
    }
}

/// `det ς(u)` kept as sign and base-2 scaled magnitude so that large `n`
/// cannot overflow or underflow the accumulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Determinant {
    sign: f64,
    mantissa: f64,
    exponent: i64,
}

impl Determinant {
    const RESCALE: i32 = 512;

    fn accumulate(factors: impl Iterator<Item = f64>) -> Self {
        let big = 2f64.powi(Self::RESCALE);
        let small = 2f64.powi(-Self::RESCALE);
        let mut sign = 1.0;
        let mut mantissa = 1.0f64;
        let mut exponent = 0i64;
        for f in factors {
            if f == 0.0 {
                return Self { sign: 0.0, mantissa: 0.0, exponent: 0 };
            }
            if f < 0.0 {
                sign = -sign;
            }
            mantissa *= f.abs();
            while mantissa > big {
                mantissa *= small;
                exponent += Self::RESCALE as i64;
            }
            while mantissa < small {
                mantissa *= big;
                exponent -= Self::RESCALE as i64;
            }
        }
        Self { sign, mantissa, exponent }
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }

    /// `ln|det|`, `-inf` for a singular element.
    pub fn log_abs(&self) -> f64 {
        if self.sign == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mantissa.ln() + self.exponent as f64 * std::f64::consts::LN_2
        }
    }

    /// True when `|det|` lies outside the finite `f64` range.
    pub fn overflowed(&self) -> bool {
        self.sign != 0.0 && !self.abs_unclamped().is_finite()
    }

    fn abs_unclamped(&self) -> f64 {
        if self.exponent > 2048 {
            return f64::INFINITY;
        }
        if self.exponent < -2048 {
            return 0.0;
        }
        // Split the power so that neither factor overflows on its own.
        let half = self.exponent / 2;
        self.mantissa * 2f64.powi(half as i32) * 2f64.powi((self.exponent - half) as i32)
    }

    /// The determinant as an `f64`, saturating to `±inf` on overflow.
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.abs_unclamped()
        }
    }
}

/// Precomputed twiddles and FFT plans for one dimension.
#[derive(Clone)]
pub struct SpectralPlan {
    n: usize,
    threshold: usize,
    /// `ω^m` for `m = 0, ..., 2n-1`.
    roots: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    backward: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralPlan").field("n", &self.n).field("threshold", &self.threshold).finish()
    }
}

impl SpectralPlan {
    pub fn new(n: usize) -> Self {
        Self::with_threshold(n, DIRECT_EVAL_THRESHOLD)
    }

    /// Sizes strictly below `threshold` use direct evaluation.
    pub fn with_threshold(n: usize, threshold: usize) -> Self {
        let roots = (0..2 * n).map(|m| Complex64::from_polar(1.0, PI * m as f64 / n as f64)).collect();
        let mut planner = FftPlanner::new();
        Self { n, threshold, roots, forward: planner.plan_fft_forward(n), backward: planner.plan_fft_inverse(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn uses_fft(&self) -> bool {
        self.n >= self.threshold
    }

    fn check(&self, found: usize) -> Result<()> {
        if found != self.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, found });
        }
        Ok(())
    }

    pub fn spectrum(&self, u: &Element) -> Result<Spectrum> {
        self.check(u.n())?;
        let n = self.n;
        let c = u.coeffs();
        if !self.uses_fft() {
            let values = (0..n)
                .map(|k| {
                    let step = 2 * k + 1;
                    c.iter().enumerate().map(|(j, &cj)| self.roots[(step * j) % (2 * n)] * cj).sum()
                })
                .collect();
            return Ok(Spectrum::new(values));
        }
        // λ_k = Σ_j (u_j ω^j) e^{+2πi jk/n}: twist, then an unnormalized inverse DFT.
        let mut buf: Vec<Complex64> = c.iter().zip(&self.roots).map(|(&cj, w)| w * cj).collect();
        self.backward.process(&mut buf);
        Ok(Spectrum::new(buf))
    }

    pub fn inverse_spectrum(&self, ctx: &AlgebraContext, s: &Spectrum) -> Result<Element> {
        self.check(s.n())?;
        if ctx.n() != s.n() {
            return Err(AlgebraError::DimensionMismatch { expected: ctx.n(), found: s.n() });
        }
        let n = self.n;
        let inv_n = 1.0 / n as f64;
        let raw: Vec<Complex64> = if !self.uses_fft() {
            (0..n)
                .map(|j| {
                    s.values
                        .iter()
                        .enumerate()
                        .map(|(k, lam)| lam * self.roots[(2 * n - ((2 * k + 1) * j) % (2 * n)) % (2 * n)])
                        .sum::<Complex64>()
                        * inv_n
                })
                .collect()
        } else {
            let mut buf = s.values.clone();
            self.forward.process(&mut buf);
            buf.iter().enumerate().map(|(j, z)| z * self.roots[(2 * n - j) % (2 * n)] * inv_n).collect()
        };
        let residue = raw.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
        if residue > ctx.tol_eq() * s.max_abs() {
            return Err(AlgebraError::NotConjugateSymmetric { residue });
        }
        ctx.element(raw.into_iter().map(|z| z.re).collect())
    }

    /// Below the FFT threshold the spectral route costs `O(n^2)` as well, so
    /// the exact convolution is used instead.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        u.context().check_same(v.context())?;
        self.check(u.n())?;
        if !self.uses_fft() {
            return multiply_naive(u, v);
        }
        let product = self.spectrum(u)?.pointwise_mul(&self.spectrum(v)?)?;
        self.inverse_spectrum(u.context(), &product)
    }

    /// Products of many pairs; output order follows input order.
    pub fn multiply_many(&self, pairs: &[(Element, Element)], exec: Execution) -> Result<Vec<Element>> {
        exec.map_slice(pairs, |(u, v)| self.multiply(u, v)).into_iter().collect()
    }

    pub fn determinant(&self, u: &Element) -> Result<Determinant> {
        let s = self.spectrum(u)?;
        Ok(determinant_of_real_spectrum(&s))
    }

    pub fn inverse(&self, u: &Element) -> Result<Element> {
        let s = self.spectrum(u)?;
        let ratio = s.eigen_ratio();
        if ratio <= u.context().tol_zero() {
            return Err(AlgebraError::ZeroDivisor { ratio });
        }
        let inv = Spectrum::new(s.values.iter().map(|z| z.inv()).collect());
        self.inverse_spectrum(u.context(), &inv)
    }
}

/// Determinant from the spectrum of a real element: the product of
/// `|λ_k|^2` over conjugate pairs, times the real middle eigenvalue when `n`
/// is odd.
fn determinant_of_real_spectrum(s: &Spectrum) -> Determinant {
    let n = s.n();
    let pairs = (0..n / 2).map(|k| s.values[k].norm_sqr());
    let middle = (n % 2 == 1).then(|| s.values[n / 2].re);
    Determinant::accumulate(pairs.chain(middle))
}

pub fn spectrum(u: &Element) -> Spectrum {
    SpectralPlan::new(u.n()).spectrum(u).expect("plan built for u.n()")
}

pub fn inverse_spectrum(ctx: &AlgebraContext, s: &Spectrum) -> Result<Element> {
    if s.n() != ctx.n() {
        return Err(AlgebraError::DimensionMismatch { expected: ctx.n(), found: s.n() });
    }
    SpectralPlan::new(s.n()).inverse_spectrum(ctx, s)
}

pub fn multiply_fast(u: &Element, v: &Element) -> Result<Element> {
    u.context().check_same(v.context())?;
    SpectralPlan::new(u.n()).multiply(u, v)
}

pub fn det_via_spectrum(u: &Element) -> Determinant {
    determinant_of_real_spectrum(&spectrum(u))
}

pub fn inverse_via_spectrum(u: &Element) -> Result<Element> {
    SpectralPlan::new(u.n()).inverse(u)
}
