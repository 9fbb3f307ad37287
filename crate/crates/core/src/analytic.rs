//! Finite-difference probes for maps `f : R_n → R_n`.
//!
//! Writing `w = e_2`, a differentiable `f` satisfies
//! `f'(a) = w^(1-j) ⊛ ∂f/∂x_j (a)` for every axis `j`, so the axis
//! derivatives must all agree. For even `n = 2k` this yields the paired
//! Cauchy–Riemann system
//!
//! ```text
//! ∂f_m/∂x_i     =  ∂f_(m+k)/∂x_(i+k)
//! ∂f_(m+k)/∂x_i = -∂f_m/∂x_(i+k)        1 ≤ m, i ≤ k
//! ```
//!
//! and every component is harmonic.

use std::fmt;
use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{multiply_naive, poly_eval, AlgebraContext, Element, ElementJson};
use crate::error::{AlgebraError, Result};
use crate::mc::{sample_unit_sphere, MonteCarlo, RunningStats};
use crate::spectral::{inverse_via_spectrum, SpectralPlan};

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Number of random increments used by the directional difference probe.
pub const DIRECTIONAL_PROBES: usize = 10;

/// Increments whose spectral ratio is below this are redrawn by the
/// directional probe, since `δ^{-1}` would amplify rounding noise.
const MIN_PROBE_RATIO: f64 = 1e-2;

type FieldFn = dyn Fn(&Element) -> Result<Element> + Send + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Unknown,
    C2,
}

/// A map `R_n → R_n` plus the finite-difference step used to probe it.
#[derive(Clone)]
pub struct VectorField {
    name: String,
    eval: Arc<FieldFn>,
    smoothness: Smoothness,
    fd_step: f64,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField")
            .field("name", &self.name)
            .field("smoothness", &self.smoothness)
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl VectorField {
    pub fn new<F>(name: impl Into<String>, smoothness: Smoothness, f: F) -> Self
    where
        F: Fn(&Element) -> Result<Element> + Send + Sync + 'static,
    {
        Self { name: name.into(), eval: Arc::new(f), smoothness, fd_step: DEFAULT_FD_STEP }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.fd_step = h;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn identity() -> Self {
        Self::new("identity", Smoothness::C2, |x| Ok(x.clone()))
    }

    pub fn square() -> Self {
        Self::new("square", Smoothness::C2, |x| multiply_naive(x, x))
    }

    pub fn cube() -> Self {
        Self::new("cube", Smoothness::C2, |x| multiply_naive(&multiply_naive(x, x)?, x))
    }

    pub fn constant(c: Element) -> Self {
        Self::new("constant", Smoothness::C2, move |x| {
            x.context().check_same(c.context())?;
            Ok(c.clone())
        })
    }

    /// `[x_1, x_2] ↦ [x_1, -x_2]` on `R_2`; not differentiable in the algebra.
    pub fn conjugate2d() -> Self {
        Self::new("conjugate2d", Smoothness::Unknown, |x| {
            if x.n() != 2 {
                return Err(AlgebraError::EvaluationFailure(format!(
                    "conjugate2d is defined on R_2 only, got n = {}",
                    x.n()
                )));
            }
            x.context().element(vec![x.coeffs()[0], -x.coeffs()[1]])
        })
    }

    /// `a_m x^m + ... + a_0` with coefficients highest degree first.
    pub fn polynomial(coeffs: Vec<Element>) -> Self {
        Self::new("poly", Smoothness::C2, move |x| poly_eval(&coeffs, x))
    }

    /// Resolves a catalogue name: `identity`, `square`, `cube`,
    /// `conjugate2d`, or `poly:<json>` where `<json>` is a list of
    /// coefficient arrays, highest degree first.
    pub fn from_name(name: &str, ctx: &AlgebraContext) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity()),
            "square" => Ok(Self::square()),
            "cube" => Ok(Self::cube()),
            "conjugate2d" if ctx.n() == 2 => Ok(Self::conjugate2d()),
            "conjugate2d" => Err(AlgebraError::InvalidArgument("conjugate2d requires n = 2".into())),
            _ => {
                let Some(json) = name.strip_prefix("poly:") else {
                    return Err(AlgebraError::InvalidArgument(format!("unknown field {name:?}")));
                };
                let rows: Vec<Vec<f64>> = serde_json::from_str(json)
                    .map_err(|e| AlgebraError::InvalidArgument(format!("poly coefficients: {e}")))?;
                if rows.is_empty() {
                    return Err(AlgebraError::InvalidArgument("poly needs at least one coefficient".into()));
                }
                let coeffs = rows
                    .into_iter()
                    .map(|c| ElementJson { n: c.len(), coeffs: c }.into_element(ctx))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::polynomial(coeffs).renamed(name))
            }
        }
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn eval(&self, x: &Element) -> Result<Element> {
        let y = (self.eval)(x).map_err(|e| match e {
            AlgebraError::EvaluationFailure(_) => e,
            other => AlgebraError::EvaluationFailure(other.to_string()),
        })?;
        if y.n() != x.n() {
            return Err(AlgebraError::EvaluationFailure(format!(
                "field {} changed dimension {} -> {}",
                self.name,
                x.n(),
                y.n()
            )));
        }
        if !y.is_finite() {
            return Err(AlgebraError::EvaluationFailure(format!("field {} produced a non-finite value", self.name)));
        }
        Ok(y)
    }

    fn eval_at(&self, ctx: &AlgebraContext, coeffs: Vec<f64>) -> Result<Element> {
        let x = ctx.element(coeffs).map_err(|e| AlgebraError::EvaluationFailure(format!("probe point: {e}")))?;
        self.eval(&x)
    }
}

fn check_axis(a: &Element, j: usize) -> Result<()> {
    if j == 0 || j > a.n() {
        return Err(AlgebraError::InvalidArgument(format!("axis {j} outside 1..={}", a.n())));
    }
    Ok(())
}

/// Central difference `∂f/∂x_j (a)`, 1-based axis.
pub fn partial(f: &VectorField, a: &Element, j: usize) -> Result<Element> {
    check_axis(a, j)?;
    let ctx = *a.context();
    let h = f.fd_step;
    let mut plus = a.coeffs().to_vec();
    let mut minus = a.coeffs().to_vec();
    plus[j - 1] += h;
    minus[j - 1] -= h;
    // Divide by the step actually taken after rounding.
    let span = plus[j - 1] - minus[j - 1];
    let fp = f.eval_at(&ctx, plus)?;
    let fm = f.eval_at(&ctx, minus)?;
    Ok(fp.sub(&fm)?.scale(1.0 / span))
}

/// `w^(1-j)` for `w = e_2`: `e_1` when `j = 1`, otherwise `-e_(n-j+2)`.
fn inverse_w_power(ctx: &AlgebraContext, j: usize) -> Element {
    if j == 1 {
        ctx.one()
    } else {
        ctx.basis(ctx.n() - j + 2).expect("index in range").negate()
    }
}

/// `w^(1-j) ⊛ ∂f/∂x_j (a)`, the derivative read off along axis `j`.
pub fn derivative_via_axis(f: &VectorField, a: &Element, j: usize) -> Result<Element> {
    let d = partial(f, a, j)?;
    multiply_naive(&inverse_w_power(a.context(), j), &d)
}

fn axis_derivatives(f: &VectorField, a: &Element) -> Result<Vec<Element>> {
    (1..=a.n()).map(|j| derivative_via_axis(f, a, j)).collect()
}

/// Largest max-norm disagreement between the axis derivatives.
pub fn differentiability_residual(f: &VectorField, a: &Element) -> Result<f64> {
    let ds = axis_derivatives(f, a)?;
    let mut worst: f64 = 0.0;
    for (i, di) in ds.iter().enumerate() {
        for dj in &ds[i + 1..] {
            worst = worst.max(di.max_abs_diff(dj)?);
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferentiabilityReport {
    pub axis_residual: f64,
    /// Largest max-norm gap between `(f(a+δ) - f(a-δ)) ⊛ (2δ)^{-1}` and the
    /// axis-1 derivative over random unit-group increments `δ` of length `h`.
    pub directional_residual: f64,
}

pub fn differentiability_probe(f: &VectorField, a: &Element, seed: u64) -> Result<DifferentiabilityReport> {
    let axis_residual = differentiability_residual(f, a)?;
    let reference = derivative_via_axis(f, a, 1)?;
    let ctx = *a.context();
    let plan = SpectralPlan::new(ctx.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dir = vec![0.0; ctx.n()];
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    while accepted < DIRECTIONAL_PROBES {
        sample_unit_sphere(&mut rng, &mut dir);
        let delta = ctx.element(dir.iter().map(|d| d * f.fd_step).collect())?;
        if plan.spectrum(&delta)?.eigen_ratio() < MIN_PROBE_RATIO {
            continue;
        }
        accepted += 1;
        let fp = f.eval(&a.add(&delta)?)?;
        let fm = f.eval(&a.sub(&delta)?)?;
        let quotient = multiply_naive(&fp.sub(&fm)?, &inverse_via_spectrum(&delta.scale(2.0))?)?;
        worst = worst.max(quotient.max_abs_diff(&reference)?);
    }
    Ok(DifferentiabilityReport { axis_residual, directional_residual: worst })
}

/// `J[m][i] = ∂f_m/∂x_i (a)`, 0-based.
pub fn jacobian(f: &VectorField, a: &Element) -> Result<Vec<Vec<f64>>> {
    let n = a.n();
    let cols = (1..=n).map(|i| partial(f, a, i)).collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|m| cols.iter().map(|c| c.coeffs()[m]).collect()).collect())
}

/// Largest violation of the paired Cauchy–Riemann equations at `a`.
pub fn cauchy_riemann_residual(f: &VectorField, a: &Element) -> Result<f64> {
    let n = a.n();
    if n % 2 == 1 {
        return Err(AlgebraError::OddDimension(n));
    }
    let k = n / 2;
    let jac = jacobian(f, a)?;
    let mut worst: f64 = 0.0;
    for m in 0..k {
        for i in 0..k {
            worst = worst.max((jac[m][i] - jac[m + k][i + k]).abs());
            worst = worst.max((jac[m + k][i] + jac[m][i + k]).abs());
        }
    }
    Ok(worst)
}

/// Per-component Laplacian by central second differences with step
/// `sqrt(h) · max(1, |a|_∞)`.
pub fn laplacian(f: &VectorField, a: &Element) -> Result<Vec<f64>> {
    let ctx = *a.context();
    let n = a.n();
    let step = f.fd_step.sqrt() * a.max_abs().max(1.0);
    let f0 = f.eval(a)?;
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut plus = a.coeffs().to_vec();
        let mut minus = a.coeffs().to_vec();
        plus[i] += step;
        minus[i] -= step;
        let hp = plus[i] - a.coeffs()[i];
        let hm = a.coeffs()[i] - minus[i];
        let fp = f.eval_at(&ctx, plus)?;
        let fm = f.eval_at(&ctx, minus)?;
        for (m, o) in out.iter_mut().enumerate() {
            let (p, c, q) = (fp.coeffs()[m], f0.coeffs()[m], fm.coeffs()[m]);
            *o += 2.0 * ((p - c) / hp - (c - q) / hm) / (hp + hm);
        }
    }
    Ok(out)
}

/// Exact Laplacian of component `m` (1-based) of `x ↦ x^2` on `R_n`, odd `n`.
///
/// `f_m = Σ_(i+j-1=m) x_i x_j - Σ_(i+j-1=m+n) x_i x_j` is a quadratic form, so
/// its Laplacian is twice the trace of its coefficient matrix.
pub fn square_laplacian_exact(n: usize, m: usize) -> Result<i64> {
    if n.is_multiple_of(2) {
        return Err(AlgebraError::EvenDimension(n));
    }
    if n < 3 {
        return Err(AlgebraError::InvalidDimension(n));
    }
    if m == 0 || m > n {
        return Err(AlgebraError::InvalidArgument(format!("component {m} outside 1..={n}")));
    }
    let mut trace = 0i64;
    for l in 1..=n {
        // Diagonal term x_l^2 has i = j = l.
        if 2 * l - 1 == m {
            trace += 1;
        }
        if 2 * l - 1 == m + n {
            trace -= 1;
        }
    }
    Ok(2 * trace)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereMean {
    pub mean: Vec<f64>,
    /// Per-component standard error of the mean.
    pub std_error: Vec<f64>,
    pub points: u64,
}

impl SphereMean {
    /// `max_m |mean_m - target_m| / (k σ_m)`; at most 1 means agreement within
    /// `k σ` on every component. A zero-variance component must match exactly.
    pub fn worst_sigma_ratio(&self, target: &Element, k: f64) -> f64 {
        self.mean
            .iter()
            .zip(&self.std_error)
            .zip(target.coeffs())
            .map(|((m, s), t)| {
                let d = (m - t).abs();
                if d == 0.0 {
                    0.0
                } else if *s == 0.0 {
                    f64::INFINITY
                } else {
                    d / (k * s)
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Average of `f` over uniform points of the sphere `|x - a| = r`.
pub fn sphere_mean(f: &VectorField, a: &Element, r: f64, mc: MonteCarlo) -> Result<SphereMean> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(AlgebraError::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    if mc.samples == 0 {
        return Err(AlgebraError::InvalidArgument("points must be at least 1".into()));
    }
    let ctx = *a.context();
    let n = ctx.n();
    let chunks = mc.run_chunks(|rng, len| -> Result<Vec<RunningStats>> {
        let mut stats = vec![RunningStats::default(); n];
        let mut dir = vec![0.0; n];
        for _ in 0..len {
            sample_unit_sphere(rng, &mut dir);
            let x = a.coeffs().iter().zip(&dir).map(|(c, d)| c + r * d).collect();
            let y = f.eval_at(&ctx, x)?;
            for (s, v) in stats.iter_mut().zip(y.coeffs()) {
                s.push(*v);
            }
        }
        Ok(stats)
    });
    let mut total = vec![RunningStats::default(); n];
    for chunk in chunks {
        for (t, s) in total.iter_mut().zip(chunk?) {
            t.merge(&s);
        }
    }
    Ok(SphereMean {
        mean: total.iter().map(|s| s.mean()).collect(),
        std_error: total.iter().map(|s| s.std_error()).collect(),
        points: mc.samples,
    })
}

/// Largest sampled Euclidean length `|f(x)|` over each origin-centred sphere.
/// The same directions are reused for every radius.
pub fn liouville_probe(f: &VectorField, ctx: &AlgebraContext, radii: &[f64], mc: MonteCarlo) -> Result<Vec<f64>> {
    let n = ctx.n();
    radii
        .iter()
        .map(|&r| {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(AlgebraError::InvalidArgument(format!("radius must be non-negative, got {r}")));
            }
            let maxima = mc.run_chunks(|rng, len| -> Result<f64> {
                let mut dir = vec![0.0; n];
                let mut best: f64 = 0.0;
                for _ in 0..len {
                    sample_unit_sphere(rng, &mut dir);
                    let y = f.eval_at(ctx, dir.iter().map(|d| r * d).collect())?;
                    best = best.max(y.euclidean_length());
                }
                Ok(best)
            });
            maxima.into_iter().try_fold(0.0f64, |m, x| Ok(m.max(x?)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> AlgebraContext {
        AlgebraContext::new(n).unwrap()
    }

    #[test]
    fn identity_derivative_is_one_on_every_axis() {
        let c = ctx(5);
        let a = c.element(vec![0.3, -1.0, 2.0, 0.1, 0.7]).unwrap();
        for j in 1..=5 {
            let d = derivative_via_axis(&VectorField::identity(), &a, j).unwrap();
            assert!(d.max_abs_diff(&c.one()).unwrap() < 1e-9, "j={j}");
        }
        assert!(derivative_via_axis(&VectorField::identity(), &a, 0).is_err());
        assert!(derivative_via_axis(&VectorField::identity(), &a, 6).is_err());
    }

    #[test]
    fn square_derivative_is_twice_the_point() {
        let c = ctx(3);
        let a = c.element(vec![0.4, -0.8, 1.1]).unwrap();
        let d = derivative_via_axis(&VectorField::square(), &a, 1).unwrap();
        assert!(d.max_abs_diff(&a.scale(2.0)).unwrap() < 1e-9);
        let c4 = ctx(4);
        let a4 = c4.element(vec![0.4, -0.8, 1.1, 0.2]).unwrap();
        let d1 = derivative_via_axis(&VectorField::square(), &a4, 1).unwrap();
        let d2 = derivative_via_axis(&VectorField::square(), &a4, 2).unwrap();
        assert!(d1.max_abs_diff(&d2).unwrap() < 1e-9);
    }

    #[test]
    fn residuals_separate_analytic_from_conjugation() {
        let c2 = ctx(2);
        let a = c2.element(vec![0.7, -0.4]).unwrap();
        let conj = VectorField::conjugate2d();
        assert!((differentiability_residual(&conj, &a).unwrap() - 2.0).abs() < 1e-8);
        assert!((cauchy_riemann_residual(&conj, &a).unwrap() - 2.0).abs() < 1e-8);
        assert!(differentiability_residual(&VectorField::identity(), &a).unwrap() <= 1e-9);

        let c4 = ctx(4);
        let b = c4.element(vec![0.2, 0.5, -0.3, 0.9]).unwrap();
        assert!(cauchy_riemann_residual(&VectorField::identity(), &b).unwrap() < 1e-10);
        assert!(cauchy_riemann_residual(&VectorField::square(), &b).unwrap() < 1e-8);
        assert!(differentiability_residual(&VectorField::cube(), &b).unwrap() < 1e-8);
        assert!(matches!(
            cauchy_riemann_residual(&VectorField::square(), &ctx(3).one()),
            Err(AlgebraError::OddDimension(3))
        ));
    }

    #[test]
    fn directional_probe_tracks_axis_probe() {
        let c4 = ctx(4);
        let b = c4.element(vec![0.2, 0.5, -0.3, 0.9]).unwrap();
        let rep = differentiability_probe(&VectorField::cube(), &b, 7).unwrap();
        assert!(rep.axis_residual < 1e-8);
        assert!(rep.directional_residual < 1e-7, "{rep:?}");
        let c2 = ctx(2);
        let rep =
            differentiability_probe(&VectorField::conjugate2d(), &c2.element(vec![1.0, 0.5]).unwrap(), 7).unwrap();
        assert!(rep.directional_residual > 0.1);
    }

    #[test]
    fn laplacians() {
        let c4 = ctx(4);
        let a = c4.element(vec![0.2, 0.5, -0.3, 0.9]).unwrap();
        assert!(laplacian(&VectorField::identity(), &a).unwrap().iter().all(|v| v.abs() < 1e-8));
        assert!(laplacian(&VectorField::square(), &a).unwrap().iter().all(|v| v.abs() < 1e-6));
        let c3 = ctx(3);
        let a3 = c3.element(vec![0.2, 0.5, -0.3]).unwrap();
        let lap = laplacian(&VectorField::square(), &a3).unwrap();
        assert!((lap[0] - 2.0).abs() < 1e-6, "{lap:?}");
    }

    #[test]
    fn exact_square_laplacian() {
        assert_eq!(square_laplacian_exact(3, 1).unwrap(), 2);
        assert_eq!(square_laplacian_exact(3, 2).unwrap(), -2);
        assert_eq!(square_laplacian_exact(3, 3).unwrap(), 2);
        assert!(matches!(square_laplacian_exact(4, 1), Err(AlgebraError::EvenDimension(4))));
        assert!(square_laplacian_exact(3, 0).is_err());
        assert!(square_laplacian_exact(3, 4).is_err());
    }

    #[test]
    fn sphere_means() {
        let c4 = ctx(4);
        let k = c4.element(vec![1.5, -2.0, 0.25, 3.0]).unwrap();
        let m = sphere_mean(&VectorField::constant(k.clone()), &c4.zero(), 0.7, MonteCarlo::new(5000, 1)).unwrap();
        assert_eq!(m.mean, k.coeffs());
        assert!(m.std_error.iter().all(|s| *s == 0.0));

        let m = sphere_mean(&VectorField::identity(), &c4.one(), 1.3, MonteCarlo::new(20_000, 2)).unwrap();
        assert!(m.worst_sigma_ratio(&c4.one(), 3.0) <= 1.0, "{m:?}");

        let m = sphere_mean(&VectorField::square(), &c4.zero(), 1.0, MonteCarlo::new(20_000, 3)).unwrap();
        assert!(m.worst_sigma_ratio(&c4.zero(), 3.0) <= 1.0, "{m:?}");
        assert!(sphere_mean(&VectorField::square(), &c4.zero(), 0.0, MonteCarlo::new(10, 3)).is_err());
    }

    #[test]
    fn liouville_growth() {
        let c4 = ctx(4);
        let mc = MonteCarlo::new(2000, 5);
        let flat = liouville_probe(&VectorField::constant(c4.scalar(2.0)), &c4, &[1.0, 2.0, 4.0], mc).unwrap();
        assert_eq!(flat, vec![2.0, 2.0, 2.0]);
        let lin = liouville_probe(&VectorField::identity(), &c4, &[1.0, 2.0, 4.0], mc).unwrap();
        for (got, want) in lin.iter().zip([1.0, 2.0, 4.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let sq = liouville_probe(&VectorField::square(), &c4, &[1.0, 2.0], mc).unwrap();
        assert!((sq[1] / sq[0] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn catalogue() {
        let c4 = ctx(4);
        for name in ["identity", "square", "cube"] {
            assert_eq!(VectorField::from_name(name, &c4).unwrap().name(), name);
        }
        assert!(VectorField::from_name("conjugate2d", &c4).is_err());
        assert!(VectorField::from_name("conjugate2d", &ctx(2)).is_ok());
        assert!(VectorField::from_name("bogus", &c4).is_err());
        let p = VectorField::from_name("poly:[[1,0,0,0],[0,1,0,0],[0,0,0,0]]", &c4).unwrap();
        let x = c4.element(vec![0.5, 0.1, -0.2, 0.3]).unwrap();
        let expected =
            multiply_naive(&x, &x).unwrap().add(&multiply_naive(&c4.basis(2).unwrap(), &x).unwrap()).unwrap();
        assert!(p.eval(&x).unwrap().max_abs_diff(&expected).unwrap() < 1e-15);
        assert!(VectorField::from_name("poly:[[1,0]]", &c4).is_err());
        assert!(VectorField::from_name("poly:[]", &c4).is_err());
    }

    #[test]
    fn evaluation_failures_are_reported() {
        let c2 = ctx(2);
        let blowup = VectorField::new("blowup", Smoothness::Unknown, |x| Ok(x.context().scalar(1.0 / x.coeffs()[0])));
        assert!(matches!(blowup.eval(&c2.zero()), Err(AlgebraError::EvaluationFailure(_))));
        let shrink = VectorField::new("shrink", Smoothness::Unknown, |_| Ok(ctx(3).one()));
        assert!(matches!(shrink.eval(&c2.one()), Err(AlgebraError::EvaluationFailure(_))));
        assert!(matches!(VectorField::conjugate2d().eval(&ctx(3).one()), Err(AlgebraError::EvaluationFailure(_))));
    }
}
