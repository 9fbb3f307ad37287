//! Zero divisors, the unit group `G_n`, inverses, and the `R_4` closed forms.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::mc::{sample_unit_ball, MonteCarlo};
use crate::sigma;
use crate::spectral::{SpectralPlan, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroDivisorReport {
    pub det_value: f64,
    /// `min|λ_k| / max|λ_k|` over the spectrum of `ς(u)`.
    pub min_eigen_ratio: f64,
    pub is_zero_divisor: bool,
}

pub fn is_zero_divisor(u: &Element) -> ZeroDivisorReport {
    let plan = SpectralPlan::new(u.n());
    zero_divisor_report(&plan, u)
}

pub(crate) fn zero_divisor_report(plan: &SpectralPlan, u: &Element) -> ZeroDivisorReport {
    let s = plan.spectrum(u).expect("plan matches element");
    let det = s.determinant();
    let ratio = s.eigen_ratio();
    ZeroDivisorReport {
        det_value: det.value(),
        min_eigen_ratio: ratio,
        is_zero_divisor: ratio <= u.context().tol_zero(),
    }
}

/// Inverse by solving `x · ς(u) = e_1` directly. The matrix inverse exists in
/// the span of `I, A, ..., A^(n-1)`, so its first row is the algebra inverse.
pub fn inverse_cayley_hamilton(u: &Element) -> Result<Element> {
    sigma::solve_left_identity(u)
}

/// `(u_1^2 - u_3^2 + 2 u_2 u_4)^2 + (u_4^2 - u_2^2 + 2 u_1 u_3)^2 = det ς(u)` in `R_4`.
pub fn r4_det_closed_form(u: &Element) -> Result<f64> {
    if u.n() != 4 {
        return Err(AlgebraError::DimensionMismatch { expected: 4, found: u.n() });
    }
    let [u1, u2, u3, u4] = [u.coeffs()[0], u.coeffs()[1], u.coeffs()[2], u.coeffs()[3]];
    let a = u1 * u1 - u3 * u3 + 2.0 * u2 * u4;
    let b = u4 * u4 - u2 * u2 + 2.0 * u1 * u3;
    Ok(a * a + b * b)
}

/// The two planes making up the zero-divisor set of `R_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R4Plane {
    I,
    II,
}

impl std::str::FromStr for R4Plane {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(R4Plane::I),
            "II" | "ii" | "2" => Ok(R4Plane::II),
            other => Err(AlgebraError::InvalidArgument(format!("unknown plane {other:?}, expected I or II"))),
        }
    }
}

/// A point `[s, t, -s ± √2 t, ∓√2 s + t]` on one of the two zero-divisor
/// planes of `R_4` (upper signs for plane I).
///
/// Plane I is where `λ_1 = u(ω^3)` and its conjugate vanish, plane II where
/// `λ_0 = u(ω)` does. Solving `u(ω) = 0` for `u_3, u_4` gives
/// `u_3 = -s - √2 t`, `u_4 = √2 s + t`.
pub fn r4_zero_divisor_point(s: f64, t: f64, plane: R4Plane) -> Element {
    let ctx = AlgebraContext::new(4).expect("n = 4 is valid");
    let root2 = match plane {
        R4Plane::I => SQRT_2,
        R4Plane::II => -SQRT_2,
    };
    ctx.element(vec![s, t, -s + root2 * t, -root2 * s + t]).expect("finite inputs give finite coefficients")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub fraction: f64,
    /// Binomial standard error `sqrt(p(1-p)/N)` at the observed fraction.
    pub std_error: f64,
    pub hits: u64,
    pub samples: u64,
}

/// Fraction of uniform unit-ball samples with `|det ς(x)| < eps`.
pub fn estimate_zero_divisor_measure(ctx: &AlgebraContext, eps: f64, mc: MonteCarlo) -> Result<MeasureEstimate> {
    if mc.samples == 0 {
        return Err(AlgebraError::InvalidArgument("samples must be at least 1".into()));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(AlgebraError::InvalidArgument(format!("eps must be non-negative, got {eps}")));
    }
    let n = ctx.n();
    let plan = SpectralPlan::new(n);
    let hits: u64 = mc
        .run_chunks(|rng, len| {
            let mut buf = vec![0.0; n];
            let mut hits = 0u64;
            for _ in 0..len {
                sample_unit_ball(rng, &mut buf);
                let x = Element::from_raw(*ctx, buf.clone());
                let det = plan.determinant(&x).expect("plan matches");
                if det.value().abs() < eps {
                    hits += 1;
                }
            }
            hits
        })
        .into_iter()
        .sum();
    let p = hits as f64 / mc.samples as f64;
    Ok(MeasureEstimate {
        fraction: p,
        std_error: (p * (1.0 - p) / mc.samples as f64).sqrt(),
        hits,
        samples: mc.samples,
    })
}

/// Checks that every `t·u` is a zero divisor; `u` itself must be one.
pub fn star_shape_check(u: &Element, ts: &[f64]) -> Result<bool> {
    let report = is_zero_divisor(u);
    if !report.is_zero_divisor {
        return Err(AlgebraError::NotAZeroDivisor { ratio: report.min_eigen_ratio });
    }
    Ok(ts.iter().all(|&t| is_zero_divisor(&u.scale(t)).is_zero_divisor))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitSign {
    Plus,
    Minus,
}

impl UnitSign {
    pub fn value(self) -> f64 {
        match self {
            UnitSign::Plus => 1.0,
            UnitSign::Minus => -1.0,
        }
    }
}

impl std::str::FromStr for UnitSign {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(UnitSign::Plus),
            "-1" | "-" => Ok(UnitSign::Minus),
            other => Err(AlgebraError::InvalidArgument(format!("sign must be +1 or -1, got {other:?}"))),
        }
    }
}

/// Largest dimension for which all square roots are enumerated
/// (`2^ceil(n/2)` candidates).
pub const MAX_ROOT_ENUMERATION_DIM: usize = 24;

/// All `v` with `v^2 = ±e_1`.
///
/// `v^2 = c e_1` forces every eigenvalue to satisfy `λ_k^2 = c`. A real `v`
/// has `λ_(n-1-k) = conj(λ_k)`, so each conjugate pair contributes one free
/// choice between the two roots of `c`, and the real middle eigenvalue for
/// odd `n` must be `±1` (no solution at all when `c = -1`).
pub fn square_roots_of_pm1(ctx: &AlgebraContext, sign: UnitSign) -> Result<Vec<Element>> {
    let n = ctx.n();
    if n > MAX_ROOT_ENUMERATION_DIM {
        return Err(AlgebraError::InvalidArgument(format!(
            "root enumeration limited to n <= {MAX_ROOT_ENUMERATION_DIM}"
        )));
    }
    let roots: [Complex64; 2] = match sign {
        UnitSign::Plus => [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        UnitSign::Minus => [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
    };
    let pairs = n / 2;
    let middle_choices: &[f64] = match (n % 2, sign) {
        (0, _) => &[0.0],
        (_, UnitSign::Plus) => &[1.0, -1.0],
        (_, UnitSign::Minus) => &[],
    };
    let plan = SpectralPlan::new(n);
    let mut out = Vec::new();
    for &mid in middle_choices {
        for mask in 0u64..(1u64 << pairs) {
            let mut values = vec![Complex64::new(0.0, 0.0); n];
            for k in 0..pairs {
                let lam = roots[((mask >> k) & 1) as usize];
                values[k] = lam;
                values[n - 1 - k] = lam.conj();
            }
            if n % 2 == 1 {
                values[n / 2] = Complex64::new(mid, 0.0);
            }
            let v = plan.inverse_spectrum(ctx, &Spectrum::new(values))?;
            out.push(snap_to_exact(v));
        }
    }
    Ok(out)
}

/// `v^2 = ±e_1` in `R_4`.
pub fn square_roots_of_pm1_r4(ctx: &AlgebraContext, sign: UnitSign) -> Result<Vec<Element>> {
    if ctx.n() != 4 {
        return Err(AlgebraError::DimensionMismatch { expected: 4, found: ctx.n() });
    }
    square_roots_of_pm1(ctx, sign)
}

/// The four polynomial residuals of `(a_1 e_1 + ... + a_4 e_4)^2 = c e_1`.
pub fn r4_square_system_residual(v: &Element, sign: UnitSign) -> Result<[f64; 4]> {
    if v.n() != 4 {
        return Err(AlgebraError::DimensionMismatch { expected: 4, found: v.n() });
    }
    let [a1, a2, a3, a4] = [v.coeffs()[0], v.coeffs()[1], v.coeffs()[2], v.coeffs()[3]];
    Ok([
        a1 * a1 - 2.0 * a2 * a4 - a3 * a3 - sign.value(),
        2.0 * a1 * a2 - 2.0 * a3 * a4,
        2.0 * a1 * a3 + a2 * a2 - a4 * a4,
        2.0 * a1 * a4 + 2.0 * a2 * a3,
    ])
}

/// Rounds coefficients that are within a few ulps of a value in
/// `{0, ±1, ±1/√2, ±1/2}` to it; the enumerated roots have such entries for
/// small `n`.
fn snap_to_exact(v: Element) -> Element {
    const TARGETS: [f64; 4] = [0.0, 1.0, FRAC_1_SQRT_2, 0.5];
    let ctx = *v.context();
    let coeffs = v
        .into_coeffs()
        .into_iter()
        .map(|c| TARGETS.iter().find(|&&t| (c.abs() - t).abs() <= 8.0 * f64::EPSILON).map_or(c, |&t| t.copysign(c)))
        .map(|c| if c == 0.0 { 0.0 } else { c })
        .collect();
    Element::from_raw(ctx, coeffs)
}
