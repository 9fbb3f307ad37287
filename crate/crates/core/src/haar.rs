//! The invariant measure `ν_n(E) = ∫_E dμ / |det ς(x)|` on the unit group.
//!
//! Regions are axis-aligned boxes. Estimates are plain Monte Carlo; samples
//! whose spectral ratio falls at or below the context's `tol_zero` are
//! dropped and counted as clipped, since the density is not integrable
//! across the zero-divisor set.

use serde::{Deserialize, Serialize};

use crate::algebra::{multiply_naive, AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::mc::{sample_box, MonteCarlo, RunningStats};
use crate::spectral::SpectralPlan;

/// Estimates with more than this fraction of clipped samples are unreliable.
pub const MAX_RELIABLE_CLIP_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl RegionBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(AlgebraError::DimensionMismatch { expected: lower.len(), found: upper.len() });
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "box side {i} must satisfy lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// Parses `{"lower": [...], "upper": [...]}` and validates it.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RegionBox =
            serde_json::from_str(s).map_err(|e| AlgebraError::InvalidArgument(format!("box JSON: {e}")))?;
        Self::new(raw.lower, raw.upper)
    }

    pub fn n(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(lo, hi)| hi - lo).product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HaarEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub clipped: u64,
}

impl HaarEstimate {
    pub fn clip_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.clipped as f64 / self.samples as f64
        }
    }

    pub fn is_reliable(&self) -> bool {
        self.clip_fraction() <= MAX_RELIABLE_CLIP_FRACTION
    }

    /// `|self - other| ≤ k · sqrt(σ_1² + σ_2²)`.
    pub fn agrees_with(&self, other: &HaarEstimate, k: f64) -> bool {
        let sigma = (self.std_error.powi(2) + other.std_error.powi(2)).sqrt();
        (self.value - other.value).abs() <= k * sigma
    }

    /// Sum of estimates over disjoint regions.
    pub fn combine(parts: &[HaarEstimate]) -> HaarEstimate {
        HaarEstimate {
            value: parts.iter().map(|p| p.value).sum(),
            std_error: parts.iter().map(|p| p.std_error.powi(2)).sum::<f64>().sqrt(),
            samples: parts.iter().map(|p| p.samples).sum(),
            clipped: parts.iter().map(|p| p.clipped).sum(),
        }
    }
}

/// `1 / |det ς(x)|`.
pub fn haar_density(x: &Element) -> Result<f64> {
    let plan = SpectralPlan::new(x.n());
    density_with(&plan, x)
}

fn density_with(plan: &SpectralPlan, x: &Element) -> Result<f64> {
    let s = plan.spectrum(x)?;
    let ratio = s.eigen_ratio();
    if ratio <= x.context().tol_zero() {
        return Err(AlgebraError::ZeroDivisor { ratio });
    }
    let det = s.determinant();
    let abs = det.value().abs();
    if abs > 0.0 && abs.is_finite() {
        Ok(1.0 / abs)
    } else {
        Ok((-det.log_abs()).exp())
    }
}

/// `ν_n(box)` by uniform sampling inside the box.
pub fn haar_measure_mc(ctx: &AlgebraContext, region: &RegionBox, mc: MonteCarlo) -> Result<HaarEstimate> {
    integrate(ctx, region, mc, None)
}

/// `ν_n(a ⊛ box)`: samples `y` uniform in the box are mapped to `a ⊛ y` and
/// weighted by the Jacobian `|det ς(a)|` of that linear map.
pub fn translate_region(a: &Element, region: &RegionBox, mc: MonteCarlo) -> Result<HaarEstimate> {
    let plan = SpectralPlan::new(a.n());
    let ratio = plan.spectrum(a)?.eigen_ratio();
    if ratio <= a.context().tol_zero() {
        return Err(AlgebraError::ZeroDivisor { ratio });
    }
    integrate(a.context(), region, mc, Some(a))
}

fn integrate(
    ctx: &AlgebraContext,
    region: &RegionBox,
    mc: MonteCarlo,
    translate: Option<&Element>,
) -> Result<HaarEstimate> {
    let n = ctx.n();
    if region.n() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: region.n() });
    }
    if let Some(a) = translate {
        ctx.check_same(a.context())?;
    }
    if mc.samples == 0 {
        return Err(AlgebraError::InvalidArgument("samples must be at least 1".into()));
    }
    let plan = SpectralPlan::new(n);
    let jacobian = match translate {
        Some(a) => plan.determinant(a)?.value().abs(),
        None => 1.0,
    };

    let chunks = mc.run_chunks(|rng, len| {
        let mut stats = RunningStats::default();
        let mut clipped = 0u64;
        let mut y = vec![0.0; n];
        for _ in 0..len {
            sample_box(rng, region.lower(), region.upper(), &mut y);
            let point = Element::from_raw(*ctx, y.clone());
            let x = match translate {
                Some(a) => multiply_naive(a, &point).expect("same context"),
                None => point,
            };
            match density_with(&plan, &x) {
                Ok(d) => stats.push(d * jacobian),
                Err(_) => clipped += 1,
            }
        }
        (stats, clipped)
    });

    let mut stats = RunningStats::default();
    let mut clipped = 0;
    for (s, c) in &chunks {
        stats.merge(s);
        clipped += c;
    }
    if stats.count() == 0 {
        return Err(AlgebraError::AllSamplesClipped { samples: mc.samples });
    }
    let volume = region.volume();
    Ok(HaarEstimate {
        value: volume * stats.mean(),
        std_error: volume * stats.std_error(),
        samples: mc.samples,
        clipped,
    })
}
