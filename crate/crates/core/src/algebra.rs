//! Elements of the algebra `R_n` and their exact (naive) arithmetic.
//!
//! An element is a coefficient vector `[u_1, ..., u_n]` over the basis
//! `e_1, ..., e_n`, where `e_ℓ` corresponds to the monomial `x^(ℓ-1)` in
//! `R[x] / (x^n + 1)`. The product is therefore a negacyclic convolution and
//! `e_1` is the multiplicative identity.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::sigma::{self, SigmaMatrix};

/// Default relative tolerance for numeric equality.
pub const DEFAULT_TOL_EQ: f64 = 1e-9;
/// Default spectral-ratio threshold `min|λ| / max|λ|` at or below which an
/// element is treated as a zero divisor.
pub const DEFAULT_TOL_ZERO: f64 = 1e-9;

/// The ambient algebra `R_n` together with the numeric tolerances used by
/// every comparison made inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraContext {
    n: usize,
    tol_eq: f64,
    tol_zero: f64,
}

impl AlgebraContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_tolerances(n, DEFAULT_TOL_EQ, DEFAULT_TOL_ZERO)
    }

    pub fn with_tolerances(n: usize, tol_eq: f64, tol_zero: f64) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidDimension(n));
        }
        if !(tol_eq > 0.0 && tol_eq.is_finite()) {
            return Err(AlgebraError::InvalidTolerance(format!("tol_eq = {tol_eq}")));
        }
        if !(tol_zero > 0.0 && tol_zero.is_finite()) {
            return Err(AlgebraError::InvalidTolerance(format!("tol_zero = {tol_zero}")));
        }
        Ok(Self { n, tol_eq, tol_zero })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tol_eq(&self) -> f64 {
        self.tol_eq
    }

    pub fn tol_zero(&self) -> f64 {
        self.tol_zero
    }

    pub fn element(&self, coeffs: Vec<f64>) -> Result<Element> {
        Element::new(*self, coeffs)
    }

    pub fn zero(&self) -> Element {
        Element { ctx: *self, coeffs: vec![0.0; self.n] }
    }

    /// The multiplicative identity `e_1`.
    pub fn one(&self) -> Element {
        self.basis_unchecked(0)
    }

    /// Basis vector `e_ℓ`, 1-based as in `e_1, ..., e_n`.
    pub fn basis(&self, l: usize) -> Result<Element> {
        if l == 0 || l > self.n {
            return Err(AlgebraError::InvalidArgument(format!("basis index {l} outside 1..={}", self.n)));
        }
        Ok(self.basis_unchecked(l - 1))
    }

    fn basis_unchecked(&self, idx: usize) -> Element {
        let mut coeffs = vec![0.0; self.n];
        coeffs[idx] = 1.0;
        Element { ctx: *self, coeffs }
    }

    /// The constant `c·e_1`.
    pub fn scalar(&self, c: f64) -> Element {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub(crate) fn check_same(&self, other: &AlgebraContext) -> Result<()> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }
}

/// A value `u = Σ u_ℓ e_ℓ` of `R_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    ctx: AlgebraContext,
    coeffs: Vec<f64>,
}

impl Element {
    pub fn new(ctx: AlgebraContext, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != ctx.n {
            return Err(AlgebraError::DimensionMismatch { expected: ctx.n, found: coeffs.len() });
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(AlgebraError::NonFinite(i));
        }
        Ok(Self { ctx, coeffs })
    }

    /// Builds an element from coefficients already known to be finite and of
    /// the right length.
    pub(crate) fn from_raw(ctx: AlgebraContext, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), ctx.n);
        Self { ctx, coeffs }
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn euclidean_length(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Element {
        Element::from_raw(self.ctx, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn negate(&self) -> Element {
        Element::from_raw(self.ctx, self.coeffs.iter().map(|x| -x).collect())
    }

    fn zip_with(&self, other: &Element, f: impl Fn(f64, f64) -> f64) -> Result<Element> {
        self.ctx.check_same(&other.ctx)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect();
        Ok(Element::from_raw(self.ctx, coeffs))
    }

    /// Max-norm distance to `other`.
    pub fn max_abs_diff(&self, other: &Element) -> Result<f64> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Equality under the context's relative tolerance: the max-norm
    /// difference must not exceed `tol_eq · max(1, scale)`.
    pub fn approx_eq(&self, other: &Element, scale: f64) -> bool {
        match self.max_abs_diff(other) {
            Ok(d) => d <= self.ctx.tol_eq * scale.max(1.0),
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson { n: self.ctx.n, coeffs: self.coeffs.clone() }
    }
}

/// Wire encoding of an element: `{"n": <int>, "coeffs": [<float>, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl ElementJson {
    pub fn into_element(self, ctx: &AlgebraContext) -> Result<Element> {
        ctx.check_same(&AlgebraContext { n: self.n, ..*ctx })?;
        Element::new(*ctx, self.coeffs)
    }
}

/// Negacyclic convolution, the defining product of `R_n`:
/// `w_m = Σ_{i+j-1=m} u_i v_j − Σ_{i+j-1=m+n} u_i v_j`.
pub fn multiply_naive(u: &Element, v: &Element) -> Result<Element> {
    u.ctx.check_same(&v.ctx)?;
    let n = u.n();
    let mut out = vec![0.0; n];
    for (i, &ui) in u.coeffs.iter().enumerate() {
        if ui == 0.0 {
            continue;
        }
        // i + j < n lands directly, the rest wraps with a sign flip (x^n = -1).
        let split = n - i;
        for (j, &vj) in v.coeffs[..split].iter().enumerate() {
            out[i + j] += ui * vj;
        }
        for (j, &vj) in v.coeffs[split..].iter().enumerate() {
            out[j] -= ui * vj;
        }
    }
    Ok(Element::from_raw(u.ctx, out))
}

/// `u^m` by binary exponentiation; `u^0 = e_1`.
pub fn power(u: &Element, mut m: u64) -> Element {
    let mut result = u.ctx.one();
    let mut base = u.clone();
    while m > 0 {
        if m & 1 == 1 {
            result = multiply_naive(&result, &base).expect("same context");
        }
        m >>= 1;
        if m > 0 {
            base = multiply_naive(&base, &base).expect("same context");
        }
    }
    result
}

/// Evaluates `a_m x^m + ... + a_1 x + a_0` by Horner's scheme. Coefficients
/// are given highest degree first.
pub fn poly_eval(coeffs: &[Element], x: &Element) -> Result<Element> {
    let Some((lead, rest)) = coeffs.split_first() else {
        return Ok(x.ctx.zero());
    };
    x.ctx.check_same(&lead.ctx)?;
    let mut acc = lead.clone();
    for a in rest {
        acc = multiply_naive(&acc, x)?.add(a)?;
    }
    Ok(acc)
}

/// `|det ς(u)|`, computed by LU factorization of the representation matrix.
pub fn algebra_norm(u: &Element) -> f64 {
    sigma::sigma(u).determinant().abs()
}

/// Signed `det ς(u)` via LU factorization (reference path).
pub fn det_lu(u: &Element) -> f64 {
    sigma::sigma(u).determinant()
}

pub fn euclidean_distance(x: &Element, a: &Element) -> Result<f64> {
    x.ctx.check_same(&a.ctx)?;
    Ok(x.coeffs.iter().zip(&a.coeffs).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt())
}

/// Row-vector product `u · M`, used to express `u ⊛ v = u ς(v)`.
pub fn row_times_matrix(u: &Element, m: &SigmaMatrix) -> Result<Element> {
    if m.n() != u.n() {
        return Err(AlgebraError::DimensionMismatch { expected: u.n(), found: m.n() });
    }
    let n = u.n();
    let mut out = vec![0.0; n];
    for (r, &ur) in u.coeffs.iter().enumerate() {
        for (c, o) in out.iter_mut().enumerate() {
            *o += ur * m.get(r, c);
        }
    }
    Ok(Element::from_raw(u.ctx, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ctx: &AlgebraContext, c: &[f64]) -> Element {
        ctx.element(c.to_vec()).unwrap()
    }

    #[test]
    fn context_rejects_small_dimension_and_bad_tolerances() {
        assert_eq!(AlgebraContext::new(1), Err(AlgebraError::InvalidDimension(1)));
        assert!(AlgebraContext::with_tolerances(3, 0.0, 1e-9).is_err());
        assert!(AlgebraContext::with_tolerances(3, 1e-9, -1.0).is_err());
        assert!(AlgebraContext::with_tolerances(3, f64::NAN, 1e-9).is_err());
    }

    #[test]
    fn element_validates_length_and_finiteness() {
        let ctx = AlgebraContext::new(3).unwrap();
        assert!(matches!(ctx.element(vec![1.0, 2.0]), Err(AlgebraError::DimensionMismatch { expected: 3, found: 2 })));
        assert_eq!(ctx.element(vec![1.0, f64::INFINITY, 0.0]), Err(AlgebraError::NonFinite(1)));
    }

    #[test]
    fn identity_is_neutral() {
        let ctx = AlgebraContext::new(5).unwrap();
        let u = el(&ctx, &[1.5, -2.0, 0.25, 3.0, 7.0]);
        assert_eq!(multiply_naive(&ctx.one(), &u).unwrap(), u);
        assert_eq!(multiply_naive(&u, &ctx.one()).unwrap(), u);
    }

    #[test]
    fn multiplication_table_entries_r4() {
        let ctx = AlgebraContext::new(4).unwrap();
        let e = |l| ctx.basis(l).unwrap();
        assert_eq!(multiply_naive(&e(2), &e(4)).unwrap(), e(1).negate());
        assert_eq!(multiply_naive(&e(3), &e(3)).unwrap(), e(1).negate());
        assert_eq!(multiply_naive(&e(3), &e(4)).unwrap(), e(2).negate());
        assert_eq!(multiply_naive(&e(2), &e(3)).unwrap(), e(4));
    }

    #[test]
    fn small_product_r3() {
        let ctx = AlgebraContext::new(3).unwrap();
        let p = multiply_naive(&el(&ctx, &[1.0, 1.0, 0.0]), &el(&ctx, &[0.0, 1.0, 0.0])).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 1.0, 1.0]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = AlgebraContext::new(3).unwrap().one();
        let b = AlgebraContext::new(4).unwrap().one();
        assert!(matches!(multiply_naive(&a, &b), Err(AlgebraError::DimensionMismatch { .. })));
        assert!(a.add(&b).is_err());
        assert!(euclidean_distance(&a, &b).is_err());
    }

    #[test]
    fn linear_operations() {
        let ctx2 = AlgebraContext::new(2).unwrap();
        assert_eq!(el(&ctx2, &[1.0, 0.0]).add(&el(&ctx2, &[0.0, 1.0])).unwrap().coeffs(), &[1.0, 1.0]);
        let ctx3 = AlgebraContext::new(3).unwrap();
        let u = el(&ctx3, &[1.0, 2.0, 3.0]);
        assert_eq!(u.scale(-1.0).coeffs(), &[-1.0, -2.0, -3.0]);
        assert_eq!(u.scale(1.0), u);
        assert_eq!(u.add(&u.negate()).unwrap(), ctx3.zero());
    }

    #[test]
    fn powers() {
        let ctx = AlgebraContext::new(4).unwrap();
        let e2 = ctx.basis(2).unwrap();
        let e3 = ctx.basis(3).unwrap();
        assert_eq!(power(&e2, 1), e2);
        assert_eq!(power(&e2, 0), ctx.one());
        assert_eq!(power(&e2, 4), ctx.one().negate());
        assert_eq!(power(&e2, 8), ctx.one());
        assert_eq!(power(&e3, 2), ctx.one().negate());
    }

    #[test]
    fn binary_power_matches_repeated_product() {
        let ctx = AlgebraContext::new(6).unwrap();
        let u = el(&ctx, &[0.3, -0.7, 0.2, 0.9, -0.1, 0.4]);
        let mut iter = ctx.one();
        for m in 0..12u64 {
            let fast = power(&u, m);
            assert!(fast.approx_eq(&iter, iter.max_abs()), "m = {m}");
            iter = multiply_naive(&iter, &u).unwrap();
        }
    }

    #[test]
    fn horner_evaluation() {
        let ctx = AlgebraContext::new(4).unwrap();
        let e3 = ctx.basis(3).unwrap();
        // x^2 - e_1 at x = e_3
        let p = [ctx.one(), ctx.zero(), ctx.one().negate()];
        assert_eq!(poly_eval(&p, &e3).unwrap(), ctx.scalar(-2.0));
        assert_eq!(poly_eval(&[ctx.one()], &e3).unwrap(), ctx.one());
        let u = el(&ctx, &[0.5, 1.0, -2.0, 3.0]);
        assert_eq!(poly_eval(&[ctx.one(), ctx.zero()], &u).unwrap(), u);
    }

    #[test]
    fn norms_and_distances() {
        let ctx2 = AlgebraContext::new(2).unwrap();
        assert!((algebra_norm(&el(&ctx2, &[3.0, 4.0])) - 25.0).abs() < 1e-12);
        let ctx4 = AlgebraContext::new(4).unwrap();
        assert!((algebra_norm(&ctx4.one()) - 1.0).abs() < 1e-15);
        assert!((algebra_norm(&el(&ctx4, &[1.0, 1.0, 0.0, 0.0])) - 2.0).abs() < 1e-12);

        assert_eq!(euclidean_distance(&ctx2.one(), &ctx2.one()).unwrap(), 0.0);
        let d = euclidean_distance(&el(&ctx2, &[1.0, 0.0]), &el(&ctx2, &[0.0, 1.0])).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let d = euclidean_distance(&el(&ctx4, &[1.0, 2.0, 3.0, 4.0]), &el(&ctx4, &[1.0, 2.0, 3.0, 5.0])).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn json_encoding() {
        let ctx = AlgebraContext::new(3).unwrap();
        let u = el(&ctx, &[1.0, -2.5, 0.0]);
        let s = serde_json::to_string(&u.to_json()).unwrap();
        assert_eq!(s, r#"{"n":3,"coeffs":[1.0,-2.5,0.0]}"#);
        let back: ElementJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_element(&ctx).unwrap(), u);
        let wrong: ElementJson = serde_json::from_str(r#"{"n":2,"coeffs":[1,2]}"#).unwrap();
        assert!(wrong.into_element(&ctx).is_err());
    }
}
