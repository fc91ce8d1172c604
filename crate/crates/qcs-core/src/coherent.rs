//! Coherent-state amplitudes for the self-similar tower, in two coexisting
//! ladder conventions, together with norms, the eigenvalue and derivative
//! conditions, and the `z ↔ ζ` variable map.
//!
//! Conventions. The *spectral* convention (module [`crate::fockrep`]) fixes
//! lowering amplitudes `√(E_n − E₀)`; the *coherent* convention fixes them as
//! `λ_n = √(d_n/d_{n−1})`, where `d_n = ∏_{m=1}^{n} σ_{m,n}` is the product
//! of the reversed partial sums `σ_{m,n} = Σ_{k=m}^{n} R(a_k)`. The two are
//! not the same normalization: for the geometric remainder sequence they
//! differ by exactly `q^{n(n−1)/4}` per level. The eigenvalue condition
//! `B₋|z⟩ = z·f[R̂₀]|z⟩` holds *exactly* in the coherent convention for any
//! positive remainder sequence (the `d_n` ratios telescope), which is how it
//! is implemented and tested here. Each operation below documents which
//! convention it uses.

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fockrep::{r_value, FockVector, ModelParams, TruncatedOperator};
use crate::qspecial::{q_exp, Kahan, QBase, SeriesTolerance};

/// Closed selector set for the remainder functional `f[R]`; arbitrary
/// callables are accepted at the library-internal layer
/// ([`coherent_coeffs_for_remainders`]), but the interface boundary stays
/// serializable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FunctionalSelector {
    /// `f ≡ 1` (the plain geometric construction).
    Unit,
    /// `f[R] = R`, the choice that reduces to the q-coherent state.
    Linear,
    /// `f[R] = R^p`.
    Power(f64),
}

impl FunctionalSelector {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Self::Unit => 1.0,
            Self::Linear => r,
            Self::Power(p) => r.powf(p),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Self::Power(p) = self {
            if !p.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "power exponent must be finite, got {p}"
                )));
            }
        }
        Ok(())
    }
}

/// A coherent-state specification: complex label `z`, remainder functional,
/// and the model parameters.
#[derive(Clone, Copy, Debug)]
pub struct CoherentSpec {
    pub label: Complex64,
    pub f: FunctionalSelector,
    pub params: ModelParams,
}

impl CoherentSpec {
    pub fn new(label: Complex64, f: FunctionalSelector, params: ModelParams) -> Result<Self> {
        if !label.re.is_finite() || !label.im.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coherent label must be finite, got {label}"
            )));
        }
        f.validate()?;
        Ok(Self { label, f, params })
    }
}

/// A positive remainder sequence `R(a_1), R(a_2), …`; the library-internal
/// layer under the coherent-state builders, so identities can be exercised
/// on non-geometric sequences as well.
#[derive(Clone, Debug)]
pub struct RemainderSeq {
    values: Vec<f64>,
}

impl RemainderSeq {
    /// Geometric sequence `R(a_k) = c·a₁·q^{k−1}` for `k = 1..=len`.
    pub fn from_params(p: &ModelParams, len: usize) -> Self {
        Self {
            values: (1..=len as i64).map(|k| r_value(k, p)).collect(),
        }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|&r| !(r.is_finite() && r > 0.0)) {
            return Err(Error::InvalidParameter(
                "remainder values must be finite and positive".into(),
            ));
        }
        Ok(Self { values })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `R(a_k)`, 1-based.
    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    /// `σ_{m,n} = Σ_{k=m}^{n} R(a_k)`, summed smallest-first so that the tiny
    /// tail terms of a geometric sequence are not absorbed by rounding.
    pub fn sigma(&self, m: usize, n: usize) -> f64 {
        assert!(m >= 1 && m <= n && n <= self.len());
        let mut acc = Kahan::default();
        for k in (m..=n).rev() {
            acc.add(self.get(k));
        }
        acc.value()
    }

    /// Coherent-convention ratios `ρ_n = d_n/d_{n−1}` for `n = 1..=len`,
    /// computed factor-by-factor (never through the over/underflowing `d_n`
    /// themselves): `ρ_n = σ_{n,n} ∏_{m<n} σ_{m,n}/σ_{m,n−1}`.
    pub fn lowering_ratios(&self) -> Vec<f64> {
        let len = self.len();
        let mut out = Vec::with_capacity(len);
        for n in 1..=len {
            let mut rho = self.sigma(n, n);
            for m in 1..n {
                rho *= self.sigma(m, n) / self.sigma(m, n - 1);
            }
            out.push(rho);
        }
        out
    }
}

/// Reversed partial sum `σ_{m,n} = Σ_{k=m}^{n} R(a_k)` of the geometric
/// remainder sequence; strictly positive.
pub fn reversed_partial_sum(m: usize, n: usize, p: &ModelParams) -> f64 {
    assert!(m >= 1 && m <= n, "need 1 <= m <= n, got m={m}, n={n}");
    RemainderSeq::from_params(p, n).sigma(m, n)
}

/// Coefficients and lowering ratios built over an arbitrary positive
/// remainder sequence (coherent convention).
fn build_coeffs(
    z: Complex64,
    f: &dyn Fn(f64) -> f64,
    r: &RemainderSeq,
    n_levels: usize,
) -> Result<(Vec<Complex64>, Vec<f64>)> {
    assert!(
        r.len() >= n_levels,
        "remainder sequence too short: {} < {}",
        r.len(),
        n_levels
    );
    let ratios = r.lowering_ratios();
    let mut coeffs = Vec::with_capacity(n_levels + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for n in 1..=n_levels {
        let c = coeffs[n - 1] * z * f(r.get(n)) / ratios[n - 1].sqrt();
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::Overflow { level: n });
        }
        coeffs.push(c);
    }
    Ok((coeffs, ratios))
}

/// Coherent-convention amplitudes over an explicit remainder sequence:
/// `c_n = zⁿ ∏_{k≤n} f[R(a_k)] / √(d_n)` with `c₀ = 1`.
pub fn coherent_coeffs_for_remainders(
    z: Complex64,
    f: &dyn Fn(f64) -> f64,
    r: &RemainderSeq,
    n_levels: usize,
) -> Result<FockVector> {
    let (coeffs, _) = build_coeffs(z, f, r, n_levels)?;
    FockVector::from_amplitudes(coeffs)
}

/// General shape-invariant coherent amplitudes (coherent convention) up to
/// level `n_levels`; matches the reversed-partial-sum pattern term by term.
pub fn coherent_coeffs_general(s: &CoherentSpec, n_levels: usize) -> Result<FockVector> {
    s.f.validate()?;
    let r = RemainderSeq::from_params(&s.params, n_levels.max(1));
    let f = s.f;
    coherent_coeffs_for_remainders(s.label, &move |x| f.eval(x), &r, n_levels)
}

/// q-closed-form amplitudes `c_n = q^{n(n+1)/4} ζⁿ / √((q;q)_n)`.
pub fn coherent_coeffs_q(zeta: Complex64, q: QBase, n_levels: usize) -> FockVector {
    let qv = q.get();
    let mut coeffs = Vec::with_capacity(n_levels + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for n in 1..=n_levels {
        // q^{n(n+1)/4} / q^{(n−1)n/4} = q^{n/2}
        let step = zeta * qv.powf(0.5 * n as f64) / (1.0 - qv.powi(n as i32)).sqrt();
        coeffs.push(coeffs[n - 1] * step);
    }
    FockVector::from_unchecked(Array1::from_vec(coeffs))
}

/// Variable map `ζ = √((1−q)/q) · √(R(a₁)) · z` connecting the general label
/// to the q-closed form.
pub fn zeta_from_z(z: Complex64, p: &ModelParams) -> Complex64 {
    let qv = p.q().get();
    z * ((1.0 - qv) / qv).sqrt() * r_value(1, p).sqrt()
}

/// Squared norm `⟨ζ|ζ⟩ = Σ_n q^{n(n+1)/2} |ζ|^{2n} / (q;q)_n`, summed
/// directly from its own term recurrence (so the generalized-exponential
/// closed forms remain an independent cross-check).
pub fn norm_sq(zeta: Complex64, q: QBase, tol: SeriesTolerance) -> Result<f64> {
    let qv = q.get();
    let t = zeta.norm_sqr();
    let mut sum = Kahan::default();
    let mut term = 1.0;
    sum.add(term);
    for n in 1..=tol.max_terms {
        let next = term * qv.powi(n as i32) * t / (1.0 - qv.powi(n as i32));
        if !next.is_finite() {
            return Err(Error::Overflow { level: n });
        }
        if next < tol.rel_tol * sum.value() && next <= term {
            return Ok(sum.value());
        }
        sum.add(next);
        term = next;
    }
    Err(Error::NonConvergent {
        what: "coherent-state norm series",
        max_terms: tol.max_terms,
    })
}

/// The two candidate closed forms for the norm, reported side by side: the
/// series re-indexes exactly to `E_q^{(1/2)}(q^{1/2}|ζ|²)`, while the
/// `q^{1/4}|ζ|²` argument is the printed variant. The series itself is
/// authoritative; no preference is asserted here.
#[derive(Clone, Copy, Debug)]
pub struct NormClosedForms {
    /// `E_q^{(1/2)}(q^{1/2}|ζ|²)`.
    pub at_sqrt_q: f64,
    /// `E_q^{(1/2)}(q^{1/4}|ζ|²)`.
    pub at_fourth_root_q: f64,
}

pub fn norm_closed_forms(
    zeta: Complex64,
    q: QBase,
    tol: SeriesTolerance,
) -> Result<NormClosedForms> {
    let qv = q.get();
    let t = zeta.norm_sqr();
    let at_sqrt_q = q_exp(0.5, q, Complex64::new(qv.sqrt() * t, 0.0), tol)?.re;
    let at_fourth_root_q = q_exp(0.5, q, Complex64::new(qv.powf(0.25) * t, 0.0), tol)?.re;
    Ok(NormClosedForms {
        at_sqrt_q,
        at_fourth_root_q,
    })
}

/// Smallest `N` whose tail `Σ_{n>N} |c_n|²` stays below `eps` times the
/// squared norm; the super-geometric decay of `q^{n(n+1)/2}` makes the
/// forward ratio a valid tail bound once the terms are decreasing.
pub fn truncation_level(zeta: Complex64, q: QBase, eps: f64) -> usize {
    assert!(eps > 0.0, "eps must be positive");
    let qv = q.get();
    let t = zeta.norm_sqr();
    if t == 0.0 {
        return 0;
    }
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut n = 0usize;
    loop {
        let ratio = qv.powi(n as i32 + 1) * t / (1.0 - qv.powi(n as i32 + 1));
        let next = term * ratio;
        if ratio < 1.0 && next / (1.0 - ratio) < eps * sum {
            return n;
        }
        sum += next;
        term = next;
        n += 1;
        // the stopping rule only ever compares term against sum, so both can
        // be rescaled together; keeps the running values representable when
        // the series hump is astronomically high (|ζ| large, q near 1)
        if term > 1e250 {
            term *= 1e-250;
            sum *= 1e-250;
        }
    }
}

/// Lowering operator of the coherent convention:
/// `⟨n−1|B₋|n⟩ = λ_n = √(d_n/d_{n−1})`.
pub fn lowering_coherent(r: &RemainderSeq, dim: usize) -> TruncatedOperator {
    assert!(r.len() + 1 >= dim, "remainder sequence shorter than dim-1");
    let ratios = r.lowering_ratios();
    let mut mat = ndarray::Array2::zeros((dim, dim));
    for n in 1..dim {
        mat[(n - 1, n)] = Complex64::new(ratios[n - 1].sqrt(), 0.0);
    }
    TruncatedOperator::new(mat).expect("lowering matrix is finite by construction")
}

fn scaled_copy(coeffs: &[Complex64]) -> (Vec<Complex64>, f64) {
    let max = coeffs.iter().fold(0.0f64, |a, c| a.max(c.norm())).max(1.0);
    let inv = 1.0 / max;
    (coeffs.iter().map(|c| c * inv).collect(), max)
}

fn residual_norm(res: &[Complex64], state: &[Complex64]) -> f64 {
    let rn = res.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let sn = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    rn / sn
}

/// Relative residual of the eigenvalue condition
/// `B₋|z⟩ = z·f[R̂₀]|z⟩` in the coherent convention, where `f[R̂₀]` is the
/// diagonal with entries `f(R(a_{n+1}))`. Levels `N−1` and `N` are excluded
/// (the truncated tower cannot satisfy the identity there).
pub fn eigen_residual(s: &CoherentSpec, n_levels: usize) -> Result<f64> {
    let r = RemainderSeq::from_params(&s.params, n_levels + 1);
    let f = s.f;
    eigen_residual_for_remainders(s.label, &move |x| f.eval(x), &r, n_levels)
}

/// [`eigen_residual`] over an explicit remainder sequence (needs `n_levels+1`
/// values so the diagonal `f(R(a_{n+1}))` is defined on every kept level).
pub fn eigen_residual_for_remainders(
    z: Complex64,
    f: &dyn Fn(f64) -> f64,
    r: &RemainderSeq,
    n_levels: usize,
) -> Result<f64> {
    if r.len() < n_levels + 1 {
        return Err(Error::InvalidParameter(format!(
            "need {} remainder values, got {}",
            n_levels + 1,
            r.len()
        )));
    }
    let (coeffs, ratios) = build_coeffs(z, f, r, n_levels)?;
    let (c, _) = scaled_copy(&coeffs);
    if n_levels < 2 {
        return Err(Error::InvalidParameter(
            "eigen residual needs at least two levels".into(),
        ));
    }
    let mut res = Vec::with_capacity(n_levels - 1);
    for n in 0..=n_levels - 2 {
        let lowered = ratios[n].sqrt() * c[n + 1];
        let expected = z * f(r.get(n + 1)) * c[n];
        res.push(lowered - expected);
    }
    Ok(residual_norm(&res, &c))
}

/// Relative residual of the derivative condition
/// `[B₋ − z·f[R̂₀]] ∂|z⟩/∂z = f[R̂₀]|z⟩` (coherent convention), with the
/// derivative taken termwise (`n·c_n/z`; at `z = 0` it is the closed-form
/// coefficient slope, nonzero only at level 1). Interior levels only.
pub fn derivative_condition_residual(s: &CoherentSpec, n_levels: usize) -> Result<f64> {
    let r = RemainderSeq::from_params(&s.params, n_levels + 1);
    let z = s.label;
    let f = s.f;
    let fe = move |x: f64| f.eval(x);
    let (coeffs, ratios) = build_coeffs(z, &fe, &r, n_levels)?;
    let (c, _) = scaled_copy(&coeffs);
    if n_levels < 2 {
        return Err(Error::InvalidParameter(
            "derivative residual needs at least two levels".into(),
        ));
    }
    // termwise derivative of c_n ∝ zⁿ
    let deriv: Vec<Complex64> = if z.norm() == 0.0 {
        let mut d = vec![Complex64::new(0.0, 0.0); n_levels + 1];
        d[1] = Complex64::new(fe(r.get(1)) / ratios[0].sqrt(), 0.0);
        d
    } else {
        (0..=n_levels)
            .map(|n| c[n] * Complex64::new(n as f64, 0.0) / z)
            .collect()
    };
    let mut res = Vec::with_capacity(n_levels - 1);
    for n in 0..=n_levels - 2 {
        let fr = fe(r.get(n + 1));
        let lowered = ratios[n].sqrt() * deriv[n + 1];
        let shifted = z * fr * deriv[n];
        let rhs = Complex64::new(fr, 0.0) * c[n];
        res.push(lowered - shifted - rhs);
    }
    Ok(residual_norm(&res, &c))
}
