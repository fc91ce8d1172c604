//! Scalar q-series primitives: q-Pochhammer symbols `(z;q)_n` and `(z;q)_∞`,
//! q-integers `[n]_q`, the generalized q-exponential `E_q^{(μ)}`, and the
//! closed form of the Ramanujan moment `∫₀^∞ tⁿ/(−t;q)_∞ dt`.
//!
//! Everything here requires the base `q` strictly inside `(0,1)`; that is the
//! regime in which the infinite products and the moment integrals converge.
//! Series are summed in forward order with compensated (Kahan) accumulation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Deformation base, validated to lie strictly in `(0,1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(Self(q))
        } else {
            Err(Error::InvalidParameter(format!(
                "q must lie strictly in (0,1), got {q}"
            )))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `−log q`, the positive decay rate entering the completeness measure.
    #[inline]
    pub fn neg_log(self) -> f64 {
        -self.0.ln()
    }
}

/// Truncation control for infinite products and series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesTolerance {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl SeriesTolerance {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0,1), got {rel_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameter(
                "max_terms must be at least 1".into(),
            ));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 100_000,
        }
    }
}

/// Compensated accumulator for real sums.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Compensated accumulator for complex sums (componentwise Kahan).
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanComplex {
    re: Kahan,
    im: Kahan,
}

impl KahanComplex {
    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Finite q-shifted factorial `(z;q)_n = ∏_{j=0}^{n−1} (1 − z qʲ)`.
///
/// `n = 0` is the empty product and returns exactly 1.
pub fn pochhammer_n(z: Complex64, q: QBase, n: usize) -> Complex64 {
    let q = q.get();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qj = 1.0;
    for _ in 0..n {
        prod *= Complex64::new(1.0, 0.0) - z * qj;
        qj *= q;
    }
    prod
}

/// `(q;q)_n` as a real product.
pub(crate) fn poch_q_n(q: f64, n: usize) -> f64 {
    let mut prod = 1.0;
    let mut qk = q;
    for _ in 0..n {
        prod *= 1.0 - qk;
        qk *= q;
    }
    prod
}

/// Truncation index for `(z;q)_∞`: smallest `J` with `|z| q^J < rel_tol (1−q)`.
fn poch_inf_cutoff(abs_z: f64, q: f64, tol: SeriesTolerance) -> Result<usize> {
    if abs_z == 0.0 {
        return Ok(0);
    }
    let threshold = tol.rel_tol * (1.0 - q);
    if abs_z < threshold {
        return Ok(0);
    }
    // |z| q^J < thr  ⇔  J > log(thr/|z|)/log q  (log q < 0 flips the sign)
    let j = ((threshold / abs_z).ln() / q.ln()).ceil();
    let j = j.max(0.0) as usize;
    if j > tol.max_terms {
        return Err(Error::NonConvergent {
            what: "(z;q)_inf product",
            max_terms: tol.max_terms,
        });
    }
    Ok(j)
}

/// Infinite q-shifted factorial `(z;q)_∞ = ∏_{j≥0} (1 − z qʲ)`.
///
/// The product is truncated at the smallest `J` with
/// `|z| q^J < rel_tol·(1−q)`; the neglected tail multiplies the result by a
/// factor within `exp(|z| q^J / (1−q)) − 1` of unity.
pub fn pochhammer_inf(z: Complex64, q: QBase, tol: SeriesTolerance) -> Result<Complex64> {
    let j = poch_inf_cutoff(z.norm(), q.get(), tol)?;
    Ok(pochhammer_n(z, q, j))
}

/// Fast real-valued path for `(−t;q)_∞ = ∏_{j≥0} (1 + t qʲ)` with `t ≥ 0`.
///
/// Strictly positive; used by the completeness weight and the moment
/// integrands, where it is evaluated at every quadrature node and Monte Carlo
/// sample.
pub(crate) fn poch_inf_neg_real(t: f64, q: f64, rel_tol: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let mut prod = 1.0;
    let mut tq = t;
    let threshold = rel_tol * (1.0 - q);
    while tq >= threshold {
        prod *= 1.0 + tq;
        tq *= q;
    }
    prod
}

/// q-integer `[n]_q = (1 − qⁿ)/(1 − q)`.
///
/// Strictly increasing in `n`, bounded above by `1/(1−q)`, and → `n` as
/// `q → 1⁻`.
pub fn q_int(n: usize, q: QBase) -> f64 {
    let q = q.get();
    (1.0 - q.powi(n as i32)) / (1.0 - q)
}

/// Generalized q-exponential `E_q^{(μ)}(x) = Σ_{n≥0} q^{μn²} xⁿ / (q;q)_n`.
///
/// Converges for any `x` when `μ > 0` and for `|x| < 1` when `μ = 0` (where
/// it reduces to Euler's `1/(x;q)_∞`). Summation stops once the terms are
/// past their peak and the next term is below `rel_tol` times the partial
/// sum.
pub fn q_exp(mu: f64, q: QBase, x: Complex64, tol: SeriesTolerance) -> Result<Complex64> {
    if mu < 0.0 || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "q-exponential exponent must be finite and ≥ 0, got {mu}"
        )));
    }
    if mu == 0.0 && x.norm() >= 1.0 {
        return Err(Error::NonConvergent {
            what: "q-exponential with mu = 0 and |x| >= 1",
            max_terms: tol.max_terms,
        });
    }
    let qv = q.get();
    let mut sum = KahanComplex::default();
    let mut term = Complex64::new(1.0, 0.0);
    sum.add(term);
    for n in 0..tol.max_terms {
        // term ratio: q^{μ(2n+1)} x / (1 − q^{n+1})
        let next = term * x * qv.powf(mu * (2.0 * n as f64 + 1.0)) / (1.0 - qv.powi(n as i32 + 1));
        if !next.re.is_finite() || !next.im.is_finite() {
            return Err(Error::Overflow { level: n + 1 });
        }
        let partial = sum.value().norm();
        if next.norm() < tol.rel_tol * partial && next.norm() <= term.norm() {
            return Ok(sum.value());
        }
        sum.add(next);
        term = next;
    }
    Err(Error::NonConvergent {
        what: "q-exponential series",
        max_terms: tol.max_terms,
    })
}

/// Closed form of the Ramanujan moment:
/// `∫₀^∞ tⁿ/(−t;q)_∞ dt = (q;q)_n · q^{−n(n+1)/2} · (−log q)`.
///
/// Strictly positive for all `n ≥ 0`.
pub fn ramanujan_closed_form(n: usize, q: QBase) -> f64 {
    let qv = q.get();
    let exponent = (n * (n + 1) / 2) as i32;
    poch_q_n(qv, n) * qv.powi(-exponent) * q.neg_log()
}
