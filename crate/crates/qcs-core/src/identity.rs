//! Resolution of identity for the q-coherent states: matrix elements
//! `I_{mn} = ∫ (d²ζ/π) w(|ζ|²) ⟨m|ζ⟩⟨ζ|n⟩` with weight
//! `w(t) = 1/((−log q)(−t;q)_∞)`, evaluated two independent ways.
//!
//! *Radial*: the angular integral is done analytically (it kills every
//! `m ≠ n` element), leaving the Ramanujan moment for the diagonal — this is
//! where the closed-form cancellation makes every diagonal element exactly 1.
//!
//! *Monte Carlo*: direct two-dimensional sampling of the complex label with
//! a log-normal radial proposal matched to the weight's
//! `exp(−(log t)²/(2 log(1/q)))` decay. Streams are chunked and seeded per
//! element and per chunk, so results are reproducible bit-for-bit regardless
//! of thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exec;
use crate::qspecial::{self, poch_q_n, Kahan, QBase, SeriesTolerance};
use crate::quad;

/// Completeness-measure weight specification.
#[derive(Clone, Copy, Debug)]
pub struct MeasureWeight {
    pub q: QBase,
    pub tol: SeriesTolerance,
}

impl MeasureWeight {
    pub fn new(q: QBase) -> Self {
        Self {
            q,
            tol: SeriesTolerance::default(),
        }
    }
}

/// `w(t) = 1/((−log q)·(−t;q)_∞)` for `t = |ζ|² ≥ 0`; strictly positive and
/// strictly decreasing in `t`.
pub fn measure_weight(t: f64, w: &MeasureWeight) -> f64 {
    assert!(t >= 0.0, "measure weight needs t >= 0, got {t}");
    let qv = w.q.get();
    1.0 / (w.q.neg_log() * qspecial::poch_inf_neg_real(t, qv, w.tol.rel_tol))
}

/// Monte Carlo configuration. `radial_cap` truncates the radial proposal;
/// [`MCConfig::for_element`] places it ten proposal widths past the integrand
/// peak, where the discarded tail mass is far below 10⁻⁴ of any moment.
#[derive(Clone, Copy, Debug)]
pub struct MCConfig {
    pub samples: usize,
    pub seed: u64,
    pub radial_cap: f64,
    /// When set, [`identity_element_mc`] fails with `InsufficientSamples` if
    /// the achieved standard error exceeds this bound.
    pub max_stderr: Option<f64>,
}

impl MCConfig {
    pub fn for_element(samples: usize, seed: u64, q: QBase, m: usize, n: usize) -> Result<Self> {
        if samples < 1_000 {
            return Err(Error::InvalidParameter(format!(
                "Monte Carlo needs at least 1000 samples, got {samples}"
            )));
        }
        let big_l = q.neg_log();
        let nu = 0.5 * (m + n) as f64;
        let radial_cap = (big_l * (nu + 0.5) + 10.0 * big_l.sqrt()).exp();
        Ok(Self {
            samples,
            seed,
            radial_cap,
            max_stderr: None,
        })
    }

    pub fn with_max_stderr(mut self, bound: f64) -> Self {
        self.max_stderr = Some(bound);
        self
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-element stream derivation: base seed XOR an index hash.
pub(crate) fn mix_seed(seed: u64, m: u64, n: u64) -> u64 {
    seed ^ splitmix64(splitmix64(m.wrapping_add(0x7fe1)).wrapping_add(n))
}

/// One matrix element by the radial method.
#[derive(Clone, Copy, Debug)]
pub struct RadialElement {
    pub value: Complex64,
    pub abs_err: f64,
    pub evaluations: usize,
}

/// `I_{mn}` by radial reduction: the angular integral vanishes analytically
/// for `m ≠ n` (never evaluated numerically); the diagonal is
/// `(1/(−log q))·(q^{n(n+1)/2}/(q;q)_n)·∫₀^∞ tⁿ/(−t;q)_∞ dt`.
pub fn identity_element_radial(m: usize, n: usize, q: QBase, tol: f64) -> Result<RadialElement> {
    radial_impl(m, n, q, tol, true)
}

fn radial_impl(m: usize, n: usize, q: QBase, tol: f64, parallel: bool) -> Result<RadialElement> {
    if m != n {
        return Ok(RadialElement {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            evaluations: 1,
        });
    }
    let qv = q.get();
    let exponent = (n * (n + 1) / 2) as i32;
    let prefactor = qv.powi(exponent) / (poch_q_n(qv, n) * q.neg_log());
    let moment = if parallel {
        quad::ramanujan_moment_numeric(n, q, tol)?
    } else {
        quad::ramanujan_moment_numeric_seq(n, q, tol)?
    };
    Ok(RadialElement {
        value: Complex64::new(prefactor * moment.value, 0.0),
        abs_err: prefactor * moment.abs_err,
        evaluations: moment.evaluations,
    })
}

/// Monte Carlo estimate of a matrix element, with its standard error.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub estimate: Complex64,
    pub stderr: f64,
    pub samples: usize,
}

const MC_CHUNK: usize = 1 << 14;

#[derive(Clone, Copy, Default)]
struct ChunkStats {
    sum_re: f64,
    sum_im: f64,
    sum_sq: f64,
}

/// Direct Monte Carlo check of `I_{mn}` over the complex label, using the
/// unnormalized coherent amplitudes. Reproducible for a given seed: the
/// sample stream is chunked, each chunk owns a generator derived from
/// `(seed, m, n, chunk)`, and chunk results are combined in index order.
pub fn identity_element_mc(m: usize, n: usize, q: QBase, mc: &MCConfig) -> Result<McEstimate> {
    mc_impl(m, n, q, mc, true)
}

/// Sequential reference path; bit-identical to [`identity_element_mc`].
pub fn identity_element_mc_seq(m: usize, n: usize, q: QBase, mc: &MCConfig) -> Result<McEstimate> {
    mc_impl(m, n, q, mc, false)
}

fn mc_impl(m: usize, n: usize, q: QBase, mc: &MCConfig, parallel: bool) -> Result<McEstimate> {
    if m > 10 || n > 10 {
        return Err(Error::InvalidParameter(format!(
            "Monte Carlo elements are supported for m, n <= 10, got ({m}, {n})"
        )));
    }
    if mc.samples < 1_000 {
        return Err(Error::InvalidParameter(format!(
            "Monte Carlo needs at least 1000 samples, got {}",
            mc.samples
        )));
    }
    if !(mc.radial_cap > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radial cap must be positive, got {}",
            mc.radial_cap
        )));
    }
    let qv = q.get();
    let big_l = q.neg_log();
    let nu = 0.5 * (m + n) as f64;
    // Radial proposal in u = log(1+t): a folded normal with the same matched
    // gaussian right tail as the log-normal shape t^ν·exp(−(log t)²/(2L)),
    // but with bounded density at the origin. A plain log-normal under-covers
    // small t (gaussian left tail in log t against the integrand's
    // exponential one), which makes the importance weights heavy-tailed
    // there; the fold keeps the weight ratio bounded on both sides.
    let mu = big_l * (nu + 0.5);
    let sigma = big_l.sqrt();
    let delta_phase = m as i64 - n as i64;
    let prefactor = qv.powf(0.25 * ((m * (m + 1)) as f64 + (n * (n + 1)) as f64))
        / (poch_q_n(qv, m) * poch_q_n(qv, n)).sqrt()
        / big_l;
    let norm_proposal = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());

    let elem_seed = mix_seed(mc.seed, m as u64, n as u64);
    let n_chunks = mc.samples.div_ceil(MC_CHUNK);
    let samples = mc.samples;
    let radial_cap = mc.radial_cap;

    let run_chunk = move |chunk: usize| -> ChunkStats {
        let chunk_seed = splitmix64(elem_seed.wrapping_add(chunk as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed);
        let lo = chunk * MC_CHUNK;
        let hi = ((chunk + 1) * MC_CHUNK).min(samples);
        let mut sum_re = Kahan::default();
        let mut sum_im = Kahan::default();
        let mut sum_sq = Kahan::default();
        for _ in lo..hi {
            let gauss: f64 = StandardNormal.sample(&mut rng);
            let angle: f64 = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
            let u = (mu + sigma * gauss).abs();
            let t = u.exp_m1();
            if t > radial_cap {
                continue;
            }
            // folded-normal density in u; dt = eᵘ du
            let d_lo = (u - mu) / sigma;
            let d_hi = (u + mu) / sigma;
            let density = norm_proposal * ((-0.5 * d_lo * d_lo).exp() + (-0.5 * d_hi * d_hi).exp());
            // integrand/(proposal density); the θ-average carries 1/(2π)
            // which cancels against the uniform θ density.
            let radial = prefactor * t.powf(nu) * u.exp()
                / qspecial::poch_inf_neg_real(t, qv, 1e-12)
                / density;
            let w = Complex64::from_polar(radial, angle * delta_phase as f64);
            sum_re.add(w.re);
            sum_im.add(w.im);
            sum_sq.add(w.norm_sqr());
        }
        ChunkStats {
            sum_re: sum_re.value(),
            sum_im: sum_im.value(),
            sum_sq: sum_sq.value(),
        }
    };

    let chunks: Vec<ChunkStats> = if parallel {
        exec::map_indexed(n_chunks, run_chunk)
    } else {
        exec::map_indexed_seq(n_chunks, run_chunk)
    };

    let mut sum_re = Kahan::default();
    let mut sum_im = Kahan::default();
    let mut sum_sq = Kahan::default();
    for c in &chunks {
        sum_re.add(c.sum_re);
        sum_im.add(c.sum_im);
        sum_sq.add(c.sum_sq);
    }
    let s = samples as f64;
    let mean = Complex64::new(sum_re.value() / s, sum_im.value() / s);
    let var = ((sum_sq.value() - mean.norm_sqr() * s) / (s - 1.0)).max(0.0);
    let stderr = (var / s).sqrt();
    if let Some(bound) = mc.max_stderr {
        if stderr > bound {
            return Err(Error::InsufficientSamples { stderr, bound });
        }
    }
    Ok(McEstimate {
        estimate: mean,
        stderr,
        samples,
    })
}

/// One cell of the completeness table.
#[derive(Clone, Copy, Debug)]
pub struct CompletenessElement {
    pub m: usize,
    pub n: usize,
    pub value: Complex64,
    /// `|I_{mn} − δ_{mn}|`.
    pub deviation: f64,
    pub abs_err: f64,
}

/// Radial-method completeness table over `0 ≤ m, n ≤ n_max`.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub n_max: usize,
    pub q: f64,
    pub max_deviation: f64,
    pub elements: Vec<CompletenessElement>,
}

/// Max deviation `|I_{mn} − δ_{mn}|` over the table, with the per-element
/// breakdown. Diagonal elements (the only numerical ones) are dispatched to
/// the worker pool; assembly order is fixed.
pub fn completeness_report(n_max: usize, q: QBase, tol: f64) -> Result<CompletenessReport> {
    completeness_impl(n_max, q, tol, true)
}

/// Sequential reference path; bit-identical to [`completeness_report`].
pub fn completeness_report_seq(n_max: usize, q: QBase, tol: f64) -> Result<CompletenessReport> {
    completeness_impl(n_max, q, tol, false)
}

fn completeness_impl(
    n_max: usize,
    q: QBase,
    tol: f64,
    parallel: bool,
) -> Result<CompletenessReport> {
    if n_max > 12 {
        return Err(Error::InvalidParameter(format!(
            "completeness table is supported for n_max <= 12 (integrand peaks near q^{{-n}}), got {n_max}"
        )));
    }
    let diag: Vec<Result<RadialElement>> = if parallel {
        exec::map_indexed(n_max + 1, |n| radial_impl(n, n, q, tol, true))
    } else {
        exec::map_indexed_seq(n_max + 1, |n| radial_impl(n, n, q, tol, false))
    };
    let diag: Vec<RadialElement> = diag.into_iter().collect::<Result<_>>()?;
    let mut elements = Vec::with_capacity((n_max + 1) * (n_max + 1));
    let mut max_deviation: f64 = 0.0;
    for m in 0..=n_max {
        for n in 0..=n_max {
            let (value, abs_err) = if m == n {
                (diag[n].value, diag[n].abs_err)
            } else {
                (Complex64::new(0.0, 0.0), 0.0)
            };
            let target = if m == n { 1.0 } else { 0.0 };
            let deviation = (value - Complex64::new(target, 0.0)).norm();
            max_deviation = max_deviation.max(deviation);
            elements.push(CompletenessElement {
                m,
                n,
                value,
                deviation,
                abs_err,
            });
        }
    }
    Ok(CompletenessReport {
        n_max,
        q: q.get(),
        max_deviation,
        elements,
    })
}
