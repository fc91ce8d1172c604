//! Adaptive quadrature for positive integrands on `[0, ∞)` whose decay is
//! super-polynomial but slower than exponential, and the numerical Ramanujan
//! moments `∫₀^∞ tⁿ/(−t;q)_∞ dt` built on it.
//!
//! The weight `1/(−t;q)_∞` falls off like `exp(−(log t)²/(2 log(1/q)))`, so a
//! fixed cutoff rule in `t` is misleading. The engine substitutes
//! `u = log(1+t)`, where that shape becomes a Gaussian-like bump, and runs
//! panel-adaptive Gauss–Kronrod (G7/K15) bisection on the finite `u` interval.
//! Panels within a refinement sweep are independent and are evaluated through
//! the data-parallel layer; the final sum is assembled in interval order, so
//! results are bit-identical between the parallel and sequential paths.

use crate::error::{Error, Result};
use crate::exec;
use crate::qspecial::{self, Kahan, QBase};

/// Result of a quadrature run: the value, an honest absolute-error bound
/// (panel Gauss/Kronrod discrepancies plus the cutoff tail bound), and the
/// number of integrand evaluations spent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub abs_err: f64,
    pub evaluations: usize,
}

/// Tuning knobs for [`integrate_decaying_with`].
#[derive(Clone, Copy, Debug)]
pub struct DecayingOpts {
    /// Starting point for the upper-cutoff search; set near the integrand
    /// peak when it is known (the moment integrands peak near `q^{−n}`).
    pub cutoff_hint: Option<f64>,
    /// Explicit upper cutoff in `t`; skips the search entirely.
    pub cutoff: Option<f64>,
    /// Uniform panels in the first sweep.
    pub initial_panels: usize,
    /// Refinement stops (with `ToleranceNotMet`) once this many panels exist.
    pub max_panels: usize,
}

impl Default for DecayingOpts {
    fn default() -> Self {
        Self {
            cutoff_hint: None,
            cutoff: None,
            initial_panels: 32,
            max_panels: 16_384,
        }
    }
}

// 15-point Kronrod abscissae (positive half) with the embedded 7-point Gauss
// rule at the odd indices; standard QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// G7/K15 on `[a, b]`; `err` is the Gauss/Kronrod discrepancy.
fn eval_panel<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_g = WG[3] * fc;
    let mut res_k = WGK[7] * fc;
    for j in 0..3 {
        let idx = 2 * j + 1;
        let dx = half * XGK[idx];
        let fsum = f(center - dx)? + f(center + dx)?;
        res_g += WG[j] * fsum;
        res_k += WGK[idx] * fsum;
    }
    for j in 0..4 {
        let idx = 2 * j;
        let dx = half * XGK[idx];
        let fsum = f(center - dx)? + f(center + dx)?;
        res_k += WGK[idx] * fsum;
    }
    Ok(Panel {
        a,
        b,
        value: res_k * half,
        err: (res_k - res_g).abs() * half,
    })
}

fn finite_or_domain_error(v: f64, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidDomain(format!(
            "integrand evaluated to {v} at t = {t:e}"
        )))
    }
}

/// Upper cutoff search: double `t` from the hint until `g(T)·T` drops below
/// `tol/10` times the running magnitude scale and `g·t²` is decreasing (the
/// super-polynomial-decay regime, where `g(T)·T` bounds the discarded tail).
///
/// Returns `(T, scale, evaluations)`; `scale` is the largest probed `g(t)·t`,
/// a cheap lower bound for the integral's magnitude.
fn choose_cutoff<F>(g: &F, tol: f64, hint: f64) -> Result<(f64, f64, usize)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut scale: f64 = 0.0;
    let mut evals = 0usize;
    // a few probes below the hint pick up the peak when the hint overshoots
    let start = hint.max(1e-3);
    let mut s = start;
    for _ in 0..8 {
        s *= 0.25;
        evals += 1;
        scale = scale.max(g(s)?.abs() * s);
    }
    let mut t = start;
    evals += 1;
    let mut gt = g(t)?;
    scale = scale.max(gt.abs() * t);
    for _ in 0..1100 {
        let t2 = 2.0 * t;
        evals += 1;
        let gt2 = g(t2)?;
        scale = scale.max(gt2.abs() * t2);
        let tail_small = gt.abs() * t < 0.1 * tol * scale.max(1.0);
        let decaying = gt2.abs() * t2 * t2 <= gt.abs() * t * t;
        if tail_small && decaying {
            return Ok((t, scale, evals));
        }
        t = t2;
        gt = gt2;
    }
    Err(Error::InvalidDomain(
        "integrand does not decay within the cutoff search range".into(),
    ))
}

/// Integrate a positive, continuous, super-polynomially decaying `g` over
/// `[0, ∞)` to absolute tolerance `tol` (interpreted relative to the
/// integral's magnitude when that magnitude exceeds 1).
pub fn integrate_decaying<F>(g: F, tol: f64) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    integrate_decaying_with(g, tol, &DecayingOpts::default())
}

/// [`integrate_decaying`] with explicit tuning options.
pub fn integrate_decaying_with<F>(g: F, tol: f64, opts: &DecayingOpts) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    integrate_impl(&g, tol, opts, true)
}

/// Sequential reference path; bit-identical to [`integrate_decaying_with`].
pub fn integrate_decaying_seq<F>(g: F, tol: f64, opts: &DecayingOpts) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    integrate_impl(&g, tol, opts, false)
}

fn integrate_impl<F>(
    g: &F,
    tol: f64,
    opts: &DecayingOpts,
    parallel: bool,
) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive and finite, got {tol}"
        )));
    }
    let checked = |t: f64| -> Result<f64> { finite_or_domain_error(g(t), t) };

    let mut evals = 0usize;
    let (cutoff, mut scale) = match opts.cutoff {
        Some(t) => {
            if !(t > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "explicit cutoff must be positive, got {t}"
                )));
            }
            (t, 0.0)
        }
        None => {
            let (t, s, e) = choose_cutoff(&checked, tol, opts.cutoff_hint.unwrap_or(1.0))?;
            evals += e;
            (t, s)
        }
    };
    let tail_bound = checked(cutoff)? * cutoff;
    evals += 1;

    // integrand in u = log(1+t): g(eᵘ − 1) eᵘ on [0, log(1+T)]
    let upper = cutoff.ln_1p();
    let in_u = |u: f64| -> Result<f64> {
        let t = u.exp_m1();
        Ok(checked(t)? * u.exp())
    };

    let n0 = opts.initial_panels.max(2);
    let first: Vec<Result<Panel>> = exec_map(parallel, n0, |i| {
        let a = upper * i as f64 / n0 as f64;
        let b = upper * (i + 1) as f64 / n0 as f64;
        eval_panel(&in_u, a, b)
    });
    let mut panels = collect_panels(first)?;
    evals += 15 * n0;

    loop {
        let mut total = Kahan::default();
        let mut err_sum = Kahan::default();
        for p in &panels {
            total.add(p.value);
            err_sum.add(p.err);
        }
        scale = scale.max(total.value().abs());
        let eff_tol = tol * scale.max(1.0);
        let estimate = QuadratureEstimate {
            value: total.value(),
            abs_err: err_sum.value() + tail_bound.abs(),
            evaluations: evals,
        };
        if err_sum.value() <= eff_tol {
            return Ok(estimate);
        }
        if panels.len() >= opts.max_panels {
            return Err(Error::ToleranceNotMet {
                estimate,
                requested: eff_tol,
            });
        }
        // bisect every panel carrying more than its share of the budget
        let threshold = 0.5 * eff_tol / panels.len() as f64;
        let mut children: Vec<(f64, f64)> = Vec::new();
        let mut keep: Vec<Panel> = Vec::new();
        for p in &panels {
            if p.err > threshold {
                let mid = 0.5 * (p.a + p.b);
                children.push((p.a, mid));
                children.push((mid, p.b));
            } else {
                keep.push(*p);
            }
        }
        let refined: Vec<Result<Panel>> = exec_map(parallel, children.len(), |i| {
            let (a, b) = children[i];
            eval_panel(&in_u, a, b)
        });
        evals += 15 * children.len();
        keep.extend(collect_panels(refined)?);
        keep.sort_by(|x, y| x.a.total_cmp(&y.a));
        panels = keep;
    }
}

fn exec_map<T, F>(parallel: bool, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallel {
        exec::map_indexed(len, f)
    } else {
        exec::map_indexed_seq(len, f)
    }
}

fn collect_panels(results: Vec<Result<Panel>>) -> Result<Vec<Panel>> {
    results.into_iter().collect()
}

/// Numerical Ramanujan moment `∫₀^∞ tⁿ/(−t;q)_∞ dt`.
///
/// The integrand peaks near `t ≈ q^{−n}`, which seeds the cutoff search. The
/// tolerance is scale-relative for large moments (they reach ~10²⁸ already at
/// `q = 0.3`, `n = 10`, where a fixed absolute tolerance would be
/// meaningless in f64).
pub fn ramanujan_moment_numeric(n: usize, q: QBase, tol: f64) -> Result<QuadratureEstimate> {
    moment_impl(n, q, tol, true)
}

/// Sequential reference path; bit-identical to [`ramanujan_moment_numeric`].
pub fn ramanujan_moment_numeric_seq(n: usize, q: QBase, tol: f64) -> Result<QuadratureEstimate> {
    moment_impl(n, q, tol, false)
}

fn moment_impl(n: usize, q: QBase, tol: f64, parallel: bool) -> Result<QuadratureEstimate> {
    let qv = q.get();
    let integrand = move |t: f64| -> f64 {
        let denom = qspecial::poch_inf_neg_real(t, qv, 1e-13);
        assert!(denom > 0.0, "(−t;q)_∞ must be positive at t = {t}");
        t.powi(n as i32) / denom
    };
    let opts = DecayingOpts {
        cutoff_hint: Some(qv.powi(-(n as i32)).max(1.0)),
        ..DecayingOpts::default()
    };
    if parallel {
        integrate_decaying_with(integrand, tol, &opts)
    } else {
        integrate_decaying_seq(integrand, tol, &opts)
    }
}
