//! Finite truncations of the shape-invariant operator algebra on the Fock
//! basis `|0⟩…|N⟩`: the q-ladder pair `S±`, the spectral ladder pair `B±`
//! (with `B₊ = √R(a₁)·S₊`), the Hamiltonian, the diagonal remainder operators
//! `R̂_j`, the right inverse of `B₋`, and residual checks of the commutation
//! relations.
//!
//! The Fock action `⟨n+1|S₊|n⟩ = √([n+1]_q)` is the unique positive ladder
//! normalization reproducing the spectrum `E_n − E₀ = R(a₁)[n]_q`; the
//! diagonal convention `⟨n|R̂_j|n⟩ = R(a_{n+1−j})` is the unique one under
//! which the commutation relations hold exactly in this representation.
//! Identity checks exclude the top one or two basis states, where truncated
//! ladder products are structurally wrong; the top-state defect is reported
//! explicitly, never dropped.

use std::collections::BTreeMap;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qspecial::{q_int, QBase};

/// Model parameters: base `q`, scale `a₁`, remainder constant `c` (so that
/// `R(a₁) = c·a₁` and `R(a_k) = c·a₁·q^{k−1}`), truncation level `N`, and the
/// ground-state energy offset `E₀` (0 by default; the algebra only ever sees
/// `Ĥ − E₀`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    q: QBase,
    a1: f64,
    c: f64,
    trunc: usize,
    ground_energy: f64,
}

impl ModelParams {
    pub fn new(q: QBase, a1: f64, c: f64, trunc: usize) -> Result<Self> {
        if !(a1.is_finite() && a1 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "a1 must be positive, got {a1}"
            )));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "c must be positive, got {c}"
            )));
        }
        if trunc < 2 {
            return Err(Error::InvalidParameter(format!(
                "truncation level must be at least 2, got {trunc}"
            )));
        }
        Ok(Self {
            q,
            a1,
            c,
            trunc,
            ground_energy: 0.0,
        })
    }

    pub fn with_ground_energy(mut self, e0: f64) -> Result<Self> {
        if !e0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ground energy must be finite, got {e0}"
            )));
        }
        self.ground_energy = e0;
        Ok(self)
    }

    #[inline]
    pub fn q(&self) -> QBase {
        self.q
    }

    #[inline]
    pub fn a1(&self) -> f64 {
        self.a1
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Truncation level `N` (highest retained basis state).
    #[inline]
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Matrix dimension `N + 1`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.trunc + 1
    }

    #[inline]
    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// `E_n = E₀ + R(a₁)·[n]_q`.
    pub fn energy(&self, n: usize) -> f64 {
        self.ground_energy + r_value(1, self) * q_int(n, self.q)
    }
}

/// Remainder value `R(a_k) = c·a₁·q^{k−1}`; the scaling extends to any
/// integer `k` (e.g. `a₀ = a₁/q`).
pub fn r_value(k: i64, p: &ModelParams) -> f64 {
    p.c * p.a1 * p.q.get().powi(k as i32 - 1)
}

/// Dense complex matrix acting on the truncated Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    mat: Array2<Complex64>,
}

impl TruncatedOperator {
    pub fn new(mat: Array2<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::InvalidParameter(format!(
                "operator matrix must be square, got {}×{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.nrows() < 3 {
            return Err(Error::InvalidParameter(format!(
                "operator dimension must be at least 3, got {}",
                mat.nrows()
            )));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "operator entries must be finite".into(),
            ));
        }
        Ok(Self { mat })
    }

    fn from_unchecked(mat: Array2<Complex64>) -> Self {
        debug_assert!(mat.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        Self { mat }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_unchecked(Array2::zeros((dim, dim)))
    }

    pub fn identity(dim: usize) -> Self {
        let mut mat = Array2::zeros((dim, dim));
        for i in 0..dim {
            mat[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Self::from_unchecked(mat)
    }

    /// Build from an entry function `(row, col) → value`; errors if any
    /// entry is non-finite or the dimension is below 3.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        Self::new(Array2::from_shape_fn((dim, dim), |(i, j)| f(i, j)))
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut mat = Array2::zeros((diag.len(), diag.len()));
        for (i, &d) in diag.iter().enumerate() {
            mat[(i, i)] = Complex64::new(d, 0.0);
        }
        Self::from_unchecked(mat)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    #[inline]
    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Array2::zeros((self.dim(), self.dim()));
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out[(j, i)] = self.mat[(i, j)].conj();
            }
        }
        Self::from_unchecked(out)
    }

    pub fn dot(&self, other: &Self) -> Self {
        Self::from_unchecked(self.mat.dot(&other.mat))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::from_unchecked(self.mat.mapv(|z| z * factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_unchecked(&self.mat + &other.mat)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_unchecked(&self.mat - &other.mat)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.dot(other).sub(&other.dot(self))
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector::from_unchecked(self.mat.dot(&v.amps))
    }

    /// Largest entry magnitude over the whole matrix.
    pub fn max_abs(&self) -> f64 {
        self.mat.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// Largest entry magnitude over rows and columns `0..=limit`.
    pub fn max_abs_upto(&self, limit: usize) -> f64 {
        let k = limit.min(self.dim() - 1);
        let mut acc: f64 = 0.0;
        for i in 0..=k {
            for j in 0..=k {
                acc = acc.max(self.mat[(i, j)].norm());
            }
        }
        acc
    }

    pub fn is_hermitian_exactly(&self) -> bool {
        let adj = self.adjoint();
        self.mat == adj.mat
    }
}

/// Complex amplitudes over the truncated Fock basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    amps: Array1<Complex64>,
}

impl FockVector {
    pub fn new(amps: Array1<Complex64>) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "state amplitudes must be finite".into(),
            ));
        }
        Ok(Self { amps })
    }

    pub(crate) fn from_unchecked(amps: Array1<Complex64>) -> Self {
        Self { amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        Self::new(Array1::from_vec(amps))
    }

    /// Basis state `|n⟩` in a `dim`-dimensional truncation.
    pub fn basis(dim: usize, n: usize) -> Self {
        assert!(n < dim, "basis index {n} outside dimension {dim}");
        let mut amps = Array1::zeros(dim);
        amps[n] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    #[inline]
    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amps
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self | other⟩` with the physics convention (conjugate-linear in the
    /// first slot).
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::from_unchecked(self.amps.mapv(|z| z * factor))
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "cannot normalize a state of norm {n}"
            )));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }
}

/// q-ladder pair: `⟨n+1|S₊|n⟩ = √([n+1]_q)` and `S₋ = S₊†`.
pub fn ladder_q(p: &ModelParams) -> (TruncatedOperator, TruncatedOperator) {
    let dim = p.dim();
    let mut mat = Array2::zeros((dim, dim));
    for n in 0..p.trunc {
        mat[(n + 1, n)] = Complex64::new(q_int(n + 1, p.q).sqrt(), 0.0);
    }
    let s_plus = TruncatedOperator::from_unchecked(mat);
    let s_minus = s_plus.adjoint();
    (s_plus, s_minus)
}

/// Spectral ladder pair: `B₊ = √(R(a₁))·S₊`, i.e.
/// `⟨n+1|B₊|n⟩ = √(E_{n+1} − E₀)`, and `B₋ = B₊†`.
pub fn ladder_spectral(p: &ModelParams) -> (TruncatedOperator, TruncatedOperator) {
    let dim = p.dim();
    let r1 = r_value(1, p);
    let mut mat = Array2::zeros((dim, dim));
    for n in 0..p.trunc {
        mat[(n + 1, n)] = Complex64::new((r1 * q_int(n + 1, p.q)).sqrt(), 0.0);
    }
    let b_plus = TruncatedOperator::from_unchecked(mat);
    let b_minus = b_plus.adjoint();
    (b_plus, b_minus)
}

/// Hamiltonian: diagonal with entries `E₀ + R(a₁)·(1−qⁿ)/(1−q)`; equals
/// `E₀·1 + B₊B₋` on every retained basis state.
pub fn hamiltonian(p: &ModelParams) -> TruncatedOperator {
    let diag: Vec<f64> = (0..p.dim()).map(|n| p.energy(n)).collect();
    TruncatedOperator::from_real_diag(&diag)
}

/// Diagonal remainder operator `R̂_j` with `⟨n|R̂_j|n⟩ = R(a_{n+1−j})`.
pub fn r_operator(j: i64, p: &ModelParams) -> TruncatedOperator {
    let diag: Vec<f64> = (0..p.dim()).map(|n| r_value(n as i64 + 1 - j, p)).collect();
    TruncatedOperator::from_real_diag(&diag)
}

/// Right inverse of `B₋`: `⟨n+1|B₋⁻¹|n⟩ = 1/√(E_{n+1} − E₀)`, so that
/// `B₋·B₋⁻¹ = 1` on basis states `0…N−1`.
pub fn b_minus_inverse(p: &ModelParams) -> TruncatedOperator {
    let dim = p.dim();
    let r1 = r_value(1, p);
    let mut mat = Array2::zeros((dim, dim));
    for n in 0..p.trunc {
        mat[(n + 1, n)] = Complex64::new(1.0 / (r1 * q_int(n + 1, p.q)).sqrt(), 0.0);
    }
    TruncatedOperator::from_unchecked(mat)
}

/// Scale-normalized residuals of the algebra's defining relations, restricted
/// to interior basis indices where truncation cannot reach, plus the explicit
/// top-state defect of the q-ladder relation.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    /// Named residuals, each `‖lhs − rhs‖_max / max(1, ‖lhs‖_max, ‖rhs‖_max)`
    /// over the interior block.
    pub residuals: BTreeMap<&'static str, f64>,
    /// `|⟨N|(S₋S₊ − qS₊S₋ − 1)|N⟩|`: the truncation artifact on the top
    /// state, equal to `1 + q·[N]_q = [N+1]_q`.
    pub top_state_defect: f64,
}

impl ResidualReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &b| a.max(b))
    }
}

fn relative_residual(lhs: &TruncatedOperator, rhs: &TruncatedOperator, limit: usize) -> f64 {
    let scale = lhs
        .max_abs_upto(limit)
        .max(rhs.max_abs_upto(limit))
        .max(1.0);
    lhs.sub(rhs).max_abs_upto(limit) / scale
}

/// Residuals of the q-ladder relation `S₋S₊ − qS₊S₋ = 1`, the ladder
/// commutator `[B₋,B₊] = R̂₀`, the remainder commutator
/// `[B₊,R̂₀] = (R̂₁−R̂₀)B₊`, the double commutator
/// `[B₊,(R̂₁−R̂₀)B₊] = ((R̂₂−R̂₁)−(R̂₁−R̂₀))B₊²`, and the Hermitian
/// conjugates of the last two. Interior block: indices `0…N−2`
/// (`0…N−3` for the double commutator).
pub fn commutator_residuals(p: &ModelParams) -> ResidualReport {
    assert!(p.trunc >= 4, "commutator residuals require N >= 4");
    let n = p.trunc;
    let q = Complex64::new(p.q.get(), 0.0);
    let (s_plus, s_minus) = ladder_q(p);
    let (b_plus, b_minus) = ladder_spectral(p);
    let one = TruncatedOperator::identity(p.dim());
    let r0 = r_operator(0, p);
    let r1 = r_operator(1, p);
    let r2 = r_operator(2, p);

    let mut residuals = BTreeMap::new();

    // (i) S₋S₊ − qS₊S₋ = 1
    let lhs = s_minus.dot(&s_plus).sub(&s_plus.dot(&s_minus).scaled(q));
    residuals.insert("q_ladder_relation", relative_residual(&lhs, &one, n - 2));
    let defect_op = lhs.sub(&one);
    let top_state_defect = defect_op.get(n, n).norm();

    // (ii) [B₋,B₊] = R̂₀
    let lhs = b_minus.commutator(&b_plus);
    residuals.insert("b_commutator", relative_residual(&lhs, &r0, n - 2));

    // (iii) [B₊,R̂₀] = (R̂₁−R̂₀)B₊
    let d10 = r1.sub(&r0);
    let lhs3 = b_plus.commutator(&r0);
    let rhs3 = d10.dot(&b_plus);
    residuals.insert("r0_commutator", relative_residual(&lhs3, &rhs3, n - 2));

    // (iv) [B₊,(R̂₁−R̂₀)B₊] = ((R̂₂−R̂₁)−(R̂₁−R̂₀))B₊²
    let d21 = r2.sub(&r1);
    let gap = d21.sub(&d10);
    let lhs4 = b_plus.commutator(&d10.dot(&b_plus));
    let rhs4 = gap.dot(&b_plus.dot(&b_plus));
    residuals.insert("double_commutator", relative_residual(&lhs4, &rhs4, n - 3));

    // (v) Hermitian conjugates of (iii) and (iv), built from scratch
    let conj3 = relative_residual(&r0.commutator(&b_minus), &b_minus.dot(&d10), n - 2);
    let conj4 = relative_residual(
        &b_minus.dot(&d10).commutator(&b_minus),
        &b_minus.dot(&b_minus).dot(&gap),
        n - 3,
    );
    residuals.insert("hermitian_conjugates", conj3.max(conj4));

    ResidualReport {
        residuals,
        top_state_defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(q: f64, a1: f64, c: f64, n: usize) -> ModelParams {
        ModelParams::new(QBase::new(q).unwrap(), a1, c, n).unwrap()
    }

    #[test]
    fn model_params_validation() {
        assert!(ModelParams::new(QBase::new(0.5).unwrap(), 0.0, 1.0, 8).is_err());
        assert!(ModelParams::new(QBase::new(0.5).unwrap(), 1.0, -1.0, 8).is_err());
        assert!(ModelParams::new(QBase::new(0.5).unwrap(), 1.0, 1.0, 1).is_err());
        assert!(ModelParams::new(QBase::new(0.5).unwrap(), 1.0, 1.0, 2).is_ok());
    }

    #[test]
    fn r_value_examples() {
        let p = params(0.5, 1.0, 1.0, 8);
        assert_relative_eq!(r_value(1, &p), 1.0, max_relative = 1e-15);
        assert_relative_eq!(r_value(3, &p), 0.25, max_relative = 1e-15);
        assert_relative_eq!(r_value(0, &p), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn ladder_q_examples() {
        let p = params(0.5, 1.0, 1.0, 8);
        let (s_plus, s_minus) = ladder_q(&p);
        assert_relative_eq!(s_plus.get(1, 0).re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(s_plus.get(2, 1).re, 1.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(s_plus.get(3, 2).re, 1.75f64.sqrt(), max_relative = 1e-15);
        assert_eq!(s_minus, s_plus.adjoint());
    }

    #[test]
    fn ladder_spectral_examples() {
        let p = params(0.5, 1.0, 1.0, 8);
        let (b_plus, _) = ladder_spectral(&p);
        assert_relative_eq!(b_plus.get(1, 0).re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(b_plus.get(2, 1).re, 1.5f64.sqrt(), max_relative = 1e-15);
        let p2 = params(0.5, 1.0, 2.0, 8);
        let (b_plus2, _) = ladder_spectral(&p2);
        assert_relative_eq!(b_plus2.get(1, 0).re, 2f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn hamiltonian_is_diagonal_spectrum() {
        let p = params(0.5, 1.0, 1.0, 8);
        let h = hamiltonian(&p);
        assert_eq!(h.get(0, 0).re, 0.0);
        assert_relative_eq!(h.get(2, 2).re, 1.5, max_relative = 1e-15);
        let bound = p.ground_energy() + r_value(1, &p) / (1.0 - 0.5);
        for n in 0..=p.trunc() {
            assert!(h.get(n, n).re < bound);
        }
        assert!(h.is_hermitian_exactly());
        // Ĥ = E₀·1 + B₊B₋ on every retained basis state
        let (b_plus, b_minus) = ladder_spectral(&p);
        let built = b_plus.dot(&b_minus);
        for n in 0..=p.trunc() {
            assert_relative_eq!(built.get(n, n).re, h.get(n, n).re, epsilon = 1e-14);
        }
    }

    #[test]
    fn hamiltonian_with_offset() {
        let p = params(0.5, 1.0, 1.0, 6).with_ground_energy(2.5).unwrap();
        let h = hamiltonian(&p);
        assert_relative_eq!(h.get(0, 0).re, 2.5, max_relative = 1e-15);
        assert_relative_eq!(h.get(1, 1).re, 3.5, max_relative = 1e-15);
    }

    #[test]
    fn r_operator_examples() {
        let p = params(0.5, 1.0, 1.0, 8);
        let r0 = r_operator(0, &p);
        assert_relative_eq!(r0.get(0, 0).re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(r0.get(1, 1).re, 0.5, max_relative = 1e-15);
        assert_relative_eq!(r0.get(2, 2).re, 0.25, max_relative = 1e-15);
        let r1 = r_operator(1, &p);
        assert_relative_eq!(r1.get(0, 0).re, 2.0, max_relative = 1e-15);
        assert_relative_eq!(r1.get(1, 1).re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(r1.get(2, 2).re, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn residuals_vanish_on_interior() {
        let report = commutator_residuals(&params(0.5, 1.0, 1.0, 12));
        for (name, res) in &report.residuals {
            assert!(*res <= 1e-12, "{name}: {res:.3e}");
        }
        let report = commutator_residuals(&params(0.9, 0.7, 2.0, 20));
        for (name, res) in &report.residuals {
            assert!(*res <= 1e-12, "{name}: {res:.3e}");
        }
    }

    #[test]
    fn top_state_defect_matches_derivation() {
        // ⟨N|S₋S₊|N⟩ is truncated to zero, so the defect is 1 + q·[N]_q.
        for &(q, n) in &[(0.5, 12usize), (0.9, 20), (0.3, 8)] {
            let p = params(q, 1.0, 1.0, n);
            let report = commutator_residuals(&p);
            let expected = 1.0 + q * q_int(n, p.q());
            assert_relative_eq!(report.top_state_defect, expected, max_relative = 1e-13);
            assert!(report.top_state_defect > 0.0);
        }
    }

    #[test]
    fn residuals_for_random_parameter_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x51ab_11ce);
        for _ in 0..10 {
            let q = rng.random_range(0.05..0.95);
            let c = rng.random_range(0.1..10.0);
            let a1 = rng.random_range(0.1..10.0);
            let n = [8, 16, 32][rng.random_range(0..3)];
            let report = commutator_residuals(&params(q, a1, c, n));
            assert!(
                report.max_residual() <= 1e-12,
                "q={q}, c={c}, a1={a1}, N={n}: {:?}",
                report.residuals
            );
        }
    }

    #[test]
    fn spectrum_of_ladder_product_matches_energies() {
        let p = params(0.7, 1.3, 0.8, 16);
        let (b_plus, b_minus) = ladder_spectral(&p);
        let prod = b_plus.dot(&b_minus);
        for n in 0..=p.trunc() {
            let expected = p.energy(n) - p.ground_energy();
            let got = prod.get(n, n).re;
            if expected == 0.0 {
                assert_eq!(got, 0.0);
            } else {
                assert_relative_eq!(got, expected, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn near_classical_limit_matches_ordinary_oscillator() {
        let p = params(1.0 - 1e-8, 1.0, 1.0, 12);
        let (s_plus, _) = ladder_q(&p);
        for n in 0..=10usize {
            let got = s_plus.get(n + 1, n).re;
            let classical = ((n + 1) as f64).sqrt();
            assert!((got - classical).abs() <= 1e-3 * classical);
        }
    }

    #[test]
    fn right_inverse_holds_below_top_row() {
        let p = params(0.5, 1.0, 1.0, 8);
        let b_inv = b_minus_inverse(&p);
        assert_relative_eq!(b_inv.get(1, 0).re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            b_inv.get(2, 1).re,
            1.0 / 1.5f64.sqrt(),
            max_relative = 1e-12
        );
        let (_, b_minus) = ladder_spectral(&p);
        let prod = b_minus.dot(&b_inv);
        let one = TruncatedOperator::identity(p.dim());
        assert!(prod.sub(&one).max_abs_upto(p.trunc() - 1) <= 1e-13);
        // B₋B₋⁻¹|3⟩ = |3⟩ exactly
        let v = FockVector::basis(p.dim(), 3);
        let back = prod.apply(&v);
        assert!((back.get(3) - Complex64::new(1.0, 0.0)).norm() <= 1e-14);
    }

    #[test]
    fn operator_and_vector_validation() {
        let bad = Array2::from_elem((2, 2), Complex64::new(1.0, 0.0));
        assert!(TruncatedOperator::new(bad).is_err());
        let nan = Array2::from_elem((4, 4), Complex64::new(f64::NAN, 0.0));
        assert!(TruncatedOperator::new(nan).is_err());
        assert!(FockVector::from_amplitudes(vec![Complex64::new(f64::INFINITY, 0.0)]).is_err());
        let v = FockVector::from_amplitudes(vec![Complex64::new(0.0, 0.0)]).unwrap();
        assert!(v.normalized().is_err());
    }
}
