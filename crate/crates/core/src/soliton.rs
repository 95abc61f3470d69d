//! The one-soliton scalar potential and its elementary solutions.
//!
//! Seed problem: the free particle `S₀ = 0`. Its eigenspinors
//! `u⁽¹⁾ = (cosh(γx − α), cosh(γx + α))ᵗ` at `E = λ` and `u⁽²⁾ = −σ_z u⁽¹⁾` at
//! `E = −λ`, with `λ = sqrt(m² − γ²)` and `e^{2α} = sqrt((m − γ)/(m + γ))`,
//! generate the reflectionless potential
//!
//! ```text
//! S₁(x) = −2γ² / (m + λ cosh 2γx)
//! ```
//!
//! The σ_z form `(m + S) σ_z` of the same potential is related to the σ_x form
//! used here by `U = (1 + iσ_y)/√2`; only the σ_x form is implemented.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spinor::{ScalarPotential, Spinor, SpinorField};

/// Default guard on `|E² − m²|` (and the other degenerate energies).
pub const DEGENERACY_EPSILON: f64 = 1e-9;

/// Physical parameters `(m, γ, a)` of the periodized soliton lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams<T> {
    mass: T,
    gamma: T,
    half_period: T,
    #[serde(skip)]
    alpha_scale: Option<T>,
}

impl<T: Real> ModelParams<T> {
    pub fn new(mass: T, gamma: T, half_period: T) -> Result<Self> {
        if !(mass.is_finite() && mass > T::zero()) {
            return Err(Error::InvalidParams(format!(
                "mass must be positive and finite, got {mass}"
            )));
        }
        if !(gamma.is_finite() && gamma > T::zero() && gamma < mass) {
            return Err(Error::InvalidParams(format!(
                "gamma must satisfy 0 < gamma < mass = {mass}, got {gamma}"
            )));
        }
        if !(half_period.is_finite() && half_period > T::zero()) {
            return Err(Error::InvalidParams(format!(
                "half-period must be positive and finite, got {half_period}"
            )));
        }
        Ok(Self {
            mass,
            gamma,
            half_period,
            alpha_scale: None,
        })
    }

    /// Builds the parameters from the bound-state energy `λ` instead of `γ`.
    pub fn from_lambda(mass: T, lambda: T, half_period: T) -> Result<Self> {
        if !(lambda.is_finite() && lambda > T::zero() && lambda < mass) {
            return Err(Error::InvalidParams(format!(
                "lambda must satisfy 0 < lambda < mass = {mass}, got {lambda}"
            )));
        }
        let gamma = ((mass - lambda) * (mass + lambda)).sqrt();
        Self::new(mass, gamma, half_period)
    }

    /// `m = 2, λ = 1, a = 1`, the lattice whose band edges are tabulated in
    /// [`crate::bands::REFERENCE_EDGES`].
    pub fn reference() -> Self {
        Self::from_lambda(T::two(), T::one(), T::one()).expect("reference parameters are valid")
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn half_period(&self) -> T {
        self.half_period
    }

    pub fn period(&self) -> T {
        self.half_period + self.half_period
    }

    /// `λ = sqrt(m² − γ²)`, the bound-state energy of the single soliton.
    pub fn lambda(&self) -> T {
        ((self.mass - self.gamma) * (self.mass + self.gamma)).sqrt()
    }

    /// `α = ¼ ln((m − γ)/(m + γ))` (negative for every admissible γ).
    pub fn alpha(&self) -> T {
        let alpha = ((self.mass - self.gamma) / (self.mass + self.gamma)).ln() * T::lit(0.25);
        match self.alpha_scale {
            Some(s) => alpha * s,
            None => alpha,
        }
    }

    /// Replaces `α` by `factor · α` in the seed spinors and `w` functions
    /// while leaving `S₁` untouched. Sensitivity hook for the verification
    /// suite; the resulting model is inconsistent on purpose.
    #[doc(hidden)]
    pub fn with_alpha_scaled(mut self, factor: T) -> Self {
        self.alpha_scale = Some(factor);
        self
    }

    #[doc(hidden)]
    pub fn alpha_scale(&self) -> Option<T> {
        self.alpha_scale
    }
}

/// Propagating (`|E| > m`), evanescent (`|E| < m`) or at threshold `|E| = m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Propagating,
    Evanescent,
    Threshold,
}

impl Regime {
    pub fn classify<T: Real>(mass: T, energy: T) -> Self {
        let diff = (energy - mass) * (energy + mass);
        if diff.abs() < T::tol(DEGENERACY_EPSILON) {
            Regime::Threshold
        } else if diff > T::zero() {
            Regime::Propagating
        } else {
            Regime::Evanescent
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Propagating => "propagating",
            Regime::Evanescent => "evanescent",
            Regime::Threshold => "threshold",
        }
    }
}

/// Energy together with its complex momentum `k = sqrt(E² − m²)`, `Im k ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    energy: T,
    mass: T,
    k: Complex<T>,
}

impl<T: Real> Kinematics<T> {
    pub fn new(params: &ModelParams<T>, energy: T) -> Self {
        let mass = params.mass();
        let k2 = (energy - mass) * (energy + mass);
        let k = Complex::new(k2, T::zero()).sqrt();
        Self { energy, mass, k }
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn k(&self) -> Complex<T> {
        self.k
    }

    /// `E² − m²` computed without cancellation.
    pub fn k_squared(&self) -> T {
        (self.energy - self.mass) * (self.energy + self.mass)
    }

    /// Phase with `cos δ = m/E`, `sin δ = k/E`.
    ///
    /// Equals `arctan(k/m)` for `E > 0`; for `E < 0` it is shifted by `π`,
    /// which is what keeps the solutions valid on the negative spectrum.
    /// Undefined at `E = 0`.
    pub fn delta(&self) -> Option<Complex<T>> {
        if self.energy == T::zero() {
            return None;
        }
        let i = Complex::new(T::zero(), T::one());
        let z = (Complex::new(self.mass, T::zero()) + i * self.k) / self.energy;
        Some(-i * z.ln())
    }

    pub fn regime(&self) -> Regime {
        Regime::classify(self.mass, self.energy)
    }
}

/// `S₁(x) = −2γ²/(m + λ cosh 2γx)`.
pub fn potential_s1<T: Real>(params: &ModelParams<T>, x: T) -> T {
    let g = params.gamma();
    -(g * g + g * g) / (params.mass() + params.lambda() * (T::two() * g * x).cosh())
}

/// `(w₁(x), w₂(x)) = (γ tanh(γx − α), γ tanh(γx + α))`, the logarithmic
/// derivatives of the seed components.
pub fn w_functions<T: Real>(params: &ModelParams<T>, x: T) -> (T, T) {
    let g = params.gamma();
    let alpha = params.alpha();
    (g * (g * x - alpha).tanh(), g * (g * x + alpha).tanh())
}

/// The non-periodic soliton potential as a [`ScalarPotential`].
#[derive(Debug, Clone, Copy)]
pub struct SolitonPotential<T> {
    pub params: ModelParams<T>,
}

impl<T: Real> SolitonPotential<T> {
    pub fn new(params: ModelParams<T>) -> Self {
        Self { params }
    }
}

impl<T: Real> ScalarPotential<T> for SolitonPotential<T> {
    fn value(&self, x: T) -> T {
        potential_s1(&self.params, x)
    }
    fn label(&self) -> String {
        format!(
            "one-soliton S1 (m = {}, gamma = {})",
            self.params.mass(),
            self.params.gamma()
        )
    }
}

fn check_energy<T: Real>(params: &ModelParams<T>, energy: T, eps: T) -> Result<()> {
    let m = params.mass();
    let l = params.lambda();
    if ((energy - m) * (energy + m)).abs() < eps {
        return Err(Error::DegenerateEnergy {
            energy: energy.as_f64(),
            reason: "k = 0 at |E| = m",
        });
    }
    if ((energy - l) * (energy + l)).abs() < eps {
        return Err(Error::DegenerateEnergy {
            energy: energy.as_f64(),
            reason: "k² + γ² = 0 at the bound-state energy |E| = λ",
        });
    }
    if energy.abs() < eps {
        return Err(Error::DegenerateEnergy {
            energy: energy.as_f64(),
            reason: "the normalization of φ̃ diverges at E = 0",
        });
    }
    Ok(())
}

fn basis_unchecked<T: Real>(params: &ModelParams<T>, kin: &Kinematics<T>, x: T) -> (Spinor<T>, Spinor<T>) {
    let c = |v: T| Complex::new(v, T::zero());
    let m = c(params.mass());
    let e = c(kin.energy());
    let k = kin.k();
    let (w1, w2) = w_functions(params, x);
    let (w1, w2) = (c(w1), c(w2));
    let l = params.lambda();
    let norm = c((kin.energy() - l) * (kin.energy() + l)).sqrt();

    let kx = k * x;
    let cos = kx.cos();
    let sin = kx.sin();
    // E·cos(kx − δ) and E·sin(kx − δ) split over e^{±ikx}. The coefficients
    // m ∓ ik multiply to E², so the small one is taken from the large one;
    // summing m·cos + k·sin directly cancels badly when |E| ≪ m and |kx| ≫ 1.
    let i = Complex::new(T::zero(), T::one());
    let (mut up, mut down) = (m - i * k, m + i * k);
    if up.norm() < down.norm() {
        up = e * e / down;
    } else {
        down = e * e / up;
    }
    let (ep, em) = ((i * kx).exp(), (-i * kx).exp());
    let e_cos = (up * ep + down * em) * T::half();
    let e_sin = -i * (up * ep - down * em) * T::half();

    let psi = Spinor::new(e * (cos - w1 * sin / k) / norm, (e_cos - w2 * e_sin / k) / norm);
    let phi = Spinor::new(-(k * sin + w1 * cos) / norm, -(k * e_sin + w2 * e_cos) / (norm * e));
    (psi, phi)
}

/// Closed-form basis `(ψ̃(x), φ̃(x))` of the soliton problem at the energy
/// carried by `kin`, normalized to `W(ψ̃, φ̃) = 1`.
///
/// Evaluated in complex arithmetic on the fixed branch of `k`, so the same
/// expressions serve the evanescent regime. Fails with
/// [`Error::DegenerateEnergy`] at `|E| = m`, `|E| = λ` and `E = 0`.
pub fn basis_spinors<T: Real>(params: &ModelParams<T>, kin: &Kinematics<T>, x: T) -> Result<(Spinor<T>, Spinor<T>)> {
    basis_spinors_with_epsilon(params, kin, x, T::tol(DEGENERACY_EPSILON))
}

pub fn basis_spinors_with_epsilon<T: Real>(
    params: &ModelParams<T>,
    kin: &Kinematics<T>,
    x: T,
    eps: T,
) -> Result<(Spinor<T>, Spinor<T>)> {
    check_energy(params, kin.energy(), eps)?;
    Ok(basis_unchecked(params, kin, x))
}

/// Selects `ψ̃` or `φ̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Psi,
    Phi,
}

/// One member of the closed-form basis viewed as a field over `x`.
#[derive(Debug, Clone, Copy)]
pub struct BasisField<T> {
    params: ModelParams<T>,
    kin: Kinematics<T>,
    kind: BasisKind,
}

impl<T: Real> BasisField<T> {
    pub fn new(params: ModelParams<T>, energy: T, kind: BasisKind) -> Result<Self> {
        check_energy(&params, energy, T::tol(DEGENERACY_EPSILON))?;
        Ok(Self {
            params,
            kin: Kinematics::new(&params, energy),
            kind,
        })
    }
}

impl<T: Real> SpinorField<T> for BasisField<T> {
    fn energy(&self) -> T {
        self.kin.energy()
    }

    fn value(&self, x: T) -> Spinor<T> {
        let (psi, phi) = basis_unchecked(&self.params, &self.kin, x);
        match self.kind {
            BasisKind::Psi => psi,
            BasisKind::Phi => phi,
        }
    }
}

/// Columns of `(uᵗ(x))⁻¹`: the bound states of `S₁` at `E = +λ` and `E = −λ`.
///
/// With `c∓ = cosh(γx ∓ α)` they are `(1/2c₋, 1/2c₊)` and `(−1/2c₋, 1/2c₊)`.
pub fn bound_states<T: Real>(params: &ModelParams<T>, x: T) -> Result<(Spinor<T>, Spinor<T>)> {
    let g = params.gamma();
    let alpha = params.alpha();
    let cm = (g * x - alpha).cosh();
    let cp = (g * x + alpha).cosh();
    let det = T::two() * cm * cp;
    if det == T::zero() || det.is_nan() {
        return Err(Error::SingularTransform { x: x.as_f64() });
    }
    // (uᵗ)⁻¹ = [[c₊, −c₊], [c₋, c₋]] / det
    let v1 = Spinor::real(cp / det, cm / det);
    let v2 = Spinor::real(-cp / det, cm / det);
    Ok((v1, v2))
}

/// Bound state `j` (0 for `E = +λ`, 1 for `E = −λ`) as a field.
#[derive(Debug, Clone, Copy)]
pub struct BoundStateField<T> {
    params: ModelParams<T>,
    index: usize,
}

impl<T: Real> BoundStateField<T> {
    pub fn new(params: ModelParams<T>, index: usize) -> Self {
        assert!(index < 2, "bound state index must be 0 or 1");
        Self { params, index }
    }
}

impl<T: Real> SpinorField<T> for BoundStateField<T> {
    fn energy(&self) -> T {
        if self.index == 0 {
            self.params.lambda()
        } else {
            -self.params.lambda()
        }
    }

    fn value(&self, x: T) -> Spinor<T> {
        match bound_states(&self.params, x) {
            Ok((v1, v2)) => {
                if self.index == 0 {
                    v1
                } else {
                    v2
                }
            }
            Err(_) => Spinor::real(T::nan(), T::nan()),
        }
    }
}

/// Free-particle (`S = 0`) plane-wave solutions scaled by `E`:
/// `E·(cos kx, cos(kx − δ))` and `E·(sin kx, sin(kx − δ))`.
#[derive(Debug, Clone, Copy)]
pub struct FreeWave<T> {
    mass: T,
    energy: T,
    k: Complex<T>,
    kind: FreeWaveKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeWaveKind {
    Cosine,
    Sine,
}

impl<T: Real> FreeWave<T> {
    pub fn new(mass: T, energy: T, kind: FreeWaveKind) -> Self {
        let k = Complex::new((energy - mass) * (energy + mass), T::zero()).sqrt();
        Self { mass, energy, k, kind }
    }
}

impl<T: Real> SpinorField<T> for FreeWave<T> {
    fn energy(&self) -> T {
        self.energy
    }

    fn value(&self, x: T) -> Spinor<T> {
        let (k, m, e) = (self.k, self.mass, self.energy);
        let (sin, cos) = ((k * x).sin(), (k * x).cos());
        match self.kind {
            FreeWaveKind::Cosine => Spinor::new(cos * e, cos * m + k * sin),
            FreeWaveKind::Sine => Spinor::new(sin * e, sin * m - k * cos),
        }
    }

    fn derivative(&self, x: T) -> Spinor<T> {
        let (k, m, e) = (self.k, self.mass, self.energy);
        let (sin, cos) = ((k * x).sin(), (k * x).cos());
        match self.kind {
            FreeWaveKind::Cosine => Spinor::new(-k * sin * e, -k * sin * m + k * k * cos),
            FreeWaveKind::Sine => Spinor::new(k * cos * e, k * cos * m + k * k * sin),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::{hamiltonian_residual, wronskian, ZeroPotential};
    use proptest::prelude::*;

    fn reference() -> ModelParams<f64> {
        ModelParams::reference()
    }

    #[test]
    fn derived_parameters() {
        let p = reference();
        assert!((p.gamma() - 3f64.sqrt()).abs() < 1e-15);
        assert!((p.lambda() - 1.0).abs() < 1e-15);
        let e2a = (2.0 * p.alpha()).exp();
        let expected = ((p.mass() - p.gamma()) / (p.mass() + p.gamma())).sqrt();
        assert!((e2a - expected).abs() < 1e-15);
        assert_eq!(p.period(), 2.0);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ModelParams::new(2.0, 2.0, 1.0).is_err());
        assert!(ModelParams::new(2.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(-1.0, 0.5, 1.0).is_err());
        assert!(ModelParams::new(2.0, 1.0, 0.0).is_err());
        assert!(ModelParams::from_lambda(2.0, 2.5, 1.0).is_err());
        assert!(ModelParams::new(2.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn s1_at_origin_and_decay() {
        let p = reference();
        assert!((potential_s1(&p, 0.0) + 2.0).abs() < 1e-15);
        assert!(potential_s1(&p, 5.0).abs() < 1e-6);
        assert!(potential_s1(&p, 5.0) < 0.0);
        let fig3 = ModelParams::new(2.0, 1.0, 1.0).unwrap();
        assert!((potential_s1(&fig3, 0.0) + 2.0 / (2.0 + 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn well_depth_reaches_zero_for_reference() {
        let p = reference();
        let depth = p.mass() - 2.0 * p.gamma().powi(2) / (p.mass() + p.lambda());
        assert!(depth.abs() < 1e-15);
        let min = (-2000..=2000)
            .map(|i| p.mass() + potential_s1(&p, i as f64 * 1e-3))
            .fold(f64::INFINITY, f64::min);
        assert!((min - depth).abs() < 1e-15);
    }

    #[test]
    fn w_functions_saturate() {
        let p = reference();
        let (a, b) = w_functions(&p, 40.0);
        assert!((a - p.gamma()).abs() < 1e-12 && (b - p.gamma()).abs() < 1e-12);
        let (a, b) = w_functions(&p, -40.0);
        assert!((a + p.gamma()).abs() < 1e-12 && (b + p.gamma()).abs() < 1e-12);
    }

    #[test]
    fn w_reflection_sign() {
        // Literal definitions give w₁(−a) = −w₂(a), not +w₂(a).
        let p = reference();
        let a = p.half_period();
        let (w1_minus, w2_minus) = w_functions(&p, -a);
        let (w1_plus, w2_plus) = w_functions(&p, a);
        assert!((w1_minus + w2_plus).abs() < 1e-15);
        assert!((w2_minus + w1_plus).abs() < 1e-15);
        assert!((w1_minus - w2_plus).abs() > 1.0);
    }

    #[test]
    fn kinematics_branches() {
        let p = reference();
        let prop = Kinematics::new(&p, 3.0);
        assert!((prop.k().re - 5f64.sqrt()).abs() < 1e-15 && prop.k().im == 0.0);
        assert_eq!(prop.regime(), Regime::Propagating);
        let ev = Kinematics::new(&p, 1.5);
        assert!(ev.k().re.abs() < 1e-15 && (ev.k().im - 1.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(ev.regime(), Regime::Evanescent);
        assert_eq!(Kinematics::new(&p, -2.0).regime(), Regime::Threshold);
        for e in [3.0, -3.0, 1.5, -1.5, 0.3] {
            let kin = Kinematics::new(&p, e);
            let k2 = kin.k() * kin.k();
            assert!((k2.re - (e * e - 4.0)).abs() < 1e-12 * (e * e - 4.0).abs());
            let d = kin.delta().unwrap();
            assert!((d.cos() * e - 2.0).norm() < 1e-12);
            assert!((d.sin() * e - kin.k()).norm() < 1e-12);
        }
        assert!(Kinematics::new(&p, 0.0).delta().is_none());
        // δ = arctan(k/m) on the positive spectrum
        let d = Kinematics::new(&p, 3.0).delta().unwrap();
        assert!((d.re - (5f64.sqrt() / 2.0).atan()).abs() < 1e-15);
    }

    #[test]
    fn basis_wronskian_is_unity() {
        let p = reference();
        for e in [3.0, -3.0, 1.5, -1.5, 0.5, 5.5] {
            let kin = Kinematics::new(&p, e);
            for x in [-1.3, -0.2, 0.0, 0.4, 2.7] {
                let (psi, phi) = basis_spinors(&p, &kin, x).unwrap();
                let w = wronskian(&psi, &phi);
                assert!((w - Complex::new(1.0, 0.0)).norm() < 1e-10, "E={e} x={x} W={w}");
            }
        }
    }

    #[test]
    fn basis_is_real_in_both_regimes() {
        let p = reference();
        for e in [3.0, 1.5, 0.5] {
            let (psi, phi) = basis_spinors(&p, &Kinematics::new(&p, e), 0.37).unwrap();
            // ψ̃, φ̃ are real up to a common constant phase (imaginary for |E| < λ)
            let prod = psi.c1 * phi.c1;
            assert!(prod.im.abs() < 1e-12);
        }
        let (psi, _) = basis_spinors(&p, &Kinematics::new(&p, 3.0), 0.37).unwrap();
        assert!(psi.max_imag() < 1e-14);
    }

    #[test]
    fn degenerate_energies_rejected() {
        let p = reference();
        for e in [2.0, -2.0, 1.0, -1.0, 0.0] {
            let r = basis_spinors(&p, &Kinematics::new(&p, e), 0.1);
            assert!(matches!(r, Err(Error::DegenerateEnergy { .. })), "E = {e}");
        }
        assert!(BasisField::new(p, 2.0, BasisKind::Psi).is_err());
    }

    #[test]
    fn basis_solves_the_dirac_equation() {
        let p = reference();
        let s1 = SolitonPotential::new(p);
        for kind in [BasisKind::Psi, BasisKind::Phi] {
            for e in [3.0, -3.0, 1.5, -0.5] {
                let f = BasisField::new(p, e, kind).unwrap();
                let r = hamiltonian_residual(&f, &s1, p.mass(), e, 0.2, 1e-4).unwrap();
                assert!(r < 1e-6, "{kind:?} E={e} residual {r}");
            }
        }
        let f = BasisField::new(p, 3.0, BasisKind::Psi).unwrap();
        let r = hamiltonian_residual(&f, &s1, p.mass(), 3.1, 0.3, 1e-4).unwrap();
        assert!(r > 1e-3);
    }

    #[test]
    fn bound_states_decay_and_solve() {
        let p = reference();
        let s1 = SolitonPotential::new(p);
        let (v1, v2) = bound_states(&p, 0.0).unwrap();
        assert!(v1.is_finite() && v1.norm() > 0.0 && v2.is_finite() && v2.norm() > 0.0);
        for j in 0..2 {
            let f = BoundStateField::new(p, j);
            let r = hamiltonian_residual(&f, &s1, p.mass(), f.energy(), 0.5, 1e-4).unwrap();
            assert!(r < 1e-6, "bound state {j}: {r}");
        }
        let x = 12.0;
        let ratio = bound_states(&p, x).unwrap().0.norm() / bound_states(&p, x + 1.0).unwrap().0.norm();
        assert!((ratio / p.gamma().exp() - 1.0).abs() < 0.05);
    }

    #[test]
    fn free_waves_solve_free_equation() {
        for e in [3.0, -3.0, 1.2, 0.0] {
            for kind in [FreeWaveKind::Cosine, FreeWaveKind::Sine] {
                let f = FreeWave::new(2.0, e, kind);
                let r = hamiltonian_residual(&f, &ZeroPotential, 2.0, e, 0.3, 1e-4).unwrap();
                assert!(r < 1e-6);
                let fd = (f.value(0.3 + 1e-5) - f.value(0.3 - 1e-5)) * (1.0 / 2e-5);
                assert!((fd - f.derivative(0.3)).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn evaluates_in_f32() {
        let p = ModelParams::<f32>::reference();
        assert!((potential_s1(&p, 0.0) + 2.0).abs() < 1e-6);
        let (psi, phi) = basis_spinors(&p, &Kinematics::new(&p, 3.0), 0.25).unwrap();
        assert!((wronskian(&psi, &phi).re - 1.0).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn s1_even_negative(x in -20.0..20.0f64, lambda in 0.05..1.95f64) {
            let p = ModelParams::from_lambda(2.0, lambda, 1.0).unwrap();
            prop_assert_eq!(potential_s1(&p, x), potential_s1(&p, -x));
            prop_assert!(potential_s1(&p, x) <= 0.0);
        }

        #[test]
        fn w_swap_under_alpha_sign(x in -5.0..5.0f64, gamma in 0.1..1.9f64) {
            let p = ModelParams::new(2.0, gamma, 1.0).unwrap();
            let flipped = p.with_alpha_scaled(-1.0);
            let (w1, w2) = w_functions(&p, x);
            let (f1, f2) = w_functions(&flipped, x);
            prop_assert_eq!(w1, f2);
            prop_assert_eq!(w2, f1);
            prop_assert!(w1.abs() <= gamma && w2.abs() <= gamma);
        }

        #[test]
        fn seed_determinant_never_vanishes(x in -300.0..300.0f64, gamma in 0.01..1.99f64) {
            let p = ModelParams::new(2.0, gamma, 1.0).unwrap();
            let alpha = p.alpha();
            let det = 2.0 * (gamma * x - alpha).cosh() * (gamma * x + alpha).cosh();
            prop_assert!(det >= 2.0);
            prop_assert!(bound_states(&p, x).is_ok());
        }
    }
}
