//! Two-component spinors, the Dirac Wronskian and Floquet multipliers.
//!
//! The Hamiltonian throughout is `h = iσ_y ∂_x + (m + S(x)) σ_x` with
//! `iσ_y = [[0, 1], [-1, 0]]`, so a solution at energy `E` obeys
//!
//! ```text
//! ψ₁' = (m + S) ψ₁ − E ψ₂
//! ψ₂' = E ψ₁ − (m + S) ψ₂
//! ```

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{fd_step, Real};

/// Spinor amplitude `(c1, c2)` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor<T> {
    pub c1: Complex<T>,
    pub c2: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(c1: Complex<T>, c2: Complex<T>) -> Self {
        Self { c1, c2 }
    }

    pub fn real(c1: T, c2: T) -> Self {
        Self::new(Complex::new(c1, T::zero()), Complex::new(c2, T::zero()))
    }

    pub fn zero() -> Self {
        Self::real(T::zero(), T::zero())
    }

    /// Euclidean norm `sqrt(|c1|² + |c2|²)`.
    pub fn norm(&self) -> T {
        (self.c1.norm_sqr() + self.c2.norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.c1.re.is_finite() && self.c1.im.is_finite() && self.c2.re.is_finite() && self.c2.im.is_finite()
    }

    /// Largest imaginary part among the two components.
    pub fn max_imag(&self) -> T {
        self.c1.im.abs().max(self.c2.im.abs())
    }

    pub fn sigma_x(self) -> Self {
        Self::new(self.c2, self.c1)
    }

    pub fn sigma_z(self) -> Self {
        Self::new(self.c1, -self.c2)
    }

    /// Applies `iσ_y = [[0, 1], [-1, 0]]`.
    pub fn i_sigma_y(self) -> Self {
        Self::new(self.c2, -self.c1)
    }

    pub fn scale(self, s: Complex<T>) -> Self {
        Self::new(self.c1 * s, self.c2 * s)
    }

    /// Componentwise product with `diag(d1, d2)`.
    pub fn diag(self, d1: T, d2: T) -> Self {
        Self::new(self.c1 * d1, self.c2 * d2)
    }
}

impl<T: Real> Add for Spinor<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl<T: Real> Sub for Spinor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl<T: Real> Neg for Spinor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c1, -self.c2)
    }
}

impl<T: Real> Mul<T> for Spinor<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::new(self.c1 * rhs, self.c2 * rhs)
    }
}

/// Wronskian `W(φ, ψ) = φᵗ (iσ_y) ψ = φ₁ψ₂ − φ₂ψ₁`.
///
/// The form is bilinear (no complex conjugate). For the real solutions of a
/// real energy it coincides with `φ⁺ iσ_y ψ`; in the evanescent regime, where
/// the closed forms are evaluated in complex arithmetic, only the bilinear
/// form is the analytic continuation and stays equal to one for the
/// normalized basis.
pub fn wronskian<T: Real>(phi: &Spinor<T>, psi: &Spinor<T>) -> Complex<T> {
    phi.c1 * psi.c2 - phi.c2 * psi.c1
}

/// Real scalar potential `S(x)` entering as `(m + S(x)) σ_x`.
pub trait ScalarPotential<T: Real>: Send + Sync {
    fn value(&self, x: T) -> T;

    fn label(&self) -> String {
        "scalar potential".to_string()
    }
}

impl<T: Real, P: ScalarPotential<T> + ?Sized> ScalarPotential<T> for &P {
    fn value(&self, x: T) -> T {
        (**self).value(x)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

impl<T: Real, P: ScalarPotential<T> + ?Sized> ScalarPotential<T> for Box<P> {
    fn value(&self, x: T) -> T {
        (**self).value(x)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

impl<T: Real, P: ScalarPotential<T> + ?Sized> ScalarPotential<T> for std::sync::Arc<P> {
    fn value(&self, x: T) -> T {
        (**self).value(x)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// `S(x) = 0`, the free particle.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroPotential;

impl<T: Real> ScalarPotential<T> for ZeroPotential {
    fn value(&self, _x: T) -> T {
        T::zero()
    }
    fn label(&self) -> String {
        "free particle".to_string()
    }
}

/// Adapts a closure into a [`ScalarPotential`].
pub struct FnPotential<F> {
    f: F,
    label: String,
}

impl<F> FnPotential<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        Self { f, label: label.into() }
    }
}

impl<T: Real, F: Fn(T) -> T + Send + Sync> ScalarPotential<T> for FnPotential<F> {
    fn value(&self, x: T) -> T {
        (self.f)(x)
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A map `x -> Spinor` tagged with the energy it belongs to.
pub trait SpinorField<T: Real> {
    fn energy(&self) -> T;

    fn value(&self, x: T) -> Spinor<T>;

    /// `d/dx` of the field. Falls back to a central difference; fields with
    /// elementary closed forms override it.
    fn derivative(&self, x: T) -> Spinor<T> {
        let h = fd_step::<T>();
        (self.value(x + h) - self.value(x - h)) * (T::one() / (h + h))
    }

    /// Closed interval on which the field may be evaluated.
    fn domain(&self) -> (T, T) {
        (T::neg_infinity(), T::infinity())
    }
}

impl<T: Real, F: SpinorField<T> + ?Sized> SpinorField<T> for &F {
    fn energy(&self) -> T {
        (**self).energy()
    }
    fn value(&self, x: T) -> Spinor<T> {
        (**self).value(x)
    }
    fn derivative(&self, x: T) -> Spinor<T> {
        (**self).derivative(x)
    }
    fn domain(&self) -> (T, T) {
        (**self).domain()
    }
}

/// The zero spinor at a nominal energy.
#[derive(Debug, Clone, Copy)]
pub struct ZeroField<T>(pub T);

impl<T: Real> SpinorField<T> for ZeroField<T> {
    fn energy(&self) -> T {
        self.0
    }
    fn value(&self, _x: T) -> Spinor<T> {
        Spinor::zero()
    }
    fn derivative(&self, _x: T) -> Spinor<T> {
        Spinor::zero()
    }
}

/// `(iσ_y ∂ + (m + S) σ_x) ψ` from a value and a derivative.
pub fn apply_dirac<T: Real>(psi: Spinor<T>, dpsi: Spinor<T>, mass_term: T) -> Spinor<T> {
    dpsi.i_sigma_y() + psi.sigma_x() * mass_term
}

/// Norm of `(iσ_y D_h + (m + S(x)) σ_x − E) ψ(x)` with `D_h` the central
/// difference of step `h`.
///
/// Vanishes to `O(h²)` when `field` solves the equation at `energy`.
pub fn hamiltonian_residual<T: Real, F, P>(field: &F, potential: &P, mass: T, energy: T, x: T, h: T) -> Result<T>
where
    F: SpinorField<T> + ?Sized,
    P: ScalarPotential<T> + ?Sized,
{
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidStep(h.as_f64()));
    }
    let (lo, hi) = field.domain();
    if x - h < lo || x + h > hi {
        return Err(Error::Domain {
            lo: (x - h).as_f64(),
            hi: (x + h).as_f64(),
        });
    }
    let psi = field.value(x);
    let dpsi = (field.value(x + h) - field.value(x - h)) * (T::one() / (h + h));
    let r = apply_dirac(psi, dpsi, mass + potential.value(x)) - psi * energy;
    Ok(r.norm())
}

/// Roots `β₁, β₂` of `β² − Dβ + 1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetPair<T> {
    pub beta1: Complex<T>,
    pub beta2: Complex<T>,
}

impl<T: Real> FloquetPair<T> {
    /// Both multipliers on the unit circle, i.e. `E` lies in an allowed band.
    pub fn is_bounded(&self, tol: T) -> bool {
        (self.beta1.norm() - T::one()).abs() <= tol && (self.beta2.norm() - T::one()).abs() <= tol
    }

    pub fn product(&self) -> Complex<T> {
        self.beta1 * self.beta2
    }

    pub fn sum(&self) -> Complex<T> {
        self.beta1 + self.beta2
    }
}

/// Floquet multipliers for a given Lyapunov value `d`.
///
/// For `|d| <= 2` the pair is `d/2 ± i sqrt(1 − d²/4)`; otherwise both are real,
/// `β₁` the one of larger magnitude and `β₂ = 1/β₁`.
pub fn floquet_multipliers<T: Real>(d: T) -> FloquetPair<T> {
    let half = d * T::half();
    let disc = half * half - T::one();
    if disc <= T::zero() {
        let s = (-disc).sqrt();
        FloquetPair {
            beta1: Complex::new(half, s),
            beta2: Complex::new(half, -s),
        }
    } else {
        let b1 = half + half.signum() * disc.sqrt();
        FloquetPair {
            beta1: Complex::new(b1, T::zero()),
            beta2: Complex::new(b1.recip(), T::zero()),
        }
    }
}
