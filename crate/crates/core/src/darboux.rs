//! Darboux transformation of a scalar Dirac potential.
//!
//! A transformation function `u = (u⁽¹⁾, u⁽²⁾)` with `u⁽¹⁾ = (u₁₁, u₂₁)ᵗ` an
//! eigenspinor of `h₀` at `λ` and `u⁽²⁾ = −σ_z u⁽¹⁾` its partner at `−λ` makes
//! `u' u⁻¹ = diag((ln u₁₁)', (ln u₂₁)')`. The intertwiner
//! `L = ∂_x − u' u⁻¹` then maps solutions of `h₀` onto solutions of `h₁`
//! whose potential stays scalar:
//!
//! ```text
//! S₁ = S₀ + (ln u₂₁)' − (ln u₁₁)'
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{fd_step, Real};
use crate::soliton::ModelParams;
use crate::spinor::{apply_dirac, ScalarPotential, Spinor, SpinorField, ZeroPotential};

pub type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Default guard on `|u₁₁|`, `|u₂₁|`.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// Transformation function of a scalar Darboux transform.
///
/// Components are nodeless by contract; the guard only checks the points
/// actually evaluated.
#[derive(Clone)]
pub struct TransformSeed<T: Real> {
    mass: T,
    lambda: T,
    u11: RealFn<T>,
    u21: RealFn<T>,
    du11: Option<RealFn<T>>,
    du21: Option<RealFn<T>>,
    background: Arc<dyn ScalarPotential<T>>,
    threshold: T,
}

impl<T: Real> TransformSeed<T> {
    /// Seed over the free background with derivatives taken numerically
    /// until [`TransformSeed::with_derivatives`] supplies them.
    pub fn new(mass: T, lambda: T, u11: RealFn<T>, u21: RealFn<T>) -> Self {
        Self {
            mass,
            lambda,
            u11,
            u21,
            du11: None,
            du21: None,
            background: Arc::new(ZeroPotential),
            threshold: T::lit(SINGULARITY_THRESHOLD),
        }
    }

    pub fn with_derivatives(mut self, du11: RealFn<T>, du21: RealFn<T>) -> Self {
        self.du11 = Some(du11);
        self.du21 = Some(du21);
        self
    }

    pub fn with_background(mut self, s0: Arc<dyn ScalarPotential<T>>) -> Self {
        self.background = s0;
        self
    }

    pub fn with_threshold(mut self, threshold: T) -> Self {
        self.threshold = threshold;
        self
    }

    /// `u⁽¹⁾ = (cosh(γx − α), cosh(γx + α))ᵗ` at `λ = sqrt(m² − γ²)` over
    /// the free particle, with analytic derivatives.
    pub fn soliton(params: &ModelParams<T>) -> Self {
        let g = params.gamma();
        let alpha = params.alpha();
        Self::new(
            params.mass(),
            params.lambda(),
            Arc::new(move |x: T| (g * x - alpha).cosh()),
            Arc::new(move |x: T| (g * x + alpha).cosh()),
        )
        .with_derivatives(
            Arc::new(move |x: T| g * (g * x - alpha).sinh()),
            Arc::new(move |x: T| g * (g * x + alpha).sinh()),
        )
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// `λ₁`; the partner eigenvalue is `λ₂ = −λ₁`.
    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn background(&self) -> &dyn ScalarPotential<T> {
        self.background.as_ref()
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.du11.is_some() && self.du21.is_some()
    }

    fn derivative(f: &RealFn<T>, df: &Option<RealFn<T>>, x: T) -> T {
        match df {
            Some(df) => df(x),
            None => {
                let h = fd_step::<T>();
                (f(x + h) - f(x - h)) / (h + h)
            }
        }
    }

    /// `u⁽¹⁾(x) = (u₁₁, u₂₁)`.
    pub fn seed_spinor(&self, x: T) -> Spinor<T> {
        Spinor::real((self.u11)(x), (self.u21)(x))
    }

    /// `((ln u₁₁)', (ln u₂₁)')` at `x`, the diagonal of `u' u⁻¹`.
    pub fn log_derivatives(&self, x: T) -> Result<(T, T)> {
        let u11 = (self.u11)(x);
        let u21 = (self.u21)(x);
        if !(u11.abs() >= self.threshold && u21.abs() >= self.threshold) {
            return Err(Error::SingularTransform { x: x.as_f64() });
        }
        let d11 = Self::derivative(&self.u11, &self.du11, x);
        let d21 = Self::derivative(&self.u21, &self.du21, x);
        Ok((d11 / u11, d21 / u21))
    }

    /// The transformed potential as a [`ScalarPotential`] (NaN where the
    /// transform is singular).
    pub fn transformed(&self) -> TransformedPotential<T> {
        TransformedPotential { seed: self.clone() }
    }

    /// Field of the seed spinor `u⁽¹⁾` at `E = λ` (`partner = false`) or of
    /// `u⁽²⁾ = −σ_z u⁽¹⁾` at `E = −λ`.
    pub fn seed_field(&self, partner: bool) -> SeedField<T> {
        SeedField {
            seed: self.clone(),
            partner,
        }
    }
}

/// `S₁(x) = S₀(x) + u₂₁'/u₂₁ − u₁₁'/u₁₁`.
pub fn transformed_potential<T: Real>(seed: &TransformSeed<T>, x: T) -> Result<T> {
    let (l11, l21) = seed.log_derivatives(x)?;
    Ok(seed.background.value(x) + l21 - l11)
}

/// `Lψ(x) = (ψ₁' − (ln u₁₁)' ψ₁, ψ₂' − (ln u₂₁)' ψ₂)ᵗ`, using the field's own
/// derivative.
pub fn map_solution<T: Real, F: SpinorField<T> + ?Sized>(seed: &TransformSeed<T>, psi: &F, x: T) -> Result<Spinor<T>> {
    let (l11, l21) = seed.log_derivatives(x)?;
    Ok(psi.derivative(x) - psi.value(x).diag(l11, l21))
}

/// `‖(L h₀ − h₁ L) ψ(x)‖` with `h₁` built from the seed's own transformed
/// potential. Every derivative is a central difference of step `h`, so the
/// result is `O(h²)` for any smooth `ψ`, solution or not.
pub fn intertwining_check<T: Real, F: SpinorField<T> + ?Sized>(
    seed: &TransformSeed<T>,
    psi: &F,
    x: T,
    h: T,
) -> Result<T> {
    intertwining_residual(seed, &seed.transformed(), psi, x, h)
}

/// As [`intertwining_check`] but with an explicit target potential for `h₁`.
pub fn intertwining_residual<T, F, P>(seed: &TransformSeed<T>, target: &P, psi: &F, x: T, h: T) -> Result<T>
where
    T: Real,
    F: SpinorField<T> + ?Sized,
    P: ScalarPotential<T> + ?Sized,
{
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidStep(h.as_f64()));
    }
    let (lo, hi) = psi.domain();
    let reach = h + h;
    if x - reach < lo || x + reach > hi {
        return Err(Error::Domain {
            lo: (x - reach).as_f64(),
            hi: (x + reach).as_f64(),
        });
    }
    let inv = T::one() / (h + h);
    let d = |y: T| (psi.value(y + h) - psi.value(y - h)) * inv;
    let m = seed.mass;

    let h0 = |y: T| apply_dirac(psi.value(y), d(y), m + seed.background.value(y));
    let l_psi = |y: T| -> Result<Spinor<T>> {
        let (a, b) = seed.log_derivatives(y)?;
        Ok(d(y) - psi.value(y).diag(a, b))
    };

    let (a, b) = seed.log_derivatives(x)?;
    let lh0 = (h0(x + h) - h0(x - h)) * inv - h0(x).diag(a, b);
    let dl = (l_psi(x + h)? - l_psi(x - h)?) * inv;
    let h1l = apply_dirac(l_psi(x)?, dl, m + target.value(x));
    Ok((lh0 - h1l).norm())
}

/// `S₁` of a seed as a potential.
#[derive(Clone)]
pub struct TransformedPotential<T: Real> {
    seed: TransformSeed<T>,
}

impl<T: Real> ScalarPotential<T> for TransformedPotential<T> {
    fn value(&self, x: T) -> T {
        transformed_potential(&self.seed, x).unwrap_or_else(|_| T::nan())
    }
    fn label(&self) -> String {
        format!("Darboux transform of {}", self.seed.background.label())
    }
}

/// Seed spinor viewed as a solution of `h₀`.
#[derive(Clone)]
pub struct SeedField<T: Real> {
    seed: TransformSeed<T>,
    partner: bool,
}

impl<T: Real> SpinorField<T> for SeedField<T> {
    fn energy(&self) -> T {
        if self.partner {
            -self.seed.lambda
        } else {
            self.seed.lambda
        }
    }

    fn value(&self, x: T) -> Spinor<T> {
        let u = self.seed.seed_spinor(x);
        if self.partner {
            -u.sigma_z()
        } else {
            u
        }
    }

    fn derivative(&self, x: T) -> Spinor<T> {
        let s = &self.seed;
        let du = Spinor::real(
            TransformSeed::derivative(&s.u11, &s.du11, x),
            TransformSeed::derivative(&s.u21, &s.du21, x),
        );
        if self.partner {
            -du.sigma_z()
        } else {
            du
        }
    }
}

/// A field pushed through the intertwiner, `x -> Lψ(x)`.
pub struct MappedField<'a, T: Real, F> {
    seed: &'a TransformSeed<T>,
    inner: F,
}

impl<'a, T: Real, F: SpinorField<T>> MappedField<'a, T, F> {
    pub fn new(seed: &'a TransformSeed<T>, inner: F) -> Self {
        Self { seed, inner }
    }
}

impl<T: Real, F: SpinorField<T>> SpinorField<T> for MappedField<'_, T, F> {
    fn energy(&self) -> T {
        self.inner.energy()
    }

    fn value(&self, x: T) -> Spinor<T> {
        map_solution(self.seed, &self.inner, x).unwrap_or_else(|_| Spinor::real(T::nan(), T::nan()))
    }

    fn domain(&self) -> (T, T) {
        self.inner.domain()
    }
}
