//! Monodromy matrix of the Dirac system by direct integration.
//!
//! For real `E` the equation `(iσ_y ∂ + (m + S)σ_x) ψ = Eψ` is the real,
//! trace-free first-order system
//!
//! ```text
//! ψ' = A(x) ψ,   A = [[m + S, −E], [E, −(m + S)]]
//! ```
//!
//! Propagating the identity over one period gives the monodromy matrix; its
//! determinant is one (Liouville) and its trace is the Lyapunov function.
//! Nothing here uses the closed-form solutions, which is the point.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spinor::ScalarPotential;

/// Default RK4 steps per period.
pub const DEFAULT_STEPS: usize = 20_000;

/// Smallest accepted step count.
pub const MIN_STEPS: usize = 100;

/// Largest accepted `|det M − 1|`.
pub const DET_TOLERANCE: f64 = 1e-6;

/// Fundamental matrix propagated from `x0` to `x0 + T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monodromy<T> {
    pub matrix: [[T; 2]; 2],
    pub energy: T,
    pub steps: usize,
}

impl<T: Real> Monodromy<T> {
    pub fn trace(&self) -> T {
        self.matrix[0][0] + self.matrix[1][1]
    }

    pub fn det(&self) -> T {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }
}

type Mat<T> = [[T; 2]; 2];

#[inline]
fn rhs<T: Real>(mass_term: T, energy: T, y: &Mat<T>) -> Mat<T> {
    // Columns are independent solutions; row 0 is ψ₁, row 1 is ψ₂.
    let mut out = [[T::zero(); 2]; 2];
    for c in 0..2 {
        let (p1, p2) = (y[0][c], y[1][c]);
        out[0][c] = mass_term * p1 - energy * p2;
        out[1][c] = energy * p1 - mass_term * p2;
    }
    out
}

#[inline]
fn axpy<T: Real>(y: &Mat<T>, a: T, k: &Mat<T>) -> Mat<T> {
    [
        [y[0][0] + a * k[0][0], y[0][1] + a * k[0][1]],
        [y[1][0] + a * k[1][0], y[1][1] + a * k[1][1]],
    ]
}

/// Classical fixed-step RK4 from `x0` to `x0 + period`, starting from the
/// identity (initial spinors `(1, 0)ᵗ` and `(0, 1)ᵗ`).
pub fn integrate_monodromy<T: Real, P: ScalarPotential<T> + ?Sized>(
    potential: &P,
    mass: T,
    energy: T,
    x0: T,
    period: T,
    steps: usize,
) -> Result<Monodromy<T>> {
    if steps < MIN_STEPS {
        return Err(Error::StepCountTooSmall {
            steps,
            det_error: f64::NAN,
        });
    }
    if !(period > T::zero()) {
        return Err(Error::InvalidParams(format!("period must be positive, got {period}")));
    }
    let n = T::from_usize(steps).unwrap();
    let h = period / n;
    let half = h * T::half();
    let sixth = h / T::lit(6.0);
    let mut y: Mat<T> = [[T::one(), T::zero()], [T::zero(), T::one()]];
    for i in 0..steps {
        // x from the step index, not by accumulation
        let x = x0 + period * T::from_usize(i).unwrap() / n;
        let s0 = mass + potential.value(x);
        let sm = mass + potential.value(x + half);
        let s1 = mass + potential.value(x + h);
        let k1 = rhs(s0, energy, &y);
        let k2 = rhs(sm, energy, &axpy(&y, half, &k1));
        let k3 = rhs(sm, energy, &axpy(&y, half, &k2));
        let k4 = rhs(s1, energy, &axpy(&y, h, &k3));
        for r in 0..2 {
            for c in 0..2 {
                y[r][c] = y[r][c] + sixth * (k1[r][c] + T::two() * (k2[r][c] + k3[r][c]) + k4[r][c]);
            }
        }
    }
    let m = Monodromy {
        matrix: y,
        energy,
        steps,
    };
    let det_error = (m.det() - T::one()).abs();
    if !(det_error <= T::tol(DET_TOLERANCE)) {
        return Err(Error::StepCountTooSmall {
            steps,
            det_error: det_error.as_f64(),
        });
    }
    Ok(m)
}

/// Trace of the monodromy over `[−a, a]`.
pub fn lyapunov_numeric<T: Real, P: ScalarPotential<T> + ?Sized>(
    potential: &P,
    mass: T,
    energy: T,
    half_period: T,
    steps: usize,
) -> Result<T> {
    Ok(integrate_monodromy(potential, mass, energy, -half_period, half_period + half_period, steps)?.trace())
}

/// [`lyapunov_numeric`] at each energy, in parallel.
pub fn lyapunov_numeric_sweep<T: Real, P: ScalarPotential<T> + ?Sized>(
    potential: &P,
    mass: T,
    energies: &[T],
    half_period: T,
    steps: usize,
) -> Result<Vec<T>> {
    energies
        .par_iter()
        .map(|&e| lyapunov_numeric(potential, mass, e, half_period, steps))
        .collect()
}

/// Periodic extension of a potential restricted to `[−a, a)`.
#[derive(Debug, Clone, Copy)]
pub struct Periodized<P, T> {
    inner: P,
    half_period: T,
}

impl<P, T: Real> Periodized<P, T> {
    pub fn new(inner: P, half_period: T) -> Self {
        Self { inner, half_period }
    }

    /// Folds `x` into `[−a, a)`.
    pub fn fold(&self, x: T) -> T {
        let period = self.half_period + self.half_period;
        let shifted = x + self.half_period;
        let folded = shifted - period * (shifted / period).floor();
        // floor can leave `folded == period` after rounding
        let folded = if folded >= period { folded - period } else { folded };
        folded - self.half_period
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }
}

impl<P: ScalarPotential<T>, T: Real> ScalarPotential<T> for Periodized<P, T> {
    fn value(&self, x: T) -> T {
        self.inner.value(self.fold(x))
    }
    fn label(&self) -> String {
        format!(
            "periodized {} (period {})",
            self.inner.label(),
            self.half_period + self.half_period
        )
    }
}

/// Piecewise-linear potential through tabulated `(x, S)` samples; constant
/// beyond the end points.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential<T> {
    xs: Vec<T>,
    values: Vec<T>,
    label: String,
}

impl<T: Real> TabulatedPotential<T> {
    pub fn new(xs: Vec<T>, values: Vec<T>, label: impl Into<String>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::Tabulation(format!(
                "{} abscissae but {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::Tabulation("need at least two samples".into()));
        }
        if let Some(i) = xs.iter().chain(values.iter()).position(|v| !v.is_finite()) {
            return Err(Error::Tabulation(format!("non-finite entry at position {i}")));
        }
        if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Tabulation(format!(
                "abscissae must increase strictly (rows {} and {})",
                i + 1,
                i + 2
            )));
        }
        Ok(Self {
            xs,
            values,
            label: label.into(),
        })
    }

    pub fn range(&self) -> (T, T) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

impl<T: Real> ScalarPotential<T> for TabulatedPotential<T> {
    fn value(&self, x: T) -> T {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.values[0];
        }
        if x >= self.xs[n - 1] {
            return self.values[n - 1];
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}
