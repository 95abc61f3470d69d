//! Exactly solvable periodic scalar potential for the one-dimensional Dirac
//! equation.
//!
//! The reflectionless one-soliton potential `S₁(x) = −2γ²/(m + λ cosh 2γx)` is
//! obtained from the free particle by a Darboux transformation, restricted to
//! `[−a, a]` and continued periodically. Its Dirac solutions are elementary,
//! so the Lyapunov function `D(E)` has a closed form; band edges are the
//! roots of `|D(E)| = 2` and the dispersion law is `cos 2Ka = D(E)/2`. A
//! fixed-step RK4 monodromy integrator provides an independent check of `D`.
//!
//! Everything is generic over [`Real`] (`f32`, `f64`); the aliases at the
//! crate root fix `f64`.
//!
//! ```
//! use dirac_soliton::{band_edges, Params};
//!
//! let params = Params::reference(); // m = 2, λ = 1, a = 1
//! let table = band_edges(&params, 3.0, 1e-9).unwrap();
//! assert!((table.positive_edges()[0] - 0.738).abs() < 1e-3);
//! ```

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bands;
pub mod darboux;
pub mod error;
pub mod oracle;
pub mod scalar;
pub mod soliton;
pub mod spinor;
pub mod verify;

pub use bands::{
    band_edges, band_edges_with, dispersion, lyapunov, lyapunov_regularized, lyapunov_trace, Band, BandKind,
    BandSearch, BandTable, DispersionPoint, LyapunovSample, LyapunovTrace, LyapunovValue, REFERENCE_EDGES,
};
pub use darboux::{intertwining_check, intertwining_residual, map_solution, transformed_potential, TransformSeed};
pub use error::{Error, Result};
pub use oracle::{
    integrate_monodromy, lyapunov_numeric, lyapunov_numeric_sweep, Monodromy, Periodized, TabulatedPotential,
};
pub use scalar::Real;
pub use soliton::{
    basis_spinors, bound_states, potential_s1, w_functions, BasisField, BasisKind, BoundStateField, FreeWave,
    FreeWaveKind, Kinematics, ModelParams, Regime, SolitonPotential,
};
pub use spinor::{
    floquet_multipliers, hamiltonian_residual, wronskian, FloquetPair, ScalarPotential, Spinor, SpinorField,
};

pub type Params = ModelParams<f64>;
pub type Spinor64 = Spinor<f64>;
pub type Table = BandTable<f64>;
pub type Trace = LyapunovTrace<f64>;
pub type Seed = TransformSeed<f64>;
pub type PeriodicSoliton = Periodized<SolitonPotential<f64>, f64>;
