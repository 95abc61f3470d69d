//! Self-check suite run by `dirac-bands verify`.
//!
//! Each check records the measured figure, the threshold it is held to and
//! the outcome. Energies and positions are deterministic (golden-ratio
//! sequences) so reports are reproducible.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bands::{band_edges, lyapunov, lyapunov_regularized, REFERENCE_EDGES};
use crate::darboux::{intertwining_check, transformed_potential, TransformSeed};
use crate::oracle::{lyapunov_numeric, Periodized, DEFAULT_STEPS};
use crate::soliton::{
    basis_spinors, potential_s1, BasisField, BasisKind, BoundStateField, Kinematics, ModelParams, SolitonPotential,
};
use crate::spinor::{hamiltonian_residual, wronskian, Spinor, SpinorField};

const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub description: String,
    pub measured: f64,
    pub threshold: f64,
    pub status: CheckStatus,
}

impl Check {
    fn below(name: &str, description: &str, measured: f64, threshold: f64) -> Self {
        let status = if measured < threshold {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.into(),
            description: description.into(),
            measured,
            threshold,
            status,
        }
    }

    fn failed(name: &str, description: &str, err: impl std::fmt::Display, threshold: f64) -> Self {
        Self {
            name: name.into(),
            description: format!("{description} (error: {err})"),
            measured: f64::NAN,
            threshold,
            status: CheckStatus::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Smooth spinor field `Σ aⱼ sin(ωⱼ x + φⱼ)` per component; generally not a
/// solution of anything, which is what the intertwining check wants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothTestField {
    /// `[amplitude, frequency, phase]` for two terms per component.
    pub terms: [[f64; 3]; 4],
}

impl SmoothTestField {
    /// Field from eight numbers in `[0, 1)`.
    pub fn from_unit(u: [f64; 12]) -> Self {
        let mut terms = [[0.0; 3]; 4];
        for (j, t) in terms.iter_mut().enumerate() {
            *t = [
                0.5 + u[3 * j],
                0.3 + 2.5 * u[3 * j + 1],
                std::f64::consts::TAU * u[3 * j + 2],
            ];
        }
        Self { terms }
    }

    fn component(&self, x: f64, which: usize) -> f64 {
        self.terms[2 * which..2 * which + 2]
            .iter()
            .map(|[a, w, p]| a * (w * x + p).sin())
            .sum()
    }
}

impl SpinorField<f64> for SmoothTestField {
    fn energy(&self) -> f64 {
        0.0
    }
    fn value(&self, x: f64) -> Spinor<f64> {
        Spinor::real(self.component(x, 0), self.component(x, 1))
    }
}

fn golden_sequence(n: usize, offset: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| ((j + offset + 1) as f64 * GOLDEN).fract())
}

/// `E` nudged off the singular points `0`, `±λ`, `±m` by at least `margin`.
fn regular_energy(p: &ModelParams<f64>, mut e: f64, margin: f64) -> f64 {
    for _ in 0..8 {
        let bad = [0.0, p.lambda(), -p.lambda(), p.mass(), -p.mass()]
            .iter()
            .any(|s| (e - s).abs() < margin);
        if !bad {
            break;
        }
        e += margin * 1.37;
    }
    e
}

pub fn run_verification(params: &ModelParams<f64>) -> VerifyReport {
    let p = *params;
    let m = p.mass();
    let a = p.half_period();
    let s1 = SolitonPotential::new(p);
    let mut checks = Vec::new();

    // Wronskian unity over a 20 × 20 grid in both regimes
    let emax = 3.0 * m;
    let energies: Vec<f64> = (0..20)
        .map(|j| regular_energy(&p, -emax + 2.0 * emax * (j as f64 + 0.5) / 20.0, 0.05))
        .collect();
    let mut worst = 0.0f64;
    let mut err = None;
    for &e in &energies {
        let kin = Kinematics::new(&p, e);
        for i in 0..20 {
            let x = -2.0 * a + 4.0 * a * i as f64 / 19.0;
            match basis_spinors(&p, &kin, x) {
                Ok((psi, phi)) => worst = worst.max((wronskian(&psi, &phi) - Complex::new(1.0, 0.0)).norm()),
                Err(e) => err = Some(e),
            }
        }
    }
    let desc = "max |W(ψ̃, φ̃) − 1| over 20 energies × 20 positions";
    checks.push(match err {
        Some(e) => Check::failed("wronskian_unity", desc, e, 1e-10),
        None => Check::below("wronskian_unity", desc, worst, 1e-10),
    });

    // evenness
    let desc = "max |D(E) − D(−E)| over 50 energies in [−8, 8]";
    let even: Result<f64, _> = golden_sequence(50, 0).try_fold(0.0f64, |acc, u| {
        let e = 8.0 * (2.0 * u - 1.0);
        let plus = lyapunov_regularized(&p, e)?.value;
        let minus = lyapunov_regularized(&p, -e)?.value;
        Ok::<_, crate::Error>(acc.max((plus - minus).abs()))
    });
    checks.push(match even {
        Ok(v) => Check::below("lyapunov_evenness", desc, v, 1e-10),
        Err(e) => Check::failed("lyapunov_evenness", desc, e, 1e-10),
    });

    // finite-difference residuals and their O(h²) order
    let mut fields: Vec<Box<dyn SpinorField<f64>>> = Vec::new();
    for e in [regular_energy(&p, 1.5 * m, 0.05), regular_energy(&p, -0.75 * m, 0.05)] {
        for kind in [BasisKind::Psi, BasisKind::Phi] {
            if let Ok(f) = BasisField::new(p, e, kind) {
                fields.push(Box::new(f));
            }
        }
    }
    let n_basis = fields.len();
    fields.push(Box::new(BoundStateField::new(p, 0)));
    fields.push(Box::new(BoundStateField::new(p, 1)));
    let mut basis_worst = 0.0f64;
    let mut bound_worst = 0.0f64;
    let mut order_dev = 0.0f64;
    for (i, f) in fields.iter().enumerate() {
        let x = 0.2 + 0.1 * i as f64;
        let r1 = hamiltonian_residual(f.as_ref(), &s1, m, f.energy(), x, 1e-4).unwrap_or(f64::NAN);
        let r2 = hamiltonian_residual(f.as_ref(), &s1, m, f.energy(), x, 5e-5).unwrap_or(f64::NAN);
        if i < n_basis {
            basis_worst = basis_worst.max(r1);
        } else {
            bound_worst = bound_worst.max(r1);
        }
        let dev = (r1 / r2 - 4.0).abs();
        order_dev = if dev.is_nan() { f64::NAN } else { order_dev.max(dev) };
    }
    checks.push(Check::below(
        "basis_residual",
        "max Dirac residual of ψ̃, φ̃ against m + S₁ (h = 1e-4)",
        if n_basis == 4 { basis_worst } else { f64::NAN },
        1e-6,
    ));
    checks.push(Check::below(
        "bound_state_residual",
        "max Dirac residual of both bound states at E = ±λ (h = 1e-4)",
        bound_worst,
        1e-6,
    ));
    checks.push(Check::below(
        "residual_order",
        "max |r(h)/r(h/2) − 4| over all solution fields",
        order_dev,
        0.5,
    ));

    // intertwining on smooth non-solutions
    let seed = TransformSeed::soliton(&p);
    let mut worst = 0.0f64;
    for j in 0..10 {
        let u: Vec<f64> = golden_sequence(12, 12 * j + 100).collect();
        let field = SmoothTestField::from_unit(u.try_into().unwrap());
        let x = -a + 2.0 * a * (j as f64 + 0.5) / 10.0;
        worst = worst.max(intertwining_check(&seed, &field, x, 1e-4).unwrap_or(f64::NAN));
    }
    checks.push(Check::below(
        "intertwining",
        "max ‖(L h₀ − h₁ L)ψ‖ over 10 smooth non-solution fields (h = 1e-4)",
        worst,
        1e-5,
    ));

    // Darboux consistency
    let mut worst = 0.0f64;
    for i in 0..50 {
        let x = -3.0 * a + 6.0 * a * i as f64 / 49.0;
        let s = transformed_potential(&seed, x).unwrap_or(f64::NAN);
        worst = worst.max((s - potential_s1(&p, x)).abs());
    }
    checks.push(Check::below(
        "darboux_consistency",
        "max |S₁(generic transform) − S₁(closed form)| at 50 points",
        worst,
        1e-12,
    ));

    // oracle equivalence
    let periodic = Periodized::new(s1, a);
    let mut worst = 0.0f64;
    let mut count = 0;
    for u in golden_sequence(400, 7) {
        if count == 40 {
            break;
        }
        let e = 8.0 * (2.0 * u - 1.0);
        if (e.abs() - m).abs() < 0.05 {
            continue;
        }
        count += 1;
        let closed = lyapunov_regularized(&p, e).map(|v| v.value).unwrap_or(f64::NAN);
        let numeric = lyapunov_numeric(&periodic, m, e, a, DEFAULT_STEPS).unwrap_or(f64::NAN);
        worst = worst.max((closed - numeric).abs());
    }
    checks.push(Check::below(
        "oracle_equivalence",
        "max |D_closed − tr(monodromy)| at 40 energies, 20000 RK4 steps",
        worst,
        1e-6,
    ));

    // band-edge regression, only meaningful on the reference lattice
    let reference = ModelParams::<f64>::reference();
    let desc = "max deviation of the lowest 8 positive edges from the reference values";
    let is_reference = (m - reference.mass()).abs() < 1e-12
        && (p.gamma() - reference.gamma()).abs() < 1e-12
        && (a - reference.half_period()).abs() < 1e-12;
    if is_reference {
        checks.push(match band_edges(&p, 7.0, 1e-9) {
            Ok(table) => {
                let pos = table.positive_edges();
                let dev = if pos.len() < REFERENCE_EDGES.len() {
                    f64::INFINITY
                } else {
                    pos.iter()
                        .zip(REFERENCE_EDGES)
                        .map(|(f, r)| (f - r).abs())
                        .fold(0.0, f64::max)
                };
                Check::below("band_edge_regression", desc, dev, 2e-3)
            }
            Err(e) => Check::failed("band_edge_regression", desc, e, 2e-3),
        });
    } else {
        checks.push(Check {
            name: "band_edge_regression".into(),
            description: format!("{desc} (skipped: parameters differ from m = 2, λ = 1, a = 1)"),
            measured: f64::NAN,
            threshold: 2e-3,
            status: CheckStatus::Skip,
        });
    }

    // closed form is finite at a sample energy (guards the hook path too)
    let desc = "|D(E₀)| finite at E₀ = 1.5 m";
    checks.push(match lyapunov(&p, regular_energy(&p, 1.5 * m, 0.05)) {
        Ok(v) if v.is_finite() => Check::below("closed_form_finite", desc, 0.0, 1.0),
        Ok(v) => Check::failed("closed_form_finite", desc, v, 1.0),
        Err(e) => Check::failed("closed_form_finite", desc, e, 1.0),
    });

    VerifyReport { checks }
}
