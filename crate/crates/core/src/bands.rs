//! Lyapunov function of the periodized soliton lattice, band edges and the
//! Bloch dispersion law.
//!
//! With the unit-Wronskian basis evaluated at `x₀ = −a`,
//!
//! ```text
//! D(E) = W(ψ̃(a), φ̃(−a)) + W(ψ̃(−a), φ̃(a))
//!      = E/(k² + γ²) · [ 2w₁ cos(2ka + δ) − 2w₂ cos(2ka − δ)
//!                       + (k² − w₁²)/k · sin(2ka + δ) − (k² − w₂²)/k · sin(2ka − δ) ]
//! ```
//!
//! with `w₁,₂ = w₁,₂(a)`. Energies with `|D| < 2` are allowed, `|D| = 2` are
//! band edges, and inside a band `cos(2Ka) = D/2`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{linspace, Real};
use crate::soliton::{w_functions, Kinematics, ModelParams, Regime, DEGENERACY_EPSILON};

/// Lowest eight positive band edges of the `m = 2, λ = 1, a = 1` lattice to
/// three decimals.
pub const REFERENCE_EDGES: [f64; 8] = [0.738, 1.381, 2.164, 3.274, 3.335, 4.802, 4.827, 6.352];

/// Offset of the symmetric limit used at the removable points of `D`; raised
/// to `√ε` for types where that is larger (`f32`).
pub const LIMIT_OFFSET: f64 = 1e-5;

/// Relative bound on the imaginary part discarded from `D`.
pub const NON_REAL_TOLERANCE: f64 = 1e-9;

/// Slack on `|D/2| ≤ 1` accepted by [`dispersion`].
pub const CLAMP_TOLERANCE: f64 = 1e-9;

/// Closed-form `D(E)` in complex arithmetic, with an estimate of its rounding
/// error: the terms of the numerator can be far larger than their sum, and
/// the sum is then divided by `E² − λ²`.
fn lyapunov_parts<T: Real>(params: &ModelParams<T>, energy: T) -> (Complex<T>, T) {
    let c = |v: T| Complex::new(v, T::zero());
    let kin = Kinematics::new(params, energy);
    let k = kin.k();
    let m = c(params.mass());
    let a = params.half_period();
    let (w1, w2) = w_functions(params, a);
    let (w1, w2) = (c(w1), c(w2));

    let two_ka = k * (a + a);
    let cos = two_ka.cos();
    let sin = two_ka.sin();
    // E·cos(2ka ± δ) and E·sin(2ka ± δ) with cos δ = m/E, sin δ = k/E
    let e_cos_plus = m * cos - k * sin;
    let e_cos_minus = m * cos + k * sin;
    let e_sin_plus = m * sin + k * cos;
    let e_sin_minus = m * sin - k * cos;

    let k2 = k * k;
    let two = c(T::two());
    let terms = [
        two * w1 * e_cos_plus,
        -(two * w2 * e_cos_minus),
        (k2 - w1 * w1) / k * e_sin_plus,
        -((k2 - w2 * w2) / k * e_sin_minus),
    ];
    let bracket = terms.iter().fold(c(T::zero()), |acc, t| acc + *t);
    let magnitude = terms.iter().fold(T::zero(), |acc, t| acc + t.norm());
    let l = params.lambda();
    // k² + γ² = E² − λ²
    let denom = (energy - l) * (energy + l);
    let noise = T::lit(16.0) * T::epsilon() * magnitude / denom.abs();
    (bracket / c(denom), noise)
}

fn removable_point<T: Real>(params: &ModelParams<T>, energy: T) -> Option<&'static str> {
    let eps = T::tol(DEGENERACY_EPSILON);
    let m = params.mass();
    let l = params.lambda();
    if ((energy - m) * (energy + m)).abs() < eps {
        Some("k = 0 at |E| = m")
    } else if ((energy - l) * (energy + l)).abs() < eps {
        Some("k² + γ² = 0 at |E| = λ")
    } else {
        None
    }
}

fn real_part<T: Real>(energy: T, d: Complex<T>) -> Result<T> {
    if !(d.im.abs() <= T::tol(NON_REAL_TOLERANCE) * d.re.abs().max(T::one())) {
        return Err(Error::NonRealDiscriminant {
            energy: energy.as_f64(),
            imag: d.im.as_f64(),
        });
    }
    Ok(d.re)
}

/// Closed-form Lyapunov function `D(E)`.
///
/// Evaluated in complex arithmetic on the branch `Im k ≥ 0`; the imaginary
/// part must vanish to `1e-9` relative. Fails at `|E| = m` and `|E| = λ`,
/// where the closed form is `0/0`; see [`lyapunov_regularized`].
pub fn lyapunov<T: Real>(params: &ModelParams<T>, energy: T) -> Result<T> {
    if let Some(reason) = removable_point(params, energy) {
        return Err(Error::DegenerateEnergy {
            energy: energy.as_f64(),
            reason,
        });
    }
    real_part(energy, lyapunov_parts(params, energy).0)
}

/// `D(E)` together with whether it came from the symmetric limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovValue<T> {
    pub value: T,
    pub limit: bool,
}

/// Half width of the interval around `|E| = λ` bridged by interpolation.
///
/// Rounding makes the closed form wrong by about `N/δ` at `|E| = λ + δ`,
/// while a chord across `[λ − w, λ + w]` is off by about `|D''| w²`; `w`
/// balances the two. `N` and `D''` are measured at a distance `W` from `λ`
/// that keeps clear of `0` and `m`. Never below [`LIMIT_OFFSET`].
fn lambda_window<T: Real>(params: &ModelParams<T>) -> T {
    let l = params.lambda();
    let m = params.mass();
    let floor = T::lit(LIMIT_OFFSET).max(T::epsilon().sqrt());
    let big = l.min(m - l) * T::lit(0.05);
    if !(big > floor * T::lit(8.0)) {
        return floor;
    }
    let d = |e: T| lyapunov_parts(params, e).0.re;
    let (_, noise_at_w) = lyapunov_parts(params, l + big);
    let n = noise_at_w * big;
    let curvature = (d(l + big + big) + d(l - big - big) - d(l + big) - d(l - big)) / (T::lit(3.0) * big * big);
    let w = (n / curvature.abs().max(T::one())).cbrt();
    if w.is_finite() {
        w.max(floor).min(big * T::half())
    } else {
        floor
    }
}

/// [`lyapunov`] everywhere, with the removable points handled:
///
/// * at `|E| = m`, the symmetric limit `(D(E − ε) + D(E + ε))/2`, `ε = 1e-5`;
/// * within `w` of `|E| = λ`, the chord between `D(λ − w)` and `D(λ + w)`,
///   where `w ≥ ε` is the window of `lambda_window`. For the reference lattice
///   `w` is a few `1e-5`; for deep wells (large `γa`) it widens, because there
///   the closed form near `λ` is dominated by rounding.
pub fn lyapunov_regularized<T: Real>(params: &ModelParams<T>, energy: T) -> Result<LyapunovValue<T>> {
    let m = params.mass();
    let l = params.lambda();
    let guard = T::tol(DEGENERACY_EPSILON);
    if ((energy - m) * (energy + m)).abs() < guard {
        // in single precision 1e-5 would land inside the degeneracy guard
        let eps = T::lit(LIMIT_OFFSET).max(T::epsilon().sqrt());
        let below = lyapunov(params, energy - eps)?;
        let above = lyapunov(params, energy + eps)?;
        return Ok(LyapunovValue {
            value: (below + above) * T::half(),
            limit: true,
        });
    }
    let at_lambda = ((energy - l) * (energy + l)).abs() < guard;
    let offset = energy.abs() - l;
    // the window never exceeds 0.025·min(λ, m − λ), so skip measuring it
    // away from λ
    if !at_lambda && offset.abs() >= l.min(m - l) * T::lit(0.025) {
        return lyapunov(params, energy).map(|value| LyapunovValue { value, limit: false });
    }
    let w = lambda_window(params);
    if !at_lambda && offset.abs() >= w {
        return lyapunov(params, energy).map(|value| LyapunovValue { value, limit: false });
    }
    // D is even, so work at +λ
    let lo = real_part(l - w, lyapunov_parts(params, l - w).0)?;
    let hi = real_part(l + w, lyapunov_parts(params, l + w).0)?;
    let t = (offset + w) / (w + w);
    Ok(LyapunovValue {
        value: lo + t * (hi - lo),
        limit: true,
    })
}

/// One row of a sampled Lyapunov function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovSample<T> {
    pub energy: T,
    pub value: T,
    pub regime: Regime,
    pub limit: bool,
}

/// `D(E)` sampled on an increasing energy grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovTrace<T> {
    pub params: ModelParams<T>,
    pub samples: Vec<LyapunovSample<T>>,
}

impl<T: Real> LyapunovTrace<T> {
    /// Number of sign changes of `|D| − 2` between consecutive samples.
    pub fn edge_crossings(&self) -> usize {
        self.samples
            .windows(2)
            .filter(|w| {
                let a = w[0].value.abs() - T::two();
                let b = w[1].value.abs() - T::two();
                (a < T::zero()) != (b < T::zero())
            })
            .count()
    }
}

/// Samples `D` at `n` evenly spaced energies in `[e_min, e_max]`.
pub fn lyapunov_trace<T: Real>(params: &ModelParams<T>, e_min: T, e_max: T, n: usize) -> Result<LyapunovTrace<T>> {
    if !(e_min < e_max) {
        return Err(Error::InvalidParams(format!(
            "need e_min < e_max, got [{e_min}, {e_max}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 samples, got {n}")));
    }
    let samples = linspace(e_min, e_max, n)
        .into_par_iter()
        .map(|e| {
            lyapunov_regularized(params, e).map(|v| LyapunovSample {
                energy: e,
                value: v.value,
                regime: Regime::classify(params.mass(), e),
                limit: v.limit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LyapunovTrace {
        params: *params,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandKind {
    Allowed,
    Forbidden,
}

/// Interval between two consecutive boundaries of a [`BandTable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band<T> {
    pub lo: T,
    pub hi: T,
    pub kind: BandKind,
    /// Both ends are band edges (not the `±e_max` cut).
    pub closed: bool,
}

/// Band edges in `[−e_max, e_max]` and the intervals they delimit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandTable<T> {
    pub params: ModelParams<T>,
    pub e_max: T,
    pub tol: T,
    pub edges: Vec<T>,
    pub bands: Vec<Band<T>>,
}

impl<T: Real> BandTable<T> {
    pub fn positive_edges(&self) -> Vec<T> {
        self.edges.iter().copied().filter(|e| *e > T::zero()).collect()
    }

    /// Closed allowed bands. Index `0, 1, …` counts upward from `E = 0`;
    /// `−1, −2, …` counts downward on the negative spectrum.
    pub fn allowed_band(&self, index: i64) -> Option<Band<T>> {
        let allowed = self.bands.iter().filter(|b| b.kind == BandKind::Allowed && b.closed);
        if index >= 0 {
            allowed.filter(|b| b.hi > T::zero()).nth(index as usize).copied()
        } else {
            let neg: Vec<_> = allowed.filter(|b| b.lo < T::zero()).collect();
            let j = (-index - 1) as usize;
            neg.iter().rev().nth(j).map(|b| **b)
        }
    }

    pub fn gaps(&self) -> impl Iterator<Item = &Band<T>> {
        self.bands.iter().filter(|b| b.kind == BandKind::Forbidden && b.closed)
    }
}

/// Tuning of the edge search in [`band_edges_with`].
#[derive(Debug, Clone, Copy)]
pub struct BandSearch<T> {
    /// Base energy grid spacing.
    pub grid_step: T,
    /// Sampled extrema of `|D|` closer than this to 2 are refined.
    pub refine_window: T,
    /// Extrema overshooting 2 by less than this count as touching edges.
    pub gap_floor: T,
}

impl<T: Real> Default for BandSearch<T> {
    fn default() -> Self {
        Self {
            grid_step: T::lit(0.01),
            refine_window: T::lit(0.05),
            gap_floor: T::tol(1e-10),
        }
    }
}

/// Band edges with `|E| ≤ e_max`, bisected to `tol`, with the defaults of
/// [`BandSearch`].
pub fn band_edges<T: Real>(params: &ModelParams<T>, e_max: T, tol: T) -> Result<BandTable<T>> {
    band_edges_with(params, e_max, tol, &BandSearch::default())
}

fn golden_section<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, maximize: bool) -> (T, T) {
    let g = if maximize { |v: T| -v } else { |v: T| v };
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::half();
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(f(x1));
    let mut f2 = g(f(x2));
    for _ in 0..200 {
        if hi - lo <= T::epsilon() * T::lit(16.0) * hi.abs().max(T::one()) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(f(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(f(x2));
        }
    }
    let (x, v) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    (x, g(v))
}

fn bisect<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let mut f_lo = f(lo);
    for _ in 0..400 {
        let mid = (lo + hi) * T::half();
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return mid;
        }
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::half()
}

/// Locates every edge in `[0, e_max]` and mirrors it to the negative side.
///
/// Sign changes of `D ∓ 2` on the base grid give brackets directly. Narrow
/// gaps (or narrow bands) that fit between two grid points show up as a
/// sampled extremum of `D` just short of ±2; those are refined by a
/// golden-section search for the true extremum, which, when it crosses ±2,
/// splits the neighbourhood into two brackets. `D` itself is used rather
/// than `|D|`, whose kink at `D = 0` would pass for a minimum. All brackets are then
/// bisected to `tol`.
pub fn band_edges_with<T: Real>(
    params: &ModelParams<T>,
    e_max: T,
    tol: T,
    search: &BandSearch<T>,
) -> Result<BandTable<T>> {
    if !(e_max > T::zero() && e_max.is_finite()) {
        return Err(Error::InvalidParams(format!("e_max must be positive, got {e_max}")));
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidParams(format!("tol must be positive, got {tol}")));
    }
    if !(search.grid_step > T::zero()) {
        return Err(Error::InvalidParams("grid step must be positive".into()));
    }
    let eval = |e: T| lyapunov_regularized(params, e).map(|v| v.value);
    let d_of = |e: T| eval(e).unwrap_or_else(|_| T::nan());

    let cells = (e_max / search.grid_step).ceil().to_usize().unwrap_or(1).max(2);
    let grid = linspace(T::zero(), e_max, cells + 1);
    let d = grid.par_iter().map(|&e| eval(e)).collect::<Result<Vec<T>>>()?;
    let two = T::two();

    let mut brackets: Vec<(T, T, T)> = Vec::new();
    let mut edges: Vec<T> = Vec::new();
    for target in [two, -two] {
        for i in 0..cells {
            let f0 = d[i] - target;
            let f1 = d[i + 1] - target;
            if f0 == T::zero() {
                edges.push(grid[i]);
            } else if f1 != T::zero() && (f0 < T::zero()) != (f1 < T::zero()) {
                brackets.push((grid[i], grid[i + 1], target));
            }
        }
        if d[cells] - target == T::zero() {
            edges.push(grid[cells]);
        }
    }

    for i in 0..cells {
        let here = d[i];
        // D is even, so the sample left of E = 0 mirrors the one to its right
        let left = if i == 0 { d[1] } else { d[i - 1] };
        let right = d[i + 1];
        let (lo, hi) = if i == 0 {
            (T::zero(), grid[1])
        } else {
            (grid[i - 1], grid[i + 1])
        };
        let is_max = here >= left && here >= right;
        let is_min = here <= left && here <= right;
        // a sampled extremum of D just short of ±2 may hide a crossing
        let candidate = [two, -two].into_iter().find_map(|target| {
            if is_max && here < target && here > target - search.refine_window {
                Some((target, true))
            } else if is_min && here > target && here < target + search.refine_window {
                Some((target, false))
            } else {
                None
            }
        });
        let Some((target, maximize)) = candidate else {
            continue;
        };
        let (e_star, v) = golden_section(d_of, lo, hi, maximize);
        let crosses = if maximize {
            v > target + search.gap_floor
        } else {
            v < target - search.gap_floor
        };
        if !crosses {
            continue;
        }
        for (a, b) in [(lo, e_star), (e_star, hi)] {
            let (fa, fb) = (d_of(a) - target, d_of(b) - target);
            if b > a && (fa < T::zero()) != (fb < T::zero()) {
                brackets.push((a, b, target));
            }
        }
    }

    edges.extend(
        brackets
            .par_iter()
            .map(|&(lo, hi, target)| bisect(|e| d_of(e) - target, lo, hi, tol))
            .collect::<Vec<_>>(),
    );
    edges.sort_by(|a, b| a.partial_cmp(b).expect("finite edges"));
    edges.dedup();
    for w in edges.windows(2) {
        if w[1] - w[0] < tol {
            return Err(Error::GridTooCoarse {
                energy: w[0].as_f64(),
                tol: tol.as_f64(),
            });
        }
    }

    let mut all: Vec<T> = edges.iter().rev().filter(|e| **e > T::zero()).map(|e| -*e).collect();
    all.extend(edges.iter().copied());

    let mut bounds = vec![(-e_max, false)];
    bounds.extend(all.iter().filter(|e| e.abs() < e_max).map(|e| (*e, true)));
    bounds.push((e_max, false));
    let bands = bounds
        .windows(2)
        .filter(|w| w[1].0 > w[0].0)
        .map(|w| {
            let mid = (w[0].0 + w[1].0) * T::half();
            let kind = if d_of(mid).abs() <= two {
                BandKind::Allowed
            } else {
                BandKind::Forbidden
            };
            Band {
                lo: w[0].0,
                hi: w[1].0,
                kind,
                closed: w[0].1 && w[1].1,
            }
        })
        .collect();

    Ok(BandTable {
        params: *params,
        e_max,
        tol,
        edges: all,
        bands,
    })
}

/// One `(E, K)` sample of the dispersion law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionPoint<T> {
    pub energy: T,
    pub wavenumber: T,
}

/// `K(E) = arccos(D(E)/2) / 2a` at `n` energies spanning `[lo, hi]`.
///
/// `|D/2|` may exceed one by [`CLAMP_TOLERANCE`] and is clamped. At the two
/// end points, which are band edges, `K` is snapped to `0` or `π/2a` when
/// `|D/2|` is that close to one.
pub fn dispersion<T: Real>(params: &ModelParams<T>, band: (T, T), n: usize) -> Result<Vec<DispersionPoint<T>>> {
    let (lo, hi) = band;
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 samples, got {n}")));
    }
    if !(lo < hi) {
        return Err(Error::InvalidParams(format!("empty band [{lo}, {hi}]")));
    }
    let two_a = params.period();
    let slack = T::tol(CLAMP_TOLERANCE);
    let energies = linspace(lo, hi, n);
    let values = energies
        .par_iter()
        .map(|&e| lyapunov_regularized(params, e).map(|v| v.value))
        .collect::<Result<Vec<_>>>()?;
    energies
        .iter()
        .zip(values)
        .enumerate()
        .map(|(i, (&e, d))| {
            let half = d * T::half();
            if half.abs() > T::one() + slack || half.is_nan() {
                return Err(Error::NotAllowedBand {
                    lo: lo.as_f64(),
                    hi: hi.as_f64(),
                    energy: e.as_f64(),
                    d_abs: d.abs().as_f64(),
                });
            }
            let at_end = i == 0 || i == n - 1;
            let cos = if at_end && (half.abs() - T::one()).abs() <= slack {
                half.signum()
            } else {
                half.max(-T::one()).min(T::one())
            };
            Ok(DispersionPoint {
                energy: e,
                wavenumber: cos.acos() / two_a,
            })
        })
        .collect()
}
