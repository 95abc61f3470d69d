use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dirac_soliton::Params;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Mass m
    #[arg(long, global = true, default_value_t = 2.0, allow_hyphen_values = true)]
    pub mass: f64,

    /// Bound-state energy λ (γ = sqrt(m² − λ²)); λ = 1 if neither is given
    #[arg(long, global = true, conflicts_with = "gamma", allow_hyphen_values = true)]
    pub lambda: Option<f64>,

    /// Soliton parameter γ (λ = sqrt(m² − γ²))
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<f64>,

    /// Half period a of the lattice
    #[arg(
        long = "half-period",
        global = true,
        default_value_t = 1.0,
        allow_hyphen_values = true
    )]
    pub half_period: f64,

    /// Lower end of the energy range (x range for `potential` is set by --periods)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub emin: Option<f64>,

    /// Upper end of the energy range
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub emax: Option<f64>,

    /// Number of output rows
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    /// Bisection tolerance for band edges
    #[arg(long, global = true, default_value_t = 1e-9, allow_hyphen_values = true)]
    pub tol: f64,

    /// Allowed band for `dispersion`: 0, 1, … upward from E = 0; −1, −2, … downward
    #[arg(long = "band-index", global = true, default_value_t = 0, allow_hyphen_values = true)]
    pub band_index: i64,

    /// Output format (default: json for `bands` and `verify`, csv otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file (default: standard output)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Cross-check band edges against the RK4 monodromy
    #[arg(long, global = true)]
    pub verify: bool,

    /// Two-column CSV (x, S) over one cell, used by `lyapunov` through the ODE integrator
    #[arg(long = "potential-file", global = true)]
    pub potential_file: Option<PathBuf>,

    /// Number of periods covered by `potential`
    #[arg(long, global = true, default_value_t = 3)]
    pub periods: usize,

    /// Multiplies α; sensitivity hook for the verification suite
    #[arg(long = "alpha-scale", global = true, hide = true, allow_hyphen_values = true)]
    pub alpha_scale: Option<f64>,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub e_min: f64,
    pub e_max: f64,
    pub samples: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Per-command defaults for the fields the user may leave out.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub e_min: f64,
    pub e_max: f64,
    pub samples: usize,
    pub format: Format,
}

fn finite(field: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(field, format!("must be finite, got {v}")))
    }
}

impl CommonArgs {
    pub fn params(&self) -> Result<Params> {
        let m = finite("--mass", self.mass)?;
        let a = finite("--half-period", self.half_period)?;
        if m <= 0.0 {
            return Err(CliError::validation("--mass", format!("must be positive, got {m}")));
        }
        if a <= 0.0 {
            return Err(CliError::validation(
                "--half-period",
                format!("must be positive, got {a}"),
            ));
        }
        let params = match (self.lambda, self.gamma) {
            (Some(_), Some(_)) => {
                return Err(CliError::validation("--lambda/--gamma", "give only one of them"));
            }
            (_, Some(g)) => {
                let g = finite("--gamma", g)?;
                if !(g > 0.0 && g < m) {
                    return Err(CliError::validation(
                        "--gamma",
                        format!("need 0 < γ < m = {m}, got {g}"),
                    ));
                }
                Params::new(m, g, a)?
            }
            (l, None) => {
                let l = finite("--lambda", l.unwrap_or(1.0))?;
                if !(l > 0.0 && l < m) {
                    return Err(CliError::validation(
                        "--lambda",
                        format!("need 0 < λ < m = {m}, got {l}"),
                    ));
                }
                Params::from_lambda(m, l, a)?
            }
        };
        match self.alpha_scale {
            Some(s) => Ok(params.with_alpha_scaled(finite("--alpha-scale", s)?)),
            None => Ok(params),
        }
    }

    pub fn resolve(&self, defaults: Defaults) -> Result<RunConfig> {
        let params = self.params()?;
        let e_min = finite("--emin", self.emin.unwrap_or(defaults.e_min))?;
        let e_max = finite("--emax", self.emax.unwrap_or(defaults.e_max))?;
        if e_min >= e_max {
            return Err(CliError::validation(
                "--emin/--emax",
                format!("need emin < emax, got [{e_min}, {e_max}]"),
            ));
        }
        let samples = self.samples.unwrap_or(defaults.samples);
        if samples < 2 {
            return Err(CliError::validation(
                "--samples",
                format!("need at least 2, got {samples}"),
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::validation(
                "--tol",
                format!("must be positive, got {}", self.tol),
            ));
        }
        if self.periods == 0 {
            return Err(CliError::validation("--periods", "must be at least 1"));
        }
        Ok(RunConfig {
            params,
            e_min,
            e_max,
            samples,
            tol: self.tol,
            format: self.format.unwrap_or(defaults.format),
            out: self.out.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[derive(Parser)]
    struct Wrap {
        #[command(flatten)]
        args: CommonArgs,
    }

    fn parse(argv: &[&str]) -> CommonArgs {
        Wrap::parse_from(std::iter::once("t").chain(argv.iter().copied())).args
    }

    const D: Defaults = Defaults {
        e_min: 0.0,
        e_max: 7.0,
        samples: 10,
        format: Format::Csv,
    };

    #[test]
    fn lambda_and_gamma_are_consistent() {
        for argv in [
            &["--lambda", "0.7"][..],
            &["--gamma", "1.3"],
            &[],
            &["--mass", "5", "--gamma", "4.99"],
        ] {
            let p = parse(argv).params().unwrap();
            let err = (p.mass().powi(2) - p.gamma().powi(2) - p.lambda().powi(2)).abs();
            assert!(err < 1e-12, "{argv:?}: {err}");
        }
        assert!((parse(&[]).params().unwrap().lambda() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn field_specific_messages() {
        let msg = |argv: &[&str]| parse(argv).resolve(D).unwrap_err().to_string();
        assert!(msg(&["--mass", "-1"]).contains("--mass"));
        assert!(msg(&["--gamma", "2"]).contains("--gamma"));
        assert!(msg(&["--emin", "5", "--emax", "5"]).contains("--emin/--emax"));
        assert!(msg(&["--samples", "1"]).contains("--samples"));
        assert!(msg(&["--tol", "-1e-9"]).contains("--tol"));
        assert!(msg(&["--half-period", "0"]).contains("--half-period"));
    }

    #[test]
    fn defaults_fill_gaps() {
        let c = parse(&["--emax", "3", "--format", "json"]).resolve(D).unwrap();
        assert_eq!((c.e_min, c.e_max, c.samples, c.format), (0.0, 3.0, 10, Format::Json));
        let c = parse(&["--emin", "-2"]).resolve(D).unwrap();
        assert_eq!(c.e_min, -2.0);
    }
}
