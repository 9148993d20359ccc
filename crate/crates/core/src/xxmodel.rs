//! Bulk two-spin correlators of the spin-1/2 XX chain
//! `H = -½ Σ (σˣσˣ + σʸσʸ) - λ Σ σᶻ` in the thermodynamic limit.
//!
//! Only `λ ≥ 0` is handled; the phase diagram is symmetric in λ and negative
//! fields are rejected rather than folded.

use std::f64::consts::PI;
use std::fmt;

use crate::xstate::XStateParams;
use crate::{Error, Result};

/// Non-negative transverse field strength.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Lambda(f64);

impl Lambda {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::NegativeLambda(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Lambda {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Nearest-neighbour expectation values in the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlators {
    /// `⟨σᶻ_l⟩ = ⟨σᶻ_{l+1}⟩`
    pub sigma_z: f64,
    /// `⟨σᶻ_l σᶻ_{l+1}⟩`
    pub zz: f64,
    /// `⟨σˣ_l σˣ_{l+1}⟩ = ⟨σʸ_l σʸ_{l+1}⟩`
    pub xx: f64,
}

impl Correlators {
    /// Two-site reduced state with `r = ⟨σᶻ⟩`, `c = ⟨σˣσˣ⟩`, `c3 = ⟨σᶻσᶻ⟩`.
    pub fn to_xstate(&self) -> Result<XStateParams> {
        XStateParams::new(self.sigma_z, self.xx, self.zz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `λ < 1`: gapless, quasi-long-range order.
    Critical,
    /// `λ = 1`: first-order transition.
    TransitionPoint,
    /// `λ > 1`: fully polarized ground state.
    Polarized,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Critical => "Critical",
            Phase::TransitionPoint => "TransitionPoint",
            Phase::Polarized => "Polarized",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_phase(lambda: Lambda) -> Phase {
    let l = lambda.value();
    if l < 1.0 {
        Phase::Critical
    } else if l == 1.0 {
        Phase::TransitionPoint
    } else {
        Phase::Polarized
    }
}

/// Correlators of the critical phase, `0 ≤ λ < 1`.
pub fn correlators(lambda: Lambda) -> Result<Correlators> {
    let l = lambda.value();
    if l >= 1.0 {
        return Err(Error::OutsideCriticalPhase(l));
    }
    let magnetization = 1.0 - 2.0 * l.acos() / PI;
    // sin(arccos λ)
    let transverse = (1.0 - l * l).sqrt();
    Ok(Correlators {
        sigma_z: magnetization,
        zz: magnetization * magnetization - 4.0 / (PI * PI) * (1.0 - l * l),
        xx: -2.0 / PI * transverse,
    })
}

/// Correlators of the state `|↑↑⟩`, valid for `λ ≥ 1`.
pub fn polarized_correlators() -> Correlators {
    Correlators {
        sigma_z: 1.0,
        zz: 1.0,
        xx: 0.0,
    }
}

/// Correlators on either side of the transition; `λ = 1` maps to the
/// polarized branch.
pub fn ground_state_correlators(lambda: Lambda) -> Correlators {
    match classify_phase(lambda) {
        Phase::Critical => correlators(lambda).expect("critical branch"),
        Phase::TransitionPoint | Phase::Polarized => polarized_correlators(),
    }
}
