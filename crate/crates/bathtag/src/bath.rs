// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bath occupations and probe thermalization rates.
//!
//! A probe mode of frequency omega0 couples with strength gamma to a thermal
//! bath that is either bosonic or fermionic. The stationary occupation of the
//! probe matches the bath occupation of its own statistics, and the approach
//! rate depends on the cross pairing: the relaxation rate of probe kind `p`
//! against a bath of statistics `q` is gamma * N_q(beta) / N_p(beta).
//!
//! Inverse temperature is a plain `f64` with `f64::INFINITY` as the explicit
//! zero-temperature sentinel, so the limits N -> 0, n_th -> 1 are exact.

use crate::error::{Error, Result};

/// Exchange statistics of the bath (or of a probe's own mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bosonic,
    Fermionic,
}

/// Probe kind: a two-level system (fermionic mode) or a harmonic
/// oscillator (bosonic mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    Tls,
    Qho,
}

impl ProbeKind {
    /// Statistics of the probe's own ladder operator.
    pub fn own_statistics(self) -> Statistics {
        match self {
            ProbeKind::Tls => Statistics::Fermionic,
            ProbeKind::Qho => Statistics::Bosonic,
        }
    }
}

/// One bath hypothesis: statistics plus the shared physical parameters.
///
/// Both hypotheses of a discrimination problem share `beta`, `gamma` and
/// `omega0` and differ only in `statistics`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    pub statistics: Statistics,
    /// Inverse temperature; `f64::INFINITY` encodes zero temperature.
    pub beta: f64,
    /// Probe-bath coupling rate, > 0.
    pub gamma: f64,
    /// Probe frequency, > 0.
    pub omega0: f64,
}

impl BathSpec {
    pub fn new(statistics: Statistics, beta: f64, gamma: f64, omega0: f64) -> Result<Self> {
        if beta.is_nan() || beta < 0.0 {
            return Err(Error::InvalidInput(format!(
                "inverse temperature must be >= 0 (or +inf), got {beta}"
            )));
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "coupling rate must be finite and > 0, got {gamma}"
            )));
        }
        if !omega0.is_finite() || omega0 <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "probe frequency must be finite and > 0, got {omega0}"
            )));
        }
        Ok(Self { statistics, beta, gamma, omega0 })
    }

    /// Same bath parameters with the other (or a chosen) statistics.
    pub fn with_statistics(self, statistics: Statistics) -> Self {
        Self { statistics, ..self }
    }

    /// Bosonic and fermionic hypotheses sharing (beta, gamma, omega0).
    pub fn hypothesis_pair(beta: f64, gamma: f64, omega0: f64) -> Result<(Self, Self)> {
        let b = Self::new(Statistics::Bosonic, beta, gamma, omega0)?;
        Ok((b, b.with_statistics(Statistics::Fermionic)))
    }

    /// Dimensionless inverse temperature beta * omega0.
    pub fn beta_omega(&self) -> f64 {
        self.beta * self.omega0
    }

    /// Bath occupation of this hypothesis' own statistics.
    pub fn occupation(&self) -> Result<f64> {
        occupation_number(self.statistics, self.beta, self.omega0)
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.beta.is_infinite()
    }
}

/// Mean thermal occupation of a mode of frequency `omega0` at inverse
/// temperature `beta`: 1/(e^x - 1) bosonic, 1/(e^x + 1) fermionic, x = beta
/// omega0. Exact 0 at beta = +inf. The bosonic occupation diverges at
/// beta = 0 and returns an error there.
pub fn occupation_number(statistics: Statistics, beta: f64, omega0: f64) -> Result<f64> {
    let x = check_beta_omega(beta, omega0)?;
    match statistics {
        Statistics::Bosonic => {
            if x == 0.0 {
                Err(Error::DivergentOccupation)
            } else {
                // exp_m1 keeps full precision for small x and overflows
                // cleanly to +inf (occupation 0) at x = +inf.
                Ok(1.0 / x.exp_m1())
            }
        }
        Statistics::Fermionic => {
            if x.is_infinite() {
                Ok(0.0)
            } else {
                Ok(1.0 / (x.exp() + 1.0))
            }
        }
    }
}

/// Ratio of bosonic to fermionic occupation at equal (beta, omega0):
/// n_th = N_b / N_f = coth(beta omega0 / 2) >= 1.
///
/// Computed as 1 + 2/(e^x - 1), which equals 1 + 2 N_b and is exact (= 1)
/// at beta = +inf. Diverges at beta = 0.
pub fn thermal_ratio(beta: f64, omega0: f64) -> Result<f64> {
    let x = check_beta_omega(beta, omega0)?;
    if x == 0.0 {
        Err(Error::DivergentThermalRatio)
    } else if x.is_infinite() {
        Ok(1.0)
    } else {
        Ok(1.0 + 2.0 / x.exp_m1())
    }
}

/// Thermalization rate of probe kind `probe` against bath `bath`:
/// gamma * N_q(beta) / N_p(beta) with q the bath statistics and p the
/// probe's own statistics.
///
/// Homogeneous pairings give exactly `gamma` at every temperature; the cross
/// pairings are gamma * n_th (TLS in a bosonic bath) and gamma / n_th (QHO in
/// a fermionic bath). At beta = +inf all four rates equal gamma.
pub fn characteristic_rate(probe: ProbeKind, bath: &BathSpec) -> Result<f64> {
    match (probe, bath.statistics) {
        (ProbeKind::Tls, Statistics::Fermionic) | (ProbeKind::Qho, Statistics::Bosonic) => {
            check_beta_omega(bath.beta, bath.omega0)?;
            Ok(bath.gamma)
        }
        (ProbeKind::Tls, Statistics::Bosonic) => {
            Ok(bath.gamma * thermal_ratio(bath.beta, bath.omega0)?)
        }
        (ProbeKind::Qho, Statistics::Fermionic) => {
            Ok(bath.gamma / thermal_ratio(bath.beta, bath.omega0)?)
        }
    }
}

/// Right-hand side of the excitation balance law
/// d<n>/dt = -rate * <n> + gamma * N_q(beta),
/// with rate = [`characteristic_rate`]. Its fixed point is the probe's own
/// occupation N_p(beta), independent of the bath statistics.
pub fn balance_rhs(probe: ProbeKind, bath: &BathSpec, mean_excitation: f64) -> Result<f64> {
    if !mean_excitation.is_finite() || mean_excitation < 0.0 {
        return Err(Error::InvalidInput(format!(
            "mean excitation must be finite and >= 0, got {mean_excitation}"
        )));
    }
    if probe == ProbeKind::Tls && mean_excitation > 1.0 + 1e-12 {
        return Err(Error::InvalidInput(format!(
            "TLS mean excitation must be <= 1, got {mean_excitation}"
        )));
    }
    let rate = characteristic_rate(probe, bath)?;
    let pump = bath.gamma * occupation_number(bath.statistics, bath.beta, bath.omega0)?;
    Ok(-rate * mean_excitation + pump)
}

/// The four characteristic rates at fixed (beta, gamma, omega0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTable {
    pub tls_fermionic: f64,
    pub tls_bosonic: f64,
    pub qho_fermionic: f64,
    pub qho_bosonic: f64,
}

impl RateTable {
    /// Rates for both probes against both bath hypotheses.
    pub fn compute(beta: f64, gamma: f64, omega0: f64) -> Result<Self> {
        let (bos, fer) = BathSpec::hypothesis_pair(beta, gamma, omega0)?;
        Ok(Self {
            tls_fermionic: characteristic_rate(ProbeKind::Tls, &fer)?,
            tls_bosonic: characteristic_rate(ProbeKind::Tls, &bos)?,
            qho_fermionic: characteristic_rate(ProbeKind::Qho, &fer)?,
            qho_bosonic: characteristic_rate(ProbeKind::Qho, &bos)?,
        })
    }

    /// Slowest of the four rates; sets the longest thermalization timescale.
    pub fn slowest(&self) -> f64 {
        self.qho_fermionic.min(self.tls_fermionic).min(self.tls_bosonic).min(self.qho_bosonic)
    }
}

fn check_beta_omega(beta: f64, omega0: f64) -> Result<f64> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "inverse temperature must be >= 0 (or +inf), got {beta}"
        )));
    }
    if !omega0.is_finite() || omega0 <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "probe frequency must be finite and > 0, got {omega0}"
        )));
    }
    Ok(beta * omega0)
}
