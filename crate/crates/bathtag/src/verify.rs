// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Randomized cross-validation of the closed-form modules against the
//! Fock-basis oracle.
//!
//! Each case draws a bath temperature, a measurement time, and an input
//! state, evolves the state under both bath hypotheses twice - once through
//! the analytic solutions and once by direct integration - and reports the
//! worst deviations in trajectories, distances, and Chernoff overlaps.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bath::{characteristic_rate, occupation_number, BathSpec, ProbeKind, Statistics};
use crate::error::{Error, Result};
use crate::gaussian::{
    evolve_ladder_moments, evolve_params, gaussian_chernoff_r, params_to_moments, GaussianParams,
};
use crate::oracle::{chernoff_direct, trace_norm_distance, FockDensity};
use crate::tls::{
    evolve_bloch, qubit_chernoff_r, trace_distance_tls, BlochVector, QubitChernoffInputs,
};
use crate::Frame;

/// Largest accepted Bloch-component deviation along trajectories.
pub const BLOCH_TOL: f64 = 1e-6;
/// Largest accepted ladder-moment deviation.
pub const MOMENT_TOL: f64 = 1e-6;
/// Largest accepted trace-norm-distance deviation.
pub const DISTANCE_TOL: f64 = 1e-5;
/// Largest accepted Chernoff-overlap deviation.
pub const Q_TOL: f64 = 1e-5;
/// Largest accepted truncation tail population on evolved states.
pub const TAIL_TOL: f64 = 1e-8;

/// Knobs of the verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Pin the Fock truncation; `None` starts at 64 and doubles on demand.
    pub dim: Option<usize>,
    /// Absolute integrator step used for every case when `Some`.
    pub dt_override: Option<f64>,
    /// Randomized cases per probe type.
    pub cases_per_probe: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { dim: None, dt_override: None, cases_per_probe: 20, seed: 17 }
    }
}

/// Deviations of a single randomized case; `None` marks comparisons that do
/// not apply to the probe type.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub label: String,
    pub bloch_dev: Option<f64>,
    pub moment_dev: Option<f64>,
    pub distance_dev: Option<f64>,
    pub q_dev: Option<f64>,
    pub tail: f64,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.bloch_dev.is_none_or(|d| d <= BLOCH_TOL)
            && self.moment_dev.is_none_or(|d| d <= MOMENT_TOL)
            && self.distance_dev.is_none_or(|d| d <= DISTANCE_TOL)
            && self.q_dev.is_none_or(|d| d <= Q_TOL)
            && self.tail <= TAIL_TOL
    }
}

/// Aggregate outcome of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub cases: Vec<CaseReport>,
    pub max_bloch_dev: f64,
    pub max_moment_dev: f64,
    pub max_distance_dev: f64,
    pub max_q_dev: f64,
    pub tail_population: f64,
}

impl OracleReport {
    fn from_cases(cases: Vec<CaseReport>) -> Self {
        let fold = |pick: fn(&CaseReport) -> Option<f64>| {
            cases.iter().filter_map(pick).fold(0.0, f64::max)
        };
        Self {
            max_bloch_dev: fold(|c| c.bloch_dev),
            max_moment_dev: fold(|c| c.moment_dev),
            max_distance_dev: fold(|c| c.distance_dev),
            max_q_dev: fold(|c| c.q_dev),
            tail_population: cases.iter().map(|c| c.tail).fold(0.0, f64::max),
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }

    pub fn first_failure(&self) -> Option<&CaseReport> {
        self.cases.iter().find(|c| !c.passed())
    }
}

/// Run the full randomized comparison for both probe types.
pub fn run_verification(config: &VerifyConfig) -> Result<OracleReport> {
    if config.cases_per_probe == 0 {
        return Err(Error::InvalidInput("case count must be >= 1".into()));
    }
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut cases = Vec::with_capacity(2 * config.cases_per_probe);
    for i in 0..config.cases_per_probe {
        cases.push(tls_case(config, &mut rng, i)?);
    }
    for i in 0..config.cases_per_probe {
        cases.push(qho_case(config, &mut rng, i)?);
    }
    Ok(OracleReport::from_cases(cases))
}

/// Integrator step for a case: 1e-3 over the faster of the two hypothesis
/// rates, optionally coarsened by the override factor.
fn case_dt(config: &VerifyConfig, bos: &BathSpec, fer: &BathSpec, probe: ProbeKind) -> Result<f64> {
    let rate_b = characteristic_rate(probe, bos)?;
    let rate_f = characteristic_rate(probe, fer)?;
    Ok(match config.dt_override {
        Some(dt) => dt,
        None => 1e-3 / rate_b.max(rate_f),
    })
}

fn random_bloch(rng: &mut StdRng) -> BlochVector {
    loop {
        if let Ok(v) = BlochVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ) {
            return v;
        }
    }
}

fn tls_case(config: &VerifyConfig, rng: &mut StdRng, index: usize) -> Result<CaseReport> {
    let beta = rng.gen_range(0.3..3.0);
    let t = rng.gen_range(0.05..3.0);
    let v0 = random_bloch(rng);
    let r = rng.gen_range(0.1..0.9);
    let (bos, fer) = BathSpec::hypothesis_pair(beta, 1.0, 1.0)?;
    let dt = case_dt(config, &bos, &fer, ProbeKind::Tls)?;

    let rho0 = FockDensity::from_bloch(&v0);
    let mut bloch_dev = 0.0f64;
    let mut finals = Vec::with_capacity(2);
    for bath in [&bos, &fer] {
        for &checkpoint in &[0.5 * t, t] {
            let numeric = rho0.evolve(bath, ProbeKind::Tls, checkpoint, dt)?.bloch()?;
            let analytic = evolve_bloch(&v0, bath, checkpoint, Frame::Lab)?;
            bloch_dev = bloch_dev
                .max((numeric.sx - analytic.sx).abs())
                .max((numeric.sy - analytic.sy).abs())
                .max((numeric.sz - analytic.sz).abs());
        }
        finals.push((
            rho0.evolve(bath, ProbeKind::Tls, t, dt)?,
            evolve_bloch(&v0, bath, t, Frame::Lab)?,
        ));
    }
    let (numeric_b, analytic_b) = &finals[0];
    let (numeric_f, analytic_f) = &finals[1];
    let distance_dev = (trace_norm_distance(numeric_b, numeric_f)?
        - trace_distance_tls(analytic_b, analytic_f))
    .abs();
    let q_direct = chernoff_direct(numeric_b, numeric_f, r)?;
    let q_closed = qubit_chernoff_r(&QubitChernoffInputs::from_bloch(analytic_b, analytic_f), r)?;

    Ok(CaseReport {
        label: format!("tls-{index:02} beta_omega={beta:.3} t={t:.3} r={r:.3}"),
        bloch_dev: Some(bloch_dev),
        moment_dev: None,
        distance_dev: Some(distance_dev),
        q_dev: Some((q_direct - q_closed).abs()),
        // The two-level basis is exact; there is no truncation leakage.
        tail: 0.0,
    })
}

/// Upper bound on the predicted final occupation accepted for randomized
/// oscillator cases: keeps evolved tails beyond the 64-level truncation
/// comfortably under [`TAIL_TOL`].
const MAX_PREDICTED_OCCUPATION: f64 = 2.4;

fn qho_case(config: &VerifyConfig, rng: &mut StdRng, index: usize) -> Result<CaseReport> {
    // First four cases pin the canonical inputs; the rest are random
    // displaced squeezed thermal states.
    let (desc, input, beta, t) = match index {
        0..=3 => {
            let beta = rng.gen_range(0.29..2.0);
            let t = rng.gen_range(0.05..1.0);
            let (desc, input) = canonical_input(index)?;
            (desc, input, beta, t)
        }
        _ => loop {
            let beta = rng.gen_range(0.29..2.0);
            let t: f64 = rng.gen_range(0.05..1.0);
            let nu = rng.gen_range(1.0..3.0);
            let mag = rng.gen_range(0.0..1.4);
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let chi = rng.gen_range(0.0..0.55);
            let phase = rng.gen_range(-3.1..3.1);
            let input = GaussianParams::new(
                nu,
                nalgebra::Vector2::new(mag * angle.cos(), mag * angle.sin()),
                chi,
                phase,
            )?;
            let n_bath = occupation_number(Statistics::Bosonic, beta, 1.0)?;
            let heat = 1.0 - (-t).exp();
            let predicted = input.mean_excitation() * (1.0 - heat) + n_bath * heat;
            if predicted <= MAX_PREDICTED_OCCUPATION {
                break ("random", input, beta, t);
            }
        },
    };
    let (bos, fer) = BathSpec::hypothesis_pair(beta, 1.0, 1.0)?;
    let dt = case_dt(config, &bos, &fer, ProbeKind::Qho)?;
    let r = rng.gen_range(0.2..0.8);

    let rho0 = match config.dim {
        Some(dim) => FockDensity::from_gaussian(&input, dim)?,
        None => FockDensity::from_gaussian_auto(&input, 64)?,
    };
    let lm0 = params_to_moments(&input).to_ladder();
    let mut moment_dev = 0.0f64;
    let mut tail = 0.0f64;
    let mut numeric = Vec::with_capacity(2);
    let mut analytic = Vec::with_capacity(2);
    for bath in [&bos, &fer] {
        let evolved = rho0.evolve(bath, ProbeKind::Qho, t, dt)?;
        let got = evolved.ladder_moments();
        let want = evolve_ladder_moments(&lm0, bath, t, Frame::Lab)?;
        moment_dev = moment_dev
            .max((got.a_mean - want.a_mean).norm())
            .max((got.a2_mean - want.a2_mean).norm())
            .max((got.n_mean - want.n_mean).abs());
        tail = tail.max(evolved.tail_weight());
        numeric.push(evolved);
        analytic.push(evolve_params(&input, bath, t, Frame::Lab)?);
    }
    let q_direct = chernoff_direct(&numeric[0], &numeric[1], r)?;
    let q_formula = gaussian_chernoff_r(&analytic[0], &analytic[1], r)?;

    Ok(CaseReport {
        label: format!("qho-{index:02} {desc} beta_omega={beta:.3} t={t:.3} r={r:.3}"),
        bloch_dev: None,
        moment_dev: Some(moment_dev),
        distance_dev: None,
        q_dev: Some((q_direct - q_formula).abs()),
        tail,
    })
}

/// The fixed reference inputs: ground state plus the three states of equal
/// unit mean excitation (coherent, thermal, squeezed).
fn canonical_input(index: usize) -> Result<(&'static str, GaussianParams)> {
    match index {
        0 => Ok(("ground", GaussianParams::vacuum())),
        1 => Ok((
            "coherent",
            GaussianParams::coherent(nalgebra::Vector2::new(std::f64::consts::SQRT_2, 0.0))?,
        )),
        2 => Ok(("thermal", GaussianParams::thermal(3.0)?)),
        3 => Ok(("squeezed", GaussianParams::squeezed(0.5 * 3.0f64.acosh())?)),
        _ => Err(Error::InvalidInput(format!("no canonical input with index {index}"))),
    }
}
