// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Harmonic-oscillator probe: Gaussian states and their discrimination.
//!
//! Single-mode Gaussian states are parameterized as displaced squeezed
//! thermal states (nu, xi, chi): covariance sigma = nu * S(chi) S(chi)^T and
//! mean quadrature vector xi, with S the symplectic squeeze matrix. Under
//! either bath hypothesis the ladder moments <a>, <a^2>, <a^dag a> close on
//! themselves, so evolution, effective state temperature, and the Gaussian
//! quantum Chernoff overlap are all available in closed form.
//!
//! Quadrature convention: x = (a + a^dag)/sqrt(2), y = (a - a^dag)/(sqrt(2) i),
//! vacuum covariance = identity, det sigma >= 1 for physical states.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::bath::{
    characteristic_rate, occupation_number, thermal_ratio, BathSpec, ProbeKind, Statistics,
};
use crate::discriminate::{minimize_scalar, DiscriminationCurve};
use crate::error::{Error, Result};
use crate::Frame;

/// Tolerance on the physicality bound det sigma >= 1.
const DET_EPS: f64 = 1e-8;

/// Displaced squeezed thermal parameterization of a Gaussian state.
///
/// `nu` is the symplectic eigenvalue (thermal scale, >= 1), `xi` the mean
/// quadrature displacement, and `chi_mod`, `chi_phase` the modulus and phase
/// of the squeezing parameter chi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub nu: f64,
    pub xi: Vector2<f64>,
    pub chi_mod: f64,
    pub chi_phase: f64,
}

impl GaussianParams {
    pub fn new(nu: f64, xi: Vector2<f64>, chi_mod: f64, chi_phase: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 1.0 - DET_EPS {
            return Err(Error::InvalidInput(format!(
                "thermal scale nu must be finite and >= 1, got {nu}"
            )));
        }
        if !(xi.x.is_finite() && xi.y.is_finite()) {
            return Err(Error::InvalidInput("displacement must be finite".into()));
        }
        if !chi_mod.is_finite() || chi_mod < 0.0 {
            return Err(Error::InvalidInput(format!(
                "squeezing modulus must be finite and >= 0, got {chi_mod}"
            )));
        }
        if !chi_phase.is_finite() {
            return Err(Error::InvalidInput("squeezing phase must be finite".into()));
        }
        let chi_phase = if chi_mod == 0.0 { 0.0 } else { wrap_phase(chi_phase) };
        Ok(Self { nu: nu.max(1.0), xi, chi_mod, chi_phase })
    }

    pub fn vacuum() -> Self {
        Self { nu: 1.0, xi: Vector2::zeros(), chi_mod: 0.0, chi_phase: 0.0 }
    }

    /// Undisplaced thermal state with symplectic eigenvalue nu = 2 n + 1.
    pub fn thermal(nu: f64) -> Result<Self> {
        Self::new(nu, Vector2::zeros(), 0.0, 0.0)
    }

    /// Coherent state with quadrature displacement xi.
    pub fn coherent(xi: Vector2<f64>) -> Result<Self> {
        Self::new(1.0, xi, 0.0, 0.0)
    }

    /// Squeezed vacuum with modulus chi_mod along the x quadrature.
    pub fn squeezed(chi_mod: f64) -> Result<Self> {
        Self::new(1.0, Vector2::zeros(), chi_mod, 0.0)
    }

    /// Effective inverse temperature of the thermal scale:
    /// beta = (1/omega0) ln((nu+1)/(nu-1)), +inf at nu = 1.
    pub fn state_beta(&self, omega0: f64) -> f64 {
        if self.nu <= 1.0 {
            f64::INFINITY
        } else {
            ((self.nu + 1.0) / (self.nu - 1.0)).ln() / omega0
        }
    }

    /// Thermal occupation of the state's own scale, (nu - 1)/2.
    pub fn thermal_occupation(&self) -> f64 {
        0.5 * (self.nu - 1.0)
    }

    /// Mean excitation number <a^dag a> = (cosh(2 chi) nu + |xi|^2 - 1)/2.
    pub fn mean_excitation(&self) -> f64 {
        0.5 * ((2.0 * self.chi_mod).cosh() * self.nu + self.xi.norm_squared() - 1.0)
    }
}

/// First and second quadrature moments (R, sigma).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMoments {
    pub r: Vector2<f64>,
    pub sigma: Matrix2<f64>,
}

/// Ladder-operator moments; the minimal closed set under the master equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderMoments {
    pub a_mean: Complex64,
    pub a2_mean: Complex64,
    pub n_mean: f64,
}

/// Symplectic squeeze matrix S(chi), symmetric with det 1.
fn squeeze_matrix(chi_mod: f64, chi_phase: f64) -> Matrix2<f64> {
    let (ch, sh) = (chi_mod.cosh(), chi_mod.sinh());
    let (sin, cos) = chi_phase.sin_cos();
    Matrix2::new(ch + sh * cos, sh * sin, sh * sin, ch - sh * cos)
}

/// Quadrature moments of a parameterized state: R = xi,
/// sigma = nu S(chi) S(chi)^T.
pub fn params_to_moments(p: &GaussianParams) -> GaussianMoments {
    let s = squeeze_matrix(p.chi_mod, p.chi_phase);
    GaussianMoments { r: p.xi, sigma: s * s.transpose() * p.nu }
}

/// Recover (nu, xi, chi) from quadrature moments.
///
/// nu = sqrt(det sigma); the squeezing modulus and phase come from the
/// eigen-split of sigma / nu, whose eigenvalues are e^(+-2 chi_mod) with the
/// major axis at angle chi_phase / 2.
pub fn moments_to_params(m: &GaussianMoments) -> Result<GaussianParams> {
    let det = m.sigma.determinant();
    if !det.is_finite() || det < 1.0 - DET_EPS {
        return Err(Error::UnphysicalCovariance(det));
    }
    if (m.sigma.m12 - m.sigma.m21).abs() > 1e-10 * det.sqrt().max(1.0) {
        return Err(Error::InvalidInput("covariance matrix must be symmetric".into()));
    }
    let nu = det.sqrt().max(1.0);
    // Symmetric 2x2 eigen-split of sigma / nu = [[a, b], [b, c]].
    let (a, b, c) = (m.sigma.m11 / nu, m.sigma.m12 / nu, m.sigma.m22 / nu);
    let mean = 0.5 * (a + c);
    let disc = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let lam_max = mean + disc;
    let (chi_mod, chi_phase) = if lam_max <= 1.0 + 1e-12 {
        (0.0, 0.0)
    } else {
        // Major-axis eigenvector, canonicalized to x >= 0 so the phase maps
        // back into (-pi, pi].
        let (mut ex, mut ey) =
            if b.abs() > (lam_max - a).abs() { (b, lam_max - a) } else { (lam_max - c, b) };
        if ex < 0.0 || (ex == 0.0 && ey < 0.0) {
            ex = -ex;
            ey = -ey;
        }
        (0.5 * lam_max.ln(), wrap_phase(2.0 * ey.atan2(ex)))
    };
    GaussianParams::new(nu, m.r, chi_mod, chi_phase)
}

impl GaussianMoments {
    /// Ladder moments of the same state.
    pub fn to_ladder(&self) -> LadderMoments {
        let a_mean = Complex64::new(self.r.x, self.r.y) / std::f64::consts::SQRT_2;
        let c = Complex64::new(0.5 * (self.sigma.m11 - self.sigma.m22), self.sigma.m12);
        let n_scale = 0.5 * (self.sigma.m11 + self.sigma.m22);
        LadderMoments {
            a_mean,
            a2_mean: a_mean * a_mean + 0.5 * c,
            n_mean: 0.5 * (n_scale - 1.0) + a_mean.norm_sqr(),
        }
    }
}

impl LadderMoments {
    /// Quadrature moments of the same state.
    pub fn to_moments(&self) -> GaussianMoments {
        let r = Vector2::new(self.a_mean.re, self.a_mean.im) * std::f64::consts::SQRT_2;
        let c = 2.0 * (self.a2_mean - self.a_mean * self.a_mean);
        let n_scale = 2.0 * self.n_mean + 1.0 - 2.0 * self.a_mean.norm_sqr();
        GaussianMoments { r, sigma: Matrix2::new(n_scale + c.re, c.im, c.im, n_scale - c.re) }
    }
}

/// Exact ladder-moment evolution under one bath hypothesis.
///
/// <a> decays at Gamma/2, <a^2> at Gamma, and <a^dag a> relaxes toward the
/// bosonic bath occupation N_b(beta) at Gamma = characteristic_rate(QHO,
/// bath). In the lab frame the first two pick up phases e^(-i omega0 t) and
/// e^(-2 i omega0 t).
pub fn evolve_ladder_moments(
    m0: &LadderMoments,
    bath: &BathSpec,
    t: f64,
    frame: Frame,
) -> Result<LadderMoments> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!("time must be finite and >= 0, got {t}")));
    }
    let rate = characteristic_rate(ProbeKind::Qho, bath)?;
    let pump = occupation_number(Statistics::Bosonic, bath.beta, bath.omega0)?;
    let decay = (-rate * t).exp();
    let half_decay = (-0.5 * rate * t).exp();
    let (phase1, phase2) = match frame {
        Frame::Rotating => (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
        Frame::Lab => {
            let p = Complex64::from_polar(1.0, -bath.omega0 * t);
            (p, p * p)
        }
    };
    Ok(LadderMoments {
        a_mean: m0.a_mean * half_decay * phase1,
        a2_mean: m0.a2_mean * decay * phase2,
        n_mean: m0.n_mean * decay + pump * (1.0 - decay),
    })
}

/// Evolve a parameterized Gaussian state through the ladder-moment pipeline.
pub fn evolve_params(
    p0: &GaussianParams,
    bath: &BathSpec,
    t: f64,
    frame: Frame,
) -> Result<GaussianParams> {
    let ladder = params_to_moments(p0).to_ladder();
    moments_to_params(&evolve_ladder_moments(&ladder, bath, t, frame)?.to_moments())
}

/// Thermal-scale coefficient nu_(beta s) = coth(s beta omega / 2) of a state
/// with thermal occupation `n`, evaluated through occupations only:
/// 1 + 2 / ((1 + 1/n)^s - 1). Exact 1 at n = 0 for s > 0.
pub(crate) fn nu_scaled(n: f64, s: f64) -> f64 {
    1.0 + 2.0 / ((1.0 + 1.0 / n).powf(s) - 1.0)
}

/// Normalization coefficient of the fractional-power thermal state,
/// 1 / ((1 + n)^s - n^s); equal to (1 - e^(-beta omega))^s / (1 - e^(-beta
/// omega s)) at occupation n. Exact 1 at n = 0 for s > 0.
pub(crate) fn norm_coeff(n: f64, s: f64) -> f64 {
    1.0 / ((1.0 + n).powf(s) - n.powf(s))
}

/// Scalar pieces of the Gaussian Chernoff overlap at exponent r: the scaled
/// thermal coefficients of each hypothesis state, their fractional-power
/// normalizations, and the first-moment difference delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffTerms {
    /// nu_(beta_b r) of the bosonic-hypothesis state.
    pub nu_r_b: f64,
    /// nu_(beta_f (1-r)) of the fermionic-hypothesis state.
    pub nu_r_f: f64,
    /// Normalization of the bosonic-hypothesis state at exponent r.
    pub norm_r_b: f64,
    /// Normalization of the fermionic-hypothesis state at exponent 1 - r.
    pub norm_r_f: f64,
    pub delta: Vector2<f64>,
}

/// Compute the scalar Chernoff pieces for a pair of hypothesis states.
pub fn chernoff_terms(
    state_b: &GaussianParams,
    state_f: &GaussianParams,
    r: f64,
) -> Result<ChernoffTerms> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidInput(format!("Chernoff exponent must be in (0, 1), got {r}")));
    }
    let nb = state_b.thermal_occupation();
    let nf = state_f.thermal_occupation();
    Ok(ChernoffTerms {
        nu_r_b: nu_scaled(nb, r),
        nu_r_f: nu_scaled(nf, 1.0 - r),
        norm_r_b: norm_coeff(nb, r),
        norm_r_f: norm_coeff(nf, 1.0 - r),
        delta: state_b.xi - state_f.xi,
    })
}

/// Gaussian quantum Chernoff overlap q(r) = tr[rho_b^r rho_f^(1-r)] for two
/// single-mode Gaussian states:
///
/// q = 2 N_b(r) N_f(1-r) exp(-delta^T M^-1 delta) / sqrt(det M),
/// M = nu_(beta_b r) S_b S_b^T + nu_(beta_f (1-r)) S_f S_f^T.
///
/// Pure states are covered by the limits N -> 1, nu_scaled -> 1.
pub fn gaussian_chernoff_r(
    state_b: &GaussianParams,
    state_f: &GaussianParams,
    r: f64,
) -> Result<f64> {
    let terms = chernoff_terms(state_b, state_f, r)?;
    let sb = squeeze_matrix(state_b.chi_mod, state_b.chi_phase);
    let sf = squeeze_matrix(state_f.chi_mod, state_f.chi_phase);
    let m = sb * sb.transpose() * terms.nu_r_b + sf * sf.transpose() * terms.nu_r_f;
    let det = m.determinant();
    // negated on purpose: a NaN determinant must land in the error branch
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(det > 0.0) {
        return Err(Error::InvalidInput(format!("degenerate covariance combination, det = {det}")));
    }
    let inv = m.try_inverse().expect("positive determinant implies invertible");
    let exponent = (terms.delta.transpose() * inv * terms.delta)[(0, 0)];
    Ok(2.0 * terms.norm_r_b * terms.norm_r_f * (-exponent).exp() / det.sqrt())
}

/// Closed-form overlap for a displaced bath-temperature thermal input under
/// the two hypotheses:
///
/// q(r, t) = exp{ -(|delta(t)|^2 / 2) [1 + 2 N_b - N_b ((1 + 1/N_b)^r +
/// (1 + 1/N_b)^(1-r))] },
/// |delta(t)| = |xi0| (e^(-gamma t / 2) - e^(-gamma t / (2 n_th))).
///
/// Valid only for zero squeezing and input thermal scale matching the bath
/// (beta0 = beta); both preconditions are checked.
pub fn chernoff_closed_form(
    input: &GaussianParams,
    bath: &BathSpec,
    t: f64,
    r: f64,
) -> Result<f64> {
    if input.chi_mod != 0.0 {
        return Err(Error::ClosedFormPrecondition(format!(
            "requires zero squeezing, got chi_mod = {}",
            input.chi_mod
        )));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidInput(format!("Chernoff exponent must be in [0, 1], got {r}")));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!("time must be finite and >= 0, got {t}")));
    }
    if bath.is_zero_temperature() {
        // Hypotheses coincide; the overlap is identically 1.
        if input.nu > 1.0 + 1e-9 {
            return Err(Error::ClosedFormPrecondition(
                "input thermal scale must match the bath temperature".into(),
            ));
        }
        return Ok(1.0);
    }
    let n_b = occupation_number(Statistics::Bosonic, bath.beta, bath.omega0)?;
    let nu_bath = 2.0 * n_b + 1.0;
    if (input.nu - nu_bath).abs() > 1e-9 * nu_bath {
        return Err(Error::ClosedFormPrecondition(format!(
            "input thermal scale {} does not match the bath value {nu_bath}",
            input.nu
        )));
    }
    let n_th = thermal_ratio(bath.beta, bath.omega0)?;
    let gap = (-0.5 * bath.gamma * t).exp() - (-0.5 * bath.gamma * t / n_th).exp();
    let delta_sq = input.xi.norm_squared() * gap * gap;
    let e = 1.0 + 1.0 / n_b;
    let f_r = e.powf(r) + e.powf(1.0 - r);
    Ok((-0.5 * delta_sq * (1.0 + 2.0 * n_b - n_b * f_r)).exp())
}

/// Best measurement time for a displaced bath-temperature thermal input:
/// t_bar = ln(n_th) / (gamma N_f) = 2 n_th ln(n_th) / (gamma (n_th - 1)),
/// the argmax of |delta(t)|. Tends to 2/gamma as n_th -> 1.
pub fn optimal_time_qho(beta: f64, gamma: f64, omega0: f64) -> Result<f64> {
    if beta.is_infinite() {
        return Err(Error::ZeroTemperatureDegenerate);
    }
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "coupling rate must be finite and > 0, got {gamma}"
        )));
    }
    let two_nb = 2.0 * occupation_number(Statistics::Bosonic, beta, omega0)?;
    let nf = occupation_number(Statistics::Fermionic, beta, omega0)?;
    Ok(two_nb.ln_1p() / (gamma * nf))
}

/// Output of the bath-temperature optimization for coherent inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestTemperature {
    /// Bosonic bath occupation N_b(beta_best) at the optimum.
    pub n_b: f64,
    /// Optimal measurement time at the optimal temperature.
    pub t_bar: f64,
    /// Error exponent: the overlap at the optimum is exp(-kappa |xi0|^2).
    pub kappa: f64,
    /// Chernoff overlap at the optimum for the given displacement.
    pub q: f64,
}

/// Find the bath temperature that best separates the hypotheses for a
/// displaced thermal input measured at its own optimal time.
///
/// The overlap at (beta, t_bar(beta)) is exp(-kappa(N_b) |xi0|^2) with
/// kappa(N) = (sqrt(N+1) - sqrt(N))^2 g(t_bar)/2, g the squared rate gap;
/// kappa is maximized over N_b independently of the displacement magnitude.
pub fn best_bath_temperature(xi0_mag: f64, gamma: f64) -> Result<BestTemperature> {
    if !xi0_mag.is_fin_pos() {
        return Err(Error::InvalidInput(format!(
            "displacement magnitude must be finite and > 0, got {xi0_mag}"
        )));
    }
    if !gamma.is_fin_pos() {
        return Err(Error::InvalidInput(format!(
            "coupling rate must be finite and > 0, got {gamma}"
        )));
    }
    // kappa is dimensionless; optimize at gamma = 1 and restore units after.
    let (n_b, neg_kappa) = minimize_scalar(|n| -kappa_of_occupation(n), 1e-3, 50.0, 1e-10)?;
    let kappa = -neg_kappa;
    let n_th = 1.0 + 2.0 * n_b;
    let t_bar = 2.0 * n_th * n_th.ln() / (gamma * (n_th - 1.0));
    Ok(BestTemperature { n_b, t_bar, kappa, q: (-kappa * xi0_mag * xi0_mag).exp() })
}

/// Error exponent per unit |xi0|^2 at bath occupation n, measured at the
/// matching optimal time (gamma = 1 units).
fn kappa_of_occupation(n: f64) -> f64 {
    let n_th = 1.0 + 2.0 * n;
    let t_bar = 2.0 * n_th * n_th.ln() / (n_th - 1.0);
    let gap = (-0.5 * t_bar).exp() - (-0.5 * t_bar / n_th).exp();
    let purity_gap = ((n + 1.0).sqrt() - n.sqrt()).powi(2);
    0.5 * purity_gap * gap * gap
}

/// Effective inverse temperature of the evolving state at each grid time.
///
/// The thermal scale nu(t) maps to beta_state = (1/omega0) ln((nu+1)/(nu-1));
/// pure inputs start at +inf and relax toward the bath inverse temperature,
/// the fermionic hypothesis strictly slower than the bosonic one.
pub fn state_temperature_trajectory(
    p0: &GaussianParams,
    bath: &BathSpec,
    t_grid: &[f64],
) -> Result<Vec<f64>> {
    let mut prev = -1.0;
    for &t in t_grid {
        if !t.is_finite() || t < 0.0 || t <= prev && prev >= 0.0 {
            return Err(Error::InvalidInput("time grid must be ascending and non-negative".into()));
        }
        prev = t;
    }
    t_grid
        .iter()
        .map(|&t| Ok(evolve_params(p0, bath, t, Frame::Rotating)?.state_beta(bath.omega0)))
        .collect()
}

/// Discrimination curve of a QHO probe over a time grid. The qubit Helstrom
/// closed form has no Gaussian counterpart here, so only the Chernoff data
/// are populated.
pub fn qho_curve(
    beta: f64,
    gamma: f64,
    omega0: f64,
    input: &GaussianParams,
    times: Vec<f64>,
    frame: Frame,
) -> Result<DiscriminationCurve> {
    let (bos, fer) = BathSpec::hypothesis_pair(beta, gamma, omega0)?;
    let input = *input;
    DiscriminationCurve::build(times, None::<fn(f64) -> Result<f64>>, |t: f64| {
        let sb = evolve_params(&input, &bos, t, frame)?;
        let sf = evolve_params(&input, &fer, t, frame)?;
        Ok(move |r: f64| gaussian_chernoff_r(&sb, &sf, r).unwrap_or(f64::NAN))
    })
}

fn wrap_phase(p: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut w = p.rem_euclid(tau);
    if w > std::f64::consts::PI {
        w -= tau;
    }
    w
}

trait FinPos {
    fn is_fin_pos(&self) -> bool;
}

impl FinPos for f64 {
    fn is_fin_pos(&self) -> bool {
        self.is_finite() && *self > 0.0
    }
}
