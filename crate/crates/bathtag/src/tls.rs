// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-level-system probe: Bloch dynamics and qubit discrimination figures.
//!
//! The TLS population relaxes toward N_f(beta) under either bath hypothesis;
//! only the rate differs (gamma against a fermionic bath, gamma * n_th
//! against a bosonic one). Coherences decay at half the population rate and
//! precess at omega0 in the lab frame. All discrimination quantities follow
//! in closed form from the Bloch vectors of the two hypotheses.

use crate::bath::{
    characteristic_rate, occupation_number, thermal_ratio, BathSpec, ProbeKind, Statistics,
};
use crate::discriminate::DiscriminationCurve;
use crate::error::{Error, Result};
use crate::Frame;

/// Bloch vector (sx, sy, sz) of a qubit state, |v| <= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

/// Numerical slack on the Bloch-ball boundary.
const BLOCH_EPS: f64 = 1e-12;

impl BlochVector {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Result<Self> {
        let v = Self { sx, sy, sz };
        if !(sx.is_finite() && sy.is_finite() && sz.is_finite()) {
            return Err(Error::InvalidInput("Bloch components must be finite".into()));
        }
        if v.norm_sq() > 1.0 + BLOCH_EPS {
            return Err(Error::InvalidInput(format!(
                "Bloch vector length {} exceeds 1",
                v.norm_sq().sqrt()
            )));
        }
        Ok(v)
    }

    /// Excited state, sz = +1.
    pub fn excited() -> Self {
        Self { sx: 0.0, sy: 0.0, sz: 1.0 }
    }

    /// Ground state, sz = -1.
    pub fn ground() -> Self {
        Self { sx: 0.0, sy: 0.0, sz: -1.0 }
    }

    /// Pure state in the x-z plane with the given sz; sx = sqrt(1 - sz^2).
    pub fn pure_xz(sz: f64) -> Result<Self> {
        if !((-1.0..=1.0).contains(&sz)) {
            return Err(Error::InvalidInput(format!("sz must be in [-1, 1], got {sz}")));
        }
        Ok(Self { sx: (1.0 - sz * sz).max(0.0).sqrt(), sy: 0.0, sz })
    }

    pub fn norm_sq(&self) -> f64 {
        self.sx * self.sx + self.sy * self.sy + self.sz * self.sz
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

/// Stationary state of the TLS: sz_eq = 2 N_f(beta) - 1, independent of the
/// bath statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsEquilibrium {
    pub sz_eq: f64,
}

/// Equilibrium Bloch vector component reached under either hypothesis.
pub fn equilibrium(beta: f64, omega0: f64) -> Result<TlsEquilibrium> {
    let nf = occupation_number(Statistics::Fermionic, beta, omega0)?;
    Ok(TlsEquilibrium { sz_eq: 2.0 * nf - 1.0 })
}

/// Exact solution of the TLS master equation.
///
/// sz relaxes toward sz_eq at rate Gamma = characteristic_rate(TLS, bath);
/// (sx, sy) decay at Gamma/2 and, in the lab frame, precess at omega0.
pub fn evolve_bloch(
    v0: &BlochVector,
    bath: &BathSpec,
    t: f64,
    frame: Frame,
) -> Result<BlochVector> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!("time must be finite and >= 0, got {t}")));
    }
    let rate = characteristic_rate(ProbeKind::Tls, bath)?;
    let sz_eq = equilibrium(bath.beta, bath.omega0)?.sz_eq;
    let decay = (-rate * t).exp();
    let half_decay = (-0.5 * rate * t).exp();
    let sz = sz_eq + (v0.sz - sz_eq) * decay;
    let (sx, sy) = match frame {
        Frame::Rotating => (v0.sx * half_decay, v0.sy * half_decay),
        Frame::Lab => {
            let (sin, cos) = (bath.omega0 * t).sin_cos();
            ((v0.sx * cos - v0.sy * sin) * half_decay, (v0.sx * sin + v0.sy * cos) * half_decay)
        }
    };
    Ok(BlochVector { sx, sy, sz })
}

/// Trace distance between two qubit states: the Euclidean distance of their
/// Bloch vectors.
pub fn trace_distance_tls(a: &BlochVector, b: &BlochVector) -> f64 {
    let dx = a.sx - b.sx;
    let dy = a.sy - b.sy;
    let dz = a.sz - b.sz;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Helstrom minimum error probability for equiprobable hypotheses,
/// (1 - ||rho_a - rho_b||_1 / 2) / 2.
pub fn helstrom_error(a: &BlochVector, b: &BlochVector) -> f64 {
    0.5 * (1.0 - 0.5 * trace_distance_tls(a, b))
}

/// Spectral data entering the qubit Chernoff overlap: largest eigenvalues
/// lambda_q = (1 + |v_q|)/2 of the two hypothesis states and the angle
/// between their Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitChernoffInputs {
    pub lambda_b: f64,
    pub lambda_f: f64,
    pub theta: f64,
}

impl QubitChernoffInputs {
    pub fn from_bloch(vb: &BlochVector, vf: &BlochVector) -> Self {
        let nb = vb.norm();
        let nf = vf.norm();
        // A zero-length vector is the maximally mixed state; the overlap is
        // then independent of theta, so any angle convention works.
        let theta = if nb * nf == 0.0 {
            0.0
        } else {
            let cos =
                ((vb.sx * vf.sx + vb.sy * vf.sy + vb.sz * vf.sz) / (nb * nf)).clamp(-1.0, 1.0);
            cos.acos()
        };
        Self { lambda_b: 0.5 * (1.0 + nb.min(1.0)), lambda_f: 0.5 * (1.0 + nf.min(1.0)), theta }
    }
}

/// Qubit Chernoff overlap q(r) = tr[rho_b^r rho_f^(1-r)] in closed form.
///
/// With c = cos^2(theta/2), s = sin^2(theta/2):
/// q = [lb^r lf^(1-r) + (1-lb)^r (1-lf)^(1-r)] c
///   + [lb^r (1-lf)^(1-r) + (1-lb)^r lf^(1-r)] s.
///
/// The IEEE convention 0^0 = 1 handles rank-deficient states at r in {0, 1}.
pub fn qubit_chernoff_r(inputs: &QubitChernoffInputs, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidInput(format!("Chernoff exponent must be in [0, 1], got {r}")));
    }
    Ok(chernoff_eval(inputs, r))
}

/// Evaluation core of [`qubit_chernoff_r`] without the exponent check, for
/// use inside search loops.
pub(crate) fn chernoff_eval(inputs: &QubitChernoffInputs, r: f64) -> f64 {
    let (lb, lf) = (inputs.lambda_b, inputs.lambda_f);
    let half = 0.5 * inputs.theta;
    let c = half.cos().powi(2);
    let s = half.sin().powi(2);
    let aligned = lb.powf(r) * lf.powf(1.0 - r) + (1.0 - lb).powf(r) * (1.0 - lf).powf(1.0 - r);
    let crossed = lb.powf(r) * (1.0 - lf).powf(1.0 - r) + (1.0 - lb).powf(r) * lf.powf(1.0 - r);
    aligned * c + crossed * s
}

/// Best measurement time for an excited-state input:
/// t_bar = ln(n_th) / (gamma (n_th - 1)), the argmax of the trace distance.
/// Tends to 1/gamma as n_th -> 1 (low temperature).
pub fn optimal_time_tls(beta: f64, gamma: f64, omega0: f64) -> Result<f64> {
    if beta.is_infinite() {
        return Err(Error::ZeroTemperatureDegenerate);
    }
    check_gamma(gamma)?;
    // n_th - 1 = 2 N_b, so ln(n_th) = ln_1p(2 N_b) keeps precision near
    // n_th = 1 where the ratio tends to its 1/gamma limit.
    let two_nb = 2.0 * occupation_number(Statistics::Bosonic, beta, omega0)?;
    Ok(two_nb.ln_1p() / (gamma * two_nb))
}

/// Decay envelopes of the squared trace distance for pure inputs:
/// f(t) from the coherences (half rates), g(t) from the populations.
fn envelopes(n_th: f64, gamma: f64, t: f64) -> (f64, f64) {
    let u = (-0.5 * gamma * t).exp();
    let w = (-0.5 * gamma * n_th * t).exp();
    let f = (u - w) * (u - w);
    let g = (u * u - w * w) * (u * u - w * w);
    (f, g)
}

/// Squared trace distance between the evolved hypotheses for a pure input in
/// the x-z plane: Y(sz0, t) = (1 - sz0^2) f(t) + (sz0 - sz_eq)^2 g(t).
pub fn pure_input_distance_sq(sz0: f64, beta: f64, gamma: f64, omega0: f64, t: f64) -> Result<f64> {
    if !((-1.0..=1.0).contains(&sz0)) {
        return Err(Error::InvalidInput(format!("sz0 must be in [-1, 1], got {sz0}")));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!("time must be finite and >= 0, got {t}")));
    }
    check_gamma(gamma)?;
    if beta.is_infinite() {
        return Ok(0.0);
    }
    let n_th = thermal_ratio(beta, omega0)?;
    let sz_eq = equilibrium(beta, omega0)?.sz_eq;
    let (f, g) = envelopes(n_th, gamma, t);
    Ok((1.0 - sz0 * sz0) * f + (sz0 - sz_eq) * (sz0 - sz_eq) * g)
}

/// Result of a pure-input scan at fixed measurement time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputScan {
    pub sz0_best: f64,
    pub max_distance: f64,
    /// True when the distance vanishes identically (zero temperature) and
    /// the reported sz0 = 1 is a tie-breaking convention.
    pub degenerate: bool,
}

/// Maximize the trace distance over pure inputs sz0 in [-1, 1] at fixed t.
///
/// Y(sz0, t) is a parabola in sz0; the scan evaluates it on `grid_points`
/// equispaced points and additionally at the parabola vertex when that is an
/// admissible interior maximum (negative concavity, abscissa inside [-1, 1]).
/// For t below the threshold root of [`tstar`] the maximizer is the excited
/// state sz0 = 1; past it the interior vertex takes over.
pub fn optimal_input_scan(
    beta: f64,
    gamma: f64,
    omega0: f64,
    t: f64,
    grid_points: usize,
) -> Result<InputScan> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::InvalidInput(format!("time must be finite and > 0, got {t}")));
    }
    if grid_points < 3 {
        return Err(Error::InvalidInput("grid needs at least 3 points".into()));
    }
    check_gamma(gamma)?;
    if beta.is_infinite() {
        return Ok(InputScan { sz0_best: 1.0, max_distance: 0.0, degenerate: true });
    }
    let n_th = thermal_ratio(beta, omega0)?;
    let sz_eq = equilibrium(beta, omega0)?.sz_eq;
    let (f, g) = envelopes(n_th, gamma, t);
    let y = |sz0: f64| (1.0 - sz0 * sz0) * f + (sz0 - sz_eq) * (sz0 - sz_eq) * g;

    let mut best_sz0 = -1.0;
    let mut best_y = y(-1.0);
    let step = 2.0 / (grid_points - 1) as f64;
    for i in 1..grid_points {
        let sz0 = if i == grid_points - 1 { 1.0 } else { -1.0 + step * i as f64 };
        let v = y(sz0);
        // >= biases ties toward larger sz0, matching the endpoint ordering
        // Y(1, t) >= Y(-1, t).
        if v >= best_y {
            best_y = v;
            best_sz0 = sz0;
        }
    }
    // Vertex of the parabola, admissible as an interior maximum only with
    // negative concavity and physical abscissa.
    let concavity = g - f;
    if concavity < 0.0 {
        let vertex = sz_eq * g / concavity;
        if (-1.0..=1.0).contains(&vertex) {
            let v = y(vertex);
            if v > best_y {
                best_y = v;
                best_sz0 = vertex;
            }
        }
    }
    if best_y <= f64::EPSILON {
        return Ok(InputScan { sz0_best: 1.0, max_distance: 0.0, degenerate: true });
    }
    Ok(InputScan { sz0_best: best_sz0, max_distance: best_y.sqrt(), degenerate: false })
}

/// Threshold time past which the parabola vertex becomes an admissible
/// interior maximum of Y(sz0, t): the unique root of
/// e^(-gamma t/2) + e^(-gamma n_th t/2) = 1 / sqrt(2 - 2 N_f(beta)),
/// found by bisection to 1e-12 absolute.
pub fn tstar(beta: f64, gamma: f64, omega0: f64) -> Result<f64> {
    if beta.is_infinite() {
        return Err(Error::ZeroTemperatureDegenerate);
    }
    check_gamma(gamma)?;
    let n_th = thermal_ratio(beta, omega0)?;
    let nf = occupation_number(Statistics::Fermionic, beta, omega0)?;
    let rhs = 1.0 / (2.0 - 2.0 * nf).sqrt();
    let excess = |t: f64| (-0.5 * gamma * t).exp() + (-0.5 * gamma * n_th * t).exp() - rhs;
    // The left side falls monotonically from 2 to 0 and rhs < 1, so a sign
    // change exists; expand the bracket until it is captured.
    let mut hi = 1.0 / gamma;
    let mut expansions = 0;
    while excess(hi) > 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::InvalidInput("t* undefined for these parameters".into()));
        }
    }
    let mut lo = 0.0;
    if excess(lo) < 0.0 {
        return Err(Error::InvalidInput("t* undefined for these parameters".into()));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Discrimination curve of a TLS probe over a time grid: Helstrom error,
/// Chernoff overlap, and minimizing exponent at every sampled time.
pub fn tls_curve(
    beta: f64,
    gamma: f64,
    omega0: f64,
    input: &BlochVector,
    times: Vec<f64>,
    frame: Frame,
) -> Result<DiscriminationCurve> {
    let (bos, fer) = BathSpec::hypothesis_pair(beta, gamma, omega0)?;
    let input = *input;
    let evolve_pair = move |t: f64| -> Result<(BlochVector, BlochVector)> {
        Ok((evolve_bloch(&input, &bos, t, frame)?, evolve_bloch(&input, &fer, t, frame)?))
    };
    DiscriminationCurve::build(
        times,
        Some(|t: f64| {
            let (vb, vf) = evolve_pair(t)?;
            Ok(helstrom_error(&vb, &vf))
        }),
        |t: f64| {
            let (vb, vf) = evolve_pair(t)?;
            let inputs = QubitChernoffInputs::from_bloch(&vb, &vf);
            Ok(move |r: f64| chernoff_eval(&inputs, r))
        },
    )
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "coupling rate must be finite and > 0, got {gamma}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminate::{golden_section_min, minimize_chernoff_over_r};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ln3() -> f64 {
        3.0_f64.ln()
    }

    fn bath_pair(beta_omega: f64) -> (BathSpec, BathSpec) {
        BathSpec::hypothesis_pair(beta_omega, 1.0, 1.0).unwrap()
    }

    #[test]
    fn evolution_identity_at_t_zero() {
        let v0 = BlochVector::new(0.3, -0.2, 0.4).unwrap();
        let (bos, _) = bath_pair(1.0);
        for frame in [Frame::Lab, Frame::Rotating] {
            let v = evolve_bloch(&v0, &bos, 0.0, frame).unwrap();
            assert_eq!(v, v0);
        }
    }

    #[test]
    fn evolution_reaches_equilibrium() {
        let v0 = BlochVector::excited();
        let sz_eq = equilibrium(1.0, 1.0).unwrap().sz_eq;
        for bath in [bath_pair(1.0).0, bath_pair(1.0).1] {
            let v = evolve_bloch(&v0, &bath, 200.0, Frame::Lab).unwrap();
            assert_abs_diff_eq!(v.sz, sz_eq, epsilon = 1e-12);
            assert_abs_diff_eq!(v.sx, 0.0, epsilon = 1e-12);
        }
        // Equilibrium input is a fixed point at any time.
        let eq = BlochVector::new(0.0, 0.0, sz_eq).unwrap();
        let v = evolve_bloch(&eq, &bath_pair(1.0).0, 1.7, Frame::Rotating).unwrap();
        assert_abs_diff_eq!(v.sz, sz_eq, epsilon = 1e-14);
    }

    #[test]
    fn equilibrium_population_is_fermionic_occupation() {
        // sz_eq = 2 N_f - 1 stays in [-1, 0) and is the same for both baths.
        for &x in &[0.2, 1.0, ln3(), 5.0] {
            let eq = equilibrium(x, 1.0).unwrap();
            assert!(eq.sz_eq >= -1.0 && eq.sz_eq < 0.0);
        }
        assert_abs_diff_eq!(equilibrium(ln3(), 1.0).unwrap().sz_eq, -0.5, epsilon = 1e-14);
        assert_eq!(equilibrium(f64::INFINITY, 1.0).unwrap().sz_eq, -1.0);
    }

    #[test]
    fn bloch_norm_never_leaves_the_ball() {
        let mut rng = StdRng::seed_from_u64(11);
        let (bos, fer) = bath_pair(0.7);
        for _ in 0..200 {
            let sz = rng.gen_range(-1.0..1.0);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0f64 - sz * sz).sqrt();
            let v0 = BlochVector::new(s * phi.cos(), s * phi.sin(), sz).unwrap();
            let t = rng.gen_range(0.0..30.0);
            for bath in [&bos, &fer] {
                let v = evolve_bloch(&v0, bath, t, Frame::Lab).unwrap();
                assert!(v.norm_sq() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn frames_agree_on_distance_and_overlap() {
        let v0 = BlochVector::new(0.6, 0.1, 0.5).unwrap();
        let (bos, fer) = bath_pair(0.5);
        for &t in &[0.3, 1.1, 4.0] {
            let lab = (
                evolve_bloch(&v0, &bos, t, Frame::Lab).unwrap(),
                evolve_bloch(&v0, &fer, t, Frame::Lab).unwrap(),
            );
            let rot = (
                evolve_bloch(&v0, &bos, t, Frame::Rotating).unwrap(),
                evolve_bloch(&v0, &fer, t, Frame::Rotating).unwrap(),
            );
            assert_relative_eq!(
                trace_distance_tls(&lab.0, &lab.1),
                trace_distance_tls(&rot.0, &rot.1),
                max_relative = 1e-12
            );
            let qi_lab = QubitChernoffInputs::from_bloch(&lab.0, &lab.1);
            let qi_rot = QubitChernoffInputs::from_bloch(&rot.0, &rot.1);
            for &r in &[0.2, 0.5, 0.9] {
                assert_relative_eq!(
                    chernoff_eval(&qi_lab, r),
                    chernoff_eval(&qi_rot, r),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn common_rotation_leaves_figures_invariant() {
        // A global z-rotation applied to both hypotheses changes nothing.
        let (bos, fer) = bath_pair(0.8);
        let v0 = BlochVector::new(0.7, 0.0, 0.3).unwrap();
        let t = 0.9;
        let vb = evolve_bloch(&v0, &bos, t, Frame::Rotating).unwrap();
        let vf = evolve_bloch(&v0, &fer, t, Frame::Rotating).unwrap();
        let rotate = |v: &BlochVector, a: f64| BlochVector {
            sx: v.sx * a.cos() - v.sy * a.sin(),
            sy: v.sx * a.sin() + v.sy * a.cos(),
            sz: v.sz,
        };
        for &a in &[0.4, 1.9, 3.3] {
            let (rb, rf) = (rotate(&vb, a), rotate(&vf, a));
            assert_relative_eq!(
                helstrom_error(&vb, &vf),
                helstrom_error(&rb, &rf),
                max_relative = 1e-12
            );
            let q0 = QubitChernoffInputs::from_bloch(&vb, &vf);
            let q1 = QubitChernoffInputs::from_bloch(&rb, &rf);
            assert_relative_eq!(
                chernoff_eval(&q0, 0.37),
                chernoff_eval(&q1, 0.37),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn excited_input_distance_closed_form() {
        // D(t) = (1 - sz_eq)(e^{-gamma t} - e^{-gamma n_th t}) for sz0 = 1.
        let (bos, fer) = bath_pair(ln3());
        let sz_eq = equilibrium(ln3(), 1.0).unwrap().sz_eq;
        for &t in &[0.1, 0.7, 2.0] {
            let vb = evolve_bloch(&BlochVector::excited(), &bos, t, Frame::Lab).unwrap();
            let vf = evolve_bloch(&BlochVector::excited(), &fer, t, Frame::Lab).unwrap();
            let expect = (1.0 - sz_eq) * ((-t).exp() - (-2.0 * t).exp());
            assert_relative_eq!(trace_distance_tls(&vb, &vf), expect, max_relative = 1e-12);
            // and matches the parabola expression at sz0 = 1
            let y = pure_input_distance_sq(1.0, ln3(), 1.0, 1.0, t).unwrap();
            assert_relative_eq!(y.sqrt(), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn parabola_matches_explicit_evolution() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..100 {
            let x = rng.gen_range(0.2..3.0);
            let t = rng.gen_range(0.01..6.0);
            let sz0 = rng.gen_range(-1.0..1.0);
            let (bos, fer) = bath_pair(x);
            let v0 = BlochVector::pure_xz(sz0).unwrap();
            let vb = evolve_bloch(&v0, &bos, t, Frame::Lab).unwrap();
            let vf = evolve_bloch(&v0, &fer, t, Frame::Lab).unwrap();
            let d = trace_distance_tls(&vb, &vf);
            let y = pure_input_distance_sq(sz0, x, 1.0, 1.0, t).unwrap();
            assert_abs_diff_eq!(d * d, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn helstrom_is_half_without_information() {
        let v = BlochVector::excited();
        assert_eq!(helstrom_error(&v, &v), 0.5);
        // Orthogonal pure states are perfectly distinguishable.
        assert_eq!(helstrom_error(&BlochVector::excited(), &BlochVector::ground()), 0.0);
    }

    #[test]
    fn chernoff_identical_states_is_one() {
        let v = BlochVector::new(0.2, 0.0, 0.6).unwrap();
        let qi = QubitChernoffInputs::from_bloch(&v, &v);
        for &r in &[0.0, 0.3, 0.5, 1.0] {
            assert_relative_eq!(qubit_chernoff_r(&qi, r).unwrap(), 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn chernoff_orthogonal_pure_states() {
        let qi = QubitChernoffInputs::from_bloch(&BlochVector::excited(), &BlochVector::ground());
        // Interior exponents see zero overlap; the endpoints recover the
        // trace of the un-powered state through 0^0 = 1.
        assert_abs_diff_eq!(qubit_chernoff_r(&qi, 0.5).unwrap(), 0.0, epsilon = 1e-30);
        assert_relative_eq!(qubit_chernoff_r(&qi, 0.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(qubit_chernoff_r(&qi, 1.0).unwrap(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn chernoff_stays_in_unit_interval() {
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..500 {
            let qi = QubitChernoffInputs {
                lambda_b: rng.gen_range(0.5..1.0),
                lambda_f: rng.gen_range(0.5..1.0),
                theta: rng.gen_range(0.0..std::f64::consts::PI),
            };
            let q = qubit_chernoff_r(&qi, rng.gen_range(0.0..1.0)).unwrap();
            assert!((0.0..=1.0 + 1e-14).contains(&q), "overlap {q} outside [0, 1]");
        }
    }

    #[test]
    fn optimal_time_examples() {
        // n_th = 2 at beta omega0 = ln 3: t_bar = ln 2.
        assert_relative_eq!(
            optimal_time_tls(ln3(), 1.0, 1.0).unwrap(),
            std::f64::consts::LN_2,
            max_relative = 1e-14
        );
        // Low-temperature limit 1/gamma.
        assert_relative_eq!(optimal_time_tls(40.0, 1.0, 1.0).unwrap(), 1.0, max_relative = 1e-6);
        assert_eq!(
            optimal_time_tls(f64::INFINITY, 1.0, 1.0),
            Err(Error::ZeroTemperatureDegenerate)
        );
        assert!(optimal_time_tls(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn optimal_time_matches_numeric_argmax() {
        for &x in &[1.0 / 1.5, 1.0 / 5.5, 1.0 / 20.5] {
            let t_bar = optimal_time_tls(x, 1.0, 1.0).unwrap();
            let (t_num, _) = golden_section_min(
                |t| -pure_input_distance_sq(1.0, x, 1.0, 1.0, t).unwrap(),
                0.0,
                10.0,
                1e-10,
            )
            .unwrap();
            assert_relative_eq!(t_num, t_bar, max_relative = 1e-6);
        }
    }

    #[test]
    fn input_scan_prefers_excited_state_before_threshold() {
        for &inv_x in &[1.5, 5.5, 20.5] {
            let x = 1.0 / inv_x;
            let ts = tstar(x, 1.0, 1.0).unwrap();
            for &frac in &[0.1, 0.5, 0.9] {
                let scan = optimal_input_scan(x, 1.0, 1.0, frac * ts, 2001).unwrap();
                assert_eq!(scan.sz0_best, 1.0, "lost argmax at x = {x}, t = {}", frac * ts);
                assert!(!scan.degenerate);
            }
        }
    }

    #[test]
    fn input_scan_vertex_takes_over_past_threshold() {
        let x = ln3();
        let ts = tstar(x, 1.0, 1.0).unwrap();
        let scan = optimal_input_scan(x, 1.0, 1.0, 1.6 * ts, 2001).unwrap();
        assert!(scan.sz0_best < 1.0);
        // The vertex value must beat both endpoints.
        let y1 = pure_input_distance_sq(1.0, x, 1.0, 1.0, 1.6 * ts).unwrap();
        assert!(scan.max_distance * scan.max_distance > y1);
    }

    #[test]
    fn input_scan_degenerate_at_zero_temperature() {
        let scan = optimal_input_scan(f64::INFINITY, 1.0, 1.0, 1.0, 201).unwrap();
        assert!(scan.degenerate);
        assert_eq!(scan.sz0_best, 1.0);
        assert_eq!(scan.max_distance, 0.0);
    }

    #[test]
    fn excited_beats_ground_everywhere() {
        // Y(1, t) - Y(-1, t) = -4 g(t) sz_eq >= 0.
        for &x in &[0.3, 1.0, 2.0] {
            for &t in &[0.2, 1.0, 3.0] {
                let y1 = pure_input_distance_sq(1.0, x, 1.0, 1.0, t).unwrap();
                let ym1 = pure_input_distance_sq(-1.0, x, 1.0, 1.0, t).unwrap();
                assert!(y1 >= ym1);
                let n_th = thermal_ratio(x, 1.0).unwrap();
                let sz_eq = equilibrium(x, 1.0).unwrap().sz_eq;
                let g = ((-t).exp() - (-n_th * t).exp()).powi(2);
                assert_relative_eq!(y1 - ym1, -4.0 * g * sz_eq, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn tstar_satisfies_defining_equation() {
        for &x in &[1.0 / 1.5, 1.0 / 5.5, 1.0 / 20.5, 1.0, 2.0] {
            let ts = tstar(x, 1.0, 1.0).unwrap();
            let n_th = thermal_ratio(x, 1.0).unwrap();
            let nf = occupation_number(Statistics::Fermionic, x, 1.0).unwrap();
            let residual =
                (-0.5 * ts).exp() + (-0.5 * n_th * ts).exp() - 1.0 / (2.0 - 2.0 * nf).sqrt();
            assert_abs_diff_eq!(residual, 0.0, epsilon = 1e-10);
        }
        assert!(tstar(f64::INFINITY, 1.0, 1.0).is_err());
    }

    #[test]
    fn tstar_decreases_with_temperature() {
        let mut prev = f64::INFINITY;
        for &x in &[2.0, 1.0, 0.5, 0.2, 0.1, 0.05] {
            let ts = tstar(x, 1.0, 1.0).unwrap();
            assert!(ts < prev, "t* not decreasing at beta omega0 = {x}");
            prev = ts;
        }
    }

    #[test]
    fn joint_input_time_maximum_sits_at_excited_state() {
        // Maximizing over time for each input, the excited state wins.
        for &x in &[1.0 / 1.5, 1.0 / 10.5] {
            let mut best = (f64::MIN, 0.0);
            for i in 0..=200 {
                let sz0 = -1.0 + i as f64 / 100.0;
                let (_, neg) = golden_section_min(
                    |t| -pure_input_distance_sq(sz0, x, 1.0, 1.0, t).unwrap(),
                    0.0,
                    30.0,
                    1e-9,
                )
                .unwrap();
                if -neg > best.0 {
                    best = (-neg, sz0);
                }
            }
            assert_eq!(best.1, 1.0, "joint argmax not excited at x = {x}");
        }
    }

    #[test]
    fn curve_has_expected_endpoints_and_bound() {
        let times: Vec<f64> = (0..=60).map(|i| i as f64 * 0.25).collect();
        let curve =
            tls_curve(0.8, 1.0, 1.0, &BlochVector::excited(), times, Frame::Rotating).unwrap();
        let h = curve.helstrom.as_ref().unwrap();
        assert_eq!(h[0], 0.5);
        assert_eq!(curve.chernoff_q[0], 1.0);
        assert_eq!(curve.r_star[0], 0.5);
        // No-information recovery at long times.
        assert_abs_diff_eq!(*h.last().unwrap(), 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(*curve.chernoff_q.last().unwrap(), 1.0, epsilon = 1e-6);
        // Single-copy Chernoff bound dominates the Helstrom error pointwise.
        for (pe, q) in h.iter().zip(&curve.chernoff_q) {
            assert!(*pe <= 0.5 * *q + 1e-12);
        }
    }

    #[test]
    fn chernoff_search_is_symmetric_for_equal_purities() {
        // lambda_b = lambda_f makes q(r) symmetric about r = 1/2.
        let (bos, fer) = bath_pair(1.0);
        let v0 = BlochVector::excited();
        // Find a time where the two evolved purities happen to match closely
        // is unnecessary; instead feed symmetric inputs directly.
        let _ = (bos, fer, v0);
        let qi = QubitChernoffInputs { lambda_b: 0.8, lambda_f: 0.8, theta: 1.1 };
        let (r, _) = minimize_chernoff_over_r(|r| chernoff_eval(&qi, r)).unwrap();
        assert_abs_diff_eq!(r, 0.5, epsilon = 1e-6);
    }
}
