// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force verification oracle on a truncated Fock basis.
//!
//! Everything here works directly on density matrices: initial states are
//! built by exponentiating truncated squeeze/displacement generators, the
//! master equation is integrated with a fixed-step classical 4th-order
//! scheme, and distances and Chernoff overlaps come from Hermitian
//! eigendecompositions. None of it shares a code path with the closed-form
//! modules it checks.
//!
//! The generator is the unified lab-frame master equation with H =
//! omega0 zeta^dag zeta and jump operators zeta (rate gamma (1 + s N_q)) and
//! zeta^dag (rate gamma N_q), where zeta is the truncated lowering operator;
//! dim = 2 reproduces the two-level probe exactly, since the truncated
//! ladder algebra at dim 2 is the Pauli algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bath::{characteristic_rate, occupation_number, BathSpec, ProbeKind, Statistics};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianParams, LadderMoments};
use crate::tls::BlochVector;

/// Tail population threshold for accepting a truncation at build time.
const BUILD_TAIL_TOL: f64 = 1e-10;

/// Largest truncation the auto-doubling builder will try.
const MAX_AUTO_DIM: usize = 1024;

/// Most negative diagonal population tolerated during integration.
const POSITIVITY_FLOOR: f64 = -1e-8;

/// Most negative eigenvalue tolerated (and clamped) in spectral routines.
const EIGEN_FLOOR: f64 = -1e-10;

/// Density matrix on a truncated Fock basis, indexed by excitation number.
///
/// For a two-level probe the basis is (ground, excited) and dim = 2.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    mat: DMatrix<Complex64>,
}

/// Initial-state recipe accepted by [`build_initial_state`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Tls(BlochVector),
    Gaussian(GaussianParams),
}

/// Build the requested initial state at a pinned truncation dimension.
pub fn build_initial_state(spec: &InitialState, dim: usize) -> Result<FockDensity> {
    match spec {
        InitialState::Tls(v) => {
            if dim != 2 {
                return Err(Error::InvalidInput(format!(
                    "two-level states embed in dim = 2, got {dim}"
                )));
            }
            Ok(FockDensity::from_bloch(v))
        }
        InitialState::Gaussian(p) => FockDensity::from_gaussian(p, dim),
    }
}

impl FockDensity {
    /// Wrap an explicit matrix, enforcing the representation invariants.
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() < 2 {
            return Err(Error::InvalidInput(format!(
                "density matrix must be square with dim >= 2, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let herm_residual = (&mat - mat.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm_residual > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "density matrix not Hermitian, residual {herm_residual:.3e}"
            )));
        }
        let tr = mat.diagonal().iter().map(|z| z.re).sum::<f64>();
        if (tr - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("density matrix trace {tr} is not 1")));
        }
        Ok(Self { mat })
    }

    /// Qubit state from a Bloch vector, basis (ground, excited).
    pub fn from_bloch(v: &BlochVector) -> Self {
        let half = 0.5;
        let mat = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(half * (1.0 - v.sz), 0.0),
                Complex64::new(half * v.sx, half * v.sy),
                Complex64::new(half * v.sx, -half * v.sy),
                Complex64::new(half * (1.0 + v.sz), 0.0),
            ],
        );
        Self { mat }
    }

    /// Thermal state with mean occupation `n_mean`: geometric populations
    /// renormalized over the truncation.
    pub fn thermal(n_mean: f64, dim: usize) -> Result<Self> {
        if !n_mean.is_finite() || n_mean < 0.0 {
            return Err(Error::InvalidInput(format!(
                "thermal occupation must be finite and >= 0, got {n_mean}"
            )));
        }
        if dim < 2 {
            return Err(Error::InvalidInput(format!("dim must be >= 2, got {dim}")));
        }
        let q = n_mean / (n_mean + 1.0);
        let mut pops = vec![0.0f64; dim];
        let mut w = 1.0 - q;
        for p in pops.iter_mut() {
            *p = w;
            w *= q;
        }
        let tail: f64 = pops[dim - dim.div_ceil(8)..].iter().sum();
        if tail >= BUILD_TAIL_TOL {
            return Err(Error::IncreaseTruncation(format!(
                "thermal tail population {tail:.3e} at dim {dim}"
            )));
        }
        let total: f64 = pops.iter().sum();
        let mut mat = DMatrix::zeros(dim, dim);
        for (k, p) in pops.iter().enumerate() {
            mat[(k, k)] = Complex64::new(p / total, 0.0);
        }
        Ok(Self { mat })
    }

    /// Displaced squeezed thermal state: matrix exponentials of the
    /// truncated generators applied to a diagonal thermal core.
    pub fn from_gaussian(params: &GaussianParams, dim: usize) -> Result<Self> {
        let core = Self::thermal(params.thermal_occupation(), dim)?;
        let a = lowering_operator(dim);
        let adag = a.adjoint();

        let mut rho = core.mat;
        if params.chi_mod > 0.0 {
            let half_chi = Complex64::from_polar(0.5 * params.chi_mod, params.chi_phase);
            let g = &adag * &adag * half_chi - &a * &a * half_chi.conj();
            let u = exp_anti_hermitian(&g);
            rho = &u * rho * u.adjoint();
        }
        if params.xi.norm() > 0.0 {
            let alpha = Complex64::new(params.xi.x, params.xi.y) / std::f64::consts::SQRT_2;
            let g = &adag * alpha - &a * alpha.conj();
            let u = exp_anti_hermitian(&g);
            rho = &u * rho * u.adjoint();
        }
        // Re-impose exact Hermiticity and unit trace against rounding.
        rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
        let tr = rho.diagonal().iter().map(|z| z.re).sum::<f64>();
        rho *= Complex64::new(1.0 / tr, 0.0);

        let out = Self { mat: rho };
        let tail = out.tail_weight();
        if tail >= BUILD_TAIL_TOL {
            return Err(Error::IncreaseTruncation(format!(
                "state tail population {tail:.3e} at dim {dim}"
            )));
        }
        Ok(out)
    }

    /// Like [`FockDensity::from_gaussian`], doubling the truncation until
    /// the tail threshold is met (up to a hard cap).
    pub fn from_gaussian_auto(params: &GaussianParams, start_dim: usize) -> Result<Self> {
        let mut dim = start_dim.max(2);
        loop {
            match Self::from_gaussian(params, dim) {
                Err(Error::IncreaseTruncation(why)) if dim < MAX_AUTO_DIM => {
                    let _ = why;
                    dim *= 2;
                }
                other => return other,
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// Population in the top ceil(dim/8) levels: the truncation-leakage
    /// proxy checked against tail thresholds.
    pub fn tail_weight(&self) -> f64 {
        let dim = self.dim();
        let guard = dim.div_ceil(8);
        (dim - guard..dim).map(|k| self.mat[(k, k)].re).sum()
    }

    /// Bloch vector of a dim-2 state.
    pub fn bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::InvalidInput(format!(
                "Bloch vector requires dim = 2, got {}",
                self.dim()
            )));
        }
        BlochVector::new(
            2.0 * self.mat[(1, 0)].re,
            -2.0 * self.mat[(1, 0)].im,
            self.mat[(1, 1)].re - self.mat[(0, 0)].re,
        )
    }

    /// Ladder-operator expectations <a>, <a^2>, <a^dag a>.
    pub fn ladder_moments(&self) -> LadderMoments {
        let dim = self.dim();
        let mut a_mean = Complex64::new(0.0, 0.0);
        let mut a2_mean = Complex64::new(0.0, 0.0);
        let mut n_mean = 0.0;
        for i in 1..dim {
            a_mean += self.mat[(i, i - 1)] * (i as f64).sqrt();
            n_mean += i as f64 * self.mat[(i, i)].re;
        }
        for i in 2..dim {
            a2_mean += self.mat[(i, i - 2)] * ((i * (i - 1)) as f64).sqrt();
        }
        LadderMoments { a_mean, a2_mean, n_mean }
    }

    /// One fixed-step 4th-order integration step of the master equation.
    pub fn lindblad_step(&self, bath: &BathSpec, probe: ProbeKind, dt: f64) -> Result<Self> {
        let gen = LindbladGenerator::new(self.dim(), bath, probe, dt)?;
        let mut state = self.mat.clone();
        let mut work = gen.workspace();
        gen.step(&mut state, dt, &mut work)?;
        Ok(Self { mat: state })
    }

    /// Integrate the master equation to time `t` with step `dt` (the final
    /// step is shortened to land exactly on `t`).
    pub fn evolve(&self, bath: &BathSpec, probe: ProbeKind, t: f64, dt: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidInput(format!("time must be finite and >= 0, got {t}")));
        }
        let gen = LindbladGenerator::new(self.dim(), bath, probe, dt)?;
        if t == 0.0 {
            return Ok(self.clone());
        }
        let n_steps = (t / dt).ceil().max(1.0) as usize;
        let h = t / n_steps as f64;
        let mut state = self.mat.clone();
        let mut work = gen.workspace();
        for _ in 0..n_steps {
            gen.step(&mut state, h, &mut work)?;
        }
        Ok(Self { mat: state })
    }
}

/// Truncated lowering operator a with entries sqrt(k) at (k-1, k).
fn lowering_operator(dim: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(dim, dim);
    for k in 1..dim {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// exp(G) for anti-Hermitian G, via the Hermitian eigendecomposition of
/// K = -iG: exp(iK) = V diag(e^{i lambda}) V^dag.
fn exp_anti_hermitian(g: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let k = g.map(|z| z * Complex64::new(0.0, -1.0));
    let eig = k.symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, l)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Precomputed rates of the unified generator, plus step validation.
struct LindbladGenerator {
    dim: usize,
    omega0: f64,
    /// Downward jump rate gamma (1 + s N_q).
    k_down: f64,
    /// Upward jump rate gamma N_q.
    k_up: f64,
}

struct Workspace {
    k1: DMatrix<Complex64>,
    k2: DMatrix<Complex64>,
    k3: DMatrix<Complex64>,
    k4: DMatrix<Complex64>,
    tmp: DMatrix<Complex64>,
}

impl LindbladGenerator {
    fn new(dim: usize, bath: &BathSpec, probe: ProbeKind, dt: f64) -> Result<Self> {
        if probe == ProbeKind::Tls && dim != 2 {
            return Err(Error::InvalidInput(format!(
                "two-level probe requires dim = 2, got {dim}"
            )));
        }
        let rate = characteristic_rate(probe, bath)?;
        let bound = 1e-3 / rate;
        // negated on purpose: a NaN step must land in the error branch
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(dt > 0.0) || dt > bound * (1.0 + 1e-9) {
            return Err(Error::StepSizeTooLarge(format!(
                "dt = {dt} exceeds the stability bound 1e-3/Gamma = {bound:.6e}"
            )));
        }
        let n_q = occupation_number(bath.statistics, bath.beta, bath.omega0)?;
        let sign = match bath.statistics {
            Statistics::Bosonic => 1.0,
            Statistics::Fermionic => -1.0,
        };
        Ok(Self {
            dim,
            omega0: bath.omega0,
            k_down: bath.gamma * (1.0 + sign * n_q),
            k_up: bath.gamma * n_q,
        })
    }

    fn workspace(&self) -> Workspace {
        Workspace {
            k1: DMatrix::zeros(self.dim, self.dim),
            k2: DMatrix::zeros(self.dim, self.dim),
            k3: DMatrix::zeros(self.dim, self.dim),
            k4: DMatrix::zeros(self.dim, self.dim),
            tmp: DMatrix::zeros(self.dim, self.dim),
        }
    }

    /// Right-hand side of the master equation, written elementwise so each
    /// evaluation costs O(dim^2). All truncated products are exact matrix
    /// algebra of the truncated operators, which conserves trace exactly.
    fn rhs(&self, rho: &DMatrix<Complex64>, out: &mut DMatrix<Complex64>) {
        let dim = self.dim;
        // Diagonal of the truncated a a^dag: m+1, except 0 at the top level.
        let up_diag = |m: usize| if m + 1 < dim { (m + 1) as f64 } else { 0.0 };
        for j in 0..dim {
            for i in 0..dim {
                let r = rho[(i, j)];
                let mut v = Complex64::new(0.0, -self.omega0 * (i as f64 - j as f64)) * r;
                let down_gain = if i + 1 < dim && j + 1 < dim {
                    rho[(i + 1, j + 1)] * (((i + 1) * (j + 1)) as f64).sqrt()
                } else {
                    Complex64::new(0.0, 0.0)
                };
                v += (down_gain - r * (0.5 * (i + j) as f64)) * self.k_down;
                if self.k_up != 0.0 {
                    let up_gain = if i >= 1 && j >= 1 {
                        rho[(i - 1, j - 1)] * ((i * j) as f64).sqrt()
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    v += (up_gain - r * (0.5 * (up_diag(i) + up_diag(j)))) * self.k_up;
                }
                out[(i, j)] = v;
            }
        }
    }

    /// Advance `state` by one step of size `h`, checking positivity.
    fn step(&self, state: &mut DMatrix<Complex64>, h: f64, w: &mut Workspace) -> Result<()> {
        let blend = |tmp: &mut DMatrix<Complex64>,
                     base: &DMatrix<Complex64>,
                     slope: &DMatrix<Complex64>,
                     weight: f64| {
            tmp.zip_zip_apply(base, slope, |t, b, s| *t = b + s * weight);
        };
        self.rhs(state, &mut w.k1);
        blend(&mut w.tmp, state, &w.k1, 0.5 * h);
        self.rhs(&w.tmp, &mut w.k2);
        blend(&mut w.tmp, state, &w.k2, 0.5 * h);
        self.rhs(&w.tmp, &mut w.k3);
        blend(&mut w.tmp, state, &w.k3, h);
        self.rhs(&w.tmp, &mut w.k4);

        let sixth = h / 6.0;
        for j in 0..self.dim {
            for i in 0..self.dim {
                state[(i, j)] +=
                    (w.k1[(i, j)] + (w.k2[(i, j)] + w.k3[(i, j)]) * 2.0 + w.k4[(i, j)]) * sixth;
            }
        }
        for k in 0..self.dim {
            let p = state[(k, k)].re;
            if !p.is_finite() || p < POSITIVITY_FLOOR {
                return Err(Error::StepSizeTooLarge(format!(
                    "population {p:.3e} at level {k} broke positivity"
                )));
            }
        }
        Ok(())
    }
}

/// Trace norm ||a - b||_1: sum of absolute eigenvalues of the difference.
pub fn trace_norm_distance(a: &FockDensity, b: &FockDensity) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    let eig = (&a.mat - &b.mat).symmetric_eigen();
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// rho^r via Hermitian eigendecomposition; eigenvalues clamped to [0, 1],
/// values below the clamp floor are an error.
fn fractional_power(rho: &DMatrix<Complex64>, r: f64) -> Result<DMatrix<Complex64>> {
    let eig = rho.clone().symmetric_eigen();
    let mut powered = Vec::with_capacity(eig.eigenvalues.len());
    for &l in eig.eigenvalues.iter() {
        if l < EIGEN_FLOOR {
            return Err(Error::InvalidInput(format!(
                "density matrix not positive semidefinite: eigenvalue {l:.3e}"
            )));
        }
        powered.push(Complex64::new(l.clamp(0.0, 1.0).powf(r), 0.0));
    }
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(powered));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

/// Chernoff overlap tr[a^r b^(1-r)] computed directly from the matrices.
pub fn chernoff_direct(a: &FockDensity, b: &FockDensity, r: f64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidInput(format!("Chernoff exponent must be in [0, 1], got {r}")));
    }
    let ar = fractional_power(&a.mat, r)?;
    let br = fractional_power(&b.mat, 1.0 - r)?;
    let dim = a.dim();
    let mut tr = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        for i in 0..dim {
            tr += ar[(i, j)] * br[(j, i)];
        }
    }
    Ok(tr.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminate::minimize_chernoff_over_r;
    use crate::gaussian::{
        evolve_ladder_moments, evolve_params, gaussian_chernoff_r, params_to_moments,
    };
    use crate::tls::{evolve_bloch, qubit_chernoff_r, trace_distance_tls, QubitChernoffInputs};
    use crate::Frame;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Vector2;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_bloch(rng: &mut StdRng) -> BlochVector {
        loop {
            let v = BlochVector::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if let Ok(v) = v {
                return v;
            }
        }
    }

    #[test]
    fn bloch_round_trip() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let v = random_bloch(&mut rng);
            let rho = FockDensity::from_bloch(&v);
            assert_relative_eq!(rho.trace(), 1.0, max_relative = 1e-14);
            let back = rho.bloch().unwrap();
            assert_abs_diff_eq!(back.sx, v.sx, epsilon = 1e-14);
            assert_abs_diff_eq!(back.sy, v.sy, epsilon = 1e-14);
            assert_abs_diff_eq!(back.sz, v.sz, epsilon = 1e-14);
        }
    }

    #[test]
    fn ground_state_is_single_population() {
        let rho = FockDensity::from_gaussian(&GaussianParams::vacuum(), 16).unwrap();
        assert_relative_eq!(rho.matrix()[(0, 0)].re, 1.0, max_relative = 1e-13);
        let off: f64 =
            rho.matrix().iter().map(|z| z.norm()).sum::<f64>() - rho.matrix()[(0, 0)].norm();
        assert_abs_diff_eq!(off, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn thermal_state_geometric_populations() {
        let rho = FockDensity::thermal(1.0, 64).unwrap();
        assert_relative_eq!(rho.trace(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(rho.ladder_moments().n_mean, 1.0, max_relative = 1e-12);
        for k in 0..6 {
            let ratio = rho.matrix()[(k + 1, k + 1)].re / rho.matrix()[(k, k)].re;
            assert_relative_eq!(ratio, 0.5, max_relative = 1e-12);
        }
    }

    #[test]
    fn thermal_nu_three_has_unit_mean() {
        // nu = 3 corresponds to occupation (nu - 1)/2 = 1.
        let p = GaussianParams::thermal(3.0).unwrap();
        let rho = FockDensity::from_gaussian(&p, 64).unwrap();
        assert_relative_eq!(rho.ladder_moments().n_mean, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn coherent_state_mean_excitation() {
        let p = GaussianParams::coherent(Vector2::new(std::f64::consts::SQRT_2, 0.0)).unwrap();
        let rho = FockDensity::from_gaussian(&p, 64).unwrap();
        assert_abs_diff_eq!(rho.ladder_moments().n_mean, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn gaussian_build_matches_analytic_moments() {
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..8 {
            let p = GaussianParams::new(
                1.0 + rng.gen_range(0.0..1.5),
                Vector2::new(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2)),
                rng.gen_range(0.0..0.5),
                rng.gen_range(-3.0..3.0),
            )
            .unwrap();
            let rho = FockDensity::from_gaussian(&p, 64).unwrap();
            let got = rho.ladder_moments();
            let want = params_to_moments(&p).to_ladder();
            assert_abs_diff_eq!((got.a_mean - want.a_mean).norm(), 0.0, epsilon = 1e-8);
            assert_abs_diff_eq!((got.a2_mean - want.a2_mean).norm(), 0.0, epsilon = 1e-8);
            assert_abs_diff_eq!(got.n_mean, want.n_mean, epsilon = 1e-8);
        }
    }

    #[test]
    fn small_truncation_raises_and_auto_doubling_recovers() {
        let p = GaussianParams::thermal(3.0).unwrap();
        assert!(matches!(FockDensity::from_gaussian(&p, 8), Err(Error::IncreaseTruncation(_))));
        let rho = FockDensity::from_gaussian_auto(&p, 8).unwrap();
        assert!(rho.dim() > 8);
        assert!(rho.tail_weight() < 1e-10);
        assert_relative_eq!(rho.ladder_moments().n_mean, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn gibbs_state_is_stationary() {
        for stats in [Statistics::Bosonic, Statistics::Fermionic] {
            let bath = BathSpec::new(stats, 0.9, 1.0, 1.0).unwrap();
            let n_b = occupation_number(Statistics::Bosonic, 0.9, 1.0).unwrap();
            let rho = FockDensity::thermal(n_b, 64).unwrap();
            let dt = 1e-4;
            let stepped = rho.lindblad_step(&bath, ProbeKind::Qho, dt).unwrap();
            let drift =
                (stepped.matrix() - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(drift < 1e-14, "Gibbs state drifted by {drift:.3e}");
        }
    }

    #[test]
    fn integration_preserves_trace_and_hermiticity() {
        let bath = BathSpec::new(Statistics::Bosonic, 0.7, 1.0, 1.0).unwrap();
        let p = GaussianParams::coherent(Vector2::new(1.0, -0.5)).unwrap();
        let mut rho = FockDensity::from_gaussian(&p, 48).unwrap();
        let gen = LindbladGenerator::new(48, &bath, ProbeKind::Qho, 1e-3).unwrap();
        let mut work = gen.workspace();
        for _ in 0..100 {
            let before = rho.trace();
            gen.step(&mut rho.mat, 1e-3, &mut work).unwrap();
            assert_abs_diff_eq!(rho.trace(), before, epsilon = 1e-12);
        }
        let herm = (&rho.mat - rho.mat.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(herm < 1e-12);
    }

    #[test]
    fn tls_trajectory_matches_bloch_solution() {
        let mut rng = StdRng::seed_from_u64(23);
        let v0 = random_bloch(&mut rng);
        for stats in [Statistics::Bosonic, Statistics::Fermionic] {
            let bath = BathSpec::new(stats, 1.0 / 1.5, 1.0, 1.0).unwrap();
            let rate = characteristic_rate(ProbeKind::Tls, &bath).unwrap();
            let dt = 1e-3 / rate;
            for step in 1..=10 {
                let t = step as f64;
                let numeric = FockDensity::from_bloch(&v0)
                    .evolve(&bath, ProbeKind::Tls, t, dt)
                    .unwrap()
                    .bloch()
                    .unwrap();
                let analytic = evolve_bloch(&v0, &bath, t, Frame::Lab).unwrap();
                assert_abs_diff_eq!(numeric.sx, analytic.sx, epsilon = 1e-6);
                assert_abs_diff_eq!(numeric.sy, analytic.sy, epsilon = 1e-6);
                assert_abs_diff_eq!(numeric.sz, analytic.sz, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn qho_ground_occupation_matches_moment_solution() {
        let bath = BathSpec::new(Statistics::Bosonic, std::f64::consts::LN_2, 1.0, 1.0).unwrap();
        let p0 = GaussianParams::vacuum();
        let lm0 = params_to_moments(&p0).to_ladder();
        let rho0 = FockDensity::from_gaussian(&p0, 64).unwrap();
        for &t in &[0.5, 1.0, 2.0] {
            let numeric = rho0.evolve(&bath, ProbeKind::Qho, t, 1e-3).unwrap();
            let analytic = evolve_ladder_moments(&lm0, &bath, t, Frame::Lab).unwrap();
            assert_abs_diff_eq!(numeric.ladder_moments().n_mean, analytic.n_mean, epsilon = 1e-6);
        }
    }

    #[test]
    fn qho_full_moments_match_analytic_evolution() {
        let p0 = GaussianParams::new(1.0, Vector2::new(1.0, 0.4), 0.3, 0.8).unwrap();
        let lm0 = params_to_moments(&p0).to_ladder();
        let rho0 = FockDensity::from_gaussian(&p0, 64).unwrap();
        for stats in [Statistics::Bosonic, Statistics::Fermionic] {
            let bath = BathSpec::new(stats, 1.0, 1.0, 1.0).unwrap();
            let numeric = rho0.evolve(&bath, ProbeKind::Qho, 0.8, 1e-3).unwrap().ladder_moments();
            let analytic = evolve_ladder_moments(&lm0, &bath, 0.8, Frame::Lab).unwrap();
            assert_abs_diff_eq!((numeric.a_mean - analytic.a_mean).norm(), 0.0, epsilon = 1e-6);
            assert_abs_diff_eq!((numeric.a2_mean - analytic.a2_mean).norm(), 0.0, epsilon = 1e-6);
            assert_abs_diff_eq!(numeric.n_mean, analytic.n_mean, epsilon = 1e-6);
        }
    }

    #[test]
    fn trace_norm_distance_reference_values() {
        let up = FockDensity::from_bloch(&BlochVector::excited());
        let down = FockDensity::from_bloch(&BlochVector::ground());
        assert_abs_diff_eq!(trace_norm_distance(&up, &up).unwrap(), 0.0, epsilon = 1e-14);
        assert_relative_eq!(trace_norm_distance(&up, &down).unwrap(), 2.0, max_relative = 1e-13);
    }

    #[test]
    fn tls_distance_matches_excited_state_formula() {
        // At beta omega0 = 1/1.5 and t = t_bar, the excited-input distance is
        // (1 - sz_eq)(e^{-gamma t} - e^{-gamma n_th t}).
        let beta = 1.0 / 1.5;
        let n_th = crate::bath::thermal_ratio(beta, 1.0).unwrap();
        let t = crate::tls::optimal_time_tls(beta, 1.0, 1.0).unwrap();
        let (bos, fer) = BathSpec::hypothesis_pair(beta, 1.0, 1.0).unwrap();
        let v0 = BlochVector::excited();
        let rho0 = FockDensity::from_bloch(&v0);
        let state_b = rho0.evolve(&bos, ProbeKind::Tls, t, 1e-3 / n_th).unwrap();
        let state_f = rho0.evolve(&fer, ProbeKind::Tls, t, 1e-3 / n_th).unwrap();
        let sz_eq = crate::tls::equilibrium(beta, 1.0).unwrap().sz_eq;
        let expect = (1.0 - sz_eq) * ((-t).exp() - (-n_th * t).exp());
        let got = trace_norm_distance(&state_b, &state_f).unwrap();
        assert_abs_diff_eq!(got, expect, epsilon = 1e-6);
        // Same quantity through the Bloch geometry.
        let vb = evolve_bloch(&v0, &bos, t, Frame::Lab).unwrap();
        let vf = evolve_bloch(&v0, &fer, t, Frame::Lab).unwrap();
        assert_abs_diff_eq!(got, trace_distance_tls(&vb, &vf), epsilon = 1e-6);
    }

    #[test]
    fn chernoff_direct_identity_is_one() {
        let rho = FockDensity::thermal(0.8, 48).unwrap();
        for &r in &[0.0, 0.3, 0.5, 1.0] {
            assert_relative_eq!(chernoff_direct(&rho, &rho, r).unwrap(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn chernoff_direct_matches_qubit_closed_form() {
        let mut rng = StdRng::seed_from_u64(101);
        for _ in 0..1000 {
            let va = random_bloch(&mut rng);
            let vb = random_bloch(&mut rng);
            let r = rng.gen_range(0.0..=1.0);
            let direct =
                chernoff_direct(&FockDensity::from_bloch(&va), &FockDensity::from_bloch(&vb), r)
                    .unwrap();
            let closed = qubit_chernoff_r(&QubitChernoffInputs::from_bloch(&va, &vb), r).unwrap();
            assert_abs_diff_eq!(direct, closed, epsilon = 1e-10);
        }
    }

    #[test]
    fn chernoff_direct_matches_gaussian_formula() {
        let x = 0.6;
        let (bos, fer) = BathSpec::hypothesis_pair(x, 1.0, 1.0).unwrap();
        let p0 = GaussianParams::coherent(Vector2::new(1.2, 0.3)).unwrap();
        let rho0 = FockDensity::from_gaussian(&p0, 64).unwrap();
        let t = 0.7;
        let numeric_b = rho0.evolve(&bos, ProbeKind::Qho, t, 1e-3).unwrap();
        let numeric_f = rho0.evolve(&fer, ProbeKind::Qho, t, 1e-3).unwrap();
        let sb = evolve_params(&p0, &bos, t, Frame::Lab).unwrap();
        let sf = evolve_params(&p0, &fer, t, Frame::Lab).unwrap();
        for &r in &[0.3, 0.5, 0.7] {
            let direct = chernoff_direct(&numeric_b, &numeric_f, r).unwrap();
            let formula = gaussian_chernoff_r(&sb, &sf, r).unwrap();
            assert_abs_diff_eq!(direct, formula, epsilon = 1e-6);
        }
        // The r-minimum found on the oracle matches the formula's.
        let (r_direct, _) =
            minimize_chernoff_over_r(|r| chernoff_direct(&numeric_b, &numeric_f, r).unwrap())
                .unwrap();
        let (r_formula, _) =
            minimize_chernoff_over_r(|r| gaussian_chernoff_r(&sb, &sf, r).unwrap()).unwrap();
        assert_abs_diff_eq!(r_direct, r_formula, epsilon = 1e-3);
    }

    #[test]
    fn truncation_doubling_leaves_chernoff_unchanged() {
        let x = 0.29; // N_b close to 3
        let (bos, fer) = BathSpec::hypothesis_pair(x, 1.0, 1.0).unwrap();
        let p0 = GaussianParams::vacuum();
        let mut qs = Vec::new();
        for dim in [64, 128] {
            let rho0 = FockDensity::from_gaussian(&p0, dim).unwrap();
            let b = rho0.evolve(&bos, ProbeKind::Qho, 0.6, 1e-3).unwrap();
            let f = rho0.evolve(&fer, ProbeKind::Qho, 0.6, 1e-3).unwrap();
            qs.push(chernoff_direct(&b, &f, 0.5).unwrap());
        }
        assert_abs_diff_eq!(qs[0], qs[1], epsilon = 1e-8);
    }

    #[test]
    fn negative_eigenvalues_beyond_floor_are_rejected() {
        let mat = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.001, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.001, 0.0),
            ],
        );
        let rho = FockDensity { mat };
        let ok = FockDensity::thermal(0.5, 2);
        assert!(ok.is_err()); // dim 2 cannot hold a thermal tail
        let other = FockDensity::from_bloch(&BlochVector::ground());
        assert!(matches!(chernoff_direct(&rho, &other, 0.5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn oversized_step_is_rejected_up_front() {
        let bath = BathSpec::new(Statistics::Bosonic, 1.0, 1.0, 1.0).unwrap();
        let rho = FockDensity::thermal(0.2, 32).unwrap();
        assert!(matches!(
            rho.evolve(&bath, ProbeKind::Qho, 1.0, 0.1),
            Err(Error::StepSizeTooLarge(_))
        ));
    }

    #[test]
    fn from_matrix_validates_invariants() {
        let good = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.5, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.5, 0.0),
            ],
        );
        assert!(FockDensity::from_matrix(good.clone()).is_ok());
        let mut not_hermitian = good.clone();
        not_hermitian[(0, 1)] = Complex64::new(0.3, 0.2);
        assert!(FockDensity::from_matrix(not_hermitian).is_err());
        let bad_trace = good * Complex64::new(1.5, 0.0);
        assert!(FockDensity::from_matrix(bad_trace).is_err());
    }
}
