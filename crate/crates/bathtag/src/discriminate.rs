// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Discrimination figures of merit and the scalar searches behind them.
//!
//! The quantum Chernoff exponent min_r tr[rho_b^r rho_f^(1-r)] and the best
//! measurement time are both found by a bracketed golden-section search after
//! a coarse pre-scan. The pre-scan guards against non-unimodal objectives:
//! every discrete local minimum is refined and the global best is returned.

use crate::error::{Error, Result};

/// Golden-section interval shrink factor, (sqrt(5) - 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Default absolute tolerance on the search argument.
pub const ARG_TOL: f64 = 1e-10;

/// Points in the coarse pre-scan that brackets candidate minima.
const PRESCAN_POINTS: usize = 21;

/// Relative spread below which a scanned objective counts as constant.
const FLAT_EPS: f64 = 1e-12;

/// Minimize `f` on [a, b] by golden-section search, assuming unimodality
/// inside the bracket. Returns the best evaluated point.
pub fn golden_section_min<F>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    debug_assert!(b > a && tol > 0.0);
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective(x))
        }
    };
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    let mut iters = 0usize;
    while hi - lo > tol && iters < 500 {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = eval(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = eval(d)?;
        }
        iters += 1;
    }
    let mid = 0.5 * (lo + hi);
    let fmid = eval(mid)?;
    let mut best = (mid, fmid);
    if fc < best.1 {
        best = (c, fc);
    }
    if fd < best.1 {
        best = (d, fd);
    }
    Ok(best)
}

/// Outcome classification of a scalar search over a finite interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimumKind {
    /// Minimum found strictly inside the interval.
    Interior,
    /// Objective still decreasing at the right edge; the reported point
    /// sits on the boundary and the true optimum may lie beyond it.
    Boundary,
    /// Objective is constant over the interval; no informative optimum.
    Degenerate,
}

/// Result of [`minimize_over_time`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeOptimum {
    pub t: f64,
    pub value: f64,
    pub kind: OptimumKind,
}

/// Pre-scan `f` on `n` equispaced points of [a, b], then golden-refine a
/// bracket around every discrete local minimum and keep the global best.
/// Returns `None` if the scan is flat to within [`FLAT_EPS`].
fn prescan_refine<F>(f: &F, a: f64, b: f64, n: usize, tol: f64) -> Result<Option<(f64, f64, bool)>>
where
    F: Fn(f64) -> f64,
{
    debug_assert!(n >= 3);
    let step = (b - a) / (n - 1) as f64;
    let mut xs = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    for i in 0..n {
        let x = if i == n - 1 { b } else { a + step * i as f64 };
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteObjective(x));
        }
        xs.push(x);
        vs.push(v);
    }
    let vmax = vs.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = vs.iter().cloned().fold(f64::MAX, f64::min);
    if vmax - vmin <= FLAT_EPS * vmax.abs().max(1.0) {
        return Ok(None);
    }
    let mut candidates = Vec::new();
    for i in 0..n {
        let left_ok = i == 0 || vs[i] <= vs[i - 1];
        let right_ok = i == n - 1 || vs[i] <= vs[i + 1];
        if left_ok && right_ok {
            candidates.push(i);
        }
    }
    let mut best: Option<(f64, f64)> = None;
    let mut at_right_edge = false;
    for &i in &candidates {
        let lo = if i == 0 { xs[0] } else { xs[i - 1] };
        let hi = if i == n - 1 { xs[n - 1] } else { xs[i + 1] };
        let (x, v) = golden_section_min(f, lo, hi, tol)?;
        if best.is_none_or(|(_, bv)| v < bv) {
            best = Some((x, v));
            at_right_edge = i == n - 1;
        }
    }
    let (x, v) = best.expect("non-flat scan yields at least one candidate");
    Ok(Some((x, v, at_right_edge)))
}

/// Minimize `f` on [a, b] by pre-scan plus golden refinement, without
/// assuming unimodality. A flat objective returns the interval midpoint.
pub fn minimize_scalar<F>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::InvalidInput(format!("invalid search interval [{a}, {b}]")));
    }
    match prescan_refine(&f, a, b, PRESCAN_POINTS, tol)? {
        Some((x, v, _)) => Ok((x, v)),
        None => {
            let mid = 0.5 * (a + b);
            let v = f(mid);
            if v.is_finite() {
                Ok((mid, v))
            } else {
                Err(Error::NonFiniteObjective(mid))
            }
        }
    }
}

/// Minimize a Chernoff overlap q(r) over r. The search runs on
/// [1e-6, 1 - 1e-6] to avoid the rank-deficient endpoints; a constant
/// objective (indistinguishable states) returns r = 1/2 by convention.
///
/// Returns (r_star, q_min).
pub fn minimize_chernoff_over_r<F>(q_of_r: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let (a, b) = (1e-6, 1.0 - 1e-6);
    match prescan_refine(&q_of_r, a, b, PRESCAN_POINTS, ARG_TOL)? {
        Some((r, v, _)) => Ok((r, v)),
        None => {
            let v = q_of_r(0.5);
            if v.is_finite() {
                Ok((0.5, v))
            } else {
                Err(Error::NonFiniteObjective(0.5))
            }
        }
    }
}

/// Minimize a time curve f(t) on [0, t_max].
///
/// `tol` is the absolute tolerance on t. A flat curve reports
/// [`OptimumKind::Degenerate`] with t = 0; a minimum at the right edge
/// reports [`OptimumKind::Boundary`], signalling that `t_max` was too short.
pub fn minimize_over_time<F>(f: F, t_max: f64, tol: f64) -> Result<TimeOptimum>
where
    F: Fn(f64) -> f64,
{
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "time horizon must be finite and > 0, got {t_max}"
        )));
    }
    match prescan_refine(&f, 0.0, t_max, PRESCAN_POINTS, tol)? {
        Some((t, value, at_edge)) => Ok(TimeOptimum {
            t,
            value,
            kind: if at_edge { OptimumKind::Boundary } else { OptimumKind::Interior },
        }),
        None => {
            let value = f(0.0);
            if value.is_finite() {
                Ok(TimeOptimum { t: 0.0, value, kind: OptimumKind::Degenerate })
            } else {
                Err(Error::NonFiniteObjective(0.0))
            }
        }
    }
}

/// Chernoff bound on the N-copy error probability, Q^N / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopyBound {
    pub n_copies: u32,
    pub bound: f64,
}

/// Exponential tightening of the single-copy overlap q with copy number.
pub fn n_copy_bound(q: f64, n_copies: u32) -> Result<CopyBound> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidInput(format!("Chernoff overlap must be in (0, 1], got {q}")));
    }
    if n_copies == 0 {
        return Err(Error::InvalidInput("copy number must be >= 1".into()));
    }
    Ok(CopyBound { n_copies, bound: 0.5 * q.powi(n_copies as i32) })
}

/// Discrimination summary along a time grid: minimum error probability
/// (where available), Chernoff overlap Q(t) = min_r q(r, t), and the
/// minimizing exponent r*(t).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationCurve {
    pub times: Vec<f64>,
    /// Helstrom minimum error probability; `None` when no closed form exists
    /// for the probe.
    pub helstrom: Option<Vec<f64>>,
    pub chernoff_q: Vec<f64>,
    pub r_star: Vec<f64>,
}

impl DiscriminationCurve {
    /// Assemble a curve from per-time evaluators.
    ///
    /// `q_factory` builds, for each time, the overlap function r -> q(r, t);
    /// hypothesis states are thus evolved once per grid point rather than
    /// once per (r, t) pair.
    pub fn build<H, F, G>(times: Vec<f64>, helstrom_fn: Option<H>, q_factory: F) -> Result<Self>
    where
        H: Fn(f64) -> Result<f64>,
        F: Fn(f64) -> Result<G>,
        G: Fn(f64) -> f64,
    {
        let mut chernoff_q = Vec::with_capacity(times.len());
        let mut r_star = Vec::with_capacity(times.len());
        let mut helstrom = helstrom_fn.as_ref().map(|_| Vec::with_capacity(times.len()));
        for &t in &times {
            let q_of_r = q_factory(t)?;
            let (r, q) = minimize_chernoff_over_r(q_of_r)?;
            chernoff_q.push(q);
            r_star.push(r);
            if let (Some(h), Some(hf)) = (helstrom.as_mut(), helstrom_fn.as_ref()) {
                h.push(hf(t)?);
            }
        }
        Ok(Self { times, helstrom, chernoff_q, r_star })
    }

    /// Grid point with the smallest Chernoff overlap.
    pub fn min_chernoff_point(&self) -> Option<(f64, f64)> {
        self.chernoff_q
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, &q)| (self.times[i], q))
    }
}
