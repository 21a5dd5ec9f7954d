// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Tagging the statistics of a thermal bath with quantum probes.
//!
//! A probe (two-level system or harmonic oscillator) is weakly coupled to a
//! thermal bath of unknown statistics. Bosonic and fermionic baths at the same
//! inverse temperature thermalize the probe toward the same stationary state
//! but at different rates, so the transient carries a statistics signature.
//! This crate provides:
//!
//! * exact solutions of the probe master equation for both bath hypotheses
//!   ([`tls`], [`gaussian`]),
//! * discrimination figures of merit: Helstrom minimum error probability and
//!   the quantum Chernoff bound, with optimization over measurement time,
//!   input state, and bath temperature ([`discriminate`]),
//! * an independent brute-force check that integrates the same master
//!   equation in a truncated Fock space ([`oracle`], [`verify`]).
//!
//! Conventions: hbar = kB = 1, quadratures x = (a + a^dag)/sqrt(2),
//! y = (a - a^dag)/(sqrt(2) i), vacuum covariance matrix = identity.

pub mod bath;
pub mod discriminate;
pub mod error;
pub mod gaussian;
pub mod oracle;
pub mod tls;
pub mod verify;

pub use bath::{BathSpec, ProbeKind, RateTable, Statistics};
pub use error::{Error, Result};

/// Reference frame for probe evolution.
///
/// Both bath hypotheses share the probe Hamiltonian, so every discrimination
/// functional is identical in the two frames; the lab frame carries the bare
/// omega0 precession, the rotating frame removes it for smooth curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Lab,
    Rotating,
}
