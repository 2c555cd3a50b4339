// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Oracles shared by the integration suites. Everything here recomputes the
//! library's quantities along an independent route: dense grids instead of
//! adaptive quadrature, finite differences instead of analytic derivatives,
//! a general-purpose SVD on an explicitly assembled matrix instead of the
//! model-specific rate formula. The suites compare the two routes; agreement
//! is evidence both are right, since the code paths share nothing past the
//! dephasing factor itself.

// Each integration target compiles its own copy and uses a subset.
#![allow(dead_code)]

use nalgebra::Matrix4;
use num_complex::Complex64;
use photon_qsl::dephasing::kappa;
use photon_qsl::SpectralParams;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator so randomized suites are reproducible run to run.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Plain composite trapezoid on a uniform n-panel grid.
pub fn dense_trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for k in 1..n {
        sum += f(a + k as f64 * h);
    }
    sum * h
}

/// Divisibility-violation rate from first principles: assemble the
/// maximally entangled pair state, push one side through the intermediate
/// map over `[t, t + eps]`, take the trace norm through a full 4x4 SVD, and
/// difference against 1. The library's analytic rate must match this as
/// `eps` shrinks; `eps = 1e-7` puts the finite-difference error near 1e-7.
pub fn choi_backflow_rate(p: &SpectralParams, t: f64, eps: f64) -> f64 {
    // Intermediate map on the coherence: multiply by kappa(t+eps)/kappa(t).
    let mu = kappa(p, t + eps) / kappa(p, t);
    let half = Complex64::new(0.5, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let m = Matrix4::new(
        half,
        z,
        z,
        half * mu,
        z,
        z,
        z,
        z,
        z,
        z,
        z,
        z,
        half * mu.conj(),
        z,
        z,
        half,
    );
    let trace_norm: f64 = m.singular_values().iter().sum();
    (trace_norm - 1.0) / eps
}

/// A random mixing angle, preparation angle, and drive time inside the
/// validity window, away from the degenerate preparation angles.
pub fn random_point(rng: &mut ChaCha8Rng, p: &SpectralParams) -> (f64, f64, f64) {
    let xi = rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2);
    let alpha = loop {
        let a: f64 = rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2);
        if (2.0 * a).sin().abs() > 1e-3 {
            break a;
        }
    };
    let tau = rng.gen_range(0.2..2.2) * p.beat_period();
    (xi, alpha, tau)
}
