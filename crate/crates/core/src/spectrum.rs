//! Floating-point adjacency spectra and Hong's spectral-radius bound.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
/// Cyclic Jacobi converges quadratically; hitting this cap means a bug.
pub const MAX_SWEEPS: usize = 100;
/// Relative gap under which Hong's bound counts as attained.
pub const HONG_EQUALITY_TOLERANCE: f64 = 1e-7;
/// Eigenvalues closer than this share a display cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

const PERRON_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("graph needs at least {needed} vertices, has {got}")]
    TooSmall { needed: usize, got: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("inconsistent parameters n = {n}, m = {m}, delta = {delta}")]
    InconsistentParameters { n: usize, m: usize, delta: usize },
    #[error("Hong's equality characterisation applies to connected graphs only")]
    Disconnected,
    #[error("spectral radius {radius} exceeds Hong's bound {bound}")]
    BoundExceeded { bound: f64, radius: f64 },
    #[error(
        "Hong's bound {bound} is attained (radius {radius}) but the degree set {degrees:?} \
         is neither regular nor {{delta, n-1}} = {{{delta}, {top}}}"
    )]
    EqualityStructureViolation { bound: f64, radius: f64, delta: usize, top: usize, degrees: Vec<usize> },
}

/// Descending eigenvalues of a graph.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    #[serde(serialize_with = "ser_f64_vec")]
    pub eigenvalues: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    pub radius: f64,
    pub tolerance: f64,
}

impl SpectrumSummary {
    /// Groups eigenvalues closer than `tolerance` as `(mean, multiplicity)`.
    /// For display only; exact multiplicities come from the characteristic
    /// polynomial.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.eigenvalues {
            match out.last_mut() {
                Some((sum, count, last)) if (*last - x).abs() < self.tolerance => {
                    *sum += x;
                    *count += 1;
                    *last = x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter().map(|(s, c, _)| (s / c as f64, c)).collect()
    }

    /// `sum of lambda^k`.
    pub fn power_sum(&self, k: i32) -> f64 {
        self.eigenvalues.iter().map(|x| x.powi(k)).sum()
    }
}

/// Eigenvalues of a dense symmetric row-major matrix by cyclic Jacobi
/// rotations, unsorted.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectrumError> {
    assert_eq!(a.len(), n * n);
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off < OFF_DIAGONAL_TOLERANCE {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(SpectrumError::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Ok((0..n).map(|i| a[i * n + i]).collect())
}

pub fn eigenvalues(g: &Graph) -> Result<SpectrumSummary, SpectrumError> {
    let n = g.n_vertices();
    if n == 0 {
        return Err(SpectrumError::TooSmall { needed: 1, got: 0 });
    }
    let mut ev = jacobi_eigenvalues(g.adjacency_f64(), n)?;
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(SpectrumSummary { radius: ev[0], eigenvalues: ev, tolerance: CLUSTER_TOLERANCE })
}

/// Largest adjacency eigenvalue. Checks the Perron bounds
/// `2m/n <= radius <= max degree`.
pub fn spectral_radius(g: &Graph) -> Result<f64, SpectrumError> {
    let r = eigenvalues(g)?.radius;
    let n = g.n_vertices() as f64;
    let avg = 2.0 * g.edge_count() as f64 / n;
    assert!(r >= avg - PERRON_SLACK, "radius {r} below average degree {avg}");
    assert!(r <= g.max_degree() as f64 + PERRON_SLACK, "radius {r} above maximum degree");
    Ok(r)
}

/// `(delta - 1)/2 + sqrt(2m - n*delta + (delta + 1)^2 / 4)`.
pub fn hong_bound(n: usize, m: usize, delta: usize) -> Result<f64, SpectrumError> {
    let bad = || SpectrumError::InconsistentParameters { n, m, delta };
    if n == 0 || delta > n - 1 || m > n * (n - 1) / 2 {
        return Err(bad());
    }
    // four times the radicand, in exact integers
    let r4 = 8 * m as i128 - 4 * (n as i128) * (delta as i128) + (delta as i128 + 1).pow(2);
    if r4 < 0 {
        return Err(bad());
    }
    Ok((delta as f64 - 1.0) / 2.0 + (r4 as f64).sqrt() / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HongClass {
    Regular,
    Bidegreed { low: usize, high: usize },
    Strict,
}

#[derive(Clone, Debug, Serialize)]
pub struct HongReport {
    #[serde(serialize_with = "ser_f64")]
    pub bound: f64,
    #[serde(serialize_with = "ser_f64")]
    pub radius: f64,
    pub delta: usize,
    pub classification: HongClass,
}

impl HongReport {
    pub fn gap(&self) -> f64 {
        self.bound - self.radius
    }

    pub fn is_equality(&self) -> bool {
        self.classification != HongClass::Strict
    }
}

/// Evaluates Hong's bound on a connected graph and classifies the equality
/// case. A numerically attained bound whose degree structure is neither
/// regular nor `{delta, n-1}` is reported as an error.
pub fn hong_equality_case(g: &Graph) -> Result<HongReport, SpectrumError> {
    let n = g.n_vertices();
    if n < 2 {
        return Err(SpectrumError::TooSmall { needed: 2, got: n });
    }
    if g.component_count() != 1 {
        return Err(SpectrumError::Disconnected);
    }
    let degrees = g.degree_sequence();
    let delta = degrees.min().unwrap();
    let bound = hong_bound(n, g.edge_count(), delta)?;
    let radius = spectral_radius(g)?;
    if radius > bound + PERRON_SLACK {
        return Err(SpectrumError::BoundExceeded { bound, radius });
    }
    let distinct: Vec<usize> = degrees.histogram().into_iter().map(|(d, _)| d).collect();
    let classification = if (bound - radius).abs() <= HONG_EQUALITY_TOLERANCE * bound.max(1.0) {
        match distinct.as_slice() {
            [_] => HongClass::Regular,
            [lo, hi] if *lo == delta && *hi == n - 1 => HongClass::Bidegreed { low: *lo, high: *hi },
            _ => {
                return Err(SpectrumError::EqualityStructureViolation {
                    bound,
                    radius,
                    delta,
                    top: n - 1,
                    degrees: distinct,
                })
            }
        }
    } else {
        HongClass::Strict
    };
    Ok(HongReport { bound, radius, delta, classification })
}

/// Rounds to 15 significant digits for reports.
pub fn round_sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap()
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig15(*x))
}

fn ser_f64_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig15(x)))
}
