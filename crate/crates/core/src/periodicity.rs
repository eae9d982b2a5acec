//! Walk periods: closed forms for paths and cycles, and brute-force powering.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::linalg::{distance_to_identity, matmul, matrix_power, reunitarize, ComplexMatrix};
use crate::spectra::{gcd, Angle, RationalAngle};
use crate::switching::classify_cycle;
use crate::walk::time_evolution;

/// Identity tolerance used by the period search.
pub const PERIOD_TOL: f64 = 1e-8;
/// Cap when no closed form bounds the period.
pub const DEFAULT_CAP: u64 = 10_000;
const UNITARY_TOL: f64 = 1e-10;
const RENORMALIZE_EVERY: u64 = 64;
const CROSS_CHECK_MAX_ARCS: usize = 32;
const HINT_MAX_Q: u64 = 64;
const HINT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormPath,
    ClosedFormCycle,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheck {
    Agree,
    Disagree,
    NotRun,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodReport {
    pub periodic: bool,
    pub period: Option<u64>,
    pub method: Method,
    pub cap_used: u64,
    pub cross_check: CrossCheck,
    /// `‖U^τ - I‖_max` at the reported period, or at the cap when none was found.
    pub residual: f64,
    /// Brute-force period when the cross-check ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_period: Option<u64>,
    /// Small-denominator rational match of a real η. Never used to claim periodicity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_hint: Option<RationalAngle>,
}

/// Smallest `τ ≤ cap` with `‖U^τ - I‖_max < tol`.
pub fn brute_force_period(u: &ComplexMatrix, cap: u64, tol: f64) -> Result<PeriodReport> {
    if cap < 1 {
        return Err(Error::domain("cap must be at least 1"));
    }
    if !u.is_square() {
        return Err(Error::contract("walk operator must be square"));
    }
    let defect = u.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::contract(format!("matrix is not unitary (defect {defect:.3e})")));
    }
    let mut power = u.clone();
    let mut residual = distance_to_identity(&power);
    let mut tau = 1;
    while residual >= tol && tau < cap {
        power = matmul(&power, u)?;
        tau += 1;
        if tau % RENORMALIZE_EVERY == 0 {
            power = reunitarize(&power)?;
        }
        residual = distance_to_identity(&power);
    }
    let periodic = residual < tol;
    Ok(PeriodReport {
        periodic,
        period: periodic.then_some(tau),
        method: Method::BruteForce,
        cap_used: cap,
        cross_check: CrossCheck::NotRun,
        residual,
        brute_force_period: None,
        rational_hint: None,
    })
}

/// Period of any mixed path on `n ≥ 2` vertices, for every η.
pub fn path_period(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain(format!("path period needs n >= 2, got {n}")));
    }
    Ok(2 * (n as u64 - 1))
}

/// Period of `C_n^j` at `η = pπ/q`: `2qn/(j, 2q)` for odd `p`, `qn/(j, q)` for even `p`.
pub fn cycle_period(n: usize, j: usize, eta: RationalAngle) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidCycle(n));
    }
    if j > n {
        return Err(Error::domain(format!("type j={j} exceeds cycle length {n}")));
    }
    let (n, j, p, q) = (n as u64, j as u64, eta.p(), eta.q());
    Ok(if p % 2 == 1 {
        2 * q * n / gcd(j, 2 * q)
    } else {
        q * n / gcd(j, q)
    })
}

/// Whether mixed cycles are periodic at `eta`. Only exact rational angles qualify.
pub fn is_periodic_cycle(eta: Angle) -> bool {
    matches!(eta, Angle::Rational(_))
}

/// Closest `pπ/q` with `q ≤ 64` within `1e-12` of a real angle.
pub fn rational_hint(eta: Angle) -> Option<RationalAngle> {
    match eta {
        Angle::Rational(r) => Some(r),
        Angle::Real { radians } => {
            let x = radians / std::f64::consts::PI;
            (1..=HINT_MAX_Q).find_map(|q| {
                let p = (x * q as f64).round();
                ((x - p / q as f64).abs() * std::f64::consts::PI < HINT_TOL)
                    .then(|| RationalAngle::new(p as i64, q as i64).ok())
                    .flatten()
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodOptions {
    /// Overrides the default brute-force cap.
    pub cap: Option<u64>,
    pub tol: f64,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        PeriodOptions { cap: None, tol: PERIOD_TOL }
    }
}

/// Brute-force cap used when none is given.
pub fn default_cap(g: &MixedGraph, eta: Angle) -> u64 {
    if g.is_path() && g.n_vertices() >= 2 {
        2 * (g.n_vertices() as u64 - 1)
    } else if g.is_cycle() {
        match eta {
            Angle::Rational(r) => 2 * r.q() * g.n_vertices() as u64,
            Angle::Real { .. } => DEFAULT_CAP,
        }
    } else {
        DEFAULT_CAP
    }
}

/// Period of the walk on `g`. Paths and rational cycles use the closed form
/// and are cross-checked by brute force when small enough.
pub fn period_of(g: &MixedGraph, eta: Angle, options: PeriodOptions) -> Result<PeriodReport> {
    let u = time_evolution(g, eta)?.u;
    let cap = options.cap.unwrap_or_else(|| default_cap(g, eta));
    let closed = if g.is_path() && g.n_vertices() >= 2 {
        Some((Method::ClosedFormPath, path_period(g.n_vertices())?))
    } else if g.is_cycle() {
        match eta {
            Angle::Rational(r) => {
                let j = classify_cycle(g)?;
                Some((Method::ClosedFormCycle, cycle_period(g.n_vertices(), j, r)?))
            }
            Angle::Real { .. } => None,
        }
    } else {
        None
    };
    let rational_hint = match eta {
        Angle::Real { .. } => rational_hint(eta),
        Angle::Rational(_) => None,
    };
    let Some((method, tau)) = closed else {
        let mut report = brute_force_period(&u, cap, options.tol)?;
        report.rational_hint = rational_hint;
        return Ok(report);
    };
    let run_check = u.rows() <= CROSS_CHECK_MAX_ARCS && tau <= DEFAULT_CAP;
    let (cross_check, brute, residual) = if run_check {
        let brute = brute_force_period(&u, cap.max(tau), options.tol)?;
        let verdict = if brute.period == Some(tau) {
            CrossCheck::Agree
        } else {
            CrossCheck::Disagree
        };
        let residual = if brute.period == Some(tau) {
            brute.residual
        } else {
            distance_to_identity(&matrix_power(&u, tau)?)
        };
        (verdict, brute.period, residual)
    } else {
        (CrossCheck::NotRun, None, distance_to_identity(&matrix_power(&u, tau)?))
    };
    Ok(PeriodReport {
        periodic: true,
        period: Some(tau),
        method,
        cap_used: cap.max(tau),
        cross_check,
        residual,
        brute_force_period: brute,
        rational_hint,
    })
}

/// `U^n e^{(a)}` for every arc when it is a unit phase times `e^{(a)}`.
///
/// Returns one phase per arc in [`crate::graph::ArcIndex`] order, and the
/// largest off-target amplitude.
pub fn basis_return_phases(g: &MixedGraph, eta: Angle, steps: u64) -> Result<(Vec<num_complex::Complex64>, f64)> {
    let u = time_evolution(g, eta)?.u;
    let power = matrix_power(&u, steps)?;
    let m = power.rows();
    let mut leak: f64 = 0.0;
    let mut phases = Vec::with_capacity(m);
    for a in 0..m {
        for z in 0..m {
            if z != a {
                leak = leak.max(power[(z, a)].norm());
            }
        }
        phases.push(power[(a, a)]);
    }
    Ok((phases, leak))
}
