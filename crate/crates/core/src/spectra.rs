//! η-Hermitian adjacency matrices and their closed-form invariants.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, Orientation};
use crate::linalg::{charpoly, ComplexMatrix, Polynomial};

/// Tolerance for comparing characteristic polynomial coefficients.
pub const COEFF_TOL: f64 = 1e-8;

pub fn gcd(a: u64, b: u64) -> u64 {
    // gcd(0, m) = m
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The angle `pπ/q` in lowest terms with `0 ≤ p < 2q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    p: u64,
    q: u64,
}

impl RationalAngle {
    /// Reduces `p/q` and folds it into `[0, 2)`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("angle denominator is zero"));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let q = q as u64;
        let p = p.rem_euclid(2 * q as i64) as u64;
        let g = gcd(p, q);
        Ok(RationalAngle { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn to_radians(&self) -> f64 {
        PI * self.p as f64 / self.q as f64
    }

    /// `cos(kpπ/q)` with `kp` reduced mod `2q` before the float conversion.
    pub fn cos_multiple(&self, k: i64) -> f64 {
        self.multiple_radians(k).cos()
    }

    fn multiple_radians(&self, k: i64) -> f64 {
        let two_q = 2 * self.q as i128;
        let r = (k as i128 * self.p as i128).rem_euclid(two_q);
        PI * r as f64 / self.q as f64
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi*{}/{}", self.p, self.q)
    }
}

/// An angle η in `[0, 2π)`, either an exact rational multiple of π or a
/// floating-point value in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Angle {
    Rational(RationalAngle),
    Real { radians: f64 },
}

impl Angle {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        Ok(Angle::Rational(RationalAngle::new(p, q)?))
    }

    /// Real angle folded into `[0, 2π)`.
    pub fn real(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::domain("angle is not finite"));
        }
        let mut r = radians.rem_euclid(2.0 * PI);
        if r >= 2.0 * PI {
            r = 0.0;
        }
        Ok(Angle::Real { radians: r })
    }

    pub fn zero() -> Self {
        Angle::Rational(RationalAngle { p: 0, q: 1 })
    }

    pub fn to_radians(&self) -> f64 {
        match self {
            Angle::Rational(r) => r.to_radians(),
            Angle::Real { radians } => *radians,
        }
    }

    pub fn as_rational(&self) -> Option<RationalAngle> {
        match self {
            Angle::Rational(r) => Some(*r),
            Angle::Real { .. } => None,
        }
    }

    /// `e^{ikη}`, exact-phase reduced for rational angles.
    pub fn phase(&self, k: i64) -> Complex64 {
        match self {
            Angle::Rational(r) => Complex64::from_polar(1.0, r.multiple_radians(k)),
            Angle::Real { radians } => Complex64::from_polar(1.0, k as f64 * radians),
        }
    }

    /// `cos(kη)`.
    pub fn cos_multiple(&self, k: i64) -> f64 {
        match self {
            Angle::Rational(r) => r.cos_multiple(k),
            Angle::Real { radians } => (k as f64 * radians).cos(),
        }
    }

    /// Parses `pi*p/q`, `pi/q`, `pi` or decimal radians.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Usage(format!("cannot parse angle {s:?}; expected pi*p/q or radians"));
        if let Some(rest) = t.strip_prefix("pi") {
            let rest = rest.trim();
            if rest.is_empty() {
                return Angle::rational(1, 1);
            }
            let (p, q) = if let Some(frac) = rest.strip_prefix('*') {
                match frac.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (frac.trim(), "1"),
                }
            } else if let Some(q) = rest.strip_prefix('/') {
                ("1", q.trim())
            } else {
                return Err(bad());
            };
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::Usage("angle denominator is zero".into()));
            }
            return Angle::rational(p, q);
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        Angle::real(x).map_err(|_| bad())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational(r) => write!(f, "{r}"),
            Angle::Real { radians } => write!(f, "{radians}"),
        }
    }
}

/// The η-Hermitian adjacency matrix: 1 on digons, `e^{iη}` on `(x, y)` for a
/// single arc `x → y`, and its conjugate on `(y, x)`.
pub fn h_eta(g: &MixedGraph, eta: Angle) -> ComplexMatrix {
    let n = g.n_vertices();
    let mut h = ComplexMatrix::zeros(n, n);
    let forward = eta.phase(1);
    for (x, y, o) in g.edges() {
        let z = match o {
            Orientation::Digon => Complex64::new(1.0, 0.0),
            Orientation::Forward => forward,
            Orientation::Backward => forward.conj(),
        };
        h[(x, y)] = z;
        h[(y, x)] = z.conj();
    }
    h
}

/// `D^{-1/2} H_η D^{-1/2}`.
pub fn normalized_h_eta(g: &MixedGraph, eta: Angle) -> Result<ComplexMatrix> {
    let n = g.n_vertices();
    let mut scale = Vec::with_capacity(n);
    for x in 0..n {
        let d = g.deg(x);
        if d == 0 {
            return Err(Error::domain(format!("vertex {x} is isolated")));
        }
        scale.push(1.0 / (d as f64).sqrt());
    }
    let h = h_eta(g, eta);
    Ok(ComplexMatrix::from_fn(n, n, |i, j| h[(i, j)] * (scale[i] * scale[j])))
}

fn neg_one_pow(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `det H_η(P_n)`, which does not depend on η: 1, 0, -1, 0 for
/// `n ≡ 0, 1, 2, 3 (mod 4)`.
pub fn det_path_closed(n: usize) -> f64 {
    let n = n as u64;
    let parity_term = if n.is_multiple_of(2) { 1 } else { 0 };
    (neg_one_pow(n / 2) * parity_term) as f64
}

/// `det H_η(C_n^j) = (-1)^{n+1} 2cos(ηj) + (-1)^{⌊n/2⌋}(1 + (-1)^n)`.
pub fn det_cycle_closed(n: usize, j: usize, eta: Angle) -> f64 {
    let n64 = n as u64;
    let even_term = neg_one_pow(n64 / 2) * (1 + neg_one_pow(n64));
    neg_one_pow(n64 + 1) as f64 * 2.0 * eta.cos_multiple(j as i64) + even_term as f64
}

/// `n/(n-k) · C(n-k, k)`, the number of k-matchings of `C_n`.
fn cycle_matchings(n: u64, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    let m = n - k;
    // C(m, k) incrementally; each partial product is an integer
    let mut binom: u128 = 1;
    for i in 0..k as u128 {
        binom = binom * (m as u128 - i) / (i + 1);
    }
    (binom * n as u128 / m as u128) as u64
}

/// Closed-form `det(λI - H_η(C_n^j))`.
pub fn cycle_charpoly_closed(n: usize, j: usize, eta: Angle) -> Result<Polynomial> {
    if n < 3 {
        return Err(Error::InvalidCycle(n));
    }
    if j > n {
        return Err(Error::domain(format!("cycle type {j} outside 0..={n}")));
    }
    let n64 = n as u64;
    let mut coeffs = vec![0.0; n + 1];
    for k in 0..=(n64 - 1) / 2 {
        let c = neg_one_pow(k) as f64 * cycle_matchings(n64, k) as f64;
        coeffs[n - 2 * k as usize] = c;
    }
    let even_term = neg_one_pow(n64 / 2) * (1 + neg_one_pow(n64));
    coeffs[0] += -2.0 * eta.cos_multiple(j as i64) + even_term as f64;
    Ok(Polynomial::from_real(&coeffs))
}

/// Outcome of comparing a graph's characteristic polynomials with those of
/// its underlying graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GirthAgreement {
    /// Girth minus one, or `n` for trees: the number of leading coefficients
    /// that must coincide.
    pub required: usize,
    /// Leading coefficients that coincide for `H_η`.
    pub plain: usize,
    /// Leading coefficients that coincide for the normalized matrix.
    pub normalized: usize,
}

impl GirthAgreement {
    pub fn holds(&self) -> bool {
        self.plain >= self.required && self.normalized >= self.required
    }
}

pub fn girth_agreement(g: &MixedGraph, eta: Angle) -> Result<GirthAgreement> {
    let n = g.n_vertices();
    let required = match g.girth() {
        Some(girth) => (girth - 1).min(n),
        None => n,
    };
    let u = g.underlying();
    let plain = charpoly(&h_eta(g, eta))?.leading_agreement(&charpoly(&h_eta(&u, eta))?, COEFF_TOL);
    let normalized = charpoly(&normalized_h_eta(g, eta)?)?
        .leading_agreement(&charpoly(&normalized_h_eta(&u, eta)?)?, COEFF_TOL);
    Ok(GirthAgreement {
        required,
        plain,
        normalized,
    })
}

/// True when the first `girth - 1` characteristic polynomial coefficients of
/// `g` match those of its underlying graph, for both the plain and the
/// normalized matrix.
pub fn coefficients_agree_up_to_girth(g: &MixedGraph, eta: Angle) -> Result<bool> {
    Ok(girth_agreement(g, eta)?.holds())
}

/// Equal `H_η` characteristic polynomials.
pub fn cospectral(g1: &MixedGraph, g2: &MixedGraph, eta: Angle) -> Result<bool> {
    if g1.n_vertices() != g2.n_vertices() {
        return Ok(false);
    }
    let p1 = charpoly(&h_eta(g1, eta))?;
    let p2 = charpoly(&h_eta(g2, eta))?;
    Ok(p1.approx_eq(&p2, COEFF_TOL))
}

/// Angles used by the property and acceptance checks.
pub fn angle_grid() -> Vec<Angle> {
    vec![
        Angle::zero(),
        Angle::rational(1, 5).unwrap(),
        Angle::rational(1, 3).unwrap(),
        Angle::rational(1, 2).unwrap(),
        Angle::rational(2, 3).unwrap(),
        Angle::real(1.0).unwrap(),
    ]
}
