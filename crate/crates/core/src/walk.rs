//! Grover-coin quantum walk on the symmetric arc set of a mixed graph.
//!
//! Rows and columns of the arc-space operators follow [`ArcIndex`] order.
//! `U = S·C` is built as a product and checked entrywise against the
//! closed formula `U[a][b] = e^{-iθ(a)} (2/deg t(b) · [o(a) = t(b)] - [a = b⁻¹])`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ArcIndex, MixedGraph, Orientation};
use crate::linalg::{
    self, hermitian_eigenvalues_sorted, matmul, ComplexMatrix, Spectrum, GROUPING_TOL,
};
use crate::spectra::{normalized_h_eta, Angle};

/// Allowed overshoot of normalized eigenvalues beyond `[-1, 1]`.
pub const CLAMP_TOL: f64 = 1e-9;
const PRODUCT_FORMULA_TOL: f64 = 1e-10;

/// Arc phases `θ(a) ∈ {+η, -η, 0}`, stored as signs.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaFunction {
    eta: Angle,
    signs: Vec<i64>,
}

impl EtaFunction {
    pub fn new(g: &MixedGraph, index: &ArcIndex, eta: Angle) -> Self {
        let signs = index
            .arcs()
            .iter()
            .map(|&(o, t)| match g.orientation(o, t).expect("arc of A±") {
                Orientation::Forward => 1,
                Orientation::Backward => -1,
                Orientation::Digon => 0,
            })
            .collect();
        EtaFunction { eta, signs }
    }

    pub fn sign(&self, arc: usize) -> i64 {
        self.signs[arc]
    }

    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    pub fn theta(&self, arc: usize) -> f64 {
        self.signs[arc] as f64 * self.eta.to_radians()
    }

    /// `e^{ikθ(a)}`.
    pub fn phase(&self, arc: usize, k: i64) -> Complex64 {
        self.eta.phase(k * self.signs[arc])
    }
}

/// `K[x][a] = 1/√deg(x)` when `x = t(a)`.
pub fn boundary(g: &MixedGraph) -> ComplexMatrix {
    boundary_with(g, &g.arc_index())
}

fn boundary_with(g: &MixedGraph, index: &ArcIndex) -> ComplexMatrix {
    ComplexMatrix::from_fn(g.n_vertices(), index.len(), |x, a| {
        if index.terminus(a) == x {
            Complex64::new(1.0 / (g.deg(x) as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Grover coin `C = 2K*K - I`.
pub fn coin(g: &MixedGraph) -> ComplexMatrix {
    coin_from_boundary(&boundary(g))
}

fn coin_from_boundary(k: &ComplexMatrix) -> ComplexMatrix {
    let kk = matmul(&k.adjoint(), k).expect("shapes agree");
    let n = kk.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        kk[(i, j)] * 2.0 - delta
    })
}

/// Shift `S[a][b] = e^{iθ(b)}` when `a = b⁻¹`.
pub fn shift(g: &MixedGraph, eta: Angle) -> ComplexMatrix {
    let index = g.arc_index();
    shift_with(&index, &EtaFunction::new(g, &index, eta))
}

fn shift_with(index: &ArcIndex, theta: &EtaFunction) -> ComplexMatrix {
    let m = index.len();
    let mut s = ComplexMatrix::zeros(m, m);
    for b in 0..m {
        s[(index.inverse(b), b)] = theta.phase(b, 1);
    }
    s
}

/// Entrywise closed formula for the time evolution.
pub fn time_evolution_formula(g: &MixedGraph, index: &ArcIndex, theta: &EtaFunction) -> ComplexMatrix {
    let m = index.len();
    ComplexMatrix::from_fn(m, m, |a, b| {
        let tb = index.terminus(b);
        let mut v = if index.origin(a) == tb {
            2.0 / g.deg(tb) as f64
        } else {
            0.0
        };
        if index.inverse(b) == a {
            v -= 1.0;
        }
        theta.phase(a, -1) * v
    })
}

/// The four walk operators of a graph at a given η.
#[derive(Clone, Debug)]
pub struct WalkOperators {
    pub k: ComplexMatrix,
    pub c: ComplexMatrix,
    pub s: ComplexMatrix,
    pub u: ComplexMatrix,
    pub arc_index: ArcIndex,
    pub eta_function: EtaFunction,
    /// `max |S·C - formula|` observed at construction.
    pub formula_residual: f64,
}

/// Builds `K`, `C`, `S` and `U = S·C`, and cross-checks `U` against the
/// entrywise formula.
pub fn time_evolution(g: &MixedGraph, eta: Angle) -> Result<WalkOperators> {
    let index = g.arc_index();
    let theta = EtaFunction::new(g, &index, eta);
    let k = boundary_with(g, &index);
    let c = coin_from_boundary(&k);
    let s = shift_with(&index, &theta);
    let u = matmul(&s, &c)?;
    let formula = time_evolution_formula(g, &index, &theta);
    let formula_residual = u.max_abs_diff(&formula);
    if formula_residual > PRODUCT_FORMULA_TOL {
        return Err(Error::internal(format!(
            "S·C differs from the entrywise formula by {formula_residual:.3e}"
        )));
    }
    Ok(WalkOperators {
        k,
        c,
        s,
        u,
        arc_index: index,
        eta_function: theta,
        formula_residual,
    })
}

/// Predicted spectrum of `U` and the trace-moment check against it.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralMapReport {
    pub predicted: Spectrum,
    pub normalized_eigenvalues: Vec<f64>,
    pub m_plus_1: usize,
    pub m_minus_1: usize,
    /// `|tr(U^k) - Σ μ^k|` for `k = 1..=k_max`.
    pub trace_moment_residuals: Vec<f64>,
}

impl SpectralMapReport {
    pub fn max_residual(&self) -> f64 {
        self.trace_moment_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Maps the normalized spectrum onto the unit circle and compares power sums
/// with traces of powers of `U`.
///
/// Each normalized eigenvalue `λ` contributes `e^{±i arccos λ}`; at `λ = ±1`
/// the two coincide and count once. The eigenvalues `1` and `-1` then get
/// the additional multiplicities `|E| - |V| + dim ker(H̃ ∓ I)`.
pub fn spectral_map_check(g: &MixedGraph, eta: Angle, k_max: u32) -> Result<SpectralMapReport> {
    if k_max < 1 {
        return Err(Error::domain("k_max must be at least 1"));
    }
    let ops = time_evolution(g, eta)?;
    let lambdas = hermitian_eigenvalues_sorted(&normalized_h_eta(g, eta)?)?;
    let mut mapped = Vec::with_capacity(ops.arc_index.len());
    let (mut ker_plus, mut ker_minus) = (0usize, 0usize);
    for &l in &lambdas {
        if l.abs() > 1.0 + CLAMP_TOL {
            return Err(Error::contract(format!(
                "normalized eigenvalue {l} lies outside [-1, 1]"
            )));
        }
        if (l - 1.0).abs() < GROUPING_TOL {
            ker_plus += 1;
            mapped.push(Complex64::new(1.0, 0.0));
        } else if (l + 1.0).abs() < GROUPING_TOL {
            ker_minus += 1;
            mapped.push(Complex64::new(-1.0, 0.0));
        } else {
            let phi = l.clamp(-1.0, 1.0).acos();
            mapped.push(Complex64::from_polar(1.0, phi));
            mapped.push(Complex64::from_polar(1.0, -phi));
        }
    }
    let half_arcs = (ops.arc_index.len() / 2) as i64;
    let n = g.n_vertices() as i64;
    let m_plus = half_arcs - n + ker_plus as i64;
    let m_minus = half_arcs - n + ker_minus as i64;
    if m_plus < 0 || m_minus < 0 {
        return Err(Error::internal(format!(
            "negative eigenvalue multiplicity ({m_plus}, {m_minus})"
        )));
    }
    mapped.extend(std::iter::repeat_n(Complex64::new(1.0, 0.0), m_plus as usize));
    mapped.extend(std::iter::repeat_n(Complex64::new(-1.0, 0.0), m_minus as usize));
    let predicted = Spectrum::group(mapped, GROUPING_TOL);
    if predicted.dimension() != ops.arc_index.len() {
        return Err(Error::internal(format!(
            "predicted {} eigenvalues for {} arcs",
            predicted.dimension(),
            ops.arc_index.len()
        )));
    }
    let mut residuals = Vec::with_capacity(k_max as usize);
    let mut power = ComplexMatrix::identity(ops.u.rows());
    for k in 1..=k_max {
        power = linalg::matrix_power_step(&ops.u, &power)?;
        residuals.push((power.trace() - predicted.power_sum(k)).norm());
    }
    Ok(SpectralMapReport {
        predicted,
        normalized_eigenvalues: lambdas,
        m_plus_1: m_plus as usize,
        m_minus_1: m_minus as usize,
        trace_moment_residuals: residuals,
    })
}

/// `U e^{(a)}` as a column of `U`.
pub fn evolve_basis(ops: &WalkOperators, arc: usize) -> Vec<Complex64> {
    (0..ops.u.rows()).map(|z| ops.u[(z, arc)]).collect()
}
