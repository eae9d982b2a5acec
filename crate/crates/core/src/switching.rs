//! Switching of mixed graphs and the classification of mixed cycles.
//!
//! A switching function assigns each vertex a phase `e^{ikη}`; conjugating
//! `H_η` by the diagonal matrix of these phases preserves the spectrum and,
//! for well-chosen phases, yields the matrix of another mixed graph. On a
//! cycle the signed count of single arcs along a traversal is invariant
//! under this conjugation, and its absolute value is the type `j` of the
//! canonical cycle the graph can be switched to.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_cycle, MixedGraph, Orientation};
use crate::linalg::ComplexMatrix;
use crate::spectra::{h_eta, Angle};

const ENTRY_TOL: f64 = 1e-9;
const DEGENERATE_TOL: f64 = 1e-6;

/// Per-vertex phases `α(v) = e^{i k_v η}` stored as integer exponents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwitchingFunction {
    eta: Angle,
    exponents: Vec<i64>,
}

impl SwitchingFunction {
    pub fn identity(n: usize, eta: Angle) -> Self {
        SwitchingFunction {
            eta,
            exponents: vec![0; n],
        }
    }

    pub fn from_exponents(exponents: Vec<i64>, eta: Angle) -> Self {
        SwitchingFunction { eta, exponents }
    }

    pub fn eta(&self) -> Angle {
        self.eta
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn value(&self, v: usize) -> Complex64 {
        self.eta.phase(self.exponents[v])
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// The diagonal matrix `D(α)`.
    pub fn matrix(&self) -> ComplexMatrix {
        let vals: Vec<Complex64> = (0..self.len()).map(|v| self.value(v)).collect();
        ComplexMatrix::diagonal(&vals)
    }

    fn bump(&mut self, v: usize, by: i64) {
        self.exponents[v] += by;
    }
}

/// `D(α) H_η(G) D(α)*`, at the angle carried by `alpha`.
pub fn apply_switching(g: &MixedGraph, alpha: &SwitchingFunction) -> Result<ComplexMatrix> {
    let n = g.n_vertices();
    if alpha.len() != n {
        return Err(Error::domain(format!(
            "switching function covers {} vertices, graph has {n}",
            alpha.len()
        )));
    }
    let h = h_eta(g, alpha.eta);
    let phases: Vec<Complex64> = (0..n).map(|v| alpha.value(v)).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        phases[i] * h[(i, j)] * phases[j].conj()
    }))
}

/// Recovers the mixed graph whose `H_η` is `m`.
///
/// When `e^{iη}` is within `1e-6` of 1 the arc direction is unobservable
/// and every nonzero entry is read as a digon. When `e^{iη} = e^{-iη}`
/// (η = π) the single arc is taken to point from the smaller label.
pub fn recognize_mixed_graph(m: &ComplexMatrix, eta: Angle) -> Result<MixedGraph> {
    if !m.is_square() {
        return Err(Error::NotMixedGraph("matrix is not square".into()));
    }
    if m.hermitian_defect() >= crate::linalg::HERMITIAN_TOL {
        return Err(Error::contract("matrix is not Hermitian"));
    }
    let n = m.rows();
    let one = Complex64::new(1.0, 0.0);
    let forward = eta.phase(1);
    let degenerate = (forward - one).norm() < DEGENERATE_TOL;
    if degenerate {
        log::warn!("η = {eta} makes arc directions unobservable; reading entries as digons");
    }
    let mut arcs = Vec::new();
    for x in 0..n {
        if m[(x, x)].norm() >= ENTRY_TOL {
            return Err(Error::NotMixedGraph(format!("nonzero diagonal entry at {x}")));
        }
        for y in x + 1..n {
            let z = m[(x, y)];
            if z.norm() < ENTRY_TOL {
                continue;
            }
            let digon_tol = if degenerate { DEGENERATE_TOL } else { ENTRY_TOL };
            if (z - one).norm() < digon_tol {
                arcs.push((x, y));
                arcs.push((y, x));
                continue;
            }
            if !degenerate {
                if (z - forward).norm() < ENTRY_TOL {
                    arcs.push((x, y));
                    continue;
                }
                if (z - forward.conj()).norm() < ENTRY_TOL {
                    arcs.push((y, x));
                    continue;
                }
            }
            return Err(Error::NotMixedGraph(format!(
                "entry ({x}, {y}) = {z} is not 0, 1 or e^(±iη)"
            )));
        }
    }
    MixedGraph::new(n, arcs).map_err(|e| Error::NotMixedGraph(e.to_string()))
}

/// The local switching moves on a vertex of a mixed cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Both incident single arcs point in; `α(x) = e^{iη}` turns them into
    /// digons.
    Sw2,
    /// Both incident single arcs point out; `α(x) = e^{-iη}` turns them into
    /// digons.
    Sw3,
    /// One incident single arc points in and the other edge is a digon;
    /// `α(x) = e^{iη}` moves the arc across `x`.
    Sw4,
}

impl Move {
    /// Exponent `k` of the phase `e^{ikη}` placed on the pivot vertex.
    pub fn exponent(self) -> i64 {
        match self {
            Move::Sw2 | Move::Sw4 => 1,
            Move::Sw3 => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Move::Sw2 => "Sw2",
            Move::Sw3 => "Sw3",
            Move::Sw4 => "Sw4",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A move together with its pivot vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedMove {
    #[serde(rename = "move")]
    pub mv: Move,
    pub vertex: usize,
}

/// Applies a switching move at `x` and returns the switched mixed cycle.
pub fn named_move(g: &MixedGraph, mv: Move, x: usize) -> Result<MixedGraph> {
    if !g.is_cycle() {
        return Err(Error::domain("switching moves are defined on mixed cycles"));
    }
    g.degree(x)?;
    let nb = g.neighbors(x);
    let (a, b) = (nb[0], nb[1]);
    // orientation as seen from the neighbor: Forward means neighbor → x
    let into = |v: usize| g.orientation(v, x).expect("adjacent");
    let (oa, ob) = (into(a), into(b));
    let not_applicable = |pattern: String| Error::MoveNotApplicable {
        mv: mv.name(),
        vertex: x,
        pattern,
    };
    let describe = |o: Orientation| match o {
        Orientation::Forward => "inward arc",
        Orientation::Backward => "outward arc",
        Orientation::Digon => "digon",
    };
    let found = format!("found {} from {a} and {} from {b}", describe(oa), describe(ob));

    let mut replaced: Vec<(usize, usize, Orientation)> = Vec::new();
    match mv {
        Move::Sw2 => {
            if oa != Orientation::Forward || ob != Orientation::Forward {
                return Err(not_applicable(format!("needs two inward single arcs; {found}")));
            }
            replaced.push((a, x, Orientation::Digon));
            replaced.push((b, x, Orientation::Digon));
        }
        Move::Sw3 => {
            if oa != Orientation::Backward || ob != Orientation::Backward {
                return Err(not_applicable(format!("needs two outward single arcs; {found}")));
            }
            replaced.push((a, x, Orientation::Digon));
            replaced.push((b, x, Orientation::Digon));
        }
        Move::Sw4 => {
            let (inward, digon) = match (oa, ob) {
                (Orientation::Forward, Orientation::Digon) => (a, b),
                (Orientation::Digon, Orientation::Forward) => (b, a),
                _ => {
                    return Err(not_applicable(format!(
                        "needs one inward single arc and one digon; {found}"
                    )))
                }
            };
            replaced.push((inward, x, Orientation::Digon));
            replaced.push((x, digon, Orientation::Forward));
        }
    }
    let touched = |u: usize, v: usize| (u == x && (v == a || v == b)) || (v == x && (u == a || u == b));
    let mut pairs: Vec<(usize, usize, Orientation)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v, _)| !touched(u, v))
        .collect();
    pairs.extend(replaced);
    MixedGraph::from_pairs(g.n_vertices(), pairs)
}

/// Signs of the traversal steps `order[i] → order[i+1]`.
fn step_signs(g: &MixedGraph, order: &[usize]) -> Vec<i64> {
    let n = order.len();
    (0..n)
        .map(|i| {
            g.orientation(order[i], order[(i + 1) % n])
                .expect("consecutive cycle vertices are adjacent")
                .sign()
        })
        .collect()
}

fn net_gain(g: &MixedGraph) -> Result<i64> {
    let order = g.cycle_traversal()?;
    Ok(step_signs(g, &order).iter().sum())
}

/// The type `j` of a mixed cycle: the absolute net gain of a traversal.
pub fn classify_cycle(g: &MixedGraph) -> Result<usize> {
    Ok(net_gain(g)?.unsigned_abs() as usize)
}

/// A switching witness and relabeling that carry a mixed cycle onto
/// `C_n^j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleClassification {
    pub n: usize,
    pub type_j: usize,
    /// The traversal used runs against the input's default direction, so
    /// `relabeling` contains a reflection.
    pub orientation_reversed: bool,
    pub witness: SwitchingFunction,
    /// `relabeling[v]` is the label of input vertex `v` in `C_n^j`.
    pub relabeling: Vec<usize>,
    pub moves: Vec<AppliedMove>,
}

impl CycleClassification {
    /// `H_η` of the input after switching by the witness and relabeling.
    pub fn transformed_matrix(&self, g: &MixedGraph) -> Result<ComplexMatrix> {
        apply_switching(g, &self.witness)?.permuted(&self.relabeling)
    }

    /// Largest entrywise deviation of the transformed matrix from
    /// `H_η(C_n^j)`.
    pub fn residual(&self, g: &MixedGraph) -> Result<f64> {
        let target = h_eta(&build_cycle(self.n, self.type_j)?, self.witness.eta());
        Ok(self.transformed_matrix(g)?.max_abs_diff(&target))
    }
}

struct Canonicalizer {
    graph: MixedGraph,
    order: Vec<usize>,
    witness: SwitchingFunction,
    moves: Vec<AppliedMove>,
    budget: usize,
}

impl Canonicalizer {
    fn signs(&self) -> Vec<i64> {
        step_signs(&self.graph, &self.order)
    }

    /// Applies `mv` at traversal position `pos`.
    fn apply(&mut self, mv: Move, pos: usize) -> Result<()> {
        if self.moves.len() >= self.budget {
            return Err(Error::internal(format!(
                "canonicalization did not finish within {} moves",
                self.budget
            )));
        }
        let vertex = self.order[pos];
        self.graph = named_move(&self.graph, mv, vertex)?;
        self.witness.bump(vertex, mv.exponent());
        self.moves.push(AppliedMove { mv, vertex });
        Ok(())
    }

    /// Cancels a `+1 … -1` pair separated only by digons: the backward arc
    /// slides toward the forward one with Sw4 until they meet, then Sw2
    /// removes both.
    fn cancel_pair(&mut self) -> Result<bool> {
        let n = self.order.len();
        let signs = self.signs();
        let Some(start) = (0..n).find(|&i| {
            signs[i] == 1 && {
                let next = (1..n).map(|d| (i + d) % n).find(|&k| signs[k] != 0);
                next.is_some_and(|k| signs[k] == -1)
            }
        }) else {
            return Ok(false);
        };
        let mut k = (1..n)
            .map(|d| (start + d) % n)
            .find(|&k| signs[k] != 0)
            .expect("checked above");
        // step k runs order[k] → order[k+1] with sign -1: the arc points at order[k]
        while (k + n - 1) % n != start {
            self.apply(Move::Sw4, k)?;
            k = (k + n - 1) % n;
        }
        self.apply(Move::Sw2, k)?;
        Ok(true)
    }

    /// Slides the remaining forward arcs into one consecutive block and
    /// returns the traversal position where the block starts.
    fn gather(&mut self) -> Result<usize> {
        let n = self.order.len();
        let signs = self.signs();
        let arcs: Vec<usize> = (0..n).filter(|&i| signs[i] == 1).collect();
        let j = arcs.len();
        if j == 0 || j == n {
            return Ok(0);
        }
        // block end e: a forward step followed by a digon, choosing the one
        // with the smallest total slide
        let cost = |e: usize| -> usize {
            let mut total = 0;
            let mut rank = 0;
            for d in 0..n {
                let p = (e + n - d) % n;
                if signs[p] == 1 {
                    total += d - rank;
                    rank += 1;
                }
            }
            total
        };
        let end = (0..n)
            .filter(|&e| signs[e] == 1 && signs[(e + 1) % n] == 0)
            .min_by_key(|&e| (cost(e), e))
            .expect("0 < j < n leaves a forward step before a digon");
        let mut rank = 0;
        for d in 0..n {
            let p = (end + n - d) % n;
            if signs[p] != 1 {
                continue;
            }
            let target = (end + n - rank) % n;
            let mut cur = p;
            while cur != target {
                self.apply(Move::Sw4, (cur + 1) % n)?;
                cur = (cur + 1) % n;
            }
            rank += 1;
        }
        Ok((end + n + 1 - j) % n)
    }
}

/// Switches a mixed cycle onto `C_n^j` with Sw2/Sw4 moves.
///
/// Opposing arcs are cancelled pairwise first; the surviving arcs, all
/// aligned with the traversal, are then slid into a consecutive block and
/// the vertices are relabeled so the block occupies `x_1 … x_{j+1}`.
pub fn canonicalize_cycle(g: &MixedGraph, eta: Angle) -> Result<CycleClassification> {
    let mut order = g.cycle_traversal()?;
    let n = order.len();
    let gain: i64 = step_signs(g, &order).iter().sum();
    let orientation_reversed = gain < 0;
    if orientation_reversed {
        order[1..].reverse();
    }
    let mut c = Canonicalizer {
        graph: g.clone(),
        order,
        witness: SwitchingFunction::identity(n, eta),
        moves: Vec::new(),
        budget: n * n,
    };
    while c.cancel_pair()? {}
    let start = c.gather()?;
    let type_j = c.signs().iter().filter(|&&s| s == 1).count();
    if type_j as i64 != gain.abs() {
        return Err(Error::internal(format!(
            "moves produced type {type_j} but the net gain is {gain}"
        )));
    }
    let mut relabeling = vec![0; n];
    for i in 0..n {
        relabeling[c.order[(start + i) % n]] = i;
    }
    if c.graph.relabeled(&relabeling)? != build_cycle(n, type_j)? {
        return Err(Error::internal("switched cycle is not the canonical cycle"));
    }
    Ok(CycleClassification {
        n,
        type_j,
        orientation_reversed,
        witness: c.witness,
        relabeling,
        moves: c.moves,
    })
}
