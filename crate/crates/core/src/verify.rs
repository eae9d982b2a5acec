//! End-to-end checks run by `mixedwalk verify`.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generate;
use crate::graph::{build_cycle, undirected_path, MixedGraph};
use crate::linalg::{charpoly, determinant};
use crate::periodicity::{
    basis_return_phases, brute_force_period, cycle_period, path_period, DEFAULT_CAP, PERIOD_TOL,
};
use crate::spectra::{
    angle_grid, cospectral, det_cycle_closed, det_path_closed, girth_agreement, h_eta,
    normalized_h_eta, Angle, RationalAngle, COEFF_TOL,
};
use crate::switching::canonicalize_cycle;
use crate::walk::{spectral_map_check, time_evolution};

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

type Check = fn(u64) -> Result<Outcome>;

const CRITERIA: [(&str, Option<u64>, Check); 12] = [
    ("det table C_4^j at pi/2", Some(1), det_table),
    ("cycle determinant formula", Some(5), cycle_determinants),
    ("path determinant formula", None, path_determinants),
    ("trees cospectral with G^±", None, trees_cospectral),
    ("coefficients up to girth", None, girth_coefficients),
    ("cycle canonicalization", None, canonicalization),
    ("path periods", Some(10), path_periods),
    ("cycle periods", Some(60), cycle_periods),
    ("non-periodic real eta", None, non_periodic),
    ("spectral mapping moments", None, spectral_mapping),
    ("entrywise time evolution", None, entrywise_formula),
    ("n-step return phase", None, return_phases),
];

/// Runs every criterion; results come back in criterion order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA
        .par_iter()
        .enumerate()
        .map(|(i, &(name, limit, check))| run_one(i + 1, name, limit, check, seed))
        .collect()
}

fn run_one(id: usize, name: &'static str, limit: Option<u64>, check: Check, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let result = check(seed);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(secs) = limit {
        if elapsed > Duration::from_secs(secs) {
            passed = false;
            detail = format!("{detail}; exceeded {secs}s");
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds: elapsed.as_secs_f64(),
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn rat(p: i64, q: i64) -> Angle {
    Angle::rational(p, q).expect("nonzero denominator")
}

fn det_table(_: u64) -> Result<Outcome> {
    let expected = [0.0, 2.0, 4.0, 2.0, 0.0];
    let mut worst: f64 = 0.0;
    for (j, &want) in expected.iter().enumerate() {
        let d = determinant(&h_eta(&build_cycle(4, j)?, rat(1, 2)))?;
        worst = worst.max((d - Complex64::new(want, 0.0)).norm());
    }
    outcome(worst < 1e-9, format!("max |error| {worst:.2e}"))
}

fn cycle_determinants(_: u64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut cells = 0;
    for n in 3..=10 {
        for j in 0..=n {
            for eta in angle_grid() {
                let d = determinant(&h_eta(&build_cycle(n, j)?, eta))?;
                worst = worst.max((d - Complex64::new(det_cycle_closed(n, j, eta), 0.0)).norm());
                cells += 1;
            }
        }
    }
    outcome(worst < 1e-9, format!("{cells} cells, max |error| {worst:.2e}"))
}

fn path_determinants(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 3);
    let mut worst: f64 = 0.0;
    for n in 1..=12 {
        let mut graphs = vec![undirected_path(n)?];
        if n >= 2 {
            graphs.push(generate::random_path(n, &mut rng)?);
        }
        for g in &graphs {
            for eta in angle_grid() {
                let d = determinant(&h_eta(g, eta))?;
                worst = worst.max((d - Complex64::new(det_path_closed(n), 0.0)).norm());
            }
        }
    }
    outcome(worst < 1e-9, format!("max |error| {worst:.2e}"))
}

fn trees_cospectral(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 4);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = rng.random_range(2..=10);
        let g = if i % 2 == 0 {
            generate::random_path(n, &mut rng)?
        } else {
            generate::random_tree(n, &mut rng)?
        };
        let u = g.underlying();
        for eta in angle_grid() {
            let plain = charpoly(&h_eta(&g, eta))?.max_coeff_diff(&charpoly(&h_eta(&u, eta))?);
            let norm = charpoly(&normalized_h_eta(&g, eta)?)?
                .max_coeff_diff(&charpoly(&normalized_h_eta(&u, eta)?)?);
            worst = worst.max(plain).max(norm);
        }
    }
    outcome(worst < COEFF_TOL, format!("200 trees, max coefficient gap {worst:.2e}"))
}

fn girth_coefficients(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 5);
    let mut graphs = Vec::new();
    for n in 3..=10 {
        for j in 0..=n {
            graphs.push(build_cycle(n, j)?);
        }
    }
    for _ in 0..50 {
        let n = rng.random_range(3..=10);
        graphs.push(generate::random_unicyclic(n, &mut rng)?);
    }
    let mut failures = 0;
    for g in &graphs {
        for eta in angle_grid() {
            if !girth_agreement(g, eta)?.holds() {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{} graphs, {failures} failures", graphs.len()))
}

fn canonicalization(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 6);
    let mut worst: f64 = 0.0;
    let mut not_cospectral = 0;
    for _ in 0..100 {
        let n = rng.random_range(3..=12);
        let g = generate::random_cycle(n, &mut rng)?;
        for eta in angle_grid() {
            let cls = canonicalize_cycle(&g, eta)?;
            worst = worst.max(cls.residual(&g)?);
            if !cospectral(&g, &build_cycle(n, cls.type_j)?, eta)? {
                not_cospectral += 1;
            }
        }
    }
    outcome(
        worst < 1e-10 && not_cospectral == 0,
        format!("100 cycles, max residual {worst:.2e}, {not_cospectral} not cospectral"),
    )
}

fn path_periods(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 7);
    let mut bad = Vec::new();
    let mut cells = 0;
    for n in 2..=8 {
        let graphs = [undirected_path(n)?, generate::random_path(n, &mut rng)?];
        for g in &graphs {
            for eta in angle_grid() {
                let u = time_evolution(g, eta)?.u;
                let rep = brute_force_period(&u, DEFAULT_CAP, PERIOD_TOL)?;
                if rep.period != Some(path_period(n)?) {
                    bad.push(format!("n={n} eta={eta} got {:?}", rep.period));
                }
                cells += 1;
            }
        }
    }
    outcome(bad.is_empty(), summary("path", cells, &bad))
}

pub(crate) fn cycle_period_grid() -> Vec<RationalAngle> {
    [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3), (3, 4)]
        .iter()
        .map(|&(p, q)| RationalAngle::new(p, q).expect("nonzero denominator"))
        .collect()
}

fn cycle_periods(_: u64) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut cells = 0;
    for n in 3..=8 {
        for j in 0..=n {
            for r in cycle_period_grid() {
                let u = time_evolution(&build_cycle(n, j)?, Angle::Rational(r))?.u;
                let want = cycle_period(n, j, r)?;
                let got = brute_force_period(&u, 2 * r.q() * n as u64, PERIOD_TOL)?.period;
                if got != Some(want) {
                    bad.push(format!("C_{n}^{j} at {r}: formula {want}, brute {got:?}"));
                }
                cells += 1;
            }
        }
    }
    outcome(bad.is_empty(), summary("cycle", cells, &bad))
}

fn summary(what: &str, cells: usize, bad: &[String]) -> String {
    match bad.first() {
        None => format!("{cells} {what} cells agree"),
        Some(first) => format!("{} of {cells} disagree, first: {first}", bad.len()),
    }
}

fn non_periodic(_: u64) -> Result<Outcome> {
    let u = time_evolution(&build_cycle(4, 1)?, Angle::real(1.0)?)?.u;
    let rep = brute_force_period(&u, DEFAULT_CAP, PERIOD_TOL)?;
    outcome(
        !rep.periodic,
        format!("cap {}, final residual {:.2e}", rep.cap_used, rep.residual),
    )
}

fn spectral_mapping(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 10);
    let mut graphs: Vec<MixedGraph> = Vec::new();
    for n in 3..=8 {
        for j in 0..=n {
            graphs.push(build_cycle(n, j)?);
        }
    }
    for n in 2..=8 {
        graphs.push(undirected_path(n)?);
        graphs.push(generate::random_path(n, &mut rng)?);
    }
    let mut worst: f64 = 0.0;
    let mut miscounted = 0;
    for g in &graphs {
        for eta in angle_grid() {
            let rep = spectral_map_check(g, eta, 10)?;
            worst = worst.max(rep.max_residual());
            if rep.predicted.dimension() != 2 * g.n_edges() {
                miscounted += 1;
            }
        }
    }
    outcome(
        worst < 1e-7 && miscounted == 0,
        format!("{} graphs, max residual {worst:.2e}, {miscounted} miscounted", graphs.len()),
    )
}

fn entrywise_formula(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, 11);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(2..=10);
        let g = generate::random_connected(n, 0.3, &mut rng)?;
        let eta = Angle::real(rng.random_range(0.0..std::f64::consts::TAU))?;
        worst = worst.max(time_evolution(&g, eta)?.formula_residual);
    }
    outcome(worst < 1e-12, format!("100 graphs, max |S·C - formula| {worst:.2e}"))
}

fn return_phases(_: u64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        for j in 0..=n {
            let g = build_cycle(n, j)?;
            for eta in angle_grid() {
                let (phases, leak) = basis_return_phases(&g, eta, n as u64)?;
                let plus = eta.phase(j as i64);
                worst = worst.max(leak);
                for z in phases {
                    worst = worst.max((z - plus).norm().min((z - plus.conj()).norm()));
                }
            }
        }
    }
    outcome(worst < 1e-9, format!("max deviation {worst:.2e}"))
}
