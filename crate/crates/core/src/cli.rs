//! Command-line front end.
//!
//! Exit statuses: 0 on success, 1 on usage or domain errors, 2 when an
//! internal consistency check fails.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_cycle, build_path, undirected_path, MixedGraph, Orientation};
use crate::linalg::{charpoly, determinant, hermitian_eigenvalues_sorted};
use crate::periodicity::{
    brute_force_period, cycle_period, period_of, CrossCheck, PeriodOptions, PERIOD_TOL,
};
use crate::spectra::{cospectral, girth_agreement, h_eta, normalized_h_eta, Angle, GirthAgreement};
use crate::switching::canonicalize_cycle;
use crate::verify::{self, cycle_period_grid};
use crate::walk::time_evolution;

#[derive(Debug, Parser)]
#[command(name = "mixedwalk", version, about = "Spectra, switching and walk periods of mixed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Identity tolerance for the period search.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Brute-force cap on the period search.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Seed for random graphs in `verify`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for `sweep` and `verify`.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// JSON file, `cycle:n=8,j=3` or `path:n=5[,orient=fbd...]`.
    #[arg(long)]
    pub graph: String,
    /// `pi*p/q`, `pi/q`, `pi` or radians.
    #[arg(long, default_value = "pi*1/2")]
    pub eta: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial, eigenvalues and cospectrality with G^±.
    Spectrum(GraphArgs),
    /// Switch a mixed cycle onto its canonical form C_n^j.
    ClassifyCycle(GraphArgs),
    /// Dump the walk operators as [re, im] pairs.
    Walk {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also emit K, C and S.
        #[arg(long)]
        all: bool,
    },
    /// Period of the walk, with closed form and brute-force cross-check.
    Period(GraphArgs),
    /// Compare closed-form and brute-force cycle periods over a grid.
    Sweep {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Comma-separated `p/q` list; defaults to 0/1,1/1,1/2,1/3,2/3,3/4.
        #[arg(long)]
        angles: Option<String>,
    },
    /// Run the full acceptance checks.
    Verify,
}

/// Parses a graph source: a builder spec or a JSON file path.
pub fn parse_graph(spec: &str) -> Result<MixedGraph> {
    let usage = |msg: String| Error::Usage(format!("graph {spec:?}: {msg}"));
    let Some((kind, rest)) = spec.split_once(':') else {
        return MixedGraph::load(spec);
    };
    let mut n = None;
    let mut j = None;
    let mut orient = None;
    for kv in rest.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got {kv:?}")))?;
        let number = || v.trim().parse::<usize>().map_err(|_| usage(format!("bad number {v:?}")));
        match k.trim() {
            "n" => n = Some(number()?),
            "j" => j = Some(number()?),
            "orient" => orient = Some(v.trim().to_string()),
            other => return Err(usage(format!("unknown key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| usage("missing n".into()))?;
    match kind {
        "cycle" => {
            if orient.is_some() {
                return Err(usage("cycles take n and j".into()));
            }
            build_cycle(n, j.unwrap_or(0))
        }
        "path" => {
            if j.is_some() {
                return Err(usage("paths take n and orient".into()));
            }
            match orient {
                None => undirected_path(n),
                Some(s) => {
                    let steps = s
                        .chars()
                        .map(|c| Orientation::from_symbol(c).ok_or_else(|| usage(format!("bad orientation {c:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    build_path(n, &steps)
                }
            }
        }
        _ if std::path::Path::new(spec).exists() => MixedGraph::load(spec),
        other => Err(usage(format!("unknown builder {other:?}"))),
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct SpectrumReport {
    graph: crate::graph::GraphJson,
    n: usize,
    eta: Angle,
    determinant: [f64; 2],
    charpoly: Vec<[f64; 2]>,
    eigenvalues: Vec<f64>,
    normalized_eigenvalues: Option<Vec<f64>>,
    underlying_charpoly: Vec<[f64; 2]>,
    cospectral_with_underlying: bool,
    girth: Option<usize>,
    girth_agreement: Option<GirthAgreement>,
}

fn spectrum(g: &MixedGraph, eta: Angle) -> Result<SpectrumReport> {
    let h = h_eta(g, eta);
    let no_isolated = (0..g.n_vertices()).all(|x| !g.neighbors(x).is_empty());
    Ok(SpectrumReport {
        graph: g.to_json(),
        n: g.n_vertices(),
        eta,
        determinant: pair(determinant(&h)?),
        charpoly: charpoly(&h)?.coeffs().iter().map(|&z| pair(z)).collect(),
        eigenvalues: hermitian_eigenvalues_sorted(&h)?,
        normalized_eigenvalues: if no_isolated {
            Some(hermitian_eigenvalues_sorted(&normalized_h_eta(g, eta)?)?)
        } else {
            None
        },
        underlying_charpoly: charpoly(&h_eta(&g.underlying(), eta))?
            .coeffs()
            .iter()
            .map(|&z| pair(z))
            .collect(),
        cospectral_with_underlying: cospectral(g, &g.underlying(), eta)?,
        girth: g.girth(),
        girth_agreement: if no_isolated { Some(girth_agreement(g, eta)?) } else { None },
    })
}

#[derive(Serialize)]
struct ClassifyReport {
    n: usize,
    j: usize,
    orientation_reversed: bool,
    moves: Vec<crate::switching::AppliedMove>,
    relabeling: Vec<usize>,
    witness_exponents: Vec<i64>,
    residual: f64,
}

#[derive(Serialize)]
struct WalkReport {
    arcs: Vec<(usize, usize)>,
    formula_residual: f64,
    u: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<Vec<Vec<[f64; 2]>>>,
}

/// One row of the `sweep` table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub j: usize,
    pub p: u64,
    pub q: u64,
    pub tau_formula: u64,
    pub tau_brute: Option<u64>,
    pub agree: bool,
}

fn parse_angle_list(s: &str) -> Result<Vec<crate::spectra::RationalAngle>> {
    s.split(',')
        .map(|t| match Angle::parse(&format!("pi*{}", t.trim()))? {
            Angle::Rational(r) => Ok(r),
            Angle::Real { .. } => Err(Error::Usage(format!("sweep angle {t:?} is not p/q"))),
        })
        .collect()
}

/// Cycle periods by formula and by brute force for every `(n, j, p/q)` cell.
pub fn sweep(n_min: usize, n_max: usize, angles: &[crate::spectra::RationalAngle], tol: f64) -> Result<Vec<SweepRow>> {
    if n_min < 3 || n_max < n_min {
        return Err(Error::Usage(format!("need 3 <= n-min <= n-max, got {n_min}..{n_max}")));
    }
    let cells: Vec<_> = (n_min..=n_max)
        .flat_map(|n| (0..=n).flat_map(move |j| angles.iter().map(move |&r| (n, j, r))))
        .collect();
    cells
        .par_iter()
        .map(|&(n, j, r)| {
            let tau_formula = cycle_period(n, j, r)?;
            let u = time_evolution(&build_cycle(n, j)?, Angle::Rational(r))?.u;
            let tau_brute = brute_force_period(&u, 2 * r.q() * n as u64, tol)?.period;
            Ok(SweepRow {
                n,
                j,
                p: r.p(),
                q: r.q(),
                tau_formula,
                tau_brute,
                agree: tau_brute == Some(tau_formula),
            })
        })
        .collect()
}

fn emit_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_unsupported(what: &str) -> Error {
    Error::Usage(format!("--format csv is not available for {what}"))
}

fn complex_str(z: [f64; 2]) -> String {
    if z[1] == 0.0 {
        format!("{}", z[0])
    } else {
        format!("{}{:+}i", z[0], z[1])
    }
}

/// Executes a parsed command and returns the exit status.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let fmt = cli.common.format;
    let tol = cli.common.tol.unwrap_or(PERIOD_TOL);
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Usage("--tol must be positive".into()));
    }
    if cli.common.cap == Some(0) {
        return Err(Error::Usage("--cap must be positive".into()));
    }
    let load = |a: &GraphArgs| -> Result<(MixedGraph, Angle)> {
        let eta = Angle::parse(&a.eta)?;
        Ok((parse_graph(&a.graph)?, eta))
    };
    match &cli.command {
        Command::Spectrum(a) => {
            let (g, eta) = load(a)?;
            let rep = spectrum(&g, eta)?;
            match fmt {
                Format::Json => emit_json(out, &rep)?,
                Format::Csv => {
                    writeln!(out, "index,eigenvalue")?;
                    for (i, l) in rep.eigenvalues.iter().enumerate() {
                        writeln!(out, "{i},{l}")?;
                    }
                }
                Format::Pretty => {
                    writeln!(out, "graph     {g}")?;
                    writeln!(out, "eta       {eta}")?;
                    writeln!(out, "det       {}", complex_str(rep.determinant))?;
                    let coeffs: Vec<_> = rep.charpoly.iter().map(|&z| complex_str(z)).collect();
                    writeln!(out, "charpoly  [{}] (constant term first)", coeffs.join(", "))?;
                    let eig: Vec<_> = rep.eigenvalues.iter().map(|l| format!("{l:.6}")).collect();
                    writeln!(out, "spectrum  {}", eig.join(" "))?;
                    writeln!(out, "cospectral with underlying: {}", rep.cospectral_with_underlying)?;
                }
            }
            Ok(0)
        }
        Command::ClassifyCycle(a) => {
            let (g, eta) = load(a)?;
            let cls = canonicalize_cycle(&g, eta)?;
            let rep = ClassifyReport {
                n: cls.n,
                j: cls.type_j,
                orientation_reversed: cls.orientation_reversed,
                moves: cls.moves.clone(),
                relabeling: cls.relabeling.clone(),
                witness_exponents: cls.witness.exponents().to_vec(),
                residual: cls.residual(&g)?,
            };
            match fmt {
                Format::Json => emit_json(out, &rep)?,
                Format::Csv => return Err(csv_unsupported("classify-cycle")),
                Format::Pretty => {
                    writeln!(out, "C_{}^{}", rep.n, rep.j)?;
                    let moves: Vec<_> = rep.moves.iter().map(|m| format!("{}({})", m.mv, m.vertex)).collect();
                    writeln!(out, "moves     {}", if moves.is_empty() { "-".into() } else { moves.join(" ") })?;
                    writeln!(out, "relabel   {:?}", rep.relabeling)?;
                    writeln!(out, "residual  {:.3e}", rep.residual)?;
                }
            }
            Ok(0)
        }
        Command::Walk { graph, all } => {
            let (g, eta) = load(graph)?;
            let ops = time_evolution(&g, eta)?;
            let extra = |m: &crate::linalg::ComplexMatrix| all.then(|| m.to_pairs());
            let rep = WalkReport {
                arcs: ops.arc_index.arcs().to_vec(),
                formula_residual: ops.formula_residual,
                u: ops.u.to_pairs(),
                k: extra(&ops.k),
                c: extra(&ops.c),
                s: extra(&ops.s),
            };
            match fmt {
                Format::Json => emit_json(out, &rep)?,
                Format::Csv => {
                    writeln!(out, "row,col,re,im")?;
                    for (a, row) in rep.u.iter().enumerate() {
                        for (b, z) in row.iter().enumerate() {
                            if z[0] != 0.0 || z[1] != 0.0 {
                                writeln!(out, "{a},{b},{},{}", z[0], z[1])?;
                            }
                        }
                    }
                }
                Format::Pretty => {
                    writeln!(out, "arcs      {:?}", rep.arcs)?;
                    writeln!(out, "{:?}", ops.u)?;
                }
            }
            Ok(0)
        }
        Command::Period(a) => {
            let (g, eta) = load(a)?;
            let rep = period_of(&g, eta, PeriodOptions { cap: cli.common.cap, tol })?;
            match fmt {
                Format::Json => emit_json(out, &rep)?,
                Format::Csv => {
                    writeln!(out, "periodic,period,method,cap_used,cross_check,residual")?;
                    let method = serde_json::to_value(rep.method)?;
                    let check = serde_json::to_value(rep.cross_check)?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        rep.periodic,
                        rep.period.map(|p| p.to_string()).unwrap_or_default(),
                        method.as_str().unwrap_or_default(),
                        rep.cap_used,
                        check.as_str().unwrap_or_default(),
                        rep.residual
                    )?;
                }
                Format::Pretty => match rep.period {
                    Some(tau) => writeln!(out, "periodic, period {tau} ({:?}, cross-check {:?})", rep.method, rep.cross_check)?,
                    None => writeln!(out, "no period up to {} (residual {:.3e})", rep.cap_used, rep.residual)?,
                },
            }
            if rep.cross_check == CrossCheck::Disagree {
                eprintln!(
                    "closed form gives {:?}, brute force gives {:?}",
                    rep.period, rep.brute_force_period
                );
                return Ok(2);
            }
            Ok(0)
        }
        Command::Sweep { n_min, n_max, angles } => {
            let angles = match angles {
                Some(s) => parse_angle_list(s)?,
                None => cycle_period_grid(),
            };
            let rows = with_jobs(cli.common.jobs, || sweep(*n_min, *n_max, &angles, tol))??;
            match fmt {
                Format::Json => emit_json(out, &rows)?,
                Format::Csv | Format::Pretty => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    for row in &rows {
                        w.serialize(row).map_err(|e| Error::Io(e.into()))?;
                    }
                    w.flush()?;
                }
            }
            let bad: Vec<_> = rows.iter().filter(|r| !r.agree).collect();
            for r in &bad {
                eprintln!(
                    "disagreement at n={} j={} p={} q={}: formula {} brute {:?}",
                    r.n, r.j, r.p, r.q, r.tau_formula, r.tau_brute
                );
            }
            Ok(if bad.is_empty() { 0 } else { 2 })
        }
        Command::Verify => {
            let seed = cli.common.seed.unwrap_or(verify::DEFAULT_SEED);
            let results = with_jobs(cli.common.jobs, || verify::run_all(seed))?;
            match fmt {
                Format::Json => emit_json(out, &results)?,
                Format::Csv => {
                    writeln!(out, "id,name,passed,seconds")?;
                    for r in &results {
                        writeln!(out, "{},{},{},{:.3}", r.id, r.name, r.passed, r.seconds)?;
                    }
                }
                Format::Pretty => {
                    for r in &results {
                        writeln!(out, "{}", r.line())?;
                    }
                }
            }
            Ok(if results.iter().all(|r| r.passed) { 0 } else { 2 })
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Usage("--jobs must be positive".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::internal(e.to_string())),
    }
}

/// Parses `args`, runs the command, reports errors on `err` and returns the
/// exit status.
pub fn main_with_args<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["mixedwalk"];
        full.extend_from_slice(args);
        let code = main_with_args(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn graph_specs() {
        assert_eq!(parse_graph("cycle:n=8,j=3").unwrap(), build_cycle(8, 3).unwrap());
        assert_eq!(parse_graph("path:n=5").unwrap(), undirected_path(5).unwrap());
        let g = parse_graph("path:n=4,orient=f<d").unwrap();
        assert_eq!(g.orientation(0, 1), Some(Orientation::Forward));
        assert_eq!(g.orientation(1, 2), Some(Orientation::Backward));
        assert_eq!(g.orientation(2, 3), Some(Orientation::Digon));
        for bad in ["cycle:j=3", "cycle:n=x", "path:n=3,j=1", "blob:n=3", "path:n=4,orient=fz"] {
            assert!(matches!(parse_graph(bad), Err(Error::Usage(_))), "{bad}");
        }
        assert!(parse_graph("cycle:n=2").is_err());
    }

    #[test]
    fn period_command() {
        let (code, out, _) = run_args(&["period", "--graph", "cycle:n=4,j=1", "--eta", "pi*1/2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["periodic"], true);
        assert_eq!(v["period"], 16);
        assert_eq!(v["cross_check"], "agree");
    }

    #[test]
    fn spectrum_command() {
        let (code, out, _) = run_args(&["spectrum", "--graph", "path:n=4,orient=fbf", "--eta", "pi*1/3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cospectral_with_underlying"], true);
        assert_eq!(v["charpoly"], v["underlying_charpoly"]);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["period", "--graph", "cycle:n=4,j=1", "--eta", "pi*1/0"]).0, 1);
        assert_eq!(run_args(&["period", "--graph", "nope:n=3"]).0, 1);
        assert_eq!(run_args(&["bogus"]).0, 1);
        assert_eq!(run_args(&["classify-cycle", "--graph", "path:n=4"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn sweep_small() {
        let (code, out, _) = run_args(&["sweep", "--n-min", "3", "--n-max", "4", "--format", "csv", "--jobs", "2"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("n,j,p,q,tau_formula,tau_brute,agree"));
        assert_eq!(lines.count(), (4 + 5) * 6);
    }

    #[test]
    fn sweep_rows_ordered() {
        let rows = sweep(3, 5, &cycle_period_grid(), PERIOD_TOL).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.n, r.j)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(rows.iter().all(|r| r.agree));
    }
}
