//! End-to-end experiment tables with a versioned output schema.
//!
//! Each experiment returns a [`Report`]: rows, the assertions checked while
//! producing them, and the configuration. Rationals are `p/q` strings and
//! every floating-point column comes with the tolerance it was computed to.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bottleneck::{
    self, claim_check, graph_conductance, jcycle_bottleneck, lemma22_check, theorem11_pipeline,
    theorem23_verify, BottleneckError, VertexSubset,
};
use crate::cubic::{enumerate_labelled, enumerate_unlabelled, CubicGraph, EnumCaps, EnumError};
use crate::exact::ratio_string;
use crate::metagraph::{MetaError, MetaGraph, Mode};
use crate::randreg::{self, RandRegError};
use crate::spectral::{self, graph_spectrum, SpectralError, Vectors};
use crate::whitehead::labelled_neighbors;

pub const SCHEMA: &str = "cubic-meta-report/1";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Meta(#[from] MetaError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Bottleneck(#[from] BottleneckError),
    #[error(transparent)]
    RandReg(#[from] RandRegError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}, expected json|csv")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub n_range: Vec<usize>,
    pub mode: Mode,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub labelled_cap: usize,
    pub unlabelled_cap: usize,
}

impl ExperimentConfig {
    pub fn new(experiment: &str, n_range: Vec<usize>, mode: Mode, caps: &EnumCaps) -> Self {
        Self {
            experiment: experiment.into(),
            n_range,
            mode,
            k: 2,
            trials: 0,
            seed: 0,
            labelled_cap: caps.labelled,
            unlabelled_cap: caps.unlabelled,
        }
    }

    pub fn caps(&self) -> EnumCaps {
        EnumCaps {
            labelled: self.labelled_cap,
            unlabelled: self.unlabelled_cap,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.k == 0 {
            return Err(ExperimentError::Config("k must be at least 1".into()));
        }
        let cap = match self.mode {
            Mode::Labelled => self.labelled_cap,
            Mode::Unlabelled => self.unlabelled_cap,
        };
        if let Some(&n) = self
            .n_range
            .iter()
            .find(|&&n| n > cap || n < 2 || n % 2 == 1)
        {
            return Err(ExperimentError::Config(format!(
                "n = {n} outside the even range 2..={cap} for {} mode",
                self.mode
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Rows that flatten to CSV records.
pub trait CsvRow {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<R> {
    pub schema: &'static str,
    pub config: ExperimentConfig,
    pub spectral_tol: f64,
    pub float_tol: f64,
    pub rows: Vec<R>,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

impl<R: Serialize + CsvRow> Report<R> {
    fn new(config: ExperimentConfig, rows: Vec<R>, assertions: Vec<Assertion>) -> Self {
        let passed = assertions.iter().all(|a| a.passed);
        Self {
            schema: SCHEMA,
            config,
            spectral_tol: spectral::TOL,
            float_tol: bottleneck::TOL,
            rows,
            assertions,
            passed,
        }
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> Result<(), ExperimentError> {
        match format {
            Format::Json => {
                let mut w = w;
                serde_json::to_writer_pretty(&mut w, self)?;
                writeln!(w)?;
            }
            Format::Csv => {
                let mut out = csv::Writer::from_writer(w);
                let mut header: Vec<&str> = vec!["schema", "experiment"];
                header.extend(R::header());
                out.write_record(&header)?;
                for r in &self.rows {
                    let mut rec = vec![SCHEMA.to_string(), self.config.experiment.clone()];
                    rec.extend(r.record());
                    out.write_record(&rec)?;
                }
                out.flush()?;
            }
        }
        Ok(())
    }
}

/// Runs `f` for every order in parallel, keeping rows and assertions in
/// the order of `ns`.
fn per_order<R: Send>(
    ns: &[usize],
    f: impl Fn(usize, &mut Vec<Assertion>) -> Result<R, ExperimentError> + Sync,
) -> Result<(Vec<R>, Vec<Assertion>), ExperimentError> {
    let parts = ns
        .par_iter()
        .map(|&n| {
            let mut a = Vec::new();
            f(n, &mut a).map(|r| (r, a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(parts.len());
    let mut assertions = Vec::new();
    for (r, a) in parts {
        rows.push(r);
        assertions.extend(a);
    }
    Ok((rows, assertions))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, T::to_string)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop41Row {
    pub n: usize,
    pub vertices: usize,
    pub mean_degree: f64,
    pub mean_degree_exact: String,
    pub min_degree: usize,
    pub max_degree: usize,
    pub six_n: usize,
    /// `6n - mean`.
    pub gap: f64,
    pub max_within_six_n: bool,
    /// Members with `E'` nonempty.
    pub special_members: usize,
    /// Members whose meta-degree is below `4 |E'|`.
    pub special_violations: usize,
    pub disconnecting_moves: usize,
}

impl CsvRow for Prop41Row {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "vertices",
            "mean_degree",
            "mean_degree_exact",
            "min_degree",
            "max_degree",
            "six_n",
            "gap",
            "max_within_six_n",
            "special_members",
            "special_violations",
            "disconnecting_moves",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.vertices.to_string(),
            self.mean_degree.to_string(),
            self.mean_degree_exact.clone(),
            self.min_degree.to_string(),
            self.max_degree.to_string(),
            self.six_n.to_string(),
            self.gap.to_string(),
            self.max_within_six_n.to_string(),
            self.special_members.to_string(),
            self.special_violations.to_string(),
            self.disconnecting_moves.to_string(),
        ]
    }
}

/// Degree of the Petersen graph in the labelled meta-graph on ten vertices,
/// read off its move neighborhood since the full graph is out of reach.
pub fn petersen_degree() -> usize {
    labelled_neighbors(&CubicGraph::petersen()).len()
}

pub fn run_prop41(ns: &[usize], caps: &EnumCaps) -> Result<Report<Prop41Row>, ExperimentError> {
    let config = ExperimentConfig::new("prop41", ns.to_vec(), Mode::Labelled, caps);
    config.validate()?;
    let (rows, mut assertions) = per_order(ns, |n, assertions| {
        let (meta, diag) = MetaGraph::build_with_diagnostics(n, Mode::Labelled, caps)?;
        let stats = meta.degree_stats();
        let mut special_members = 0;
        let mut special_violations = 0;
        for (i, g) in meta.members().iter().enumerate() {
            let e = g.special_edges().special.len();
            if e > 0 {
                special_members += 1;
                if meta.graph().degree(i) < 4 * e {
                    special_violations += 1;
                }
            }
        }
        let row = Prop41Row {
            n,
            vertices: meta.len(),
            mean_degree: stats.mean,
            mean_degree_exact: stats.mean_exact.clone(),
            min_degree: stats.min,
            max_degree: stats.max,
            six_n: 6 * n,
            gap: 6.0 * n as f64 - stats.mean,
            max_within_six_n: stats.max <= 6 * n,
            special_members,
            special_violations,
            disconnecting_moves: diag.disconnecting_moves,
        };
        assertions.push(Assertion::new(
            format!("n={n}: max degree <= 6n"),
            row.max_within_six_n,
            format!("max {} vs {}", row.max_degree, 6 * n),
        ));
        assertions.push(Assertion::new(
            format!("n={n}: degree >= 4|E'| on every member"),
            special_violations == 0,
            format!("{special_violations} of {special_members} members below 4|E'|"),
        ));
        Ok(row)
    })?;
    let pd = petersen_degree();
    assertions.push(Assertion::new(
        "petersen: labelled meta-degree >= 4|E'| = 60",
        pd >= 60,
        format!("degree {pd}"),
    ));
    Ok(Report::new(config, rows, assertions))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm11Row {
    pub n: usize,
    pub mode: Mode,
    pub vertices: usize,
    pub k: usize,
    /// `λ₁..λ_{k+1}`.
    pub lambdas: Vec<f64>,
    pub degenerate: Option<String>,
    pub max_quotient: Option<f64>,
    pub epsilon: Option<f64>,
    pub bound: Option<f64>,
    pub holds: Option<bool>,
    pub bound_next: Option<f64>,
    pub holds_next: Option<bool>,
    pub cheeger_bound: Option<f64>,
    /// `i-j:p/q` per pair.
    pub covariances: Vec<String>,
    pub inner_products: Vec<f64>,
}

impl CsvRow for Thm11Row {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "mode",
            "vertices",
            "k",
            "lambdas",
            "degenerate",
            "max_quotient",
            "epsilon",
            "bound",
            "holds",
            "bound_next",
            "holds_next",
            "cheeger_bound",
            "covariances",
            "inner_products",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.mode.to_string(),
            self.vertices.to_string(),
            self.k.to_string(),
            join(&self.lambdas),
            opt(&self.degenerate),
            opt(&self.max_quotient),
            opt(&self.epsilon),
            opt(&self.bound),
            opt(&self.holds),
            opt(&self.bound_next),
            opt(&self.holds_next),
            opt(&self.cheeger_bound),
            join(&self.covariances),
            join(&self.inner_products),
        ]
    }
}

pub fn run_thm11(
    ns: &[usize],
    mode: Mode,
    k: usize,
    caps: &EnumCaps,
) -> Result<Report<Thm11Row>, ExperimentError> {
    let mut config = ExperimentConfig::new("thm11", ns.to_vec(), mode, caps);
    config.k = k;
    config.validate()?;
    let (rows, assertions) = per_order(ns, |n, assertions| {
        let meta = MetaGraph::build(n, mode, caps)?;
        let spectrum = graph_spectrum(meta.graph(), Vectors::None)?;
        let lambdas: Vec<f64> = spectrum.eigenvalues.iter().take(k + 1).copied().collect();
        assertions.push(Assertion::new(
            format!("{mode} n={n}: spectrum sorted"),
            lambdas.windows(2).all(|w| w[0] <= w[1]),
            join(&lambdas),
        ));
        let mut row = Thm11Row {
            n,
            mode,
            vertices: meta.len(),
            k,
            lambdas,
            degenerate: None,
            max_quotient: None,
            epsilon: None,
            bound: None,
            holds: None,
            bound_next: None,
            holds_next: None,
            cheeger_bound: None,
            covariances: Vec::new(),
            inner_products: Vec::new(),
        };
        match theorem11_pipeline(&meta, k, Some(&spectrum)) {
            Ok(p) => {
                assertions.push(Assertion::new(
                    format!("{mode} n={n}: lambda_{k} <= k-vector bound"),
                    p.holds,
                    format!("{} <= {}", p.lambda_k, p.bound),
                ));
                assertions.push(Assertion::new(
                    format!("{mode} n={n}: lambda_2 <= 2 phi(X_1)"),
                    p.cheeger.holds,
                    format!("{} <= {}", p.cheeger.lambda2, p.cheeger.bound),
                ));
                if let Some(b) = p.bound_next {
                    assertions.push(Assertion::new(
                        format!(
                            "{mode} n={n}: lambda_{} <= bound with constant vector",
                            k + 1
                        ),
                        p.holds_next,
                        format!("{} <= {b}", opt(&p.lambda_next)),
                    ));
                }
                row.max_quotient = Some(p.lambda_max_quotient);
                row.epsilon = Some(p.epsilon);
                row.bound = Some(p.bound);
                row.holds = Some(p.holds);
                row.bound_next = p.bound_next;
                row.holds_next = Some(p.holds_next);
                row.cheeger_bound = Some(p.cheeger.bound);
                row.covariances = p
                    .pairs
                    .iter()
                    .map(|s| format!("{}-{}:{}", s.i, s.j, ratio_string(&s.covariance)))
                    .collect();
                row.inner_products = p.pairs.iter().map(|s| s.inner_product).collect();
            }
            Err(
                e @ (BottleneckError::Degenerate { .. } | BottleneckError::EpsilonTooLarge { .. }),
            ) => row.degenerate = Some(e.to_string()),
            Err(e) => return Err(e.into()),
        }
        Ok(row)
    })?;
    Ok(Report::new(config, rows, assertions))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub n: usize,
    pub mode: Mode,
    pub vertices: usize,
    pub lambda2: f64,
    pub conductance: String,
    /// `exact` or `upper-bound`.
    pub conductance_kind: String,
    pub conductance_family: String,
    pub mean_degree: f64,
    /// `3n` unlabelled, `6n` labelled.
    pub reference_degree: usize,
    pub mean_minus_reference: f64,
}

impl CsvRow for TrendRow {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "mode",
            "vertices",
            "lambda2",
            "conductance",
            "conductance_kind",
            "conductance_family",
            "mean_degree",
            "reference_degree",
            "mean_minus_reference",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.mode.to_string(),
            self.vertices.to_string(),
            self.lambda2.to_string(),
            self.conductance.clone(),
            self.conductance_kind.clone(),
            self.conductance_family.clone(),
            self.mean_degree.to_string(),
            self.reference_degree.to_string(),
            self.mean_minus_reference.to_string(),
        ]
    }
}

pub fn run_trends(
    ns: &[usize],
    mode: Mode,
    caps: &EnumCaps,
) -> Result<Report<TrendRow>, ExperimentError> {
    let config = ExperimentConfig::new("trends", ns.to_vec(), mode, caps);
    config.validate()?;
    let (rows, assertions) = per_order(ns, |n, assertions| {
        let meta = MetaGraph::build(n, mode, caps)?;
        let spectrum = graph_spectrum(meta.graph(), Vectors::None)?;
        let lambda2 = spectrum.eigenvalues[1];
        let phi = graph_conductance(meta.graph())?;
        let stats = meta.degree_stats();
        assertions.push(Assertion::new(
            format!("{mode} n={n}: lambda_2 <= 2 phi"),
            lambda2 <= 2.0 * crate::exact::to_f64(&phi.value) + bottleneck::TOL,
            format!("{lambda2} vs phi {}", ratio_string(&phi.value)),
        ));
        Ok(TrendRow {
            n,
            mode,
            vertices: meta.len(),
            lambda2,
            conductance: ratio_string(&phi.value),
            conductance_kind: if phi.exact { "exact" } else { "upper-bound" }.into(),
            conductance_family: phi.family,
            mean_degree: stats.mean,
            reference_degree: stats.reference,
            mean_minus_reference: stats.mean_minus_reference,
        })
    })?;
    Ok(Report::new(config, rows, assertions))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigvecRow {
    pub index: usize,
    pub graph: String,
    pub loops: usize,
    pub multi_edges: usize,
    pub girth: usize,
    /// Lengths `j` with a `j`-cycle.
    pub cycle_lengths: Vec<usize>,
    pub special_edges: usize,
    pub degree: usize,
    /// Entries of `v₂..v_k`.
    pub entries: Vec<f64>,
}

impl CsvRow for EigvecRow {
    fn header() -> Vec<&'static str> {
        vec![
            "index",
            "graph",
            "loops",
            "multi_edges",
            "girth",
            "cycle_lengths",
            "special_edges",
            "degree",
            "entries",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.graph.clone(),
            self.loops.to_string(),
            self.multi_edges.to_string(),
            self.girth.to_string(),
            join(&self.cycle_lengths),
            self.special_edges.to_string(),
            self.degree.to_string(),
            join(&self.entries),
        ]
    }
}

pub fn run_eigvec_report(
    n: usize,
    mode: Mode,
    k: usize,
    caps: &EnumCaps,
) -> Result<Report<EigvecRow>, ExperimentError> {
    let mut config = ExperimentConfig::new("eigvec", vec![n], mode, caps);
    config.k = k;
    config.validate()?;
    if k < 2 {
        return Err(ExperimentError::Config(
            "eigenvector report needs k >= 2".into(),
        ));
    }
    let meta = MetaGraph::build(n, mode, caps)?;
    let k = k.min(meta.len());
    let spectrum = graph_spectrum(meta.graph(), Vectors::Lowest(k))?;
    let vectors = spectrum.eigenvectors.as_ref().expect("requested");
    let mut assertions = vec![Assertion::new(
        "eigenvector residuals within tol",
        spectrum.max_relative_residual() <= spectrum.tol,
        format!("{:e}", spectrum.max_relative_residual()),
    )];
    for (i, v) in vectors.iter().enumerate().skip(1) {
        let spread = v.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x))
            - v.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        assertions.push(Assertion::new(
            format!("v_{} is not constant", i + 1),
            spread > bottleneck::TOL,
            format!("spread {spread:e}"),
        ));
    }
    let rows = meta
        .members()
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let mask = g.cycle_lengths();
            EigvecRow {
                index: idx,
                graph: g.to_string(),
                loops: g.loop_count(),
                multi_edges: g.multi_edge_count(),
                girth: g.girth(),
                cycle_lengths: (1..=n).filter(|&j| mask >> j & 1 == 1).collect(),
                special_edges: g.special_edges().special.len(),
                degree: meta.graph().degree(idx),
                entries: vectors[1..].iter().map(|v| v[idx]).collect(),
            }
        })
        .collect();
    Ok(Report::new(config, rows, assertions))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub series: String,
    pub index: usize,
    pub value: f64,
}

impl CsvRow for SpectrumRow {
    fn header() -> Vec<&'static str> {
        vec!["series", "index", "value"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.series.clone(),
            self.index.to_string(),
            self.value.to_string(),
        ]
    }
}

/// The random-regular comparison as an experiment report: meta-graph
/// eigenvalues and per-trial `λ₂` values as long-format rows.
pub fn run_compare_random(
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    order_cap: usize,
    caps: &EnumCaps,
) -> Result<(Report<SpectrumRow>, randreg::Theorem12Report), ExperimentError> {
    let mut config = ExperimentConfig::new("compare-random", vec![n], Mode::Labelled, caps);
    config.k = k;
    config.trials = trials;
    config.seed = seed;
    config.validate()?;
    let rep = randreg::theorem12_comparison(n, k, trials, seed, order_cap, caps)?;
    let mut rows: Vec<SpectrumRow> = rep
        .meta_spectrum
        .iter()
        .map(|r| SpectrumRow {
            series: format!("meta-lambda-n{n}"),
            index: r.j,
            value: r.lambda,
        })
        .collect();
    let mut assertions = Vec::new();
    if let Some(random) = &rep.random {
        rows.extend(random.values.iter().enumerate().map(|(t, &v)| SpectrumRow {
            series: format!("random-lambda2-N{}-d{}", random.n, random.d),
            index: t,
            value: v,
        }));
        assertions.push(Assertion::new(
            "random samples valid",
            random.invalid_samples == 0,
            format!("{} invalid of {}", random.invalid_samples, random.trials),
        ));
    }
    assertions.push(Assertion::new(
        "meta spectrum sorted",
        rep.meta_spectrum
            .windows(2)
            .all(|w| w[0].lambda <= w[1].lambda),
        String::new(),
    ));
    Ok((Report::new(config, rows, assertions), rep))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl CsvRow for VerifyRow {
    fn header() -> Vec<&'static str> {
        vec!["check", "passed", "detail"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.check.clone(),
            self.passed.to_string(),
            self.detail.clone(),
        ]
    }
}

/// A fast pass over the main invariants at small order.
pub fn run_verify(seed: u64, caps: &EnumCaps) -> Result<Report<VerifyRow>, ExperimentError> {
    use rand::Rng;
    let mut config = ExperimentConfig::new("verify", vec![2, 4, 6], Mode::Labelled, caps);
    config.seed = seed;
    let mut checks: Vec<Assertion> = Vec::new();

    let counts: Vec<usize> = [2, 4, 6]
        .iter()
        .map(|&n| enumerate_labelled(n, caps).map(|v| v.len()))
        .collect::<Result<_, _>>()?;
    checks.push(Assertion::new(
        "labelled counts 2, 35, 3550",
        counts == [2, 35, 3550],
        join(&counts),
    ));
    let classes: Vec<usize> = [2, 4, 6]
        .iter()
        .map(|&n| enumerate_unlabelled(n, caps).map(|v| v.len()))
        .collect::<Result<_, _>>()?;
    checks.push(Assertion::new(
        "unlabelled counts 2, 5, 17",
        classes == [2, 5, 17],
        join(&classes),
    ));

    let mut metas = Vec::new();
    for n in [2, 4, 6] {
        for mode in [Mode::Labelled, Mode::Unlabelled] {
            let (m, d) = MetaGraph::build_with_diagnostics(n, mode, caps)?;
            checks.push(Assertion::new(
                format!("{mode} n={n}: connected and symmetric"),
                m.graph().is_connected() && d.asymmetric_pairs == 0,
                format!("{} vertices, {} edges", m.len(), m.edges().len()),
            ));
            metas.push(m);
        }
    }

    let u4 = MetaGraph::build(4, Mode::Unlabelled, caps)?;
    let l2 = graph_spectrum(u4.graph(), Vectors::None)?.eigenvalues[1];
    let all_hold = (1u64..(1 << u4.len()) - 1).all(|m| {
        bottleneck::cheeger_with_lambda2(u4.graph(), &VertexSubset::from_mask(u4.len(), m), l2)
            .map(|c| c.holds)
            .unwrap_or(false)
    });
    checks.push(Assertion::new(
        "Cheeger on every subset of unlabelled n=4",
        all_hold,
        "",
    ));

    let mut rng = bottleneck::rng(seed);
    let u6 = &metas[5];
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = bottleneck::random_subset(u6.len(), rng.gen_range(0.1..0.9), &mut rng);
        let b = bottleneck::random_subset(u6.len(), rng.gen_range(0.1..0.9), &mut rng);
        let c = lemma22_check(u6.len(), &a, &b)?;
        worst = worst.max((c.inner_product - c.formula).abs());
    }
    checks.push(Assertion::new(
        "bottleneck inner-product formula on 1000 subset pairs",
        worst <= bottleneck::TOL,
        format!("max deviation {worst:e}"),
    ));

    let m = spectral::laplacian(u6.graph());
    let s = spectral::eigen(&m, true)?;
    let vs = s.eigenvectors.as_ref().expect("requested");
    let t23 = theorem23_verify(&m, &vs[..3], bottleneck::TOL, s.eigenvalues[2])?;
    checks.push(Assertion::new(
        "eigenvalue bound with exact eigenvectors",
        t23.holds,
        format!("{} <= {}", t23.lambda_k, t23.bound),
    ));
    checks.push(Assertion::new(
        "solver residuals and trace",
        s.max_relative_residual() <= spectral::TOL
            && (s.eigenvalues.iter().sum::<f64>() - m.trace()).abs()
                <= m.order() as f64 * spectral::TOL,
        format!("{:e}", s.max_relative_residual()),
    ));

    let tri: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 3.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    let w = claim_check(&tri)?;
    checks.push(Assertion::new(
        "pairwise bound tight on 120-degree family",
        (w.value - 0.5).abs() <= 1e-12,
        w.value.to_string(),
    ));

    for (idx, n) in [(0usize, 2usize), (2, 4), (4, 6)] {
        let meta = &metas[idx];
        let mut ok = true;
        for j in 1..=n {
            if let Ok(r) = jcycle_bottleneck(meta, j) {
                ok &= r.vertex_bound_holds && r.boundary <= 8 * j * r.size;
            }
        }
        checks.push(Assertion::new(
            format!("labelled n={n}: boundary <= 8j per vertex"),
            ok,
            "",
        ));
        let stats = meta.degree_stats();
        checks.push(Assertion::new(
            format!("labelled n={n}: max degree <= 6n"),
            stats.max <= 6 * n,
            stats.max.to_string(),
        ));
    }

    let rr = randreg::lambda2_experiment(50, 6, 10, seed)?;
    checks.push(Assertion::new(
        "random 6-regular N=50: mean lambda_2 in window",
        rr.mean_in_window && rr.invalid_samples == 0,
        format!("{} in [{}, {}]", rr.mean, rr.window[0], rr.window[1]),
    ));

    checks.extend(run_prop41(&[2, 4, 6], caps)?.assertions);
    checks.extend(run_thm11(&[2, 4, 6, 8], Mode::Unlabelled, 2, caps)?.assertions);
    checks.extend(run_thm11(&[4, 6], Mode::Labelled, 3, caps)?.assertions);

    let rows = checks
        .iter()
        .map(|a| VerifyRow {
            check: a.name.clone(),
            passed: a.passed,
            detail: a.detail.clone(),
        })
        .collect();
    Ok(Report::new(config, rows, checks))
}
