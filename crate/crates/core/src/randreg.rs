//! Seeded random regular simple graphs and the spectral comparison against
//! labelled meta-graphs.
//!
//! The default sampler draws uniform half-edge pairings and rejects any that
//! are not simple and connected, which is the pairing model conditioned on
//! those events. Its acceptance rate decays like `exp(-(d² - 1) / 4)`, so for
//! larger degrees the sequential pairing of Steger and Wormald is used
//! instead; it is only asymptotically uniform and reports say which sampler
//! ran.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cubic::EnumCaps;
use crate::graph::SimpleGraph;
use crate::metagraph::{MetaError, MetaGraph, Mode};
use crate::spectral::{graph_spectrum, SpectralError, Vectors, DENSE_BUDGET};

pub const DEFAULT_MAX_RETRIES: usize = 1_000_000;
/// Largest degree sampled by plain rejection under [`Sampler::Auto`].
pub const REJECTION_MAX_DEGREE: usize = 6;
/// Default cap on the comparison graph order.
pub const DEFAULT_COMPARISON_CAP: usize = 1000;

#[derive(Debug, Error)]
pub enum RandRegError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no simple connected sample after {0} attempts")]
    RetriesExhausted(usize),
    #[error("order {n} exceeds the solver budget {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Meta(#[from] MetaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampler {
    Auto,
    Rejection,
    StegerWormald,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandRegConfig {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub max_retries: usize,
    pub sampler: Sampler,
}

impl RandRegConfig {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        Self {
            n,
            d,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
            sampler: Sampler::Auto,
        }
    }

    pub fn validate(&self) -> Result<(), RandRegError> {
        if self.d == 0 || self.d >= self.n {
            return Err(RandRegError::Config(format!(
                "need 1 <= d < N, got N = {}, d = {}",
                self.n, self.d
            )));
        }
        if self.n * self.d % 2 == 1 {
            return Err(RandRegError::Config(format!(
                "N * d = {} is odd",
                self.n * self.d
            )));
        }
        Ok(())
    }

    pub fn resolved_sampler(&self) -> Sampler {
        match self.sampler {
            Sampler::Auto if self.d <= REJECTION_MAX_DEGREE => Sampler::Rejection,
            Sampler::Auto => Sampler::StegerWormald,
            s => s,
        }
    }
}

/// RNG for trial `trial` under root `seed`: one ChaCha stream per trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn generate(cfg: &RandRegConfig) -> Result<SimpleGraph, RandRegError> {
    generate_with(cfg, &mut ChaCha8Rng::seed_from_u64(cfg.seed))
}

pub fn generate_with(cfg: &RandRegConfig, rng: &mut impl Rng) -> Result<SimpleGraph, RandRegError> {
    cfg.validate()?;
    let sampler = cfg.resolved_sampler();
    for _ in 0..cfg.max_retries {
        let pairs = match sampler {
            Sampler::StegerWormald => steger_wormald(cfg.n, cfg.d, rng),
            _ => pairing(cfg.n, cfg.d, rng),
        };
        let Some(pairs) = pairs else { continue };
        let g = SimpleGraph::from_edges(cfg.n, pairs).expect("sampled pairs are simple");
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(RandRegError::RetriesExhausted(cfg.max_retries))
}

/// One uniform pairing of the `n d` points; `None` if it has a loop or a
/// repeated pair.
fn pairing(n: usize, d: usize, rng: &mut impl Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    points.shuffle(rng);
    let mut adj = vec![false; n * n];
    let mut pairs = Vec::with_capacity(n * d / 2);
    for c in points.chunks_exact(2) {
        let (u, v) = (c[0].min(c[1]), c[0].max(c[1]));
        if u == v || adj[u * n + v] {
            return None;
        }
        adj[u * n + v] = true;
        pairs.push((u, v));
    }
    Some(pairs)
}

/// Sequential pairing: repeatedly join two random free points on distinct,
/// non-adjacent vertices. `None` when it gets stuck.
fn steger_wormald(n: usize, d: usize, rng: &mut impl Rng) -> Option<Vec<(usize, usize)>> {
    let mut free: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    let mut adj = vec![false; n * n];
    let mut pairs = Vec::with_capacity(n * d / 2);
    let suitable = |a: usize, b: usize, adj: &[bool]| a != b && !adj[a * n + b];
    while !free.is_empty() {
        let mut found = None;
        for _ in 0..64 * free.len() {
            let i = rng.gen_range(0..free.len());
            let j = rng.gen_range(0..free.len());
            if i != j && suitable(free[i], free[j], &adj) {
                found = Some((i, j));
                break;
            }
        }
        let (i, j) = match found {
            Some(p) => p,
            None => {
                // Pick uniformly among the remaining suitable pairs, if any.
                let options: Vec<(usize, usize)> = (0..free.len())
                    .flat_map(|i| (i + 1..free.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| suitable(free[i], free[j], &adj))
                    .collect();
                *options.get(rng.gen_range(0..options.len().max(1)))?
            }
        };
        let (u, v) = (free[i], free[j]);
        adj[u * n + v] = true;
        adj[v * n + u] = true;
        pairs.push((u.min(v), u.max(v)));
        let (hi, lo) = (i.max(j), i.min(j));
        free.swap_remove(hi);
        free.swap_remove(lo);
    }
    Some(pairs)
}

/// `d`-regular, simple (by construction of [`SimpleGraph`]) and connected.
pub fn is_valid_regular(g: &SimpleGraph, d: usize) -> bool {
    (0..g.vertex_count()).all(|v| g.degree(v) == d) && g.is_connected()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lambda2Stats {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub sampler: Sampler,
    pub values: Vec<f64>,
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
    /// `[d - 3 sqrt(d), d]`.
    pub window: [f64; 2],
    pub mean_in_window: bool,
    /// `N = d + 1` forces the complete graph, whose `λ₂ = d + 1` lies
    /// outside the window by design.
    pub complete_graph: bool,
    pub invalid_samples: usize,
}

pub fn lambda2_experiment(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<Lambda2Stats, RandRegError> {
    lambda2_experiment_with(n, d, trials, seed, Sampler::Auto)
}

pub fn lambda2_experiment_with(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
    sampler: Sampler,
) -> Result<Lambda2Stats, RandRegError> {
    if n > DENSE_BUDGET {
        return Err(RandRegError::BudgetExceeded {
            n,
            budget: DENSE_BUDGET,
        });
    }
    let cfg = RandRegConfig {
        sampler,
        ..RandRegConfig::new(n, d, seed)
    };
    cfg.validate()?;
    let samples: Vec<Result<(f64, bool), RandRegError>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let g = generate_with(&cfg, &mut trial_rng(seed, t))?;
            let s = graph_spectrum(&g, Vectors::None)?;
            Ok((s.eigenvalues[1], is_valid_regular(&g, d)))
        })
        .collect();
    let mut values = Vec::with_capacity(trials);
    let mut invalid = 0;
    for s in samples {
        let (l2, ok) = s?;
        values.push(l2);
        invalid += usize::from(!ok);
    }
    let mean = values.iter().sum::<f64>() / trials.max(1) as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / trials.max(1) as f64;
    let df = d as f64;
    let window = [df - 3.0 * df.sqrt(), df];
    Ok(Lambda2Stats {
        n,
        d,
        trials,
        seed,
        sampler: cfg.resolved_sampler(),
        mean,
        stddev: var.sqrt(),
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        window,
        mean_in_window: window[0] <= mean && mean <= window[1],
        complete_graph: n == d + 1,
        invalid_samples: invalid,
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub j: usize,
    pub lambda: f64,
    /// `λ_j(Γ^l_n)` below every sampled random-regular `λ₂`.
    pub below_all_trials: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem12Report {
    pub n: usize,
    pub k: usize,
    pub skipped: Option<String>,
    pub meta_vertices: usize,
    pub meta_mean_degree: f64,
    pub comparison_degree: usize,
    pub comparison_order: usize,
    pub subsampled: bool,
    pub note: String,
    pub meta_spectrum: Vec<ComparisonRow>,
    pub meta_spectrum_tol: f64,
    pub random: Option<Lambda2Stats>,
}

/// `λ₁..λ_k` of `Γ^l_n` next to the `λ₂` distribution of random regular
/// graphs of matched mean degree. The comparison order is `|V(Γ^l_n)|`
/// capped at `order_cap`, rounded down to make `N d` even.
pub fn theorem12_comparison(
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    order_cap: usize,
    caps: &EnumCaps,
) -> Result<Theorem12Report, RandRegError> {
    let meta = MetaGraph::build(n, Mode::Labelled, caps)?;
    let stats = meta.degree_stats();
    let mut report = Theorem12Report {
        n,
        k,
        skipped: None,
        meta_vertices: meta.len(),
        meta_mean_degree: stats.mean,
        comparison_degree: stats.mean.round() as usize,
        comparison_order: 0,
        subsampled: false,
        note: String::new(),
        meta_spectrum: Vec::new(),
        meta_spectrum_tol: 0.0,
        random: None,
    };
    if meta.len() > DENSE_BUDGET {
        return Err(RandRegError::BudgetExceeded {
            n: meta.len(),
            budget: DENSE_BUDGET,
        });
    }
    let d = report.comparison_degree;
    let mut order = meta.len().min(order_cap.max(d + 2));
    if order * d % 2 == 1 {
        order -= 1;
    }
    if d == 0 || d + 1 >= order {
        report.skipped = Some(format!(
            "meta-graph too small: {} vertices, mean degree {:.3}",
            meta.len(),
            stats.mean
        ));
        return Ok(report);
    }
    report.comparison_order = order;
    report.subsampled = order < meta.len();
    report.note = if report.subsampled {
        format!(
            "random regular order reduced from {} to {} to fit the trial budget",
            meta.len(),
            order
        )
    } else {
        "random regular order equals the meta-graph order".into()
    };
    let spectrum = graph_spectrum(meta.graph(), Vectors::None)?;
    let random = lambda2_experiment(order, d, trials, seed)?;
    report.meta_spectrum = (1..=k.min(meta.len()))
        .map(|j| {
            let lambda = spectrum.eigenvalues[j - 1];
            ComparisonRow {
                j,
                lambda,
                below_all_trials: lambda < random.min,
            }
        })
        .collect();
    report.meta_spectrum_tol = spectrum.tol;
    report.random = Some(random);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vertices_force_k4() {
        for seed in 0..20 {
            let g = generate(&RandRegConfig::new(4, 3, seed)).unwrap();
            assert_eq!(g.edges(), SimpleGraph::complete(4).edges());
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(matches!(
            generate(&RandRegConfig::new(5, 3, 0)),
            Err(RandRegError::Config(_))
        ));
        assert!(matches!(
            generate(&RandRegConfig::new(4, 4, 0)),
            Err(RandRegError::Config(_))
        ));
        let tight = RandRegConfig {
            max_retries: 0,
            ..RandRegConfig::new(10, 3, 0)
        };
        assert!(matches!(
            generate(&tight),
            Err(RandRegError::RetriesExhausted(0))
        ));
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = RandRegConfig::new(10, 3, 42);
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        let sw = RandRegConfig {
            sampler: Sampler::StegerWormald,
            ..RandRegConfig::new(60, 9, 7)
        };
        let g = generate(&sw).unwrap();
        assert_eq!(g, generate(&sw).unwrap());
        assert!(is_valid_regular(&g, 9));
    }

    #[test]
    fn two_vertex_comparison_is_skipped() {
        let r = theorem12_comparison(2, 2, 3, 1, 100, &EnumCaps::default()).unwrap();
        assert!(r.skipped.is_some() && r.random.is_none());
    }
}
