//! Conductance, bottleneck vectors and the many-small-eigenvalues machinery.
//!
//! Counting quantities (`|X|`, `|∂X|`, conductance, covariance) are exact
//! rationals. Bottleneck vectors are stored as integer values with a rational
//! squared scale, so their sum, norm and Rayleigh quotient are exact too;
//! floating point enters only through inner products and spectra.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, Rational};
use crate::graph::SimpleGraph;
use crate::metagraph::{MetaGraph, Mode};
use crate::spectral::{self, graph_spectrum, SpectralError, Spectrum, SymMatrix, Vectors};

/// Tolerance for floating-point comparisons in this module.
pub const TOL: f64 = 1e-9;
/// Largest order scanned exhaustively by [`graph_conductance`].
pub const EXACT_MIN_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BottleneckError {
    #[error("subset of size {size} is not proper and nonempty in {n} vertices")]
    ImproperSubset { size: usize, n: usize },
    #[error("subset is over {found} vertices, graph has {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("epsilon {epsilon} too large for k = {k}: (k - 1) * epsilon >= 1")]
    EpsilonTooLarge { k: usize, epsilon: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("vector {index} has norm {norm} < 1")]
    NormTooSmall { index: usize, norm: f64 },
    #[error("j = {j}: bottleneck is degenerate ({size} of {total} vertices)")]
    Degenerate { j: usize, size: usize, total: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A subset of the vertices of a graph of known order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_indices(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn from_predicate(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        Self::from_indices(n, (0..n).filter(|&v| f(v)))
    }

    /// Subset of a graph with at most 64 vertices from a bitmask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            s.bits[0] = if n == 64 {
                mask
            } else {
                mask & ((1u64 << n) - 1)
            };
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range {}", self.n);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn complement(&self) -> Self {
        Self::from_predicate(self.n, |v| !self.contains(v))
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&v| self.contains(v))
    }

    fn check_proper(&self, n: usize) -> Result<(), BottleneckError> {
        if self.n != n {
            return Err(BottleneckError::Dimension {
                expected: n,
                found: self.n,
            });
        }
        let size = self.len();
        if size == 0 || size == n {
            return Err(BottleneckError::ImproperSubset { size, n });
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Edges with exactly one endpoint in `x`.
pub fn boundary(g: &SimpleGraph, x: &VertexSubset) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| x.contains(u as usize) != x.contains(v as usize))
        .count()
}

/// `|∂X| / min(|X|, |V - X|)`.
pub fn conductance(g: &SimpleGraph, x: &VertexSubset) -> Result<Rational, BottleneckError> {
    let n = g.vertex_count();
    x.check_proper(n)?;
    let size = x.len();
    Ok(Rational::new(
        boundary(g, x) as i128,
        size.min(n - size) as i128,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphConductance {
    #[serde(serialize_with = "exact::serialize")]
    pub value: Rational,
    /// False when only a candidate family was scanned.
    pub exact: bool,
    /// Description of the subsets scanned.
    pub family: String,
    #[serde(skip)]
    pub witness: VertexSubset,
}

/// Minimum conductance over all proper subsets when `|V| <= EXACT_MIN_CAP`;
/// otherwise the minimum over the sweep cuts of the second Laplacian
/// eigenvector and the single vertices, flagged as an upper bound.
pub fn graph_conductance(g: &SimpleGraph) -> Result<GraphConductance, BottleneckError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(BottleneckError::ImproperSubset { size: n, n });
    }
    if n <= EXACT_MIN_CAP {
        return Ok(exhaustive_conductance(g));
    }
    let mut best: Option<(Rational, VertexSubset)> = None;
    let mut consider = |x: VertexSubset| {
        let phi = conductance(g, &x).expect("candidates are proper");
        if best.as_ref().is_none_or(|(b, _)| phi < *b) {
            best = Some((phi, x));
        }
    };
    for v in 0..n {
        consider(VertexSubset::from_indices(n, [v]));
    }
    let family = if n <= spectral::DENSE_BUDGET {
        let s = graph_spectrum(g, Vectors::Lowest(2))?;
        let fiedler = &s.eigenvectors.as_ref().expect("requested")[1];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| fiedler[a].total_cmp(&fiedler[b]).then(a.cmp(&b)));
        let mut x = VertexSubset::empty(n);
        for &v in &order[..n - 1] {
            x.insert(v);
            consider(x.clone());
        }
        "fiedler-sweep+singletons"
    } else {
        "singletons"
    };
    let (value, witness) = best.expect("n >= 2 gives candidates");
    Ok(GraphConductance {
        value,
        exact: false,
        family: family.into(),
        witness,
    })
}

/// Gray-code scan of every proper subset, updating `|∂X|` per flip.
fn exhaustive_conductance(g: &SimpleGraph) -> GraphConductance {
    let n = g.vertex_count();
    let nbr_masks: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut mask = 0u64;
    let mut bnd: i64 = 0;
    let mut best: Option<(i64, i64, u64)> = None;
    for step in 1u64..1 << n {
        let v = step.trailing_zeros() as usize;
        let inside = (nbr_masks[v] & mask).count_ones() as i64;
        let deg = nbr_masks[v].count_ones() as i64;
        if mask >> v & 1 == 1 {
            mask &= !(1 << v);
            bnd -= deg - 2 * inside;
        } else {
            bnd += deg - 2 * inside;
            mask |= 1 << v;
        }
        let size = mask.count_ones() as i64;
        if size as usize == n {
            continue;
        }
        let denom = size.min(n as i64 - size);
        let better = best.is_none_or(|(b, d, m)| {
            let (lhs, rhs) = (bnd * d, b * denom);
            lhs < rhs || (lhs == rhs && mask < m)
        });
        if better {
            best = Some((bnd, denom, mask));
        }
    }
    let (b, d, m) = best.expect("n >= 2");
    GraphConductance {
        value: Rational::new(b as i128, d as i128),
        exact: true,
        family: "all-proper-subsets".into(),
        witness: VertexSubset::from_mask(n, m),
    }
}

/// The two-valued unit bottleneck vector of `X`: `-|Y| s` on `X` and `|X| s`
/// on `Y = V - X`, with `s² = 1 / (|X| |Y| |V|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BottleneckVector {
    /// Unscaled integer entries.
    pub values: Vec<i64>,
    /// `s²`.
    pub scale2: Rational,
    pub size: usize,
    pub complement_size: usize,
}

impl BottleneckVector {
    pub fn to_f64(&self) -> Vec<f64> {
        let s = exact::to_f64(&self.scale2).sqrt();
        self.values.iter().map(|&v| v as f64 * s).collect()
    }

    /// `Σ f / s`, exactly.
    pub fn unscaled_sum(&self) -> i128 {
        self.values.iter().map(|&v| v as i128).sum()
    }

    /// `‖f‖²`, exactly.
    pub fn norm2(&self) -> Rational {
        let raw: i128 = self.values.iter().map(|&v| (v as i128) * (v as i128)).sum();
        self.scale2 * raw
    }

    /// `J(G, f)`, exactly.
    pub fn rayleigh(&self, g: &SimpleGraph) -> Rational {
        let num: i128 = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let d = self.values[u as usize] as i128 - self.values[v as usize] as i128;
                d * d
            })
            .sum();
        self.scale2 * num / self.norm2()
    }
}

pub fn bottleneck_vector(
    g: &SimpleGraph,
    x: &VertexSubset,
) -> Result<BottleneckVector, BottleneckError> {
    let n = g.vertex_count();
    x.check_proper(n)?;
    Ok(subset_vector(x))
}

fn subset_vector(x: &VertexSubset) -> BottleneckVector {
    let n = x.universe();
    let size = x.len();
    let rest = n - size;
    BottleneckVector {
        values: (0..n)
            .map(|v| {
                if x.contains(v) {
                    -(rest as i64)
                } else {
                    size as i64
                }
            })
            .collect(),
        scale2: Rational::new(1, (size * rest * n) as i128),
        size,
        complement_size: rest,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerCertificate {
    pub lambda2: f64,
    #[serde(serialize_with = "exact::serialize")]
    pub conductance: Rational,
    pub bound: f64,
    pub holds: bool,
}

pub fn cheeger_certificate(
    g: &SimpleGraph,
    x: &VertexSubset,
) -> Result<CheegerCertificate, BottleneckError> {
    let s = graph_spectrum(g, Vectors::None)?;
    cheeger_with_lambda2(g, x, s.eigenvalues[1])
}

/// As [`cheeger_certificate`] with a precomputed `λ₂`.
pub fn cheeger_with_lambda2(
    g: &SimpleGraph,
    x: &VertexSubset,
    lambda2: f64,
) -> Result<CheegerCertificate, BottleneckError> {
    let phi = conductance(g, x)?;
    let bound = 2.0 * exact::to_f64(&phi);
    Ok(CheegerCertificate {
        lambda2,
        conductance: phi,
        bound,
        holds: lambda2 <= bound + TOL,
    })
}

/// `|X₁ ∩ X₂| / |V| - (|X₁| / |V|)(|X₂| / |V|)`.
pub fn covariance(
    n: usize,
    x1: &VertexSubset,
    x2: &VertexSubset,
) -> Result<Rational, BottleneckError> {
    x1.check_proper(n)?;
    x2.check_proper(n)?;
    Ok(covariance_unchecked(x1, x2))
}

fn covariance_unchecked(x1: &VertexSubset, x2: &VertexSubset) -> Rational {
    let v = x1.universe() as i128;
    let both = x1.intersection_len(x2) as i128;
    Rational::new(both, v) - Rational::new(x1.len() as i128 * x2.len() as i128, v * v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceReport {
    #[serde(serialize_with = "exact::serialize")]
    pub covariance: Rational,
    /// Direct `⟨f₁, f₂⟩`.
    pub inner_product: f64,
    /// `sqrt(|V|⁴ / (|X₁||Y₁||X₂||Y₂|))`.
    pub scale: f64,
    /// `covariance · scale`.
    pub formula: f64,
    pub agree: bool,
}

/// Direct inner product of two bottleneck vectors against the closed form
/// `Cov(X₁, X₂) · sqrt(|V|⁴ / (|X₁||Y₁||X₂||Y₂|))`.
pub fn lemma22_check(
    n: usize,
    x1: &VertexSubset,
    x2: &VertexSubset,
) -> Result<CovarianceReport, BottleneckError> {
    let cov = covariance(n, x1, x2)?;
    let (f1, f2) = (subset_vector(x1).to_f64(), subset_vector(x2).to_f64());
    let inner: f64 = f1.iter().zip(&f2).map(|(a, b)| a * b).sum();
    let sizes = [x1.len(), n - x1.len(), x2.len(), n - x2.len()];
    let denom: f64 = sizes.iter().map(|&s| s as f64).product();
    let scale = ((n as f64).powi(4) / denom).sqrt();
    let formula = exact::to_f64(&cov) * scale;
    Ok(CovarianceReport {
        covariance: cov,
        inner_product: inner,
        scale,
        formula,
        agree: (inner - formula).abs() <= TOL,
    })
}

/// `kΛ / (1 - (k - 1)ε)`.
pub fn theorem23_bound(k: usize, epsilon: f64, lambda: f64) -> Result<f64, BottleneckError> {
    if k == 0 {
        return Err(BottleneckError::HypothesisViolation(
            "k must be at least 1".into(),
        ));
    }
    if !(epsilon >= 0.0) {
        return Err(BottleneckError::HypothesisViolation(format!(
            "epsilon {epsilon} must be nonnegative"
        )));
    }
    let slack = 1.0 - (k - 1) as f64 * epsilon;
    if slack <= 0.0 {
        return Err(BottleneckError::EpsilonTooLarge { k, epsilon });
    }
    Ok(k as f64 * lambda / slack)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem23Report {
    pub k: usize,
    pub epsilon: f64,
    pub lambda: f64,
    pub bound: f64,
    /// `k`-th smallest eigenvalue of the matrix.
    pub lambda_k: f64,
    pub max_quotient: f64,
    pub max_normalized_inner: f64,
    pub holds: bool,
}

/// Checks the hypotheses on `w` and then `λ_k(M) <= kΛ / (1 - (k - 1)ε)`.
pub fn theorem23_verify(
    m: &SymMatrix,
    w: &[Vec<f64>],
    epsilon: f64,
    lambda: f64,
) -> Result<Theorem23Report, BottleneckError> {
    let k = w.len();
    let bound = theorem23_bound(k, epsilon, lambda)?;
    let dim = m.order();
    if k > dim {
        return Err(BottleneckError::HypothesisViolation(format!(
            "{k} vectors in dimension {dim}"
        )));
    }
    let mut max_quotient = f64::NEG_INFINITY;
    for (i, v) in w.iter().enumerate() {
        if v.len() != dim {
            return Err(BottleneckError::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
        let q = spectral::rayleigh(m, v)?;
        if q > lambda + TOL {
            return Err(BottleneckError::HypothesisViolation(format!(
                "vector {i} has Rayleigh quotient {q} > {lambda}"
            )));
        }
        max_quotient = max_quotient.max(q);
    }
    let norms: Vec<f64> = w.iter().map(|v| dot(v, v).sqrt()).collect();
    let mut max_inner: f64 = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            let r = dot(&w[i], &w[j]).abs() / (norms[i] * norms[j]);
            if r > epsilon + TOL {
                return Err(BottleneckError::HypothesisViolation(format!(
                    "vectors {i}, {j} have normalized inner product {r} > {epsilon}"
                )));
            }
            max_inner = max_inner.max(r);
        }
    }
    let s = spectral::eigen(m, false)?;
    if s.eigenvalues[0] < -TOL * s.norm.max(1.0) {
        return Err(BottleneckError::HypothesisViolation(format!(
            "matrix is not positive semidefinite, smallest eigenvalue {}",
            s.eigenvalues[0]
        )));
    }
    let lambda_k = s.eigenvalues[k - 1];
    Ok(Theorem23Report {
        k,
        epsilon,
        lambda,
        bound,
        lambda_k,
        max_quotient,
        max_normalized_inner: max_inner,
        holds: lambda_k <= bound + TOL,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClaimWitness {
    pub i: usize,
    pub j: usize,
    /// `|⟨a_i, a_j⟩|`.
    pub value: f64,
    /// `1 / (k - 1)`.
    pub threshold: f64,
    pub holds: bool,
}

/// For `k` vectors of norm at least 1 in dimension `k - 1`, the pair with the
/// largest `|⟨a_i, a_j⟩|`, which must reach `1 / (k - 1)`.
pub fn claim_check(a: &[Vec<f64>]) -> Result<ClaimWitness, BottleneckError> {
    let k = a.len();
    if k < 2 {
        return Err(BottleneckError::HypothesisViolation(format!(
            "need at least two vectors, got {k}"
        )));
    }
    for (index, v) in a.iter().enumerate() {
        if v.len() != k - 1 {
            return Err(BottleneckError::Dimension {
                expected: k - 1,
                found: v.len(),
            });
        }
        let norm = dot(v, v).sqrt();
        if norm < 1.0 - TOL {
            return Err(BottleneckError::NormTooSmall { index, norm });
        }
    }
    let mut best = (0, 1, f64::NEG_INFINITY);
    for i in 0..k {
        for j in i + 1..k {
            let value = dot(&a[i], &a[j]).abs();
            if value > best.2 {
                best = (i, j, value);
            }
        }
    }
    let threshold = 1.0 / (k - 1) as f64;
    Ok(ClaimWitness {
        i: best.0,
        j: best.1,
        value: best.2,
        threshold,
        holds: best.2 >= threshold - TOL,
    })
}

/// The j-cycle bottleneck of a meta-graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BottleneckReport {
    pub descriptor: String,
    pub mode: Mode,
    pub order: usize,
    pub j: usize,
    pub size: usize,
    pub complement_size: usize,
    pub boundary: usize,
    #[serde(serialize_with = "exact::serialize")]
    pub conductance: Rational,
    #[serde(serialize_with = "exact::serialize")]
    pub rayleigh: Rational,
    /// `|X| / |V|`.
    pub density: f64,
    /// Poisson limit `1 - exp(-2^j / (2j))`.
    pub poisson_density: f64,
    /// Largest number of boundary edges at one vertex of `X`.
    pub max_vertex_boundary: usize,
    /// `8j` in labelled mode; absent in unlabelled mode, where only the
    /// measured constant is reported.
    pub vertex_bound: Option<usize>,
    /// `max_vertex_boundary / j`.
    pub measured_constant: f64,
    pub vertex_bound_holds: bool,
    #[serde(skip)]
    pub subset: VertexSubset,
    #[serde(skip)]
    pub vector: BottleneckVector,
}

pub fn poisson_density(j: usize) -> f64 {
    let lambda = 2f64.powi(j as i32) / (2.0 * j as f64);
    1.0 - (-lambda).exp()
}

pub fn jcycle_subset(meta: &MetaGraph, j: usize) -> VertexSubset {
    VertexSubset::from_predicate(meta.len(), |i| meta.member(i).has_j_cycle(j))
}

pub fn jcycle_bottleneck(meta: &MetaGraph, j: usize) -> Result<BottleneckReport, BottleneckError> {
    let total = meta.len();
    if j == 0 {
        return Err(BottleneckError::HypothesisViolation(
            "j must be at least 1".into(),
        ));
    }
    let x = jcycle_subset(meta, j);
    let size = x.len();
    if size == 0 || size == total {
        return Err(BottleneckError::Degenerate { j, size, total });
    }
    let g = meta.graph();
    let max_vertex_boundary = x
        .iter()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| !x.contains(w as usize))
                .count()
        })
        .max()
        .unwrap_or(0);
    let vertex_bound = (meta.mode() == Mode::Labelled).then_some(8 * j);
    let vector = subset_vector(&x);
    Ok(BottleneckReport {
        descriptor: format!("has {j}-cycle"),
        mode: meta.mode(),
        order: meta.order(),
        j,
        size,
        complement_size: total - size,
        boundary: boundary(g, &x),
        conductance: conductance(g, &x)?,
        rayleigh: vector.rayleigh(g),
        density: size as f64 / total as f64,
        poisson_density: poisson_density(j),
        max_vertex_boundary,
        vertex_bound,
        measured_constant: max_vertex_boundary as f64 / j as f64,
        vertex_bound_holds: vertex_bound.is_none_or(|b| max_vertex_boundary <= b),
        subset: x,
        vector,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairStat {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "exact::serialize")]
    pub covariance: Rational,
    pub inner_product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem11Report {
    pub mode: Mode,
    pub order: usize,
    pub k: usize,
    pub bottlenecks: Vec<BottleneckReport>,
    /// `max_j J(G, f_j)`.
    pub lambda_max_quotient: f64,
    pub pairs: Vec<PairStat>,
    /// Largest `|⟨f_i, f_j⟩|`; the vectors are unit.
    pub epsilon: f64,
    pub bound: f64,
    pub lambda_k: f64,
    pub holds: bool,
    /// The same bound with the constant vector added as a `(k + 1)`-th
    /// test vector, against `λ_{k+1}`; absent when `kε >= 1`.
    pub bound_next: Option<f64>,
    pub lambda_next: Option<f64>,
    pub holds_next: bool,
    /// `λ₂ <= 2φ(X_1)`.
    pub cheeger: CheegerCertificate,
    pub spectrum_tol: f64,
}

/// Bottleneck vectors of the j-cycle sets for `j = 1..=k`, fed to the
/// [`theorem23_bound`] and compared with the measured spectrum.
pub fn theorem11_pipeline(
    meta: &MetaGraph,
    k: usize,
    spectrum: Option<&Spectrum>,
) -> Result<Theorem11Report, BottleneckError> {
    if k == 0 {
        return Err(BottleneckError::HypothesisViolation(
            "k must be at least 1".into(),
        ));
    }
    let bottlenecks = (1..=k)
        .map(|j| jcycle_bottleneck(meta, j))
        .collect::<Result<Vec<_>, _>>()?;
    let owned;
    let spectrum = match spectrum {
        Some(s) => s,
        None => {
            owned = graph_spectrum(meta.graph(), Vectors::None)?;
            &owned
        }
    };
    let vectors: Vec<Vec<f64>> = bottlenecks.iter().map(|b| b.vector.to_f64()).collect();
    let lambda = bottlenecks
        .iter()
        .map(|b| exact::to_f64(&b.rayleigh))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut pairs = Vec::new();
    let mut epsilon: f64 = 0.0;
    for a in 0..k {
        for b in a + 1..k {
            let inner = dot(&vectors[a], &vectors[b]);
            epsilon = epsilon.max(inner.abs());
            pairs.push(PairStat {
                i: a + 1,
                j: b + 1,
                covariance: covariance_unchecked(&bottlenecks[a].subset, &bottlenecks[b].subset),
                inner_product: inner,
            });
        }
    }
    let bound = theorem23_bound(k, epsilon, lambda)?;
    let lambda_k = spectrum.eigenvalues[k - 1];
    let bound_next = theorem23_bound(k + 1, epsilon, lambda).ok();
    let lambda_next = spectrum.eigenvalues.get(k).copied();
    let holds_next = match (bound_next, lambda_next) {
        (Some(b), Some(l)) => l <= b + TOL,
        _ => true,
    };
    let cheeger = cheeger_with_lambda2(
        meta.graph(),
        &bottlenecks[0].subset,
        spectrum.eigenvalues[1],
    )?;
    Ok(Theorem11Report {
        mode: meta.mode(),
        order: meta.order(),
        k,
        lambda_max_quotient: lambda,
        pairs,
        epsilon,
        bound,
        lambda_k,
        holds: lambda_k <= bound + TOL,
        bound_next,
        lambda_next,
        holds_next,
        cheeger,
        spectrum_tol: spectrum.tol,
        bottlenecks,
    })
}

/// Random proper nonempty subset, each vertex kept with probability `p`.
pub fn random_subset(n: usize, p: f64, rng: &mut impl Rng) -> VertexSubset {
    loop {
        let x = VertexSubset::from_predicate(n, |_| rng.gen_bool(p));
        if !x.is_empty() && x.len() < n {
            return x;
        }
    }
}

/// Seeded RNG for randomized checks.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
