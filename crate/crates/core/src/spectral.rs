//! Laplacians, dense symmetric eigensolvers and Rayleigh quotients.
//!
//! Two dense solvers share one [`Spectrum`] output. Cyclic Jacobi is used up
//! to [`JACOBI_MAX`] rows and doubles as a cross-check. Above that the matrix
//! is reduced to tridiagonal form by Householder reflections; eigenvalues come
//! from implicit QL and requested eigenvectors from inverse iteration on the
//! tridiagonal matrix followed by back-transformation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;

/// Convergence tolerance recorded in every spectrum.
pub const TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;
/// Largest order handed to Jacobi by [`Solver::Auto`].
pub const JACOBI_MAX: usize = 64;
/// Largest order accepted by the dense solvers.
pub const DENSE_BUDGET: usize = 4000;
/// Largest order accepted by the approximate bottom-k fallback.
pub const FALLBACK_LIMIT: usize = 20000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("no convergence after {sweeps} sweeps, off-diagonal norm {off_norm:e}")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("zero vector has no Rayleigh quotient")]
    ZeroVector,
    #[error("order {n} exceeds the solver budget {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
}

/// Symmetric matrix in packed lower-triangle row storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.data[packed(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// Builds from full row-major storage, checking symmetry to `tol`.
    pub fn from_rows(rows: &[Vec<f64>], tol: f64) -> Result<Self, SpectralError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SpectralError::Dimension {
                    expected: n,
                    found: r.len(),
                });
            }
            for j in 0..i {
                if (r[j] - rows[j][i]).abs() > tol {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[packed(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[packed(i, j)] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..=i {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    /// `y = M x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let row = &self.data[i * (i + 1) / 2..i * (i + 1) / 2 + i + 1];
            let mut acc = row[i] * x[i];
            for j in 0..i {
                acc += row[j] * x[j];
                y[j] += row[j] * x[i];
            }
            y[i] += acc;
        }
        y
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// `Q = D - A`.
pub fn laplacian(g: &SimpleGraph) -> SymMatrix {
    let mut q = SymMatrix::zeros(g.vertex_count());
    for v in 0..g.vertex_count() {
        q.set(v, v, g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        q.set(u as usize, v as usize, -1.0);
    }
    q
}

/// Oriented incidence matrix, one row per edge: `+1` at the smaller endpoint
/// and `-1` at the larger.
pub fn incidence(g: &SimpleGraph) -> Vec<Vec<f64>> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![0.0; g.vertex_count()];
            row[u as usize] = 1.0;
            row[v as usize] = -1.0;
            row
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Auto,
    Jacobi,
    HouseholderQl,
    SubspaceIteration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vectors {
    None,
    All,
    /// Eigenvectors for the `k` smallest eigenvalues.
    Lowest(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct EigenOptions {
    pub solver: Solver,
    pub vectors: Vectors,
    pub tol: f64,
    pub max_sweeps: usize,
    pub budget: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            solver: Solver::Auto,
            vectors: Vectors::None,
            tol: TOL,
            max_sweeps: MAX_SWEEPS,
            budget: DENSE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvectors aligned with the first `eigenvectors.len()` values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// `‖Qv - λv‖` per returned eigenvector.
    pub residuals: Vec<f64>,
    pub tol: f64,
    /// Spectral norm of the input, `max |λ|`.
    pub norm: f64,
    pub solver: Solver,
    pub approximate: bool,
}

impl Spectrum {
    pub fn max_relative_residual(&self) -> f64 {
        let scale = self.norm.max(f64::MIN_POSITIVE);
        self.residuals.iter().fold(0.0, |m, &r| m.max(r / scale))
    }

    pub fn lambda(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }
}

/// Full spectrum with default options; all eigenvectors when asked.
pub fn eigen(q: &SymMatrix, want_vectors: bool) -> Result<Spectrum, SpectralError> {
    eigen_with(
        q,
        &EigenOptions {
            vectors: if want_vectors {
                Vectors::All
            } else {
                Vectors::None
            },
            ..EigenOptions::default()
        },
    )
}

pub fn eigen_with(q: &SymMatrix, opts: &EigenOptions) -> Result<Spectrum, SpectralError> {
    let n = q.order();
    if n > opts.budget {
        return Err(SpectralError::BudgetExceeded {
            n,
            budget: opts.budget,
        });
    }
    let solver = match opts.solver {
        Solver::Auto if n <= JACOBI_MAX => Solver::Jacobi,
        Solver::Auto | Solver::SubspaceIteration => Solver::HouseholderQl,
        s => s,
    };
    let wanted = match opts.vectors {
        Vectors::None => 0,
        Vectors::All => n,
        Vectors::Lowest(k) => k.min(n),
    };
    let (values, vectors) = match solver {
        Solver::Jacobi => {
            let (values, vectors) = jacobi(q, opts.tol, opts.max_sweeps)?;
            (
                values,
                vectors.map(|mut v| {
                    v.truncate(wanted);
                    v
                }),
            )
        }
        _ => householder_ql(q, wanted)?,
    };
    let vectors = if wanted == 0 { None } else { vectors };
    let norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let residuals = vectors
        .as_ref()
        .map(|vs| {
            vs.iter()
                .zip(&values)
                .map(|(v, &l)| residual(|x| q.apply(x), v, l))
                .collect()
        })
        .unwrap_or_default();
    Ok(Spectrum {
        eigenvalues: values,
        eigenvectors: vectors,
        residuals,
        tol: opts.tol,
        norm,
        solver,
        approximate: false,
    })
}

/// Laplacian spectrum of a simple graph.
pub fn graph_spectrum(g: &SimpleGraph, vectors: Vectors) -> Result<Spectrum, SpectralError> {
    if g.vertex_count() > DENSE_BUDGET {
        return Err(SpectralError::BudgetExceeded {
            n: g.vertex_count(),
            budget: DENSE_BUDGET,
        });
    }
    let mut s = eigen_with(
        &laplacian(g),
        &EigenOptions {
            vectors,
            ..EigenOptions::default()
        },
    )?;
    // Residuals against the sparse operator, independent of the packed copy.
    if let Some(vs) = &s.eigenvectors {
        s.residuals = vs
            .iter()
            .zip(&s.eigenvalues)
            .map(|(v, &l)| residual(|x| laplacian_apply(g, x), v, l))
            .collect();
    }
    Ok(s)
}

fn laplacian_apply(g: &SimpleGraph, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    g.laplacian_apply(x, &mut y);
    y
}

fn residual(apply: impl Fn(&[f64]) -> Vec<f64>, v: &[f64], lambda: f64) -> f64 {
    apply(v)
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Sorts eigenpairs ascending by value.
fn sort_pairs(
    values: Vec<f64>,
    vectors: Option<Vec<Vec<f64>>>,
) -> (Vec<f64>, Option<Vec<Vec<f64>>>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted = order.iter().map(|&i| values[i]).collect();
    let vectors = vectors.map(|vs| order.iter().map(|&i| vs[i].clone()).collect());
    (sorted, vectors)
}

/// Cyclic Jacobi rotations until the off-diagonal norm reaches rounding level.
/// Fails if it is still above `tol` after `max_sweeps` sweeps.
pub fn jacobi(
    q: &SymMatrix,
    tol: f64,
    max_sweeps: usize,
) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>), SpectralError> {
    let n = q.order();
    let mut a = q.to_rows();
    // v[k] is the k-th eigenvector, stored as a row.
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let off = |a: &[Vec<f64>]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };
    let floor = f64::EPSILON * q.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    let mut off_norm = off(&a);
    while off_norm > floor {
        if sweeps == max_sweeps {
            if off_norm <= tol {
                break;
            }
            return Err(SpectralError::NoConvergence { sweeps, off_norm });
        }
        sweeps += 1;
        for p in 0..n {
            for r in p + 1..n {
                let apq = a[p][r];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][r]);
                    a[k][p] = c * akp - s * akq;
                    a[k][r] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[r][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[r][k] = s * apk + c * aqk;
                }
                let (lo, hi) = v.split_at_mut(r);
                let (vp, vq) = (&mut lo[p], &mut hi[0]);
                for k in 0..n {
                    let (x, y) = (vp[k], vq[k]);
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
        let previous = off_norm;
        off_norm = off(&a);
        // Rounding noise: below tol and no longer shrinking.
        if off_norm <= tol && off_norm > 0.5 * previous {
            break;
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    Ok(sort_pairs(values, Some(v)))
}

/// Householder reduction of a packed symmetric matrix to tridiagonal form.
/// Returns the diagonal, the off-diagonal (`e[i]` couples `i` and `i + 1`)
/// and the reflectors `(beta, v)` for rows `k + 1..n`.
struct Tridiagonal {
    d: Vec<f64>,
    e: Vec<f64>,
    reflectors: Vec<(f64, Vec<f64>)>,
}

fn tridiagonalize(q: &SymMatrix) -> Tridiagonal {
    let n = q.order();
    let mut a = q.data.clone();
    let row = |i: usize| i * (i + 1) / 2;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        d[k] = a[row(k) + k];
        let m = n - k - 1;
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[row(i) + k]).collect();
        let sigma = dot(&v, &v).sqrt();
        let tail = dot(&v[1..], &v[1..]);
        if m == 1 || tail == 0.0 {
            e[k] = v[0];
            continue;
        }
        let alpha = if v[0] > 0.0 { -sigma } else { sigma };
        v[0] -= alpha;
        let beta = 2.0 / dot(&v, &v);
        e[k] = alpha;
        // p = beta * A22 v over the trailing block, lower triangle only.
        let p = &mut p[..m];
        p.iter_mut().for_each(|x| *x = 0.0);
        for (ii, i) in (k + 1..n).enumerate() {
            let r = &a[row(i) + k + 1..row(i) + i + 1];
            let vi = v[ii];
            let mut acc = r[ii] * vi;
            for jj in 0..ii {
                acc += r[jj] * v[jj];
                p[jj] += r[jj] * vi;
            }
            p[ii] += acc;
        }
        p.iter_mut().for_each(|x| *x *= beta);
        let half = 0.5 * beta * dot(p, &v);
        let w: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - half * vi).collect();
        for (ii, i) in (k + 1..n).enumerate() {
            let r = &mut a[row(i) + k + 1..row(i) + i + 1];
            let (vi, wi) = (v[ii], w[ii]);
            for jj in 0..=ii {
                r[jj] -= vi * w[jj] + wi * v[jj];
            }
        }
        reflectors.push((k, beta, v));
    }
    if n > 0 {
        d[n - 1] = a[row(n - 1) + n - 1];
    }
    // Reflectors are indexed by step; steps skipped above are identities.
    let mut by_step = vec![(0.0, Vec::new()); n.saturating_sub(1)];
    for (k, beta, v) in reflectors {
        by_step[k] = (beta, v);
    }
    Tridiagonal {
        d,
        e,
        reflectors: by_step,
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-style shifts.
fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>, SpectralError> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(SpectralError::NoConvergence {
                    sweeps: iter,
                    off_norm: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Solves `(T - shift) x = b` for tridiagonal `T` by Gaussian elimination
/// with partial pivoting, overwriting `b`.
fn tridiagonal_solve(d: &[f64], e: &[f64], shift: f64, b: &mut [f64], tiny: f64) {
    let n = d.len();
    if n == 1 {
        let piv = d[0] - shift;
        b[0] /= if piv.abs() < tiny { tiny } else { piv };
        return;
    }
    // Row i holds (diag, upper, upper2) after elimination.
    let mut diag: Vec<f64> = d.iter().map(|x| x - shift).collect();
    let mut up: Vec<f64> = e.to_vec();
    up.push(0.0);
    let mut up2 = vec![0.0; n];
    let mut low: Vec<f64> = e.to_vec();
    for i in 0..n - 1 {
        if low[i].abs() > diag[i].abs() {
            // swap rows i and i + 1
            let (a0, a1, a2) = (diag[i], up[i], up2[i]);
            diag[i] = low[i];
            up[i] = diag[i + 1];
            up2[i] = up[i + 1];
            let m = a0 / diag[i];
            diag[i + 1] = a1 - m * up[i];
            up[i + 1] = a2 - m * up2[i];
            b.swap(i, i + 1);
            b[i + 1] -= m * b[i];
        } else {
            if diag[i].abs() < tiny {
                diag[i] = tiny;
            }
            let m = low[i] / diag[i];
            diag[i + 1] -= m * up[i];
            b[i + 1] -= m * b[i];
        }
        low[i] = 0.0;
    }
    if diag[n - 1].abs() < tiny {
        diag[n - 1] = tiny;
    }
    for i in (0..n).rev() {
        let mut x = b[i];
        if i + 1 < n {
            x -= up[i] * b[i + 1];
        }
        if i + 2 < n {
            x -= up2[i] * b[i + 2];
        }
        b[i] = x / diag[i];
    }
}

fn householder_ql(
    q: &SymMatrix,
    wanted: usize,
) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>), SpectralError> {
    let n = q.order();
    if n == 0 {
        return Ok((Vec::new(), None));
    }
    let t = tridiagonalize(q);
    let values = tridiagonal_eigenvalues(&t.d, &t.e)?;
    if wanted == 0 {
        return Ok((values, None));
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let tiny = f64::EPSILON * scale;
    let cluster = 1e-8 * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7d1a);
    let mut z_all: Vec<Vec<f64>> = Vec::with_capacity(wanted);
    for k in 0..wanted {
        let lambda = values[k];
        let start = (0..k)
            .rev()
            .take_while(|&i| lambda - values[i] < cluster)
            .last()
            .unwrap_or(k);
        let mut z: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut z);
        for _ in 0..4 {
            // Perturb the shift so the factorization stays nonsingular.
            tridiagonal_solve(&t.d, &t.e, lambda + 2.0 * tiny, &mut z, tiny);
            for prev in &z_all[start..k] {
                let c = dot(&z, prev);
                z.iter_mut().zip(prev).for_each(|(a, b)| *a -= c * b);
            }
            normalize(&mut z);
        }
        z_all.push(z);
    }
    // Back-transform: y = H_0 H_1 ... H_{n-2} z.
    let vectors = z_all
        .into_iter()
        .map(|mut y| {
            for (k, (beta, v)) in t.reflectors.iter().enumerate().rev() {
                if v.is_empty() {
                    continue;
                }
                let tail = &mut y[k + 1..];
                let c = beta * dot(v, tail);
                tail.iter_mut().zip(v).for_each(|(a, b)| *a -= c * b);
            }
            normalize(&mut y);
            y
        })
        .collect();
    Ok((values, Some(vectors)))
}

/// Approximate bottom-`k` Laplacian eigenpairs for graphs past the dense
/// budget: block power iteration on `c I - Q` with Rayleigh-Ritz, `c` the
/// Gershgorin bound. Always flagged approximate.
pub fn lowest_eigenpairs_approx(
    g: &SimpleGraph,
    k: usize,
    max_iters: usize,
    seed: u64,
) -> Result<Spectrum, SpectralError> {
    let n = g.vertex_count();
    if n > FALLBACK_LIMIT {
        return Err(SpectralError::BudgetExceeded {
            n,
            budget: FALLBACK_LIMIT,
        });
    }
    let k = k.min(n);
    let block = (k + 4).min(n);
    let c = 2.0 * (0..n).map(|v| g.degree(v)).max().unwrap_or(0) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = (0..block)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    orthonormalize(&mut basis);
    let mut ritz = (Vec::new(), Vec::new());
    for it in 0..max_iters {
        for b in basis.iter_mut() {
            let qb = laplacian_apply(g, b);
            b.iter_mut().zip(&qb).for_each(|(x, y)| *x = c * *x - y);
        }
        orthonormalize(&mut basis);
        if it % 10 == 9 || it + 1 == max_iters {
            ritz = rayleigh_ritz(g, &basis)?;
            let done = ritz.1[..k]
                .iter()
                .zip(&ritz.0)
                .all(|(v, &l)| residual(|x| laplacian_apply(g, x), v, l) <= TOL * c.max(1.0));
            basis = ritz.1.clone();
            if done {
                break;
            }
        }
    }
    let (mut values, mut vectors) = ritz;
    values.truncate(k);
    vectors.truncate(k);
    let residuals = vectors
        .iter()
        .zip(&values)
        .map(|(v, &l)| residual(|x| laplacian_apply(g, x), v, l))
        .collect();
    Ok(Spectrum {
        eigenvalues: values,
        eigenvectors: Some(vectors),
        residuals,
        tol: TOL,
        norm: c,
        solver: Solver::SubspaceIteration,
        approximate: true,
    })
}

fn orthonormalize(basis: &mut [Vec<f64>]) {
    for i in 0..basis.len() {
        for _ in 0..2 {
            for j in 0..i {
                let c = dot(&basis[i], &basis[j]);
                let (lo, hi) = basis.split_at_mut(i);
                hi[0].iter_mut().zip(&lo[j]).for_each(|(a, b)| *a -= c * b);
            }
        }
        normalize(&mut basis[i]);
    }
}

fn rayleigh_ritz(
    g: &SimpleGraph,
    basis: &[Vec<f64>],
) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectralError> {
    let images: Vec<Vec<f64>> = basis.iter().map(|b| laplacian_apply(g, b)).collect();
    let small = SymMatrix::from_fn(basis.len(), |i, j| dot(&basis[i], &images[j]));
    let (values, coeffs) = jacobi(&small, TOL, MAX_SWEEPS)?;
    let coeffs = coeffs.expect("jacobi returns vectors");
    let n = g.vertex_count();
    let vectors = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![0.0; n];
            for (ci, b) in c.iter().zip(basis) {
                v.iter_mut().zip(b).for_each(|(a, x)| *a += ci * x);
            }
            normalize(&mut v);
            v
        })
        .collect();
    Ok((values, vectors))
}

/// `⟨Qv, v⟩ / ‖v‖²`.
pub fn rayleigh(q: &SymMatrix, v: &[f64]) -> Result<f64, SpectralError> {
    if v.len() != q.order() {
        return Err(SpectralError::Dimension {
            expected: q.order(),
            found: v.len(),
        });
    }
    let norm2 = dot(v, v);
    if norm2 == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    Ok(dot(&q.apply(v), v) / norm2)
}

/// Edge form of the Laplacian quotient, `Σ_{uv ∈ E} (f(u) - f(v))² / Σ f(v)²`.
pub fn graph_rayleigh(g: &SimpleGraph, f: &[f64]) -> Result<f64, SpectralError> {
    if f.len() != g.vertex_count() {
        return Err(SpectralError::Dimension {
            expected: g.vertex_count(),
            found: f.len(),
        });
    }
    let norm2 = dot(f, f);
    if norm2 == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    let num: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| (f[u as usize] - f[v as usize]).powi(2))
        .sum();
    Ok(num / norm2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayleighReport {
    pub lambda2: f64,
    pub trials: usize,
    pub min_quotient: f64,
    pub violations: usize,
    /// Quotient of the computed second eigenvector.
    pub v2_quotient: f64,
    pub holds: bool,
}

/// Random mean-zero vectors never beat `λ₂`, and `v₂` attains it.
pub fn rayleigh_principle_check(
    g: &SimpleGraph,
    trials: usize,
    seed: u64,
) -> Result<RayleighReport, SpectralError> {
    let s = graph_spectrum(g, Vectors::Lowest(2))?;
    let lambda2 = s.eigenvalues[1];
    let v2 = &s.eigenvectors.as_ref().expect("requested")[1];
    let v2_quotient = graph_rayleigh(g, v2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut min_quotient = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..trials {
        let mut f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = f.iter().sum::<f64>() / n as f64;
        f.iter_mut().for_each(|x| *x -= mean);
        let Ok(j) = graph_rayleigh(g, &f) else {
            continue;
        };
        min_quotient = min_quotient.min(j);
        if j < lambda2 - TOL * s.norm.max(1.0) {
            violations += 1;
        }
    }
    let attained = (v2_quotient - lambda2).abs() <= TOL * s.norm.max(1.0);
    Ok(RayleighReport {
        lambda2,
        trials,
        min_quotient,
        violations,
        v2_quotient,
        holds: violations == 0 && attained,
    })
}
