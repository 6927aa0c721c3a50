mod common;

use std::f64::consts::PI;

use cubic_meta::bottleneck::*;
use cubic_meta::cubic::EnumCaps;
use cubic_meta::exact::{to_f64, Rational};
use cubic_meta::spectral::{graph_spectrum, SymMatrix, Vectors};
use cubic_meta::whitehead::labelled_neighbors;
use cubic_meta::{MetaGraph, Mode, SimpleGraph};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use common::*;

/// Brute-force boundary and conductance from the edge list and a bitmask.
fn brute_phi(g: &SimpleGraph, mask: u64) -> (usize, Rational) {
    let n = g.vertex_count();
    let inside = |v: u32| mask >> v & 1 == 1;
    let b = g
        .edges()
        .iter()
        .filter(|&&(u, v)| inside(u) != inside(v))
        .count();
    let s = mask.count_ones() as usize;
    (b, Rational::new(b as i128, s.min(n - s) as i128))
}

fn test_graphs() -> Vec<SimpleGraph> {
    let caps = EnumCaps::default();
    let mut out = vec![
        MetaGraph::build(4, Mode::Unlabelled, &caps)
            .unwrap()
            .graph()
            .clone(),
        MetaGraph::build(6, Mode::Unlabelled, &caps)
            .unwrap()
            .graph()
            .clone(),
        MetaGraph::build(4, Mode::Labelled, &caps)
            .unwrap()
            .graph()
            .clone(),
        SimpleGraph::complete(6),
    ];
    let mut seed = 404;
    while out.len() < 20 {
        let n = 6 + out.len() % 10;
        out.push(random_connected_graph(n, 0.3, &mut seed));
    }
    out
}

#[test]
fn exhaustive_conductance_matches_brute_force() {
    let mut seed = 8;
    for t in 0..40 {
        let n = 2 + t % 11;
        let g = random_connected_graph(n, 0.3, &mut seed);
        let best = (1u64..(1 << n) - 1)
            .map(|m| brute_phi(&g, m).1)
            .min()
            .unwrap();
        let phi = graph_conductance(&g).unwrap();
        assert!(phi.exact);
        assert_eq!(phi.value, best);
        assert_eq!(conductance(&g, &phi.witness).unwrap(), best);
        // Cheeger at the argmin.
        let l2 = graph_spectrum(&g, Vectors::None).unwrap().eigenvalues[1];
        assert!(to_f64(&phi.value) >= l2 / 2.0 - TOL);
    }
}

#[test]
fn conductance_upper_bound_past_cap() {
    let mut seed = 2;
    let g = random_connected_graph(30, 0.2, &mut seed);
    let phi = graph_conductance(&g).unwrap();
    assert!(!phi.exact);
    assert_eq!(conductance(&g, &phi.witness).unwrap(), phi.value);
}

#[test]
fn cheeger_on_every_subset() {
    let caps = EnumCaps::default();
    let mut graphs: Vec<SimpleGraph> = [
        (2, Mode::Unlabelled),
        (4, Mode::Unlabelled),
        (2, Mode::Labelled),
    ]
    .iter()
    .map(|&(n, m)| MetaGraph::build(n, m, &caps).unwrap().graph().clone())
    .collect();
    let mut seed = 77;
    for t in 0..20 {
        graphs.push(random_simple_graph(3 + t % 10, 0.4, &mut seed));
    }
    for g in &graphs {
        let n = g.vertex_count();
        let l2 = graph_spectrum(g, Vectors::None).unwrap().eigenvalues[1];
        for mask in 1u64..(1 << n) - 1 {
            let x = VertexSubset::from_mask(n, mask);
            let c = cheeger_with_lambda2(g, &x, l2).unwrap();
            assert!(c.holds, "{x:?}: {c:?}");
            assert_eq!(c.conductance, brute_phi(g, mask).1);
        }
    }
}

#[test]
fn bottleneck_vector_exact_identities() {
    let mut r = rng(9);
    for g in test_graphs() {
        let n = g.vertex_count();
        for _ in 0..50 {
            let x = random_subset(n, r.gen_range(0.1..0.9), &mut r);
            let f = bottleneck_vector(&g, &x).unwrap();
            assert_eq!(f.unscaled_sum(), 0);
            assert_eq!(f.norm2(), Rational::from_integer(1));
            let (xs, ys) = (x.len() as i128, (n - x.len()) as i128);
            let j = f.rayleigh(&g);
            assert_eq!(
                j,
                Rational::new(boundary(&g, &x) as i128 * n as i128, xs * ys)
            );
            let phi = conductance(&g, &x).unwrap();
            assert!(j <= phi * 2);
            if xs == ys {
                assert_eq!(j, phi * 2);
            }
            let quotient = cubic_meta::spectral::graph_rayleigh(&g, &f.to_f64()).unwrap();
            assert!((quotient - to_f64(&j)).abs() <= 1e-9);
        }
    }
}

#[test]
fn covariance_identities() {
    let n = 10;
    let x = VertexSubset::from_indices(n, [0, 1, 2, 3]);
    let p = Rational::new(4, 10);
    assert_eq!(covariance(n, &x, &x).unwrap(), p - p * p);
    assert_eq!(
        covariance(n, &x, &x.complement()).unwrap(),
        -(p * (Rational::from_integer(1) - p))
    );
    let a = VertexSubset::from_indices(n, [0, 1, 2, 3, 4]);
    let b = VertexSubset::from_indices(n, [0, 5]);
    assert_eq!(covariance(n, &a, &b).unwrap(), Rational::from_integer(0));
    assert_eq!(covariance(n, &a, &b), covariance(n, &b, &a));
    assert!(covariance(n, &a, &VertexSubset::empty(n)).is_err());
    let same = lemma22_check(n, &x, &x).unwrap();
    assert!((same.inner_product - 1.0).abs() < 1e-12 && (same.formula - 1.0).abs() < 1e-12);
    let opp = lemma22_check(n, &x, &x.complement()).unwrap();
    assert!((opp.inner_product + 1.0).abs() < 1e-12 && (opp.formula + 1.0).abs() < 1e-12);
}

#[test]
fn inner_product_formula_random_pairs() {
    let mut r = rng(22);
    for g in test_graphs() {
        let n = g.vertex_count();
        for _ in 0..1000 {
            let x1 = random_subset(n, r.gen_range(0.05..0.95), &mut r);
            let x2 = random_subset(n, r.gen_range(0.05..0.95), &mut r);
            let c = lemma22_check(n, &x1, &x2).unwrap();
            assert!(
                c.agree && (c.inner_product - c.formula).abs() <= 1e-9,
                "{c:?}"
            );
        }
    }
}

/// Random orthonormal basis of `R^d` by Gram-Schmidt on Gaussian vectors.
fn orthonormal(d: usize, r: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(r)).collect();
        for b in &basis {
            let c: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

#[test]
fn eigenvalue_bound_on_planted_constructions() {
    let mut r = rng(23);
    let mut checked = 0;
    while checked < 200 {
        let d = r.gen_range(3..12);
        let k = r.gen_range(1..d);
        let q = orthonormal(d, &mut r);
        let mut values: Vec<f64> = (0..d).map(|_| r.gen_range(0.0..10.0)).collect();
        values.sort_by(f64::total_cmp);
        let m = SymMatrix::from_fn(d, |i, j| {
            (0..d).map(|t| values[t] * q[t][i] * q[t][j]).sum()
        });
        // w_i: eigenvector i plus a small perturbation.
        let w: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                q[i].iter()
                    .map(|x| x + 0.05 * r.gen_range(-1.0..1.0))
                    .collect()
            })
            .collect();
        let lambda = w
            .iter()
            .map(|v| cubic_meta::spectral::rayleigh(&m, v).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        let norms: Vec<f64> = w
            .iter()
            .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        let mut eps: f64 = 0.0;
        for i in 0..k {
            for j in i + 1..k {
                let dot: f64 = w[i].iter().zip(&w[j]).map(|(a, b)| a * b).sum();
                eps = eps.max(dot.abs() / (norms[i] * norms[j]));
            }
        }
        if (k - 1) as f64 * eps >= 1.0 {
            continue;
        }
        let rep = theorem23_verify(&m, &w, eps, lambda).unwrap();
        assert!(rep.holds, "{rep:?}");
        checked += 1;
    }
}

#[test]
fn eigenvalue_bound_with_exact_eigenvectors() {
    let mut r = rng(5);
    for _ in 0..50 {
        let d = r.gen_range(2..10);
        let q = orthonormal(d, &mut r);
        let mut values: Vec<f64> = (0..d).map(|_| r.gen_range(0.0..5.0)).collect();
        values.sort_by(f64::total_cmp);
        let m = SymMatrix::from_fn(d, |i, j| {
            (0..d).map(|t| values[t] * q[t][i] * q[t][j]).sum()
        });
        let k = r.gen_range(1..=d);
        let rep = theorem23_verify(&m, &q[..k], 1e-12, values[k - 1]).unwrap();
        assert!(rep.holds && rep.lambda_k <= k as f64 * values[k - 1] + 1e-9);
    }
}

#[test]
fn claim_on_random_families() {
    let mut r = rng(6);
    for k in 2..=8 {
        for _ in 0..2000 {
            let a: Vec<Vec<f64>> = (0..k)
                .map(|_| {
                    let v: Vec<f64> = (0..k - 1).map(|_| StandardNormal.sample(&mut r)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    let scale = 1.0 + r.gen_range(0.0..2.0);
                    v.into_iter().map(|x| x * scale / norm).collect()
                })
                .collect();
            let w = claim_check(&a).unwrap();
            assert!(w.holds, "k={k} {w:?}");
        }
    }
    let tri: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / 3.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    let w = claim_check(&tri).unwrap();
    assert!((w.value - 0.5).abs() <= 1e-12);
}

#[test]
fn jcycle_boundary_bounds_in_labelled_meta_graphs() {
    let caps = EnumCaps::default();
    for n in [2, 4, 6] {
        let meta = MetaGraph::build(n, Mode::Labelled, &caps).unwrap();
        for j in 1..=n {
            let Ok(rep) = jcycle_bottleneck(&meta, j) else {
                continue;
            };
            assert!(
                rep.vertex_bound_holds,
                "n={n} j={j}: {}",
                rep.max_vertex_boundary
            );
            assert!(rep.boundary <= 8 * j * rep.size);
            // Recount each vertex's escaping moves from the move generator.
            let mut total = 0;
            for x in rep.subset.iter() {
                let escaping = labelled_neighbors(meta.member(x))
                    .into_iter()
                    .filter(|h| !h.decode().has_j_cycle(j))
                    .count();
                assert!(escaping <= 8 * j);
                total += escaping;
            }
            assert_eq!(total, rep.boundary);
        }
    }
}

#[test]
fn jcycle_reports_in_unlabelled_mode() {
    let caps = EnumCaps::default();
    let meta = MetaGraph::build(2, Mode::Unlabelled, &caps).unwrap();
    let r = jcycle_bottleneck(&meta, 1).unwrap();
    assert_eq!(
        (r.size, r.boundary, r.conductance),
        (1, 1, Rational::from_integer(1))
    );
    assert_eq!(r.vertex_bound, None);
    let meta = MetaGraph::build(8, Mode::Unlabelled, &caps).unwrap();
    for j in 1..=8 {
        if let Ok(r) = jcycle_bottleneck(&meta, j) {
            assert!(r.measured_constant.is_finite());
            assert_eq!(r.boundary, boundary(meta.graph(), &r.subset));
        }
    }
    assert!((poisson_density(1) - (1.0 - (-1f64).exp())).abs() < 1e-15);
}

#[test]
fn jcycle_pipeline_reports() {
    let caps = EnumCaps::default();
    for (n, mode, k) in [
        (6, Mode::Unlabelled, 2),
        (4, Mode::Labelled, 2),
        (8, Mode::Unlabelled, 3),
    ] {
        let meta = MetaGraph::build(n, mode, &caps).unwrap();
        let rep = theorem11_pipeline(&meta, k, None).unwrap();
        assert!(rep.holds && rep.holds_next && rep.cheeger.holds, "{rep:?}");
        assert_eq!(rep.pairs.len(), k * (k - 1) / 2);
        for p in &rep.pairs {
            let direct = lemma22_check(
                meta.len(),
                &rep.bottlenecks[p.i - 1].subset,
                &rep.bottlenecks[p.j - 1].subset,
            )
            .unwrap();
            assert_eq!(direct.covariance, p.covariance);
            assert!((direct.inner_product - p.inner_product).abs() < 1e-12);
        }
    }
    let one = theorem11_pipeline(
        &MetaGraph::build(2, Mode::Unlabelled, &caps).unwrap(),
        1,
        None,
    )
    .unwrap();
    assert_eq!(one.bound, one.lambda_max_quotient);
    assert!((one.lambda_next.unwrap() - 2.0).abs() < 1e-12);
}
