//! Optimal-transport cost between empirical measures: exact monotone
//! coupling in 1D, transportation simplex for general weighted clouds, and
//! entropic (Sinkhorn) approximation with log-domain stabilization.

mod simplex;

use crate::error::{Error, Result};
use crate::measures::EmpiricalMeasure;

/// Default cap on the coupling size of the exact solver.
pub const EXACT_SIZE_CAP: usize = 4_000_000;

/// Crate-internal access to the transportation simplex for other ground
/// costs (the flat distance truncates at 2). Returns `(cost, min reduced
/// cost)`.
pub(crate) fn simplex_solve<C: Fn(usize, usize) -> f64>(
    supply: &[f64],
    demand: &[f64],
    cost: C,
) -> Result<(f64, f64)> {
    let sol = simplex::solve(supply, demand, cost)?;
    Ok((sol.cost, sol.min_reduced_cost))
}

/// A (possibly approximate) coupling between two empirical measures.
#[derive(Debug, Clone)]
pub struct TransportPlan {
    /// Sparse coupling entries `(i, j, mass)`.
    entries: Vec<(usize, usize, f64)>,
    shape: (usize, usize),
    /// `sum_ij coupling_ij |x_i - y_j|^p`.
    pub cost: f64,
    /// `cost^{1/p}`: the Wasserstein-p distance of the plan.
    pub distance: f64,
    /// L1 gap between plan marginals and the prescribed weights.
    pub marginal_residuals: (f64, f64),
    pub converged: bool,
}

impl TransportPlan {
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let (m, n) = self.shape;
        let mut dense = vec![vec![0.0; n]; m];
        for &(i, j, w) in &self.entries {
            dense[i][j] += w;
        }
        dense
    }

    /// CSV rows `i,j,mass` for debugging.
    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: std::io::Error::other(e),
        })?;
        for &(i, j, mass) in &self.entries {
            w.write_record([i.to_string(), j.to_string(), format!("{mass}")])
                .map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    source: std::io::Error::other(e),
                })?;
        }
        w.flush().map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Ok(())
    }

    fn residuals(entries: &[(usize, usize, f64)], a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> (f64, f64) {
        let mut row = vec![0.0; a.len()];
        let mut col = vec![0.0; b.len()];
        for &(i, j, w) in entries {
            row[i] += w;
            col[j] += w;
        }
        let ra: f64 = row.iter().zip(a.weights()).map(|(r, w)| (r - w).abs()).sum();
        let rb: f64 = col.iter().zip(b.weights()).map(|(c, w)| (c - w).abs()).sum();
        (ra, rb)
    }
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) {
        return Err(Error::domain("p", p, "p >= 1"));
    }
    Ok(())
}

/// Globally optimal coupling for the discrete `W_p^p` problem.
///
/// 1D clouds use the monotone (sorted) coupling, which is optimal for any
/// convex cost; general clouds go through the transportation simplex with
/// optimality certified by the final reduced-cost scan.
pub fn exact_ot_cost(a: &EmpiricalMeasure, b: &EmpiricalMeasure, p: f64) -> Result<TransportPlan> {
    check_p(p)?;
    if a.dim() != b.dim() {
        return Err(Error::Precondition("dimension mismatch between clouds".into()));
    }
    if a.dim() == 1 {
        return exact_1d(a, b, p);
    }
    let size = a.len() * b.len();
    if size > EXACT_SIZE_CAP {
        return Err(Error::Resource {
            size,
            cap: EXACT_SIZE_CAP,
            hint: "use the entropic (Sinkhorn) solver for large clouds",
        });
    }
    let cost_mat: Vec<f64> = a
        .points()
        .iter()
        .flat_map(|x| b.points().iter().map(move |y| dist(x, y).powf(p)))
        .collect();
    let n = b.len();
    let sol = simplex::solve(a.weights(), b.weights(), |i, j| cost_mat[i * n + j])?;
    let entries = sol.flows;
    let marginal_residuals = TransportPlan::residuals(&entries, a, b);
    Ok(TransportPlan {
        shape: (a.len(), b.len()),
        cost: sol.cost,
        distance: sol.cost.max(0.0).powf(1.0 / p),
        marginal_residuals,
        converged: true,
        entries,
    })
}

/// Monotone coupling of sorted 1D atoms by merging cumulative weights.
fn exact_1d(a: &EmpiricalMeasure, b: &EmpiricalMeasure, p: f64) -> Result<TransportPlan> {
    let mut xa: Vec<(usize, f64, f64)> = a
        .points()
        .iter()
        .zip(a.weights())
        .enumerate()
        .map(|(i, (pt, &w))| (i, pt[0], w))
        .collect();
    let mut xb: Vec<(usize, f64, f64)> = b
        .points()
        .iter()
        .zip(b.weights())
        .enumerate()
        .map(|(j, (pt, &w))| (j, pt[0], w))
        .collect();
    xa.sort_by(|u, v| u.1.total_cmp(&v.1));
    xb.sort_by(|u, v| u.1.total_cmp(&v.1));

    let mut entries = Vec::new();
    let mut cost = 0.0;
    let (mut i, mut j) = (0usize, 0usize);
    let mut ra = xa[0].2;
    let mut rb = xb[0].2;
    while i < xa.len() && j < xb.len() {
        let t = ra.min(rb);
        if t > 0.0 {
            entries.push((xa[i].0, xb[j].0, t));
            cost += t * (xa[i].1 - xb[j].1).abs().powf(p);
        }
        ra -= t;
        rb -= t;
        if ra <= 1e-300 {
            i += 1;
            if i < xa.len() {
                ra = xa[i].2;
            }
        }
        if rb <= 1e-300 {
            j += 1;
            if j < xb.len() {
                rb = xb[j].2;
            }
        }
    }
    let marginal_residuals = TransportPlan::residuals(&entries, a, b);
    Ok(TransportPlan {
        shape: (a.len(), b.len()),
        cost,
        distance: cost.max(0.0).powf(1.0 / p),
        marginal_residuals,
        converged: true,
    entries,
    })
}

/// Entropic-regularized transport with log-domain stabilized Sinkhorn
/// iterations. Non-convergence within `max_iter` is reported through the
/// `converged` flag, not an error.
pub fn sinkhorn_ot_cost(
    a: &EmpiricalMeasure,
    b: &EmpiricalMeasure,
    p: f64,
    reg: f64,
    max_iter: usize,
) -> Result<TransportPlan> {
    check_p(p)?;
    if !(reg > 0.0) {
        return Err(Error::domain("reg", reg, "reg > 0"));
    }
    if a.dim() != b.dim() {
        return Err(Error::Precondition("dimension mismatch between clouds".into()));
    }
    let (m, n) = (a.len(), b.len());
    let cost_mat: Vec<f64> = a
        .points()
        .iter()
        .flat_map(|x| b.points().iter().map(move |y| dist(x, y).powf(p)))
        .collect();
    let ln_a: Vec<f64> = a.weights().iter().map(|w| w.max(1e-300).ln()).collect();
    let ln_b: Vec<f64> = b.weights().iter().map(|w| w.max(1e-300).ln()).collect();

    // Potentials; plan_ij = exp((f_i + g_j - C_ij)/reg + ln a_i + ln b_j).
    let mut f = vec![0.0f64; m];
    let mut g = vec![0.0f64; n];
    let mut scratch = vec![0.0f64; m.max(n)];
    let lse = |buf: &[f64]| -> f64 {
        let mx = buf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if mx == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        mx + buf.iter().map(|t| (t - mx).exp()).sum::<f64>().ln()
    };

    // One Sinkhorn sweep (row update then column update) at regularizer eps.
    let sweep = |f: &mut [f64], g: &mut [f64], scratch: &mut [f64], eps: f64| {
        let inv = 1.0 / eps;
        for i in 0..m {
            for j in 0..n {
                scratch[j] = (g[j] - cost_mat[i * n + j]) * inv + ln_b[j];
            }
            f[i] = -eps * lse(&scratch[..n]);
        }
        for j in 0..n {
            for i in 0..m {
                scratch[i] = (f[i] - cost_mat[i * n + j]) * inv + ln_a[i];
            }
            g[j] = -eps * lse(&scratch[..m]);
        }
    };

    // Epsilon-scaling: anneal the regularizer from the cost scale down to
    // the target, warm-starting the potentials at each stage. This keeps
    // the iteration count manageable for small `reg` on large instances.
    let cost_scale = cost_mat.iter().sum::<f64>() / (m * n).max(1) as f64;
    let mut stages = Vec::new();
    let mut eps = cost_scale.max(reg);
    while eps > reg * 1.5 {
        stages.push(eps);
        eps *= 0.5;
    }
    // Warm sweeps are paid for out of the `max_iter` budget, at most half.
    let warm_sweeps = if stages.is_empty() {
        0
    } else {
        (max_iter / (2 * stages.len())).min(8)
    };
    let mut remaining = max_iter;
    for &eps in &stages {
        for _ in 0..warm_sweeps {
            sweep(&mut f, &mut g, &mut scratch, eps);
        }
        remaining -= warm_sweeps;
    }

    let mut converged = false;
    let tol = 1e-7;
    for it in 0..remaining {
        sweep(&mut f, &mut g, &mut scratch, reg);
        // After a g-update columns are exact; check row marginals.
        if it % 5 == 4 || it + 1 == remaining {
            let inv = 1.0 / reg;
            let mut res = 0.0;
            for i in 0..m {
                for j in 0..n {
                    scratch[j] =
                        (f[i] + g[j] - cost_mat[i * n + j]) * inv + ln_a[i] + ln_b[j];
                }
                res += (lse(&scratch[..n]).exp() - a.weights()[i]).abs();
            }
            if res < tol {
                converged = true;
                break;
            }
        }
    }

    let mut entries = Vec::with_capacity(m * n);
    let mut cost = 0.0;
    for i in 0..m {
        for j in 0..n {
            let w =
                ((f[i] + g[j] - cost_mat[i * n + j]) / reg + ln_a[i] + ln_b[j]).exp();
            if w > 1e-300 {
                entries.push((i, j, w));
                cost += w * cost_mat[i * n + j];
            }
        }
    }
    let marginal_residuals = TransportPlan::residuals(&entries, a, b);
    Ok(TransportPlan {
        shape: (m, n),
        cost,
        distance: cost.max(0.0).powf(1.0 / p),
        marginal_residuals,
        converged,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cloud_1d(vals: &[f64]) -> EmpiricalMeasure {
        EmpiricalMeasure::from_1d(vals).unwrap()
    }

    #[test]
    fn same_measure_is_zero() {
        let a = cloud_1d(&[0.0, 1.0, 2.5]);
        let plan = exact_ot_cost(&a, &a, 2.0).unwrap();
        assert_abs_diff_eq!(plan.cost, 0.0, epsilon = 1e-12);
        assert!(plan.marginal_residuals.0 < 1e-8);
    }

    #[test]
    fn dirac_pair() {
        let a = EmpiricalMeasure::dirac(vec![0.0]);
        let b = EmpiricalMeasure::dirac(vec![3.0]);
        let plan = exact_ot_cost(&a, &b, 2.0).unwrap();
        assert_abs_diff_eq!(plan.cost, 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(plan.distance, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn identity_beats_swap() {
        // Brute force over the two couplings of {0,1} vs {0,1}: identity
        // costs 0, the swap costs 1.
        let a = cloud_1d(&[0.0, 1.0]);
        let b = cloud_1d(&[0.0, 1.0]);
        let plan = exact_ot_cost(&a, &b, 1.0).unwrap();
        assert_abs_diff_eq!(plan.cost, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn equal_size_uniform_plan_is_permutation() {
        let a = cloud_1d(&[3.0, 0.0, 1.0]);
        let b = cloud_1d(&[2.0, -1.0, 0.5]);
        let plan = exact_ot_cost(&a, &b, 2.0).unwrap();
        assert_eq!(plan.entries().len(), 3);
        for &(_, _, w) in plan.entries() {
            assert_abs_diff_eq!(w, 1.0 / 3.0, epsilon = 1e-12);
        }
        // Sorted-matching cost.
        let expect = ((0.0f64 - -1.0).powi(2) + (1.0f64 - 0.5).powi(2) + (3.0f64 - 2.0).powi(2)) / 3.0;
        assert_abs_diff_eq!(plan.cost, expect, epsilon = 1e-12);
    }

    #[test]
    fn simplex_agrees_with_sorted_matching_in_1d() {
        // Force the general solver on 1D data by inflating to 2D with a
        // zero coordinate.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let xs: Vec<f64> = (0..20).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let ys: Vec<f64> = (0..20).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let a1 = cloud_1d(&xs);
            let b1 = cloud_1d(&ys);
            let a2 = EmpiricalMeasure::uniform(xs.iter().map(|&x| vec![x, 0.0]).collect()).unwrap();
            let b2 = EmpiricalMeasure::uniform(ys.iter().map(|&y| vec![y, 0.0]).collect()).unwrap();
            for p in [1.0, 2.0] {
                let fast = exact_ot_cost(&a1, &b1, p).unwrap();
                let lp = exact_ot_cost(&a2, &b2, p).unwrap();
                assert_abs_diff_eq!(fast.cost, lp.cost, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn weighted_1d_against_simplex() {
        let a = EmpiricalMeasure::new(vec![vec![0.0], vec![2.0]], vec![0.3, 0.7]).unwrap();
        let b = EmpiricalMeasure::new(vec![vec![1.0], vec![5.0], vec![-1.0]], vec![0.5, 0.2, 0.3]).unwrap();
        let fast = exact_1d(&a, &b, 1.0).unwrap();
        let a2 = EmpiricalMeasure::new(vec![vec![0.0, 0.0], vec![2.0, 0.0]], vec![0.3, 0.7]).unwrap();
        let b2 = EmpiricalMeasure::new(
            vec![vec![1.0, 0.0], vec![5.0, 0.0], vec![-1.0, 0.0]],
            vec![0.5, 0.2, 0.3],
        )
        .unwrap();
        let lp = exact_ot_cost(&a2, &b2, 1.0).unwrap();
        assert_abs_diff_eq!(fast.cost, lp.cost, epsilon = 1e-8);
    }

    #[test]
    fn symmetry_and_triangle_inequality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [1.0, 2.0] {
            for _ in 0..10 {
                let xs: Vec<f64> = (0..15).map(|_| rng.gen_range(-3.0..3.0)).collect();
                let ys: Vec<f64> = (0..15).map(|_| rng.gen_range(-3.0..3.0)).collect();
                let zs: Vec<f64> = (0..15).map(|_| rng.gen_range(-3.0..3.0)).collect();
                let (a, b, c) = (cloud_1d(&xs), cloud_1d(&ys), cloud_1d(&zs));
                let dab = exact_ot_cost(&a, &b, p).unwrap().distance;
                let dba = exact_ot_cost(&b, &a, p).unwrap().distance;
                let dbc = exact_ot_cost(&b, &c, p).unwrap().distance;
                let dac = exact_ot_cost(&a, &c, p).unwrap().distance;
                assert_abs_diff_eq!(dab, dba, epsilon = 1e-9);
                assert!(dac <= dab + dbc + 1e-8);
            }
        }
    }

    #[test]
    fn sinkhorn_same_measure() {
        let a = cloud_1d(&[0.0, 1.0, 2.0]);
        let plan = sinkhorn_ot_cost(&a, &a, 2.0, 0.05, 5000).unwrap();
        assert!(plan.cost < 0.5, "entropic self-cost {}", plan.cost);
        // Plan is near-diagonal: diagonal mass dominates.
        let diag: f64 = plan
            .entries()
            .iter()
            .filter(|&&(i, j, _)| i == j)
            .map(|&(_, _, w)| w)
            .sum();
        assert!(diag > 0.9, "diagonal mass {diag}");
    }

    #[test]
    fn sinkhorn_dirac_pair_exact() {
        let a = EmpiricalMeasure::dirac(vec![0.0]);
        let b = EmpiricalMeasure::dirac(vec![3.0]);
        let plan = sinkhorn_ot_cost(&a, &b, 2.0, 0.1, 100).unwrap();
        assert_abs_diff_eq!(plan.cost, 9.0, epsilon = 1e-9);
    }

    #[test]
    fn sinkhorn_close_to_exact_on_gaussian_clouds() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let xs: Vec<f64> = (0..200).map(|_| StandardNormal.sample(&mut rng)).collect();
        let ys: Vec<f64> = (0..200)
            .map(|_| {
                let v: f64 = StandardNormal.sample(&mut rng);
                v + 1.0
            })
            .collect();
        let a = cloud_1d(&xs);
        let b = cloud_1d(&ys);
        let exact = exact_ot_cost(&a, &b, 2.0).unwrap();
        let sink = sinkhorn_ot_cost(&a, &b, 2.0, 0.01, 10_000).unwrap();
        let rel = (sink.cost - exact.cost).abs() / exact.cost;
        assert!(rel <= 0.05, "relative gap {rel}");
        assert!(
            sink.marginal_residuals.0 < 1e-3,
            "row residual {}",
            sink.marginal_residuals.0
        );
    }

    #[test]
    fn sinkhorn_nonconvergence_is_flagged() {
        // Overlapping clouds at small regularization need many iterations;
        // a single one cannot meet the marginal tolerance.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let xs: Vec<f64> = (0..30).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ys: Vec<f64> = (0..30).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let plan = sinkhorn_ot_cost(&cloud_1d(&xs), &cloud_1d(&ys), 2.0, 1e-3, 1).unwrap();
        assert!(!plan.converged);
    }

    #[test]
    fn size_cap() {
        let big: Vec<Vec<f64>> = (0..2100).map(|i| vec![i as f64, 0.0]).collect();
        let a = EmpiricalMeasure::uniform(big.clone()).unwrap();
        let b = EmpiricalMeasure::uniform(big).unwrap();
        match exact_ot_cost(&a, &b, 2.0) {
            Err(Error::Resource { .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }
}
