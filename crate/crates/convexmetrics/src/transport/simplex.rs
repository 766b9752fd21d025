//! Transportation simplex (MODI / u-v method) for the dense bipartite
//! min-cost transport problem. Exact up to floating point; optimality is
//! certified by a final reduced-cost scan.

use crate::error::{Error, Result};

/// One basic arc of the spanning-tree basis.
#[derive(Debug, Clone, Copy)]
struct Arc {
    src: usize,
    dst: usize,
    flow: f64,
}

pub struct SimplexSolution {
    /// Flow entries `(i, j, amount)` with `amount > 0` (plus degenerate
    /// basic arcs with zero flow removed).
    pub flows: Vec<(usize, usize, f64)>,
    pub cost: f64,
    /// Most negative reduced cost at termination (>= -1e-9 certifies
    /// optimality by complementary slackness).
    pub min_reduced_cost: f64,
}

/// Solve `min sum c_ij x_ij` subject to row sums `supply`, column sums
/// `demand`, `x >= 0`. Supplies and demands must balance.
pub fn solve<C: Fn(usize, usize) -> f64>(
    supply: &[f64],
    demand: &[f64],
    cost: C,
) -> Result<SimplexSolution> {
    let m = supply.len();
    let n = demand.len();
    if m == 0 || n == 0 {
        return Err(Error::Precondition("empty transportation problem".into()));
    }

    // Tiny supply perturbation breaks degeneracy (all extra mass is routed
    // to the last demand). Removed again when reporting flows.
    let eps = 1e-12;
    let a: Vec<f64> = supply.iter().map(|&s| s + eps).collect();
    let mut b: Vec<f64> = demand.to_vec();
    b[n - 1] += eps * m as f64;

    let total_a: f64 = a.iter().sum();
    let total_b: f64 = b.iter().sum();
    if (total_a - total_b).abs() > 1e-9 {
        return Err(Error::Precondition(format!(
            "unbalanced problem: supply {total_a} vs demand {total_b}"
        )));
    }

    // Northwest-corner initial basis: exactly m + n - 1 arcs.
    let mut basis: Vec<Arc> = Vec::with_capacity(m + n - 1);
    {
        let (mut i, mut j) = (0usize, 0usize);
        let mut rem_a = a[0];
        let mut rem_b = b[0];
        loop {
            let x = rem_a.min(rem_b);
            basis.push(Arc { src: i, dst: j, flow: x });
            rem_a -= x;
            rem_b -= x;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if rem_a <= rem_b && i < m - 1 {
                i += 1;
                rem_a = a[i];
            } else {
                j += 1;
                rem_b = b[j];
            }
        }
    }

    let max_pivots = 200 * (m + n) + 2000;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + n];
    let rebuild_adj = |basis: &[Arc], adj: &mut Vec<Vec<usize>>| {
        for l in adj.iter_mut() {
            l.clear();
        }
        for (k, arc) in basis.iter().enumerate() {
            adj[arc.src].push(k);
            adj[m + arc.dst].push(k);
        }
    };

    let mut u = vec![0.0f64; m];
    let mut v = vec![0.0f64; n];
    let mut min_rc = 0.0;

    for _pivot in 0..max_pivots {
        rebuild_adj(&basis, &mut adj);

        // Duals by tree traversal from source 0.
        let mut seen = vec![false; m + n];
        let mut stack = vec![0usize];
        seen[0] = true;
        u[0] = 0.0;
        while let Some(node) = stack.pop() {
            for &k in &adj[node] {
                let arc = basis[k];
                let (s, d) = (arc.src, m + arc.dst);
                let other = if node == s { d } else { s };
                if !seen[other] {
                    seen[other] = true;
                    let c = cost(arc.src, arc.dst);
                    if other >= m {
                        v[other - m] = c - u[node];
                    } else {
                        u[other] = c - v[node - m];
                    }
                    stack.push(other);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Solver("basis is not a spanning tree".into()));
        }

        // Entering arc: most negative reduced cost.
        let mut best = (0usize, 0usize);
        min_rc = -1e-10;
        for i in 0..m {
            for j in 0..n {
                let rc = cost(i, j) - u[i] - v[j];
                if rc < min_rc {
                    min_rc = rc;
                    best = (i, j);
                }
            }
        }
        if min_rc >= -1e-10 {
            min_rc = min_rc.max(0.0);
            break;
        }

        // Unique tree path from source `best.0` to sink node `m + best.1`.
        let start = best.0;
        let goal = m + best.1;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; m + n]; // (prev node, arc idx)
        let mut stack = vec![start];
        let mut visited = vec![false; m + n];
        visited[start] = true;
        while let Some(node) = stack.pop() {
            if node == goal {
                break;
            }
            for &k in &adj[node] {
                let arc = basis[k];
                let (s, d) = (arc.src, m + arc.dst);
                let other = if node == s { d } else { s };
                if !visited[other] {
                    visited[other] = true;
                    parent[other] = Some((node, k));
                    stack.push(other);
                }
            }
        }

        // Alternate signs around the cycle; the entering arc carries +theta.
        // Walking back from the sink: the first basis arc on the path gets
        // -theta, the next +theta, and so on.
        let mut path_arcs: Vec<usize> = Vec::new();
        let mut node = goal;
        while node != start {
            let (prev, k) = parent[node].ok_or_else(|| Error::Solver("cycle trace failed".into()))?;
            path_arcs.push(k);
            node = prev;
        }
        let mut theta = f64::INFINITY;
        let mut leaving: Option<usize> = None;
        for (step, &k) in path_arcs.iter().enumerate() {
            if step % 2 == 0 {
                // minus arc
                if basis[k].flow < theta {
                    theta = basis[k].flow;
                    leaving = Some(k);
                }
            }
        }
        let leaving = leaving.ok_or_else(|| Error::Solver("no leaving arc".into()))?;
        for (step, &k) in path_arcs.iter().enumerate() {
            if step % 2 == 0 {
                basis[k].flow -= theta;
            } else {
                basis[k].flow += theta;
            }
        }
        basis[leaving] = Arc {
            src: best.0,
            dst: best.1,
            flow: theta,
        };
    }

    if min_rc < -1e-9 {
        return Err(Error::Solver(format!(
            "transportation simplex did not certify optimality (reduced cost {min_rc})"
        )));
    }

    let mut flows = Vec::new();
    let mut total_cost = 0.0;
    for arc in &basis {
        let f = arc.flow;
        if f > 10.0 * eps {
            flows.push((arc.src, arc.dst, f));
            total_cost += f * cost(arc.src, arc.dst);
        }
    }
    Ok(SimplexSolution {
        flows,
        cost: total_cost,
        min_reduced_cost: min_rc,
    })
}
