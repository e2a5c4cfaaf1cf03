//! Exact balanced transportation problem solver.
//!
//! This is the network simplex method specialised to the complete bipartite
//! graph between sources and sinks (the classic transportation simplex). The
//! basis is a spanning tree of `n + m - 1` cells, initialised by the
//! north-west corner rule. Entering cells are chosen by most negative reduced
//! cost; after a run of degenerate pivots the solver switches permanently to
//! Bland's rule, which cannot cycle.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    /// `(source, sink, mass)` for every cell with positive flow.
    pub flows: Vec<(usize, usize, f64)>,
    pub cost: f64,
}

impl TransportPlan {
    pub fn row_sums(&self, n: usize) -> Vec<f64> {
        let mut s = vec![0.0; n];
        for &(i, _, f) in &self.flows {
            s[i] += f;
        }
        s
    }

    pub fn col_sums(&self, m: usize) -> Vec<f64> {
        let mut s = vec![0.0; m];
        for &(_, j, f) in &self.flows {
            s[j] += f;
        }
        s
    }
}

struct Basis {
    n: usize,
    m: usize,
    cells: Vec<(usize, usize)>,
    flow: Vec<f64>,
    /// `slot[i * m + j]` is the basis position of a basic cell.
    slot: Vec<Option<usize>>,
}

impl Basis {
    fn north_west(supply: &[f64], demand: &[f64]) -> Basis {
        let (n, m) = (supply.len(), demand.len());
        let mut s = supply.to_vec();
        let mut d = demand.to_vec();
        let mut b = Basis {
            n,
            m,
            cells: Vec::with_capacity(n + m - 1),
            flow: Vec::with_capacity(n + m - 1),
            slot: vec![None; n * m],
        };
        let (mut i, mut j) = (0, 0);
        loop {
            let x = s[i].min(d[j]).max(0.0);
            s[i] -= x;
            d[j] -= x;
            b.slot[i * m + j] = Some(b.cells.len());
            b.cells.push((i, j));
            b.flow.push(x);
            if i == n - 1 && j == m - 1 {
                break;
            }
            // Move down when this row is exhausted (or columns ran out).
            if j == m - 1 || (i < n - 1 && s[i] <= d[j]) {
                i += 1;
            } else {
                j += 1;
            }
        }
        debug_assert_eq!(b.cells.len(), n + m - 1);
        b
    }

    /// Node ids: rows `0..n`, columns `n..n+m`. Returns adjacency lists of
    /// `(neighbour node, basis position)`.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n + self.m];
        for (k, &(i, j)) in self.cells.iter().enumerate() {
            adj[i].push((self.n + j, k));
            adj[self.n + j].push((i, k));
        }
        adj
    }

    fn potentials(&self, adj: &[Vec<(usize, usize)>], cost: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (n, m) = (self.n, self.m);
        let mut pot = vec![f64::NAN; n + m];
        pot[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &(next, k) in &adj[node] {
                if pot[next].is_nan() {
                    let (i, j) = self.cells[k];
                    let c = cost[i * m + j];
                    // u_i + v_j = c_ij on basic cells.
                    pot[next] = c - pot[node];
                    queue.push_back(next);
                }
            }
        }
        let v = pot.split_off(n);
        (pot, v)
    }

    /// Basis positions on the tree path from row `i` to column `j`, ordered
    /// from the column end.
    fn path(&self, adj: &[Vec<(usize, usize)>], i: usize, j: usize) -> Vec<usize> {
        let target = self.n + j;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.n + self.m];
        let mut visited = vec![false; self.n + self.m];
        visited[i] = true;
        let mut queue = VecDeque::from([i]);
        while let Some(node) = queue.pop_front() {
            if node == target {
                break;
            }
            for &(next, k) in &adj[node] {
                if !visited[next] {
                    visited[next] = true;
                    parent[next] = Some((node, k));
                    queue.push_back(next);
                }
            }
        }
        let mut out = Vec::new();
        let mut node = target;
        while let Some((prev, k)) = parent[node] {
            out.push(k);
            node = prev;
        }
        out
    }
}

/// Solve `min Σ c_ij x_ij` subject to row sums `supply`, column sums `demand`,
/// `x ≥ 0`. `cost` is row-major `n × m`. Total supply and demand must agree.
pub fn solve(supply: &[f64], demand: &[f64], cost: &[f64]) -> Result<TransportPlan> {
    let (n, m) = (supply.len(), demand.len());
    if n == 0 || m == 0 || cost.len() != n * m {
        return Err(Error::Invalid(format!(
            "transport problem of shape {n}x{m} with {} costs",
            cost.len()
        )));
    }
    if supply
        .iter()
        .chain(demand)
        .any(|x| !(x.is_finite() && *x >= 0.0))
        || cost.iter().any(|c| !c.is_finite())
    {
        return Err(Error::Invalid(
            "transport inputs must be finite and masses non-negative".into(),
        ));
    }
    let total_s: f64 = supply.iter().sum();
    let total_d: f64 = demand.iter().sum();
    if (total_s - total_d).abs() > 1e-9 * total_s.max(total_d).max(1.0) {
        return Err(Error::Invalid(format!(
            "unbalanced transport: {total_s} vs {total_d}"
        )));
    }

    let mut basis = Basis::north_west(supply, demand);
    let scale = cost.iter().fold(1.0f64, |a, c| a.max(c.abs()));
    let tol = 1e-12 * scale;
    let degenerate_limit = n + m;
    let max_pivots = 50 * n * m + 1000;
    let mut degenerate_run = 0;
    let mut bland = false;

    let mut pivots = 0;
    loop {
        let adj = basis.adjacency();
        let (u, v) = basis.potentials(&adj, cost);

        let mut entering: Option<(usize, usize)> = None;
        let mut best = -tol;
        'scan: for i in 0..n {
            for j in 0..m {
                if basis.slot[i * m + j].is_some() {
                    continue;
                }
                let r = cost[i * m + j] - u[i] - v[j];
                if r < best {
                    entering = Some((i, j));
                    if bland {
                        break 'scan;
                    }
                    best = r;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            break;
        };
        if pivots == max_pivots {
            return Err(Error::SolverNonConvergence { iterations: pivots });
        }
        pivots += 1;

        // Cells on the path alternate -, +, -, ... starting next to column ej.
        let path = basis.path(&adj, ei, ej);
        debug_assert!(path.len() % 2 == 1);
        let mut leave = path[0];
        for &k in path.iter().step_by(2) {
            let better = basis.flow[k] < basis.flow[leave]
                || (bland && basis.flow[k] == basis.flow[leave] && {
                    let (a, b) = basis.cells[k];
                    let (c, d) = basis.cells[leave];
                    a * m + b < c * m + d
                });
            if better {
                leave = k;
            }
        }
        let theta = basis.flow[leave];
        for (pos, &k) in path.iter().enumerate() {
            if pos % 2 == 0 {
                basis.flow[k] -= theta;
            } else {
                basis.flow[k] += theta;
            }
        }
        if theta <= tol {
            degenerate_run += 1;
            if degenerate_run > degenerate_limit {
                bland = true;
            }
        } else {
            degenerate_run = 0;
        }

        let (li, lj) = basis.cells[leave];
        basis.slot[li * m + lj] = None;
        basis.slot[ei * m + ej] = Some(leave);
        basis.cells[leave] = (ei, ej);
        basis.flow[leave] = theta;
    }

    let mut flows = Vec::new();
    let mut total = 0.0;
    for (k, &(i, j)) in basis.cells.iter().enumerate() {
        let f = basis.flow[k].max(0.0);
        if f > 0.0 {
            total += f * cost[i * m + j];
            flows.push((i, j, f));
        }
    }
    flows.sort_by_key(|&(i, j, _)| (i, j));
    Ok(TransportPlan { flows, cost: total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let p = solve(&[1.0], &[1.0], &[3.5]).unwrap();
        assert_eq!(p.cost, 3.5);
        assert_eq!(p.flows, vec![(0, 0, 1.0)]);
    }

    #[test]
    fn textbook_instance() {
        let cost = [8.0, 6.0, 10.0, 9.0, 12.0, 13.0, 14.0, 9.0, 16.0];
        let supply = [20.0, 30.0, 25.0];
        let demand = [10.0, 35.0, 30.0];
        let p = solve(&supply, &demand, &cost).unwrap();
        let manual: f64 = p.flows.iter().map(|&(i, j, f)| f * cost[i * 3 + j]).sum();
        assert!((p.cost - manual).abs() < 1e-9);
        for (a, b) in p.row_sums(3).iter().zip(supply) {
            assert!((a - b).abs() < 1e-9);
        }
        for (a, b) in p.col_sums(3).iter().zip(demand) {
            assert!((a - b).abs() < 1e-9);
        }
        // Optimum from an independent LP solve.
        assert!((p.cost - 735.0).abs() < 1e-9);
    }

    #[test]
    fn identity_plan_for_equal_masses_and_zero_diagonal() {
        let w = [0.2, 0.3, 0.5];
        let mut cost = vec![1.0; 9];
        for i in 0..3 {
            cost[i * 3 + i] = 0.0;
        }
        let p = solve(&w, &w, &cost).unwrap();
        assert!(p.cost.abs() < 1e-15);
        assert!(p.flows.iter().all(|&(i, j, _)| i == j));
    }

    #[test]
    fn degenerate_instances_terminate() {
        // Many equal costs and equal masses force degenerate pivots.
        let n = 12;
        let w = vec![1.0 / n as f64; n];
        let cost: Vec<f64> = (0..n * n).map(|k| ((k * 7) % 3) as f64).collect();
        let p = solve(&w, &w, &cost).unwrap();
        assert!(p.cost >= 0.0);
        for s in p.row_sums(n) {
            assert!((s - 1.0 / n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(solve(&[], &[1.0], &[]).is_err());
        assert!(solve(&[1.0], &[0.5], &[1.0]).is_err());
        assert!(solve(&[1.0], &[1.0], &[f64::NAN]).is_err());
        assert!(solve(&[1.0, 0.0], &[1.0], &[1.0]).is_err());
    }
}
