//! Cached quantile grids for 1D specs.

use crate::error::{Error, Result};
use crate::measures::family::DistributionSpec;

/// A strictly increasing grid of `(u, q)` pairs with `q = F^{-1}(u)`,
/// covering `[u_min, 1 - u_min]`.
#[derive(Debug, Clone)]
pub struct QuantileTable {
    grid: Vec<(f64, f64)>,
}

impl QuantileTable {
    pub fn build(spec: &DistributionSpec, u_min: f64, points: usize) -> Result<Self> {
        if !(u_min > 0.0 && u_min <= 1e-4) {
            return Err(Error::domain("u_min", u_min, "(0, 1e-4]"));
        }
        if points < 2 {
            return Err(Error::Precondition("quantile grid needs >= 2 points".into()));
        }
        let mut grid = Vec::with_capacity(points);
        for i in 0..points {
            let u = u_min + (1.0 - 2.0 * u_min) * i as f64 / (points - 1) as f64;
            grid.push((u, spec.quantile_1d(u)?));
        }
        QuantileTable::from_grid(grid)
    }

    pub fn from_grid(grid: Vec<(f64, f64)>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::Precondition("quantile grid needs >= 2 points".into()));
        }
        for w in grid.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Precondition("u grid must be strictly increasing".into()));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::Precondition("quantiles must be nondecreasing".into()));
            }
        }
        if !(grid[0].0 > 0.0 && grid.last().unwrap().0 < 1.0) {
            return Err(Error::Precondition("u grid must lie in (0, 1)".into()));
        }
        Ok(QuantileTable { grid })
    }

    pub fn grid(&self) -> &[(f64, f64)] {
        &self.grid
    }

    pub fn u_range(&self) -> (f64, f64) {
        (self.grid[0].0, self.grid.last().unwrap().0)
    }

    /// Piecewise-linear interpolation; clamps outside the grid range.
    pub fn quantile(&self, u: f64) -> f64 {
        let g = &self.grid;
        if u <= g[0].0 {
            return g[0].1;
        }
        if u >= g.last().unwrap().0 {
            return g.last().unwrap().1;
        }
        let idx = g.partition_point(|&(ui, _)| ui < u);
        let (u0, q0) = g[idx - 1];
        let (u1, q1) = g[idx];
        q0 + (q1 - q0) * (u - u0) / (u1 - u0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interpolates_gaussian() {
        let g = DistributionSpec::std_gaussian(1).unwrap();
        let table = QuantileTable::build(&g, 1e-4, 2001).unwrap();
        for u in [0.01, 0.3, 0.5, 0.77, 0.99] {
            assert_abs_diff_eq!(table.quantile(u), g.quantile_1d(u).unwrap(), epsilon = 1e-3);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(QuantileTable::from_grid(vec![(0.5, 0.0)]).is_err());
        assert!(QuantileTable::from_grid(vec![(0.5, 0.0), (0.4, 1.0)]).is_err());
        assert!(QuantileTable::from_grid(vec![(0.1, 1.0), (0.2, 0.0)]).is_err());
    }
}
