//! Weighted point clouds: the discretization carrier for the LP/OT-based
//! distance estimators.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A finitely supported probability measure: `m` points in R^n with
/// nonnegative weights summing to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmpiricalMeasure {
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl EmpiricalMeasure {
    pub fn new(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("empirical measure needs m >= 1 points".into()));
        }
        if points.len() != weights.len() {
            return Err(Error::Precondition(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        let dim = points[0].len();
        for p in &points {
            if p.len() != dim {
                return Err(Error::Precondition("inconsistent point dimensions".into()));
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::Precondition("non-finite coordinate".into()));
            }
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::Precondition("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition(format!(
                "weights sum to {total}, expected 1 within 1e-12"
            )));
        }
        Ok(EmpiricalMeasure { points, weights })
    }

    /// Uniform weights over the given points.
    pub fn uniform(points: Vec<Vec<f64>>) -> Result<Self> {
        let m = points.len();
        if m == 0 {
            return Err(Error::Precondition("empirical measure needs m >= 1 points".into()));
        }
        // Make the weights sum to exactly 1.0.
        let w = 1.0 / m as f64;
        let mut weights = vec![w; m];
        let sum: f64 = weights.iter().sum();
        weights[0] += 1.0 - sum;
        EmpiricalMeasure::new(points, weights)
    }

    /// A single atom at `x`.
    pub fn dirac(x: Vec<f64>) -> Self {
        EmpiricalMeasure {
            points: vec![x],
            weights: vec![1.0],
        }
    }

    /// Uniform cloud from a list of 1D values.
    pub fn from_1d(values: &[f64]) -> Result<Self> {
        EmpiricalMeasure::uniform(values.iter().map(|&v| vec![v]).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // m >= 1 by construction
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    /// Weighted mean vector.
    pub fn mean(&self) -> Vec<f64> {
        let d = self.dim();
        let mut m = vec![0.0; d];
        for (p, &w) in self.points.iter().zip(&self.weights) {
            for (mi, &pi) in m.iter_mut().zip(p) {
                *mi += w * pi;
            }
        }
        m
    }

    /// Weighted variance of each coordinate.
    pub fn marginal_variances(&self) -> Vec<f64> {
        let mean = self.mean();
        let d = self.dim();
        let mut v = vec![0.0; d];
        for (p, &w) in self.points.iter().zip(&self.weights) {
            for i in 0..d {
                let c = p[i] - mean[i];
                v[i] += w * c * c;
            }
        }
        v
    }

    /// 1D values paired with weights, sorted by value. Errors unless dim = 1.
    pub fn sorted_1d(&self) -> Result<Vec<(f64, f64)>> {
        if self.dim() != 1 {
            return Err(Error::Precondition("sorted_1d requires dim = 1".into()));
        }
        let mut v: Vec<(f64, f64)> = self
            .points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| (p[0], w))
            .collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(v)
    }

    /// Write as CSV: one point per row, final column is the weight.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: std::io::Error::other(e),
        })?;
        for (p, &weight) in self.points.iter().zip(&self.weights) {
            let mut row: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
            row.push(format!("{weight}"));
            w.write_record(&row).map_err(|e| Error::Io {
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

    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_path(path)
            .map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: std::io::Error::other(e),
            })?;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: std::io::Error::other(e),
            })?;
            let vals: std::result::Result<Vec<f64>, _> =
                rec.iter().map(|s| s.trim().parse::<f64>()).collect();
            let mut vals = vals.map_err(|e| Error::Config(format!("bad CSV number: {e}")))?;
            let w = vals
                .pop()
                .ok_or_else(|| Error::Config("empty CSV row".into()))?;
            points.push(vals);
            weights.push(w);
        }
        EmpiricalMeasure::new(points, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_weights() {
        assert!(EmpiricalMeasure::new(vec![vec![0.0]], vec![0.9]).is_err());
        assert!(EmpiricalMeasure::new(vec![vec![0.0]], vec![-1.0]).is_err());
        assert!(EmpiricalMeasure::new(vec![], vec![]).is_err());
        assert!(EmpiricalMeasure::new(vec![vec![f64::NAN]], vec![1.0]).is_err());
    }

    #[test]
    fn moments() {
        let m = EmpiricalMeasure::from_1d(&[0.0, 2.0]).unwrap();
        assert_eq!(m.mean(), vec![1.0]);
        assert_eq!(m.marginal_variances(), vec![1.0]);
    }

    #[test]
    fn csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cloud.csv");
        let m = EmpiricalMeasure::new(vec![vec![0.5, -1.0], vec![2.0, 3.0]], vec![0.25, 0.75]).unwrap();
        m.write_csv(&path).unwrap();
        let back = EmpiricalMeasure::read_csv(&path).unwrap();
        assert_eq!(back.points(), m.points());
        assert_eq!(back.weights(), m.weights());
    }
}
