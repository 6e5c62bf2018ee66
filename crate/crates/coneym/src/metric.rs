//! Pointwise Riemannian metrics and midpoint quadrature.

use crate::chart::Chart;
use crate::reduce;
use crate::{Error, Result};
use std::sync::Arc;

/// A symmetric positive-definite matrix field with cached inverse and
/// volume density.
pub struct MetricField {
    pub chart: Arc<Chart>,
    g: Vec<f64>,       // npoints × m × m, row-major per point
    g_inv: Vec<f64>,   // same layout
    sqrt_det: Vec<f64>,
}

impl MetricField {
    /// Build from a pointwise matrix function; validates symmetry and
    /// positive-definiteness at every point.
    pub fn from_fn<F>(chart: &Arc<Chart>, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> [[f64; 4]; 4] + Sync,
    {
        let m = chart.dim;
        let np = chart.npoints();
        let mut g = vec![0.0; np * m * m];
        reduce::fill_slots(&mut g, m * m, |p, slot| {
            let x = chart.coord(p);
            let gm = f(&x[..m]);
            for r in 0..m {
                for c in 0..m {
                    slot[r * m + c] = gm[r][c];
                }
            }
        });
        let mut g_inv = vec![0.0; np * m * m];
        let mut sqrt_det = vec![0.0; np];
        for p in 0..np {
            let gp = &g[p * m * m..(p + 1) * m * m];
            for r in 0..m {
                for c in r + 1..m {
                    if (gp[r * m + c] - gp[c * m + r]).abs() > 1e-12 {
                        return Err(Error::NotPositiveDefinite { point: p });
                    }
                }
            }
            let (inv, det) =
                invert_with_det(gp, m).ok_or(Error::NotPositiveDefinite { point: p })?;
            if det <= 0.0 || !leading_minors_positive(gp, m) {
                return Err(Error::NotPositiveDefinite { point: p });
            }
            g_inv[p * m * m..(p + 1) * m * m].copy_from_slice(&inv);
            sqrt_det[p] = det.sqrt();
        }
        Ok(MetricField {
            chart: chart.clone(),
            g,
            g_inv,
            sqrt_det,
        })
    }

    /// Flat metric δ_ab.
    pub fn euclidean(chart: &Arc<Chart>) -> Self {
        Self::from_fn(chart, |_| {
            let mut g = [[0.0; 4]; 4];
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = 1.0;
            }
            g
        })
        .expect("identity metric is positive definite")
    }

    /// Diagonal metric from per-point diagonal entries.
    pub fn diagonal<F>(chart: &Arc<Chart>, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> [f64; 4] + Sync,
    {
        Self::from_fn(chart, |x| {
            let d = f(x);
            let mut g = [[0.0; 4]; 4];
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = d[i];
            }
            g
        })
    }

    #[inline]
    pub fn g_at(&self, p: usize) -> &[f64] {
        let m2 = self.chart.dim * self.chart.dim;
        &self.g[p * m2..(p + 1) * m2]
    }

    #[inline]
    pub fn g_inv_at(&self, p: usize) -> &[f64] {
        let m2 = self.chart.dim * self.chart.dim;
        &self.g_inv[p * m2..(p + 1) * m2]
    }

    #[inline]
    pub fn sqrt_det_at(&self, p: usize) -> f64 {
        self.sqrt_det[p]
    }

    /// Max over points of `‖g·g_inv - I‖_∞` (construction sanity measure).
    pub fn inverse_defect(&self) -> f64 {
        let m = self.chart.dim;
        reduce::indexed_max(self.chart.npoints(), |p| {
            let g = self.g_at(p);
            let gi = self.g_inv_at(p);
            let mut worst: f64 = 0.0;
            for r in 0..m {
                for c in 0..m {
                    let mut s = 0.0;
                    for l in 0..m {
                        s += g[r * m + l] * gi[l * m + c];
                    }
                    let target = if r == c { 1.0 } else { 0.0 };
                    worst = worst.max((s - target).abs());
                }
            }
            worst
        })
    }
}

/// Result of a density quadrature.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScalarDensityReport {
    pub value: f64,
    pub quadrature: &'static str,
    pub point_count: usize,
}

/// Midpoint-rule integral `Σ f · √det g · ∏h` over interior points.
pub fn integrate_density<F>(f: F, chart: &Arc<Chart>, metric: &MetricField) -> Result<ScalarDensityReport>
where
    F: Fn(usize) -> f64 + Sync,
{
    if metric.chart.as_ref() != chart.as_ref() {
        return Err(Error::ChartMismatch);
    }
    let mask = chart.interior_mask();
    let cell = chart.cell_volume();
    let value = reduce::indexed_sum(chart.npoints(), |p| {
        if mask[p] {
            f(p) * metric.sqrt_det_at(p) * cell
        } else {
            0.0
        }
    });
    let point_count = mask.iter().filter(|&&b| b).count();
    Ok(ScalarDensityReport {
        value,
        quadrature: "midpoint",
        point_count,
    })
}

fn invert_with_det(a: &[f64], n: usize) -> Option<(Vec<f64>, f64)> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    let mut det = 1.0;
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m[r * n + col].abs() > m[piv * n + col].abs() {
                piv = r;
            }
        }
        if m[piv * n + col].abs() < 1e-300 {
            return None;
        }
        if piv != col {
            det = -det;
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
                inv.swap(col * n + c, piv * n + c);
            }
        }
        let d = m[col * n + col];
        det *= d;
        for c in 0..n {
            m[col * n + c] /= d;
            inv[col * n + c] /= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f == 0.0 {
                continue;
            }
            for c in 0..n {
                m[r * n + c] -= f * m[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    Some((inv, det))
}

fn leading_minors_positive(a: &[f64], n: usize) -> bool {
    // Sylvester criterion on the symmetric matrix.
    for k in 1..=n {
        let mut sub = vec![0.0; k * k];
        for r in 0..k {
            for c in 0..k {
                sub[r * k + c] = a[r * n + c];
            }
        }
        match invert_with_det(&sub, k) {
            Some((_, det)) if det > 0.0 => {}
            _ => return false,
        }
    }
    true
}
