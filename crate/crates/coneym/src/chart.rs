//! Structured grids with per-axis periodicity and interior masks.
//!
//! Points sit at cell midpoints: coordinate `origin + (i + 1/2)·h` along each
//! axis, so the midpoint quadrature cells tile the covered region exactly.
//! On non-periodic axes the outermost layer (width = stencil radius 1) is
//! excluded from `interior_mask`; central differences are only trusted there.

use crate::{comb::MAX_DIM, Error, Result};
use std::sync::Arc;

/// Stencil radius of the second-order central differences used throughout.
pub const STENCIL_RADIUS: usize = 1;

#[derive(Debug)]
pub struct Chart {
    pub dim: usize,
    pub sizes: Vec<usize>,
    pub spacings: Vec<f64>,
    pub periodic: Vec<bool>,
    pub origin: Vec<f64>,
    strides: Vec<usize>,
    npoints: usize,
    interior_mask: Arc<Vec<bool>>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.sizes == other.sizes
            && self.spacings == other.spacings
            && self.periodic == other.periodic
            && self.origin == other.origin
    }
}

impl Chart {
    pub fn new(
        sizes: Vec<usize>,
        spacings: Vec<f64>,
        periodic: Vec<bool>,
        origin: Vec<f64>,
    ) -> Result<Arc<Chart>> {
        let dim = sizes.len();
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidConfig(format!(
                "chart dimension {dim} outside 2..=4"
            )));
        }
        if spacings.len() != dim || periodic.len() != dim || origin.len() != dim {
            return Err(Error::InvalidConfig(
                "per-axis field lengths disagree".into(),
            ));
        }
        if sizes.iter().any(|&n| n < 3) {
            return Err(Error::InvalidConfig(
                "need at least 3 points per axis for central differences".into(),
            ));
        }
        if spacings.iter().any(|&h| !(h > 0.0) || !h.is_finite()) {
            return Err(Error::InvalidConfig("spacings must be positive".into()));
        }
        let mut strides = vec![0usize; dim];
        let mut acc = 1usize;
        for a in (0..dim).rev() {
            strides[a] = acc;
            acc *= sizes[a];
        }
        let npoints = acc;
        let mut chart = Chart {
            dim,
            sizes,
            spacings,
            periodic,
            origin,
            strides,
            npoints,
            interior_mask: Arc::new(Vec::new()),
        };
        let all = vec![true; npoints];
        chart.interior_mask = Arc::new(chart.erode(&all));
        Ok(Arc::new(chart))
    }

    /// Fully periodic torus covering `[0, length_a)` per axis.
    pub fn torus(sizes: &[usize], lengths: &[f64]) -> Result<Arc<Chart>> {
        let spacings = sizes
            .iter()
            .zip(lengths)
            .map(|(&n, &l)| l / n as f64)
            .collect();
        Chart::new(
            sizes.to_vec(),
            spacings,
            vec![true; sizes.len()],
            vec![0.0; sizes.len()],
        )
    }

    /// Non-periodic box `[lo_a, hi_a]` per axis.
    pub fn boxed(sizes: &[usize], lo: &[f64], hi: &[f64]) -> Result<Arc<Chart>> {
        let spacings = sizes
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(&n, (&a, &b))| (b - a) / n as f64)
            .collect();
        Chart::new(
            sizes.to_vec(),
            spacings,
            vec![false; sizes.len()],
            lo.to_vec(),
        )
    }

    pub fn npoints(&self) -> usize {
        self.npoints
    }

    /// Points whose full radius-1 stencil stays in-grid or wraps.
    pub fn interior_mask(&self) -> &Arc<Vec<bool>> {
        &self.interior_mask
    }

    pub fn all_true_mask(&self) -> Arc<Vec<bool>> {
        Arc::new(vec![true; self.npoints])
    }

    #[inline]
    pub fn axis_index(&self, p: usize, axis: usize) -> usize {
        (p / self.strides[axis]) % self.sizes[axis]
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.strides)
            .map(|(i, s)| i * s)
            .sum::<usize>()
    }

    pub fn grid_index(&self, p: usize) -> [usize; MAX_DIM] {
        let mut out = [0usize; MAX_DIM];
        for a in 0..self.dim {
            out[a] = self.axis_index(p, a);
        }
        out
    }

    /// Midpoint coordinates of point `p`.
    pub fn coord(&self, p: usize) -> [f64; MAX_DIM] {
        let mut out = [0.0; MAX_DIM];
        for a in 0..self.dim {
            out[a] = self.origin[a] + (self.axis_index(p, a) as f64 + 0.5) * self.spacings[a];
        }
        out
    }

    /// Neighbor of `p` one step along `axis` (`dir` = ±1), wrapping on
    /// periodic axes.  `None` when the step leaves a non-periodic grid.
    #[inline]
    pub fn neighbor(&self, p: usize, axis: usize, dir: i32) -> Option<usize> {
        let n = self.sizes[axis];
        let i = self.axis_index(p, axis);
        let j = if dir >= 0 {
            if i + 1 < n {
                i + 1
            } else if self.periodic[axis] {
                0
            } else {
                return None;
            }
        } else if i > 0 {
            i - 1
        } else if self.periodic[axis] {
            n - 1
        } else {
            return None;
        };
        Some(p + j * self.strides[axis] - i * self.strides[axis])
    }

    /// Volume of one quadrature cell, `∏ h_a`.
    pub fn cell_volume(&self) -> f64 {
        self.spacings.iter().product()
    }

    /// Shrink a validity mask by one stencil radius: a point survives iff it
    /// and both axis neighbors (all axes) are valid.
    pub fn erode(&self, mask: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.npoints];
        for p in 0..self.npoints {
            if !mask[p] {
                continue;
            }
            let mut ok = true;
            'axes: for a in 0..self.dim {
                for dir in [-1, 1] {
                    match self.neighbor(p, a, dir) {
                        Some(q) if mask[q] => {}
                        _ => {
                            ok = false;
                            break 'axes;
                        }
                    }
                }
            }
            out[p] = ok;
        }
        out
    }

    /// Pointwise AND of two masks.
    pub fn intersect_masks(a: &Arc<Vec<bool>>, b: &Arc<Vec<bool>>) -> Arc<Vec<bool>> {
        if Arc::ptr_eq(a, b) {
            return a.clone();
        }
        Arc::new(a.iter().zip(b.iter()).map(|(&x, &y)| x && y).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_chart_is_interior_everywhere() {
        let chart = Chart::torus(&[8, 8, 8], &[1.0, 1.0, 1.0]).unwrap();
        assert!(chart.interior_mask().iter().all(|&b| b));
    }

    #[test]
    fn boxed_chart_excludes_outermost_layer() {
        let chart = Chart::boxed(&[6, 6], &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let mask = chart.interior_mask();
        let mut count = 0;
        for p in 0..chart.npoints() {
            let idx = chart.grid_index(p);
            let interior = (1..5).contains(&idx[0]) && (1..5).contains(&idx[1]);
            assert_eq!(mask[p], interior, "point {idx:?}");
            if mask[p] {
                count += 1;
            }
        }
        assert_eq!(count, 16);
    }

    #[test]
    fn neighbors_wrap_only_on_periodic_axes() {
        let chart = Chart::new(
            vec![4, 4],
            vec![0.25, 0.25],
            vec![true, false],
            vec![0.0, 0.0],
        )
        .unwrap();
        let p = chart.flat_index(&[0, 0]);
        assert_eq!(chart.neighbor(p, 0, -1), Some(chart.flat_index(&[3, 0])));
        assert_eq!(chart.neighbor(p, 1, -1), None);
    }

    #[test]
    fn coords_are_cell_midpoints() {
        let chart = Chart::boxed(&[4, 4], &[1.0, 1.0], &[2.0, 2.0]).unwrap();
        let c = chart.coord(chart.flat_index(&[0, 3]));
        assert!((c[0] - 1.125).abs() < 1e-15);
        assert!((c[1] - 1.875).abs() < 1e-15);
    }
}
