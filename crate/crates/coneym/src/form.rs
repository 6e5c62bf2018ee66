//! Lie-algebra-valued differential forms on structured grids.
//!
//! Coefficients are stored per point, per strictly-increasing multi-index,
//! as full `matrix_dim × matrix_dim` complex matrices.  Storing matrices
//! (rather than basis coefficients) keeps the wedge closed: products such as
//! `α∧β` of su(2)-valued one-forms momentarily leave the algebra span even
//! though every combination the theory uses (curvature, graded brackets)
//! lands back inside it.
//!
//! Differencing is second-order central, wrapping on periodic axes.  Every
//! form carries a validity mask; differencing erodes the mask by one layer
//! on axes where the stencil would leave the grid, pointwise operations
//! intersect masks.  On fully periodic charts all masks stay all-true.
//!
//! Wedge conventions, pinned here and unit-tested: the curvature is
//! `F_A = dA + A∧A` with the matrix-product wedge, the covariant derivative
//! uses the graded bracket `[A∧s] = A∧s - (-1)^{|s|} s∧A`, and the two agree
//! through `2·(A∧A) = [A∧A]`.

use crate::algebra::{AlgebraDescriptor, CMat};
use crate::chart::Chart;
use crate::comb;
use crate::reduce;
use crate::{Error, Result};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A degree-`k` form with Lie-algebra values.
#[derive(Clone)]
pub struct GValuedForm {
    pub chart: Arc<Chart>,
    pub algebra: Arc<AlgebraDescriptor>,
    pub degree: usize,
    values: Vec<Complex64>, // npoints × ncomps × matrix_dim²
    mask: Arc<Vec<bool>>,
}

impl GValuedForm {
    pub fn zero(chart: &Arc<Chart>, algebra: &Arc<AlgebraDescriptor>, degree: usize) -> Self {
        let ncomps = comb::choose(chart.dim, degree);
        let md2 = algebra.matrix_dim * algebra.matrix_dim;
        GValuedForm {
            chart: chart.clone(),
            algebra: algebra.clone(),
            degree,
            values: vec![Complex64::new(0.0, 0.0); chart.npoints() * ncomps * md2],
            mask: chart.all_true_mask(),
        }
    }

    /// Build from a pointwise matrix function of (coordinates, component axes).
    pub fn from_matrix_fn<F>(
        chart: &Arc<Chart>,
        algebra: &Arc<AlgebraDescriptor>,
        degree: usize,
        f: F,
    ) -> Self
    where
        F: Fn(&[f64], &[u8]) -> CMat + Sync,
    {
        let mut out = Self::zero(chart, algebra, degree);
        let info = comb::degree_info(chart.dim, degree);
        let tuples: Vec<Vec<u8>> = info
            .masks
            .iter()
            .map(|&mk| comb::axes_of(mk).collect())
            .collect();
        let md2 = algebra.matrix_dim * algebra.matrix_dim;
        let stride = out.ncomps() * md2;
        let dim = chart.dim;
        reduce::fill_slots(&mut out.values, stride.max(1), |p, slot| {
            if stride == 0 {
                return;
            }
            let x = chart.coord(p);
            for (c, tuple) in tuples.iter().enumerate() {
                let m = f(&x[..dim], tuple);
                slot[c * md2..(c + 1) * md2].copy_from_slice(&m.a);
            }
        });
        out
    }

    /// Build from basis coefficients instead of raw matrices.
    pub fn from_coeff_fn<F>(
        chart: &Arc<Chart>,
        algebra: &Arc<AlgebraDescriptor>,
        degree: usize,
        f: F,
    ) -> Self
    where
        F: Fn(&[f64], &[u8]) -> Vec<f64> + Sync,
    {
        Self::from_matrix_fn(chart, algebra, degree, |x, comp| {
            algebra.matrix_of(&f(x, comp))
        })
    }

    /// Random truncated trigonometric polynomial field, deterministic in the
    /// seed: per component and basis direction a handful of products of
    /// `sin/cos(2π k x / L)` with frequencies `|k| ≤ max_freq`.
    pub fn random_trig(
        chart: &Arc<Chart>,
        algebra: &Arc<AlgebraDescriptor>,
        degree: usize,
        max_freq: u32,
        scale: f64,
        seed: u64,
    ) -> Self {
        let ncomps = comb::choose(chart.dim, degree);
        let dim = chart.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // terms[comp][basis] = Vec<(amp, per-axis (freq, phase_is_cos))>
        type Term = (f64, Vec<(u32, bool)>);
        let mut terms: Vec<Vec<Vec<Term>>> = Vec::new();
        for _ in 0..ncomps {
            let mut per_basis = Vec::new();
            for _ in 0..algebra.dim() {
                let mut ts: Vec<Term> = Vec::new();
                for _ in 0..3 {
                    let amp = scale * rng.random_range(-1.0..1.0);
                    let factors = (0..dim)
                        .map(|_| (rng.random_range(0..=max_freq), rng.random_bool(0.5)))
                        .collect();
                    ts.push((amp, factors));
                }
                per_basis.push(ts);
            }
            terms.push(per_basis);
        }
        let lengths: Vec<f64> = (0..dim)
            .map(|a| chart.sizes[a] as f64 * chart.spacings[a])
            .collect();
        let info = comb::degree_info(dim, degree);
        Self::from_coeff_fn(chart, algebra, degree, |x, tuple| {
            let mask = tuple.iter().fold(0u8, |acc, &a| acc | 1 << a);
            let comp = info.pos[mask as usize] as usize;
            (0..algebra.dim())
                .map(|b| {
                    terms[comp][b]
                        .iter()
                        .map(|(amp, factors)| {
                            let mut v = *amp;
                            for (a, &(k, use_cos)) in factors.iter().enumerate() {
                                let arg = 2.0 * std::f64::consts::PI * k as f64 * x[a]
                                    / lengths[a];
                                v *= if use_cos { arg.cos() } else { arg.sin() };
                            }
                            v
                        })
                        .sum()
                })
                .collect()
        })
    }

    pub fn ncomps(&self) -> usize {
        comb::choose(self.chart.dim, self.degree)
    }

    #[inline]
    pub fn md2(&self) -> usize {
        self.algebra.matrix_dim * self.algebra.matrix_dim
    }

    pub fn mask(&self) -> &Arc<Vec<bool>> {
        &self.mask
    }

    pub fn with_mask(mut self, mask: Arc<Vec<bool>>) -> Self {
        self.mask = mask;
        self
    }

    #[inline]
    pub fn value(&self, p: usize, comp: usize) -> &[Complex64] {
        let md2 = self.md2();
        let base = (p * self.ncomps() + comp) * md2;
        &self.values[base..base + md2]
    }

    #[inline]
    pub fn value_mut(&mut self, p: usize, comp: usize) -> &mut [Complex64] {
        let md2 = self.md2();
        let nc = self.ncomps();
        let base = (p * nc + comp) * md2;
        &mut self.values[base..base + md2]
    }

    pub fn matrix_at(&self, p: usize, comp: usize) -> CMat {
        CMat {
            n: self.algebra.matrix_dim,
            a: self.value(p, comp).to_vec(),
        }
    }

    pub fn raw_values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn raw_values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    fn compatible(&self, other: &GValuedForm) -> Result<()> {
        if self.chart.as_ref() != other.chart.as_ref() {
            return Err(Error::ChartMismatch);
        }
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &GValuedForm) -> Result<GValuedForm> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (o, v) in out.values.iter_mut().zip(&other.values) {
            *o += v;
        }
        out.mask = Chart::intersect_masks(&self.mask, &other.mask);
        Ok(out)
    }

    pub fn sub(&self, other: &GValuedForm) -> Result<GValuedForm> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> GValuedForm {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v *= s;
        }
        out
    }

    /// `self += s · other` in place (masks intersect).
    pub fn axpy(&mut self, s: f64, other: &GValuedForm) -> Result<()> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        for (o, v) in self.values.iter_mut().zip(&other.values) {
            *o += s * v;
        }
        self.mask = Chart::intersect_masks(&self.mask, &other.mask);
        Ok(())
    }

    /// Largest Frobenius norm of any coefficient matrix on the valid mask.
    pub fn sup_norm(&self) -> f64 {
        let nc = self.ncomps();
        let md2 = self.md2();
        if nc == 0 {
            return 0.0;
        }
        let mask = &self.mask;
        reduce::indexed_max(self.chart.npoints(), |p| {
            if !mask[p] {
                return 0.0;
            }
            let mut worst: f64 = 0.0;
            for c in 0..nc {
                let base = (p * nc + c) * md2;
                let s: f64 = self.values[base..base + md2]
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum();
                worst = worst.max(s.sqrt());
            }
            worst
        })
        .max(0.0)
    }

    /// Central-difference exterior derivative; errors at top degree.
    pub fn exterior_derivative(&self) -> Result<GValuedForm> {
        if self.degree >= self.chart.dim {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree,
                dim: self.chart.dim,
            });
        }
        Ok(self.derivative_any())
    }

    /// Exterior derivative that maps top-degree forms to the empty
    /// degree-(m+1) form instead of erroring (internal cone bookkeeping).
    pub fn derivative_any(&self) -> GValuedForm {
        let chart = &self.chart;
        let m = chart.dim;
        let k = self.degree;
        let mut out = GValuedForm::zero(chart, &self.algebra, k + 1);
        if k >= m {
            out.mask = Arc::new(chart.erode(&self.mask));
            return out;
        }
        let table = comb::deriv_table(m, k);
        let md2 = self.md2();
        let nc_in = self.ncomps();
        let nc_out = out.ncomps();
        let stride = nc_out * md2;
        let values_in = &self.values;
        let spacings = &chart.spacings;
        reduce::fill_slots(&mut out.values, stride, |p, slot| {
            for term in table {
                let axis = term.axis as usize;
                let (fwd, bwd) = match (
                    chart.neighbor(p, axis, 1),
                    chart.neighbor(p, axis, -1),
                ) {
                    (Some(f), Some(b)) => (f, b),
                    _ => continue, // boundary: excluded by the eroded mask
                };
                let inv2h = term.sign / (2.0 * spacings[axis]);
                let fbase = (fwd * nc_in + term.comp as usize) * md2;
                let bbase = (bwd * nc_in + term.comp as usize) * md2;
                let obase = term.out as usize * md2;
                for i in 0..md2 {
                    slot[obase + i] += (values_in[fbase + i] - values_in[bbase + i]) * inv2h;
                }
            }
        });
        out.mask = Arc::new(chart.erode(&self.mask));
        out
    }

    /// Pointwise antisymmetrized product with matrix-product values.
    pub fn wedge(&self, other: &GValuedForm) -> Result<GValuedForm> {
        self.compatible(other)?;
        let m = self.chart.dim;
        if self.degree + other.degree > m {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree + other.degree,
                dim: m,
            });
        }
        let table = comb::wedge_table(m, self.degree, other.degree);
        let mut out = GValuedForm::zero(&self.chart, &self.algebra, self.degree + other.degree);
        let md = self.algebra.matrix_dim;
        let md2 = md * md;
        let nc_a = self.ncomps();
        let nc_b = other.ncomps();
        let nc_out = out.ncomps();
        let stride = nc_out * md2;
        let av = &self.values;
        let bv = &other.values;
        reduce::fill_slots(&mut out.values, stride, |p, slot| {
            for term in table {
                let abase = (p * nc_a + term.a as usize) * md2;
                let bbase = (p * nc_b + term.b as usize) * md2;
                let obase = term.out as usize * md2;
                // slot[out] += sign · A·B (matrix product)
                for r in 0..md {
                    for l in 0..md {
                        let x = av[abase + r * md + l] * term.sign;
                        if x == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for cc in 0..md {
                            slot[obase + r * md + cc] += x * bv[bbase + l * md + cc];
                        }
                    }
                }
            }
        });
        out.mask = Chart::intersect_masks(&self.mask, &other.mask);
        Ok(out)
    }

    /// Graded bracket `[self ∧ other] = self∧other - (-1)^{jk} other∧self`.
    pub fn graded_bracket(&self, other: &GValuedForm) -> Result<GValuedForm> {
        let ab = self.wedge(other)?;
        let ba = other.wedge(self)?;
        let sign = if (self.degree * other.degree) % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        let mut out = ab;
        out.axpy(sign, &ba)?;
        Ok(out)
    }
}

/// Curvature `F_A = dA + A∧A` of a connection one-form.
pub fn curvature(a: &GValuedForm) -> Result<GValuedForm> {
    if a.degree != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: a.degree,
        });
    }
    let da = a.derivative_any();
    let aa = a.wedge(a)?;
    da.add(&aa)
}

/// Covariant derivative `d_A s = ds + [A ∧ s]` with the graded bracket.
pub fn covariant_derivative(a: &GValuedForm, s: &GValuedForm) -> Result<GValuedForm> {
    if a.degree != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: a.degree,
        });
    }
    let ds = s.derivative_any();
    let bracket = a.graded_bracket(s)?;
    ds.add(&bracket)
}

/// A real-valued form (trivial coefficient ring), the carrier for ζ.
#[derive(Clone)]
pub struct RealForm {
    pub chart: Arc<Chart>,
    pub degree: usize,
    coeffs: Vec<f64>, // npoints × ncomps
    mask: Arc<Vec<bool>>,
}

impl RealForm {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        let ncomps = comb::choose(chart.dim, degree);
        RealForm {
            chart: chart.clone(),
            degree,
            coeffs: vec![0.0; chart.npoints() * ncomps],
            mask: chart.all_true_mask(),
        }
    }

    pub fn from_fn<F>(chart: &Arc<Chart>, degree: usize, f: F) -> Self
    where
        F: Fn(&[f64], &[u8]) -> f64 + Sync,
    {
        let mut out = Self::zero(chart, degree);
        let info = comb::degree_info(chart.dim, degree);
        let tuples: Vec<Vec<u8>> = info
            .masks
            .iter()
            .map(|&mk| comb::axes_of(mk).collect())
            .collect();
        let stride = tuples.len();
        let dim = chart.dim;
        reduce::fill_slots(&mut out.coeffs, stride.max(1), |p, slot| {
            if stride == 0 {
                return;
            }
            let x = chart.coord(p);
            for (c, tuple) in tuples.iter().enumerate() {
                slot[c] = f(&x[..dim], tuple);
            }
        });
        out
    }

    pub fn ncomps(&self) -> usize {
        comb::choose(self.chart.dim, self.degree)
    }

    #[inline]
    pub fn coeff(&self, p: usize, comp: usize) -> f64 {
        self.coeffs[p * self.ncomps() + comp]
    }

    pub fn mask(&self) -> &Arc<Vec<bool>> {
        &self.mask
    }

    pub fn sup_norm(&self) -> f64 {
        let nc = self.ncomps();
        if nc == 0 {
            return 0.0;
        }
        let mask = &self.mask;
        reduce::indexed_max(self.chart.npoints(), |p| {
            if !mask[p] {
                return 0.0;
            }
            (0..nc)
                .map(|c| self.coeff(p, c).abs())
                .fold(0.0, f64::max)
        })
        .max(0.0)
    }

    /// Central-difference exterior derivative on real coefficients.
    pub fn derivative(&self) -> RealForm {
        let chart = &self.chart;
        let m = chart.dim;
        let k = self.degree;
        let mut out = RealForm::zero(chart, k + 1);
        if k >= m {
            out.mask = Arc::new(chart.erode(&self.mask));
            return out;
        }
        let table = comb::deriv_table(m, k);
        let nc_in = self.ncomps();
        let nc_out = out.ncomps();
        let coeffs_in = &self.coeffs;
        let spacings = &chart.spacings;
        reduce::fill_slots(&mut out.coeffs, nc_out, |p, slot| {
            for term in table {
                let axis = term.axis as usize;
                let (fwd, bwd) = match (
                    chart.neighbor(p, axis, 1),
                    chart.neighbor(p, axis, -1),
                ) {
                    (Some(f), Some(b)) => (f, b),
                    _ => continue,
                };
                let inv2h = term.sign / (2.0 * spacings[axis]);
                slot[term.out as usize] += (coeffs_in[fwd * nc_in + term.comp as usize]
                    - coeffs_in[bwd * nc_in + term.comp as usize])
                    * inv2h;
            }
        });
        out.mask = Arc::new(chart.erode(&self.mask));
        out
    }

    /// Pointwise wedge with a g-valued form: `self ∧ alpha` (real scalars on
    /// the left, so no matrix products are involved).
    pub fn wedge_g(&self, alpha: &GValuedForm) -> Result<GValuedForm> {
        if self.chart.as_ref() != alpha.chart.as_ref() {
            return Err(Error::ChartMismatch);
        }
        let m = self.chart.dim;
        if self.degree + alpha.degree > m {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree + alpha.degree,
                dim: m,
            });
        }
        let table = comb::wedge_table(m, self.degree, alpha.degree);
        let mut out = GValuedForm::zero(&self.chart, &alpha.algebra, self.degree + alpha.degree);
        let md2 = alpha.md2();
        let nc_a = self.ncomps();
        let nc_b = alpha.ncomps();
        let nc_out = out.ncomps();
        let stride = nc_out * md2;
        let av = &self.coeffs;
        let bv = alpha.raw_values();
        reduce::fill_slots(&mut out.values, stride, |p, slot| {
            for term in table {
                let s = av[p * nc_a + term.a as usize] * term.sign;
                if s == 0.0 {
                    continue;
                }
                let bbase = (p * nc_b + term.b as usize) * md2;
                let obase = term.out as usize * md2;
                for i in 0..md2 {
                    slot[obase + i] += bv[bbase + i] * s;
                }
            }
        });
        out.mask = Chart::intersect_masks(&self.mask, alpha.mask());
        Ok(out)
    }
}

/// A closed real two-form with its measured discrete closedness defect.
///
/// Closedness is asserted, not enforced: construction measures `‖dζ‖_sup`
/// on the eroded mask and records it, so discretization noise in a supplied
/// ζ stays visible instead of being silently projected away.
#[derive(Clone)]
pub struct RealTwoForm {
    form: RealForm,
    pub d_sup: f64,
}

impl RealTwoForm {
    pub fn new(form: RealForm) -> Result<RealTwoForm> {
        if form.degree != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: form.degree,
            });
        }
        let d_sup = if form.degree < form.chart.dim {
            form.derivative().sup_norm()
        } else {
            0.0
        };
        Ok(RealTwoForm { form, d_sup })
    }

    pub fn from_fn<F>(chart: &Arc<Chart>, f: F) -> RealTwoForm
    where
        F: Fn(&[f64], &[u8]) -> f64 + Sync,
    {
        Self::new(RealForm::from_fn(chart, 2, f)).expect("degree is 2 by construction")
    }

    pub fn zero(chart: &Arc<Chart>) -> RealTwoForm {
        Self::new(RealForm::zero(chart, 2)).expect("degree is 2 by construction")
    }

    pub fn form(&self) -> &RealForm {
        &self.form
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.form.chart
    }

    #[inline]
    pub fn coeff(&self, p: usize, comp: usize) -> f64 {
        self.form.coeff(p, comp)
    }
}

/// Wedge by ζ: `ζ ∧ α`, degree `k → k+2`.
pub fn zeta_wedge(zeta: &RealTwoForm, alpha: &GValuedForm) -> Result<GValuedForm> {
    zeta.form().wedge_g(alpha)
}
