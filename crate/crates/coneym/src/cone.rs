//! The mapping-cone layer: paired forms `(η, ξ)` standing for `η + θξ`
//! with a formal one-form θ obeying `dθ = ζ`.
//!
//! θ is never materialized.  All of its algebra is baked into the operator
//! definitions as signs:
//!
//! - star: `η + θξ ↦ *ξ + θ(-1)^{|η|}*η`
//! - inner product: `⟨η₁+θξ₁, η₂+θξ₂⟩ = ⟨η₁,η₂⟩ + ⟨ξ₁,ξ₂⟩`
//! - differential: `(η, ξ) ↦ (d_Aη + ζ∧ξ,  [B,η] - d_Aξ)`
//! - codifferential: `(η, ξ) ↦ (d_A*η - [B,ξ],  ζ*η - d_A*ξ)`
//! - product: `(a + θb)(c + θd) = a∧c + θ(b∧c + (-1)^{|a|} a∧d)`
//!
//! A cone form of degree `k` runs over `0..=m+1`; the η component at degree
//! `m+1` is the empty (zero-component) form, and ξ is absent at `k = 0`.

use crate::algebra::AlgebraDescriptor;
use crate::chart::Chart;
use crate::form::{covariant_derivative, curvature, zeta_wedge, GValuedForm, RealTwoForm};
use crate::metric::MetricField;
use crate::star::{codifferential, hodge_star, inner_product, integrate_top_trace};
use crate::{Error, Result};
use std::sync::Arc;

/// The optimization variable: a connection one-form and an adjoint scalar.
#[derive(Clone)]
pub struct ConnectionPair {
    pub a: GValuedForm,
    pub b: GValuedForm,
}

impl ConnectionPair {
    pub fn new(a: GValuedForm, b: GValuedForm) -> Result<Self> {
        if a.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: a.degree,
            });
        }
        if b.degree != 0 {
            return Err(Error::DegreeMismatch {
                expected: 0,
                got: b.degree,
            });
        }
        if a.chart.as_ref() != b.chart.as_ref() {
            return Err(Error::ChartMismatch);
        }
        if a.algebra != b.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(ConnectionPair { a, b })
    }

    pub fn zero(chart: &Arc<Chart>, algebra: &Arc<AlgebraDescriptor>) -> Self {
        ConnectionPair {
            a: GValuedForm::zero(chart, algebra, 1),
            b: GValuedForm::zero(chart, algebra, 0),
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.a.chart
    }

    pub fn algebra(&self) -> &Arc<AlgebraDescriptor> {
        &self.a.algebra
    }
}

/// A cone form `η + θξ` of degree `k` (η of degree k, ξ of degree k-1).
#[derive(Clone)]
pub struct ConeForm {
    pub eta: GValuedForm,
    pub xi: Option<GValuedForm>,
}

impl ConeForm {
    pub fn new(eta: GValuedForm, xi: Option<GValuedForm>) -> Result<Self> {
        if let Some(xi) = &xi {
            if xi.degree + 1 != eta.degree {
                return Err(Error::DegreeMismatch {
                    expected: eta.degree.saturating_sub(1),
                    got: xi.degree,
                });
            }
            if eta.chart.as_ref() != xi.chart.as_ref() {
                return Err(Error::ChartMismatch);
            }
            if eta.algebra != xi.algebra {
                return Err(Error::AlgebraMismatch);
            }
        } else if eta.degree != 0 {
            return Err(Error::DegreeMismatch {
                expected: eta.degree,
                got: 0,
            });
        }
        Ok(ConeForm { eta, xi })
    }

    pub fn zero(chart: &Arc<Chart>, algebra: &Arc<AlgebraDescriptor>, degree: usize) -> Self {
        let eta = GValuedForm::zero(chart, algebra, degree);
        let xi = if degree == 0 {
            None
        } else {
            Some(GValuedForm::zero(chart, algebra, degree - 1))
        };
        ConeForm { eta, xi }
    }

    pub fn random_trig(
        chart: &Arc<Chart>,
        algebra: &Arc<AlgebraDescriptor>,
        degree: usize,
        max_freq: u32,
        scale: f64,
        seed: u64,
    ) -> Self {
        let eta = GValuedForm::random_trig(chart, algebra, degree, max_freq, scale, seed);
        let xi = if degree == 0 {
            None
        } else {
            Some(GValuedForm::random_trig(
                chart,
                algebra,
                degree - 1,
                max_freq,
                scale,
                seed.wrapping_add(0x9e37),
            ))
        };
        ConeForm { eta, xi }
    }

    pub fn degree(&self) -> usize {
        self.eta.degree
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.eta.chart
    }

    /// ξ as a reference, or `None` at degree zero.
    pub fn xi(&self) -> Option<&GValuedForm> {
        self.xi.as_ref()
    }

    pub fn add(&self, other: &ConeForm) -> Result<ConeForm> {
        let eta = self.eta.add(&other.eta)?;
        let xi = match (&self.xi, &other.xi) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            (None, None) => None,
            _ => {
                return Err(Error::DegreeMismatch {
                    expected: self.degree(),
                    got: other.degree(),
                })
            }
        };
        Ok(ConeForm { eta, xi })
    }

    pub fn sub(&self, other: &ConeForm) -> Result<ConeForm> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> ConeForm {
        ConeForm {
            eta: self.eta.scaled(s),
            xi: self.xi.as_ref().map(|x| x.scaled(s)),
        }
    }

    /// Max of the component sup norms.
    pub fn sup_norm(&self) -> f64 {
        let x = self.xi.as_ref().map_or(0.0, |x| x.sup_norm());
        self.eta.sup_norm().max(x)
    }
}

// Degree-tolerant building blocks: the cone operators reach the top degree
// m+1 where the η component is empty; ordinary form operators error there.

fn d_a_any(a: &GValuedForm, s: &GValuedForm) -> Result<GValuedForm> {
    if s.degree >= s.chart.dim {
        return Ok(GValuedForm::zero(&s.chart, &s.algebra, s.degree + 1));
    }
    covariant_derivative(a, s)
}

fn zeta_wedge_any(zeta: &RealTwoForm, s: &GValuedForm) -> Result<GValuedForm> {
    if s.degree + 2 > s.chart.dim {
        return Ok(GValuedForm::zero(&s.chart, &s.algebra, s.degree + 2));
    }
    zeta_wedge(zeta, s)
}

fn wedge_any(a: &GValuedForm, b: &GValuedForm) -> Result<GValuedForm> {
    if a.degree + b.degree > a.chart.dim {
        return Ok(GValuedForm::zero(&a.chart, &a.algebra, a.degree + b.degree));
    }
    a.wedge(b)
}

/// Hodge star for cone forms: `η + θξ ↦ *ξ + θ(-1)^{|η|}*η`, degree
/// `k → m+1-k`.
pub fn cone_star(c: &ConeForm, metric: &MetricField) -> Result<ConeForm> {
    let m = c.chart().dim;
    let k = c.degree();
    let out_degree = m + 1 - k;
    let algebra = &c.eta.algebra;
    let chart = c.chart();
    // η part of the output: *ξ (degree m+1-k); empty form at k = 0.
    let eta_out = match &c.xi {
        Some(xi) => hodge_star(xi, metric)?,
        None => GValuedForm::zero(chart, algebra, m + 1),
    };
    // ξ part of the output: (-1)^k *η (degree m-k); absent when out_degree = 0.
    let xi_out = if out_degree == 0 {
        None
    } else {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let star_eta = if c.eta.degree > m {
            GValuedForm::zero(chart, algebra, 0) // unreachable: out_degree = 0 then
        } else {
            hodge_star(&c.eta, metric)?
        };
        Some(star_eta.scaled(sign))
    };
    ConeForm::new(eta_out, xi_out)
}

/// Cone inner product: sum of the component inner products.
pub fn cone_inner(c1: &ConeForm, c2: &ConeForm, metric: &MetricField) -> Result<f64> {
    if c1.degree() != c2.degree() {
        return Err(Error::DegreeMismatch {
            expected: c1.degree(),
            got: c2.degree(),
        });
    }
    let mut s = if c1.eta.ncomps() > 0 {
        inner_product(&c1.eta, &c2.eta, metric)?
    } else {
        0.0
    };
    if let (Some(x1), Some(x2)) = (&c1.xi, &c2.xi) {
        s += inner_product(x1, x2, metric)?;
    }
    Ok(s)
}

/// The same inner product through the integral formula: the θ-coefficient of
/// `(η₁+θξ₁) ∧ *_C(η₂+θξ₂)` is an m-form whose trace-pairing integrates to
/// `⟨c₁, c₂⟩`.  Cross-check route for [`cone_inner`].
pub fn cone_inner_integral_route(
    c1: &ConeForm,
    c2: &ConeForm,
    metric: &MetricField,
) -> Result<f64> {
    let star2 = cone_star(c2, metric)?;
    // θ-part of c1 ∧ star2 with |η₁| = k: ξ₁∧(star2.η) + (-1)^k η₁∧(star2.ξ)
    let k = c1.degree();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut theta_part = match (&c1.xi, star2.eta.ncomps() > 0) {
        (Some(x1), true) => wedge_any(x1, &star2.eta)?,
        _ => GValuedForm::zero(c1.chart(), &c1.eta.algebra, c1.chart().dim),
    };
    if let Some(sx) = &star2.xi {
        theta_part.axpy(sign, &wedge_any(&c1.eta, sx)?)?;
    }
    integrate_top_trace(&theta_part)
}

/// The cone differential twisted by `(A, B)`:
/// `(η, ξ) ↦ (d_Aη + ζ∧ξ, [B,η] - d_Aξ)`.
pub fn cone_differential(
    pair: &ConnectionPair,
    zeta: &RealTwoForm,
    c: &ConeForm,
) -> Result<ConeForm> {
    let m = c.chart().dim;
    let k = c.degree();
    if k > m {
        return Err(Error::DegreeOutOfRange { degree: k, dim: m });
    }
    if pair.chart().as_ref() != c.chart().as_ref() {
        return Err(Error::ChartMismatch);
    }
    if pair.algebra() != &c.eta.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let mut eta_out = d_a_any(&pair.a, &c.eta)?;
    if let Some(xi) = &c.xi {
        eta_out = eta_out.add(&zeta_wedge_any(zeta, xi)?)?;
    }
    // ξ part: [B, η] - d_Aξ, degree k.
    let mut xi_out = pair.b.graded_bracket(&c.eta)?;
    if let Some(xi) = &c.xi {
        xi_out.axpy(-1.0, &d_a_any(&pair.a, xi)?)?;
    }
    ConeForm::new(eta_out, Some(xi_out))
}

/// The adjoint of [`cone_differential`] with respect to [`cone_inner`]:
/// `(η, ξ) ↦ (d_A*η - [B,ξ], ζ*η - d_A*ξ)`.
pub fn cone_codifferential(
    pair: &ConnectionPair,
    zeta: &RealTwoForm,
    c: &ConeForm,
    metric: &MetricField,
) -> Result<ConeForm> {
    let k = c.degree();
    if k == 0 {
        return Err(Error::DegreeOutOfRange {
            degree: 0,
            dim: c.chart().dim,
        });
    }
    let m = c.chart().dim;
    // η part: d_A*η - [B, ξ], degree k-1.
    let mut eta_out = if c.eta.ncomps() > 0 {
        codifferential(&pair.a, &c.eta, metric)?
    } else {
        GValuedForm::zero(c.chart(), &c.eta.algebra, k - 1)
    };
    if let Some(xi) = &c.xi {
        eta_out.axpy(-1.0, &pair.b.graded_bracket(xi)?)?;
    }
    // ξ part: ζ*η - d_A*ξ, degree k-2; absent at output degree 0.
    let xi_out = if k == 1 {
        None
    } else {
        let mut out = if c.eta.degree >= 2 && c.eta.degree <= m {
            crate::star::zeta_adjoint(zeta, &c.eta, metric)?
        } else {
            GValuedForm::zero(c.chart(), &c.eta.algebra, k - 2)
        };
        if let Some(xi) = &c.xi {
            if xi.degree >= 1 {
                out.axpy(-1.0, &codifferential(&pair.a, xi, metric)?)?;
            }
        }
        Some(out)
    };
    ConeForm::new(eta_out, xi_out)
}

/// Cone curvature of the pair: `(F_A + ζB, -d_A B)`.
pub fn cone_curvature(pair: &ConnectionPair, zeta: &RealTwoForm) -> Result<ConeForm> {
    let f = curvature(&pair.a)?;
    let eta = f.add(&zeta_wedge_any(zeta, &pair.b)?)?;
    let xi = covariant_derivative(&pair.a, &pair.b)?.scaled(-1.0);
    ConeForm::new(eta, Some(xi))
}

/// Cone wedge: `(a + θb) ∧ (c + θd) = a∧c + θ(b∧c + (-1)^{|a|} a∧d)`.
pub fn cone_wedge(c1: &ConeForm, c2: &ConeForm) -> Result<ConeForm> {
    let j = c1.degree();
    let out_degree = j + c2.degree();
    let m = c1.chart().dim;
    if out_degree > m + 1 {
        return Err(Error::DegreeOutOfRange {
            degree: out_degree,
            dim: m,
        });
    }
    let eta = wedge_any(&c1.eta, &c2.eta)?;
    let xi = if out_degree == 0 {
        None
    } else {
        let mut x = match &c1.xi {
            Some(b) => wedge_any(b, &c2.eta)?,
            None => GValuedForm::zero(c1.chart(), &c1.eta.algebra, out_degree - 1),
        };
        if let Some(d) = &c2.xi {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            x.axpy(sign, &wedge_any(&c1.eta, d)?)?;
        }
        Some(x)
    };
    ConeForm::new(eta, xi)
}

/// Graded bracket on cone forms: `[c₁ ∧ c₂] = c₁∧c₂ - (-1)^{jk} c₂∧c₁`.
pub fn cone_graded_bracket(c1: &ConeForm, c2: &ConeForm) -> Result<ConeForm> {
    let ab = cone_wedge(c1, c2)?;
    let ba = cone_wedge(c2, c1)?;
    let sign = if (c1.degree() * c2.degree()) % 2 == 0 {
        -1.0
    } else {
        1.0
    };
    ab.add(&ba.scaled(sign))
}

/// Linearization of the Euler-Lagrange map at `pair` in direction
/// `(η, ξ)`:  `D_C* D_C (η + θξ) + (-1)^m *_C [ (η + θξ), *_C F ]`
/// with `F` the cone curvature.
pub fn linearized_el(
    pair: &ConnectionPair,
    zeta: &RealTwoForm,
    metric: &MetricField,
    direction: &ConeForm,
) -> Result<ConeForm> {
    if direction.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: direction.degree(),
        });
    }
    let m = direction.chart().dim;
    let dd = cone_differential(pair, zeta, direction)?;
    let principal = cone_codifferential(pair, zeta, &dd, metric)?;
    let f = cone_curvature(pair, zeta)?;
    let star_f = cone_star(&f, metric)?;
    let bracket = cone_graded_bracket(direction, &star_f)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let curvature_term = cone_star(&bracket, metric)?.scaled(sign);
    principal.add(&curvature_term)
}

/// Residual of the gauge-fixing condition `D_C*(η + θξ) = 0` at a deformation
/// (exposed as a diagnostic; the flow never enforces it).
pub fn gauge_fixing_residual(
    pair: &ConnectionPair,
    zeta: &RealTwoForm,
    metric: &MetricField,
    direction: &ConeForm,
) -> Result<f64> {
    let r = cone_codifferential(pair, zeta, direction, metric)?;
    cone_inner(&r, &r, metric).map(|v| v.max(0.0).sqrt())
}
