//! Numerical toolkit for connection pairs `(A, B)` coupled to a closed
//! two-form ζ on structured grids.
//!
//! The central objects are Lie-algebra-valued differential forms on
//! rectangular grids (periodic or boxed), the curvature pair
//! `(F_A + ζB, -d_A B)` built from a connection one-form `A` and an
//! adjoint scalar `B`, the energy `‖F_A + ζB‖² + ‖d_A B‖²`, and its
//! critical-point residuals.  Everything is second-order accurate:
//! central differences on grid points, pointwise Hodge star, midpoint
//! quadrature.
//!
//! Modules:
//! - [`chart`], [`metric`]: grids, masks, Riemannian metrics, quadrature.
//! - [`algebra`]: matrix Lie algebras u(1), su(2), so(N).
//! - [`form`], [`star`]: g-valued forms, d, wedge, Hodge star, codifferentials.
//! - [`cone`]: paired forms `(η, ξ)` with their differential, star and inner
//!   product; curvature and linearization of the energy.
//! - [`functional`]: energy, Euler-Lagrange residuals, first variation,
//!   gradient flow, 3D duality residual and boundary charge.
//! - [`solutions`]: closed-form reference configurations and their verifiers.
//! - [`holonomy`]: path-ordered transport around lattice loops and the
//!   period-group classifier.
//! - [`convergence`], [`io`]: refinement studies, reports, serialization.

pub mod algebra;
pub mod chart;
pub mod comb;
pub mod cone;
// pub mod convergence;
pub mod form;
// pub mod functional;
// pub mod holonomy;
// pub mod io;
pub mod metric;
pub mod reduce;
pub mod scalar;
// pub mod solutions;
pub mod star;

pub use algebra::{AlgebraDescriptor, AlgebraElement, AlgebraName};
pub use chart::Chart;
pub use cone::{ConeForm, ConnectionPair};
pub use form::{GValuedForm, RealForm, RealTwoForm};
// pub use functional::{ELResidual, FlowOptions, FlowReport};
pub use metric::{MetricField, ScalarDensityReport};
// pub use solutions::NamedConfiguration;

use thiserror::Error;

/// Errors raised by grid, algebra and operator code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("chart mismatch between operands")]
    ChartMismatch,
    #[error("algebra mismatch between operands")]
    AlgebraMismatch,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree {degree} out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("operation requires dimension {expected}, chart has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix of size {got} not in the span of the {name} basis (projection residual {residual:.3e})")]
    NotInBasis {
        name: String,
        got: usize,
        residual: f64,
    },
    #[error("metric is not symmetric positive definite at point {point}")]
    NotPositiveDefinite { point: usize },
    #[error("loop is not closed (net displacement {displacement:?})")]
    OpenLoop { displacement: Vec<i64> },
    #[error("pair is not cone-flat at tolerance {tol:.3e} (residual {residual:.3e})")]
    NotConeFlat { residual: f64, tol: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("serialization format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
