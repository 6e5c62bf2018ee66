//! Generic scalar arithmetic with forward-mode dual numbers.
//!
//! Closed-form field expressions are written once against [`Scalar`] and can
//! then be evaluated on `f64` or on [`Dual`] to obtain machine-accurate
//! derivatives.  Nesting `Dual<Dual<f64>>` yields second derivatives.  This
//! backs the double-entry bookkeeping of the reference configurations: every
//! hand-coded derivative is cross-checked against the dual-number value.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn recip(self) -> Self;
    fn powi(self, n: i32) -> Self;
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// Value plus gradient with respect to up to four seed directions.
#[derive(Clone, Copy, Debug)]
pub struct Dual<S> {
    pub v: S,
    pub d: [S; 4],
}

impl<S: Scalar> Dual<S> {
    pub fn constant(v: S) -> Self {
        let z = S::constant(0.0);
        Dual { v, d: [z; 4] }
    }

    /// A variable seeded along direction `axis`.
    pub fn variable(v: S, axis: usize) -> Self {
        let mut d = [S::constant(0.0); 4];
        d[axis] = S::constant(1.0);
        Dual { v, d }
    }

    fn chain(self, v: S, dv: S) -> Self {
        Dual {
            v,
            d: self.d.map(|g| g * dv),
        }
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual {
            v: self.v + o.v,
            d: [
                self.d[0] + o.d[0],
                self.d[1] + o.d[1],
                self.d[2] + o.d[2],
                self.d[3] + o.d[3],
            ],
        }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual {
            v: self.v - o.v,
            d: [
                self.d[0] - o.d[0],
                self.d[1] - o.d[1],
                self.d[2] - o.d[2],
                self.d[3] - o.d[3],
            ],
        }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            v: self.v * o.v,
            d: [
                self.d[0] * o.v + self.v * o.d[0],
                self.d[1] * o.v + self.v * o.d[1],
                self.d[2] * o.v + self.v * o.d[2],
                self.d[3] * o.v + self.v * o.d[3],
            ],
        }
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            v: -self.v,
            d: self.d.map(|g| -g),
        }
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn constant(v: f64) -> Self {
        Dual::constant(S::constant(v))
    }
    fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, (S::constant(2.0) * r).recip())
    }
    fn ln(self) -> Self {
        self.chain(self.v.ln(), self.v.recip())
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e)
    }
    fn recip(self) -> Self {
        let r = self.v.recip();
        self.chain(r, -(r * r))
    }
    fn powi(self, n: i32) -> Self {
        let dv = S::constant(n as f64) * self.v.powi(n - 1);
        self.chain(self.v.powi(n), dv)
    }
}

/// Gradient of a scalar expression at `x` (up to 4 coordinates).
pub fn gradient<F>(f: F, x: &[f64]) -> [f64; 4]
where
    F: Fn(&[Dual<f64>; 4]) -> Dual<f64>,
{
    let mut args = [Dual::constant(0.0); 4];
    for (a, &xa) in x.iter().enumerate() {
        args[a] = Dual::variable(xa, a);
    }
    f(&args).d
}

/// Hessian row `∂_row ∂_col f` via nested duals.
pub fn hessian<F>(f: F, x: &[f64]) -> [[f64; 4]; 4]
where
    F: Fn(&[Dual<Dual<f64>>; 4]) -> Dual<Dual<f64>>,
{
    // outer dual seeds row derivatives, inner dual seeds column derivatives
    let mut args = [Dual::constant(Dual::constant(0.0)); 4];
    for (a, &xa) in x.iter().enumerate() {
        let inner = Dual::variable(xa, a);
        let mut d = [Dual::constant(0.0); 4];
        d[a] = Dual::constant(1.0);
        args[a] = Dual { v: inner, d };
    }
    let out = f(&args);
    let mut h = [[0.0; 4]; 4];
    for (r, row) in h.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = out.d[r].d[c];
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr<S: Scalar>(x: &[S; 4]) -> S {
        // f = sin(x0·x1) + exp(x2)/sqrt(x0) + ln(x1)
        (x[0] * x[1]).sin() + x[2].exp() / x[0].sqrt() + x[1].ln()
    }

    #[test]
    fn gradient_matches_hand_derivatives() {
        let x = [1.3, 0.7, -0.2];
        let g = gradient(|a| expr(a), &x);
        let (x0, x1, x2) = (x[0], x[1], x[2]);
        let g0 = x1 * (x0 * x1).cos() - 0.5 * x2.exp() * x0.powf(-1.5);
        let g1 = x0 * (x0 * x1).cos() + 1.0 / x1;
        let g2 = x2.exp() / x0.sqrt();
        assert!((g[0] - g0).abs() < 1e-13);
        assert!((g[1] - g1).abs() < 1e-13);
        assert!((g[2] - g2).abs() < 1e-13);
        assert_eq!(g[3], 0.0);
    }

    #[test]
    fn hessian_is_symmetric_and_correct() {
        let x = [0.9, 1.4, 0.3];
        let h = hessian(|a| expr(a), &x);
        // ∂0∂1 f = cos(x0 x1) - x0 x1 sin(x0 x1)
        let want01 = (x[0] * x[1]).cos() - x[0] * x[1] * (x[0] * x[1]).sin();
        assert!((h[0][1] - want01).abs() < 1e-12);
        assert!((h[1][0] - want01).abs() < 1e-12);
        // ∂2∂2 f = exp(x2)/sqrt(x0)
        assert!((h[2][2] - x[2].exp() / x[0].sqrt()).abs() < 1e-12);
    }
}
