//! Matrix Lie algebras used as coefficient rings for gauge fields.
//!
//! Supported algebras: u(1) as pure-imaginary scalars, su(2) as
//! anti-hermitian traceless 2×2 matrices with basis `e_j = -iσ_j`
//! (so `[e_1, e_2] = 2 e_3` cyclically), and so(N) as real antisymmetric
//! N×N matrices with the elementary-rotation basis.
//!
//! The invariant pairing is `⟨x, y⟩ = -c_G · Re tr(xy)`, which is positive
//! definite on each basis (trace of a product of anti-hermitian matrices is
//! real and non-positive on the diagonal).  `c_G = N - 2` for so(N) and 1
//! for su(2) and u(1); any positive constant only rescales energies.

use crate::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Dense row-major complex matrix, small (n ≤ 4 in practice).
#[derive(Clone, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat[{}x{}]", self.n, self.n)?;
        for r in 0..self.n {
            for c in 0..self.n {
                write!(f, " {:+.4e}", self.a[r * self.n + c])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n);
            a.extend_from_slice(r);
        }
        CMat { n, a }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.a[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.a[r * self.n + c] = v;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMat {
            n: self.n,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &CMat) -> Self {
        CMat {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> Self {
        CMat {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &CMat) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let x = self.a[i * n + l];
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * other.a[l * n + j];
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &CMat) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.a[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.a[i * self.n + i]).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix exponential by scaling and squaring with a Taylor series.
    ///
    /// The argument is halved until its Frobenius norm is below 1/2, the
    /// series is summed to machine precision, then the result is squared
    /// back up.  Accurate to ~1e-13 for the anti-hermitian inputs used here.
    pub fn exp(&self) -> Self {
        let norm = self.frob_norm();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(Complex64::new(1.0 / f64::powi(2.0, s as i32), 0.0));
        let mut sum = Self::identity(self.n);
        let mut term = Self::identity(self.n);
        for k in 1..40 {
            term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.frob_norm() < 1e-18 * sum.frob_norm().max(1.0) {
                break;
            }
        }
        let mut out = sum;
        for _ in 0..s {
            out = out.matmul(&out);
        }
        out
    }
}

/// Which concrete algebra a descriptor represents.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraName {
    U1,
    Su2,
    SoN(usize),
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraName::U1 => write!(f, "u1"),
            AlgebraName::Su2 => write!(f, "su2"),
            AlgebraName::SoN(n) => write!(f, "so{n}"),
        }
    }
}

/// A concrete matrix Lie algebra: basis, pairing constant and Gram data.
pub struct AlgebraDescriptor {
    pub name: AlgebraName,
    pub matrix_dim: usize,
    pub basis: Vec<CMat>,
    pub c_g: f64,
    gram: Vec<f64>,
    gram_inv: Vec<f64>,
}

impl fmt::Debug for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraDescriptor({}, dim {})", self.name, self.dim())
    }
}

impl PartialEq for AlgebraDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl AlgebraDescriptor {
    /// u(1): basis `{i}`, pairing ⟨ia, ib⟩ = ab with c_G = 1.
    pub fn u1() -> Arc<Self> {
        let i = Complex64::new(0.0, 1.0);
        Self::build(AlgebraName::U1, 1, vec![CMat { n: 1, a: vec![i] }], 1.0)
            .expect("u1 basis is valid")
    }

    /// su(2) with basis `e_j = -iσ_j`; `[e_1, e_2] = 2 e_3` cyclically,
    /// ⟨e_i, e_j⟩ = 2δ_ij with c_G = 1.
    pub fn su2() -> Arc<Self> {
        let z = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        // -iσ_1, -iσ_2, -iσ_3
        let e1 = CMat::from_rows(&[&[z, -i], &[-i, z]]);
        let e2 = CMat::from_rows(&[&[z, -one], &[one, z]]);
        let e3 = CMat::from_rows(&[&[-i, z], &[z, i]]);
        Self::build(AlgebraName::Su2, 2, vec![e1, e2, e3], 1.0).expect("su2 basis is valid")
    }

    /// so(N) with the elementary-rotation basis `L_ab = E_ab - E_ba`
    /// (a < b, lexicographic) and `c_G = N - 2`.
    pub fn so_n(n: usize) -> Result<Arc<Self>> {
        if n < 3 {
            return Err(Error::InvalidConfig(format!(
                "so({n}) needs N >= 3 for a positive pairing constant"
            )));
        }
        let one = Complex64::new(1.0, 0.0);
        let mut basis = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut m = CMat::zeros(n);
                m.set(a, b, one);
                m.set(b, a, -one);
                basis.push(m);
            }
        }
        Self::build(AlgebraName::SoN(n), n, basis, (n - 2) as f64)
    }

    fn build(
        name: AlgebraName,
        matrix_dim: usize,
        basis: Vec<CMat>,
        c_g: f64,
    ) -> Result<Arc<Self>> {
        for (idx, b) in basis.iter().enumerate() {
            if !defining_condition_holds(name, b) {
                return Err(Error::InvalidConfig(format!(
                    "basis element {idx} violates the defining condition of {name}"
                )));
            }
        }
        let dim = basis.len();
        let mut gram = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                gram[i * dim + j] = -c_g * basis[i].matmul(&basis[j]).trace().re;
            }
        }
        let gram_inv = invert_sym(&gram, dim).ok_or_else(|| {
            Error::InvalidConfig(format!("pairing Gram matrix of {name} is singular"))
        })?;
        if sym_eigenvalues(&gram, dim).into_iter().any(|l| l <= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "pairing of {name} is not positive definite on the basis"
            )));
        }
        Ok(Arc::new(AlgebraDescriptor {
            name,
            matrix_dim,
            basis,
            c_g,
            gram,
            gram_inv,
        }))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Gram matrix of the pairing on the basis (row-major `dim × dim`).
    pub fn gram(&self) -> &[f64] {
        &self.gram
    }

    /// Smallest eigenvalue of the Gram matrix.
    pub fn gram_min_eigenvalue(&self) -> f64 {
        sym_eigenvalues(&self.gram, self.dim())
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// `⟨x, y⟩ = -c_G · Re tr(xy)` on raw matrices.
    pub fn pair_mats(&self, x: &CMat, y: &CMat) -> f64 {
        let n = self.matrix_dim;
        let mut tr = 0.0;
        for i in 0..n {
            for l in 0..n {
                tr += (x.a[i * n + l] * y.a[l * n + i]).re;
            }
        }
        -self.c_g * tr
    }

    /// Matrix from basis coefficients.
    pub fn matrix_of(&self, coeffs: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.matrix_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0.0 {
                for (o, x) in m.a.iter_mut().zip(&b.a) {
                    *o += x * *c;
                }
            }
        }
        m
    }

    /// Orthogonal projection of a matrix onto the basis span, returning the
    /// coefficient vector and the Frobenius norm of what is left over.
    pub fn project(&self, m: &CMat) -> (Vec<f64>, f64) {
        let dim = self.dim();
        let rhs: Vec<f64> = (0..dim).map(|i| self.pair_mats(&self.basis[i], m)).collect();
        let mut coeffs = vec![0.0; dim];
        for i in 0..dim {
            for j in 0..dim {
                coeffs[i] += self.gram_inv[i * dim + j] * rhs[j];
            }
        }
        let residual = m.sub(&self.matrix_of(&coeffs)).frob_norm();
        (coeffs, residual)
    }
}

fn defining_condition_holds(name: AlgebraName, m: &CMat) -> bool {
    const TOL: f64 = 1e-14;
    match name {
        AlgebraName::U1 => m.n == 1 && m.a[0].re.abs() <= TOL,
        AlgebraName::Su2 => {
            m.n == 2 && m.add(&m.dagger()).frob_norm() <= TOL && m.trace().norm() <= TOL
        }
        AlgebraName::SoN(n) => {
            m.n == n
                && m.a.iter().all(|x| x.im.abs() <= TOL)
                && m.add(&m.dagger()).frob_norm() <= TOL
        }
    }
}

/// A Lie-algebra element expressed in the descriptor's basis.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub algebra: Arc<AlgebraDescriptor>,
    pub coeffs: Vec<f64>,
}

impl AlgebraElement {
    pub fn new(algebra: Arc<AlgebraDescriptor>, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), algebra.dim(), "coefficient vector length");
        AlgebraElement { algebra, coeffs }
    }

    pub fn zero(algebra: Arc<AlgebraDescriptor>) -> Self {
        let dim = algebra.dim();
        AlgebraElement {
            algebra,
            coeffs: vec![0.0; dim],
        }
    }

    pub fn matrix(&self) -> CMat {
        self.algebra.matrix_of(&self.coeffs)
    }
}

/// Commutator `xy - yx`, re-expressed in the basis.  Rejects the result if
/// the projection residual exceeds 1e-10 (a broken basis, not roundoff).
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let m = x.matrix().commutator(&y.matrix());
    let (coeffs, residual) = x.algebra.project(&m);
    let scale = m.frob_norm().max(1.0);
    if residual > 1e-10 * scale {
        return Err(Error::NotInBasis {
            name: x.algebra.name.to_string(),
            got: m.n,
            residual,
        });
    }
    Ok(AlgebraElement::new(x.algebra.clone(), coeffs))
}

/// Invariant pairing `-c_G · Re tr(xy)`.
pub fn pairing(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let dim = x.algebra.dim();
    let gram = &x.algebra.gram;
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            s += x.coeffs[i] * gram[i * dim + j] * y.coeffs[j];
        }
    }
    Ok(s)
}

/// Matrix exponential of the element, landing in the group.
pub fn exponential(x: &AlgebraElement) -> CMat {
    x.matrix().exp()
}

// --- small symmetric linear algebra helpers -------------------------------

/// Invert a symmetric matrix by Gauss-Jordan with partial pivoting.
fn invert_sym(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
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
        for c in 0..n {
            m.swap(col * n + c, piv * n + c);
            inv.swap(col * n + c, piv * n + c);
        }
        let d = m[col * n + col];
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
    Some(inv)
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    let mut m = a.to_vec();
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i * n + i]).collect()
}

/// The anti-self-dual su(2) sub-basis of so(4), as coefficient vectors in the
/// elementary-rotation basis (order L01, L02, L03, L12, L13, L23):
/// `X_1 = L_01 - L_23`, `X_2 = L_02 + L_13`, `X_3 = L_03 - L_12`.  The three
/// generators satisfy `ω_ab = -½ ε_abcd ω_cd` and close under the bracket.
pub fn so4_antiselfdual_basis(so4: &Arc<AlgebraDescriptor>) -> [AlgebraElement; 3] {
    assert_eq!(so4.name, AlgebraName::SoN(4));
    // Basis order: L01 L02 L03 L12 L13 L23.
    let x1 = AlgebraElement::new(so4.clone(), vec![1.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
    let x2 = AlgebraElement::new(so4.clone(), vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0]);
    let x3 = AlgebraElement::new(so4.clone(), vec![0.0, 0.0, 1.0, -1.0, 0.0, 0.0]);
    [x1, x2, x3]
}

/// Self-dual counterpart (`ω_ab = +½ ε_abcd ω_cd`):
/// `Y_1 = L_01 + L_23`, `Y_2 = L_02 - L_13`, `Y_3 = L_03 + L_12`.
pub fn so4_selfdual_basis(so4: &Arc<AlgebraDescriptor>) -> [AlgebraElement; 3] {
    assert_eq!(so4.name, AlgebraName::SoN(4));
    let y1 = AlgebraElement::new(so4.clone(), vec![1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let y2 = AlgebraElement::new(so4.clone(), vec![0.0, 1.0, 0.0, 0.0, -1.0, 0.0]);
    let y3 = AlgebraElement::new(so4.clone(), vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
    [y1, y2, y3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_element(alg: &Arc<AlgebraDescriptor>, rng: &mut ChaCha8Rng) -> AlgebraElement {
        let coeffs = (0..alg.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        AlgebraElement::new(alg.clone(), coeffs)
    }

    #[test]
    fn u1_bracket_vanishes() {
        let alg = AlgebraDescriptor::u1();
        let x = AlgebraElement::new(alg.clone(), vec![0.7]);
        let y = AlgebraElement::new(alg.clone(), vec![-1.3]);
        let b = bracket(&x, &y).unwrap();
        assert!(b.coeffs[0].abs() < 1e-15);
    }

    #[test]
    fn su2_bracket_is_cyclic_with_factor_two() {
        // [e_1, e_2] = 2 e_3 and cyclic, checked against direct matrix products.
        let alg = AlgebraDescriptor::su2();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let mut ci = vec![0.0; 3];
            ci[i] = 1.0;
            let mut cj = vec![0.0; 3];
            cj[j] = 1.0;
            let b = bracket(
                &AlgebraElement::new(alg.clone(), ci),
                &AlgebraElement::new(alg.clone(), cj),
            )
            .unwrap();
            let mut expect = vec![0.0; 3];
            expect[k] = 2.0;
            for (got, want) in b.coeffs.iter().zip(&expect) {
                assert!((got - want).abs() < 1e-13, "{:?} vs {:?}", b.coeffs, expect);
            }
        }
    }

    #[test]
    fn bracket_with_self_vanishes() {
        let alg = AlgebraDescriptor::so_n(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_element(&alg, &mut rng);
        let b = bracket(&x, &x).unwrap();
        assert!(b.coeffs.iter().all(|c| c.abs() < 1e-13));
    }

    #[test]
    fn jacobi_identity_on_random_triples() {
        for alg in [
            AlgebraDescriptor::u1(),
            AlgebraDescriptor::su2(),
            AlgebraDescriptor::so_n(4).unwrap(),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for _ in 0..100 {
                let x = random_element(&alg, &mut rng).matrix();
                let y = random_element(&alg, &mut rng).matrix();
                let z = random_element(&alg, &mut rng).matrix();
                let jac = x
                    .commutator(&y.commutator(&z))
                    .add(&y.commutator(&z.commutator(&x)))
                    .add(&z.commutator(&x.commutator(&y)));
                assert!(jac.frob_norm() <= 1e-11);
            }
        }
    }

    #[test]
    fn pairing_positive_definite_and_ad_invariant() {
        for alg in [AlgebraDescriptor::su2(), AlgebraDescriptor::so_n(4).unwrap()] {
            assert!(alg.gram_min_eigenvalue() > 0.0);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..50 {
                let x = random_element(&alg, &mut rng);
                let norm2 = pairing(&x, &x).unwrap();
                let scale: f64 = x.coeffs.iter().map(|c| c * c).sum();
                if scale > 1e-12 {
                    assert!(norm2 > 0.0);
                }
                let y = random_element(&alg, &mut rng);
                let z = random_element(&alg, &mut rng);
                // ⟨[x,y], z⟩ = ⟨x, [y,z]⟩ via raw matrix traces.
                let lhs = alg.pair_mats(&x.matrix().commutator(&y.matrix()), &z.matrix());
                let rhs = alg.pair_mats(&x.matrix(), &y.matrix().commutator(&z.matrix()));
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            }
        }
    }

    #[test]
    fn u1_pairing_is_product_of_coefficients() {
        let alg = AlgebraDescriptor::u1();
        let x = AlgebraElement::new(alg.clone(), vec![0.35]);
        let y = AlgebraElement::new(alg.clone(), vec![-2.0]);
        assert!((pairing(&x, &y).unwrap() - (0.35 * -2.0)).abs() < 1e-15);
    }

    #[test]
    fn exponential_of_zero_is_identity() {
        let alg = AlgebraDescriptor::su2();
        let e = exponential(&AlgebraElement::zero(alg));
        assert!(e.sub(&CMat::identity(2)).frob_norm() < 1e-15);
    }

    #[test]
    fn u1_exponential_of_i_pi_is_minus_one() {
        let alg = AlgebraDescriptor::u1();
        let e = exponential(&AlgebraElement::new(alg, vec![std::f64::consts::PI]));
        assert!((e.a[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn su2_exponential_trace_matches_eigenvalue_oracle() {
        // exp(t e_1) with e_1 = -iσ_1 has eigenvalues e^{∓it}, so trace 2cos t.
        let alg = AlgebraDescriptor::su2();
        for t in [0.0, 0.3, 1.7, -2.4, 9.9] {
            let e = exponential(&AlgebraElement::new(alg.clone(), vec![t, 0.0, 0.0]));
            assert!((e.trace().re - 2.0 * t.cos()).abs() < 1e-12, "t = {t}");
            assert!(e.trace().im.abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_lands_in_the_group() {
        // ‖exp(x)† exp(x) - I‖ ≤ 1e-10 up to ‖x‖ = 10.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for alg in [
            AlgebraDescriptor::u1(),
            AlgebraDescriptor::su2(),
            AlgebraDescriptor::so_n(4).unwrap(),
        ] {
            for _ in 0..20 {
                let mut x = random_element(&alg, &mut rng);
                let scale = rng.random_range(0.1..4.0);
                for c in &mut x.coeffs {
                    *c *= scale;
                }
                if x.matrix().frob_norm() > 10.0 {
                    continue;
                }
                let e = exponential(&x);
                let defect = e.dagger().matmul(&e).sub(&CMat::identity(e.n)).frob_norm();
                assert!(defect <= 1e-10, "defect {defect}");
            }
        }
    }

    #[test]
    fn bracket_rejects_algebra_mismatch() {
        let x = AlgebraElement::zero(AlgebraDescriptor::u1());
        let y = AlgebraElement::zero(AlgebraDescriptor::su2());
        assert!(matches!(bracket(&x, &y), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn so4_subbases_close_under_bracket() {
        let so4 = AlgebraDescriptor::so_n(4).unwrap();
        for basis in [so4_antiselfdual_basis(&so4), so4_selfdual_basis(&so4)] {
            // [X_i, X_j] must stay inside span{X_1, X_2, X_3}.
            for i in 0..3 {
                for j in 0..3 {
                    let b = bracket(&basis[i], &basis[j]).unwrap().matrix();
                    let mut best = b.clone();
                    // project onto the sub-span via the pairing
                    for x in &basis {
                        let xm = x.matrix();
                        let c = so4.pair_mats(&xm, &b) / so4.pair_mats(&xm, &xm);
                        best = best.sub(&xm.scale(Complex64::new(c, 0.0)));
                    }
                    assert!(best.frob_norm() < 1e-12);
                }
            }
        }
    }
}
