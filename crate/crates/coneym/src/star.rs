//! Metric-dependent form operators: Hodge star, inner products,
//! codifferentials and the ζ-adjoint.
//!
//! Orientation convention: `*(dx^{i_1}∧…∧dx^{i_k})` is taken against
//! `dx^1∧…∧dx^m` with the Levi-Civita symbol normalized so that
//! `*1 = √det g · dx^1∧…∧dx^m`.  Applying the star twice gives
//! `(-1)^{k(m-k)}` exactly (pointwise algebra, no differencing).

use crate::chart::Chart;
use crate::comb;
use crate::form::{covariant_derivative, zeta_wedge, GValuedForm, RealTwoForm};
use crate::metric::MetricField;
use crate::reduce;
use crate::{Error, Result};
use num_complex::Complex64;

/// Determinant of the submatrix of `g` (row-major `m × m`) with the given
/// row and column axes; the empty minor is 1.
fn minor_det(g: &[f64], m: usize, rows: &[u8], cols: &[u8]) -> f64 {
    let k = rows.len();
    let at = |r: usize, c: usize| g[rows[r] as usize * m + cols[c] as usize];
    match k {
        0 => 1.0,
        1 => at(0, 0),
        2 => at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0),
        3 => {
            at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
                - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
                + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0))
        }
        4 => {
            let mut det = 0.0;
            let mut sub_rows = [0u8; 3];
            sub_rows.copy_from_slice(&rows[1..]);
            for (j, sign) in [(0, 1.0), (1, -1.0), (2, 1.0), (3, -1.0)] {
                let mut sub_cols = [0u8; 3];
                let mut idx = 0;
                for (c, &col) in cols.iter().enumerate() {
                    if c != j {
                        sub_cols[idx] = col;
                        idx += 1;
                    }
                }
                det += sign * at(0, j) * minor_det(g, m, &sub_rows, &sub_cols);
            }
            det
        }
        _ => unreachable!("dimension above 4"),
    }
}

/// Pointwise Hodge star `Ω^k → Ω^{m-k}` with respect to the metric.
pub fn hodge_star(alpha: &GValuedForm, metric: &MetricField) -> Result<GValuedForm> {
    if alpha.chart.as_ref() != metric.chart.as_ref() {
        return Err(Error::ChartMismatch);
    }
    let m = alpha.chart.dim;
    let k = alpha.degree;
    if k > m {
        return Err(Error::DegreeOutOfRange { degree: k, dim: m });
    }
    let table = comb::star_table(m, k);
    let info = comb::degree_info(m, k);
    let tuples: Vec<Vec<u8>> = info
        .masks
        .iter()
        .map(|&mk| comb::axes_of(mk).collect())
        .collect();
    let mut out = GValuedForm::zero(&alpha.chart, &alpha.algebra, m - k);
    let md2 = alpha.md2();
    let nc_in = alpha.ncomps();
    let nc_out = out.ncomps();
    let stride = nc_out * md2;
    let av = alpha.raw_values();
    reduce::fill_slots(out.raw_values_mut(), stride, |p, slot| {
        let ginv = metric.g_inv_at(p);
        let sq = metric.sqrt_det_at(p);
        for term in table {
            let ci = term.comp_in as usize;
            let obase = term.comp_out as usize * md2;
            // raised coefficient: Σ_{I'} det(g⁻¹[I, I']) α_{I'}
            for (ci2, tuple2) in tuples.iter().enumerate() {
                let w = minor_det(ginv, m, &tuples[ci], tuple2) * sq * term.sign;
                if w == 0.0 {
                    continue;
                }
                let ibase = (p * nc_in + ci2) * md2;
                for i in 0..md2 {
                    slot[obase + i] += av[ibase + i] * w;
                }
            }
        }
    });
    Ok(out.with_mask(alpha.mask().clone()))
}

/// Coefficient of the volume monomial `dx^1∧…∧dx^m` in `α ∧ *β`, paired
/// through `-c_G Re tr`: the pointwise inner-product density, including the
/// `√det g` factor (it rides inside `*β`).
pub fn density_field(
    alpha: &GValuedForm,
    beta: &GValuedForm,
    metric: &MetricField,
) -> Result<Vec<f64>> {
    if alpha.degree != beta.degree {
        return Err(Error::DegreeMismatch {
            expected: alpha.degree,
            got: beta.degree,
        });
    }
    if alpha.algebra != beta.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let star_b = hodge_star(beta, metric)?;
    let m = alpha.chart.dim;
    let k = alpha.degree;
    let table = comb::star_table(m, k);
    let md = alpha.algebra.matrix_dim;
    let md2 = md * md;
    let nc_a = alpha.ncomps();
    let nc_b = star_b.ncomps();
    let c_g = alpha.algebra.c_g;
    let av = alpha.raw_values();
    let bv = star_b.raw_values();
    let mut density = vec![0.0; alpha.chart.npoints()];
    reduce::fill_slots(&mut density, 1, |p, slot| {
        let mut s = 0.0;
        for term in table {
            let abase = (p * nc_a + term.comp_in as usize) * md2;
            let bbase = (p * nc_b + term.comp_out as usize) * md2;
            // Re tr(AB)
            let mut tr = 0.0;
            for r in 0..md {
                for l in 0..md {
                    tr += (av[abase + r * md + l] * bv[bbase + l * md + r]).re;
                }
            }
            s += term.sign * tr;
        }
        slot[0] = -c_g * s;
    });
    Ok(density)
}

/// L² inner product: midpoint quadrature of the pairing density over the
/// intersection of the operand masks with the chart interior.
pub fn inner_product(
    alpha: &GValuedForm,
    beta: &GValuedForm,
    metric: &MetricField,
) -> Result<f64> {
    if alpha.chart.as_ref() != beta.chart.as_ref()
        || alpha.chart.as_ref() != metric.chart.as_ref()
    {
        return Err(Error::ChartMismatch);
    }
    let density = density_field(alpha, beta, metric)?;
    let chart = &alpha.chart;
    let mask = Chart::intersect_masks(
        &Chart::intersect_masks(alpha.mask(), beta.mask()),
        chart.interior_mask(),
    );
    let cell = chart.cell_volume();
    Ok(reduce::indexed_sum(chart.npoints(), |p| {
        if mask[p] {
            density[p] * cell
        } else {
            0.0
        }
    }))
}

/// L² norm induced by [`inner_product`].
pub fn norm(alpha: &GValuedForm, metric: &MetricField) -> Result<f64> {
    Ok(inner_product(alpha, alpha, metric)?.max(0.0).sqrt())
}

/// Volume of the integration region used by [`inner_product`] for this form
/// (for converting L² norms to RMS magnitudes).
pub fn mask_volume(alpha: &GValuedForm, metric: &MetricField) -> f64 {
    let chart = &alpha.chart;
    let mask = Chart::intersect_masks(alpha.mask(), chart.interior_mask());
    let cell = chart.cell_volume();
    reduce::indexed_sum(chart.npoints(), |p| {
        if mask[p] {
            metric.sqrt_det_at(p) * cell
        } else {
            0.0
        }
    })
}

/// Integral of a top-degree form: the trace pairing `-c_G Re tr` of its
/// single coefficient summed with cell volume over the valid interior.  No
/// metric enters (top forms integrate without one).
pub fn integrate_top_trace(omega: &GValuedForm) -> Result<f64> {
    let chart = &omega.chart;
    let m = chart.dim;
    if omega.degree != m {
        return Err(Error::DegreeMismatch {
            expected: m,
            got: omega.degree,
        });
    }
    let md = omega.algebra.matrix_dim;
    let md2 = md * md;
    let c_g = omega.algebra.c_g;
    let mask = Chart::intersect_masks(omega.mask(), chart.interior_mask());
    let cell = chart.cell_volume();
    let values = omega.raw_values();
    Ok(reduce::indexed_sum(chart.npoints(), |p| {
        if !mask[p] {
            return 0.0;
        }
        let base = p * md2;
        let mut tr = 0.0;
        for r in 0..md {
            tr += values[base + r * md + r].re;
        }
        -c_g * tr * cell
    }))
}

/// Covariant codifferential `d_A* = (-1)^{mk+m+1} * d_A *` on `k`-forms.
pub fn codifferential(
    conn: &GValuedForm,
    alpha: &GValuedForm,
    metric: &MetricField,
) -> Result<GValuedForm> {
    let k = alpha.degree;
    if k == 0 {
        return Err(Error::DegreeOutOfRange {
            degree: 0,
            dim: alpha.chart.dim,
        });
    }
    let m = alpha.chart.dim;
    let sign = if (m * k + m + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let inner = hodge_star(alpha, metric)?;
    let d_inner = covariant_derivative(conn, &inner)?;
    let out = hodge_star(&d_inner, metric)?;
    Ok(out.scaled(sign))
}

/// ζ-adjoint `ζ* = (-1)^{(m-k)k} * (ζ ∧ * ·)` on `k`-forms, `k ≥ 2`.
pub fn zeta_adjoint(
    zeta: &RealTwoForm,
    alpha: &GValuedForm,
    metric: &MetricField,
) -> Result<GValuedForm> {
    let k = alpha.degree;
    if k < 2 {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            dim: alpha.chart.dim,
        });
    }
    let m = alpha.chart.dim;
    let sign = if ((m - k) * k) % 2 == 0 { 1.0 } else { -1.0 };
    let starred = hodge_star(alpha, metric)?;
    let wedged = zeta_wedge(zeta, &starred)?;
    let out = hodge_star(&wedged, metric)?;
    Ok(out.scaled(sign))
}

/// Dense per-point star matrix built by brute-force index gymnastics:
/// `(*α)_{j…} = (1/k!) √g ε_{i…j…} g^{i l}… α_{l…}` with all indices summed.
/// Test oracle; quadratic in the number of components.
pub fn star_matrix_bruteforce(metric: &MetricField, p: usize, k: usize) -> Vec<Vec<f64>> {
    let m = metric.chart.dim;
    let info_in = comb::degree_info(m, k);
    let info_out = comb::degree_info(m, m - k);
    let tuples_in: Vec<Vec<u8>> = info_in.masks.iter().map(|&t| comb::axes_of(t).collect()).collect();
    let tuples_out: Vec<Vec<u8>> = info_out.masks.iter().map(|&t| comb::axes_of(t).collect()).collect();
    let ginv = metric.g_inv_at(p);
    let sq = metric.sqrt_det_at(p);
    // ε over all m-tuples
    let mut result = vec![vec![0.0; tuples_in.len()]; tuples_out.len()];
    let mut perm = vec![0u8; m];
    loop {
        // iterate over all i-tuples (first k slots) with j fixed per out comp
        // simpler: iterate over all full permutations σ of 0..m, since ε is
        // only nonzero there; σ = (i_1..i_k, j_1..j_{m-k})
        if is_permutation(&perm, m) {
            let eps = perm_parity(&perm);
            let i_part = &perm[..k];
            let j_part = &perm[k..];
            // locate out component and its unscramble sign
            if let Some((out_c, out_sign)) = locate(&tuples_out, j_part) {
                // Σ over l-tuples of g^{i l} α_l: for each in component L with sign
                let renorm = (factorial(k) * factorial(m - k)) as f64;
                for (in_c, l_tuple) in tuples_in.iter().enumerate() {
                    // sum over orderings of L: antisymmetric α means we can sum
                    // over permutations of l_tuple with parity
                    let mut l_perm: Vec<u8> = l_tuple.clone();
                    let mut total = 0.0;
                    permute_all(&mut l_perm, 0, &mut |lp, par| {
                        let mut prod = 1.0;
                        for (ii, &i_ax) in i_part.iter().enumerate() {
                            prod *= ginv[i_ax as usize * m + lp[ii] as usize];
                        }
                        total += prod * par;
                    });
                    result[out_c][in_c] += eps * out_sign * sq * total / renorm;
                }
            }
        }
        if !next_tuple(&mut perm, m) {
            break;
        }
    }
    result
}

fn is_permutation(t: &[u8], m: usize) -> bool {
    let mut seen = [false; comb::MAX_DIM];
    for &v in t {
        if v as usize >= m || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

fn perm_parity(t: &[u8]) -> f64 {
    let mut inv = 0;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] > t[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn locate(tuples: &[Vec<u8>], unordered: &[u8]) -> Option<(usize, f64)> {
    let mut sorted = unordered.to_vec();
    sorted.sort_unstable();
    let pos = tuples.iter().position(|t| *t == sorted)?;
    // parity of sorting `unordered`
    Some((pos, perm_parity(unordered)))
}

fn permute_all(t: &mut Vec<u8>, start: usize, f: &mut impl FnMut(&[u8], f64)) {
    if start == t.len() {
        let parity = perm_parity(t);
        f(t, parity);
        return;
    }
    for i in start..t.len() {
        t.swap(start, i);
        permute_all(t, start + 1, f);
        t.swap(start, i);
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product::<usize>().max(1)
}

fn next_tuple(t: &mut [u8], m: usize) -> bool {
    for v in t.iter_mut().rev() {
        *v += 1;
        if (*v as usize) < m {
            return true;
        }
        *v = 0;
    }
    false
}

/// Frobenius magnitude of a matrix slice (test helper shared by modules).
pub fn slice_frob(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Apply the star twice and report the worst deviation from
/// `(-1)^{k(m-k)} · id` over the mask (pointwise identity check).
pub fn star_involution_defect(alpha: &GValuedForm, metric: &MetricField) -> Result<f64> {
    let m = alpha.chart.dim;
    let k = alpha.degree;
    let twice = hodge_star(&hodge_star(alpha, metric)?, metric)?;
    let sign = if (k * (m - k)) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(twice.sub(&alpha.scaled(sign))?.sup_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor;
    use crate::form::curvature;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn flat_t3(n: usize) -> (Arc<Chart>, MetricField) {
        let chart = Chart::torus(&[n, n, n], &[1.0; 3]).unwrap();
        let metric = MetricField::euclidean(&chart);
        (chart, metric)
    }

    fn flat_t4(n: usize) -> (Arc<Chart>, MetricField) {
        let chart = Chart::torus(&[n, n, n, n], &[1.0; 4]).unwrap();
        let metric = MetricField::euclidean(&chart);
        (chart, metric)
    }

    #[test]
    fn star_of_dx1_is_dx2_wedge_dx3() {
        let (chart, metric) = flat_t3(4);
        let alg = AlgebraDescriptor::u1();
        let alpha = GValuedForm::from_coeff_fn(&chart, &alg, 1, |_, comp| {
            vec![if comp[0] == 0 { 1.0 } else { 0.0 }]
        });
        let s = hodge_star(&alpha, &metric).unwrap();
        let info = comb::degree_info(3, 2);
        let pos12 = info.pos[0b110] as usize; // axes {1,2}
        for p in [0, 17, 63] {
            assert!((s.value(p, pos12)[0] - num_complex::Complex64::new(0.0, 1.0)).norm() < 1e-14);
            for c in 0..3 {
                if c != pos12 {
                    assert!(s.value(p, c)[0].norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn standard_two_form_on_t4_is_self_dual() {
        let (chart, metric) = flat_t4(3);
        let alg = AlgebraDescriptor::u1();
        let zeta = GValuedForm::from_coeff_fn(&chart, &alg, 2, |_, comp| {
            vec![match comp {
                [0, 1] | [2, 3] => 1.0,
                _ => 0.0,
            }]
        });
        let s = hodge_star(&zeta, &metric).unwrap();
        assert!(s.sub(&zeta).unwrap().sup_norm() < 1e-14);
    }

    #[test]
    fn conformal_star_matches_bruteforce_oracle() {
        // m = 2, g = e^{2u} δ: *1 = e^{2u} dx∧dy, and the whole star matrix
        // per degree agrees with the dense ε-contraction oracle on a 4×4 grid.
        let chart = Chart::torus(&[4, 4], &[1.0, 1.0]).unwrap();
        let u = |x: &[f64]| 0.3 * (2.0 * std::f64::consts::PI * x[0]).sin() + 0.1 * x[1];
        let metric = MetricField::diagonal(&chart, |x| {
            let e = (2.0 * u(x)).exp();
            [e, e, 0.0, 0.0]
        })
        .unwrap();
        let alg = AlgebraDescriptor::u1();
        let one = GValuedForm::from_coeff_fn(&chart, &alg, 0, |_, _| vec![1.0]);
        let s = hodge_star(&one, &metric).unwrap();
        for p in 0..chart.npoints() {
            let want = (2.0 * u(&chart.coord(p)[..2])).exp();
            assert!((s.value(p, 0)[0].im - want).abs() < 1e-12);
        }
        // full star matrices for k = 0, 1, 2 against the oracle
        for k in 0..=2 {
            let alpha = GValuedForm::random_trig(&chart, &alg, k, 1, 1.0, 40 + k as u64);
            let starred = hodge_star(&alpha, &metric).unwrap();
            for p in 0..chart.npoints() {
                let matrix = star_matrix_bruteforce(&metric, p, k);
                for (out_c, row) in matrix.iter().enumerate() {
                    let want: f64 = row
                        .iter()
                        .enumerate()
                        .map(|(in_c, w)| w * alpha.value(p, in_c)[0].im)
                        .sum();
                    let got = starred.value(p, out_c)[0].im;
                    assert!(
                        (got - want).abs() < 1e-12,
                        "k={k} p={p} comp={out_c}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn star_isometry_pointwise() {
        let (chart, metric) = flat_t3(4);
        let alg = AlgebraDescriptor::su2();
        for k in 0..=3usize {
            let alpha = GValuedForm::random_trig(&chart, &alg, k, 2, 1.0, 50 + k as u64);
            let starred = hodge_star(&alpha, &metric).unwrap();
            let d1 = density_field(&alpha, &alpha, &metric).unwrap();
            let d2 = density_field(&starred, &starred, &metric).unwrap();
            for p in 0..chart.npoints() {
                assert!(
                    (d1[p] - d2[p]).abs() <= 1e-12 * (1.0 + d1[p].abs()),
                    "k={k} p={p}"
                );
            }
        }
    }

    #[test]
    fn inner_product_of_zero_vanishes_and_constant_is_area() {
        let chart = Chart::torus(&[8, 6], &[2.0, 1.5]).unwrap();
        let metric = MetricField::euclidean(&chart);
        let alg = AlgebraDescriptor::u1();
        let zero = GValuedForm::zero(&chart, &alg, 1);
        assert_eq!(inner_product(&zero, &zero, &metric).unwrap(), 0.0);
        // α = i·dx¹ on flat T²: ⟨α, α⟩ = area
        let alpha = GValuedForm::from_coeff_fn(&chart, &alg, 1, |_, comp| {
            vec![if comp[0] == 0 { 1.0 } else { 0.0 }]
        });
        let area = 2.0 * 1.5;
        assert!((inner_product(&alpha, &alpha, &metric).unwrap() - area).abs() < 1e-12);
    }

    #[test]
    fn zeta_wedge_and_zeta_adjoint_are_adjoint() {
        // ⟨ζ∧α, β⟩ = ⟨α, ζ*β⟩: pointwise-exact algebra, 20 random pairs.
        let (chart, metric) = flat_t4(3);
        let alg = AlgebraDescriptor::su2();
        let zeta = RealTwoForm::from_fn(&chart, |x, comp| match comp {
            [0, 1] => 1.0 + 0.3 * (2.0 * std::f64::consts::PI * x[2]).cos(),
            [2, 3] => 1.0,
            [1, 2] => 0.2,
            _ => 0.0,
        });
        for seed in 0..20u64 {
            let alpha = GValuedForm::random_trig(&chart, &alg, 1, 1, 1.0, 100 + seed);
            let beta = GValuedForm::random_trig(&chart, &alg, 3, 1, 1.0, 200 + seed);
            let lhs = inner_product(&zeta_wedge(&zeta, &alpha).unwrap(), &beta, &metric).unwrap();
            let rhs =
                inner_product(&alpha, &zeta_adjoint(&zeta, &beta, &metric).unwrap(), &metric)
                    .unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()),
                "seed {seed}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn zeta_adjoint_of_zeta_b_is_twice_b() {
        // ζ*(ζB) = 2B on flat T⁴ with the standard ζ (ζ*ζ = n with n = 2).
        let (chart, metric) = flat_t4(3);
        let alg = AlgebraDescriptor::su2();
        let b = GValuedForm::random_trig(&chart, &alg, 0, 1, 1.0, 77);
        let zeta = RealTwoForm::from_fn(&chart, |_, comp| match comp {
            [0, 1] | [2, 3] => 1.0,
            _ => 0.0,
        });
        let round = zeta_adjoint(&zeta, &zeta_wedge(&zeta, &b).unwrap(), &metric).unwrap();
        assert!(round.sub(&b.scaled(2.0)).unwrap().sup_norm() < 1e-12);
    }

    #[test]
    fn codifferential_of_constant_form_vanishes_on_flat_torus() {
        let (chart, metric) = flat_t3(5);
        let alg = AlgebraDescriptor::su2();
        let conn = GValuedForm::zero(&chart, &alg, 1);
        let alpha = GValuedForm::from_coeff_fn(&chart, &alg, 2, |_, comp| {
            vec![comp[0] as f64 + 0.5, -1.0, 0.25]
        });
        let cod = codifferential(&conn, &alpha, &metric).unwrap();
        assert!(cod.sup_norm() <= 1e-10);
    }

    #[test]
    fn codifferential_rejects_degree_zero() {
        let (chart, metric) = flat_t3(4);
        let alg = AlgebraDescriptor::u1();
        let conn = GValuedForm::zero(&chart, &alg, 1);
        let s = GValuedForm::zero(&chart, &alg, 0);
        assert!(codifferential(&conn, &s, &metric).is_err());
    }

    #[test]
    fn covariant_adjointness_on_periodic_chart() {
        // ⟨d_A η, ω⟩ = ⟨η, d_A* ω⟩ within O(h²)·norms on flat T³ (in fact the
        // discrete pairing is summation-by-parts exact there).
        let (chart, metric) = flat_t3(8);
        let alg = AlgebraDescriptor::su2();
        let conn = GValuedForm::random_trig(&chart, &alg, 1, 2, 0.4, 300);
        for seed in 0..20u64 {
            let eta = GValuedForm::random_trig(&chart, &alg, 1, 2, 1.0, 400 + seed);
            let omega = GValuedForm::random_trig(&chart, &alg, 2, 2, 1.0, 500 + seed);
            let lhs = inner_product(
                &covariant_derivative(&conn, &eta).unwrap(),
                &omega,
                &metric,
            )
            .unwrap();
            let rhs = inner_product(
                &eta,
                &codifferential(&conn, &omega, &metric).unwrap(),
                &metric,
            )
            .unwrap();
            let h = chart.spacings[0];
            let bound = h * h
                * norm(&eta, &metric).unwrap()
                * norm(&omega, &metric).unwrap()
                * 10.0
                + 1e-12;
            assert!((lhs - rhs).abs() <= bound, "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn curvature_codifferential_chain_is_finite() {
        let (chart, metric) = flat_t3(6);
        let alg = AlgebraDescriptor::su2();
        let a = GValuedForm::random_trig(&chart, &alg, 1, 1, 0.5, 600);
        let f = curvature(&a).unwrap();
        let r = codifferential(&a, &f, &metric).unwrap();
        assert!(r.sup_norm().is_finite());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn star_involution_all_degrees(seed in 0u64..10_000, k in 0usize..4, m in 2usize..5) {
            let k = k.min(m);
            let chart = Chart::torus(&vec![3; m], &vec![1.0; m]).unwrap();
            let metric = MetricField::diagonal(&chart, |x| {
                let mut d = [1.0; 4];
                for (a, v) in d.iter_mut().enumerate().take(m) {
                    *v = 1.3 + 0.4 * (2.0 * std::f64::consts::PI * x[(a + 1) % m]).sin();
                }
                d
            }).unwrap();
            let alg = AlgebraDescriptor::su2();
            let alpha = GValuedForm::random_trig(&chart, &alg, k, 1, 1.0, seed);
            let defect = star_involution_defect(&alpha, &metric).unwrap();
            prop_assert!(defect <= 1e-12 * (1.0 + alpha.sup_norm()));
        }
    }
}
