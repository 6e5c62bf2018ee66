//! Multi-index combinatorics shared by the form operators.
//!
//! A strictly increasing multi-index over axes `0..m` is encoded as a bitmask
//! (`u8`, bit `a` set iff axis `a` is present).  Components of a degree-`k`
//! form are stored in lexicographic order of the increasing tuples; the
//! tables below translate between component positions, bitmasks and the
//! signs picked up when merging or complementing index sets.

use std::sync::OnceLock;

/// Largest supported grid dimension.
pub const MAX_DIM: usize = 4;

/// Binomial coefficient; zero when `k > m`.
pub fn choose(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let mut num = 1usize;
    let mut den = 1usize;
    for i in 0..k.min(m - k) {
        num *= m - i;
        den *= i + 1;
    }
    num / den
}

/// Axes present in `mask`, ascending.
pub fn axes_of(mask: u8) -> impl Iterator<Item = u8> {
    (0..MAX_DIM as u8).filter(move |a| mask & (1 << a) != 0)
}

/// Sign of the shuffle permutation sorting the concatenation of two disjoint
/// increasing index sets `(a, b)` into increasing order: `(-1)^inversions`.
pub fn merge_sign(a_mask: u8, b_mask: u8) -> f64 {
    debug_assert_eq!(a_mask & b_mask, 0);
    let mut inv = 0usize;
    for i in axes_of(a_mask) {
        for j in axes_of(b_mask) {
            if i > j {
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

/// Component bookkeeping for degree-`k` forms in dimension `m`.
pub struct DegreeInfo {
    /// Bitmask of each component, in lexicographic tuple order.
    pub masks: Vec<u8>,
    /// Inverse lookup: `pos[mask]` is the component index, `u16::MAX` if absent.
    pub pos: [u16; 1 << MAX_DIM],
}

impl DegreeInfo {
    fn build(m: usize, k: usize) -> Self {
        let mut tuples: Vec<Vec<u8>> = Vec::new();
        gen_tuples(m as u8, k, 0, &mut Vec::new(), &mut tuples);
        let masks: Vec<u8> = tuples
            .iter()
            .map(|t| t.iter().fold(0u8, |acc, &a| acc | (1 << a)))
            .collect();
        let mut pos = [u16::MAX; 1 << MAX_DIM];
        for (i, &mk) in masks.iter().enumerate() {
            pos[mk as usize] = i as u16;
        }
        DegreeInfo { masks, pos }
    }

    pub fn ncomps(&self) -> usize {
        self.masks.len()
    }
}

fn gen_tuples(m: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for a in start..m {
        cur.push(a);
        gen_tuples(m, k, a + 1, cur, out);
        cur.pop();
    }
}

/// One product term of the wedge: `(α∧β)_out += sign · α_a · β_b`.
pub struct WedgeTerm {
    pub out: u16,
    pub a: u16,
    pub b: u16,
    pub sign: f64,
}

/// One stencil term of the exterior derivative:
/// `(dα)_out += sign · ∂_axis α_comp`.
pub struct DerivTerm {
    pub out: u16,
    pub axis: u8,
    pub comp: u16,
    pub sign: f64,
}

/// Complement pairing for the Hodge star: component `comp_in` maps to the
/// complementary component `comp_out` with the shuffle sign of
/// `(I, Iᶜ)` relative to `(0, …, m-1)`.
pub struct StarTerm {
    pub comp_in: u16,
    pub comp_out: u16,
    pub sign: f64,
}

struct Tables {
    // Indexed [m][k]; k runs to m+1 so top-plus-one degrees are empty, not absent.
    degree: Vec<Vec<DegreeInfo>>,
    deriv: Vec<Vec<Vec<DerivTerm>>>,
    star: Vec<Vec<Vec<StarTerm>>>,
    // Indexed [m][j][k] with j + k <= m.
    wedge: Vec<Vec<Vec<Vec<WedgeTerm>>>>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut degree = Vec::new();
        let mut deriv = Vec::new();
        let mut star = Vec::new();
        let mut wedge = Vec::new();
        for m in 0..=MAX_DIM {
            let degs: Vec<DegreeInfo> = (0..=m + 1).map(|k| DegreeInfo::build(m, k)).collect();
            deriv.push(
                (0..=m + 1)
                    .map(|k| build_deriv(m, k, &degs))
                    .collect::<Vec<_>>(),
            );
            star.push(
                (0..=m)
                    .map(|k| build_star(m, k, &degs))
                    .collect::<Vec<_>>(),
            );
            let mut wm = Vec::new();
            for j in 0..=m {
                let mut wj = Vec::new();
                for k in 0..=m {
                    if j + k <= m {
                        wj.push(build_wedge(j, k, &degs));
                    } else {
                        wj.push(Vec::new());
                    }
                }
                wm.push(wj);
            }
            wedge.push(wm);
            degree.push(degs);
        }
        Tables {
            degree,
            deriv,
            star,
            wedge,
        }
    })
}

fn build_deriv(m: usize, k: usize, degs: &[DegreeInfo]) -> Vec<DerivTerm> {
    // (dα)_K = Σ_{t} (-1)^t ∂_{K[t]} α_{K \ K[t]}  for |K| = k+1.
    if k + 1 > m {
        return Vec::new();
    }
    let out_info = &degs[k + 1];
    let in_info = &degs[k];
    let mut terms = Vec::new();
    for (out, &kmask) in out_info.masks.iter().enumerate() {
        for (t, axis) in axes_of(kmask).enumerate() {
            let rest = kmask & !(1 << axis);
            let comp = in_info.pos[rest as usize];
            let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(DerivTerm {
                out: out as u16,
                axis,
                comp,
                sign,
            });
        }
    }
    terms
}

fn build_star(m: usize, k: usize, degs: &[DegreeInfo]) -> Vec<StarTerm> {
    let full: u8 = ((1u16 << m) - 1) as u8;
    let in_info = &degs[k];
    let out_info = &degs[m - k];
    in_info
        .masks
        .iter()
        .enumerate()
        .map(|(i, &mask)| {
            let comp_mask = full & !mask;
            StarTerm {
                comp_in: i as u16,
                comp_out: out_info.pos[comp_mask as usize],
                sign: merge_sign(mask, comp_mask),
            }
        })
        .collect()
}

fn build_wedge(j: usize, k: usize, degs: &[DegreeInfo]) -> Vec<WedgeTerm> {
    let a_info = &degs[j];
    let b_info = &degs[k];
    let out_info = &degs[j + k];
    let mut terms = Vec::new();
    for (ia, &ma) in a_info.masks.iter().enumerate() {
        for (ib, &mb) in b_info.masks.iter().enumerate() {
            if ma & mb != 0 {
                continue;
            }
            terms.push(WedgeTerm {
                out: out_info.pos[(ma | mb) as usize],
                a: ia as u16,
                b: ib as u16,
                sign: merge_sign(ma, mb),
            });
        }
    }
    terms
}

pub fn degree_info(m: usize, k: usize) -> &'static DegreeInfo {
    &tables().degree[m][k]
}

pub fn deriv_table(m: usize, k: usize) -> &'static [DerivTerm] {
    &tables().deriv[m][k]
}

pub fn star_table(m: usize, k: usize) -> &'static [StarTerm] {
    &tables().star[m][k]
}

pub fn wedge_table(m: usize, j: usize, k: usize) -> &'static [WedgeTerm] {
    &tables().wedge[m][j][k]
}
