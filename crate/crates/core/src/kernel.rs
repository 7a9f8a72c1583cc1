//! Exact linear algebra on jet windows: operator matrices, kernels, graded
//! dimension profiles, and window parameter bounds.
//!
//! Window semantics: a window `[lo, hi]` truncates a bottom-anchored space of
//! jets (components below `lo` are structurally zero). Because every band of
//! the operator couples an equation weight to jets of the same or lower
//! index, the equation weights `[lo, hi]` are exactly the ones fully
//! determined by in-window jets; those are the admissible rows. For windows
//! cut out of a larger space (`bottom_anchored = false`) the lowest
//! `depth - 1` equation weights reference jets below the window and are
//! dropped. The kernel of the admissible system contains the truncation of
//! every kernel element of the infinite system, so its dimension is the
//! honest parameter bound for the window.
//!
//! Elimination is fraction-free: columns are cleared to integer vectors and
//! combined with two-term integer updates, stripping the content after every
//! step. No floating point, no modular arithmetic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::Integer;
use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{GaussRat, Monomial, Poly};
use crate::error::{Error, Result};
use crate::grading::{monomial_basis, WeightSystem};
use crate::tangency::{FieldJet, Operator};

/// Inclusive jet-index window with optional per-component weight bounds.
#[derive(Clone, Debug)]
pub struct JetWindow {
    pub lo: i64,
    pub hi: i64,
    /// Minimum component weight, by component index.
    pub floors: BTreeMap<usize, i64>,
    /// Maximum component weight, by component index.
    pub ceilings: BTreeMap<usize, i64>,
    /// Whether jets below `lo` are structurally zero.
    pub bottom_anchored: bool,
    /// Exclude weight-zero (constant) component monomials; used for
    /// stabilizer computations where fields vanish at the origin.
    pub exclude_constants: bool,
}

impl JetWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        JetWindow {
            lo,
            hi,
            floors: BTreeMap::new(),
            ceilings: BTreeMap::new(),
            bottom_anchored: true,
            exclude_constants: false,
        }
    }

    pub fn floor(mut self, comp: usize, w: i64) -> Self {
        self.floors.insert(comp, w);
        self
    }

    pub fn ceiling(mut self, comp: usize, w: i64) -> Self {
        self.ceilings.insert(comp, w);
        self
    }

    pub fn without_constants(mut self) -> Self {
        self.exclude_constants = true;
        self
    }

    pub fn row_range(&self, depth: i64) -> (i64, i64) {
        let lo = if self.bottom_anchored {
            self.lo
        } else {
            self.lo + depth - 1
        };
        (lo, self.hi)
    }
}

/// Column key: jet index, component, monomial, and which real coordinate of
/// the complex coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColKey {
    pub index: i64,
    pub comp: usize,
    pub mono: Monomial,
    pub imag: bool,
}

/// Row key: equation weight, the canonical representative of the
/// conjugation orbit of the equation monomial, and the real/imaginary part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowKey {
    pub weight: i64,
    pub mono: Monomial,
    pub imag: bool,
}

/// Sparse exact matrix of the linearized operator on a window.
#[derive(Clone, Debug)]
pub struct LinearOperatorMatrix {
    pub cols: Vec<ColKey>,
    pub rows: Vec<RowKey>,
    /// Per column: sorted `(row, value)` entries.
    pub entries: Vec<Vec<(u32, BigRational)>>,
    pub window: (i64, i64),
    pub row_range: (i64, i64),
}

/// Assemble the operator matrix on a window. Rows are restricted to the
/// admissible equation weights of the window.
pub fn assemble(op: &Operator, window: &JetWindow) -> Result<LinearOperatorMatrix> {
    if window.hi < window.lo {
        return Err(Error::EmptyWindow);
    }
    let stage_last = op.stages.last().expect("operator has stages");
    let t = op.surface.table();
    let holo: Vec<_> = t.holo_vars().to_vec();
    let conj_of = |m: &Monomial| -> Monomial {
        let mut e = vec![0u16; t.len()];
        for (v, k) in m.support() {
            e[t.conj_var(v).0] = k;
        }
        Monomial(e)
    };

    // Column enumeration: deterministic in (index, component, monomial).
    let mut col_monos: Vec<(i64, usize, Monomial)> = Vec::new();
    for mu in window.lo..=window.hi {
        for ci in 0..op.shape.components.len() {
            let wt = mu + stage_last.offsets[ci];
            if wt < 0 {
                continue;
            }
            if let Some(&fl) = window.floors.get(&ci) {
                if wt < fl {
                    continue;
                }
            }
            if let Some(&cl) = window.ceilings.get(&ci) {
                if wt > cl {
                    continue;
                }
            }
            for m in monomial_basis(t, &holo, &stage_last.ws, wt) {
                if window.exclude_constants && m.is_unit() {
                    continue;
                }
                col_monos.push((mu, ci, m));
            }
        }
    }
    if col_monos.is_empty() {
        return Err(Error::EmptyWindow);
    }

    let (row_lo, row_hi) = window.row_range(stage_last.depth);

    // First pass: compute filtered residual pairs and collect row keys.
    let mut row_set: BTreeSet<RowKey> = BTreeSet::new();
    let mut col_polys: Vec<Poly> = Vec::new(); // pre-re2 residuals
    for (_, ci, m) in &col_monos {
        let x = op.column_pre(*ci, m)?;
        col_polys.push(x);
    }
    let filter = |op: &Operator, p: &Poly, ci: usize, m: &Monomial| -> Poly {
        let mut out = Poly::zero(p.table());
        let idx: Vec<i64> = op.stages.iter().map(|st| st.jet_index(ci, m)).collect();
        for (tm, c) in p.terms() {
            let wlast = stage_last.ws.weight_of(tm);
            if wlast < row_lo || wlast > row_hi {
                continue;
            }
            let ok = op.stages.iter().zip(&idx).all(|(st, &i)| {
                let band = st.ws.weight_of(tm) - i;
                band >= 0 && band < st.depth
            });
            if ok {
                out.add_term(tm.clone(), c.clone());
            }
        }
        out
    };

    let mut filtered: Vec<(Poly, Poly)> = Vec::new();
    for ((_, ci, m), x) in col_monos.iter().zip(&col_polys) {
        let p_re = filter(op, &x.re2(), *ci, m);
        let p_im = filter(op, &x.scale(&GaussRat::i()).re2(), *ci, m);
        for p in [&p_re, &p_im] {
            for (tm, _) in p.terms() {
                let tc = conj_of(tm);
                let rep = if *tm <= tc { tm.clone() } else { tc };
                let selfconj = rep == conj_of(&rep);
                let w = stage_last.ws.weight_of(tm);
                row_set.insert(RowKey {
                    weight: w,
                    mono: rep.clone(),
                    imag: false,
                });
                if !selfconj {
                    row_set.insert(RowKey {
                        weight: w,
                        mono: rep,
                        imag: true,
                    });
                }
            }
        }
        filtered.push((p_re, p_im));
    }

    let rows: Vec<RowKey> = row_set.into_iter().collect();
    let row_index: BTreeMap<&RowKey, u32> = rows
        .iter()
        .enumerate()
        .map(|(i, k)| (k, i as u32))
        .collect();

    // Second pass: entries. Only orbit representatives are read; the
    // conjugate term carries the conjugate coefficient by realness.
    let mut cols: Vec<ColKey> = Vec::new();
    let mut entries: Vec<Vec<(u32, BigRational)>> = Vec::new();
    for ((mu, ci, m), (p_re, p_im)) in col_monos.iter().zip(&filtered) {
        for (imag, p) in [(false, p_re), (true, p_im)] {
            let mut vec: BTreeMap<u32, BigRational> = BTreeMap::new();
            for (tm, c) in p.terms() {
                let tc = conj_of(tm);
                if *tm > tc {
                    continue; // conjugate partner carries the same data
                }
                let selfconj = *tm == tc;
                let w = stage_last.ws.weight_of(tm);
                let rk_re = RowKey {
                    weight: w,
                    mono: tm.clone(),
                    imag: false,
                };
                if !c.re.is_zero() {
                    let r = row_index[&rk_re];
                    *vec.entry(r).or_insert_with(BigRational::zero) += &c.re;
                }
                if selfconj {
                    debug_assert!(c.im.is_zero(), "self-conjugate row with imaginary part");
                } else if !c.im.is_zero() {
                    let rk_im = RowKey {
                        weight: w,
                        mono: tm.clone(),
                        imag: true,
                    };
                    let r = row_index[&rk_im];
                    *vec.entry(r).or_insert_with(BigRational::zero) += &c.im;
                }
            }
            cols.push(ColKey {
                index: *mu,
                comp: *ci,
                mono: m.clone(),
                imag,
            });
            entries.push(vec.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }

    Ok(LinearOperatorMatrix {
        cols,
        rows,
        entries,
        window: (window.lo, window.hi),
        row_range: (row_lo, row_hi),
    })
}

/// Exact kernel data: rank and a basis of the null space in column
/// coordinates.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub rank: usize,
    pub basis: Vec<Vec<BigRational>>,
}

impl KernelResult {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

struct EchelonRow {
    vec: Vec<(u32, BigInt)>,
    aug: Vec<(u32, BigInt)>,
}

/// Fraction-free elimination over the integers with content stripping.
/// Deterministic: columns are processed in order and pivots sit at the
/// smallest remaining row coordinate.
pub fn kernel_basis(mat: &LinearOperatorMatrix) -> KernelResult {
    let ncols = mat.cols.len();
    // Integerize columns; remember the scale to map kernel coordinates back.
    let mut scales: Vec<BigInt> = Vec::with_capacity(ncols);
    let mut intcols: Vec<Vec<(u32, BigInt)>> = Vec::with_capacity(ncols);
    for col in &mat.entries {
        let mut lcm = BigInt::one();
        for (_, v) in col {
            lcm = lcm.lcm(v.denom());
        }
        let iv: Vec<(u32, BigInt)> = col
            .iter()
            .map(|(r, v)| (*r, (v * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        scales.push(lcm);
        intcols.push(iv);
    }

    let mut pivots: BTreeMap<u32, usize> = BTreeMap::new();
    let mut echelon: Vec<EchelonRow> = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut rank = 0usize;

    for (j, vec) in intcols.into_iter().enumerate() {
        let mut cur = EchelonRow {
            vec,
            aug: vec![(j as u32, BigInt::one())],
        };
        loop {
            let lead = match cur.vec.first() {
                Some((r, _)) => *r,
                None => {
                    // Dependent column: the augmented part is a kernel vector.
                    let mut v = vec![BigRational::zero(); ncols];
                    for (k, c) in &cur.aug {
                        // Undo the per-column integer scaling.
                        v[*k as usize] = BigRational::from_integer(c * &scales[*k as usize]);
                    }
                    normalize_rational_vec(&mut v);
                    basis.push(v);
                    break;
                }
            };
            match pivots.get(&lead) {
                Some(&pi) => {
                    let (pv, pa, plead) = {
                        let p = &echelon[pi];
                        (p.vec.clone(), p.aug.clone(), p.vec[0].1.clone())
                    };
                    let c = cur.vec[0].1.clone();
                    let g = plead.gcd(&c);
                    let a = &plead / &g; // multiplier for cur
                    let bq = &c / &g; // multiplier for pivot
                    cur.vec = combine(&cur.vec, &a, &pv, &bq);
                    cur.aug = combine(&cur.aug, &a, &pa, &bq);
                    strip_content(&mut cur);
                }
                None => {
                    strip_content(&mut cur);
                    if cur.vec[0].1.is_negative() {
                        negate(&mut cur);
                    }
                    pivots.insert(lead, echelon.len());
                    echelon.push(cur);
                    rank += 1;
                    break;
                }
            }
        }
    }

    KernelResult { rank, basis }
}

/// `a * x - b * y` on sorted sparse vectors.
fn combine(
    x: &[(u32, BigInt)],
    a: &BigInt,
    y: &[(u32, BigInt)],
    b: &BigInt,
) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let mut i = 0;
    let mut j = 0;
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some((ri, vi)), Some((rj, vj))) => {
                if ri < rj {
                    out.push((*ri, a * vi));
                    i += 1;
                } else if rj < ri {
                    out.push((*rj, -(b * vj)));
                    j += 1;
                } else {
                    let v = a * vi - b * vj;
                    if !v.is_zero() {
                        out.push((*ri, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ri, vi)), None) => {
                out.push((*ri, a * vi));
                i += 1;
            }
            (None, Some((rj, vj))) => {
                out.push((*rj, -(b * vj)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn strip_content(row: &mut EchelonRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.vec.iter().chain(row.aug.iter()) {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.vec.iter_mut().chain(row.aug.iter_mut()) {
        *v = &*v / &g;
    }
}

fn negate(row: &mut EchelonRow) {
    for (_, v) in row.vec.iter_mut().chain(row.aug.iter_mut()) {
        *v = -(v.clone());
    }
}

/// Scale to a primitive integer vector with positive leading entry.
fn normalize_rational_vec(v: &mut [BigRational]) {
    let mut lcm = BigInt::one();
    for x in v.iter() {
        lcm = lcm.lcm(x.denom());
    }
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(&(x * BigRational::from_integer(lcm.clone())).to_integer());
    }
    if g.is_zero() {
        return;
    }
    let scale = BigRational::new(lcm, g);
    let lead_negative = v
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    for x in v.iter_mut() {
        *x = &*x * &scale;
        if lead_negative {
            *x = -x.clone();
        }
    }
}

/// Rebuild a jet from kernel coordinates.
pub fn jet_from_vector(
    mat: &LinearOperatorMatrix,
    op: &Operator,
    coords: &[BigRational],
) -> Result<FieldJet> {
    assert_eq!(coords.len(), mat.cols.len());
    let mut jet = FieldJet::zero(&op.shape);
    for (ck, c) in mat.cols.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let coeff = if ck.imag {
            GaussRat::new(BigRational::zero(), c.clone())
        } else {
            GaussRat::new(c.clone(), BigRational::zero())
        };
        let add = FieldJet::basis_element(&op.shape, ck.comp, &ck.mono, coeff);
        jet = jet.add(&add)?;
    }
    Ok(jet)
}

/// Kernel dimension of the admissible window system: the Theorem-1 style
/// upper bound for the parameter count of the nonlinear family on this
/// window.
pub fn param_bound(op: &Operator, window: &JetWindow) -> Result<usize> {
    match assemble(op, window) {
        Ok(mat) => Ok(kernel_basis(&mat).dim()),
        Err(Error::EmptyWindow) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Per-grade kernel dimensions of a strictly graded operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedProfile {
    pub dims: BTreeMap<i64, usize>,
    pub window: (i64, i64),
    pub stabilized: bool,
}

impl GradedProfile {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Field grades run over `grades`; grade `nu` fields correspond to equation
/// weight `nu + [w]`. Requires a depth-one (weight-homogeneous) operator.
pub fn graded_profile(
    op: &Operator,
    grades: (i64, i64),
    exclude_constants: bool,
) -> Result<GradedProfile> {
    if op.stages.len() != 1 || op.depth() != 1 {
        return Err(Error::BadSurface(
            "graded profile requires a strictly graded operator".into(),
        ));
    }
    let wt_w = op.surface.weights().weight(op.surface.w_var());
    let mut dims = BTreeMap::new();
    for nu in grades.0..=grades.1 {
        let mu = nu + wt_w;
        let mut window = JetWindow::new(mu, mu);
        if exclude_constants {
            window = window.without_constants();
        }
        let dim = param_bound(op, &window)?;
        dims.insert(nu, dim);
    }
    let stabilized = {
        let mut top: Vec<usize> = dims
            .iter()
            .rev()
            .take(2)
            .map(|(_, &d)| d)
            .collect();
        top.dedup();
        top == vec![0]
    };
    Ok(GradedProfile {
        dims,
        window: grades,
        stabilized,
    })
}

/// True iff the admissible rows of the window vanish on the jet.
pub fn verify_solution(op: &Operator, jet: &FieldJet, window: &JetWindow) -> Result<bool> {
    let stage_last = op.stages.last().expect("stages");
    let (row_lo, row_hi) = window.row_range(stage_last.depth);
    let filtered = op.apply(jet)?;
    for (m, _) in filtered.terms() {
        let w = stage_last.ws.weight_of(m);
        if w >= row_lo && w <= row_hi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number-of-terms view used by reports.
pub fn matrix_stats(mat: &LinearOperatorMatrix) -> (usize, usize, usize) {
    (
        mat.rows.len(),
        mat.cols.len(),
        mat.entries.iter().map(|c| c.len()).sum(),
    )
}

/// Text export: header with both bases, then `row col value` triplets.
pub fn export_matrix(mat: &LinearOperatorMatrix, op: &Operator) -> String {
    let t = op.surface.table();
    let mut out = String::new();
    out.push_str(&format!(
        "# operator matrix  window {}..{}  rows {}..{}\n",
        mat.window.0, mat.window.1, mat.row_range.0, mat.row_range.1
    ));
    for (i, r) in mat.rows.iter().enumerate() {
        out.push_str(&format!(
            "# row {} weight {} {} {}\n",
            i,
            r.weight,
            mono_string(t, &r.mono),
            if r.imag { "im" } else { "re" }
        ));
    }
    for (j, c) in mat.cols.iter().enumerate() {
        out.push_str(&format!(
            "# col {} index {} {} {} {}\n",
            j,
            c.index,
            op.shape.components[c.comp].name,
            mono_string(t, &c.mono),
            if c.imag { "im" } else { "re" }
        ));
    }
    for (j, col) in mat.entries.iter().enumerate() {
        for (r, v) in col {
            out.push_str(&format!("{} {} {}\n", r, j, GaussRat::rational_string(v)));
        }
    }
    out
}

fn mono_string(t: &std::sync::Arc<crate::algebra::VarTable>, m: &Monomial) -> String {
    if m.is_unit() {
        return "1".to_string();
    }
    m.support()
        .map(|(v, e)| {
            if e == 1 {
                t.name(v).to_string()
            } else {
                format!("{}^{}", t.name(v), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// `(kernel dimension, rank)` of a small dense rational matrix given by
/// rows. Plain Gaussian elimination; used for the pencil-group systems.
pub fn dense_rational_kernel_dim(rows: &[Vec<BigRational>], ncols: usize) -> (usize, usize) {
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pi) = (rank..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pi);
        let inv = mat[rank][col].recip();
        for x in mat[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = mat[rank].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&factor * p);
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    (ncols - rank, rank)
}

/// Series inverse of a polynomial with nonzero constant term, truncated at
/// the weight bound.
pub fn series_inverse(den: &Poly, ws: &WeightSystem, bound: i64) -> Result<Poly> {
    let c0 = den.constant_term();
    if c0.is_zero() {
        return Err(Error::DenominatorVanishes);
    }
    let t = den.table();
    let c0inv = c0.inv().expect("nonzero");
    // den = c0 (1 - n) with n of positive weight
    let n = Poly::one(t).sub(&den.scale(&c0inv))?;
    let mut acc = Poly::one(t);
    let mut pw = Poly::one(t);
    loop {
        pw = pw.mul_trunc(&n, Some((ws, bound)))?;
        if pw.is_zero() {
            break;
        }
        acc = acc.add(&pw)?;
    }
    Ok(acc.scale(&c0inv))
}

/// A jet component given as an exact rational function.
#[derive(Clone, Debug)]
pub struct RationalComponent {
    pub num: Poly,
    pub den: Poly,
}

impl RationalComponent {
    pub fn poly(p: Poly) -> Self {
        let one = Poly::one(p.table());
        RationalComponent { num: p, den: one }
    }
}

/// Series-expand rational components to the window's top weight.
pub fn expand_rational_jet(
    op: &Operator,
    comps: Vec<RationalComponent>,
    window: &JetWindow,
) -> Result<FieldJet> {
    let stage_last = op.stages.last().expect("stages");
    let mut polys = Vec::new();
    for (ci, rc) in comps.into_iter().enumerate() {
        let bound = window.hi + stage_last.offsets[ci];
        if rc.den.num_terms() == 1 && !rc.den.constant_term().is_zero() {
            let c0inv = rc.den.constant_term().inv().expect("nonzero");
            polys.push(
                rc.num
                    .scale(&c0inv)
                    .truncate_weight(&stage_last.ws, bound),
            );
            continue;
        }
        let inv = series_inverse(&rc.den, &stage_last.ws, bound)?;
        let p = rc.num.mul_trunc(&inv, Some((&stage_last.ws, bound)))?;
        polys.push(p);
    }
    FieldJet::new(&op.shape, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::preset_cubic;
    use crate::surfaces::cubic_q;
    use crate::tangency::shape_cubic;

    #[test]
    fn kernel_of_identity_block_is_empty() {
        // Assemble a tiny strictly graded block and check rank + nullity.
        let s = cubic_q().unwrap();
        let shape = shape_cubic(&s).unwrap();
        let op = Operator::graded(&s, &shape).unwrap();
        // grade -3 block: equation weight 0, only the constant e-component
        let window = JetWindow::new(0, 0);
        let mat = assemble(&op, &window).unwrap();
        let k = kernel_basis(&mat);
        assert_eq!(k.rank + k.dim(), mat.cols.len());
        // (0,0,0,d) with d real: dimension 1
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn series_inverse_geometric() {
        let (t, ws) = preset_cubic();
        let zeta = Poly::var_named(&t, "ζ").unwrap();
        let den = Poly::one(&t)
            .add(&zeta.scale(&GaussRat::from_int(2)))
            .unwrap();
        let inv = series_inverse(&den, &ws, 3).unwrap();
        // 1 - 2ζ + 4ζ^2 - 8ζ^3
        assert_eq!(inv.coeff_of(&[]).unwrap(), GaussRat::one());
        assert_eq!(inv.coeff_of(&[("ζ", 1)]).unwrap(), GaussRat::from_int(-2));
        assert_eq!(inv.coeff_of(&[("ζ", 2)]).unwrap(), GaussRat::from_int(4));
        assert_eq!(inv.coeff_of(&[("ζ", 3)]).unwrap(), GaussRat::from_int(-8));
        let prod = den.mul_trunc(&inv, Some((&ws, 3))).unwrap();
        assert_eq!(prod, Poly::one(&t));
        // vanishing constant term rejected
        assert!(series_inverse(&zeta, &ws, 3).is_err());
    }
}
