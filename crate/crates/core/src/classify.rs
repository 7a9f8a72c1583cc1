//! Normal-form classification of pairs (nondegenerate Hermitian form,
//! nonzero symmetric form) on C^2, the linear-group algebra dimensions, and
//! the 3-jet action.
//!
//! Classification works by exact invariants only. With `<z,z̄> = z^T H z̄`
//! and `K(z,z) = z^T K z`, the operator `T = conj(H)^{-1} conj(K) H^{-1} K`
//! transforms by similarity under every change of basis preserving `H` up to
//! scale, so the decision tree reads off the signature of `H`, the rank of
//! `K`, and the spectrum shape of `T` (trace, determinant, discriminant).
//! Normal-form witnesses may need irrational field extensions (rotations);
//! those are reported as absent rather than approximated.

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{GaussRat, Poly};
use crate::error::{Error, Result};
use crate::grading::preset_twofold;
use crate::kernel::dense_rational_kernel_dim;
use crate::surfaces::{ModelSurface, SurfBuilder, TwoNondegParams};

pub type Mat2 = [[GaussRat; 2]; 2];

/// A pair (Hermitian form H, symmetric form K) on C^2.
#[derive(Clone, Debug)]
pub struct FormPair {
    pub h: Mat2,
    pub k: Mat2,
}

impl FormPair {
    pub fn new(h: Mat2, k: Mat2) -> Result<Self> {
        if h[0][0] != h[0][0].conj()
            || h[1][1] != h[1][1].conj()
            || h[1][0] != h[0][1].conj()
        {
            return Err(Error::DegenerateForm);
        }
        if det2(&h).is_zero() {
            return Err(Error::DegenerateForm);
        }
        if k[0][1] != k[1][0] {
            return Err(Error::ZeroForm);
        }
        if k.iter().flatten().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(FormPair { h, k })
    }

    pub fn from_params(p: &TwoNondegParams) -> Self {
        FormPair {
            h: p.h_matrix(),
            k: p.k_matrix(),
        }
    }
}

/// Classification outcome: the class id, exactly recoverable normal-form
/// parameters, and the similarity invariants that decided the class.
#[derive(Clone, Debug, Serialize)]
pub struct PairClass {
    pub id: u8,
    /// `k` of the normal form when it is rational.
    pub k: Option<String>,
    /// `m` of the normal form when it is exactly recoverable.
    pub m: Option<String>,
    /// trace and determinant of the classification operator
    pub trace: String,
    pub det: String,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: PairClass,
    /// Reducing matrix when the reduction stays rational (currently the
    /// identity for pairs already in normal form); `None` marks a witness
    /// that needs an irrational extension.
    pub witness: Option<Mat2>,
}

fn det2(m: &Mat2) -> GaussRat {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [
        [GaussRat::zero(), GaussRat::zero()],
        [GaussRat::zero(), GaussRat::zero()],
    ];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = GaussRat::zero();
            for l in 0..2 {
                acc += &(&a[i][l] * &b[l][j]);
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_conj(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[0][1].conj()],
        [a[1][0].conj(), a[1][1].conj()],
    ]
}

fn mat_transpose(a: &Mat2) -> Mat2 {
    [
        [a[0][0].clone(), a[1][0].clone()],
        [a[0][1].clone(), a[1][1].clone()],
    ]
}

fn mat_inv(a: &Mat2) -> Result<Mat2> {
    let d = det2(a);
    if d.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let di = d.inv()?;
    Ok([
        [&a[1][1] * &di, -&(&a[0][1] * &di)],
        [-&(&a[1][0] * &di), &a[0][0] * &di],
    ])
}

fn mat_scale(a: &Mat2, c: &GaussRat) -> Mat2 {
    [
        [&a[0][0] * c, &a[0][1] * c],
        [&a[1][0] * c, &a[1][1] * c],
    ]
}

/// `sqrt` of a nonnegative rational when it is rational.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    use num::integer::Roots;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn rat_str(r: &BigRational) -> String {
    GaussRat::rational_string(r)
}

/// Decide the class of a pair by exact invariants.
pub fn classify_pair(p: &FormPair) -> Result<Classification> {
    let deth = det2(&p.h);
    // H Hermitian: determinant is real.
    debug_assert!(deth.is_real());
    let detk = det2(&p.k);
    let rank_k = if detk.is_zero() { 1 } else { 2 };

    // T = conj(H)^{-1} conj(K) H^{-1} K
    let t = mat_mul(
        &mat_mul(&mat_inv(&mat_conj(&p.h))?, &mat_conj(&p.k)),
        &mat_mul(&mat_inv(&p.h)?, &p.k),
    );
    let trace = &t[0][0] + &t[1][1];
    let dett = det2(&t);
    debug_assert!(trace.is_real() && dett.is_real());
    let tr = trace.re.clone();
    let dt = dett.re.clone();
    let disc = &tr * &tr - BigRational::from_integer(4.into()) * &dt;
    let scalar = t[0][1].is_zero() && t[1][0].is_zero() && t[0][0] == t[1][1];

    let definite = deth.re.is_positive();
    let (id, kparam, mparam): (u8, Option<BigRational>, Option<GaussRat>) = if definite {
        if rank_k == 1 {
            // T has eigenvalues {k^2, 0}
            (3, rational_sqrt(&tr), None)
        } else if disc.is_zero() {
            let k2 = &tr / &BigRational::from_integer(2.into());
            (2, rational_sqrt(&k2), None)
        } else {
            // distinct eigenvalues k^2 > m^2 >= 0
            let (k2, m2) = eigen_pair(&tr, &disc);
            (
                1,
                k2.as_ref().and_then(rational_sqrt),
                m2.as_ref()
                    .and_then(|m| rational_sqrt(m).map(|x| GaussRat::new(x, BigRational::zero()))),
            )
        }
    } else if rank_k == 1 {
        let t_zero = t.iter().flatten().all(|c| c.is_zero());
        if t_zero {
            (9, None, None)
        } else {
            (6, rational_sqrt(&tr), None)
        }
    } else if disc.is_negative() {
        // conjugate non-real eigenvalues m, conj(m)
        let m = rational_sqrt(&(-&disc)).map(|s| {
            GaussRat::new(
                &tr / &BigRational::from_integer(2.into()),
                s / BigRational::from_integer(2.into()),
            )
        });
        (7, None, m)
    } else if disc.is_zero() {
        if scalar {
            let lambda = &tr / &BigRational::from_integer(2.into());
            if lambda.is_positive() {
                (5, rational_sqrt(&lambda), None)
            } else {
                (
                    8,
                    None,
                    Some(GaussRat::new(lambda, BigRational::zero())),
                )
            }
        } else {
            return Err(Error::InvalidClass(
                "non-semisimple classification operator".into(),
            ));
        }
    } else {
        let (k2, m2) = eigen_pair(&tr, &disc);
        (
            4,
            k2.as_ref().and_then(rational_sqrt),
            m2.as_ref()
                .and_then(|m| rational_sqrt(m).map(|x| GaussRat::new(x, BigRational::zero()))),
        )
    };

    let witness = normal_form_witness(p, id);
    Ok(Classification {
        class: PairClass {
            id,
            k: kparam.as_ref().map(rat_str),
            m: mparam.as_ref().map(|m| m.to_string()),
            trace: rat_str(&tr),
            det: rat_str(&dt),
        },
        witness,
    })
}

fn eigen_pair(tr: &BigRational, disc: &BigRational) -> (Option<BigRational>, Option<BigRational>) {
    match rational_sqrt(disc) {
        Some(s) => {
            let two = BigRational::from_integer(2.into());
            (Some((tr + &s) / &two), Some((tr - &s) / &two))
        }
        None => (None, None),
    }
}

/// Identity when the pair already carries one of the nine printed shapes.
fn normal_form_witness(p: &FormPair, id: u8) -> Option<Mat2> {
    let one = GaussRat::one();
    let zero = GaussRat::zero();
    let identity = [
        [one.clone(), zero.clone()],
        [zero.clone(), one.clone()],
    ];
    let h_ok = match id {
        1..=3 => p.h == [[one.clone(), zero.clone()], [zero.clone(), one.clone()]],
        4..=6 => p.h == [[one.clone(), zero.clone()], [zero.clone(), -one.clone()]],
        _ => p.h == [[zero.clone(), one.clone()], [one.clone(), zero.clone()]],
    };
    let k_diag = p.k[0][1].is_zero() && p.k[1][0].is_zero();
    if h_ok && k_diag {
        Some(identity)
    } else {
        None
    }
}

/// Real dimension of the Lie algebra of the linear group preserving the pair
/// up to the jet coupling: unknowns `A` (2x2 complex), `r` real, `b` complex;
/// equations `A^T H + H conj(A) = r H` and `A^T K + K A = (r - conj(b)) K`.
pub fn g0_dim(p: &FormPair) -> usize {
    // Unknown order: Re/Im of a11, a12, a21, a22, then r, Re b, Im b.
    let n = 11usize;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut push_complex_eq = |coeffs: Vec<(usize, GaussRat)>| {
        // one complex equation -> two real rows
        let mut re = vec![BigRational::zero(); n];
        let mut im = vec![BigRational::zero(); n];
        for (ix, c) in coeffs {
            re[ix] += &c.re;
            im[ix] += &c.im;
        }
        rows.push(re);
        rows.push(im);
    };
    let a_re = |i: usize, j: usize| 2 * (2 * i + j);
    let a_im = |i: usize, j: usize| 2 * (2 * i + j) + 1;
    let ix_r = 8usize;
    let ix_br = 9usize;
    let ix_bi = 10usize;

    // (A^T H)_{ij} = sum_l A_{li} H_{lj};  (H conj(A))_{ij} = sum_l H_{il} conj(A)_{lj}
    for i in 0..2 {
        for j in 0..2 {
            let mut coeffs: Vec<(usize, GaussRat)> = Vec::new();
            for l in 0..2 {
                // A_{li} * H_{lj}
                coeffs.push((a_re(l, i), p.h[l][j].clone()));
                coeffs.push((a_im(l, i), &GaussRat::i() * &p.h[l][j]));
                // H_{il} * conj(A_{lj})
                coeffs.push((a_re(l, j), p.h[i][l].clone()));
                coeffs.push((a_im(l, j), -&(&GaussRat::i() * &p.h[i][l])));
            }
            coeffs.push((ix_r, -&p.h[i][j]));
            push_complex_eq(coeffs);
        }
    }
    // (A^T K)_{ij} + (K A)_{ij} = (r - conj(b)) K_{ij}
    for i in 0..2 {
        for j in 0..2 {
            let mut coeffs: Vec<(usize, GaussRat)> = Vec::new();
            for l in 0..2 {
                coeffs.push((a_re(l, i), p.k[l][j].clone()));
                coeffs.push((a_im(l, i), &GaussRat::i() * &p.k[l][j]));
                coeffs.push((a_re(l, j), p.k[i][l].clone()));
                coeffs.push((a_im(l, j), &GaussRat::i() * &p.k[i][l]));
            }
            coeffs.push((ix_r, -&p.k[i][j]));
            // + conj(b) K_{ij} = (Re b - i Im b) K_{ij}
            coeffs.push((ix_br, p.k[i][j].clone()));
            coeffs.push((ix_bi, -&(&GaussRat::i() * &p.k[i][j])));
            push_complex_eq(coeffs);
        }
    }

    dense_rational_kernel_dim(&rows, n).0
}

/// A jet-level group element acting on 3-jets of two-nondegenerate surfaces.
#[derive(Clone, Debug)]
pub struct JetGroupElement {
    pub c: Mat2,
    pub rho: BigRational,
    pub beta: GaussRat,
    pub a: [GaussRat; 2],
    pub alpha: [GaussRat; 2],
}

impl JetGroupElement {
    pub fn linear(c: Mat2, rho: BigRational, beta: GaussRat) -> Self {
        JetGroupElement {
            c,
            rho,
            beta,
            a: [GaussRat::zero(), GaussRat::zero()],
            alpha: [GaussRat::zero(), GaussRat::zero()],
        }
    }
}

/// The K-matrix transform `K -> (rho / conj(beta)) * (C^{-1})^T K C^{-1}`.
pub fn jet_action_k(e: &JetGroupElement, k: &Mat2) -> Result<Mat2> {
    if e.beta.is_zero() || e.rho.is_zero() {
        return Err(Error::IncompatibleElement);
    }
    let cinv = mat_inv(&e.c)?;
    let scale = &GaussRat::new(e.rho.clone(), BigRational::zero()) / &e.beta.conj();
    Ok(mat_scale(
        &mat_mul(&mat_transpose(&cinv), &mat_mul(k, &cinv)),
        &scale,
    ))
}

/// Apply the jet action to a two-nondegenerate 3-jet surface: checks the
/// Hermitian compatibility `C^T H conj(C) = rho H`, transforms `K`, and
/// rebuilds the 3-jet surface `v = <z,z̄> + 2Re(K̃ ζ̄)`.
pub fn jet_action(e: &JetGroupElement, h: &Mat2, k: &Mat2) -> Result<(ModelSurface, Mat2)> {
    let lhs = mat_mul(&mat_transpose(&e.c), &mat_mul(h, &mat_conj(&e.c)));
    let rhs = mat_scale(h, &GaussRat::new(e.rho.clone(), BigRational::zero()));
    if lhs != rhs {
        return Err(Error::IncompatibleElement);
    }
    let kt = jet_action_k(e, k)?;
    let (t, ws) = preset_twofold();
    let b = SurfBuilder::new(&t);
    let mut f = Poly::zero(&t);
    let zn = ["z1", "z2"];
    let zb = ["z\u{0304}1", "z\u{0304}2"];
    for i in 0..2 {
        for j in 0..2 {
            if !h[i][j].is_zero() {
                f = f.add(&b.m(&[(zn[i], 1), (zb[j], 1)], h[i][j].clone()))?;
            }
        }
    }
    let kpoly = b.sum(&[
        b.m(&[("z1", 2)], kt[0][0].clone()),
        b.m(&[("z1", 1), ("z2", 1)], &kt[0][1] + &kt[1][0]),
        b.m(&[("z2", 2)], kt[1][1].clone()),
    ])?;
    let f = f.add(&kpoly.mul(&b.v("ζ̄"))?.re2())?;
    Ok((ModelSurface::new(ws, f, 3)?, kt))
}

/// Kernel dimension of the linearized low-order jet equation of a
/// three-nondegenerate surface on the window of 3-jets of fields fixing the
/// origin (component weights: f 1..3, g 1..2, h 1, e 2..4).
pub fn jet13_dim_check(s: &ModelSurface) -> Result<usize> {
    let shape = crate::tangency::shape_threefold(s)?;
    let op = crate::tangency::Operator::graded(s, &shape)?;
    let window = crate::kernel::JetWindow::new(2, 4).without_constants();
    crate::kernel::param_bound(&op, &window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn diag(a: GaussRat, b: GaussRat) -> Mat2 {
        [[a, GaussRat::zero()], [GaussRat::zero(), b]]
    }

    fn antidiag() -> Mat2 {
        [
            [GaussRat::zero(), GaussRat::one()],
            [GaussRat::one(), GaussRat::zero()],
        ]
    }

    #[test]
    fn classify_spec_examples() {
        // diag(1,1) / k=1, m=2 -> class 1
        let p = FormPair::new(diag(gr(1), gr(1)), diag(gr(1), gr(2))).unwrap();
        let c = classify_pair(&p).unwrap();
        assert_eq!(c.class.id, 1);
        assert_eq!(c.class.k.as_deref(), Some("1"));
        // k = m = 1 -> class 2
        let p = FormPair::new(diag(gr(1), gr(1)), diag(gr(1), gr(1))).unwrap();
        assert_eq!(classify_pair(&p).unwrap().class.id, 2);
        // antidiag / K = z1^2 -> class 9
        let p = FormPair::new(antidiag(), diag(gr(1), gr(0))).unwrap();
        assert_eq!(classify_pair(&p).unwrap().class.id, 9);
        // diag(1,-1) / K = z1^2 + z2^2 -> class 5
        let p = FormPair::new(diag(gr(1), gr(-1)), diag(gr(1), gr(1))).unwrap();
        assert_eq!(classify_pair(&p).unwrap().class.id, 5);
        // antidiag / K = z1^2 + i z2^2 -> class 7
        let p = FormPair::new(antidiag(), diag(gr(1), GaussRat::i())).unwrap();
        assert_eq!(classify_pair(&p).unwrap().class.id, 7);
        // antidiag / K = z1^2 - 2 z2^2 -> class 8
        let p = FormPair::new(antidiag(), diag(gr(1), gr(-2))).unwrap();
        assert_eq!(classify_pair(&p).unwrap().class.id, 8);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(FormPair::new(diag(gr(1), gr(0)), diag(gr(1), gr(1))).is_err());
        assert!(FormPair::new(diag(gr(1), gr(1)), diag(gr(0), gr(0))).is_err());
        // non-Hermitian H
        let h = [
            [GaussRat::one(), GaussRat::i()],
            [GaussRat::i(), GaussRat::one()],
        ];
        assert!(FormPair::new(h, diag(gr(1), gr(1))).is_err());
    }

    #[test]
    fn jet_action_examples() {
        let k = diag(gr(1), gr(2));
        // identity element: same K
        let e = JetGroupElement::linear(
            diag(gr(1), gr(1)),
            BigRational::from_integer(1.into()),
            GaussRat::one(),
        );
        assert_eq!(jet_action_k(&e, &k).unwrap(), k);
        // C = 2I, rho = 4, beta = 1: K unchanged
        let e = JetGroupElement::linear(
            diag(gr(2), gr(2)),
            BigRational::from_integer(4.into()),
            GaussRat::one(),
        );
        assert_eq!(jet_action_k(&e, &k).unwrap(), k);
        // C = I, beta = 2, rho = 1: K halves
        let e = JetGroupElement::linear(
            diag(gr(1), gr(1)),
            BigRational::from_integer(1.into()),
            gr(2),
        );
        let kt = jet_action_k(&e, &k).unwrap();
        assert_eq!(kt[0][0], GaussRat::from_ratio(1, 2));
        assert_eq!(kt[1][1], GaussRat::from_ratio(2, 2) * GaussRat::from_int(2) * GaussRat::from_ratio(1, 2));
    }

    #[test]
    fn jet_action_composes_on_k() {
        let k = diag(gr(1), gr(3));
        let e1 = JetGroupElement::linear(
            [[gr(1), gr(2)], [GaussRat::zero(), gr(1)]],
            BigRational::from_integer(1.into()),
            gr(1),
        );
        let e2 = JetGroupElement::linear(
            diag(gr(2), gr(2)),
            BigRational::from_integer(4.into()),
            gr(3),
        );
        // non-Hermitian-compatible C are still fine at the K-matrix level
        let k1 = jet_action_k(&e1, &k).unwrap();
        let k12 = jet_action_k(&e2, &k1).unwrap();
        let composed = JetGroupElement::linear(
            mat_mul(&e2.c, &e1.c),
            &e1.rho * &e2.rho,
            &e1.beta * &e2.beta,
        );
        let kc = jet_action_k(&composed, &k).unwrap();
        assert_eq!(k12, kc);
    }

    #[test]
    fn hermitian_compatibility_enforced() {
        // C = diag(1, 2) does not preserve the standard form up to scale
        let e = JetGroupElement::linear(
            diag(gr(1), gr(2)),
            BigRational::from_integer(1.into()),
            gr(1),
        );
        let h = diag(gr(1), gr(1));
        let k = diag(gr(1), gr(2));
        assert!(jet_action(&e, &h, &k).is_err());
        // C = 2I with rho = 4 does
        let e = JetGroupElement::linear(
            diag(gr(2), gr(2)),
            BigRational::from_integer(4.into()),
            gr(1),
        );
        assert!(jet_action(&e, &h, &k).is_ok());
    }
}
