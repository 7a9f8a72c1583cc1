//! Rigid model hypersurfaces `v = F(z, z̄, ...)`, fixture constructors, and
//! Levi-degeneracy diagnostics.
//!
//! A surface stores the real defining polynomial `F` (free of `u`, `w`), the
//! grading, and the truncation weight: diagnostics on a surface truncated at
//! weight `N` are only meaningful for output weights `<= N - 2`, since the
//! two missing differentiations' worth of higher terms could contribute.

use num::rational::BigRational;
use num::traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{GaussRat, Monomial, Poly, VarId, VarTable};
use crate::error::{Error, Result};
use crate::grading::{
    graded_component, preset_cubic, preset_quadric, preset_threefold, preset_twofold,
    weights_present, WeightSystem,
};

/// A rigid hypersurface `v = F` with its grading and truncation order.
#[derive(Clone, Debug)]
pub struct ModelSurface {
    table: Arc<VarTable>,
    ws: WeightSystem,
    f: Poly,
    trunc: i64,
    w: VarId,
    u: VarId,
}

impl ModelSurface {
    /// Validates realness, absence of `u`/`w` in `F`, and the weight floor.
    pub fn new(ws: WeightSystem, f: Poly, trunc: i64) -> Result<Self> {
        let table = ws.table().clone();
        let w = table.var("w")?;
        let u = table.var("u")?;
        if !f.is_conj_fixed() {
            return Err(Error::BadSurface("F is not conjugation-fixed".into()));
        }
        if f.max_degree_in(w) > 0 || f.max_degree_in(table.conj_var(w)) > 0 || f.max_degree_in(u) > 0
        {
            return Err(Error::BadSurface("F must not depend on w or u".into()));
        }
        if let Some(&min) = weights_present(&f, &ws).first() {
            if min < 2 {
                return Err(Error::BadSurface("F has terms of weight below 2".into()));
            }
        }
        Ok(ModelSurface {
            table,
            ws,
            f,
            trunc,
            w,
            u,
        })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.ws
    }

    pub fn defining(&self) -> &Poly {
        &self.f
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn w_var(&self) -> VarId {
        self.w
    }

    pub fn u_var(&self) -> VarId {
        self.u
    }

    /// Diagnostics on output weights above `trunc - 2` are unreliable.
    pub fn reliable_weight(&self) -> i64 {
        self.trunc - 2
    }

    /// True when some term of `F` is pure holomorphic or pure
    /// anti-holomorphic in the non-`w` variables.
    pub fn has_pluriharmonic_terms(&self) -> bool {
        self.f.terms().any(|(m, _)| {
            let (h, a) = self.f.holo_anti_bidegree(m);
            (h == 0) != (a == 0) || (h == 0 && a == 0)
        })
    }
}

// ---- Parameter bundles ----

/// Free coefficients of the sixth-order three-nondegenerate normal form.
#[derive(Clone, Debug, Default)]
pub struct J6Params {
    pub r: [GaussRat; 4],
    pub s: [GaussRat; 8],
}

impl J6Params {
    pub fn zero() -> Self {
        J6Params {
            r: Default::default(),
            s: Default::default(),
        }
    }
}

/// Normal-form parameters for the nine two-nondegenerate pair classes.
///
/// `k` applies to classes 1..6, `m` to classes 1, 4 (real), 7 (non-real) and
/// 8 (real nonzero); `r` holds the coefficients of `R(z,z) = r1 z1^2 +
/// r2 z1 z2 + r3 z2^2`.
#[derive(Clone, Debug)]
pub struct TwoNondegParams {
    pub pair_id: u8,
    pub k: BigRational,
    pub m: GaussRat,
    pub r: [GaussRat; 3],
}

impl TwoNondegParams {
    pub fn new(pair_id: u8, k: BigRational, m: GaussRat, r: [GaussRat; 3]) -> Result<Self> {
        let p = TwoNondegParams { pair_id, k, m, r };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let kpos = self.k.is_positive();
        match self.pair_id {
            1 | 4 => {
                if !kpos || !self.m.is_real() || !self.m.re.is_positive() {
                    return Err(Error::InvalidClass("need k, m > 0".into()));
                }
                if self.m.re == self.k {
                    return Err(Error::InvalidClass("need k != m".into()));
                }
            }
            2 | 3 | 5 | 6 => {
                if !kpos {
                    return Err(Error::InvalidClass("need k > 0".into()));
                }
            }
            7 => {
                if self.m.is_real() {
                    return Err(Error::InvalidClass("need m not real".into()));
                }
            }
            8 => {
                if !self.m.is_real() || self.m.re.is_zero() {
                    return Err(Error::InvalidClass("need m real nonzero".into()));
                }
            }
            9 => {}
            _ => return Err(Error::InvalidClass("pair id must be 1..9".into())),
        }
        Ok(())
    }

    /// Hermitian-form matrix `H` with `<z, z̄> = sum H[i][j] z_i z̄_j`.
    pub fn h_matrix(&self) -> [[GaussRat; 2]; 2] {
        let one = GaussRat::one();
        let zero = GaussRat::zero();
        match self.pair_id {
            1..=3 => [[one.clone(), zero.clone()], [zero, one]],
            4..=6 => [[one.clone(), zero.clone()], [zero, -one]],
            _ => [[zero.clone(), one.clone()], [one, zero]],
        }
    }

    /// Symmetric matrix of `K(z,z)`: `K = [[k, l], [l, m]]` acting as
    /// `K(a,b) = k a1 b1 + l (a1 b2 + a2 b1) + m a2 b2`.
    pub fn k_matrix(&self) -> [[GaussRat; 2]; 2] {
        let zero = GaussRat::zero();
        let kq = GaussRat::new(self.k.clone(), BigRational::zero());
        match self.pair_id {
            1 | 4 => [[kq, zero.clone()], [zero, self.m.clone()]],
            2 | 5 => [[kq.clone(), zero.clone()], [zero, kq]],
            3 | 6 => [[kq, zero.clone()], [zero.clone(), zero]],
            7 | 8 => [[GaussRat::one(), zero.clone()], [zero, self.m.clone()]],
            _ => [[GaussRat::one(), zero.clone()], [zero.clone(), zero]],
        }
    }
}

// ---- Fixture constructors ----

/// `v = sum eps_j |z_j|^2` in `C^{n+1}`.
pub fn quadric(n: usize, signature: &[i64]) -> Result<ModelSurface> {
    if n < 1 || signature.len() != n || signature.iter().any(|e| e.abs() != 1) {
        return Err(Error::BadSurface("bad quadric signature".into()));
    }
    let (t, ws) = preset_quadric(n);
    let mut f = Poly::zero(&t);
    for (j, eps) in signature.iter().enumerate() {
        let z = Poly::var_named(&t, &format!("z{}", j + 1))?;
        let zb = Poly::var_named(&t, &crate::algebra::conj_name(&format!("z{}", j + 1)))?;
        f = f.add(&z.mul(&zb)?.scale(&GaussRat::from_int(*eps)))?;
    }
    ModelSurface::new(ws, f, 2)
}

/// The three-nondegenerate sixth-order normal form
/// `v = |z|^2 + F3 + F4 + F5 + F6` on `(z, ζ, η, w)`.
pub fn three_nondeg_j6(p: &J6Params) -> Result<ModelSurface> {
    let (t, ws) = preset_threefold();
    let b = SurfBuilder::new(&t);
    let [r1, r2, r3, r4] = &p.r;
    let [s1, s2, s3, s4, s5, s6, s7, s8] = &p.s;

    // F2 = |z|^2
    let f2 = b.m(&[("z", 1), ("z̄", 1)], GaussRat::one());
    // F3 = 2Re(z^2 ζ̄)
    let f3 = b.m(&[("z", 2), ("ζ̄", 1)], GaussRat::one()).re2();
    // F4 = 2Re(z^3 η̄) + 4 |z|^2 |ζ|^2
    let f4 = b
        .m(&[("z", 3), ("η̄", 1)], GaussRat::one())
        .re2()
        .add(&b.m(&[("z", 1), ("z̄", 1), ("ζ", 1), ("ζ̄", 1)], GaussRat::from_int(4)))?;
    // F5 = 2Re(r1 z̄^4 ζ + r2 z̄^4 η + r3 z ζ̄^2 η̄^2 + r4 z η̄^4
    //          + 4 z^2 ζ ζ̄^2 + 6 z^2 z̄ ζ η̄)
    let f5 = b
        .sum(&[
            b.m(&[("z̄", 4), ("ζ", 1)], r1.clone()),
            b.m(&[("z̄", 4), ("η", 1)], r2.clone()),
            b.m(&[("z", 1), ("ζ̄", 2), ("η̄", 2)], r3.clone()),
            b.m(&[("z", 1), ("η̄", 4)], r4.clone()),
            b.m(&[("z", 2), ("ζ", 1), ("ζ̄", 2)], GaussRat::from_int(4)),
            b.m(&[("z", 2), ("z̄", 1), ("ζ", 1), ("η̄", 1)], GaussRat::from_int(6)),
        ])?
        .re2();
    // F6 = 2Re(8 r̄1 z^3 z̄ ζ ζ̄ + 8 r̄2 z^3 z̄ ζ η̄ + 2 r3 z η^2 ζ̄ ζ^2
    //          + 2 r4 z η^4 ζ̄ + s1 z z̄^4 ζ + s2 z̄^5 ζ + s3 z z̄^4 η + s4 z̄^5 η
    //          + s5 z̄^4 ζ^2 + s6 z̄^4 ζ η + s7 z̄^4 η^2 + s8 z̄ η^5
    //          + 12 z̄^3 ζ ζ̄ η + 12 z z̄^2 ζ^2 η̄)
    //      + 16 |z|^2 |ζ|^4 + 9 |z|^4 |η|^2
    let f6 = b
        .sum(&[
            b.m(&[("z", 3), ("z̄", 1), ("ζ", 1), ("ζ̄", 1)], r1.conj() * GaussRat::from_int(8)),
            b.m(&[("z", 3), ("z̄", 1), ("ζ", 1), ("η̄", 1)], r2.conj() * GaussRat::from_int(8)),
            b.m(&[("z", 1), ("η", 2), ("ζ̄", 1), ("ζ", 2)], r3 * &GaussRat::from_int(2)),
            b.m(&[("z", 1), ("η", 4), ("ζ̄", 1)], r4 * &GaussRat::from_int(2)),
            b.m(&[("z", 1), ("z̄", 4), ("ζ", 1)], s1.clone()),
            b.m(&[("z̄", 5), ("ζ", 1)], s2.clone()),
            b.m(&[("z", 1), ("z̄", 4), ("η", 1)], s3.clone()),
            b.m(&[("z̄", 5), ("η", 1)], s4.clone()),
            b.m(&[("z̄", 4), ("ζ", 2)], s5.clone()),
            b.m(&[("z̄", 4), ("ζ", 1), ("η", 1)], s6.clone()),
            b.m(&[("z̄", 4), ("η", 2)], s7.clone()),
            b.m(&[("z̄", 1), ("η", 5)], s8.clone()),
            b.m(&[("z̄", 3), ("ζ", 1), ("ζ̄", 1), ("η", 1)], GaussRat::from_int(12)),
            b.m(&[("z", 1), ("z̄", 2), ("ζ", 2), ("η̄", 1)], GaussRat::from_int(12)),
        ])?
        .re2()
        .add(&b.m(
            &[("z", 1), ("z̄", 1), ("ζ", 2), ("ζ̄", 2)],
            GaussRat::from_int(16),
        ))?
        .add(&b.m(
            &[("z", 2), ("z̄", 2), ("η", 1), ("η̄", 1)],
            GaussRat::from_int(9),
        ))?;

    let f = f2.add(&f3)?.add(&f4)?.add(&f5)?.add(&f6)?;
    ModelSurface::new(ws, f, 6)
}

/// `v = <z,z̄> + 2Re(K ζ̄) + 2Re(R ζ̄^2) + S |ζ|^2` on `(z1, z2, ζ, w)` with
/// the degeneracy-forced form `S` of the given pair class.
pub fn two_nondeg(p: &TwoNondegParams) -> Result<ModelSurface> {
    p.check()?;
    let (t, ws) = preset_twofold();
    let b = SurfBuilder::new(&t);
    let h = p.h_matrix();
    let km = p.k_matrix();

    let mut f = Poly::zero(&t);
    // <z, z̄>
    for i in 0..2 {
        for j in 0..2 {
            if h[i][j].is_zero() {
                continue;
            }
            f = f.add(&b.m(
                &[(Z[i], 1), (ZB[j], 1)],
                h[i][j].clone(),
            ))?;
        }
    }
    // 2Re(K(z,z) ζ̄)
    let kpoly = quadratic_form(&b, &km)?;
    f = f.add(&kpoly.mul(&b.v("ζ̄"))?.re2())?;
    // 2Re(R(z,z) ζ̄^2)
    let rpoly = b.sum(&[
        b.m(&[("z1", 2)], p.r[0].clone()),
        b.m(&[("z1", 1), ("z2", 1)], p.r[1].clone()),
        b.m(&[("z2", 2)], p.r[2].clone()),
    ])?;
    f = f.add(&rpoly.mul(&b.m(&[("ζ̄", 2)], GaussRat::one()))?.re2())?;
    // S(z, z̄) |ζ|^2
    let s = s_form(&b, p)?;
    f = f.add(&s.mul(&b.m(&[("ζ", 1), ("ζ̄", 1)], GaussRat::one()))?)?;

    ModelSurface::new(ws, f, 4)
}

const Z: [&str; 2] = ["z1", "z2"];
const ZB: [&str; 2] = ["z\u{0304}1", "z\u{0304}2"];

fn quadratic_form(b: &SurfBuilder, k: &[[GaussRat; 2]; 2]) -> Result<Poly> {
    b.sum(&[
        b.m(&[("z1", 2)], k[0][0].clone()),
        b.m(&[("z1", 1), ("z2", 1)], &k[0][1] + &k[1][0]),
        b.m(&[("z2", 2)], k[1][1].clone()),
    ])
}

/// The degeneracy-forced coefficient of `|ζ|^2` for each pair class.
fn s_form(b: &SurfBuilder, p: &TwoNondegParams) -> Result<Poly> {
    let k2 = GaussRat::new(&p.k * &p.k, BigRational::zero()) * GaussRat::from_int(4);
    let m2 = |sign: i64| {
        let mm = &p.m.re * &p.m.re;
        GaussRat::new(mm, BigRational::zero()) * GaussRat::from_int(4 * sign)
    };
    let z11 = |c: GaussRat| b.m(&[("z1", 1), ("z̄1", 1)], c);
    let z22 = |c: GaussRat| b.m(&[("z2", 1), ("z̄2", 1)], c);
    match p.pair_id {
        1 => b.sum(&[z11(k2), z22(m2(1))]),
        2 => b.sum(&[z11(k2.clone()), z22(k2)]),
        3 | 6 => Ok(z11(k2)),
        4 => b.sum(&[z11(k2), z22(m2(-1))]),
        5 => b.sum(&[z11(k2.clone()), z22(-k2)]),
        7 => b.sum(&[
            b.m(&[("z1", 1), ("z̄2", 1)], p.m.conj() * GaussRat::from_int(4)),
            b.m(&[("z2", 1), ("z̄1", 1)], &p.m * &GaussRat::from_int(4)),
        ]),
        8 => b.sum(&[
            b.m(&[("z1", 1), ("z̄2", 1)], &p.m * &GaussRat::from_int(4)),
            b.m(&[("z2", 1), ("z̄1", 1)], &p.m * &GaussRat::from_int(4)),
        ]),
        9 => Ok(Poly::zero(&b.table)),
        _ => Err(Error::InvalidClass("pair id must be 1..9".into())),
    }
}

/// The weighted cubic model `v = 2Re(z1 ζ̄ + z2 ζ̄^2)` under the grading
/// `[z1]=2, [z2]=[ζ]=1, [w]=3`.
pub fn cubic_q() -> Result<ModelSurface> {
    let (t, ws) = preset_cubic();
    let b = SurfBuilder::new(&t);
    let f = b
        .m(&[("z1", 1), ("ζ̄", 1)], GaussRat::one())
        .add(&b.m(&[("z2", 1), ("ζ̄", 2)], GaussRat::one()))?
        .re2();
    ModelSurface::new(ws, f, 3)
}

// ---- Diagnostics ----

/// The three second-order minors of the complex Hessian that must vanish on
/// a rank-one Levi profile; outputs are truncated to the reliable window.
pub fn levi_minors(
    s: &ModelSurface,
    zvar: &str,
    zetavar: &str,
    etavar: &str,
) -> Result<(Poly, Poly, Poly)> {
    let t = s.table();
    let z = t.var(zvar)?;
    let zeta = t.var(zetavar)?;
    let eta = t.var(etavar)?;
    let zb = t.conj_var(z);
    let zetab = t.conj_var(zeta);
    let etab = t.conj_var(eta);
    let f = s.defining();
    let d = |a: VarId, bb: VarId| f.diff(a).diff(bb);

    let d1 = d(z, zb)
        .mul(&d(zeta, zetab))?
        .sub(&d(z, zetab).mul(&d(zeta, zb))?)?;
    let d2 = d(z, zb)
        .mul(&d(zeta, etab))?
        .sub(&d(zeta, zb).mul(&d(z, etab))?)?;
    let d3 = d(z, zb)
        .mul(&d(eta, etab))?
        .sub(&d(z, etab).mul(&d(eta, zb))?)?;
    let bound = s.reliable_weight();
    Ok((
        d1.truncate_weight(s.weights(), bound),
        d2.truncate_weight(s.weights(), bound),
        d3.truncate_weight(s.weights(), bound),
    ))
}

/// Determinant of the full 3x3 complex Hessian in the three non-`w`
/// holomorphic variables (cofactor expansion, exact).
pub fn hessian3_det(s: &ModelSurface) -> Result<Poly> {
    let t = s.table();
    let vars: Vec<VarId> = t
        .holo_vars()
        .iter()
        .copied()
        .filter(|v| *v != s.w_var())
        .collect();
    if vars.len() != 3 {
        return Err(Error::BadSurface(
            "Hessian determinant needs exactly three non-w variables".into(),
        ));
    }
    let f = s.defining();
    let mut m = Vec::new();
    for i in 0..3 {
        let mut row = Vec::new();
        for j in 0..3 {
            row.push(f.diff(vars[i]).diff(t.conj_var(vars[j])));
        }
        m.push(row);
    }
    let det2 = |a: &Poly, b: &Poly, c: &Poly, d: &Poly| -> Result<Poly> {
        a.mul(d)?.sub(&b.mul(c)?)
    };
    let c0 = det2(&m[1][1], &m[1][2], &m[2][1], &m[2][2])?;
    let c1 = det2(&m[1][0], &m[1][2], &m[2][0], &m[2][2])?;
    let c2 = det2(&m[1][0], &m[1][1], &m[2][0], &m[2][1])?;
    m[0][0]
        .mul(&c0)?
        .sub(&m[0][1].mul(&c1)?)?
        .add(&m[0][2].mul(&c2)?)
}

// ---- Generic-parameter samplers ----

/// Deterministic rational sampler with numerators and denominators bounded
/// by 97; used to witness the general-position hypotheses.
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let num = self.rng.gen_range(1..=97i64) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let den = self.rng.gen_range(1..=97i64);
        BigRational::new(num.into(), den.into())
    }

    pub fn gauss(&mut self) -> GaussRat {
        GaussRat::new(self.rational(), self.rational())
    }
}

pub fn sample_j6_params(seed: u64) -> J6Params {
    let mut s = RationalSampler::new(seed);
    J6Params {
        r: [s.gauss(), s.gauss(), s.gauss(), s.gauss()],
        s: [
            s.gauss(),
            s.gauss(),
            s.gauss(),
            s.gauss(),
            s.gauss(),
            s.gauss(),
            s.gauss(),
            s.gauss(),
        ],
    }
}

/// Generic parameters for a pair class: positive rational `k`, admissible
/// `m`, and a full generic `R`.
pub fn sample_two_nondeg_params(seed: u64, pair_id: u8) -> Result<TwoNondegParams> {
    let mut s = RationalSampler::new(seed);
    let kraw = s.rational();
    let k = if kraw.is_positive() { kraw } else { -kraw };
    let m = match pair_id {
        1 | 4 => {
            let mut mraw = s.rational();
            if !mraw.is_positive() {
                mraw = -mraw;
            }
            if mraw == k {
                mraw += BigRational::from_integer(1.into());
            }
            GaussRat::new(mraw, BigRational::zero())
        }
        7 => s.gauss(),
        8 => GaussRat::new(s.rational(), BigRational::zero()),
        _ => GaussRat::zero(),
    };
    let r = [s.gauss(), s.gauss(), s.gauss()];
    TwoNondegParams::new(pair_id, k, m, r)
}

// ---- Surface-spec JSON ----

#[derive(Serialize, Deserialize)]
struct SurfaceSpecJson {
    variables: VariablesJson,
    weights: BTreeMap<String, i64>,
    #[serde(rename = "F")]
    f: Vec<(String, String, BTreeMap<String, u16>)>,
    trunc: i64,
}

#[derive(Serialize, Deserialize)]
struct VariablesJson {
    holo: Vec<String>,
    anti: Vec<String>,
    real: Vec<String>,
}

/// Bit-exact export: rationals as `p/q` strings, terms in canonical order.
pub fn surface_to_json(s: &ModelSurface) -> String {
    let t = s.table();
    let mut weights = BTreeMap::new();
    for (name, w) in s.weights().named_weights() {
        weights.insert(name, w);
    }
    let mut terms = Vec::new();
    for (m, c) in s.defining().terms() {
        let mut exps = BTreeMap::new();
        for (v, e) in m.support() {
            exps.insert(t.name(v).to_string(), e);
        }
        terms.push((
            GaussRat::rational_string(&c.re),
            GaussRat::rational_string(&c.im),
            exps,
        ));
    }
    let spec = SurfaceSpecJson {
        variables: VariablesJson {
            holo: t.holo_names(),
            anti: t.anti_names(),
            real: t.real_names(),
        },
        weights,
        f: terms,
        trunc: s.trunc(),
    };
    serde_json::to_string_pretty(&spec).expect("serializable")
}

pub fn surface_from_json(text: &str) -> Result<ModelSurface> {
    let spec: SurfaceSpecJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let holo: Vec<&str> = spec.variables.holo.iter().map(|s| s.as_str()).collect();
    let real: Vec<&str> = spec.variables.real.iter().map(|s| s.as_str()).collect();
    let t = VarTable::new(&holo, &real);
    for (i, a) in spec.variables.anti.iter().enumerate() {
        if t.name(t.conj_var(t.var(&spec.variables.holo[i])?)) != a {
            return Err(Error::Parse(format!("conjugate name mismatch for `{a}`")));
        }
    }
    let named: Vec<(&str, i64)> = spec
        .weights
        .iter()
        .map(|(k, v)| (k.as_str(), *v))
        .collect();
    let ws = WeightSystem::new(&t, &named)?;
    let mut f = Poly::zero(&t);
    for (re, im, exps) in &spec.f {
        let mut mono = Monomial::unit(t.len());
        for (name, e) in exps {
            mono.0[t.var(name)?.0] = *e;
        }
        f.add_term(
            mono,
            GaussRat::new(GaussRat::parse_rational(re)?, GaussRat::parse_rational(im)?),
        );
    }
    ModelSurface::new(ws, f, spec.trunc)
}

// ---- Small construction helper ----

/// Monomial builder bound to one table; keeps fixture code readable.
pub struct SurfBuilder {
    pub table: Arc<VarTable>,
}

impl SurfBuilder {
    pub fn new(table: &Arc<VarTable>) -> Self {
        SurfBuilder {
            table: table.clone(),
        }
    }

    /// Monomial from `(name, exponent)` pairs with a coefficient.
    pub fn m(&self, vars: &[(&str, u16)], c: GaussRat) -> Poly {
        let mut mono = Monomial::unit(self.table.len());
        for (name, e) in vars {
            let v = self.table.var(name).expect("known variable");
            mono.0[v.0] += e;
        }
        Poly::monomial(&self.table, mono, c)
    }

    pub fn v(&self, name: &str) -> Poly {
        Poly::var_named(&self.table, name).expect("known variable")
    }

    pub fn sum(&self, parts: &[Poly]) -> Result<Poly> {
        let mut acc = Poly::zero(&self.table);
        for p in parts {
            acc = acc.add(p)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_basics() {
        let s = quadric(1, &[1]).unwrap();
        assert!(s.defining().is_conj_fixed());
        assert_eq!(s.trunc(), 2);
        let s3 = quadric(3, &[1, 1, -1]).unwrap();
        assert_eq!(s3.defining().num_terms(), 3);
        assert!(quadric(0, &[]).is_err());
    }

    #[test]
    fn j6_zero_param_matches_printed_form() {
        let s = three_nondeg_j6(&J6Params::zero()).unwrap();
        let f = s.defining();
        assert!(f.is_conj_fixed());
        assert!(!s.has_pluriharmonic_terms());
        // spot checks on printed coefficients
        assert_eq!(
            f.coeff_of(&[("z", 2), ("ζ̄", 1)]).unwrap(),
            GaussRat::one()
        );
        assert_eq!(
            f.coeff_of(&[("z", 1), ("z̄", 1), ("ζ", 1), ("ζ̄", 1)]).unwrap(),
            GaussRat::from_int(4)
        );
        assert_eq!(
            f.coeff_of(&[("z", 2), ("z̄", 2), ("η", 1), ("η̄", 1)]).unwrap(),
            GaussRat::from_int(9)
        );
        assert_eq!(
            f.coeff_of(&[("z", 1), ("z̄", 1), ("ζ", 2), ("ζ̄", 2)]).unwrap(),
            GaussRat::from_int(16)
        );
    }

    #[test]
    fn j6_r1_lands_on_zbar4_zeta() {
        let mut p = J6Params::zero();
        p.r[0] = GaussRat::from_ratio(3, 7);
        let s = three_nondeg_j6(&p).unwrap();
        assert_eq!(
            s.defining().coeff_of(&[("z̄", 4), ("ζ", 1)]).unwrap(),
            GaussRat::from_ratio(3, 7)
        );
        assert!(s.defining().is_conj_fixed());
    }

    #[test]
    fn two_nondeg_s_forms() {
        // pair 9 with R = r1 z1^2: S = 0
        let p = TwoNondegParams::new(
            9,
            BigRational::from_integer(1.into()),
            GaussRat::zero(),
            [GaussRat::from_ratio(1, 2), GaussRat::zero(), GaussRat::zero()],
        )
        .unwrap();
        let s = two_nondeg(&p).unwrap();
        let f = s.defining();
        assert_eq!(
            f.coeff_of(&[("z1", 1), ("z̄2", 1)]).unwrap(),
            GaussRat::one()
        );
        assert_eq!(
            f.coeff_of(&[("z1", 2), ("ζ̄", 1)]).unwrap(),
            GaussRat::one()
        );
        assert_eq!(
            f.coeff_of(&[("z1", 2), ("ζ̄", 2)]).unwrap(),
            GaussRat::from_ratio(1, 2)
        );
        assert!(f
            .coeff_of(&[("z1", 1), ("z̄1", 1), ("ζ", 1), ("ζ̄", 1)])
            .unwrap()
            .is_zero());

        // pair 1: S = 4(k^2|z1|^2 + m^2|z2|^2)
        let p1 = TwoNondegParams::new(
            1,
            BigRational::from_integer(1.into()),
            GaussRat::from_int(2),
            [GaussRat::zero(), GaussRat::zero(), GaussRat::zero()],
        )
        .unwrap();
        let s1 = two_nondeg(&p1).unwrap();
        assert_eq!(
            s1.defining()
                .coeff_of(&[("z1", 1), ("z̄1", 1), ("ζ", 1), ("ζ̄", 1)])
                .unwrap(),
            GaussRat::from_int(4)
        );
        assert_eq!(
            s1.defining()
                .coeff_of(&[("z2", 1), ("z̄2", 1), ("ζ", 1), ("ζ̄", 1)])
                .unwrap(),
            GaussRat::from_int(16)
        );

        // pair 7 with m = i: S = 4(m̄ z1 z̄2 + m z2 z̄1)
        let p7 = TwoNondegParams::new(
            7,
            BigRational::from_integer(1.into()),
            GaussRat::i(),
            [GaussRat::zero(), GaussRat::zero(), GaussRat::zero()],
        )
        .unwrap();
        let s7 = two_nondeg(&p7).unwrap();
        assert_eq!(
            s7.defining()
                .coeff_of(&[("z1", 1), ("z̄2", 1), ("ζ", 1), ("ζ̄", 1)])
                .unwrap(),
            GaussRat::i().conj() * GaussRat::from_int(4)
        );
        assert!(s7.defining().is_conj_fixed());
    }

    #[test]
    fn class_constraints_enforced() {
        // class 1 needs k != m
        assert!(TwoNondegParams::new(
            1,
            BigRational::from_integer(2.into()),
            GaussRat::from_int(2),
            [GaussRat::zero(), GaussRat::zero(), GaussRat::zero()]
        )
        .is_err());
        // class 7 needs m not real
        assert!(TwoNondegParams::new(
            7,
            BigRational::from_integer(1.into()),
            GaussRat::from_int(3),
            [GaussRat::zero(), GaussRat::zero(), GaussRat::zero()]
        )
        .is_err());
    }

    #[test]
    fn cubic_q_is_weight_homogeneous() {
        let s = cubic_q().unwrap();
        let f = s.defining();
        assert!(f.is_conj_fixed());
        assert_eq!(graded_component(f, s.weights(), 3), *f);
        assert_eq!(
            f.coeff_of(&[("z2", 1), ("ζ̄", 2)]).unwrap(),
            GaussRat::one()
        );
    }

    #[test]
    fn quadric_minors_vanish() {
        // single z, no ζ/η dependence: all three minors are zero
        let (t, ws) = preset_threefold();
        let b = SurfBuilder::new(&t);
        let f = b.m(&[("z", 1), ("z̄", 1)], GaussRat::one());
        let s = ModelSurface::new(ws, f, 6).unwrap();
        let (d1, d2, d3) = levi_minors(&s, "z", "ζ", "η").unwrap();
        assert!(d1.is_zero() && d2.is_zero() && d3.is_zero());
    }

    #[test]
    fn nondegenerate_direction_detected() {
        // F = |z|^2 + |ζ|^2 has delta_1 = 1
        let (t, ws) = preset_threefold();
        let b = SurfBuilder::new(&t);
        let f = b
            .m(&[("z", 1), ("z̄", 1)], GaussRat::one())
            .add(&b.m(&[("ζ", 1), ("ζ̄", 1)], GaussRat::one()))
            .unwrap();
        let s = ModelSurface::new(ws, f, 6).unwrap();
        let (d1, _, _) = levi_minors(&s, "z", "ζ", "η").unwrap();
        assert_eq!(d1, Poly::one(&t));
    }

    #[test]
    fn hessian_det_of_cubic_q_vanishes() {
        let s = cubic_q().unwrap();
        let det = hessian3_det(&s).unwrap();
        // oracle: cofactor expansion of [[0,0,1],[0,0,2ζ̄],[1,2ζ,0]] is zero
        assert!(det.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let s = cubic_q().unwrap();
        let js = surface_to_json(&s);
        let s2 = surface_from_json(&js).unwrap();
        assert_eq!(s.defining(), s2.defining());
        assert_eq!(s.trunc(), s2.trunc());
        assert_eq!(surface_to_json(&s2), js);
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = sample_j6_params(7919);
        let b2 = sample_j6_params(7919);
        assert_eq!(a.r[0], b2.r[0]);
        assert_eq!(a.s[7], b2.s[7]);
        let c = sample_j6_params(104729);
        assert_ne!(a.r[0], c.r[0]);
        assert!(!a.r[2].is_zero(), "generic r3 must be nonzero");
    }
}
