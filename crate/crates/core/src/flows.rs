//! Exact verification that closed-form families preserve their surfaces:
//! polynomial/rational maps are checked as identities after clearing
//! denominators, and one-parameter flows are checked coefficientwise as
//! formal series in the flow time.

use num::rational::BigRational;
use num::traits::Zero;
use std::sync::Arc;

use crate::algebra::{GaussRat, Poly, VarId, VarTable};
use crate::error::{Error, Result};
use crate::surfaces::{ModelSurface, SurfBuilder};
use crate::tangency::FieldJet;

/// A rational self-map: one `num/den` pair per holomorphic coordinate, in
/// table order. Denominators must be units at the origin.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub table: Arc<VarTable>,
    pub comps: Vec<(Poly, Poly)>,
}

impl RationalMap {
    pub fn new(table: &Arc<VarTable>, comps: Vec<(Poly, Poly)>) -> Result<Self> {
        assert_eq!(comps.len(), table.holo_vars().len());
        for (_, den) in &comps {
            if den.constant_term().is_zero() {
                return Err(Error::DenominatorVanishes);
            }
        }
        Ok(RationalMap {
            table: table.clone(),
            comps,
        })
    }

    pub fn polynomial(table: &Arc<VarTable>, comps: Vec<Poly>) -> Result<Self> {
        let one = Poly::one(table);
        RationalMap::new(table, comps.into_iter().map(|n| (n, one.clone())).collect())
    }

    /// `outer` composed after `self`: substitutes the components of `self`
    /// into each polynomial of `outer`.
    pub fn then(&self, outer: &RationalMap) -> Result<RationalMap> {
        let holo = self.table.holo_vars().to_vec();
        let assign: Vec<RatFn> = self
            .comps
            .iter()
            .map(|(n, d)| RatFn {
                num: n.clone(),
                den: d.clone(),
            })
            .collect();
        let mut comps = Vec::new();
        for (num, den) in &outer.comps {
            let n = eval_poly_rational(num, &holo, &assign)?;
            let d = eval_poly_rational(den, &holo, &assign)?;
            // n/d where both are rational functions
            let combined_num = n.num.mul(&d.den)?;
            let combined_den = n.den.mul(&d.num)?;
            comps.push((combined_num, combined_den));
        }
        RationalMap::new(&self.table, comps)
    }
}

/// Minimal rational-function layer: numerator/denominator pairs with lazy
/// normalization. Used only for flow verification.
#[derive(Clone, Debug)]
struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    fn constant(table: &Arc<VarTable>, c: GaussRat) -> Self {
        RatFn {
            num: Poly::constant(table, c),
            den: Poly::one(table),
        }
    }

    fn add(&self, other: &RatFn) -> Result<RatFn> {
        Ok(RatFn {
            num: self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?,
            den: self.den.mul(&other.den)?,
        })
    }

    fn mul(&self, other: &RatFn) -> Result<RatFn> {
        Ok(RatFn {
            num: self.num.mul(&other.num)?,
            den: self.den.mul(&other.den)?,
        })
    }

    fn scale(&self, c: &GaussRat) -> RatFn {
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    fn conj(&self) -> RatFn {
        RatFn {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    fn sub(&self, other: &RatFn) -> Result<RatFn> {
        self.add(&other.scale(&GaussRat::from_int(-1)))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Evaluate a polynomial at rational-function arguments for the variables in
/// `vars` (other variables stay fixed).
fn eval_poly_rational(p: &Poly, vars: &[VarId], assign: &[RatFn]) -> Result<RatFn> {
    let t = p.table();
    let mut acc = RatFn::constant(t, GaussRat::zero());
    for (m, c) in p.terms() {
        let mut term = RatFn::constant(t, c.clone());
        for (v, e) in m.support() {
            if let Some(pos) = vars.iter().position(|x| *x == v) {
                for _ in 0..e {
                    term = term.mul(&assign[pos])?;
                }
            } else {
                term = term.mul(&RatFn {
                    num: Poly::var_pow(t, v, e),
                    den: Poly::one(t),
                })?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Substitute the surface parameterization `w = u + iF` into the map,
/// form `Im W - F(Z, Z̄)` as one rational function, clear denominators, and
/// check that the numerator is the zero polynomial. Exact, no truncation.
pub fn verify_exact_automorphism(s: &ModelSurface, map: &RationalMap) -> Result<bool> {
    let t = s.table();
    let w = s.w_var();
    let u = s.u_var();
    let wpar = Poly::var(t, u).add(&s.defining().scale(&GaussRat::i()))?;
    let holo = t.holo_vars().to_vec();

    // Components with the source parameterization substituted.
    let mut images: Vec<RatFn> = Vec::new();
    for (num, den) in &map.comps {
        images.push(RatFn {
            num: num.substitute(w, &wpar, None)?,
            den: den.substitute(w, &wpar, None)?,
        });
    }

    let w_pos = holo.iter().position(|v| *v == w).expect("w is holomorphic");
    let big_w = &images[w_pos];
    // Im W = (W - conj W) * (-i/2)
    let im_w = big_w
        .sub(&big_w.conj())?
        .scale(&GaussRat::from_parts(0, 1, -1, 2));

    // F(Z, Z̄): assign every non-w holomorphic variable its image and every
    // anti variable the conjugate image.
    let mut vars = Vec::new();
    let mut assign = Vec::new();
    for (i, v) in holo.iter().enumerate() {
        if *v == w {
            continue;
        }
        vars.push(*v);
        assign.push(images[i].clone());
        vars.push(t.conj_var(*v));
        assign.push(images[i].conj());
    }
    let f_at = eval_poly_rational(s.defining(), &vars, &assign)?;

    Ok(im_w.sub(&f_at)?.is_zero())
}

// ---- The cubic model's translation group and printed flows ----

/// The `w`-value completing `(a, b, c)` and a real part `t` to a point of
/// the cubic model.
pub fn q_point_w(a: &GaussRat, b: &GaussRat, c: &GaussRat, t: &BigRational) -> GaussRat {
    // Im d = 2 Re(a c̄ + b c̄²)
    let v1 = a * &c.conj();
    let c2 = &c.conj() * &c.conj();
    let v2 = b * &c2;
    let im = (&v1.re + &v1.re) + (&v2.re + &v2.re);
    GaussRat::new(t.clone(), im)
}

/// The translation of the cubic model moving the origin to the point
/// `(a, b, c, d)`, `d = t + i 2Re(a c̄ + b c̄²)`:
///
/// ```text
///   z1 -> a + z1 - 2 c̄ z2,   z2 -> b + z2,   ζ -> c + ζ,
///   w  -> d + w + 2i( c̄ z1 - c̄² z2 + (ā + 2 b̄ c) ζ + b̄ ζ² )
/// ```
pub fn q_translation(
    s: &ModelSurface,
    a: &GaussRat,
    b: &GaussRat,
    c: &GaussRat,
    t: &BigRational,
) -> Result<RationalMap> {
    let tb = s.table();
    let bd = SurfBuilder::new(tb);
    let d = q_point_w(a, b, c, t);
    let two_i = GaussRat::from_parts(0, 1, 2, 1);
    let z1 = bd.v("z1");
    let z2 = bd.v("z2");
    let zeta = bd.v("ζ");
    let wv = bd.v("w");

    let m1 = Poly::constant(tb, a.clone())
        .add(&z1)?
        .add(&z2.scale(&(-(&c.conj() * &GaussRat::from_int(2)))))?;
    let m2 = Poly::constant(tb, b.clone()).add(&z2)?;
    let m3 = Poly::constant(tb, c.clone()).add(&zeta)?;
    let psi = z1
        .scale(&c.conj())
        .add(&z2.scale(&(-(&c.conj() * &c.conj()))))?
        .add(&zeta.scale(&(&a.conj() + &(&b.conj() * &(c * &GaussRat::from_int(2))))))?
        .add(&zeta.mul(&zeta)?.scale(&b.conj()))?;
    let m4 = Poly::constant(tb, d).add(&wv)?.add(&psi.scale(&two_i))?;

    RationalMap::polynomial(tb, vec![m1, m2, m3, m4])
}

/// `z1 -> z1 + i t ζ`, everything else fixed.
pub fn q_shear_z1(s: &ModelSurface, t: &BigRational) -> Result<RationalMap> {
    let tb = s.table();
    let bd = SurfBuilder::new(tb);
    let it = GaussRat::new(BigRational::zero(), t.clone());
    RationalMap::polynomial(
        tb,
        vec![
            bd.v("z1").add(&bd.v("ζ").scale(&it))?,
            bd.v("z2"),
            bd.v("ζ"),
            bd.v("w"),
        ],
    )
}

/// `z2 -> z2 + i t ζ²`, everything else fixed.
pub fn q_shear_z2(s: &ModelSurface, t: &BigRational) -> Result<RationalMap> {
    let tb = s.table();
    let bd = SurfBuilder::new(tb);
    let it = GaussRat::new(BigRational::zero(), t.clone());
    RationalMap::polynomial(
        tb,
        vec![
            bd.v("z1"),
            bd.v("z2").add(&bd.v("ζ").mul(&bd.v("ζ"))?.scale(&it))?,
            bd.v("ζ"),
            bd.v("w"),
        ],
    )
}

/// The weight-one flow of the cubic model at parameter value `t`:
///
/// ```text
///   z1 -> z1/(1 - i N̄ ζ t)²,   z2 -> (z2 - i N z1 t)/(1 - i N̄ ζ t)²,
///   ζ  -> ζ/(1 - i N̄ ζ t),     w  -> w/(1 - i N̄ ζ t)².
/// ```
pub fn q_g1_flow(s: &ModelSurface, n: &GaussRat, t: &BigRational) -> Result<RationalMap> {
    let tb = s.table();
    let bd = SurfBuilder::new(tb);
    let coef = -(&GaussRat::i() * &(&n.conj() * &GaussRat::new(t.clone(), BigRational::zero())));
    let den1 = Poly::one(tb).add(&bd.v("ζ").scale(&coef))?;
    let den2 = den1.mul(&den1)?;
    let z2num = bd.v("z2").add(
        &bd.v("z1")
            .scale(&-(&GaussRat::i() * &(n * &GaussRat::new(t.clone(), BigRational::zero())))),
    )?;
    RationalMap::new(
        tb,
        vec![
            (bd.v("z1"), den2.clone()),
            (z2num, den2.clone()),
            (bd.v("ζ"), den1),
            (bd.v("w"), den2),
        ],
    )
}

// ---- Formal flows ----

/// Table of the surface extended by the formal flow time `t`.
pub fn flow_table(s: &ModelSurface) -> Arc<VarTable> {
    let holo = s.table().holo_names();
    let mut real = s.table().real_names();
    real.push("t".to_string());
    let holo_refs: Vec<&str> = holo.iter().map(|x| x.as_str()).collect();
    let real_refs: Vec<&str> = real.iter().map(|x| x.as_str()).collect();
    VarTable::new(&holo_refs, &real_refs)
}

/// `exp(tX)` applied to the coordinate functions, truncated at `t^order`.
/// The field acts as the holomorphic derivation `X(p) = sum c_j dp/dX_j`.
pub fn formal_flow(s: &ModelSurface, field: &FieldJet, order: u32) -> Result<Vec<Poly>> {
    let ft = flow_table(s);
    let tvar = ft.var("t")?;
    let comps: Vec<(VarId, Poly)> = field
        .shape
        .components
        .iter()
        .zip(&field.comps)
        .map(|(c, p)| Ok((ft.var(s.table().name(c.target))?, p.map_table(&ft)?)))
        .collect::<Result<Vec<_>>>()?;
    let apply_x = |p: &Poly| -> Result<Poly> {
        let mut acc = Poly::zero(&ft);
        for (v, f) in &comps {
            acc = acc.add(&f.mul(&p.diff(*v))?)?;
        }
        Ok(acc)
    };

    let mut out = Vec::new();
    for v in s.table().holo_vars() {
        let coord = Poly::var(&ft, ft.var(s.table().name(*v))?);
        let mut total = coord.clone();
        let mut cur = coord;
        let mut factorial = BigRational::from_integer(1.into());
        for k in 1..=order {
            cur = apply_x(&cur)?;
            if cur.is_zero() {
                break;
            }
            factorial = factorial * BigRational::from_integer(k.into());
            let tk = Poly::var_pow(&ft, tvar, k as u16);
            let term = cur
                .mul(&tk)?
                .scale(&GaussRat::new(factorial.recip(), BigRational::zero()));
            total = total.add(&term)?;
        }
        out.push(total);
    }
    Ok(out)
}

/// `d/dt flow - X(flow) = 0 mod t^order`: the flow solves the field's ODE.
pub fn ode_consistency(
    s: &ModelSurface,
    field: &FieldJet,
    flow: &[Poly],
    order: u32,
) -> Result<bool> {
    let ft = flow[0].table().clone();
    let tvar = ft.var("t")?;
    let holo_ft: Vec<VarId> = s
        .table()
        .holo_vars()
        .iter()
        .map(|v| ft.var(s.table().name(*v)))
        .collect::<Result<Vec<_>>>()?;
    for (ci, comp) in field.shape.components.iter().enumerate() {
        let pos = s
            .table()
            .holo_vars()
            .iter()
            .position(|v| *v == comp.target)
            .expect("component targets a holomorphic coordinate");
        let lhs = flow[pos].diff(tvar);
        // field component evaluated at the flowed point
        let fp = field.comps[ci].map_table(&ft)?;
        let mut rhs = Poly::zero(&ft);
        for (m, c) in fp.terms() {
            let mut term = Poly::constant(&ft, c.clone());
            for (v, e) in m.support() {
                if let Some(p) = holo_ft.iter().position(|x| *x == v) {
                    for _ in 0..e {
                        term = term.mul(&flow[p])?;
                    }
                } else {
                    term = term.mul(&Poly::var_pow(&ft, v, e))?;
                }
            }
            rhs = rhs.add(&term)?;
        }
        let diff = lhs.sub(&rhs)?;
        if !diff.truncate_var_degree(tvar, (order - 1) as u16).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Surface preservation of a formal flow: `Im W(t) - F(Z(t), Z̄(t))` vanishes
/// mod `t^{order+1}` on the surface.
pub fn flow_preserves_surface(s: &ModelSurface, flow: &[Poly], order: u32) -> Result<bool> {
    let ft = flow[0].table().clone();
    let tvar = ft.var("t")?;
    let wname = s.table().name(s.w_var());
    let w_ft = ft.var(wname)?;
    let u_ft = ft.var(s.table().name(s.u_var()))?;
    let f_ft = s.defining().map_table(&ft)?;
    let wpar = Poly::var(&ft, u_ft).add(&f_ft.scale(&GaussRat::i()))?;

    let holo = s.table().holo_vars().to_vec();
    let w_pos = holo.iter().position(|v| *v == s.w_var()).unwrap();

    let mut images = Vec::new();
    for p in flow {
        images.push(p.substitute(w_ft, &wpar, None)?);
    }
    let big_w = &images[w_pos];
    let im_w = big_w
        .sub(&big_w.conj())?
        .scale(&GaussRat::from_parts(0, 1, -1, 2));

    let mut f_at = Poly::zero(&ft);
    for (m, c) in f_ft.terms() {
        let mut term = Poly::constant(&ft, c.clone());
        for (v, e) in m.support() {
            let p = if ft.is_anti(v) {
                let hv = ft.conj_var(v);
                let pos = holo
                    .iter()
                    .position(|x| ft.var(s.table().name(*x)).ok() == Some(hv))
                    .expect("holomorphic partner");
                images[pos].conj()
            } else {
                let pos = holo
                    .iter()
                    .position(|x| ft.var(s.table().name(*x)).ok() == Some(v))
                    .expect("holomorphic coordinate");
                images[pos].clone()
            };
            for _ in 0..e {
                term = term.mul(&p)?;
            }
        }
        f_at = f_at.add(&term)?;
    }
    let e = im_w.sub(&f_at)?;
    Ok(e.truncate_var_degree(tvar, order as u16).is_zero())
}

/// Check a printed closed-form flow against its field: the field must be
/// tangent (exact residual zero) and the flow must solve the field's ODE to
/// the given order.
pub fn exponentiate_check(
    s: &ModelSurface,
    field: &FieldJet,
    flow: &[Poly],
    order: u32,
) -> Result<bool> {
    let eq = crate::tangency::tangency_residual(s, field)?;
    if !eq.expr.is_zero() {
        return Err(Error::BadSurface("field is not tangent to the surface".into()));
    }
    Ok(ode_consistency(s, field, flow, order)?
        && flow_preserves_surface(s, flow, order.saturating_sub(1))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::cubic_q;
    use crate::tangency::shape_cubic;

    fn q() -> ModelSurface {
        cubic_q().unwrap()
    }

    #[test]
    fn identity_is_an_automorphism() {
        let s = q();
        let tb = s.table();
        let comps = tb.holo_vars().iter().map(|v| Poly::var(tb, *v)).collect();
        let m = RationalMap::polynomial(tb, comps).unwrap();
        assert!(verify_exact_automorphism(&s, &m).unwrap());
    }

    #[test]
    fn translations_verify_exactly() {
        let s = q();
        // (a,b,c,d) = (1,0,0,0) completed to a point of the surface
        let m = q_translation(
            &s,
            &GaussRat::from_int(1),
            &GaussRat::zero(),
            &GaussRat::zero(),
            &BigRational::zero(),
        )
        .unwrap();
        assert!(verify_exact_automorphism(&s, &m).unwrap());
        // a generic rational point
        let m = q_translation(
            &s,
            &GaussRat::from_parts(1, 2, -2, 3),
            &GaussRat::from_parts(3, 5, 1, 7),
            &GaussRat::from_parts(-1, 3, 2, 9),
            &BigRational::new(4.into(), 11.into()),
        )
        .unwrap();
        assert!(verify_exact_automorphism(&s, &m).unwrap());
    }

    #[test]
    fn shears_verify_exactly() {
        let s = q();
        let t = BigRational::new(2.into(), 7.into());
        assert!(verify_exact_automorphism(&s, &q_shear_z1(&s, &t).unwrap()).unwrap());
        assert!(verify_exact_automorphism(&s, &q_shear_z2(&s, &t).unwrap()).unwrap());
    }

    #[test]
    fn g1_flow_verifies_exactly() {
        let s = q();
        let m = q_g1_flow(&s, &GaussRat::one(), &BigRational::new(1.into(), 3.into())).unwrap();
        assert!(verify_exact_automorphism(&s, &m).unwrap());
        let m = q_g1_flow(
            &s,
            &GaussRat::from_parts(2, 3, -1, 2),
            &BigRational::new(-3.into(), 5.into()),
        )
        .unwrap();
        assert!(verify_exact_automorphism(&s, &m).unwrap());
    }

    #[test]
    fn composition_of_translations_verifies() {
        let s = q();
        let m1 = q_translation(
            &s,
            &GaussRat::from_int(1),
            &GaussRat::from_parts(0, 1, 1, 2),
            &GaussRat::from_ratio(2, 3),
            &BigRational::zero(),
        )
        .unwrap();
        let m2 = q_translation(
            &s,
            &GaussRat::from_parts(0, 1, -1, 1),
            &GaussRat::from_int(2),
            &GaussRat::from_parts(1, 5, 1, 5),
            &BigRational::new(1.into(), 2.into()),
        )
        .unwrap();
        let comp = m1.then(&m2).unwrap();
        assert!(verify_exact_automorphism(&s, &comp).unwrap());
    }

    #[test]
    fn zero_field_exponentiates_to_identity() {
        let s = q();
        let shape = shape_cubic(&s).unwrap();
        let field = FieldJet::zero(&shape);
        let flow = formal_flow(&s, &field, 4).unwrap();
        assert!(exponentiate_check(&s, &field, &flow, 4).unwrap());
    }

    #[test]
    fn grading_field_flow() {
        // X0 = (2 z1, z2, ζ, 3 w): the diagonal scaling flow
        let s = q();
        let shape = shape_cubic(&s).unwrap();
        let tb = s.table();
        let field = FieldJet::new(
            &shape,
            vec![
                Poly::var_named(tb, "z1").unwrap().scale(&GaussRat::from_int(2)),
                Poly::var_named(tb, "z2").unwrap(),
                Poly::var_named(tb, "ζ").unwrap(),
                Poly::var_named(tb, "w").unwrap().scale(&GaussRat::from_int(3)),
            ],
        )
        .unwrap();
        let flow = formal_flow(&s, &field, 4).unwrap();
        assert!(exponentiate_check(&s, &field, &flow, 4).unwrap());
    }

    #[test]
    fn translation_field_flow() {
        // g_{-2} field (a, 0, 0, 2 i ā ζ) and its affine flow
        let s = q();
        let shape = shape_cubic(&s).unwrap();
        let tb = s.table();
        let a = GaussRat::from_parts(1, 2, 1, 3);
        let field = FieldJet::new(
            &shape,
            vec![
                Poly::constant(tb, a.clone()),
                Poly::zero(tb),
                Poly::zero(tb),
                Poly::var_named(tb, "ζ")
                    .unwrap()
                    .scale(&(&GaussRat::from_parts(0, 1, 2, 1) * &a.conj())),
            ],
        )
        .unwrap();
        let flow = formal_flow(&s, &field, 3).unwrap();
        assert!(exponentiate_check(&s, &field, &flow, 3).unwrap());
    }
}
