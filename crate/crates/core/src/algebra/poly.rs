//! Sparse multivariate polynomials over the Gaussian rationals with a
//! conjugation involution.
//!
//! Representation: dense-exponent monomial keys in the canonical variable
//! order of the table, stored in a `BTreeMap` so iteration order (and hence
//! every downstream matrix assembly) is deterministic. No zero coefficients
//! are ever stored.

use num::rational::BigRational;
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::gauss::GaussRat;
use super::vars::{same_table, VarId, VarTable};
use crate::error::{Error, Result};
use crate::grading::WeightSystem;

/// Dense exponent vector aligned with the variable table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, v: VarId, k: u16) -> Self {
        let mut e = vec![0; n];
        e[v.0] = k;
        Monomial(e)
    }

    pub fn exp(&self, v: VarId) -> u16 {
        self.0[v.0]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Exponent map with the zero entries dropped.
    pub fn support(&self) -> impl Iterator<Item = (VarId, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (VarId(i), e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    // ---- Constructors ----

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: GaussRat) -> Self {
        let mut p = Poly::zero(table);
        p.add_term(Monomial::unit(table.len()), c);
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Poly::constant(table, GaussRat::one())
    }

    pub fn var(table: &Arc<VarTable>, v: VarId) -> Self {
        Poly::var_pow(table, v, 1)
    }

    pub fn var_pow(table: &Arc<VarTable>, v: VarId, k: u16) -> Self {
        let mut p = Poly::zero(table);
        p.add_term(Monomial::var(table.len(), v, k), GaussRat::one());
        p
    }

    pub fn var_named(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        Ok(Poly::var(table, table.var(name)?))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: GaussRat) -> Self {
        let mut p = Poly::zero(table);
        p.add_term(m, c);
        p
    }

    // ---- Inspection ----

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Coefficient of the monomial given as `(name, exp)` pairs.
    pub fn coeff_of(&self, vars: &[(&str, u16)]) -> Result<GaussRat> {
        let mut m = Monomial::unit(self.table.len());
        for (name, e) in vars {
            let v = self.table.var(name)?;
            m.0[v.0] += e;
        }
        Ok(self.coeff(&m))
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(&Monomial::unit(self.table.len()))
    }

    pub fn max_degree_in(&self, v: VarId) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// `(holomorphic degree, anti degree)` of a monomial, ignoring real vars.
    pub fn holo_anti_bidegree(&self, m: &Monomial) -> (u32, u32) {
        let mut h = 0u32;
        let mut a = 0u32;
        for (v, e) in m.support() {
            if self.table.is_holo(v) {
                h += e as u32;
            } else if self.table.is_anti(v) {
                a += e as u32;
            }
        }
        (h, a)
    }

    // ---- Term-level mutation (keeps canonical form) ----

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    // ---- Ring operations ----

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        let mut out = Poly::zero(&self.table);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.mul_trunc(other, None)
    }

    /// Product, dropping every monomial whose weight exceeds `bound` when a
    /// truncation is supplied. Truncation inside the product keeps
    /// intermediate swell bounded during substitution.
    pub fn mul_trunc(&self, other: &Poly, trunc: Option<(&WeightSystem, i64)>) -> Result<Poly> {
        self.check_table(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Poly::zero(&self.table);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                if let Some((ws, bound)) = trunc {
                    if ws.weight_of(&m) > bound {
                        continue;
                    }
                }
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow_trunc(&self, k: u16, trunc: Option<(&WeightSystem, i64)>) -> Result<Poly> {
        let mut out = Poly::one(&self.table);
        for _ in 0..k {
            out = out.mul_trunc(self, trunc)?;
        }
        Ok(out)
    }

    // ---- Involution ----

    /// Swap every holomorphic variable with its paired conjugate and
    /// conjugate every coefficient; real variables are fixed.
    pub fn conj(&self) -> Poly {
        let n = self.table.len();
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; n];
            for (v, k) in m.support() {
                e[self.table.conj_var(v).0] = k;
            }
            out.add_term(Monomial(e), c.conj());
        }
        out
    }

    /// `p + conj(p)`; always fixed by the involution.
    pub fn re2(&self) -> Poly {
        self.add(&self.conj()).expect("same table")
    }

    pub fn is_conj_fixed(&self) -> bool {
        *self == self.conj()
    }

    // ---- Calculus ----

    pub fn diff(&self, v: VarId) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v.0] -= 1;
            out.add_term(m2, c * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// Replace `v` by `q`, expanding powers exactly; with a truncation, every
    /// monomial of weight above the bound is dropped (also inside the power
    /// expansion, which keeps the computation finite for series-style use).
    pub fn substitute(
        &self,
        v: VarId,
        q: &Poly,
        trunc: Option<(&WeightSystem, i64)>,
    ) -> Result<Poly> {
        self.check_table(q)?;
        if q.max_degree_in(v) > 0 {
            return Err(Error::SelfReference(self.table.name(v).to_string()));
        }
        let max_pow = self.max_degree_in(v);
        // q^0 .. q^max_pow, truncated as we go.
        let mut powers: Vec<Poly> = Vec::with_capacity(max_pow as usize + 1);
        powers.push(Poly::one(&self.table));
        for k in 1..=max_pow {
            let next = powers[(k - 1) as usize].mul_trunc(q, trunc)?;
            powers.push(next);
        }
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = m.clone();
            rest.0[v.0] = 0;
            if let Some((ws, bound)) = trunc {
                // Cheap reject: the surviving part of the monomial already
                // carries some weight.
                if ws.weight_of(&rest) > bound {
                    continue;
                }
            }
            let base = Poly::monomial(&self.table, rest, c.clone());
            let prod = base.mul_trunc(&powers[e as usize], trunc)?;
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Exact value at a point assigning every variable that occurs.
    ///
    /// With `real_locus` set, conjugate pairs must be assigned conjugate
    /// values and real variables real values.
    pub fn eval(&self, point: &BTreeMap<VarId, GaussRat>, real_locus: bool) -> Result<GaussRat> {
        if real_locus {
            for (&v, val) in point {
                if self.table.is_holo(v) {
                    let vb = self.table.conj_var(v);
                    if let Some(other) = point.get(&vb) {
                        if *other != val.conj() {
                            return Err(Error::ConjugationInconsistency(
                                self.table.name(vb).to_string(),
                            ));
                        }
                    }
                } else if self.table.is_real(v) && !val.is_real() {
                    return Err(Error::ConjugationInconsistency(
                        self.table.name(v).to_string(),
                    ));
                }
            }
        }
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.support() {
                let val = point
                    .get(&v)
                    .ok_or_else(|| Error::MissingAssignment(self.table.name(v).to_string()))?;
                for _ in 0..e {
                    term *= val;
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    // ---- Weight helpers ----

    pub fn truncate_weight(&self, ws: &WeightSystem, bound: i64) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            if ws.weight_of(m) <= bound {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn truncate_var_degree(&self, v: VarId, maxdeg: u16) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            if m.exp(v) <= maxdeg {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Transfer to another table, matching variables by name.
    pub fn map_table(&self, target: &Arc<VarTable>) -> Result<Poly> {
        let mut map = Vec::with_capacity(self.table.len());
        for v in self.table.iter() {
            map.push(target.var(self.table.name(v))?);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (v, k) in m.support() {
                e[map[v.0].0] = k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    fn check_table(&self, other: &Poly) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// Canonical text form: `(re,im)*v^k*...` terms in sorted monomial order.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut s = c.to_string();
            for (v, e) in m.support() {
                s.push('*');
                s.push_str(self.table.name(v));
                if e > 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// `i` as a polynomial constant.
pub fn imag_unit(table: &Arc<VarTable>) -> Poly {
    Poly::constant(table, GaussRat::i())
}

/// Rational constant helper.
pub fn rat_const(table: &Arc<VarTable>, num: i64, den: i64) -> Poly {
    Poly::constant(table, GaussRat::from_ratio(num, den))
}

/// `re` part helper for coefficients of conj-fixed polys.
pub fn big_rational_is_zero(r: &BigRational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars::VarTable;

    fn table() -> Arc<VarTable> {
        VarTable::new(&["z1", "z2", "w"], &["u"])
    }

    #[test]
    fn add_cancellation_and_identity() {
        let t = table();
        let z1 = Poly::var_named(&t, "z1").unwrap();
        let u = Poly::var_named(&t, "u").unwrap();
        // (z1 + u) + (-z1) = u
        let s = z1.add(&u).unwrap().add(&z1.neg()).unwrap();
        assert_eq!(s, u);
        // p + 0 = p
        let p = z1.mul(&u).unwrap();
        assert_eq!(p.add(&Poly::zero(&t)).unwrap(), p);
        // (i z1) + (i z1) = 2i z1
        let iz = z1.scale(&GaussRat::i());
        let d = iz.add(&iz).unwrap();
        assert_eq!(d, z1.scale(&GaussRat::from_parts(0, 1, 2, 1)));
    }

    #[test]
    fn mul_basics() {
        let t = table();
        let z1 = Poly::var_named(&t, "z1").unwrap();
        let z1b = Poly::var_named(&t, "z̄1").unwrap();
        let p = z1.mul(&z1b).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(
            p.coeff_of(&[("z1", 1), ("z̄1", 1)]).unwrap(),
            GaussRat::one()
        );
        // p * 1 = p
        assert_eq!(p.mul(&Poly::one(&t)).unwrap(), p);
        // (z1 + z̄1)^2 = z1^2 + 2 z1 z̄1 + z̄1^2
        let s = z1.add(&z1b).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeff_of(&[("z1", 2)]).unwrap(), GaussRat::one());
        assert_eq!(
            sq.coeff_of(&[("z1", 1), ("z̄1", 1)]).unwrap(),
            GaussRat::from_int(2)
        );
        assert_eq!(sq.coeff_of(&[("z̄1", 2)]).unwrap(), GaussRat::one());
    }

    #[test]
    fn conj_examples() {
        let t = table();
        let z1 = Poly::var_named(&t, "z1").unwrap();
        let z1b = Poly::var_named(&t, "z̄1").unwrap();
        let u = Poly::var_named(&t, "u").unwrap();
        // conj(i z1) = -i z̄1
        assert_eq!(
            z1.scale(&GaussRat::i()).conj(),
            z1b.scale(&-GaussRat::i())
        );
        // conj(u) = u
        assert_eq!(u.conj(), u);
        // conj(z1^2 z̄2) = z̄1^2 z2
        let z2 = Poly::var_named(&t, "z2").unwrap();
        let z2b = Poly::var_named(&t, "z̄2").unwrap();
        let p = z1.mul(&z1).unwrap().mul(&z2b).unwrap();
        let q = z1b.mul(&z1b).unwrap().mul(&z2).unwrap();
        assert_eq!(p.conj(), q);
        assert!(p.re2().is_conj_fixed());
    }

    #[test]
    fn diff_examples() {
        let t = table();
        let z1 = Poly::var_named(&t, "z1").unwrap();
        let z2b = Poly::var_named(&t, "z̄2").unwrap();
        let u = Poly::var_named(&t, "u").unwrap();
        let v = t.var("z1").unwrap();
        // d/dz1 (z1^2 z̄2) = 2 z1 z̄2
        let p = z1.mul(&z1).unwrap().mul(&z2b).unwrap();
        assert_eq!(
            p.diff(v),
            z1.mul(&z2b).unwrap().scale(&GaussRat::from_int(2))
        );
        // d/du u^3 = 3u^2
        let uu = t.var("u").unwrap();
        let u3 = u.mul(&u).unwrap().mul(&u).unwrap();
        assert_eq!(
            u3.diff(uu),
            u.mul(&u).unwrap().scale(&GaussRat::from_int(3))
        );
        // d/dz2 z̄2 = 0
        assert!(z2b.diff(t.var("z2").unwrap()).is_zero());
    }

    #[test]
    fn substitute_direct_expansion() {
        let t = table();
        let w = t.var("w").unwrap();
        let wp = Poly::var_named(&t, "w").unwrap();
        let u = Poly::var_named(&t, "u").unwrap();
        let z1 = Poly::var_named(&t, "z1").unwrap();
        let z1b = Poly::var_named(&t, "z̄1").unwrap();
        // w^2 at w = u + i z1 z̄1: u^2 + 2i u z1 z̄1 - z1^2 z̄1^2
        let q = u
            .add(&z1.mul(&z1b).unwrap().scale(&GaussRat::i()))
            .unwrap();
        let w2 = wp.mul(&wp).unwrap();
        let r = w2.substitute(w, &q, None).unwrap();
        assert_eq!(r.coeff_of(&[("u", 2)]).unwrap(), GaussRat::one());
        assert_eq!(
            r.coeff_of(&[("u", 1), ("z1", 1), ("z̄1", 1)]).unwrap(),
            GaussRat::from_parts(0, 1, 2, 1)
        );
        assert_eq!(
            r.coeff_of(&[("z1", 2), ("z̄1", 2)]).unwrap(),
            GaussRat::from_int(-1)
        );
        // identity substitution
        assert_eq!(wp.substitute(w, &u, None).unwrap(), u);
        // self-reference is rejected
        assert!(wp.substitute(w, &wp, None).is_err());
    }

    #[test]
    fn eval_examples() {
        let t = table();
        let z1 = t.var("z1").unwrap();
        let z1b = t.var("z̄1").unwrap();
        let p = Poly::var(&t, z1).mul(&Poly::var(&t, z1b)).unwrap();
        let mut point = BTreeMap::new();
        point.insert(z1, GaussRat::from_parts(1, 1, 1, 1)); // 1 + i
        point.insert(z1b, GaussRat::from_parts(1, 1, -1, 1)); // 1 - i
        assert_eq!(p.eval(&point, true).unwrap(), GaussRat::from_int(2));
        // inconsistent conjugates rejected on the real locus
        point.insert(z1b, GaussRat::from_int(1));
        assert!(p.eval(&point, true).is_err());
        assert!(p.eval(&point, false).is_ok());
        // missing assignment
        let q = Poly::var_named(&t, "u").unwrap();
        assert!(q.eval(&point, false).is_err());
    }
}
