//! Weight systems, weighted-homogeneous decomposition, and jet-space bases.
//!
//! All recursions in the engine are graded by positive integer weights;
//! conjugate variables always share the weight of their holomorphic partner.
//! The three gradings used by the shipped fixtures are exposed as presets.

use std::sync::Arc;

use crate::algebra::{Monomial, Poly, VarId, VarTable};
use crate::error::{Error, Result};

/// Positive integer weight per variable, conjugate pairs sharing weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    table: Arc<VarTable>,
    weights: Vec<i64>,
}

impl WeightSystem {
    /// Weights are given for holomorphic and real variables by name;
    /// conjugates inherit automatically.
    pub fn new(table: &Arc<VarTable>, named: &[(&str, i64)]) -> Result<Self> {
        let mut weights = vec![0i64; table.len()];
        for (name, w) in named {
            if *w <= 0 {
                return Err(Error::InvalidWeight);
            }
            let v = table.var(name)?;
            weights[v.0] = *w;
            weights[table.conj_var(v).0] = *w;
        }
        for v in table.iter() {
            if weights[v.0] == 0 {
                return Err(Error::MissingWeight(table.name(v).to_string()));
            }
        }
        Ok(WeightSystem {
            table: table.clone(),
            weights,
        })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn weight(&self, v: VarId) -> i64 {
        self.weights[v.0]
    }

    pub fn weight_of(&self, m: &Monomial) -> i64 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    /// Named weights for serialization, holomorphic and real variables only.
    pub fn named_weights(&self) -> Vec<(String, i64)> {
        self.table
            .iter()
            .filter(|v| !self.table.is_anti(*v))
            .map(|v| (self.table.name(v).to_string(), self.weights[v.0]))
            .collect()
    }
}

/// Terms of weight exactly `mu`.
pub fn graded_component(p: &Poly, ws: &WeightSystem, mu: i64) -> Poly {
    let mut out = Poly::zero(p.table());
    for (m, c) in p.terms() {
        if ws.weight_of(m) == mu {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// The set of weights realized by the terms of `p`, ascending.
pub fn weights_present(p: &Poly, ws: &WeightSystem) -> Vec<i64> {
    let mut ws_list: Vec<i64> = p.terms().map(|(m, _)| ws.weight_of(m)).collect();
    ws_list.sort_unstable();
    ws_list.dedup();
    ws_list
}

/// All monomials in `vars` of weight exactly `mu`, in ascending monomial
/// order (deterministic).
pub fn monomial_basis(
    table: &Arc<VarTable>,
    vars: &[VarId],
    ws: &WeightSystem,
    mu: i64,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    if mu < 0 {
        return out;
    }
    let mut exps = vec![0u16; table.len()];
    enumerate(table, vars, ws, mu, 0, &mut exps, &mut out);
    out.sort();
    out
}

fn enumerate(
    table: &Arc<VarTable>,
    vars: &[VarId],
    ws: &WeightSystem,
    remaining: i64,
    idx: usize,
    exps: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if idx == vars.len() {
        if remaining == 0 {
            out.push(Monomial(exps.clone()));
        }
        return;
    }
    let v = vars[idx];
    let w = ws.weight(v);
    let max = remaining / w;
    for e in 0..=max {
        exps[v.0] = e as u16;
        enumerate(table, vars, ws, remaining - e * w, idx + 1, exps, out);
    }
    exps[v.0] = 0;
}

/// One component of a jet: a holomorphic polynomial perturbing the target
/// coordinate, carrying its weight offset relative to the jet index.
#[derive(Clone, Debug)]
pub struct JetComponent {
    pub name: String,
    /// The coordinate this component perturbs.
    pub target: VarId,
    /// Component weight = jet index + offset.
    pub offset: i64,
}

/// Ordered weight-component convention for jets of maps or fields.
///
/// Shapes are data: the offset conventions differ between fixtures, so
/// hardcoding one would block the others.
#[derive(Clone, Debug)]
pub struct JetShape {
    pub table: Arc<VarTable>,
    pub components: Vec<JetComponent>,
}

impl JetShape {
    pub fn new(table: &Arc<VarTable>, comps: &[(&str, &str, i64)]) -> Result<Self> {
        let mut components = Vec::new();
        for (name, target, offset) in comps {
            components.push(JetComponent {
                name: (*name).to_string(),
                target: table.var(target)?,
                offset: *offset,
            });
        }
        Ok(JetShape {
            table: table.clone(),
            components,
        })
    }

    pub fn component(&self, name: &str) -> Result<usize> {
        self.components
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownComponent(name.to_string()))
    }

    /// Index of the component perturbing `w` (the graph coordinate), if any.
    pub fn w_component(&self, w: VarId) -> Option<usize> {
        self.components.iter().position(|c| c.target == w)
    }
}

/// Basis of the weight-`mu` jet space: per component, the monomial basis in
/// the holomorphic variables at weight `mu + offset`. Each complex
/// coefficient stands for two real unknowns, so the real dimension is twice
/// the returned length.
pub fn jet_basis(shape: &JetShape, ws: &WeightSystem, mu: i64) -> Vec<(usize, Monomial)> {
    let holo: Vec<VarId> = shape.table.holo_vars().to_vec();
    let mut out = Vec::new();
    for (ci, comp) in shape.components.iter().enumerate() {
        let w = mu + comp.offset;
        if w < 0 {
            continue;
        }
        for m in monomial_basis(&shape.table, &holo, ws, w) {
            out.push((ci, m));
        }
    }
    out
}

// ---- Preset tables and gradings ----

/// Coordinates `(z, ζ, η, w)` with the unit grading `[z]=[ζ]=[η]=1, [w]=2`.
pub fn preset_threefold() -> (Arc<VarTable>, WeightSystem) {
    let t = VarTable::new(&["z", "ζ", "η", "w"], &["u"]);
    let ws = WeightSystem::new(&t, &[("z", 1), ("ζ", 1), ("η", 1), ("w", 2), ("u", 2)]).unwrap();
    (t, ws)
}

/// Coordinates `(z1, z2, ζ, w)` with the unit grading `[z]=[ζ]=1, [w]=2`.
pub fn preset_twofold() -> (Arc<VarTable>, WeightSystem) {
    let t = VarTable::new(&["z1", "z2", "ζ", "w"], &["u"]);
    let ws =
        WeightSystem::new(&t, &[("z1", 1), ("z2", 1), ("ζ", 1), ("w", 2), ("u", 2)]).unwrap();
    (t, ws)
}

/// The reweighting `[z]=2, [ζ]=1, [w]=4` on the twofold table.
pub fn reweight_twofold(t: &Arc<VarTable>) -> WeightSystem {
    WeightSystem::new(t, &[("z1", 2), ("z2", 2), ("ζ", 1), ("w", 4), ("u", 4)]).unwrap()
}

/// Coordinates `(z1, z2, ζ, w)` with the cubic grading `[z1]=2, [z2]=[ζ]=1, [w]=3`.
pub fn preset_cubic() -> (Arc<VarTable>, WeightSystem) {
    let t = VarTable::new(&["z1", "z2", "ζ", "w"], &["u"]);
    let ws =
        WeightSystem::new(&t, &[("z1", 2), ("z2", 1), ("ζ", 1), ("w", 3), ("u", 3)]).unwrap();
    (t, ws)
}

/// Coordinates `(z1..zn, w)` with the unit grading, for the hyperquadrics.
pub fn preset_quadric(n: usize) -> (Arc<VarTable>, WeightSystem) {
    assert!(n >= 1);
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let mut holo: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    holo.push("w");
    let t = VarTable::new(&holo, &["u"]);
    let mut named: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    named.push(("w", 2));
    named.push(("u", 2));
    let ws = WeightSystem::new(&t, &named).unwrap();
    (t, ws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussRat;

    #[test]
    fn weights_of_presets() {
        let (t, w1) = preset_threefold();
        // z1^2 ζ̄ has weight 3 under the unit grading
        let m = {
            let mut e = vec![0u16; t.len()];
            e[t.var("z").unwrap().0] = 2;
            e[t.var("ζ̄").unwrap().0] = 1;
            Monomial(e)
        };
        assert_eq!(w1.weight_of(&m), 3);

        let (tc, w3) = preset_cubic();
        let z1 = Monomial::var(tc.len(), tc.var("z1").unwrap(), 1);
        assert_eq!(w3.weight_of(&z1), 2);

        let (t2, _) = preset_twofold();
        let w2 = reweight_twofold(&t2);
        let w = Monomial::var(t2.len(), t2.var("w").unwrap(), 1);
        assert_eq!(w2.weight_of(&w), 4);
    }

    #[test]
    fn graded_component_partition() {
        let (t, ws) = preset_threefold();
        let z = Poly::var_named(&t, "z").unwrap();
        let zb = Poly::var_named(&t, "z̄").unwrap();
        let u = Poly::var_named(&t, "u").unwrap();
        let p = z
            .mul(&zb)
            .unwrap()
            .add(&u.mul(&u).unwrap())
            .unwrap();
        let c2 = graded_component(&p, &ws, 2);
        let c4 = graded_component(&p, &ws, 4);
        assert_eq!(c2, z.mul(&zb).unwrap());
        assert_eq!(c4, u.mul(&u).unwrap());
        assert_eq!(c2.add(&c4).unwrap(), p);
        assert!(graded_component(&Poly::zero(&t), &ws, 3).is_zero());
        // idempotent
        assert_eq!(graded_component(&c2, &ws, 2), c2);
    }

    #[test]
    fn monomial_basis_counts() {
        // vars {z1, w} under the unit grading at weight 2: z1^2 and w
        let (t, ws) = preset_quadric(1);
        let vars = vec![t.var("z1").unwrap(), t.var("w").unwrap()];
        let b = monomial_basis(&t, &vars, &ws, 2);
        assert_eq!(b.len(), 2);

        // vars {ζ} under the cubic grading at weight 3: ζ^3 only
        let (tc, w3) = preset_cubic();
        let b = monomial_basis(&tc, &[tc.var("ζ").unwrap()], &w3, 3);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].exp(tc.var("ζ").unwrap()), 3);

        // vars {z1, z2, ζ, w} under the cubic grading at weight 2:
        // z1, z2^2, z2 ζ, ζ^2  (brute-force enumeration oracle)
        let holo: Vec<VarId> = tc.holo_vars().to_vec();
        let b = monomial_basis(&tc, &holo, &w3, 2);
        assert_eq!(b.len(), 4);
        // brute force over exponent boxes
        let mut count = 0;
        for a in 0..=1u16 {
            for b2 in 0..=2u16 {
                for c in 0..=2u16 {
                    for d in 0..=0u16 {
                        if 2 * a as i64 + b2 as i64 + c as i64 + 3 * d as i64 == 2 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn jet_basis_shapes() {
        let (t, ws) = preset_threefold();
        let shape = JetShape::new(
            &t,
            &[("f", "z", -1), ("g", "ζ", -2), ("h", "η", -3), ("e", "w", 0)],
        )
        .unwrap();
        let b = jet_basis(&shape, &ws, 5);
        // components at weights (4, 3, 2, 5)
        let f_count = b.iter().filter(|(c, _)| *c == 0).count();
        let holo: Vec<VarId> = t.holo_vars().to_vec();
        assert_eq!(f_count, monomial_basis(&t, &holo, &ws, 4).len());
        // below every offset: empty
        assert!(jet_basis(&shape, &ws, -4).is_empty());
    }

    #[test]
    fn conjugate_pairs_share_weight() {
        let (t, ws) = preset_threefold();
        for v in t.iter() {
            assert_eq!(ws.weight(v), ws.weight(t.conj_var(v)));
        }
        assert!(WeightSystem::new(&t, &[("z", 0)]).is_err());
        let _ = GaussRat::one();
    }
}
