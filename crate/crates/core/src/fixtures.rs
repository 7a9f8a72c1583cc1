//! Named fixture registry used by the command-line front end and the
//! verification suites.

use num::rational::BigRational;
use num::traits::Zero;

use crate::algebra::GaussRat;
use crate::error::{Error, Result};
use crate::grading::{reweight_twofold, JetShape};
use crate::kernel::JetWindow;
use crate::surfaces::{
    cubic_q, quadric, sample_j6_params, sample_two_nondeg_params, three_nondeg_j6, two_nondeg,
    J6Params, ModelSurface, TwoNondegParams,
};
use crate::tangency::{
    shape_cubic, shape_quadric, shape_threefold, shape_twofold, shape_twofold_reweighted, Operator,
};

/// Default seeds for the generic-parameter fixtures.
pub const DEFAULT_SEEDS: (u64, u64) = (7919, 104729);

#[derive(Clone, Debug)]
pub enum FixtureKind {
    Quadric { n: usize },
    Cubic,
    ThreeNondeg { params: J6Params },
    TwoNondeg { params: TwoNondegParams },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub surface: ModelSurface,
    pub kind: FixtureKind,
}

/// Instantiate a fixture by registry name. `seed` drives the
/// generic-parameter samplers.
pub fn fixture(name: &str, seed: u64) -> Result<Fixture> {
    let (surface, kind) = match name {
        "quadric-c2" => (quadric(1, &[1])?, FixtureKind::Quadric { n: 1 }),
        "quadric-c3" => (quadric(2, &[1, 1])?, FixtureKind::Quadric { n: 2 }),
        "quadric-c4" => (quadric(3, &[1, 1, 1])?, FixtureKind::Quadric { n: 3 }),
        "quadric-c4-mixed" => (quadric(3, &[1, 1, -1])?, FixtureKind::Quadric { n: 3 }),
        "Q" => (cubic_q()?, FixtureKind::Cubic),
        "j6-zero" => {
            let p = J6Params::zero();
            (three_nondeg_j6(&p)?, FixtureKind::ThreeNondeg { params: p })
        }
        "j6-generic" => {
            let p = sample_j6_params(seed);
            (three_nondeg_j6(&p)?, FixtureKind::ThreeNondeg { params: p })
        }
        "pair1-generic" => {
            let p = sample_two_nondeg_params(seed, 1)?;
            (two_nondeg(&p)?, FixtureKind::TwoNondeg { params: p })
        }
        "pair5-generic" => {
            let p = sample_two_nondeg_params(seed, 5)?;
            (two_nondeg(&p)?, FixtureKind::TwoNondeg { params: p })
        }
        "pair9-special" => {
            let p = pair9_special(BigRational::new(1.into(), 2.into()))?;
            (two_nondeg(&p)?, FixtureKind::TwoNondeg { params: p })
        }
        "pair9-special-3" => {
            let p = pair9_special(BigRational::from_integer(3.into()))?;
            (two_nondeg(&p)?, FixtureKind::TwoNondeg { params: p })
        }
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(Fixture {
        name: name.to_string(),
        surface,
        kind,
    })
}

pub fn fixture_names() -> Vec<&'static str> {
    vec![
        "quadric-c2",
        "quadric-c3",
        "quadric-c4",
        "quadric-c4-mixed",
        "Q",
        "j6-zero",
        "j6-generic",
        "pair1-generic",
        "pair5-generic",
        "pair9-special",
        "pair9-special-3",
    ]
}

/// Pair 9 with `R = r1 z1^2`.
pub fn pair9_special(r1: BigRational) -> Result<TwoNondegParams> {
    TwoNondegParams::new(
        9,
        BigRational::from_integer(1.into()),
        GaussRat::zero(),
        [
            GaussRat::new(r1, BigRational::zero()),
            GaussRat::zero(),
            GaussRat::zero(),
        ],
    )
}

impl Fixture {
    pub fn shape(&self) -> Result<JetShape> {
        match &self.kind {
            FixtureKind::Quadric { n } => shape_quadric(&self.surface, *n),
            FixtureKind::Cubic => shape_cubic(&self.surface),
            FixtureKind::ThreeNondeg { .. } => shape_threefold(&self.surface),
            FixtureKind::TwoNondeg { .. } => shape_twofold(&self.surface),
        }
    }

    /// The operator in the surface's own grading.
    pub fn operator(&self) -> Result<Operator> {
        Operator::graded(&self.surface, &self.shape()?)
    }

    /// The reweighted operator (two-nondegenerate fixtures only).
    pub fn reweighted_operator(&self) -> Result<Operator> {
        match &self.kind {
            FixtureKind::TwoNondeg { .. } => {
                let shape = shape_twofold_reweighted(&self.surface)?;
                let ws2 = reweight_twofold(self.surface.table());
                Operator::reweighted(&self.surface, &shape, &ws2)
            }
            _ => Err(Error::BadSurface(
                "reweighted operator only applies to two-nondegenerate fixtures".into(),
            )),
        }
    }

    /// Named jet spaces with their default windows.
    pub fn space_window(&self, space: &str, top: Option<i64>) -> Result<(Operator, JetWindow)> {
        match (space, &self.kind) {
            ("V5", FixtureKind::ThreeNondeg { .. }) => {
                let w = top.unwrap_or(9);
                Ok((self.operator()?, JetWindow::new(5, w)))
            }
            ("V5ext", FixtureKind::ThreeNondeg { .. }) => {
                let w = top.unwrap_or(9);
                Ok((self.operator()?, JetWindow::new(0, w)))
            }
            ("jet3", FixtureKind::ThreeNondeg { .. }) => {
                Ok((self.operator()?, JetWindow::new(2, 4).without_constants()))
            }
            ("V5tilde", FixtureKind::TwoNondeg { .. }) => {
                let w = top.unwrap_or(10);
                let op = self.reweighted_operator()?;
                let g = op.shape.component("g")?;
                Ok((op, JetWindow::new(5, w).floor(g, 2)))
            }
            (other, _) => Err(Error::BadSurface(format!(
                "space `{other}` is not defined for fixture `{}`",
                self.name
            ))),
        }
    }

    /// Default field-grade range for graded profiles.
    pub fn default_grades(&self) -> Option<(i64, i64)> {
        match &self.kind {
            FixtureKind::Quadric { .. } => Some((-2, 4)),
            FixtureKind::Cubic => Some((-3, 3)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trip() {
        for name in fixture_names() {
            let f = fixture(name, DEFAULT_SEEDS.0).unwrap();
            assert_eq!(f.name, name);
            assert!(f.shape().is_ok());
        }
        assert!(fixture("nope", 1).is_err());
    }

    #[test]
    fn seeds_change_generics() {
        let a = fixture("j6-generic", DEFAULT_SEEDS.0).unwrap();
        let b = fixture("j6-generic", DEFAULT_SEEDS.1).unwrap();
        assert_ne!(a.surface.defining(), b.surface.defining());
        let c = fixture("j6-generic", DEFAULT_SEEDS.0).unwrap();
        assert_eq!(a.surface.defining(), c.surface.defining());
    }
}
