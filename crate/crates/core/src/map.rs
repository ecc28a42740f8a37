//! Globally defined plane maps that can be expanded into germs anywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germ::PlaneMapGerm;
use crate::poly::PolySpec;

/// A smooth map `R² → R²` that can be evaluated and expanded at any point.
pub trait PlaneMap: Sync {
    fn eval(&self, u: [f64; 2]) -> [f64; 2];

    /// Rows are the gradients of the two components.
    fn jacobian(&self, u: [f64; 2]) -> [[f64; 2]; 2];

    /// The order-4 germ at `u`.
    fn germ_at(&self, u: [f64; 2]) -> PlaneMapGerm;

    fn discriminant_at(&self, u: [f64; 2]) -> f64 {
        let j = self.jacobian(u);
        j[0][0] * j[1][1] - j[0][1] * j[1][0]
    }
}

/// A polynomial map `(P, Q)` in `(u₁, u₂)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[PolySpec; 2]", into = "[PolySpec; 2]")]
pub struct PolyMap {
    components: [PolySpec; 2],
}

impl TryFrom<[PolySpec; 2]> for PolyMap {
    type Error = Error;

    fn try_from(components: [PolySpec; 2]) -> Result<Self> {
        PolyMap::new(components)
    }
}

impl From<PolyMap> for [PolySpec; 2] {
    fn from(m: PolyMap) -> Self {
        m.components
    }
}

impl PolyMap {
    pub fn new(components: [PolySpec; 2]) -> Result<Self> {
        if components.iter().any(|c| c.vars() != 2) {
            return Err(Error::InvalidSpec("map components must be bivariate".into()));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[PolySpec; 2] {
        &self.components
    }
}

impl PlaneMap for PolyMap {
    fn eval(&self, u: [f64; 2]) -> [f64; 2] {
        [self.components[0].eval2(u), self.components[1].eval2(u)]
    }

    fn jacobian(&self, u: [f64; 2]) -> [[f64; 2]; 2] {
        [self.components[0].gradient2(u), self.components[1].gradient2(u)]
    }

    fn germ_at(&self, u: [f64; 2]) -> PlaneMapGerm {
        PlaneMapGerm::from_polys(&self.components, u).expect("components validated as bivariate")
    }
}
