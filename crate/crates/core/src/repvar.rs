//! Points of the representation variety for dimension vector `(1,...,1)`.
//!
//! A point assigns one exact rational scalar to each arrow. The torus
//! `(k^*)^n / k^*` acts by scaling the arrow `j -> i` by `t_i / t_j`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver, Relation};
use crate::rational::Rational;

/// Arrow values, indexed like [`Quiver::arrows`] (sorted by arrow id).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepresentationPoint {
    values: Vec<Rational>,
}

impl RepresentationPoint {
    pub fn new(q: &Quiver, values: Vec<Rational>) -> Result<Self> {
        if values.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "quiver has {} arrows, point has {} values",
                q.arrows().len(),
                values.len()
            )));
        }
        Ok(RepresentationPoint { values })
    }

    pub fn zero(q: &Quiver) -> Self {
        RepresentationPoint {
            values: vec![Rational::zero(); q.arrows().len()],
        }
    }

    pub fn from_map(q: &Quiver, map: &BTreeMap<String, Rational>) -> Result<Self> {
        if let Some(id) = map.keys().find(|id| q.arrow_index(id).is_err()) {
            return Err(Error::UnknownArrow(id.clone()));
        }
        let values = q
            .arrows()
            .iter()
            .map(|a| {
                map.get(&a.id).cloned().ok_or_else(|| {
                    Error::DimensionMismatch(format!("no value for arrow `{}`", a.id))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RepresentationPoint { values })
    }

    pub fn to_map(&self, q: &Quiver) -> BTreeMap<String, Rational> {
        q.arrows()
            .iter()
            .zip(&self.values)
            .map(|(a, v)| (a.id.clone(), v.clone()))
            .collect()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, arrow: usize) -> &Rational {
        &self.values[arrow]
    }

    pub fn value_of(&self, q: &Quiver, id: &str) -> Result<&Rational> {
        Ok(&self.values[q.arrow_index(id)?])
    }

    /// Product of the arrow values along `path`; the empty path evaluates to 1.
    pub fn evaluate_path(&self, path: &Path) -> Result<Rational> {
        let mut acc = Rational::one();
        for &i in path.arrows() {
            let v = self
                .values
                .get(i)
                .ok_or_else(|| Error::UnknownArrow(format!("#{i} has no value")))?;
            if v.is_zero() {
                return Ok(Rational::zero());
            }
            acc *= v;
        }
        Ok(acc)
    }

    pub fn evaluate_relation(&self, rel: &Relation) -> Result<Rational> {
        rel.terms()
            .iter()
            .try_fold(Rational::zero(), |acc, (c, p)| {
                Ok(acc + c * self.evaluate_path(p)?)
            })
    }

    pub fn satisfies_relations(&self, q: &Quiver) -> bool {
        q.relations()
            .iter()
            .all(|r| self.evaluate_relation(r).is_ok_and(|v| v.is_zero()))
    }

    /// First relation (in quiver order) that does not vanish at this point.
    pub fn first_violated_relation<'q>(&self, q: &'q Quiver) -> Option<&'q Relation> {
        q.relations()
            .iter()
            .find(|r| !self.evaluate_relation(r).is_ok_and(|v| v.is_zero()))
    }

    pub fn torus_act(&self, q: &Quiver, g: &TorusElement) -> Result<RepresentationPoint> {
        if g.len() != q.n() {
            return Err(Error::DimensionMismatch(format!(
                "torus element has {} entries, quiver has {} nodes",
                g.len(),
                q.n()
            )));
        }
        let values = q
            .arrows()
            .iter()
            .zip(&self.values)
            .map(|(a, v)| v * g.get(a.target) / g.get(a.source))
            .collect();
        Ok(RepresentationPoint { values })
    }

    /// Ids of the arrows whose value is exactly zero.
    pub fn vanishing_pattern(&self, q: &Quiver) -> BTreeSet<String> {
        q.arrows()
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| v.is_zero())
            .map(|(a, _)| a.id.clone())
            .collect()
    }
}

/// An element of `(k^*)^n`, acting modulo the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    t: Vec<Rational>,
}

impl TorusElement {
    pub fn new(t: Vec<Rational>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidTorusElement("no entries".into()));
        }
        if let Some(k) = t.iter().position(Zero::is_zero) {
            return Err(Error::InvalidTorusElement(format!(
                "entry {} is zero",
                k + 1
            )));
        }
        Ok(TorusElement { t })
    }

    pub fn identity(n: usize) -> Self {
        TorusElement {
            t: vec![Rational::one(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Entry at 1-based node `i`.
    pub fn get(&self, i: usize) -> &Rational {
        &self.t[i - 1]
    }

    /// Pointwise product, so that acting by `g.compose(h)` equals acting by `h` then `g`.
    pub fn compose(&self, other: &TorusElement) -> Result<TorusElement> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(
                "torus elements of different length".into(),
            ));
        }
        Ok(TorusElement {
            t: self.t.iter().zip(&other.t).map(|(a, b)| a * b).collect(),
        })
    }
}
