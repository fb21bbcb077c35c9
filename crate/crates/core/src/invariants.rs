//! Torus-invariant functions: products of arrow values around closed walks.
//!
//! With every node one-dimensional, the trace of a loop is just the product of
//! its arrow scalars, and the torus weights `t_i / t_j` cancel around any cycle.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::quiver::{Monomial, Quiver};
use crate::rational::{format_rational, int, Rational};
use crate::repvar::RepresentationPoint;

/// A closed walk, stored as the lexicographically least rotation of its arrow indices
/// when produced by [`enumerate_cycles`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleMonomial {
    base: usize,
    arrows: Vec<usize>,
}

impl CycleMonomial {
    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let path = q.path_from_indices(arrows)?;
        if path.source() != path.target() {
            return Err(Error::InvalidPath(format!(
                "walk starts at {} but ends at {}",
                path.source(),
                path.target()
            )));
        }
        Ok(CycleMonomial {
            base: path.source(),
            arrows: path.arrows().to_vec(),
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The same walk started `k` arrows later.
    pub fn rotated(&self, q: &Quiver, k: usize) -> CycleMonomial {
        let k = k % self.len();
        let mut arrows = self.arrows[k..].to_vec();
        arrows.extend_from_slice(&self.arrows[..k]);
        CycleMonomial {
            base: q.arrow(arrows[0]).source,
            arrows,
        }
    }

    /// Walks `self` then `other`; both must be based at the same node.
    pub fn concat(&self, other: &CycleMonomial) -> Option<CycleMonomial> {
        (self.base == other.base).then(|| {
            let mut arrows = self.arrows.clone();
            arrows.extend_from_slice(&other.arrows);
            CycleMonomial {
                base: self.base,
                arrows,
            }
        })
    }

    pub fn label(&self, q: &Quiver) -> Result<Monomial> {
        self.arrows.iter().try_fold(Monomial::one(), |acc, &i| {
            let a = q.arrow(i);
            a.label
                .as_ref()
                .map(|l| acc.mul(l))
                .ok_or_else(|| Error::MissingLabel(a.id.clone()))
        })
    }

    pub fn ids<'q>(&self, q: &'q Quiver) -> Vec<&'q str> {
        self.arrows
            .iter()
            .map(|&i| q.arrow(i).id.as_str())
            .collect()
    }
}

fn least_rotation(arrows: &[usize]) -> Vec<usize> {
    (0..arrows.len())
        .map(|k| {
            let mut r = arrows[k..].to_vec();
            r.extend_from_slice(&arrows[..k]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// Closed walks of length `1..=max_len` up to rotation, ordered by length and then
/// lexicographically by arrow id.
pub fn enumerate_cycles(q: &Quiver, max_len: usize) -> Result<Vec<CycleMonomial>> {
    if max_len == 0 {
        return Err(Error::InvalidPath(
            "cycle length cap must be at least 1".into(),
        ));
    }
    let mut out = Vec::new();
    for v in 1..=q.n() {
        for path in q.enumerate_paths(v, v, max_len)? {
            if !path.is_empty() && least_rotation(path.arrows()) == path.arrows() {
                out.push(CycleMonomial {
                    base: v,
                    arrows: path.arrows().to_vec(),
                });
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows)));
    Ok(out)
}

/// Product of the arrow values around the walk.
pub fn evaluate_invariant(c: &CycleMonomial, p: &RepresentationPoint) -> Result<Rational> {
    let mut acc = int(1);
    for &i in &c.arrows {
        let v = p
            .values()
            .get(i)
            .ok_or_else(|| Error::UnknownArrow(format!("#{i} has no value")))?;
        if v.is_zero() {
            return Ok(Rational::zero());
        }
        acc *= v;
    }
    Ok(acc)
}

pub fn invariant_vector(
    cycles: &[CycleMonomial],
    p: &RepresentationPoint,
) -> Result<Vec<Rational>> {
    cycles.iter().map(|c| evaluate_invariant(c, p)).collect()
}

/// A point of the variety (or of the total space of `K` when `fiber` is set) in Cox coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxPoint {
    pub cox: Vec<Rational>,
    pub fiber: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxPointText {
    pub cox: Vec<String>,
    pub fiber: Option<String>,
}

impl From<&CoxPoint> for CoxPointText {
    fn from(p: &CoxPoint) -> Self {
        CoxPointText {
            cox: p.cox.iter().map(format_rational).collect(),
            fiber: p.fiber.as_ref().map(format_rational),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: CoxPointText,
    pub second: CoxPointText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub cycles: usize,
    pub pairs: usize,
    pub separated: usize,
    pub collisions: Vec<Collision>,
}

impl SeparationReport {
    pub fn fraction(&self) -> f64 {
        if self.pairs == 0 {
            1.0
        } else {
            self.separated as f64 / self.pairs as f64
        }
    }
}

/// Evaluates all cycles of length `<= max_len` at the tautological points of each pair
/// and counts the pairs whose invariant vectors differ.
pub fn separate_pairs(
    entry: &CatalogEntry,
    pairs: &[(CoxPoint, CoxPoint)],
    max_len: usize,
) -> Result<SeparationReport> {
    let q = entry.quiver();
    let cycles = enumerate_cycles(q, max_len)?;
    let mut separated = 0;
    let mut collisions = Vec::new();
    for (a, b) in pairs {
        let pa = entry.tautological_point(&a.cox, a.fiber.as_ref())?;
        let pb = entry.tautological_point(&b.cox, b.fiber.as_ref())?;
        if invariant_vector(&cycles, &pa)? != invariant_vector(&cycles, &pb)? {
            separated += 1;
        } else {
            collisions.push(Collision {
                first: a.into(),
                second: b.into(),
            });
        }
    }
    Ok(SeparationReport {
        cycles: cycles.len(),
        pairs: pairs.len(),
        separated,
        collisions,
    })
}

fn sample_total_space_point(entry: &CatalogEntry, rng: &mut ChaCha8Rng) -> CoxPoint {
    const BOUND: i64 = 6;
    let cox = entry.random_cox_point(rng, BOUND);
    let mut lambda = 0;
    while lambda == 0 {
        lambda = rng.gen_range(-BOUND..=BOUND);
    }
    CoxPoint {
        cox,
        fiber: Some(int(lambda)),
    }
}

/// Samples `samples` pairs of distinct points of the total space with nonzero fiber
/// coordinate (seeded, deterministic) and reports how many the cycle invariants separate.
/// Collisions are listed, not filtered: separation is only expected on a dense open set.
pub fn separation_experiment(
    entry: &CatalogEntry,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<SeparationReport> {
    if !entry.has_fiber() {
        return Err(Error::Fiber(format!(
            "entry `{}` has no fiber coordinate to sample",
            entry.name()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(samples);
    while pairs.len() < samples {
        let a = sample_total_space_point(entry, &mut rng);
        let b = sample_total_space_point(entry, &mut rng);
        let same = entry.same_geometric_point(
            (&a.cox[..], a.fiber.as_ref()),
            (&b.cox[..], b.fiber.as_ref()),
        )?;
        if !same {
            pairs.push((a, b));
        }
    }
    separate_pairs(entry, &pairs, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_entry;
    use crate::quiver::Arrow;
    use crate::rational::ratio;
    use crate::repvar::TorusElement;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn acyclic_quiver_has_no_cycles() {
        let e = get_entry("p2").unwrap();
        assert!(enumerate_cycles(e.quiver(), 6).unwrap().is_empty());
        assert!(enumerate_cycles(e.quiver(), 0).is_err());
    }

    #[test]
    fn helix_has_27_triangles() {
        let e = get_entry("p2-helix").unwrap();
        let cycles = enumerate_cycles(e.quiver(), 3).unwrap();
        assert_eq!(cycles.len(), 27);
        assert!(cycles.iter().all(|c| c.len() == 3));
        let q = e.quiver();
        for c in &cycles {
            let weights: u32 = c.arrows().iter().map(|&i| q.arrow(i).weight).sum();
            assert_eq!(weights, 1);
        }
    }

    #[test]
    fn two_cycle() {
        let q = Quiver::new(2, vec![Arrow::new("a", 2, 1), Arrow::new("b", 1, 2)]).unwrap();
        let cycles = enumerate_cycles(&q, 2).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].ids(&q), vec!["a", "b"]);
        let p = RepresentationPoint::new(&q, vec![int(2), ratio(1, 2)]).unwrap();
        assert_eq!(evaluate_invariant(&cycles[0], &p).unwrap(), int(1));
        let zero = RepresentationPoint::zero(&q);
        assert_eq!(evaluate_invariant(&cycles[0], &zero).unwrap(), int(0));
        // Length 4 adds only the doubled walk.
        assert_eq!(enumerate_cycles(&q, 4).unwrap().len(), 2);
    }

    #[test]
    fn helix_cycle_value_at_tautological_point() {
        let e = get_entry("p2-helix").unwrap();
        let q = e.quiver();
        let p = e
            .tautological_point(&ints(&[1, 2, 3]), Some(&int(5)))
            .unwrap();
        let ids = ["1>3:x", "3>2:x", "2>1:x"];
        let c = CycleMonomial::new(q, ids.iter().map(|id| q.arrow_index(id).unwrap()).collect())
            .unwrap();
        assert_eq!(evaluate_invariant(&c, &p).unwrap(), int(5));
    }

    #[test]
    fn open_walk_is_rejected() {
        let e = get_entry("p2-helix").unwrap();
        let q = e.quiver();
        let open = vec![q.arrow_index("3>2:x").unwrap()];
        assert!(CycleMonomial::new(q, open).is_err());
    }

    #[test]
    fn invariants_ignore_torus_and_rotation() {
        let e = get_entry("p2-helix").unwrap();
        let q = e.quiver();
        let p = e
            .tautological_point(&ints(&[2, -1, 3]), Some(&int(-4)))
            .unwrap();
        let g = TorusElement::new(vec![int(3), ratio(-1, 2), int(7)]).unwrap();
        let moved = p.torus_act(q, &g).unwrap();
        for c in enumerate_cycles(q, 6).unwrap() {
            let v = evaluate_invariant(&c, &p).unwrap();
            assert_eq!(evaluate_invariant(&c, &moved).unwrap(), v);
            for k in 1..c.len() {
                assert_eq!(evaluate_invariant(&c.rotated(q, k), &p).unwrap(), v);
            }
        }
    }

    #[test]
    fn separation_needs_fiber_entry() {
        let e = get_entry("p2").unwrap();
        assert!(matches!(
            separation_experiment(&e, 1, 3, 0),
            Err(Error::Fiber(_))
        ));
    }

    #[test]
    fn identical_pair_never_separates() {
        let e = get_entry("p2-helix").unwrap();
        let a = CoxPoint {
            cox: ints(&[1, 2, 3]),
            fiber: Some(int(2)),
        };
        let report = separate_pairs(&e, &[(a.clone(), a)], 3).unwrap();
        assert_eq!(report.separated, 0);
        assert_eq!(report.collisions.len(), 1);
    }

    #[test]
    fn fiber_scaling_separates() {
        let e = get_entry("p2-helix").unwrap();
        let a = CoxPoint {
            cox: ints(&[1, 2, 3]),
            fiber: Some(int(2)),
        };
        let b = CoxPoint {
            fiber: Some(int(3)),
            ..a.clone()
        };
        let report = separate_pairs(&e, &[(a, b)], 3).unwrap();
        assert_eq!(report.separated, 1);
    }

    #[test]
    fn experiment_is_deterministic() {
        let e = get_entry("p2-helix").unwrap();
        let r1 = separation_experiment(&e, 10, 3, 42).unwrap();
        let r2 = separation_experiment(&e, 10, 3, 42).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.pairs, 10);
    }
}
