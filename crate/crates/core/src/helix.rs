//! Spiral extensions `Q -> Q'`, the canonical anticanonical character, Picard
//! degree bookkeeping, and line data for the blown-up representation spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Monomial, Quiver, Relation};
use crate::rational::Rational;
use crate::repvar::RepresentationPoint;
use crate::stability::{character_from_weights, Character, WeightMatrix};

/// Degree of a line bundle in a fixed basis of the Picard lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicVector(Vec<i64>);

impl PicVector {
    pub fn new(v: Vec<i64>) -> Self {
        PicVector(v)
    }

    pub fn zero(rank: usize) -> Self {
        PicVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, k: i64) -> PicVector {
        PicVector(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &PicVector {
    type Output = PicVector;

    fn add(self, rhs: &PicVector) -> PicVector {
        assert_eq!(self.rank(), rhs.rank(), "Picard rank mismatch");
        PicVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &PicVector {
    type Output = PicVector;

    fn sub(self, rhs: &PicVector) -> PicVector {
        self + &-rhs
    }
}

impl Neg for &PicVector {
    type Output = PicVector;

    fn neg(self) -> PicVector {
        self.scaled(-1)
    }
}

impl fmt::Display for PicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Chain quivers have every arrow going from `i+1` to `i` with weight 0.
fn check_chain(q: &Quiver) -> Result<()> {
    if q.n() < 2 {
        return Err(Error::NotChain("needs at least two nodes".into()));
    }
    for a in q.arrows() {
        if a.source != a.target + 1 || a.weight != 0 {
            return Err(Error::NotChain(format!(
                "arrow `{}` runs {} -> {} with weight {}",
                a.id, a.source, a.target, a.weight
            )));
        }
    }
    Ok(())
}

fn rebuild(q: &Quiver, arrows: Vec<Arrow>) -> Result<Quiver> {
    let mut out = Quiver::new(q.n(), arrows)?;
    if let Some(gg) = q.global_generation() {
        out = out.with_global_generation(gg.to_vec())?;
    }
    if let Some(pic) = q.pic() {
        out = out.with_picard(pic.to_vec(), q.canonical().cloned())?;
    }
    Ok(out)
}

/// Adds `added_dim` unlabeled weight-1 arrows from node 1 to node `n`.
///
/// Relations of `q` are carried over unchanged (they remain valid in `Q'`).
pub fn extend_spiral(q: &Quiver, added_dim: usize) -> Result<Quiver> {
    check_chain(q)?;
    if added_dim == 0 {
        return Err(Error::InvalidPath("added_dim must be at least 1".into()));
    }
    let n = q.n();
    let mut arrows = q.arrows().to_vec();
    for k in 1..=added_dim {
        arrows.push(Arrow::new(format!("1>{n}^1:{k}"), 1, n).with_weight(1));
    }
    let out = rebuild(q, arrows)?;
    // Arrow indices shift once the new ids are sorted in, so re-resolve by id.
    let relations = q
        .relations()
        .iter()
        .map(|r| {
            let terms = r
                .terms()
                .iter()
                .map(|(c, p)| Ok((c.clone(), out.path(&q.path_ids(p))?)))
                .collect::<Result<Vec<_>>>()?;
            Relation::new(terms)
        })
        .collect::<Result<Vec<_>>>()?;
    out.with_relations(relations)
}

/// Adds one weight-1 arrow `1 -> n` per label (a basis of `Hom(E_n, E_1 (x) K^-1)`)
/// and re-derives the binomial relations of the labeled quiver.
pub fn extend_spiral_labeled(q: &Quiver, labels: &[Monomial]) -> Result<Quiver> {
    check_chain(q)?;
    if labels.is_empty() {
        return Err(Error::InvalidPath(
            "at least one added arrow is needed".into(),
        ));
    }
    let n = q.n();
    let mut arrows = q.arrows().to_vec();
    for label in labels {
        arrows.push(
            Arrow::new(format!("1>{n}:{label}"), 1, n)
                .with_weight(1)
                .with_label(label.clone()),
        );
    }
    let out = rebuild(q, arrows)?;
    let relations = out.derive_binomial_relations()?;
    out.with_relations(relations)
}

/// `chi_m + (-1, 0, ..., 0, 1)`: the character whose line bundle is `K^-1` for a helix.
pub fn anticanonical_character(m: &WeightMatrix) -> Character {
    let base = character_from_weights(m);
    let mut chi = base.values().to_vec();
    let n = chi.len();
    if n > 0 {
        chi[0] -= 1;
        chi[n - 1] += 1;
    }
    Character::new(chi).expect("shift preserves the zero-sum condition")
}

/// Picard degree of `E_chi = (x)_i det(E_i)^chi_i`.
pub fn e_chi_degree(chi: &Character, pic: &[PicVector]) -> Result<PicVector> {
    if pic.len() != chi.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} Picard degrees for a character of length {}",
            pic.len(),
            chi.n()
        )));
    }
    let rank = pic.first().map_or(0, PicVector::rank);
    if pic.iter().any(|p| p.rank() != rank) {
        return Err(Error::DimensionMismatch(
            "Picard degrees have different ranks".into(),
        ));
    }
    Ok(chi
        .values()
        .iter()
        .zip(pic)
        .fold(PicVector::zero(rank), |acc, (&c, p)| &acc + &p.scaled(c)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub consistent: bool,
    /// `sum_ij m_ij (deg E_j - deg E_i)`.
    pub weights_degree: PicVector,
    /// `deg E_1 - deg E_n - deg K`, the degree of `Hom(E_n, E_1 (x) K^-1)`.
    pub wrap_degree: PicVector,
}

/// Degree-level test of `Hom(E_n, E_1 (x) K^-1) = (x) Hom(E_i, E_j)^{m_ij}`.
///
/// Matching degrees is necessary for the sheaf isomorphism, not sufficient.
pub fn check_line_bundle_degrees(q: &Quiver, m: &WeightMatrix) -> Result<DegreeCheck> {
    let pic = q.pic().ok_or(Error::MissingData("Picard degrees"))?;
    let canonical = q
        .canonical()
        .ok_or(Error::MissingData("canonical degree"))?;
    if m.n() != q.n() {
        return Err(Error::InvalidWeights(format!(
            "weight matrix is {0}x{0}, quiver has {1} nodes",
            m.n(),
            q.n()
        )));
    }
    let rank = canonical.rank();
    let weights_degree = m
        .entries()
        .into_iter()
        .fold(PicVector::zero(rank), |acc, (v, i, j)| {
            &acc + &(&pic[j - 1] - &pic[i - 1]).scaled(v as i64)
        });
    let wrap_degree = &(&pic[0] - &pic[q.n() - 1]) - canonical;
    Ok(DegreeCheck {
        consistent: weights_degree == wrap_degree,
        weights_degree,
        wrap_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonLine {
    /// Representative scaled so its first nonzero coordinate is 1.
    Line(Vec<Rational>),
    /// Every vector is zero: any line in the exceptional fiber works.
    Ambiguous,
}

/// The line spanned by pairwise proportional vectors.
pub fn common_line(vectors: &[Vec<Rational>]) -> Result<CommonLine> {
    let dim = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(
            "vectors of different length".into(),
        ));
    }
    let Some(base) = vectors.iter().find(|v| v.iter().any(|x| !x.is_zero())) else {
        return Ok(CommonLine::Ambiguous);
    };
    let pivot = base.iter().position(|x| !x.is_zero()).unwrap();
    let line: Vec<Rational> = base.iter().map(|x| x / &base[pivot]).collect();
    for v in vectors {
        let scale = &v[pivot];
        if v.iter().zip(&line).any(|(x, l)| *x != scale * l) {
            return Err(Error::NotCollinear);
        }
    }
    Ok(CommonLine::Line(line))
}

/// Line data for one Hom space: the arrows `source -> target` of one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSlot {
    pub source: usize,
    pub target: usize,
    pub weight: u32,
    pub arrows: Vec<String>,
    pub line: CommonLine,
}

/// For each Hom space of the quiver, the line through the point's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineWitness(pub Vec<LineSlot>);

impl LineWitness {
    pub fn is_determined(&self) -> bool {
        self.0.iter().all(|s| s.line != CommonLine::Ambiguous)
    }
}

pub fn line_witness(q: &Quiver, p: &RepresentationPoint) -> Result<LineWitness> {
    if p.values().len() != q.arrows().len() {
        return Err(Error::DimensionMismatch(
            "point does not belong to this quiver".into(),
        ));
    }
    let mut spaces: BTreeMap<(usize, usize, u32), Vec<usize>> = BTreeMap::new();
    for (k, a) in q.arrows().iter().enumerate() {
        spaces
            .entry((a.source, a.target, a.weight))
            .or_default()
            .push(k);
    }
    let slots = spaces
        .into_iter()
        .map(|((source, target, weight), arrows)| {
            let v: Vec<Rational> = arrows.iter().map(|&k| p.value(k).clone()).collect();
            Ok(LineSlot {
                source,
                target,
                weight,
                arrows: arrows.iter().map(|&k| q.arrow(k).id.clone()).collect(),
                line: common_line(&[v])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LineWitness(slots))
}

/// Restricts a point of `Q'` to the weight-0 arrows, as a point of the base quiver `q`.
pub fn restrict_to_base(
    q_prime: &Quiver,
    q: &Quiver,
    p: &RepresentationPoint,
) -> Result<RepresentationPoint> {
    let values = q
        .arrows()
        .iter()
        .map(|a| {
            let k = q_prime.arrow_index(&a.id)?;
            if q_prime.arrow(k).weight != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` has positive weight in the extension",
                    a.id
                )));
            }
            Ok(p.value(k).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    RepresentationPoint::new(q, values)
}
