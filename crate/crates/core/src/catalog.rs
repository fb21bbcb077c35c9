//! Built-in quivers of line-bundle collections on small toric varieties, with
//! Cox-coordinate tautological points.
//!
//! | name           | variety        | collection                         |
//! |----------------|----------------|------------------------------------|
//! | `p2`           | P^2            | O, O(1), O(2)                      |
//! | `pn(k)`        | P^k            | O, O(1), ..., O(k)                 |
//! | `f1`           | F_1            | O, O(D), O(H), O(2H)               |
//! | `p1xp1`        | P^1 x P^1      | O, O(0,1), O(1,0), O(1,1)          |
//! | `p2-helix`     | Tot(K) over P^2 | O, O(1), O(2) plus wrap arrows     |
//! | `p1xp1-spiral` | Tot(K) over P^1 x P^1 | O, O(1,0), O(1,1), O(2,1) plus wrap arrows |
//!
//! Arrow labels are Cox monomials; relations are the binomials they induce.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::helix::{extend_spiral_labeled, PicVector};
use crate::quiver::{Arrow, GradingCertificate, Monomial, Quiver};
use crate::rational::{int, pow, Rational};
use crate::repvar::{RepresentationPoint, TorusElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxVariable {
    pub name: String,
    pub degree: PicVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    name: String,
    quiver: Quiver,
    cox: Vec<CoxVariable>,
    irrelevant: Vec<Vec<usize>>,
    fiber: bool,
    hom_dims: Vec<Vec<usize>>,
}

pub const ENTRY_NAMES: &[&str] = &["p2", "pn(k)", "f1", "p1xp1", "p2-helix", "p1xp1-spiral"];

pub fn get_entry(name: &str) -> Result<CatalogEntry> {
    let entry = match name {
        "p2" => p2(),
        "f1" => f1(),
        "p1xp1" => p1xp1(),
        "p2-helix" => p2_helix()?,
        "p1xp1-spiral" => p1xp1_spiral()?,
        other => match parse_pn(other) {
            Some(k) => pn(k),
            None => return Err(Error::UnknownEntry(other.to_string())),
        },
    };
    entry.validate()?;
    Ok(entry)
}

fn parse_pn(name: &str) -> Option<usize> {
    let k = name.strip_prefix("pn(")?.strip_suffix(')')?.parse().ok()?;
    (k >= 1).then_some(k)
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cox_variables(&self) -> &[CoxVariable] {
        &self.cox
    }

    /// Sets of Cox-variable indices that may not vanish simultaneously.
    pub fn irrelevant_locus(&self) -> &[Vec<usize>] {
        &self.irrelevant
    }

    /// Whether points carry a fiber coordinate on the total space of `K`.
    pub fn has_fiber(&self) -> bool {
        self.fiber
    }

    /// `dim Hom(E_i, E_j)` on the base variety, 0-based.
    pub fn hom_dimensions(&self) -> &[Vec<usize>] {
        &self.hom_dims
    }

    pub fn cox_degree(&self, m: &Monomial) -> Result<PicVector> {
        let rank = self.quiver.canonical().map_or(0, PicVector::rank);
        m.exponents()
            .iter()
            .try_fold(PicVector::zero(rank), |acc, (name, &e)| {
                let var = self
                    .cox
                    .iter()
                    .find(|v| &v.name == name)
                    .ok_or_else(|| Error::Parse(format!("unknown Cox variable `{name}`")))?;
                Ok(&acc + &var.degree.scaled(i64::from(e)))
            })
    }

    /// Checks label degrees, the grading certificate, relation satisfaction at a
    /// sample point, and that path monomials span Hom spaces of the stated dimensions.
    pub fn validate(&self) -> Result<()> {
        let q = &self.quiver;
        let pic = q.pic().ok_or(Error::MissingData("Picard degrees"))?;
        let canonical = q
            .canonical()
            .ok_or(Error::MissingData("canonical degree"))?;
        for a in q.arrows() {
            let label = a
                .label
                .as_ref()
                .ok_or_else(|| Error::MissingLabel(a.id.clone()))?;
            let expected =
                &(&pic[a.source - 1] - &pic[a.target - 1]) - &canonical.scaled(i64::from(a.weight));
            if self.cox_degree(label)? != expected {
                return Err(Error::DimensionMismatch(format!(
                    "label of `{}` has degree {}, expected {expected}",
                    a.id,
                    self.cox_degree(label)?
                )));
            }
        }
        if let GradingCertificate::Fail { arrow, degree } = q.grading_certificate() {
            return Err(Error::InvalidPath(format!(
                "arrow `{arrow}` has non-positive degree {degree}"
            )));
        }
        for i in 1..=q.n() {
            for j in 1..=q.n() {
                let spanned = q.path_monomial_count(i, j, 0, q.n())?;
                if spanned != self.hom_dims[i - 1][j - 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "paths {j} -> {i} span {spanned} dimensions, Hom(E_{i}, E_{j}) has {}",
                        self.hom_dims[i - 1][j - 1]
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_irrelevant(&self, cox: &[Rational]) -> Result<()> {
        if cox.len() != self.cox.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} Cox coordinates for {} variables",
                cox.len(),
                self.cox.len()
            )));
        }
        for set in &self.irrelevant {
            if set.iter().all(|&v| cox[v].is_zero()) {
                let names: Vec<&str> = set.iter().map(|&v| self.cox[v].name.as_str()).collect();
                return Err(Error::IrrelevantLocus(format!(
                    "{} all vanish",
                    names.join(", ")
                )));
            }
        }
        Ok(())
    }

    fn check_cox(&self, cox: &[Rational], fiber: Option<&Rational>) -> Result<()> {
        self.check_irrelevant(cox)?;
        match (self.fiber, fiber) {
            (true, None) => Err(Error::Fiber("this entry needs a fiber coordinate".into())),
            (false, Some(_)) => Err(Error::Fiber("this entry has no fiber coordinate".into())),
            _ => Ok(()),
        }
    }

    /// The tautological representation: each arrow gets its label evaluated at the
    /// Cox coordinates, times `fiber^r` for weight-`r` arrows.
    pub fn tautological_point(
        &self,
        cox: &[Rational],
        fiber: Option<&Rational>,
    ) -> Result<RepresentationPoint> {
        self.check_cox(cox, fiber)?;
        let lookup: BTreeMap<&str, &Rational> = self
            .cox
            .iter()
            .zip(cox)
            .map(|(v, x)| (v.name.as_str(), x))
            .collect();
        let values = self
            .quiver
            .arrows()
            .iter()
            .map(|a| {
                let label = a
                    .label
                    .as_ref()
                    .ok_or_else(|| Error::MissingLabel(a.id.clone()))?;
                let base = label
                    .evaluate(|name| lookup.get(name).map(|&x| x.clone()))
                    .ok_or_else(|| {
                        Error::Parse(format!("label of `{}` uses unknown variables", a.id))
                    })?;
                let lambda = fiber.cloned().unwrap_or_else(Rational::one);
                Ok(base * pow(&lambda, i64::from(a.weight)))
            })
            .collect::<Result<Vec<_>>>()?;
        RepresentationPoint::new(&self.quiver, values)
    }

    /// Uniform integer Cox coordinates in `[-bound, bound]` outside the irrelevant locus.
    pub fn random_cox_point<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Vec<Rational> {
        loop {
            let cox: Vec<Rational> = (0..self.cox.len())
                .map(|_| int(rng.gen_range(-bound..=bound)))
                .collect();
            if self.check_irrelevant(&cox).is_ok() {
                return cox;
            }
        }
    }

    /// Acts by the Cox torus `t` (one entry per Picard basis vector). The fiber
    /// coordinate has degree `K`.
    pub fn rescale_cox(
        &self,
        cox: &[Rational],
        fiber: Option<&Rational>,
        t: &[Rational],
    ) -> Result<(Vec<Rational>, Option<Rational>)> {
        let weight = |deg: &PicVector| -> Result<Rational> {
            if deg.rank() != t.len() {
                return Err(Error::DimensionMismatch("Cox torus rank".into()));
            }
            Ok(deg
                .as_slice()
                .iter()
                .zip(t)
                .fold(Rational::one(), |acc, (&d, tk)| acc * pow(tk, d)))
        };
        if t.iter().any(Zero::is_zero) {
            return Err(Error::InvalidTorusElement(
                "Cox torus entries must be nonzero".into(),
            ));
        }
        let scaled = self
            .cox
            .iter()
            .zip(cox)
            .map(|(v, x)| Ok(x * weight(&v.degree)?))
            .collect::<Result<Vec<_>>>()?;
        let canonical = self
            .quiver
            .canonical()
            .ok_or(Error::MissingData("canonical degree"))?;
        let fiber = fiber
            .map(|l| Ok::<_, Error>(l * weight(canonical)?))
            .transpose()?;
        Ok((scaled, fiber))
    }

    /// The quiver torus element `g_i = t^(-deg E_i)` matching [`CatalogEntry::rescale_cox`]
    /// on tautological points.
    pub fn induced_torus_element(&self, t: &[Rational]) -> Result<TorusElement> {
        let pic = self
            .quiver
            .pic()
            .ok_or(Error::MissingData("Picard degrees"))?;
        let g = pic
            .iter()
            .map(|p| {
                p.as_slice()
                    .iter()
                    .zip(t)
                    .fold(Rational::one(), |acc, (&d, tk)| acc * pow(tk, -d))
            })
            .collect();
        TorusElement::new(g)
    }

    /// Whether two Cox points (with fibers) are the same point of the variety or of the
    /// total space. Supported when every Cox variable has a standard basis vector as degree.
    pub fn same_geometric_point(
        &self,
        a: (&[Rational], Option<&Rational>),
        b: (&[Rational], Option<&Rational>),
    ) -> Result<bool> {
        self.check_cox(a.0, a.1)?;
        self.check_cox(b.0, b.1)?;
        let rank = self.quiver.canonical().map_or(0, PicVector::rank);
        let mut basis_of = Vec::with_capacity(self.cox.len());
        for v in &self.cox {
            let s = v.degree.as_slice();
            let k = (0..rank).find(|&k| s[k] == 1 && s.iter().filter(|&&x| x != 0).count() == 1);
            basis_of.push(k.ok_or(Error::MissingData(
                "Cox degrees are not standard basis vectors",
            ))?);
        }
        let mut scale: Vec<Option<Rational>> = vec![None; rank];
        for (idx, &k) in basis_of.iter().enumerate() {
            let (x, y) = (&a.0[idx], &b.0[idx]);
            if x.is_zero() != y.is_zero() {
                return Ok(false);
            }
            if !x.is_zero() {
                let c = y / x;
                match &scale[k] {
                    Some(prev) if *prev != c => return Ok(false),
                    _ => scale[k] = Some(c),
                }
            }
        }
        let Some(t) = scale.into_iter().collect::<Option<Vec<_>>>() else {
            return Err(Error::IrrelevantLocus(
                "a Cox torus factor is undetermined".into(),
            ));
        };
        match (a.1, b.1) {
            (Some(la), Some(lb)) => {
                let (_, scaled) = self.rescale_cox(a.0, Some(la), &t)?;
                Ok(scaled.as_ref() == Some(lb))
            }
            _ => Ok(true),
        }
    }

    /// The weight-0 part of a spiral entry, with relations re-derived.
    pub fn base_quiver(&self) -> Result<Quiver> {
        let q = &self.quiver;
        let arrows: Vec<Arrow> = q
            .arrows()
            .iter()
            .filter(|a| a.weight == 0)
            .cloned()
            .collect();
        let mut base = Quiver::new(q.n(), arrows)?;
        if let Some(gg) = q.global_generation() {
            base = base.with_global_generation(gg.to_vec())?;
        }
        if let Some(pic) = q.pic() {
            base = base.with_picard(pic.to_vec(), q.canonical().cloned())?;
        }
        let relations = base.derive_binomial_relations()?;
        base.with_relations(relations)
    }
}

fn vars(names: &[&str], degrees: &[&[i64]]) -> Vec<CoxVariable> {
    names
        .iter()
        .zip(degrees)
        .map(|(n, d)| CoxVariable {
            name: n.to_string(),
            degree: PicVector::new(d.to_vec()),
        })
        .collect()
}

fn labeled(source: usize, target: usize, label: &str) -> Arrow {
    let m: Monomial = label.parse().expect("catalog labels are well formed");
    Arrow::new(format!("{source}>{target}:{m}"), source, target).with_label(m)
}

/// Hom dimensions are symmetric-free: `dims[i][j]` for `i <= j` given row by row, zero below.
fn upper(n: usize, entries: &[((usize, usize), usize)]) -> Vec<Vec<usize>> {
    let mut d = vec![vec![0; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &((i, j), v) in entries {
        d[i - 1][j - 1] = v;
    }
    d
}

/// `gg[i][j]` true on and above the diagonal except at `exceptions`.
fn gg_upper(n: usize, exceptions: &[(usize, usize)]) -> Vec<Vec<bool>> {
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| i <= j && !exceptions.contains(&(i, j)))
                .collect()
        })
        .collect()
}

fn assemble(
    n: usize,
    arrows: Vec<Arrow>,
    gg: Vec<Vec<bool>>,
    pic: Vec<Vec<i64>>,
    canonical: Vec<i64>,
) -> Quiver {
    let q = Quiver::new(n, arrows)
        .and_then(|q| q.with_global_generation(gg))
        .and_then(|q| {
            q.with_picard(
                pic.into_iter().map(PicVector::new).collect(),
                Some(PicVector::new(canonical)),
            )
        })
        .expect("catalog quivers are well formed");
    let relations = q
        .derive_binomial_relations()
        .expect("catalog arrows are labeled");
    q.with_relations(relations)
        .expect("derived relations are admissible")
}

fn binomial(n: u64, k: u64) -> usize {
    (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i) as usize
}

fn projective_chain(name: &str, var_names: &[String]) -> CatalogEntry {
    let k = var_names.len() - 1;
    let n = k + 1;
    let mut arrows = Vec::new();
    for t in 1..n {
        for v in var_names {
            arrows.push(labeled(t + 1, t, v));
        }
    }
    let dims: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        0
                    } else {
                        binomial((j - i + k) as u64, k as u64)
                    }
                })
                .collect()
        })
        .collect();
    let names: Vec<&str> = var_names.iter().map(String::as_str).collect();
    let degrees: Vec<&[i64]> = vec![&[1]; names.len()];
    CatalogEntry {
        name: name.to_string(),
        quiver: assemble(
            n,
            arrows,
            gg_upper(n, &[]),
            (0..n as i64).map(|d| vec![d]).collect(),
            vec![-(n as i64)],
        ),
        cox: vars(&names, &degrees),
        irrelevant: vec![(0..=k).collect()],
        fiber: false,
        hom_dims: dims,
    }
}

fn p2() -> CatalogEntry {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    projective_chain("p2", &names)
}

fn pn(k: usize) -> CatalogEntry {
    let names: Vec<String> = (0..=k).map(|i| format!("x{i}")).collect();
    projective_chain(&format!("pn({k})"), &names)
}

/// F_1 with Cox variables `x, y` (class H-D), `z` (class H), `e` (class D), in the (H, D) basis.
fn f1() -> CatalogEntry {
    let arrows = vec![
        labeled(2, 1, "e"),
        labeled(3, 1, "z"),
        labeled(3, 2, "x"),
        labeled(3, 2, "y"),
        labeled(4, 3, "x*e"),
        labeled(4, 3, "y*e"),
        labeled(4, 3, "z"),
    ];
    CatalogEntry {
        name: "f1".into(),
        quiver: assemble(
            4,
            arrows,
            gg_upper(4, &[(1, 2)]),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 0]],
            vec![-3, 1],
        ),
        cox: vars(
            &["x", "y", "z", "e"],
            &[&[1, -1], &[1, -1], &[1, 0], &[0, 1]],
        ),
        irrelevant: vec![vec![0, 1], vec![2, 3]],
        fiber: false,
        hom_dims: upper(
            4,
            &[
                ((1, 2), 1),
                ((1, 3), 3),
                ((1, 4), 6),
                ((2, 3), 2),
                ((2, 4), 5),
                ((3, 4), 3),
            ],
        ),
    }
}

fn p1xp1_vars() -> Vec<CoxVariable> {
    vars(
        &["x0", "x1", "y0", "y1"],
        &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]],
    )
}

/// P^1 x P^1 with O, O(0,1), O(1,0), O(1,1): two commuting squares' worth of paths 4 -> 1.
fn p1xp1() -> CatalogEntry {
    let mut arrows = Vec::new();
    for v in ["y0", "y1"] {
        arrows.push(labeled(2, 1, v));
        arrows.push(labeled(4, 3, v));
    }
    for v in ["x0", "x1"] {
        arrows.push(labeled(3, 1, v));
        arrows.push(labeled(4, 2, v));
    }
    CatalogEntry {
        name: "p1xp1".into(),
        quiver: assemble(
            4,
            arrows,
            gg_upper(4, &[(2, 3)]),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            vec![-2, -2],
        ),
        cox: p1xp1_vars(),
        irrelevant: vec![vec![0, 1], vec![2, 3]],
        fiber: false,
        hom_dims: upper(
            4,
            &[
                ((1, 2), 2),
                ((1, 3), 2),
                ((1, 4), 4),
                ((2, 3), 0),
                ((2, 4), 2),
                ((3, 4), 2),
            ],
        ),
    }
}

fn p2_helix() -> Result<CatalogEntry> {
    let base = p2();
    let labels: Vec<Monomial> = ["x", "y", "z"].iter().map(|v| Monomial::var(v)).collect();
    Ok(CatalogEntry {
        name: "p2-helix".into(),
        quiver: extend_spiral_labeled(base.quiver(), &labels)?,
        fiber: true,
        ..base
    })
}

/// Chain O, O(1,0), O(1,1), O(2,1) on P^1 x P^1, spiraled by `K = O(-2,-2)`. The wrap
/// arrows form a basis of `Hom(O(2,1), O(2,2)) = H^0(O(0,1))`.
fn p1xp1_spiral() -> Result<CatalogEntry> {
    let mut arrows = Vec::new();
    for v in ["x0", "x1"] {
        arrows.push(labeled(2, 1, v));
        arrows.push(labeled(4, 3, v));
    }
    for v in ["y0", "y1"] {
        arrows.push(labeled(3, 2, v));
    }
    let base = assemble(
        4,
        arrows,
        gg_upper(4, &[]),
        vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]],
        vec![-2, -2],
    );
    let labels = [Monomial::var("y0"), Monomial::var("y1")];
    Ok(CatalogEntry {
        name: "p1xp1-spiral".into(),
        quiver: extend_spiral_labeled(&base, &labels)?,
        cox: p1xp1_vars(),
        irrelevant: vec![vec![0, 1], vec![2, 3]],
        fiber: true,
        hom_dims: upper(
            4,
            &[
                ((1, 2), 2),
                ((1, 3), 4),
                ((1, 4), 6),
                ((2, 3), 2),
                ((2, 4), 4),
                ((3, 4), 2),
            ],
        ),
    })
}
