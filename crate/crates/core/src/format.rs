//! JSON file formats for quivers, points and weight matrices.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`) so values stay exact.
//! Point files may also use plain JSON integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::helix::PicVector;
use crate::quiver::{Arrow, Quiver, Relation};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::repvar::RepresentationPoint;
use crate::stability::WeightMatrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    n: usize,
    arrows: Vec<ArrowRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relations: Vec<RelationRecord>,
    /// Derive the binomial relations from the arrow labels instead of listing them.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    derive_relations: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gg: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pic: Option<Vec<PicVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    canonical: Option<PicVector>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowRecord {
    id: String,
    source: usize,
    target: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

fn is_zero(r: &u32) -> bool {
    *r == 0
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationRecord {
    terms: Vec<TermRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    coeff: String,
    path: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    values: BTreeMap<String, Scalar>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsFile {
    m: Vec<Vec<u64>>,
}

pub fn quiver_from_json(text: &str) -> Result<Quiver> {
    let file: QuiverFile = serde_json::from_str(text)?;
    let arrows = file
        .arrows
        .into_iter()
        .map(|a| {
            let mut arrow = Arrow::new(a.id, a.source, a.target).with_weight(a.r);
            if let Some(label) = a.label {
                arrow = arrow.with_label(label.parse()?);
            }
            Ok(arrow)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut q = Quiver::new(file.n, arrows)?;
    if let Some(gg) = file.gg {
        q = q.with_global_generation(gg)?;
    }
    if let Some(pic) = file.pic {
        q = q.with_picard(pic, file.canonical)?;
    } else if file.canonical.is_some() {
        return Err(Error::Parse("`canonical` given without `pic`".into()));
    }
    let mut relations = file
        .relations
        .iter()
        .map(|r| {
            let terms = r
                .terms
                .iter()
                .map(|t| {
                    let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
                    Ok((parse_rational(&t.coeff)?, q.path(&ids)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Relation::new(terms)
        })
        .collect::<Result<Vec<_>>>()?;
    if file.derive_relations {
        relations.extend(q.derive_binomial_relations()?);
    }
    q.with_relations(relations)
}

pub fn quiver_to_json(q: &Quiver) -> String {
    let file = QuiverFile {
        n: q.n(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowRecord {
                id: a.id.clone(),
                source: a.source,
                target: a.target,
                r: a.weight,
                label: a.label.as_ref().map(ToString::to_string),
            })
            .collect(),
        relations: q
            .relations()
            .iter()
            .map(|r| RelationRecord {
                terms: r
                    .terms()
                    .iter()
                    .map(|(c, p)| TermRecord {
                        coeff: format_rational(c),
                        path: q.path_ids(p).into_iter().map(String::from).collect(),
                    })
                    .collect(),
            })
            .collect(),
        derive_relations: false,
        gg: q.global_generation().map(<[_]>::to_vec),
        pic: q.pic().map(<[_]>::to_vec),
        canonical: q.canonical().cloned(),
    };
    serde_json::to_string_pretty(&file).expect("quiver records always serialize")
}

pub fn point_from_json(q: &Quiver, text: &str) -> Result<RepresentationPoint> {
    let file: PointFile = serde_json::from_str(text)?;
    let map = file
        .values
        .into_iter()
        .map(|(id, v)| {
            let value = match v {
                Scalar::Int(k) => Rational::from_integer(k.into()),
                Scalar::Text(s) => parse_rational(&s)?,
            };
            Ok((id, value))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    RepresentationPoint::from_map(q, &map)
}

pub fn point_to_json(q: &Quiver, p: &RepresentationPoint) -> String {
    let file = PointFile {
        values: p
            .to_map(q)
            .into_iter()
            .map(|(id, v)| (id, Scalar::Text(format_rational(&v))))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("point records always serialize")
}

pub fn weights_from_json(text: &str) -> Result<WeightMatrix> {
    let file: WeightsFile = serde_json::from_str(text)?;
    WeightMatrix::new(file.m)
}

pub fn weights_to_json(m: &WeightMatrix) -> String {
    let file = WeightsFile {
        m: m.rows().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("weight records always serialize")
}
