use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::conventions::Assignment;
use super::surface::CentralSurface;
use super::TrisectionParameters;
use crate::error::{Error, Result};
use crate::homology::HomologyClass;

/// Which structural piece of the construction a diagram curve comes from.
/// Indices are one-based, as in the basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Support {
    ArcDouble(usize),
    BoundaryPairCurve(usize),
    TorusMeridian(usize),
    TorusOneOne(usize),
    TorusLambda(usize),
    ConnectorMeridian(usize),
    ConnectorLongitude(usize),
    ConnectorDiagonal(usize),
    ParallelCopy(Box<Support>),
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::ArcDouble(i) => write!(f, "ArcDouble({i})"),
            Support::BoundaryPairCurve(i) => write!(f, "BoundaryPairCurve({i})"),
            Support::TorusMeridian(i) => write!(f, "TorusMeridian({i})"),
            Support::TorusOneOne(i) => write!(f, "TorusOneOne({i})"),
            Support::TorusLambda(i) => write!(f, "TorusLambda({i})"),
            Support::ConnectorMeridian(i) => write!(f, "ConnectorMeridian({i})"),
            Support::ConnectorLongitude(i) => write!(f, "ConnectorLongitude({i})"),
            Support::ConnectorDiagonal(i) => write!(f, "ConnectorDiagonal({i})"),
            Support::ParallelCopy(inner) => write!(f, "ParallelCopy({inner})"),
        }
    }
}

impl FromStr for Support {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognised support tag `{s}`"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        if head == "ParallelCopy" {
            return Ok(Support::ParallelCopy(Box::new(inner.parse()?)));
        }
        let index: usize = inner.parse().map_err(|_| bad())?;
        Ok(match head {
            "ArcDouble" => Support::ArcDouble(index),
            "BoundaryPairCurve" => Support::BoundaryPairCurve(index),
            "TorusMeridian" => Support::TorusMeridian(index),
            "TorusOneOne" => Support::TorusOneOne(index),
            "TorusLambda" => Support::TorusLambda(index),
            "ConnectorMeridian" => Support::ConnectorMeridian(index),
            "ConnectorLongitude" => Support::ConnectorLongitude(index),
            "ConnectorDiagonal" => Support::ConnectorDiagonal(index),
            _ => return Err(bad()),
        })
    }
}

impl Serialize for Support {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Support {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramCurve {
    /// 1, 2 or 3.
    pub family: u8,
    pub class: HomologyClass,
    pub support: Support,
}

/// How a diagram was obtained, kept so a run can be reproduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pencil: Option<String>,
    pub h: usize,
    pub b: usize,
    pub l: usize,
    pub assignment: Assignment,
    pub candidates_tried: usize,
    pub search_order: String,
}

/// Three families of `g` curves on the central surface. Family 3 is the
/// handlebody that sees the vanishing cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrisectionDiagram {
    pub surface: CentralSurface,
    pub params: TrisectionParameters,
    pub families: [Vec<DiagramCurve>; 3],
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    class: HomologyClass,
    support: Support,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    g: usize,
    k: usize,
    basis: Vec<String>,
    families: Vec<Vec<RawCurve>>,
    provenance: Provenance,
}

impl TrisectionDiagram {
    pub fn to_json(&self) -> String {
        let raw = RawDiagram {
            g: self.params.g,
            k: self.params.k,
            basis: self.surface.labels().to_vec(),
            families: self
                .families
                .iter()
                .map(|fam| {
                    fam.iter()
                        .map(|c| RawCurve {
                            class: c.class.clone(),
                            support: c.support.clone(),
                        })
                        .collect()
                })
                .collect(),
            provenance: self.provenance.clone(),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("diagram serialization is infallible");
        s.push('\n');
        s
    }

    /// Parses diagram JSON. Only the shape is checked here: three families,
    /// class lengths equal to `2g`, a recognisable basis.
    pub fn from_json(text: &[u8]) -> Result<Self> {
        let s = std::str::from_utf8(text).map_err(|e| Error::Parse(e.to_string()))?;
        let raw: RawDiagram = serde_json::from_str(s)?;
        let surface = CentralSurface::from_labels(&raw.basis)?;
        if surface.genus() != raw.g {
            return Err(Error::BasisMismatch(format!(
                "g = {} but the basis has {} elements",
                raw.g,
                raw.basis.len()
            )));
        }
        let families: [Vec<RawCurve>; 3] = raw.families.try_into().map_err(|v: Vec<_>| {
            Error::Parse(format!("expected 3 families, found {}", v.len()))
        })?;
        let mut out: [Vec<DiagramCurve>; 3] = Default::default();
        for (f, fam) in families.into_iter().enumerate() {
            for (i, c) in fam.into_iter().enumerate() {
                if c.class.len() != surface.rank() {
                    return Err(Error::BasisMismatch(format!(
                        "family {} curve {i} has {} coordinates, expected {}",
                        f + 1,
                        c.class.len(),
                        surface.rank()
                    )));
                }
                out[f].push(DiagramCurve {
                    family: f as u8 + 1,
                    class: c.class,
                    support: c.support,
                });
            }
        }
        Ok(TrisectionDiagram {
            surface,
            params: TrisectionParameters { g: raw.g, k: raw.k },
            families: out,
            provenance: raw.provenance,
        })
    }

    pub fn curves(&self) -> impl Iterator<Item = &DiagramCurve> {
        self.families.iter().flatten()
    }
}
