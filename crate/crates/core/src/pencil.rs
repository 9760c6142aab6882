//! Combinatorial Lefschetz pencils: parsing, validation, homological
//! monodromy and the invariants of the total space they predict.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map};

use crate::error::{Error, Result};
use crate::homology::{
    cokernel_divisors, fiber_basis, fiber_intersection_form, transvection_matrix, Chirality,
    Cokernel, FiberBasis, HomologyClass, IntegerMatrix,
};
use crate::verify::CheckResult;

/// One Lefschetz critical point, recorded by the homology class of its
/// vanishing cycle on the compact fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VanishingCycle {
    pub class: HomologyClass,
    #[serde(rename = "sign")]
    pub chirality: Chirality,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl VanishingCycle {
    pub fn new(class: Vec<i64>, chirality: Chirality) -> Self {
        VanishingCycle {
            class: HomologyClass::new(class),
            chirality,
            label: None,
        }
    }

    pub fn positive(class: Vec<i64>) -> Self {
        Self::new(class, Chirality::Positive)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPencil {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    h: usize,
    b: usize,
    cycles: Vec<RawCycle>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCycle {
    class: Vec<i64>,
    sign: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Genus `h` fiber, `b` base points and an ordered list of vanishing cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPencil", into = "RawPencil")]
pub struct PencilData {
    name: Option<String>,
    basis: FiberBasis,
    cycles: Vec<VanishingCycle>,
}

impl TryFrom<RawPencil> for PencilData {
    type Error = Error;

    fn try_from(raw: RawPencil) -> Result<Self> {
        if raw.b == 0 {
            return Err(Error::EmptyBaseLocus);
        }
        let cycles = raw
            .cycles
            .into_iter()
            .map(|c| {
                Ok(VanishingCycle {
                    class: HomologyClass::new(c.class),
                    chirality: Chirality::from_sign(c.sign)?,
                    label: c.label,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut p = PencilData::new(raw.h, raw.b, cycles)?;
        p.name = raw.name;
        Ok(p)
    }
}

impl From<PencilData> for RawPencil {
    fn from(p: PencilData) -> Self {
        RawPencil {
            name: p.name,
            h: p.basis.genus(),
            b: p.basis.boundary_components(),
            cycles: p
                .cycles
                .into_iter()
                .map(|c| RawCycle {
                    class: c.class.coords().to_vec(),
                    sign: c.chirality.sign(),
                    label: c.label,
                })
                .collect(),
        }
    }
}

impl PencilData {
    /// Structural validation only: `b ≥ 1` and every class has length `2h+b−1`.
    pub fn new(h: usize, b: usize, cycles: Vec<VanishingCycle>) -> Result<Self> {
        let basis = fiber_basis(h, b).map_err(|_| Error::EmptyBaseLocus)?;
        for (index, c) in cycles.iter().enumerate() {
            if c.class.len() != basis.rank() {
                return Err(Error::ClassLength {
                    index,
                    expected: basis.rank(),
                    found: c.class.len(),
                });
            }
        }
        Ok(PencilData {
            name: None,
            basis,
            cycles,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn genus(&self) -> usize {
        self.basis.genus()
    }

    pub fn base_points(&self) -> usize {
        self.basis.boundary_components()
    }

    pub fn singular_fibers(&self) -> usize {
        self.cycles.len()
    }

    pub fn basis(&self) -> &FiberBasis {
        &self.basis
    }

    pub fn cycles(&self) -> &[VanishingCycle] {
        &self.cycles
    }

    pub fn with_cycles(&self, cycles: Vec<VanishingCycle>) -> Result<Self> {
        let mut p = PencilData::new(self.genus(), self.base_points(), cycles)?;
        p.name.clone_from(&self.name);
        Ok(p)
    }

    /// Serialized as the pencil JSON schema, pretty-printed.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pencil serialization is infallible")
    }

    /// The vanishing cycles followed by the inverse boundary twists
    /// `δ₁,…,δ_b`: the factorization whose monodromy is trivial, in the
    /// mapping class group of the compact fiber, for a genuine pencil.
    pub fn extended_factorization(&self) -> Vec<(HomologyClass, Chirality)> {
        let b = self.base_points();
        self.cycles
            .iter()
            .map(|c| (c.class.clone(), c.chirality))
            .chain((1..=b).map(|j| (self.basis.boundary_class(j), Chirality::Negative)))
            .collect()
    }
}

pub fn parse_pencil(text: &[u8]) -> Result<PencilData> {
    let s = std::str::from_utf8(text).map_err(|e| Error::Parse(e.to_string()))?;
    let raw: RawPencil = serde_json::from_str(s)?;
    PencilData::try_from(raw)
}

/// `T_{c_l}·…·T_{c_1}`: the first cycle acts first.
pub fn homological_monodromy(p: &PencilData) -> IntegerMatrix {
    let form = fiber_intersection_form(p.basis());
    p.cycles()
        .iter()
        .fold(IntegerMatrix::identity(p.basis().rank()), |m, c| {
            let t = transvection_matrix(&form, &c.class, c.chirality)
                .expect("cycle lengths are validated at construction");
            &t * &m
        })
}

/// Passes iff the homological monodromy is the identity. Boundary twists act
/// trivially on `H₁` of a surface with boundary, so this is necessary for the
/// cycles to come from a pencil but far from sufficient.
pub fn check_monodromy(p: &PencilData) -> CheckResult {
    let m = homological_monodromy(p);
    let passed = m.is_identity();
    let mut details = Map::new();
    details.insert("monodromy".into(), json!(m));
    details.insert(
        "note".into(),
        json!("homological shadow only: necessary, not sufficient"),
    );
    if !passed {
        let deviation = m
            .try_sub(&IntegerMatrix::identity(m.rows()))
            .expect("square by construction");
        details.insert("deviation".into(), json!(deviation));
    }
    CheckResult::new("monodromy", passed, details)
}

/// Pairing of the arc dual to basis element `w` with a closed class.
///
/// For `aᵢ`, `bᵢ` this is the intersection form; the arc dual to `δⱼ` runs from
/// boundary `j` to boundary `b` and meets `c` in its `δⱼ` coordinate.
pub(crate) fn arc_pairing(basis: &FiberBasis, w: usize, c: &[i64]) -> i64 {
    let h = basis.genus();
    if w < 2 * h {
        if w.is_multiple_of(2) {
            c[w + 1]
        } else {
            -c[w - 1]
        }
    } else {
        c[w]
    }
}

/// Columns are `M(β_w) − β_w` for the arc `β_w` dual to each basis element,
/// where `M` runs through the extended factorization.
pub fn boundary_variation(p: &PencilData) -> IntegerMatrix {
    let basis = p.basis();
    let r = basis.rank();
    let ext = p.extended_factorization();
    let mut out = IntegerMatrix::zeros(r, r);
    for w in 0..r {
        // arc state = β_w + x with x a closed class
        let mut x = vec![BigInt::zero(); r];
        for (c, chirality) in &ext {
            let cc = c.coords();
            let mut t = BigInt::from(arc_pairing(basis, w, cc));
            for (k, xk) in x.iter().enumerate() {
                if !xk.is_zero() {
                    // ⟨x, c⟩ with x closed
                    t += xk * arc_pairing(basis, k, cc) * closed_sign(basis, k);
                }
            }
            if t.is_zero() {
                continue;
            }
            t *= chirality.sign();
            for (xk, &ck) in x.iter_mut().zip(cc) {
                if ck != 0 {
                    *xk += &t * ck;
                }
            }
        }
        for (k, xk) in x.into_iter().enumerate() {
            out[(k, w)] = xk;
        }
    }
    out
}

// ⟨e_k, c⟩ = arc_pairing(k, c) on the closed part; δ coordinates are radical.
fn closed_sign(basis: &FiberBasis, k: usize) -> i64 {
    if k < 2 * basis.genus() {
        1
    } else {
        0
    }
}

/// Passes iff the extended factorization acts trivially on arcs rel boundary.
/// Implies [`check_monodromy`]; strictly stronger when `b ≥ 2`.
pub fn check_boundary_variation(p: &PencilData) -> CheckResult {
    let var = boundary_variation(p);
    let passed = var.is_zero();
    let mut details = Map::new();
    details.insert("variation".into(), json!(var));
    details.insert(
        "note".into(),
        json!("vanishing cycles followed by inverse boundary twists, acting on arcs"),
    );
    CheckResult::new("boundary_variation", passed, details)
}

/// Every vanishing cycle must be primitive or zero to be the class of a
/// simple closed curve.
pub fn check_cycle_classes(p: &PencilData) -> CheckResult {
    let offending: Vec<usize> = p
        .cycles()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.class.content() > 1)
        .map(|(i, _)| i)
        .collect();
    let mut details = Map::new();
    details.insert(
        "contents".into(),
        json!(p.cycles().iter().map(|c| c.class.content()).collect::<Vec<_>>()),
    );
    if !offending.is_empty() {
        details.insert("offending".into(), json!(offending));
    }
    CheckResult::new("cycle_classes", offending.is_empty(), details)
}

/// χ and `H₁` of the total space as predicted from the pencil alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilInvariants {
    pub euler: i64,
    pub h1: Cokernel,
}

pub fn expected_invariants(p: &PencilData) -> PencilInvariants {
    let h = p.genus() as i64;
    let euler = 2 * (2 - 2 * h) + p.singular_fibers() as i64 - p.base_points() as i64;
    // capping the boundary kills the δ coordinates
    let closed = 2 * p.genus();
    let projected: Vec<HomologyClass> = p
        .cycles()
        .iter()
        .map(|c| HomologyClass::new(c.class.coords()[..closed].to_vec()))
        .collect();
    let h1 = cokernel_divisors(closed, &projected).expect("projected lengths agree");
    PencilInvariants { euler, h1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus1(twists: usize) -> PencilData {
        let cycles = (0..twists)
            .map(|i| {
                if i % 2 == 0 {
                    VanishingCycle::positive(vec![1, 0])
                } else {
                    VanishingCycle::positive(vec![0, 1])
                }
            })
            .collect();
        PencilData::new(1, 1, cycles).unwrap()
    }

    fn conics() -> PencilData {
        PencilData::new(
            0,
            4,
            vec![
                VanishingCycle::positive(vec![1, 1, 0]),
                VanishingCycle::positive(vec![0, 1, 1]),
                VanishingCycle::positive(vec![1, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn parse_minimal() {
        let p = parse_pencil(br#"{"h":0,"b":1,"cycles":[]}"#).unwrap();
        assert_eq!((p.genus(), p.base_points(), p.singular_fibers()), (0, 1, 0));
        assert_eq!(p.name(), None);
    }

    #[test]
    fn parse_rejects_wrong_class_length() {
        let err = parse_pencil(br#"{"h":1,"b":2,"cycles":[{"class":[1,0],"sign":1}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("class length"), "{err}");
    }

    #[test]
    fn parse_rejects_bad_sign() {
        let err =
            parse_pencil(br#"{"h":1,"b":1,"cycles":[{"class":[1,0],"sign":2}]}"#).unwrap_err();
        assert!(err.to_string().contains("chirality must be ±1"), "{err}");
    }

    #[test]
    fn parse_rejects_empty_base_locus_and_unknown_keys() {
        assert!(matches!(
            parse_pencil(br#"{"h":0,"b":0,"cycles":[]}"#),
            Err(Error::EmptyBaseLocus)
        ));
        assert!(parse_pencil(br#"{"h":0,"b":1,"cycles":[],"extra":1}"#).is_err());
        assert!(
            parse_pencil(br#"{"h":1,"b":1,"cycles":[{"class":[1,0],"sign":1,"x":0}]}"#).is_err()
        );
        assert!(parse_pencil(b"{not json").is_err());
        assert!(parse_pencil(&[0xff, 0xfe]).is_err());
    }

    #[test]
    fn parse_keeps_name_and_labels() {
        let p = parse_pencil(
            br#"{"name":"t","h":1,"b":1,"cycles":[{"class":[1,0],"sign":-1,"label":"a"}]}"#,
        )
        .unwrap();
        assert_eq!(p.name(), Some("t"));
        assert_eq!(p.cycles()[0].label.as_deref(), Some("a"));
        assert_eq!(p.cycles()[0].chirality, Chirality::Negative);
        assert_eq!(parse_pencil(p.to_json().as_bytes()).unwrap(), p);
    }

    #[test]
    fn monodromy_examples() {
        assert!(homological_monodromy(&genus1(0)).is_identity());
        let m = homological_monodromy(&genus1(1));
        assert_eq!(m.to_i64_rows().unwrap(), vec![vec![1, -1], vec![0, 1]]);
        assert!(homological_monodromy(&genus1(12)).is_identity());
    }

    #[test]
    fn monodromy_checks() {
        assert!(check_monodromy(&conics()).passed);
        assert!(check_monodromy(&genus1(12)).passed);
        let bad = check_monodromy(&genus1(11));
        assert!(!bad.passed);
        assert!(bad.details.contains_key("deviation"));
    }

    #[test]
    fn boundary_variation_of_corpus_shapes() {
        assert!(check_boundary_variation(&conics()).passed);
        assert!(check_boundary_variation(&genus1(12)).passed);
        assert!(!check_boundary_variation(&genus1(11)).passed);
        // planar, commuting twists with the right monodromy on H₁ but the
        // wrong boundary behaviour
        let p = PencilData::new(0, 2, vec![VanishingCycle::positive(vec![1])]).unwrap();
        assert!(check_monodromy(&p).passed);
        assert!(!check_boundary_variation(&p).passed);
        let quadric = p.with_cycles(vec![VanishingCycle::positive(vec![1]); 2]).unwrap();
        assert!(check_boundary_variation(&quadric).passed);
    }

    #[test]
    fn variation_agrees_with_monodromy_when_b_is_one() {
        for l in 0..13 {
            let p = genus1(l);
            let m = homological_monodromy(&p);
            let dev = m.try_sub(&IntegerMatrix::identity(2)).unwrap();
            // with one boundary component every arc is carried like the dual closed class
            assert_eq!(boundary_variation(&p), dev, "l = {l}");
        }
    }

    #[test]
    fn cycle_primitivity() {
        let p = PencilData::new(1, 1, vec![VanishingCycle::positive(vec![2, 0])]).unwrap();
        let r = check_cycle_classes(&p);
        assert!(!r.passed);
        assert!(check_cycle_classes(&genus1(3)).passed);
    }

    #[test]
    fn expected_invariant_examples() {
        let cp2 = PencilData::new(0, 1, vec![]).unwrap();
        let inv = expected_invariants(&cp2);
        assert_eq!(inv.euler, 3);
        assert!(inv.h1.is_trivial());

        let inv = expected_invariants(&conics());
        assert_eq!(inv.euler, 3);
        assert!(inv.h1.is_trivial());

        let inv = expected_invariants(&genus1(12));
        assert_eq!(inv.euler, 11);
        assert!(inv.h1.is_trivial());
    }
}
