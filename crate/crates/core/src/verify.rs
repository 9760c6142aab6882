//! Homological verification of trisection diagrams.
//!
//! Every check here is a necessary condition only. A diagram that passes all of
//! them is reported as `HOMOLOGY-CERTIFIED`; nothing stronger is claimed.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::builder::{trisection_parameters, CentralSurface, DiagramCurve, TrisectionDiagram,
    TrisectionParameters};
use crate::error::{Error, Result};
use crate::homology::{cokernel_divisors, smith_divisors, Cokernel, HomologyClass, IntegerMatrix};
use crate::pencil::{expected_invariants, PencilData};

pub const CERTIFIED: &str = "HOMOLOGY-CERTIFIED";
pub const NOT_CERTIFIED: &str = "NOT-CERTIFIED";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: Map<String, Value>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, details: Map<String, Value>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            details,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn check_lengths(surface: &CentralSurface, curves: &[&DiagramCurve]) -> Result<()> {
    let n = surface.rank();
    match curves.iter().position(|c| c.class.len() != n) {
        Some(i) => Err(Error::BasisMismatch(format!(
            "curve {i} has {} coordinates, the surface has rank {n}",
            curves[i].class.len()
        ))),
        None => Ok(()),
    }
}

/// A family can bound disks in a genus-`g` handlebody only if it has `g`
/// curves, they pairwise intersect zero times algebraically, and their classes
/// span a rank-`g` direct summand.
pub fn check_cut_system(surface: &CentralSurface, family: &[DiagramCurve]) -> Result<CheckResult> {
    let refs: Vec<&DiagramCurve> = family.iter().collect();
    check_lengths(surface, &refs)?;
    let g = surface.genus();
    let mut details = Map::new();
    details.insert("size".into(), json!(family.len()));
    details.insert("genus".into(), json!(g));

    let mut nonzero_pairs = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let p = surface.pairing(&family[i].class, &family[j].class)?;
            if p != 0 {
                nonzero_pairs.push(json!([i, j, p]));
            }
        }
    }

    let columns: Vec<&[i64]> = family.iter().map(|c| c.class.coords()).collect();
    let m = IntegerMatrix::from_columns(surface.rank(), &columns)?;
    let divisors = smith_divisors(&m);
    let rank = divisors.len();
    let unimodular = divisors.iter().all(|d| *d == 1.into());
    details.insert("rank".into(), json!(rank));
    details.insert(
        "divisors".into(),
        json!(divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
    );

    let mut reasons = Vec::new();
    if family.len() != g {
        reasons.push(format!("expected {g} curves, found {}", family.len()));
    }
    if !nonzero_pairs.is_empty() {
        reasons.push("curves intersect algebraically".to_string());
        details.insert("nonzero_pairings".into(), Value::Array(nonzero_pairs));
    }
    if rank != g {
        reasons.push(format!("span has rank {rank} < {g}"));
    }
    if !unimodular {
        reasons.push("span is not a direct summand".to_string());
    }
    let passed = reasons.is_empty();
    if !passed {
        details.insert("reasons".into(), json!(reasons));
    }
    Ok(CheckResult::new("cut_system", passed, details))
}

/// Two cut systems whose union presents `#^k S¹×S²` must have
/// `H₁(Σ)/⟨α ∪ β⟩ ≅ Zᵏ` with no torsion.
pub fn check_pairwise_heegaard(
    surface: &CentralSurface,
    fam_a: &[DiagramCurve],
    fam_b: &[DiagramCurve],
    k: usize,
) -> Result<CheckResult> {
    let all: Vec<&DiagramCurve> = fam_a.iter().chain(fam_b).collect();
    check_lengths(surface, &all)?;
    let classes: Vec<HomologyClass> = all.iter().map(|c| c.class.clone()).collect();
    let quotient = cokernel_divisors(surface.rank(), &classes)?;
    let passed = quotient.is_free_of_rank(k);
    let mut details = Map::new();
    details.insert("expected_free_rank".into(), json!(k));
    details.insert("quotient".into(), json!(quotient));
    details.insert("quotient_text".into(), json!(quotient.to_string()));
    Ok(CheckResult::new("pairwise", passed, details))
}

/// `H₁(Σ)` modulo every curve of every family.
pub fn diagram_h1(surface: &CentralSurface, families: &[Vec<DiagramCurve>]) -> Result<Cokernel> {
    let all: Vec<&DiagramCurve> = families.iter().flatten().collect();
    check_lengths(surface, &all)?;
    let classes: Vec<HomologyClass> = all.iter().map(|c| c.class.clone()).collect();
    cokernel_divisors(surface.rank(), &classes)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub certification: String,
    pub params: TrisectionParameters,
    pub euler_diagram: i64,
    pub euler_pencil: i64,
    pub h1_diagram: Cokernel,
    pub h1_pencil: Cokernel,
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl InvariantReport {
    pub fn failing(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

pub(crate) const FAMILY_PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// All six diagram checks plus the χ and `H₁` cross-validations against the
/// pencil. `k` always comes from the pencil, never from the diagram.
pub fn verify_diagram(p: &PencilData, d: &TrisectionDiagram) -> Result<InvariantReport> {
    let params = trisection_parameters(p.genus(), p.base_points(), p.singular_fibers())?;
    let expected = CentralSurface::for_pencil(p);
    if d.surface.labels() != expected.labels() {
        return Err(Error::BasisMismatch(format!(
            "diagram is on a genus-{} surface with basis [{}], pencil needs genus {}",
            d.surface.genus(),
            d.surface.labels().join(","),
            expected.genus()
        )));
    }
    verify_families(p, &expected, &d.families, params)
}

pub(crate) fn verify_families(
    p: &PencilData,
    surface: &CentralSurface,
    families: &[Vec<DiagramCurve>; 3],
    params: TrisectionParameters,
) -> Result<InvariantReport> {
    let mut checks = Vec::with_capacity(8);
    for (i, fam) in families.iter().enumerate() {
        checks.push(check_cut_system(surface, fam)?.named(format!("cut_system[{}]", i + 1)));
    }
    for (a, b) in FAMILY_PAIRS {
        checks.push(
            check_pairwise_heegaard(surface, &families[a], &families[b], params.k)?
                .named(format!("pairwise[{},{}]", a + 1, b + 1)),
        );
    }

    let pencil = expected_invariants(p);
    let euler_diagram = params.euler();
    let mut details = Map::new();
    details.insert("diagram".into(), json!(euler_diagram));
    details.insert("pencil".into(), json!(pencil.euler));
    checks.push(CheckResult::new(
        "euler",
        euler_diagram == pencil.euler,
        details,
    ));

    let h1_diagram = diagram_h1(surface, families)?;
    let mut details = Map::new();
    details.insert("diagram".into(), json!(h1_diagram.to_string()));
    details.insert("pencil".into(), json!(pencil.h1.to_string()));
    checks.push(CheckResult::new("h1", h1_diagram == pencil.h1, details));

    let overall = checks.iter().all(|c| c.passed);
    Ok(InvariantReport {
        certification: if overall { CERTIFIED } else { NOT_CERTIFIED }.to_string(),
        params,
        euler_diagram,
        euler_pencil: pencil.euler,
        h1_diagram,
        h1_pencil: pencil.h1,
        checks,
        overall,
    })
}
