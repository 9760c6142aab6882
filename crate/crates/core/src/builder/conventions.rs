//! The open choices of the curve table and the bounded search that fixes them.
//!
//! Enumeration order, slowest-varying first:
//! 1. `tau` in `+1, −1`;
//! 2. the connector role triple, over the six permutations of `(x, y, x+y)`
//!    in lexicographic order;
//! 3. the boundary-pair class of family 1, then family 2, then family 3, each
//!    over `e, d, d+e`.
//!
//! The first candidate whose diagram passes every verifier check wins.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::diagram::{DiagramCurve, Support};
use super::surface::CentralSurface;
use super::{trisection_parameters, TrisectionParameters};
use crate::error::{Error, Result};
use crate::homology::HomologyClass;
use crate::pencil::PencilData;
use crate::verify::{verify_families, CheckResult, InvariantReport};

pub const SEARCH_ORDER: &str =
    "tau(+1,-1) > connector_roles(lex permutations of x,y,x+y) > boundary_pairs(f1,f2,f3 over e,d,d+e)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConnectorRole {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "x+y")]
    XPlusY,
}

impl ConnectorRole {
    pub const ALL: [ConnectorRole; 3] = [ConnectorRole::X, ConnectorRole::Y, ConnectorRole::XPlusY];

    fn support(self, j: usize) -> Support {
        match self {
            ConnectorRole::X => Support::ConnectorMeridian(j),
            ConnectorRole::Y => Support::ConnectorLongitude(j),
            ConnectorRole::XPlusY => Support::ConnectorDiagonal(j),
        }
    }
}

impl fmt::Display for ConnectorRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnectorRole::X => "x",
            ConnectorRole::Y => "y",
            ConnectorRole::XPlusY => "x+y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundaryPairChoice {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "d+e")]
    DPlusE,
}

impl BoundaryPairChoice {
    pub const ALL: [BoundaryPairChoice; 3] =
        [BoundaryPairChoice::E, BoundaryPairChoice::D, BoundaryPairChoice::DPlusE];
}

/// Role triples in enumeration order.
pub fn role_permutations() -> Vec<[ConnectorRole; 3]> {
    let mut out = Vec::with_capacity(6);
    for a in ConnectorRole::ALL {
        for b in ConnectorRole::ALL {
            for c in ConnectorRole::ALL {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// One point of the search space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assignment {
    /// Sign of the λ-term in every family-2 torus curve is `tau·σᵢ`.
    pub tau: i64,
    /// Roles of families 1, 2, 3 on every connector not overridden below.
    pub connector_roles: [ConnectorRole; 3],
    /// Per-connector role triples, keyed by one-based connector index.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub connector_overrides: BTreeMap<usize, [ConnectorRole; 3]>,
    /// Boundary-pair class per family.
    pub boundary_pairs: [BoundaryPairChoice; 3],
}

impl Default for Assignment {
    fn default() -> Self {
        Assignment {
            tau: 1,
            connector_roles: [ConnectorRole::X, ConnectorRole::Y, ConnectorRole::XPlusY],
            connector_overrides: BTreeMap::new(),
            boundary_pairs: [BoundaryPairChoice::E; 3],
        }
    }
}

impl Assignment {
    /// Roles used on connector `j` (one-based).
    pub fn roles_for(&self, j: usize) -> [ConnectorRole; 3] {
        self.connector_overrides
            .get(&j)
            .copied()
            .unwrap_or(self.connector_roles)
    }
}

/// The candidate lists to enumerate. Overrides are carried into every candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub taus: Vec<i64>,
    pub connector_roles: Vec<[ConnectorRole; 3]>,
    pub connector_overrides: BTreeMap<usize, [ConnectorRole; 3]>,
    pub boundary_pairs: [Vec<BoundaryPairChoice>; 3],
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace {
            taus: vec![1, -1],
            connector_roles: role_permutations(),
            connector_overrides: BTreeMap::new(),
            boundary_pairs: [
                BoundaryPairChoice::ALL.to_vec(),
                BoundaryPairChoice::ALL.to_vec(),
                BoundaryPairChoice::ALL.to_vec(),
            ],
        }
    }
}

impl SearchSpace {
    /// A space containing exactly one assignment.
    pub fn single(a: &Assignment) -> Self {
        SearchSpace {
            taus: vec![a.tau],
            connector_roles: vec![a.connector_roles],
            connector_overrides: a.connector_overrides.clone(),
            boundary_pairs: a.boundary_pairs.map(|c| vec![c]),
        }
    }

    pub fn len(&self) -> usize {
        self.taus.len()
            * self.connector_roles.len()
            * self.boundary_pairs.iter().map(Vec::len).product::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every assignment, in enumeration order.
    pub fn candidates(&self) -> impl Iterator<Item = Assignment> + '_ {
        let [b1, b2, b3] = &self.boundary_pairs;
        self.taus.iter().flat_map(move |&tau| {
            self.connector_roles.iter().flat_map(move |&roles| {
                b1.iter().flat_map(move |&p1| {
                    b2.iter().flat_map(move |&p2| {
                        b3.iter().map(move |&p3| Assignment {
                            tau,
                            connector_roles: roles,
                            connector_overrides: self.connector_overrides.clone(),
                            boundary_pairs: [p1, p2, p3],
                        })
                    })
                })
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Block {
    /// Torus summand of the `i`-th vanishing cycle, zero-based.
    Torus(usize),
    /// Connector of the `j`-th base point, zero-based.
    Connector(usize),
}

#[derive(Clone, Debug)]
struct Entry {
    fiber_class: HomologyClass,
    sign: i64,
    block: Block,
    /// The vanishing cycle pushed into the north fiber, with `−tⱼ·dⱼ` for its
    /// boundary coordinates.
    nu: HomologyClass,
}

/// Everything about the diagram that does not depend on the open choices.
#[derive(Clone, Debug)]
pub struct Skeleton {
    surface: CentralSurface,
    params: TrisectionParameters,
    h: usize,
    b: usize,
    entries: Vec<Entry>,
}

impl Skeleton {
    pub fn new(p: &PencilData) -> Result<Self> {
        let (h, b, l) = (p.genus(), p.base_points(), p.singular_fibers());
        let params = trisection_parameters(h, b, l)?;
        let surface = CentralSurface::new(h, l, b)?;
        let mut entries = Vec::with_capacity(l + b);
        for (n, (class, chirality)) in p.extended_factorization().into_iter().enumerate() {
            let block = if n < l {
                Block::Torus(n)
            } else {
                Block::Connector(n - l)
            };
            let nu = nu_class(&surface, h, b, class.coords())?;
            entries.push(Entry {
                fiber_class: class,
                sign: chirality.sign(),
                block,
                nu,
            });
        }
        debug_assert_eq!(surface.genus(), params.g);
        Ok(Skeleton {
            surface,
            params,
            h,
            b,
            entries,
        })
    }

    pub fn surface(&self) -> &CentralSurface {
        &self.surface
    }

    pub fn params(&self) -> TrisectionParameters {
        self.params
    }

    fn arc_count(&self) -> usize {
        2 * self.h + self.b - 1
    }

    fn arc_base(&self, w: usize, choice: BoundaryPairChoice) -> Result<HomologyClass> {
        let s = &self.surface;
        if w < 2 * self.h {
            let mut fiber = vec![0; self.arc_count()];
            fiber[w] = 1;
            let mut out = s.unit(s.south(w));
            out.add_scaled(-1, &north_bar(s, self.h, &fiber))?;
            Ok(out)
        } else {
            let j = w - 2 * self.h;
            let mut out = s.zero_class();
            let c = out.coords_mut();
            match choice {
                BoundaryPairChoice::E => c[s.e(j)] = 1,
                BoundaryPairChoice::D => c[s.d(j)] = 1,
                BoundaryPairChoice::DPlusE => {
                    c[s.d(j)] = 1;
                    c[s.e(j)] = 1;
                }
            }
            Ok(out)
        }
    }

    fn arc_support(&self, w: usize) -> Support {
        if w < 2 * self.h {
            Support::ArcDouble(w + 1)
        } else {
            Support::BoundaryPairCurve(w - 2 * self.h + 1)
        }
    }

    fn role_class(&self, j: usize, role: ConnectorRole) -> HomologyClass {
        let s = &self.surface;
        let mut out = s.zero_class();
        let c = out.coords_mut();
        match role {
            ConnectorRole::X => c[s.x(j)] = 1,
            ConnectorRole::Y => c[s.y(j)] = 1,
            ConnectorRole::XPlusY => {
                c[s.x(j)] = 1;
                c[s.y(j)] = 1;
            }
        }
        out
    }

    /// The meridian-like class of an entry as seen by families 1 and 3.
    fn meridian(&self, e: &Entry, a: &Assignment) -> HomologyClass {
        match e.block {
            Block::Torus(i) => self.surface.unit(self.surface.mu(i)),
            Block::Connector(j) => self.role_class(j, a.roles_for(j + 1)[0]),
        }
    }

    fn longitude(&self, e: &Entry, a: &Assignment) -> HomologyClass {
        match e.block {
            Block::Torus(i) => self.surface.unit(self.surface.lambda(i)),
            Block::Connector(j) => self.role_class(j, a.roles_for(j + 1)[2]),
        }
    }

    /// The three curve families for one assignment.
    pub fn realize(&self, a: &Assignment) -> Result<[Vec<DiagramCurve>; 3]> {
        if a.tau != 1 && a.tau != -1 {
            return Err(Error::Invariant(format!("tau must be ±1, got {}", a.tau)));
        }
        let r = self.arc_count();
        let g = self.params.g;
        let mut fams: [Vec<DiagramCurve>; 3] = [
            Vec::with_capacity(g),
            Vec::with_capacity(g),
            Vec::with_capacity(g),
        ];
        let curve = |family: u8, class: HomologyClass, support: Support| DiagramCurve {
            family,
            class,
            support,
        };

        // family 1
        for w in 0..r {
            let class = self.arc_base(w, a.boundary_pairs[0])?;
            fams[0].push(curve(1, class, self.arc_support(w)));
        }
        for e in &self.entries {
            let support = match e.block {
                Block::Torus(i) => Support::TorusMeridian(i + 1),
                Block::Connector(j) => a.roles_for(j + 1)[0].support(j + 1),
            };
            fams[0].push(curve(1, self.meridian(e, a), support));
        }

        // family 2
        for w in 0..r {
            let class = self.arc_base(w, a.boundary_pairs[1])?;
            let support = if class == fams[0][w].class {
                Support::ParallelCopy(Box::new(fams[0][w].support.clone()))
            } else {
                self.arc_support(w)
            };
            fams[1].push(curve(2, class, support));
        }
        for e in &self.entries {
            match e.block {
                Block::Torus(i) => {
                    let mut class = self.surface.unit(self.surface.mu(i));
                    class.add_scaled(a.tau * e.sign, &self.surface.unit(self.surface.lambda(i)))?;
                    fams[1].push(curve(2, class, Support::TorusOneOne(i + 1)));
                }
                Block::Connector(j) => {
                    let role = a.roles_for(j + 1)[1];
                    fams[1].push(curve(2, self.role_class(j, role), role.support(j + 1)));
                }
            }
        }

        // family 3: arcs pick up a meridian wherever they cross a post
        let meridians: Vec<HomologyClass> =
            self.entries.iter().map(|e| self.meridian(e, a)).collect();
        for w in 0..r {
            let base = self.arc_base(w, a.boundary_pairs[2])?;
            let mut class = base.clone();
            for (e, m) in self.entries.iter().zip(&meridians) {
                let kappa = -e.sign * self.surface.pairing(&base, &e.nu)?;
                class.add_scaled(kappa, m)?;
            }
            fams[2].push(curve(3, class, self.arc_support(w)));
        }
        for (n, e) in self.entries.iter().enumerate() {
            let mut class = self.longitude(e, a);
            class.add_scaled(e.sign, &e.nu)?;
            for (later, m) in self.entries.iter().zip(&meridians).skip(n + 1) {
                let w = fiber_pairing(self.h, &e.fiber_class, &later.fiber_class)?;
                class.add_scaled(e.sign * later.sign * w, m)?;
            }
            let support = match e.block {
                Block::Torus(i) => Support::TorusLambda(i + 1),
                Block::Connector(j) => a.roles_for(j + 1)[2].support(j + 1),
            };
            fams[2].push(curve(3, class, support));
        }
        Ok(fams)
    }
}

/// Fiber class into the north block; the north copy is oppositely oriented,
/// so `bᵢ` picks up a sign.
fn north_bar(s: &CentralSurface, h: usize, fiber: &[i64]) -> HomologyClass {
    let mut out = s.zero_class();
    let c = out.coords_mut();
    for (m, &v) in fiber[..2 * h].iter().enumerate() {
        c[s.north(m)] = if m % 2 == 0 { v } else { -v };
    }
    out
}

fn nu_class(s: &CentralSurface, h: usize, b: usize, fiber: &[i64]) -> Result<HomologyClass> {
    let mut out = north_bar(s, h, fiber);
    let c = out.coords_mut();
    for j in 0..b - 1 {
        c[s.d(j)] = c[s.d(j)]
            .checked_sub(fiber[2 * h + j])
            .ok_or(Error::Overflow("pushing a cycle into the north fiber"))?;
    }
    Ok(out)
}

fn fiber_pairing(h: usize, x: &HomologyClass, y: &HomologyClass) -> Result<i64> {
    let (x, y) = (x.coords(), y.coords());
    let mut acc: i128 = 0;
    for i in 0..h {
        acc += x[2 * i] as i128 * y[2 * i + 1] as i128 - x[2 * i + 1] as i128 * y[2 * i] as i128;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("fiber pairing"))
}

/// The winning assignment and what it produced.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub assignment: Assignment,
    pub candidates_tried: usize,
    pub families: [Vec<DiagramCurve>; 3],
    pub report: InvariantReport,
}

/// Enumerates `space` in order and returns the first assignment whose
/// diagram passes every check. Exhaustion is an error carrying the scorecard
/// of the candidate that passed the most checks (earliest on ties).
pub fn resolve_conventions(
    p: &PencilData,
    skeleton: &Skeleton,
    space: &SearchSpace,
) -> Result<Resolution> {
    let total = space.len();
    let mut best: Option<InvariantReport> = None;
    // distinct assignments often realize the same curves (no boundary pairs
    // when b = 1, for instance); verify each distinct diagram once
    let mut seen: HashMap<[Vec<DiagramCurve>; 3], bool> = HashMap::new();
    for (n, a) in space.candidates().enumerate() {
        let families = skeleton.realize(&a)?;
        if seen.get(&families) == Some(&false) {
            continue;
        }
        let report = verify_families(p, skeleton.surface(), &families, skeleton.params())?;
        if report.overall {
            return Ok(Resolution {
                assignment: a,
                candidates_tried: n + 1,
                families,
                report,
            });
        }
        seen.insert(families, false);
        if best
            .as_ref()
            .is_none_or(|b| report.passed_count() > b.passed_count())
        {
            best = Some(report);
        }
    }
    let best: Vec<CheckResult> = best.map(|r| r.checks).unwrap_or_default();
    Err(Error::NoAdmissibleConvention {
        tried: total,
        passed: best.iter().filter(|c| c.passed).count(),
        total: best.len(),
        best,
    })
}
