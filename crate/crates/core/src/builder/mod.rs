//! From pencil data to a trisection diagram: parameters, the block-structured
//! central surface and the three curve families.

mod conventions;
mod diagram;
mod surface;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pencil::PencilData;

pub use conventions::{
    resolve_conventions, role_permutations, Assignment, BoundaryPairChoice, ConnectorRole,
    Resolution, SearchSpace, Skeleton, SEARCH_ORDER,
};
pub use diagram::{DiagramCurve, Provenance, Support, TrisectionDiagram};
pub use surface::{CentralSurface, Layout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrisectionParameters {
    pub g: usize,
    pub k: usize,
}

impl TrisectionParameters {
    /// `χ = 2 + g − 3k`
    pub fn euler(&self) -> i64 {
        2 + self.g as i64 - 3 * self.k as i64
    }
}

/// `g = 2h + 2b + l − 1`, `k = 2h + b − 1`.
pub fn trisection_parameters(h: usize, b: usize, l: usize) -> Result<TrisectionParameters> {
    if b == 0 {
        return Err(Error::EmptyBaseLocus);
    }
    let g = 2usize
        .checked_mul(h)
        .and_then(|x| x.checked_add(2usize.checked_mul(b)?))
        .and_then(|x| x.checked_add(l))
        .ok_or(Error::Overflow("trisection genus"))?
        - 1;
    let k = 2 * h + b - 1;
    Ok(TrisectionParameters { g, k })
}

pub fn build_central_surface(p: &PencilData) -> CentralSurface {
    CentralSurface::for_pencil(p)
}

/// Builds the diagram, searching the full default convention space.
pub fn build_diagram(p: &PencilData) -> Result<TrisectionDiagram> {
    build_diagram_with(p, &SearchSpace::default())
}

pub fn build_diagram_with(p: &PencilData, space: &SearchSpace) -> Result<TrisectionDiagram> {
    let skeleton = Skeleton::new(p)?;
    let res = resolve_conventions(p, &skeleton, space)?;
    Ok(TrisectionDiagram {
        surface: skeleton.surface().clone(),
        params: skeleton.params(),
        families: res.families,
        provenance: Provenance {
            pencil: p.name().map(str::to_owned),
            h: p.genus(),
            b: p.base_points(),
            l: p.singular_fibers(),
            assignment: res.assignment,
            candidates_tried: res.candidates_tried,
            search_order: SEARCH_ORDER.to_string(),
        },
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::pencil::VanishingCycle;
    use crate::verify::verify_diagram;

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

    fn genus1(twists: usize) -> PencilData {
        let cycles = (0..twists)
            .map(|i| VanishingCycle::positive(if i % 2 == 0 { vec![1, 0] } else { vec![0, 1] }))
            .collect();
        PencilData::new(1, 1, cycles).unwrap()
    }

    fn classes(d: &TrisectionDiagram, f: usize) -> Vec<Vec<i64>> {
        d.families[f].iter().map(|c| c.class.coords().to_vec()).collect()
    }

    #[test]
    fn parameter_examples() {
        let p = |h, b, l| {
            let t = trisection_parameters(h, b, l).unwrap();
            (t.g, t.k)
        };
        assert_eq!(p(0, 1, 0), (1, 0));
        assert_eq!(p(0, 4, 3), (10, 3));
        assert_eq!(p(1, 9, 12), (31, 10));
        assert!(matches!(trisection_parameters(1, 0, 3), Err(Error::EmptyBaseLocus)));
        assert_eq!(
            Error::EmptyBaseLocus.to_string(),
            "base locus must be nonempty (b = 0)"
        );
    }

    #[test]
    fn cp2_is_the_standard_diagram() {
        let p = PencilData::new(0, 1, vec![]).unwrap();
        let d = build_diagram(&p).unwrap();
        assert_eq!(d.surface.labels(), ["x1", "y1"]);
        assert_eq!(classes(&d, 0), vec![vec![1, 0]]);
        assert_eq!(classes(&d, 1), vec![vec![0, 1]]);
        assert_eq!(classes(&d, 2), vec![vec![1, 1]]);
        assert_eq!(d.provenance.candidates_tried, 1);
        assert_eq!(
            d.provenance.assignment.connector_roles,
            [ConnectorRole::X, ConnectorRole::Y, ConnectorRole::XPlusY]
        );
    }

    #[test]
    fn corpus_shapes_build_and_verify() {
        let quadric =
            PencilData::new(0, 2, vec![VanishingCycle::positive(vec![1]); 2]).unwrap();
        let achiral = PencilData::new(
            1,
            1,
            vec![
                VanishingCycle::positive(vec![1, 0]),
                VanishingCycle::new(vec![1, 0], crate::homology::Chirality::Negative),
            ],
        )
        .unwrap();
        for p in [conics(), genus1(12), quadric, achiral] {
            let d = build_diagram(&p).unwrap();
            let r = verify_diagram(&p, &d).unwrap();
            assert!(r.overall, "{}", r.to_json());
            for fam in &d.families {
                assert_eq!(fam.len(), d.params.g);
                assert!(fam.iter().all(|c| c.class.is_primitive()));
            }
        }
    }

    #[test]
    fn genus1_sizes() {
        let d = build_diagram(&genus1(12)).unwrap();
        assert_eq!(d.surface.rank(), 30);
        assert!(d.families.iter().all(|f| f.len() == 15));
        let r = verify_diagram(&genus1(12), &d).unwrap();
        assert_eq!(r.euler_diagram, 11);
        assert!(r.h1_diagram.is_trivial());
    }

    #[test]
    fn truncated_pencil_has_no_convention() {
        let err = build_diagram(&genus1(11)).unwrap_err();
        match err {
            Error::NoAdmissibleConvention { tried, best, .. } => {
                assert_eq!(tried, SearchSpace::default().len());
                assert!(best.iter().any(|c| !c.passed));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn restricted_search_can_exhaust() {
        let mut space = SearchSpace::single(&Assignment::default());
        space.connector_overrides = BTreeMap::from([(
            1,
            [ConnectorRole::Y, ConnectorRole::X, ConnectorRole::XPlusY],
        )]);
        assert!(matches!(
            build_diagram_with(&conics(), &space),
            Err(Error::NoAdmissibleConvention { tried: 1, .. })
        ));
    }

    #[test]
    fn arc_doubles_are_parallel_in_family_two() {
        let d = build_diagram(&conics()).unwrap();
        let copies = d.families[1]
            .iter()
            .filter(|c| matches!(c.support, Support::ParallelCopy(_)))
            .count();
        assert_eq!(copies, 3);
    }

    #[test]
    fn no_boundary_pairs_when_b_is_one() {
        let d = build_diagram(&genus1(12)).unwrap();
        assert!(!d
            .curves()
            .any(|c| matches!(c.support, Support::BoundaryPairCurve(_))));
    }

    #[test]
    fn h_zero_has_no_arc_doubles() {
        let d = build_diagram(&conics()).unwrap();
        assert!(!d.curves().any(|c| matches!(c.support, Support::ArcDouble(_))));
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = build_diagram(&conics().with_name("conics")).unwrap();
        let text = d.to_json();
        let back = TrisectionDiagram::from_json(text.as_bytes()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), text);
    }
}
