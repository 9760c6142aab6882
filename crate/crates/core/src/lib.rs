//! Trisection diagrams from combinatorial Lefschetz pencils, with an exact
//! integer-homology verifier.
//!
//! ```
//! use pencil_trisect::{build_diagram, corpus, verify_diagram};
//!
//! let p = corpus::get("cp2_lines").unwrap().pencil;
//! let d = build_diagram(&p).unwrap();
//! assert!(verify_diagram(&p, &d).unwrap().overall);
//! ```

pub mod builder;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod pencil;
pub mod render;
pub mod verify;

pub use builder::{
    build_central_surface, build_diagram, build_diagram_with, trisection_parameters,
    CentralSurface, DiagramCurve, Support, TrisectionDiagram, TrisectionParameters,
};
pub use error::{Error, Result};
pub use homology::{Chirality, Cokernel, HomologyClass, IntegerMatrix};
pub use pencil::{
    check_boundary_variation, check_monodromy, expected_invariants, homological_monodromy,
    parse_pencil, PencilData, VanishingCycle,
};
pub use render::render_svg;
pub use verify::{verify_diagram, CheckResult, InvariantReport};
