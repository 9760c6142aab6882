//! Built-in example pencils with their expected invariants.
//!
//! Entries are checked against recomputation every time the corpus is loaded.

use serde::Serialize;

use crate::builder::{trisection_parameters, TrisectionParameters};
use crate::error::{Error, Result};
use crate::homology::{Chirality, Cokernel};
use crate::pencil::{check_boundary_variation, check_monodromy, expected_invariants, PencilData,
    PencilInvariants, VanishingCycle};

/// Prefix that lets a command-line argument name a corpus entry instead of a file.
pub const URI_SCHEME: &str = "corpus:";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub pencil: PencilData,
    pub expected: PencilInvariants,
    pub params: TrisectionParameters,
    /// Whether the cycles satisfy the monodromy relation. Entries marked
    /// `false` are deliberate counterexamples.
    pub valid: bool,
    pub note: &'static str,
}

fn pencil(name: &str, h: usize, b: usize, cycles: Vec<VanishingCycle>) -> PencilData {
    PencilData::new(h, b, cycles)
        .expect("corpus classes have the right length")
        .with_name(name)
}

fn genus1_cycles(count: usize) -> Vec<VanishingCycle> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                VanishingCycle::positive(vec![1, 0]).with_label("a1")
            } else {
                VanishingCycle::positive(vec![0, 1]).with_label("b1")
            }
        })
        .collect()
}

struct Raw {
    name: &'static str,
    pencil: PencilData,
    euler: i64,
    h1: Cokernel,
    g: usize,
    k: usize,
    valid: bool,
    note: &'static str,
}

fn raw_entries() -> Vec<Raw> {
    let trivial = Cokernel {
        free_rank: 0,
        torsion: vec![],
    };
    vec![
        Raw {
            name: "cp2_lines",
            pencil: pencil("cp2_lines", 0, 1, vec![]),
            euler: 3,
            h1: trivial.clone(),
            g: 1,
            k: 0,
            valid: true,
            note: "pencil of lines in CP2: disk fibers, one base point, no critical points; \
                   gives the genus-1 trisection of CP2",
        },
        Raw {
            name: "cp2_conics",
            pencil: pencil(
                "cp2_conics",
                0,
                4,
                vec![
                    VanishingCycle::positive(vec![1, 1, 0]).with_label("delta1+delta2"),
                    VanishingCycle::positive(vec![0, 1, 1]).with_label("delta2+delta3"),
                    VanishingCycle::positive(vec![1, 0, 1]).with_label("delta1+delta3"),
                ],
            ),
            euler: 3,
            h1: trivial.clone(),
            g: 10,
            k: 3,
            valid: true,
            note: "pencil of conics through four points of CP2; four-holed sphere fiber, \
                   monodromy is the lantern relation",
        },
        Raw {
            name: "genus1_pencil",
            pencil: pencil("genus1_pencil", 1, 1, genus1_cycles(12)),
            euler: 11,
            h1: trivial.clone(),
            g: 15,
            k: 2,
            valid: true,
            note: "pencil of cubics with one base point, (t_a t_b)^6 = t_delta on the \
                   one-holed torus; total space CP2 # 9(-CP2) blown down once",
        },
        Raw {
            name: "genus1_truncated",
            pencil: pencil("genus1_truncated", 1, 1, genus1_cycles(11)),
            euler: 10,
            h1: trivial.clone(),
            g: 14,
            k: 2,
            valid: false,
            note: "genus1_pencil with the last twist removed; the monodromy is not trivial, \
                   so this is not a pencil",
        },
        Raw {
            name: "cp2_lines_achiral",
            pencil: pencil(
                "cp2_lines_achiral",
                1,
                1,
                vec![
                    VanishingCycle::new(vec![1, 0], Chirality::Positive).with_label("a1+"),
                    VanishingCycle::new(vec![1, 0], Chirality::Negative).with_label("a1-"),
                ],
            ),
            euler: 1,
            h1: Cokernel {
                free_rank: 1,
                torsion: vec![],
            },
            g: 5,
            k: 2,
            valid: true,
            note: "a cancelling pair of critical points of opposite chirality on the same \
                   cycle; exercises the achiral twist sign",
        },
        Raw {
            name: "quadric_pencil",
            pencil: pencil(
                "quadric_pencil",
                0,
                2,
                vec![
                    VanishingCycle::positive(vec![1]).with_label("delta1"),
                    VanishingCycle::positive(vec![1]).with_label("delta1"),
                ],
            ),
            euler: 4,
            h1: trivial,
            g: 5,
            k: 1,
            valid: true,
            note: "pencil of (1,1)-curves on S2 x S2; annulus fibers, two base points, \
                   two parallel core twists",
        },
    ]
}

fn check_entry(r: Raw) -> Result<CorpusEntry> {
    let p = &r.pencil;
    let computed = expected_invariants(p);
    let params = trisection_parameters(p.genus(), p.base_points(), p.singular_fibers())?;
    let valid = check_monodromy(p).passed && check_boundary_variation(p).passed;
    let mismatch = |what: &str, stored: String, found: String| {
        Error::Invariant(format!(
            "corpus entry {}: stored {what} {stored} but recomputed {found}",
            r.name
        ))
    };
    if computed.euler != r.euler {
        return Err(mismatch("euler", r.euler.to_string(), computed.euler.to_string()));
    }
    if computed.h1 != r.h1 {
        return Err(mismatch("H1", r.h1.to_string(), computed.h1.to_string()));
    }
    if (params.g, params.k) != (r.g, r.k) {
        return Err(mismatch(
            "(g,k)",
            format!("({},{})", r.g, r.k),
            format!("({},{})", params.g, params.k),
        ));
    }
    if valid != r.valid {
        return Err(mismatch("validity", r.valid.to_string(), valid.to_string()));
    }
    Ok(CorpusEntry {
        name: r.name,
        pencil: r.pencil,
        expected: computed,
        params,
        valid,
        note: r.note,
    })
}

/// All entries, in a fixed order. Fails if any stored value disagrees with
/// recomputation.
pub fn list() -> Result<Vec<CorpusEntry>> {
    raw_entries().into_iter().map(check_entry).collect()
}

pub fn names() -> Vec<&'static str> {
    raw_entries().iter().map(|r| r.name).collect()
}

pub fn get(name: &str) -> Result<CorpusEntry> {
    let raw = raw_entries()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))?;
    check_entry(raw)
}

/// `Some(name)` when `arg` uses the `corpus:` scheme.
pub fn strip_uri(arg: &str) -> Option<&str> {
    arg.strip_prefix(URI_SCHEME)
}
