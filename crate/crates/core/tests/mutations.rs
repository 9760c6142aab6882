//! Single-curve corruptions of every valid corpus diagram must be caught.

use pencil_trisect::homology::cokernel_divisors;
use pencil_trisect::*;

fn in_span(rank: usize, family: &[DiagramCurve], class: &HomologyClass) -> bool {
    let mut classes: Vec<HomologyClass> = family.iter().map(|c| c.class.clone()).collect();
    let before = cokernel_divisors(rank, &classes).unwrap();
    classes.push(class.clone());
    cokernel_divisors(rank, &classes).unwrap() == before
}

struct Mutant {
    what: String,
    families: [Vec<DiagramCurve>; 3],
}

/// Every scaling by 2, every deletion, a μ/λ (or x/y) swap in family 1 and
/// cross-family substitutions. A substitution whose class already lies in the
/// span of the family it lands in is a change of basis of the same lattice,
/// invisible to homology by design, so it is not counted as a mutant.
fn mutants(d: &TrisectionDiagram) -> Vec<Mutant> {
    let mut out = Vec::new();
    for f in 0..3 {
        for i in 0..d.families[f].len() {
            let mut fams = d.families.clone();
            fams[f][i].class = fams[f][i].class.scaled(2).unwrap();
            out.push(Mutant {
                what: format!("scale family {} curve {i}", f + 1),
                families: fams,
            });
            let mut fams = d.families.clone();
            fams[f].remove(i);
            out.push(Mutant {
                what: format!("drop family {} curve {i}", f + 1),
                families: fams,
            });
        }
    }

    let labels = d.surface.labels();
    let swaps: Vec<(usize, usize)> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.starts_with("mu") || (l.starts_with('x') && !labels.iter().any(|m| m.starts_with("mu"))))
        .map(|(i, _)| (i, i + 1))
        .collect();
    for (a, b) in swaps {
        for i in 0..d.families[0].len() {
            let c = d.families[0][i].class.coords();
            if c[a] == 0 && c[b] == 0 {
                continue;
            }
            let mut fams = d.families.clone();
            fams[0][i].class.coords_mut().swap(a, b);
            if fams[0][i].class != d.families[0][i].class {
                out.push(Mutant {
                    what: format!("swap {}<->{} in family 1 curve {i}", labels[a], labels[b]),
                    families: fams,
                });
            }
        }
    }

    for (from, to) in [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)] {
        for i in 0..d.families[to].len() {
            if in_span(d.surface.rank(), &d.families[to], &d.families[from][i].class) {
                continue;
            }
            let mut fams = d.families.clone();
            fams[to][i] = d.families[from][i].clone();
            out.push(Mutant {
                what: format!("family {} curve {i} replaced by family {}'s", to + 1, from + 1),
                families: fams,
            });
        }
    }
    out
}

#[test]
fn every_mutation_is_detected() {
    for e in corpus::list().unwrap().into_iter().filter(|e| e.valid) {
        let d = build_diagram(&e.pencil).unwrap();
        let ms = mutants(&d);
        assert!(ms.len() >= 10, "{}: only {} mutants", e.name, ms.len());
        let kinds = ["scale", "drop", "swap", "replaced"];
        for k in kinds {
            assert!(ms.iter().any(|m| m.what.contains(k)), "{}: no {k} mutant", e.name);
        }
        for m in ms {
            let mutated = TrisectionDiagram {
                families: m.families,
                ..d.clone()
            };
            let r = verify_diagram(&e.pencil, &mutated).unwrap();
            assert!(!r.overall, "{}: `{}` passed", e.name, m.what);
            assert_eq!(r.certification, "NOT-CERTIFIED");
            let failing: Vec<&str> = r.failing().map(|c| c.name.as_str()).collect();
            assert!(!failing.is_empty(), "{}: `{}`", e.name, m.what);
        }
    }
}

#[test]
fn failing_checks_are_named() {
    let e = corpus::get("cp2_lines").unwrap();
    let d = build_diagram(&e.pencil).unwrap();
    let named = |fams: [Vec<DiagramCurve>; 3]| -> Vec<String> {
        let m = TrisectionDiagram { families: fams, ..d.clone() };
        verify_diagram(&e.pencil, &m)
            .unwrap()
            .failing()
            .map(|c| c.name.clone())
            .collect()
    };

    let mut fams = d.families.clone();
    fams[0][0].class = fams[0][0].class.scaled(2).unwrap();
    let f = named(fams);
    assert!(f.contains(&"cut_system[1]".to_string()), "{f:?}");

    let mut fams = d.families.clone();
    fams[2].clear();
    let f = named(fams);
    assert!(f.contains(&"cut_system[3]".to_string()), "{f:?}");

    // x and y swapped in family 1 makes it parallel to family 2
    let mut fams = d.families.clone();
    fams[0][0].class.coords_mut().swap(0, 1);
    let f = named(fams);
    assert!(f.contains(&"pairwise[1,2]".to_string()), "{f:?}");
}
