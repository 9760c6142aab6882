//! Fixtures shared by the benchmarks.

use pencil_trisect::{IntegerMatrix, PencilData, VanishingCycle};

/// A dense `n×n` integer matrix with entries in `-50..=50`, fixed for a given `n`.
pub fn dense_matrix(n: usize) -> IntegerMatrix {
    IntegerMatrix::from_fn(n, n, |i, j| {
        let v = ((i * 31 + j * 17 + i * j * 7) % 101) as i64 - 50;
        v.into()
    })
}

/// Genus-`h` chain pencil: cycles `a₁, b₁, a₂, …` repeated, closed off by the
/// reversed inverse sequence so the monodromy is trivial.
pub fn chain_pencil(h: usize, reps: usize) -> PencilData {
    let r = 2 * h;
    let unit = |m: usize| {
        let mut v = vec![0; r];
        v[m] = 1;
        v
    };
    let forward: Vec<VanishingCycle> = (0..reps)
        .flat_map(|_| (0..r).map(|m| VanishingCycle::positive(unit(m))))
        .collect();
    let back: Vec<VanishingCycle> = forward
        .iter()
        .rev()
        .map(|c| VanishingCycle::new(c.class.coords().to_vec(), c.chirality.flipped()))
        .collect();
    PencilData::new(h, 1, forward.into_iter().chain(back).collect()).unwrap()
}
