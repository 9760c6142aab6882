//! Smith normal form over the integers and the finitely generated abelian
//! groups it presents.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntegerMatrix;
use super::HomologyClass;
use crate::error::{Error, Result};

/// `D = U * M * V` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D`, `min(rows, cols)` of them, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows());
    let mut v = IntegerMatrix::identity(m.cols());
    reduce(&mut d, Some(&mut u), Some(&mut v));
    SmithDecomposition { u, d, v }
}

/// Nonzero invariant factors only, without tracking the transforms.
pub fn smith_divisors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    let rank = reduce(&mut d, None, None);
    (0..rank).map(|i| d[(i, i)].clone()).collect()
}

fn pivot_position(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows() {
        for c in t..a.cols() {
            let e = &a[(r, c)];
            if e.is_zero() {
                continue;
            }
            // strict comparison keeps the lowest (row, col) among ties
            if best.is_none_or(|(br, bc)| e.abs() < a[(br, bc)].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Reduces `a` in place to Smith form and returns its rank. Row operations are
/// mirrored into `u`, column operations into `v`.
fn reduce(
    a: &mut IntegerMatrix,
    mut u: Option<&mut IntegerMatrix>,
    mut v: Option<&mut IntegerMatrix>,
) -> usize {
    let limit = a.rows().min(a.cols());
    let mut t = 0;
    while t < limit {
        let Some((pr, pc)) = pivot_position(a, t) else {
            break;
        };
        a.swap_rows(t, pr);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(t, pr);
        }
        a.swap_cols(t, pc);
        if let Some(v) = v.as_deref_mut() {
            v.swap_cols(t, pc);
        }

        let mut settled = true;
        let p = a[(t, t)].clone();
        for r in t + 1..a.rows() {
            if a[(r, t)].is_zero() {
                continue;
            }
            let q = -a[(r, t)].div_floor(&p);
            a.add_row_multiple(r, t, &q);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(r, t, &q);
            }
            settled &= a[(r, t)].is_zero();
        }
        for c in t + 1..a.cols() {
            if a[(t, c)].is_zero() {
                continue;
            }
            let q = -a[(t, c)].div_floor(&p);
            a.add_col_multiple(c, t, &q);
            if let Some(v) = v.as_deref_mut() {
                v.add_col_multiple(c, t, &q);
            }
            settled &= a[(t, c)].is_zero();
        }
        if !settled {
            // remainders are smaller than the pivot, so the next pick makes progress
            continue;
        }

        let offender = (t + 1..a.rows())
            .find(|&r| (t + 1..a.cols()).any(|c| !a[(r, c)].is_multiple_of(&p)));
        if let Some(r) = offender {
            let one = BigInt::one();
            a.add_row_multiple(t, r, &one);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(t, r, &one);
            }
            continue;
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    t
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/tₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl Cokernel {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free_of_rank(&self, rank: usize) -> bool {
        self.free_rank == rank && self.torsion.is_empty()
    }
}

impl fmt::Display for Cokernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join("+"))
    }
}

/// Structure of `Z^rows / column span of m`.
pub fn cokernel_of(m: &IntegerMatrix) -> Result<Cokernel> {
    let divisors = smith_divisors(m);
    let torsion = divisors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().ok_or(Error::Overflow("reporting a torsion coefficient")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cokernel {
        free_rank: m.rows() - divisors.len(),
        torsion,
    })
}

/// Structure of `Z^ambient_rank / ⟨columns⟩`.
pub fn cokernel_divisors(ambient_rank: usize, columns: &[HomologyClass]) -> Result<Cokernel> {
    let cols: Vec<&[i64]> = columns.iter().map(HomologyClass::coords).collect();
    let m = IntegerMatrix::from_columns(ambient_rank, &cols)?;
    cokernel_of(&m)
}
