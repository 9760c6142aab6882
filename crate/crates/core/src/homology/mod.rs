//! Exact integer homology of compact surfaces: fiber bases, intersection
//! forms, Dehn-twist transvections and Smith normal form.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use matrix::IntegerMatrix;
pub use snf::{
    cokernel_divisors, cokernel_of, smith_divisors, smith_normal_form, Cokernel,
    SmithDecomposition,
};

/// Ordered basis `a₁,b₁,…,a_h,b_h,δ₁,…,δ_{b−1}` of `H₁(F_{h,b})`.
///
/// The last boundary class is not a basis element; it is `δ_b = −(δ₁+⋯+δ_{b−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberBasis {
    h: usize,
    b: usize,
    labels: Vec<String>,
}

impl FiberBasis {
    pub fn new(h: usize, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::NoBoundary);
        }
        let mut labels = Vec::with_capacity(2 * h + b - 1);
        for i in 1..=h {
            labels.push(format!("a{i}"));
            labels.push(format!("b{i}"));
        }
        labels.extend((1..b).map(|j| format!("delta{j}")));
        Ok(FiberBasis { h, b, labels })
    }

    pub fn genus(&self) -> usize {
        self.h
    }

    pub fn boundary_components(&self) -> usize {
        self.b
    }

    /// `2h + b − 1`
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of `δⱼ` for `j` in `1..b`.
    pub fn boundary_index(&self, j: usize) -> usize {
        2 * self.h + j - 1
    }

    /// The class of the `j`-th boundary circle, `j` in `1..=b`.
    pub fn boundary_class(&self, j: usize) -> HomologyClass {
        let mut coords = vec![0; self.rank()];
        if j < self.b {
            coords[self.boundary_index(j)] = 1;
        } else {
            for k in 1..self.b {
                coords[self.boundary_index(k)] = -1;
            }
        }
        HomologyClass::new(coords)
    }
}

pub fn fiber_basis(h: usize, b: usize) -> Result<FiberBasis> {
    FiberBasis::new(h, b)
}

/// A homology class as coordinates in some declared basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyClass(Vec<i64>);

impl HomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        HomologyClass(coords)
    }

    pub fn zero(len: usize) -> Self {
        HomologyClass(vec![0; len])
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut c = vec![0; len];
        c[index] = 1;
        HomologyClass(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// gcd of the coordinates, 0 for the zero class.
    pub fn content(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &x| num_integer::gcd(g, x.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// `self + k·other`, failing on overflow or a length mismatch.
    pub fn add_scaled(&mut self, k: i64, other: &HomologyClass) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "adding a class of length {} to one of length {}",
                other.len(),
                self.len()
            )));
        }
        if k == 0 {
            return Ok(());
        }
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a = b
                .checked_mul(k)
                .and_then(|t| a.checked_add(t))
                .ok_or(Error::Overflow("combining homology classes"))?;
        }
        Ok(())
    }

    pub fn scaled(&self, k: i64) -> Result<HomologyClass> {
        let mut out = HomologyClass::zero(self.len());
        out.add_scaled(k, self)?;
        Ok(out)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Orientation of a Lefschetz critical point's local model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    /// The usual complex model, a right-handed Dehn twist.
    Positive,
    /// Orientation-reversed (achiral) model, a left-handed twist.
    Negative,
}

impl Chirality {
    pub fn sign(self) -> i64 {
        match self {
            Chirality::Positive => 1,
            Chirality::Negative => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(Chirality::Positive),
            -1 => Ok(Chirality::Negative),
            other => Err(Error::Chirality(other)),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Positive => Chirality::Negative,
            Chirality::Negative => Chirality::Positive,
        }
    }
}

impl Serialize for Chirality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.sign())
    }
}

impl<'de> Deserialize<'de> for Chirality {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Chirality::from_sign(v).map_err(|_| serde::de::Error::custom("chirality must be ±1"))
    }
}

/// Algebraic intersection pairing on the fiber: `⟨aᵢ,bᵢ⟩ = 1`, boundary
/// classes in the radical.
pub fn fiber_intersection_form(basis: &FiberBasis) -> IntegerMatrix {
    symplectic_form(basis.rank(), basis.genus())
}

/// Standard form of size `n` whose first `pairs` consecutive pairs are
/// symplectic and whose remaining coordinates are radical.
pub(crate) fn symplectic_form(n: usize, pairs: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(n, n);
    for i in 0..pairs {
        m[(2 * i, 2 * i + 1)] = BigInt::from(1);
        m[(2 * i + 1, 2 * i)] = BigInt::from(-1);
    }
    m
}

/// `⟨x, y⟩ = xᵀ·form·y`.
pub fn pairing(form: &IntegerMatrix, x: &[i64], y: &[i64]) -> Result<BigInt> {
    if !form.is_square() || x.len() != form.rows() || y.len() != form.rows() {
        return Err(Error::Dimension(format!(
            "pairing vectors of length {} and {} with a {}x{} form",
            x.len(),
            y.len(),
            form.rows(),
            form.cols()
        )));
    }
    let fy = form.apply(y)?;
    Ok(x.iter()
        .zip(&fy)
        .filter(|(&a, _)| a != 0)
        .map(|(&a, b)| b * a)
        .sum())
}

/// Matrix of `x ↦ x + chirality·⟨x,c⟩·c`, the action of a Dehn twist about
/// `c` on first homology.
pub fn transvection_matrix(
    form: &IntegerMatrix,
    c: &HomologyClass,
    chirality: Chirality,
) -> Result<IntegerMatrix> {
    let n = form.rows();
    if !form.is_square() || c.len() != n {
        return Err(Error::Dimension(format!(
            "class of length {} against a {}x{} form",
            c.len(),
            form.rows(),
            form.cols()
        )));
    }
    // column j is e_j + χ⟨e_j, c⟩ c, and ⟨e_j, c⟩ = (form·c)_j
    let fc = form.apply(c.coords())?;
    let sign = BigInt::from(chirality.sign());
    Ok(IntegerMatrix::from_fn(n, n, |i, j| {
        let base = if i == j { BigInt::from(1) } else { BigInt::zero() };
        if c.coords()[i] == 0 || fc[j].is_zero() {
            base
        } else {
            base + &sign * &fc[j] * c.coords()[i]
        }
    }))
}
