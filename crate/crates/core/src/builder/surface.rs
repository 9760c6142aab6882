use crate::error::{Error, Result};
use crate::homology::{symplectic_form, HomologyClass, IntegerMatrix};
use crate::pencil::PencilData;

/// Block sizes of a central surface built from a pencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub h: usize,
    pub l: usize,
    pub b: usize,
}

/// The closed genus-`g` central surface with a labelled symplectic basis.
///
/// Consecutive basis elements `(2i, 2i+1)` pair to `+1`; nothing else pairs.
/// For a pencil the blocks are, in order: south fiber `s₁…s_{2h}`, north fiber
/// `n₁…n_{2h}`, torus summands `(μᵢ,λᵢ)`, connectors `(xⱼ,yⱼ)` for every base
/// point and boundary pairs `(dⱼ,eⱼ)` for `j < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralSurface {
    layout: Option<Layout>,
    labels: Vec<String>,
}

impl CentralSurface {
    pub fn new(h: usize, l: usize, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::EmptyBaseLocus);
        }
        let mut labels = Vec::with_capacity(2 * (2 * h + 2 * b + l - 1));
        labels.extend((1..=2 * h).map(|m| format!("s{m}")));
        labels.extend((1..=2 * h).map(|m| format!("n{m}")));
        for i in 1..=l {
            labels.push(format!("mu{i}"));
            labels.push(format!("lambda{i}"));
        }
        for j in 1..=b {
            labels.push(format!("x{j}"));
            labels.push(format!("y{j}"));
        }
        for j in 1..b {
            labels.push(format!("d{j}"));
            labels.push(format!("e{j}"));
        }
        Ok(CentralSurface {
            layout: Some(Layout { h, l, b }),
            labels,
        })
    }

    pub fn for_pencil(p: &PencilData) -> Self {
        Self::new(p.genus(), p.singular_fibers(), p.base_points())
            .expect("pencils have a nonempty base locus")
    }

    /// A plain genus-`g` surface with basis `p₁,q₁,…,p_g,q_g`.
    pub fn standard(g: usize) -> Self {
        let mut labels = Vec::with_capacity(2 * g);
        for i in 1..=g {
            labels.push(format!("p{i}"));
            labels.push(format!("q{i}"));
        }
        CentralSurface {
            layout: None,
            labels,
        }
    }

    /// Recovers the surface from its basis labels, as stored in diagram JSON.
    pub fn from_labels(labels: &[String]) -> Result<Self> {
        if !labels.len().is_multiple_of(2) {
            return Err(Error::BasisMismatch(format!(
                "odd number of basis labels ({})",
                labels.len()
            )));
        }
        let standard = Self::standard(labels.len() / 2);
        if standard.labels == labels {
            return Ok(standard);
        }
        let count = |prefix: &str| {
            labels
                .iter()
                .filter(|s| {
                    s.strip_prefix(prefix)
                        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|c| c.is_ascii_digit()))
                })
                .count()
        };
        let h = count("s") / 2;
        let l = count("mu");
        let b = count("x");
        let candidate = Self::new(h, l, b).map_err(|_| {
            Error::BasisMismatch("basis labels describe no connector block".into())
        })?;
        if candidate.labels != labels {
            return Err(Error::BasisMismatch(format!(
                "unrecognised basis labels [{}]",
                labels.join(",")
            )));
        }
        Ok(candidate)
    }

    pub fn layout(&self) -> Option<Layout> {
        self.layout
    }

    pub fn genus(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form(&self) -> IntegerMatrix {
        symplectic_form(self.rank(), self.genus())
    }

    /// Intersection number of two classes; exact, failing only on overflow.
    pub fn pairing(&self, x: &HomologyClass, y: &HomologyClass) -> Result<i64> {
        let n = self.rank();
        if x.len() != n || y.len() != n {
            return Err(Error::BasisMismatch(format!(
                "pairing classes of length {} and {} on a surface of rank {n}",
                x.len(),
                y.len()
            )));
        }
        let (x, y) = (x.coords(), y.coords());
        let mut acc: i128 = 0;
        for i in 0..self.genus() {
            let (a, b) = (2 * i, 2 * i + 1);
            acc += x[a] as i128 * y[b] as i128 - x[b] as i128 * y[a] as i128;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("pairing classes"))
    }

    fn layout_or_panic(&self) -> Layout {
        self.layout.expect("block accessors need a pencil layout")
    }

    // Block offsets. All indices below are zero-based.

    pub fn south(&self, m: usize) -> usize {
        m
    }

    pub fn north(&self, m: usize) -> usize {
        2 * self.layout_or_panic().h + m
    }

    pub fn mu(&self, i: usize) -> usize {
        4 * self.layout_or_panic().h + 2 * i
    }

    pub fn lambda(&self, i: usize) -> usize {
        self.mu(i) + 1
    }

    pub fn x(&self, j: usize) -> usize {
        let Layout { h, l, .. } = self.layout_or_panic();
        4 * h + 2 * l + 2 * j
    }

    pub fn y(&self, j: usize) -> usize {
        self.x(j) + 1
    }

    pub fn d(&self, j: usize) -> usize {
        let Layout { h, l, b } = self.layout_or_panic();
        4 * h + 2 * l + 2 * b + 2 * j
    }

    pub fn e(&self, j: usize) -> usize {
        self.d(j) + 1
    }

    pub fn unit(&self, index: usize) -> HomologyClass {
        HomologyClass::unit(self.rank(), index)
    }

    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass::zero(self.rank())
    }
}
