//! Contact surgery diagrams, their reduction to contact (±1)-surgeries, and the
//! smooth 4-dimensional handlebody they describe.
//!
//! A diagram is recorded at the level of linking numbers: each Legendrian component
//! carries `tb`, `rot` and a contact surgery coefficient, and the diagram carries the
//! symmetric matrix of topological linking numbers (diagonal ignored) plus the number
//! of 1-handles of the ambient handlebody.
//!
//! Linking bookkeeping during reduction follows the push-off rule: a Legendrian
//! push-off `L'` of `L` has `lk(L, L') = tb(L)` and inherits every linking number of
//! `L` with third components; stabilizations change `tb` and `rot` but no linking number.

mod io;
mod reduce;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{inertia, ArithError, Inertia, QSymMatrix, Rat};

pub use io::{parse_diagram, DiagramFile};
pub use reduce::{reduce_component, reduce_diagram, ComponentReduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("unsupported contact surgery coefficient {coeff} on component {id:?}")]
    UnsupportedCoefficient { id: String, coeff: Rat },
    #[error("component {id:?} has coefficient {coeff}, expected +1 or -1")]
    NotReduced { id: String, coeff: Rat },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Which of the two extensions of a rational contact surgery to use; fixes the sign of
/// every stabilization introduced by the reduction (`rot` changes by `(-1)^variant`).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(into = "u8", try_from = "u8")]
pub enum Variant {
    #[default]
    Zero,
    One,
}

impl Variant {
    pub fn index(self) -> u8 {
        match self {
            Variant::Zero => 0,
            Variant::One => 1,
        }
    }

    /// `(-1)^variant`
    pub fn sign(self) -> i64 {
        match self {
            Variant::Zero => 1,
            Variant::One => -1,
        }
    }

    pub const BOTH: [Variant; 2] = [Variant::Zero, Variant::One];
}

impl From<Variant> for u8 {
    fn from(v: Variant) -> u8 {
        v.index()
    }
}

impl TryFrom<u8> for Variant {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            0 => Ok(Variant::Zero),
            1 => Ok(Variant::One),
            _ => Err(format!("variant must be 0 or 1, got {v}")),
        }
    }
}

/// Linking pattern of the Legendrian surgery chain replacing a negative rational
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainConvention {
    /// Each knot is a Legendrian push-off of the previous (already stabilized) knot.
    #[default]
    Chain,
    /// Each knot is a push-off of the original knot, stabilized as often as its
    /// counterpart in [`ChainConvention::Chain`].
    Parallel,
}

impl std::str::FromStr for ChainConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "chain" => Ok(ChainConvention::Chain),
            "parallel" => Ok(ChainConvention::Parallel),
            _ => Err(format!("unknown chain convention {s:?}")),
        }
    }
}

impl std::fmt::Display for ChainConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ChainConvention::Chain => "chain",
            ChainConvention::Parallel => "parallel",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendrianComponent {
    pub id: String,
    pub tb: i64,
    pub rot: i64,
    /// Contact surgery coefficient, measured against the contact framing.
    pub coeff: Rat,
    /// Stabilizations applied by reduction bookkeeping (zero for input components).
    #[serde(default, skip_serializing_if = "is_zero")]
    pub stabilizations: u32,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

impl LegendrianComponent {
    pub fn new(id: impl Into<String>, tb: i64, rot: i64, coeff: Rat) -> Self {
        LegendrianComponent {
            id: id.into(),
            tb,
            rot,
            coeff,
            stabilizations: 0,
        }
    }

    /// Smooth surgery coefficient `tb + coeff`.
    pub fn smooth_framing(&self) -> Rat {
        Rat::int(self.tb) + &self.coeff
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactDiagram {
    one_handles: u32,
    components: Vec<LegendrianComponent>,
    linking: Vec<Vec<i64>>,
}

impl ContactDiagram {
    /// Validates shape and symmetry of `linking` and that no coefficient is zero.
    /// The diagonal of `linking` is ignored and stored as zero.
    pub fn new(
        one_handles: u32,
        components: Vec<LegendrianComponent>,
        mut linking: Vec<Vec<i64>>,
    ) -> Result<Self, SurgeryError> {
        let n = components.len();
        if linking.len() != n || linking.iter().any(|r| r.len() != n) {
            return Err(SurgeryError::InvalidDiagram(format!(
                "linking matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            linking[i][i] = 0;
            for j in (i + 1)..n {
                if linking[i][j] != linking[j][i] {
                    return Err(SurgeryError::InvalidDiagram(format!(
                        "linking matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        for (i, c) in components.iter().enumerate() {
            if c.coeff.is_zero() {
                return Err(SurgeryError::InvalidDiagram(format!(
                    "component {:?} has coefficient 0",
                    c.id
                )));
            }
            if components[..i].iter().any(|d| d.id == c.id) {
                return Err(SurgeryError::InvalidDiagram(format!(
                    "duplicate component id {:?}",
                    c.id
                )));
            }
        }
        Ok(ContactDiagram {
            one_handles,
            components,
            linking,
        })
    }

    pub fn empty(one_handles: u32) -> Self {
        ContactDiagram {
            one_handles,
            components: Vec::new(),
            linking: Vec::new(),
        }
    }

    pub fn one_handles(&self) -> u32 {
        self.one_handles
    }

    pub fn components(&self) -> &[LegendrianComponent] {
        &self.components
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Reorders components (and linking rows/columns) so that new position `k`
    /// holds old component `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, SurgeryError> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(SurgeryError::InvalidDiagram("not a permutation".into()));
        }
        Ok(ContactDiagram {
            one_handles: self.one_handles,
            components: perm.iter().map(|&p| self.components[p].clone()).collect(),
            linking: perm
                .iter()
                .map(|&a| perm.iter().map(|&b| self.linking[a][b]).collect())
                .collect(),
        })
    }
}

/// A diagram all of whose coefficients are ±1, with the count of (+1)-surgeries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedDiagram {
    pub diagram: ContactDiagram,
    pub q_count: usize,
    /// For each reduced component, the id of the input component it came from.
    pub provenance: Vec<String>,
}

impl ReducedDiagram {
    /// Wraps a diagram that is already reduced.
    pub fn from_reduced(diagram: ContactDiagram) -> Result<Self, SurgeryError> {
        let mut q_count = 0;
        for c in diagram.components() {
            if c.coeff == Rat::one() {
                q_count += 1;
            } else if c.coeff != Rat::int(-1) {
                return Err(SurgeryError::NotReduced {
                    id: c.id.clone(),
                    coeff: c.coeff.clone(),
                });
            }
        }
        let provenance = diagram.components().iter().map(|c| c.id.clone()).collect();
        Ok(ReducedDiagram {
            diagram,
            q_count,
            provenance,
        })
    }
}

/// Integer intersection data of the 4-manifold built from a reduced diagram, together
/// with the evaluation of `c1` on the 2-handle basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifoldData {
    pub q: QSymMatrix,
    pub c1: Vec<i64>,
    pub labels: Vec<String>,
    pub one_handles: u32,
    pub chi: i64,
    pub inertia: Inertia,
    pub q_count: usize,
}

impl FourManifoldData {
    /// Assembles the data directly from an integer form, for handlebodies that are not
    /// given by a contact diagram.
    pub fn from_form(
        q_rows: &[Vec<i64>],
        c1: Vec<i64>,
        labels: Vec<String>,
        one_handles: u32,
        q_count: usize,
    ) -> Result<Self, SurgeryError> {
        let q = QSymMatrix::from_int_rows(q_rows)?;
        if c1.len() != q.dim() || labels.len() != q.dim() {
            return Err(ArithError::DimensionMismatch {
                expected: q.dim(),
                found: c1.len().min(labels.len()),
            }
            .into());
        }
        let inertia = inertia(&q);
        Ok(FourManifoldData {
            chi: 1 - one_handles as i64 + q.dim() as i64,
            q,
            c1,
            labels,
            one_handles,
            inertia,
            q_count,
        })
    }

    pub fn signature(&self) -> i64 {
        self.inertia.signature()
    }

    pub fn c1_rat(&self) -> Vec<Rat> {
        self.c1.iter().map(|&x| Rat::int(x)).collect()
    }

    /// The intersection form as integers.
    pub fn int_form(&self) -> Vec<Vec<i64>> {
        (0..self.q.dim())
            .map(|i| {
                self.q
                    .row(i)
                    .iter()
                    .map(|x| x.to_i64().expect("integral form"))
                    .collect()
            })
            .collect()
    }
}

/// Linking matrix with smooth framings on the diagonal, `c1` from rotation numbers,
/// `chi = 1 - one_handles + #2-handles`.
pub fn build_four_manifold(rd: &ReducedDiagram) -> Result<FourManifoldData, SurgeryError> {
    let d = &rd.diagram;
    let mut rows = d.linking().to_vec();
    for (i, c) in d.components().iter().enumerate() {
        let framing = c.smooth_framing();
        if c.coeff.abs() != Rat::one() {
            return Err(SurgeryError::NotReduced {
                id: c.id.clone(),
                coeff: c.coeff.clone(),
            });
        }
        rows[i][i] = framing.to_i64().expect("integer framing");
    }
    FourManifoldData::from_form(
        &rows,
        d.components().iter().map(|c| c.rot).collect(),
        d.components().iter().map(|c| c.id.clone()).collect(),
        d.one_handles(),
        rd.q_count,
    )
}
