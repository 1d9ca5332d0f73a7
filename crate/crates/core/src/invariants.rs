//! Torsion test, `c1²` and the three-dimensional invariant `d3` of the boundary
//! two-plane field.
//!
//! For a handlebody `X` built from a reduced contact diagram,
//!
//! ```text
//! d3 = (c1² - 3σ(X) - 2χ(X)) / 4 + q
//! ```
//!
//! where `q` is the number of contact (+1)-surgeries: each one removes a ball from the
//! almost-complex region and contributes a net `+1`.

use serde::Serialize;
use thiserror::Error;

use crate::exact_arith::{dot, solve_linear, ArithError, QSymMatrix, Rat};
use crate::surgery::{
    build_four_manifold, ContactDiagram, FourManifoldData, LegendrianComponent, ReducedDiagram,
    SurgeryError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("c1 is not torsion on the boundary")]
    NonTorsion,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

/// Whether `r` lies in the column space of `q` over ℚ, i.e. whether the class it
/// represents restricts to a torsion class on the boundary.
pub fn is_torsion(q: &QSymMatrix, r: &[Rat]) -> Result<bool, ArithError> {
    Ok(solve_linear(q, r)?.is_some())
}

/// `r·x` for any solution of `Q x = r`; independent of the chosen solution.
pub fn c1_squared(q: &QSymMatrix, r: &[Rat]) -> Result<Rat, InvariantError> {
    let x = solve_linear(q, r)?.ok_or(InvariantError::NonTorsion)?;
    Ok(dot(r, &x))
}

pub fn d3(fmd: &FourManifoldData) -> Result<Rat, InvariantError> {
    let c2 = c1_squared(&fmd.q, &fmd.c1_rat())?;
    Ok(d3_from_parts(&c2, fmd.signature(), fmd.chi, fmd.q_count))
}

/// `(c1² - 3σ - 2χ)/4 + q_count`
pub fn d3_from_parts(c1_squared: &Rat, sigma: i64, chi: i64, q_count: usize) -> Rat {
    (c1_squared - &Rat::int(3 * sigma + 2 * chi)) / &Rat::int(4) + q_count as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub chi: i64,
    pub sigma: i64,
    pub torsion: bool,
    pub c1_squared: Option<Rat>,
    pub d3: Option<Rat>,
    pub q_count: usize,
}

pub fn invariant_report(fmd: &FourManifoldData) -> Result<InvariantReport, InvariantError> {
    let c1_squared = match c1_squared(&fmd.q, &fmd.c1_rat()) {
        Ok(v) => Some(v),
        Err(InvariantError::NonTorsion) => None,
        Err(e) => return Err(e),
    };
    let sigma = fmd.signature();
    let d3 = c1_squared
        .as_ref()
        .map(|c2| d3_from_parts(c2, sigma, fmd.chi, fmd.q_count));
    Ok(InvariantReport {
        chi: fmd.chi,
        sigma,
        torsion: c1_squared.is_some(),
        c1_squared,
        d3,
        q_count: fmd.q_count,
    })
}

/// `m` contact (+1)-surgeries and `m` Legendrian surgeries on mutual push-offs of the
/// `tb = -1`, `rot = 0` unknot in the standard 3-sphere.
pub fn plus_one_family_diagram(m: usize) -> ContactDiagram {
    let mut components = Vec::with_capacity(2 * m);
    for k in 1..=m {
        components.push(LegendrianComponent::new(format!("K{k}"), -1, 0, Rat::one()));
    }
    for k in 1..=m {
        components.push(LegendrianComponent::new(
            format!("K{k}'"),
            -1,
            0,
            Rat::int(-1),
        ));
    }
    let n = 2 * m;
    let linking = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { -1 }).collect())
        .collect();
    ContactDiagram::new(0, components, linking).expect("well-formed family diagram")
}

/// Checks that every member `m = 1..=n` of the push-off family has `d3 = -1/2`, the
/// value of the standard contact 3-sphere.
pub fn verify_plus_one_family(n: usize) -> bool {
    let target = Rat::new(-1, 2).unwrap();
    (1..=n).all(|m| {
        let rd = match ReducedDiagram::from_reduced(plus_one_family_diagram(m)) {
            Ok(rd) => rd,
            Err(_) => return false,
        };
        build_four_manifold(&rd)
            .ok()
            .and_then(|fmd| d3(&fmd).ok())
            .is_some_and(|v| v == target)
    })
}
