//! Circle bundles `Y_{g,n}` of Euler number `n` over a closed genus-`g` surface, and the
//! two virtually overtwisted structures `ξ_0`, `ξ_1` obtained by contact
//! `p/(p+1)`-surgery (`p = n - 2g + 1`) on a Legendrian fiber.
//!
//! Torsion Spin^c structures on `Y_{g,n}` are the restrictions `t_e` of the Spin^c
//! structures `s_e` of the disc bundle, with `t_{e+n} = t_e`; `c1(s_e)` evaluates to
//! `2 - 2g + n + 2e` on the zero section.
//!
//! For `n >= 2g > 0` the homotopy invariant of `ξ_i` is `(n² - 3n + 4g²)/(4n)`, while any
//! semi-fillable structure in the same Spin^c class must have
//! `(n² + n + 4g²)/(4n) - 2g - 2`. The difference is always `2g + 1`.

use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::Rat;
use crate::invariants::{d3, InvariantError};
use crate::surgery::{
    build_four_manifold, reduce_diagram, ChainConvention, ContactDiagram, FourManifoldData,
    LegendrianComponent, ReducedDiagram, SurgeryError, Variant,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircleBundle {
    pub g: i64,
    pub n: i64,
}

impl CircleBundle {
    pub fn new(g: i64, n: i64) -> Result<Self, BundleError> {
        if g < 0 {
            return Err(BundleError::Domain(format!("genus must be >= 0, got {g}")));
        }
        Ok(CircleBundle { g, n })
    }

    pub fn b1(&self) -> i64 {
        2 * self.g
    }

    /// `n >= 2g > 0`, the range where `ξ_0` and `ξ_1` exist and the obstruction applies.
    pub fn in_honda_range(&self) -> bool {
        self.g > 0 && self.n >= 2 * self.g
    }

    fn require_honda_range(&self) -> Result<(), BundleError> {
        if self.in_honda_range() {
            Ok(())
        } else {
            Err(BundleError::Domain(format!(
                "need n >= 2g > 0, got g = {}, n = {}",
                self.g, self.n
            )))
        }
    }
}

/// The Spin^c structure `t_e` on `Y_{g,n}`, remembering the disc-bundle lift `s_e`.
///
/// Equality and hashing only see `e mod n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpinCClass {
    pub bundle: CircleBundle,
    /// The chosen lift `e`; only its class mod `n` is an invariant of `t_e`.
    pub e: i64,
}

impl SpinCClass {
    pub fn new(bundle: CircleBundle, e: i64) -> Result<Self, BundleError> {
        if bundle.n <= 0 {
            return Err(BundleError::Domain(format!(
                "torsion Spin^c classes t_e are indexed mod n, need n > 0, got {}",
                bundle.n
            )));
        }
        Ok(SpinCClass { bundle, e })
    }

    /// Representative of `e` in `[0, n)`.
    pub fn residue(&self) -> i64 {
        self.e.rem_euclid(self.bundle.n)
    }

    /// Value of `c1(s_e)` on the zero section of the disc bundle.
    pub fn c1_on_generator(&self) -> i64 {
        2 - 2 * self.bundle.g + self.bundle.n + 2 * self.e
    }
}

impl PartialEq for SpinCClass {
    fn eq(&self, other: &Self) -> bool {
        self.bundle == other.bundle && self.residue() == other.residue()
    }
}

impl Eq for SpinCClass {}

impl Hash for SpinCClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bundle.hash(state);
        self.residue().hash(state);
    }
}

/// Solves `2 - 2g + n + 2e = (-1)^i (n - 2g)`: `e = -1` for `ξ_0`, `e = 2g - 1 - n` for `ξ_1`.
///
/// The second lift is congruent to `2g - 1 + n`, so in both cases `t_{ξ_i} = t_{2ig - 1}`.
pub fn honda_spinc(g: i64, n: i64, variant: Variant) -> Result<SpinCClass, BundleError> {
    let b = CircleBundle::new(g, n)?;
    b.require_honda_range()?;
    let e = match variant {
        Variant::Zero => -1,
        Variant::One => 2 * g - 1 - n,
    };
    SpinCClass::new(b, e)
}

/// `D_{g,n} # S²×S² # (n-2g) CP²-bar`: form `[n] ⊕ H ⊕ (n-2g)<-1>` with
/// `c1 = ((-1)^i (n-2g), 0, 0, (-1)^i, ...)`, `2g` 1-handles and two (+1)-surgeries.
pub fn model_manifold(g: i64, n: i64, variant: Variant) -> Result<FourManifoldData, BundleError> {
    CircleBundle::new(g, n)?.require_honda_range()?;
    let m = (n - 2 * g) as usize;
    let dim = 3 + m;
    let eps = variant.sign();
    let mut q = vec![vec![0; dim]; dim];
    q[0][0] = n;
    q[1][2] = 1;
    q[2][1] = 1;
    let mut c1 = vec![eps * m as i64, 0, 0];
    let mut labels = vec!["D".to_string(), "S".to_string(), "S*".to_string()];
    for k in 0..m {
        q[3 + k][3 + k] = -1;
        c1.push(eps);
        labels.push(format!("E{}", k + 1));
    }
    Ok(FourManifoldData::from_form(
        &q,
        c1,
        labels,
        2 * g as u32,
        2,
    )?)
}

/// Contact surgery diagram for `ξ_i` before reduction: a Legendrian surface knot `S`
/// (`tb = 2g - 1`, `rot = 0`, Legendrian surgery) running over `2g` 1-handles, and a
/// Legendrian fiber `f` (`tb = -1`, `rot = 0`) linking it once, carrying contact
/// `p/(p+1)`-surgery with `p = n - 2g + 1`. The variant `i` enters at reduction time.
pub fn honda_diagram(g: i64, n: i64) -> Result<ContactDiagram, BundleError> {
    CircleBundle::new(g, n)?.require_honda_range()?;
    let p = n - 2 * g + 1;
    let coeff = Rat::new(p, p + 1).map_err(|e| BundleError::Domain(e.to_string()))?;
    Ok(ContactDiagram::new(
        2 * g as u32,
        vec![
            LegendrianComponent::new("S", 2 * g - 1, 0, Rat::int(-1)),
            LegendrianComponent::new("f", -1, 0, coeff),
        ],
        vec![vec![0, 1], vec![1, 0]],
    )?)
}

pub fn honda_reduced(
    g: i64,
    n: i64,
    variant: Variant,
    convention: ChainConvention,
) -> Result<ReducedDiagram, BundleError> {
    Ok(reduce_diagram(&honda_diagram(g, n)?, variant, convention)?)
}

/// Handlebody of the reduced diagram, before any handle slides.
pub fn pre_slide_manifold(
    g: i64,
    n: i64,
    variant: Variant,
    convention: ChainConvention,
) -> Result<FourManifoldData, BundleError> {
    Ok(build_four_manifold(&honda_reduced(
        g, n, variant, convention,
    )?)?)
}

/// `d3(ξ_i) = (n² - 3n + 4g²)/(4n)`, the same for both `i`.
pub fn d3_honda(g: i64, n: i64) -> Result<Rat, BundleError> {
    CircleBundle::new(g, n)?.require_honda_range()?;
    Ok(Rat::new(n * n - 3 * n + 4 * g * g, 4 * n).expect("n > 0"))
}

/// The index `κ ∈ [1, n-1]` with `t_{ξ_i} = t_{g-1+κ}`: `n - g` for `ξ_0`, `g` for `ξ_1`.
pub fn kappa(g: i64, n: i64, variant: Variant) -> Result<i64, BundleError> {
    let s = honda_spinc(g, n, variant)?;
    let k = (s.e - (g - 1)).rem_euclid(n);
    debug_assert!((1..n).contains(&k));
    Ok(k)
}

/// `d3` forced on a semi-fillable structure in the Spin^c class indexed by `κ`, from
/// `-1 - b1 = d3 - (2g-1)/2 - (n-1)/4 - κ²/n + κ`.
pub fn d3_semifillable(g: i64, n: i64, kappa: i64) -> Result<Rat, BundleError> {
    let b = CircleBundle::new(g, n)?;
    b.require_honda_range()?;
    if kappa != g && kappa != n - g {
        return Err(BundleError::Domain(format!(
            "kappa must be g = {g} or n - g = {}, got {kappa}",
            n - g
        )));
    }
    let q = |a: i64, d: i64| Rat::new(a, d).expect("nonzero denominator");
    Ok(
        Rat::int(-1 - b.b1()) + q(2 * g - 1, 2) + q(n - 1, 4) + q(kappa * kappa, n)
            - Rat::int(kappa),
    )
}

/// `(n² + n + 4g²)/(4n) - 2g - 2`
pub fn d3_semifillable_closed(g: i64, n: i64) -> Result<Rat, BundleError> {
    CircleBundle::new(g, n)?.require_honda_range()?;
    Ok(Rat::new(n * n + n + 4 * g * g, 4 * n).expect("n > 0") - Rat::int(2 * g + 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// `n >= 2g > 0` and `d3(ξ_i)` exceeds the semi-fillable value.
    NotSemiFillable,
    /// `0 < g`, `n < 2g`: no Spin^c structure with the required moduli properties.
    Inconclusive,
    /// `g = 0`: lens spaces, outside the range of the dimension formula.
    Unsupported,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NotSemiFillable => "NotSemiFillable",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Unsupported => "Unsupported",
        })
    }
}

pub const COINCIDE_NOTE: &str = "n = 2g: xi_0 and xi_1 coincide";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub g: i64,
    pub n: i64,
    pub i: u8,
    /// Residue of `e` mod `n` with `t_{ξ_i} = t_e`.
    pub spinc_e: Option<i64>,
    pub d3_xi: Option<Rat>,
    /// `d3` of the model handlebody computed through the generic pipeline.
    pub d3_pipeline: Option<Rat>,
    pub kappa: Option<i64>,
    pub d3_semifillable: Option<Rat>,
    pub gap: Option<Rat>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl ObstructionReport {
    fn empty(g: i64, n: i64, variant: Variant, verdict: Verdict, note: &str) -> Self {
        ObstructionReport {
            g,
            n,
            i: variant.index(),
            spinc_e: None,
            d3_xi: None,
            d3_pipeline: None,
            kappa: None,
            d3_semifillable: None,
            gap: None,
            verdict,
            note: Some(note.to_string()),
        }
    }

    /// CSV header matching [`ObstructionReport::csv_row`].
    pub const CSV_HEADER: &'static str =
        "g,n,i,spinc_e,d3_xi,d3_pipeline,kappa,d3_semifillable,gap,verdict,note";

    pub fn csv_row(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.g,
            self.n,
            self.i,
            opt(&self.spinc_e),
            opt(&self.d3_xi),
            opt(&self.d3_pipeline),
            opt(&self.kappa),
            opt(&self.d3_semifillable),
            opt(&self.gap),
            self.verdict,
            opt(&self.note),
        )
    }
}

/// Full obstruction computation for `ξ_i` on `Y_{g,n}`; every `(g, n)` gets a verdict.
pub fn obstruction_report(g: i64, n: i64, variant: Variant) -> ObstructionReport {
    if g <= 0 {
        return ObstructionReport::empty(
            g,
            n,
            variant,
            Verdict::Unsupported,
            "g = 0: lens space outside the range of the obstruction",
        );
    }
    if n < 2 * g {
        return ObstructionReport::empty(
            g,
            n,
            variant,
            Verdict::Inconclusive,
            "n < 2g: no Spin^c structure with the required moduli properties",
        );
    }
    let spinc = honda_spinc(g, n, variant).expect("in range");
    let d3_xi = d3_honda(g, n).expect("in range");
    let k = kappa(g, n, variant).expect("in range");
    let semi = d3_semifillable(g, n, k).expect("kappa is g or n - g");
    let gap = &d3_xi - &semi;
    let d3_pipeline = model_manifold(g, n, variant).ok().and_then(|m| d3(&m).ok());
    let verdict = if gap.is_positive() {
        Verdict::NotSemiFillable
    } else {
        Verdict::Inconclusive
    };
    let note = if n == 2 * g {
        let other = match variant {
            Variant::Zero => Variant::One,
            Variant::One => Variant::Zero,
        };
        let same = honda_spinc(g, n, other).ok() == Some(spinc)
            && model_manifold(g, n, other).ok().and_then(|m| d3(&m).ok()) == d3_pipeline;
        Some(if same {
            COINCIDE_NOTE.to_string()
        } else {
            "n = 2g but the two variants differ".to_string()
        })
    } else {
        None
    };
    ObstructionReport {
        g,
        n,
        i: variant.index(),
        spinc_e: Some(spinc.residue()),
        d3_xi: Some(d3_xi),
        d3_pipeline,
        kappa: Some(k),
        d3_semifillable: Some(semi),
        gap: Some(gap),
        verdict,
        note,
    }
}

/// One report per `(g, n, i)` with `1 <= g <= g_max`, `2g <= n <= n_max`, in
/// lexicographic order. Fails if any row disagrees with the closed forms.
pub fn sweep(g_max: i64, n_max: i64) -> Result<Vec<ObstructionReport>, BundleError> {
    if g_max < 1 || n_max < 2 {
        return Err(BundleError::Domain(format!(
            "sweep needs g_max >= 1 and n_max >= 2, got {g_max}, {n_max}"
        )));
    }
    let mut rows = Vec::new();
    for g in 1..=g_max {
        for n in (2 * g)..=n_max {
            for variant in Variant::BOTH {
                let r = obstruction_report(g, n, variant);
                check_row(&r)?;
                rows.push(r);
            }
        }
    }
    Ok(rows)
}

fn check_row(r: &ObstructionReport) -> Result<(), BundleError> {
    let fail = |what: &str| {
        Err(BundleError::CrossCheck(format!(
            "{what} at (g, n, i) = ({}, {}, {})",
            r.g, r.n, r.i
        )))
    };
    if r.d3_pipeline.is_none() || r.d3_pipeline != r.d3_xi {
        return fail("pipeline d3 differs from the closed form");
    }
    if r.d3_semifillable != d3_semifillable_closed(r.g, r.n).ok() {
        return fail("semi-fillable d3 differs from the closed form");
    }
    if r.gap != Some(Rat::int(2 * r.g + 1)) {
        return fail("gap differs from 2g + 1");
    }
    if r.verdict != Verdict::NotSemiFillable {
        return fail("verdict is not NotSemiFillable");
    }
    Ok(())
}
