use super::{
    ChainConvention, ContactDiagram, LegendrianComponent, ReducedDiagram, SurgeryError, Variant,
};
use crate::exact_arith::{negative_cf_expand, Rat};

/// The (±1)-surgeries replacing one rational contact surgery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReduction {
    pub components: Vec<LegendrianComponent>,
    /// Linking numbers among `components` (diagonal zero). Every component links any
    /// third knot exactly as the source component does.
    pub linking: Vec<Vec<i64>>,
    pub q_count: usize,
}

enum Kind {
    PlusOne,
    /// `r <= -1`
    Negative,
    /// `p/(p+1)` with `p >= 1`
    PlusRatio(i64),
}

fn classify(c: &LegendrianComponent) -> Result<Kind, SurgeryError> {
    let r = &c.coeff;
    let unsupported = || SurgeryError::UnsupportedCoefficient {
        id: c.id.clone(),
        coeff: r.clone(),
    };
    if *r == Rat::one() {
        return Ok(Kind::PlusOne);
    }
    if *r <= Rat::int(-1) {
        return Ok(Kind::Negative);
    }
    if r.is_positive() {
        let (p, q) = (r.numer().clone(), r.denom().clone());
        if q == &p + 1u32 {
            let p = i64::try_from(p).map_err(|_| unsupported())?;
            return Ok(Kind::PlusRatio(p));
        }
    }
    Err(unsupported())
}

/// Replaces one component by an equivalent list of contact (±1)-surgeries.
///
/// * `+1` is kept as is.
/// * `r <= -1` becomes a Legendrian surgery chain read off the negative continued
///   fraction of the smooth-shifted coefficient `r - 1 = [b0, ..., bk]`: the `i`-th knot
///   carries `-b_i - 2` new stabilizations.
/// * `p/(p+1)` becomes `+1` on the knot and on a push-off, followed for `p > 1` by the
///   chain of `-p/(p-1)` on a further push-off.
pub fn reduce_component(
    c: &LegendrianComponent,
    variant: Variant,
    convention: ChainConvention,
) -> Result<ComponentReduction, SurgeryError> {
    let pieces = match classify(c)? {
        Kind::PlusOne => return Ok(single(c.clone(), 1)),
        Kind::Negative => {
            if c.coeff == Rat::int(-1) {
                return Ok(single(c.clone(), 0));
            }
            Chain::negative(c, &c.coeff, variant, convention)?
        }
        Kind::PlusRatio(p) => {
            let mut out = Chain::default();
            for _ in 0..2 {
                out.push_parallel(c, Rat::one(), 0);
            }
            if p > 1 {
                let r = Rat::new(-p, p - 1)?;
                out.append_parallel(Chain::negative(c, &r, variant, convention)?, c.tb);
            }
            out
        }
    };
    let q_count = pieces
        .components
        .iter()
        .filter(|k| k.coeff == Rat::one())
        .count();
    let components = pieces
        .components
        .into_iter()
        .enumerate()
        .map(|(k, mut comp)| {
            comp.id = format!("{}.{}", c.id, k + 1);
            comp
        })
        .collect();
    Ok(ComponentReduction {
        components,
        linking: pieces.linking,
        q_count,
    })
}

fn single(c: LegendrianComponent, q_count: usize) -> ComponentReduction {
    ComponentReduction {
        components: vec![c],
        linking: vec![vec![0]],
        q_count,
    }
}

#[derive(Default)]
struct Chain {
    components: Vec<LegendrianComponent>,
    linking: Vec<Vec<i64>>,
}

impl Chain {
    /// Adds a push-off of `base` (stabilized `stabs` times) that links every knot
    /// already present with `tb(base)`.
    fn push_parallel(&mut self, base: &LegendrianComponent, coeff: Rat, stabs: u32) {
        let mut k = base.clone();
        k.coeff = coeff;
        k.tb -= stabs as i64;
        k.stabilizations += stabs;
        let n = self.components.len();
        for row in self.linking.iter_mut() {
            row.push(base.tb);
        }
        let mut row = vec![base.tb; n];
        row.push(0);
        self.linking.push(row);
        self.components.push(k);
    }

    /// Appends another chain built on a push-off of the same base knot.
    fn append_parallel(&mut self, other: Chain, base_tb: i64) {
        let n = self.components.len();
        let m = other.components.len();
        for row in self.linking.iter_mut() {
            row.extend(std::iter::repeat_n(base_tb, m));
        }
        for row in other.linking {
            let mut r = vec![base_tb; n];
            r.extend(row);
            self.linking.push(r);
        }
        self.components.extend(other.components);
    }

    /// Legendrian surgery chain for contact `r`-surgery on `base`, `r < -1`.
    fn negative(
        base: &LegendrianComponent,
        r: &Rat,
        variant: Variant,
        convention: ChainConvention,
    ) -> Result<Chain, SurgeryError> {
        let cf = negative_cf_expand(&(r - &Rat::one()))?;
        let eps = variant.sign();
        let mut out = Chain::default();
        let mut total: u32 = 0;
        for (i, b) in cf.iter().enumerate() {
            let s = u32::try_from(-b - 2).expect("entries are <= -2");
            total += s;
            let mut k = base.clone();
            k.coeff = Rat::int(-1);
            k.tb = base.tb - total as i64;
            k.rot = base.rot + eps * total as i64;
            k.stabilizations = base.stabilizations + total;
            let row: Vec<i64> = match convention {
                // L_i is a push-off of L_{i-1}, so lk(L_i, L_j) = tb(L_j) for j < i.
                ChainConvention::Chain => out.components.iter().map(|l| l.tb).collect(),
                ChainConvention::Parallel => vec![base.tb; i],
            };
            for (j, v) in row.iter().enumerate() {
                out.linking[j].push(*v);
            }
            let mut row = row;
            row.push(0);
            out.linking.push(row);
            out.components.push(k);
        }
        Ok(out)
    }
}

/// Reduces every component; linking numbers between pieces of different source
/// components are those of the sources.
pub fn reduce_diagram(
    d: &ContactDiagram,
    variant: Variant,
    convention: ChainConvention,
) -> Result<ReducedDiagram, SurgeryError> {
    let parts: Vec<ComponentReduction> = d
        .components()
        .iter()
        .map(|c| reduce_component(c, variant, convention))
        .collect::<Result<_, _>>()?;
    let mut owner = Vec::new();
    let mut local = Vec::new();
    for (src, part) in parts.iter().enumerate() {
        for k in 0..part.components.len() {
            owner.push(src);
            local.push(k);
        }
    }
    let n = owner.len();
    let linking: Vec<Vec<i64>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a == b {
                        0
                    } else if owner[a] == owner[b] {
                        parts[owner[a]].linking[local[a]][local[b]]
                    } else {
                        d.linking()[owner[a]][owner[b]]
                    }
                })
                .collect()
        })
        .collect();
    let provenance = owner
        .iter()
        .map(|&o| d.components()[o].id.clone())
        .collect();
    let q_count = parts.iter().map(|p| p.q_count).sum();
    let components = parts.into_iter().flat_map(|p| p.components).collect();
    Ok(ReducedDiagram {
        diagram: ContactDiagram::new(d.one_handles(), components, linking)?,
        q_count,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot(coeff: Rat) -> LegendrianComponent {
        LegendrianComponent::new("K", -1, 0, coeff)
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn plus_one_passes_through() {
        let r =
            reduce_component(&unknot(Rat::one()), Variant::Zero, ChainConvention::Chain).unwrap();
        assert_eq!(r.components, vec![unknot(Rat::one())]);
        assert_eq!(r.q_count, 1);
        let r =
            reduce_component(&unknot(Rat::int(-1)), Variant::One, ChainConvention::Chain).unwrap();
        assert_eq!(r.components, vec![unknot(Rat::int(-1))]);
        assert_eq!(r.q_count, 0);
    }

    #[test]
    fn one_half_is_two_plus_one_pushoffs() {
        let r = reduce_component(&unknot(q(1, 2)), Variant::Zero, ChainConvention::Chain).unwrap();
        assert_eq!(r.q_count, 2);
        assert_eq!(r.components.len(), 2);
        for c in &r.components {
            assert_eq!((c.tb, c.rot, c.coeff.clone()), (-1, 0, Rat::one()));
        }
        assert_eq!(r.linking, vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn p_over_p_plus_one_chain() {
        // p = n - 2g + 1 with (g, n) = (1, 5): three chain knots
        for variant in Variant::BOTH {
            let r = reduce_component(&unknot(q(4, 5)), variant, ChainConvention::Chain).unwrap();
            assert_eq!(r.q_count, 2);
            assert_eq!(r.components.len(), 5);
            for c in &r.components[2..] {
                assert_eq!(c.tb, -2);
                assert_eq!(c.rot, variant.sign());
                assert_eq!(c.smooth_framing(), Rat::int(-3));
                assert_eq!(c.stabilizations, 1);
            }
            assert_eq!(
                r.linking,
                vec![
                    vec![0, -1, -1, -1, -1],
                    vec![-1, 0, -1, -1, -1],
                    vec![-1, -1, 0, -2, -2],
                    vec![-1, -1, -2, 0, -2],
                    vec![-1, -1, -2, -2, 0],
                ]
            );
        }
        let r =
            reduce_component(&unknot(q(4, 5)), Variant::Zero, ChainConvention::Parallel).unwrap();
        assert_eq!(r.linking[2][3], -1);
        assert_eq!(r.linking[3][4], -1);
    }

    #[test]
    fn negative_chain_from_cf() {
        // -7/3 - 1 = -10/3 = [-4, -2, -2]: stabilizations 2, 0, 0
        let r = reduce_component(&unknot(q(-7, 3)), Variant::One, ChainConvention::Chain).unwrap();
        assert_eq!(r.q_count, 0);
        let tbs: Vec<i64> = r.components.iter().map(|c| c.tb).collect();
        let rots: Vec<i64> = r.components.iter().map(|c| c.rot).collect();
        assert_eq!(tbs, vec![-3, -3, -3]);
        assert_eq!(rots, vec![-2, -2, -2]);
        let framings: Vec<Rat> = r.components.iter().map(|c| c.smooth_framing()).collect();
        assert_eq!(framings, vec![Rat::int(-4); 3]);
        // -2 on the unknot: one stabilization, framing -3 = tb + r
        let r =
            reduce_component(&unknot(Rat::int(-2)), Variant::Zero, ChainConvention::Chain).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].tb, -2);
        assert_eq!(r.components[0].rot, 1);
        assert_eq!(r.components[0].smooth_framing(), Rat::int(-3));
    }

    #[test]
    fn unsupported_coefficients() {
        for r in [q(-1, 2), q(2, 1), q(3, 2), q(2, 5), q(1, 3)] {
            let err = reduce_component(&unknot(r.clone()), Variant::Zero, ChainConvention::Chain)
                .unwrap_err();
            assert!(
                matches!(err, SurgeryError::UnsupportedCoefficient { .. }),
                "{r}"
            );
        }
    }

    #[test]
    fn diagram_inherits_outer_linking() {
        let d = ContactDiagram::new(
            2,
            vec![
                LegendrianComponent::new("S", 1, 0, Rat::int(-1)),
                LegendrianComponent::new("f", -1, 0, q(2, 3)),
            ],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let rd = reduce_diagram(&d, Variant::Zero, ChainConvention::Chain).unwrap();
        assert_eq!(rd.q_count, 2);
        assert_eq!(rd.provenance, vec!["S", "f", "f", "f"]);
        assert_eq!(
            rd.diagram.linking(),
            &[
                vec![0, 1, 1, 1],
                vec![1, 0, -1, -1],
                vec![1, -1, 0, -1],
                vec![1, -1, -1, 0],
            ]
        );
        let ids: Vec<&str> = rd
            .diagram
            .components()
            .iter()
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(ids, vec!["S", "f.1", "f.2", "f.3"]);
    }
}
