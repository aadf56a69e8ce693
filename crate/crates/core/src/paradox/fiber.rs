use super::{check_morphism, GraphMap, Paradox, ParadoxMorphism};
use crate::error::{Error, Result};
use crate::groups::{enumerate_homomorphisms_bounded, Homomorphism};
use crate::limits::Limits;

fn same_base(p1: &Paradox, p2: &Paradox) -> Result<()> {
    if p1.graph() != p2.graph() {
        return Err(Error::InvalidGraphMap("fiber equivalence needs a common base graph".into()));
    }
    Ok(())
}

/// `Φ_*[η₁] = [η₂]`, as a morphism `P₂ → P₁` over the identity map.
fn carries(phi: &Homomorphism, from: &Paradox, to: &Paradox) -> Result<bool> {
    let m = ParadoxMorphism {
        map: GraphMap::identity(from.graph()),
        hom: phi.clone(),
    };
    Ok(check_morphism(&m, to, from)?.holds())
}

/// Checks `Φ: G₁ → G₂` with `Φ_*[η₁] = [η₂]` and `Ψ: G₂ → G₁` with
/// `Ψ_*[η₂] = [η₁]` on a shared base.
pub fn fiber_equivalent(p1: &Paradox, p2: &Paradox, phi: &Homomorphism, psi: &Homomorphism) -> Result<bool> {
    same_base(p1, p2)?;
    Ok(carries(phi, p1, p2)? && carries(psi, p2, p1)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSearch {
    /// First `(Φ, Ψ)` pair found, in enumeration order.
    pub pair: Option<(Homomorphism, Homomorphism)>,
    /// Homomorphisms examined in each direction; `None` when that direction
    /// could not be enumerated.
    pub forward_examined: Option<usize>,
    pub backward_examined: Option<usize>,
    /// How many of them carry one class onto the other.
    pub forward_hits: Option<usize>,
    pub backward_hits: Option<usize>,
}

/// All homomorphisms `from_group -> to_group` carrying `[η_from]` to
/// `[η_to]`, or `None` if they cannot be enumerated.
fn direction(from: &Paradox, to: &Paradox, limits: &Limits) -> Result<Option<(usize, Vec<Homomorphism>)>> {
    let (g, h) = (from.group().expect("checked"), to.group().expect("checked"));
    let all = match enumerate_homomorphisms_bounded(g, h, limits.hom_search) {
        Ok(all) => all,
        Err(Error::Undecided(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut hits = Vec::new();
    for phi in &all {
        if carries(phi, from, to)? {
            hits.push(phi.clone());
        }
    }
    Ok(Some((all.len(), hits)))
}

/// Exhaustive search over all homomorphisms in both directions. A `None`
/// pair is a proof of non-equivalence: some direction was enumerated
/// completely without a hit. Finite groups always enumerate; infinite ones
/// only when generator images are forced (for instance `Z/2 -> Z`). If no
/// direction is conclusive the answer is [`Error::Undecided`].
pub fn search_fiber_equivalence(p1: &Paradox, p2: &Paradox, limits: &Limits) -> Result<FiberSearch> {
    same_base(p1, p2)?;
    let (Some(g1), Some(g2)) = (p1.group(), p2.group()) else {
        return Err(Error::Unsupported("fiber search needs constant or boundary-trivialized sheaves".into()));
    };
    let forward = direction(p1, p2, limits)?;
    let backward = direction(p2, p1, limits)?;
    let dead_end = |d: &Option<(usize, Vec<Homomorphism>)>| d.as_ref().is_some_and(|(_, hits)| hits.is_empty());
    if (forward.is_none() || backward.is_none())
        && !dead_end(&forward) && !dead_end(&backward) {
            return Err(Error::Undecided(format!(
                "homomorphisms between {g1} and {g2} cannot be enumerated"
            )));
        }
    let pair = match (&forward, &backward) {
        (Some((_, phis)), Some((_, psis))) => phis.first().cloned().zip(psis.first().cloned()),
        _ => None,
    };
    Ok(FiberSearch {
        pair,
        forward_examined: forward.as_ref().map(|(n, _)| *n),
        backward_examined: backward.as_ref().map(|(n, _)| *n),
        forward_hits: forward.as_ref().map(|(_, h)| h.len()),
        backward_hits: backward.as_ref().map(|(_, h)| h.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use crate::groups::{GroupDescriptor, GroupElement};
    use crate::sheaf::Cochain1;

    fn loop_paradox(group: GroupDescriptor, first: GroupElement) -> Paradox {
        let g = Multigraph::cycle(4);
        let mut eta = vec![group.identity(); 4];
        eta[0] = first;
        Paradox::constant("p", &g, &group, Cochain1(eta)).unwrap()
    }

    #[test]
    fn coprime_orders_have_no_pair() {
        let a = loop_paradox(GroupDescriptor::Cyclic(2), GroupElement::Residue(1));
        let b = loop_paradox(GroupDescriptor::Cyclic(3), GroupElement::Residue(1));
        let s = search_fiber_equivalence(&a, &b, &Limits::default()).unwrap();
        assert_eq!(s.pair, None);
        assert_eq!((s.forward_examined, s.backward_examined), (Some(1), Some(1)));
        assert_eq!((s.forward_hits, s.backward_hits), (Some(0), Some(0)));
    }

    #[test]
    fn self_pair_is_identity() {
        let a = loop_paradox(GroupDescriptor::Cyclic(3), GroupElement::Residue(2));
        let s = search_fiber_equivalence(&a, &a, &Limits::default()).unwrap();
        let (phi, psi) = s.pair.unwrap();
        assert!(fiber_equivalent(&a, &a, &phi, &psi).unwrap());
        let id = Homomorphism::identity(&GroupDescriptor::Cyclic(3));
        assert!(fiber_equivalent(&a, &a, &id, &id).unwrap());
    }

    #[test]
    fn z2_and_z4_loops_are_not_fiber_equivalent() {
        // Every map Z/4 -> Z/2 kills 2, so no Ψ can return the class.
        let a = loop_paradox(GroupDescriptor::Cyclic(2), GroupElement::Residue(1));
        let b = loop_paradox(GroupDescriptor::Cyclic(4), GroupElement::Residue(2));
        let s = search_fiber_equivalence(&a, &b, &Limits::default()).unwrap();
        assert_eq!(s.forward_hits, Some(1));
        assert_eq!(s.backward_hits, Some(0));
        assert_eq!(s.pair, None);
    }

    #[test]
    fn torsion_cannot_reach_height() {
        let occlusion = loop_paradox(GroupDescriptor::Cyclic(2), GroupElement::Residue(1));
        let height = loop_paradox(GroupDescriptor::integers(), GroupElement::scalar(1));
        let s = search_fiber_equivalence(&occlusion, &height, &Limits::default()).unwrap();
        assert_eq!(s.pair, None);
        assert_eq!(s.forward_hits, Some(0));
    }

    #[test]
    fn infinite_groups_undecided() {
        let a = loop_paradox(GroupDescriptor::integers(), GroupElement::scalar(2));
        assert!(matches!(
            search_fiber_equivalence(&a, &a, &Limits::default()),
            Err(Error::Undecided(_))
        ));
    }
}
