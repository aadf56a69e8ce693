use std::fmt;

use num_bigint::BigInt;

use super::abelian::{abelian_gauge_solve, supports_coordinates};
use super::holonomy::holonomy;
use super::{Cochain0, Cochain1, NetworkSheaf, SheafKind};
use crate::error::{Error, Result};
use crate::graph::{spanning_tree, Direction};
use crate::groups::{simultaneous_conjugacy, GroupElement};

/// The algorithm that decides gauge questions for a given sheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Constant sheaf: holonomy tuples compared up to simultaneous conjugacy.
    Holonomy,
    /// Boundary-trivialized sheaf: the gauge is forced by propagation from a
    /// pinned boundary vertex.
    PinnedPropagation,
    /// Finitely generated abelian stalks: integer linear algebra via Smith
    /// normal form.
    SmithNormalForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Holonomy => "holonomy",
            Method::PinnedPropagation => "relative-invariant propagation",
            Method::SmithNormalForm => "SNF",
        })
    }
}

pub fn decision_method(sheaf: &NetworkSheaf) -> Result<Method> {
    match sheaf.kind() {
        SheafKind::Constant => Ok(Method::Holonomy),
        SheafKind::BoundaryTrivial { boundary } if boundary.is_empty() => Ok(Method::Holonomy),
        SheafKind::BoundaryTrivial { .. } => Ok(Method::PinnedPropagation),
        SheafKind::General if supports_coordinates(sheaf) => Ok(Method::SmithNormalForm),
        SheafKind::General => Err(Error::Undecided(
            "gauge equivalence for non-abelian sheaves with varying stalks is not implemented".into(),
        )),
    }
}

/// A 0-cochain `ξ` with `δξ = η`, or `None` when `η` is not a coboundary.
pub fn is_coboundary(sheaf: &NetworkSheaf, eta: &Cochain1) -> Result<Option<Cochain0>> {
    sheaf.check_c1(eta)?;
    match decision_method(sheaf)? {
        Method::Holonomy | Method::PinnedPropagation => {
            let root = propagation_root(sheaf)?;
            let g = sheaf.group().expect("constant or boundary sheaf");
            propagate(sheaf, &sheaf.identity_c1(), eta, root, g.identity())
        }
        Method::SmithNormalForm => abelian_gauge_solve::<BigInt>(sheaf, &sheaf.identity_c1(), eta),
    }
}

/// A gauge `ξ` with `twist(η, ξ) = η'`, or `None`.
pub fn cohomologous(sheaf: &NetworkSheaf, eta: &Cochain1, eta2: &Cochain1) -> Result<Option<Cochain0>> {
    sheaf.check_c1(eta)?;
    sheaf.check_c1(eta2)?;
    match decision_method(sheaf)? {
        Method::Holonomy => {
            let g = sheaf.group().expect("constant sheaf");
            if sheaf.graph().vertex_count() == 0 {
                return Ok(Some(sheaf.identity_c0()));
            }
            let constant = NetworkSheaf::constant(sheaf.graph(), g)?;
            let a = holonomy(&constant, eta, 0)?;
            let b = holonomy(&constant, eta2, 0)?;
            match simultaneous_conjugacy(g, &a.holonomies, &b.holonomies)? {
                Some(x) => propagate(sheaf, eta, eta2, 0, x),
                None => Ok(None),
            }
        }
        Method::PinnedPropagation => {
            let root = propagation_root(sheaf)?;
            let g = sheaf.group().expect("boundary sheaf");
            propagate(sheaf, eta, eta2, root, g.identity())
        }
        Method::SmithNormalForm => abelian_gauge_solve::<BigInt>(sheaf, eta, eta2),
    }
}

fn propagation_root(sheaf: &NetworkSheaf) -> Result<usize> {
    match sheaf.boundary().first() {
        Some(&v) => Ok(v),
        None if sheaf.graph().vertex_count() > 0 => Ok(0),
        None => Err(Error::InvalidSheaf("empty graph".into())),
    }
}

/// Forces `ξ` along the BFS tree from `root` (where `ξ = x`) so that tree
/// edges satisfy `twist(η, ξ) = η'`, then checks every edge.
fn propagate(
    sheaf: &NetworkSheaf,
    eta: &Cochain1,
    eta2: &Cochain1,
    root: usize,
    x: GroupElement,
) -> Result<Option<Cochain0>> {
    let g = sheaf.group().expect("constant or boundary sheaf").clone();
    let graph = sheaf.graph();
    let tree = spanning_tree(graph, root)?;
    let mut hat = vec![g.identity(); graph.vertex_count()];
    hat[root] = x;
    for &c in tree.order.iter().skip(1) {
        let (p, e, d) = tree.parent[c].expect("non-root vertices have parents");
        hat[c] = match d {
            // η'_e = ξ_p^-1 η_e ξ_c
            Direction::Forward => g.mul(&g.left_divide(&eta.0[e], &hat[p])?, &eta2.0[e])?,
            // η'_e = ξ_c^-1 η_e ξ_p
            Direction::Reverse => g.mul(&g.mul(&eta.0[e], &hat[p])?, &g.inv(&eta2.0[e])?)?,
        };
    }
    let boundary = sheaf.boundary();
    let mut xi = Vec::with_capacity(hat.len());
    for (v, value) in hat.into_iter().enumerate() {
        if boundary.contains(&v) {
            if !g.is_identity(&value) {
                return Ok(None);
            }
            xi.push(sheaf.vertex_stalk(v).identity());
        } else {
            xi.push(value);
        }
    }
    let xi = Cochain0(xi);
    Ok((sheaf.twist(eta, &xi)? == *eta2).then_some(xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use crate::groups::{symmetric_group, GroupDescriptor, Homomorphism};

    fn z(v: &[i64]) -> Cochain1 {
        Cochain1(v.iter().map(|&x| GroupElement::scalar(x)).collect())
    }

    #[test]
    fn triangle_witness() {
        let sheaf = NetworkSheaf::constant(&Multigraph::cycle(3), &GroupDescriptor::integers()).unwrap();
        let eta = z(&[1, 2, -3]);
        let xi = is_coboundary(&sheaf, &eta).unwrap().unwrap();
        assert_eq!(sheaf.coboundary(&xi).unwrap(), eta);
        assert_eq!(xi.0, z(&[0, 1, 3]).0);
    }

    #[test]
    fn penrose_is_not_a_coboundary() {
        let sheaf = NetworkSheaf::constant(&Multigraph::cycle(4), &GroupDescriptor::integers()).unwrap();
        assert_eq!(is_coboundary(&sheaf, &z(&[1, 1, 1, 1])).unwrap(), None);
        assert!(cohomologous(&sheaf, &z(&[1, 1, 1, 1]), &z(&[4, 0, 0, 0])).unwrap().is_some());
        assert!(cohomologous(&sheaf, &z(&[1, 1, 1, 1]), &z(&[1, 1, 1, 2])).unwrap().is_none());
    }

    #[test]
    fn nonabelian_gauge_on_rose() {
        let s3 = GroupDescriptor::table(symmetric_group(3));
        let g = Multigraph::rose(2);
        let sheaf = NetworkSheaf::constant(&g, &s3).unwrap();
        let a = Cochain1(vec![GroupElement::Index(1), GroupElement::Index(2)]);
        let x = Cochain0(vec![GroupElement::Index(3)]);
        let b = sheaf.twist(&a, &x).unwrap();
        let w = cohomologous(&sheaf, &a, &b).unwrap().unwrap();
        assert_eq!(sheaf.twist(&a, &w).unwrap(), b);
    }

    #[test]
    fn boundary_sheaf_on_a_cycle_with_tail() {
        // Square with a pendant boundary vertex: propagation works off trees too.
        let g = Multigraph::new(
            &["a", "b", "c", "d", "x"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d"), ("e4", "d", "a"), ("t", "x", "a")],
        )
        .unwrap();
        let z2 = GroupDescriptor::Cyclic(2);
        let sheaf = NetworkSheaf::boundary_trivial(&g, &z2, &[4]).unwrap();
        let mut xi = sheaf.identity_c0();
        xi.0[1] = GroupElement::Residue(1);
        xi.0[0] = GroupElement::Residue(1);
        let eta = sheaf.coboundary(&xi).unwrap();
        assert_eq!(is_coboundary(&sheaf, &eta).unwrap(), Some(xi));
        let mut odd = sheaf.identity_c1();
        odd.0[0] = GroupElement::Residue(1);
        assert_eq!(is_coboundary(&sheaf, &odd).unwrap(), None);
    }

    #[test]
    fn general_abelian_sheaf_uses_snf() {
        // Z at both ends of an edge with stalk Z, restrictions x2 and x3.
        let g = Multigraph::path(2);
        let z = GroupDescriptor::integers();
        let two = Homomorphism::from_matrix(1, 1, &[vec![2]]).unwrap();
        let three = Homomorphism::from_matrix(1, 1, &[vec![3]]).unwrap();
        let sheaf = NetworkSheaf::general(&g, vec![z.clone(), z.clone()], vec![z.clone()], vec![two], vec![three]).unwrap();
        assert_eq!(decision_method(&sheaf).unwrap(), Method::SmithNormalForm);
        // 3b - 2a hits every integer.
        let eta = Cochain1(vec![GroupElement::scalar(1)]);
        let xi = is_coboundary(&sheaf, &eta).unwrap().unwrap();
        assert_eq!(sheaf.coboundary(&xi).unwrap(), eta);
    }

    #[test]
    fn nonabelian_general_sheaf_is_undecided() {
        let g = Multigraph::path(2);
        let d = GroupDescriptor::InfiniteDihedral;
        let id = Homomorphism::identity(&d);
        let sheaf = NetworkSheaf::general(&g, vec![d.clone(), d.clone()], vec![d.clone()], vec![id.clone()], vec![id]).unwrap();
        assert!(matches!(is_coboundary(&sheaf, &sheaf.identity_c1()), Err(Error::Undecided(_))));
    }
}
