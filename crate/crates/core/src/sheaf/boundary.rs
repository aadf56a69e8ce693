use super::holonomy::walk_product;
use super::{Cochain0, Cochain1, NetworkSheaf, SheafKind};
use crate::error::{Error, Result};
use crate::graph::{spanning_tree, Multigraph};
use crate::groups::{GroupDescriptor, GroupElement};

/// Products of `η` along the tree paths from the root leaf (the first leaf
/// in declaration order) to every other leaf, in leaf order.
///
/// Interior gauges cannot change these products and boundary gauges are
/// trivial, so two cocycles of `G_A` are cohomologous exactly when their
/// tuples agree.
pub fn tree_relative_invariant(sheaf: &NetworkSheaf, eta: &Cochain1) -> Result<Vec<GroupElement>> {
    let SheafKind::BoundaryTrivial { boundary } = sheaf.kind() else {
        return Err(Error::Unsupported("relative invariants need a boundary-trivialized sheaf".into()));
    };
    let graph = sheaf.graph();
    if !graph.is_tree() {
        return Err(Error::NotATree);
    }
    if *boundary != graph.leaves() {
        return Err(Error::BoundaryMismatch(
            "the boundary must be exactly the leaf set".into(),
        ));
    }
    sheaf.check_c1(eta)?;
    let group = sheaf.group().expect("boundary sheaf");
    relative_products(graph, group, eta, boundary)
}

fn relative_products(
    graph: &Multigraph,
    group: &GroupDescriptor,
    eta: &Cochain1,
    boundary: &[usize],
) -> Result<Vec<GroupElement>> {
    let Some((&root, rest)) = boundary.split_first() else {
        return Ok(Vec::new());
    };
    let tree = spanning_tree(graph, root)?;
    rest.iter()
        .map(|&leaf| walk_product(graph, group, eta, &tree.path_from_root(leaf)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryOutcome {
    /// A global section of the constant sheaf restricting to the data.
    Extends(Cochain0),
    /// No extension; `induced` is the coboundary of the extension by the
    /// identity on interior vertices, read as a cocycle of `G_A`, and
    /// `invariant` its relative products from the root boundary vertex.
    Obstructed {
        induced: Cochain1,
        invariant: Vec<GroupElement>,
    },
}

/// Decides whether boundary values `β` (given for `boundary[i]`) extend to a
/// global section of the constant sheaf on a connected graph.
pub fn boundary_obstruction(
    graph: &Multigraph,
    group: &GroupDescriptor,
    boundary: &[usize],
    beta: &[GroupElement],
) -> Result<BoundaryOutcome> {
    if boundary.len() != beta.len() {
        return Err(Error::BoundaryMismatch(format!(
            "{} boundary vertices but {} values",
            boundary.len(),
            beta.len()
        )));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut pairs: Vec<(usize, GroupElement)> = Vec::with_capacity(beta.len());
    for (&v, b) in boundary.iter().zip(beta) {
        if v >= graph.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if pairs.iter().any(|(w, _)| *w == v) {
            return Err(Error::BoundaryMismatch(format!(
                "vertex {} listed twice",
                graph.vertex_id(v)
            )));
        }
        group.check(b)?;
        pairs.push((v, b.clone()));
    }
    pairs.sort_by_key(|(v, _)| *v);
    let sheaf = NetworkSheaf::constant(graph, group)?;
    if pairs.windows(2).all(|w| w[0].1 == w[1].1) {
        let value = pairs.first().map_or_else(|| group.identity(), |(_, b)| b.clone());
        let section = Cochain0(vec![value; graph.vertex_count()]);
        debug_assert_eq!(sheaf.coboundary(&section)?, sheaf.identity_c1());
        return Ok(BoundaryOutcome::Extends(section));
    }
    let mut extension = sheaf.identity_c0();
    for (v, b) in &pairs {
        extension.0[*v] = b.clone();
    }
    let induced = sheaf.coboundary(&extension)?;
    let order: Vec<usize> = pairs.iter().map(|(v, _)| *v).collect();
    let invariant = relative_products(graph, group, &induced, &order)?;
    Ok(BoundaryOutcome::Obstructed { induced, invariant })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: u64) -> GroupElement {
        GroupElement::Residue(x)
    }

    #[test]
    fn necker_path() {
        let g = Multigraph::path(3);
        let z2 = GroupDescriptor::Cyclic(2);
        let sheaf = NetworkSheaf::boundary_trivial(&g, &z2, &[0, 2]).unwrap();
        let eta = Cochain1(vec![r(1), r(0)]);
        assert_eq!(tree_relative_invariant(&sheaf, &eta).unwrap(), vec![r(1)]);
        assert_eq!(tree_relative_invariant(&sheaf, &sheaf.identity_c1()).unwrap(), vec![r(0)]);
        match boundary_obstruction(&g, &z2, &[0, 2], &[r(0), r(1)]).unwrap() {
            BoundaryOutcome::Obstructed { invariant, .. } => assert_eq!(invariant, vec![r(1)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_data_extends() {
        let g = Multigraph::star(4);
        let z4 = GroupDescriptor::Cyclic(4);
        let leaves = g.leaves();
        let out = boundary_obstruction(&g, &z4, &leaves, &[r(3), r(3), r(3), r(3)]).unwrap();
        assert_eq!(out, BoundaryOutcome::Extends(Cochain0(vec![r(3); 5])));
    }

    #[test]
    fn star_over_z4() {
        let g = Multigraph::star(4);
        let z4 = GroupDescriptor::Cyclic(4);
        let leaves = g.leaves();
        match boundary_obstruction(&g, &z4, &leaves, &[r(0), r(1), r(2), r(3)]).unwrap() {
            BoundaryOutcome::Obstructed { induced, invariant } => {
                assert_eq!(invariant, vec![r(1), r(2), r(3)]);
                let sheaf = NetworkSheaf::boundary_trivial(&g, &z4, &leaves).unwrap();
                assert_eq!(tree_relative_invariant(&sheaf, &induced).unwrap(), invariant);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_spoke_flip() {
        let g = Multigraph::star(4);
        let z2 = GroupDescriptor::Cyclic(2);
        let sheaf = NetworkSheaf::boundary_trivial(&g, &z2, &g.leaves()).unwrap();
        let mut eta = sheaf.identity_c1();
        eta.0[2] = r(1);
        let inv = tree_relative_invariant(&sheaf, &eta).unwrap();
        assert_eq!(inv.iter().filter(|x| **x == r(1)).count(), 1);
    }

    #[test]
    fn preconditions() {
        let g = Multigraph::path(3);
        let z2 = GroupDescriptor::Cyclic(2);
        let wrong = NetworkSheaf::boundary_trivial(&g, &z2, &[0]).unwrap();
        assert!(matches!(
            tree_relative_invariant(&wrong, &wrong.identity_c1()),
            Err(Error::BoundaryMismatch(_))
        ));
        let cyc = Multigraph::cycle(3);
        let s = NetworkSheaf::boundary_trivial(&cyc, &z2, &[0]).unwrap();
        assert_eq!(tree_relative_invariant(&s, &s.identity_c1()), Err(Error::NotATree));
    }
}
