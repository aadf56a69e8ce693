use super::{Cochain1, NetworkSheaf};
use crate::error::{Error, Result};
use crate::graph::{fundamental_cycles, spanning_tree, Direction, Multigraph, SpanningTree, Walk};
use crate::groups::{GroupDescriptor, GroupElement};

/// Holonomies of a constant-sheaf cocycle around the fundamental cycles of
/// a BFS tree at `basepoint`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyData {
    pub basepoint: usize,
    pub tree: SpanningTree,
    pub cycles: Vec<Walk>,
    pub holonomies: Vec<GroupElement>,
}

/// Ordered product along a walk: `η_e` forward, `η_e^-1` reverse.
pub fn walk_product(
    graph: &Multigraph,
    group: &GroupDescriptor,
    eta: &Cochain1,
    walk: &Walk,
) -> Result<GroupElement> {
    walk.end(graph)?;
    if eta.0.len() != graph.edge_count() {
        return Err(Error::StalkMismatch("cochain length does not match the graph".into()));
    }
    let mut acc = group.identity();
    for &(e, d) in &walk.steps {
        let x = match d {
            Direction::Forward => eta.0[e].clone(),
            Direction::Reverse => group.inv(&eta.0[e])?,
        };
        acc = group.mul(&acc, &x)?;
    }
    Ok(acc)
}

pub fn holonomy(sheaf: &NetworkSheaf, eta: &Cochain1, basepoint: usize) -> Result<HolonomyData> {
    let group = sheaf.constant_group()?;
    sheaf.check_c1(eta)?;
    let graph = sheaf.graph();
    let tree = spanning_tree(graph, basepoint)?;
    let cycles = fundamental_cycles(graph, &tree);
    let holonomies = cycles
        .iter()
        .map(|c| walk_product(graph, group, eta, c))
        .collect::<Result<_>>()?;
    Ok(HolonomyData {
        basepoint,
        tree,
        cycles,
        holonomies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_triangle() {
        let g = Multigraph::cycle(3);
        let d = GroupDescriptor::InfiniteDihedral;
        let sheaf = NetworkSheaf::constant(&g, &d).unwrap();
        let eta = Cochain1(vec![
            GroupElement::dihedral(0, 1),
            GroupElement::dihedral(1, 1),
            GroupElement::dihedral(0, -1),
        ]);
        let hol = holonomy(&sheaf, &eta, 0).unwrap();
        assert_eq!(hol.holonomies, vec![GroupElement::dihedral(1, -1)]);
    }

    #[test]
    fn zigzag_parity() {
        for n in 3..8 {
            let g = Multigraph::cycle(n);
            let z2 = GroupDescriptor::Cyclic(2);
            let sheaf = NetworkSheaf::constant(&g, &z2).unwrap();
            let eta = Cochain1(vec![GroupElement::Residue(1); n]);
            let hol = holonomy(&sheaf, &eta, 0).unwrap();
            assert_eq!(hol.holonomies, vec![GroupElement::Residue((n % 2) as u64)]);
        }
    }

    #[test]
    fn penrose_sum() {
        let g = Multigraph::cycle(4);
        let sheaf = NetworkSheaf::constant(&g, &GroupDescriptor::integers()).unwrap();
        let eta = Cochain1(vec![GroupElement::scalar(1); 4]);
        assert_eq!(holonomy(&sheaf, &eta, 0).unwrap().holonomies, vec![GroupElement::scalar(4)]);
        assert_eq!(holonomy(&sheaf, &eta, 2).unwrap().holonomies, vec![GroupElement::scalar(4)]);
    }

    #[test]
    fn needs_constant_sheaf() {
        let g = Multigraph::path(3);
        let sheaf = NetworkSheaf::boundary_trivial(&g, &GroupDescriptor::Cyclic(2), &[0, 2]).unwrap();
        assert!(matches!(holonomy(&sheaf, &sheaf.identity_c1(), 1), Err(Error::Unsupported(_))));
    }
}
