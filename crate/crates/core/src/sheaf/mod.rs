//! Network sheaves of groups and their cochains.

mod abelian;
mod boundary;
mod enumerate;
mod gauge;
mod holonomy;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::groups::{GroupDescriptor, GroupElement, Homomorphism};

pub use abelian::{abelian_cohomology, AbelianCohomology, AbelianCoordinates};
pub use boundary::{boundary_obstruction, tree_relative_invariant, BoundaryOutcome};
pub use enumerate::{enumerate_h1_classes, H1Enumeration};
pub use gauge::{cohomologous, decision_method, is_coboundary, Method};
pub use holonomy::{holonomy, walk_product, HolonomyData};

/// Which end of an edge a restriction map belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Tail,
    Head,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafKind {
    /// Every stalk is `G`, every restriction the identity.
    Constant,
    /// Constant `G` except trivial stalks on the boundary vertices.
    BoundaryTrivial { boundary: Vec<usize> },
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkSheaf {
    graph: Multigraph,
    kind: SheafKind,
    /// `G` for constant and boundary-trivialized sheaves.
    group: Option<GroupDescriptor>,
    vertex_stalks: Vec<GroupDescriptor>,
    edge_stalks: Vec<GroupDescriptor>,
    tail_maps: Vec<Homomorphism>,
    head_maps: Vec<Homomorphism>,
}

impl NetworkSheaf {
    pub fn constant(graph: &Multigraph, group: &GroupDescriptor) -> Result<Self> {
        group.validate()?;
        let id = Homomorphism::identity(group);
        Ok(Self {
            graph: graph.clone(),
            kind: SheafKind::Constant,
            group: Some(group.clone()),
            vertex_stalks: vec![group.clone(); graph.vertex_count()],
            edge_stalks: vec![group.clone(); graph.edge_count()],
            tail_maps: vec![id.clone(); graph.edge_count()],
            head_maps: vec![id; graph.edge_count()],
        })
    }

    /// `G` everywhere except the trivial group on `boundary`; restrictions
    /// out of boundary vertices are the inclusion `1 -> G`.
    pub fn boundary_trivial(graph: &Multigraph, group: &GroupDescriptor, boundary: &[usize]) -> Result<Self> {
        group.validate()?;
        let mut on_boundary = vec![false; graph.vertex_count()];
        for &v in boundary {
            if v >= graph.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            on_boundary[v] = true;
        }
        let trivial = GroupDescriptor::trivial();
        let id = Homomorphism::identity(group);
        let inc = Homomorphism::trivial(&trivial, group);
        let pick = |v: usize| if on_boundary[v] { inc.clone() } else { id.clone() };
        let mut sorted: Vec<usize> = (0..graph.vertex_count()).filter(|&v| on_boundary[v]).collect();
        sorted.dedup();
        Ok(Self {
            graph: graph.clone(),
            kind: SheafKind::BoundaryTrivial { boundary: sorted },
            group: Some(group.clone()),
            vertex_stalks: (0..graph.vertex_count())
                .map(|v| if on_boundary[v] { trivial.clone() } else { group.clone() })
                .collect(),
            edge_stalks: vec![group.clone(); graph.edge_count()],
            tail_maps: graph.edges().iter().map(|e| pick(e.tail)).collect(),
            head_maps: graph.edges().iter().map(|e| pick(e.head)).collect(),
        })
    }

    /// Arbitrary stalks and restrictions; descriptors must line up.
    pub fn general(
        graph: &Multigraph,
        vertex_stalks: Vec<GroupDescriptor>,
        edge_stalks: Vec<GroupDescriptor>,
        tail_maps: Vec<Homomorphism>,
        head_maps: Vec<Homomorphism>,
    ) -> Result<Self> {
        if vertex_stalks.len() != graph.vertex_count()
            || edge_stalks.len() != graph.edge_count()
            || tail_maps.len() != graph.edge_count()
            || head_maps.len() != graph.edge_count()
        {
            return Err(Error::InvalidSheaf("stalk or restriction count does not match the graph".into()));
        }
        for (i, e) in graph.edges().iter().enumerate() {
            for (map, v, side) in [(&tail_maps[i], e.tail, "tail"), (&head_maps[i], e.head, "head")] {
                if map.source() != &vertex_stalks[v] || map.target() != &edge_stalks[i] {
                    return Err(Error::InvalidSheaf(format!(
                        "{side} restriction of {} must map {} -> {}",
                        e.id, vertex_stalks[v], edge_stalks[i]
                    )));
                }
            }
        }
        Ok(Self {
            graph: graph.clone(),
            kind: SheafKind::General,
            group: None,
            vertex_stalks,
            edge_stalks,
            tail_maps,
            head_maps,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn kind(&self) -> &SheafKind {
        &self.kind
    }

    /// The structure group of a constant or boundary-trivialized sheaf.
    pub fn group(&self) -> Option<&GroupDescriptor> {
        self.group.as_ref()
    }

    pub fn constant_group(&self) -> Result<&GroupDescriptor> {
        match (&self.kind, &self.group) {
            (SheafKind::Constant, Some(g)) => Ok(g),
            _ => Err(Error::Unsupported("this operation needs a constant sheaf".into())),
        }
    }

    pub fn boundary(&self) -> &[usize] {
        match &self.kind {
            SheafKind::BoundaryTrivial { boundary } => boundary,
            _ => &[],
        }
    }

    pub fn vertex_stalk(&self, v: usize) -> &GroupDescriptor {
        &self.vertex_stalks[v]
    }

    pub fn edge_stalk(&self, e: usize) -> &GroupDescriptor {
        &self.edge_stalks[e]
    }

    pub fn restriction(&self, e: usize, side: Side) -> &Homomorphism {
        match side {
            Side::Tail => &self.tail_maps[e],
            Side::Head => &self.head_maps[e],
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.vertex_stalks.iter().chain(&self.edge_stalks).all(|g| g.is_abelian())
    }

    pub fn check_c0(&self, xi: &Cochain0) -> Result<()> {
        if xi.0.len() != self.graph.vertex_count() {
            return Err(Error::StalkMismatch(format!(
                "0-cochain has {} values for {} vertices",
                xi.0.len(),
                self.graph.vertex_count()
            )));
        }
        for (v, x) in xi.0.iter().enumerate() {
            if !self.vertex_stalks[v].contains(x) {
                return Err(Error::StalkMismatch(format!(
                    "value at vertex {} is not in {}",
                    self.graph.vertex_id(v),
                    self.vertex_stalks[v]
                )));
            }
        }
        Ok(())
    }

    pub fn check_c1(&self, eta: &Cochain1) -> Result<()> {
        if eta.0.len() != self.graph.edge_count() {
            return Err(Error::StalkMismatch(format!(
                "1-cochain has {} values for {} edges",
                eta.0.len(),
                self.graph.edge_count()
            )));
        }
        for (e, x) in eta.0.iter().enumerate() {
            if !self.edge_stalks[e].contains(x) {
                return Err(Error::StalkMismatch(format!(
                    "value on edge {} is not in {}",
                    self.graph.edge(e).id,
                    self.edge_stalks[e]
                )));
            }
        }
        Ok(())
    }

    pub fn identity_c0(&self) -> Cochain0 {
        Cochain0(self.vertex_stalks.iter().map(|g| g.identity()).collect())
    }

    pub fn identity_c1(&self) -> Cochain1 {
        Cochain1(self.edge_stalks.iter().map(|g| g.identity()).collect())
    }

    /// `(δξ)_e = F_tail(ξ_tail)^-1 · F_head(ξ_head)`; in additive notation
    /// this is the usual head-minus-tail difference.
    pub fn coboundary(&self, xi: &Cochain0) -> Result<Cochain1> {
        self.twist(&self.identity_c1(), xi)
    }

    /// Gauge action `η'_e = F_tail(ξ_tail)^-1 · η_e · F_head(ξ_head)`.
    pub fn twist(&self, eta: &Cochain1, xi: &Cochain0) -> Result<Cochain1> {
        self.check_c0(xi)?;
        self.check_c1(eta)?;
        let mut out = Vec::with_capacity(eta.0.len());
        for (i, edge) in self.graph.edges().iter().enumerate() {
            let g = &self.edge_stalks[i];
            let t = self.tail_maps[i].apply(&xi.0[edge.tail])?;
            let h = self.head_maps[i].apply(&xi.0[edge.head])?;
            out.push(g.mul(&g.left_divide(&t, &eta.0[i])?, &h)?);
        }
        Ok(Cochain1(out))
    }

    /// Pointwise product of two gauges; `twist(twist(η, a), b) = twist(η, a·b)`.
    pub fn compose_gauges(&self, a: &Cochain0, b: &Cochain0) -> Result<Cochain0> {
        self.check_c0(a)?;
        self.check_c0(b)?;
        a.0.iter()
            .zip(&b.0)
            .enumerate()
            .map(|(v, (x, y))| self.vertex_stalks[v].mul(x, y))
            .collect::<Result<_>>()
            .map(Cochain0)
    }

    /// Copy of the sheaf over the graph with edge `e` reversed, and the
    /// matching cochain with `η_e` inverted. Restrictions swap sides.
    pub fn reverse_edge(&self, e: usize, eta: &Cochain1) -> Result<(NetworkSheaf, Cochain1)> {
        self.check_c1(eta)?;
        let mut sheaf = self.clone();
        sheaf.graph = self.graph.with_reversed_edge(e);
        std::mem::swap(&mut sheaf.tail_maps[e], &mut sheaf.head_maps[e]);
        let mut values = eta.0.clone();
        values[e] = self.edge_stalks[e].inv(&values[e])?;
        Ok((sheaf, Cochain1(values)))
    }

    pub fn render_c0(&self, xi: &Cochain0) -> String {
        let parts: Vec<String> = xi
            .0
            .iter()
            .enumerate()
            .map(|(v, x)| format!("{}: {}", self.graph.vertex_id(v), self.vertex_stalks[v].render(x)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn render_c1(&self, eta: &Cochain1) -> String {
        let parts: Vec<String> = eta
            .0
            .iter()
            .enumerate()
            .map(|(e, x)| format!("{}: {}", self.graph.edge(e).id, self.edge_stalks[e].render(x)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// One value per vertex, in vertex declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain0(pub Vec<GroupElement>);

/// One value per edge, in edge declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain1(pub Vec<GroupElement>);

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<GroupElement> {
        v.iter().map(|&x| GroupElement::scalar(x)).collect()
    }

    #[test]
    fn coboundary_on_square() {
        let g = Multigraph::cycle(4);
        let sheaf = NetworkSheaf::constant(&g, &GroupDescriptor::integers()).unwrap();
        let eta = sheaf.coboundary(&Cochain0(z(&[0, 1, 2, 3]))).unwrap();
        assert_eq!(eta, Cochain1(z(&[1, 1, 1, -3])));
        assert_eq!(sheaf.coboundary(&sheaf.identity_c0()).unwrap(), sheaf.identity_c1());
    }

    #[test]
    fn dihedral_coboundary_on_one_edge() {
        let g = Multigraph::path(2);
        let sheaf = NetworkSheaf::constant(&g, &GroupDescriptor::InfiniteDihedral).unwrap();
        let xi = Cochain0(vec![GroupElement::dihedral(0, -1), GroupElement::dihedral(1, 1)]);
        assert_eq!(
            sheaf.coboundary(&xi).unwrap(),
            Cochain1(vec![GroupElement::dihedral(-1, -1)])
        );
    }

    #[test]
    fn loops_see_the_same_vertex_twice() {
        let g = Multigraph::rose(1);
        let sheaf = NetworkSheaf::constant(&g, &GroupDescriptor::InfiniteDihedral).unwrap();
        let xi = Cochain0(vec![GroupElement::dihedral(7, -1)]);
        assert_eq!(sheaf.coboundary(&xi).unwrap(), sheaf.identity_c1());
    }

    #[test]
    fn boundary_sheaf_shape() {
        let g = Multigraph::path(3);
        let sheaf = NetworkSheaf::boundary_trivial(&g, &GroupDescriptor::Cyclic(2), &[0, 2]).unwrap();
        assert!(sheaf.vertex_stalk(0).is_trivial());
        assert!(!sheaf.vertex_stalk(1).is_trivial());
        assert!(sheaf.restriction(0, Side::Tail).is_trivial());
        assert_eq!(sheaf.boundary(), &[0, 2]);
    }

    #[test]
    fn stalk_mismatch_is_reported() {
        let g = Multigraph::cycle(3);
        let sheaf = NetworkSheaf::constant(&g, &GroupDescriptor::integers()).unwrap();
        assert!(matches!(
            sheaf.coboundary(&Cochain0(z(&[0, 1]))),
            Err(Error::StalkMismatch(_))
        ));
        assert!(matches!(
            sheaf.twist(&Cochain1(vec![GroupElement::Residue(0); 3]), &sheaf.identity_c0()),
            Err(Error::StalkMismatch(_))
        ));
    }

    #[test]
    fn general_sheaf_validation() {
        let g = Multigraph::path(2);
        let z = GroupDescriptor::integers();
        let z2 = GroupDescriptor::Cyclic(2);
        let red = Homomorphism::new(z.clone(), z2.clone(), vec![GroupElement::Residue(1)]).unwrap();
        let ok = NetworkSheaf::general(
            &g,
            vec![z.clone(), z.clone()],
            vec![z2.clone()],
            vec![red.clone()],
            vec![red.clone()],
        );
        assert!(ok.is_ok());
        let bad = NetworkSheaf::general(&g, vec![z.clone(), z2.clone()], vec![z2], vec![red.clone()], vec![red]);
        assert!(matches!(bad, Err(Error::InvalidSheaf(_))));
    }
}
