//! Network torsors, represented by their defining cocycle.
//!
//! Stalks are the underlying sets of the structure stalks with `G` acting by
//! left multiplication. Restrictions and transport are right
//! multiplications, so they commute with the action.

use crate::error::{Error, Result};
use crate::graph::{Direction, Walk};
use crate::groups::{GroupDescriptor, GroupElement};
use crate::sheaf::{cohomologous, is_coboundary, Cochain0, Cochain1, NetworkSheaf, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsor {
    sheaf: NetworkSheaf,
    cocycle: Cochain1,
}

impl Torsor {
    pub fn sheaf(&self) -> &NetworkSheaf {
        &self.sheaf
    }

    pub fn cocycle(&self) -> &Cochain1 {
        &self.cocycle
    }

    pub fn vertex_stalk(&self, v: usize) -> &GroupDescriptor {
        self.sheaf.vertex_stalk(v)
    }

    pub fn edge_stalk(&self, e: usize) -> &GroupDescriptor {
        self.sheaf.edge_stalk(e)
    }

    /// `g · p` on the stalk over vertex `v`.
    pub fn act_vertex(&self, v: usize, g: &GroupElement, p: &GroupElement) -> Result<GroupElement> {
        self.vertex_stalk(v).mul(g, p)
    }

    pub fn act_edge(&self, e: usize, g: &GroupElement, q: &GroupElement) -> Result<GroupElement> {
        self.edge_stalk(e).mul(g, q)
    }

    /// Tail side `p ↦ F_t(p)`, head side `p ↦ F_h(p) · η_e^-1`.
    pub fn restrict(&self, e: usize, side: Side, p: &GroupElement) -> Result<GroupElement> {
        let edge = self.sheaf.graph().edge(e);
        let v = match side {
            Side::Tail => edge.tail,
            Side::Head => edge.head,
        };
        self.vertex_stalk(v).check(p)?;
        let image = self.sheaf.restriction(e, side).apply(p)?;
        match side {
            Side::Tail => Ok(image),
            Side::Head => {
                let g = self.edge_stalk(e);
                g.mul(&image, &g.inv(&self.cocycle.0[e])?)
            }
        }
    }

    /// Number of points over a vertex; `None` for infinite stalks.
    pub fn vertex_stalk_size(&self, v: usize) -> Option<u128> {
        self.vertex_stalk(v).order()
    }

    pub fn edge_stalk_size(&self, e: usize) -> Option<u128> {
        self.edge_stalk(e).order()
    }

    /// Cocycle read off from chosen points `p_v`:
    /// `η̃_e = tail(p_tail) · head(p_head)^-1`. At the identity points this
    /// is the defining cocycle; other choices give a gauge-equivalent one.
    pub fn extract_cocycle(&self, points: &Cochain0) -> Result<Cochain1> {
        self.sheaf.check_c0(points)?;
        let graph = self.sheaf.graph();
        let mut out = Vec::with_capacity(graph.edge_count());
        for (e, edge) in graph.edges().iter().enumerate() {
            let g = self.edge_stalk(e);
            let t = self.restrict(e, Side::Tail, &points.0[edge.tail])?;
            let h = self.restrict(e, Side::Head, &points.0[edge.head])?;
            out.push(g.mul(&t, &g.inv(&h)?)?);
        }
        Ok(Cochain1(out))
    }

    /// Whether `s` agrees across every edge.
    pub fn is_section(&self, s: &Cochain0) -> Result<bool> {
        self.sheaf.check_c0(s)?;
        for (e, edge) in self.sheaf.graph().edges().iter().enumerate() {
            let t = self.restrict(e, Side::Tail, &s.0[edge.tail])?;
            let h = self.restrict(e, Side::Head, &s.0[edge.head])?;
            if t != h {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn torsor_from_cocycle(sheaf: &NetworkSheaf, eta: &Cochain1) -> Result<Torsor> {
    sheaf.check_c1(eta)?;
    Ok(Torsor {
        sheaf: sheaf.clone(),
        cocycle: eta.clone(),
    })
}

/// The torsor of the identity cocycle.
pub fn trivial_torsor(sheaf: &NetworkSheaf) -> Torsor {
    Torsor {
        sheaf: sheaf.clone(),
        cocycle: sheaf.identity_c1(),
    }
}

/// Moves a point along a walk: forward across `e` is `p ↦ p · η_e`, the
/// unique head point agreeing with `p` on `e`; reverse is `p ↦ p · η_e^-1`.
/// Only constant sheaves identify neighbouring stalks.
pub fn transport(torsor: &Torsor, walk: &Walk, p: &GroupElement) -> Result<GroupElement> {
    let group = torsor.sheaf.constant_group()?;
    let graph = torsor.sheaf.graph();
    walk.end(graph)?;
    group.check(p)?;
    let mut acc = p.clone();
    for &(e, d) in &walk.steps {
        let eta = &torsor.cocycle.0[e];
        acc = match d {
            Direction::Forward => group.mul(&acc, eta)?,
            Direction::Reverse => group.mul(&acc, &group.inv(eta)?)?,
        };
    }
    Ok(acc)
}

/// A global section when one exists. The candidate comes from the
/// coboundary witness and is re-checked edge by edge.
pub fn global_sections(torsor: &Torsor) -> Result<Option<Cochain0>> {
    let Some(xi) = is_coboundary(&torsor.sheaf, &torsor.cocycle)? else {
        return Ok(None);
    };
    if !torsor.is_section(&xi)? {
        return Err(Error::InvalidSheaf("coboundary witness failed the section check".into()));
    }
    Ok(Some(xi))
}

/// Stalk maps `Φ_v(p) = p · ξ_v` and `Φ_e(q) = q · F_t(ξ_tail(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorMorphism {
    pub vertex_factors: Cochain0,
    pub edge_factors: Cochain1,
}

impl TorsorMorphism {
    pub fn apply_vertex(&self, torsor: &Torsor, v: usize, p: &GroupElement) -> Result<GroupElement> {
        torsor.vertex_stalk(v).mul(p, &self.vertex_factors.0[v])
    }

    pub fn apply_edge(&self, torsor: &Torsor, e: usize, q: &GroupElement) -> Result<GroupElement> {
        torsor.edge_stalk(e).mul(q, &self.edge_factors.0[e])
    }

    /// Checks restriction compatibility `Φ_e(r(p)) = r'(Φ_v(p))` on both
    /// sides of every edge, and equivariance, at the identity and each
    /// generator of every vertex stalk. Both sides are left-equivariant, so
    /// agreement at one point per stalk already forces agreement everywhere.
    pub fn verify(&self, source: &Torsor, target: &Torsor) -> Result<bool> {
        if source.sheaf != target.sheaf {
            return Err(Error::StalkMismatch("torsors over different sheaves".into()));
        }
        source.sheaf.check_c0(&self.vertex_factors)?;
        source.sheaf.check_c1(&self.edge_factors)?;
        let graph = source.sheaf.graph();
        for (e, edge) in graph.edges().iter().enumerate() {
            for (side, v) in [(Side::Tail, edge.tail), (Side::Head, edge.head)] {
                let stalk = source.vertex_stalk(v);
                let mut points = vec![stalk.identity()];
                points.extend(stalk.generators());
                for p in &points {
                    let lhs = self.apply_edge(source, e, &source.restrict(e, side, p)?)?;
                    let rhs = target.restrict(e, side, &self.apply_vertex(source, v, p)?)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                    for g in &points {
                        let moved = self.apply_vertex(source, v, &source.act_vertex(v, g, p)?)?;
                        let expected = source.act_vertex(v, g, &self.apply_vertex(source, v, p)?)?;
                        if moved != expected {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn torsors_isomorphic(a: &Torsor, b: &Torsor) -> Result<Option<TorsorMorphism>> {
    if a.sheaf != b.sheaf {
        return Err(Error::StalkMismatch("torsors over different sheaves".into()));
    }
    let Some(xi) = cohomologous(&a.sheaf, &a.cocycle, &b.cocycle)? else {
        return Ok(None);
    };
    let graph = a.sheaf.graph();
    let edge_factors = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| a.sheaf.restriction(e, Side::Tail).apply(&xi.0[edge.tail]))
        .collect::<Result<_>>()?;
    let morphism = TorsorMorphism {
        vertex_factors: xi,
        edge_factors: Cochain1(edge_factors),
    };
    if !morphism.verify(a, b)? {
        return Err(Error::InvalidSheaf("gauge witness failed the morphism laws".into()));
    }
    Ok(Some(morphism))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn z(v: &[i64]) -> Cochain1 {
        Cochain1(v.iter().map(|&x| GroupElement::scalar(x)).collect())
    }

    fn penrose() -> Torsor {
        let sheaf = NetworkSheaf::constant(&Multigraph::cycle(4), &GroupDescriptor::integers()).unwrap();
        torsor_from_cocycle(&sheaf, &z(&[1, 1, 1, 1])).unwrap()
    }

    #[test]
    fn penrose_restrictions() {
        let t = penrose();
        for e in 0..4 {
            for h in [-3, 0, 7] {
                let p = GroupElement::scalar(h);
                assert_eq!(t.restrict(e, Side::Tail, &p).unwrap(), p);
                assert_eq!(t.restrict(e, Side::Head, &p).unwrap(), GroupElement::scalar(h - 1));
            }
        }
        assert_eq!(global_sections(&t).unwrap(), None);
        let around = Walk {
            start: 0,
            steps: (0..4).map(|e| (e, Direction::Forward)).collect(),
        };
        assert_eq!(transport(&t, &around, &GroupElement::scalar(0)).unwrap(), GroupElement::scalar(4));
        assert_eq!(transport(&t, &Walk::empty(2), &GroupElement::scalar(5)).unwrap(), GroupElement::scalar(5));
    }

    #[test]
    fn mobius_loop() {
        let g = GroupDescriptor::InfiniteDihedral;
        let sheaf = NetworkSheaf::constant(&Multigraph::cycle(3), &g).unwrap();
        let eta = Cochain1(vec![
            GroupElement::dihedral(0, 1),
            GroupElement::dihedral(1, 1),
            GroupElement::dihedral(0, -1),
        ]);
        let t = torsor_from_cocycle(&sheaf, &eta).unwrap();
        let once = Walk {
            start: 0,
            steps: (0..3).map(|e| (e, Direction::Forward)).collect(),
        };
        let p = GroupElement::dihedral(5, 1);
        let after = transport(&t, &once, &p).unwrap();
        assert_eq!(after, g.mul(&p, &GroupElement::dihedral(1, -1)).unwrap());
        assert_eq!(transport(&t, &once, &after).unwrap(), p);
    }

    #[test]
    fn sections_from_witness() {
        let sheaf = NetworkSheaf::constant(&Multigraph::cycle(3), &GroupDescriptor::integers()).unwrap();
        let t = torsor_from_cocycle(&sheaf, &z(&[1, 2, -3])).unwrap();
        let s = global_sections(&t).unwrap().unwrap();
        let zz = GroupDescriptor::integers();
        let shifted: Vec<GroupElement> = s.0.iter().map(|x| zz.left_divide(&s.0[0], x).unwrap()).collect();
        assert_eq!(Cochain1(shifted), z(&[0, 1, 3]));
        assert!(t.is_section(&s).unwrap());
        let triv = trivial_torsor(&sheaf);
        assert_eq!(global_sections(&triv).unwrap(), Some(sheaf.identity_c0()));
    }

    #[test]
    fn isomorphism_of_penrose_torsors() {
        let t = penrose();
        let u = torsor_from_cocycle(t.sheaf(), &z(&[4, 0, 0, 0])).unwrap();
        let m = torsors_isomorphic(&t, &u).unwrap().unwrap();
        assert!(m.verify(&t, &u).unwrap());
        let id = torsors_isomorphic(&t, &t).unwrap().unwrap();
        assert!(id.verify(&t, &t).unwrap());
        assert!(torsors_isomorphic(&t, &trivial_torsor(t.sheaf())).unwrap().is_none());
    }

    #[test]
    fn extraction_at_identity_points() {
        let t = penrose();
        assert_eq!(&t.extract_cocycle(&t.sheaf().identity_c0()).unwrap(), t.cocycle());
    }

    #[test]
    fn boundary_torsor_restrictions() {
        let g = GroupDescriptor::Cyclic(2);
        let sheaf = NetworkSheaf::boundary_trivial(&Multigraph::path(3), &g, &[0, 2]).unwrap();
        let eta = Cochain1(vec![GroupElement::Residue(1), GroupElement::Residue(0)]);
        let t = torsor_from_cocycle(&sheaf, &eta).unwrap();
        assert_eq!(t.vertex_stalk_size(0), Some(1));
        assert_eq!(t.vertex_stalk_size(1), Some(2));
        assert_eq!(t.edge_stalk_size(0), Some(2));
        assert_eq!(global_sections(&t).unwrap(), None);
        assert!(matches!(transport(&t, &Walk::empty(0), &GroupElement::Residue(0)), Err(Error::Unsupported(_))));
    }
}
