//! Paradoxes as non-trivial torsor classes, and the maps between them.

mod fiber;
mod iso;
mod presentation;
mod tree;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Direction, GraphAutomorphism, Multigraph, Walk};
use crate::groups::{GroupDescriptor, GroupElement, Homomorphism};
use crate::sheaf::{
    boundary_obstruction, cohomologous, holonomy, is_coboundary, tree_relative_invariant, walk_product, Cochain0, Cochain1,
    BoundaryOutcome, HolonomyData, NetworkSheaf, SheafKind,
};

pub use fiber::{fiber_equivalent, search_fiber_equivalence, FiberSearch};
pub use iso::{are_isomorphic, Decider, IsoVerdict, IsoWitness};
pub use presentation::{evaluate_word, parse_word, validate_presentation_rep, Word};
pub use tree::{classify_tree_boundary, TreeClassification};

/// Cached class data used by the comparison ladder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassInvariant {
    Holonomy(HolonomyData),
    /// Relative products from the first leaf to the others.
    Relative(Vec<GroupElement>),
    /// Neither applies (boundary sheaves off trees, general sheaves).
    None,
}

#[derive(Clone, Debug)]
pub struct Paradox {
    name: String,
    sheaf: NetworkSheaf,
    cocycle: Cochain1,
    invariant: ClassInvariant,
}

impl PartialEq for Paradox {
    fn eq(&self, other: &Self) -> bool {
        self.sheaf == other.sheaf && self.cocycle == other.cocycle
    }
}

impl Eq for Paradox {}

impl Paradox {
    /// Rejects cocycles whose class is trivial.
    pub fn new(name: impl Into<String>, sheaf: NetworkSheaf, cocycle: Cochain1) -> Result<Self> {
        let name = name.into();
        sheaf.check_c1(&cocycle)?;
        let invariant = match sheaf.kind() {
            SheafKind::Constant => ClassInvariant::Holonomy(holonomy(&sheaf, &cocycle, 0)?),
            SheafKind::BoundaryTrivial { boundary }
                if sheaf.graph().is_tree() && *boundary == sheaf.graph().leaves() =>
            {
                ClassInvariant::Relative(tree_relative_invariant(&sheaf, &cocycle)?)
            }
            _ => ClassInvariant::None,
        };
        if is_coboundary(&sheaf, &cocycle)?.is_some() {
            return Err(Error::TrivialClass);
        }
        Ok(Self {
            name,
            sheaf,
            cocycle,
            invariant,
        })
    }

    pub fn constant(name: impl Into<String>, graph: &Multigraph, group: &GroupDescriptor, cocycle: Cochain1) -> Result<Self> {
        Self::new(name, NetworkSheaf::constant(graph, group)?, cocycle)
    }

    /// The class of boundary values `β` on `boundary`, realized as a cocycle
    /// of the boundary-trivialized sheaf. Extendable data is trivial.
    pub fn from_boundary(
        name: impl Into<String>,
        graph: &Multigraph,
        group: &GroupDescriptor,
        boundary: &[usize],
        beta: &[GroupElement],
    ) -> Result<Self> {
        match boundary_obstruction(graph, group, boundary, beta)? {
            BoundaryOutcome::Extends(_) => Err(Error::TrivialClass),
            BoundaryOutcome::Obstructed { induced, .. } => {
                Self::new(name, NetworkSheaf::boundary_trivial(graph, group, boundary)?, induced)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Multigraph {
        self.sheaf.graph()
    }

    pub fn sheaf(&self) -> &NetworkSheaf {
        &self.sheaf
    }

    pub fn cocycle(&self) -> &Cochain1 {
        &self.cocycle
    }

    /// Structure group of a constant or boundary-trivialized sheaf.
    pub fn group(&self) -> Option<&GroupDescriptor> {
        self.sheaf.group()
    }

    pub fn invariant(&self) -> &ClassInvariant {
        &self.invariant
    }

    pub fn holonomy(&self) -> Option<&HolonomyData> {
        match &self.invariant {
            ClassInvariant::Holonomy(h) => Some(h),
            _ => None,
        }
    }

    pub fn relative_invariant(&self) -> Option<&[GroupElement]> {
        match &self.invariant {
            ClassInvariant::Relative(r) => Some(r),
            _ => None,
        }
    }
}

/// Cellular graph map: vertices to vertices, edges to walks between the
/// images of their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    source: Multigraph,
    target: Multigraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<Walk>,
}

impl GraphMap {
    pub fn new(source: &Multigraph, target: &Multigraph, vertex_map: Vec<usize>, edge_map: Vec<Walk>) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() || edge_map.len() != source.edge_count() {
            return Err(Error::InvalidGraphMap("map sizes do not match the source graph".into()));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::InvalidGraphMap(format!("vertex image #{v} out of range")));
        }
        for (e, edge) in source.edges().iter().enumerate() {
            let walk = &edge_map[e];
            let end = walk
                .end(target)
                .map_err(|err| Error::InvalidGraphMap(format!("edge {}: {err}", edge.id)))?;
            if walk.start != vertex_map[edge.tail] || end != vertex_map[edge.head] {
                return Err(Error::InvalidGraphMap(format!(
                    "edge {} must map to a walk from {} to {}",
                    edge.id,
                    target.vertex_id(vertex_map[edge.tail]),
                    target.vertex_id(vertex_map[edge.head])
                )));
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(graph: &Multigraph) -> Self {
        let edge_map = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| Walk {
                start: edge.tail,
                steps: vec![(e, Direction::Forward)],
            })
            .collect();
        Self {
            source: graph.clone(),
            target: graph.clone(),
            vertex_map: (0..graph.vertex_count()).collect(),
            edge_map,
        }
    }

    pub fn from_automorphism(graph: &Multigraph, sigma: &GraphAutomorphism) -> Result<Self> {
        let edge_map = (0..graph.edge_count())
            .map(|e| {
                let target = sigma.edge_map[e];
                let image = graph.edge(target);
                if sigma.reversed[e] {
                    Walk {
                        start: image.head,
                        steps: vec![(target, Direction::Reverse)],
                    }
                } else {
                    Walk {
                        start: image.tail,
                        steps: vec![(target, Direction::Forward)],
                    }
                }
            })
            .collect();
        Self::new(graph, graph, sigma.vertex_map.clone(), edge_map)
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[Walk] {
        &self.edge_map
    }

    /// `second ∘ self`.
    pub fn then(&self, second: &GraphMap) -> Result<GraphMap> {
        if second.source != self.target {
            return Err(Error::InvalidGraphMap("maps do not compose".into()));
        }
        let vertex_map = self.vertex_map.iter().map(|&v| second.vertex_map[v]).collect();
        let mut edge_map = Vec::with_capacity(self.edge_map.len());
        for walk in &self.edge_map {
            let mut out = Walk::empty(second.vertex_map[walk.start]);
            for &(e, d) in &walk.steps {
                let piece = match d {
                    Direction::Forward => second.edge_map[e].clone(),
                    Direction::Reverse => second.edge_map[e].reversed(&second.target)?,
                };
                out = out.concat(&piece, &second.target)?;
            }
            edge_map.push(out);
        }
        GraphMap::new(&self.source, &second.target, vertex_map, edge_map)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .source
            .edges()
            .iter()
            .zip(&self.edge_map)
            .map(|(edge, w)| format!("{} -> {}", edge.id, w.display(&self.target)))
            .collect();
        parts.join(", ")
    }
}

/// `(f*η)_e` is the ordered product of `η` along the image walk of `e`.
pub fn pullback_cocycle(f: &GraphMap, group: &GroupDescriptor, eta: &Cochain1) -> Result<Cochain1> {
    if eta.0.len() != f.target.edge_count() {
        return Err(Error::StalkMismatch("cochain does not live on the target graph".into()));
    }
    f.edge_map
        .iter()
        .map(|w| walk_product(&f.target, group, eta, w))
        .collect::<Result<_>>()
        .map(Cochain1)
}

/// `Φ` applied edge by edge.
pub fn pushforward_cocycle(phi: &Homomorphism, eta: &Cochain1) -> Result<Cochain1> {
    phi.apply_all(&eta.0).map(Cochain1)
}

/// `f: X₁ → X₂` together with `Φ: G₂ → G₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadoxMorphism {
    pub map: GraphMap,
    pub hom: Homomorphism,
}

impl ParadoxMorphism {
    pub fn identity(p: &Paradox) -> Result<Self> {
        let group = p
            .group()
            .ok_or_else(|| Error::Unsupported("morphisms need a constant or boundary sheaf".into()))?;
        Ok(Self {
            map: GraphMap::identity(p.graph()),
            hom: Homomorphism::identity(group),
        })
    }

    /// `(m₂ ∘ m₁)`: maps compose forwards, homomorphisms backwards.
    pub fn then(&self, second: &ParadoxMorphism) -> Result<ParadoxMorphism> {
        Ok(ParadoxMorphism {
            map: self.map.then(&second.map)?,
            hom: self.hom.compose(&second.hom)?,
        })
    }
}

impl fmt::Display for ParadoxMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f: {}; Φ: {}", self.map.describe(), self.hom.describe())
    }
}

/// Result of a coherence check: the transported cocycle and, when it is
/// cohomologous to the source cocycle, the gauge witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub pushed: Cochain1,
    pub witness: Option<Cochain0>,
}

impl MorphismCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

/// Coherence `Φ_*(f^*[η₂]) = [η₁]` for a morphism `P₁ → P₂`.
pub fn check_morphism(m: &ParadoxMorphism, p1: &Paradox, p2: &Paradox) -> Result<MorphismCheck> {
    if m.map.source != *p1.graph() || m.map.target != *p2.graph() {
        return Err(Error::InvalidGraphMap("graph map does not run from the first base to the second".into()));
    }
    let (Some(g1), Some(g2)) = (p1.group(), p2.group()) else {
        return Err(Error::Unsupported("morphisms need constant or boundary-trivialized sheaves".into()));
    };
    if m.hom.source() != g2 || m.hom.target() != g1 {
        return Err(Error::InvalidHomomorphism(format!(
            "expected a homomorphism {g2} -> {g1}, got {} -> {}",
            m.hom.source(),
            m.hom.target()
        )));
    }
    match (p1.sheaf.kind(), p2.sheaf.kind()) {
        (SheafKind::Constant, SheafKind::Constant) => {}
        (SheafKind::BoundaryTrivial { boundary: a1 }, SheafKind::BoundaryTrivial { boundary: a2 }) => {
            if a1.iter().any(|v| !a2.contains(&m.map.vertex_map[*v])) {
                return Err(Error::BoundaryMismatch("the graph map must send boundary into boundary".into()));
            }
        }
        _ => {
            return Err(Error::Unsupported(
                "morphisms between constant and boundary-trivialized paradoxes".into(),
            ))
        }
    }
    let pulled = pullback_cocycle(&m.map, g2, &p2.cocycle)?;
    let pushed = pushforward_cocycle(&m.hom, &pulled)?;
    let witness = cohomologous(&p1.sheaf, &pushed, &p1.cocycle)?;
    Ok(MorphismCheck { pushed, witness })
}
