//! Paradox spec files: strict JSON documents describing a graph, a
//! structure group, a sheaf and either a cocycle or boundary values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use paradox_core::graph::{Direction, Multigraph, Walk};
use paradox_core::groups::{cube_rotation_group, symmetric_group, GroupDescriptor, GroupElement, Homomorphism, TableGroup};
use paradox_core::paradox::{parse_word, GraphMap, Paradox, ParadoxMorphism};
use paradox_core::sheaf::{Cochain1, NetworkSheaf};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub graph: GraphSection,
    pub group: GroupSection,
    pub sheaf: SheafSection,
    /// Edge id to element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<BTreeMap<String, Value>>,
    /// Boundary vertex id to element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_values: Option<BTreeMap<String, Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSection {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSection {
    Integers,
    FreeAbelian { rank: usize },
    Cyclic { order: u64 },
    InfiniteDihedral,
    Symmetric { degree: usize },
    CubeRotations,
    Table { label: String, elements: Vec<String>, table: Vec<Vec<usize>> },
    Product { factors: Vec<GroupSection> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SheafSection {
    Constant,
    BoundaryTrivial { boundary: Vec<String> },
}

/// A validated spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadoxSpec {
    pub name: String,
    pub group_section: GroupSection,
    pub group: GroupDescriptor,
    pub sheaf: NetworkSheaf,
    pub cocycle: Option<Cochain1>,
    /// Values in the order of the sheaf's boundary.
    pub boundary_values: Option<Vec<GroupElement>>,
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        path: PathBuf::new(),
        field: field.into(),
        message: message.into(),
    }
}

impl GroupSection {
    pub fn descriptor(&self) -> Result<GroupDescriptor, CliError> {
        let g = match self {
            GroupSection::Integers => GroupDescriptor::integers(),
            GroupSection::FreeAbelian { rank } => GroupDescriptor::FreeAbelian(*rank),
            GroupSection::Cyclic { order } => GroupDescriptor::Cyclic(*order),
            GroupSection::InfiniteDihedral => GroupDescriptor::InfiniteDihedral,
            GroupSection::Symmetric { degree } => {
                if !(1..=5).contains(degree) {
                    return Err(invalid("group.degree", "symmetric groups are supported for degree 1..=5"));
                }
                GroupDescriptor::table(symmetric_group(*degree))
            }
            GroupSection::CubeRotations => GroupDescriptor::table(cube_rotation_group()),
            GroupSection::Table { label, elements, table } => GroupDescriptor::table(
                TableGroup::new(label.clone(), elements.clone(), table.clone())
                    .map_err(|e| invalid("group.table", e.to_string()))?,
            ),
            GroupSection::Product { factors } => GroupDescriptor::DirectProduct(
                factors.iter().map(GroupSection::descriptor).collect::<Result<_, _>>()?,
            ),
        };
        g.validate().map_err(|e| invalid("group", e.to_string()))?;
        Ok(g)
    }
}

/// Decodes an element: integers or integer arrays for `Z^n`, `1`/`-1`
/// (numbers or strings) for `Z/2`, residues `0..m` for `Z/m`, `[h, ±1]` for
/// the infinite dihedral group, element names for table groups and arrays
/// of factor elements for products.
pub fn decode_element(group: &GroupDescriptor, value: &Value) -> Result<GroupElement, String> {
    let int = |v: &Value| v.as_i64().ok_or_else(|| format!("expected an integer, got {v}"));
    let x = match group {
        GroupDescriptor::FreeAbelian(1) if value.is_number() => GroupElement::scalar(int(value)?),
        GroupDescriptor::FreeAbelian(n) => {
            let items = value.as_array().ok_or_else(|| format!("expected an array of {n} integers, got {value}"))?;
            if items.len() != *n {
                return Err(format!("expected {n} coordinates, got {}", items.len()));
            }
            GroupElement::Vector(items.iter().map(int).collect::<Result<_, _>>()?)
        }
        GroupDescriptor::Cyclic(2) => {
            let s = match value {
                Value::String(s) => s.as_str().parse::<i64>().map_err(|_| format!("expected +1 or -1, got {value}"))?,
                _ => int(value)?,
            };
            match s {
                1 => GroupElement::Residue(0),
                -1 => GroupElement::Residue(1),
                _ => return Err(format!("Z/2 elements are written +1 or -1, got {value}")),
            }
        }
        GroupDescriptor::Cyclic(m) => {
            let r = int(value)?;
            if r < 0 || r as u64 >= *m {
                return Err(format!("expected a residue in 0..{m}, got {r}"));
            }
            GroupElement::Residue(r as u64)
        }
        GroupDescriptor::InfiniteDihedral => match value.as_array().map(Vec::as_slice) {
            Some([h, e]) => {
                let eps = int(e)?;
                if eps != 1 && eps != -1 {
                    return Err(format!("orientation must be +1 or -1, got {eps}"));
                }
                GroupElement::dihedral(int(h)?, eps)
            }
            _ => return Err(format!("expected [height, orientation], got {value}")),
        },
        GroupDescriptor::FiniteTable(t) => {
            let name = value.as_str().ok_or_else(|| format!("expected an element name, got {value}"))?;
            GroupElement::Index(t.index_of(name).ok_or_else(|| format!("`{name}` is not an element of {}", t.label()))?)
        }
        GroupDescriptor::DirectProduct(fs) => {
            let items = value.as_array().ok_or_else(|| format!("expected an array of {} factors", fs.len()))?;
            if items.len() != fs.len() {
                return Err(format!("expected {} factors, got {}", fs.len(), items.len()));
            }
            GroupElement::Tuple(
                fs.iter()
                    .zip(items)
                    .map(|(f, v)| decode_element(f, v))
                    .collect::<Result<_, _>>()?,
            )
        }
    };
    group.check(&x).map_err(|e| e.to_string())?;
    Ok(x)
}

/// Inverse of [`decode_element`].
pub fn encode_element(group: &GroupDescriptor, x: &GroupElement) -> Value {
    match (group, x) {
        (GroupDescriptor::FreeAbelian(1), GroupElement::Vector(v)) => Value::from(v[0]),
        (GroupDescriptor::FreeAbelian(_), GroupElement::Vector(v)) => Value::from(v.clone()),
        (GroupDescriptor::Cyclic(2), GroupElement::Residue(r)) => Value::from(if *r == 0 { 1 } else { -1 }),
        (GroupDescriptor::Cyclic(_), GroupElement::Residue(r)) => Value::from(*r),
        (GroupDescriptor::InfiniteDihedral, GroupElement::Dihedral { h, eps }) => {
            Value::from(vec![*h, eps.value()])
        }
        (GroupDescriptor::FiniteTable(t), GroupElement::Index(i)) => Value::from(t.name(*i)),
        (GroupDescriptor::DirectProduct(fs), GroupElement::Tuple(xs)) => {
            Value::Array(fs.iter().zip(xs).map(|(f, x)| encode_element(f, x)).collect())
        }
        _ => Value::String(group.render(x)),
    }
}

impl SpecFile {
    pub fn resolve(&self) -> Result<ParadoxSpec, CliError> {
        let edges: Vec<(&str, &str, &str)> = self
            .graph
            .edges
            .iter()
            .map(|e| (e.id.as_str(), e.tail.as_str(), e.head.as_str()))
            .collect();
        let vertices: Vec<&str> = self.graph.vertices.iter().map(String::as_str).collect();
        let graph = Multigraph::new(&vertices, &edges).map_err(|e| invalid("graph", e.to_string()))?;
        let group = self.group.descriptor()?;
        let sheaf = match &self.sheaf {
            SheafSection::Constant => NetworkSheaf::constant(&graph, &group),
            SheafSection::BoundaryTrivial { boundary } => {
                let ids = boundary
                    .iter()
                    .map(|v| graph.vertex(v).map_err(|e| invalid("sheaf.boundary", e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                NetworkSheaf::boundary_trivial(&graph, &group, &ids)
            }
        }
        .map_err(|e| invalid("sheaf", e.to_string()))?;

        let cocycle = match &self.cocycle {
            None => None,
            Some(map) => {
                for id in map.keys() {
                    graph.edge_by_id(id).map_err(|_| invalid(format!("cocycle.{id}"), "no such edge"))?;
                }
                let values = graph
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(e, edge)| {
                        let field = format!("cocycle.{}", edge.id);
                        let v = map.get(&edge.id).ok_or_else(|| invalid(&field, "missing value"))?;
                        decode_element(sheaf.edge_stalk(e), v).map_err(|m| invalid(&field, m))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Cochain1(values))
            }
        };

        let boundary_values = match &self.boundary_values {
            None => None,
            Some(map) => {
                let SheafSection::BoundaryTrivial { boundary } = &self.sheaf else {
                    return Err(invalid("boundary_values", "only meaningful for a boundary_trivial sheaf"));
                };
                for id in map.keys() {
                    if !boundary.contains(id) {
                        return Err(invalid(format!("boundary_values.{id}"), "not a boundary vertex"));
                    }
                }
                let values = boundary
                    .iter()
                    .map(|id| {
                        let field = format!("boundary_values.{id}");
                        let v = map.get(id).ok_or_else(|| invalid(&field, "missing value"))?;
                        decode_element(&group, v).map_err(|m| invalid(&field, m))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(values)
            }
        };
        Ok(ParadoxSpec {
            name: self.name.clone().unwrap_or_else(|| "paradox".into()),
            group_section: self.group.clone(),
            group,
            sheaf,
            cocycle,
            boundary_values,
        })
    }
}

impl ParadoxSpec {
    pub fn graph(&self) -> &Multigraph {
        self.sheaf.graph()
    }

    pub fn to_file(&self) -> SpecFile {
        let graph = self.graph();
        let vid = |v: usize| graph.vertex_id(v).to_string();
        SpecFile {
            name: Some(self.name.clone()),
            graph: GraphSection {
                vertices: graph.vertices().to_vec(),
                edges: graph
                    .edges()
                    .iter()
                    .map(|e| EdgeSection { id: e.id.clone(), tail: vid(e.tail), head: vid(e.head) })
                    .collect(),
            },
            group: self.group_section.clone(),
            sheaf: if self.sheaf.boundary().is_empty() {
                SheafSection::Constant
            } else {
                SheafSection::BoundaryTrivial { boundary: self.sheaf.boundary().iter().map(|&v| vid(v)).collect() }
            },
            cocycle: self.cocycle.as_ref().map(|c| {
                c.0.iter()
                    .enumerate()
                    .map(|(e, x)| (graph.edge(e).id.clone(), encode_element(self.sheaf.edge_stalk(e), x)))
                    .collect()
            }),
            boundary_values: self.boundary_values.as_ref().map(|b| {
                self.sheaf
                    .boundary()
                    .iter()
                    .zip(b)
                    .map(|(&v, x)| (vid(v), encode_element(&self.group, x)))
                    .collect()
            }),
        }
    }

    /// The paradox this file describes; trivial classes are an error.
    pub fn paradox(&self) -> Result<Paradox, CliError> {
        let p = match (&self.cocycle, &self.boundary_values) {
            (Some(eta), None) => Paradox::new(self.name.clone(), self.sheaf.clone(), eta.clone()),
            (None, Some(beta)) => {
                Paradox::from_boundary(self.name.clone(), self.graph(), &self.group, self.sheaf.boundary(), beta)
            }
            _ => return Err(invalid("cocycle", "give exactly one of `cocycle` and `boundary_values`")),
        };
        let field = if self.cocycle.is_some() { "cocycle" } else { "boundary_values" };
        p.map_err(|e| invalid(field, e.to_string()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

pub(crate) fn at_path(e: CliError, path: &Path) -> CliError {
    match e {
        CliError::Invalid { field, message, .. } => CliError::Invalid { path: path.to_path_buf(), field, message },
        other => other,
    }
}

pub fn load_spec(path: &Path) -> Result<ParadoxSpec, CliError> {
    let file: SpecFile = read_json(path)?;
    file.resolve().map_err(|e| at_path(e, path))
}

/// Comparison data supplied alongside two specs `A` and `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MorphismFile {
    /// `phi: G_A -> G_B` and `psi: G_B -> G_A`, as generator images.
    Fiber { phi: Vec<Value>, psi: Vec<Value> },
    /// Morphisms `A -> B` and optionally `B -> A`.
    Path {
        forward: MorphismBlock,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        backward: Option<MorphismBlock>,
    },
}

/// A graph map (vertex ids to vertex ids, edge ids to walks written as
/// words in edge ids such as `"a b^-1"`, or `""` for a constant walk) and
/// the homomorphism between target and source groups.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismBlock {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
    pub hom: Vec<Value>,
}

#[allow(clippy::large_enum_variant)]
pub enum Comparison {
    Fiber { phi: Homomorphism, psi: Homomorphism },
    Path { forward: ParadoxMorphism, backward: Option<ParadoxMorphism> },
}

pub fn homomorphism(source: &GroupDescriptor, target: &GroupDescriptor, images: &[Value], field: &str) -> Result<Homomorphism, CliError> {
    let images = images
        .iter()
        .enumerate()
        .map(|(i, v)| decode_element(target, v).map_err(|m| invalid(format!("{field}[{i}]"), m)))
        .collect::<Result<Vec<_>, _>>()?;
    Homomorphism::new(source.clone(), target.clone(), images).map_err(|e| invalid(field, e.to_string()))
}

fn graph_map(block: &MorphismBlock, source: &Multigraph, target: &Multigraph, field: &str) -> Result<GraphMap, CliError> {
    let vertex_map = source
        .vertices()
        .iter()
        .map(|v| {
            let f = format!("{field}.vertex_map.{v}");
            let image = block.vertex_map.get(v).ok_or_else(|| invalid(&f, "missing image"))?;
            target.vertex(image).map_err(|e| invalid(&f, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for key in block.vertex_map.keys() {
        source.vertex(key).map_err(|_| invalid(format!("{field}.vertex_map.{key}"), "no such vertex"))?;
    }
    for key in block.edge_map.keys() {
        source.edge_by_id(key).map_err(|_| invalid(format!("{field}.edge_map.{key}"), "no such edge"))?;
    }
    let edge_map = source
        .edges()
        .iter()
        .map(|edge| {
            let f = format!("{field}.edge_map.{}", edge.id);
            let text = block.edge_map.get(&edge.id).ok_or_else(|| invalid(&f, "missing image"))?;
            let word = parse_word(text).map_err(|e| invalid(&f, e.to_string()))?;
            let mut steps = Vec::new();
            for (id, k) in &word.0 {
                let e = target.edge_by_id(id).map_err(|e| invalid(&f, e.to_string()))?;
                let d = if *k < 0 { Direction::Reverse } else { Direction::Forward };
                steps.extend(std::iter::repeat_n((e, d), k.unsigned_abs() as usize));
            }
            Ok(Walk { start: vertex_map[edge.tail], steps })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    GraphMap::new(source, target, vertex_map, edge_map).map_err(|e| invalid(field, e.to_string()))
}

fn paradox_morphism(block: &MorphismBlock, a: &ParadoxSpec, b: &ParadoxSpec, field: &str) -> Result<ParadoxMorphism, CliError> {
    Ok(ParadoxMorphism {
        map: graph_map(block, a.graph(), b.graph(), field)?,
        hom: homomorphism(&b.group, &a.group, &block.hom, &format!("{field}.hom"))?,
    })
}

pub fn load_comparison(path: &Path, a: &ParadoxSpec, b: &ParadoxSpec) -> Result<Comparison, CliError> {
    let file: MorphismFile = read_json(path)?;
    let resolve = || match &file {
        MorphismFile::Fiber { phi, psi } => Ok(Comparison::Fiber {
            phi: homomorphism(&a.group, &b.group, phi, "phi")?,
            psi: homomorphism(&b.group, &a.group, psi, "psi")?,
        }),
        MorphismFile::Path { forward, backward } => Ok(Comparison::Path {
            forward: paradox_morphism(forward, a, b, "forward")?,
            backward: backward.as_ref().map(|m| paradox_morphism(m, b, a, "backward")).transpose()?,
        }),
    };
    resolve().map_err(|e| at_path(e, path))
}
