//! Oriented multigraphs, spanning trees, walks and small automorphism groups.
//!
//! Vertices and edges carry string ids at the API boundary and dense indices
//! internally; every index handed out by a [`Multigraph`] refers to
//! declaration order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Reverse => "reverse",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// Vertex where a traversal in `dir` starts.
    pub fn source(&self, dir: Direction) -> usize {
        match dir {
            Direction::Forward => self.tail,
            Direction::Reverse => self.head,
        }
    }

    pub fn target(&self, dir: Direction) -> usize {
        self.source(dir.flip())
    }
}

/// Oriented multigraph. Self-loops and parallel edges are allowed.
#[derive(Clone, Debug)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    incident: Vec<Vec<usize>>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut vertex_index = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref().to_string();
            if vertex_index.insert(v.clone(), names.len()).is_some() {
                return Err(Error::DuplicateId { kind: "vertex", id: v });
            }
            names.push(v);
        }
        let mut edge_index = HashMap::new();
        let mut list = Vec::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); names.len()];
        for (id, tail, head) in edges {
            let id = id.as_ref().to_string();
            let lookup = |v: &V| {
                vertex_index
                    .get(v.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UndeclaredEndpoint {
                        edge: id.clone(),
                        vertex: v.as_ref().to_string(),
                    })
            };
            let (t, h) = (lookup(tail)?, lookup(head)?);
            if edge_index.insert(id.clone(), list.len()).is_some() {
                return Err(Error::DuplicateId { kind: "edge", id });
            }
            incident[t].push(list.len());
            if h != t {
                incident[h].push(list.len());
            }
            list.push(Edge { id, tail: t, head: h });
        }
        Ok(Self {
            vertices: names,
            edges: list,
            vertex_index,
            edge_index,
            incident,
        })
    }

    /// `v1 -> v2 -> ... -> vn -> v1` with edges `e1..en`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1, "a cycle needs at least one vertex");
        let vs: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("e{}", i + 1), vs[i].clone(), vs[(i + 1) % n].clone()))
            .collect();
        Self::new(&vs, &es).expect("well-formed cycle")
    }

    /// `v0 -> v1 -> ... -> v(n-1)` with edges `e1..e(n-1)`.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1, "a path needs at least one vertex");
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("e{i}"), vs[i - 1].clone(), vs[i].clone()))
            .collect();
        Self::new(&vs, &es).expect("well-formed path")
    }

    /// One vertex `v` with `k` loops named `a`, `b`, ...
    pub fn rose(k: usize) -> Self {
        let es: Vec<(String, &str, &str)> = (0..k)
            .map(|i| (petal_name(i), "v", "v"))
            .collect();
        Self::new(&["v"], &es).expect("well-formed rose")
    }

    /// Center `c` with spokes `s_i: c -> l_i`.
    pub fn star(n: usize) -> Self {
        let mut vs = vec!["c".to_string()];
        vs.extend((1..=n).map(|i| format!("l{i}")));
        let es: Vec<(String, String, String)> = (1..=n)
            .map(|i| (format!("s{i}"), "c".to_string(), format!("l{i}")))
            .collect();
        Self::new(&vs, &es).expect("well-formed star")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edges touching `v`, in declaration order; a loop is listed once.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        for s in 0..self.vertex_count() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &self.incident[v] {
                    let edge = &self.edges[e];
                    let w = if edge.tail == v { edge.head } else { edge.tail };
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_labels().0 == 1
    }

    /// `|E| - |V| + #components`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + self.component_labels().0 - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// Degree-one vertices in declaration order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    /// Copy of the graph with edge `e` pointing the other way.
    pub fn with_reversed_edge(&self, e: usize) -> Self {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.tail, &mut edge.head);
        g
    }

    pub fn walk_from_ids(&self, start: &str, steps: &[(&str, Direction)]) -> Result<Walk> {
        let steps = steps
            .iter()
            .map(|(e, d)| Ok((self.edge_by_id(e)?, *d)))
            .collect::<Result<Vec<_>>>()?;
        let walk = Walk {
            start: self.vertex(start)?,
            steps,
        };
        walk.end(self)?;
        Ok(walk)
    }
}

fn petal_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("p{i}")
    }
}

/// Sequence of edge traversals; the empty walk stays at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, Direction)>,
}

impl Walk {
    pub fn empty(start: usize) -> Self {
        Self {
            start,
            steps: Vec::new(),
        }
    }

    /// Final vertex, checking incidence of every step.
    pub fn end(&self, graph: &Multigraph) -> Result<usize> {
        let mut at = self.start;
        if at >= graph.vertex_count() {
            return Err(Error::WalkMismatch(format!("start index {at} out of range")));
        }
        for (i, &(e, dir)) in self.steps.iter().enumerate() {
            let edge = graph
                .edges
                .get(e)
                .ok_or_else(|| Error::WalkMismatch(format!("step {i}: edge index {e} out of range")))?;
            if edge.source(dir) != at {
                return Err(Error::WalkMismatch(format!(
                    "step {i} crosses {} {} but the walk is at {}",
                    edge.id,
                    dir.as_str(),
                    graph.vertex_id(at)
                )));
            }
            at = edge.target(dir);
        }
        Ok(at)
    }

    pub fn is_closed(&self, graph: &Multigraph) -> Result<bool> {
        Ok(self.end(graph)? == self.start)
    }

    pub fn reversed(&self, graph: &Multigraph) -> Result<Self> {
        Ok(Self {
            start: self.end(graph)?,
            steps: self.steps.iter().rev().map(|&(e, d)| (e, d.flip())).collect(),
        })
    }

    pub fn concat(&self, other: &Walk, graph: &Multigraph) -> Result<Self> {
        if self.end(graph)? != other.start {
            return Err(Error::WalkMismatch("walks do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Self {
            start: self.start,
            steps,
        })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn display<'a>(&'a self, graph: &'a Multigraph) -> WalkDisplay<'a> {
        WalkDisplay { walk: self, graph }
    }
}

pub struct WalkDisplay<'a> {
    walk: &'a Walk,
    graph: &'a Multigraph,
}

impl fmt::Display for WalkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph.vertex_id(self.walk.start))?;
        for &(e, d) in &self.walk.steps {
            let mark = match d {
                Direction::Forward => "",
                Direction::Reverse => "^-1",
            };
            write!(f, " {}{}", self.graph.edge(e).id, mark)?;
        }
        Ok(())
    }
}

/// BFS tree of the root's component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    /// `parent[v] = (parent vertex, edge, direction parent -> v)`.
    pub parent: Vec<Option<(usize, usize, Direction)>>,
    pub tree_edges: Vec<bool>,
    /// Vertices of the component in BFS order, root first.
    pub order: Vec<usize>,
}

impl SpanningTree {
    pub fn contains(&self, v: usize) -> bool {
        v == self.root || self.parent[v].is_some()
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edges[e]
    }

    pub fn non_tree_edges(&self, graph: &Multigraph) -> Vec<usize> {
        (0..graph.edge_count())
            .filter(|&e| !self.tree_edges[e] && self.contains(graph.edge(e).tail))
            .collect()
    }

    /// Tree path from the root down to `v`.
    pub fn path_from_root(&self, v: usize) -> Walk {
        let mut steps = Vec::new();
        let mut at = v;
        while let Some((p, e, d)) = self.parent[at] {
            steps.push((e, d));
            at = p;
        }
        steps.reverse();
        Walk {
            start: self.root,
            steps,
        }
    }

    pub fn path_to_root(&self, v: usize) -> Walk {
        let mut steps = Vec::new();
        let mut at = v;
        while let Some((p, e, d)) = self.parent[at] {
            steps.push((e, d.flip()));
            at = p;
        }
        Walk { start: v, steps }
    }
}

fn bfs_tree(graph: &Multigraph, root: usize) -> SpanningTree {
    let mut parent = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    let mut tree_edges = vec![false; graph.edge_count()];
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &e in graph.incident_edges(v) {
            let edge = graph.edge(e);
            let (w, d) = if edge.tail == v {
                (edge.head, Direction::Forward)
            } else {
                (edge.tail, Direction::Reverse)
            };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e, d));
                tree_edges[e] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    SpanningTree {
        root,
        parent,
        tree_edges,
        order,
    }
}

/// Deterministic breadth-first spanning tree; the graph must be connected.
pub fn spanning_tree(graph: &Multigraph, root: usize) -> Result<SpanningTree> {
    if root >= graph.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{root}")));
    }
    let tree = bfs_tree(graph, root);
    if tree.order.len() != graph.vertex_count() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// One closed walk at the root per non-tree edge:
/// root to tail, the edge forward, head back to root.
pub fn fundamental_cycles(graph: &Multigraph, tree: &SpanningTree) -> Vec<Walk> {
    tree.non_tree_edges(graph)
        .into_iter()
        .map(|e| {
            let edge = graph.edge(e);
            let mut steps = tree.path_from_root(edge.tail).steps;
            steps.push((e, Direction::Forward));
            steps.extend(tree.path_to_root(edge.head).steps);
            Walk {
                start: tree.root,
                steps,
            }
        })
        .collect()
}

/// Vertex bijection plus edge bijection with orientation flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphAutomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub reversed: Vec<bool>,
}

impl GraphAutomorphism {
    pub fn identity(graph: &Multigraph) -> Self {
        Self {
            vertex_map: (0..graph.vertex_count()).collect(),
            edge_map: (0..graph.edge_count()).collect(),
            reversed: vec![false; graph.edge_count()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
            && self.edge_map.iter().enumerate().all(|(i, &e)| i == e)
            && self.reversed.iter().all(|r| !r)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Self {
        Self {
            vertex_map: first.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: first.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
            reversed: first
                .edge_map
                .iter()
                .zip(&first.reversed)
                .map(|(&e, &r)| r ^ self.reversed[e])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (i, &v) in self.vertex_map.iter().enumerate() {
            vertex_map[v] = i;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        let mut reversed = vec![false; self.edge_map.len()];
        for (i, &e) in self.edge_map.iter().enumerate() {
            edge_map[e] = i;
            reversed[e] = self.reversed[i];
        }
        Self {
            vertex_map,
            edge_map,
            reversed,
        }
    }

    /// Checks the incidence law on every edge.
    pub fn is_valid_for(&self, graph: &Multigraph) -> bool {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        if self.vertex_map.len() != n || self.edge_map.len() != m || self.reversed.len() != m {
            return false;
        }
        let mut hit_v = vec![false; n];
        let mut hit_e = vec![false; m];
        for &v in &self.vertex_map {
            if v >= n || std::mem::replace(&mut hit_v[v], true) {
                return false;
            }
        }
        for (e, &img) in self.edge_map.iter().enumerate() {
            if img >= m || std::mem::replace(&mut hit_e[img], true) {
                return false;
            }
            let src = graph.edge(e);
            let dst = graph.edge(img);
            let (t, h) = (self.vertex_map[src.tail], self.vertex_map[src.head]);
            let ok = if self.reversed[e] {
                (t, h) == (dst.head, dst.tail)
            } else {
                (t, h) == (dst.tail, dst.head)
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

pub const DEFAULT_AUTOMORPHISM_VERTEX_BOUND: usize = 12;
const AUTOMORPHISM_OUTPUT_BOUND: usize = 1_000_000;

/// Every automorphism of the underlying undirected multigraph, with
/// orientation flags recording which edges it flips.
pub fn enumerate_automorphisms(graph: &Multigraph) -> Result<Vec<GraphAutomorphism>> {
    enumerate_automorphisms_bounded(graph, DEFAULT_AUTOMORPHISM_VERTEX_BOUND)
}

pub fn enumerate_automorphisms_bounded(
    graph: &Multigraph,
    max_vertices: usize,
) -> Result<Vec<GraphAutomorphism>> {
    let n = graph.vertex_count();
    if n > max_vertices {
        return Err(Error::TooLarge {
            what: "automorphism search vertices",
            size: n as u128,
            limit: max_vertices as u128,
        });
    }
    // Undirected multiplicity between unordered vertex pairs.
    let mut mult = vec![vec![0usize; n]; n];
    let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in graph.edges().iter().enumerate() {
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        mult[key.0][key.1] += 1;
        if key.0 != key.1 {
            mult[key.1][key.0] += 1;
        }
        between.entry(key).or_default().push(i);
    }
    let degrees: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();

    let mut vertex_perms = Vec::new();
    let mut current = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_vertex_perm(0, &mut current, &mut used, &mult, &degrees, &mut vertex_perms);

    let mut out = Vec::new();
    let mut keys: Vec<_> = between.keys().copied().collect();
    keys.sort_unstable();
    for perm in vertex_perms {
        // For each edge class, every bijection onto the image class.
        let mut partial = vec![GraphAutomorphism {
            vertex_map: perm.clone(),
            edge_map: vec![usize::MAX; graph.edge_count()],
            reversed: vec![false; graph.edge_count()],
        }];
        for &(a, b) in &keys {
            let (pa, pb) = (perm[a], perm[b]);
            let src = &between[&(a, b)];
            let dst = &between[&(pa.min(pb), pa.max(pb))];
            let mut next = Vec::new();
            for base in &partial {
                for img in permutations(dst) {
                    let flag_choices: Vec<Vec<bool>> = if a == b {
                        all_flags(src.len())
                    } else {
                        vec![src
                            .iter()
                            .zip(&img)
                            .map(|(&e, &f)| perm[graph.edge(e).tail] != graph.edge(f).tail)
                            .collect()]
                    };
                    for flags in flag_choices {
                        let mut aut = base.clone();
                        for ((&e, &f), r) in src.iter().zip(&img).zip(flags) {
                            aut.edge_map[e] = f;
                            aut.reversed[e] = r;
                        }
                        next.push(aut);
                    }
                }
                if next.len() + out.len() > AUTOMORPHISM_OUTPUT_BOUND {
                    return Err(Error::TooLarge {
                        what: "automorphism count",
                        size: (next.len() + out.len()) as u128,
                        limit: AUTOMORPHISM_OUTPUT_BOUND as u128,
                    });
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    Ok(out)
}

fn extend_vertex_perm(
    v: usize,
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    mult: &[Vec<usize>],
    degrees: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    let n = current.len();
    if v == n {
        out.push(current.clone());
        return;
    }
    for w in 0..n {
        if used[w] || degrees[w] != degrees[v] || mult[w][w] != mult[v][v] {
            continue;
        }
        if (0..v).any(|u| mult[u][v] != mult[current[u]][w]) {
            continue;
        }
        used[w] = true;
        current[v] = w;
        extend_vertex_perm(v + 1, current, used, mult, degrees, out);
        used[w] = false;
    }
    current[v] = usize::MAX;
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn all_flags(k: usize) -> Vec<Vec<bool>> {
    (0..1usize << k)
        .map(|mask| (0..k).map(|i| mask >> i & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Multigraph::new(&["a", "a"], &[] as &[(&str, &str, &str)]),
            Err(Error::DuplicateId { kind: "vertex", id: "a".into() })
        );
        assert!(matches!(
            Multigraph::new(&["a"], &[("e", "a", "b")]),
            Err(Error::UndeclaredEndpoint { .. })
        ));
        assert!(matches!(
            Multigraph::new(&["a"], &[("e", "a", "a"), ("e", "a", "a")]),
            Err(Error::DuplicateId { kind: "edge", .. })
        ));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(Multigraph::cycle(4).betti_number(), 1);
        assert_eq!(Multigraph::rose(2).betti_number(), 2);
        assert_eq!(Multigraph::path(3).betti_number(), 0);
        assert_eq!(Multigraph::rose(0).betti_number(), 0);
    }

    #[test]
    fn cycle_tree_has_one_chord() {
        let g = Multigraph::cycle(4);
        let t = spanning_tree(&g, 0).unwrap();
        assert_eq!(t.tree_edges.iter().filter(|&&b| b).count(), 3);
        let cycles = fundamental_cycles(&g, &t);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
        assert!(cycles[0].is_closed(&g).unwrap());
    }

    #[test]
    fn rose_cycles_are_single_loops() {
        let g = Multigraph::rose(2);
        let t = spanning_tree(&g, 0).unwrap();
        let cycles = fundamental_cycles(&g, &t);
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn disconnected_tree_is_an_error() {
        let g = Multigraph::new(&["a", "b"], &[] as &[(&str, &str, &str)]).unwrap();
        assert_eq!(spanning_tree(&g, 0), Err(Error::Disconnected));
    }

    #[test]
    fn walk_incidence_is_checked() {
        let g = Multigraph::path(3);
        assert!(g
            .walk_from_ids("v0", &[("e1", Direction::Forward), ("e2", Direction::Forward)])
            .is_ok());
        assert!(matches!(
            g.walk_from_ids("v0", &[("e2", Direction::Forward)]),
            Err(Error::WalkMismatch(_))
        ));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(enumerate_automorphisms(&Multigraph::star(4)).unwrap().len(), 24);
        assert_eq!(enumerate_automorphisms(&Multigraph::path(3)).unwrap().len(), 2);
        assert_eq!(enumerate_automorphisms(&Multigraph::rose(0)).unwrap().len(), 1);
        // Swap the petals and flip each independently.
        assert_eq!(enumerate_automorphisms(&Multigraph::rose(2)).unwrap().len(), 8);
        // Dihedral group of the square, orientation flips forced.
        assert_eq!(enumerate_automorphisms(&Multigraph::cycle(4)).unwrap().len(), 8);
    }

    #[test]
    fn automorphisms_form_a_group() {
        for g in [Multigraph::cycle(5), Multigraph::star(3), Multigraph::rose(2)] {
            let auts = enumerate_automorphisms(&g).unwrap();
            let set: HashSet<_> = auts.iter().cloned().collect();
            assert!(auts.iter().any(GraphAutomorphism::is_identity));
            for a in &auts {
                assert!(a.is_valid_for(&g));
                assert!(set.contains(&a.inverse()));
                for b in &auts {
                    assert!(set.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn size_bound() {
        assert!(matches!(
            enumerate_automorphisms(&Multigraph::path(13)),
            Err(Error::TooLarge { .. })
        ));
    }
}
