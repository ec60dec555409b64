//! Signed rotation systems.
//!
//! A ribbon graph is stored as a list of vertices, each carrying the cyclic
//! order of the edge ends attached to it, and a list of edges, each carrying a
//! label and a twist sign. Every edge has exactly two ends, written `label.1`
//! and `label.2`; a loop has both ends in the same rotation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::EdgeSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_twisted(self) -> bool {
        self == Sign::Minus
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One of the two ends of an edge. `end` is 0 for `label.1` and 1 for `label.2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: u8,
}

impl EdgeEnd {
    pub fn new(edge: usize, end: u8) -> Self {
        debug_assert!(end < 2);
        EdgeEnd { edge, end }
    }

    /// Dense index `2 * edge + end`.
    pub fn dart(self) -> usize {
        2 * self.edge + self.end as usize
    }

    pub fn from_dart(dart: usize) -> Self {
        EdgeEnd {
            edge: dart / 2,
            end: (dart % 2) as u8,
        }
    }

    pub fn opposite(self) -> Self {
        EdgeEnd {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub label: String,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub name: String,
    pub rotation: Vec<EdgeEnd>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    /// dart -> (vertex, position in rotation)
    location: Vec<(usize, usize)>,
}

/// A reference to an edge end as written in a rotation, e.g. `a.2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndRef {
    pub label: String,
    pub end: u32,
}

impl EndRef {
    /// Parses `label.1` / `label.2`. Anything else after the dot is kept and
    /// reported by [`build_graph`].
    pub fn parse(token: &str) -> Option<EndRef> {
        let (label, end) = token.rsplit_once('.')?;
        Some(EndRef {
            label: label.to_string(),
            end: end.parse().ok()?,
        })
    }
}

impl fmt::Display for EndRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.label, self.end)
    }
}

/// Unvalidated rotation-system description, the input of [`build_graph`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub edges: Vec<(String, Sign)>,
    pub vertices: Vec<(String, Vec<EndRef>)>,
}

impl GraphSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge(mut self, label: &str, sign: Sign) -> Self {
        self.edges.push((label.to_string(), sign));
        self
    }

    /// Adds a vertex whose rotation is given as `label.end` tokens.
    ///
    /// # Panics
    /// If a token is not of the form `label.number`.
    pub fn vertex(mut self, name: &str, ends: &[&str]) -> Self {
        let ends = ends
            .iter()
            .map(|t| EndRef::parse(t).unwrap_or_else(|| panic!("malformed edge end {t}")))
            .collect();
        self.vertices.push((name.to_string(), ends));
        self
    }

    pub fn build(&self) -> Result<RibbonGraph> {
        build_graph(self)
    }
}

/// Validates a rotation-system description.
pub fn build_graph(spec: &GraphSpec) -> Result<RibbonGraph> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, (label, _)) in spec.edges.iter().enumerate() {
        if index.insert(label.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel {
                label: label.clone(),
            });
        }
    }
    let mut names = HashSet::new();
    let mut seen = vec![false; 2 * spec.edges.len()];
    let mut vertices = Vec::with_capacity(spec.vertices.len());
    for (name, ends) in &spec.vertices {
        if !names.insert(name.as_str()) {
            return Err(Error::DuplicateVertex { name: name.clone() });
        }
        let mut rotation = Vec::with_capacity(ends.len());
        for (position, r) in ends.iter().enumerate() {
            let Some(&edge) = index.get(r.label.as_str()) else {
                return Err(Error::DanglingReference {
                    end: r.to_string(),
                    vertex: name.clone(),
                    position,
                });
            };
            if r.end != 1 && r.end != 2 {
                return Err(Error::InvalidEndIndex {
                    end: r.to_string(),
                    vertex: name.clone(),
                    position,
                });
            }
            let end = EdgeEnd::new(edge, (r.end - 1) as u8);
            if std::mem::replace(&mut seen[end.dart()], true) {
                return Err(Error::DuplicateEdgeEnd {
                    end: r.to_string(),
                    vertex: name.clone(),
                    position,
                });
            }
            rotation.push(end);
        }
        vertices.push(Vertex {
            name: name.clone(),
            rotation,
        });
    }
    if let Some(dart) = seen.iter().position(|s| !s) {
        let end = EdgeEnd::from_dart(dart);
        return Err(Error::MissingEdgeEnd {
            end: format!("{}.{}", spec.edges[end.edge].0, end.end + 1),
        });
    }
    let edges = spec
        .edges
        .iter()
        .map(|(label, sign)| Edge {
            label: label.clone(),
            sign: *sign,
        })
        .collect();
    Ok(RibbonGraph::from_parts(edges, vertices))
}

impl RibbonGraph {
    /// Assembles a graph from parts already known to be consistent.
    pub(crate) fn from_parts(edges: Vec<Edge>, vertices: Vec<Vertex>) -> Self {
        let mut location = vec![(usize::MAX, usize::MAX); 2 * edges.len()];
        for (v, vertex) in vertices.iter().enumerate() {
            for (p, end) in vertex.rotation.iter().enumerate() {
                debug_assert_eq!(location[end.dart()].0, usize::MAX, "edge end placed twice");
                location[end.dart()] = (v, p);
            }
        }
        debug_assert!(location.iter().all(|l| l.0 != usize::MAX), "edge end not placed");
        RibbonGraph {
            edges,
            vertices,
            location,
        }
    }

    /// The graph with one vertex and no edges.
    pub fn single_vertex() -> Self {
        Self::from_parts(
            Vec::new(),
            vec![Vertex {
                name: "v0".into(),
                rotation: Vec::new(),
            }],
        )
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn label(&self, e: usize) -> &str {
        &self.edges[e].label
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.edges[e].sign
    }

    pub fn rotation(&self, v: usize) -> &[EdgeEnd] {
        &self.vertices[v].rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].rotation.len()
    }

    pub fn vertex_of(&self, end: EdgeEnd) -> usize {
        self.location[end.dart()].0
    }

    pub fn position_of(&self, end: EdgeEnd) -> usize {
        self.location[end.dart()].1
    }

    /// The two vertices carrying the ends of `e` (equal for a loop).
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (
            self.vertex_of(EdgeEnd::new(e, 0)),
            self.vertex_of(EdgeEnd::new(e, 1)),
        )
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, w) = self.endpoints(e);
        u == w
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.num_edges())
    }

    pub fn no_edges(&self) -> EdgeSubset {
        EdgeSubset::empty(self.num_edges())
    }

    /// Resolves edge labels to a subset of this graph.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<EdgeSubset> {
        let mut s = self.no_edges();
        for l in labels {
            let l = l.as_ref();
            s.insert(self.edge_index(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?);
        }
        Ok(s)
    }

    pub fn subset_labels(&self, a: &EdgeSubset) -> Vec<&str> {
        self.check_universe(a);
        a.iter().map(|e| self.label(e)).collect()
    }

    /// `{a,b}` style rendering of a subset.
    pub fn format_subset(&self, a: &EdgeSubset) -> String {
        format!("{{{}}}", self.subset_labels(a).join(","))
    }

    pub(crate) fn check_universe(&self, a: &EdgeSubset) {
        assert_eq!(
            a.universe(),
            self.num_edges(),
            "edge subset belongs to a graph with a different edge count"
        );
    }

    /// `G|_A`: the edges of `A` and their incident vertices. Rotations keep
    /// their cyclic order, signs and labels are preserved.
    pub fn induced_subgraph(&self, a: &EdgeSubset) -> RibbonGraph {
        self.restrict(a, false)
    }

    /// `G - A`: every vertex is kept, the edges of `A` are removed.
    pub fn delete_edges(&self, a: &EdgeSubset) -> RibbonGraph {
        self.restrict(&a.complement(), true)
    }

    fn restrict(&self, keep: &EdgeSubset, keep_isolated: bool) -> RibbonGraph {
        self.check_universe(keep);
        let mut new_index = vec![usize::MAX; self.num_edges()];
        let mut edges = Vec::with_capacity(keep.len());
        for e in keep.iter() {
            new_index[e] = edges.len();
            edges.push(self.edges[e].clone());
        }
        let vertices = self
            .vertices
            .iter()
            .filter_map(|v| {
                let rotation: Vec<_> = v
                    .rotation
                    .iter()
                    .filter(|end| keep.contains(end.edge))
                    .map(|end| EdgeEnd::new(new_index[end.edge], end.end))
                    .collect();
                (keep_isolated || !rotation.is_empty()).then(|| Vertex {
                    name: v.name.clone(),
                    rotation,
                })
            })
            .collect();
        RibbonGraph::from_parts(edges, vertices)
    }

    /// Drops vertices with empty rotation.
    pub fn without_isolated_vertices(&self) -> RibbonGraph {
        let vertices = self
            .vertices
            .iter()
            .filter(|v| !v.rotation.is_empty())
            .cloned()
            .collect();
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    /// Disjoint union. Edge labels must be disjoint; clashing vertex names
    /// of `other` are suffixed with `_`.
    pub fn disjoint_union(&self, other: &RibbonGraph) -> Result<RibbonGraph> {
        for e in &other.edges {
            if self.edge_index(&e.label).is_some() {
                return Err(Error::DuplicateLabel {
                    label: e.label.clone(),
                });
            }
        }
        let offset = self.num_edges();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        let mut names: HashSet<String> = self.vertices.iter().map(|v| v.name.clone()).collect();
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            let mut name = v.name.clone();
            while !names.insert(name.clone()) {
                name.push('_');
            }
            vertices.push(Vertex {
                name,
                rotation: v
                    .rotation
                    .iter()
                    .map(|end| EdgeEnd::new(end.edge + offset, end.end))
                    .collect(),
            });
        }
        Ok(RibbonGraph::from_parts(edges, vertices))
    }

    /// Reverses the rotation at `v` and toggles the sign of every non-loop
    /// edge with exactly one end there. The result is equivalent to `self`.
    pub fn flip_vertex(&self, v: usize) -> RibbonGraph {
        let mut g = self.clone();
        g.vertices[v].rotation.reverse();
        for e in 0..g.num_edges() {
            let (a, b) = self.endpoints(e);
            if (a == v) != (b == v) {
                g.edges[e].sign = g.edges[e].sign.flipped();
            }
        }
        RibbonGraph::from_parts(g.edges, g.vertices)
    }

    /// Mirror image: every rotation reversed.
    pub fn reflect(&self) -> RibbonGraph {
        let mut vertices = self.vertices.clone();
        for v in &mut vertices {
            v.rotation.reverse();
        }
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    /// Cyclically shifts the stored rotation at `v` by `k` places.
    pub fn rotate_vertex(&self, v: usize, k: usize) -> RibbonGraph {
        let mut vertices = self.vertices.clone();
        let len = vertices[v].rotation.len();
        if len > 0 {
            vertices[v].rotation.rotate_left(k % len);
        }
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    /// Reorders the stored vertices; `order[i]` is the old index of new vertex `i`.
    pub fn permute_vertices(&self, order: &[usize]) -> RibbonGraph {
        assert_eq!(order.len(), self.num_vertices());
        let vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    /// Reorders the stored edges; `order[i]` is the old index of new edge `i`.
    /// Labels travel with their edges.
    pub fn permute_edges(&self, order: &[usize]) -> RibbonGraph {
        assert_eq!(order.len(), self.num_edges());
        let mut new_index = vec![0; order.len()];
        for (i, &old) in order.iter().enumerate() {
            new_index[old] = i;
        }
        let edges = order.iter().map(|&i| self.edges[i].clone()).collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: v.name.clone(),
                rotation: v
                    .rotation
                    .iter()
                    .map(|e| EdgeEnd::new(new_index[e.edge], e.end))
                    .collect(),
            })
            .collect();
        RibbonGraph::from_parts(edges, vertices)
    }

    /// Swaps the names `label.1` and `label.2` of edge `e`.
    pub fn swap_ends(&self, e: usize) -> RibbonGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: v.name.clone(),
                rotation: v
                    .rotation
                    .iter()
                    .map(|&x| if x.edge == e { x.opposite() } else { x })
                    .collect(),
            })
            .collect();
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    pub fn relabel_edges(&self, mut f: impl FnMut(&str) -> String) -> Result<RibbonGraph> {
        let mut seen = HashSet::new();
        let mut edges = self.edges.clone();
        for e in &mut edges {
            e.label = f(&e.label);
            if !seen.insert(e.label.clone()) {
                return Err(Error::DuplicateLabel {
                    label: e.label.clone(),
                });
            }
        }
        Ok(RibbonGraph::from_parts(edges, self.vertices.clone()))
    }

    pub fn with_sign(&self, e: usize, sign: Sign) -> RibbonGraph {
        let mut edges = self.edges.clone();
        edges[e].sign = sign;
        RibbonGraph::from_parts(edges, self.vertices.clone())
    }

    /// Renames vertices `v0, v1, ...` in storage order.
    pub fn with_fresh_vertex_names(&self) -> RibbonGraph {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Vertex {
                name: format!("v{i}"),
                rotation: v.rotation.clone(),
            })
            .collect();
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    /// The equivalent of [`GraphSpec`] for this graph.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            edges: self.edges.iter().map(|e| (e.label.clone(), e.sign)).collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    (
                        v.name.clone(),
                        v.rotation
                            .iter()
                            .map(|end| EndRef {
                                label: self.label(end.edge).to_string(),
                                end: end.end as u32 + 1,
                            })
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::serialize_graph(self, None))
    }
}
