//! Ribbon graphs with labeled marking arrows on their vertex boundaries.
//!
//! Removing an edge and leaving a mark in place of each of its ends records
//! exactly how to glue it back. Marks follow the arrow convention of
//! [`crate::arrows`]: the mark of `e.1` points along the rotation, the mark of
//! `e.2` does so iff `e` is untwisted.

use std::collections::HashSet;

use crate::arrows::Arrow;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeEnd, RibbonGraph, Sign, Vertex};
use crate::subset::EdgeSubset;
use crate::topology::{StepKind, Tracer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mark {
    /// Index into [`MarkedRibbonGraph::mark_labels`].
    pub label: usize,
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    End(EdgeEnd),
    Mark(Mark),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedVertex {
    pub name: String,
    pub slots: Vec<Slot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedRibbonGraph {
    edges: Vec<Edge>,
    vertices: Vec<MarkedVertex>,
    mark_labels: Vec<String>,
}

impl MarkedRibbonGraph {
    /// Validates slot placement, mark pairing and label disjointness.
    pub fn new(edges: Vec<Edge>, vertices: Vec<MarkedVertex>, mark_labels: Vec<String>) -> Result<Self> {
        let edge_labels: HashSet<&str> = edges.iter().map(|e| e.label.as_str()).collect();
        if let Some(l) = mark_labels.iter().find(|l| edge_labels.contains(l.as_str())) {
            return Err(Error::MarkLabelClash(l.clone()));
        }
        let mut placed = vec![false; 2 * edges.len()];
        let mut marks = vec![0usize; mark_labels.len()];
        for v in &vertices {
            for (position, s) in v.slots.iter().enumerate() {
                match *s {
                    Slot::End(end) => {
                        let label = &edges
                            .get(end.edge)
                            .ok_or_else(|| Error::UnknownLabel(format!("#{}", end.edge)))?
                            .label;
                        if std::mem::replace(&mut placed[end.dart()], true) {
                            return Err(Error::DuplicateEdgeEnd {
                                end: format!("{label}.{}", end.end + 1),
                                vertex: v.name.clone(),
                                position,
                            });
                        }
                    }
                    Slot::Mark(m) => match marks.get_mut(m.label) {
                        Some(c) => *c += 1,
                        None => return Err(Error::UnknownLabel(format!("#{}", m.label))),
                    },
                }
            }
        }
        if let Some(d) = placed.iter().position(|p| !p) {
            let end = EdgeEnd::from_dart(d);
            return Err(Error::MissingEdgeEnd {
                end: format!("{}.{}", edges[end.edge].label, end.end + 1),
            });
        }
        if let Some(l) = marks.iter().position(|&c| c != 2) {
            return Err(Error::UnmatchedMark {
                label: mark_labels[l].clone(),
                count: marks[l],
            });
        }
        Ok(MarkedRibbonGraph {
            edges,
            vertices,
            mark_labels,
        })
    }

    pub(crate) fn from_parts(edges: Vec<Edge>, vertices: Vec<MarkedVertex>, mark_labels: Vec<String>) -> Self {
        debug_assert!(Self::new(edges.clone(), vertices.clone(), mark_labels.clone()).is_ok());
        MarkedRibbonGraph {
            edges,
            vertices,
            mark_labels,
        }
    }

    pub fn from_graph(g: &RibbonGraph) -> Self {
        let vertices = g
            .vertices()
            .iter()
            .map(|v| MarkedVertex {
                name: v.name.clone(),
                slots: v.rotation.iter().map(|&e| Slot::End(e)).collect(),
            })
            .collect();
        MarkedRibbonGraph {
            edges: g.edges().to_vec(),
            vertices,
            mark_labels: Vec::new(),
        }
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[MarkedVertex] {
        &self.vertices
    }

    pub fn mark_labels(&self) -> &[String] {
        &self.mark_labels
    }

    pub fn num_marks(&self) -> usize {
        self.vertices
            .iter()
            .flat_map(|v| &v.slots)
            .filter(|s| matches!(s, Slot::Mark(_)))
            .count()
    }

    /// The underlying ribbon graph with every mark erased.
    pub fn graph(&self) -> RibbonGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: v.name.clone(),
                rotation: v
                    .slots
                    .iter()
                    .filter_map(|s| match s {
                        Slot::End(e) => Some(*e),
                        Slot::Mark(_) => None,
                    })
                    .collect(),
            })
            .collect();
        RibbonGraph::from_parts(self.edges.clone(), vertices)
    }

    /// Glues an edge back along every pair of marks. Restored edges follow
    /// the present ones, in mark-label order; a mark pair with equal
    /// directions gives an untwisted edge.
    pub fn restore(&self) -> RibbonGraph {
        let base = self.edges.len();
        let mut first: Vec<Option<bool>> = vec![None; self.mark_labels.len()];
        let mut edges = self.edges.clone();
        edges.extend(self.mark_labels.iter().map(|l| Edge {
            label: l.clone(),
            sign: Sign::Plus,
        }));
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: v.name.clone(),
                rotation: v
                    .slots
                    .iter()
                    .map(|s| match *s {
                        Slot::End(e) => e,
                        Slot::Mark(m) => match first[m.label] {
                            None => {
                                first[m.label] = Some(m.forward);
                                EdgeEnd::new(base + m.label, 0)
                            }
                            Some(d) => {
                                if d != m.forward {
                                    edges[base + m.label].sign = Sign::Minus;
                                }
                                EdgeEnd::new(base + m.label, 1)
                            }
                        },
                    })
                    .collect(),
            })
            .collect();
        RibbonGraph::from_parts(edges, vertices)
    }

    /// Partial dual with respect to the edges in `a`, marks carried along.
    /// New vertices are named `v0, v1, ...`; edges keep their order.
    pub fn partial_dual(&self, a: &EdgeSubset) -> MarkedRibbonGraph {
        assert_eq!(a.universe(), self.num_edges());
        let walks = Tracer::for_marked(self).run(|e| self.edges[e].sign, |e| a.contains(e));
        let cycles: Vec<Vec<TracedSlot>> = walks
            .into_iter()
            .map(|w| {
                w.steps
                    .into_iter()
                    .map(|s| match s.kind {
                        StepKind::Side(e) | StepKind::Arc(e) => TracedSlot::Edge(Arrow {
                            label: e,
                            forward: s.forward,
                        }),
                        StepKind::Mark(m) => TracedSlot::Mark(Mark {
                            label: m,
                            forward: s.forward,
                        }),
                    })
                    .collect()
            })
            .collect();
        self.assemble(cycles)
    }

    pub fn dual(&self) -> MarkedRibbonGraph {
        self.partial_dual(&EdgeSubset::full(self.num_edges()))
    }

    fn assemble(&self, cycles: Vec<Vec<TracedSlot>>) -> MarkedRibbonGraph {
        let mut first: Vec<Option<bool>> = vec![None; self.edges.len()];
        let mut edges = self.edges.clone();
        for e in &mut edges {
            e.sign = Sign::Plus;
        }
        let vertices = cycles
            .into_iter()
            .enumerate()
            .map(|(i, c)| MarkedVertex {
                name: format!("v{i}"),
                slots: c
                    .into_iter()
                    .map(|t| match t {
                        TracedSlot::Mark(m) => Slot::Mark(m),
                        TracedSlot::Edge(a) => match first[a.label] {
                            None => {
                                first[a.label] = Some(a.forward);
                                Slot::End(EdgeEnd::new(a.label, 0))
                            }
                            Some(d) => {
                                if d != a.forward {
                                    edges[a.label].sign = Sign::Minus;
                                }
                                Slot::End(EdgeEnd::new(a.label, 1))
                            }
                        },
                    })
                    .collect(),
            })
            .collect();
        MarkedRibbonGraph::from_parts(edges, vertices, self.mark_labels.clone())
    }

    /// Reverses the slot order at `v`, reversing its marks and toggling the
    /// sign of each non-loop edge with one end there.
    pub fn flip_vertex(&self, v: usize) -> MarkedRibbonGraph {
        let mut m = self.clone();
        m.vertices[v].slots.reverse();
        let mut count = vec![0u8; m.edges.len()];
        for s in &mut m.vertices[v].slots {
            match s {
                Slot::Mark(mark) => mark.forward = !mark.forward,
                Slot::End(e) => count[e.edge] += 1,
            }
        }
        for (e, c) in count.into_iter().enumerate() {
            if c == 1 {
                m.edges[e].sign = m.edges[e].sign.flipped();
            }
        }
        m
    }

    pub(crate) fn vertices_mut(&mut self) -> &mut Vec<MarkedVertex> {
        &mut self.vertices
    }
}

enum TracedSlot {
    Edge(Arrow),
    Mark(Mark),
}

/// `G ⃗− A`: every edge of `A` is replaced by a pair of marks in the slots its
/// ends occupied. Remaining edges keep their relative order.
pub fn mark_and_remove(g: &RibbonGraph, a: &EdgeSubset) -> MarkedRibbonGraph {
    g.check_universe(a);
    let mut new_index = vec![usize::MAX; g.num_edges()];
    let mut mark_index = vec![usize::MAX; g.num_edges()];
    let mut edges = Vec::new();
    let mut mark_labels = Vec::new();
    for e in 0..g.num_edges() {
        if a.contains(e) {
            mark_index[e] = mark_labels.len();
            mark_labels.push(g.label(e).to_string());
        } else {
            new_index[e] = edges.len();
            edges.push(g.edge(e).clone());
        }
    }
    let vertices = g
        .vertices()
        .iter()
        .map(|v| MarkedVertex {
            name: v.name.clone(),
            slots: v
                .rotation
                .iter()
                .map(|end| {
                    if a.contains(end.edge) {
                        Slot::Mark(Mark {
                            label: mark_index[end.edge],
                            forward: end.end == 0 || g.sign(end.edge) == Sign::Plus,
                        })
                    } else {
                        Slot::End(EdgeEnd::new(new_index[end.edge], end.end))
                    }
                })
                .collect(),
        })
        .collect();
    MarkedRibbonGraph::from_parts(edges, vertices, mark_labels)
}

/// `H ⃗+ A`: the inverse of [`mark_and_remove`].
pub fn restore(m: &MarkedRibbonGraph) -> RibbonGraph {
    m.restore()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use Sign::*;

    fn n1() -> RibbonGraph {
        GraphSpec::new()
            .edge("a", Minus)
            .edge("b", Minus)
            .vertex("v", &["a.1", "b.1", "a.2", "b.2"])
            .build()
            .unwrap()
    }

    #[test]
    fn marks_replace_ends_and_restore_exactly() {
        let g = n1();
        let m = mark_and_remove(&g, &g.all_edges());
        assert_eq!((m.num_edges(), m.num_marks()), (0, 4));
        assert_eq!(m.restore(), g);
        let none = mark_and_remove(&g, &g.no_edges());
        assert_eq!(none.num_marks(), 0);
        assert_eq!(none.graph(), g);
    }

    #[test]
    fn rejects_unpaired_marks_and_clashes() {
        let v = MarkedVertex {
            name: "v".into(),
            slots: vec![Slot::Mark(Mark { label: 0, forward: true })],
        };
        let err = MarkedRibbonGraph::new(vec![], vec![v.clone()], vec!["x".into()]).unwrap_err();
        assert_eq!(err, Error::UnmatchedMark { label: "x".into(), count: 1 });
        let edge = Edge { label: "x".into(), sign: Plus };
        let err = MarkedRibbonGraph::new(vec![edge], vec![], vec!["x".into()]).unwrap_err();
        assert_eq!(err, Error::MarkLabelClash("x".into()));
    }
}
