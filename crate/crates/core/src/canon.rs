//! Canonical codes: equal exactly for equivalent ribbon graphs.
//!
//! Each connected component is read by a breadth-first walk from every edge
//! end in both directions. A vertex's reading direction is fixed when it is
//! first reached, so the sign read off for an edge is its twist relative to
//! the chosen local orientations and does not depend on stored vertex flips.
//! The smallest reading wins; component codes are sorted.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{Edge, EdgeEnd, RibbonGraph, Sign, Vertex};
use crate::topology::connected_components;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn tokens(&self) -> &[u32] {
        &self.0
    }

    /// Rebuilds a representative graph with edges `e0, e1, ...` and vertices
    /// `v0, v1, ...`.
    pub fn to_graph(&self) -> RibbonGraph {
        let t = &self.0;
        let mut i = 1;
        let mut edges: Vec<Edge> = Vec::new();
        let mut vertices = Vec::new();
        for _ in 0..t[0] {
            let (nv, ne) = (t[i] as usize, t[i + 1] as usize);
            i += 2;
            let base = edges.len();
            edges.extend((0..ne).map(|k| Edge {
                label: format!("e{}", base + k),
                sign: Sign::Plus,
            }));
            let mut seen = vec![false; ne];
            for _ in 0..nv {
                let deg = t[i] as usize;
                i += 1;
                let mut rotation = Vec::with_capacity(deg);
                for _ in 0..deg {
                    let (l, s) = (t[i] as usize, t[i + 1]);
                    i += 2;
                    let end = if std::mem::replace(&mut seen[l], true) { 1 } else { 0 };
                    if s == 1 {
                        edges[base + l].sign = Sign::Minus;
                    }
                    rotation.push(EdgeEnd::new(base + l, end));
                }
                vertices.push(Vertex {
                    name: format!("v{}", vertices.len()),
                    rotation,
                });
            }
        }
        RibbonGraph::from_parts(edges, vertices)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

pub fn canonical_form(g: &RibbonGraph) -> CanonicalCode {
    let comps = connected_components(g);
    let mut codes: Vec<Vec<u32>> = (0..comps.count)
        .map(|c| {
            let start_vertex = comps.vertex_component.iter().position(|&x| x == c).unwrap();
            component_code(g, start_vertex)
        })
        .collect();
    codes.sort();
    let mut tokens = vec![comps.count as u32];
    for c in codes {
        tokens.extend(c);
    }
    CanonicalCode(tokens)
}

pub fn is_equivalent(g: &RibbonGraph, h: &RibbonGraph) -> bool {
    g.num_edges() == h.num_edges()
        && g.num_vertices() == h.num_vertices()
        && canonical_form(g) == canonical_form(h)
}

fn component_code(g: &RibbonGraph, v0: usize) -> Vec<u32> {
    if g.degree(v0) == 0 {
        return vec![1, 0, 0];
    }
    let darts = component_darts(g, v0);
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = Scratch::new(g);
    for &d in &darts {
        for dir in [Sign::Plus, Sign::Minus] {
            let code = scratch.read(g, EdgeEnd::from_dart(d), dir, best.as_deref());
            if let Some(code) = code {
                best = Some(code);
            }
        }
    }
    best.unwrap()
}

fn component_darts(g: &RibbonGraph, v0: usize) -> Vec<usize> {
    let mut seen = vec![false; g.num_vertices()];
    let mut stack = vec![v0];
    seen[v0] = true;
    let mut darts = Vec::new();
    while let Some(u) = stack.pop() {
        for &end in g.rotation(u) {
            darts.push(end.dart());
            let w = g.vertex_of(end.opposite());
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    darts.sort_unstable();
    darts
}

struct Scratch {
    order: Vec<usize>,
    orientation: Vec<Sign>,
    entry: Vec<EdgeEnd>,
    label: Vec<u32>,
}

impl Scratch {
    fn new(g: &RibbonGraph) -> Self {
        Scratch {
            order: vec![usize::MAX; g.num_vertices()],
            orientation: vec![Sign::Plus; g.num_vertices()],
            entry: vec![EdgeEnd::new(0, 0); g.num_vertices()],
            label: vec![u32::MAX; g.num_edges()],
        }
    }

    /// Reads the component from `start` in direction `dir`. Returns `None`
    /// as soon as the reading is known to exceed `bound`.
    fn read(&mut self, g: &RibbonGraph, start: EdgeEnd, dir: Sign, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        let mut touched_vertices = Vec::new();
        let mut touched_edges = Vec::new();
        let mut out: Vec<u32> = Vec::new();
        let mut less = false;
        let v0 = g.vertex_of(start);
        self.order[v0] = 0;
        self.orientation[v0] = dir;
        self.entry[v0] = start;
        touched_vertices.push(v0);
        let mut queue = VecDeque::from([v0]);
        let mut next_label = 0u32;
        // Placeholders for vertex and edge counts, filled in at the end.
        out.extend([0, 0]);
        let mut aborted = false;
        'outer: while let Some(u) = queue.pop_front() {
            let rot = g.rotation(u);
            let deg = rot.len();
            let p0 = g.position_of(self.entry[u]);
            out.push(deg as u32);
            for k in 0..deg {
                let p = if self.orientation[u] == Sign::Plus {
                    (p0 + k) % deg
                } else {
                    (p0 + deg - k) % deg
                };
                let end = rot[p];
                let e = end.edge;
                if self.label[e] == u32::MAX {
                    self.label[e] = next_label;
                    next_label += 1;
                    touched_edges.push(e);
                }
                let partner = end.opposite();
                let w = g.vertex_of(partner);
                if self.order[w] == usize::MAX {
                    self.order[w] = touched_vertices.len();
                    self.orientation[w] = self.orientation[u].times(g.sign(e));
                    self.entry[w] = partner;
                    touched_vertices.push(w);
                    queue.push_back(w);
                }
                let twist = g.sign(e).times(self.orientation[u]).times(self.orientation[w]);
                out.push(self.label[e]);
                out.push(twist.is_twisted() as u32);
                if let (Some(b), false) = (bound, less) {
                    // Compare the body past the two count tokens, which are
                    // equal for every reading of the component.
                    let n = out.len();
                    let start = n.saturating_sub(3).max(2);
                    for i in start..n {
                        match out[i].cmp(&b[i]) {
                            std::cmp::Ordering::Less => {
                                less = true;
                                break;
                            }
                            std::cmp::Ordering::Greater => {
                                aborted = true;
                                break 'outer;
                            }
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                }
            }
        }
        for &v in &touched_vertices {
            self.order[v] = usize::MAX;
        }
        for &e in &touched_edges {
            self.label[e] = u32::MAX;
        }
        if aborted || (bound.is_some() && !less) {
            return None;
        }
        out[0] = touched_vertices.len() as u32;
        out[1] = touched_edges.len() as u32;
        Some(out)
    }
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
    fn loops_differ_by_twist() {
        let plus = GraphSpec::new().edge("e", Plus).vertex("v", &["e.1", "e.2"]).build().unwrap();
        let minus = plus.with_sign(0, Minus);
        assert_ne!(canonical_form(&plus), canonical_form(&minus));
    }

    #[test]
    fn invariant_under_mirror_and_storage_changes() {
        let g = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Minus)
            .edge("c", Plus)
            .vertex("u", &["a.1", "b.1", "c.1"])
            .vertex("w", &["a.2", "c.2", "b.2"])
            .build()
            .unwrap();
        let code = canonical_form(&g);
        assert_eq!(canonical_form(&g.reflect()), code);
        assert_eq!(canonical_form(&g.flip_vertex(1)), code);
        assert_eq!(canonical_form(&g.permute_vertices(&[1, 0])), code);
        assert_eq!(canonical_form(&g.permute_edges(&[2, 0, 1])), code);
        assert_eq!(canonical_form(&g.rotate_vertex(0, 2)), code);
        assert_eq!(canonical_form(&g.swap_ends(1)), code);
        assert_eq!(canonical_form(&n1().reflect()), canonical_form(&n1()));
    }

    #[test]
    fn decoding_gives_an_equivalent_graph() {
        let c = canonical_form(&n1());
        assert_eq!(canonical_form(&c.to_graph()), c);
        let e = canonical_form(&RibbonGraph::single_vertex());
        assert_eq!(e.tokens(), &[1, 1, 0, 0]);
        assert_eq!(canonical_form(&e.to_graph()), e);
    }
}
