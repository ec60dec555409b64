//! Join splits and prime factorization.
//!
//! At a vertex `v`, the ends are grouped into pieces: the two ends of a loop
//! form a piece, and the ends of all edges leading into one component of
//! `G - v` form a piece. A join split at `v` is a proper contiguous arc of the
//! rotation that is a union of pieces.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeEnd, RibbonGraph, Vertex};
use crate::subset::EdgeSubset;
use crate::topology::{euler_genus, is_connected};

/// One side of a join: `G = G|_{edges^c} ∨ G|_{edges}` at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Split {
    pub vertex: usize,
    pub edges: EdgeSubset,
    /// Rotation positions at `vertex` covered by `edges`, in cyclic order.
    #[serde(skip)]
    pub positions: Vec<usize>,
}

struct Pieces {
    /// piece id per rotation position at the vertex
    of_position: Vec<usize>,
    /// edge set per piece id
    edges: Vec<EdgeSubset>,
    size: Vec<usize>,
}

fn pieces_at(g: &RibbonGraph, v: usize) -> Pieces {
    let nv = g.num_vertices();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in 0..g.num_edges() {
        let (x, y) = g.endpoints(e);
        if x != v && y != v {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
    }
    #[derive(PartialEq, Eq, Hash)]
    enum Key {
        Loop(usize),
        Component(usize),
    }
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut edges: Vec<EdgeSubset> = Vec::new();
    let mut piece_of_edge = vec![usize::MAX; g.num_edges()];
    for e in 0..g.num_edges() {
        let (x, y) = g.endpoints(e);
        let key = match (x == v, y == v) {
            (true, true) => Key::Loop(e),
            (false, _) => Key::Component(find(&mut parent, x)),
            (true, false) => Key::Component(find(&mut parent, y)),
        };
        let id = *ids.entry(key).or_insert_with(|| {
            edges.push(EdgeSubset::empty(g.num_edges()));
            edges.len() - 1
        });
        edges[id].insert(e);
        piece_of_edge[e] = id;
    }
    let of_position: Vec<usize> = g.rotation(v).iter().map(|end| piece_of_edge[end.edge]).collect();
    let mut size = vec![0; edges.len()];
    for &p in &of_position {
        size[p] += 1;
    }
    Pieces {
        of_position,
        edges,
        size,
    }
}

/// Every join split, both sides of each.
pub fn split_sides(g: &RibbonGraph) -> Vec<Split> {
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        let d = g.degree(v);
        if d < 2 {
            continue;
        }
        let pieces = pieces_at(g, v);
        let mut count = vec![0usize; pieces.edges.len()];
        for s in 0..d {
            count.iter_mut().for_each(|c| *c = 0);
            for len in 1..d {
                count[pieces.of_position[(s + len - 1) % d]] += 1;
                let closed = count.iter().zip(&pieces.size).all(|(&c, &n)| c == 0 || c == n);
                if !closed {
                    continue;
                }
                let mut edges = EdgeSubset::empty(g.num_edges());
                for (p, &c) in count.iter().enumerate() {
                    if c > 0 {
                        edges = edges.union(&pieces.edges[p]);
                    }
                }
                out.push(Split {
                    vertex: v,
                    edges,
                    positions: (s..s + len).map(|i| i % d).collect(),
                });
            }
        }
    }
    out
}

/// One side per join split: the side holding the lowest-index edge.
pub fn join_summand_splits(g: &RibbonGraph) -> Vec<Split> {
    split_sides(g).into_iter().filter(|s| s.edges.contains(0)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum JoinNode {
    Factor(usize),
    Join {
        vertex: usize,
        /// First end of each side's arc at `vertex`, reading the rotation.
        #[serde(skip)]
        corners: (EdgeEnd, EdgeEnd),
        left: Box<JoinNode>,
        right: Box<JoinNode>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinTree {
    /// Edge sets of the prime factors, partitioning `E(G)`.
    pub factors: Vec<EdgeSubset>,
    /// `None` only for the graph without edges.
    pub root: Option<JoinNode>,
}

impl JoinTree {
    pub fn factor_of(&self, e: usize) -> usize {
        self.factors.iter().position(|f| f.contains(e)).expect("edge outside every factor")
    }

    pub fn is_union_of_factors(&self, a: &EdgeSubset) -> bool {
        self.factors.iter().all(|f| f.is_subset(a) || f.is_disjoint(a))
    }

    /// Factors in subset order, independent of the order splits were taken.
    pub fn sorted_factors(&self) -> Vec<EdgeSubset> {
        let mut f = self.factors.clone();
        f.sort();
        f
    }

    /// Rebuilds `G` from the factor subgraphs by performing the joins.
    pub fn reassemble(&self, g: &RibbonGraph) -> RibbonGraph {
        match &self.root {
            None => g.clone(),
            Some(root) => self.build(g, root),
        }
    }

    fn build(&self, g: &RibbonGraph, node: &JoinNode) -> RibbonGraph {
        match node {
            JoinNode::Factor(i) => g.induced_subgraph(&self.factors[*i]),
            JoinNode::Join {
                vertex,
                corners,
                left,
                right,
            } => {
                let l = self.build(g, left);
                let r = self.build(g, right);
                let name = &g.vertices()[*vertex].name;
                let label_end = |h: &RibbonGraph, e: EdgeEnd| {
                    EdgeEnd::new(h.edge_index(g.label(e.edge)).unwrap(), e.end)
                };
                glue(&l, &r, name, label_end(&l, corners.0), label_end(&r, corners.1))
            }
        }
    }
}

/// Merges the vertex named `name` of two edge-disjoint graphs: the merged
/// rotation reads `l` from `l_first`, then `r` from `r_first`.
fn glue(l: &RibbonGraph, r: &RibbonGraph, name: &str, l_first: EdgeEnd, r_first: EdgeEnd) -> RibbonGraph {
    let offset = l.num_edges();
    let mut edges = l.edges().to_vec();
    edges.extend(r.edges().iter().cloned());
    let shift = |e: EdgeEnd| EdgeEnd::new(e.edge + offset, e.end);
    let read_from = |h: &RibbonGraph, first: EdgeEnd| -> Vec<EdgeEnd> {
        let v = h.vertex_of(first);
        let rot = h.rotation(v);
        let p = h.position_of(first);
        rot[p..].iter().chain(&rot[..p]).copied().collect()
    };
    let mut merged = read_from(l, l_first);
    merged.extend(read_from(r, r_first).into_iter().map(shift));
    let mut vertices: Vec<Vertex> = l.vertices().to_vec();
    let lv = l.vertex_index(name).unwrap();
    vertices[lv].rotation = merged;
    for v in r.vertices() {
        if v.name != name {
            vertices.push(Vertex {
                name: v.name.clone(),
                rotation: v.rotation.iter().map(|&e| shift(e)).collect(),
            });
        }
    }
    RibbonGraph::from_parts(edges, vertices)
}

/// Prime factorization, always taking the first available split.
pub fn prime_factorization(g: &RibbonGraph) -> Result<JoinTree> {
    prime_factorization_with(g, &mut |_| 0)
}

/// Prime factorization where `pick(n)` chooses which of the `n` available
/// splits to take at each step.
pub fn prime_factorization_with(g: &RibbonGraph, pick: &mut dyn FnMut(usize) -> usize) -> Result<JoinTree> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let mut factors = Vec::new();
    let root = if g.num_edges() == 0 {
        None
    } else {
        Some(factor_rec(g, &g.all_edges(), &mut factors, pick))
    };
    Ok(JoinTree { factors, root })
}

fn factor_rec(
    g: &RibbonGraph,
    part: &EdgeSubset,
    factors: &mut Vec<EdgeSubset>,
    pick: &mut dyn FnMut(usize) -> usize,
) -> JoinNode {
    let h = g.induced_subgraph(part);
    let original: Vec<usize> = part.iter().collect();
    let splits = join_summand_splits(&h);
    if splits.is_empty() {
        factors.push(part.clone());
        return JoinNode::Factor(factors.len() - 1);
    }
    let s = &splits[pick(splits.len()) % splits.len()];
    let lift = |x: &EdgeSubset| EdgeSubset::from_indices(g.num_edges(), x.iter().map(|e| original[e]));
    let right = lift(&s.edges);
    let left = part.difference(&right);
    let rot = h.rotation(s.vertex);
    let d = rot.len();
    let right_first = rot[s.positions[0]];
    let left_first = rot[(s.positions[s.positions.len() - 1] + 1) % d];
    let lift_end = |e: EdgeEnd| EdgeEnd::new(original[e.edge], e.end);
    let vertex = g.vertex_index(&h.vertices()[s.vertex].name).unwrap();
    let l = factor_rec(g, &left, factors, pick);
    let r = factor_rec(g, &right, factors, pick);
    JoinNode::Join {
        vertex,
        corners: (lift_end(left_first), lift_end(right_first)),
        left: Box::new(l),
        right: Box::new(r),
    }
}

pub fn is_join_biseparation(g: &RibbonGraph, a: &EdgeSubset) -> Result<bool> {
    g.check_universe(a);
    Ok(prime_factorization(g)?.is_union_of_factors(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum JoinClass {
    NotJoin,
    Plane,
    ProjectivePlane,
    Other,
}

impl fmt::Display for JoinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinClass::NotJoin => write!(f, "none"),
            JoinClass::Plane => write!(f, "plane-join"),
            JoinClass::ProjectivePlane => write!(f, "RP²-join"),
            JoinClass::Other => write!(f, "other-join"),
        }
    }
}

/// Classifies `A` by the Euler genera of the prime factors. Factors of a
/// join have genera summing to `γ(G)`, so all factors are plane exactly when
/// `γ(G) = 0` and exactly one is RP² (the rest plane) when `γ(G) = 1`.
pub fn classify_join_biseparation(g: &RibbonGraph, a: &EdgeSubset) -> Result<JoinClass> {
    let tree = prime_factorization(g)?;
    g.check_universe(a);
    if !tree.is_union_of_factors(a) {
        return Ok(JoinClass::NotJoin);
    }
    let genera: Vec<usize> = tree.factors.iter().map(|f| euler_genus(&g.induced_subgraph(f))).collect();
    let ones = genera.iter().filter(|&&k| k == 1).count();
    Ok(if genera.iter().all(|&k| k == 0) {
        JoinClass::Plane
    } else if ones == 1 && genera.iter().all(|&k| k <= 1) {
        JoinClass::ProjectivePlane
    } else {
        JoinClass::Other
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_equivalent;
    use crate::graph::{GraphSpec, Sign::*};

    fn bouquet(rotation: &[&str], signs: &[(&str, crate::graph::Sign)]) -> RibbonGraph {
        let mut spec = GraphSpec::new();
        for (l, s) in signs {
            spec = spec.edge(l, *s);
        }
        spec.vertex("v", rotation).build().unwrap()
    }

    #[test]
    fn nested_bouquet_splits_once() {
        let g = bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Plus), ("b", Plus)]);
        let splits = join_summand_splits(&g);
        assert_eq!(splits.len(), 1);
        assert_eq!(splits[0].edges, g.subset(&["a"]).unwrap());
        assert_eq!(split_sides(&g).len(), 2);
    }

    #[test]
    fn interlaced_bouquet_and_two_cycle_are_prime() {
        let t1 = bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Plus), ("b", Plus)]);
        assert!(join_summand_splits(&t1).is_empty());
        let c = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Plus)
            .vertex("u", &["a.1", "b.1"])
            .vertex("w", &["a.2", "b.2"])
            .build()
            .unwrap();
        assert!(join_summand_splits(&c).is_empty());
        assert_eq!(prime_factorization(&c).unwrap().factors.len(), 1);
    }

    #[test]
    fn triple_bouquet_has_three_factors_in_any_order() {
        let g = bouquet(
            &["a.1", "a.2", "b.1", "b.2", "c.1", "c.2"],
            &[("a", Plus), ("b", Minus), ("c", Plus)],
        );
        let expected = prime_factorization(&g).unwrap().sorted_factors();
        assert_eq!(expected.len(), 3);
        for k in 0..6 {
            let mut step = k;
            let tree = prime_factorization_with(&g, &mut |n| {
                step += 1;
                step % n
            })
            .unwrap();
            assert_eq!(tree.sorted_factors(), expected);
            assert!(is_equivalent(&tree.reassemble(&g), &g));
        }
    }

    #[test]
    fn path_of_edges_splits_at_inner_vertices() {
        let g = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Plus)
            .edge("c", Plus)
            .vertex("x", &["a.1"])
            .vertex("y", &["a.2", "b.1"])
            .vertex("z", &["b.2", "c.1"])
            .vertex("t", &["c.2"])
            .build()
            .unwrap();
        let tree = prime_factorization(&g).unwrap();
        assert_eq!(tree.factors.len(), 3);
        assert!(is_equivalent(&tree.reassemble(&g), &g));
    }

    #[test]
    fn join_classes() {
        let mm = bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Minus), ("b", Minus)]);
        let a = mm.subset(&["a"]).unwrap();
        assert!(is_join_biseparation(&mm, &a).unwrap());
        assert_eq!(classify_join_biseparation(&mm, &a).unwrap(), JoinClass::Other);
        let m_loop = bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Minus), ("b", Plus)]);
        assert_eq!(classify_join_biseparation(&m_loop, &a).unwrap(), JoinClass::ProjectivePlane);
        let g2 = bouquet(
            &["a.1", "b.1", "a.2", "c.1", "b.2", "c.2"],
            &[("a", Plus), ("b", Plus), ("c", Plus)],
        );
        assert!(!is_join_biseparation(&g2, &g2.subset(&["a"]).unwrap()).unwrap());
    }
}
