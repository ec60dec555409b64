//! Dualling join-summands: `P ∨ Q ↦ P ∨ Q*`, and breadth-first search for
//! sequences of such moves between partial duals.
//!
//! Partial duality keeps edge labels and their order, so every graph visited
//! by a search shares the edge indexing of the source and move summands are
//! plain edge subsets of it.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalCode};
use crate::decomposition::{join, prime_factorization, split_sides};
use crate::duality::{geometric_dual, partial_dual};
use crate::error::{Error, Result};
use crate::graph::{EdgeEnd, RibbonGraph, Vertex};
use crate::marked::{Mark, MarkedRibbonGraph, Slot};
use crate::subset::EdgeSubset;
use crate::topology::is_connected;

pub const DEFAULT_MAX_DEPTH: usize = 8;

/// `h^a` with the corner of `v` just before rotation position `before`
/// tracked through the dual. Returns the dual, the vertex now holding the
/// corner, and the first end after the corner, oriented so that the corner's
/// side of the rotation reads the same way as before.
fn corner_dual(h: &RibbonGraph, v: usize, before: usize, a: &EdgeSubset) -> (RibbonGraph, usize, EdgeEnd) {
    if a.is_empty() {
        let rot = h.rotation(v);
        return (h.clone(), v, rot[before % rot.len()]);
    }
    let mut label = String::from("corner");
    while h.edge_index(&label).is_some() {
        label.push('_');
    }
    let mut m = MarkedRibbonGraph::from_graph(h);
    let mark = Slot::Mark(Mark { label: 0, forward: true });
    m.vertices_mut()[v].slots.splice(before..before, [mark, mark]);
    let m = MarkedRibbonGraph::from_parts(m.edges().to_vec(), m.vertices().to_vec(), vec![label]);
    let mut d = m.partial_dual(a);
    let find = |d: &MarkedRibbonGraph| {
        d.vertices()
            .iter()
            .enumerate()
            .find_map(|(w, x)| {
                let at: Vec<(usize, bool)> = x
                    .slots
                    .iter()
                    .enumerate()
                    .filter_map(|(i, s)| match s {
                        Slot::Mark(m) => Some((i, m.forward)),
                        Slot::End(_) => None,
                    })
                    .collect();
                (!at.is_empty()).then_some((w, at))
            })
            .expect("corner marks survive duality")
    };
    let (w, at) = find(&d);
    if !at[0].1 {
        d = d.flip_vertex(w);
    }
    let (w, at) = find(&d);
    let slots = &d.vertices()[w].slots;
    let (i, j) = (at[0].0, at[1].0);
    let after = if j == i + 1 {
        (j + 1) % slots.len()
    } else {
        debug_assert!(i == 0 && j == slots.len() - 1, "corner marks must stay adjacent");
        1
    };
    let first = match slots[after] {
        Slot::End(e) => e,
        Slot::Mark(_) => unreachable!("a corner lies on a face with edges"),
    };
    (d.graph(), w, first)
}

/// Merges vertex `lv` of `l` and `rv` of `r`: the merged rotation reads `l`
/// from `l_first`, then `r` from `r_first`. Edges of `l` come first; vertex
/// names of `r` are renamed when they clash.
fn splice(l: &RibbonGraph, lv: usize, l_first: EdgeEnd, r: &RibbonGraph, rv: usize, r_first: EdgeEnd) -> RibbonGraph {
    let offset = l.num_edges();
    let shift = |e: EdgeEnd| EdgeEnd::new(e.edge + offset, e.end);
    let read_from = |h: &RibbonGraph, v: usize, first: EdgeEnd| -> Vec<EdgeEnd> {
        let rot = h.rotation(v);
        let p = h.position_of(first);
        rot[p..].iter().chain(&rot[..p]).copied().collect()
    };
    let mut edges = l.edges().to_vec();
    edges.extend(r.edges().iter().cloned());
    let mut vertices = l.vertices().to_vec();
    vertices[lv].rotation = read_from(l, lv, l_first);
    vertices[lv].rotation.extend(read_from(r, rv, r_first).into_iter().map(shift));
    let mut used: std::collections::HashSet<String> = vertices.iter().map(|v| v.name.clone()).collect();
    let mut k = 0;
    for (i, v) in r.vertices().iter().enumerate() {
        if i == rv {
            continue;
        }
        let mut name = v.name.clone();
        while used.contains(&name) {
            name = format!("v{k}");
            k += 1;
        }
        used.insert(name.clone());
        vertices.push(Vertex {
            name,
            rotation: v.rotation.iter().map(|&e| shift(e)).collect(),
        });
    }
    RibbonGraph::from_parts(edges, vertices)
}

/// `G = P ∨ Q ↦ P ∨ Q*`, built by dualling `G|_Q` alone and gluing it back
/// into the corner `P` occupied. Edges keep the order of `G`.
pub fn dual_join_summand_move(g: &RibbonGraph, q: &EdgeSubset) -> Result<RibbonGraph> {
    g.check_universe(q);
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let split = split_sides(g)
        .into_iter()
        .find(|s| &s.edges == q)
        .ok_or_else(|| Error::NotJoinSummand(g.format_subset(q)))?;
    let p_edges = q.complement();
    let rot = g.rotation(split.vertex);
    let d = rot.len();
    let q_first = rot[split.positions[0]];
    let p_first = rot[(split.positions[split.positions.len() - 1] + 1) % d];
    let name = &g.vertices()[split.vertex].name;
    let local = |h: &RibbonGraph, end: EdgeEnd| {
        let e = EdgeEnd::new(h.edge_index(g.label(end.edge)).unwrap(), end.end);
        (h.vertex_index(name).unwrap(), h.position_of(e))
    };
    let ph = g.induced_subgraph(&p_edges);
    let qh = g.induced_subgraph(q);
    let (pv, p_pos) = local(&ph, p_first);
    let (qv, q_pos) = local(&qh, q_first);
    let p_first = ph.rotation(pv)[p_pos];
    let (qd, qw, q_first) = corner_dual(&qh, qv, q_pos, &qh.all_edges());
    let joined = splice(&ph, pv, p_first, &qd, qw, q_first);
    let (mut in_p, mut in_q) = (0, p_edges.len());
    let order: Vec<usize> = (0..g.num_edges())
        .map(|e| {
            let slot = if q.contains(e) { &mut in_q } else { &mut in_p };
            *slot += 1;
            *slot - 1
        })
        .collect();
    Ok(joined.permute_edges(&order))
}

/// Whether `(P ∨ Q)^A` and `P^{A∩E(P)} ∨ Q^{A∩E(Q)}` agree, where `A` indexes
/// the edges of the join (those of `P`, then those of `Q`).
pub fn join_partial_dual_distributes(
    p: &RibbonGraph,
    p_vertex: usize,
    q: &RibbonGraph,
    q_vertex: usize,
    a: &EdgeSubset,
) -> Result<bool> {
    let j = join(p, p_vertex, q, q_vertex)?;
    j.check_universe(a);
    let lhs = partial_dual(&j, a);
    let ne = p.num_edges();
    let pa = EdgeSubset::from_indices(ne, a.iter().filter(|&e| e < ne));
    let qa = EdgeSubset::from_indices(q.num_edges(), a.iter().filter(|&e| e >= ne).map(|e| e - ne));
    let (pd, pw, p_first) = corner_dual(p, p_vertex, p.degree(p_vertex), &pa);
    let (qd, qw, q_first) = corner_dual(q, q_vertex, q.degree(q_vertex), &qa);
    let rhs = splice(&pd, pw, p_first, &qd, qw, q_first);
    Ok(canonical_form(&lhs) == canonical_form(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveKind {
    DualJoinSummand,
    GeometricDual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MovePolicy {
    /// Any join-summand, that is any union of prime factors forming one
    /// side of a join split.
    AnySummand,
    /// Only join-summands consisting of a single prime factor.
    SinglePrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveStep {
    pub kind: MoveKind,
    /// The dualled summand; all edges for a geometric dual.
    pub summand: EdgeSubset,
    /// Canonical code of the graph after this step.
    pub code: CanonicalCode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveTrace {
    pub steps: Vec<MoveStep>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps to `g`, checking each intermediate code.
    pub fn replay(&self, g: &RibbonGraph) -> Result<RibbonGraph> {
        let mut x = g.clone();
        for s in &self.steps {
            x = match s.kind {
                MoveKind::GeometricDual => geometric_dual(&x),
                MoveKind::DualJoinSummand => dual_join_summand_move(&x, &s.summand)?,
            };
            debug_assert_eq!(canonical_form(&x), s.code);
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MoveSearch {
    Found(MoveTrace),
    /// Every graph reachable from the source was visited.
    Exhausted { visited: usize },
    /// The depth bound cut the search short.
    DepthLimit { visited: usize },
}

impl MoveSearch {
    pub fn trace(&self) -> Option<&MoveTrace> {
        match self {
            MoveSearch::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Summands available to a move from `g` under `policy`.
pub fn move_summands(g: &RibbonGraph, policy: MovePolicy) -> Vec<EdgeSubset> {
    let mut sides: Vec<EdgeSubset> = split_sides(g).into_iter().map(|s| s.edges).collect();
    sides.sort();
    sides.dedup();
    if policy == MovePolicy::SinglePrime {
        let factors = prime_factorization(g).map(|t| t.factors).unwrap_or_default();
        sides.retain(|s| factors.contains(s));
    }
    sides
}

#[derive(Clone, Hash, PartialEq, Eq)]
struct State {
    code: CanonicalCode,
    dualled: bool,
}

struct Node {
    graph: RibbonGraph,
    depth: usize,
    parent: Option<(usize, MoveKind, EdgeSubset)>,
}

/// Every graph reachable from a source by at most `max_depth` moves, keyed
/// by canonical code with the depth of its shortest trace.
pub struct MoveClosure {
    nodes: Vec<Node>,
    index: HashMap<State, usize>,
    closed: bool,
}

impl MoveClosure {
    pub fn new(g: &RibbonGraph, max_depth: usize, policy: MovePolicy) -> Result<Self> {
        if !is_connected(g) {
            return Err(Error::Disconnected);
        }
        Ok(Self::search(g, max_depth, policy, |_| false))
    }

    fn search(g: &RibbonGraph, max_depth: usize, policy: MovePolicy, stop: impl Fn(&CanonicalCode) -> bool) -> Self {
        let root = State {
            code: canonical_form(g),
            dualled: false,
        };
        let mut closure = MoveClosure {
            nodes: vec![Node {
                graph: g.clone(),
                depth: 0,
                parent: None,
            }],
            index: HashMap::from([(root.clone(), 0)]),
            closed: false,
        };
        if stop(&root.code) {
            return closure;
        }
        let mut frontier = vec![(0usize, false)];
        for depth in 1..=max_depth {
            let expanded: Vec<Vec<(State, RibbonGraph, MoveKind, EdgeSubset)>> = frontier
                .par_iter()
                .map(|&(i, dualled)| {
                    let x = &closure.nodes[i].graph;
                    let mut out = Vec::new();
                    for q in move_summands(x, policy) {
                        let y = dual_join_summand_move(x, &q).expect("summands come from split sides");
                        out.push((
                            State {
                                code: canonical_form(&y),
                                dualled,
                            },
                            y,
                            MoveKind::DualJoinSummand,
                            q,
                        ));
                    }
                    if !dualled {
                        let y = geometric_dual(x);
                        out.push((
                            State {
                                code: canonical_form(&y),
                                dualled: true,
                            },
                            y,
                            MoveKind::GeometricDual,
                            x.all_edges(),
                        ));
                    }
                    out
                })
                .collect();
            let mut next = Vec::new();
            for ((parent, _), succ) in frontier.iter().zip(expanded) {
                for (state, graph, kind, summand) in succ {
                    if closure.index.contains_key(&state) {
                        continue;
                    }
                    let id = closure.nodes.len();
                    let hit = stop(&state.code);
                    next.push((id, state.dualled));
                    closure.index.insert(state, id);
                    closure.nodes.push(Node {
                        graph,
                        depth,
                        parent: Some((*parent, kind, summand)),
                    });
                    if hit {
                        return closure;
                    }
                }
            }
            if next.is_empty() {
                closure.closed = true;
                return closure;
            }
            frontier = next;
        }
        closure
    }

    /// Whether the search ran out of new graphs before the depth bound.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Codes of the visited graphs, with repeats when a graph was reached
    /// both with and without the geometric-dual step.
    pub fn codes(&self) -> impl Iterator<Item = &CanonicalCode> {
        self.index.keys().map(|s| &s.code)
    }

    /// Largest depth of any visited graph.
    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    fn best(&self, code: &CanonicalCode) -> Option<usize> {
        [false, true]
            .into_iter()
            .filter_map(|dualled| {
                self.index.get(&State {
                    code: code.clone(),
                    dualled,
                })
            })
            .copied()
            .min_by_key(|&i| self.nodes[i].depth)
    }

    /// Depth of the shortest trace reaching a graph with this code.
    pub fn depth_of(&self, code: &CanonicalCode) -> Option<usize> {
        self.best(code).map(|i| self.nodes[i].depth)
    }

    pub fn trace_to(&self, code: &CanonicalCode) -> Option<MoveTrace> {
        let mut i = self.best(code)?;
        let mut steps = Vec::new();
        while let Some((parent, kind, summand)) = &self.nodes[i].parent {
            steps.push(MoveStep {
                kind: *kind,
                summand: summand.clone(),
                code: canonical_form(&self.nodes[i].graph),
            });
            i = *parent;
        }
        steps.reverse();
        Some(MoveTrace { steps })
    }
}

/// A shortest sequence of moves from `g` to a graph equivalent to `h`.
pub fn move_related(g: &RibbonGraph, h: &RibbonGraph, max_depth: usize, policy: MovePolicy) -> Result<MoveSearch> {
    if !is_connected(g) || !is_connected(h) {
        return Err(Error::Disconnected);
    }
    let target = canonical_form(h);
    if g.num_edges() != h.num_edges() {
        return Ok(MoveSearch::Exhausted { visited: 0 });
    }
    let closure = MoveClosure::search(g, max_depth, policy, |c| c == &target);
    Ok(match closure.trace_to(&target) {
        Some(t) => MoveSearch::Found(t),
        None if closure.is_closed() => MoveSearch::Exhausted { visited: closure.len() },
        None => MoveSearch::DepthLimit { visited: closure.len() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_equivalent;
    use crate::graph::{GraphSpec, Sign::*};

    fn bouquet(rotation: &[&str], signs: &[(&str, crate::graph::Sign)]) -> RibbonGraph {
        let mut s = GraphSpec::new();
        for (l, sign) in signs {
            s = s.edge(l, *sign);
        }
        s.vertex("v", rotation).build().unwrap()
    }

    #[test]
    fn move_matches_the_partial_dual() {
        let mm = bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Minus), ("b", Minus)]);
        let a = mm.subset(&["a"]).unwrap();
        let moved = dual_join_summand_move(&mm, &a).unwrap();
        assert!(is_equivalent(&moved, &partial_dual(&mm, &a)));
        assert!(is_equivalent(&moved, &mm));
        let nested = bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Plus), ("b", Plus)]);
        let moved = dual_join_summand_move(&nested, &a).unwrap();
        assert_eq!((moved.num_vertices(), crate::topology::euler_genus(&moved)), (2, 0));
        assert!(is_equivalent(&moved, &partial_dual(&nested, &a)));
    }

    #[test]
    fn prime_graph_has_no_summand_moves() {
        let t1 = bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Plus), ("b", Plus)]);
        let a = t1.subset(&["a"]).unwrap();
        assert!(matches!(dual_join_summand_move(&t1, &a), Err(Error::NotJoinSummand(_))));
        assert!(move_summands(&t1, MovePolicy::AnySummand).is_empty());
    }

    #[test]
    fn search_finds_geometric_dual_and_identity() {
        let c = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Plus)
            .vertex("u", &["a.1", "b.1"])
            .vertex("w", &["a.2", "b.2"])
            .build()
            .unwrap();
        let found = move_related(&c, &c, 8, MovePolicy::AnySummand).unwrap();
        assert_eq!(found.trace().unwrap().len(), 0);
        let edge = GraphSpec::new().edge("e", Plus).vertex("u", &["e.1"]).vertex("w", &["e.2"]).build().unwrap();
        let dual = geometric_dual(&edge);
        let found = move_related(&edge, &dual, 8, MovePolicy::AnySummand).unwrap();
        let trace = found.trace().unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.steps[0].kind, MoveKind::GeometricDual);
        assert!(is_equivalent(&trace.replay(&edge).unwrap(), &dual));
        let t1 = bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Plus), ("b", Plus)]);
        assert!(matches!(
            move_related(&c, &t1, 8, MovePolicy::AnySummand).unwrap(),
            MoveSearch::Exhausted { .. }
        ));
    }

    #[test]
    fn distributivity_on_a_small_join() {
        let m = bouquet(&["a.1", "a.2"], &[("a", Minus)]);
        let c = GraphSpec::new()
            .edge("b", Plus)
            .edge("c", Plus)
            .vertex("u", &["b.1", "c.1"])
            .vertex("w", &["b.2", "c.2"])
            .build()
            .unwrap();
        for mask in 0..8 {
            let a = EdgeSubset::from_mask(3, mask);
            assert!(join_partial_dual_distributes(&m, 0, &c, 1, &a).unwrap(), "{a:?}");
        }
    }
}
