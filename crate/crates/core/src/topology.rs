//! Boundary tracing and the surface invariants built on it.
//!
//! Every slot of a rotation (an edge end or a mark) is an arc of the vertex
//! boundary with a start and an end point, in rotation order. Consecutive
//! slots are joined by free arcs. A band glues the end point of `e.1` to the
//! start point of `e.2` along one side and the remaining two points along the
//! other; a twist swaps the two points of `e.2`. Tracing alternates between
//! free arcs and whatever lies on the far side of each slot point.

use std::fmt;

use serde::Serialize;

use crate::graph::{EdgeEnd, RibbonGraph, Sign};
use crate::marked::{MarkedRibbonGraph, Slot};
use crate::subset::EdgeSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    /// A side of an edge band.
    Side(usize),
    /// The attachment arc of an edge whose band is absent.
    Arc(usize),
    Mark(usize),
}

/// One labeled piece of a boundary component. `forward` records whether the
/// walk runs along the orientation of the edge boundary (or of the mark).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TraceStep {
    pub kind: StepKind,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryWalks {
    pub walks: Vec<Vec<TraceStep>>,
}

impl BoundaryWalks {
    pub fn count(&self) -> usize {
        self.walks.len()
    }
}

pub(crate) struct Walk {
    pub start_vertex: usize,
    pub steps: Vec<TraceStep>,
}

pub(crate) struct Tracer {
    offsets: Vec<usize>,
    slots: Vec<Slot>,
    /// dart -> global slot index
    dart_pos: Vec<usize>,
}

impl Tracer {
    fn new<'a, I>(num_edges: usize, vertices: I) -> Self
    where
        I: Iterator<Item = Box<dyn Iterator<Item = Slot> + 'a>>,
    {
        let mut offsets = vec![0];
        let mut slots = Vec::new();
        let mut dart_pos = vec![usize::MAX; 2 * num_edges];
        for v in vertices {
            for s in v {
                if let Slot::End(end) = s {
                    dart_pos[end.dart()] = slots.len();
                }
                slots.push(s);
            }
            offsets.push(slots.len());
        }
        Tracer {
            offsets,
            slots,
            dart_pos,
        }
    }

    pub fn for_graph(g: &RibbonGraph) -> Self {
        Self::new(
            g.num_edges(),
            g.vertices()
                .iter()
                .map(|v| Box::new(v.rotation.iter().map(|&e| Slot::End(e))) as Box<dyn Iterator<Item = Slot>>),
        )
    }

    pub fn for_marked(m: &MarkedRibbonGraph) -> Self {
        Self::new(
            m.num_edges(),
            m.vertices()
                .iter()
                .map(|v| Box::new(v.slots.iter().copied()) as Box<dyn Iterator<Item = Slot>>),
        )
    }

    /// Traces the boundary of the vertex discs together with the bands of the
    /// edges selected by `band`.
    pub fn run(&self, sign: impl Fn(usize) -> Sign, band: impl Fn(usize) -> bool) -> Vec<Walk> {
        let n = self.slots.len();
        let mut vertex_of = vec![0; n];
        for v in 0..self.offsets.len() - 1 {
            for g in self.offsets[v]..self.offsets[v + 1] {
                vertex_of[g] = v;
            }
        }
        let free = |p: usize| -> usize {
            let g = p / 2;
            let v = vertex_of[g];
            let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
            if p % 2 == 1 {
                let next = if g + 1 == hi { lo } else { g + 1 };
                2 * next
            } else {
                let prev = if g == lo { hi - 1 } else { g - 1 };
                2 * prev + 1
            }
        };
        let across = |p: usize| -> (usize, TraceStep) {
            let g = p / 2;
            let at_start = p.is_multiple_of(2);
            match self.slots[g] {
                Slot::Mark(m) => (
                    p ^ 1,
                    TraceStep {
                        kind: StepKind::Mark(m.label),
                        forward: at_start == m.forward,
                    },
                ),
                Slot::End(end) if !band(end.edge) => {
                    let arc_forward = end.end == 0 || sign(end.edge) == Sign::Plus;
                    (
                        p ^ 1,
                        TraceStep {
                            kind: StepKind::Arc(end.edge),
                            forward: at_start == arc_forward,
                        },
                    )
                }
                Slot::End(end) => {
                    let a = self.dart_pos[EdgeEnd::new(end.edge, 0).dart()];
                    let b = self.dart_pos[EdgeEnd::new(end.edge, 1).dart()];
                    let p0 = 2 * a;
                    let p1 = 2 * a + 1;
                    let (p2, p3) = if sign(end.edge) == Sign::Plus {
                        (2 * b, 2 * b + 1)
                    } else {
                        (2 * b + 1, 2 * b)
                    };
                    let (q, forward) = if p == p1 {
                        (p2, true)
                    } else if p == p2 {
                        (p1, false)
                    } else if p == p3 {
                        (p0, true)
                    } else {
                        debug_assert_eq!(p, p0);
                        (p3, false)
                    };
                    (
                        q,
                        TraceStep {
                            kind: StepKind::Side(end.edge),
                            forward,
                        },
                    )
                }
            }
        };
        let mut visited = vec![false; 2 * n];
        let mut walks = Vec::new();
        for v in 0..self.offsets.len() - 1 {
            let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
            if lo == hi {
                walks.push(Walk {
                    start_vertex: v,
                    steps: Vec::new(),
                });
                continue;
            }
            for start in 2 * lo..2 * hi {
                if visited[start] {
                    continue;
                }
                let mut steps = Vec::new();
                let mut p = start;
                loop {
                    visited[p] = true;
                    let (q, step) = across(p);
                    visited[q] = true;
                    steps.push(step);
                    p = free(q);
                    if p == start {
                        break;
                    }
                }
                walks.push(Walk {
                    start_vertex: v,
                    steps,
                });
            }
        }
        walks
    }
}

/// Boundary components of the ribbon graph viewed as a surface with boundary.
pub fn boundary_components(g: &RibbonGraph) -> BoundaryWalks {
    BoundaryWalks {
        walks: Tracer::for_graph(g)
            .run(|e| g.sign(e), |_| true)
            .into_iter()
            .map(|w| w.steps)
            .collect(),
    }
}

/// Number of boundary components of the spanning subgraph `(V(G), A)`.
pub fn boundary_count(g: &RibbonGraph, a: &EdgeSubset) -> usize {
    g.check_universe(a);
    Tracer::for_graph(g).run(|e| g.sign(e), |e| a.contains(e)).len()
}

pub fn face_count(g: &RibbonGraph) -> usize {
    Tracer::for_graph(g).run(|e| g.sign(e), |_| true).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub vertex_component: Vec<usize>,
    pub edge_component: Vec<usize>,
}

impl Components {
    pub fn vertices_of(&self, c: usize) -> Vec<usize> {
        (0..self.vertex_component.len()).filter(|&v| self.vertex_component[v] == c).collect()
    }

    pub fn edges_of(&self, c: usize) -> EdgeSubset {
        let n = self.edge_component.len();
        EdgeSubset::from_indices(n, (0..n).filter(|&e| self.edge_component[e] == c))
    }
}

/// Connected components, numbered by their lowest vertex.
pub fn connected_components(g: &RibbonGraph) -> Components {
    let nv = g.num_vertices();
    let mut comp = vec![usize::MAX; nv];
    let mut count = 0;
    let mut adjacency = vec![Vec::new(); nv];
    for e in 0..g.num_edges() {
        let (u, w) = g.endpoints(e);
        adjacency[u].push(w);
        adjacency[w].push(u);
    }
    for s in 0..nv {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adjacency[u] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    let edge_component = (0..g.num_edges()).map(|e| comp[g.endpoints(e).0]).collect();
    Components {
        count,
        vertex_component: comp,
        edge_component,
    }
}

pub fn is_connected(g: &RibbonGraph) -> bool {
    connected_components(g).count <= 1
}

/// Vertex orientations making every edge untwisted, if they exist.
fn orientation_assignment(g: &RibbonGraph) -> Option<Vec<Sign>> {
    let nv = g.num_vertices();
    let mut o: Vec<Option<Sign>> = vec![None; nv];
    let mut incident = vec![Vec::new(); nv];
    for e in 0..g.num_edges() {
        let (u, w) = g.endpoints(e);
        incident[u].push((e, w));
        if u != w {
            incident[w].push((e, u));
        }
    }
    for s in 0..nv {
        if o[s].is_some() {
            continue;
        }
        o[s] = Some(Sign::Plus);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let ou = o[u].unwrap();
            for &(e, w) in &incident[u] {
                let want = ou.times(g.sign(e));
                match o[w] {
                    None => {
                        o[w] = Some(want);
                        stack.push(w);
                    }
                    Some(ow) if ow != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(o.into_iter().map(Option::unwrap).collect())
}

/// True iff some set of vertex flips makes every edge untwisted.
pub fn is_orientable(g: &RibbonGraph) -> bool {
    orientation_assignment(g).is_some()
}

/// Orientability read off the orientation double cover: the cover of a
/// component is disconnected exactly when the component is orientable.
pub fn is_orientable_by_double_cover(g: &RibbonGraph) -> bool {
    let nv = g.num_vertices();
    let mut parent: Vec<usize> = (0..2 * nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    };
    for e in 0..g.num_edges() {
        let (u, w) = g.endpoints(e);
        for layer in 0..2 {
            let other = if g.sign(e) == Sign::Plus { layer } else { 1 - layer };
            union(2 * u + layer, 2 * w + other);
        }
    }
    let cover_components = (0..2 * nv).filter(|&x| find(&mut parent, x) == x).count();
    cover_components == 2 * connected_components(g).count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Surface {
    Sphere,
    Torus,
    /// Orientable surface of the given genus, at least 2.
    Orientable(usize),
    ProjectivePlane,
    KleinBottle,
    /// Connected sum of the given number of projective planes, at least 3.
    NonOrientable(usize),
}

impl Surface {
    pub fn from_euler_genus(euler_genus: usize, orientable: bool) -> Surface {
        match (orientable, euler_genus) {
            (true, 0) => Surface::Sphere,
            (true, 2) => Surface::Torus,
            (true, k) => {
                debug_assert!(k % 2 == 0);
                Surface::Orientable(k / 2)
            }
            (false, 1) => Surface::ProjectivePlane,
            (false, 2) => Surface::KleinBottle,
            (false, k) => Surface::NonOrientable(k),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Sphere => write!(f, "sphere"),
            Surface::Torus => write!(f, "torus"),
            Surface::Orientable(g) => write!(f, "Σ_{g}"),
            Surface::ProjectivePlane => write!(f, "RP²"),
            Surface::KleinBottle => write!(f, "Klein bottle"),
            Surface::NonOrientable(k) => write!(f, "N_{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub f: usize,
    pub euler_genus: usize,
    pub orientable: bool,
    pub surface: Surface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceStats {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub c: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub euler_genus: usize,
    pub genus: usize,
    pub components: Vec<ComponentStats>,
}

impl SurfaceStats {
    /// Surface names of the components joined with ` + `; `empty` for the
    /// graph without vertices.
    pub fn surface_label(&self) -> String {
        if self.components.is_empty() {
            return "empty".into();
        }
        self.components
            .iter()
            .map(|c| c.surface.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn surface_stats(g: &RibbonGraph) -> SurfaceStats {
    let comps = connected_components(g);
    let walks = Tracer::for_graph(g).run(|e| g.sign(e), |_| true);
    let mut faces = vec![0usize; comps.count];
    for w in &walks {
        let c = match w.steps.first().map(|s| s.kind) {
            Some(StepKind::Side(e)) => comps.edge_component[e],
            _ => comps.vertex_component[w.start_vertex],
        };
        faces[c] += 1;
    }
    let orientation = orientation_assignment(g);
    let mut components = Vec::with_capacity(comps.count);
    for (c, &f) in faces.iter().enumerate() {
        let vertices = comps.vertices_of(c);
        let edges: Vec<usize> = comps.edges_of(c).iter().collect();
        let chi = vertices.len() as i64 - edges.len() as i64 + f as i64;
        let euler_genus = (2 - chi) as usize;
        let orientable = orientation.is_some()
            || is_orientable(&g.induced_subgraph(&comps.edges_of(c)));
        components.push(ComponentStats {
            surface: Surface::from_euler_genus(euler_genus, orientable),
            vertices,
            edges,
            f,
            euler_genus,
            orientable,
        });
    }
    let (v, e, f, c) = (g.num_vertices(), g.num_edges(), walks.len(), comps.count);
    let chi = v as i64 - e as i64 + f as i64;
    let euler_genus = (2 * c as i64 - chi) as usize;
    let orientable = orientation.is_some();
    SurfaceStats {
        v,
        e,
        f,
        c,
        euler_characteristic: chi,
        orientable,
        euler_genus,
        genus: if orientable { euler_genus / 2 } else { euler_genus },
        components,
    }
}

/// `γ(G) = 2c − χ`, summed over components.
pub fn euler_genus(g: &RibbonGraph) -> usize {
    let c = connected_components(g).count as i64;
    let chi = g.num_vertices() as i64 - g.num_edges() as i64 + face_count(g) as i64;
    (2 * c - chi) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use Sign::*;

    fn bouquet(rotation: &[&str], signs: &[(&str, Sign)]) -> RibbonGraph {
        let mut spec = GraphSpec::new();
        for (l, s) in signs {
            spec = spec.edge(l, *s);
        }
        spec.vertex("v", rotation).build().unwrap()
    }

    #[test]
    fn loops() {
        let annulus = bouquet(&["e.1", "e.2"], &[("e", Plus)]);
        let mobius = bouquet(&["e.1", "e.2"], &[("e", Minus)]);
        assert_eq!(boundary_components(&annulus).count(), 2);
        assert_eq!(boundary_components(&mobius).count(), 1);
        assert_eq!(euler_genus(&annulus), 0);
        assert_eq!(euler_genus(&mobius), 1);
        assert!(!is_orientable(&mobius));
    }

    #[test]
    fn interlaced_bouquets() {
        let rot = ["a.1", "b.1", "a.2", "b.2"];
        let t1 = surface_stats(&bouquet(&rot, &[("a", Plus), ("b", Plus)]));
        assert_eq!((t1.f, t1.euler_genus, t1.orientable), (1, 2, true));
        assert_eq!(t1.surface_label(), "torus");
        let n1 = surface_stats(&bouquet(&rot, &[("a", Minus), ("b", Minus)]));
        assert_eq!((n1.f, n1.euler_genus, n1.orientable), (2, 1, false));
        assert_eq!(n1.surface_label(), "RP²");
    }

    #[test]
    fn triangle_with_two_twists_is_orientable() {
        let g = GraphSpec::new()
            .edge("a", Minus)
            .edge("b", Minus)
            .edge("c", Plus)
            .vertex("x", &["a.1", "c.2"])
            .vertex("y", &["a.2", "b.1"])
            .vertex("z", &["b.2", "c.1"])
            .build()
            .unwrap();
        assert!(is_orientable(&g));
        assert!(is_orientable_by_double_cover(&g));
        assert_eq!(euler_genus(&g), 0);
    }

    #[test]
    fn isolated_vertex_and_empty_graph() {
        let s = surface_stats(&RibbonGraph::single_vertex());
        assert_eq!((s.v, s.e, s.f, s.c, s.euler_genus), (1, 0, 1, 1, 0));
        assert_eq!(s.surface_label(), "sphere");
        let empty = RibbonGraph::single_vertex().without_isolated_vertices();
        let s = surface_stats(&empty.delete_edges(&empty.all_edges()));
        let s2 = surface_stats(&RibbonGraph::single_vertex().induced_subgraph(&EdgeSubset::empty(0)));
        assert_eq!(s, surface_stats(&empty));
        assert_eq!((s2.v, s2.euler_genus, s2.c), (0, 0, 0));
    }

    #[test]
    fn every_side_and_arc_is_used_once() {
        let g = bouquet(&["a.1", "b.1", "a.2", "c.1", "b.2", "c.2"], &[("a", Plus), ("b", Minus), ("c", Plus)]);
        let walks = Tracer::for_graph(&g).run(|e| g.sign(e), |e| e != 1);
        let mut sides = [0; 3];
        let mut arcs = [0; 3];
        for s in walks.iter().flat_map(|w| &w.steps) {
            match s.kind {
                StepKind::Side(e) => sides[e] += 1,
                StepKind::Arc(e) => arcs[e] += 1,
                StepKind::Mark(_) => unreachable!(),
            }
        }
        assert_eq!(sides, [2, 0, 2]);
        assert_eq!(arcs, [0, 2, 0]);
    }
}
