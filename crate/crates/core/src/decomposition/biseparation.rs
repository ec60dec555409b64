//! Biseparations: edge sets whose two induced subgraphs are glued along a
//! tree of single shared vertices.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::RibbonGraph;
use crate::subset::EdgeSubset;
use crate::topology::{euler_genus, is_connected, is_orientable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BiseparationClass {
    NotBiseparation,
    Plane,
    ProjectivePlane,
    /// A biseparation whose components have Euler genera summing to the
    /// given value, at least 2.
    Other(usize),
}

impl BiseparationClass {
    fn from_genus_sum(k: usize) -> Self {
        match k {
            0 => BiseparationClass::Plane,
            1 => BiseparationClass::ProjectivePlane,
            k => BiseparationClass::Other(k),
        }
    }
}

impl fmt::Display for BiseparationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiseparationClass::NotBiseparation => write!(f, "none"),
            BiseparationClass::Plane => write!(f, "plane"),
            BiseparationClass::ProjectivePlane => write!(f, "RP²"),
            BiseparationClass::Other(k) => write!(f, "other({k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentSide {
    /// A component of `G|_A`.
    Inside,
    /// A component of `G|_{A^c}`.
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub edges: EdgeSubset,
    pub vertices: Vec<usize>,
    pub euler_genus: usize,
    pub orientable: bool,
}

/// A shared vertex joining `inside[inside]` and `outside[outside]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeEdge {
    pub inside: usize,
    pub outside: usize,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiseparationCertificate {
    pub inside: Vec<ComponentInfo>,
    pub outside: Vec<ComponentInfo>,
    pub tree: Vec<TreeEdge>,
    pub class: BiseparationClass,
    pub trivial: bool,
}

impl BiseparationCertificate {
    pub fn genus_sum(&self) -> usize {
        self.inside.iter().chain(&self.outside).map(|c| c.euler_genus).sum()
    }

    pub fn component(&self, side: ComponentSide, i: usize) -> &ComponentInfo {
        match side {
            ComponentSide::Inside => &self.inside[i],
            ComponentSide::Outside => &self.outside[i],
        }
    }

    /// Components in breadth-first order from `root` across the tree: each
    /// later component shares exactly one vertex with those before it.
    pub fn ordering_from(&self, root: (ComponentSide, usize)) -> Vec<(ComponentSide, usize)> {
        let mut order = vec![root];
        let mut seen_in = vec![false; self.inside.len()];
        let mut seen_out = vec![false; self.outside.len()];
        match root.0 {
            ComponentSide::Inside => seen_in[root.1] = true,
            ComponentSide::Outside => seen_out[root.1] = true,
        }
        let mut k = 0;
        while k < order.len() {
            let (side, i) = order[k];
            for t in &self.tree {
                let next = match side {
                    ComponentSide::Inside if t.inside == i && !seen_out[t.outside] => {
                        seen_out[t.outside] = true;
                        (ComponentSide::Outside, t.outside)
                    }
                    ComponentSide::Outside if t.outside == i && !seen_in[t.inside] => {
                        seen_in[t.inside] = true;
                        (ComponentSide::Inside, t.inside)
                    }
                    _ => continue,
                };
                order.push(next);
            }
            k += 1;
        }
        order
    }
}

/// Edge-bearing components of the spanning subgraph on `a`, each as its
/// edge set.
pub(crate) fn edge_components(g: &RibbonGraph, a: &EdgeSubset) -> Vec<EdgeSubset> {
    let nv = g.num_vertices();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in a.iter() {
        let (u, w) = g.endpoints(e);
        let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
        parent[ru] = rw;
    }
    let mut slot = vec![usize::MAX; nv];
    let mut comps: Vec<EdgeSubset> = Vec::new();
    for e in a.iter() {
        let r = find(&mut parent, g.endpoints(e).0);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(EdgeSubset::empty(g.num_edges()));
        }
        comps[slot[r]].insert(e);
    }
    comps
}

fn component_info(g: &RibbonGraph, edges: EdgeSubset) -> ComponentInfo {
    let h = g.induced_subgraph(&edges);
    let mut vertices: Vec<usize> = edges
        .iter()
        .flat_map(|e| {
            let (u, w) = g.endpoints(e);
            [u, w]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    ComponentInfo {
        euler_genus: euler_genus(&h),
        orientable: is_orientable(&h),
        edges,
        vertices,
    }
}

/// The incidence-tree certificate for `A`, or `None` when `A` does not
/// define a biseparation.
pub fn is_biseparation(g: &RibbonGraph, a: &EdgeSubset) -> Result<Option<BiseparationCertificate>> {
    g.check_universe(a);
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let inside: Vec<ComponentInfo> = edge_components(g, a)
        .into_iter()
        .map(|c| component_info(g, c))
        .collect();
    let outside: Vec<ComponentInfo> = edge_components(g, &a.complement())
        .into_iter()
        .map(|c| component_info(g, c))
        .collect();
    if a.is_trivial() {
        let k = euler_genus(g);
        return Ok(Some(BiseparationCertificate {
            inside,
            outside,
            tree: Vec::new(),
            class: BiseparationClass::from_genus_sum(k),
            trivial: true,
        }));
    }
    let nv = g.num_vertices();
    let mut at_inside = vec![usize::MAX; nv];
    let mut at_outside = vec![usize::MAX; nv];
    for (i, c) in inside.iter().enumerate() {
        for &v in &c.vertices {
            at_inside[v] = i;
        }
    }
    for (i, c) in outside.iter().enumerate() {
        for &v in &c.vertices {
            at_outside[v] = i;
        }
    }
    let tree: Vec<TreeEdge> = (0..nv)
        .filter(|&v| at_inside[v] != usize::MAX && at_outside[v] != usize::MAX)
        .map(|v| TreeEdge {
            inside: at_inside[v],
            outside: at_outside[v],
            vertex: v,
        })
        .collect();
    let nodes = inside.len() + outside.len();
    if tree.len() + 1 != nodes {
        return Ok(None);
    }
    // nodes - 1 edges: a tree exactly when connected.
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merged = 0;
    for t in &tree {
        let (a, b) = (find(&mut parent, t.inside), find(&mut parent, inside.len() + t.outside));
        if a != b {
            parent[a] = b;
            merged += 1;
        }
    }
    if merged + 1 != nodes {
        return Ok(None);
    }
    let mut cert = BiseparationCertificate {
        inside,
        outside,
        tree,
        class: BiseparationClass::Plane,
        trivial: false,
    };
    cert.class = BiseparationClass::from_genus_sum(cert.genus_sum());
    Ok(Some(cert))
}

/// The class of the biseparation defined by `A`; `NotBiseparation` also for
/// disconnected graphs.
pub fn classify_biseparation(g: &RibbonGraph, a: &EdgeSubset) -> BiseparationClass {
    match is_biseparation(g, a) {
        Ok(Some(c)) => c.class,
        _ => BiseparationClass::NotBiseparation,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassFilter {
    All,
    Plane,
    ProjectivePlane,
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Every `A ⊆ E(G)` defining a biseparation of the requested class, in
/// subset order.
pub fn enumerate_biseparations(g: &RibbonGraph, filter: ClassFilter) -> Result<Vec<EdgeSubset>> {
    let e = g.num_edges();
    if e > DEFAULT_ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            edges: e,
            bound: DEFAULT_ENUMERATION_BOUND,
        });
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok((0..1u64 << e)
        .into_par_iter()
        .filter_map(|m| {
            let a = EdgeSubset::from_mask(e, m);
            let class = classify_biseparation(g, &a);
            let keep = match filter {
                ClassFilter::All => class != BiseparationClass::NotBiseparation,
                ClassFilter::Plane => class == BiseparationClass::Plane,
                ClassFilter::ProjectivePlane => class == BiseparationClass::ProjectivePlane,
            };
            keep.then_some(a)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphSpec, Sign::*};

    fn bouquet(signs: [crate::graph::Sign; 2]) -> RibbonGraph {
        GraphSpec::new()
            .edge("a", signs[0])
            .edge("b", signs[1])
            .vertex("v", &["a.1", "b.1", "a.2", "b.2"])
            .build()
            .unwrap()
    }

    #[test]
    fn interlaced_bouquets() {
        let t1 = bouquet([Plus, Plus]);
        let a = t1.subset(&["a"]).unwrap();
        let cert = is_biseparation(&t1, &a).unwrap().unwrap();
        assert_eq!((cert.inside.len(), cert.outside.len(), cert.tree.len()), (1, 1, 1));
        assert_eq!(cert.class, BiseparationClass::Plane);
        let n1 = bouquet([Minus, Minus]);
        assert_eq!(classify_biseparation(&n1, &a), BiseparationClass::Other(2));
        let all = enumerate_biseparations(&t1, ClassFilter::Plane).unwrap();
        assert_eq!(all, vec![a.clone(), t1.subset(&["b"]).unwrap()]);
    }

    #[test]
    fn two_cycle_has_only_trivial_biseparations() {
        let c = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Plus)
            .vertex("u", &["a.1", "b.1"])
            .vertex("w", &["a.2", "b.2"])
            .build()
            .unwrap();
        assert!(is_biseparation(&c, &c.subset(&["a"]).unwrap()).unwrap().is_none());
        assert_eq!(
            enumerate_biseparations(&c, ClassFilter::All).unwrap(),
            vec![c.no_edges(), c.all_edges()]
        );
    }

    #[test]
    fn trivial_classification_follows_the_genus() {
        let m = GraphSpec::new().edge("e", Minus).vertex("v", &["e.1", "e.2"]).build().unwrap();
        assert_eq!(classify_biseparation(&m, &m.all_edges()), BiseparationClass::ProjectivePlane);
        let cert = is_biseparation(&m, &m.no_edges()).unwrap().unwrap();
        assert!(cert.trivial);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let two = GraphSpec::new().vertex("u", &[]).vertex("w", &[]).build().unwrap();
        assert_eq!(is_biseparation(&two, &two.no_edges()), Err(Error::Disconnected));
    }
}
