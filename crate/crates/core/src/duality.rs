//! Geometric and partial duals.
//!
//! [`partial_dual`] traces the boundary of the spanning subgraph `(V(G), A)`
//! and turns each boundary component into a vertex. [`partial_dual_one_edge`]
//! performs the same operation for one edge by local surgery on the arrow
//! presentation, and [`partial_dual_via_marks`] goes through a marked
//! geometric dual. All three keep edge indices and labels.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrows::{graph_from_cycles, to_arrow_presentation, Arrow, ArrowPresentation};
use crate::error::{Error, Result};
use crate::graph::RibbonGraph;
use crate::marked::mark_and_remove;
use crate::subset::EdgeSubset;
use crate::topology::{is_orientable, StepKind, Tracer};

/// The arrow presentation of `G^A`.
pub fn partial_dual_arrows(g: &RibbonGraph, a: &EdgeSubset) -> ArrowPresentation {
    g.check_universe(a);
    let walks = Tracer::for_graph(g).run(|e| g.sign(e), |e| a.contains(e));
    ArrowPresentation {
        labels: g.edges().iter().map(|e| e.label.clone()).collect(),
        cycles: walks
            .into_iter()
            .map(|w| {
                w.steps
                    .into_iter()
                    .map(|s| match s.kind {
                        StepKind::Side(e) | StepKind::Arc(e) => Arrow {
                            label: e,
                            forward: s.forward,
                        },
                        StepKind::Mark(_) => unreachable!("plain graphs carry no marks"),
                    })
                    .collect()
            })
            .collect(),
    }
}

/// `G^A`. Vertices are named `v0, v1, ...`.
pub fn partial_dual(g: &RibbonGraph, a: &EdgeSubset) -> RibbonGraph {
    let p = partial_dual_arrows(g, a);
    graph_from_cycles(&p.labels, &p.cycles)
}

/// `G* = G^{E(G)}`.
pub fn geometric_dual(g: &RibbonGraph) -> RibbonGraph {
    partial_dual(g, &g.all_edges())
}

/// `G^A` as `((G ⃗− A^c)*) ⃗+ A^c`.
pub fn partial_dual_via_marks(g: &RibbonGraph, a: &EdgeSubset) -> RibbonGraph {
    g.check_universe(a);
    let restored = mark_and_remove(g, &a.complement()).dual().restore();
    let labels: Vec<&str> = (0..restored.num_edges()).map(|e| restored.label(e)).collect();
    let order: Vec<usize> = (0..g.num_edges())
        .map(|e| labels.iter().position(|l| *l == g.label(e)).unwrap())
        .collect();
    restored.permute_edges(&order)
}

/// `G^{e}` by surgery on the arrow presentation of `G`.
pub fn partial_dual_one_edge(g: &RibbonGraph, e: usize) -> RibbonGraph {
    assert!(e < g.num_edges(), "edge {e} out of range");
    let mut p = to_arrow_presentation(g);
    dual_edge_in_place(&mut p.cycles, e);
    graph_from_cycles(&p.labels, &p.cycles)
}

/// `G^A` built one edge at a time, in the given order.
pub fn partial_dual_sequential(g: &RibbonGraph, order: &[usize]) -> RibbonGraph {
    let mut p = to_arrow_presentation(g);
    for &e in order {
        dual_edge_in_place(&mut p.cycles, e);
    }
    graph_from_cycles(&p.labels, &p.cycles)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Point {
    Before(usize),
    After(usize),
}

/// Replaces the two arrows of `label` by the two sides of its band.
///
/// Around the edge boundary the arrow `x` runs from its tail to its head,
/// one side from `head(x)` to `tail(y)`, the arrow `y`, and the other side
/// from `head(y)` back to `tail(x)`.
pub(crate) fn dual_edge_in_place(cycles: &mut Vec<Vec<Arrow>>, label: usize) {
    let mut found = Vec::with_capacity(2);
    for (c, cycle) in cycles.iter().enumerate() {
        for (i, a) in cycle.iter().enumerate() {
            if a.label == label {
                found.push((c, i, a.forward));
            }
        }
    }
    assert_eq!(found.len(), 2, "label {label} must carry two arrows");
    let (cx, i, fx) = found[0];
    let (cy, j, fy) = found[1];
    // Points are tagged with 0 for x and 1 for y.
    let head = |which: usize| -> Point {
        match which {
            0 if fx => Point::After(0),
            0 => Point::Before(0),
            _ if fy => Point::After(1),
            _ => Point::Before(1),
        }
    };
    let other = |p: Point| match p {
        Point::Before(k) => Point::After(k),
        Point::After(k) => Point::Before(k),
    };
    let partner = |p: Point| -> Point {
        let hx = head(0);
        let hy = head(1);
        if p == hx {
            other(hy)
        } else if p == other(hx) {
            hy
        } else if p == hy {
            other(hx)
        } else {
            hx
        }
    };
    let side = |from: Point| Arrow {
        label,
        forward: from == head(0) || from == head(1),
    };
    let reversed = |seg: &[Arrow]| -> Vec<Arrow> { seg.iter().rev().map(|a| a.reversed()).collect() };

    if cx != cy {
        let c1 = &cycles[cx];
        let c2 = &cycles[cy];
        let s1: Vec<Arrow> = c1[i + 1..].iter().chain(&c1[..i]).copied().collect();
        let s2: Vec<Arrow> = c2[j + 1..].iter().chain(&c2[..j]).copied().collect();
        let mut merged = s1;
        let at = Point::Before(0);
        merged.push(side(at));
        let landing = partner(at);
        let end = if landing == Point::After(1) {
            merged.extend(s2);
            Point::Before(1)
        } else {
            merged.extend(reversed(&s2));
            Point::After(1)
        };
        debug_assert!(partner(end) == Point::After(0));
        merged.push(side(end));
        cycles[cx] = merged;
        cycles.remove(cy);
    } else {
        let c = &cycles[cx];
        let t1: Vec<Arrow> = c[i + 1..j].to_vec();
        let t2: Vec<Arrow> = c[j + 1..].iter().chain(&c[..i]).copied().collect();
        let at = Point::Before(1);
        let landing = partner(at);
        if landing == Point::After(0) {
            let mut first = t1;
            first.push(side(at));
            let mut second = t2;
            second.push(side(Point::Before(0)));
            cycles[cx] = first;
            cycles.push(second);
        } else {
            debug_assert!(landing == Point::Before(0));
            let mut single = t1;
            single.push(side(at));
            single.extend(reversed(&t2));
            single.push(side(Point::After(1)));
            cycles[cx] = single;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub subset: EdgeSubset,
    pub euler_genus: usize,
    pub orientable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<crate::decomposition::BiseparationClass>,
}

pub const DEFAULT_SPECTRUM_BOUND: usize = 20;

#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    pub genus: Option<usize>,
    pub bound: usize,
    pub force: bool,
    pub classify: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            genus: None,
            bound: DEFAULT_SPECTRUM_BOUND,
            force: false,
            classify: false,
        }
    }
}

/// `γ(G^A)` for every `A ⊆ E(G)`, ordered by subset.
pub fn spectrum(g: &RibbonGraph, opts: &SpectrumOptions) -> Result<Vec<SpectrumEntry>> {
    let e = g.num_edges();
    if e > opts.bound && !opts.force {
        return Err(Error::EnumerationBound {
            edges: e,
            bound: opts.bound,
        });
    }
    if e >= 64 {
        return Err(Error::EnumerationBound { edges: e, bound: 63 });
    }
    // Orientability is shared by all partial duals.
    let orientable = is_orientable(g);
    let connected = crate::topology::is_connected(g);
    let entries: Vec<SpectrumEntry> = (0..1u64 << e)
        .into_par_iter()
        .filter_map(|mask| {
            let a = EdgeSubset::from_mask(e, mask);
            let euler_genus = crate::topology::euler_genus(&partial_dual(g, &a));
            if opts.genus.is_some_and(|k| k != euler_genus) {
                return None;
            }
            let class = (opts.classify && connected).then(|| crate::decomposition::classify_biseparation(g, &a));
            Some(SpectrumEntry {
                subset: a,
                euler_genus,
                orientable,
                class,
            })
        })
        .collect();
    Ok(entries)
}
