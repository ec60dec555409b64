//! Generators for connected ribbon graphs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeEnd, RibbonGraph, Sign, Vertex};
use crate::topology::is_connected;

/// Largest edge count accepted for exhaustive generation.
pub const EXHAUSTIVE_BOUND: usize = 6;

/// `a, b, ..., z`, then `e26, e27, ...`.
pub fn edge_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every connected graph up to equivalence.
    Exhaustive,
    /// `count` graphs per edge count: uniform random dart permutations and
    /// signs, kept when connected.
    Random { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub min_edges: usize,
    pub max_edges: usize,
    pub mode: Mode,
    /// Drop graphs equivalent to an earlier one.
    pub dedup: bool,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub params: CorpusParams,
    pub graphs: Vec<RibbonGraph>,
}

pub fn generate(params: CorpusParams) -> Result<Corpus> {
    let graphs = match params.mode {
        Mode::Exhaustive => {
            if params.max_edges > EXHAUSTIVE_BOUND {
                return Err(Error::EnumerationBound {
                    edges: params.max_edges,
                    bound: EXHAUSTIVE_BOUND,
                });
            }
            exhaustive_layers(params.max_edges)
                .into_iter()
                .skip(params.min_edges)
                .flatten()
                .collect()
        }
        Mode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for e in params.min_edges..=params.max_edges {
                let mut layer = Vec::new();
                while layer.len() < count {
                    let g = random_graph(e, &mut rng);
                    if is_connected(&g) {
                        layer.push(g);
                    }
                }
                if params.dedup {
                    layer = dedup(layer);
                }
                out.extend(layer);
            }
            out
        }
    };
    Ok(Corpus { params, graphs })
}

/// Connected graphs with exactly `0, 1, ..., max_edges` edges, one per
/// equivalence class, ordered by canonical code within each layer.
pub fn exhaustive_layers(max_edges: usize) -> Vec<Vec<RibbonGraph>> {
    let mut layers = vec![vec![RibbonGraph::single_vertex()]];
    for e in 1..=max_edges {
        let grown: Vec<Vec<RibbonGraph>> = layers[e - 1].par_iter().map(|g| augmentations(g, e - 1)).collect();
        layers.push(dedup(grown.into_iter().flatten().collect()));
    }
    layers
}

fn dedup(graphs: Vec<RibbonGraph>) -> Vec<RibbonGraph> {
    let codes: Vec<CanonicalCode> = graphs.par_iter().map(canonical_form).collect();
    let mut seen: BTreeMap<CanonicalCode, RibbonGraph> = BTreeMap::new();
    for (c, g) in codes.into_iter().zip(graphs) {
        seen.entry(c).or_insert(g);
    }
    seen.into_values().collect()
}

/// Every way of adding edge `label(e)` to `g`: both ends anywhere with
/// either sign, or a pendant edge to a new vertex. Removing a non-bridge
/// edge, or a pendant edge of a tree, from a connected graph leaves it
/// connected, so this reaches every connected graph with one more edge.
fn augmentations(g: &RibbonGraph, e: usize) -> Vec<RibbonGraph> {
    let mut edges = g.edges().to_vec();
    edges.push(Edge {
        label: edge_label(e),
        sign: Sign::Plus,
    });
    let first = EdgeEnd::new(e, 0);
    let second = EdgeEnd::new(e, 1);
    let mut out = Vec::new();
    let nv = g.num_vertices();
    for u in 0..nv {
        for i in 0..=g.degree(u) {
            let mut with_first = g.vertices().to_vec();
            with_first[u].rotation.insert(i, first);
            for w in 0..nv {
                for j in 0..=with_first[w].rotation.len() {
                    let mut vertices = with_first.clone();
                    vertices[w].rotation.insert(j, second);
                    for sign in [Sign::Plus, Sign::Minus] {
                        let mut edges = edges.clone();
                        edges[e].sign = sign;
                        out.push(RibbonGraph::from_parts(edges, vertices.clone()));
                    }
                }
            }
            let mut vertices = with_first;
            vertices.push(Vertex {
                name: format!("v{nv}"),
                rotation: vec![second],
            });
            out.push(RibbonGraph::from_parts(edges.clone(), vertices));
        }
    }
    out.into_iter().map(|g| g.with_fresh_vertex_names()).collect()
}

/// The graph whose vertices are the cycles of the dart permutation `next`
/// (each read from its smallest dart), with the given signs.
pub fn graph_from_permutation(next: &[usize], signs: &[Sign]) -> RibbonGraph {
    assert_eq!(next.len(), 2 * signs.len());
    let edges = signs
        .iter()
        .enumerate()
        .map(|(i, &sign)| Edge {
            label: edge_label(i),
            sign,
        })
        .collect();
    let mut seen = vec![false; next.len()];
    let mut vertices = Vec::new();
    for d in 0..next.len() {
        if seen[d] {
            continue;
        }
        let mut rotation = Vec::new();
        let mut x = d;
        while !seen[x] {
            seen[x] = true;
            rotation.push(EdgeEnd::from_dart(x));
            x = next[x];
        }
        vertices.push(Vertex {
            name: format!("v{}", vertices.len()),
            rotation,
        });
    }
    if vertices.is_empty() {
        return RibbonGraph::single_vertex();
    }
    RibbonGraph::from_parts(edges, vertices)
}

fn random_graph(e: usize, rng: &mut ChaCha8Rng) -> RibbonGraph {
    let mut darts: Vec<usize> = (0..2 * e).collect();
    darts.shuffle(rng);
    let mut next = vec![0; 2 * e];
    // Cut the shuffled darts into cycles at random points.
    let mut start = 0;
    for i in 0..2 * e {
        let close = i + 1 == 2 * e || rng.gen_bool(0.5);
        next[darts[i]] = if close { darts[start] } else { darts[i + 1] };
        if close {
            start = i + 1;
        }
    }
    let signs: Vec<Sign> = (0..e)
        .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
        .collect();
    graph_from_permutation(&next, &signs)
}

/// Every labeled graph on `e` edges: each permutation of the `2e` darts,
/// with each sign vector. Intended for cross-checking at small sizes.
pub fn raw_enumeration(e: usize) -> Vec<RibbonGraph> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut out);
        out
    }
    let mut out = Vec::new();
    for next in permutations(2 * e) {
        for mask in 0..1u32 << e {
            let signs: Vec<Sign> = (0..e)
                .map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect();
            out.push(graph_from_permutation(&next, &signs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn one_edge_gives_three_graphs() {
        let layers = exhaustive_layers(1);
        assert_eq!(layers[0].len(), 1);
        assert_eq!(layers[1].len(), 3);
    }

    #[test]
    fn augmentation_agrees_with_raw_enumeration() {
        let layers = exhaustive_layers(3);
        for e in 0..=3 {
            let raw: BTreeSet<CanonicalCode> = raw_enumeration(e)
                .iter()
                .filter(|g| is_connected(g))
                .map(canonical_form)
                .collect();
            let grown: BTreeSet<CanonicalCode> = layers[e].iter().map(canonical_form).collect();
            assert_eq!(grown.len(), layers[e].len());
            assert_eq!(raw, grown, "e = {e}");
        }
    }

    #[test]
    fn random_mode_is_deterministic() {
        let params = CorpusParams {
            min_edges: 3,
            max_edges: 4,
            mode: Mode::Random { seed: 7, count: 20 },
            dedup: false,
        };
        let a = generate(params).unwrap();
        let b = generate(params).unwrap();
        assert_eq!(a.graphs, b.graphs);
        assert_eq!(a.graphs.len(), 40);
        assert!(a.graphs.iter().all(is_connected));
    }

    #[test]
    fn exhaustive_bound_is_enforced() {
        let params = CorpusParams {
            min_edges: 0,
            max_edges: EXHAUSTIVE_BOUND + 1,
            mode: Mode::Exhaustive,
            dedup: true,
        };
        assert!(matches!(generate(params), Err(Error::EnumerationBound { .. })));
    }
}
