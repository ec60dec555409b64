//! n-sums and joins as constructors.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeEnd, RibbonGraph, Vertex};
use crate::topology::is_connected;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    P,
    Q,
}

/// How the ends at two identified vertices are merged: reading the merged
/// rotation, `word` says whether the next end comes from `P` (starting at
/// stored position 0) or from `Q` (starting at position `q_shift`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interleave {
    pub q_shift: usize,
    pub word: Vec<Side>,
}

impl Interleave {
    /// All of `P`'s ends, then all of `Q`'s.
    pub fn blocks(p_degree: usize, q_degree: usize) -> Self {
        let mut word = vec![Side::P; p_degree];
        word.extend(std::iter::repeat_n(Side::Q, q_degree));
        Interleave { q_shift: 0, word }
    }

    /// Every pattern for the given degrees, up to rotating the merged
    /// rotation: words start with `P`, and every shift of `Q` is tried.
    pub fn all(p_degree: usize, q_degree: usize) -> Vec<Interleave> {
        let mut out = Vec::new();
        if p_degree == 0 {
            return out;
        }
        let mut word = vec![Side::P];
        fn rec(word: &mut Vec<Side>, p_left: usize, q_left: usize, acc: &mut Vec<Vec<Side>>) {
            if p_left == 0 && q_left == 0 {
                acc.push(word.clone());
                return;
            }
            if p_left > 0 {
                word.push(Side::P);
                rec(word, p_left - 1, q_left, acc);
                word.pop();
            }
            if q_left > 0 {
                word.push(Side::Q);
                rec(word, p_left, q_left - 1, acc);
                word.pop();
            }
        }
        let mut words = Vec::new();
        rec(&mut word, p_degree - 1, q_degree, &mut words);
        for w in words {
            for q_shift in 0..q_degree.max(1) {
                out.push(Interleave {
                    q_shift,
                    word: w.clone(),
                });
            }
        }
        out
    }

    /// Whether each side occupies one contiguous arc of the merged rotation.
    pub fn is_join(&self) -> bool {
        let changes = (0..self.word.len())
            .filter(|&i| self.word[i] != self.word[(i + 1) % self.word.len()])
            .count();
        changes <= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumPairing {
    pub p_vertex: usize,
    pub q_vertex: usize,
    pub pattern: Interleave,
}

/// `P ⊕_n Q`: identifies `pairing[i].q_vertex` of `Q` with
/// `pairing[i].p_vertex` of `P`. The result lists `P`'s vertices (merged ones
/// keep `P`'s names) and then `Q`'s unpaired vertices, `P`'s edges and then
/// `Q`'s. Clashing vertex names from `Q` get a `_` suffix.
pub fn n_sum(p: &RibbonGraph, q: &RibbonGraph, pairing: &[SumPairing]) -> Result<RibbonGraph> {
    for (name, g) in [("P", p), ("Q", q)] {
        if g.num_edges() == 0 {
            return Err(Error::InvalidSum(format!("{name} has no edges")));
        }
        if !is_connected(g) {
            return Err(Error::InvalidSum(format!("{name} is not connected")));
        }
    }
    if pairing.is_empty() {
        return Err(Error::InvalidSum("empty pairing".into()));
    }
    if let Some(e) = q.edges().iter().find(|e| p.edge_index(&e.label).is_some()) {
        return Err(Error::DuplicateLabel {
            label: e.label.clone(),
        });
    }
    let mut used_p = HashSet::new();
    let mut used_q = HashSet::new();
    for s in pairing {
        if s.p_vertex >= p.num_vertices() || s.q_vertex >= q.num_vertices() {
            return Err(Error::InvalidSum("vertex out of range".into()));
        }
        if !used_p.insert(s.p_vertex) || !used_q.insert(s.q_vertex) {
            return Err(Error::InvalidSum("vertex reused within a pairing".into()));
        }
        let (dp, dq) = (p.degree(s.p_vertex), q.degree(s.q_vertex));
        let ps = s.pattern.word.iter().filter(|&&x| x == Side::P).count();
        if ps != dp || s.pattern.word.len() != dp + dq {
            return Err(Error::InvalidSum(format!(
                "pattern at {} does not match degrees {dp} and {dq}",
                p.vertices()[s.p_vertex].name
            )));
        }
        if dq > 0 && s.pattern.q_shift >= dq {
            return Err(Error::InvalidSum("shift out of range".into()));
        }
    }
    let offset = p.num_edges();
    let shift = |e: &EdgeEnd| EdgeEnd::new(e.edge + offset, e.end);
    let mut edges = p.edges().to_vec();
    edges.extend(q.edges().iter().cloned());
    let mut vertices: Vec<Vertex> = p.vertices().to_vec();
    for s in pairing {
        let pr = p.rotation(s.p_vertex);
        let qr = q.rotation(s.q_vertex);
        let (mut i, mut j) = (0, 0);
        let rotation = s
            .pattern
            .word
            .iter()
            .map(|side| match side {
                Side::P => {
                    i += 1;
                    pr[i - 1]
                }
                Side::Q => {
                    j += 1;
                    shift(&qr[(s.pattern.q_shift + j - 1) % qr.len()])
                }
            })
            .collect();
        vertices[s.p_vertex].rotation = rotation;
    }
    let mut names: HashSet<String> = vertices.iter().map(|v| v.name.clone()).collect();
    for (k, v) in q.vertices().iter().enumerate() {
        if used_q.contains(&k) {
            continue;
        }
        let mut name = v.name.clone();
        while !names.insert(name.clone()) {
            name.push('_');
        }
        vertices.push(Vertex {
            name,
            rotation: v.rotation.iter().map(shift).collect(),
        });
    }
    Ok(RibbonGraph::from_parts(edges, vertices))
}

/// `P ∨ Q`: a 1-sum placing all of `Q`'s ends at `q_vertex` after all of
/// `P`'s ends at `p_vertex`.
pub fn join(p: &RibbonGraph, p_vertex: usize, q: &RibbonGraph, q_vertex: usize) -> Result<RibbonGraph> {
    let pattern = Interleave::blocks(
        p.rotation(p_vertex.min(p.num_vertices().saturating_sub(1))).len(),
        q.rotation(q_vertex.min(q.num_vertices().saturating_sub(1))).len(),
    );
    let g = n_sum(
        p,
        q,
        &[SumPairing {
            p_vertex,
            q_vertex,
            pattern,
        }],
    )?;
    debug_assert_eq!(
        crate::topology::euler_genus(&g),
        crate::topology::euler_genus(p) + crate::topology::euler_genus(q)
    );
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphSpec, Sign};
    use crate::topology::euler_genus;

    fn looped(label: &str, sign: Sign) -> RibbonGraph {
        let e1 = format!("{label}.1");
        let e2 = format!("{label}.2");
        GraphSpec::new().edge(label, sign).vertex("v", &[&e1, &e2]).build().unwrap()
    }

    #[test]
    fn alternating_and_nested_bouquets() {
        let a = looped("a", Sign::Plus);
        let b = looped("b", Sign::Plus);
        let alternating = Interleave {
            q_shift: 0,
            word: vec![Side::P, Side::Q, Side::P, Side::Q],
        };
        let g = n_sum(&a, &b, &[SumPairing { p_vertex: 0, q_vertex: 0, pattern: alternating.clone() }]).unwrap();
        assert_eq!(euler_genus(&g), 2);
        assert!(!alternating.is_join());
        let nested = join(&a, 0, &b, 0).unwrap();
        assert_eq!(nested.num_vertices(), 1);
        assert_eq!(euler_genus(&nested), 0);
    }

    #[test]
    fn two_sum_of_paths_is_the_two_cycle() {
        let a = GraphSpec::new().edge("a", Sign::Plus).vertex("x", &["a.1"]).vertex("y", &["a.2"]).build().unwrap();
        let b = GraphSpec::new().edge("b", Sign::Plus).vertex("x", &["b.1"]).vertex("y", &["b.2"]).build().unwrap();
        let pairing = [
            SumPairing { p_vertex: 0, q_vertex: 0, pattern: Interleave::blocks(1, 1) },
            SumPairing { p_vertex: 1, q_vertex: 1, pattern: Interleave::blocks(1, 1) },
        ];
        let c = n_sum(&a, &b, &pairing).unwrap();
        assert_eq!((c.num_vertices(), c.num_edges(), euler_genus(&c)), (2, 2, 0));
    }

    #[test]
    fn rejects_trivial_summand_and_reused_vertices() {
        let a = looped("a", Sign::Minus);
        assert!(matches!(join(&a, 0, &RibbonGraph::single_vertex(), 0), Err(Error::InvalidSum(_))));
        let b = looped("b", Sign::Minus);
        let mm = join(&a, 0, &b, 0).unwrap();
        assert_eq!(euler_genus(&mm), 2);
        let c = looped("c", Sign::Plus);
        let pairing = [
            SumPairing { p_vertex: 0, q_vertex: 0, pattern: Interleave::blocks(4, 2) },
            SumPairing { p_vertex: 0, q_vertex: 0, pattern: Interleave::blocks(4, 2) },
        ];
        assert!(matches!(n_sum(&mm, &c, &pairing), Err(Error::InvalidSum(_))));
        assert!(matches!(join(&a, 0, &a, 0), Err(Error::DuplicateLabel { .. })));
    }

    #[test]
    fn interleave_count() {
        // Words of three P and two Q starting with P, times two shifts.
        assert_eq!(Interleave::all(3, 2).len(), 6 * 2);
    }
}
