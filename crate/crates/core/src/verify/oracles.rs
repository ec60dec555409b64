//! Brute-force reference implementations, independent of the main
//! algorithms, used to cross-check them.

use std::collections::{HashMap, HashSet};

use crate::graph::{EdgeEnd, RibbonGraph};
use crate::subset::EdgeSubset;

/// Flags `(dart, side)`: side 0 lies before the dart in its vertex rotation,
/// side 1 after it.
struct Flags {
    /// Neighbor across the corner between consecutive darts.
    corner: Vec<usize>,
    /// Neighbor along the edge band.
    band: Vec<usize>,
}

fn flags(g: &RibbonGraph) -> Flags {
    let n = 4 * g.num_edges();
    let flag = |d: usize, side: usize| 2 * d + side;
    let mut corner = vec![usize::MAX; n];
    let mut band = vec![usize::MAX; n];
    for v in g.vertices() {
        let rot = &v.rotation;
        for (i, end) in rot.iter().enumerate() {
            let next = rot[(i + 1) % rot.len()];
            corner[flag(end.dart(), 1)] = flag(next.dart(), 0);
            corner[flag(next.dart(), 0)] = flag(end.dart(), 1);
        }
    }
    for e in 0..g.num_edges() {
        let (d1, d2) = (EdgeEnd::new(e, 0).dart(), EdgeEnd::new(e, 1).dart());
        for side in 0..2 {
            let other = if g.sign(e).is_twisted() { side } else { 1 - side };
            band[flag(d1, side)] = flag(d2, other);
            band[flag(d2, other)] = flag(d1, side);
        }
    }
    Flags { corner, band }
}

/// Faces as orbits of the flags under the corner and band involutions.
pub fn flag_face_count(g: &RibbonGraph) -> usize {
    let f = flags(g);
    let mut seen = vec![false; f.corner.len()];
    let mut faces = g.vertices().iter().filter(|v| v.rotation.is_empty()).count();
    for s in 0..seen.len() {
        if seen[s] {
            continue;
        }
        faces += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for y in [f.corner[x], f.band[x]] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    faces
}

fn vertex_components(g: &RibbonGraph) -> usize {
    let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut count = g.num_vertices();
    for e in 0..g.num_edges() {
        let (u, w) = g.endpoints(e);
        let (a, b) = (find(&mut parent, u), find(&mut parent, w));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// `2k - (v - e + f)` with faces counted on flags.
pub fn flag_euler_genus(g: &RibbonGraph) -> usize {
    let chi = g.num_vertices() as i64 - g.num_edges() as i64 + flag_face_count(g) as i64;
    (2 * vertex_components(g) as i64 - chi) as usize
}

/// Orientable iff the flag graph (corner, band and dart-side involutions)
/// is bipartite.
pub fn flag_orientable(g: &RibbonGraph) -> bool {
    let f = flags(g);
    let n = f.corner.len();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in [f.corner[x], f.band[x], x ^ 1] {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    stack.push(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
    }
    true
}

fn vertex_set(g: &RibbonGraph, edges: &EdgeSubset) -> HashSet<usize> {
    edges
        .iter()
        .flat_map(|e| {
            let (u, w) = g.endpoints(e);
            [u, w]
        })
        .collect()
}

/// Whether `H_1 ⊕ H_2 ⊕ ... ⊕ H_l` (in this order) is a sequence of 1-sums:
/// each summand meets the union of the previous ones in exactly one vertex.
/// Returns the vertices where the sums occur.
pub fn sum_sequence_vertices(g: &RibbonGraph, summands: &[EdgeSubset]) -> Option<Vec<usize>> {
    let mut covered: HashSet<usize> = HashSet::new();
    let mut at = Vec::new();
    for (k, h) in summands.iter().enumerate() {
        let vs = vertex_set(g, h);
        if k > 0 {
            let shared: Vec<usize> = vs.intersection(&covered).copied().collect();
            if shared.len() != 1 {
                return None;
            }
            at.push(shared[0]);
        }
        covered.extend(vs);
    }
    Some(at)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceOutcome {
    /// `A` is `∅` or `E(G)`.
    Trivial,
    /// Components of `G|_A` and `G|_{A^c}` in an order forming a sequence of
    /// 1-sums.
    Ordering(Vec<EdgeSubset>),
    None,
}

/// Edge-bearing components of the spanning subgraph on `a`, by search.
fn components_of(g: &RibbonGraph, a: &EdgeSubset) -> Vec<EdgeSubset> {
    let mut left = a.clone();
    let mut out = Vec::new();
    loop {
        let Some(e0) = left.iter().next() else { break };
        let mut comp = EdgeSubset::from_indices(a.universe(), [e0]);
        let mut verts = vertex_set(g, &comp);
        loop {
            let grow: Vec<usize> = left
                .iter()
                .filter(|&e| !comp.contains(e))
                .filter(|&e| {
                    let (u, w) = g.endpoints(e);
                    verts.contains(&u) || verts.contains(&w)
                })
                .collect();
            if grow.is_empty() {
                break;
            }
            for e in grow {
                comp.insert(e);
                let (u, w) = g.endpoints(e);
                verts.insert(u);
                verts.insert(w);
            }
        }
        left = left.difference(&comp);
        out.push(comp);
    }
    out
}

/// The components taking part in a biseparation by `a`: those of `G|_A`,
/// then those of `G|_{A^c}`.
pub fn summand_components(g: &RibbonGraph, a: &EdgeSubset) -> Vec<EdgeSubset> {
    let mut comps = components_of(g, a);
    comps.extend(components_of(g, &a.complement()));
    comps
}

/// The literal reading of a biseparation: search over orderings of the
/// components of `G|_A` and `G|_{A^c}` for a sequence of 1-sums, optionally
/// with a prescribed first summand.
pub fn biseparation_sequence_oracle(g: &RibbonGraph, a: &EdgeSubset, first: Option<usize>) -> SequenceOutcome {
    if a.is_trivial() {
        return SequenceOutcome::Trivial;
    }
    let comps = summand_components(g, a);
    let l = comps.len();
    assert!(l <= 16, "sequence oracle limited to 16 components");
    let verts: Vec<HashSet<usize>> = comps.iter().map(|c| vertex_set(g, c)).collect();
    // Whether the union of the components in `mask` is a valid prefix that
    // extends to a full sequence; prefixes are determined by their sets.
    fn extend(
        mask: u32,
        order: &mut Vec<usize>,
        verts: &[HashSet<usize>],
        dead: &mut HashSet<u32>,
    ) -> bool {
        let l = verts.len();
        if mask.count_ones() as usize == l {
            return true;
        }
        if dead.contains(&mask) {
            return false;
        }
        let covered: HashSet<usize> = (0..l).filter(|i| mask >> i & 1 == 1).flat_map(|i| verts[i].iter().copied()).collect();
        for i in 0..l {
            if mask >> i & 1 == 1 || verts[i].intersection(&covered).count() != 1 {
                continue;
            }
            order.push(i);
            if extend(mask | 1 << i, order, verts, dead) {
                return true;
            }
            order.pop();
        }
        dead.insert(mask);
        false
    }
    let mut dead = HashSet::new();
    let starts: Vec<usize> = match first {
        Some(i) => vec![i],
        None => (0..l).collect(),
    };
    for s in starts {
        let mut order = vec![s];
        if extend(1 << s, &mut order, &verts, &mut dead) {
            return SequenceOutcome::Ordering(order.into_iter().map(|i| comps[i].clone()).collect());
        }
    }
    SequenceOutcome::None
}

/// Every `A` expressible as a union of summands of some iterated join
/// decomposition of `G`, found by trying every split of every connected
/// edge set. Splits are recognized directly: two connected edge sets meeting
/// in a single vertex, one of them contiguous in the rotation there.
pub fn join_biseparation_oracle(g: &RibbonGraph) -> Vec<EdgeSubset> {
    let e = g.num_edges();
    assert!(e <= 20, "join oracle limited to 20 edges");
    if e == 0 {
        return vec![EdgeSubset::empty(0)];
    }
    let mut memo: HashMap<u64, Vec<u64>> = HashMap::new();
    let full = (1u64 << e) - 1;
    let mut out: Vec<EdgeSubset> = unions(g, full, &mut memo)
        .into_iter()
        .map(|m| EdgeSubset::from_mask(e, m))
        .collect();
    out.sort();
    out
}

fn mask_vertices(g: &RibbonGraph, mask: u64) -> HashSet<usize> {
    (0..g.num_edges())
        .filter(|&i| mask >> i & 1 == 1)
        .flat_map(|i| {
            let (u, w) = g.endpoints(i);
            [u, w]
        })
        .collect()
}

fn mask_connected(g: &RibbonGraph, mask: u64) -> bool {
    let a = EdgeSubset::from_mask(g.num_edges(), mask);
    components_of(g, &a).len() == 1
}

fn contiguous_at(g: &RibbonGraph, v: usize, whole: u64, part: u64) -> bool {
    let marks: Vec<bool> = g
        .rotation(v)
        .iter()
        .filter(|end| whole >> end.edge & 1 == 1)
        .map(|end| part >> end.edge & 1 == 1)
        .collect();
    let changes = (0..marks.len()).filter(|&i| marks[i] != marks[(i + 1) % marks.len()]).count();
    changes <= 2
}

fn unions(g: &RibbonGraph, s: u64, memo: &mut HashMap<u64, Vec<u64>>) -> Vec<u64> {
    if let Some(r) = memo.get(&s) {
        return r.clone();
    }
    let mut found: HashSet<u64> = HashSet::from([0, s]);
    // Each split is visited twice (as s1 and as s2), which is harmless.
    let mut s1 = (s - 1) & s;
    while s1 != 0 {
        let s2 = s & !s1;
        if mask_connected(g, s1) && mask_connected(g, s2) {
            let shared: Vec<usize> = mask_vertices(g, s1).intersection(&mask_vertices(g, s2)).copied().collect();
            if shared.len() == 1 && contiguous_at(g, shared[0], s, s1) {
                let left = unions(g, s1, memo);
                let right = unions(g, s2, memo);
                for &x in &left {
                    for &y in &right {
                        found.insert(x | y);
                    }
                }
            }
        }
        s1 = (s1 - 1) & s;
    }
    let mut r: Vec<u64> = found.into_iter().collect();
    r.sort_unstable();
    memo.insert(s, r.clone());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphSpec, Sign::*};

    fn bouquet(rotation: &[&str], signs: &[(&str, crate::graph::Sign)]) -> RibbonGraph {
        let mut s = GraphSpec::new();
        for (l, sign) in signs {
            s = s.edge(l, *sign);
        }
        s.vertex("v", rotation).build().unwrap()
    }

    #[test]
    fn flag_genus_of_loops_and_bouquets() {
        assert_eq!(flag_euler_genus(&bouquet(&["a.1", "a.2"], &[("a", Plus)])), 0);
        assert_eq!(flag_euler_genus(&bouquet(&["a.1", "a.2"], &[("a", Minus)])), 1);
        let abab = ["a.1", "b.1", "a.2", "b.2"];
        assert_eq!(flag_euler_genus(&bouquet(&abab, &[("a", Plus), ("b", Plus)])), 2);
        assert_eq!(flag_euler_genus(&bouquet(&abab, &[("a", Minus), ("b", Minus)])), 1);
        assert!(!flag_orientable(&bouquet(&abab, &[("a", Minus), ("b", Minus)])));
        assert!(flag_orientable(&bouquet(&abab, &[("a", Plus), ("b", Plus)])));
    }

    #[test]
    fn sequence_oracle_on_small_cases() {
        let t1 = bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Plus), ("b", Plus)]);
        let a = t1.subset(&["a"]).unwrap();
        assert!(matches!(biseparation_sequence_oracle(&t1, &a, None), SequenceOutcome::Ordering(_)));
        let c = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Plus)
            .vertex("u", &["a.1", "b.1"])
            .vertex("w", &["a.2", "b.2"])
            .build()
            .unwrap();
        let a = c.subset(&["a"]).unwrap();
        assert_eq!(biseparation_sequence_oracle(&c, &a, None), SequenceOutcome::None);
        assert_eq!(biseparation_sequence_oracle(&c, &c.no_edges(), None), SequenceOutcome::Trivial);
    }

    #[test]
    fn join_oracle_on_bouquets() {
        let nested = bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Plus), ("b", Plus)]);
        assert_eq!(join_biseparation_oracle(&nested).len(), 4);
        let t1 = bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Plus), ("b", Plus)]);
        assert_eq!(join_biseparation_oracle(&t1), vec![t1.no_edges(), t1.all_edges()]);
    }
}
