//! Toggling join-summands: `A ↦ A Δ E(H)`.

use crate::error::{Error, Result};
use crate::graph::RibbonGraph;
use crate::subset::EdgeSubset;

use super::joins::{prime_factorization, JoinTree};

/// `A Δ E(H)`, provided `H` is a union of prime factors of `G`.
pub fn toggle_join_summand(g: &RibbonGraph, a: &EdgeSubset, h: &EdgeSubset) -> Result<EdgeSubset> {
    g.check_universe(a);
    g.check_universe(h);
    let tree = prime_factorization(g)?;
    if !tree.is_union_of_factors(h) {
        return Err(Error::NotJoinSummand(g.format_subset(h)));
    }
    Ok(a.symmetric_difference(h))
}

/// A sequence of prime factors whose toggling turns `A` into `B`. Toggles
/// commute and each is an involution, so such a sequence exists exactly when
/// `A Δ B` is a union of prime factors, and then its factors form the
/// shortest one.
pub fn toggles_related(g: &RibbonGraph, a: &EdgeSubset, b: &EdgeSubset) -> Result<Option<Vec<EdgeSubset>>> {
    g.check_universe(a);
    g.check_universe(b);
    let tree = prime_factorization(g)?;
    Ok(toggle_path(&tree, a, b))
}

pub(crate) fn toggle_path(tree: &JoinTree, a: &EdgeSubset, b: &EdgeSubset) -> Option<Vec<EdgeSubset>> {
    let diff = a.symmetric_difference(b);
    tree.is_union_of_factors(&diff).then(|| {
        tree.sorted_factors()
            .into_iter()
            .filter(|f| f.is_subset(&diff))
            .collect()
    })
}

/// Every set reachable from `A` by toggling, in subset order.
pub fn toggle_orbit(tree: &JoinTree, a: &EdgeSubset) -> Vec<EdgeSubset> {
    let factors = tree.sorted_factors();
    let mut orbit = vec![a.clone()];
    for f in &factors {
        let toggled: Vec<EdgeSubset> = orbit.iter().map(|x| x.symmetric_difference(f)).collect();
        orbit.extend(toggled);
    }
    orbit.sort();
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphSpec, Sign::*};

    #[test]
    fn toggling_in_a_bouquet_of_two_mobius_loops() {
        let mm = GraphSpec::new()
            .edge("a", Minus)
            .edge("b", Minus)
            .vertex("v", &["a.1", "a.2", "b.1", "b.2"])
            .build()
            .unwrap();
        let a = mm.subset(&["a"]).unwrap();
        assert!(toggle_join_summand(&mm, &a, &a).unwrap().is_empty());
        assert!(toggle_join_summand(&mm, &a, &mm.subset(&["b"]).unwrap()).unwrap().is_full());
        let tree = prime_factorization(&mm).unwrap();
        assert_eq!(toggle_orbit(&tree, &mm.no_edges()).len(), 4);
    }

    #[test]
    fn prime_graph_only_toggles_everything() {
        let t1 = GraphSpec::new()
            .edge("a", Plus)
            .edge("b", Plus)
            .vertex("v", &["a.1", "b.1", "a.2", "b.2"])
            .build()
            .unwrap();
        let a = t1.subset(&["a"]).unwrap();
        let b = t1.subset(&["b"]).unwrap();
        assert_eq!(toggles_related(&t1, &a, &b).unwrap(), Some(vec![t1.all_edges()]));
        assert_eq!(toggles_related(&t1, &a, &a).unwrap(), Some(vec![]));
        assert_eq!(toggles_related(&t1, &a, &t1.no_edges()).unwrap(), None);
        assert!(matches!(toggle_join_summand(&t1, &a, &a), Err(Error::NotJoinSummand(_))));
    }
}
