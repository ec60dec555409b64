//! Small named graphs used throughout the checks.

use crate::graph::{GraphSpec, RibbonGraph, Sign};

fn bouquet(rotation: &[&str], signs: &[(&str, Sign)]) -> RibbonGraph {
    let mut s = GraphSpec::new();
    for (l, sign) in signs {
        s = s.edge(l, *sign);
    }
    s.vertex("v", rotation).build().expect("fixture is valid")
}

fn two_cycle(b: Sign) -> RibbonGraph {
    GraphSpec::new()
        .edge("a", Sign::Plus)
        .edge("b", b)
        .vertex("u", &["a.1", "b.1"])
        .vertex("w", &["a.2", "b.2"])
        .build()
        .expect("fixture is valid")
}

/// One vertex, one untwisted loop.
pub fn plane_loop() -> RibbonGraph {
    bouquet(&["e.1", "e.2"], &[("e", Sign::Plus)])
}

/// One vertex, one twisted loop: the Möbius band.
pub fn mobius() -> RibbonGraph {
    bouquet(&["e.1", "e.2"], &[("e", Sign::Minus)])
}

/// The plane 2-cycle.
pub fn c() -> RibbonGraph {
    two_cycle(Sign::Plus)
}

/// The 2-cycle with one twisted edge, on the projective plane.
pub fn d() -> RibbonGraph {
    two_cycle(Sign::Minus)
}

/// Two interlaced untwisted loops, on the torus.
pub fn t1() -> RibbonGraph {
    bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Sign::Plus), ("b", Sign::Plus)])
}

/// Two interlaced twisted loops, on the projective plane.
pub fn n1() -> RibbonGraph {
    bouquet(&["a.1", "b.1", "a.2", "b.2"], &[("a", Sign::Minus), ("b", Sign::Minus)])
}

/// Three untwisted loops read `a b a c b c`: `{a}` is a biseparation with
/// `γ(G) = γ(G^{a}) = 2` that is not a join-biseparation.
pub fn g2() -> RibbonGraph {
    bouquet(
        &["a.1", "b.1", "a.2", "c.1", "b.2", "c.2"],
        &[("a", Sign::Plus), ("b", Sign::Plus), ("c", Sign::Plus)],
    )
}

/// [`g2`] with `b` twisted, on the Klein bottle, with the same property.
pub fn g2_twisted() -> RibbonGraph {
    bouquet(
        &["a.1", "b.1", "a.2", "c.1", "b.2", "c.2"],
        &[("a", Sign::Plus), ("b", Sign::Minus), ("c", Sign::Plus)],
    )
}

/// Three untwisted loops read `a b c a c b`.
pub fn abcacb() -> RibbonGraph {
    bouquet(
        &["a.1", "b.1", "c.1", "a.2", "c.2", "b.2"],
        &[("a", Sign::Plus), ("b", Sign::Plus), ("c", Sign::Plus)],
    )
}

/// Two twisted loops side by side: `M ∨ M`.
pub fn mobius_join() -> RibbonGraph {
    bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Sign::Minus), ("b", Sign::Minus)])
}

/// Two untwisted loops side by side.
pub fn nested_bouquet() -> RibbonGraph {
    bouquet(&["a.1", "a.2", "b.1", "b.2"], &[("a", Sign::Plus), ("b", Sign::Plus)])
}

/// Every fixture with its name.
pub fn all() -> Vec<(&'static str, RibbonGraph)> {
    vec![
        ("loop", plane_loop()),
        ("M", mobius()),
        ("C", c()),
        ("D", d()),
        ("T1", t1()),
        ("N1", n1()),
        ("G2", g2()),
        ("G2-twisted", g2_twisted()),
        ("abcacb", abcacb()),
        ("MvM", mobius_join()),
        ("nested", nested_bouquet()),
    ]
}
