use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::corpus::{generate, CorpusParams, Mode};
use super::fixtures;
use super::oracles::{
    biseparation_sequence_oracle, flag_euler_genus, flag_face_count, flag_orientable, join_biseparation_oracle,
    sum_sequence_vertices, summand_components, SequenceOutcome,
};
use super::{Check, SuiteOptions, Tally};
use crate::canon::{canonical_form, is_equivalent, CanonicalCode};
use crate::decomposition::{
    classify_biseparation, classify_join_biseparation, enumerate_biseparations, is_biseparation,
    is_join_biseparation, join, join_summand_splits, n_sum, prime_factorization, prime_factorization_with,
    split_sides, toggle_orbit, toggles_related, BiseparationClass, ClassFilter, ComponentSide, Interleave,
    JoinClass, SumPairing,
};
use crate::duality::{geometric_dual, partial_dual, partial_dual_sequential, partial_dual_via_marks};
use crate::graph::RibbonGraph;
use crate::moves::{dual_join_summand_move, join_partial_dual_distributes, MoveClosure, MovePolicy};
use crate::subset::EdgeSubset;
use crate::topology::{
    boundary_count, euler_genus, face_count, is_connected, is_orientable, is_orientable_by_double_cover,
    surface_stats,
};

pub(crate) struct Context<'a> {
    pub layers: &'a [Vec<RibbonGraph>],
    pub opts: &'a SuiteOptions,
}

impl Context<'_> {
    fn upto(&self, max: usize) -> Vec<&RibbonGraph> {
        self.layers.iter().take(max + 1).flatten().collect()
    }
}

pub(crate) fn run(check: Check, ctx: &Context) -> Tally {
    let per_graph: fn(&RibbonGraph, &Context) -> Tally = match check {
        Check::GenusOracle => genus_oracle,
        Check::PartialDualIdentities => partial_dual_identities,
        Check::DualAgreement => dual_agreement,
        Check::GenusAdditivity => genus_additivity,
        Check::ComplementSymmetry => complement_symmetry,
        Check::SumEuler => return sum_euler(ctx),
        Check::Rerooting => rerooting,
        Check::SequenceOracle => sequence_oracle,
        Check::LowGenusDuals => low_genus_duals,
        Check::ToggleOrbits => toggle_orbits,
        Check::JoinBiseparations => join_biseparations,
        Check::JoinDistributivity => join_distributivity,
        Check::MoveCompleteness => move_completeness,
    };
    let bound = match check {
        Check::PartialDualIdentities => ctx.opts.pair_edges,
        _ => ctx.opts.max_edges,
    };
    let graphs = ctx.upto(bound);
    let tallies: Vec<Tally> = graphs.par_iter().map(|g| per_graph(g, ctx)).collect();
    let mut total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    total.metric("graphs", graphs.len() as u64);
    match check {
        Check::PartialDualIdentities => total = total.merge(random_pairs(ctx)),
        Check::JoinBiseparations => total = total.merge(join_counterexamples()),
        _ => {}
    }
    total
}

fn subsets(g: &RibbonGraph) -> impl Iterator<Item = EdgeSubset> + '_ {
    EdgeSubset::all(g.num_edges())
}

fn cyclic_labels(g: &RibbonGraph, v: usize) -> Vec<String> {
    g.rotation(v).iter().map(|e| g.label(e.edge).to_string()).collect()
}

/// Whether two cyclic sequences agree up to rotation and reversal.
fn same_cycle(a: &[String], b: &[String]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    let rev: Vec<&String> = b.iter().rev().collect();
    (0..n).any(|s| (0..n).all(|i| a[i] == b[(s + i) % n]) || (0..n).all(|i| *a[i] == *rev[(s + i) % n]))
}

/// Whether some vertex of `h` carries the same labels around it as vertex `v`
/// of `g`.
fn vertex_survives(g: &RibbonGraph, v: usize, h: &RibbonGraph) -> bool {
    let want = cyclic_labels(g, v);
    (0..h.num_vertices()).any(|w| same_cycle(&want, &cyclic_labels(h, w)))
}

fn genus_oracle(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    let s = surface_stats(g);
    t.check(s.euler_genus == flag_euler_genus(g), g, None, || {
        format!("trace genus {} vs flag genus {}", s.euler_genus, flag_euler_genus(g))
    });
    t.check(s.f == flag_face_count(g), g, None, || "face counts differ".into());
    let code = canonical_form(g);
    let decoded = code.to_graph();
    t.check(
        euler_genus(&decoded) == s.euler_genus && is_orientable(&decoded) == s.orientable,
        g,
        None,
        || "decoded canonical form has different genus".into(),
    );
    t.check(canonical_form(&decoded) == code, g, None, || "decoding changes the code".into());
    let by_cover = is_orientable_by_double_cover(g);
    let by_flags = flag_orientable(g);
    t.check(s.orientable == by_cover && by_cover == by_flags, g, None, || {
        format!("orientability: propagation {}, cover {by_cover}, flags {by_flags}", s.orientable)
    });
    t.check(!s.orientable || s.euler_genus.is_multiple_of(2), g, None, || "orientable with odd genus".into());
    let dual = geometric_dual(g);
    t.check(
        euler_genus(&dual) == s.euler_genus && dual.num_vertices() == s.f && face_count(&dual) == s.v,
        g,
        None,
        || "geometric dual changes genus or swaps counts wrongly".into(),
    );
    t.check(is_equivalent(&geometric_dual(&dual), g), g, None, || "G** differs from G".into());
    for h in [fixtures::mobius(), fixtures::d()] {
        let h = h.relabel_edges(|l| format!("x{l}")).unwrap();
        let u = g.disjoint_union(&h).unwrap();
        t.check(euler_genus(&u) == s.euler_genus + euler_genus(&h), g, None, || {
            "genus not additive over disjoint union".into()
        });
    }
    t
}

fn partial_dual_identities(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    let duals: Vec<RibbonGraph> = subsets(g).map(|a| partial_dual(g, &a)).collect();
    let codes: Vec<CanonicalCode> = duals.iter().map(canonical_form).collect();
    let e = g.num_edges();
    let full = (1usize << e) - 1;
    t.check(codes[0] == canonical_form(g), g, None, || "G^∅ differs from G".into());
    t.check(codes[full] == canonical_form(&geometric_dual(g)), g, None, || "G^E differs from G*".into());
    let orientable = is_orientable(g);
    for (m, a) in subsets(g).enumerate() {
        let h = &duals[m];
        for (n, b) in subsets(g).enumerate() {
            t.check(canonical_form(&partial_dual(h, &b)) == codes[m ^ n], g, Some(&a), || {
                format!("(G^A)^B differs from G^(AΔB) for B = {}", g.format_subset(&b))
            });
        }
        t.check(is_orientable(h) == orientable, g, Some(&a), || "orientability changed".into());
        t.check(
            h.edges().iter().map(|x| &x.label).eq(g.edges().iter().map(|x| &x.label)),
            g,
            Some(&a),
            || "edge labels not preserved".into(),
        );
        t.check(
            h.num_vertices() == boundary_count(g, &a) && face_count(h) == boundary_count(g, &a.complement()),
            g,
            Some(&a),
            || "vertex or face count differs from boundary counts".into(),
        );
        for v in 0..g.num_vertices() {
            if g.rotation(v).iter().all(|end| !a.contains(end.edge)) {
                t.check(vertex_survives(g, v, h), g, Some(&a), || {
                    format!("vertex {} untouched by A is lost", g.vertices()[v].name)
                });
            }
        }
    }
    let other = fixtures::d().relabel_edges(|l| format!("x{l}")).unwrap();
    let u = g.disjoint_union(&other).unwrap();
    for (m, a) in EdgeSubset::all(u.num_edges()).enumerate() {
        let own = m & full;
        let rest = EdgeSubset::from_mask(other.num_edges(), (m >> e) as u64);
        let split = duals[own].disjoint_union(&partial_dual(&other, &rest)).unwrap();
        t.check(is_equivalent(&partial_dual(&u, &a), &split), &u, Some(&a), || {
            "partial dual does not act componentwise".into()
        });
    }
    t
}

fn random_pairs(ctx: &Context) -> Tally {
    let mut t = Tally::default();
    if ctx.opts.random_samples == 0 {
        return t;
    }
    let lo = ctx.opts.pair_edges + 1;
    let corpus = generate(CorpusParams {
        min_edges: lo,
        max_edges: lo + 1,
        mode: Mode::Random {
            seed: ctx.opts.seed,
            count: ctx.opts.random_samples,
        },
        dedup: false,
    })
    .expect("random generation has no bound");
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed ^ 0x5eed);
    for g in &corpus.graphs {
        let e = g.num_edges();
        for _ in 0..8 {
            let a = EdgeSubset::from_mask(e, rng.gen_range(0..1u64 << e));
            let b = EdgeSubset::from_mask(e, rng.gen_range(0..1u64 << e));
            let lhs = partial_dual(&partial_dual(g, &a), &b);
            let rhs = partial_dual(g, &a.symmetric_difference(&b));
            t.check(is_equivalent(&lhs, &rhs), g, Some(&a), || {
                format!("(G^A)^B differs from G^(AΔB) for B = {}", g.format_subset(&b))
            });
            t.check(is_orientable(&rhs) == is_orientable(g), g, Some(&a), || "orientability changed".into());
        }
    }
    t.metric("random_graphs", corpus.graphs.len() as u64);
    t
}

fn dual_agreement(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    for a in subsets(g) {
        let reference = canonical_form(&partial_dual(g, &a));
        let forward: Vec<usize> = a.iter().collect();
        let backward: Vec<usize> = forward.iter().rev().copied().collect();
        for (how, h) in [
            ("one edge at a time", partial_dual_sequential(g, &forward)),
            ("one edge at a time, reversed", partial_dual_sequential(g, &backward)),
            ("through marks", partial_dual_via_marks(g, &a)),
        ] {
            t.check(canonical_form(&h) == reference, g, Some(&a), || format!("{how} differs from the trace"));
        }
    }
    t
}

fn genus_additivity(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    for a in subsets(g) {
        let dual = partial_dual(g, &a);
        let inside = g.induced_subgraph(&a);
        let outside = g.delete_edges(&a);
        let additive = euler_genus(&dual) == euler_genus(&inside) + euler_genus(&outside);
        let cert = is_biseparation(g, &a).expect("corpus graphs are connected");
        t.check(cert.is_some() == additive, g, Some(&a), || {
            format!(
                "biseparation {} but γ(G^A) = {}, γ(G|A) = {}, γ(G-A) = {}",
                cert.is_some(),
                euler_genus(&dual),
                euler_genus(&inside),
                euler_genus(&outside)
            )
        });
        if cert.is_some() {
            t.metric("biseparations", 1);
            t.check(
                is_orientable(&dual) == (is_orientable(&inside) && is_orientable(&outside)),
                g,
                Some(&a),
                || "orientability of G^A not determined by the sides".into(),
            );
        }
    }
    t
}

fn complement_symmetry(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    for a in subsets(g) {
        let c1 = is_biseparation(g, &a).unwrap();
        let c2 = is_biseparation(g, &a.complement()).unwrap();
        t.check(c1.is_some() == c2.is_some(), g, Some(&a), || "A and A^c disagree".into());
        if let (Some(c1), Some(c2)) = (c1, c2) {
            let edges = |cs: &[crate::decomposition::ComponentInfo]| {
                let mut v: Vec<EdgeSubset> = cs.iter().map(|c| c.edges.clone()).collect();
                v.sort();
                v
            };
            let tree_vertices = |c: &crate::decomposition::BiseparationCertificate| {
                let mut v: Vec<usize> = c.tree.iter().map(|x| x.vertex).collect();
                v.sort_unstable();
                v
            };
            t.check(
                edges(&c1.inside) == edges(&c2.outside)
                    && edges(&c1.outside) == edges(&c2.inside)
                    && tree_vertices(&c1) == tree_vertices(&c2)
                    && c1.class == c2.class,
                g,
                Some(&a),
                || "certificates of A and A^c differ".into(),
            );
        }
    }
    t
}

/// All ways to choose `n` distinct vertices of each side, paired in order.
fn vertex_pairings(np: usize, nq: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        np: usize,
        nq: usize,
        n: usize,
        next_p: usize,
        used_q: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for p in next_p..np {
            for q in 0..nq {
                if used_q[q] {
                    continue;
                }
                used_q[q] = true;
                cur.push((p, q));
                rec(np, nq, n, p + 1, used_q, cur, out);
                cur.pop();
                used_q[q] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(np, nq, n, 0, &mut vec![false; nq], &mut Vec::new(), &mut out);
    out
}

fn sum_euler(ctx: &Context) -> Tally {
    let summands: Vec<&RibbonGraph> =
        ctx.upto(ctx.opts.summand_edges).into_iter().filter(|g| g.num_edges() > 0).collect();
    let pairs: Vec<(&RibbonGraph, RibbonGraph)> = summands
        .iter()
        .flat_map(|p| summands.iter().map(move |q| (*p, q.relabel_edges(|l| format!("q{l}")).unwrap())))
        .collect();
    let tallies: Vec<Tally> = pairs
        .par_iter()
        .map(|(p, q)| {
            let mut t = Tally::default();
            let (sp, sq) = (surface_stats(p), surface_stats(q));
            for n in 1..=3 {
                for pairing in vertex_pairings(p.num_vertices(), q.num_vertices(), n) {
                    let patterns: Vec<Vec<Interleave>> = pairing
                        .iter()
                        .map(|&(u, w)| Interleave::all(p.degree(u), q.degree(w)))
                        .collect();
                    let mut choice = vec![0usize; n];
                    loop {
                        let spec: Vec<SumPairing> = pairing
                            .iter()
                            .zip(&choice)
                            .enumerate()
                            .map(|(i, (&(u, w), &c))| SumPairing {
                                p_vertex: u,
                                q_vertex: w,
                                pattern: patterns[i][c].clone(),
                            })
                            .collect();
                        let s = n_sum(p, q, &spec).expect("valid sum");
                        let np = p.num_edges();
                        let eq = EdgeSubset::from_indices(s.num_edges(), np..s.num_edges());
                        let by_q = partial_dual(&s, &eq);
                        let by_p = partial_dual(&s, &eq.complement());
                        for (which, a, d) in [("E(Q)", &eq, &by_q), ("E(P)", &eq.complement(), &by_p)] {
                            let chi = d.num_vertices() as i64 - d.num_edges() as i64 + face_count(d) as i64;
                            let want = sp.euler_characteristic + sq.euler_characteristic - 2 * n as i64;
                            t.check(chi == want, &s, Some(a), || {
                                format!("χ of the dual by {which} is {chi}, expected {want}")
                            });
                            let k = (2 - chi) as usize;
                            let base = sp.euler_genus + sq.euler_genus;
                            let ok = if n == 1 { k == base } else { k > base };
                            t.check(ok, &s, Some(a), || {
                                format!("{n}-sum: γ of the dual by {which} is {k}, summands give {base}")
                            });
                        }
                        let paired: HashSet<usize> = pairing.iter().map(|x| x.0).collect();
                        for v in (0..p.num_vertices()).filter(|v| !paired.contains(v)) {
                            t.check(vertex_survives(&s, v, &by_q), &s, Some(&eq), || {
                                "unpaired vertex of P lost in the dual by E(Q)".into()
                            });
                        }
                        t.metric(&format!("sums_{n}"), 1);
                        // Advance the mixed-radix counter over patterns.
                        let mut k = 0;
                        while k < n {
                            choice[k] += 1;
                            if choice[k] < patterns[k].len() {
                                break;
                            }
                            choice[k] = 0;
                            k += 1;
                        }
                        if k == n {
                            break;
                        }
                    }
                }
            }
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::default(), Tally::merge)
}

fn rerooting(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    for a in subsets(g).filter(|a| !a.is_trivial()) {
        let Some(cert) = is_biseparation(g, &a).unwrap() else {
            continue;
        };
        let comps = summand_components(g, &a);
        let roots = (0..cert.inside.len())
            .map(|i| (ComponentSide::Inside, i))
            .chain((0..cert.outside.len()).map(|i| (ComponentSide::Outside, i)));
        for root in roots {
            let order: Vec<EdgeSubset> = cert
                .ordering_from(root)
                .into_iter()
                .map(|(side, i)| cert.component(side, i).edges.clone())
                .collect();
            t.check(
                order.len() == comps.len() && sum_sequence_vertices(g, &order).is_some(),
                g,
                Some(&a),
                || "ordering from the tree is not a 1-sum sequence".into(),
            );
            let first = comps.iter().position(|c| *c == cert.component(root.0, root.1).edges).unwrap();
            t.check(
                matches!(biseparation_sequence_oracle(g, &a, Some(first)), SequenceOutcome::Ordering(_)),
                g,
                Some(&a),
                || "no sequence starts with this summand".into(),
            );
        }
    }
    t
}

fn sequence_oracle(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    for a in subsets(g) {
        if summand_components(g, &a).len() > 8 {
            t.metric("skipped", 1);
            continue;
        }
        let tree = is_biseparation(g, &a).unwrap().is_some();
        let oracle = biseparation_sequence_oracle(g, &a, None);
        t.check(tree == (oracle != SequenceOutcome::None), g, Some(&a), || {
            format!("incidence tree says {tree}, sequence search says {oracle:?}")
        });
        if let SequenceOutcome::Ordering(order) = oracle {
            let at = sum_sequence_vertices(g, &order).unwrap();
            let distinct: HashSet<usize> = at.iter().copied().collect();
            t.check(distinct.len() == at.len(), g, Some(&a), || "two 1-sums share a vertex".into());
        }
    }
    t
}

fn low_genus_duals(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    let mut plane = Vec::new();
    let mut rp2 = Vec::new();
    for a in subsets(g) {
        let k = euler_genus(&partial_dual(g, &a));
        let class = classify_biseparation(g, &a);
        t.check((k == 0) == (class == BiseparationClass::Plane), g, Some(&a), || {
            format!("γ(G^A) = {k} but class {class}")
        });
        t.check((k == 1) == (class == BiseparationClass::ProjectivePlane), g, Some(&a), || {
            format!("γ(G^A) = {k} but class {class}")
        });
        match class {
            BiseparationClass::Plane => plane.push(a),
            BiseparationClass::ProjectivePlane => rp2.push(a),
            _ => {}
        }
    }
    for (filter, want) in [(ClassFilter::Plane, plane), (ClassFilter::ProjectivePlane, rp2)] {
        let got = enumerate_biseparations(g, filter).unwrap();
        let closed = got.iter().all(|a| got.contains(&a.complement()));
        t.check(got == want && closed, g, None, || format!("{filter:?} enumeration inconsistent"));
    }
    t
}

fn toggle_orbits(g: &RibbonGraph, ctx: &Context) -> Tally {
    let mut t = Tally::default();
    let tree = prime_factorization(g).unwrap();
    let prime = tree.factors.len() == 1;
    if prime {
        t.metric("prime_graphs", 1);
    }
    for filter in [ClassFilter::Plane, ClassFilter::ProjectivePlane] {
        let found = enumerate_biseparations(g, filter).unwrap();
        if let (Some(first), Some(last)) = (found.first(), found.last()) {
            t.check(toggle_orbit(&tree, first) == found, g, Some(first), || {
                format!("{filter:?} biseparations are not one toggle orbit")
            });
            t.check(toggles_related(g, first, last).unwrap().is_some(), g, Some(last), || {
                "no toggle sequence between the first and last".into()
            });
        }
        if prime && g.num_edges() > 0 {
            let ok = found.is_empty() || (found.len() == 2 && found[1] == found[0].complement());
            t.check(ok, g, None, || format!("prime graph has {} {filter:?} biseparations", found.len()));
        }
    }
    let sorted = tree.sorted_factors();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed);
    for attempt in 0..3 {
        let mut pick = |n: usize| match attempt {
            0 => n - 1,
            1 => n / 2,
            _ => rng.gen_range(0..n),
        };
        let other = prime_factorization_with(g, &mut pick).unwrap();
        t.check(other.sorted_factors() == sorted, g, None, || "factors depend on split order".into());
        t.check(is_equivalent(&other.reassemble(g), g), g, None, || "reassembly differs from G".into());
    }
    for f in &sorted {
        t.check(join_summand_splits(&g.induced_subgraph(f)).is_empty(), g, Some(f), || {
            "factor is not prime".into()
        });
    }
    t.metric("max_factors", sorted.len() as u64);
    t
}

fn join_biseparations(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    let oracle = join_biseparation_oracle(g);
    let fast: Vec<EdgeSubset> = subsets(g).filter(|a| is_join_biseparation(g, a).unwrap()).collect();
    t.check(oracle == fast, g, None, || {
        format!("oracle finds {} join-biseparations, factorization {}", oracle.len(), fast.len())
    });
    let k = euler_genus(g);
    for a in subsets(g) {
        let jc = classify_join_biseparation(g, &a).unwrap();
        let bc = classify_biseparation(g, &a);
        let kd = euler_genus(&partial_dual(g, &a));
        let implied = match jc {
            JoinClass::NotJoin => true,
            JoinClass::Plane => bc == BiseparationClass::Plane,
            JoinClass::ProjectivePlane => bc == BiseparationClass::ProjectivePlane,
            JoinClass::Other => bc != BiseparationClass::NotBiseparation,
        };
        t.check(implied, g, Some(&a), || format!("join class {jc} but biseparation class {bc}"));
        if k == 0 && bc == BiseparationClass::Plane {
            t.check(jc == JoinClass::Plane, g, Some(&a), || "plane biseparation of a plane graph is not plane-join".into());
        }
        if k == 1 && bc == BiseparationClass::ProjectivePlane {
            t.check(jc == JoinClass::ProjectivePlane, g, Some(&a), || {
                "RP² biseparation of an RP² graph is not RP²-join".into()
            });
        }
        t.check((k == 0 && kd == 0) == (jc == JoinClass::Plane), g, Some(&a), || {
            format!("γ(G) = {k}, γ(G^A) = {kd}, join class {jc}")
        });
        t.check((k == 1 && kd == 1) == (jc == JoinClass::ProjectivePlane), g, Some(&a), || {
            format!("γ(G) = {k}, γ(G^A) = {kd}, join class {jc}")
        });
    }
    t
}

/// Graphs of higher genus where equal genus of a partial dual does not come
/// from a join-biseparation, and a biseparation of an RP² graph that is not
/// an RP²-biseparation.
fn join_counterexamples() -> Tally {
    let mut t = Tally::default();
    for g in [fixtures::g2(), fixtures::g2_twisted()] {
        let a = g.subset(&["a"]).unwrap();
        let k = euler_genus(&g);
        let kd = euler_genus(&partial_dual(&g, &a));
        t.check(k >= 2 && k == kd, &g, Some(&a), || format!("γ(G) = {k}, γ(G^A) = {kd}"));
        t.check(is_biseparation(&g, &a).unwrap().is_some(), &g, Some(&a), || "not a biseparation".into());
        t.check(!is_join_biseparation(&g, &a).unwrap(), &g, Some(&a), || "unexpectedly a join-biseparation".into());
    }
    let n1 = fixtures::n1();
    let a = n1.subset(&["a"]).unwrap();
    t.check(
        euler_genus(&n1) == 1 && classify_biseparation(&n1, &a) == BiseparationClass::Other(2),
        &n1,
        Some(&a),
        || "expected a biseparation of class other(2)".into(),
    );
    t
}

fn join_distributivity(g: &RibbonGraph, _: &Context) -> Tally {
    let mut t = Tally::default();
    for s in split_sides(g) {
        let q_edges = s.edges.clone();
        let p_edges = q_edges.complement();
        let rot = g.rotation(s.vertex);
        let q_first = rot[s.positions[0]];
        let p_first = rot[(s.positions[s.positions.len() - 1] + 1) % rot.len()];
        let name = &g.vertices()[s.vertex].name;
        // Summands with the join corner at the start of their rotation.
        let summand = |edges: &EdgeSubset, first: crate::graph::EdgeEnd| {
            let h = g.induced_subgraph(edges);
            let v = h.vertex_index(name).unwrap();
            let local = crate::graph::EdgeEnd::new(h.edge_index(g.label(first.edge)).unwrap(), first.end);
            (h.rotate_vertex(v, h.position_of(local)), v)
        };
        let (p, pv) = summand(&p_edges, p_first);
        let (q, qv) = summand(&q_edges, q_first);
        let joined = join(&p, pv, &q, qv).unwrap();
        t.check(is_equivalent(&joined, g), g, Some(&q_edges), || "summands do not rejoin to G".into());
        let order: Vec<usize> = p_edges.iter().chain(q_edges.iter()).collect();
        for a in subsets(g) {
            let mapped = EdgeSubset::from_indices(a.universe(), (0..order.len()).filter(|&i| a.contains(order[i])));
            t.check(join_partial_dual_distributes(&p, pv, &q, qv, &mapped).unwrap(), g, Some(&a), || {
                format!("partial dual does not distribute over the join at {}", g.format_subset(&q_edges))
            });
        }
        let moved = dual_join_summand_move(g, &q_edges).unwrap();
        t.check(
            is_equivalent(&moved, &partial_dual(g, &q_edges))
                && euler_genus(&moved) == euler_genus(g)
                && is_orientable(&moved) == is_orientable(g),
            g,
            Some(&q_edges),
            || "dualling the join-summand differs from the partial dual".into(),
        );
        t.metric("splits", 1);
    }
    t
}

fn move_completeness(g: &RibbonGraph, ctx: &Context) -> Tally {
    let mut t = Tally::default();
    let k = euler_genus(g);
    let orientable = is_orientable(g);
    let codes: Vec<CanonicalCode> = subsets(g).map(|a| canonical_form(&partial_dual(g, &a))).collect();
    let known: HashSet<&CanonicalCode> = codes.iter().collect();
    let closure = MoveClosure::new(g, ctx.opts.max_depth, MovePolicy::AnySummand).unwrap();
    for c in closure.codes() {
        let h = c.to_graph();
        t.check(
            known.contains(c) && euler_genus(&h) == k && is_orientable(&h) == orientable,
            g,
            None,
            || format!("move reached {c}, which is not a partial dual of the same genus"),
        );
    }
    let tree = prime_factorization(g).unwrap();
    for f in &tree.factors {
        let m = f.iter().map(|e| 1usize << e).sum::<usize>();
        t.check(closure.depth_of(&codes[m]).is_some(), g, Some(f), || {
            "dual of a prime factor not reached by moves".into()
        });
    }
    if k <= 1 {
        let single = MoveClosure::new(g, ctx.opts.max_depth, MovePolicy::SinglePrime).unwrap();
        for (m, a) in subsets(g).enumerate() {
            if euler_genus(&codes[m].to_graph()) != k {
                continue;
            }
            let depth = closure.depth_of(&codes[m]);
            t.check(depth.is_some(), g, Some(&a), || "partially dual pair not related by moves".into());
            if let Some(d) = depth {
                t.metric("max_depth", d as u64);
                t.metric("pairs", 1);
                let trace = closure.trace_to(&codes[m]).unwrap();
                let end = trace.replay(g).unwrap();
                t.check(canonical_form(&end) == codes[m], g, Some(&a), || "trace does not replay".into());
            }
            if single.depth_of(&codes[m]).is_some() {
                t.metric("pairs_single_prime", 1);
            }
        }
        if !closure.is_closed() {
            t.metric("bound_hit", 1);
        }
    }
    if !is_connected(g) {
        t.check(false, g, None, || "corpus graph is disconnected".into());
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairings_choose_distinct_vertices() {
        assert_eq!(vertex_pairings(2, 2, 1).len(), 4);
        assert_eq!(vertex_pairings(2, 2, 2), vec![vec![(0, 0), (1, 1)], vec![(0, 1), (1, 0)]]);
        assert!(vertex_pairings(1, 3, 2).is_empty());
    }

    #[test]
    fn cycles_match_up_to_rotation_and_reversal() {
        let s = |x: &str| x.chars().map(String::from).collect::<Vec<_>>();
        assert!(same_cycle(&s("abc"), &s("bca")));
        assert!(same_cycle(&s("abc"), &s("cba")));
        assert!(!same_cycle(&s("aabc"), &s("abac")));
        assert!(same_cycle(&[], &[]));
    }
}
