//! Graph generators and an exhaustive checking harness for the structural
//! results the library implements.

mod checks;
pub mod corpus;
pub mod fixtures;
pub mod oracles;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::graph::RibbonGraph;
use crate::io::serialize_graph;
use crate::subset::EdgeSubset;

pub use corpus::{generate, Corpus, CorpusParams, Mode};
pub use oracles::{biseparation_sequence_oracle, join_biseparation_oracle, SequenceOutcome};

/// A family of properties checked over a corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Face counts, genus and orientability against flag-orbit oracles,
    /// canonical-form reconstruction, geometric duals, disjoint unions.
    GenusOracle,
    /// `G^∅ = G`, `G^E = G*`, `(G^A)^B = G^{AΔB}`, orientability, action on
    /// components, edge correspondence, vertex and face counts.
    PartialDualIdentities,
    /// Full-trace, one-edge and marked constructions of `G^A` agree.
    DualAgreement,
    /// `A` is a biseparation iff `γ(G^A) = γ(G|_A) + γ(G - A)`, with
    /// orientability of `G^A` read off the two sides.
    GenusAdditivity,
    /// `A` is a biseparation iff `A^c` is, with the same incidence tree.
    ComplementSymmetry,
    /// Euler characteristic and genus of partial duals of `n`-sums.
    SumEuler,
    /// Every summand of a biseparation can come first in a 1-sum sequence.
    Rerooting,
    /// The incidence-tree test agrees with a search for 1-sum sequences.
    SequenceOracle,
    /// `G^A` is plane (RP²) iff `A` defines a plane (RP²) biseparation.
    LowGenusDuals,
    /// Plane (RP²) biseparations form one orbit under toggling prime
    /// factors; prime graphs have none or two; factorization is
    /// independent of split order.
    ToggleOrbits,
    /// Join-biseparations against a brute-force decomposition search, their
    /// relation to biseparations, and the low-genus characterization of
    /// partially dual pairs.
    JoinBiseparations,
    /// Partial duals distribute over joins; dualling a join-summand matches
    /// the partial dual.
    JoinDistributivity,
    /// Partially dual plane (RP²) graphs are related by dualling
    /// join-summands, and moves never leave the partial-dual class.
    MoveCompleteness,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::GenusOracle,
        Check::PartialDualIdentities,
        Check::DualAgreement,
        Check::GenusAdditivity,
        Check::ComplementSymmetry,
        Check::SumEuler,
        Check::Rerooting,
        Check::SequenceOracle,
        Check::LowGenusDuals,
        Check::ToggleOrbits,
        Check::JoinBiseparations,
        Check::JoinDistributivity,
        Check::MoveCompleteness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::GenusOracle => "genus-oracle",
            Check::PartialDualIdentities => "partial-dual-identities",
            Check::DualAgreement => "dual-agreement",
            Check::GenusAdditivity => "genus-additivity",
            Check::ComplementSymmetry => "complement-symmetry",
            Check::SumEuler => "sum-euler",
            Check::Rerooting => "rerooting",
            Check::SequenceOracle => "sequence-oracle",
            Check::LowGenusDuals => "low-genus-duals",
            Check::ToggleOrbits => "toggle-orbits",
            Check::JoinBiseparations => "join-biseparations",
            Check::JoinDistributivity => "join-distributivity",
            Check::MoveCompleteness => "move-completeness",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Exhaustive corpus bound for single-subset properties.
    pub max_edges: usize,
    /// Exhaustive bound for properties quantified over pairs of subsets.
    pub pair_edges: usize,
    /// Bound on the edges of each summand of constructed sums.
    pub summand_edges: usize,
    /// Random graphs per edge count beyond `pair_edges` (two sizes).
    pub random_samples: usize,
    pub seed: u64,
    pub max_depth: usize,
    pub checks: Vec<Check>,
    /// Record wall-clock time per check.
    pub timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_edges: 5,
            pair_edges: 4,
            summand_edges: 3,
            random_samples: 50,
            seed: 0,
            max_depth: crate::moves::DEFAULT_MAX_DEPTH,
            checks: Check::ALL.to_vec(),
            timing: true,
        }
    }
}

/// A failing instance, replayable from its serialized graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
    pub detail: String,
}

/// Counterexamples kept per check.
const KEPT_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub instances: u64,
    pub failed: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Named quantities; keys starting with `max_` hold maxima, the rest
    /// totals.
    pub metrics: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_edges: usize,
    pub seed: u64,
    /// Connected graphs per edge count, up to equivalence.
    pub corpus_sizes: Vec<usize>,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn check(&self, c: Check) -> Option<&CheckReport> {
        self.checks.iter().find(|r| r.check == c)
    }
}

#[derive(Default)]
pub(crate) struct Tally {
    instances: u64,
    failed: u64,
    counterexamples: Vec<Counterexample>,
    metrics: BTreeMap<String, u64>,
}

impl Tally {
    pub(crate) fn check(
        &mut self,
        ok: bool,
        g: &RibbonGraph,
        subset: Option<&EdgeSubset>,
        detail: impl FnOnce() -> String,
    ) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample {
                    graph: serialize_graph(g, None),
                    subset: subset.map(|a| g.subset_labels(a).into_iter().map(str::to_string).collect()),
                    detail: detail(),
                });
            }
        }
    }

    pub(crate) fn metric(&mut self, key: &str, value: u64) {
        let slot = self.metrics.entry(key.to_string()).or_insert(0);
        if key.starts_with("max_") {
            *slot = (*slot).max(value);
        } else {
            *slot += value;
        }
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failed += other.failed;
        for c in other.counterexamples {
            if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
        for (k, v) in other.metrics {
            self.metric(&k, v);
        }
        self
    }

    fn into_report(self, check: Check, elapsed_ms: Option<u64>) -> CheckReport {
        CheckReport {
            check,
            instances: self.instances,
            failed: self.failed,
            counterexamples: self.counterexamples,
            metrics: self.metrics,
            elapsed_ms,
        }
    }
}

/// Runs the selected checks over the exhaustive corpus.
pub fn check_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let needed = opts.max_edges.max(opts.pair_edges).max(opts.summand_edges);
    if needed > corpus::EXHAUSTIVE_BOUND {
        return Err(crate::error::Error::EnumerationBound {
            edges: needed,
            bound: corpus::EXHAUSTIVE_BOUND,
        });
    }
    let layers = corpus::exhaustive_layers(needed);
    let ctx = checks::Context { layers: &layers, opts };
    let mut reports = Vec::new();
    for &c in &opts.checks {
        let start = Instant::now();
        let tally = checks::run(c, &ctx);
        let elapsed = opts.timing.then(|| start.elapsed().as_millis() as u64);
        reports.push(tally.into_report(c, elapsed));
    }
    Ok(VerificationReport {
        max_edges: opts.max_edges,
        seed: opts.seed,
        corpus_sizes: layers.iter().take(opts.max_edges + 1).map(Vec::len).collect(),
        checks: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_parse_back() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>(), Ok(c));
            assert_eq!(serde_json::to_value(c).unwrap(), c.name());
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let opts = SuiteOptions {
            max_edges: 3,
            pair_edges: 3,
            summand_edges: 2,
            random_samples: 5,
            timing: false,
            ..Default::default()
        };
        let report = check_suite(&opts).unwrap();
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.corpus_sizes, vec![1, 3, 11, 63]);
        assert!(report.checks.iter().all(|c| c.instances > 0));
        assert_eq!(check_suite(&opts).unwrap(), report);
    }

    #[test]
    fn bound_is_enforced() {
        let opts = SuiteOptions {
            max_edges: corpus::EXHAUSTIVE_BOUND + 1,
            ..Default::default()
        };
        assert!(matches!(check_suite(&opts), Err(crate::error::Error::EnumerationBound { .. })));
    }

    #[test]
    fn tally_keeps_maxima_and_totals() {
        let g = RibbonGraph::single_vertex();
        let mut a = Tally::default();
        a.metric("max_depth", 3);
        a.metric("pairs", 2);
        a.check(false, &g, None, || "broken".into());
        let mut b = Tally::default();
        b.metric("max_depth", 1);
        b.metric("pairs", 5);
        b.check(true, &g, None, || unreachable!());
        let r = a.merge(b).into_report(Check::Rerooting, None);
        assert_eq!((r.instances, r.failed), (2, 1));
        assert_eq!(r.metrics["max_depth"], 3);
        assert_eq!(r.metrics["pairs"], 7);
        assert_eq!(r.counterexamples[0].detail, "broken");
    }
}
