//! Arrow presentations: oriented cycles carrying labeled arrows, two per label.
//!
//! Both arrows of a label follow one orientation of the edge's boundary. Read
//! against the cycle orientations, equal directions mean an untwisted edge and
//! opposite directions a twisted one.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeEnd, RibbonGraph, Sign, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    /// Index into [`ArrowPresentation::labels`].
    pub label: usize,
    /// Whether the arrow points along the cycle's orientation.
    pub forward: bool,
}

impl Arrow {
    pub fn reversed(self) -> Arrow {
        Arrow {
            label: self.label,
            forward: !self.forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowPresentation {
    pub labels: Vec<String>,
    pub cycles: Vec<Vec<Arrow>>,
}

impl ArrowPresentation {
    /// Builds a presentation from `(label, forward)` cycles. Labels are
    /// indexed in order of first appearance.
    pub fn from_named<S: AsRef<str>>(cycles: &[Vec<(S, bool)>]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let cycles = cycles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(l, forward)| {
                        let l = l.as_ref();
                        let label = *index.entry(l.to_string()).or_insert_with(|| {
                            labels.push(l.to_string());
                            labels.len() - 1
                        });
                        Arrow {
                            label,
                            forward: *forward,
                        }
                    })
                    .collect()
            })
            .collect();
        let p = ArrowPresentation { labels, cycles };
        p.validate()?;
        Ok(p)
    }

    /// Checks that every label carries exactly two arrows.
    pub fn validate(&self) -> Result<()> {
        let mut count = vec![0usize; self.labels.len()];
        for a in self.cycles.iter().flatten() {
            match count.get_mut(a.label) {
                Some(c) => *c += 1,
                None => return Err(Error::UnknownLabel(format!("#{}", a.label))),
            }
        }
        match count.iter().position(|&c| c != 2) {
            Some(l) => Err(Error::ArrowCount {
                label: self.labels[l].clone(),
                count: count[l],
            }),
            None => Ok(()),
        }
    }

    pub fn named_cycles(&self) -> Vec<Vec<(&str, bool)>> {
        self.cycles
            .iter()
            .map(|c| c.iter().map(|a| (self.labels[a.label].as_str(), a.forward)).collect())
            .collect()
    }
}

impl fmt::Display for ArrowPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "(")?;
            for (j, a) in c.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                let d = if a.forward { '>' } else { '<' };
                write!(f, "{d}{}", self.labels[a.label])?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// One cycle per vertex, read along its rotation. The arrow of `e.1` points
/// forward; the arrow of `e.2` points forward iff `e` is untwisted.
pub fn to_arrow_presentation(g: &RibbonGraph) -> ArrowPresentation {
    ArrowPresentation {
        labels: g.edges().iter().map(|e| e.label.clone()).collect(),
        cycles: g
            .vertices()
            .iter()
            .map(|v| {
                v.rotation
                    .iter()
                    .map(|end| Arrow {
                        label: end.edge,
                        forward: end.end == 0 || g.sign(end.edge) == Sign::Plus,
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Caps every cycle with a vertex disc and attaches one edge per label.
/// Vertices are named `v0, v1, ...`; edge `i` carries `labels[i]`, and the
/// first arrow met becomes end `.1`.
pub fn from_arrow_presentation(p: &ArrowPresentation) -> Result<RibbonGraph> {
    p.validate()?;
    Ok(graph_from_cycles(&p.labels, &p.cycles))
}

pub(crate) fn graph_from_cycles(labels: &[String], cycles: &[Vec<Arrow>]) -> RibbonGraph {
    let mut first: Vec<Option<bool>> = vec![None; labels.len()];
    let mut signs = vec![Sign::Plus; labels.len()];
    let vertices = cycles
        .iter()
        .enumerate()
        .map(|(i, c)| Vertex {
            name: format!("v{i}"),
            rotation: c
                .iter()
                .map(|a| match first[a.label] {
                    None => {
                        first[a.label] = Some(a.forward);
                        EdgeEnd::new(a.label, 0)
                    }
                    Some(d) => {
                        if d != a.forward {
                            signs[a.label] = Sign::Minus;
                        }
                        EdgeEnd::new(a.label, 1)
                    }
                })
                .collect(),
        })
        .collect();
    let edges = labels
        .iter()
        .zip(signs)
        .map(|(label, sign)| Edge {
            label: label.clone(),
            sign,
        })
        .collect();
    RibbonGraph::from_parts(edges, vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    #[test]
    fn loop_arrow_patterns() {
        let untwisted = ArrowPresentation::from_named(&[vec![("e", true), ("e", true)]]).unwrap();
        let twisted = ArrowPresentation::from_named(&[vec![("e", true), ("e", false)]]).unwrap();
        assert_eq!(from_arrow_presentation(&untwisted).unwrap().sign(0), Sign::Plus);
        assert_eq!(from_arrow_presentation(&twisted).unwrap().sign(0), Sign::Minus);
        let both_back = ArrowPresentation::from_named(&[vec![("e", false), ("e", false)]]).unwrap();
        assert_eq!(from_arrow_presentation(&both_back).unwrap().sign(0), Sign::Plus);
    }

    #[test]
    fn empty_cycle_is_a_vertex() {
        let p = ArrowPresentation::from_named::<&str>(&[vec![]]).unwrap();
        let g = from_arrow_presentation(&p).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
        assert_eq!(to_arrow_presentation(&g), p);
    }

    #[test]
    fn rejects_lonely_arrow() {
        let err = ArrowPresentation::from_named(&[vec![("e", true)]]).unwrap_err();
        assert_eq!(err, Error::ArrowCount { label: "e".into(), count: 1 });
    }

    #[test]
    fn round_trip_is_exact_for_stored_graphs() {
        let g = GraphSpec::new()
            .edge("a", Sign::Plus)
            .edge("b", Sign::Minus)
            .vertex("u", &["a.1", "b.1"])
            .vertex("w", &["a.2", "b.2"])
            .build()
            .unwrap();
        let p = to_arrow_presentation(&g);
        assert_eq!(p.to_string(), "(>a >b) (>a <b)");
        let back = from_arrow_presentation(&p).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.rotation(1), g.rotation(1));
    }
}
