//! The line-oriented text format.
//!
//! ```text
//! ribbon v1
//! name two-cycle
//! edge a +
//! edge b +
//! vertex u: a.1 b.1
//! vertex w: a.2 b.2
//! ```
//!
//! or, for arrow presentations,
//!
//! ```text
//! arrows v1
//! cycle: >e >e
//! ```
//!
//! `#` starts a comment. Labels and vertex names use `[A-Za-z0-9_]`.

use crate::arrows::{from_arrow_presentation, to_arrow_presentation, ArrowPresentation};
use crate::error::{Error, Result};
use crate::graph::{build_graph, EndRef, GraphSpec, RibbonGraph, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Rotation(GraphSpec),
    /// Cycles of `(label, forward)` arrows.
    Arrows(Vec<Vec<(String, bool)>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub name: Option<String>,
    pub notes: Vec<String>,
    pub body: Body,
}

impl GraphDocument {
    pub fn from_graph(g: &RibbonGraph, name: Option<&str>) -> Self {
        GraphDocument {
            name: name.map(str::to_string),
            notes: Vec::new(),
            body: Body::Rotation(g.to_spec()),
        }
    }

    pub fn from_arrows(p: &ArrowPresentation) -> Self {
        GraphDocument {
            name: None,
            notes: Vec::new(),
            body: Body::Arrows(
                p.named_cycles()
                    .into_iter()
                    .map(|c| c.into_iter().map(|(l, f)| (l.to_string(), f)).collect())
                    .collect(),
            ),
        }
    }

    /// Validates the document into a graph.
    pub fn to_graph(&self) -> Result<RibbonGraph> {
        match &self.body {
            Body::Rotation(spec) => build_graph(spec),
            Body::Arrows(cycles) => from_arrow_presentation(&ArrowPresentation::from_named(cycles)?),
        }
    }

    pub fn to_arrows(&self) -> Result<ArrowPresentation> {
        match &self.body {
            Body::Rotation(spec) => Ok(to_arrow_presentation(&build_graph(spec)?)),
            Body::Arrows(cycles) => ArrowPresentation::from_named(cycles),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column: self.text[..offset].chars().count() + 1,
            message: message.into(),
        }
    }

    /// Whitespace-separated tokens with their byte offsets, starting at `from`.
    fn tokens(&self, from: usize) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text[from..].char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((from + s, &self.text[from + s..from + i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((from + s, &self.text[from + s..]));
        }
        out
    }
}

pub fn parse(text: &str) -> Result<GraphDocument> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        (!content.trim().is_empty()).then_some(Line {
            number: i + 1,
            text: content.trim_end(),
        })
    });
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty document: expected `ribbon v1` or `arrows v1`".into(),
    })?;
    let head = header.tokens(0);
    let arrows = match head.iter().map(|t| t.1).collect::<Vec<_>>()[..] {
        ["ribbon", "v1"] => false,
        ["arrows", "v1"] => true,
        _ => return Err(header.error(head.first().map_or(0, |t| t.0), "expected `ribbon v1` or `arrows v1`")),
    };
    let mut doc = GraphDocument {
        name: None,
        notes: Vec::new(),
        body: if arrows {
            Body::Arrows(Vec::new())
        } else {
            Body::Rotation(GraphSpec::new())
        },
    };
    for line in lines {
        let toks = line.tokens(0);
        let (kw_at, kw) = toks[0];
        let rest_at = kw_at + kw.len();
        let rest = line.text[rest_at..].trim();
        match (kw, &mut doc.body) {
            ("name", _) => {
                if doc.name.is_some() {
                    return Err(line.error(kw_at, "duplicate `name` line"));
                }
                if rest.is_empty() {
                    return Err(line.error(rest_at, "`name` needs a value"));
                }
                doc.name = Some(rest.to_string());
            }
            ("note", _) => doc.notes.push(rest.to_string()),
            ("edge", Body::Rotation(spec)) => {
                let args = &toks[1..];
                if args.len() != 2 {
                    return Err(line.error(rest_at, "expected `edge <label> <+|->`"));
                }
                if !is_identifier(args[0].1) {
                    return Err(line.error(args[0].0, format!("invalid label `{}`", args[0].1)));
                }
                let sign = match args[1].1 {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => return Err(line.error(args[1].0, format!("invalid sign `{other}`, expected + or -"))),
                };
                spec.edges.push((args[0].1.to_string(), sign));
            }
            ("vertex", Body::Rotation(spec)) => {
                let Some(colon) = line.text[rest_at..].find(':').map(|c| c + rest_at) else {
                    return Err(line.error(rest_at, "expected `vertex <name>: <label>.<1|2> ...`"));
                };
                let name = line.text[rest_at..colon].trim();
                if !is_identifier(name) {
                    return Err(line.error(rest_at, format!("invalid vertex name `{name}`")));
                }
                let mut ends = Vec::new();
                for (at, tok) in line.tokens(colon + 1) {
                    let end = tok
                        .rsplit_once('.')
                        .filter(|(l, n)| is_identifier(l) && !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()))
                        .and_then(|_| EndRef::parse(tok))
                        .ok_or_else(|| line.error(at, format!("invalid edge end `{tok}`, expected <label>.<1|2>")))?;
                    ends.push(end);
                }
                spec.vertices.push((name.to_string(), ends));
            }
            ("cycle:" | "cycle", Body::Arrows(cycles)) => {
                let from = if kw == "cycle" {
                    match toks.get(1) {
                        Some((at, t)) if t.starts_with(':') => at + 1,
                        _ => return Err(line.error(rest_at, "expected `cycle:`")),
                    }
                } else {
                    rest_at
                };
                let mut cycle = Vec::new();
                for (at, tok) in line.tokens(from) {
                    let forward = match tok.chars().next() {
                        Some('>') => true,
                        Some('<') => false,
                        _ => return Err(line.error(at, format!("invalid arrow `{tok}`, expected >label or <label"))),
                    };
                    if !is_identifier(&tok[1..]) {
                        return Err(line.error(at + 1, format!("invalid label `{}`", &tok[1..])));
                    }
                    cycle.push((tok[1..].to_string(), forward));
                }
                cycles.push(cycle);
            }
            (kw, Body::Rotation(_)) => {
                return Err(line.error(kw_at, format!("unexpected `{kw}`, expected edge, vertex, name or note")))
            }
            (kw, Body::Arrows(_)) => {
                return Err(line.error(kw_at, format!("unexpected `{kw}`, expected cycle:, name or note")))
            }
        }
    }
    Ok(doc)
}

/// Canonical text: header, name, notes, edges, vertices (or cycles) in
/// stored order.
pub fn serialize(doc: &GraphDocument) -> String {
    let mut out = String::new();
    out.push_str(match doc.body {
        Body::Rotation(_) => "ribbon v1\n",
        Body::Arrows(_) => "arrows v1\n",
    });
    if let Some(n) = &doc.name {
        out.push_str(&format!("name {n}\n"));
    }
    for n in &doc.notes {
        out.push_str(&format!("note {n}\n"));
    }
    match &doc.body {
        Body::Rotation(spec) => {
            for (l, s) in &spec.edges {
                out.push_str(&format!("edge {l} {s}\n"));
            }
            for (name, ends) in &spec.vertices {
                out.push_str(&format!("vertex {name}:"));
                for e in ends {
                    out.push_str(&format!(" {e}"));
                }
                out.push('\n');
            }
        }
        Body::Arrows(cycles) => {
            for c in cycles {
                out.push_str("cycle:");
                for (l, f) in c {
                    out.push_str(&format!(" {}{l}", if *f { '>' } else { '<' }));
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn serialize_graph(g: &RibbonGraph, name: Option<&str>) -> String {
    serialize(&GraphDocument::from_graph(g, name))
}

/// Parses and validates a document into a graph.
pub fn parse_graph(text: &str) -> Result<RibbonGraph> {
    parse(text)?.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::euler_genus;

    const C: &str = "ribbon v1\n# the plane two-cycle\nedge a +\nedge b +\nvertex u: a.1 b.1\nvertex w: a.2 b.2\n";

    #[test]
    fn round_trip() {
        let doc = parse(C).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(euler_genus(&g), 0);
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
        let arrows = "arrows v1\nname loop\ncycle: >e <e\ncycle:\n";
        assert_eq!(serialize(&parse(arrows).unwrap()), arrows);
    }

    #[test]
    fn metadata_and_empty_graph() {
        let text = "ribbon v1\nname dot\nnote a single vertex\nvertex v:\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.name.as_deref(), Some("dot"));
        assert_eq!(doc.to_graph().unwrap().num_vertices(), 1);
        assert_eq!(serialize(&doc), text);
    }

    #[test]
    fn errors_are_located() {
        let err = parse("ribbon v1\nedge a *\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 8, message: "invalid sign `*`, expected + or -".into() });
        let err = parse("ribbon v1\nedge a +\nvertex u: a.1 a-2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 15, .. }));
        let err = parse("arrows v1\ncycle: e\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 8, .. }));
        assert!(matches!(parse("graph v2\n"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn semantic_errors_come_from_validation() {
        let err = parse_graph("ribbon v1\nedge a +\nvertex u: a.1\n").unwrap_err();
        assert_eq!(err.to_string(), "missing end a.2");
    }
}
