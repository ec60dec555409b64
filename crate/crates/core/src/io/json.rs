//! The structured (JSON) mirror of the text format.

use serde::{Deserialize, Serialize};

use super::text::{is_identifier, Body, GraphDocument};
use crate::error::{Error, Result};
use crate::graph::{EndRef, GraphSpec, Sign};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDocument {
    format: String,
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<JsonEdge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<JsonVertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycles: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEdge {
    label: String,
    sign: Sign,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonVertex {
    name: String,
    rotation: Vec<String>,
}

pub fn to_json(doc: &GraphDocument) -> serde_json::Value {
    let mut j = JsonDocument {
        format: String::new(),
        version: 1,
        name: doc.name.clone(),
        notes: doc.notes.clone(),
        edges: None,
        vertices: None,
        cycles: None,
    };
    match &doc.body {
        Body::Rotation(spec) => {
            j.format = "ribbon".into();
            j.edges = Some(
                spec.edges
                    .iter()
                    .map(|(label, sign)| JsonEdge {
                        label: label.clone(),
                        sign: *sign,
                    })
                    .collect(),
            );
            j.vertices = Some(
                spec.vertices
                    .iter()
                    .map(|(name, ends)| JsonVertex {
                        name: name.clone(),
                        rotation: ends.iter().map(|e| e.to_string()).collect(),
                    })
                    .collect(),
            );
        }
        Body::Arrows(cycles) => {
            j.format = "arrows".into();
            j.cycles = Some(
                cycles
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|(l, f)| format!("{}{l}", if *f { '>' } else { '<' }))
                            .collect()
                    })
                    .collect(),
            );
        }
    }
    serde_json::to_value(j).expect("documents always serialize")
}

fn invalid(message: String) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message,
    }
}

pub fn from_json(text: &str) -> Result<GraphDocument> {
    let j: JsonDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if j.version != 1 {
        return Err(invalid(format!("unsupported version {}", j.version)));
    }
    let body = match j.format.as_str() {
        "ribbon" => {
            let mut spec = GraphSpec::new();
            for e in j.edges.unwrap_or_default() {
                if !is_identifier(&e.label) {
                    return Err(invalid(format!("invalid label `{}`", e.label)));
                }
                spec.edges.push((e.label, e.sign));
            }
            for v in j.vertices.unwrap_or_default() {
                let ends = v
                    .rotation
                    .iter()
                    .map(|t| EndRef::parse(t).ok_or_else(|| invalid(format!("invalid edge end `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                spec.vertices.push((v.name, ends));
            }
            Body::Rotation(spec)
        }
        "arrows" => Body::Arrows(
            j.cycles
                .unwrap_or_default()
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|t| {
                            let forward = match t.chars().next() {
                                Some('>') => true,
                                Some('<') => false,
                                _ => return Err(invalid(format!("invalid arrow `{t}`"))),
                            };
                            Ok((t[1..].to_string(), forward))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        other => return Err(invalid(format!("unknown format `{other}`"))),
    };
    Ok(GraphDocument {
        name: j.name,
        notes: j.notes,
        body,
    })
}
