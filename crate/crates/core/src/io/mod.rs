//! Text and JSON formats for graphs and arrow presentations.

mod json;
mod text;

pub use json::{from_json, to_json};
pub use text::{parse, parse_graph, serialize, serialize_graph, Body, GraphDocument};
