//! Ribbon graphs as signed rotation systems: partial duality, Euler genus,
//! biseparations, join factorization and the local moves relating partial
//! duals of low genus.

pub mod arrows;
pub mod canon;
pub mod decomposition;
pub mod duality;
pub mod error;
pub mod graph;
pub mod io;
pub mod marked;
pub mod moves;
pub mod subset;
pub mod topology;
pub mod verify;

pub use arrows::{from_arrow_presentation, to_arrow_presentation, Arrow, ArrowPresentation};
pub use canon::{canonical_form, is_equivalent, CanonicalCode};
pub use duality::{geometric_dual, partial_dual, partial_dual_one_edge, partial_dual_via_marks};
pub use error::{Error, Result};
pub use graph::{build_graph, Edge, EdgeEnd, GraphSpec, RibbonGraph, Sign, Vertex};
pub use marked::{mark_and_remove, restore, MarkedRibbonGraph};
pub use subset::EdgeSubset;
pub use topology::{euler_genus, is_orientable, surface_stats, SurfaceStats};
