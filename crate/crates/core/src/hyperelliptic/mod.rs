//! Hyperelliptic surfaces: involution checks, disk growth on the quotient
//! sphere, graphs of Weierstrass arcs, and partial homology bases.

pub mod basis;
pub mod growth;
pub mod involution;
pub mod pipeline;
pub mod verify;
pub mod wgraph;

pub use basis::{complement_connected, iff_cross_check, lift_arc, partial_basis_check, prune, pruned_size, BasisCertificate, IffReport, LiftedCurve, Pruned};
pub use pipeline::{run, BasisRow, EventRow, HyperReport, PipelineOptions};
pub use growth::{disk_growth, growth_checks, Case, Growth, GrowthEvent, WArc};
pub use involution::{ChartMap, InvolutionSpec};
pub use verify::{verify_involution, Involution, WeierstrassPoint};
pub use wgraph::{build_wgraph, check_type_w, WEdge, WGraph};

use crate::geodesics::GeodesicError;

#[derive(Debug, thiserror::Error)]
pub enum HyperError {
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("not an isometry: {0}")]
    NotIsometry(String),
    #[error("involution has {found} fixed points, expected {expected}")]
    WrongFixedPointCount { found: usize, expected: usize },
    #[error("inconsistent geometry: {0}")]
    GeometryInconsistent(String),
    #[error("graph is not embedded: {0}")]
    EmbeddingFailure(String),
    #[error("no subgraph with {0} edges has the separation property")]
    NoValidSubgraph(usize),
    #[error("lifted curve is not closed")]
    LiftNotClosed,
    #[error("not a partial basis: {0}")]
    NotPartialBasis(String),
}

/// One named pass/fail check with a human-readable detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}
