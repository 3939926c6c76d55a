//! Exact flat-surface geometry for systolic inequalities on translation
//! surfaces.

pub mod builder;
pub mod geodesics;
pub mod graph;
pub mod hyperelliptic;
pub mod interval;
pub mod scalar;
pub mod surd;
pub mod surface;
pub mod tiling;
