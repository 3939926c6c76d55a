//! Exact flat geometry: saddle connections, cylinders, closed geodesics,
//! systoles, distances and shortest loops.

pub mod arrangement;
pub mod closed;
pub mod curves;
pub mod cylinders;
pub mod homology;
pub mod paths;
pub mod rays;
pub mod trace;

use crate::scalar::Scalar;
use crate::surd::Surd;
use crate::surface::{SurfaceComplex, SurfaceError};
use crate::tiling::Tiling;

pub use closed::{closed_geodesics, homological_systole, systole, ClosedGeodesic, GeodesicKind, SystoleCertificate};
pub use cylinders::{cylinders, Cylinder};
pub use paths::{mark_slit_endpoints, slit_endpoint_gap, distance, shortest_loop_at, GeodesicPath};
pub use trace::{Link, LinkTable};

/// Walk steps allowed before a search gives up.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, thiserror::Error)]
pub enum GeodesicError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("search budget exhausted after {0} steps")]
    BudgetExhausted(u64),
    #[error("no closed geodesic below the search bound")]
    NoGeodesicFound,
    #[error("direction is not parallel to a lattice vector")]
    NonRationalDirection,
    #[error("bound must be positive")]
    NonPositiveBound,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
}

/// A validated surface together with its square tiling and homology basis.
#[derive(Clone, Debug)]
pub struct FlatSurface {
    pub surface: SurfaceComplex,
    pub tiling: Tiling,
    pub homology: homology::HomologyBasis,
    pub area: Scalar,
    pub budget: u64,
}

/// A segment between two stop points, in surface units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaddleConnection {
    pub start: usize,
    pub end: usize,
    pub holonomy: (Scalar, Scalar),
    pub start_chart: (usize, Scalar, Scalar),
    pub end_chart: (usize, Scalar, Scalar),
    pub length_sq: Scalar,
}

impl FlatSurface {
    pub fn new(surface: &SurfaceComplex) -> Result<FlatSurface, GeodesicError> {
        let tiling = Tiling::new(surface)?;
        Ok(FlatSurface::from_tiling(surface, tiling))
    }

    pub fn with_unit(surface: &SurfaceComplex, unit: &Scalar) -> Result<FlatSurface, GeodesicError> {
        let tiling = Tiling::with_unit(surface, unit)?;
        Ok(FlatSurface::from_tiling(surface, tiling))
    }

    fn from_tiling(surface: &SurfaceComplex, tiling: Tiling) -> FlatSurface {
        let homology = homology::HomologyBasis::new(&tiling);
        FlatSurface { surface: surface.clone(), area: surface.area(), tiling, homology, budget: DEFAULT_BUDGET }
    }

    pub fn unit(&self) -> &Scalar {
        &self.tiling.unit
    }

    pub fn genus(&self) -> usize {
        self.homology.rank() / 2
    }

    pub fn cone_stops(&self) -> Vec<bool> {
        self.tiling.vertices.iter().map(|v| v.is_cone()).collect()
    }

    pub fn all_stops(&self) -> Vec<bool> {
        self.tiling.vertices.iter().map(|v| v.is_cone() || v.is_marked()).collect()
    }

    /// Squared surface length expressed in squared grid units.
    pub fn to_grid(&self, len_sq: &Scalar) -> Scalar {
        len_sq / (self.unit() * self.unit())
    }

    /// Surface length of a grid vector with squared norm `norm_sq`.
    pub fn length(&self, norm_sq: i64) -> Surd {
        Surd::scaled_sqrt(self.unit(), norm_sq as u64)
    }

    pub fn length_sq(&self, norm_sq: i64) -> Scalar {
        self.unit() * self.unit() * Scalar::int(norm_sq)
    }

    pub fn holonomy(&self, v: (i64, i64)) -> (Scalar, Scalar) {
        (self.unit() * Scalar::int(v.0), self.unit() * Scalar::int(v.1))
    }

    /// Vertex carrying the marked point with this label.
    pub fn marked_vertex(&self, label: &str) -> Result<usize, GeodesicError> {
        let mi = self
            .surface
            .marks
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| GeodesicError::UnknownPoint(label.to_string()))?;
        Ok(self.tiling.vertices.iter().position(|v| v.marks.contains(&mi)).expect("marks lie on vertices"))
    }

    pub fn vertex_at(&self, rect: usize, x: &Scalar, y: &Scalar) -> usize {
        self.tiling.vertex_at_point(rect, x, y)
    }

    pub fn links(&self, stops: &[bool], bound_sq: &Scalar) -> Result<LinkTable, GeodesicError> {
        LinkTable::build(&self.tiling, stops, &self.to_grid(bound_sq), self.budget)
    }

    pub fn connection(&self, l: &Link) -> SaddleConnection {
        SaddleConnection {
            start: l.from,
            end: l.to,
            holonomy: self.holonomy(l.vec()),
            start_chart: self.tiling.vertex_point(l.from),
            end_chart: self.tiling.vertex_point(l.to),
            length_sq: self.length_sq(l.norm_sq()),
        }
    }
}

/// Every saddle connection between cone and marked points shorter than
/// `sqrt(bound_sq)`, each segment listed once.
pub fn saddle_connections(surface: &SurfaceComplex, bound_sq: &Scalar) -> Result<Vec<SaddleConnection>, GeodesicError> {
    let f = FlatSurface::new(surface)?;
    f.saddle_connections(bound_sq)
}

impl FlatSurface {
    pub fn saddle_connections(&self, bound_sq: &Scalar) -> Result<Vec<SaddleConnection>, GeodesicError> {
        if !bound_sq.is_positive() {
            return Err(GeodesicError::NonPositiveBound);
        }
        let table = self.links(&self.all_stops(), bound_sq)?;
        let key = |l: &Link| (l.from, l.out_sector, l.dir);
        let mut out: Vec<SaddleConnection> = table
            .links
            .iter()
            .enumerate()
            .filter(|(i, l)| table.reverse(*i).map_or(true, |r| key(l) <= key(&table.links[r])))
            .map(|(_, l)| self.connection(l))
            .collect();
        out.sort_by(|a, b| (&a.length_sq, &a.holonomy, a.start, a.end).cmp(&(&b.length_sq, &b.holonomy, b.start, b.end)));
        Ok(out)
    }
}
