//! Systolic ratio table.

use serde_json::{json, Value};
use systolic::builder::{assemble, example_x, BuildError};
use systolic::geodesics::{FlatSurface, GeodesicError};
use systolic::graph::{GraphError, RegularGraph};
use systolic::scalar::Scalar;
use systolic::surd::Surd;
use systolic::surface::{SurfaceComplex, SurfaceError};

use crate::emit::Table;

#[derive(Debug, thiserror::Error)]
pub enum RatioError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

#[derive(Clone, Debug)]
pub struct RatioRow {
    pub label: String,
    pub l: Option<i64>,
    pub vertices: Option<usize>,
    pub girth: Option<usize>,
    pub genus: usize,
    pub area: Surd,
    pub systole: Surd,
    /// `systole^2 / area`.
    pub sr: Surd,
    pub exhaustive: bool,
}

impl RatioRow {
    /// `log g / (g log log g)`, defined for `g >= 3`.
    pub fn bound(&self) -> Option<f64> {
        let g = self.genus as f64;
        (self.genus >= 3).then(|| g.ln() / (g * g.ln().ln()))
    }
}

fn ratio(sy: &Surd, area: &Surd) -> Surd {
    match area.as_rational() {
        Some(a) => sy.square().scale(&a.recip()),
        None => unreachable!("rational area expected"),
    }
}

/// Certified systole of a surface, searched below `bound_sq`.
pub fn surface_row(label: &str, s: &SurfaceComplex, bound_sq: &Scalar, budget: Option<u64>) -> Result<RatioRow, RatioError> {
    let top = s.topology()?;
    let mut f = FlatSurface::new(s)?;
    if let Some(b) = budget {
        f.budget = b;
    }
    let cert = f.systole(bound_sq)?;
    let area = Surd::rational(&top.area);
    let systole = cert.value().clone();
    Ok(RatioRow {
        label: label.into(),
        l: None,
        vertices: None,
        girth: None,
        genus: top.genus,
        sr: ratio(&systole, &area),
        area,
        systole,
        exhaustive: cert.exhaustive,
    })
}

/// The assembled surface of a `2L^2`-regular graph, searched just past `2L`.
pub fn graph_row(label: &str, g: &RegularGraph, l: i64, budget: Option<u64>) -> Result<RatioRow, RatioError> {
    let (s, _) = assemble(g, l)?;
    let bound_sq = Scalar::int(4 * l * l) + Scalar::new(1, 2);
    let mut row = surface_row(label, &s, &bound_sq, budget)?;
    row.l = Some(l);
    row.vertices = Some(g.vertex_count);
    row.girth = g.girth()?;
    Ok(row)
}

/// Hexagonal torus with unit systole: area `sqrt(3)/2`, ratio `2/sqrt(3)`.
/// Not square-tiled, so the values are the closed forms of the lattice.
pub fn hexagonal_torus_row() -> RatioRow {
    let area = Surd::scaled_sqrt(&Scalar::new(1, 2), 3);
    RatioRow {
        label: "hexagonal torus".into(),
        l: None,
        vertices: None,
        girth: None,
        genus: 1,
        area,
        systole: Surd::int(1),
        sr: Surd::scaled_sqrt(&Scalar::new(2, 3), 3),
        exhaustive: true,
    }
}

pub fn default_rows(budget: Option<u64>) -> Result<Vec<RatioRow>, RatioError> {
    Ok(vec![
        graph_row("K_{8,8}", &RegularGraph::complete_bipartite(8), 2, budget)?,
        surface_row("X(2)", &example_x(2)?, &Scalar::int(4), budget)?,
        hexagonal_torus_row(),
    ])
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map(Into::into).unwrap_or(Value::Null)
}

pub fn table(rows: &[RatioRow]) -> Table {
    let mut t = Table::new(
        "ratio",
        &["label", "L", "vertices", "girth", "genus", "area", "systole", "sr", "sr_decimal", "bound_decimal", "exhaustive"],
    );
    for r in rows {
        t.push(vec![
            json!(r.label),
            opt(r.l),
            opt(r.vertices),
            opt(r.girth),
            json!(r.genus),
            json!(r.area.to_string()),
            json!(r.systole.to_string()),
            json!(r.sr.to_string()),
            json!(format!("{:.12}", r.sr.to_f64())),
            opt(r.bound().map(|b| format!("{b:.12}"))),
            json!(r.exhaustive),
        ]);
    }
    t
}
