//! The explicit surfaces: slit rectangle, slit torus, the genus-two example,
//! graph assemblies of slit tori, and a hyperelliptic sample family.

use std::fmt::Write as _;
use std::ops::Range;

use crate::graph::{GraphError, RegularGraph};
use crate::hyperelliptic::{ChartMap, InvolutionSpec};
use crate::scalar::Scalar;
use crate::surface::{EdgeRef, Side, SurfaceComplex};

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("graph has degree {found}, expected 2L^2 = {expected}")]
    RegularityMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An open slit: the lower lip is part of the top side of one strip, the
/// upper lip the matching part of the bottom side of the strip above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlitSpec {
    pub number: usize,
    pub lower: EdgeRef,
    pub upper: EdgeRef,
}

impl SlitSpec {
    pub fn len(&self) -> Scalar {
        self.lower.len()
    }

    fn shifted(&self, off: usize) -> SlitSpec {
        let s = |e: &EdgeRef| EdgeRef::new(e.rect + off, e.side, e.start.clone(), e.end.clone());
        SlitSpec { number: self.number, lower: s(&self.lower), upper: s(&self.upper) }
    }
}

/// A surface piece whose listed slits are still open.
#[derive(Clone, Debug)]
pub struct SlitPiece {
    pub surface: SurfaceComplex,
    pub slits: Vec<SlitSpec>,
}

impl SlitPiece {
    /// The surface with every slit closed up again.
    pub fn closed(&self) -> SurfaceComplex {
        let mut s = self.surface.clone();
        for sl in &self.slits {
            s.glue(sl.lower.clone(), sl.upper.clone());
        }
        s
    }
}

fn check_l(l: i64) -> Result<(), BuildError> {
    if l < 2 {
        return Err(BuildError::Domain(format!("L must be at least 2, got {l}")));
    }
    Ok(())
}

/// Glue the interface between `lower.top` and `upper.bottom` except for the
/// given open intervals, which are returned as slits.
fn interface(s: &mut SurfaceComplex, lower: usize, upper: usize, width: &Scalar, holes: &[(Scalar, Scalar)]) -> Vec<SlitSpec> {
    let mut cursor = Scalar::zero();
    let mut slits = Vec::new();
    for (a, b) in holes {
        if *a > cursor {
            s.glue(EdgeRef::new(lower, Side::Top, cursor.clone(), a.clone()), EdgeRef::new(upper, Side::Bottom, cursor.clone(), a.clone()));
        }
        slits.push(SlitSpec {
            number: slits.len(),
            lower: EdgeRef::new(lower, Side::Top, a.clone(), b.clone()),
            upper: EdgeRef::new(upper, Side::Bottom, a.clone(), b.clone()),
        });
        cursor = b.clone();
    }
    if *width > cursor {
        s.glue(EdgeRef::new(lower, Side::Top, cursor.clone(), width.clone()), EdgeRef::new(upper, Side::Bottom, cursor, width.clone()));
    }
    slits
}

/// Rectangle of size `(L + 2/L) x (2/L)` made of two strips, with a slit of
/// length `L` at mid-height and margins `1/L`. Outer sides are left open.
pub fn slit_rectangle(l: i64) -> Result<SlitPiece, BuildError> {
    check_l(l)?;
    let inv = Scalar::new(1, l);
    let w = Scalar::int(l) + &inv + &inv;
    let mut s = SurfaceComplex::new();
    let a = s.add_rect(w.clone(), inv.clone());
    let b = s.add_rect(w.clone(), inv.clone());
    let slits = interface(&mut s, a, b, &w, &[(inv.clone(), &inv + Scalar::int(l))]);
    Ok(SlitPiece { surface: s, slits })
}

/// The slit rectangle with opposite outer sides glued: a torus with one slit.
pub fn slit_torus_one(l: i64) -> Result<SlitPiece, BuildError> {
    let mut p = slit_rectangle(l)?;
    let s = &mut p.surface;
    s.glue_sides(1, Side::Top, 0);
    s.glue_sides(0, Side::Right, 0);
    s.glue_sides(1, Side::Right, 1);
    Ok(p)
}

fn cross_glue(s: &mut SurfaceComplex, x: &SlitSpec, y: &SlitSpec) {
    s.glue(x.upper.clone(), y.lower.clone());
    s.glue(y.upper.clone(), x.lower.clone());
}

/// Two one-slit tori glued crosswise along their slits: genus two with two
/// cone points of angle `4*pi`.
pub fn example_x(l: i64) -> Result<SurfaceComplex, BuildError> {
    let p = slit_torus_one(l)?;
    let mut s = p.surface.clone();
    let off = s.append(&p.surface);
    let (x, y) = (p.slits[0].clone(), p.slits[0].shifted(off));
    cross_glue(&mut s, &x, &y);
    Ok(s)
}

/// Torus of size `(2L + 4/L) x 2L` made of `2L^2` horizontal strips, carrying
/// `2L^2` slits: two per interface between strips `2i` and `2i+1`, numbered
/// `2i + column`.
pub fn slit_torus(l: i64) -> Result<SlitPiece, BuildError> {
    check_l(l)?;
    let inv = Scalar::new(1, l);
    let big = Scalar::int(l);
    let col_w = &big + &inv + &inv;
    let w = &col_w + &col_w;
    let rows = (2 * l * l) as usize;
    let mut s = SurfaceComplex::new();
    for _ in 0..rows {
        let r = s.add_rect(w.clone(), inv.clone());
        s.glue_sides(r, Side::Right, r);
    }
    let mut slits = Vec::new();
    for i in 0..rows / 2 {
        let (lo, hi) = (2 * i, 2 * i + 1);
        let holes = [(inv.clone(), &inv + &big), (&col_w + &inv, &col_w + &inv + &big)];
        for mut sl in interface(&mut s, lo, hi, &w, &holes) {
            sl.number = 2 * i + sl.number;
            slits.push(sl);
        }
        s.glue_sides(hi, Side::Top, (hi + 1) % rows);
    }
    Ok(SlitPiece { surface: s, slits })
}

/// Which rectangles belong to which torus copy and which slits are paired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyManifest {
    pub l: i64,
    pub graph: RegularGraph,
    pub torus_copies: Vec<Range<usize>>,
    /// `(edge index, (u, slit of T_u), (v, slit of T_v))`.
    pub slit_pairing: Vec<(usize, (usize, usize), (usize, usize))>,
}

impl AssemblyManifest {
    pub fn to_text(&self) -> String {
        let mut out = format!("manifest v1\nL {}\n", self.l);
        for (v, r) in self.torus_copies.iter().enumerate() {
            let _ = writeln!(out, "torus {v} {} {}", r.start, r.len());
        }
        for (e, (u, su), (v, sv)) in &self.slit_pairing {
            let _ = writeln!(out, "pair {e} {u} {su} {v} {sv}");
        }
        out
    }
}

/// One slit torus per vertex; each edge `(u, v, lu, lv)` glues slit `lu - 1`
/// of `T_u` crosswise to slit `lv - 1` of `T_v`.
pub fn assemble(graph: &RegularGraph, l: i64) -> Result<(SurfaceComplex, AssemblyManifest), BuildError> {
    check_l(l)?;
    graph.validate()?;
    let k = (2 * l * l) as usize;
    if graph.k != k {
        return Err(BuildError::RegularityMismatch { expected: k, found: graph.k });
    }
    let t = slit_torus(l)?;
    let mut s = SurfaceComplex::new();
    let mut copies = Vec::new();
    let mut slits = Vec::new();
    for _ in 0..graph.vertex_count {
        let off = s.append(&t.surface);
        copies.push(off..off + t.surface.rects.len());
        slits.push(t.slits.iter().map(|x| x.shifted(off)).collect::<Vec<_>>());
    }
    let mut pairing = Vec::new();
    for (i, e) in graph.edges.iter().enumerate() {
        cross_glue(&mut s, &slits[e.u][e.lu - 1], &slits[e.v][e.lv - 1]);
        pairing.push((i, (e.u, e.lu - 1), (e.v, e.lv - 1)));
    }
    let manifest = AssemblyManifest { l, graph: graph.clone(), torus_copies: copies, slit_pairing: pairing };
    Ok((s, manifest))
}

/// A surface with an isometric involution and its fixed points.
#[derive(Clone, Debug)]
pub struct HyperellipticSample {
    pub surface: SurfaceComplex,
    pub involution: InvolutionSpec,
    /// Indices into `surface.marks` of the expected fixed points.
    pub weierstrass: Vec<usize>,
}

/// One horizontal cylinder of height 1 whose top is cut into `n = 2m + 2`
/// segments of lengths `lambda_i = 1 + (i - 1)/L` and whose bottom carries the
/// same segments in reverse order; top segment `i` is glued to bottom segment
/// `i`. Genus `m + 1`; the half-turn `(x, y) -> (W - x, 1 - y)` is the
/// hyperelliptic involution.
pub fn hyperelliptic_family(m: usize, l: i64) -> Result<HyperellipticSample, BuildError> {
    check_l(l)?;
    if m < 1 {
        return Err(BuildError::Domain("m must be at least 1".into()));
    }
    let n = 2 * m + 2;
    let lam: Vec<Scalar> = (0..n).map(|i| Scalar::one() + Scalar::new(i as i64, l)).collect();
    let w: Scalar = lam.iter().cloned().sum();
    let h = Scalar::one();
    let mut s = SurfaceComplex::new();
    let r = s.add_rect(w.clone(), h.clone());
    s.glue_sides(r, Side::Right, r);
    let mut a = Scalar::zero();
    let half = Scalar::new(1, 2);
    s.mark(r, &w * &half, &h * &half, "w0");
    s.mark(r, Scalar::zero(), &h * &half, "w1");
    for (i, li) in lam.iter().enumerate() {
        let b = &w - &a - li;
        s.glue(EdgeRef::new(r, Side::Top, a.clone(), &a + li), EdgeRef::new(r, Side::Bottom, b.clone(), &b + li));
        s.mark(r, &a + li * &half, h.clone(), format!("w{}", i + 2));
        a = a + li;
    }
    let involution = InvolutionSpec {
        maps: vec![ChartMap { rect: r, target: r, sx: -1, sy: -1, tx: w, ty: h }],
    };
    Ok(HyperellipticSample { surface: s, involution, weierstrass: (0..n + 2).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slit_rectangle_dimensions() {
        let p = slit_rectangle(2).unwrap();
        assert_eq!(p.surface.area(), Scalar::int(3));
        assert_eq!(p.slits[0].len(), Scalar::int(2));
        assert_eq!(p.slits[0].lower.start, Scalar::new(1, 2));
        let p = slit_rectangle(3).unwrap();
        assert_eq!(p.surface.rects[0].width, Scalar::new(11, 3));
        assert_eq!(p.surface.area(), Scalar::new(11, 3) * Scalar::new(2, 3));
        assert!(slit_rectangle(1).is_err());
    }

    #[test]
    fn closed_pieces_are_valid_tori() {
        for l in 2..4 {
            let t = slit_torus(l).unwrap();
            assert_eq!(t.slits.len(), (2 * l * l) as usize);
            let c = t.closed();
            assert!(c.validate().is_empty());
            assert_eq!(c.area(), Scalar::int(4 * l * l + 8));
            assert_eq!(c.topology().unwrap().genus, 1);
            assert_eq!(slit_torus_one(l).unwrap().closed().topology().unwrap().genus, 1);
        }
        let numbers: Vec<usize> = slit_torus(2).unwrap().slits.iter().map(|s| s.number).collect();
        assert_eq!(numbers, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn example_x_is_genus_two() {
        let x = example_x(3).unwrap().topology().unwrap();
        assert_eq!(x.genus, 2);
        assert_eq!(x.area, Scalar::new(44, 9));
        assert!(x.cone_points.iter().all(|c| c.k == 1));
    }

    #[test]
    fn assemble_rejects_wrong_degree() {
        let g = RegularGraph::complete_bipartite(3);
        assert!(matches!(assemble(&g, 2), Err(BuildError::RegularityMismatch { expected: 8, found: 3 })));
    }

    #[test]
    fn hyperelliptic_family_genus() {
        for m in 1..4 {
            let h = hyperelliptic_family(m, 2).unwrap();
            let t = h.surface.topology().unwrap();
            assert_eq!(t.genus, m + 1);
            assert_eq!(h.weierstrass.len(), 2 * t.genus + 2);
        }
    }
}
