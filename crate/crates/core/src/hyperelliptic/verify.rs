//! Checking that a chart-wise map is an isometric involution and locating
//! its fixed points.
//!
//! On a grid fine enough that the map permutes the squares, the map is a
//! permutation `rho` of squares with linear part `+I` or `-I`; it is an
//! isometry iff `rho` commutes with the square adjacencies. With `-I` each
//! fixed point is a square centre, an edge midpoint or a vertex; the grid is
//! halved until only vertices remain.

use super::{HyperError, InvolutionSpec};
use crate::geodesics::trace::LinkTable;
use crate::geodesics::FlatSurface;
use crate::scalar::Scalar;
use crate::surface::SurfaceComplex;
use crate::tiling::{grid_unit, Tiling};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassPoint {
    pub vertex: usize,
    pub label: String,
    pub rect: usize,
    pub x: Scalar,
    pub y: Scalar,
    pub is_cone: bool,
}

/// A verified involution acting on the squares and vertices of a tiling.
#[derive(Clone, Debug)]
pub struct Involution {
    pub flat: FlatSurface,
    /// Linear part: `-1` for `-I`, `1` for `+I`.
    pub sign: i8,
    pub rho: Vec<usize>,
    pub vmap: Vec<usize>,
    /// Image sector of each sector of each vertex.
    pub sector_map: Vec<Vec<usize>>,
    pub weierstrass: Vec<WeierstrassPoint>,
}

fn square_map(t: &Tiling, s: &SurfaceComplex, spec: &InvolutionSpec, sign: i8) -> Vec<usize> {
    (0..t.num_squares())
        .map(|sq| {
            let c = &t.cells[sq];
            let m = spec.map_for(c.rect).unwrap();
            if sign > 0 {
                return t.square(m.target, c.col, c.row);
            }
            let r = &s.rects[m.target];
            let cols = (&r.width / &t.unit).to_i64().unwrap() as usize;
            let rows = (&r.height / &t.unit).to_i64().unwrap() as usize;
            t.square(m.target, cols - 1 - c.col, rows - 1 - c.row)
        })
        .collect()
}

fn corner_image(sign: i8, c: usize) -> usize {
    if sign < 0 {
        (c + 2) % 4
    } else {
        c
    }
}

fn vertex_maps(t: &Tiling, rho: &[usize], sign: i8) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut vmap = Vec::with_capacity(t.vertices.len());
    let mut smap = Vec::with_capacity(t.vertices.len());
    for v in &t.vertices {
        let secs: Vec<usize> = v
            .sectors
            .iter()
            .enumerate()
            .map(|(j, &s)| t.corner[rho[s]][corner_image(sign, j % 4)].1)
            .collect();
        let (s0, c0) = (v.sectors[0], 0);
        vmap.push(t.corner[rho[s0]][corner_image(sign, c0)].0);
        smap.push(secs);
    }
    (vmap, smap)
}

pub fn verify_involution(surface: &SurfaceComplex, spec: &InvolutionSpec) -> Result<Involution, HyperError> {
    surface.ensure_valid().map_err(|e| HyperError::Geodesic(e.into()))?;
    let mut sign = None;
    let mut unit = grid_unit(surface);
    for (ri, r) in surface.rects.iter().enumerate() {
        let m = spec.map_for(ri).ok_or_else(|| HyperError::NotInvolution(format!("no map for rectangle {ri}")))?;
        if m.sx != m.sy || *sign.get_or_insert(m.sx) != m.sx {
            return Err(HyperError::NotIsometry("linear part must be +I or -I on every chart".into()));
        }
        let t = surface
            .rects
            .get(m.target)
            .ok_or_else(|| HyperError::NotIsometry(format!("unknown target rectangle {}", m.target)))?;
        let onto = |len: &Scalar, tlen: &Scalar, shift: &Scalar| len == tlen && *shift == if m.sx < 0 { len.clone() } else { Scalar::zero() };
        if !onto(&r.width, &t.width, &m.tx) || !onto(&r.height, &t.height, &m.ty) {
            return Err(HyperError::NotIsometry(format!("rectangle {ri} is not mapped onto rectangle {}", m.target)));
        }
        unit = unit.gcd(&m.tx).gcd(&m.ty);
    }
    let sign = sign.ok_or_else(|| HyperError::NotInvolution("empty surface".into()))?;

    let mut t = Tiling::with_unit(surface, &unit).map_err(|e| HyperError::Geodesic(e.into()))?;
    let mut rho = square_map(&t, surface, spec, sign);
    let off_vertex = |t: &Tiling, rho: &[usize]| {
        (0..rho.len()).any(|s| rho[s] == s || t.left[rho[s]] == s || t.bottom[rho[s]] == s)
    };
    if sign < 0 && off_vertex(&t, &rho) {
        unit = &unit * Scalar::new(1, 2);
        t = Tiling::with_unit(surface, &unit).map_err(|e| HyperError::Geodesic(e.into()))?;
        rho = square_map(&t, surface, spec, sign);
    }
    let n = rho.len();
    let mut seen = vec![false; n];
    for &r in &rho {
        if std::mem::replace(&mut seen[r], true) {
            return Err(HyperError::NotIsometry("squares are not permuted".into()));
        }
    }
    if (0..n).any(|s| rho[rho[s]] != s) {
        return Err(HyperError::NotInvolution("map is not of order two".into()));
    }
    if sign > 0 && (0..n).all(|s| rho[s] == s) {
        return Err(HyperError::NotInvolution("map is the identity".into()));
    }
    for s in 0..n {
        let ok = if sign < 0 {
            rho[t.right[s]] == t.left[rho[s]] && rho[t.top[s]] == t.bottom[rho[s]]
        } else {
            rho[t.right[s]] == t.right[rho[s]] && rho[t.top[s]] == t.top[rho[s]]
        };
        if !ok {
            return Err(HyperError::NotIsometry(format!("map breaks the gluing at square {s}")));
        }
    }

    let (vmap, _) = vertex_maps(&t, &rho, sign);
    let fixed: Vec<usize> = (0..vmap.len()).filter(|&v| vmap[v] == v).collect();
    let genus = surface.topology().map_err(|e| HyperError::Geodesic(e.into()))?.genus;
    if fixed.len() != 2 * genus + 2 {
        return Err(HyperError::WrongFixedPointCount { found: fixed.len(), expected: 2 * genus + 2 });
    }

    // Every fixed point becomes a marked point.
    let mut marked = surface.clone();
    let mut next = 0;
    for &v in &fixed {
        if !t.vertices[v].is_marked() {
            let (r, x, y) = t.vertex_point(v);
            while marked.marks.iter().any(|m| m.label == format!("w{next}")) {
                next += 1;
            }
            marked.mark(r, x, y, format!("w{next}"));
        }
    }
    let flat = FlatSurface::with_unit(&marked, &unit)?;
    let t = &flat.tiling;
    let rho = square_map(t, &marked, spec, sign);
    let (vmap, sector_map) = vertex_maps(t, &rho, sign);
    let mut weierstrass: Vec<WeierstrassPoint> = (0..vmap.len())
        .filter(|&v| vmap[v] == v)
        .map(|v| {
            let (rect, x, y) = t.vertex_point(v);
            let label = t.vertices[v].marks.iter().map(|&m| marked.marks[m].label.clone()).min().unwrap();
            WeierstrassPoint { vertex: v, label, rect, x, y, is_cone: t.vertices[v].is_cone() }
        })
        .collect();
    weierstrass.sort_by(|a, b| (a.label.len(), &a.label).cmp(&(b.label.len(), &b.label)));
    Ok(Involution { flat, sign, rho, vmap, sector_map, weierstrass })
}

impl Involution {
    pub fn genus(&self) -> usize {
        self.flat.genus()
    }

    /// Index in `table` of the image of link `i`.
    pub fn image_link(&self, table: &LinkTable, i: usize) -> Option<usize> {
        let l = &table.links[i];
        let d = if self.sign < 0 { (-l.dir.0, -l.dir.1) } else { l.dir };
        table.by_start.get(&(self.vmap[l.from], self.sector_map[l.from][l.out_sector], d)).copied()
    }

    /// Image of a point of square `s` in square-local coordinates.
    pub fn image_point(&self, s: usize, p: &(Scalar, Scalar)) -> (usize, (Scalar, Scalar)) {
        let q = if self.sign < 0 { (Scalar::one() - &p.0, Scalar::one() - &p.1) } else { p.clone() };
        (self.rho[s], q)
    }
}
