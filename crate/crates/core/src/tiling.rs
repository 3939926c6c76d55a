//! Refinement of a rational rectangle surface into congruent squares.
//!
//! The side of a square is the rational gcd of every rectangle dimension,
//! glue endpoint and marked-point coordinate, so glue endpoints and marked
//! points are square vertices. The surface is then described by the two
//! permutations "square to the right" and "square above".
//!
//! Corners are numbered `BL = 0, BR = 1, TR = 2, TL = 3`. Turning
//! counter-clockwise around a vertex visits `(s, BL) -> (left(s), BR) ->
//! (below(s), TR) -> (right(s), TL) -> (above(s), BL)`; each vertex is one
//! cycle of this rotation, stored starting at a `BL` corner so that sector
//! `j` always has corner type `j % 4`.

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::surface::{EdgeRef, Side, SurfaceComplex, SurfaceError};

pub const BL: usize = 0;
pub const BR: usize = 1;
pub const TR: usize = 2;
pub const TL: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub rect: usize,
    pub col: usize,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// `sectors[j]` is the square whose corner of type `j % 4` sits here.
    pub sectors: Vec<usize>,
    /// Indices of surface marked points located at this vertex.
    pub marks: Vec<usize>,
}

impl Vertex {
    /// Total angle in units of 2*pi.
    pub fn angle_multiple(&self) -> usize {
        self.sectors.len() / 4
    }

    pub fn is_cone(&self) -> bool {
        self.sectors.len() > 4
    }

    pub fn is_marked(&self) -> bool {
        !self.marks.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Tiling {
    pub unit: Scalar,
    pub cells: Vec<Cell>,
    pub right: Vec<usize>,
    pub top: Vec<usize>,
    pub left: Vec<usize>,
    pub bottom: Vec<usize>,
    pub vertices: Vec<Vertex>,
    /// `(vertex, sector)` of each corner of each square.
    pub corner: Vec<[(usize, usize); 4]>,
    rect_first: Vec<usize>,
    rect_cols: Vec<usize>,
}

/// Largest rational dividing every length that has to land on the grid.
pub fn grid_unit(s: &SurfaceComplex) -> Scalar {
    let mut g = Scalar::zero();
    for r in &s.rects {
        g = g.gcd(&r.width).gcd(&r.height);
    }
    for gl in &s.glues {
        for e in [&gl.a, &gl.b] {
            g = g.gcd(&e.start).gcd(&e.end);
        }
    }
    for m in &s.marks {
        g = g.gcd(&m.x).gcd(&m.y);
    }
    g
}

fn count(len: &Scalar, unit: &Scalar) -> usize {
    let q = len / unit;
    q.to_i64().expect("grid unit does not divide a length") as usize
}

impl Tiling {
    pub fn new(s: &SurfaceComplex) -> Result<Tiling, SurfaceError> {
        Tiling::with_unit(s, &grid_unit(s))
    }

    /// Tiling by squares of side `unit`, which must divide [`grid_unit`].
    pub fn with_unit(s: &SurfaceComplex, unit: &Scalar) -> Result<Tiling, SurfaceError> {
        s.ensure_valid()?;
        assert!((grid_unit(s) / unit).is_integer(), "unit must divide the grid");
        let mut cells = Vec::new();
        let mut rect_first = Vec::new();
        let mut rect_cols = Vec::new();
        for (ri, r) in s.rects.iter().enumerate() {
            let (cols, rows) = (count(&r.width, unit), count(&r.height, unit));
            rect_first.push(cells.len());
            rect_cols.push(cols);
            for row in 0..rows {
                for col in 0..cols {
                    cells.push(Cell { rect: ri, col, row });
                }
            }
        }
        let mut segs: BTreeMap<(usize, Side), Vec<(&EdgeRef, &EdgeRef)>> = BTreeMap::new();
        for g in &s.glues {
            segs.entry((g.a.rect, g.a.side)).or_default().push((&g.a, &g.b));
            segs.entry((g.b.rect, g.b.side)).or_default().push((&g.b, &g.a));
        }
        let n = cells.len();
        let idx = |rect: usize, col: usize, row: usize| rect_first[rect] + row * rect_cols[rect] + col;
        // Square across `side` from the unit cell starting at `pos`.
        let across = |rect: usize, side: Side, pos: Scalar| -> usize {
            let list = &segs[&(rect, side)];
            let (e, f) = list
                .iter()
                .find(|(e, _)| e.start <= pos && pos < e.end)
                .expect("validated sides are covered");
            let p = &f.start + (&pos - &e.start);
            let k = count(&p, unit);
            let rf = &s.rects[f.rect];
            match f.side {
                Side::Left => idx(f.rect, 0, k),
                Side::Bottom => idx(f.rect, k, 0),
                Side::Right => idx(f.rect, count(&rf.width, unit) - 1, k),
                Side::Top => idx(f.rect, k, count(&rf.height, unit) - 1),
            }
        };
        let mut right = vec![0; n];
        let mut top = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            let r = &s.rects[c.rect];
            let (cols, rows) = (rect_cols[c.rect], count(&r.height, unit));
            right[i] = if c.col + 1 < cols {
                i + 1
            } else {
                across(c.rect, Side::Right, unit * Scalar::int(c.row as i64))
            };
            top[i] = if c.row + 1 < rows {
                i + cols
            } else {
                across(c.rect, Side::Top, unit * Scalar::int(c.col as i64))
            };
        }
        let left = invert(&right);
        let bottom = invert(&top);
        let mut t = Tiling {
            unit: unit.clone(),
            cells,
            right,
            top,
            left,
            bottom,
            vertices: Vec::new(),
            corner: vec![[(usize::MAX, 0); 4]; n],
            rect_first,
            rect_cols,
        };
        t.build_vertices();
        for (mi, m) in s.marks.iter().enumerate() {
            let (sq, c) = t.corner_at_point(m.rect, &m.x, &m.y);
            let v = t.corner[sq][c].0;
            t.vertices[v].marks.push(mi);
        }
        Ok(t)
    }

    fn build_vertices(&mut self) {
        for s0 in 0..self.cells.len() {
            if self.corner[s0][BL].0 != usize::MAX {
                continue;
            }
            let v = self.vertices.len();
            let mut sectors = Vec::new();
            let (mut s, mut c) = (s0, BL);
            loop {
                self.corner[s][c] = (v, sectors.len());
                sectors.push(s);
                (s, c) = self.rotate_ccw(s, c);
                if (s, c) == (s0, BL) {
                    break;
                }
            }
            self.vertices.push(Vertex { sectors, marks: Vec::new() });
        }
    }

    /// The next corner counter-clockwise around the same vertex.
    pub fn rotate_ccw(&self, s: usize, c: usize) -> (usize, usize) {
        match c {
            BL => (self.left[s], BR),
            BR => (self.bottom[s], TR),
            TR => (self.right[s], TL),
            _ => (self.top[s], BL),
        }
    }

    pub fn num_squares(&self) -> usize {
        self.cells.len()
    }

    pub fn square(&self, rect: usize, col: usize, row: usize) -> usize {
        self.rect_first[rect] + row * self.rect_cols[rect] + col
    }

    /// A square and corner type at the grid point `(x, y)` of `rect`.
    pub fn corner_at_point(&self, rect: usize, x: &Scalar, y: &Scalar) -> (usize, usize) {
        let col = count(x, &self.unit);
        let row = count(y, &self.unit);
        let cols = self.rect_cols[rect];
        let rows = (self.rect_first.get(rect + 1).copied().unwrap_or(self.cells.len()) - self.rect_first[rect]) / cols;
        match (col < cols, row < rows) {
            (true, true) => (self.square(rect, col, row), BL),
            (false, true) => (self.square(rect, col - 1, row), BR),
            (true, false) => (self.square(rect, col, row - 1), TL),
            (false, false) => (self.square(rect, col - 1, row - 1), TR),
        }
    }

    pub fn vertex_at_point(&self, rect: usize, x: &Scalar, y: &Scalar) -> usize {
        let (s, c) = self.corner_at_point(rect, x, y);
        self.corner[s][c].0
    }

    /// Rectangle-local position of a square corner.
    pub fn corner_point(&self, s: usize, c: usize) -> (usize, Scalar, Scalar) {
        let cell = &self.cells[s];
        let dx = matches!(c, BR | TR) as usize;
        let dy = matches!(c, TR | TL) as usize;
        let u = &self.unit;
        (cell.rect, u * Scalar::int((cell.col + dx) as i64), u * Scalar::int((cell.row + dy) as i64))
    }

    /// Rectangle-local position of a vertex, from its first sector.
    pub fn vertex_point(&self, v: usize) -> (usize, Scalar, Scalar) {
        self.corner_point(self.vertices[v].sectors[0], BL)
    }

    /// Vertices that act as endpoints: cone points and marked points.
    pub fn stop_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].is_cone() || self.vertices[v].is_marked())
            .collect()
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![usize::MAX; p.len()];
    for (i, &j) in p.iter().enumerate() {
        assert_eq!(q[j], usize::MAX, "gluing is not a permutation");
        q[j] = i;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(w: i64, h: i64) -> SurfaceComplex {
        let mut s = SurfaceComplex::new();
        let r = s.add_rect(Scalar::int(w), Scalar::int(h));
        s.glue_sides(r, Side::Top, r);
        s.glue_sides(r, Side::Right, r);
        s
    }

    #[test]
    fn torus_has_regular_vertices_only() {
        let t = Tiling::new(&torus(3, 2)).unwrap();
        assert_eq!(t.num_squares(), 6);
        assert_eq!(t.vertices.len(), 6);
        assert!(t.vertices.iter().all(|v| v.sectors.len() == 4));
        for s in 0..6 {
            assert_eq!(t.left[t.right[s]], s);
            assert_eq!(t.bottom[t.top[s]], s);
        }
    }

    #[test]
    fn corner_lookup_agrees_with_rotation() {
        let t = Tiling::new(&torus(3, 2)).unwrap();
        let (one, two) = (Scalar::one(), Scalar::int(2));
        let v = t.vertex_at_point(0, &one, &one);
        assert_eq!(t.vertex_at_point(0, &Scalar::int(3), &one), t.vertex_at_point(0, &Scalar::zero(), &one));
        assert_eq!(t.vertex_at_point(0, &one, &two), t.vertex_at_point(0, &one, &Scalar::zero()));
        assert_eq!(t.corner[t.square(0, 1, 1)][BL].0, v);
        assert_eq!(t.corner[t.square(0, 0, 0)][TR].0, v);
    }
}
