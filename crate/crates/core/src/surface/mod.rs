//! Translation surfaces presented as axis-aligned rational rectangles whose
//! boundary segments are identified by translations.

mod io;
mod topology;

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

pub use io::{parse_surface, write_surface, ParseError};
pub use topology::{ConePoint, TopologyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Bottom => "bottom",
            Side::Right => "right",
            Side::Top => "top",
            Side::Left => "left",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Bottom => Side::Top,
            Side::Top => Side::Bottom,
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Side::Bottom | Side::Top)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub width: Scalar,
    pub height: Scalar,
}

impl Rect {
    pub fn new(width: Scalar, height: Scalar) -> Self {
        Rect { width, height }
    }

    pub fn side_len(&self, side: Side) -> &Scalar {
        if side.is_horizontal() {
            &self.width
        } else {
            &self.height
        }
    }
}

/// A sub-segment `[start, end]` of one rectangle side. Positions are measured
/// along the side from its left end (horizontal sides) or bottom end
/// (vertical sides).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub rect: usize,
    pub side: Side,
    pub start: Scalar,
    pub end: Scalar,
}

impl EdgeRef {
    pub fn new(rect: usize, side: Side, start: Scalar, end: Scalar) -> Self {
        EdgeRef { rect, side, start, end }
    }

    pub fn len(&self) -> Scalar {
        &self.end - &self.start
    }

    /// Rectangle-local coordinates of the point at `pos` along the side.
    pub fn point_at(&self, rect: &Rect, pos: &Scalar) -> (Scalar, Scalar) {
        match self.side {
            Side::Bottom => (pos.clone(), Scalar::zero()),
            Side::Top => (pos.clone(), rect.height.clone()),
            Side::Left => (Scalar::zero(), pos.clone()),
            Side::Right => (rect.width.clone(), pos.clone()),
        }
    }
}

/// Identification of two segments. `flip` reverses orientation, which is
/// never a translation and is only representable so it can be reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glue {
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub flip: bool,
}

impl Glue {
    pub fn new(a: EdgeRef, b: EdgeRef) -> Self {
        Glue { a, b, flip: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub rect: usize,
    pub x: Scalar,
    pub y: Scalar,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SurfaceComplex {
    pub rects: Vec<Rect>,
    pub glues: Vec<Glue>,
    pub marks: Vec<MarkedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonPositiveRect { rect: usize },
    UnknownRect { glue: usize, rect: usize },
    BadSegment { glue: usize },
    Uncovered { rect: usize, side: Side, from: Scalar, to: Scalar },
    Overlap { rect: usize, side: Side, at: Scalar },
    LengthMismatch { glue: usize },
    NotTranslation { glue: usize },
    Disconnected { components: usize },
    MarkOutside { mark: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveRect { rect } => write!(f, "rectangle {rect} has a non-positive side"),
            Violation::UnknownRect { glue, rect } => write!(f, "glue {glue} references missing rectangle {rect}"),
            Violation::BadSegment { glue } => write!(f, "glue {glue} has a segment outside its side"),
            Violation::Uncovered { rect, side, from, to } => {
                write!(f, "uncovered segment {rect}.{side}[{from},{to}]")
            }
            Violation::Overlap { rect, side, at } => write!(f, "overlapping glues on {rect}.{side} at {at}"),
            Violation::LengthMismatch { glue } => write!(f, "glue {glue} pairs segments of different length"),
            Violation::NotTranslation { glue } => write!(f, "glue {glue} is not a translation"),
            Violation::Disconnected { components } => write!(f, "cell complex has {components} components"),
            Violation::MarkOutside { mark } => write!(f, "marked point {mark} lies outside its rectangle"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SurfaceError {
    #[error("invalid surface: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSurface(Vec<Violation>),
    #[error("genus from the cell complex ({euler}) disagrees with genus from cone angles ({angles})")]
    InconsistentTopology { euler: i64, angles: i64 },
    #[error("scale factor must be positive")]
    NonPositiveScale,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

impl SurfaceComplex {
    pub fn new() -> Self {
        SurfaceComplex::default()
    }

    pub fn add_rect(&mut self, width: Scalar, height: Scalar) -> usize {
        self.rects.push(Rect::new(width, height));
        self.rects.len() - 1
    }

    pub fn glue(&mut self, a: EdgeRef, b: EdgeRef) {
        self.glues.push(Glue::new(a, b));
    }

    /// Glue the whole `side` of rectangle `a` to the whole opposite side of `b`.
    pub fn glue_sides(&mut self, a: usize, side: Side, b: usize) {
        let len = self.rects[a].side_len(side).clone();
        self.glue(
            EdgeRef::new(a, side, Scalar::zero(), len.clone()),
            EdgeRef::new(b, side.opposite(), Scalar::zero(), len),
        );
    }

    pub fn mark(&mut self, rect: usize, x: Scalar, y: Scalar, label: impl Into<String>) {
        self.marks.push(MarkedPoint { rect, x, y, label: label.into() });
    }

    pub fn area(&self) -> Scalar {
        self.rects.iter().map(|r| &r.width * &r.height).sum()
    }

    /// Every violation of the gluing invariants; empty for a valid surface.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, r) in self.rects.iter().enumerate() {
            if !r.width.is_positive() || !r.height.is_positive() {
                out.push(Violation::NonPositiveRect { rect: i });
            }
        }
        let mut per_side: BTreeMap<(usize, Side), Vec<(Scalar, Scalar)>> = BTreeMap::new();
        let mut uf = UnionFind::new(self.rects.len());
        for (gi, g) in self.glues.iter().enumerate() {
            let mut ok = true;
            for e in [&g.a, &g.b] {
                if e.rect >= self.rects.len() {
                    out.push(Violation::UnknownRect { glue: gi, rect: e.rect });
                    ok = false;
                    continue;
                }
                let len = self.rects[e.rect].side_len(e.side);
                if e.start.is_negative() || &e.end > len || e.start >= e.end {
                    out.push(Violation::BadSegment { glue: gi });
                    ok = false;
                    continue;
                }
                per_side.entry((e.rect, e.side)).or_default().push((e.start.clone(), e.end.clone()));
            }
            if !ok {
                continue;
            }
            if g.a.len() != g.b.len() {
                out.push(Violation::LengthMismatch { glue: gi });
            }
            if g.flip || g.b.side != g.a.side.opposite() {
                out.push(Violation::NotTranslation { glue: gi });
            }
            uf.union(g.a.rect, g.b.rect);
        }
        for (ri, r) in self.rects.iter().enumerate() {
            if !r.width.is_positive() || !r.height.is_positive() {
                continue;
            }
            for side in [Side::Bottom, Side::Right, Side::Top, Side::Left] {
                let len = r.side_len(side).clone();
                let mut segs = per_side.remove(&(ri, side)).unwrap_or_default();
                segs.sort();
                let mut cursor = Scalar::zero();
                for (s, e) in segs {
                    if s > cursor {
                        out.push(Violation::Uncovered { rect: ri, side, from: cursor.clone(), to: s.clone() });
                    } else if s < cursor {
                        out.push(Violation::Overlap { rect: ri, side, at: s.clone() });
                    }
                    if e > cursor {
                        cursor = e;
                    }
                }
                if cursor < len {
                    out.push(Violation::Uncovered { rect: ri, side, from: cursor, to: len });
                }
            }
        }
        if !self.rects.is_empty() {
            let comps = uf.count();
            if comps > 1 {
                out.push(Violation::Disconnected { components: comps });
            }
        }
        for (mi, m) in self.marks.iter().enumerate() {
            let inside = self.rects.get(m.rect).is_some_and(|r| {
                !m.x.is_negative() && !m.y.is_negative() && m.x <= r.width && m.y <= r.height
            });
            if !inside {
                out.push(Violation::MarkOutside { mark: mi });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), SurfaceError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(SurfaceError::InvalidSurface(v))
        }
    }

    /// Multiply every length by `c`.
    pub fn scale(&self, c: &Scalar) -> Result<SurfaceComplex, SurfaceError> {
        if !c.is_positive() {
            return Err(SurfaceError::NonPositiveScale);
        }
        let e = |r: &EdgeRef| EdgeRef::new(r.rect, r.side, &r.start * c, &r.end * c);
        Ok(SurfaceComplex {
            rects: self.rects.iter().map(|r| Rect::new(&r.width * c, &r.height * c)).collect(),
            glues: self.glues.iter().map(|g| Glue { a: e(&g.a), b: e(&g.b), flip: g.flip }).collect(),
            marks: self
                .marks
                .iter()
                .map(|m| MarkedPoint { rect: m.rect, x: &m.x * c, y: &m.y * c, label: m.label.clone() })
                .collect(),
        })
    }

    /// Append a disjoint copy of `other`, returning the rectangle index offset.
    pub fn append(&mut self, other: &SurfaceComplex) -> usize {
        let off = self.rects.len();
        self.rects.extend(other.rects.iter().cloned());
        let shift = |e: &EdgeRef| EdgeRef::new(e.rect + off, e.side, e.start.clone(), e.end.clone());
        self.glues.extend(other.glues.iter().map(|g| Glue { a: shift(&g.a), b: shift(&g.b), flip: g.flip }));
        self.marks.extend(other.marks.iter().map(|m| MarkedPoint {
            rect: m.rect + off,
            x: m.x.clone(),
            y: m.y.clone(),
            label: m.label.clone(),
        }));
        off
    }

    /// Vertex classes of the rectangle cell complex: glue endpoints modulo
    /// the identifications. Returns the class count.
    pub(crate) fn cell_vertex_count(&self) -> usize {
        let mut ids: BTreeMap<(usize, Scalar, Scalar), usize> = BTreeMap::new();
        let mut pairs = Vec::new();
        let id_of = |rect: usize, p: (Scalar, Scalar), ids: &mut BTreeMap<_, usize>| {
            let n = ids.len();
            *ids.entry((rect, p.0, p.1)).or_insert(n)
        };
        for g in &self.glues {
            let ra = &self.rects[g.a.rect];
            let rb = &self.rects[g.b.rect];
            let a0 = id_of(g.a.rect, g.a.point_at(ra, &g.a.start), &mut ids);
            let a1 = id_of(g.a.rect, g.a.point_at(ra, &g.a.end), &mut ids);
            let b0 = id_of(g.b.rect, g.b.point_at(rb, &g.b.start), &mut ids);
            let b1 = id_of(g.b.rect, g.b.point_at(rb, &g.b.end), &mut ids);
            pairs.push((a0, b0));
            pairs.push((a1, b1));
        }
        let mut uf = UnionFind::new(ids.len());
        for (a, b) in pairs {
            uf.union(a, b);
        }
        uf.count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unit_torus() -> SurfaceComplex {
        let mut s = SurfaceComplex::new();
        let r = s.add_rect(Scalar::one(), Scalar::one());
        s.glue_sides(r, Side::Top, r);
        s.glue_sides(r, Side::Right, r);
        s
    }

    #[test]
    fn flat_torus_is_valid() {
        assert!(unit_torus().validate().is_empty());
        assert_eq!(unit_torus().cell_vertex_count(), 1);
    }

    #[test]
    fn missing_glue_leaves_both_sides_uncovered() {
        let mut s = unit_torus();
        s.glues.remove(1);
        let v = s.validate();
        assert_eq!(v.len(), 2, "{v:?}");
        assert!(v.iter().all(|x| matches!(x, Violation::Uncovered { .. })));
    }

    #[test]
    fn one_side_unglued() {
        let mut s = SurfaceComplex::new();
        let a = s.add_rect(Scalar::one(), Scalar::one());
        let b = s.add_rect(Scalar::one(), Scalar::one());
        s.glue_sides(a, Side::Top, b);
        s.glue_sides(b, Side::Top, a);
        s.glue_sides(a, Side::Right, a);
        s.glue_sides(b, Side::Right, a);
        // a.left is glued to b.right already; b.left is now uncovered
        let v = s.validate();
        assert_eq!(v, vec![
            Violation::Overlap { rect: a, side: Side::Left, at: Scalar::zero() },
            Violation::Uncovered { rect: b, side: Side::Left, from: Scalar::zero(), to: Scalar::one() },
        ]);
    }

    #[test]
    fn flip_and_rotation_rejected() {
        let mut s = unit_torus();
        s.glues[0].flip = true;
        assert!(s.validate().contains(&Violation::NotTranslation { glue: 0 }));
        let mut s = unit_torus();
        s.glues[1].b.side = Side::Top;
        assert!(s.validate().iter().any(|v| matches!(v, Violation::NotTranslation { .. })));
    }

    #[test]
    fn disconnected_reported() {
        let mut s = unit_torus();
        s.append(&unit_torus());
        assert_eq!(s.validate(), vec![Violation::Disconnected { components: 2 }]);
    }

    #[test]
    fn scale_rejects_non_positive() {
        assert!(matches!(unit_torus().scale(&Scalar::zero()), Err(SurfaceError::NonPositiveScale)));
        assert_eq!(unit_torus().scale(&Scalar::int(2)).unwrap().area(), Scalar::int(4));
    }
}
