//! Curves made of saddle connections, drawn as chords in the squares, and
//! exact crossing tests between them.

use super::trace::{Chord, Link, Walker};
use super::{FlatSurface, GeodesicError};
use crate::scalar::Scalar;

type Pt = (Scalar, Scalar);

/// A piecewise straight curve on the surface.
#[derive(Clone, Debug, Default)]
pub struct Curve {
    pub chords: Vec<Chord>,
    /// Vertices met by the curve, endpoints included, in order.
    pub vertices: Vec<usize>,
}

impl FlatSurface {
    /// Chords of a link, recomputed by walking it again.
    pub fn link_chords(&self, l: &Link) -> Result<Vec<Chord>, GeodesicError> {
        let mut w = Walker::new(&self.tiling, self.budget);
        w.record_chords = true;
        w.stop_at_max = true;
        let t = &self.tiling;
        let stop = |u: usize| t.vertices[u].is_cone();
        let walk = w.walk(l.from, l.out_sector, l.dir, l.mult, &stop)?.expect("link replays");
        debug_assert_eq!(walk.to, l.to);
        Ok(walk.chords)
    }

    pub fn curve(&self, links: &[Link]) -> Result<Curve, GeodesicError> {
        let mut c = Curve::default();
        for (i, l) in links.iter().enumerate() {
            if i == 0 {
                c.vertices.push(l.from);
            }
            c.vertices.extend(&l.passed);
            c.vertices.push(l.to);
            c.chords.extend(self.link_chords(l)?);
        }
        Ok(c)
    }

    /// Chords lying on a square edge, copied into the neighbouring square.
    fn with_edge_copies(&self, chords: &[Chord]) -> Vec<Chord> {
        let t = &self.tiling;
        let (zero, one) = (Scalar::zero(), Scalar::one());
        let mut out = chords.to_vec();
        for c in chords {
            let s = c.square;
            let shift = |p: &Pt, dx: i64, dy: i64| (&p.0 + Scalar::int(dx), &p.1 + Scalar::int(dy));
            let copy = |sq: usize, dx: i64, dy: i64| Chord { square: sq, a: shift(&c.a, dx, dy), b: shift(&c.b, dx, dy) };
            if c.a.0 == c.b.0 && c.a.0 == one {
                out.push(copy(t.right[s], -1, 0));
            } else if c.a.0 == c.b.0 && c.a.0 == zero {
                out.push(copy(t.left[s], 1, 0));
            } else if c.a.1 == c.b.1 && c.a.1 == one {
                out.push(copy(t.top[s], 0, -1));
            } else if c.a.1 == c.b.1 && c.a.1 == zero {
                out.push(copy(t.bottom[s], 0, 1));
            }
        }
        out
    }

    /// Whether two chord sets share a point other than a square corner.
    /// Passing `b = None` tests a single set against itself.
    pub fn chords_cross(&self, a: &[Chord], b: Option<&[Chord]>) -> bool {
        let a = self.with_edge_copies(a);
        let b_own;
        let b: &[Chord] = match b {
            Some(b) => {
                b_own = self.with_edge_copies(b);
                &b_own
            }
            None => &a,
        };
        let mut by_square: Vec<Vec<usize>> = vec![Vec::new(); self.tiling.num_squares()];
        for (i, c) in b.iter().enumerate() {
            by_square[c.square].push(i);
        }
        let same = std::ptr::eq(a.as_ptr(), b.as_ptr());
        for (i, c) in a.iter().enumerate() {
            for &j in &by_square[c.square] {
                if same && j <= i {
                    continue;
                }
                if segments_meet_off_corners(&c.a, &c.b, &b[j].a, &b[j].b) {
                    return true;
                }
            }
        }
        false
    }
}

fn orient(a: &Pt, b: &Pt, c: &Pt) -> i32 {
    let v = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn is_corner(p: &Pt) -> bool {
    let unit = |x: &Scalar| x.is_zero() || *x == Scalar::one();
    unit(&p.0) && unit(&p.1)
}

/// Closed segments `ab` and `cd` inside one square meet at a point that is
/// not a corner of the square.
pub fn segments_meet_off_corners(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 == 0 && o2 == 0 {
        // Collinear: the overlap is an interval of the common line.
        let key = |p: &Pt| if a.0 != b.0 { p.0.clone() } else { p.1.clone() };
        let (mut s1, mut e1, mut s2, mut e2) = (key(a), key(b), key(c), key(d));
        let (p1, p2) = ((a, b), (c, d));
        if s1 > e1 {
            std::mem::swap(&mut s1, &mut e1);
        }
        if s2 > e2 {
            std::mem::swap(&mut s2, &mut e2);
        }
        let lo = s1.clone().max(s2.clone());
        let hi = e1.clone().min(e2.clone());
        if lo > hi {
            return false;
        }
        if lo < hi {
            return true;
        }
        // Single touching point: find which endpoint it is.
        let pts = [p1.0, p1.1, p2.0, p2.1];
        let p = pts.iter().find(|p| key(p) == lo).unwrap();
        return !is_corner(p);
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return false;
    }
    // The segments meet in exactly one point.
    let p = if o1 == 0 {
        c.clone()
    } else if o2 == 0 {
        d.clone()
    } else if o3 == 0 {
        a.clone()
    } else if o4 == 0 {
        b.clone()
    } else {
        // Proper crossing: strictly inside both, hence not a corner.
        return true;
    };
    !is_corner(&p)
}
