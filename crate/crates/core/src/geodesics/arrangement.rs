//! Connected regions of the complement of a system of curves.
//!
//! The curves must meet only at square corners, so inside a square every
//! chord runs from boundary to boundary and every cell of the square touches
//! the boundary along an interval. A cell is named by its side of each chord
//! that is not on the boundary; cells of neighbouring squares are merged
//! across every edge interval not covered by a chord lying on that edge.

use std::collections::{BTreeSet, HashMap};

use super::trace::Chord;
use super::FlatSurface;
use crate::scalar::Scalar;
use crate::surface::UnionFind;
use crate::tiling::{Tiling, BL, BR, TL, TR};

type Pt = (Scalar, Scalar);

// Edges of a square, as (side index, point at parameter t).
const BOTTOM: usize = 0;
const RIGHT: usize = 1;
const TOP: usize = 2;
const LEFT: usize = 3;

fn edge_point(e: usize, t: &Scalar) -> Pt {
    match e {
        BOTTOM => (t.clone(), Scalar::zero()),
        RIGHT => (Scalar::one(), t.clone()),
        TOP => (t.clone(), Scalar::one()),
        _ => (Scalar::zero(), t.clone()),
    }
}

/// Edge of the unit square containing `p` with the parameter of `p`.
fn edges_of(p: &Pt) -> Vec<(usize, Scalar)> {
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let mut out = Vec::new();
    if p.1 == zero {
        out.push((BOTTOM, p.0.clone()));
    }
    if p.0 == one {
        out.push((RIGHT, p.1.clone()));
    }
    if p.1 == one {
        out.push((TOP, p.0.clone()));
    }
    if p.0 == zero {
        out.push((LEFT, p.1.clone()));
    }
    out
}

fn on_edge(c: &Chord) -> Option<(usize, Scalar, Scalar)> {
    let ea = edges_of(&c.a);
    let eb = edges_of(&c.b);
    for (e, ta) in &ea {
        if let Some((_, tb)) = eb.iter().find(|(f, _)| f == e) {
            let (lo, hi) = if ta < tb { (ta.clone(), tb.clone()) } else { (tb.clone(), ta.clone()) };
            return Some((*e, lo, hi));
        }
    }
    None
}

fn orient(a: &Pt, b: &Pt, c: &Pt) -> i8 {
    let v = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn half() -> Scalar {
    Scalar::new(1, 2)
}

struct SquareData {
    inner: Vec<(Pt, Pt)>,
    breaks: [BTreeSet<Scalar>; 4],
    blocked: [Vec<(Scalar, Scalar)>; 4],
    cells: HashMap<Vec<i8>, usize>,
}

impl SquareData {
    fn signs(&self, p: &Pt) -> Vec<i8> {
        self.inner.iter().map(|(a, b)| orient(a, b, p)).collect()
    }

    fn intervals(&self, e: usize) -> Vec<(Scalar, Scalar)> {
        let v: Vec<&Scalar> = self.breaks[e].iter().collect();
        v.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    }
}

pub struct Arrangement {
    squares: Vec<SquareData>,
    region_of: Vec<usize>,
    /// One sample point per region.
    pub samples: Vec<(usize, Pt)>,
}

impl FlatSurface {
    pub fn arrangement(&self, chords: &[Chord]) -> Arrangement {
        let t = &self.tiling;
        let n = t.num_squares();
        let mut squares: Vec<SquareData> = (0..n)
            .map(|_| SquareData {
                inner: Vec::new(),
                breaks: std::array::from_fn(|_| BTreeSet::from([Scalar::zero(), Scalar::one()])),
                blocked: std::array::from_fn(|_| Vec::new()),
                cells: HashMap::new(),
            })
            .collect();
        let mut add = |s: usize, c: &Chord| {
            let sq = &mut squares[s];
            for p in [&c.a, &c.b] {
                for (e, tp) in edges_of(p) {
                    sq.breaks[e].insert(tp);
                }
            }
            match on_edge(c) {
                Some((e, lo, hi)) => sq.blocked[e].push((lo, hi)),
                None => sq.inner.push((c.a.clone(), c.b.clone())),
            }
        };
        for c in chords {
            add(c.square, c);
            // A chord on an edge also bounds the square across that edge.
            if let Some((e, _, _)) = on_edge(c) {
                let (s2, dx, dy) = match e {
                    BOTTOM => (t.bottom[c.square], 0, 1),
                    RIGHT => (t.right[c.square], -1, 0),
                    TOP => (t.top[c.square], 0, -1),
                    _ => (t.left[c.square], 1, 0),
                };
                let sh = |p: &Pt| (&p.0 + Scalar::int(dx), &p.1 + Scalar::int(dy));
                add(s2, &Chord { square: s2, a: sh(&c.a), b: sh(&c.b) });
            }
        }
        // Cells of each square, found from its boundary intervals.
        let mut offsets = Vec::with_capacity(n);
        let mut total = 0;
        let mut samples = Vec::new();
        for (s, sq) in squares.iter_mut().enumerate() {
            offsets.push(total);
            for e in 0..4 {
                for (a, b) in sq.intervals(e) {
                    let m = edge_point(e, &((&a + &b) * half()));
                    let key = sq.signs(&m);
                    if !sq.cells.contains_key(&key) {
                        sq.cells.insert(key, total);
                        samples.push((s, m));
                        total += 1;
                    }
                }
            }
        }
        let mut uf = UnionFind::new(total);
        for s in 0..n {
            for (e, f, s2) in [(RIGHT, LEFT, t.right[s]), (TOP, BOTTOM, t.top[s])] {
                let (x, y) = (&squares[s], &squares[s2]);
                let mut cuts = x.breaks[e].clone();
                cuts.extend(y.breaks[f].iter().cloned());
                let cuts: Vec<Scalar> = cuts.into_iter().collect();
                for w in cuts.windows(2) {
                    let covered = |bl: &[(Scalar, Scalar)]| bl.iter().any(|(lo, hi)| *lo <= w[0] && w[1] <= *hi);
                    if covered(&x.blocked[e]) || covered(&y.blocked[f]) {
                        continue;
                    }
                    let mid = (&w[0] + &w[1]) * half();
                    let cx = x.cells[&x.signs(&edge_point(e, &mid))];
                    let cy = y.cells[&y.signs(&edge_point(f, &mid))];
                    uf.union(cx, cy);
                }
            }
        }
        let mut ids = HashMap::new();
        let mut region_of = vec![0; total];
        let mut reps = Vec::new();
        for (c, sample) in samples.into_iter().enumerate() {
            let r = uf.find(c);
            let next = ids.len();
            let id = *ids.entry(r).or_insert(next);
            if id == reps.len() {
                reps.push(sample);
            }
            region_of[c] = id;
        }
        Arrangement { squares, region_of, samples: reps }
    }
}

impl Arrangement {
    pub fn region_count(&self) -> usize {
        self.samples.len()
    }

    /// Region containing a point of square `s` that lies on no chord.
    pub fn region_at(&self, s: usize, p: &Pt) -> usize {
        let sq = &self.squares[s];
        self.region_of[sq.cells[&sq.signs(p)]]
    }

    /// Region next to corner `c` of square `s`, read on the adjacent part of
    /// the square's boundary.
    pub fn region_at_corner(&self, s: usize, c: usize) -> usize {
        let sq = &self.squares[s];
        let (e, from_start) = match c {
            BL => (BOTTOM, true),
            BR => (RIGHT, true),
            TR => (TOP, false),
            _ => (LEFT, false),
        };
        debug_assert!(c == TL || c == BL || c == BR || c == TR);
        let iv = sq.intervals(e);
        let (a, b) = if from_start { iv.first().unwrap() } else { iv.last().unwrap() };
        self.region_at(s, &edge_point(e, &((a + b) * half())))
    }

    /// Regions to the left and right of a chord of the curve system.
    pub fn sides(&self, t: &Tiling, c: &Chord) -> (usize, usize) {
        let sq = &self.squares[c.square];
        let mid = ((&c.a.0 + &c.b.0) * half(), (&c.a.1 + &c.b.1) * half());
        if let Some((e, _, _)) = on_edge(c) {
            let inside = self.region_at(c.square, &mid);
            let (s2, p2) = match e {
                BOTTOM => (t.bottom[c.square], (mid.0.clone(), Scalar::one())),
                RIGHT => (t.right[c.square], (Scalar::zero(), mid.1.clone())),
                TOP => (t.top[c.square], (mid.0.clone(), Scalar::zero())),
                _ => (t.left[c.square], (Scalar::one(), mid.1.clone())),
            };
            let outside = self.region_at(s2, &p2);
            let centre = (half(), half());
            return if orient(&c.a, &c.b, &centre) > 0 { (inside, outside) } else { (outside, inside) };
        }
        let k = sq
            .inner
            .iter()
            .position(|(a, b)| (a == &c.a && b == &c.b) || (a == &c.b && b == &c.a))
            .expect("chord belongs to the arrangement");
        let mut key = sq.signs(&mid);
        let flip = if sq.inner[k].0 == c.a { 1 } else { -1 };
        key[k] = flip;
        let left = self.region_of[sq.cells[&key]];
        key[k] = -flip;
        let right = self.region_of[sq.cells[&key]];
        (left, right)
    }
}

#[cfg(test)]
mod tests {
    use crate::geodesics::FlatSurface;
    use crate::scalar::Scalar;
    use crate::surface::{Side, SurfaceComplex};

    fn torus(w: i64, h: i64) -> FlatSurface {
        let mut s = SurfaceComplex::new();
        let r = s.add_rect(Scalar::int(w), Scalar::int(h));
        s.glue_sides(r, Side::Right, r);
        s.glue_sides(r, Side::Top, r);
        s.mark(r, Scalar::zero(), Scalar::zero(), "o");
        FlatSurface::new(&s).unwrap()
    }

    #[test]
    fn one_curve_does_not_separate_a_torus() {
        let f = torus(3, 2);
        let o = f.marked_vertex("o").unwrap();
        let table = f.links(&f.all_stops(), &Scalar::int(20)).unwrap();
        let hor = table.links.iter().find(|l| l.from == o && l.vec() == (3, 0)).unwrap();
        let ver = table.links.iter().find(|l| l.from == o && l.vec() == (0, 2)).unwrap();
        let ch = f.link_chords(hor).unwrap();
        assert_eq!(f.arrangement(&[]).region_count(), 1);
        assert_eq!(f.arrangement(&ch).region_count(), 1);
        let mut both = ch.clone();
        both.extend(f.link_chords(ver).unwrap());
        assert_eq!(f.arrangement(&both).region_count(), 1);
        // A diagonal through the interior: still one region; its sides agree.
        let diag = table.links.iter().find(|l| l.from == o && l.vec() == (3, 2)).unwrap();
        let dc = f.link_chords(diag).unwrap();
        let a = f.arrangement(&dc);
        let (l, r) = a.sides(&f.tiling, &dc[0]);
        assert_eq!(l, r);
    }

    #[test]
    fn two_parallel_curves_cut_a_torus_in_two() {
        let mut s = SurfaceComplex::new();
        let r = s.add_rect(Scalar::int(3), Scalar::int(2));
        s.glue_sides(r, Side::Right, r);
        s.glue_sides(r, Side::Top, r);
        s.mark(r, Scalar::zero(), Scalar::zero(), "o");
        s.mark(r, Scalar::zero(), Scalar::one(), "p");
        let f = FlatSurface::new(&s).unwrap();
        let table = f.links(&f.all_stops(), &Scalar::int(10)).unwrap();
        let mut ch = Vec::new();
        for v in [f.marked_vertex("o").unwrap(), f.marked_vertex("p").unwrap()] {
            let l = table.links.iter().find(|l| l.from == v && l.vec() == (3, 0)).unwrap();
            ch.extend(f.link_chords(l).unwrap());
        }
        let a = f.arrangement(&ch);
        assert_eq!(a.region_count(), 2);
        let (l, r) = a.sides(&f.tiling, &ch[0]);
        assert_ne!(l, r);
    }
}
