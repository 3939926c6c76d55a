//! Shortest geodesic paths between stop points and shortest geodesic loops.
//!
//! A locally shortest path is a chain of saddle connections turning by at
//! least `pi` on both sides at every interior cone point. The search is a
//! label-correcting Dijkstra over links, ordered by floating point length
//! and settled by exact comparison when two lengths are close.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::closed::OrdF;
use super::rays::is_geodesic_turn;
use super::trace::{Link, LinkTable};
use super::{FlatSurface, GeodesicError, SaddleConnection};
use crate::scalar::Scalar;
use crate::surd::Surd;
use crate::builder::SlitPiece;
use crate::surface::SurfaceComplex;

#[derive(Clone, Debug)]
pub struct GeodesicPath {
    pub from: usize,
    pub to: usize,
    pub links: Vec<Link>,
    /// Indices of `links` in the table the path was found in.
    pub ids: Vec<usize>,
    pub segments: Vec<SaddleConnection>,
    pub length: Surd,
}

impl GeodesicPath {
    pub fn length_sq(&self) -> Surd {
        self.length.square()
    }
}

const CLOSE: f64 = 1e-9;

impl FlatSurface {
    /// Shortest geodesic path from `p` to `q` of squared length below
    /// `bound_sq` whose interior avoids the vertices in `avoid`. With
    /// `p == q` this is the shortest non-constant loop at `p`, with no
    /// angle condition at `p`.
    pub fn shortest_path(
        &self,
        p: usize,
        q: usize,
        bound_sq: &Scalar,
        avoid: &[usize],
    ) -> Result<Option<GeodesicPath>, GeodesicError> {
        let mut stops = self.cone_stops();
        stops[p] = true;
        stops[q] = true;
        for &a in avoid {
            stops[a] = true;
        }
        let table = self.links(&stops, bound_sq)?;
        self.shortest_path_in(&table, p, q, bound_sq, avoid)
    }

    /// As [`FlatSurface::shortest_path`] over a prebuilt table whose stops
    /// include `p`, `q`, `avoid` and every cone point. Any other stop is
    /// crossed subject to the same turn condition, which is straight at a
    /// regular point.
    pub fn shortest_path_in(
        &self,
        table: &LinkTable,
        p: usize,
        q: usize,
        bound_sq: &Scalar,
        avoid: &[usize],
    ) -> Result<Option<GeodesicPath>, GeodesicError> {
        let t = &self.tiling;
        let blocked = |v: usize| avoid.contains(&v) && v != q;
        let clear = |l: &Link| !l.passed.iter().any(|&v| blocked(v) || v == p || v == q);
        let limit = self.to_grid(bound_sq).to_f64().sqrt() * (1.0 + CLOSE);
        let exact_len = |l: &Link| self.length(l.norm_sq());

        let m = table.links.len();
        let mut best_f = vec![f64::INFINITY; m];
        let mut best: Vec<Option<Surd>> = vec![None; m];
        let mut pred = vec![usize::MAX; m];
        let mut heap = BinaryHeap::new();
        let improves = |nf: f64, ne: &Surd, of: f64, oe: &Option<Surd>| match oe {
            None => true,
            Some(oe) => nf < of - CLOSE * of.max(1.0) || ((nf - of).abs() <= CLOSE * of.max(1.0) && ne < oe),
        };
        for &i in &table.from_vertex[p] {
            let l = &table.links[i];
            if !clear(l) || blocked(l.to) {
                continue;
            }
            let (lf, le) = (l.len_f64(), exact_len(l));
            if lf < limit && improves(lf, &le, best_f[i], &best[i]) {
                best_f[i] = lf;
                best[i] = Some(le);
                heap.push((Reverse(OrdF(lf)), i));
            }
        }
        let mut steps = 0u64;
        while let Some((Reverse(OrdF(d)), i)) = heap.pop() {
            steps += 1;
            if steps > self.budget {
                return Err(GeodesicError::BudgetExhausted(steps));
            }
            if d > best_f[i] {
                continue;
            }
            let l = &table.links[i];
            let v = l.to;
            if v == q || v == p || blocked(v) {
                continue;
            }
            let n = t.vertices[v].sectors.len();
            let cur = best[i].clone().unwrap();
            for &j in &table.from_vertex[v] {
                let nl = &table.links[j];
                if !clear(nl) || blocked(nl.to) || !is_geodesic_turn(n, &l.in_ray(), &nl.out_ray()) {
                    continue;
                }
                let nf = d + nl.len_f64();
                if nf >= limit {
                    continue;
                }
                let ne = &cur + &exact_len(nl);
                if improves(nf, &ne, best_f[j], &best[j]) {
                    best_f[j] = nf;
                    best[j] = Some(ne);
                    pred[j] = i;
                    heap.push((Reverse(OrdF(nf)), j));
                }
            }
        }
        let bound = Surd::rational(bound_sq);
        let mut winner: Option<usize> = None;
        for i in 0..m {
            if table.links[i].to != q || best[i].is_none() {
                continue;
            }
            let e = best[i].as_ref().unwrap();
            if e.square() >= bound {
                continue;
            }
            let better = match winner {
                None => true,
                Some(w) => {
                    let we = best[w].as_ref().unwrap();
                    e < we || (e == we && table.links[i].vec() < table.links[w].vec())
                }
            };
            if better {
                winner = Some(i);
            }
        }
        let Some(mut i) = winner else { return Ok(None) };
        let length = best[i].clone().unwrap();
        let mut ids = vec![i];
        while pred[i] != usize::MAX {
            i = pred[i];
            ids.push(i);
        }
        ids.reverse();
        let links: Vec<Link> = ids.iter().map(|&i| table.links[i].clone()).collect();
        Ok(Some(GeodesicPath {
            from: p,
            to: q,
            segments: links.iter().map(|l| self.connection(l)).collect(),
            links,
            ids,
            length,
        }))
    }

    /// Exact distance between two stop vertices, `None` when it is at least
    /// `sqrt(bound_sq)`.
    pub fn distance(&self, p: usize, q: usize, bound_sq: &Scalar) -> Result<Option<GeodesicPath>, GeodesicError> {
        if p == q {
            return Ok(Some(GeodesicPath { from: p, to: q, links: Vec::new(), ids: Vec::new(), segments: Vec::new(), length: Surd::zero() }));
        }
        self.shortest_path(p, q, bound_sq, &[])
    }

    pub fn shortest_loop(&self, p: usize, bound_sq: &Scalar) -> Result<Option<GeodesicPath>, GeodesicError> {
        self.shortest_path(p, p, bound_sq, &[])
    }
}

/// Distance between two labelled marked points.
pub fn distance(surface: &SurfaceComplex, p: &str, q: &str, bound_sq: &Scalar) -> Result<Option<GeodesicPath>, GeodesicError> {
    let f = FlatSurface::new(surface)?;
    let (a, b) = (f.marked_vertex(p)?, f.marked_vertex(q)?);
    f.distance(a, b, bound_sq)
}

pub fn shortest_loop_at(surface: &SurfaceComplex, p: &str, bound_sq: &Scalar) -> Result<Option<GeodesicPath>, GeodesicError> {
    let f = FlatSurface::new(surface)?;
    let a = f.marked_vertex(p)?;
    f.shortest_loop(a, bound_sq)
}

/// The closed-up surface of `piece` with both endpoints of slit `n` marked
/// `s{n}a` and `s{n}b`.
pub fn mark_slit_endpoints(piece: &SlitPiece) -> SurfaceComplex {
    let mut s = piece.closed();
    for sl in &piece.slits {
        let e = &sl.lower;
        let rect = s.rects[e.rect].clone();
        for (pos, tag) in [(&e.start, 'a'), (&e.end, 'b')] {
            let (x, y) = e.point_at(&rect, pos);
            s.mark(e.rect, x, y, format!("s{}{tag}", sl.number));
        }
    }
    s
}

/// Shortest distance on the closed-up surface between endpoints of two
/// distinct slits, `None` when every such distance reaches `sqrt(bound_sq)`.
pub fn slit_endpoint_gap(piece: &SlitPiece, bound_sq: &Scalar) -> Result<Option<GeodesicPath>, GeodesicError> {
    let s = mark_slit_endpoints(piece);
    let f = FlatSurface::new(&s)?;
    let mut ends = Vec::new();
    for sl in &piece.slits {
        for tag in ['a', 'b'] {
            ends.push((sl.number, f.marked_vertex(&format!("s{}{tag}", sl.number))?));
        }
    }
    let mut stops = f.cone_stops();
    for &(_, v) in &ends {
        stops[v] = true;
    }
    let table = f.links(&stops, bound_sq)?;
    let mut best: Option<GeodesicPath> = None;
    for (i, &(si, p)) in ends.iter().enumerate() {
        for &(sj, q) in &ends[i + 1..] {
            if si == sj {
                continue;
            }
            if let Some(path) = f.shortest_path_in(&table, p, q, bound_sq, &[])? {
                if best.as_ref().is_none_or(|b| path.length < b.length) {
                    best = Some(path);
                }
            }
        }
    }
    Ok(best)
}
