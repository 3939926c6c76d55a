//! Straight-line walks over the square tiling and enumeration of directed
//! saddle connections.
//!
//! A walk in the primitive integer direction `d = (p, q)` advances one lattice
//! step at a time; between lattice points it only crosses square edges, and
//! every lattice point it meets is a vertex of the tiling. Segments running
//! along an edge are attributed to the square on their left.

use std::collections::HashMap;

use num_integer::Integer;

use super::rays::{quadrant, Ray, Vec2};
use super::GeodesicError;
use crate::scalar::Scalar;
use crate::tiling::{Tiling, BL, BR, TL, TR};

/// Signed crossing of a dual edge: `2s` is the right edge of square `s`,
/// `2s + 1` its top edge; `+1` means crossing rightwards or upwards.
pub type Crossing = (usize, i32);

/// A straight piece inside one square, in square-local coordinates where
/// the square is `[0, 1]^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chord {
    pub square: usize,
    pub a: (Scalar, Scalar),
    pub b: (Scalar, Scalar),
}

#[derive(Clone, Debug, Default)]
pub struct Walk {
    pub to: usize,
    pub in_sector: usize,
    /// Sector of the corner through which the walk reached `to`.
    pub arrive_sector: usize,
    pub mult: i64,
    pub chain: Vec<Crossing>,
    /// Non-stopping vertices passed straight through.
    pub passed: Vec<usize>,
    /// Upward crossings of horizontal edges as `(square above, i)` where the
    /// crossing sits at `x = i/q` on that square's bottom edge.
    pub h_cross: Vec<(usize, i64)>,
    pub chords: Vec<Chord>,
}

fn start_cell(c: usize) -> (i64, i64) {
    match c {
        BL => (0, 0),
        BR => (-1, 0),
        TR => (-1, -1),
        _ => (0, -1),
    }
}

fn arrival_corner(d: Vec2) -> usize {
    match (d.0.signum(), d.1.signum()) {
        (1, 1) | (0, 1) => TR,
        (-1, 1) | (-1, 0) => TL,
        (-1, -1) | (0, -1) => BL,
        _ => BR,
    }
}

/// Dual edge crossed when turning counter-clockwise out of sector `j` of `v`.
pub fn rotation_step(t: &Tiling, v: usize, j: usize) -> Crossing {
    let s = t.vertices[v].sectors[j];
    match j % 4 {
        BL => (2 * t.left[s], -1),
        BR => (2 * t.bottom[s] + 1, -1),
        TR => (2 * s, 1),
        _ => (2 * s + 1, 1),
    }
}

/// Crossings of a counter-clockwise turn from sector `from` to sector `to`.
pub fn rotation_chain(t: &Tiling, v: usize, from: usize, to: usize, out: &mut Vec<Crossing>) {
    let n = t.vertices[v].sectors.len();
    let mut j = from;
    while j != to {
        out.push(rotation_step(t, v, j));
        j = (j + 1) % n;
    }
}

pub struct Walker<'a> {
    pub tiling: &'a Tiling,
    pub record_chords: bool,
    /// End the walk after exactly `max_mult` steps even at a non-stop vertex.
    pub stop_at_max: bool,
    pub budget: u64,
    pub steps: u64,
}

impl<'a> Walker<'a> {
    pub fn new(tiling: &'a Tiling, budget: u64) -> Self {
        Walker { tiling, record_chords: false, stop_at_max: false, budget, steps: 0 }
    }

    /// Walk from sector `j` of `v` in primitive direction `d` until a vertex
    /// satisfying `stop` is reached or `max_mult` lattice steps are used.
    pub fn walk(
        &mut self,
        v: usize,
        j: usize,
        d: Vec2,
        max_mult: i64,
        stop: &dyn Fn(usize) -> bool,
    ) -> Result<Option<Walk>, GeodesicError> {
        let t = self.tiling;
        debug_assert_eq!(j % 4, quadrant(d));
        let (p, q) = d;
        let (ap, aq) = (p.abs(), q.abs());
        let mut w = Walk::default();
        let mut s = t.vertices[v].sectors[j];
        let mut c = j % 4;
        for mult in 1..=max_mult {
            let (mut cx, mut cy) = start_cell(c);
            let (mut a, mut b) = (1i64, 1i64);
            let mut t_prev = Scalar::zero();
            loop {
                self.steps += 1;
                if self.steps > self.budget {
                    return Err(GeodesicError::BudgetExhausted(self.steps));
                }
                let v_ok = a < ap;
                let h_ok = b < aq;
                if !v_ok && !h_ok {
                    break;
                }
                let vertical = v_ok && (!h_ok || a * aq < b * ap);
                let t_now = if vertical { Scalar::new(a, ap) } else { Scalar::new(b, aq) };
                if self.record_chords {
                    w.chords.push(chord(s, d, (cx, cy), &t_prev, &t_now));
                }
                t_prev = t_now;
                if vertical {
                    if p > 0 {
                        w.chain.push((2 * s, 1));
                        s = t.right[s];
                        cx += 1;
                    } else {
                        s = t.left[s];
                        w.chain.push((2 * s, -1));
                        cx -= 1;
                    }
                    a += 1;
                } else {
                    if q > 0 {
                        w.chain.push((2 * s + 1, 1));
                        s = t.top[s];
                        cy += 1;
                        w.h_cross.push((s, b * p - q * cx));
                    } else {
                        s = t.bottom[s];
                        w.chain.push((2 * s + 1, -1));
                        cy -= 1;
                    }
                    b += 1;
                }
            }
            if self.record_chords {
                w.chords.push(chord(s, d, (cx, cy), &t_prev, &Scalar::one()));
            }
            let ca = arrival_corner(d);
            let (u, ja) = t.corner[s][ca];
            let n = t.vertices[u].sectors.len();
            let back = quadrant((-p, -q));
            let jin = if ja % 4 == back { ja } else { (ja + 1) % n };
            if stop(u) || (self.stop_at_max && mult == max_mult) {
                w.to = u;
                w.in_sector = jin;
                w.arrive_sector = ja;
                w.mult = mult;
                return Ok(Some(w));
            }
            assert_eq!(n, 4, "walk passed through a cone point that is not a stop");
            let jout = (jin + 2) % 4;
            rotation_chain(t, u, ja, jout, &mut w.chain);
            w.passed.push(u);
            s = t.vertices[u].sectors[jout];
            c = jout;
        }
        Ok(None)
    }
}

fn chord(s: usize, d: Vec2, cell: (i64, i64), t0: &Scalar, t1: &Scalar) -> Chord {
    let pt = |t: &Scalar| (t * Scalar::int(d.0) - Scalar::int(cell.0), t * Scalar::int(d.1) - Scalar::int(cell.1));
    Chord { square: s, a: pt(t0), b: pt(t1) }
}

/// Primitive integer vectors with squared norm below `bound`, shortest first.
pub fn primitive_directions(bound: &Scalar) -> Vec<Vec2> {
    let r = bound.to_f64().sqrt().ceil() as i64 + 1;
    let mut out = Vec::new();
    for p in -r..=r {
        for q in -r..=r {
            if (p, q) != (0, 0) && p.gcd(&q) == 1 && Scalar::int(p * p + q * q) < *bound {
                out.push((p, q));
            }
        }
    }
    out.sort_by_key(|&(p, q)| (p * p + q * q, quadrant((p, q)), p, q));
    out
}

/// A directed saddle connection between stop vertices. Lengths and vectors
/// are in units of the tiling's square side.
#[derive(Clone, Debug)]
pub struct Link {
    pub from: usize,
    pub out_sector: usize,
    pub to: usize,
    pub in_sector: usize,
    pub arrive_sector: usize,
    pub dir: Vec2,
    pub mult: i64,
    pub chain: Vec<Crossing>,
    pub passed: Vec<usize>,
}

impl Link {
    pub fn vec(&self) -> Vec2 {
        (self.dir.0 * self.mult, self.dir.1 * self.mult)
    }

    pub fn norm_sq(&self) -> i64 {
        let (x, y) = self.vec();
        x * x + y * y
    }

    pub fn len_f64(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    pub fn out_ray(&self) -> Ray {
        Ray { sector: self.out_sector, v: self.dir }
    }

    /// The ray at `to` pointing back along the link.
    pub fn in_ray(&self) -> Ray {
        Ray { sector: self.in_sector, v: (-self.dir.0, -self.dir.1) }
    }
}

/// All directed saddle connections between `stops` with squared length
/// (in grid units) below `bound`.
#[derive(Clone, Debug)]
pub struct LinkTable {
    pub links: Vec<Link>,
    pub by_start: HashMap<(usize, usize, Vec2), usize>,
    pub from_vertex: Vec<Vec<usize>>,
    pub bound: Scalar,
}

impl LinkTable {
    pub fn build(t: &Tiling, stops: &[bool], bound: &Scalar, budget: u64) -> Result<LinkTable, GeodesicError> {
        let mut walker = Walker::new(t, budget);
        let mut links = Vec::new();
        let stop = |u: usize| stops[u];
        let starts: Vec<usize> = (0..t.vertices.len()).filter(|&v| stops[v]).collect();
        for d in primitive_directions(bound) {
            let norm = d.0 * d.0 + d.1 * d.1;
            let max_mult = (bound.to_f64() / norm as f64).sqrt().ceil() as i64 + 1;
            let qd = quadrant(d);
            for &v in &starts {
                let n = t.vertices[v].sectors.len();
                for j in (qd..n).step_by(4) {
                    if let Some(w) = walker.walk(v, j, d, max_mult, &stop)? {
                        if Scalar::int(w.mult * w.mult * norm) < *bound {
                            links.push(Link {
                                from: v,
                                out_sector: j,
                                to: w.to,
                                in_sector: w.in_sector,
                                arrive_sector: w.arrive_sector,
                                dir: d,
                                mult: w.mult,
                                chain: w.chain,
                                passed: w.passed,
                            });
                        }
                    }
                }
            }
        }
        let mut by_start = HashMap::new();
        let mut from_vertex = vec![Vec::new(); t.vertices.len()];
        for (i, l) in links.iter().enumerate() {
            by_start.insert((l.from, l.out_sector, l.dir), i);
            from_vertex[l.from].push(i);
        }
        Ok(LinkTable { links, by_start, from_vertex, bound: bound.clone() })
    }

    /// The same segment traversed backwards.
    pub fn reverse(&self, i: usize) -> Option<usize> {
        let l = &self.links[i];
        self.by_start.get(&(l.to, l.in_sector, (-l.dir.0, -l.dir.1))).copied()
    }
}
