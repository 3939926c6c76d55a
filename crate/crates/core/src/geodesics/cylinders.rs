//! Decomposition of the surface into maximal cylinders in a lattice direction.
//!
//! For a direction `(p, q)` with `q > 0` every regular leaf crosses the bottom
//! edge of some square at a point `x`; cutting each bottom edge at the
//! multiples of `1/q` gives `q` states per square whose midpoints are never
//! singular. The first-return map on states is a permutation whose cycles
//! are closed leaves. Neighbouring states lie in the same cylinder unless
//! the point separating them sits on a singular leaf.

use num_integer::Integer;
use std::collections::HashSet;

use super::rays::{quadrant, Vec2};
use super::trace::{primitive_directions, Crossing, Walker};
use super::{FlatSurface, GeodesicError};
use crate::scalar::Scalar;
use crate::surd::Surd;
use crate::surface::UnionFind;
use crate::tiling::{BL, TL};

#[derive(Clone, Debug)]
pub struct Cylinder {
    /// Primitive grid direction, normalised to `q > 0` or `(1, 0)`.
    pub dir: Vec2,
    /// Core holonomy in grid units.
    pub core: Vec2,
    pub holonomy: (Scalar, Scalar),
    pub circumference_sq: Scalar,
    pub circumference: Surd,
    pub area: Scalar,
    pub width: Surd,
    /// Dual chain of one closed leaf.
    pub core_chain: Vec<Crossing>,
}

fn normalise(d: Vec2) -> Vec2 {
    let g = d.0.gcd(&d.1);
    let (p, q) = (d.0 / g, d.1 / g);
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

impl FlatSurface {
    /// Cylinders in grid direction `d`, every one of them.
    pub fn cylinders_in(&self, d: Vec2) -> Result<Vec<Cylinder>, GeodesicError> {
        if d == (0, 0) {
            return Err(GeodesicError::NonRationalDirection);
        }
        let (p, q) = normalise(d);
        let t = &self.tiling;
        let n = t.num_squares();
        let nv = t.vertices.len();

        // Singular leaves: forward separatrices from every cone sector.
        let cones = self.cone_stops();
        let mut walker = Walker::new(t, self.budget);
        let mut sing_h: HashSet<(usize, i64)> = HashSet::new();
        let mut sing_v = cones.clone();
        let qd = quadrant((p, q));
        let stop = |u: usize| cones[u];
        for v in (0..nv).filter(|&v| cones[v]) {
            for j in (qd..t.vertices[v].sectors.len()).step_by(4) {
                let w = walker
                    .walk(v, j, (p, q), nv as i64 + 1, &stop)?
                    .expect("separatrix ends at a cone point");
                sing_h.extend(w.h_cross);
                for u in w.passed {
                    sing_v[u] = true;
                }
            }
        }

        let horizontal = q == 0;
        let per = if horizontal { 1 } else { q as usize };
        let states = n * per;
        // First-return map and its dual chain.
        let step = |st: usize| -> (usize, Vec<Crossing>) {
            if horizontal {
                return (t.right[st], vec![(2 * st, 1)]);
            }
            let (mut s, k) = (st / per, (st % per) as i64);
            let shift = Integer::div_floor(&(2 * k + 1 + 2 * p), &(2 * q));
            let mut chain = Vec::new();
            for _ in 0..shift.max(0) {
                chain.push((2 * s, 1));
                s = t.right[s];
            }
            for _ in 0..(-shift).max(0) {
                s = t.left[s];
                chain.push((2 * s, -1));
            }
            chain.push((2 * s + 1, 1));
            s = t.top[s];
            (s * per + (k + p - shift * q) as usize, chain)
        };

        let mut uf = UnionFind::new(states);
        let mut orbit_len = vec![0usize; states];
        let mut seen = vec![false; states];
        let mut first_state = Vec::new();
        for st0 in 0..states {
            if seen[st0] {
                continue;
            }
            let mut cyc = vec![st0];
            seen[st0] = true;
            let mut st = step(st0).0;
            while st != st0 {
                seen[st] = true;
                uf.union(st0, st);
                cyc.push(st);
                st = step(st).0;
            }
            for &x in &cyc {
                orbit_len[x] = cyc.len();
            }
            first_state.push(st0);
        }
        for s in 0..n {
            if horizontal {
                let u = t.corner[s][TL].0;
                if !sing_v[u] {
                    uf.union(s, t.top[s]);
                }
                continue;
            }
            for k in 1..per {
                if !sing_h.contains(&(s, k as i64)) {
                    uf.union(s * per + k - 1, s * per + k);
                }
            }
            let r = t.right[s];
            if !sing_v[t.corner[r][BL].0] {
                uf.union(s * per + per - 1, r * per);
            }
        }

        let mut count = vec![0usize; states];
        for st in 0..states {
            count[uf.find(st)] += 1;
        }
        let mut done = HashSet::new();
        let mut out = Vec::new();
        let norm = p * p + q * q;
        for &st0 in &first_state {
            let root = uf.find(st0);
            if !done.insert(root) {
                continue;
            }
            let m = orbit_len[st0] as i64;
            let reps = if horizontal { m } else { m / q };
            debug_assert!(horizontal || m % q == 0);
            let core = (reps * p, reps * q);
            let mut chain = Vec::new();
            let mut st = st0;
            loop {
                let (nx, c) = step(st);
                chain.extend(c);
                st = nx;
                if st == st0 {
                    break;
                }
            }
            let u = self.unit();
            let area = u * u * Scalar::new(count[root] as i64, per as i64);
            let circ = Surd::scaled_sqrt(&(u * Scalar::int(reps)), norm as u64);
            let width = Surd::scaled_sqrt(&(&area / (u * Scalar::int(reps * norm))), norm as u64);
            out.push(Cylinder {
                dir: (p, q),
                core,
                holonomy: self.holonomy(core),
                circumference_sq: self.length_sq(reps * reps * norm),
                circumference: circ,
                area,
                width,
                core_chain: chain,
            });
        }
        out.sort_by(|a, b| (&a.circumference_sq, &a.area).cmp(&(&b.circumference_sq, &b.area)));
        Ok(out)
    }

    /// Cylinders of circumference below `sqrt(bound_sq)` in every direction.
    pub fn all_cylinders(&self, bound_sq: &Scalar) -> Result<Vec<Cylinder>, GeodesicError> {
        let grid = self.to_grid(bound_sq);
        let mut out = Vec::new();
        for d in primitive_directions(&grid) {
            if d.1 < 0 || (d.1 == 0 && d.0 < 0) {
                continue;
            }
            out.extend(self.cylinders_in(d)?.into_iter().filter(|c| c.circumference_sq < *bound_sq));
        }
        Ok(out)
    }
}

/// Cylinders in the direction of the vector `direction` with circumference
/// below `sqrt(bound_sq)`.
pub fn cylinders(
    surface: &crate::surface::SurfaceComplex,
    direction: (&Scalar, &Scalar),
    bound_sq: &Scalar,
) -> Result<Vec<Cylinder>, GeodesicError> {
    let (dx, dy) = direction;
    if dx.is_zero() && dy.is_zero() {
        return Err(GeodesicError::NonRationalDirection);
    }
    let f = FlatSurface::new(surface)?;
    // Clear denominators to get an integer vector.
    let l = dx.denom() * dy.denom();
    let to_i = |x: &Scalar| {
        let v = x * Scalar(num_rational::BigRational::from_integer(l.clone()));
        v.to_i64().ok_or(GeodesicError::NonRationalDirection)
    };
    let d = (to_i(dx)?, to_i(dy)?);
    Ok(f.cylinders_in(d)?.into_iter().filter(|c| c.circumference_sq < *bound_sq).collect())
}
