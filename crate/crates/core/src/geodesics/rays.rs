//! Exact angular bookkeeping at vertices.
//!
//! A ray leaving a vertex is a sector index together with an integer
//! direction lying in that sector's half-open quadrant. Sector `j` covers the
//! cumulative angles `[j*pi/2, (j+1)*pi/2)`.

use std::cmp::Ordering;

pub type Vec2 = (i64, i64);

pub fn cross(a: Vec2, b: Vec2) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Half-open quadrant index: 0 = `[0, pi/2)`, 1 = `[pi/2, pi)`, 2, 3.
pub fn quadrant(v: Vec2) -> usize {
    match v {
        (x, y) if x > 0 && y >= 0 => 0,
        (x, y) if x <= 0 && y > 0 => 1,
        (x, y) if x < 0 && y <= 0 => 2,
        _ => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    pub sector: usize,
    pub v: Vec2,
}

pub fn key_cmp(a: &Ray, b: &Ray) -> Ordering {
    a.sector.cmp(&b.sector).then_with(|| 0.cmp(&cross(a.v, b.v)))
}

/// Counter-clockwise order of `x` and `y` as seen from `base`.
fn cmp_from(base: &Ray, x: &Ray, y: &Ray) -> Ordering {
    let wx = key_cmp(x, base) == Ordering::Less;
    let wy = key_cmp(y, base) == Ordering::Less;
    wx.cmp(&wy).then_with(|| key_cmp(x, y))
}

/// The ray at angle `+pi` (`k = 2`) or `-pi` (`k = n - 2`) from `r`.
fn turned(r: &Ray, n: usize, k: usize) -> Ray {
    Ray { sector: (r.sector + k) % n, v: (-r.v.0, -r.v.1) }
}

/// Whether a path arriving along `incoming` (the ray pointing back along the
/// path) and leaving along `outgoing` is locally geodesic at a vertex with
/// `n` sectors: both angles between the rays are at least `pi`.
pub fn is_geodesic_turn(n: usize, incoming: &Ray, outgoing: &Ray) -> bool {
    let lo = turned(incoming, n, 2);
    let hi = turned(incoming, n, n - 2);
    cmp_from(incoming, &lo, outgoing) != Ordering::Greater && cmp_from(incoming, outgoing, &hi) != Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_point_allows_only_straight() {
        let inc = Ray { sector: 2, v: (-1, -2) };
        assert!(is_geodesic_turn(4, &inc, &Ray { sector: 0, v: (1, 2) }));
        assert!(!is_geodesic_turn(4, &inc, &Ray { sector: 0, v: (1, 3) }));
        assert!(!is_geodesic_turn(4, &inc, &Ray { sector: 1, v: (-1, 3) }));
    }

    #[test]
    fn cone_point_allows_a_range() {
        // angle 4*pi: outgoing rays from +pi to +3*pi after the incoming one
        let inc = Ray { sector: 0, v: (1, 0) };
        assert!(is_geodesic_turn(8, &inc, &Ray { sector: 2, v: (-1, 0) }));
        assert!(is_geodesic_turn(8, &inc, &Ray { sector: 4, v: (1, 1) }));
        assert!(is_geodesic_turn(8, &inc, &Ray { sector: 6, v: (-1, 0) }));
        assert!(!is_geodesic_turn(8, &inc, &Ray { sector: 1, v: (-1, 5) }));
        assert!(!is_geodesic_turn(8, &inc, &Ray { sector: 6, v: (-1, -1) }));
        assert!(!is_geodesic_turn(8, &inc, &Ray { sector: 0, v: (1, 1) }));
    }

    #[test]
    fn quadrants_are_half_open() {
        assert_eq!(quadrant((1, 0)), 0);
        assert_eq!(quadrant((0, 1)), 1);
        assert_eq!(quadrant((-1, 0)), 2);
        assert_eq!(quadrant((0, -1)), 3);
        assert_eq!(quadrant((3, -1)), 3);
    }
}
