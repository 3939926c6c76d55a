//! First homology of the square tiling by a tree-cotree decomposition.
//!
//! Curves are recorded as 1-chains on the dual graph (squares joined across
//! their edges). Boundaries are generated by the turns around vertices. With
//! a spanning tree `T` of the dual graph and a spanning tree `C` of the
//! primal graph avoiding the edges dual to `T`, the remaining `2g` edges
//! give coordinates on homology once the chain is reduced to vanish on `C`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::trace::{rotation_step, Crossing};
use crate::tiling::{Tiling, BR, TL, TR};

#[derive(Clone, Debug)]
pub struct HomologyBasis {
    /// Dual edges carrying the coordinates.
    pub free_edges: Vec<usize>,
    /// Primal tree, in breadth-first order: `(vertex, parent, edge)`.
    cotree: Vec<(usize, usize, usize)>,
    /// Coefficient of each edge in the boundary of each vertex, sparse.
    vertex_boundary: Vec<Vec<Crossing>>,
    edge_count: usize,
}

fn coef(bd: &[Crossing], e: usize) -> i64 {
    bd.iter().filter(|(x, _)| *x == e).map(|(_, s)| *s as i64).sum()
}

impl HomologyBasis {
    pub fn new(t: &Tiling) -> HomologyBasis {
        let n = t.num_squares();
        let m = 2 * n;
        let mut in_tree = vec![false; m];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut q = VecDeque::from([0usize]);
        while let Some(s) = q.pop_front() {
            for (e, s2) in [(2 * s, t.right[s]), (2 * s + 1, t.top[s]), (2 * t.left[s], t.left[s]), (2 * t.bottom[s] + 1, t.bottom[s])] {
                if !seen[s2] {
                    seen[s2] = true;
                    in_tree[e] = true;
                    q.push_back(s2);
                }
            }
        }
        // Primal edge dual to 2s joins the BR and TR corners of s; the one
        // dual to 2s+1 joins TL and TR.
        let ends = |e: usize| {
            let s = e / 2;
            let a = if e % 2 == 0 { t.corner[s][BR].0 } else { t.corner[s][TL].0 };
            (a, t.corner[s][TR].0)
        };
        let nv = t.vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for e in 0..m {
            if !in_tree[e] {
                let (a, b) = ends(e);
                if a != b {
                    adj[a].push((b, e));
                    adj[b].push((a, e));
                }
            }
        }
        let mut in_cotree = vec![false; m];
        let mut vseen = vec![false; nv];
        vseen[0] = true;
        let mut cotree = Vec::new();
        let mut q = VecDeque::from([0usize]);
        while let Some(v) = q.pop_front() {
            for &(w, e) in &adj[v] {
                if !vseen[w] {
                    vseen[w] = true;
                    in_cotree[e] = true;
                    cotree.push((w, v, e));
                    q.push_back(w);
                }
            }
        }
        let free_edges = (0..m).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
        let vertex_boundary = (0..nv)
            .map(|v| (0..t.vertices[v].sectors.len()).map(|j| rotation_step(t, v, j)).collect())
            .collect();
        HomologyBasis { free_edges, cotree, vertex_boundary, edge_count: m }
    }

    /// Twice the genus.
    pub fn rank(&self) -> usize {
        self.free_edges.len()
    }

    /// Coordinates of a closed dual chain.
    pub fn class(&self, chain: &[Crossing]) -> Vec<i64> {
        let mut z = vec![0i64; self.edge_count];
        for &(e, s) in chain {
            z[e] += s as i64;
        }
        let mut a = vec![0i64; self.vertex_boundary.len()];
        for &(c, w, e) in &self.cotree {
            let cw = coef(&self.vertex_boundary[w], e);
            let cc = coef(&self.vertex_boundary[c], e);
            debug_assert!(cc == 1 || cc == -1);
            a[c] = (z[e] - a[w] * cw) * cc;
        }
        for (v, bd) in self.vertex_boundary.iter().enumerate() {
            if a[v] != 0 {
                for &(e, s) in bd {
                    z[e] -= a[v] * s as i64;
                }
            }
        }
        debug_assert!(self.cotree.iter().all(|&(_, _, e)| z[e] == 0));
        self.free_edges.iter().map(|&e| z[e]).collect()
    }
}

/// Whether a dual chain has zero boundary on every square.
pub fn is_cycle(t: &Tiling, chain: &[Crossing]) -> bool {
    let mut d = vec![0i64; t.num_squares()];
    for &(e, s) in chain {
        let a = e / 2;
        let b = if e % 2 == 0 { t.right[a] } else { t.top[a] };
        d[a] -= s as i64;
        d[b] += s as i64;
    }
    d.iter().all(|&x| x == 0)
}

/// Rank over the rationals.
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for k in c..cols {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]), 2);
        assert_eq!(rank(&[vec![0, 0]]), 0);
    }
}
