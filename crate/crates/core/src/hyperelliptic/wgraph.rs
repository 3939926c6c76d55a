//! Graphs on the quotient sphere whose vertices are the Weierstrass points
//! and whose edges are growth arcs.
//!
//! The sphere is never built. A face of the graph is an orbit of the
//! involution on the regions cut out of the surface by the arcs and their
//! images. Faces and graph components form a tree (a face touches a
//! component when the component meets its boundary); removing a face from
//! that tree leaves the islands of its complement.

use std::collections::{BTreeSet, HashMap};

use super::growth::{Growth, WArc};
use super::verify::Involution;
use super::{Check, HyperError};
use crate::geodesics::arrangement::Arrangement;
use crate::geodesics::rays::{key_cmp, Ray};
use crate::surface::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WEdge {
    /// Index into the arc pool.
    pub arc: usize,
    pub ends: (usize, usize),
}

impl WEdge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

#[derive(Clone, Debug)]
pub struct WGraph {
    pub vertices: usize,
    pub edges: Vec<WEdge>,
    /// Edge ends at each vertex in counter-clockwise order on the sphere:
    /// `(edge, 0)` is the start of the arc, `(edge, 1)` its end.
    pub rotation: Vec<Vec<(usize, u8)>>,
    pub face_count: usize,
    /// Faces on the left and right of each edge.
    pub edge_faces: Vec<(usize, usize)>,
    /// Face containing each isolated vertex.
    pub isolated_face: Vec<Option<usize>>,
    pub component: Vec<usize>,
    pub component_count: usize,
    /// Weierstrass points on the two sides of each loop, the base excluded.
    pub loop_sides: Vec<Option<(usize, usize)>>,
}

/// Faces of the sphere for a set of arcs: region ids of the arrangement
/// merged along the involution.
fn faces(inv: &Involution, arr: &Arrangement) -> (Vec<usize>, usize) {
    let r = arr.region_count();
    let mut uf = UnionFind::new(r);
    for (id, (s, p)) in arr.samples.iter().enumerate() {
        let (s2, p2) = inv.image_point(*s, p);
        uf.union(id, arr.region_at(s2, &p2));
    }
    let mut ids = HashMap::new();
    let face: Vec<usize> = (0..r)
        .map(|x| {
            let root = uf.find(x);
            let next = ids.len();
            *ids.entry(root).or_insert(next)
        })
        .collect();
    (face, ids.len())
}

fn vertex_region(inv: &Involution, arr: &Arrangement, v: usize) -> usize {
    let s = inv.flat.tiling.vertices[v].sectors[0];
    arr.region_at_corner(s, crate::tiling::BL)
}

fn side_faces(inv: &Involution, arr: &Arrangement, face: &[usize], arc: &WArc) -> (usize, usize) {
    let (l, r) = arr.sides(&inv.flat.tiling, &arc.own_chords[0]);
    (face[l], face[r])
}

/// Builds the graph on all Weierstrass points with the given pool arcs.
pub fn build_wgraph(inv: &Involution, growth: &Growth, arcs: &[usize]) -> Result<WGraph, HyperError> {
    let f = &inv.flat;
    let n = inv.weierstrass.len();
    let edges: Vec<WEdge> = arcs.iter().map(|&a| WEdge { arc: a, ends: growth.arcs[a].ends }).collect();
    let mut chords = Vec::new();
    for &a in arcs {
        chords.extend(growth.arcs[a].lift_chords());
    }
    let arr = f.arrangement(&chords);
    let (face, face_count) = faces(inv, &arr);

    let mut uf = UnionFind::new(n);
    let mut degree = vec![0; n];
    for e in &edges {
        uf.union(e.ends.0, e.ends.1);
        degree[e.ends.0] += 1;
        degree[e.ends.1] += 1;
    }
    let mut comp_ids = HashMap::new();
    let component: Vec<usize> = (0..n)
        .map(|v| {
            let root = uf.find(v);
            let next = comp_ids.len();
            *comp_ids.entry(root).or_insert(next)
        })
        .collect();
    let component_count = comp_ids.len();
    let edge_faces: Vec<(usize, usize)> = arcs.iter().map(|&a| side_faces(inv, &arr, &face, &growth.arcs[a])).collect();
    let isolated_face: Vec<Option<usize>> = (0..n)
        .map(|v| (degree[v] == 0).then(|| face[vertex_region(inv, &arr, inv.weierstrass[v].vertex)]))
        .collect();
    // Sphere: V - E + F = 1 + C.
    if face_count + n != edges.len() + component_count + 1 {
        return Err(HyperError::EmbeddingFailure(format!(
            "{} faces for {} vertices, {} edges and {} components",
            face_count,
            n,
            edges.len(),
            component_count
        )));
    }

    let mut loop_sides = vec![None; edges.len()];
    for (k, e) in edges.iter().enumerate() {
        if !e.is_loop() {
            continue;
        }
        let arc = &growth.arcs[e.arc];
        let arr1 = f.arrangement(&arc.lift_chords());
        let (face1, count1) = faces(inv, &arr1);
        if count1 != 2 {
            return Err(HyperError::EmbeddingFailure(format!("loop {k} bounds {count1} faces")));
        }
        let (l, _) = side_faces(inv, &arr1, &face1, arc);
        let mut sides = (0, 0);
        for (v, p) in inv.weierstrass.iter().enumerate() {
            if v != e.ends.0 {
                if face1[vertex_region(inv, &arr1, p.vertex)] == l {
                    sides.0 += 1;
                } else {
                    sides.1 += 1;
                }
            }
        }
        loop_sides[k] = Some(sides);
    }

    // Rotation at a branch point: a ray and its image coincide on the
    // sphere, so sectors are taken modulo half the cone angle.
    let t = &f.tiling;
    let mut rotation = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        let path = &growth.arcs[e.arc].path;
        let first = path.links.first().unwrap();
        let last = path.links.last().unwrap();
        rotation[e.ends.0].push((first.out_ray(), k, 0u8));
        rotation[e.ends.1].push((last.in_ray(), k, 1u8));
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, mut ends)| {
            let half = t.vertices[inv.weierstrass[v].vertex].sectors.len() / 2;
            let reduce = |r: &Ray| Ray { sector: r.sector % half, v: r.v };
            ends.sort_by(|a, b| key_cmp(&reduce(&a.0), &reduce(&b.0)));
            ends.into_iter().map(|(_, k, end)| (k, end)).collect()
        })
        .collect();

    Ok(WGraph { vertices: n, edges, rotation, face_count, edge_faces, isolated_face, component, component_count, loop_sides })
}

impl WGraph {
    /// The graph-theoretic conditions of a type W graph.
    pub fn type_w_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, s) in self.loop_sides.iter().enumerate() {
            if let Some((a, b)) = s {
                if *a == 0 || *b == 0 {
                    out.push(format!("loop {k} has an empty side"));
                }
            }
        }
        let mut verts = vec![0usize; self.component_count];
        let mut plain = vec![0usize; self.component_count];
        let mut loops = vec![0usize; self.component_count];
        for v in 0..self.vertices {
            verts[self.component[v]] += 1;
        }
        for e in &self.edges {
            let c = self.component[e.ends.0];
            if e.is_loop() {
                loops[c] += 1;
            } else {
                plain[c] += 1;
            }
        }
        for c in 0..self.component_count {
            if plain[c] + 1 != verts[c] {
                out.push(format!("component {c} is not a tree apart from loops"));
            }
            if loops[c] > 1 {
                out.push(format!("component {c} has {} loops", loops[c]));
            }
        }
        out
    }

    pub fn is_type_w(&self) -> bool {
        self.type_w_violations().is_empty()
    }

    /// For each face, the Weierstrass counts of the islands of its
    /// complement.
    pub fn islands(&self) -> Result<Vec<Vec<usize>>, HyperError> {
        let fc = self.face_count;
        let nodes = fc + self.component_count;
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes];
        let mut link = |a: usize, b: usize| {
            adj[a].insert(b);
            adj[b].insert(a);
        };
        for (k, e) in self.edges.iter().enumerate() {
            let c = fc + self.component[e.ends.0];
            link(self.edge_faces[k].0, c);
            link(self.edge_faces[k].1, c);
        }
        for v in 0..self.vertices {
            if let Some(fa) = self.isolated_face[v] {
                link(fa, fc + self.component[v]);
            }
        }
        let links: usize = adj.iter().map(|s| s.len()).sum::<usize>() / 2;
        if links + 1 != nodes {
            return Err(HyperError::EmbeddingFailure("faces and components do not form a tree".into()));
        }
        let mut weight = vec![0usize; nodes];
        for v in 0..self.vertices {
            weight[fc + self.component[v]] += 1;
        }
        let mut out = Vec::with_capacity(fc);
        for face in 0..fc {
            let mut isl = Vec::new();
            for &c in &adj[face] {
                let mut total = 0;
                let mut stack = vec![(c, face)];
                while let Some((x, from)) = stack.pop() {
                    total += weight[x];
                    stack.extend(adj[x].iter().filter(|&&y| y != from).map(|&y| (y, x)));
                }
                isl.push(total);
            }
            isl.sort_unstable();
            out.push(isl);
        }
        Ok(out)
    }

    /// Every face has a complement island with an odd number of
    /// Weierstrass points.
    pub fn separation_property(&self) -> Result<(bool, Vec<Check>), HyperError> {
        let islands = self.islands()?;
        let checks: Vec<Check> = islands
            .iter()
            .enumerate()
            .map(|(f, isl)| Check::new(format!("face {f}"), isl.iter().any(|w| w % 2 == 1), format!("islands {isl:?}")))
            .collect();
        Ok((checks.iter().all(|c| c.pass), checks))
    }
}

/// Type W conditions as a pass flag and a list of violations.
pub fn check_type_w(g: &WGraph) -> (bool, Vec<String>) {
    let v = g.type_w_violations();
    (v.is_empty(), v)
}
