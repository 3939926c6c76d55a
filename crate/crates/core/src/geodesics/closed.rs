//! Closed geodesics, systoles and their certificates.
//!
//! A closed geodesic either avoids the cone points, and is then the core of a
//! cylinder, or it is a cyclic chain of saddle connections between cone
//! points turning by at least `pi` on both sides at each of them.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::cylinders::Cylinder;
use super::rays::is_geodesic_turn;
use super::trace::{rotation_chain, Crossing, Link, LinkTable};
use super::{FlatSurface, GeodesicError, SaddleConnection};
use crate::scalar::Scalar;
use crate::surd::Surd;
use crate::surface::SurfaceComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeodesicKind {
    CylinderCore,
    ConeChain,
}

#[derive(Clone, Debug)]
pub struct ClosedGeodesic {
    pub kind: GeodesicKind,
    /// Saddle connections of a cone chain, in order.
    pub segments: Vec<SaddleConnection>,
    pub links: Vec<Link>,
    /// Core holonomy and width of a cylinder.
    pub core: Option<((Scalar, Scalar), Surd)>,
    pub length: Surd,
    pub length_sq: Surd,
    pub homology_class: Vec<i64>,
    pub simple: bool,
}

impl ClosedGeodesic {
    /// Holonomies of the pieces, sorted; used to break ties.
    pub fn tie_key(&self) -> Vec<(Scalar, Scalar)> {
        let mut k: Vec<_> = match &self.core {
            Some((h, _)) => vec![h.clone()],
            None => self.segments.iter().map(|s| s.holonomy.clone()).collect(),
        };
        k.sort();
        k
    }

    pub fn is_null_homologous(&self) -> bool {
        self.homology_class.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug)]
pub struct SystoleCertificate {
    pub value_sq: Surd,
    pub witness: ClosedGeodesic,
    pub search_bound_sq: Scalar,
    /// Every closed geodesic shorter than the bound was examined.
    pub exhaustive: bool,
}

impl SystoleCertificate {
    pub fn value(&self) -> &Surd {
        &self.witness.length
    }
}

/// Dual chain of a cyclic sequence of links, including the turns.
pub fn chain_of_cycle(f: &FlatSurface, links: &[&Link]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for (i, l) in links.iter().enumerate() {
        out.extend(&l.chain);
        let next = links[(i + 1) % links.len()];
        rotation_chain(&f.tiling, l.to, l.arrive_sector, next.out_sector, &mut out);
    }
    out
}

/// Lower bounds on the length of a link path from each vertex to `target`.
fn distances_to(table: &LinkTable, nv: usize, target: usize) -> Vec<f64> {
    let mut into = vec![Vec::new(); nv];
    for l in &table.links {
        into[l.to].push((l.from, l.len_f64()));
    }
    let mut dist = vec![f64::INFINITY; nv];
    dist[target] = 0.0;
    let mut heap = BinaryHeap::from([(Reverse(OrdF(0.0)), target)]);
    while let Some((Reverse(OrdF(d)), v)) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(u, w) in &into[v] {
            if d + w < dist[u] {
                dist[u] = d + w;
                heap.push((Reverse(OrdF(d + w)), u));
            }
        }
    }
    dist
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub(crate) struct OrdF(pub f64);
impl Eq for OrdF {}
impl Ord for OrdF {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Cone chains as sequences of link indices, each listed once up to
/// rotation and reversal.
fn cone_chains(f: &FlatSurface, table: &LinkTable) -> Result<Vec<Vec<usize>>, GeodesicError> {
    let t = &f.tiling;
    let nv = t.vertices.len();
    let limit = table.bound.to_f64().sqrt() * (1.0 + 1e-9);
    let mut found = Vec::new();
    let mut steps = 0u64;
    for v0 in 0..nv {
        if table.from_vertex[v0].is_empty() {
            continue;
        }
        let dist = distances_to(table, nv, v0);
        for &l0 in &table.from_vertex[v0] {
            let mut path = vec![l0];
            let mut used = vec![false; table.links.len()];
            used[l0] = true;
            dfs(f, table, &dist, limit, &mut path, &mut used, table.links[l0].len_f64(), &mut found, &mut steps)?;
        }
    }
    let canon = |c: &[usize]| {
        let k = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
        let mut r = c[k..].to_vec();
        r.extend(&c[..k]);
        r
    };
    Ok(found
        .into_iter()
        .filter(|c| {
            let rev: Option<Vec<usize>> = c.iter().rev().map(|&i| table.reverse(i)).collect();
            rev.map_or(true, |r| *c <= canon(&r))
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    f: &FlatSurface,
    table: &LinkTable,
    dist: &[f64],
    limit: f64,
    path: &mut Vec<usize>,
    used: &mut Vec<bool>,
    len: f64,
    found: &mut Vec<Vec<usize>>,
    steps: &mut u64,
) -> Result<(), GeodesicError> {
    *steps += 1;
    if *steps > f.budget {
        return Err(GeodesicError::BudgetExhausted(*steps));
    }
    let l0 = path[0];
    let first = &table.links[l0];
    let cur = &table.links[*path.last().unwrap()];
    let v = cur.to;
    let n = f.tiling.vertices[v].sectors.len();
    if v == first.from && is_geodesic_turn(n, &cur.in_ray(), &first.out_ray()) {
        found.push(path.clone());
    }
    for &nx in &table.from_vertex[v] {
        if nx <= l0 || used[nx] {
            continue;
        }
        let l = &table.links[nx];
        let total = len + l.len_f64();
        if total + dist[l.to] >= limit || !is_geodesic_turn(n, &cur.in_ray(), &l.out_ray()) {
            continue;
        }
        used[nx] = true;
        path.push(nx);
        dfs(f, table, dist, limit, path, used, total, found, steps)?;
        path.pop();
        used[nx] = false;
    }
    Ok(())
}

impl FlatSurface {
    fn from_cylinder(&self, c: &Cylinder) -> ClosedGeodesic {
        ClosedGeodesic {
            kind: GeodesicKind::CylinderCore,
            segments: Vec::new(),
            links: Vec::new(),
            core: Some((c.holonomy.clone(), c.width.clone())),
            length: c.circumference.clone(),
            length_sq: Surd::rational(&c.circumference_sq),
            homology_class: self.homology.class(&c.core_chain),
            simple: true,
        }
    }

    fn from_chain(&self, table: &LinkTable, idx: &[usize]) -> Result<ClosedGeodesic, GeodesicError> {
        let links: Vec<&Link> = idx.iter().map(|&i| &table.links[i]).collect();
        let length: Surd = links.iter().map(|l| self.length(l.norm_sq())).sum();
        let owned: Vec<Link> = links.iter().map(|&l| l.clone()).collect();
        let curve = self.curve(&owned)?;
        let mut verts = curve.vertices.clone();
        verts.pop();
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let simple = sorted.len() == verts.len() && !self.chords_cross(&curve.chords, None);
        Ok(ClosedGeodesic {
            kind: GeodesicKind::ConeChain,
            segments: links.iter().map(|l| self.connection(l)).collect(),
            links: owned,
            core: None,
            length_sq: length.square(),
            length,
            homology_class: self.homology.class(&chain_of_cycle(self, &links)),
            simple,
        })
    }

    /// Every closed geodesic with squared length below `bound_sq`.
    pub fn closed_geodesics(&self, bound_sq: &Scalar) -> Result<Vec<ClosedGeodesic>, GeodesicError> {
        if !bound_sq.is_positive() {
            return Err(GeodesicError::NonPositiveBound);
        }
        let mut out: Vec<ClosedGeodesic> = self.all_cylinders(bound_sq)?.iter().map(|c| self.from_cylinder(c)).collect();
        let table = self.links(&self.cone_stops(), bound_sq)?;
        let bound = Surd::rational(bound_sq);
        for c in cone_chains(self, &table)? {
            let g = self.from_chain(&table, &c)?;
            if g.length_sq < bound {
                out.push(g);
            }
        }
        out.sort_by(|a, b| a.length.cmp(&b.length).then_with(|| a.tie_key().cmp(&b.tie_key())));
        Ok(out)
    }

    fn shortest(&self, bound_sq: &Scalar, keep: impl Fn(&ClosedGeodesic) -> bool) -> Result<SystoleCertificate, GeodesicError> {
        let witness = self
            .closed_geodesics(bound_sq)?
            .into_iter()
            .find(keep)
            .ok_or(GeodesicError::NoGeodesicFound)?;
        Ok(SystoleCertificate {
            value_sq: witness.length_sq.clone(),
            witness,
            search_bound_sq: bound_sq.clone(),
            exhaustive: true,
        })
    }

    pub fn systole(&self, bound_sq: &Scalar) -> Result<SystoleCertificate, GeodesicError> {
        self.shortest(bound_sq, |_| true)
    }

    pub fn homological_systole(&self, bound_sq: &Scalar) -> Result<SystoleCertificate, GeodesicError> {
        self.shortest(bound_sq, |g| !g.is_null_homologous())
    }
}

pub fn closed_geodesics(surface: &SurfaceComplex, bound_sq: &Scalar) -> Result<Vec<ClosedGeodesic>, GeodesicError> {
    FlatSurface::new(surface)?.closed_geodesics(bound_sq)
}

pub fn systole(surface: &SurfaceComplex, search_bound_sq: &Scalar) -> Result<SystoleCertificate, GeodesicError> {
    FlatSurface::new(surface)?.systole(search_bound_sq)
}

pub fn homological_systole(surface: &SurfaceComplex, search_bound_sq: &Scalar) -> Result<SystoleCertificate, GeodesicError> {
    FlatSurface::new(surface)?.homological_systole(search_bound_sq)
}
