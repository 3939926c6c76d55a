//! Growing disks around the Weierstrass points on the quotient sphere.
//!
//! All disks grow with a common radius `r`. A disk stops when its closure
//! first meets itself (case A, a loop at its centre), another growing disk
//! (case B2, both stop) or a disk that already stopped (case B1). Event
//! radii come from exact loop lengths and distances measured on the surface,
//! since the quotient map is a local isometry away from the branch points
//! and preserves lengths of curves through them.

use std::cmp::Ordering;

use super::verify::Involution;
use super::{Check, HyperError};
use crate::geodesics::trace::{Chord, LinkTable};
use crate::geodesics::GeodesicPath;
use crate::interval::{self, Interval};
use crate::scalar::Scalar;
use crate::surd::Surd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Case {
    A,
    B1,
    B2,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Case::A => "A",
            Case::B1 => "B1",
            Case::B2 => "B2",
        })
    }
}

/// A shortest arc between two Weierstrass points (or a loop at one) whose
/// interior avoids the others, with its image under the involution.
#[derive(Clone, Debug)]
pub struct WArc {
    /// Indices into the Weierstrass list; equal for a loop.
    pub ends: (usize, usize),
    pub path: GeodesicPath,
    /// Link indices of the image path in the growth table.
    pub image: Vec<usize>,
    pub own_chords: Vec<Chord>,
    pub image_chords: Vec<Chord>,
    /// Interior vertices of the arc and of its image, sorted.
    pub interior: Vec<usize>,
    /// The arc and its image meet only at their endpoints.
    pub embedded: bool,
}

impl WArc {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// Chords of the arc together with its image.
    pub fn lift_chords(&self) -> Vec<Chord> {
        let mut c = self.own_chords.clone();
        c.extend(self.image_chords.iter().cloned());
        c
    }
}

#[derive(Clone, Debug)]
pub struct GrowthEvent {
    /// 1-based step number.
    pub step: usize,
    pub case: Case,
    pub radius: Surd,
    /// Number of stopped disks before and after the event.
    pub frozen_before: usize,
    pub frozen_after: usize,
    /// Indices into the Weierstrass list; equal for a loop.
    pub endpoints: (usize, usize),
    /// Index into [`Growth::arcs`].
    pub arc: usize,
}

impl GrowthEvent {
    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }
}

#[derive(Debug)]
pub struct Growth {
    pub table: LinkTable,
    pub bound_sq: Scalar,
    pub arcs: Vec<WArc>,
    pub events: Vec<GrowthEvent>,
}

impl Growth {
    pub fn event_arc(&self, e: usize) -> &WArc {
        &self.arcs[self.events[e].arc]
    }
}

struct Candidate {
    radius: Surd,
    case: Case,
    ends: (usize, usize),
}

fn interior_vertices(links: &[crate::geodesics::Link]) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, l) in links.iter().enumerate() {
        out.extend(&l.passed);
        if k + 1 < links.len() {
            out.push(l.to);
        }
    }
    out
}

/// Whether two arcs, together with their images, meet only at endpoints.
pub fn arcs_compatible(inv: &Involution, a: &WArc, b: &WArc) -> bool {
    a.interior.iter().all(|v| b.interior.binary_search(v).is_err())
        && !inv.flat.chords_cross(&a.lift_chords(), Some(&b.lift_chords()))
}

fn make_arc(inv: &Involution, table: &LinkTable, ends: (usize, usize), path: GeodesicPath) -> Result<WArc, HyperError> {
    let f = &inv.flat;
    let image: Vec<usize> = path
        .ids
        .iter()
        .map(|&i| inv.image_link(table, i).ok_or_else(|| HyperError::GeometryInconsistent("image of an arc is missing".into())))
        .collect::<Result<_, _>>()?;
    let img_links: Vec<_> = image.iter().map(|&i| table.links[i].clone()).collect();
    let own_chords = f.curve(&path.links)?.chords;
    let image_chords = f.curve(&img_links)?.chords;
    let mut interior = interior_vertices(&path.links);
    interior.extend(interior_vertices(&img_links));
    let mut sorted = interior.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let embedded = sorted.len() == interior.len()
        && !f.chords_cross(&own_chords, None)
        && !f.chords_cross(&own_chords, Some(&image_chords));
    Ok(WArc { ends, path, image, own_chords, image_chords, interior: sorted, embedded })
}

/// Runs the growth process until every disk has stopped.
pub fn disk_growth(inv: &Involution) -> Result<Growth, HyperError> {
    let f = &inv.flat;
    let w: Vec<usize> = inv.weierstrass.iter().map(|p| p.vertex).collect();
    let n = w.len();
    // A disk of radius r on the sphere has area pi r^2 <= area, and every
    // event joins points at distance at most 2r.
    let bound_sq = &f.area * Scalar::new(4, 3);
    let mut stops = f.cone_stops();
    for &v in &w {
        stops[v] = true;
    }
    let table = f.links(&stops, &bound_sq)?;
    let others = |a: usize, b: usize| -> Vec<usize> { (0..n).filter(|&k| k != a && k != b).map(|k| w[k]).collect() };
    let mut arcs = Vec::new();
    let mut arc_of = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a..n {
            if let Some(p) = f.shortest_path_in(&table, w[a], w[b], &bound_sq, &others(a, b))? {
                arc_of[a][b] = Some(arcs.len());
                arc_of[b][a] = Some(arcs.len());
                arcs.push(make_arc(inv, &table, (a, b), p)?);
            }
        }
    }

    let half = Scalar::new(1, 2);
    let mut frozen: Vec<Option<Surd>> = vec![None; n];
    let mut j = 0;
    let mut events: Vec<GrowthEvent> = Vec::new();
    while j < n {
        let mut best: Option<Candidate> = None;
        let mut offer = |c: Candidate| {
            let better = match &best {
                None => true,
                Some(b) => match c.radius.cmp(&b.radius) {
                    Ordering::Less => true,
                    Ordering::Equal => (c.case, c.ends) < (b.case, b.ends),
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some(c);
            }
        };
        for a in 0..n {
            if frozen[a].is_some() {
                continue;
            }
            for b in 0..n {
                let Some(k) = arc_of[a][b] else { continue };
                let len = &arcs[k].path.length;
                match &frozen[b] {
                    _ if a == b => offer(Candidate { radius: len.scale(&half), case: Case::A, ends: (a, a) }),
                    None if a < b => offer(Candidate { radius: len.scale(&half), case: Case::B2, ends: (a, b) }),
                    Some(rb) => offer(Candidate { radius: len - rb, case: Case::B1, ends: (a, b) }),
                    None => {}
                }
            }
        }
        let c = best.ok_or_else(|| HyperError::GeometryInconsistent("no event below the search bound".into()))?;
        let k = arc_of[c.ends.0][c.ends.1].unwrap();
        let step = events.len() + 1;
        if !arcs[k].embedded {
            return Err(HyperError::GeometryInconsistent(format!("arc {step} is not embedded")));
        }
        for e in &events {
            if !arcs_compatible(inv, &arcs[k], &arcs[e.arc]) {
                return Err(HyperError::GeometryInconsistent(format!("arc {step} crosses arc {}", e.step)));
            }
        }
        let before = j;
        frozen[c.ends.0] = Some(c.radius.clone());
        j += 1;
        if c.case == Case::B2 {
            frozen[c.ends.1] = Some(c.radius.clone());
            j += 1;
        }
        events.push(GrowthEvent { step, case: c.case, radius: c.radius, frozen_before: before, frozen_after: j, endpoints: c.ends, arc: k });
    }
    Ok(Growth { table, bound_sq, arcs, events })
}

/// `pi * k * r^2 <= area`, certified.
pub fn disk_area_fits(k: usize, r: &Surd, area: &Scalar) -> bool {
    let r2 = r.square();
    let f = |bits: u32| &(&interval::pi(bits) * &Interval::from_int(k as i64)) * &r2.to_interval(bits);
    interval::compare_refined(f, &area.0) != Ordering::Greater
}

/// The bounds every growth run must satisfy.
pub fn growth_checks(g: &Growth, genus: usize, area: &Scalar) -> Vec<Check> {
    let n = 2 * genus + 2;
    let mut out = Vec::new();
    for e in &g.events {
        let pass = disk_area_fits(n - e.frozen_before, &e.radius, area);
        out.push(Check::new(
            format!("step {} area bound", e.step),
            pass,
            format!("pi*{}*r^2 <= {} with r = {}", n - e.frozen_before, area, e.radius),
        ));
    }
    let monotone = g.events.windows(2).all(|w| w[0].radius <= w[1].radius);
    out.push(Check::new("monotone radii", monotone, String::new()));
    let m = g.events.len();
    out.push(Check::new("arc count", genus < m && m <= n, format!("{} <= {m} <= {n}", genus + 1)));
    out
}
