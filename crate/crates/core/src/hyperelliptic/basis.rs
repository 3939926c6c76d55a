//! Lifting arcs of the sphere to closed curves on the surface, pruning to a
//! separating subgraph and certifying a partial homology basis.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::growth::{arcs_compatible, Growth};
use super::verify::Involution;
use super::wgraph::{build_wgraph, WGraph};
use super::{Check, HyperError};
use crate::geodesics::closed::chain_of_cycle;
use crate::geodesics::homology;
use crate::geodesics::rays::Vec2;
use crate::geodesics::trace::{Chord, Link};
use crate::interval::{self, Interval};
use crate::scalar::Scalar;
use crate::surd::Surd;

/// A closed curve on the surface lying over one edge of the graph.
#[derive(Clone, Debug)]
pub struct LiftedCurve {
    pub arc: usize,
    pub links: Vec<Link>,
    pub chords: Vec<Chord>,
    pub length: Surd,
    pub homology_class: Vec<i64>,
}

/// Lift of one pool arc: an arc followed by its reversed image, or one of
/// the two loops of a figure eight.
pub fn lift_arc(inv: &Involution, growth: &Growth, arc: usize) -> Result<LiftedCurve, HyperError> {
    let f = &inv.flat;
    let a = &growth.arcs[arc];
    let t = &growth.table;
    let (ids, chords): (Vec<usize>, Vec<Chord>) = if a.is_loop() {
        let hol = |ids: &[usize]| -> Vec<Vec2> { ids.iter().map(|&i| t.links[i].vec()).collect() };
        if hol(&a.path.ids) <= hol(&a.image) {
            (a.path.ids.clone(), a.own_chords.clone())
        } else {
            (a.image.clone(), a.image_chords.clone())
        }
    } else {
        let mut ids = a.path.ids.clone();
        for &i in a.image.iter().rev() {
            ids.push(t.reverse(i).ok_or(HyperError::LiftNotClosed)?);
        }
        (ids, a.lift_chords())
    };
    let links: Vec<Link> = ids.iter().map(|&i| t.links[i].clone()).collect();
    let closed = links.windows(2).all(|w| w[0].to == w[1].from) && links.last().unwrap().to == links[0].from;
    if !closed {
        return Err(HyperError::LiftNotClosed);
    }
    let refs: Vec<&Link> = links.iter().collect();
    let homology_class = f.homology.class(&chain_of_cycle(f, &refs));
    let length = links.iter().map(|l| f.length(l.norm_sq())).sum();
    Ok(LiftedCurve { arc, links, chords, length, homology_class })
}

/// Whether the surface stays connected when cut along the curves.
pub fn complement_connected(inv: &Involution, curves: &[LiftedCurve]) -> bool {
    complement_components(inv, curves) == 1
}

pub fn complement_components(inv: &Involution, curves: &[LiftedCurve]) -> usize {
    let chords: Vec<Chord> = curves.iter().flat_map(|c| c.chords.iter().cloned()).collect();
    inv.flat.arrangement(&chords).region_count()
}

/// Number of graph edges kept by pruning: `ceil((2g + 2) / 3)`.
pub fn pruned_size(genus: usize) -> usize {
    (2 * genus + 2).div_ceil(3)
}

#[derive(Clone, Debug)]
pub struct Pruned {
    /// Indices of the kept growth events, increasing.
    pub events: Vec<usize>,
    pub graph: WGraph,
    /// `j_{m_k - 1} <= 2g - K + 1 + k` for each kept event.
    pub order_checks: Vec<Check>,
}

fn order_checks(growth: &Growth, events: &[usize], genus: usize) -> Vec<Check> {
    let k_total = events.len();
    events
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let j = growth.events[e].frozen_before;
            let cap = 2 * genus + 2 + k - k_total;
            Check::new(format!("kept arc {} freezing index", k + 1), j <= cap, format!("j = {j} <= {cap}"))
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Exhaustive search over `K`-subsets of the final graph, earliest events
/// first, for a subgraph with the separation property whose freezing
/// indices satisfy the order bound.
pub fn prune(inv: &Involution, growth: &Growth) -> Result<Pruned, HyperError> {
    let genus = inv.genus();
    let k = pruned_size(genus);
    let mut fallback = None;
    for sel in combinations(growth.events.len(), k) {
        let arcs: Vec<usize> = sel.iter().map(|&e| growth.events[e].arc).collect();
        let graph = build_wgraph(inv, growth, &arcs)?;
        if !graph.is_type_w() || !graph.separation_property()?.0 {
            continue;
        }
        let checks = order_checks(growth, &sel, genus);
        let p = Pruned { events: sel, graph, order_checks: checks };
        if p.order_checks.iter().all(|c| c.pass) {
            return Ok(p);
        }
        fallback.get_or_insert(p);
    }
    fallback.ok_or(HyperError::NoValidSubgraph(k))
}

#[derive(Clone, Debug)]
pub struct BasisCertificate {
    pub curves: Vec<LiftedCurve>,
    /// Components of the surface cut along the curves.
    pub components: usize,
    pub rank: usize,
    /// Each pair of curves meets in at most one point.
    pub intersections_ok: bool,
    pub ratio_checks: Vec<Check>,
}

/// `len^2 * pi * d <= num * area`, certified.
pub fn ratio_at_most(len: &Surd, d: i64, num: i64, area: &Scalar) -> bool {
    let l2 = len.square();
    let f = |bits: u32| &(&l2.to_interval(bits) * &interval::pi(bits)) * &Interval::from_int(d);
    let rhs = area * Scalar::int(num);
    interval::compare_refined(f, &rhs.0) != Ordering::Greater
}

/// Certificate for curves lifted from the kept arcs, listed in event order.
pub fn partial_basis_check(inv: &Involution, growth: &Growth, events: &[usize]) -> Result<BasisCertificate, HyperError> {
    let genus = inv.genus() as i64;
    let area = &inv.flat.area;
    let curves: Vec<LiftedCurve> = events
        .iter()
        .map(|&e| lift_arc(inv, growth, growth.events[e].arc))
        .collect::<Result<_, _>>()?;
    let mut intersections_ok = true;
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            let va: HashSet<usize> = a.links.iter().map(|l| l.from).collect();
            let shared = b.links.iter().map(|l| l.from).filter(|v| va.contains(v)).collect::<HashSet<_>>().len();
            if shared > 1 || inv.flat.chords_cross(&a.chords, Some(&b.chords)) {
                intersections_ok = false;
            }
        }
    }
    let components = complement_components(inv, &curves);
    let classes: Vec<Vec<i64>> = curves.iter().map(|c| c.homology_class.clone()).collect();
    let rank = homology::rank(&classes);
    let mut ratio_checks = Vec::new();
    for (k, (c, &e)) in curves.iter().zip(events).enumerate() {
        let k1 = k as i64 + 1;
        let d = 2 * genus + 5 - 3 * k1;
        let arc = growth.event_arc(e);
        ratio_checks.push(Check::new(
            format!("arc {k1} length ratio"),
            ratio_at_most(&arc.path.length, d, 12, area),
            format!("l^2/area <= 12/(pi*{d}) with l = {}", arc.path.length),
        ));
        ratio_checks.push(Check::new(
            format!("curve {k1} length ratio"),
            ratio_at_most(&c.length, d, 48, area),
            format!("l^2/area <= 48/(pi*{d}) with l = {}", c.length),
        ));
    }
    if components != 1 {
        return Err(HyperError::NotPartialBasis(format!("cut surface has {components} components")));
    }
    if rank != curves.len() {
        return Err(HyperError::NotPartialBasis(format!("rank {rank} for {} curves", curves.len())));
    }
    Ok(BasisCertificate { curves, components, rank, intersections_ok, ratio_checks })
}

#[derive(Clone, Debug, Default)]
pub struct IffReport {
    pub tested: usize,
    /// Tested graphs without the separation property.
    pub failing: usize,
    pub disagreements: Vec<String>,
}

fn iff_one(inv: &Involution, growth: &Growth, arcs: &[usize], rep: &mut IffReport) -> Result<(), HyperError> {
    let g = build_wgraph(inv, growth, arcs)?;
    if !g.is_type_w() {
        return Ok(());
    }
    let sep = g.separation_property()?.0;
    let curves: Vec<LiftedCurve> = arcs.iter().map(|&a| lift_arc(inv, growth, a)).collect::<Result<_, _>>()?;
    let conn = complement_connected(inv, &curves);
    rep.tested += 1;
    if !sep {
        rep.failing += 1;
    }
    if sep != conn {
        rep.disagreements.push(format!("arcs {arcs:?}: separation {sep}, connected complement {conn}"));
    }
    Ok(())
}

/// Compares the separation property with connectivity of the cut surface on
/// every subgraph of the growth graph and on random embedded graphs drawn
/// from the arc pool.
pub fn iff_cross_check(inv: &Involution, growth: &Growth, trials: usize, seed: u64) -> Result<IffReport, HyperError> {
    let mut rep = IffReport::default();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let m = growth.events.len();
    for mask in 0u32..(1 << m) {
        let mut arcs: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).map(|e| growth.events[e].arc).collect();
        arcs.sort_unstable();
        if seen.insert(arcs.clone()) {
            iff_one(inv, growth, &arcs, &mut rep)?;
        }
    }
    let pool: Vec<usize> = (0..growth.arcs.len()).filter(|&a| growth.arcs[a].embedded).collect();
    let np = pool.len();
    let mut compat = vec![vec![false; np]; np];
    for i in 0..np {
        for j in i + 1..np {
            let ok = arcs_compatible(inv, &growth.arcs[pool[i]], &growth.arcs[pool[j]]);
            compat[i][j] = ok;
            compat[j][i] = ok;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = inv.weierstrass.len();
    let mut order: Vec<usize> = (0..np).collect();
    for _ in 0..trials {
        order.shuffle(&mut rng);
        let target = rng.gen_range(1..=n / 2 + 1);
        let mut pick: Vec<usize> = Vec::new();
        for &i in &order {
            if pick.len() == target {
                break;
            }
            if pick.iter().all(|&j| compat[i][j]) {
                pick.push(i);
            }
        }
        let mut arcs: Vec<usize> = pick.iter().map(|&i| pool[i]).collect();
        arcs.sort_unstable();
        if seen.insert(arcs.clone()) {
            iff_one(inv, growth, &arcs, &mut rep)?;
        }
    }
    Ok(rep)
}
