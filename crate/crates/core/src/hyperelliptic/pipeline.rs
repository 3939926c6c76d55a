//! End-to-end run: involution, disk growth, pruning, lifting and all bound
//! checks, collected into one report.

use std::cmp::Ordering;

use super::basis::{iff_cross_check, partial_basis_check, prune, IffReport};
use super::growth::{disk_growth, growth_checks, Case};
use super::involution::InvolutionSpec;
use super::verify::verify_involution;
use super::wgraph::build_wgraph;
use super::{Check, HyperError};
use crate::geodesics::GeodesicError;
use crate::interval::{self, Interval};
use crate::scalar::Scalar;
use crate::surd::Surd;
use crate::surface::SurfaceComplex;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Random pool graphs per run in the separation cross-check; `None` skips it.
    pub iff_trials: Option<usize>,
    pub seed: u64,
    pub homological_systole: bool,
    /// Overrides the geodesic search budget.
    pub budget: Option<u64>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { iff_trials: Some(40), seed: 7, homological_systole: true, budget: None }
    }
}

#[derive(Clone, Debug)]
pub struct EventRow {
    pub step: usize,
    pub case: Case,
    pub radius: Surd,
    pub frozen_before: usize,
    pub frozen_after: usize,
    pub ends: (String, String),
}

#[derive(Clone, Debug)]
pub struct BasisRow {
    pub event: usize,
    pub ends: (String, String),
    pub arc_length: Surd,
    pub curve_length: Surd,
    /// `curve_length^2 / area`.
    pub ratio: Surd,
    pub homology_class: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct HyperReport {
    pub genus: usize,
    pub area: Scalar,
    pub weierstrass: Vec<String>,
    pub events: Vec<EventRow>,
    pub basis: Vec<BasisRow>,
    pub rank: usize,
    pub homological_systole: Option<Surd>,
    pub iff: Option<IffReport>,
    pub checks: Vec<Check>,
}

impl HyperReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Pass/fail pattern, comparable across scalings.
    pub fn verdicts(&self) -> Vec<(String, bool)> {
        self.checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
    }
}

/// `pi * g * sy_h^2 <= 8 * area`.
fn sys_h_fits(sy_sq: &Surd, genus: usize, area: &Scalar) -> bool {
    let f = |bits: u32| &(&sy_sq.to_interval(bits) * &interval::pi(bits)) * &Interval::from_int(genus as i64);
    interval::compare_refined(f, &(area * Scalar::int(8)).0) != Ordering::Greater
}

pub fn run(surface: &SurfaceComplex, spec: &InvolutionSpec, opts: &PipelineOptions) -> Result<HyperReport, HyperError> {
    let mut inv = verify_involution(surface, spec)?;
    if let Some(b) = opts.budget {
        inv.flat.budget = b;
    }
    let genus = inv.genus();
    let area = inv.flat.area.clone();
    let label = |i: usize| inv.weierstrass[i].label.clone();
    let mut checks = vec![Check::new(
        "fixed points",
        inv.weierstrass.len() == 2 * genus + 2,
        format!("{} fixed points for genus {genus}", inv.weierstrass.len()),
    )];

    let growth = disk_growth(&inv)?;
    checks.extend(growth_checks(&growth, genus, &area));
    let events: Vec<EventRow> = growth
        .events
        .iter()
        .map(|e| EventRow {
            step: e.step,
            case: e.case,
            radius: e.radius.clone(),
            frozen_before: e.frozen_before,
            frozen_after: e.frozen_after,
            ends: (label(e.endpoints.0), label(e.endpoints.1)),
        })
        .collect();
    let mut arcs = Vec::new();
    for e in &growth.events {
        arcs.push(e.arc);
        let w = build_wgraph(&inv, &growth, &arcs)?;
        let v = w.type_w_violations();
        checks.push(Check::new(format!("graph {} type W", e.step), v.is_empty(), v.join("; ")));
    }

    let pruned = prune(&inv, &growth)?;
    let (sep, _) = pruned.graph.separation_property()?;
    checks.push(Check::new("pruned graph separates", sep, format!("{} edges", pruned.events.len())));
    checks.extend(pruned.order_checks.iter().cloned());
    let cert = partial_basis_check(&inv, &growth, &pruned.events)?;
    checks.push(Check::new("basis rank", cert.rank == pruned.events.len(), format!("rank {}", cert.rank)));
    checks.push(Check::new("connected complement", cert.components == 1, format!("{} components", cert.components)));
    checks.push(Check::new("curves meet at most once", cert.intersections_ok, String::new()));
    checks.extend(cert.ratio_checks.iter().cloned());
    let inv_area = area.recip();
    let basis = pruned
        .events
        .iter()
        .zip(&cert.curves)
        .map(|(&e, c)| {
            let ev = &growth.events[e];
            BasisRow {
                event: e,
                ends: (label(ev.endpoints.0), label(ev.endpoints.1)),
                arc_length: growth.event_arc(e).path.length.clone(),
                curve_length: c.length.clone(),
                ratio: c.length.square().scale(&inv_area),
                homology_class: c.homology_class.clone(),
            }
        })
        .collect();

    let iff = match opts.iff_trials {
        Some(trials) => {
            let r = iff_cross_check(&inv, &growth, trials, opts.seed)?;
            checks.push(Check::new(
                "separation iff connected lift",
                r.disagreements.is_empty(),
                format!("{} graphs, {} failing, {} disagreements", r.tested, r.failing, r.disagreements.len()),
            ));
            Some(r)
        }
        None => None,
    };

    let mut homological_systole = None;
    if opts.homological_systole {
        // pi > 3, so this bound covers every length the inequality allows.
        let bound = &area * Scalar::new(8, 3 * genus as i64);
        match inv.flat.homological_systole(&bound) {
            Ok(c) => {
                let pass = sys_h_fits(&c.value_sq, genus, &area);
                checks.push(Check::new("homological systole bound", pass, format!("sy_h^2 = {}", c.value_sq)));
                homological_systole = Some(c.value().clone());
            }
            Err(GeodesicError::NoGeodesicFound) => {
                checks.push(Check::new("homological systole bound", false, format!("none below length^2 {bound}")));
            }
            Err(e) => return Err(e.into()),
        }
    }

    Ok(HyperReport {
        genus,
        area,
        weierstrass: inv.weierstrass.iter().map(|w| w.label.clone()).collect(),
        events,
        basis,
        rank: cert.rank,
        homological_systole,
        iff,
        checks,
    })
}
