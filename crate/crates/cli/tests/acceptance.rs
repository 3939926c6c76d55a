//! One pass/fail line per acceptance criterion.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use systolic::builder::{assemble, example_x, hyperelliptic_family, slit_torus};
use systolic::geodesics::{cylinders, homological_systole, slit_endpoint_gap, systole};
use systolic::graph::{es_bound, generate_regular_girth, RegularGraph};
use systolic::hyperelliptic::{pruned_size, run, HyperReport, PipelineOptions};
use systolic::interval::{self, Interval};
use systolic::scalar::Scalar;
use systolic::surd::Surd;
use systolic_cli::lemma;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn example_topology() -> Outcome {
    let t = example_x(2).map_err(err)?.topology().map_err(err)?;
    ensure(t.genus == 2, format!("genus {}", t.genus))?;
    ensure(t.area == Scalar::int(6), format!("area {}", t.area))?;
    ensure(t.cone_points.len() == 2 && t.cone_points.iter().all(|c| c.angle_multiple() == 2), "cone angles")?;
    let excess: usize = t.cone_points.iter().map(|c| c.k).sum();
    ensure(excess == 2 * t.genus - 2, "sum of k differs from 2g - 2")?;
    Ok("genus 2, area 6, two cone points of angle 4pi".into())
}

fn assembly_formulas() -> Outcome {
    let (s, m) = assemble(&RegularGraph::complete_bipartite(8), 2).map_err(err)?;
    let t = s.topology().map_err(err)?;
    let n = m.graph.vertex_count as i64;
    ensure(t.area == Scalar::int(n * (4 * 4 + 8)) && t.area == Scalar::int(384), format!("area {}", t.area))?;
    ensure(t.genus as i64 == n * 4 + 1 && t.genus == 65, format!("genus {}", t.genus))?;
    ensure(t.euler_characteristic == 2 - 2 * t.genus as i64, "euler characteristic")?;
    Ok(format!("area {} genus {} chi {}", t.area, t.genus, t.euler_characteristic))
}

fn assembled_systole() -> Outcome {
    let g = RegularGraph::complete_bipartite(8);
    let girth = g.girth().map_err(err)?.ok_or("acyclic graph")?;
    let l = 2;
    ensure(Scalar::int(girth as i64) * Scalar::new(2, l) >= Scalar::int(2 * l), "girth precondition")?;
    let (s, _) = assemble(&g, l).map_err(err)?;
    let cert = systole(&s, &Scalar::new(33, 2)).map_err(err)?;
    ensure(cert.value() == &Surd::int(4), format!("systole {}", cert.value()))?;
    ensure(cert.exhaustive, "search not exhaustive")?;
    Ok(format!("systole 4 = 2L below length^2 33/2, girth {girth}"))
}

fn slit_cross_checks() -> Outcome {
    let p = slit_torus(2).map_err(err)?;
    let gap = slit_endpoint_gap(&p, &Scalar::int(4)).map_err(err)?.ok_or("no slit pair below 2")?;
    ensure(gap.length >= Surd::int(1), format!("slit gap {}", gap.length))?;
    let closed = p.closed();
    let cert = systole(&closed, &Scalar::int(40)).map_err(err)?;
    ensure(cert.value() == &Surd::int(4), format!("closed torus systole {}", cert.value()))?;
    let horiz = cylinders(&closed, (&Scalar::one(), &Scalar::zero()), &Scalar::int(40)).map_err(err)?;
    ensure(!horiz.is_empty() && horiz.iter().all(|c| c.circumference == Surd::int(6)), "horizontal generator")?;
    Ok(format!("slit gap {}, closed torus systole 4, horizontal generator 6", gap.length))
}

fn girth_generation() -> Outcome {
    let mut sizes = Vec::new();
    for &(k, l) in &[(3, 5), (3, 6), (4, 5), (8, 4)] {
        let t0 = Instant::now();
        for seed in 0..5 {
            let g = generate_regular_girth(k, l, seed, 2_000_000).map_err(err)?;
            g.validate().map_err(err)?;
            ensure(g.k == k, "degree")?;
            ensure(g.girth().map_err(err)?.is_some_and(|x| x >= l), format!("girth below {l}"))?;
            ensure(g.vertex_count as u128 <= es_bound(k, l).map_err(err)?, "too many vertices")?;
            sizes.push(g.vertex_count);
        }
        ensure(t0.elapsed() < Duration::from_secs(60), format!("({k},{l}) took {:?}", t0.elapsed()))?;
    }
    Ok(format!("20 graphs, vertex counts {sizes:?}"))
}

fn lemma_sweep() -> Outcome {
    let r = lemma::sweep(&Scalar::int(6), &Scalar::int(60), 200, None).map_err(err)?;
    ensure(r.rows.len() == 200, "sample count")?;
    ensure(r.violations.is_empty(), format!("violations {:?}", r.violations))?;
    Ok("200 samples, zero violations".into())
}

fn sys_h_bound() -> Outcome {
    let mut out = Vec::new();
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).map_err(err)?;
        let t = h.surface.topology().map_err(err)?;
        let g = t.genus as i64;
        let cert = homological_systole(&h.surface, &(&t.area * Scalar::new(8, 3 * g))).map_err(err)?;
        let sy = systole(&h.surface, &(&t.area * Scalar::new(8, 3 * g))).map_err(err)?;
        ensure(sy.value() <= cert.value(), "systole exceeds homological systole")?;
        let lhs = |bits: u32| &(&cert.value_sq.to_interval(bits) * &interval::pi(bits)) * &Interval::from_int(g);
        let ok = interval::compare_refined(lhs, &(&t.area * Scalar::int(8)).0) != Ordering::Greater;
        ensure(ok, format!("m={m}: sy_h^2 = {} area {}", cert.value_sq, t.area))?;
        out.push(format!("g={g} sy_h^2/area={}", cert.value_sq.scale(&t.area.recip())));
    }
    Ok(out.join(", "))
}

fn named<'a>(r: &'a HyperReport, pred: impl Fn(&str) -> bool + 'a) -> impl Iterator<Item = &'a systolic::hyperelliptic::Check> + 'a {
    r.checks.iter().filter(move |c| pred(&c.name))
}

fn all_named(r: &HyperReport, m: usize, pred: impl Fn(&str) -> bool) -> Result<usize, String> {
    let mut n = 0;
    for c in named(r, pred) {
        ensure(c.pass, format!("m={m}: {} ({})", c.name, c.detail))?;
        n += 1;
    }
    Ok(n)
}

fn growth_bounds(reports: &[HyperReport]) -> Outcome {
    let mut out = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let steps = all_named(r, i + 1, |n| n.ends_with("area bound") && n.starts_with("step"))?;
        ensure(steps == r.events.len(), "missing step checks")?;
        all_named(r, i + 1, |n| n == "monotone radii" || n == "arc count")?;
        out.push(format!("g={} M={}", r.genus, r.events.len()));
    }
    Ok(out.join(", "))
}

fn type_w_and_separation(reports: &[HyperReport]) -> Outcome {
    let mut failing = 0;
    let mut tested = 0;
    for (i, r) in reports.iter().enumerate() {
        let w = all_named(r, i + 1, |n| n.ends_with("type W"))?;
        ensure(w == r.events.len(), "missing type W checks")?;
        let iff = r.iff.as_ref().ok_or("cross-check skipped")?;
        ensure(iff.disagreements.is_empty(), format!("{:?}", iff.disagreements))?;
        failing += iff.failing;
        tested += iff.tested;
    }
    ensure(failing >= 10, format!("only {failing} failing graphs"))?;
    Ok(format!("{tested} graphs, {failing} without separation, zero disagreements"))
}

fn basis_extraction(reports: &[HyperReport]) -> Outcome {
    let mut out = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let k = pruned_size(r.genus);
        ensure(k == [2, 3, 4][i], "K formula")?;
        ensure(r.basis.len() == k && r.rank == k, format!("m={}: {} curves rank {}", i + 1, r.basis.len(), r.rank))?;
        all_named(r, i + 1, |n| n == "connected complement" || n == "basis rank" || n.ends_with("length ratio"))?;
        out.push(format!("g={} K={k}", r.genus));
    }
    Ok(out.join(", "))
}

fn scale_invariance() -> Outcome {
    let x = example_x(2).map_err(err)?;
    let base = systole(&x, &Scalar::int(4)).map_err(err)?;
    let area = x.area();
    let opts = PipelineOptions { iff_trials: Some(10), ..Default::default() };
    let h = hyperelliptic_family(1, 2).map_err(err)?;
    let ref_report = run(&h.surface, &h.involution, &opts).map_err(err)?;
    let ratios = |r: &HyperReport| r.basis.iter().map(|b| b.ratio.clone()).collect::<Vec<_>>();
    for c in [Scalar::new(1, 3), Scalar::int(2), Scalar::int(7)] {
        let xs = x.scale(&c).map_err(err)?;
        let cert = systole(&xs, &(&c * &c * Scalar::int(4))).map_err(err)?;
        ensure(cert.value() == &base.value().scale(&c), format!("c={c}: systole {}", cert.value()))?;
        let sr = cert.value_sq.scale(&xs.area().recip());
        ensure(sr == base.value_sq.scale(&area.recip()), format!("c={c}: ratio {sr}"))?;
        let r = run(&h.surface.scale(&c).map_err(err)?, &h.involution.scale(&c), &opts).map_err(err)?;
        ensure(r.verdicts() == ref_report.verdicts(), format!("c={c}: verdicts differ"))?;
        ensure(ratios(&r) == ratios(&ref_report), format!("c={c}: basis ratios differ"))?;
    }
    Ok("c in {1/3, 2, 7}: systole scales, ratios and verdicts unchanged".into())
}

struct Line {
    id: usize,
    name: &'static str,
    limit: Duration,
    outcome: Outcome,
    elapsed: Duration,
}

fn timed(id: usize, name: &'static str, limit_s: u64, f: impl FnOnce() -> Outcome) -> Line {
    let t0 = Instant::now();
    let outcome = f();
    Line { id, name, limit: Duration::from_secs(limit_s), outcome, elapsed: t0.elapsed() }
}

fn main() {
    let mut lines = vec![
        timed(1, "example surface topology", 1, example_topology),
        timed(2, "assembly area and genus", 10, assembly_formulas),
        timed(3, "assembled systole certificate", 300, assembled_systole),
        timed(4, "slit distance and closed torus systole", 60, slit_cross_checks),
        timed(5, "girth graph generation", 240, girth_generation),
        timed(6, "log ratio sweep", 10, lemma_sweep),
        timed(7, "homological systole inequality", 360, sys_h_bound),
    ];
    let t0 = Instant::now();
    let reports: Result<Vec<HyperReport>, String> = (1..=3)
        .map(|m| {
            let h = hyperelliptic_family(m, 2).map_err(err)?;
            let opts = PipelineOptions { iff_trials: Some(40), homological_systole: false, ..Default::default() };
            run(&h.surface, &h.involution, &opts).map_err(err)
        })
        .collect();
    let shared = t0.elapsed();
    let with = |id, name, limit_s, f: fn(&[HyperReport]) -> Outcome| {
        let mut l = timed(id, name, limit_s, || reports.as_ref().map_err(Clone::clone).and_then(|r| f(r)));
        l.elapsed += shared;
        l
    };
    lines.push(with(8, "disk growth bounds", 360, growth_bounds));
    lines.push(with(9, "type W and separation cross-check", 360, type_w_and_separation));
    lines.push(with(10, "basis extraction", 900, basis_extraction));
    lines.push(timed(11, "scale invariance", 120, scale_invariance));

    let mut failed = 0;
    for l in &lines {
        let (pass, detail) = match &l.outcome {
            Ok(d) if l.elapsed <= l.limit => (true, d.clone()),
            Ok(d) => (false, format!("{d}; over time limit {:?}", l.limit)),
            Err(e) => (false, e.clone()),
        };
        if !pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {} ({:.2?}): {detail}", if pass { "PASS" } else { "FAIL" }, l.id, l.name, l.elapsed);
    }
    println!("{} of {} criteria passed", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
