use systolic::builder::hyperelliptic_family;
use systolic::hyperelliptic::{disk_growth, growth_checks, verify_involution, ChartMap, HyperError, InvolutionSpec};
use systolic::scalar::Scalar;

#[test]
fn family_involutions_have_two_g_plus_two_fixed_points() {
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).unwrap();
        let inv = verify_involution(&h.surface, &h.involution).unwrap();
        assert_eq!(inv.genus(), m + 1);
        assert_eq!(inv.weierstrass.len(), 2 * m + 4);
        for p in &inv.weierstrass {
            assert_eq!(inv.vmap[p.vertex], p.vertex);
            // Independent check with the chart map itself.
            let (r, x, y) = h.involution.apply(p.rect, &p.x, &p.y).unwrap();
            assert_eq!(inv.flat.vertex_at(r, &x, &y), p.vertex);
        }
        for v in 0..inv.vmap.len() {
            assert_eq!(inv.vmap[inv.vmap[v]], v);
        }
    }
}

#[test]
fn identity_is_rejected() {
    let h = hyperelliptic_family(1, 2).unwrap();
    let id = InvolutionSpec { maps: vec![ChartMap { rect: 0, target: 0, sx: 1, sy: 1, tx: Scalar::zero(), ty: Scalar::zero() }] };
    assert!(matches!(verify_involution(&h.surface, &id), Err(HyperError::NotInvolution(_))));
}

#[test]
fn growth_runs() {
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).unwrap();
        let inv = verify_involution(&h.surface, &h.involution).unwrap();
        let t0 = std::time::Instant::now();
        let g = disk_growth(&inv).unwrap();
        eprintln!("m={m} {:?}", t0.elapsed());
        for e in &g.events {
            eprintln!("  {} {} r={} j={}->{} {:?}", e.step, e.case, e.radius, e.frozen_before, e.frozen_after, e.endpoints);
        }
        for c in growth_checks(&g, inv.genus(), &inv.flat.area) {
            assert!(c.pass, "{} {}", c.name, c.detail);
        }
    }
}

#[test]
fn intermediate_graphs_are_type_w() {
    use systolic::hyperelliptic::build_wgraph;
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).unwrap();
        let inv = verify_involution(&h.surface, &h.involution).unwrap();
        let g = disk_growth(&inv).unwrap();
        let mut arcs = Vec::new();
        for e in &g.events {
            arcs.push(e.arc);
            let w = build_wgraph(&inv, &g, &arcs).unwrap();
            assert!(w.is_type_w(), "{:?}", w.type_w_violations());
            let (sep, checks) = w.separation_property().unwrap();
            eprintln!("m={m} step {} faces {} sep {sep} {:?}", e.step, w.face_count, checks.iter().map(|c| &c.detail).collect::<Vec<_>>());
        }
    }
}

#[test]
fn pruned_graph_lifts_to_partial_basis() {
    use systolic::hyperelliptic::{partial_basis_check, prune, pruned_size};
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).unwrap();
        let inv = verify_involution(&h.surface, &h.involution).unwrap();
        let g = disk_growth(&inv).unwrap();
        let p = prune(&inv, &g).unwrap();
        let k = pruned_size(inv.genus());
        assert_eq!(p.events.len(), k);
        for c in &p.order_checks {
            assert!(c.pass, "m={m} {} {}", c.name, c.detail);
        }
        let cert = partial_basis_check(&inv, &g, &p.events).unwrap();
        eprintln!("m={m} kept {:?} rank {} lengths {:?}", p.events, cert.rank, cert.curves.iter().map(|c| c.length.to_string()).collect::<Vec<_>>());
        assert_eq!(cert.rank, k);
        assert_eq!(cert.components, 1);
        assert!(cert.intersections_ok);
        for c in &cert.ratio_checks {
            assert!(c.pass, "m={m} {} {}", c.name, c.detail);
        }
    }
}

#[test]
fn separation_matches_connected_complement() {
    use systolic::hyperelliptic::iff_cross_check;
    let mut failing = 0;
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).unwrap();
        let inv = verify_involution(&h.surface, &h.involution).unwrap();
        let g = disk_growth(&inv).unwrap();
        let t0 = std::time::Instant::now();
        let r = iff_cross_check(&inv, &g, 40, 7).unwrap();
        eprintln!("m={m} tested {} failing {} {:?}", r.tested, r.failing, t0.elapsed());
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        failing += r.failing;
    }
    assert!(failing >= 10);
}

#[test]
fn pipeline_runs_on_family() {
    use systolic::hyperelliptic::{run, PipelineOptions};
    for m in 1..=3 {
        let h = hyperelliptic_family(m, 2).unwrap();
        let t0 = std::time::Instant::now();
        let r = run(&h.surface, &h.involution, &PipelineOptions { iff_trials: None, ..Default::default() }).unwrap();
        eprintln!("m={m} {:?} sy_h={:?} area={}", t0.elapsed(), r.homological_systole.as_ref().map(|s| s.to_string()), r.area);
        for c in &r.checks {
            assert!(c.pass, "m={m} {} {}", c.name, c.detail);
        }
    }
}
