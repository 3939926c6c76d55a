use systolic::builder::{slit_rectangle, slit_torus, slit_torus_one, SlitPiece};
use systolic::geodesics::{cylinders, mark_slit_endpoints, slit_endpoint_gap, systole, FlatSurface};
use systolic::scalar::Scalar;
use systolic::surd::Surd;
use systolic::surface::SurfaceComplex;

/// Slits of `slit_torus` as `(y, x0, x1)` in torus coordinates, rows stacked bottom up.
fn slit_segments(p: &SlitPiece) -> Vec<(Scalar, Scalar, Scalar)> {
    let mut tops = vec![Scalar::zero()];
    for r in &p.surface.rects {
        let next = tops.last().unwrap() + &r.height;
        tops.push(next);
    }
    p.slits.iter().map(|s| (tops[s.lower.rect + 1].clone(), s.lower.start.clone(), s.lower.end.clone())).collect()
}

fn torus_size(p: &SlitPiece) -> (Scalar, Scalar) {
    (p.surface.rects[0].width.clone(), p.surface.rects.iter().map(|r| r.height.clone()).sum())
}

/// Squared distance between horizontal segments in the plane.
fn seg_dist_sq(a: &(Scalar, Scalar, Scalar), b: &(Scalar, Scalar, Scalar), dx: &Scalar, dy: &Scalar) -> Scalar {
    let y = &b.0 + dy - &a.0;
    let (b0, b1) = (&b.1 + dx, &b.2 + dx);
    let gap = if b0 > a.2 {
        &b0 - &a.2
    } else if a.1 > b1 {
        &a.1 - &b1
    } else {
        Scalar::zero()
    };
    &y * &y + &gap * &gap
}

fn lattice_min(w: &Scalar, h: &Scalar, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Scalar {
    let mut best: Option<Scalar> = None;
    for i in -1..=1 {
        for j in -1..=1 {
            let d = f(&(w * Scalar::int(i)), &(h * Scalar::int(j)));
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.unwrap()
}

#[test]
fn distinct_slits_are_at_least_two_over_l_apart() {
    let t0 = std::time::Instant::now();
    let p = slit_torus(2).unwrap();
    let (w, h) = torus_size(&p);
    assert_eq!((w.clone(), h.clone()), (Scalar::int(6), Scalar::int(4)));
    let segs = slit_segments(&p);
    let mut oracle: Option<Scalar> = None;
    for (i, a) in segs.iter().enumerate() {
        for b in &segs[i + 1..] {
            let d = lattice_min(&w, &h, |dx, dy| seg_dist_sq(a, b, dx, dy));
            if oracle.as_ref().is_none_or(|o| d < *o) {
                oracle = Some(d);
            }
        }
    }
    assert_eq!(oracle, Some(Scalar::one()));
    let gap = slit_endpoint_gap(&p, &Scalar::int(4)).unwrap().unwrap();
    assert_eq!(gap.length, Surd::int(1));
    assert!(t0.elapsed().as_secs() < 60);
}

#[test]
fn endpoint_distances_match_lattice_translates() {
    let p = slit_torus(2).unwrap();
    let (w, h) = torus_size(&p);
    let s = mark_slit_endpoints(&p);
    let f = FlatSurface::new(&s).unwrap();
    let mut pts = Vec::new();
    for (n, seg) in slit_segments(&p).iter().enumerate().take(4) {
        pts.push((f.marked_vertex(&format!("s{n}a")).unwrap(), seg.1.clone(), seg.0.clone()));
        pts.push((f.marked_vertex(&format!("s{n}b")).unwrap(), seg.2.clone(), seg.0.clone()));
    }
    let bound = Scalar::int(10);
    let mut stops = f.cone_stops();
    for &(v, _, _) in &pts {
        stops[v] = true;
    }
    let table = f.links(&stops, &bound).unwrap();
    for (i, (u, ux, uy)) in pts.iter().enumerate() {
        for (v, vx, vy) in &pts[i + 1..] {
            let want = lattice_min(&w, &h, |dx, dy| {
                let (x, y) = (vx + dx - ux, vy + dy - uy);
                &x * &x + &y * &y
            });
            let got = f.shortest_path_in(&table, *u, *v, &bound, &[]).unwrap();
            match got {
                Some(path) => assert_eq!(path.length_sq(), Surd::rational(&want), "{u} {v} {:?}", path.links.iter().map(|l| l.vec()).collect::<Vec<_>>()),
                None => assert!(want >= bound, "{u} ({ux},{uy}) {v} ({vx},{vy}) want {want}"),
            }
        }
    }
}

#[test]
fn closed_slit_torus_systole_is_two_l() {
    let p = slit_torus(2).unwrap();
    let closed: SurfaceComplex = p.closed();
    let cert = systole(&closed, &Scalar::int(40)).unwrap();
    assert_eq!(cert.value(), &Surd::int(4));
    assert!(cert.exhaustive);
    let horizontal = cylinders(&closed, (&Scalar::one(), &Scalar::zero()), &Scalar::int(40)).unwrap();
    assert!(horizontal.iter().all(|c| c.circumference == Surd::int(6)));
}

#[test]
fn slit_endpoint_to_outer_boundary_is_one_over_l() {
    let p = slit_rectangle(2).unwrap();
    let sl = &p.slits[0];
    let (lo, hi) = (&p.surface.rects[sl.lower.rect], &p.surface.rects[sl.upper.rect]);
    let (x0, y0) = (sl.lower.start.clone(), lo.height.clone());
    let margins = [x0.clone(), &lo.width - &sl.lower.end, y0.clone(), hi.height.clone()];
    assert!(margins.iter().all(|m| *m == Scalar::new(1, 2)));
    // Geodesics need a closed surface: glue the outer sides and close the
    // slit, then measure from the endpoint to the former top side.
    let mut s = slit_torus_one(2).unwrap().closed();
    s.mark(sl.upper.rect, x0.clone(), hi.height.clone(), "top");
    s.mark(sl.lower.rect, x0.clone(), y0, "end");
    s.mark(sl.lower.rect, Scalar::zero(), lo.height.clone(), "left");
    for far in ["top", "left"] {
        let path = systolic::geodesics::distance(&s, "end", far, &Scalar::int(1)).unwrap().unwrap();
        assert_eq!(path.length, Surd::rational(&Scalar::new(1, 2)), "{far}");
    }
}
