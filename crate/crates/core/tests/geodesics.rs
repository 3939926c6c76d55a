use num_integer::Integer;
use systolic::builder::{example_x, slit_torus};
use systolic::geodesics::{FlatSurface, GeodesicKind};
use systolic::scalar::Scalar;
use systolic::surd::Surd;
use systolic::surface::{Side, SurfaceComplex};

fn torus(w: Scalar, h: Scalar) -> SurfaceComplex {
    let mut s = SurfaceComplex::new();
    let r = s.add_rect(w, h);
    s.glue_sides(r, Side::Right, r);
    s.glue_sides(r, Side::Top, r);
    s
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

#[test]
fn unit_torus_saddle_connections_are_unit_vectors() {
    let mut s = torus(int(1), int(1));
    s.mark(0, int(0), int(0), "p");
    let f = FlatSurface::new(&s).unwrap();
    let sc = f.saddle_connections(&Scalar::new(5, 4)).unwrap();
    let mut hol: Vec<_> = sc.iter().map(|c| (c.holonomy.0.to_i64().unwrap(), c.holonomy.1.to_i64().unwrap())).collect();
    hol.sort();
    // Each segment once: one of each pair of opposite vectors.
    assert_eq!(hol.len(), 2);
    assert!(hol.iter().all(|&(x, y)| x * x + y * y == 1));
}

#[test]
fn torus_connections_match_primitive_lattice_vectors() {
    // Independent oracle: on a torus with one marked point, saddle
    // connections are exactly the primitive lattice vectors, up to sign.
    let mut s = torus(int(1), int(1));
    s.mark(0, int(0), int(0), "p");
    let f = FlatSurface::new(&s).unwrap();
    let sc = f.saddle_connections(&int(30)).unwrap();
    let mut expected = 0;
    for x in -6i64..=6 {
        for y in -6i64..=6 {
            if (x, y) != (0, 0) && x.gcd(&y) == 1 && x * x + y * y < 30 {
                expected += 1;
            }
        }
    }
    assert_eq!(sc.len() * 2, expected);
    for c in &sc {
        assert_eq!(c.length_sq, &c.holonomy.0 * &c.holonomy.0 + &c.holonomy.1 * &c.holonomy.1);
    }
}

#[test]
fn rectangular_torus_horizontal_cylinder() {
    let s = torus(int(6), int(4));
    let cyl = systolic::geodesics::cylinders(&s, (&int(1), &int(0)), &int(100)).unwrap();
    assert_eq!(cyl.len(), 1);
    assert_eq!(cyl[0].circumference.as_rational(), Some(int(6)));
    assert_eq!(cyl[0].width.as_rational(), Some(int(4)));
    assert_eq!(cyl[0].area, int(24));
}

#[test]
fn flat_torus_systoles() {
    for (a, b) in [(int(1), int(1)), (int(3), Scalar::new(5, 2)), (Scalar::new(2, 3), int(2))] {
        let s = torus(a.clone(), b.clone());
        let f = FlatSurface::new(&s).unwrap();
        let bound = (&a * &a + &b * &b) * int(2);
        let sys = f.systole(&bound).unwrap();
        let m = a.clone().min(b.clone());
        assert_eq!(sys.value_sq.as_rational(), Some(&m * &m));
        let h = f.homological_systole(&bound).unwrap();
        assert_eq!(h.value_sq, sys.value_sq);
    }
    let f = FlatSurface::new(&torus(int(1), int(1))).unwrap();
    let g = f.closed_geodesics(&Scalar::new(11, 10)).unwrap();
    assert_eq!(g.len(), 2);
    assert!(g.iter().all(|x| x.kind == GeodesicKind::CylinderCore));
}

#[test]
fn example_x_geometry() {
    let x = example_x(2).unwrap();
    let f = FlatSurface::new(&x).unwrap();
    assert_eq!(f.genus(), 2);
    let sc = f.saddle_connections(&int(5)).unwrap();
    // The vertical through a slit endpoint closes up after the strip
    // height 1 and bounds the margin cylinder; the slit lips have length 2.
    assert_eq!(sc[0].length_sq, int(1));
    assert!(sc.iter().any(|c| c.length_sq == int(1) && c.holonomy.0.is_zero()));
    assert!(sc.iter().any(|c| c.length_sq == int(4) && c.holonomy.1.is_zero() && c.start != c.end));
    let sys = f.systole(&Scalar::new(121, 100)).unwrap();
    assert_eq!(sys.value_sq.as_rational(), Some(int(1)));
    assert!(sys.witness.simple);
    let h = f.homological_systole(&Scalar::new(121, 100)).unwrap();
    assert_eq!(h.value_sq.as_rational(), Some(int(1)));
    let vertical = f.cylinders_in((0, 1)).unwrap();
    assert!(vertical.iter().any(|c| c.circumference == Surd::int(1)));
}

#[test]
fn slit_torus_has_vertical_cylinders_of_circumference_four() {
    let t = slit_torus(2).unwrap().closed();
    let f = FlatSurface::new(&t).unwrap();
    let v = f.cylinders_in((0, 1)).unwrap();
    assert!(v.iter().any(|c| c.circumference == Surd::int(4)));
    let total: Scalar = v.iter().map(|c| c.area.clone()).sum();
    assert_eq!(total, f.area);
}

#[test]
fn distances_on_torus() {
    let mut s = torus(int(1), int(1));
    s.mark(0, int(0), int(0), "p");
    s.mark(0, Scalar::new(1, 2), int(0), "q");
    let d = systolic::geodesics::distance(&s, "p", "q", &int(4)).unwrap().unwrap();
    assert_eq!(d.length.as_rational(), Some(Scalar::new(1, 2)));
    let l = systolic::geodesics::shortest_loop_at(&s, "p", &int(4)).unwrap().unwrap();
    assert_eq!(l.length.as_rational(), Some(int(1)));
    assert!(systolic::geodesics::distance(&s, "p", "q", &Scalar::new(1, 5)).unwrap().is_none());
}



#[test]
fn assembled_surface_systole_is_twice_l() {
    let g = systolic::graph::RegularGraph::complete_bipartite(8);
    let (s, _) = systolic::builder::assemble(&g, 2).unwrap();
    let f = FlatSurface::new(&s).unwrap();
    let t0 = std::time::Instant::now();
    let sys = f.systole(&Scalar::new(33, 2)).unwrap();
    eprintln!("systole {} in {:?}", sys.value(), t0.elapsed());
    assert_eq!(sys.value_sq.as_rational(), Some(int(16)));
    // Directed connections come in opposite pairs; the listing keeps one of each.
    let sc = f.saddle_connections(&int(17)).unwrap();
    let table = f.links(&f.all_stops(), &int(17)).unwrap();
    let mut hol: Vec<_> = table.links.iter().map(|l| l.vec()).collect();
    let mut neg: Vec<_> = hol.iter().map(|&(x, y)| (-x, -y)).collect();
    hol.sort();
    neg.sort();
    assert_eq!(hol, neg);
    assert_eq!(table.links.len(), 2 * sc.len());
}
