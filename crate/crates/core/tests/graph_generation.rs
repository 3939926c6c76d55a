use systolic::graph::{es_bound, generate_regular_girth, load_graph};

#[test]
fn certified_girth_over_seeds() {
    for &(k, l) in &[(3, 5), (3, 6), (4, 5), (8, 4)] {
        for seed in 0..5 {
            let t = std::time::Instant::now();
            let g = generate_regular_girth(k, l, seed, 2_000_000).unwrap();
            g.validate().unwrap();
            assert!(g.girth().unwrap().unwrap() >= l);
            assert!(g.vertex_count as u128 <= es_bound(k, l).unwrap());
            assert!(g.is_connected());
            eprintln!("k={k} l={l} seed={seed} n={} {:?}", g.vertex_count, t.elapsed());
        }
    }
}

#[test]
fn shipped_fixture_is_k88() {
    let g = load_graph(include_str!("../../../fixtures/k8_8.graph")).unwrap();
    assert_eq!((g.vertex_count, g.edges.len()), (16, 64));
    assert_eq!(g.girth().unwrap(), Some(4));
}
