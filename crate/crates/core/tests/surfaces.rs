use std::collections::{BTreeMap, HashMap};

use btangent::catalog::{genus_two, grid_torus, octahedron, seven_vertex_torus};
use btangent::model::{build_graph_from_surface, surface_euler, BGraph, EdgeKey, SurfaceError, TriangulatedSurface};
use btangent::two_color;
use proptest::prelude::*;

/// Union-find over triangles, merging across every edge outside `Z`.
fn union_find_regions(s: &TriangulatedSurface) -> usize {
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..s.triangles.len()).collect();
    let mut first_seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, tri) in s.triangles.iter().enumerate() {
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
            let key = (a.min(b), a.max(b));
            if s.z_edges.contains(&EdgeKey::new(a, b)) {
                continue;
            }
            match first_seen.get(&key) {
                Some(&other) => {
                    let (x, y) = (find(&mut parent, t), find(&mut parent, other));
                    parent[x] = y;
                }
                None => {
                    first_seen.insert(key, t);
                }
            }
        }
    }
    (0..parent.len()).filter(|&t| find(&mut parent, t) == t).count()
}

/// Graph isomorphism by brute force over region permutations; `perm[i]` sends
/// region `i` of `h` to a region of `g` with the same χ.
fn isomorphic(g: &BGraph, h: &BGraph) -> bool {
    if g.regions.len() != h.regions.len() || g.edges.len() != h.edges.len() {
        return false;
    }
    let n = g.regions.len();
    let pos = |x: &BGraph, l: &str| x.regions.iter().position(|r| r.label == l).unwrap();
    let edge_multiset = |x: &BGraph, perm: &[usize]| {
        let mut v: Vec<(usize, usize)> = x
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (perm[pos(x, &e.side_a)], perm[pos(x, &e.side_b)]);
                (a.min(b), a.max(b))
            })
            .collect();
        v.sort_unstable();
        v
    };
    let identity: Vec<usize> = (0..n).collect();
    let target = edge_multiset(g, &identity);

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    assert!(n <= 7, "brute-force isomorphism is only meant for small graphs");
    permutations(n).into_iter().any(|perm| {
        (0..n).all(|i| h.regions[i].euler_char == g.regions[perm[i]].euler_char)
            && edge_multiset(h, &perm) == target
    })
}

fn relabel(s: &TriangulatedSurface, perm: &[usize], tri_order: &[usize]) -> TriangulatedSurface {
    let triangles = tri_order
        .iter()
        .map(|&t| {
            let [a, b, c] = s.triangles[t];
            [perm[b], perm[c], perm[a]]
        })
        .collect();
    let z: Vec<(usize, usize)> = s.z_edges.iter().map(|e| (perm[e.1], perm[e.0])).collect();
    TriangulatedSurface::new(s.vertex_count, triangles, z)
}

fn chis(g: &BGraph) -> Vec<i64> {
    let mut v: Vec<i64> = g.regions.iter().map(|r| r.euler_char).collect();
    v.sort_unstable();
    v
}

fn fixtures() -> Vec<(&'static str, TriangulatedSurface)> {
    vec![
        ("octahedron", octahedron(false)),
        ("octahedron/equator", octahedron(true)),
        ("seven-vertex torus", seven_vertex_torus()),
        ("grid torus", grid_torus(5, 4, &[])),
        ("grid torus/one circle", grid_torus(5, 4, &[0])),
        ("grid torus/two circles", grid_torus(5, 4, &[0, 2])),
        ("grid torus/three circles", grid_torus(6, 4, &[0, 2, 4])),
        ("genus two", genus_two(false)),
        ("genus two/neck", genus_two(true)),
    ]
}

#[test]
fn fixture_graphs_match_hand_counts() {
    let g = build_graph_from_surface(&octahedron(true)).unwrap();
    assert_eq!(chis(&g), vec![1, 1]);
    assert_eq!(g.edges.len(), 1);
    assert!(!g.edges[0].is_loop());

    let g = build_graph_from_surface(&seven_vertex_torus()).unwrap();
    assert_eq!(chis(&g), vec![0]);
    assert!(g.edges.is_empty());

    let g = build_graph_from_surface(&grid_torus(5, 4, &[0])).unwrap();
    assert_eq!(chis(&g), vec![0]);
    assert_eq!(g.edges.len(), 1);
    assert!(g.edges[0].is_loop());
    assert!(two_color(&g).is_none());

    let g = build_graph_from_surface(&grid_torus(5, 4, &[0, 2])).unwrap();
    assert_eq!(chis(&g), vec![0, 0]);
    assert_eq!(g.edges.len(), 2);
    assert!(two_color(&g).is_some());

    let g = build_graph_from_surface(&grid_torus(6, 4, &[0, 2, 4])).unwrap();
    assert_eq!(chis(&g), vec![0, 0, 0]);
    assert!(two_color(&g).is_none());

    let g = build_graph_from_surface(&genus_two(true)).unwrap();
    assert_eq!(chis(&g), vec![-1, -1]);
    assert_eq!(g.edges.len(), 1);
    assert_eq!(surface_euler(&genus_two(true)), -2);
}

#[test]
fn region_closures_sum_to_surface_euler() {
    for (name, s) in fixtures() {
        let g = build_graph_from_surface(&s).unwrap();
        assert_eq!(g.total_region_euler(), surface_euler(&s), "{name}");
    }
}

#[test]
fn region_count_matches_union_find() {
    for (name, s) in fixtures() {
        let g = build_graph_from_surface(&s).unwrap();
        assert_eq!(g.regions.len(), union_find_regions(&s), "{name}");
    }
}

#[test]
fn open_surface_is_rejected() {
    let mut s = octahedron(false);
    s.triangles.pop();
    assert!(matches!(build_graph_from_surface(&s), Err(SurfaceError::NonClosedSurface(..))));
}

#[test]
fn z_with_branch_vertex_is_rejected() {
    let s = TriangulatedSurface::new(
        6,
        octahedron(false).triangles,
        vec![(1, 2), (2, 3), (3, 4), (4, 1), (0, 1)],
    );
    assert!(matches!(build_graph_from_surface(&s), Err(SurfaceError::InvalidZ(_))));
}

#[test]
fn z_edge_outside_complex_is_rejected() {
    // 1–3 is a diagonal of the equatorial square, not an edge of the octahedron.
    let s = TriangulatedSurface::new(6, octahedron(false).triangles, vec![(1, 3), (3, 2), (2, 1)]);
    assert!(build_graph_from_surface(&s).is_err());
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_is_invariant_under_relabelling(
        which in 0usize..9,
        seed_perm in perm_strategy(28),
        seed_tris in perm_strategy(60),
    ) {
        let (_, s) = fixtures().swap_remove(which);
        let perm: Vec<usize> = seed_perm.iter().copied().filter(|&v| v < s.vertex_count).collect();
        let order: Vec<usize> = seed_tris.iter().copied().filter(|&t| t < s.triangles.len()).collect();
        let g = build_graph_from_surface(&s).unwrap();
        let h = build_graph_from_surface(&relabel(&s, &perm, &order)).unwrap();
        prop_assert!(isomorphic(&g, &h));
        prop_assert_eq!(
            g.edges.iter().filter(|e| e.is_loop()).count(),
            h.edges.iter().filter(|e| e.is_loop()).count()
        );
    }

    #[test]
    fn marked_rows_on_grid_torus(rows in prop::collection::btree_set(0usize..6, 0..=6)) {
        let rows: Vec<usize> = rows.into_iter().collect();
        let s = grid_torus(6, 3, &rows);
        let g = build_graph_from_surface(&s).unwrap();
        let k = rows.len();
        prop_assert_eq!(g.regions.len(), k.max(1));
        prop_assert_eq!(g.edges.len(), k);
        prop_assert_eq!(g.total_region_euler(), 0);
        prop_assert_eq!(g.regions.len(), union_find_regions(&s));
        // k parallel circles cut the torus into a cycle of k annuli.
        prop_assert_eq!(two_color(&g).is_some(), k.is_multiple_of(2));
        let mut degree: BTreeMap<&str, usize> = BTreeMap::new();
        for e in &g.edges {
            *degree.entry(&e.side_a).or_default() += 1;
            *degree.entry(&e.side_b).or_default() += 1;
        }
        prop_assert!(degree.values().all(|&d| d == 2));
    }
}
