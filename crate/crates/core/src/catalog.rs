//! Standard triangulated surfaces with marked cycle systems.

use crate::model::TriangulatedSurface;

/// Octahedron: vertex 0 is the north pole, 5 the south pole, 1–4 the equator.
pub fn octahedron(mark_equator: bool) -> TriangulatedSurface {
    let triangles = vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 1],
        [5, 2, 1],
        [5, 3, 2],
        [5, 4, 3],
        [5, 1, 4],
    ];
    let z: Vec<(usize, usize)> = if mark_equator {
        vec![(1, 2), (2, 3), (3, 4), (4, 1)]
    } else {
        Vec::new()
    };
    TriangulatedSurface::new(6, triangles, z)
}

/// The seven-vertex torus, faces `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn seven_vertex_torus() -> TriangulatedSurface {
    let triangles = (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    TriangulatedSurface::new(7, triangles, Vec::<(usize, usize)>::new())
}

fn grid_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Triangles of an `m × n` periodic grid, every square cut along the same diagonal.
fn grid_triangles(m: usize, n: usize) -> Vec<[usize; 3]> {
    let mut tris = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            let a = grid_index(n, i, j);
            let b = grid_index(n, (i + 1) % m, j);
            let c = grid_index(n, (i + 1) % m, (j + 1) % n);
            let d = grid_index(n, i, (j + 1) % n);
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    tris
}

/// `m × n` grid torus (`m, n ≥ 3`) with the horizontal circles at the given rows marked.
pub fn grid_torus(m: usize, n: usize, marked_rows: &[usize]) -> TriangulatedSurface {
    assert!(m >= 3 && n >= 3, "grid torus needs at least 3 × 3 vertices");
    let z: Vec<(usize, usize)> = marked_rows
        .iter()
        .flat_map(|&i| (0..n).map(move |j| (grid_index(n, i, j), grid_index(n, i, (j + 1) % n))))
        .collect();
    TriangulatedSurface::new(m * n, grid_triangles(m, n), z)
}

/// Genus-two surface: two 4 × 4 grid tori with the square at the origin
/// removed, glued along the boundary of that square. Marking the square gives
/// a separating circle with a one-holed torus (χ = −1) on each side.
pub fn genus_two(mark_neck: bool) -> TriangulatedSurface {
    let (m, n) = (4, 4);
    let removed = [
        [grid_index(n, 0, 0), grid_index(n, 1, 0), grid_index(n, 1, 1)],
        [grid_index(n, 0, 0), grid_index(n, 1, 1), grid_index(n, 0, 1)],
    ];
    let neck = [
        grid_index(n, 0, 0),
        grid_index(n, 1, 0),
        grid_index(n, 1, 1),
        grid_index(n, 0, 1),
    ];
    let half: Vec<[usize; 3]> = grid_triangles(m, n)
        .into_iter()
        .filter(|t| !removed.contains(t))
        .collect();

    // Second copy: neck vertices shared, the rest shifted past the first copy.
    let mut remap = vec![usize::MAX; m * n];
    let mut next = m * n;
    for (v, slot) in remap.iter_mut().enumerate() {
        if neck.contains(&v) {
            *slot = v;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut triangles = half.clone();
    triangles.extend(half.iter().map(|t| [remap[t[0]], remap[t[1]], remap[t[2]]]));

    let z: Vec<(usize, usize)> = if mark_neck {
        (0..4).map(|k| (neck[k], neck[(k + 1) % 4])).collect()
    } else {
        Vec::new()
    };
    TriangulatedSurface::new(next, triangles, z)
}
