//! Named example maps, addressable from the CLI and reused across tests.
//!
//! Combinatorial tables for the polyhedral entries were derived from 3D
//! coordinates (edges at minimal distance, neighbor cycles by tangent-plane
//! angle) and are frozen here; the coordinate-backed entries are drawn on
//! the triangular lattice so that every edge has length exactly 1.

use crate::map::{PlanarMap, VertexId};

/// One catalog entry: a map, optional unit-edge coordinates, and a note.
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub map: PlanarMap,
    /// Unit-edge drawing, when one exists and is part of the example.
    pub coords: Option<Vec<(VertexId, (f64, f64))>>,
}

const SQRT3_2: f64 = 0.8660254037844386;

fn entry_table(name: &str) -> Option<CatalogEntry> {
    let e = match name {
        "triangle" => CatalogEntry {
            name: "triangle",
            summary: "one unit triangle; the smallest 2-regular matchstick map",
            map: PlanarMap::from_rotations(&[(1, vec![2, 3]), (2, vec![3, 1]), (3, vec![1, 2])])
                .unwrap(),
            coords: Some(vec![
                (VertexId(1), (0.0, 0.0)),
                (VertexId(2), (1.0, 0.0)),
                (VertexId(3), (0.5, SQRT3_2)),
            ]),
        },
        "square" => CatalogEntry {
            name: "square",
            summary: "unit square; a quadrilateral face whose diagonals are not unit",
            map: PlanarMap::from_rotations(&[
                (1, vec![2, 4]),
                (2, vec![3, 1]),
                (3, vec![4, 2]),
                (4, vec![3, 1]),
            ])
            .unwrap(),
            coords: Some(vec![
                (VertexId(1), (0.0, 0.0)),
                (VertexId(2), (1.0, 0.0)),
                (VertexId(3), (1.0, 1.0)),
                (VertexId(4), (0.0, 1.0)),
            ]),
        },
        "rhombus" => CatalogEntry {
            name: "rhombus",
            summary: "60-degree unit rhombus; its short diagonal is unit, so the face is a diamond",
            map: PlanarMap::from_rotations(&[
                (1, vec![2, 4]),
                (2, vec![3, 1]),
                (3, vec![4, 2]),
                (4, vec![3, 1]),
            ])
            .unwrap(),
            coords: Some(vec![
                (VertexId(1), (0.0, 0.0)),
                (VertexId(2), (1.0, 0.0)),
                (VertexId(3), (1.5, SQRT3_2)),
                (VertexId(4), (0.5, SQRT3_2)),
            ]),
        },
        "rhombus-strip" => CatalogEntry {
            name: "rhombus-strip",
            summary: "two 60-degree rhombi sharing an edge; both faces are diamonds",
            map: PlanarMap::from_rotations(&[
                (1, vec![2, 4]),
                (2, vec![3, 5, 1]),
                (3, vec![6, 2]),
                (4, vec![5, 1]),
                (5, vec![6, 4, 2]),
                (6, vec![5, 3]),
            ])
            .unwrap(),
            coords: Some(vec![
                (VertexId(1), (0.0, 0.0)),
                (VertexId(2), (1.0, 0.0)),
                (VertexId(3), (2.0, 0.0)),
                (VertexId(4), (0.5, SQRT3_2)),
                (VertexId(5), (1.5, SQRT3_2)),
                (VertexId(6), (2.5, SQRT3_2)),
            ]),
        },
        "hex-patch" => CatalogEntry {
            name: "hex-patch",
            summary: "six unit triangles around a center vertex of degree 6",
            map: PlanarMap::from_rotations(&[
                (1, vec![2, 7, 6]),
                (2, vec![3, 7, 1]),
                (3, vec![2, 4, 7]),
                (4, vec![7, 3, 5]),
                (5, vec![6, 7, 4]),
                (6, vec![1, 7, 5]),
                (7, vec![1, 2, 3, 4, 5, 6]),
            ])
            .unwrap(),
            coords: Some(vec![
                (VertexId(1), (1.0, 0.0)),
                (VertexId(2), (0.5, SQRT3_2)),
                (VertexId(3), (-0.5, SQRT3_2)),
                (VertexId(4), (-1.0, 0.0)),
                (VertexId(5), (-0.5, -SQRT3_2)),
                (VertexId(6), (0.5, -SQRT3_2)),
                (VertexId(7), (0.0, 0.0)),
            ]),
        },
        "tetrahedron" => CatalogEntry {
            name: "tetrahedron",
            summary: "smallest 3-regular plane map",
            map: PlanarMap::from_rotations(&[
                (1, vec![4, 2, 3]),
                (2, vec![3, 1, 4]),
                (3, vec![4, 1, 2]),
                (4, vec![2, 1, 3]),
            ])
            .unwrap(),
            coords: None,
        },
        "cube" => CatalogEntry {
            name: "cube",
            summary: "3-regular plane map with six quadrilateral faces",
            map: PlanarMap::from_rotations(&[
                (1, vec![3, 2, 5]),
                (2, vec![6, 1, 4]),
                (3, vec![4, 1, 7]),
                (4, vec![8, 2, 3]),
                (5, vec![7, 1, 6]),
                (6, vec![5, 2, 8]),
                (7, vec![8, 3, 5]),
                (8, vec![6, 4, 7]),
            ])
            .unwrap(),
            coords: None,
        },
        "icosahedron" => CatalogEntry {
            name: "icosahedron",
            summary: "smallest 5-regular plane map; it admits no unit-edge straight-line drawing",
            map: icosahedron(),
            coords: None,
        },
        "snub-cube" => CatalogEntry {
            name: "snub-cube",
            summary: "5-regular map whose 24 vertices each see four triangles and one tetragon \
                      (per-vertex charge 5/6); its six tetragons are pairwise disjoint",
            map: snub(&entry_table("cube").unwrap().map),
            coords: None,
        },
        "snub-dodecahedron" => CatalogEntry {
            name: "snub-dodecahedron",
            summary: "5-regular map whose 60 vertices each see four triangles and one pentagon \
                      (per-vertex charge 1/3); every pentagon is flagged by the case analysis",
            map: snub(&icosahedron()),
            coords: None,
        },
        "quad-bowtie" => CatalogEntry {
            name: "quad-bowtie",
            summary: "5-regular map with four tetragons forming two vertex-sharing pairs; \
                      augmenting one pair drives the shared vertex to degree 7",
            map: quad_bowtie(),
            coords: None,
        },
        _ => return None,
    };
    Some(e)
}

fn icosahedron() -> PlanarMap {
    PlanarMap::from_rotations(&[
        (1, vec![7, 3, 2, 8, 6]),
        (2, vec![4, 8, 1, 3, 9]),
        (3, vec![9, 2, 1, 7, 5]),
        (4, vec![12, 8, 2, 9, 10]),
        (5, vec![10, 9, 3, 7, 11]),
        (6, vec![11, 7, 1, 8, 12]),
        (7, vec![5, 3, 1, 6, 11]),
        (8, vec![12, 6, 1, 2, 4]),
        (9, vec![10, 4, 2, 3, 5]),
        (10, vec![11, 12, 4, 9, 5]),
        (11, vec![12, 10, 5, 7, 6]),
        (12, vec![6, 8, 4, 10, 11]),
    ])
    .unwrap()
}

fn quad_bowtie() -> PlanarMap {
    PlanarMap::from_rotations(&[
        (1, vec![4, 17, 5, 7, 2]),
        (2, vec![7, 8, 9, 3, 1]),
        (3, vec![9, 11, 13, 4, 2]),
        (4, vec![3, 13, 15, 17, 1]),
        (5, vec![17, 16, 18, 6, 1]),
        (6, vec![18, 19, 20, 7, 5]),
        (7, vec![6, 20, 8, 2, 1]),
        (8, vec![7, 20, 10, 9, 2]),
        (9, vec![8, 10, 11, 3, 2]),
        (10, vec![20, 12, 11, 9, 8]),
        (11, vec![9, 10, 12, 13, 3]),
        (12, vec![19, 14, 13, 11, 10]),
        (13, vec![11, 12, 15, 4, 3]),
        (14, vec![19, 18, 16, 15, 12]),
        (15, vec![13, 14, 16, 17, 4]),
        (16, vec![17, 15, 14, 18, 5]),
        (17, vec![4, 15, 16, 5, 1]),
        (18, vec![16, 14, 19, 6, 5]),
        (19, vec![18, 14, 12, 20, 6]),
        (20, vec![19, 10, 8, 7, 6]),
    ])
    .unwrap()
}

/// Entry names, in presentation order.
pub fn names() -> &'static [&'static str] {
    &[
        "triangle",
        "square",
        "rhombus",
        "rhombus-strip",
        "hex-patch",
        "tetrahedron",
        "cube",
        "icosahedron",
        "snub-cube",
        "snub-dodecahedron",
        "quad-bowtie",
    ]
}

/// Looks up one entry by name.
pub fn entry(name: &str) -> Option<CatalogEntry> {
    entry_table(name)
}

/// All entries.
pub fn all() -> Vec<CatalogEntry> {
    names().iter().map(|n| entry_table(n).unwrap()).collect()
}

/// The snub of a plane map, on the darts of the seed.
///
/// Every dart becomes a degree-5 vertex with neighbors `σd`, `σ⁻¹d` (around
/// the seed vertex), `Φd`, `Φ⁻¹d` (around the seed face), and the reversed
/// dart `αd` (the twist diagonal of the seed edge). Faces are one polygon
/// per seed vertex (size = its degree), one polygon per seed face (same
/// size), and two triangles per seed edge. Seed vertices of degree 5 and
/// triangular seed faces both yield 5-regular results built entirely from
/// triangles plus the seed's face shapes.
pub fn snub(seed: &PlanarMap) -> PlanarMap {
    // Dart ids: dart (v, j) -> offset[v] + j, numbered from 1.
    let n = seed.vertex_count();
    let mut offset = vec![0usize; n];
    let mut total = 0;
    for (v, slot) in offset.iter_mut().enumerate() {
        *slot = total;
        total += seed.degree(v);
    }
    let dart_id = |v: usize, w: usize| -> u32 {
        let j = seed
            .rotation(v)
            .iter()
            .position(|&x| x == w)
            .expect("dart exists");
        (offset[v] + j) as u32 + 1
    };

    let mut table: Vec<(u32, Vec<u32>)> = Vec::with_capacity(total);
    for u in 0..n {
        let rot = seed.rotation(u);
        let d = rot.len();
        for j in 0..d {
            let v = rot[j];
            let sigma = (u, rot[(j + 1) % d]);
            let sigma_inv = (u, rot[(j + d - 1) % d]);
            // Face successor Φ(u,v) = (v, w), w cyclically preceding u at v.
            let rv = seed.rotation(v);
            let k = rv.iter().position(|&x| x == u).unwrap();
            let phi = (v, rv[(k + rv.len() - 1) % rv.len()]);
            // Φ⁻¹(u,v) = reverse of σ(u,v).
            let phi_inv = (sigma.1, u);
            let alpha = (v, u);
            let cycle = [sigma_inv, sigma, phi_inv, phi, alpha];
            table.push((
                dart_id(u, v),
                cycle.iter().map(|&(a, b)| dart_id(a, b)).collect(),
            ));
        }
    }
    PlanarMap::from_rotations(&table).expect("snub of a plane map is a plane map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn every_entry_builds_and_is_listed() {
        let entries = all();
        assert_eq!(entries.len(), names().len());
        for e in &entries {
            assert!(e.map.vertex_count() > 0, "{} is empty", e.name);
            if let Some(coords) = &e.coords {
                assert_eq!(coords.len(), e.map.vertex_count());
            }
        }
        assert!(entry("no-such-entry").is_none());
    }

    #[test]
    fn icosahedron_counts() {
        let m = entry("icosahedron").unwrap().map;
        assert_eq!(m.vertex_count(), 12);
        assert_eq!(m.edge_count(), 30);
        assert_eq!(m.face_count(), 20);
        assert_eq!(m.face_census().counts, BTreeMap::from([(3, 20)]));
        assert_eq!(m.degree_summary().regular(), Some(5));
        // Degree identity for 5-regular maps: 5|V| = 2|E|.
        assert_eq!(5 * m.vertex_count(), 2 * m.edge_count());
        assert!(m.polygon_faces());
    }

    #[test]
    fn cube_census() {
        let m = entry("cube").unwrap().map;
        assert_eq!(m.face_census().counts, BTreeMap::from([(4, 6)]));
        assert_eq!(m.degree_summary().regular(), Some(3));
    }

    #[test]
    fn snub_of_tetrahedron_is_the_icosahedron() {
        let tet = entry("tetrahedron").unwrap().map;
        let s = snub(&tet);
        assert_eq!(s.vertex_count(), 12);
        assert_eq!(s.face_census().counts, BTreeMap::from([(3, 20)]));
        assert_eq!(s.degree_summary().regular(), Some(5));
    }

    #[test]
    fn snub_cube_counts() {
        let m = entry("snub-cube").unwrap().map;
        assert_eq!(m.vertex_count(), 24);
        assert_eq!(m.edge_count(), 60);
        assert_eq!(m.face_census().counts, BTreeMap::from([(3, 32), (4, 6)]));
        assert_eq!(m.degree_summary().regular(), Some(5));
        assert!(m.polygon_faces());
    }

    #[test]
    fn snub_dodecahedron_counts() {
        let m = entry("snub-dodecahedron").unwrap().map;
        assert_eq!(m.vertex_count(), 60);
        assert_eq!(m.edge_count(), 150);
        assert_eq!(m.face_census().counts, BTreeMap::from([(3, 80), (5, 12)]));
        assert_eq!(m.degree_summary().regular(), Some(5));
        assert!(m.polygon_faces());
    }

    #[test]
    fn quad_bowtie_counts() {
        let m = entry("quad-bowtie").unwrap().map;
        assert_eq!(m.vertex_count(), 20);
        assert_eq!(m.edge_count(), 50);
        assert_eq!(m.face_census().counts, BTreeMap::from([(3, 28), (4, 4)]));
        assert_eq!(m.degree_summary().regular(), Some(5));
        assert!(m.polygon_faces());
        // Vertex 1 lies on two of the four tetragons.
        let v1 = m.index_of(VertexId(1)).unwrap();
        let quads_at_v1 = (0..m.face_count())
            .filter(|&f| m.face_size(f) == 4 && m.face_vertices(f).contains(&v1))
            .count();
        assert_eq!(quads_at_v1, 2);
    }

    #[test]
    fn snub_cube_tetragons_are_disjoint() {
        let m = entry("snub-cube").unwrap().map;
        let mut seen = Vec::new();
        for f in 0..m.face_count() {
            if m.face_size(f) == 4 {
                for v in m.face_vertices(f) {
                    assert!(!seen.contains(&v), "tetragons share vertex {v}");
                    seen.push(v);
                }
            }
        }
        assert_eq!(seen.len(), 24);
    }
}
