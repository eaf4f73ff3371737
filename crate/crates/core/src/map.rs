//! Combinatorial planar maps as rotation systems.
//!
//! A map is a connected simple graph together with a cyclic counterclockwise
//! order of neighbors at every vertex. Faces are recovered by tracing darts
//! (directed edges): the successor of `(u, v)` is `(v, w)` where `w` is the
//! neighbor cyclically preceding `u` in the rotation at `v`. With
//! counterclockwise rotations this walks every interior face counterclockwise
//! and the outer face clockwise, and every dart lies on exactly one face.
//! A rotation system describes a plane map precisely when the traced faces
//! satisfy Euler's identity `|V| - |E| + |F| = 2`; anything else is an
//! embedding in a higher-genus surface and is rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// External vertex name: a positive integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for VertexId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n: u32 = s.parse().map_err(|_| format!("`{s}` is not a vertex id"))?;
        if n == 0 {
            return Err("vertex ids are positive integers".into());
        }
        Ok(VertexId(n))
    }
}

/// Errors from building or parsing a map.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("vertex {0} is declared more than once")]
    DuplicateVertex(VertexId),
    #[error("vertex {vertex} lists undeclared neighbor {neighbor}")]
    UndeclaredNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {0} lists itself as a neighbor (loops are not allowed)")]
    LoopEdge(VertexId),
    #[error("vertex {vertex} lists neighbor {neighbor} more than once (parallel edges are not allowed)")]
    RepeatedNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("adjacency is not symmetric: {u} lists {v} but {v} does not list {u}")]
    AsymmetricAdjacency { u: VertexId, v: VertexId },
    #[error("the map is not connected")]
    Disconnected,
    #[error(
        "the rotation system is not a plane map: |V| - |E| + |F| = {euler}, \
         but a sphere embedding requires 2"
    )]
    NonPlanarEmbedding { euler: i64 },
}

/// A dart (directed edge) named by internal vertex indices `(from, to)`.
/// Simple maps have no parallel edges, so the pair determines the dart.
pub type Dart = (usize, usize);

/// A validated plane map.
///
/// Vertices are stored in ascending id order; all internal structure uses
/// dense indices `0..n`. Faces are traced once at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct PlanarMap {
    ids: Vec<VertexId>,
    rot: Vec<Vec<usize>>,
    faces: Vec<Vec<Dart>>,
    /// face index of the dart `(v, rot[v][j])`, addressed as `dart_face[v][j]`.
    dart_face: Vec<Vec<usize>>,
    edges: usize,
}

impl fmt::Debug for PlanarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarMap({} vertices, {} edges)", self.ids.len(), self.edges)
    }
}

impl PlanarMap {
    /// Builds a map from `(vertex, counterclockwise neighbor cycle)` rows.
    ///
    /// Checks that ids are unique, adjacency is symmetric with multiplicity
    /// one (no loops, no parallel edges), the graph is connected, and the
    /// traced faces satisfy Euler's identity.
    pub fn build(table: &[(VertexId, Vec<VertexId>)]) -> Result<Self, MapError> {
        let mut ids: Vec<VertexId> = table.iter().map(|(v, _)| *v).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(MapError::DuplicateVertex(w[0]));
        }
        let index = |id: VertexId| ids.binary_search(&id).ok();

        let mut rot = vec![Vec::new(); ids.len()];
        for (id, nbrs) in table {
            let v = index(*id).expect("own id is present");
            let mut cycle = Vec::with_capacity(nbrs.len());
            for n in nbrs {
                if *n == *id {
                    return Err(MapError::LoopEdge(*id));
                }
                let w = index(*n).ok_or(MapError::UndeclaredNeighbor {
                    vertex: *id,
                    neighbor: *n,
                })?;
                if cycle.contains(&w) {
                    return Err(MapError::RepeatedNeighbor {
                        vertex: *id,
                        neighbor: *n,
                    });
                }
                cycle.push(w);
            }
            rot[v] = cycle;
        }

        for v in 0..rot.len() {
            for &w in &rot[v] {
                if !rot[w].contains(&v) {
                    return Err(MapError::AsymmetricAdjacency { u: ids[v], v: ids[w] });
                }
            }
        }

        // Canonicalize each cycle to start at its smallest neighbor (ids are
        // sorted, so index order is id order). Cyclic order is what matters;
        // this makes structural equality coincide with map equality.
        for cycle in &mut rot {
            if let Some(start) = cycle.iter().copied().enumerate().min_by_key(|&(_, w)| w) {
                cycle.rotate_left(start.0);
            }
        }

        let edges = rot.iter().map(Vec::len).sum::<usize>() / 2;

        // Connectivity.
        if !ids.is_empty() {
            let mut seen = vec![false; ids.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &rot[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            if count != ids.len() {
                return Err(MapError::Disconnected);
            }
        }

        let (faces, dart_face) = trace_faces(&rot);

        // Euler check. The empty map is accepted as a degenerate value and
        // a single isolated vertex carries one (empty) face, so the identity
        // holds there as well.
        if !ids.is_empty() {
            let euler = ids.len() as i64 - edges as i64 + faces.len() as i64;
            if euler != 2 {
                return Err(MapError::NonPlanarEmbedding { euler });
            }
        }

        Ok(PlanarMap { ids, rot, faces, dart_face, edges })
    }

    /// Convenience builder from raw integers, for tables written in code.
    pub fn from_rotations(table: &[(u32, Vec<u32>)]) -> Result<Self, MapError> {
        let rows: Vec<(VertexId, Vec<VertexId>)> = table
            .iter()
            .map(|(v, ns)| (VertexId(*v), ns.iter().map(|n| VertexId(*n)).collect()))
            .collect();
        Self::build(&rows)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Vertex ids in ascending order; internal index `i` names `ids()[i]`.
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> VertexId {
        self.ids[v]
    }

    /// Internal index of an id, if present.
    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    /// Counterclockwise neighbor cycle of `v`, as internal indices.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    /// Faces as dart cycles. Interior faces wind counterclockwise in any
    /// drawing consistent with the rotations; the outer face winds clockwise.
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    /// Number of darts in face `f` (its size; equals the vertex count for
    /// polygon faces, but counts repeats for walks through bridges).
    pub fn face_size(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// The vertex walk of face `f` (origin of each dart in order).
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&(u, _)| u).collect()
    }

    /// Face on which the dart `(u, v)` lies.
    pub fn face_of_dart(&self, u: usize, v: usize) -> usize {
        let j = self.rot[u]
            .iter()
            .position(|&w| w == v)
            .expect("dart must exist");
        self.dart_face[u][j]
    }

    /// Faces incident to `v`, one entry per corner (so a face repeating the
    /// vertex is listed once per visit). Exactly `degree(v)` entries.
    pub fn faces_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.dart_face[v].iter().copied()
    }

    /// True if every face visits each of its vertices at most once (faces
    /// are polygons; rules out bridges and cut vertices).
    pub fn polygon_faces(&self) -> bool {
        self.faces.iter().all(|face| {
            let mut vs: Vec<usize> = face.iter().map(|&(u, _)| u).collect();
            vs.sort_unstable();
            vs.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Undirected edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for v in 0..self.rot.len() {
            for &w in &self.rot[v] {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Multiset of face sizes.
    pub fn face_census(&self) -> FaceCensus {
        let mut counts = BTreeMap::new();
        for face in &self.faces {
            *counts.entry(face.len()).or_insert(0usize) += 1;
        }
        FaceCensus {
            counts,
            faces: self.faces.len(),
            edges: self.edges,
        }
    }

    /// Degree multiset and regularity.
    pub fn degree_summary(&self) -> DegreeSummary {
        let mut counts = BTreeMap::new();
        for v in 0..self.rot.len() {
            *counts.entry(self.rot[v].len()).or_insert(0usize) += 1;
        }
        DegreeSummary { counts }
    }

    /// The same map with all rotations reversed (the mirror image).
    pub fn mirrored(&self) -> PlanarMap {
        let table: Vec<(VertexId, Vec<VertexId>)> = (0..self.ids.len())
            .map(|v| {
                let mut ns: Vec<VertexId> =
                    self.rot[v].iter().map(|&w| self.ids[w]).collect();
                ns.reverse();
                (self.ids[v], ns)
            })
            .collect();
        PlanarMap::build(&table).expect("mirror of a valid map is valid")
    }

    /// Canonical text form: ids ascending, each cycle starting at its
    /// smallest neighbor id (cycles are stored that way).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in 0..self.ids.len() {
            out.push_str(&format!("{}:", self.ids[v]));
            for &w in &self.rot[v] {
                out.push_str(&format!(" {}", self.ids[w]));
            }
            out.push('\n');
        }
        out
    }
}

/// Traces all faces of a rotation table. Returns the face list and, for each
/// vertex, the face of each outgoing dart (`dart_face[v][j]` is the face of
/// the dart `(v, rot[v][j])`).
fn trace_faces(rot: &[Vec<usize>]) -> (Vec<Vec<Dart>>, Vec<Vec<usize>>) {
    let mut dart_face: Vec<Vec<usize>> = rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();

    let pos = |v: usize, w: usize| -> usize {
        rot[v].iter().position(|&x| x == w).expect("dart exists")
    };

    for v0 in 0..rot.len() {
        for j0 in 0..rot[v0].len() {
            if dart_face[v0][j0] != usize::MAX {
                continue;
            }
            let face_idx = faces.len();
            let mut face = Vec::new();
            let (mut u, mut j) = (v0, j0);
            loop {
                let v = rot[u][j];
                dart_face[u][j] = face_idx;
                face.push((u, v));
                // successor of (u, v): (v, w) with w cyclically preceding u
                // in the rotation at v.
                let k = pos(v, u);
                let d = rot[v].len();
                let next = (k + d - 1) % d;
                (u, j) = (v, next);
                if (u, j) == (v0, j0) {
                    break;
                }
            }
            faces.push(face);
        }
    }

    // A single isolated vertex still has one (empty) face: the whole plane.
    if rot.len() == 1 && rot[0].is_empty() {
        faces.push(Vec::new());
        dart_face[0] = Vec::new();
    }

    (faces, dart_face)
}

/// Multiset of face sizes together with the totals they must tie back to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    /// face size -> number of faces of that size.
    pub counts: BTreeMap<usize, usize>,
    /// Total number of faces.
    pub faces: usize,
    /// Total number of edges.
    pub edges: usize,
}

impl FaceCensus {
    /// `sum_i |F_i|` — must equal the face count.
    pub fn total_faces(&self) -> usize {
        self.counts.values().sum()
    }

    /// `sum_i i * |F_i|` — must equal twice the edge count.
    pub fn total_incidences(&self) -> usize {
        self.counts.iter().map(|(i, n)| i * n).sum()
    }
}

/// Degree multiset of a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    /// degree -> number of vertices of that degree.
    pub counts: BTreeMap<usize, usize>,
}

impl DegreeSummary {
    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular(&self) -> Option<usize> {
        match self.counts.len() {
            1 => self.counts.keys().next().copied(),
            _ => None,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.counts.keys().next().copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of vertices of degree `d`.
    pub fn vertices_of_degree(&self, d: usize) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }
}

/// Parses the map file format: one line per vertex, `<id>: <n1> <n2> ...`
/// listing the counterclockwise neighbor cycle. Blank lines and `#` comments
/// are ignored.
pub fn parse_map(text: &str) -> Result<PlanarMap, MapError> {
    let mut table: Vec<(VertexId, Vec<VertexId>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, tail) = content.split_once(':').ok_or_else(|| MapError::SyntaxError {
            line,
            msg: "expected `<id>: <neighbors>`".into(),
        })?;
        let id: VertexId = head
            .trim()
            .parse()
            .map_err(|msg| MapError::SyntaxError { line, msg })?;
        if table.iter().any(|(v, _)| *v == id) {
            return Err(MapError::SyntaxError {
                line,
                msg: format!("vertex {id} is declared more than once"),
            });
        }
        let mut nbrs = Vec::new();
        for tok in tail.split_whitespace() {
            let n: VertexId = tok
                .parse()
                .map_err(|msg| MapError::SyntaxError { line, msg })?;
            nbrs.push(n);
        }
        table.push((id, nbrs));
    }
    PlanarMap::build(&table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlanarMap {
        PlanarMap::from_rotations(&[(1, vec![2, 3]), (2, vec![3, 1]), (3, vec![1, 2])]).unwrap()
    }

    #[test]
    fn triangle_has_two_triangular_faces() {
        let m = triangle();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.face_count(), 2);
        let census = m.face_census();
        assert_eq!(census.counts, BTreeMap::from([(3, 2)]));
        assert_eq!(census.total_faces(), 2);
        assert_eq!(census.total_incidences(), 6);
    }

    #[test]
    fn single_edge_has_one_face_of_size_two() {
        let m = PlanarMap::from_rotations(&[(1, vec![2]), (2, vec![1])]).unwrap();
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.face_size(0), 2);
    }

    #[test]
    fn single_vertex_is_a_valid_degenerate_map() {
        let m = PlanarMap::from_rotations(&[(7, vec![])]).unwrap();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.face_size(0), 0);
    }

    #[test]
    fn path_degrees_are_not_regular() {
        let m =
            PlanarMap::from_rotations(&[(1, vec![2]), (2, vec![1, 3]), (3, vec![2])]).unwrap();
        let d = m.degree_summary();
        assert_eq!(d.counts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(d.regular(), None);
        // One face walking both sides of the path: size 4.
        assert_eq!(m.face_census().counts, BTreeMap::from([(4, 1)]));
    }

    #[test]
    fn asymmetric_adjacency_is_rejected() {
        let err = PlanarMap::from_rotations(&[(1, vec![2]), (2, vec![])]).unwrap_err();
        assert_eq!(
            err,
            MapError::AsymmetricAdjacency { u: VertexId(1), v: VertexId(2) }
        );
    }

    #[test]
    fn loops_parallels_and_unknown_neighbors_are_rejected() {
        assert_eq!(
            PlanarMap::from_rotations(&[(1, vec![1])]).unwrap_err(),
            MapError::LoopEdge(VertexId(1))
        );
        assert_eq!(
            PlanarMap::from_rotations(&[(1, vec![2, 2]), (2, vec![1, 1])]).unwrap_err(),
            MapError::RepeatedNeighbor { vertex: VertexId(1), neighbor: VertexId(2) }
        );
        assert_eq!(
            PlanarMap::from_rotations(&[(1, vec![5])]).unwrap_err(),
            MapError::UndeclaredNeighbor { vertex: VertexId(1), neighbor: VertexId(5) }
        );
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let err = PlanarMap::from_rotations(&[
            (1, vec![2]),
            (2, vec![1]),
            (3, vec![4]),
            (4, vec![3]),
        ])
        .unwrap_err();
        assert_eq!(err, MapError::Disconnected);
    }

    #[test]
    fn torus_rotation_of_k4_is_rejected_by_euler() {
        // This rotation system of K4 traces faces of sizes 8 and 4, giving
        // |V| - |E| + |F| = 0: a torus embedding, not a plane map.
        let err = PlanarMap::from_rotations(&[
            (1, vec![2, 3, 4]),
            (2, vec![1, 3, 4]),
            (3, vec![1, 2, 4]),
            (4, vec![1, 2, 3]),
        ])
        .unwrap_err();
        assert_eq!(err, MapError::NonPlanarEmbedding { euler: 0 });
    }

    #[test]
    fn k4_with_planar_rotations_builds() {
        // Outer triangle 1,2,3 with 4 in the center.
        let m = PlanarMap::from_rotations(&[
            (1, vec![2, 4, 3]),
            (2, vec![3, 4, 1]),
            (3, vec![1, 4, 2]),
            (4, vec![1, 2, 3]),
        ])
        .unwrap();
        assert_eq!(m.face_count(), 4);
        assert_eq!(m.face_census().counts, BTreeMap::from([(3, 4)]));
        assert!(m.polygon_faces());
    }

    #[test]
    fn darts_partition_into_faces() {
        let m = k4();
        let total: usize = m.faces().iter().map(Vec::len).sum();
        assert_eq!(total, 2 * m.edge_count());
    }

    fn k4() -> PlanarMap {
        PlanarMap::from_rotations(&[
            (1, vec![2, 4, 3]),
            (2, vec![3, 4, 1]),
            (3, vec![1, 4, 2]),
            (4, vec![1, 2, 3]),
        ])
        .unwrap()
    }

    #[test]
    fn cut_vertex_face_is_not_a_polygon() {
        // Two triangles sharing vertex 1.
        let m = PlanarMap::from_rotations(&[
            (1, vec![2, 3, 4, 5]),
            (2, vec![3, 1]),
            (3, vec![1, 2]),
            (4, vec![5, 1]),
            (5, vec![1, 4]),
        ])
        .unwrap();
        assert!(!m.polygon_faces());
    }

    #[test]
    fn parse_round_trips_canonical_form() {
        let text = "1: 2 3\n2: 1 3\n3: 1 2\n";
        let m = parse_map(text).unwrap();
        assert_eq!(m.serialize(), text);
        // Comments, blank lines and rotated cycles parse to the same map;
        // `2: 3 1` is the same cyclic order as `2: 1 3`.
        let scrambled = "# a triangle\n3: 2 1\n\n1: 2 3  # inline note\n2: 3 1 # rotated\n";
        let m2 = parse_map(scrambled).unwrap();
        assert_eq!(m2.serialize(), text);
        assert_eq!(m2, m);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_map("1: 2\n2 1\n").unwrap_err();
        assert!(matches!(err, MapError::SyntaxError { line: 2, .. }));
        let err = parse_map("0: 1\n").unwrap_err();
        assert!(matches!(err, MapError::SyntaxError { line: 1, .. }));
        let err = parse_map("1: 2\n1: 2\n2: 1 1\n").unwrap_err();
        assert!(matches!(err, MapError::SyntaxError { line: 2, .. }));
    }

    #[test]
    fn parse_spec_asymmetric_example() {
        let err = parse_map("1: 2\n2:\n").unwrap_err();
        assert_eq!(
            err,
            MapError::AsymmetricAdjacency { u: VertexId(1), v: VertexId(2) }
        );
    }

    #[test]
    fn mirror_reverses_rotations_and_preserves_census() {
        let m = k4();
        let mir = m.mirrored();
        assert_eq!(m.face_census(), mir.face_census());
        let v = m.index_of(VertexId(1)).unwrap();
        let mut r: Vec<usize> = mir.rotation(v).to_vec();
        r.reverse();
        // Reversed mirror rotation is a cyclic rotation of the original.
        let orig = m.rotation(v);
        let shift = r.iter().position(|&x| x == orig[0]).unwrap();
        let unrolled: Vec<usize> = (0..r.len()).map(|j| r[(shift + j) % r.len()]).collect();
        assert_eq!(unrolled, orig);
    }

    #[test]
    fn faces_at_yields_degree_many_corners() {
        let m = k4();
        for v in 0..m.vertex_count() {
            assert_eq!(m.faces_at(v).count(), m.degree(v));
        }
    }

    #[test]
    fn planar_map_is_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<PlanarMap>();
    }
}
