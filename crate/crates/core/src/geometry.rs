//! Straight-line drawings of plane maps and matchstick validation.
//!
//! A [`GeometricMap`] pairs a combinatorial plane map with one point per
//! vertex. [`GeometricMap::validate`] checks everything a matchstick
//! drawing must satisfy — unit edge lengths, no coincident vertices, no
//! crossing edges, and angular neighbor order agreeing with the stored
//! rotation system — and reports each violation individually rather than
//! failing fast. [`GeometricMap::detect_diamonds`] finds quadrilateral
//! faces whose short diagonal is itself unit length, the faces the charge
//! augmentation inserts diagonals into.
//!
//! Everything is generic over the scalar ([`Real`]), so the same code runs
//! in `f32` and `f64`.

use thiserror::Error;

use crate::charge::DiamondSpec;
use crate::map::{PlanarMap, VertexId};
use crate::scalar::Real;

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pt<R> {
    pub x: R,
    pub y: R,
}

impl<R: Real> Pt<R> {
    pub fn new(x: R, y: R) -> Self {
        Pt { x, y }
    }

    /// Euclidean distance to another point.
    pub fn dist(self, o: Pt<R>) -> R {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Failure modes of assembling or parsing coordinates.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("coordinate given for unknown vertex {vertex}")]
    UnknownVertex { vertex: VertexId },
    #[error("vertex {vertex} has more than one coordinate")]
    DuplicateCoordinate { vertex: VertexId },
    #[error("no coordinate for vertex {vertex}")]
    MissingCoordinate { vertex: VertexId },
    #[error("expected {expected} points, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
}

/// A plane map together with a straight-line drawing.
#[derive(Debug, Clone)]
pub struct GeometricMap<R: Real> {
    map: PlanarMap,
    pts: Vec<Pt<R>>,
}

impl<R: Real> GeometricMap<R> {
    /// Pairs a map with coordinates keyed by vertex id. Every vertex must
    /// receive exactly one point.
    pub fn new(map: PlanarMap, coords: &[(VertexId, Pt<R>)]) -> Result<Self, GeometryError> {
        let mut pts = vec![None; map.vertex_count()];
        for &(id, p) in coords {
            let v = map
                .index_of(id)
                .ok_or(GeometryError::UnknownVertex { vertex: id })?;
            if pts[v].replace(p).is_some() {
                return Err(GeometryError::DuplicateCoordinate { vertex: id });
            }
        }
        let mut flat = Vec::with_capacity(pts.len());
        for (v, p) in pts.into_iter().enumerate() {
            match p {
                Some(p) => flat.push(p),
                None => {
                    return Err(GeometryError::MissingCoordinate {
                        vertex: map.id(v),
                    })
                }
            }
        }
        Ok(GeometricMap { map, pts: flat })
    }

    /// Pairs a map with points in vertex order.
    pub fn from_points(map: PlanarMap, pts: Vec<Pt<R>>) -> Result<Self, GeometryError> {
        if pts.len() != map.vertex_count() {
            return Err(GeometryError::WrongCount {
                expected: map.vertex_count(),
                got: pts.len(),
            });
        }
        Ok(GeometricMap { map, pts })
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn point(&self, v: usize) -> Pt<R> {
        self.pts[v]
    }

    pub fn points(&self) -> &[Pt<R>] {
        &self.pts
    }

    /// Coordinates keyed by vertex id, in vertex order.
    pub fn coord_pairs(&self) -> Vec<(VertexId, Pt<R>)> {
        (0..self.map.vertex_count())
            .map(|v| (self.map.id(v), self.pts[v]))
            .collect()
    }

    /// Checks the matchstick conditions and reports every violation.
    ///
    /// With `regularity: Some(k)`, vertex degrees must all equal `k`.
    pub fn validate(&self, tolerance: R, regularity: Option<usize>) -> ValidationReport {
        let mut issues = Vec::new();
        let one = R::from_f64_lossy(1.0);
        let map = &self.map;

        if let Some(k) = regularity {
            for v in 0..map.vertex_count() {
                if map.degree(v) != k {
                    issues.push(ValidationIssue::DegreeNotRegular {
                        vertex: map.id(v),
                        degree: map.degree(v),
                        expected: k,
                    });
                }
            }
        }

        let edges = map.edge_list();
        for &(u, v) in &edges {
            let len = self.pts[u].dist(self.pts[v]);
            if (len - one).abs() > tolerance {
                issues.push(ValidationIssue::EdgeLength {
                    u: map.id(u),
                    v: map.id(v),
                    length: len.to_f64_lossy(),
                });
            }
        }

        for u in 0..map.vertex_count() {
            for v in u + 1..map.vertex_count() {
                let d = self.pts[u].dist(self.pts[v]);
                if d <= tolerance {
                    issues.push(ValidationIssue::CoincidentVertices {
                        u: map.id(u),
                        v: map.id(v),
                        distance: d.to_f64_lossy(),
                    });
                }
            }
        }

        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if segments_cross(self.pts[a], self.pts[b], self.pts[c], self.pts[d]) {
                    issues.push(ValidationIssue::CrossingEdges {
                        first: (map.id(a), map.id(b)),
                        second: (map.id(c), map.id(d)),
                    });
                }
            }
        }

        for v in 0..map.vertex_count() {
            if map.degree(v) < 3 {
                continue;
            }
            let stored = map.rotation(v);
            let mut by_angle: Vec<usize> = stored.to_vec();
            by_angle.sort_by(|&a, &b| {
                let pa = self.pts[a];
                let pb = self.pts[b];
                let va = (pa.y - self.pts[v].y).atan2(pa.x - self.pts[v].x);
                let vb = (pb.y - self.pts[v].y).atan2(pb.x - self.pts[v].x);
                va.partial_cmp(&vb).unwrap_or(std::cmp::Ordering::Equal)
            });
            if !cyclically_equal(stored, &by_angle) {
                issues.push(ValidationIssue::RotationMismatch {
                    vertex: map.id(v),
                    stored: stored.iter().map(|&u| map.id(u)).collect(),
                    drawn: by_angle.iter().map(|&u| map.id(u)).collect(),
                });
            }
        }

        ValidationReport {
            tolerance: tolerance.to_f64_lossy(),
            edges_checked: edges.len(),
            issues,
        }
    }

    /// Finds diamond faces: quadrilateral polygon faces whose short
    /// diagonal has unit length, with the diagonal's midpoint lying in the
    /// face's region (the bounded interior for a counterclockwise face, the
    /// unbounded complement for the clockwise outer walk — which excludes
    /// outer boundaries that merely retrace a rhombus outline).
    pub fn detect_diamonds(&self, tolerance: R) -> Vec<DiamondSpec> {
        let one = R::from_f64_lossy(1.0);
        let half = R::from_f64_lossy(0.5);
        let zero = R::from_f64_lossy(0.0);
        let map = &self.map;
        let mut found = Vec::new();
        for face in 0..map.face_count() {
            if map.face_size(face) != 4 {
                continue;
            }
            let cyc = map.face_vertices(face);
            let distinct: std::collections::BTreeSet<usize> = cyc.iter().copied().collect();
            if distinct.len() != 4 {
                continue;
            }
            let poly: Vec<Pt<R>> = cyc.iter().map(|&v| self.pts[v]).collect();
            let ccw = polygon_signed_area2(&poly) > zero;
            for (i, j) in [(0usize, 2usize), (1, 3)] {
                let len = poly[i].dist(poly[j]);
                if (len - one).abs() > tolerance {
                    continue;
                }
                let mid = Pt::new(
                    (poly[i].x + poly[j].x) * half,
                    (poly[i].y + poly[j].y) * half,
                );
                if point_in_polygon(mid, &poly) == ccw {
                    found.push(DiamondSpec {
                        face,
                        diagonal: (map.id(cyc[i]), map.id(cyc[j])),
                    });
                    break;
                }
            }
        }
        found
    }

    /// Counts corners of `v` lying on triangular faces all of whose sides
    /// have unit length (within the tolerance).
    pub fn unit_triangle_corners(&self, v: usize, tolerance: R) -> usize {
        let one = R::from_f64_lossy(1.0);
        self.map
            .faces_at(v)
            .filter(|&f| {
                if self.map.face_size(f) != 3 {
                    return false;
                }
                self.map.faces()[f].iter().all(|&(a, b)| {
                    (self.pts[a].dist(self.pts[b]) - one).abs() <= tolerance
                })
            })
            .count()
    }
}

/// One violation of the matchstick conditions.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    EdgeLength {
        u: VertexId,
        v: VertexId,
        length: f64,
    },
    CoincidentVertices {
        u: VertexId,
        v: VertexId,
        distance: f64,
    },
    CrossingEdges {
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    RotationMismatch {
        vertex: VertexId,
        stored: Vec<VertexId>,
        drawn: Vec<VertexId>,
    },
    DegreeNotRegular {
        vertex: VertexId,
        degree: usize,
        expected: usize,
    },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::EdgeLength { u, v, length } => {
                write!(f, "edge {u}-{v} has length {length}, not 1")
            }
            ValidationIssue::CoincidentVertices { u, v, distance } => {
                write!(f, "vertices {u} and {v} coincide (distance {distance})")
            }
            ValidationIssue::CrossingEdges { first, second } => write!(
                f,
                "edges {}-{} and {}-{} cross",
                first.0, first.1, second.0, second.1
            ),
            ValidationIssue::RotationMismatch { vertex, .. } => {
                write!(f, "drawn neighbor order at {vertex} disagrees with the map")
            }
            ValidationIssue::DegreeNotRegular {
                vertex,
                degree,
                expected,
            } => write!(f, "vertex {vertex} has degree {degree}, expected {expected}"),
        }
    }
}

/// Outcome of [`GeometricMap::validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub edges_checked: usize,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

pub(crate) fn cyclically_equal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(offset) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    (0..a.len()).all(|k| a[k] == b[(offset + k) % b.len()])
}

fn cross<R: Real>(o: Pt<R>, a: Pt<R>, b: Pt<R>) -> R {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Whether a point lies on the closed segment `ab`, assuming it is already
/// known to be collinear with it.
fn on_segment<R: Real>(p: Pt<R>, a: Pt<R>, b: Pt<R>) -> bool {
    let min = |x: R, y: R| if x < y { x } else { y };
    let max = |x: R, y: R| if x > y { x } else { y };
    p.x >= min(a.x, b.x) && p.x <= max(a.x, b.x) && p.y >= min(a.y, b.y) && p.y <= max(a.y, b.y)
}

/// Whether segments `p1p2` and `p3p4` intersect anywhere (proper crossing,
/// endpoint touching the other segment's interior, or collinear overlap).
/// Intended for segments with no shared endpoints.
pub(crate) fn segments_cross<R: Real>(p1: Pt<R>, p2: Pt<R>, p3: Pt<R>, p4: Pt<R>) -> bool {
    let zero = R::from_f64_lossy(0.0);
    let d1 = cross(p3, p4, p1);
    let d2 = cross(p3, p4, p2);
    let d3 = cross(p1, p2, p3);
    let d4 = cross(p1, p2, p4);
    if ((d1 > zero && d2 < zero) || (d1 < zero && d2 > zero))
        && ((d3 > zero && d4 < zero) || (d3 < zero && d4 > zero))
    {
        return true;
    }
    (d1 == zero && on_segment(p1, p3, p4))
        || (d2 == zero && on_segment(p2, p3, p4))
        || (d3 == zero && on_segment(p3, p1, p2))
        || (d4 == zero && on_segment(p4, p1, p2))
}

/// Twice the signed area of a polygon (positive for counterclockwise).
fn polygon_signed_area2<R: Real>(poly: &[Pt<R>]) -> R {
    let mut s = R::from_f64_lossy(0.0);
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
        s = s + (a.x * b.y - b.x * a.y);
    }
    s
}

/// Ray-casting point-in-polygon test (strict interior not guaranteed on the
/// boundary; callers only probe points well inside or outside).
fn point_in_polygon<R: Real>(p: Pt<R>, poly: &[Pt<R>]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let t = (p.y - a.y) / (b.y - a.y);
            let x = a.x + t * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Parses a coordinates file: one `<id>: <x> <y>` per line, `#` comments.
pub fn parse_coords<R: Real>(text: &str) -> Result<Vec<(VertexId, Pt<R>)>, GeometryError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |msg: &str| GeometryError::SyntaxError {
            line,
            msg: msg.to_string(),
        };
        let (head, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax("expected '<vertex>: <x> <y>'"))?;
        let id: VertexId = head
            .trim()
            .parse()
            .map_err(|e| syntax(&format!("bad vertex id: {e}")))?;
        let nums: Vec<&str> = rest.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(syntax("expected exactly two coordinates"));
        }
        let x: f64 = nums[0]
            .parse()
            .map_err(|e| syntax(&format!("bad x coordinate: {e}")))?;
        let y: f64 = nums[1]
            .parse()
            .map_err(|e| syntax(&format!("bad y coordinate: {e}")))?;
        if out.iter().any(|&(other, _)| other == id) {
            return Err(GeometryError::DuplicateCoordinate { vertex: id });
        }
        out.push((id, Pt::new(R::from_f64_lossy(x), R::from_f64_lossy(y))));
    }
    Ok(out)
}

/// Serializes coordinates in the format accepted by [`parse_coords`].
pub fn serialize_coords<R: Real>(pairs: &[(VertexId, Pt<R>)]) -> String {
    let mut s = String::new();
    for &(id, p) in pairs {
        s.push_str(&format!(
            "{}: {} {}\n",
            id,
            p.x.to_f64_lossy(),
            p.y.to_f64_lossy()
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::charge;
    use crate::Charge;
    use proptest::prelude::*;

    const TOL: f64 = 1e-6;

    fn geometric(name: &str) -> GeometricMap<f64> {
        let e = catalog::entry(name).unwrap();
        let coords: Vec<(VertexId, Pt<f64>)> = e
            .coords
            .unwrap()
            .into_iter()
            .map(|(id, (x, y))| (id, Pt::new(x, y)))
            .collect();
        GeometricMap::new(e.map, &coords).unwrap()
    }

    #[test]
    fn catalog_drawings_validate() {
        for name in ["triangle", "square", "rhombus", "rhombus-strip", "hex-patch"] {
            let gm = geometric(name);
            let report = gm.validate(TOL, None);
            assert!(report.passed(), "{name}: {:?}", report.issues);
        }
    }

    #[test]
    fn perturbed_square_fails_then_passes_with_loose_tolerance() {
        let e = catalog::entry("square").unwrap();
        let mut coords: Vec<(VertexId, Pt<f64>)> = e
            .coords
            .unwrap()
            .into_iter()
            .map(|(id, (x, y))| (id, Pt::new(x, y)))
            .collect();
        coords[2].1.x += 1e-3;
        let gm = GeometricMap::new(e.map, &coords).unwrap();
        let strict = gm.validate(1e-6, None);
        assert!(strict
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::EdgeLength { .. })));
        assert!(gm.validate(1e-2, None).passed());
    }

    #[test]
    fn mirrored_drawing_is_caught_by_rotation_check() {
        let e = catalog::entry("hex-patch").unwrap();
        let coords: Vec<(VertexId, Pt<f64>)> = e
            .coords
            .unwrap()
            .into_iter()
            .map(|(id, (x, y))| (id, Pt::new(x, -y)))
            .collect();
        let gm = GeometricMap::new(e.map, &coords).unwrap();
        let report = gm.validate(TOL, None);
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::RotationMismatch { .. })));
        // Lengths are preserved by reflection, so only the order complains.
        assert!(!report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::EdgeLength { .. })));
    }

    #[test]
    fn crossing_edges_are_reported() {
        // A 4-cycle drawn as a bowtie: edges 1-2 and 3-4 cross.
        let map = PlanarMap::from_rotations(&[
            (1, vec![2, 4]),
            (2, vec![3, 1]),
            (3, vec![4, 2]),
            (4, vec![3, 1]),
        ])
        .unwrap();
        let coords = [
            (VertexId(1), Pt::new(0.0, 0.0)),
            (VertexId(2), Pt::new(1.0, 1.0)),
            (VertexId(3), Pt::new(1.0, 0.0)),
            (VertexId(4), Pt::new(0.0, 1.0)),
        ];
        let gm = GeometricMap::new(map, &coords).unwrap();
        let report = gm.validate(TOL, None);
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::CrossingEdges { .. })));
    }

    #[test]
    fn regularity_check_flags_degrees() {
        let gm = geometric("hex-patch");
        let report = gm.validate(TOL, Some(3));
        let flagged: Vec<_> = report
            .issues
            .iter()
            .filter(|i| matches!(i, ValidationIssue::DegreeNotRegular { .. }))
            .collect();
        assert_eq!(flagged.len(), 1); // only the degree-6 center
    }

    #[test]
    fn rhombus_has_one_diamond_and_the_outer_walk_is_excluded() {
        let gm = geometric("rhombus");
        let diamonds = gm.detect_diamonds(TOL);
        assert_eq!(diamonds.len(), 1);
        let d = diamonds[0];
        let pair = [d.diagonal.0, d.diagonal.1];
        assert!(pair.contains(&VertexId(2)) && pair.contains(&VertexId(4)));
        // Both faces of the rhombus map are 4-walks; only the bounded one
        // holds the diagonal.
        assert_eq!(gm.map().face_count(), 2);
    }

    #[test]
    fn rhombus_strip_has_two_diamonds_and_they_augment() {
        let gm = geometric("rhombus-strip");
        let diamonds = gm.detect_diamonds(TOL);
        assert_eq!(diamonds.len(), 2);
        let out = charge::augment_diamonds(gm.map(), &diamonds).unwrap();
        assert_eq!(out.added, 2);
        assert_eq!(out.raw_sum_after - out.raw_sum_before, Charge::from_integer(8));
    }

    #[test]
    fn square_has_no_diamond() {
        let gm = geometric("square");
        assert!(gm.detect_diamonds(TOL).is_empty());
    }

    #[test]
    fn hex_patch_center_has_six_unit_triangles() {
        let gm = geometric("hex-patch");
        let center = gm.map().index_of(VertexId(7)).unwrap();
        assert_eq!(gm.unit_triangle_corners(center, TOL), 6);
        let ring = gm.map().index_of(VertexId(1)).unwrap();
        assert_eq!(gm.unit_triangle_corners(ring, TOL), 2);
    }

    #[test]
    fn four_triangles_and_a_unit_pentagon_exist_geometrically() {
        // Build the degree-5 star: center at the origin, five unit
        // neighbors at 0°, 60°, 120°, 180°, 240°, leaving a 120° gap that a
        // unit equilateral pentagon closes. The pentagon's two free
        // vertices are found by bisection on the direction of its first
        // free side, using the mirror symmetry across the gap bisector.
        let deg = |d: f64| d.to_radians();
        let center = Pt::new(0.0, 0.0);
        let ring: Vec<Pt<f64>> = (0..5)
            .map(|k| {
                let a = deg(60.0 * k as f64);
                Pt::new(a.cos(), a.sin())
            })
            .collect();
        // Mirror across the line through the origin at -60°.
        let reflect = |p: Pt<f64>| {
            let d = Pt::new(deg(-60.0).cos(), deg(-60.0).sin());
            let t = p.x * d.x + p.y * d.y;
            Pt::new(2.0 * t * d.x - p.x, 2.0 * t * d.y - p.y)
        };
        let gap_dist = |alpha: f64| {
            let p2 = Pt::new(ring[0].x + alpha.cos(), ring[0].y + alpha.sin());
            let p3 = reflect(p2);
            p2.dist(p3) - 1.0
        };
        let (mut lo, mut hi) = (deg(-90.0), deg(-60.0));
        assert!(gap_dist(lo) < 0.0 && gap_dist(hi) > 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if gap_dist(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let alpha = 0.5 * (lo + hi);
        let p2 = Pt::new(ring[0].x + alpha.cos(), ring[0].y + alpha.sin());
        let p3 = reflect(p2);

        // Assemble the map: center 1, ring 2..=6 (angles 0..240), pentagon
        // free vertices 7 (next to ring vertex 2) and 8 (next to 6).
        let pts = [
            (VertexId(1), center),
            (VertexId(2), ring[0]),
            (VertexId(3), ring[1]),
            (VertexId(4), ring[2]),
            (VertexId(5), ring[3]),
            (VertexId(6), ring[4]),
            (VertexId(7), p2),
            (VertexId(8), p3),
        ];
        let map = PlanarMap::from_rotations(&[
            (1, vec![2, 3, 4, 5, 6]),
            (2, vec![3, 1, 7]),
            (3, vec![4, 1, 2]),
            (4, vec![5, 1, 3]),
            (5, vec![6, 1, 4]),
            (6, vec![8, 1, 5]),
            (7, vec![2, 8]),
            (8, vec![7, 6]),
        ])
        .unwrap();
        let gm = GeometricMap::new(map, &pts).unwrap();
        let report = gm.validate(1e-9, None);
        assert!(report.passed(), "{:?}", report.issues);

        // The center realizes the four-triangles-one-pentagon profile.
        let c = gm.map().index_of(VertexId(1)).unwrap();
        let profile = charge::corner_profile(gm.map(), c);
        assert_eq!(profile.get(&3), Some(&4));
        assert_eq!(profile.get(&5), Some(&1));
        let charges = charge::vertex_charges(gm.map()).unwrap();
        assert_eq!(charges[c], Charge::new(1, 3));
    }

    #[test]
    fn coords_round_trip_and_report_errors() {
        let pairs = vec![
            (VertexId(1), Pt::new(0.0, 0.0)),
            (VertexId(2), Pt::new(1.0, 0.0)),
            (VertexId(3), Pt::new(0.5, 0.8660254037844386)),
        ];
        let text = serialize_coords(&pairs);
        let back: Vec<(VertexId, Pt<f64>)> = parse_coords(&text).unwrap();
        assert_eq!(back, pairs);

        assert!(matches!(
            parse_coords::<f64>("1: 0 0\n1: 2 2\n"),
            Err(GeometryError::DuplicateCoordinate { .. })
        ));
        assert!(matches!(
            parse_coords::<f64>("1: 0\n"),
            Err(GeometryError::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            parse_coords::<f64>("# fine\nnope\n"),
            Err(GeometryError::SyntaxError { line: 2, .. })
        ));
    }

    #[test]
    fn missing_and_unknown_coordinates_are_rejected() {
        let e = catalog::entry("triangle").unwrap();
        let short = [(VertexId(1), Pt::new(0.0, 0.0))];
        assert!(matches!(
            GeometricMap::new(e.map.clone(), &short),
            Err(GeometryError::MissingCoordinate { .. })
        ));
        let stray = [
            (VertexId(1), Pt::new(0.0, 0.0)),
            (VertexId(2), Pt::new(1.0, 0.0)),
            (VertexId(3), Pt::new(0.5, 0.9)),
            (VertexId(9), Pt::new(2.0, 2.0)),
        ];
        assert!(matches!(
            GeometricMap::new(e.map, &stray),
            Err(GeometryError::UnknownVertex {
                vertex: VertexId(9)
            })
        ));
    }

    #[test]
    fn f32_instantiation_works() {
        let e = catalog::entry("triangle").unwrap();
        let coords: Vec<(VertexId, Pt<f32>)> = e
            .coords
            .unwrap()
            .into_iter()
            .map(|(id, (x, y))| (id, Pt::new(x as f32, y as f32)))
            .collect();
        let gm = GeometricMap::new(e.map, &coords).unwrap();
        assert!(gm.validate(1e-3f32, Some(2)).passed());
    }

    proptest! {
        /// The orientation-predicate crossing test agrees with directly
        /// solving the two-segment linear system, away from degeneracies.
        #[test]
        fn crossing_matches_parametric_solution(
            ax in -5.0f64..5.0, ay in -5.0f64..5.0,
            bx in -5.0f64..5.0, by in -5.0f64..5.0,
            cx in -5.0f64..5.0, cy in -5.0f64..5.0,
            dx in -5.0f64..5.0, dy in -5.0f64..5.0,
        ) {
            let (p1, p2) = (Pt::new(ax, ay), Pt::new(bx, by));
            let (p3, p4) = (Pt::new(cx, cy), Pt::new(dx, dy));
            // Solve p1 + t(p2-p1) = p3 + s(p4-p3).
            let det = (bx - ax) * (cy - dy) - (by - ay) * (cx - dx);
            prop_assume!(det.abs() > 1e-6);
            let t = ((cx - ax) * (cy - dy) - (cy - ay) * (cx - dx)) / det;
            let s = ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) / det;
            let margin = 1e-6;
            let clear = |z: f64| (z - 0.0).abs() > margin && (z - 1.0).abs() > margin;
            prop_assume!(clear(t) && clear(s));
            let expect = (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s);
            prop_assert_eq!(segments_cross(p1, p2, p3, p4), expect);
        }
    }
}
