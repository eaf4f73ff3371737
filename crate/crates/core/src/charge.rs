//! Exact charge accounting on plane maps.
//!
//! Every quantity in this module is an exact rational ([`Charge`]); no
//! floating point enters any identity. A vertex `v` whose corners lie on
//! faces with `i` sides according to the profile `f_i(v)` carries the charge
//!
//! ```text
//! f(v) = Σ_i (10 − 3·i) · f_i(v) / i,
//! ```
//!
//! and its *adjusted* charge subtracts `2·(deg v − 5)`. Summed over any
//! connected plane map the adjusted charges total exactly 20 — a direct
//! consequence of the Euler relation. That constant is the engine of the
//! impossibility arguments in this crate: whenever local analysis shows that
//! every vertex of a hypothetical map would carry non-positive adjusted
//! charge, the map cannot exist.
//!
//! The module provides the per-vertex charges, the global identity check,
//! the classification of positive vertices, the diamond augmentation (adding
//! a unit diagonal inside a quadrilateral face raises the raw total by 4 and
//! leaves the adjusted total at 20), pentagon-level charge shares, and an
//! exhaustive oracle over local corner profiles that certifies the share
//! bounds used in the pentagon case analysis.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::map::{PlanarMap, VertexId};
use crate::Charge;

/// Which degree regime a charge analysis assumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChargeMode {
    /// Every vertex has degree exactly 5; raw and adjusted charges agree.
    Exact5,
    /// Every vertex has degree at least 5; the adjusted charge compensates
    /// for the surplus `2·(deg − 5)`.
    MinDeg5,
}

/// Failure modes of the charge computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChargeError {
    #[error("vertex {vertex} has degree {degree}; this analysis requires exact degree 5")]
    NotFiveRegular { vertex: VertexId, degree: usize },
    #[error("vertex {vertex} has degree {degree}; this analysis requires degree at least 5")]
    DegreeBelowFive { vertex: VertexId, degree: usize },
    #[error("face {face} visits a vertex more than once; charges need simple polygon faces")]
    NonPolygonFace { face: usize },
    #[error("face index {face} is out of range (the map has {faces} faces)")]
    FaceOutOfRange { face: usize, faces: usize },
    #[error("diagonal endpoint {vertex} is not a vertex of the map")]
    UnknownVertex { vertex: VertexId },
    #[error("face {face} has {size} sides; only quadrilateral faces take a diagonal")]
    NotAQuadrilateral { face: usize, size: usize },
    #[error("diagonal {a}-{b} does not join opposite corners of face {face}")]
    DiagonalNotOpposite { face: usize, a: VertexId, b: VertexId },
    #[error("diagonal {a}-{b} would double an edge of the map")]
    DiagonalAlreadyEdge { a: VertexId, b: VertexId },
    #[error("face {face} is listed twice in the augmentation")]
    DuplicateFace { face: usize },
    #[error("vertex {vertex} would gain {gained} diagonal ends; at most 2 keep every degree at most 7")]
    VertexGainsTooManyDiagonals { vertex: VertexId, gained: usize },
    #[error("vertex {vertex} on pentagon face {face} has degree {degree}, outside the analyzed range")]
    DegreeOutOfRange {
        face: usize,
        vertex: VertexId,
        degree: usize,
    },
}

/// Renders a charge as `numerator/denominator`, always with the slash
/// (e.g. `20/1`), so downstream consumers never need to guess the format.
pub fn ratio_string(c: Charge) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn int(n: i64) -> Charge {
    Charge::from_integer(n)
}

/// Per-corner contribution of a face with `sides` sides: `(10 − 3·sides) / sides`.
fn corner_term(sides: usize) -> Charge {
    Charge::new(10 - 3 * sides as i64, sides as i64)
}

/// The corner profile of a vertex: how many of its corners lie on faces
/// with `i` sides, keyed by `i`. Each face incidence counts once per corner,
/// so the profile entries always sum to the degree.
pub fn corner_profile(map: &PlanarMap, v: usize) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    for f in map.faces_at(v) {
        *profile.entry(map.face_size(f)).or_insert(0) += 1;
    }
    profile
}

/// The raw charge of a corner profile.
pub fn charge_of_profile(profile: &BTreeMap<usize, usize>) -> Charge {
    profile
        .iter()
        .map(|(&sides, &count)| corner_term(sides) * int(count as i64))
        .sum()
}

/// The adjusted charge of a corner profile at the given vertex degree:
/// raw charge minus `2·(degree − 5)`.
pub fn adjusted_charge_of_profile(profile: &BTreeMap<usize, usize>, degree: usize) -> Charge {
    charge_of_profile(profile) - int(2) * (int(degree as i64) - int(5))
}

fn first_non_polygon_face(map: &PlanarMap) -> Option<usize> {
    (0..map.face_count()).find(|&f| {
        let vs = map.face_vertices(f);
        let set: BTreeSet<usize> = vs.iter().copied().collect();
        set.len() != vs.len()
    })
}

fn require_polygon_faces(map: &PlanarMap) -> Result<(), ChargeError> {
    match first_non_polygon_face(map) {
        Some(face) => Err(ChargeError::NonPolygonFace { face }),
        None => Ok(()),
    }
}

fn require_degrees(map: &PlanarMap, mode: ChargeMode) -> Result<(), ChargeError> {
    for v in 0..map.vertex_count() {
        let degree = map.degree(v);
        match mode {
            ChargeMode::Exact5 if degree != 5 => {
                return Err(ChargeError::NotFiveRegular {
                    vertex: map.id(v),
                    degree,
                })
            }
            ChargeMode::MinDeg5 if degree < 5 => {
                return Err(ChargeError::DegreeBelowFive {
                    vertex: map.id(v),
                    degree,
                })
            }
            _ => {}
        }
    }
    Ok(())
}

/// Raw charge of every vertex, in vertex order. Requires polygon faces.
pub fn vertex_charges(map: &PlanarMap) -> Result<Vec<Charge>, ChargeError> {
    require_polygon_faces(map)?;
    Ok((0..map.vertex_count())
        .map(|v| charge_of_profile(&corner_profile(map, v)))
        .collect())
}

/// Adjusted charge of every vertex, in vertex order. Requires polygon faces.
pub fn adjusted_vertex_charges(map: &PlanarMap) -> Result<Vec<Charge>, ChargeError> {
    require_polygon_faces(map)?;
    Ok((0..map.vertex_count())
        .map(|v| adjusted_charge_of_profile(&corner_profile(map, v), map.degree(v)))
        .collect())
}

/// Sum of raw vertex charges, with no precondition checks. Well defined on
/// any plane map because it equals the sum of `10 − 3·|F|` over all faces.
pub fn raw_charge_sum(map: &PlanarMap) -> Charge {
    (0..map.vertex_count())
        .map(|v| charge_of_profile(&corner_profile(map, v)))
        .sum()
}

/// Sum of `2·(deg v − 5)` over all vertices.
pub fn degree_surplus(map: &PlanarMap) -> Charge {
    (0..map.vertex_count())
        .map(|v| int(2) * (int(map.degree(v) as i64) - int(5)))
        .sum()
}

/// Both sides of the global charge identity, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalIdentity {
    pub mode: ChargeMode,
    /// `Σ_F (10 − 3·|F|)` over all faces.
    pub face_sum: Charge,
    /// `Σ_v f(v)` over all vertices.
    pub raw_vertex_sum: Charge,
    /// `Σ_v (f(v) − 2·(deg v − 5))`; always 20 on a valid plane map.
    pub adjusted_vertex_sum: Charge,
    /// `Σ_v 2·(deg v − 5)`; zero in the exact-degree-5 regime.
    pub degree_surplus: Charge,
    /// `20 + degree_surplus`, what both unadjusted sums must equal.
    pub expected_sum: Charge,
    /// Whether all three equalities hold.
    pub holds: bool,
}

/// Checks the global charge identity in the requested degree regime.
///
/// In both regimes the face-side sum `Σ_F (10 − 3·|F|)` and the vertex-side
/// sum `Σ_v f(v)` must equal `20 + Σ_v 2·(deg v − 5)`, and the adjusted
/// vertex sum must equal exactly 20. With exact degree 5 the surplus term
/// vanishes and both plain sums are 20.
pub fn global_identity_check(
    map: &PlanarMap,
    mode: ChargeMode,
) -> Result<GlobalIdentity, ChargeError> {
    require_degrees(map, mode)?;
    require_polygon_faces(map)?;
    let face_sum: Charge = (0..map.face_count())
        .map(|f| int(10) - int(3) * int(map.face_size(f) as i64))
        .sum();
    let raw_vertex_sum = raw_charge_sum(map);
    let surplus = degree_surplus(map);
    let adjusted_vertex_sum = raw_vertex_sum - surplus;
    let expected_sum = int(20) + surplus;
    let holds =
        face_sum == expected_sum && raw_vertex_sum == expected_sum && adjusted_vertex_sum == int(20);
    Ok(GlobalIdentity {
        mode,
        face_sum,
        raw_vertex_sum,
        adjusted_vertex_sum,
        degree_surplus: surplus,
        expected_sum,
        holds,
    })
}

/// The shapes a positively charged vertex can take.
///
/// With degree exactly 5 and polygon faces, a vertex has positive charge
/// precisely when its corner profile is one of the three listed here; the
/// `Other` variant exists so an unexpected profile is reported rather than
/// silently mislabeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositiveKind {
    /// Five triangles: charge 5/3.
    FiveTriangles,
    /// Four triangles and one tetragon: charge 5/6.
    FourTrianglesTetragon,
    /// Four triangles and one pentagon: charge 1/3.
    FourTrianglesPentagon,
    /// Any other profile (never positive at degree 5 with polygon faces).
    Other,
}

impl std::fmt::Display for PositiveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PositiveKind::FiveTriangles => "five-triangles",
            PositiveKind::FourTrianglesTetragon => "four-triangles-tetragon",
            PositiveKind::FourTrianglesPentagon => "four-triangles-pentagon",
            PositiveKind::Other => "other",
        };
        f.write_str(s)
    }
}

/// One vertex with positive (adjusted) charge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveVertex {
    pub vertex: VertexId,
    pub degree: usize,
    pub raw: Charge,
    pub adjusted: Charge,
    pub profile: BTreeMap<usize, usize>,
    pub kind: PositiveKind,
}

fn classify(degree: usize, profile: &BTreeMap<usize, usize>) -> PositiveKind {
    let get = |i: usize| profile.get(&i).copied().unwrap_or(0);
    match (degree, get(3), get(4), get(5)) {
        (5, 5, 0, 0) => PositiveKind::FiveTriangles,
        (5, 4, 1, 0) => PositiveKind::FourTrianglesTetragon,
        (5, 4, 0, 1) => PositiveKind::FourTrianglesPentagon,
        _ => PositiveKind::Other,
    }
}

/// All vertices whose adjusted charge is positive, classified by profile.
///
/// In the exact-degree-5 regime the adjusted and raw charges coincide, so
/// this is exactly the set of positively charged vertices.
pub fn positive_vertices(
    map: &PlanarMap,
    mode: ChargeMode,
) -> Result<Vec<PositiveVertex>, ChargeError> {
    require_degrees(map, mode)?;
    require_polygon_faces(map)?;
    let mut out = Vec::new();
    for v in 0..map.vertex_count() {
        let degree = map.degree(v);
        let profile = corner_profile(map, v);
        let raw = charge_of_profile(&profile);
        let adjusted = adjusted_charge_of_profile(&profile, degree);
        if adjusted > int(0) {
            let kind = classify(degree, &profile);
            out.push(PositiveVertex {
                vertex: map.id(v),
                degree,
                raw,
                adjusted,
                profile,
                kind,
            });
        }
    }
    Ok(out)
}

/// A diagonal to insert inside one quadrilateral face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondSpec {
    /// Face index in the map's face list; must be a quadrilateral polygon.
    pub face: usize,
    /// The two opposite corners of that face the diagonal joins.
    pub diagonal: (VertexId, VertexId),
}

/// Result of inserting diagonals into diamond faces.
#[derive(Debug, Clone)]
pub struct AugmentationOutcome {
    /// The augmented map.
    pub map: PlanarMap,
    /// Number of diagonals inserted.
    pub added: usize,
    /// `Σ_v f(v)` before augmentation.
    pub raw_sum_before: Charge,
    /// `Σ_v f(v)` after augmentation; always `raw_sum_before + 4·added`.
    pub raw_sum_after: Charge,
    /// `Σ_v (f(v) − 2(deg v − 5))` after augmentation; always 20.
    pub adjusted_sum_after: Charge,
    /// Vertices of degree 6 in the augmented map.
    pub sixes: usize,
    /// Vertices of degree 7 in the augmented map.
    pub sevens: usize,
}

/// Inserts a unit diagonal inside each listed quadrilateral face.
///
/// Each insertion splits the quadrilateral into two triangles: the two
/// non-endpoint corners each gain 5/6 of charge (a tetragon corner becomes a
/// triangle corner) and the two endpoints each gain 7/6 (their corner splits
/// into two triangle corners and their degree rises by one), so every
/// diagonal raises the raw charge total by exactly 4 while the adjusted
/// total stays 20. When the input is 5-regular, the degree-6 and degree-7
/// counts of the result satisfy `sixes + 2·sevens = 2·added`.
///
/// Rejected inputs: non-quadrilateral or repeated faces, diagonals between
/// adjacent corners, diagonals that would double an existing edge, and any
/// vertex serving as a diagonal endpoint more than twice (which would push
/// its degree past the range the pentagon analysis covers).
pub fn augment_diamonds(
    map: &PlanarMap,
    specs: &[DiamondSpec],
) -> Result<AugmentationOutcome, ChargeError> {
    let mut seen_faces = BTreeSet::new();
    let mut seen_pairs = BTreeSet::new();
    let mut gains: BTreeMap<usize, usize> = BTreeMap::new();
    // (vertex, anchor neighbor, new neighbor): insert `new` immediately
    // before `anchor` in the rotation at `vertex`.
    let mut inserts: Vec<(usize, usize, usize)> = Vec::new();

    for spec in specs {
        if spec.face >= map.face_count() {
            return Err(ChargeError::FaceOutOfRange {
                face: spec.face,
                faces: map.face_count(),
            });
        }
        if !seen_faces.insert(spec.face) {
            return Err(ChargeError::DuplicateFace { face: spec.face });
        }
        let cycle = map.face_vertices(spec.face);
        if cycle.len() != 4 {
            return Err(ChargeError::NotAQuadrilateral {
                face: spec.face,
                size: cycle.len(),
            });
        }
        let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
        if distinct.len() != 4 {
            return Err(ChargeError::NonPolygonFace { face: spec.face });
        }
        let (ida, idb) = spec.diagonal;
        let a = map
            .index_of(ida)
            .ok_or(ChargeError::UnknownVertex { vertex: ida })?;
        let b = map
            .index_of(idb)
            .ok_or(ChargeError::UnknownVertex { vertex: idb })?;
        let not_opposite = || ChargeError::DiagonalNotOpposite {
            face: spec.face,
            a: ida,
            b: idb,
        };
        let pa = cycle.iter().position(|&v| v == a).ok_or_else(not_opposite)?;
        let pb = cycle.iter().position(|&v| v == b).ok_or_else(not_opposite)?;
        if (pb + 4 - pa) % 4 != 2 {
            return Err(not_opposite());
        }
        if map.rotation(a).contains(&b) {
            return Err(ChargeError::DiagonalAlreadyEdge { a: ida, b: idb });
        }
        if !seen_pairs.insert((a.min(b), a.max(b))) {
            return Err(ChargeError::DiagonalAlreadyEdge { a: ida, b: idb });
        }
        *gains.entry(a).or_insert(0) += 1;
        *gains.entry(b).or_insert(0) += 1;
        // The corner of the face at an endpoint sits between the endpoint's
        // face-cycle predecessor and successor in its rotation; inserting the
        // new neighbor immediately before the predecessor lands it inside
        // that corner.
        inserts.push((a, cycle[(pa + 3) % 4], b));
        inserts.push((b, cycle[(pb + 3) % 4], a));
    }

    for (&v, &gained) in &gains {
        if gained > 2 {
            return Err(ChargeError::VertexGainsTooManyDiagonals {
                vertex: map.id(v),
                gained,
            });
        }
    }

    let mut rot: Vec<Vec<usize>> = (0..map.vertex_count())
        .map(|v| map.rotation(v).to_vec())
        .collect();
    for (at, anchor, new_neighbor) in inserts {
        let pos = rot[at]
            .iter()
            .position(|&x| x == anchor)
            .expect("anchor neighbor present");
        rot[at].insert(pos, new_neighbor);
    }
    let table: Vec<(VertexId, Vec<VertexId>)> = rot
        .into_iter()
        .enumerate()
        .map(|(v, cycle)| (map.id(v), cycle.into_iter().map(|w| map.id(w)).collect()))
        .collect();
    let augmented = PlanarMap::build(&table).expect("diagonal insertion keeps the map plane");

    let raw_sum_before = raw_charge_sum(map);
    let raw_sum_after = raw_charge_sum(&augmented);
    let adjusted_sum_after = raw_sum_after - degree_surplus(&augmented);
    let degrees = augmented.degree_summary();
    let outcome = AugmentationOutcome {
        added: specs.len(),
        raw_sum_before,
        raw_sum_after,
        adjusted_sum_after,
        sixes: degrees.vertices_of_degree(6),
        sevens: degrees.vertices_of_degree(7),
        map: augmented,
    };
    Ok(outcome)
}

/// Charge bookkeeping for one pentagonal face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PentagonReport {
    /// Face index in the map's face list.
    pub face: usize,
    /// The pentagon's vertices, in face order.
    pub vertices: Vec<VertexId>,
    /// Each vertex's adjusted charge split evenly over its pentagon corners:
    /// `(f(v) − 2(deg v − 5)) / f_5(v)`, in the same order as `vertices`.
    pub shares: Vec<Charge>,
    /// How many of the vertices have the four-triangles-and-this-pentagon
    /// profile (degree 5, four triangle corners), the only profile with a
    /// positive share.
    pub special_count: usize,
    /// Sum of the five shares.
    pub share_sum: Charge,
    /// Whether the pentagon concentrates positive charge: a positive share
    /// sum, or at least four special vertices (with at most three, the share
    /// sum can never exceed zero).
    pub flagged: bool,
}

fn pentagon_reports_impl(
    map: &PlanarMap,
    max_degree: Option<usize>,
) -> Result<Vec<PentagonReport>, ChargeError> {
    require_polygon_faces(map)?;
    let mut reports = Vec::new();
    for face in 0..map.face_count() {
        if map.face_size(face) != 5 {
            continue;
        }
        let cycle = map.face_vertices(face);
        let mut vertices = Vec::with_capacity(5);
        let mut shares = Vec::with_capacity(5);
        let mut special_count = 0;
        for &v in &cycle {
            let degree = map.degree(v);
            let out_of_range =
                degree < 5 || max_degree.map(|cap| degree > cap).unwrap_or(false);
            if out_of_range {
                return Err(ChargeError::DegreeOutOfRange {
                    face,
                    vertex: map.id(v),
                    degree,
                });
            }
            let profile = corner_profile(map, v);
            let pentagons = profile.get(&5).copied().unwrap_or(0);
            debug_assert!(pentagons >= 1, "pentagon vertex has a pentagon corner");
            let adjusted = adjusted_charge_of_profile(&profile, degree);
            shares.push(adjusted / int(pentagons as i64));
            if classify(degree, &profile) == PositiveKind::FourTrianglesPentagon {
                special_count += 1;
            }
            vertices.push(map.id(v));
        }
        let share_sum: Charge = shares.iter().copied().sum();
        let flagged = share_sum > int(0) || special_count >= 4;
        reports.push(PentagonReport {
            face,
            vertices,
            shares,
            special_count,
            share_sum,
            flagged,
        });
    }
    Ok(reports)
}

/// Charge shares for every pentagonal face.
///
/// Every pentagon vertex must have degree 5, 6, or 7 — the range produced by
/// augmenting a 5-regular map with at most two diagonals per vertex, and the
/// range the certified share bounds cover.
pub fn pentagon_reports(map: &PlanarMap) -> Result<Vec<PentagonReport>, ChargeError> {
    pentagon_reports_impl(map, Some(7))
}

/// Pentagon shares with no upper degree cap (degrees must still be at least
/// 5). Used for auditing maps outside the augmented 5-regular regime.
pub(crate) fn pentagon_reports_any_degree(
    map: &PlanarMap,
) -> Result<Vec<PentagonReport>, ChargeError> {
    pentagon_reports_impl(map, None)
}

/// Exhaustive maximum of the pentagon share `(f − 2(deg − 5)) / f_5` over
/// all corner profiles with the given degree, face sizes from 3 through
/// `max_face_size`, and at least one pentagon corner.
///
/// `triangle_cap` optionally bounds the number of triangle corners (at unit
/// edge lengths a degree-5 vertex fits at most four). With
/// `exclude_special` the four-triangles-one-pentagon profile at degree 5 is
/// skipped, exposing the best share among the remaining profiles. Returns
/// `None` if no profile satisfies the constraints.
///
/// Frozen maxima, each certified by a test: degree 5 gives 1/3 (the special
/// profile) and −1/2 once the special profile is excluded; degrees 6 and 7
/// give −4/3 and −11/7, so every vertex of degree 6 or 7 contributes at
/// most −4/3.
pub fn max_pentagon_share(
    degree: usize,
    triangle_cap: Option<usize>,
    max_face_size: usize,
    exclude_special: bool,
) -> Option<Charge> {
    struct Search<'a> {
        sizes: &'a [usize],
        degree: usize,
        triangle_cap: Option<usize>,
        exclude_special: bool,
        best: Option<Charge>,
    }

    impl Search<'_> {
        fn rec(&mut self, counts: &mut [usize], pos: usize, remaining: usize) {
            if pos == self.sizes.len() {
                if remaining != 0 {
                    return;
                }
                let profile: BTreeMap<usize, usize> = self
                    .sizes
                    .iter()
                    .zip(counts.iter())
                    .filter(|&(_, &c)| c > 0)
                    .map(|(&s, &c)| (s, c))
                    .collect();
                let get = |i: usize| profile.get(&i).copied().unwrap_or(0);
                let pentagons = get(5);
                if pentagons == 0 {
                    return;
                }
                if let Some(cap) = self.triangle_cap {
                    if get(3) > cap {
                        return;
                    }
                }
                if self.exclude_special
                    && classify(self.degree, &profile) == PositiveKind::FourTrianglesPentagon
                {
                    return;
                }
                let share =
                    adjusted_charge_of_profile(&profile, self.degree) / int(pentagons as i64);
                match &self.best {
                    Some(b) if *b >= share => {}
                    _ => self.best = Some(share),
                }
                return;
            }
            for c in 0..=remaining {
                counts[pos] = c;
                self.rec(counts, pos + 1, remaining - c);
            }
            counts[pos] = 0;
        }
    }

    let sizes: Vec<usize> = (3..=max_face_size).collect();
    let mut counts: Vec<usize> = vec![0; sizes.len()];
    let mut search = Search {
        sizes: &sizes,
        degree,
        triangle_cap,
        exclude_special,
        best: None,
    };
    search.rec(&mut counts, 0, degree);
    search.best
}

/// Per-vertex charge record: the corner profile and both charge values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCharge {
    pub vertex: VertexId,
    pub degree: usize,
    /// Face size → number of corners of that size at this vertex.
    pub profile: BTreeMap<usize, usize>,
    /// `Σ_i (10 − 3i)·f_i(v)/i`.
    pub raw: Charge,
    /// `raw − 2·(degree − 5)`, equivalently `10 − 2·degree + raw`.
    pub adjusted: Charge,
}

/// The full per-vertex charge table, in vertex order.
pub fn charge_table(map: &PlanarMap) -> Result<Vec<VertexCharge>, ChargeError> {
    require_polygon_faces(map)?;
    Ok((0..map.vertex_count())
        .map(|v| {
            let degree = map.degree(v);
            let profile = corner_profile(map, v);
            let raw = charge_of_profile(&profile);
            let adjusted = adjusted_charge_of_profile(&profile, degree);
            VertexCharge { vertex: map.id(v), degree, profile, raw, adjusted }
        })
        .collect())
}

/// One local corner configuration around a pentagon-incident vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalConfig {
    pub degree: usize,
    /// Face size → number of corners of that size.
    pub profile: BTreeMap<usize, usize>,
    /// `(f − 2(degree − 5)) / f₅` for this profile.
    pub share: Charge,
    /// The certified ceiling for this configuration's class: −1/2 with two
    /// or more pentagon corners, −4/3 with one pentagon corner at degree
    /// ≥ 6, and 1/3 with one pentagon corner at degree 5.
    pub bound: Charge,
}

/// Exhaustive table of pentagon-incident corner configurations, each checked
/// against its class ceiling.
#[derive(Debug, Clone)]
pub struct LocalConfigTable {
    pub configs: Vec<LocalConfig>,
    /// Indices into `configs` that break their ceiling, or that reach the
    /// degree-5 ceiling 1/3 with any profile other than four triangles plus
    /// the pentagon. Empty on the full enumeration range.
    pub violations: Vec<usize>,
}

/// Enumerates every corner profile with the given degrees, face sizes from
/// 3 through `max_face_size`, at most four triangle corners, and at least
/// one pentagon corner, and checks the pentagon share `f̃/f₅` of each
/// profile against its class ceiling.
///
/// This is the brute-force check behind the per-pentagon bookkeeping: the
/// flagging rules in [`pentagon_reports`] are sound exactly because this
/// table contains no violations. Degrees must lie in 5..=7, the range a
/// vertex can have after diagonal insertion into a 5-regular map.
pub fn local_config_oracle(degrees: &[usize], max_face_size: usize) -> LocalConfigTable {
    assert!(
        degrees.iter().all(|d| (5..=7).contains(d)),
        "the share ceilings are certified for degrees 5 through 7 only"
    );
    assert!(max_face_size >= 5, "the range must include pentagons");
    let sizes: Vec<usize> = (3..=max_face_size).collect();
    let mut configs = Vec::new();
    for &degree in degrees {
        let mut counts = vec![0usize; sizes.len()];
        enumerate_profiles(&sizes, &mut counts, 0, degree, &mut |counts| {
            let profile: BTreeMap<usize, usize> = sizes
                .iter()
                .zip(counts.iter())
                .filter(|&(_, &c)| c > 0)
                .map(|(&s, &c)| (s, c))
                .collect();
            let get = |i: usize| profile.get(&i).copied().unwrap_or(0);
            if get(3) > 4 || get(5) == 0 {
                return;
            }
            let share =
                adjusted_charge_of_profile(&profile, degree) / int(get(5) as i64);
            let bound = if get(5) >= 2 {
                Charge::new(-1, 2)
            } else if degree >= 6 {
                Charge::new(-4, 3)
            } else {
                Charge::new(1, 3)
            };
            configs.push(LocalConfig { degree, profile, share, bound });
        });
    }
    let violations = configs
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let special = classify(c.degree, &c.profile) == PositiveKind::FourTrianglesPentagon;
            let single_pentagon_d5 =
                c.degree == 5 && c.profile.get(&5).copied().unwrap_or(0) == 1;
            c.share > c.bound || (single_pentagon_d5 && c.share == c.bound && !special)
        })
        .map(|(i, _)| i)
        .collect();
    LocalConfigTable { configs, violations }
}

/// Calls `emit` once per multiset of `sizes` with total multiplicity
/// `remaining`, filling `counts` in place.
fn enumerate_profiles(
    sizes: &[usize],
    counts: &mut Vec<usize>,
    pos: usize,
    remaining: usize,
    emit: &mut dyn FnMut(&[usize]),
) {
    if pos == sizes.len() {
        if remaining == 0 {
            emit(counts);
        }
        return;
    }
    for c in 0..=remaining {
        counts[pos] = c;
        enumerate_profiles(sizes, counts, pos + 1, remaining - c, emit);
    }
    counts[pos] = 0;
}
