//! Desk-scale enumeration of plane maps and the end-to-end search pipeline:
//! enumerate candidate rotation systems, try to draw each with unit edges,
//! validate the drawings, and (for degree-5 searches) audit every candidate's
//! charges.
//!
//! Enumeration grows maps one edge at a time from the single-vertex map,
//! using the two moves that invert edge deletion on connected plane maps:
//! attaching a pendant vertex into a corner, and inserting a chord between
//! two corners of one face. Duplicates are pruned level by level with a
//! canonical code, so each map (up to orientation-preserving isomorphism of
//! rotation systems) appears exactly once; mirror images stay distinct until
//! the pipeline's final report, which merges them.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::{audit, AuditReport};
use crate::charge::ChargeMode;
use crate::embed::{EmbedStatus, EmbeddingProblem};
use crate::map::{PlanarMap, VertexId};

/// The degree requirement a search enumerates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeGoal {
    /// Every vertex has degree exactly `k`.
    Regular(usize),
    /// Every vertex has degree at least `k`.
    MinDegree(usize),
}

/// What to search for and how hard to try.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    pub goal: DegreeGoal,
    /// Enumeration budget: only maps with at most this many edges are
    /// produced. Capped at [`MAX_EDGE_BUDGET`].
    pub max_edges: usize,
    /// Wall-clock budget for the embedding phase of the pipeline.
    pub budget: Duration,
    /// Base seed for the per-candidate embedding searches.
    pub seed: u64,
}

/// Hard ceiling on the enumeration budget; above this the map counts stop
/// being desk-scale.
pub const MAX_EDGE_BUDGET: usize = 14;

impl SearchSpec {
    /// A `k`-regular search with the default budgets.
    pub fn regular(k: usize) -> Self {
        SearchSpec {
            goal: DegreeGoal::Regular(k),
            max_edges: MAX_EDGE_BUDGET,
            budget: Duration::from_secs(60),
            seed: 0,
        }
    }

    /// A minimum-degree-`k` search with the default budgets.
    pub fn min_degree(k: usize) -> Self {
        SearchSpec { goal: DegreeGoal::MinDegree(k), ..SearchSpec::regular(k) }
    }

    /// Checks the degree goal and the edge budget.
    pub fn validate(&self) -> Result<(), SearchError> {
        match self.goal {
            DegreeGoal::Regular(k) if k >= 6 => {
                return Err(SearchError::RegularInfeasible { k });
            }
            DegreeGoal::Regular(k) if k < 2 => {
                return Err(SearchError::RegularOutOfRange { k });
            }
            DegreeGoal::MinDegree(k) if k >= 6 => {
                return Err(SearchError::MinDegreeInfeasible { k });
            }
            DegreeGoal::MinDegree(0) => {
                return Err(SearchError::MinDegreeOutOfRange);
            }
            _ => {}
        }
        if self.max_edges > MAX_EDGE_BUDGET {
            return Err(SearchError::BudgetTooLarge { max_edges: self.max_edges });
        }
        Ok(())
    }
}

/// Rejections of a search request.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    /// In a finite planar map, Euler's identity `V − E + F = 2` combined
    /// with `3F ≤ 2E` forces `E ≤ 3V − 6`, hence average degree under 6.
    #[error(
        "no finite planar map is regular of degree {k}: Euler's formula forces the \
         average degree of a finite planar map below 6, so the search would be empty"
    )]
    RegularInfeasible { k: usize },
    #[error(
        "no finite planar map has minimum degree {k}: Euler's formula forces the \
         average degree of a finite planar map below 6, so the search would be empty"
    )]
    MinDegreeInfeasible { k: usize },
    #[error("regular searches cover degrees 2 through 5; got {k}")]
    RegularOutOfRange { k: usize },
    #[error("minimum-degree searches cover degrees 1 through 5; got 0")]
    MinDegreeOutOfRange,
    #[error("an edge budget of {max_edges} is past the desk-scale cap of 14")]
    BudgetTooLarge { max_edges: usize },
}

/// A label-independent encoding of a connected rotation system.
///
/// For every starting dart, a breadth-first traversal relabels the vertices
/// in discovery order — scanning each vertex's rotation cyclically from the
/// dart it was entered through — and writes down `[V, deg, labels…, deg,
/// labels…]`. The code is the lexicographic minimum over all `2E` starting
/// darts, so two maps share a code exactly when some orientation-preserving
/// isomorphism relates them. A map and its mirror image usually get
/// different codes; see [`mirror_class_code`].
pub fn canonical_code(map: &PlanarMap) -> Vec<u32> {
    let n = map.vertex_count();
    if map.edge_count() == 0 {
        return vec![n as u32];
    }
    let mut best: Option<Vec<u32>> = None;
    for v in 0..n {
        for j in 0..map.degree(v) {
            let code = bfs_code(map, v, j);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.expect("a map with edges has darts")
}

/// The lesser of the map's own code and its mirror image's code; equal for
/// any two maps related by an isomorphism, orientation-preserving or not.
pub fn mirror_class_code(map: &PlanarMap) -> Vec<u32> {
    canonical_code(map).min(canonical_code(&map.mirrored()))
}

fn bfs_code(map: &PlanarMap, root: usize, root_j: usize) -> Vec<u32> {
    let n = map.vertex_count();
    let mut label = vec![u32::MAX; n];
    // (vertex, rotation index to start scanning from), in discovery order.
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(n);
    label[root] = 0;
    order.push((root, root_j));
    let mut code: Vec<u32> = Vec::with_capacity(1 + n + 2 * map.edge_count());
    code.push(n as u32);
    let mut head = 0;
    while head < order.len() {
        let (v, start) = order[head];
        head += 1;
        let rot = map.rotation(v);
        let d = rot.len();
        code.push(d as u32);
        for t in 0..d {
            let w = rot[(start + t) % d];
            if label[w] == u32::MAX {
                label[w] = order.len() as u32;
                let entry = map
                    .rotation(w)
                    .iter()
                    .position(|&x| x == v)
                    .expect("adjacency is symmetric");
                order.push((w, entry));
            }
            code.push(label[w]);
        }
    }
    code
}

/// All pendant-vertex and chord insertions on `m`, in a fixed order.
fn children(m: &PlanarMap) -> Vec<PlanarMap> {
    let n = m.vertex_count();
    let rot: Vec<Vec<usize>> = (0..n).map(|v| m.rotation(v).to_vec()).collect();
    let mut out = Vec::new();

    // Attach a new vertex into each corner of each vertex.
    for u in 0..n {
        let positions = rot[u].len().max(1);
        for i in 0..positions {
            let mut grown = rot.clone();
            let at = i.min(grown[u].len());
            grown[u].insert(at, n);
            grown.push(vec![u]);
            out.push(build_from_indices(&grown));
        }
    }

    // Insert a chord between two distinct corners of one face. The corner
    // after dart `(t, h)` sits at vertex `h`; a new edge planted there goes
    // into the rotation at `h` directly before `t`.
    for face in m.faces() {
        for j in 0..face.len() {
            for l in (j + 1)..face.len() {
                let (ta, a) = face[j];
                let (tb, b) = face[l];
                if a == b || rot[a].contains(&b) {
                    continue;
                }
                let pa = rot[a].iter().position(|&x| x == ta).expect("dart in rotation");
                let pb = rot[b].iter().position(|&x| x == tb).expect("dart in rotation");
                let mut grown = rot.clone();
                grown[a].insert(pa, b);
                grown[b].insert(pb, a);
                out.push(build_from_indices(&grown));
            }
        }
    }

    out
}

fn build_from_indices(rot: &[Vec<usize>]) -> PlanarMap {
    let table: Vec<(VertexId, Vec<VertexId>)> = rot
        .iter()
        .enumerate()
        .map(|(v, ns)| {
            (
                VertexId(v as u32 + 1),
                ns.iter().map(|&w| VertexId(w as u32 + 1)).collect(),
            )
        })
        .collect();
    PlanarMap::build(&table).expect("corner insertions preserve plane maps")
}

/// Whether a grown map can still reach the goal within the edge budget:
/// every missing degree needs half an edge, and regular goals can never
/// lose degree already in excess.
fn viable(m: &PlanarMap, goal: DegreeGoal, max_edges: usize) -> bool {
    let (k, cap_excess) = match goal {
        DegreeGoal::Regular(k) => (k, true),
        DegreeGoal::MinDegree(k) => (k, false),
    };
    let mut deficiency = 0usize;
    for v in 0..m.vertex_count() {
        let d = m.degree(v);
        if cap_excess && d > k {
            return false;
        }
        deficiency += k.saturating_sub(d);
    }
    m.edge_count() + deficiency.div_ceil(2) <= max_edges
}

fn satisfies(m: &PlanarMap, goal: DegreeGoal) -> bool {
    let summary = m.degree_summary();
    match goal {
        DegreeGoal::Regular(k) => summary.regular() == Some(k),
        DegreeGoal::MinDegree(k) => summary.min_degree() >= k,
    }
}

/// Enumerates every connected simple plane map with the degree property and
/// at most `spec.max_edges` edges, exactly once per orientation-preserving
/// isomorphism class, in ascending edge count.
pub fn enumerate_maps(spec: &SearchSpec) -> Result<Vec<PlanarMap>, SearchError> {
    spec.validate()?;
    let single = PlanarMap::build(&[(VertexId(1), vec![])]).expect("one vertex is a map");
    let mut level = vec![single];
    let mut out = Vec::new();
    for _ in 0..spec.max_edges {
        let mut next = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for parent in &level {
            for child in children(parent) {
                if !viable(&child, spec.goal, spec.max_edges) {
                    continue;
                }
                if seen.insert(canonical_code(&child)) {
                    next.push(child);
                }
            }
        }
        out.extend(next.iter().filter(|m| satisfies(m, spec.goal)).cloned());
        level = next;
    }
    Ok(out)
}

/// Validation summary attached to a finding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingValidation {
    pub passed: bool,
    pub tolerance: f64,
    pub edges_checked: usize,
}

/// One matchstick graph the pipeline found: a map together with a drawing
/// that passed full validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    /// Canonical serialized form of the map.
    pub map_text: String,
    pub vertices: usize,
    pub edges: usize,
    /// Vertex id → drawn coordinates.
    pub coords: BTreeMap<u32, [f64; 2]>,
    /// Largest `|edge length − 1|` in the drawing.
    pub residual: f64,
    pub validation: FindingValidation,
    /// Index into the report's `audits` list, for audited searches.
    pub audit: Option<usize>,
}

/// The pipeline's full outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    /// `regular` or `min-degree`.
    pub goal: String,
    pub k: usize,
    pub max_edges: usize,
    pub seed: u64,
    /// Maps enumerated, after merging mirror-image pairs.
    pub candidates: usize,
    /// How many candidates the embedding phase reached within the budget.
    pub attempted: usize,
    /// True when the time budget cut the embedding phase short.
    pub truncated: bool,
    /// Validator-passing drawings, sorted by edge count.
    pub findings: Vec<Finding>,
    /// For degree-5 searches: one charge audit per candidate, in candidate
    /// order.
    pub audits: Vec<AuditReport>,
}

impl PipelineReport {
    /// The report as stable-field-order JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are plain data")
    }
}

/// Runs the full search: enumerate candidates, merge mirror images, audit
/// charges (degree-5 goals), and attempt a unit-distance drawing of each
/// candidate until the time budget runs out. A candidate becomes a finding
/// only when the solver converges and the penalty-free validator passes.
pub fn run_pipeline(spec: &SearchSpec) -> Result<PipelineReport, SearchError> {
    spec.validate()?;
    let enumerated = enumerate_maps(spec)?;

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut candidates: Vec<PlanarMap> = Vec::new();
    for m in enumerated {
        if seen.insert(mirror_class_code(&m)) {
            candidates.push(m);
        }
    }

    let (goal_name, k) = match spec.goal {
        DegreeGoal::Regular(k) => ("regular", k),
        DegreeGoal::MinDegree(k) => ("min-degree", k),
    };
    let audit_mode = match spec.goal {
        DegreeGoal::Regular(5) => Some(ChargeMode::Exact5),
        DegreeGoal::MinDegree(5) => Some(ChargeMode::MinDeg5),
        _ => None,
    };

    let start = Instant::now();
    let mut findings = Vec::new();
    let mut audits = Vec::new();
    let mut attempted = 0;
    let mut truncated = false;

    for (i, m) in candidates.iter().enumerate() {
        if start.elapsed() >= spec.budget {
            truncated = true;
            break;
        }
        attempted += 1;

        let audit_ref = audit_mode.map(|mode| {
            audits.push(audit_or_refusal(m, mode));
            audits.len() - 1
        });

        let mut prob: EmbeddingProblem<f64> = EmbeddingProblem::new(m.clone());
        prob.opts.seed = spec.seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let result = prob.solve();
        if result.status != EmbedStatus::Converged {
            continue;
        }
        let drawing = result.drawing.expect("converged results carry a drawing");
        let validation = result.validation.expect("converged results carry a report");
        findings.push(Finding {
            map_text: m.serialize(),
            vertices: m.vertex_count(),
            edges: m.edge_count(),
            coords: drawing
                .coord_pairs()
                .into_iter()
                .map(|(v, p)| (v.0, [p.x, p.y]))
                .collect(),
            residual: result.max_edge_error,
            validation: FindingValidation {
                passed: validation.passed(),
                tolerance: validation.tolerance,
                edges_checked: validation.edges_checked,
            },
            audit: audit_ref,
        });
    }
    findings.sort_by_key(|f| f.edges);

    Ok(PipelineReport {
        goal: goal_name.to_string(),
        k,
        max_edges: spec.max_edges,
        seed: spec.seed,
        candidates: candidates.len(),
        attempted,
        truncated,
        findings,
        audits,
    })
}

/// Audits one candidate; a candidate outside the audit regime still gets a
/// report, with the refusal recorded as its verdict.
fn audit_or_refusal(m: &PlanarMap, mode: ChargeMode) -> AuditReport {
    match audit(m, mode) {
        Ok(report) => report,
        Err(e) => AuditReport {
            mode: match mode {
                ChargeMode::Exact5 => "exact-5-regular".to_string(),
                ChargeMode::MinDeg5 => "min-degree-5".to_string(),
            },
            identities: Vec::new(),
            positive_vertices: Vec::new(),
            pentagons: Vec::new(),
            verdict: format!("input violated preconditions: {e}"),
        },
    }
}
