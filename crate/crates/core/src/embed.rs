//! Numerical search for unit-distance drawings of a plane map.
//!
//! The solver minimizes the least-squares length energy
//! `E(x) = Σ_{uv∈E} (‖x_u − x_v‖ − 1)²` by gradient descent with Armijo
//! backtracking, over several deterministically seeded random restarts.
//! Runs that reach unit lengths but cross themselves get a crossing-penalty
//! pass (midpoint repulsion between crossing edge pairs) followed by a
//! penalty-free polish. Successful drawings are put in a canonical frame:
//! the first vertex at the origin, its first neighbor on the positive x
//! axis, and the drawing reflected if it realized the mirror of the stored
//! rotation system.
//!
//! This is a heuristic: failure to find a drawing is reported as exactly
//! that — *no realization found* — never as evidence that none exists.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{segments_cross, GeometricMap, Pt, ValidationReport};
use crate::map::PlanarMap;
use crate::scalar::Real;

/// Knobs of the embedding search. All runs are deterministic in `seed`.
#[derive(Debug, Clone)]
pub struct EmbedOptions<R> {
    /// Number of random restarts.
    pub restarts: usize,
    /// Gradient-descent iteration budget per restart.
    pub max_iters: usize,
    /// Success threshold on the largest edge-length error `|ℓ − 1|`.
    pub target: R,
    /// Tolerance handed to the final drawing validation.
    pub validation_tolerance: R,
    /// Base RNG seed; restart `i` uses a deterministic function of it.
    pub seed: u64,
    /// Maximum crossing-penalty rounds after lengths converge.
    pub penalty_rounds: usize,
}

impl<R: Real> Default for EmbedOptions<R> {
    fn default() -> Self {
        EmbedOptions {
            restarts: 20,
            max_iters: 5000,
            target: R::from_f64_lossy(1e-10),
            validation_tolerance: R::from_f64_lossy(crate::DEFAULT_TOLERANCE),
            seed: 0,
            penalty_rounds: 5,
        }
    }
}

/// A map plus options, ready to solve.
#[derive(Debug, Clone)]
pub struct EmbeddingProblem<R: Real> {
    map: PlanarMap,
    edges: Vec<(usize, usize)>,
    pub opts: EmbedOptions<R>,
}

/// How an embedding search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedStatus {
    /// A drawing with unit lengths passed full validation.
    Converged,
    /// Descent ran out of progress (a local minimum or collapsed step).
    Stalled,
    /// The iteration budget ran out while still making progress.
    Exhausted,
}

impl std::fmt::Display for EmbedStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EmbedStatus::Converged => "converged",
            EmbedStatus::Stalled => "stalled",
            EmbedStatus::Exhausted => "exhausted",
        })
    }
}

/// Outcome of [`EmbeddingProblem::solve`].
#[derive(Debug, Clone)]
pub struct EmbeddingResult<R: Real> {
    pub status: EmbedStatus,
    /// Best points found, in vertex order, in the canonical frame.
    pub points: Vec<Pt<R>>,
    /// Final least-squares length energy.
    pub objective: R,
    /// Largest `|ℓ − 1|` over the edges.
    pub max_edge_error: R,
    /// Restarts actually run.
    pub restarts_used: usize,
    /// Gradient-descent iterations summed over all restarts.
    pub iterations: usize,
    /// Validation of the best drawing, when its lengths reached the target.
    pub validation: Option<ValidationReport>,
    /// The validated drawing; present exactly when `status` is `Converged`.
    pub drawing: Option<GeometricMap<R>>,
}

impl<R: Real> EmbeddingResult<R> {
    /// One-line human summary. Careful language: a failed search never
    /// claims the drawing does not exist.
    pub fn message(&self) -> String {
        match self.status {
            EmbedStatus::Converged => format!(
                "realization found: {} points placed, max edge length error {:.2e}",
                self.points.len(),
                self.max_edge_error.to_f64_lossy()
            ),
            _ => format!(
                "no realization found ({} restarts, {} iterations; best max edge length \
                 error {:.2e}); the search is heuristic and does not show that no drawing exists",
                self.restarts_used,
                self.iterations,
                self.max_edge_error.to_f64_lossy()
            ),
        }
    }
}

/// Length energy and largest edge error of a point assignment.
fn measure<R: Real>(edges: &[(usize, usize)], pts: &[Pt<R>]) -> (R, R) {
    let one = R::from_f64_lossy(1.0);
    let mut obj = R::from_f64_lossy(0.0);
    let mut max_err = R::from_f64_lossy(0.0);
    for &(u, v) in edges {
        let err = (pts[u].dist(pts[v]) - one).abs();
        obj = obj + err * err;
        if err > max_err {
            max_err = err;
        }
    }
    (obj, max_err)
}

/// Crossing-pair midpoints repel inside this radius during untangling.
const PENALTY_RADIUS: f64 = 0.5;
/// Near-coincident vertex pairs repel out to this separation.
const CLOSE_TARGET: f64 = 0.3;
/// Non-adjacent vertices closer than this are treated as collapsed.
const CLOSE_RADIUS: f64 = 0.05;
const PENALTY_WEIGHT: f64 = 4.0;

/// Repulsion terms added to the length energy while untangling: midpoints
/// of crossing edge pairs, and near-coincident non-adjacent vertex pairs.
#[derive(Debug, Clone, Default)]
struct Penalties {
    /// Pairs of indices into the edge list whose segments cross.
    crossings: Vec<(usize, usize)>,
    /// Non-adjacent vertex pairs that have (nearly) collapsed together.
    close: Vec<(usize, usize)>,
}

impl Penalties {
    fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.close.is_empty()
    }
}

/// One quadratic repulsion term `w·(s − s0)²` for `s < s0`, accumulated into
/// the endpoints' gradient with the given per-point weight share.
#[allow(clippy::too_many_arguments)]
fn repel<R: Real>(
    s0: R,
    sx: R,
    sy: R,
    share: R,
    plus: &[usize],
    minus: &[usize],
    obj: &mut R,
    grad: &mut [Pt<R>],
) {
    let two = R::from_f64_lossy(2.0);
    let w = R::from_f64_lossy(PENALTY_WEIGHT);
    let tiny = R::from_f64_lossy(1e-9);
    let s = (sx * sx + sy * sy).sqrt();
    if s >= s0 {
        return;
    }
    *obj = *obj + w * (s - s0) * (s - s0);
    if s < tiny {
        // Zero subgradient; the caller breaks exact coincidences by jitter.
        return;
    }
    let f = two * w * (s - s0) / s;
    let (gx, gy) = (f * sx * share, f * sy * share);
    for &e in plus {
        grad[e].x = grad[e].x + gx;
        grad[e].y = grad[e].y + gy;
    }
    for &e in minus {
        grad[e].x = grad[e].x - gx;
        grad[e].y = grad[e].y - gy;
    }
}

/// Energy plus repulsion penalties, with the analytic gradient. Degenerate
/// edges (length below 1e-9) contribute a zero subgradient; the solver
/// kicks them apart instead.
fn objective_grad<R: Real>(
    edges: &[(usize, usize)],
    penalties: &Penalties,
    pts: &[Pt<R>],
) -> (R, Vec<Pt<R>>) {
    let zero = R::from_f64_lossy(0.0);
    let one = R::from_f64_lossy(1.0);
    let two = R::from_f64_lossy(2.0);
    let half = R::from_f64_lossy(0.5);
    let tiny = R::from_f64_lossy(1e-9);
    let mut grad = vec![Pt::new(zero, zero); pts.len()];
    let mut obj = zero;
    for &(u, v) in edges {
        let dx = pts[u].x - pts[v].x;
        let dy = pts[u].y - pts[v].y;
        let len = (dx * dx + dy * dy).sqrt();
        let err = len - one;
        obj = obj + err * err;
        if len < tiny {
            continue;
        }
        let scale = two * err / len;
        grad[u].x = grad[u].x + scale * dx;
        grad[u].y = grad[u].y + scale * dy;
        grad[v].x = grad[v].x - scale * dx;
        grad[v].y = grad[v].y - scale * dy;
    }
    for &(i, j) in &penalties.crossings {
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        let m1 = Pt::new((pts[a].x + pts[b].x) * half, (pts[a].y + pts[b].y) * half);
        let m2 = Pt::new((pts[c].x + pts[d].x) * half, (pts[c].y + pts[d].y) * half);
        repel(
            R::from_f64_lossy(PENALTY_RADIUS),
            m1.x - m2.x,
            m1.y - m2.y,
            half,
            &[a, b],
            &[c, d],
            &mut obj,
            &mut grad,
        );
    }
    for &(u, v) in &penalties.close {
        repel(
            R::from_f64_lossy(CLOSE_TARGET),
            pts[u].x - pts[v].x,
            pts[u].y - pts[v].y,
            one,
            &[u],
            &[v],
            &mut obj,
            &mut grad,
        );
    }
    (obj, grad)
}

fn objective_value<R: Real>(
    edges: &[(usize, usize)],
    penalties: &Penalties,
    pts: &[Pt<R>],
) -> R {
    objective_grad(edges, penalties, pts).0
}

/// Edge pairs (as indices into `edges`) that cross in the current drawing,
/// excluding pairs that share an endpoint.
fn crossing_pairs<R: Real>(edges: &[(usize, usize)], pts: &[Pt<R>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_cross(pts[a], pts[b], pts[c], pts[d]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Non-adjacent vertex pairs that have collapsed within [`CLOSE_RADIUS`].
fn close_pairs<R: Real>(
    edges: &[(usize, usize)],
    pts: &[Pt<R>],
) -> Vec<(usize, usize)> {
    let radius = R::from_f64_lossy(CLOSE_RADIUS);
    let adjacent: std::collections::BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let mut out = Vec::new();
    for u in 0..pts.len() {
        for v in u + 1..pts.len() {
            if adjacent.contains(&(u, v)) {
                continue;
            }
            if pts[u].dist(pts[v]) < radius {
                out.push((u, v));
            }
        }
    }
    out
}

/// Basin-hopping nudge applied to every point.
fn jitter<R: Real>(pts: &mut [Pt<R>], amplitude: f64, rng: &mut ChaCha8Rng) {
    for p in pts.iter_mut() {
        p.x = p.x + R::from_f64_lossy(rng.random_range(-amplitude..amplitude));
        p.y = p.y + R::from_f64_lossy(rng.random_range(-amplitude..amplitude));
    }
}

fn has_tiny_edge<R: Real>(edges: &[(usize, usize)], pts: &[Pt<R>]) -> bool {
    let tiny = R::from_f64_lossy(1e-9);
    edges.iter().any(|&(u, v)| pts[u].dist(pts[v]) < tiny)
}

/// Nudges endpoints of degenerate edges apart with a seeded perturbation.
fn kick_tiny_edges<R: Real>(edges: &[(usize, usize)], pts: &mut [Pt<R>], rng: &mut ChaCha8Rng) {
    let tiny = R::from_f64_lossy(1e-9);
    for &(u, v) in edges {
        if pts[u].dist(pts[v]) < tiny {
            for &e in &[u, v] {
                pts[e].x = pts[e].x + R::from_f64_lossy(rng.random_range(-0.1..0.1));
                pts[e].y = pts[e].y + R::from_f64_lossy(rng.random_range(-0.1..0.1));
            }
        }
    }
}

/// Armijo-backtracking gradient descent on the (possibly penalized) energy.
/// Returns `(iterations, stalled)`; `stalled` means progress died before the
/// budget did.
fn descend<R: Real>(
    edges: &[(usize, usize)],
    penalties: &Penalties,
    pts: &mut Vec<Pt<R>>,
    max_iters: usize,
    stop_max_err: Option<R>,
    rng: &mut ChaCha8Rng,
) -> (usize, bool) {
    let c = R::from_f64_lossy;
    let armijo = c(1e-4);
    let mut step = c(0.25);
    let (mut obj, mut grad) = objective_grad(edges, penalties, pts);
    let mut kicks = 0usize;
    for it in 0..max_iters {
        if let Some(te) = stop_max_err {
            let (_, max_err) = measure(edges, pts);
            if max_err <= te {
                return (it, false);
            }
        }
        let gnorm2 = grad
            .iter()
            .fold(c(0.0), |s, g| s + g.x * g.x + g.y * g.y);
        if gnorm2 < c(1e-32) {
            if kicks < 3 && has_tiny_edge(edges, pts) {
                kick_tiny_edges(edges, pts, rng);
                kicks += 1;
                let refreshed = objective_grad(edges, penalties, pts);
                obj = refreshed.0;
                grad = refreshed.1;
                step = c(0.25);
                continue;
            }
            return (it, true);
        }
        let mut accepted = false;
        while step >= c(1e-18) {
            let cand: Vec<Pt<R>> = pts
                .iter()
                .zip(&grad)
                .map(|(p, g)| Pt::new(p.x - step * g.x, p.y - step * g.y))
                .collect();
            let cand_obj = objective_value(edges, penalties, &cand);
            if cand_obj <= obj - armijo * step * gnorm2 {
                *pts = cand;
                let refreshed = objective_grad(edges, penalties, pts);
                obj = refreshed.0;
                grad = refreshed.1;
                step = step * c(1.5);
                accepted = true;
                break;
            }
            step = step * c(0.5);
        }
        if !accepted {
            if kicks < 3 && has_tiny_edge(edges, pts) {
                kick_tiny_edges(edges, pts, rng);
                kicks += 1;
                let refreshed = objective_grad(edges, penalties, pts);
                obj = refreshed.0;
                grad = refreshed.1;
                step = c(0.25);
                continue;
            }
            return (it, true);
        }
    }
    (max_iters, false)
}

/// Puts points in the canonical frame: vertex 0 at the origin, its first
/// stored neighbor on the positive x axis, orientation matching the stored
/// rotations (reflecting if the drawing realized their mirror).
fn canonicalize<R: Real>(map: &PlanarMap, pts: &mut [Pt<R>]) {
    if pts.is_empty() {
        return;
    }
    let origin = pts[0];
    for p in pts.iter_mut() {
        p.x = p.x - origin.x;
        p.y = p.y - origin.y;
    }
    if drawing_is_mirrored(map, pts) {
        for p in pts.iter_mut() {
            p.y = -p.y;
        }
    }
    if map.degree(0) > 0 {
        let u = map.rotation(0)[0];
        let d = pts[u];
        let r = (d.x * d.x + d.y * d.y).sqrt();
        if r > R::from_f64_lossy(1e-12) {
            let (cos, sin) = (d.x / r, d.y / r);
            for p in pts.iter_mut() {
                let (x, y) = (p.x, p.y);
                p.x = x * cos + y * sin;
                p.y = y * cos - x * sin;
            }
        }
    }
}

/// True when the drawn angular order at some probe vertex is the reverse of
/// the stored rotation (and not also equal to it), i.e. the drawing
/// realizes the mirror map.
fn drawing_is_mirrored<R: Real>(map: &PlanarMap, pts: &[Pt<R>]) -> bool {
    let Some(v) = (0..map.vertex_count()).find(|&v| map.degree(v) >= 3) else {
        return false;
    };
    let stored = map.rotation(v);
    let mut drawn: Vec<usize> = stored.to_vec();
    drawn.sort_by(|&a, &b| {
        let ang = |w: usize| (pts[w].y - pts[v].y).atan2(pts[w].x - pts[v].x);
        ang(a)
            .partial_cmp(&ang(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    if crate::geometry::cyclically_equal(stored, &drawn) {
        return false;
    }
    let reversed: Vec<usize> = drawn.iter().rev().copied().collect();
    crate::geometry::cyclically_equal(stored, &reversed)
}

impl<R: Real> EmbeddingProblem<R> {
    pub fn new(map: PlanarMap) -> Self {
        let edges = map.edge_list();
        EmbeddingProblem {
            map,
            edges,
            opts: EmbedOptions::default(),
        }
    }

    pub fn with_options(map: PlanarMap, opts: EmbedOptions<R>) -> Self {
        let edges = map.edge_list();
        EmbeddingProblem { map, edges, opts }
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    /// Length energy and its analytic gradient at a point assignment.
    pub fn objective_and_gradient(&self, pts: &[Pt<R>]) -> (R, Vec<Pt<R>>) {
        objective_grad(&self.edges, &Penalties::default(), pts)
    }

    fn rng_for_restart(&self, i: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.opts
                .seed
                .wrapping_add((i as u64).wrapping_mul(0x9E3779B97F4A7C15)),
        )
    }

    fn random_points(&self, rng: &mut ChaCha8Rng) -> Vec<Pt<R>> {
        let span = (self.map.vertex_count().max(1) as f64).sqrt();
        (0..self.map.vertex_count())
            .map(|_| {
                Pt::new(
                    R::from_f64_lossy(rng.random_range(-span..span)),
                    R::from_f64_lossy(rng.random_range(-span..span)),
                )
            })
            .collect()
    }

    fn validate_points(&self, pts: &[Pt<R>]) -> ValidationReport {
        GeometricMap::from_points(self.map.clone(), pts.to_vec())
            .expect("point count matches map")
            .validate(self.opts.validation_tolerance, None)
    }

    /// Post-processing once lengths came near the target: canonicalize and
    /// validate; while the drawing is tangled (crossing edges or collapsed
    /// vertex pairs), basin-hop with a seeded jitter of escalating
    /// amplitude, descend under tangle repulsion, then re-polish without
    /// it. The jitter is what lets a closed linkage flip from a crossed
    /// branch of its configuration space to an uncrossed one; the repulsion
    /// biases the hop away from re-collapsing.
    fn finish(
        &self,
        mut pts: Vec<Pt<R>>,
        rng: &mut ChaCha8Rng,
        iterations: &mut usize,
    ) -> (Vec<Pt<R>>, ValidationReport) {
        canonicalize(&self.map, &mut pts);
        let mut report = self.validate_points(&pts);
        for round in 0..self.opts.penalty_rounds {
            let (_, max_err) = measure(&self.edges, &pts);
            if report.passed() && max_err <= self.opts.target {
                break;
            }
            let penalties = Penalties {
                crossings: crossing_pairs(&self.edges, &pts),
                close: close_pairs(&self.edges, &pts),
            };
            if penalties.is_empty() {
                break;
            }
            jitter(&mut pts, 0.1 * (round + 1) as f64, rng);
            let (it, _) = descend(
                &self.edges,
                &penalties,
                &mut pts,
                self.opts.max_iters / 2,
                None,
                rng,
            );
            *iterations += it;
            let (it, _) = descend(
                &self.edges,
                &Penalties::default(),
                &mut pts,
                self.opts.max_iters,
                Some(self.opts.target),
                rng,
            );
            *iterations += it;
            canonicalize(&self.map, &mut pts);
            report = self.validate_points(&pts);
        }
        (pts, report)
    }

    /// Re-enters the untangling rounds on a finished result: if the result
    /// already converged, or its lengths never came near unit, it is
    /// returned unchanged (a failure stays a failure — the pass never
    /// manufactures success away from the length manifold). Otherwise the
    /// tangle-repulsion rounds run again and the result is regraded by the
    /// penalty-free validator.
    pub fn crossing_penalty_pass(&self, result: EmbeddingResult<R>) -> EmbeddingResult<R> {
        if result.status == EmbedStatus::Converged {
            return result;
        }
        let (_, err) = measure(&self.edges, &result.points);
        if err > self.near_threshold() {
            return result;
        }
        let mut rng = self.rng_for_restart(self.opts.restarts.max(1).wrapping_add(1));
        self.package(
            result.points,
            result.status == EmbedStatus::Stalled,
            result.restarts_used,
            result.iterations,
            &mut rng,
        )
    }

    /// Runs one descent from the given starting points (no restarts).
    pub fn solve_from(&self, mut pts: Vec<Pt<R>>) -> EmbeddingResult<R> {
        let mut rng = self.rng_for_restart(0);
        let mut iterations = 0usize;
        let (it, stalled) = descend(
            &self.edges,
            &Penalties::default(),
            &mut pts,
            self.opts.max_iters,
            Some(self.opts.target),
            &mut rng,
        );
        iterations += it;
        self.package(pts, stalled, 1, iterations, &mut rng)
    }

    /// Runs the full restart loop.
    pub fn solve(&self) -> EmbeddingResult<R> {
        let mut iterations = 0usize;
        let mut best: Option<(Vec<Pt<R>>, R, bool)> = None;
        for i in 0..self.opts.restarts.max(1) {
            let mut rng = self.rng_for_restart(i);
            let mut pts = self.random_points(&mut rng);
            let (it, stalled) = descend(
                &self.edges,
                &Penalties::default(),
                &mut pts,
                self.opts.max_iters,
                Some(self.opts.target),
                &mut rng,
            );
            iterations += it;
            let (_, max_err) = measure(&self.edges, &pts);
            if max_err <= self.near_threshold() {
                let result = self.package(pts.clone(), stalled, i + 1, iterations, &mut rng);
                if result.status == EmbedStatus::Converged {
                    return result;
                }
                iterations = result.iterations;
            }
            let replace = match &best {
                None => true,
                Some((_, best_err, _)) => max_err < *best_err,
            };
            if replace {
                best = Some((pts, max_err, stalled));
            }
        }
        let (pts, _, stalled) = best.expect("at least one restart ran");
        let mut rng = self.rng_for_restart(self.opts.restarts.max(1));
        self.package(pts, stalled, self.opts.restarts.max(1), iterations, &mut rng)
    }

    /// Lengths this close to unit are worth the untangling pass even if the
    /// exact target has not been hit yet (descent can creep sublinearly
    /// toward collapsed configurations that the pass then breaks up).
    fn near_threshold(&self) -> R {
        self.opts.target.max(R::from_f64_lossy(1e-3))
    }

    /// Assembles a result from final points: canonicalizes, untangles and
    /// validates when lengths (nearly) met the target, and grades the
    /// status.
    fn package(
        &self,
        pts: Vec<Pt<R>>,
        stalled: bool,
        restarts_used: usize,
        mut iterations: usize,
        rng: &mut ChaCha8Rng,
    ) -> EmbeddingResult<R> {
        let (_, max_err_before) = measure(&self.edges, &pts);
        let (pts, validation) = if max_err_before <= self.near_threshold() {
            let (pts, report) = self.finish(pts, rng, &mut iterations);
            (pts, Some(report))
        } else {
            let mut pts = pts;
            canonicalize(&self.map, &mut pts);
            (pts, None)
        };
        let (objective, max_edge_error) = measure(&self.edges, &pts);
        let lengths_met = max_edge_error <= self.opts.target;
        let converged = lengths_met && validation.as_ref().is_some_and(|r| r.passed());
        let status = if converged {
            EmbedStatus::Converged
        } else if stalled || lengths_met {
            // Unit lengths with a failed validation is also a dead end.
            EmbedStatus::Stalled
        } else {
            EmbedStatus::Exhausted
        };
        let drawing = if converged {
            Some(
                GeometricMap::from_points(self.map.clone(), pts.clone())
                    .expect("point count matches map"),
            )
        } else {
            None
        };
        EmbeddingResult {
            status,
            points: pts,
            objective,
            max_edge_error,
            restarts_used,
            iterations,
            validation,
            drawing,
        }
    }
}
