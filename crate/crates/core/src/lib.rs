//! Combinatorial planar maps with unit-length straight edges.
//!
//! This crate models finite planar maps as rotation systems (a cyclic,
//! counterclockwise neighbor order at every vertex), and layers four tools on
//! top of that representation:
//!
//! * [`map`] — building, parsing, serializing and face-tracing rotation
//!   systems, with the Euler check that separates plane maps from
//!   higher-genus embeddings.
//! * [`charge`] — an exact-rational accounting of face-size charges
//!   (`(10-3i)/i` per incident `i`-gon), the global identities they satisfy,
//!   diamond (unit-rhombus) diagonal augmentation, and the per-pentagon case
//!   analysis that certifies why no 5-regular unit-edge map can exist.
//! * [`geometry`] / [`svg`] — floating-point validation of a drawing
//!   (unit lengths, no crossings, rotation consistency) and deterministic
//!   SVG rendering. Generic over the scalar via [`scalar::Real`].
//! * [`embed`] / [`search`] — a seeded least-squares solver that looks for
//!   unit-distance drawings, and a desk-scale enumerator + pipeline that
//!   searches for regular matchstick maps.
//!
//! Charge arithmetic is exact ([`Charge`] is a rational over `i64`); all
//! geometric decisions go through one relative tolerance knob
//! ([`DEFAULT_TOLERANCE`]).

pub mod audit;
pub mod catalog;
pub mod charge;
pub mod embed;
pub mod geometry;
pub mod map;
pub mod scalar;
pub mod search;
pub mod svg;

pub use map::{FaceCensus, MapError, PlanarMap, VertexId};
pub use scalar::Real;

/// Exact rational charge value. `i64` numerators/denominators are ample at
/// desk scale: every charge is a sum of at most a few dozen terms `(10-3i)/i`
/// with `i` bounded by the largest face size.
pub type Charge = num::rational::Ratio<i64>;

/// Default relative tolerance for geometric decisions (unit length, vertex
/// coincidence, diamond diagonals).
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// A plane point at the default (`f64`) precision.
pub type Point = geometry::Pt<f64>;

/// A drawn map at the default (`f64`) precision.
pub type GeometricMap = geometry::GeometricMap<f64>;

/// An embedding search at the default (`f64`) precision.
pub type EmbeddingProblem = embed::EmbeddingProblem<f64>;

/// An embedding outcome at the default (`f64`) precision.
pub type EmbeddingResult = embed::EmbeddingResult<f64>;
