//! Exact-arithmetic workbench for finite unit-distance graphs in the plane.
//!
//! Coordinates live in multi-quadratic fields ([`QNum`]), so whether two
//! points are at unit distance is decided by exact equality. On top of that
//! sit graph construction and analysis ([`UdGraph`], degeneracy, cliques),
//! an exact coloring solver, the classical plane colorings, and a claim
//! evaluator that ties them together.

mod bitset;

pub mod catalog;
pub mod claims;
pub mod exactnum;
pub mod geometry;
pub mod graph;
pub mod plane;
pub mod solver;

pub use bitset::BitSet;
pub use catalog::CatalogError;
pub use claims::{ClaimVerdict, ClaimsConfig, Report, Verdict};
pub use exactnum::{parse_rat, rat, rat_int, sqrt_rational, ExactError, QNum, Rat};
pub use geometry::{
    is_unit, pyth_unit_vector, rotate, sq_dist, unit_circle_pair, EPoint, GeometryError,
    UnitVector,
};
pub use graph::{degeneracy, max_clique, DegeneracyReport, GraphError, UdGraph};
pub use plane::{hex7_color, rational2_color, HexScheme, PlaneError, RatPoint};
pub use solver::{
    chromatic_number, greedy_degeneracy_coloring, is_k_colorable, verify_coloring,
    ColorabilityAnswer, Coloring, SolverError,
};
