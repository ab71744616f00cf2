//! L²-Dolbeault cohomology of compact singular complex curves.
//!
//! This crate computes the dimensions of the L²-Dolbeault cohomology groups
//! of a compact singular complex curve for both closed extensions of the
//! Cauchy-Riemann operator (the weak/distributional one and the strong/
//! graph-closure one), starting from exact Newton-Puiseux analysis of the
//! singular points.  It also verifies the local weighted-disk theory that
//! explains where the singular correction terms come from: monomial
//! L²-membership thresholds, solvability of the d-bar equation via the Cauchy
//! transform, and the decay of the logarithmic cut-off sequence.
//!
//! The main entry points, one per subsystem:
//!
//! * [`puiseux`] — exact Newton-Puiseux expansion of plane-curve branches and
//!   the per-point singularity invariants (multiplicity, modified
//!   multiplicity, delta invariant, conductor exponent).
//! * [`curve`] — the global curve model: normalization components with
//!   genera, singular points with branch data, line bundles by degree;
//!   ingestion from plane-curve equations.
//! * [`cohomology`] — the full table of L² dimensions for both extensions,
//!   the Riemann-Roch and Serre-duality identity checks, vanishing and
//!   ampleness bounds, and the local monomial-filtration table.
//! * [`disk`] — numerical verification on the weighted unit disk: weighted
//!   quadrature for membership thresholds, the Cauchy-transform d-bar solver
//!   on grids, and the cut-off norm computation.
//! * [`run`] — the reproducible-run layer behind the `dolbeault` binary.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod cohomology;
pub mod corpus;
pub mod curve;
pub mod disk;
pub mod exact;
pub mod plane;
pub mod puiseux;
pub mod report;
pub mod run;
pub mod verify;
