//! Building blocks for position-space Feynman amplitudes on graph
//! configuration spaces.
//!
//! The crate splits into a combinatorial layer and an analytic layer:
//!
//! * [`graph`] — multigraphs, induced subgraphs, quotients, acyclic
//!   orientations and their radial sectors, chromatic polynomial,
//!   graph Laplacian;
//! * [`wonderful`] — building sets of biconnected subgraphs, nests,
//!   diagonal dimensions, Grothendieck-class (Tate polynomial) of the
//!   wonderful compactification, singularity orders, convergence checks;
//! * [`special`] — Gegenbauer polynomials, sphere volumes, spherical
//!   harmonic dimensions, Bernoulli numbers, zeta values;
//! * [`angular`] — closed-form angular integrals: polygons, `l = 0`
//!   Gaunt coefficients, star-gluing coupling coefficients in `D = 4`;
//! * [`polylog`] — restricted multiple polylogarithms, Mordell–Tornheim
//!   and Apostol–Vu series, Euler–Maclaurin machinery, zeta reductions
//!   of polylog moments;
//! * [`amplitudes`] — assembly of angular and radial data into polygon,
//!   star, and 3-banana amplitude values;
//! * [`oracle`] — independent brute-force verification engines
//!   (sphere Monte Carlo, exact weighted quadrature, restricted sums,
//!   direct sector integration);
//! * [`acceptance`] — the end-to-end verification suite.
//!
//! Every series or quadrature evaluator returns a [`series::SeriesValue`]
//! carrying an explicit tail bound; no bare floats cross module
//! boundaries.

pub mod acceptance;
pub mod amplitudes;
pub mod angular;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod polylog;
pub mod series;
pub mod special;
pub mod wonderful;

pub use error::Error;
pub use series::SeriesValue;

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
