//! Correlation-network analysis of asset price panels.
//!
//! The pipeline runs from raw prices to networks:
//!
//! 1. [`market`]: align a price table, take log-returns and normalize them by
//!    their volatility.
//! 2. [`tails`]: Hill estimates of the return-distribution tail exponents.
//! 3. [`spectral`]: cross-correlation matrix, deterministic Jacobi
//!    eigendecomposition, Marchenko-Pastur and Porter-Thomas references and
//!    shuffled surrogates.
//! 4. [`modes`]: split of the matrix into global, group and random parts.
//! 5. [`network`]: minimum spanning tree over Mantegna distances, threshold
//!    networks over the group part, components and hubs.
//! 6. [`report`]: end-to-end orchestration and the CSV/JSON/Pajek outputs.
//!
//! Runnable walkthroughs for each step live in `examples/`.

pub mod error;
pub mod market;
pub mod modes;
pub mod network;
pub mod report;
pub mod spectral;
pub mod stats;
pub mod synthetic;
pub mod tails;

pub use error::{Error, Result};
