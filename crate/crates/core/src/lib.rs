//! Jet-level toolkit for D4+ front singularities.
//!
//! The crate works with truncated bivariate power series and builds on them the
//! reduction of a map germ to its normal form
//! `(u² − v², a(u² + v²) + b(u, v), c(u, v))`, the frame and curvature data of
//! the resulting front, the invariants of its two cuspidal edges, symmetry
//! detection, a sector-wise Gauss-Bonnet check and the classification of the
//! distance-squared function over the focal set.
//!
//! Everything here is `no_std` and only needs an allocator.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod edgeinv;
pub mod error;
pub mod focal;
pub mod frame;
pub mod gaussbonnet;
pub mod germ;
pub mod linalg;
pub mod normalform;
pub mod quadrature;
pub mod series;
pub mod symmetry;

pub use error::{Error, Result};
pub use germ::{MapGerm, NormalFormGerm, SplitSeries, TransformRecord};
pub use series::{TruncatedSeries1, TruncatedSeries2, Var};
