//! Exact normal-surface computations on triangulated 3-manifolds.
//!
//! The crate covers triangulation parsing and skeleta, normal coordinates and their
//! induced surfaces, vertex and fundamental enumeration, crushing along a closed normal
//! surface with the induced correspondence of closed surfaces, efficiency checks, and
//! boundary-slope censuses. All coordinates are arbitrary-precision integers.

#![allow(clippy::needless_range_loop)]

pub mod commands;
pub mod crush;
pub mod efficiency;
pub mod enumerate;
pub mod fixtures;
pub mod isomorphism;
pub mod linsolve;
pub mod normal;
pub mod perm;
pub mod simplex;
pub mod skeleton;
pub mod slopes;
pub mod triangulation;
pub mod union_find;

pub use normal::NormalSurface;
pub use perm::Perm4;
pub use skeleton::Skeleton;
pub use triangulation::Triangulation;

/// Tag written into surface files so that readers can check the coordinate order.
pub const COORD_VERSION: &str = "ncoord-v1";
