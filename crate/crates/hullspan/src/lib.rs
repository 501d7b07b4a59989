//! Stretch factors of convex-polyhedron skeletons, chains of disks and
//! triangles, and tight geometric-dilation bounds for convex cycles in an
//! annulus.
//!
//! The crate is organized around one numeric kernel ([`geom`]) and seven
//! subject modules:
//!
//! - [`hull`]: simplicial convex hulls and structural assumption reports.
//! - [`spanner`]: skeleton graphs, shortest paths, exact stretch factors.
//! - [`cross_section`]: sections by planes through two vertices and the
//!   origin, with the boundary path on the arc side.
//! - [`disk_chain`]: edge-unfolding of crossed face sequences, circumdisk
//!   chains, and shortest paths in the chain graph.
//! - [`triangle_chain`]: planar chains of triangles, the zig-zag path, and
//!   the shortcut bound.
//! - [`annulus`]: geometric dilation of convex cycles, the extremal cycle,
//!   and annulus containment checks.
//! - [`generators`]: deterministic, seeded instance families for all of the
//!   above.
//!
//! Heavy inner loops (all-pairs stretch, halving-pair minimization) run on
//! rayon when the default `parallel` feature is enabled and fall back to
//! sequential iteration otherwise.

pub mod annulus;
pub mod cross_section;
pub mod disk_chain;
pub mod error;
pub mod generators;
pub mod geom;
pub mod hull;
pub mod spanner;
pub mod triangle_chain;

pub use error::{Error, Result};
pub use geom::{Point2, Point3, Tolerance};
