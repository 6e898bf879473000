//! Bottleneck invariants of finite multigraphs.
//!
//! The crate computes edge and point bottleneck numbers together with the
//! dipole ladders that witness them, recognizes trees, cacti and cut-cacti
//! through independent conditions, and works with `M`-fat ladders and
//! `M`-fat bottlenecking on finite graphs. Every decision comes with a
//! certificate (ladder, cut, or center set) that can be re-validated.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line driver live in the `bottleneck-lab` crate.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod bottleneck;
pub mod classify;
pub mod coarse;
mod error;
pub mod flow;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod small;
pub mod subsets;

pub use bottleneck::{
    edge_bottleneck_exact, find_dipole_ladder, find_theta_subdivision, normalize_four_ladder,
    point_bottleneck_exact, BottleneckReport, Budget, Ladder, Method, Search, Theta,
};
pub use classify::{classify_graph, cycle_intersection_oracle, ClassLabel, ClassReport, IntersectionKind};
pub use coarse::{
    asymptotic_sweep, cmt_construct_ladder, decide_fat_bottleneck, find_fat_ladder,
    verify_fat_ladder, CmtError, FatDecision, FatWitness, SweepReport,
};
pub use error::{Error, Result};
pub use flow::{
    connectivity_profile, max_edge_disjoint, max_vertex_disjoint, CutCertificate, CutKind,
    DisjointMode, PathSystem,
};
pub use gen::{generate, Family, FamilySpec};
pub use graph::{Multigraph, PathWitness, Reduction, ReductionOp, VertexSet};
