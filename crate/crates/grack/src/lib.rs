//! Finite groupoid racks and coloring invariants of spatial trivalent
//! graph diagrams.
//!
//! A groupoid rack is the morphism set of a finite groupoid equipped with a
//! total self-distributive operation compatible with composition. Fixing
//! one, the number of colorings of a Y-oriented diagram of a spatial
//! trivalent graph is invariant under the Y-oriented Reidemeister moves and
//! under reversing circle components. This crate provides:
//!
//! - explicit-table representations of finite racks, groups, groupoids, and
//!   groupoid racks, with exhaustive axiom checkers ([`rack`], [`group`],
//!   [`groupoid`], [`groupoid_rack`]);
//! - the standard constructions: multiple group racks, heap racks, the
//!   rack-square construction, and augmented-rack groupoid racks
//!   ([`constructions`]);
//! - the universal reconstruction of a groupoid rack from a symmetric rack
//!   with a partial product ([`universality`]);
//! - a combinatorial diagram model with parser and serializer ([`diagram`]);
//! - a propagating backtracking counter for colorings, cross-checked by a
//!   brute-force oracle ([`coloring`]);
//! - Reidemeister-move rewriting and a bundled corpus of before/after move
//!   pairs for invariance testing ([`moves`], [`corpus`]);
//! - text formats for all of the above ([`textfmt`]) and a `grack` command
//!   line tool ([`cli`]).
//!
//! Quick start: count the colorings of the theta graph by the heap rack of
//! `Z/3` (one free composable pair of morphisms, the third arc forced):
//!
//! ```
//! use grack::coloring::count_colorings;
//! use grack::constructions::heap_rack;
//! use grack::diagram::theta;
//! use grack::FiniteGroup;
//!
//! let rack = heap_rack(&FiniteGroup::cyclic(3));
//! assert_eq!(count_colorings(&theta(), &rack), 27u32.into());
//! ```
//!
//! The `examples/` directory contains one runnable example per capability;
//! start with `cargo run --example heap_rack`.

// index loops over parallel tables read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod groupoid_rack;
pub mod moves;
pub mod mutate;
pub mod rack;
pub mod report;
pub mod textfmt;
pub mod universality;

pub use error::{AlgebraError, ColoringError, ConstructionError, MoveError};
pub use group::{check_group, FiniteGroup};
pub use groupoid::{check_groupoid, FiniteGroupoid};
pub use groupoid_rack::{canonical_involution, check_groupoid_rack, GroupoidRack};
pub use rack::{check_rack, check_symmetric_rack, rack_pow, FiniteRack, SymmetricRackData};
pub use report::{ValidationReport, Violation};
