//! Graph families, exact invariants, and certified Shannon-capacity bounds.
//!
//! The crate is organized around a small immutable [`graph::Graph`] type with
//! bitset adjacency rows, a family of structured constructors
//! ([`families`]), an expression language for polynomials in graphs
//! ([`expr`], where `+` is disjoint union and `*` is strong product), exact
//! and fractional invariants ([`invariants`], [`fractional`]), the Lovász
//! function ([`theta`]), and a capacity engine ([`capacity`]) that combines
//! all of the above into certified bounds, exact values, and unattainability
//! certificates.

pub mod bitset;
pub mod capacity;
pub mod dd;
pub mod error;
pub mod exact;
pub mod expr;
pub mod families;
pub mod fractional;
pub mod gf;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod theta;

pub use error::{Error, Result};
pub use exact::ExactValue;
pub use expr::GraphExpr;
pub use families::GraphAtom;
pub use graph::{Caps, Graph};
