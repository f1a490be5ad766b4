//! Finite, fully inspectable categorical structures with bounded decision
//! procedures.
//!
//! Everything in this crate is finite and deterministic: categories are given
//! by explicit presentations (objects, arrow generators, path relations),
//! diagrams take values in named finite sets, and every search is either
//! exhaustive or explicitly depth-bounded. Procedures that cannot decide a
//! question within their bound say so (`Inconclusive`, `NotProven`) instead
//! of guessing.
//!
//! Module map:
//!
//! * [`category`]: presentations, composable paths, bounded word rewriting,
//!   commutative normal forms, and composition-table axiom checks.
//! * [`colimit`]: set-valued diagrams, cocones, the glued-quotient colimit,
//!   and exhaustive verification of its universal property.
//! * [`poset`]: finite partial orders, least upper bounds, and the reading of
//!   a join as a two-object colimit.
//! * [`double`]: squares, thin squares and connections, grid composition in
//!   two directions, bounded grid equality, and commutative cubes.
//! * [`relay`]: seeded split/route/reassemble of messages over a relay
//!   network, exercising order-independence of the reassembly.

pub mod category;
pub mod colimit;
pub mod double;
pub mod poset;
pub mod relay;
