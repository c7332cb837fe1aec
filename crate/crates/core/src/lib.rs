//! Skew group algebras of bound quiver algebras under finite abelian group
//! actions, the pushdown functor between their module categories, and the
//! Auslander-Reiten machinery needed to compare both sides.
//!
//! Everything is computed exactly over a prime field F_p.

pub mod algebra;
pub mod ar;
pub mod cli;
pub mod dot;
pub mod field;
pub mod format;
pub mod gentle;
pub mod group;
pub mod pushdown;
pub mod quiver;
pub mod rep;
pub mod skew;
