//! Exact verification workbench for power operations on character rings of
//! finite groups and the algebra around them: symmetric functions, Schur
//! modules, integral lattices with group action, quadratic differents and
//! Bott multipliers in cyclic quotient rings.
//!
//! Everything is computed with exact integers, rationals and cyclotomic
//! numbers. Each `verify_*` function returns a [`report::CheckOutcome`]
//! carrying a witness that can be serialized to JSON.

#![allow(clippy::needless_range_loop)]

pub mod exact;
pub mod partitions;
pub mod report;
pub mod symfunc;
pub mod groups;
pub mod characters;
pub mod schur_modules;
pub mod gamma_lattices;
pub mod quad_fields;
pub mod bott_ring;
pub mod suite;
