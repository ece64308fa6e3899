//! Computational finite group theory at desk scale: multiplication-table
//! and permutation groups, exact character tables, automorphism and
//! complement searches, coset enumeration, and the census machinery that
//! classifies the groups attaining `|G| = e^4 - e^3` with a character of
//! degree `e^2 - e`.

pub mod arith;
pub mod census;
pub mod fp;
pub mod aut;
pub mod chartab;
pub mod construct;
pub mod group;
