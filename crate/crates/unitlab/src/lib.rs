//! Exact computation of the unit group U(FG) of the group algebra of a
//! finite abelian group G over a finite field F = GF(p^n).
//!
//! Three engines cover every case:
//! * [`semisimple`] — gcd(q, |G|) = 1: F-conjugacy orbits give the
//!   Wedderburn components F_{q^d} and U(FG) = prod C_{q^d - 1};
//! * [`modular`] — G a p-group in characteristic p: the kernel filtration of
//!   the p-power map on the augmentation ideal gives the cyclic multiplicities
//!   of V(FG), and U(FG) = V(FG) x C_{q-1};
//! * [`mixed`] — everything else, by splitting off the p-primary part.
//!
//! The [`oracle`] module recovers the same answers extensionally from tiny
//! algebras and is the ground truth for the verification grid in [`verify`].

pub mod algebra;
pub mod arith;
pub mod decomp;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod mixed;
pub mod modular;
pub mod oracle;
pub mod semisimple;
pub mod tables;
pub mod verify;

pub use decomp::{CyclicDecomposition, Factor, FactorEntry};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use group::{AbelianGroup, GroupElement};
pub use mixed::{unit_group, unit_group_pn};
