//! Exact arithmetic for the semigroup algebra of set compositions under the
//! Tits product, and for the descent algebra of the symmetric group sitting
//! inside it as the invariant subalgebra.
//!
//! The crate is organised around the objects it computes:
//!
//! * [`setcomp`] — set compositions and set partitions: enumeration, the
//!   Tits product, restriction, refinement relations, covering pairs.
//! * [`exactlinalg`] — exact linear algebra over the rationals and over
//!   prime fields: reduced row echelon form, ranks, kernels, subspace
//!   intersection and equality.
//! * [`algebra`] — linear combinations of set compositions with the
//!   intersection product, the concatenation product, the coproduct, the
//!   Lie bracket, the right-normed Dynkin mapping and the symmetric-group
//!   action.
//! * [`idempotents`] — the generic primitive idempotent for each support
//!   set, the idempotent basis it generates, triangular basis changes, and
//!   the fast multiplication rule for that basis.
//! * [`modstruct`] — principal indecomposable modules, the Jacobson
//!   radical, descending Loewy series, the Cartan matrix, the Ext-quiver
//!   and a PBW-style basis adapted to the radical filtration.
//! * [`solomon`] — orbit sums, symmetrisation, the coset-representative
//!   realisation inside the group algebra, Lie idempotents, block
//!   symmetrisers, Cartan invariants of the invariant subalgebra and the
//!   compatibility of the two radical filtrations.
//! * [`verify`] — the verification suites run by `titslab verify` and by
//!   the acceptance test.
//!
//! All arithmetic is exact: arbitrary-precision rationals or residues
//! modulo a prime. No floating point is used anywhere.

pub mod algebra;
pub mod cache;
pub mod error;
pub mod exactlinalg;
pub mod idempotents;
pub mod modstruct;
pub mod setcomp;
pub mod solomon;
pub mod verify;

pub use error::{Error, Result};
