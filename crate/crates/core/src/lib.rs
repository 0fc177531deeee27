//! Exact decision procedures for finite monoids acting on finite sets.
//!
//! Both the category of plain left acts and the category of pointed left
//! acts (over a monoid with zero, morphisms preserving the base point) are
//! supported through one [`Act`] type. On top of validated monoids and acts
//! the crate provides
//!
//! * morphism enumeration ([`hom`]),
//! * coproducts, quotients by congruences, Rees factors and pullbacks
//!   ([`constructions`]),
//! * the unique decomposition into indecomposable subacts
//!   ([`decomposition`]),
//! * decisions for cyclic, hollow, connected, autoconnected and projective
//!   acts, each paired with an independent brute-force oracle
//!   ([`classify`]),
//! * generation of all acts of a given size up to isomorphism
//!   ([`enumerate`]).
//!
//! Sweeps over enumerated families run on rayon when the default
//! `parallel` feature is on; results are identical with or without it.

pub mod act;
pub mod bounds;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod hom;
pub mod io;
pub mod monoid;
pub mod par;
pub mod union_find;

pub use act::{Act, SubAct};
pub use bounds::Bounds;
pub use classify::{classify, ClassificationReport};
pub use constructions::{coproduct, Congruence, Coproduct};
pub use decomposition::{decompose, is_indecomposable, Decomposition};
pub use error::{Error, Result};
pub use hom::{are_isomorphic, enumerate_homs, ActHom};
pub use monoid::{find_zero, Monoid, MonoidSpec};
