//! Semi-infinite Lakshmibai–Seshadri paths and the combinatorics around them.
//!
//! The crate provides exact arithmetic for
//!
//! * finite root data and Weyl groups ([`rootdata`]);
//! * the affine Weyl group, its semi-infinite Bruhat order, parabolic
//!   projections and Deodhar lifts ([`afweyl`]);
//! * semi-infinite LS paths with their crystal structure ([`silspath`]);
//! * graded characters of level-zero Demazure submodules and Demazure
//!   operators ([`gchar`]);
//! * standard monomial theory for tensor products of paths ([`smt`]);
//! * Pieri–Chevalley expansions in semi-infinite flag manifolds ([`pieri`]);
//! * the polynomial representation of the nil-DAHA ([`nildaha`]).

pub mod afweyl;
pub mod error;
pub mod gchar;
pub mod nildaha;
pub mod oracle;
pub mod pieri;
pub mod rootdata;
pub mod selftest;
pub mod silspath;
pub mod smt;

pub use afweyl::{AffineRoot, AffineWeylElement, Budget};
pub use error::{Error, Result};
pub use rootdata::{CartanDatum, Coweight, FiniteWeylElement, ParabolicSet, Root, Series, Weight};
pub use smt::{DefiningChain, TensorPair, TensorRule};
pub use gchar::{GradedCharacter, GroupAlgebraElement};
pub use nildaha::{ClassTag, LaurentCharacter, NilDahaRep, TranslationKClass};
pub use pieri::KClassCombo;
pub use silspath::{AffineWeight, ParTuple, QLSPath, Rational, SiLSPath};
