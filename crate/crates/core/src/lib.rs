//! Workbench for finite-dimensional algebras presented by quiver and
//! relations: exact linear algebra over prime fields, stable module
//! category structure (syzygies, Nakayama functor, AR translate, stable
//! Hom), Auslander-Reiten component knitting with tube detection, and
//! machinery for certifying when a stable semibrick fails to be a
//! simple-minded system.

pub mod algebra;
pub mod arknit;
pub mod decomp;
pub mod dsl;
pub mod endo;
pub mod error;
pub mod families;
pub mod field;
pub mod hom;
pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod rewrite;
pub mod sms;
pub mod stable;
pub mod strings;
pub mod tube;
pub mod workbench;

pub use algebra::{Algebra, AlgebraRef, Composition, RelationSet, SelfInjectivityReport};
pub use error::{Error, Result};
pub use field::Fp;
pub use rep::{ModMap, Rep};
pub use workbench::Workbench;
