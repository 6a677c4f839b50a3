//! Constructive separation of matrix-group elements in finite quotients.
//!
//! Given a finitely generated matrix group over a localized polynomial ring
//! and a word that is not the identity, the `separate` pipeline produces a
//! certificate exhibiting a finite quotient (matrices over a prime field or
//! a small extension field) in which the element, or a derived-series
//! witness for it, survives — together with the size bounds that make the
//! quotient order polynomial in the word length. A brute-force depth oracle
//! over a catalog of small finite groups provides ground truth for
//! cross-validation, and a catalog of finite groups of Lie type supplies
//! order formulas and the representation constructions used by the bound
//! diagnostics.

pub mod error;
pub mod finite;
pub mod lietype;
pub mod matgroup;
pub mod rfgrowth;
pub mod ring;
pub mod separate;
pub mod specialize;
pub mod witness;
pub mod word;

pub use error::{EnumError, GroupError, RingError, SeparateError, SpecializeError, WitnessError};
pub use matgroup::{GeneratorConstants, GroupSpec, Matrix};
pub use ring::{Char, Coefficient, DenominatorSet, LocalizedElem, MultiPoly, UniPoly};
pub use separate::{SeparationCertificate, SeparationMode};
pub use word::Word;
