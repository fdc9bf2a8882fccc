//! Arithmetic of cyclic Kummer extensions `K = k(D^(1/n))` of the rational
//! function field `k = F_q(T)` with `n | q - 1`: local splitting data, power
//! residue and Hilbert symbols, reciprocity, the extended genus field and
//! full-decomposition criteria, together with brute-force oracles that
//! check all of it.

pub mod decomposition;
pub mod finite_field;
pub mod genus;
pub mod kummer;
pub mod parse;
pub mod polyring;
pub mod symbols;
pub mod verify;

pub use finite_field::{FieldElement, FieldError, FqField, RootOfUnity};
pub use parse::ParseError;
pub use polyring::{Degree, Factorization, MonicIrreducible, Poly, PolyError, PolyRing};
pub use kummer::{
    DatumRecord, ExtensionInvariants, KummerDatum, KummerError, Place, RamRecord, SplittingData,
};
pub use symbols::{SymbolError, SymbolValue};
pub use decomposition::{DecompositionError, GenusSplitReport, PrimeOfK};
pub use genus::{GenusDegrees, GenusField};
pub use verify::{OracleError, SweepFailure, SweepReport};
