//! Exact arithmetic, knot-polynomial algebra and certified searches for
//! characterizing and non-characterizing Dehn surgery slopes.
//!
//! Every exact routine is generic over [`num::Int`]; the aliases below fix
//! the scalar to [`BigInt`], which is what the command-line tool uses.

pub mod alexander;
pub mod arith;
pub mod classify;
pub mod error;
pub mod hypbounds;
pub mod invariants;
pub mod knotdb;
pub mod num;
pub mod search;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

pub type Slope = arith::Slope<BigInt>;
pub type NegContFrac = arith::NegContFrac<BigInt>;
pub type Congruence = arith::Congruence<BigInt>;
pub type Rational = num::Rational<BigInt>;
pub type LaurentPoly1 = alexander::LaurentPoly1<BigInt>;
pub type LaurentPoly2 = alexander::LaurentPoly2<BigInt>;
pub type SeifertData = classify::SeifertData<BigInt>;
pub type CableWitness = classify::CableWitness<BigInt>;
pub type VSequence = invariants::VSequence<BigInt>;
pub type LensSpace = invariants::LensSpace<BigInt>;
pub type SearchParams = search::SearchParams<BigInt>;
pub type SlopeCertificate = search::SlopeCertificate<BigInt>;
pub type SearchOutcome = search::SearchOutcome<BigInt>;
pub type KnotRecord = knotdb::KnotRecord<BigInt>;
pub type LinkRecord = knotdb::LinkRecord<BigInt>;
pub type Record = knotdb::Record<BigInt>;
pub type FillingConstants = hypbounds::FillingConstants<f64>;
