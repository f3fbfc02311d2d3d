//! Twisted Alexander invariants of fibred knots from monodromy data,
//! cyclic branched cover invariants from Seifert matrices, and the
//! fibredness obstruction built on them.
//!
//! The algebra is generic over an exact integer type ([`scalar::Coeff`]);
//! the aliases below fix it to arbitrary-precision integers.

pub mod cover;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod freegrp;
pub mod grouphom;
pub mod laurent;
pub mod obstruction;
pub mod random;
pub mod scalar;
pub mod seifert;
pub mod text;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

pub type LaurentPoly = laurent::Laurent<BigInt>;
pub type Canonical = laurent::CanonicalForm<BigInt>;
pub type IntMatrix = exactla::Matrix<BigInt>;
pub type LambdaMatrix = exactla::Matrix<LaurentPoly>;
pub type Smith = exactla::SmithDecomposition<BigInt>;
pub type Invariants = exactla::CokernelInvariants<BigInt>;
pub type Order = exactla::GroupOrder<BigInt>;
pub type Seifert = seifert::SeifertMatrix<BigInt>;
pub type Twisted = cover::TwistedInvariants<BigInt>;
pub type Report = obstruction::ObstructionReport<BigInt>;
