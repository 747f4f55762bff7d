pub mod algebra;
pub mod catalog;
pub mod classify3;
pub mod degeneration;
pub mod error;
pub mod exact;
pub mod format;
pub mod harness;
pub mod invariants;
pub mod linalg;
pub mod replay;

pub use error::{Error, Result};
pub use exact::{Field, FieldTag, Polynomial, RatFunc, Rational};
pub use linalg::{Matrix, Subspace};

/// Matrix over Q.
pub type QMatrix = Matrix<Rational>;
/// Matrix over Q(t).
pub type QtMatrix = Matrix<RatFunc>;

pub use algebra::{IdentityKind, IdentityVerdict, SeriesKind, Side, StructureTensor};
pub use classify3::TwoGenClass;

/// Algebra with rational structure constants.
pub type QTensor = StructureTensor<Rational>;
/// Algebra with structure constants in Q(t), e.g. along a degeneration family.
pub type QtTensor = StructureTensor<RatFunc>;
