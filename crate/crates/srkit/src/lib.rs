//! Sum-rank metric codes over finite fields.

pub mod ambient;
pub mod asymptotics;
pub mod bounds;
pub mod code;
pub mod constructions;
pub mod distributions;
pub mod error;
pub mod exec;
pub mod field;
pub mod matq;

pub use ambient::{MatrixTuple, Profile, SubspaceTuple};
pub use code::LinearCode;
pub use error::{Error, Result};
pub use exec::{Exec, Limits};
pub use field::{Elem, Field, Tower};
pub use matq::{Mat, Subspace};
