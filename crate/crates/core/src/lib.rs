//! Orbits of solids of PG(5, q), q even, under the lifted action of PGL(3, q),
//! via pencils of conics in PG(2, q).

pub mod classifier;
pub mod field;
pub mod group;
pub mod mat3;
pub mod pencil;
pub mod projgeom;
pub mod records;
pub mod sweep;
pub mod verify;
pub mod veronese;

use thiserror::Error;

pub use classifier::{classify, Classification, ClassificationInconsistency, OrbitLabel};
pub use field::{Fe, Field, FieldError};
pub use mat3::Mat3;
pub use pencil::PencilSolid;
pub use projgeom::{GeomError, PlanePoint, Point, Subspace};
pub use veronese::{Conic, ConicKind, PointType};

/// Errors from parsing the textual formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected {expected} hex digits, found {found}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Veronese(#[from] veronese::VeroneseError),
    #[error("malformed solid {0:?}: expected q=<q>:<24 hex digits>")]
    SolidSyntax(String),
    #[error("{0:?} does not span a solid (rank {1})")]
    NotASolid(String, usize),
    #[error("unrecognised token {0:?}")]
    Token(String),
}
