//! Trivariate semiquadratic functions over GF(2^m)^3: construction, root
//! conditions via twisted polynomials, exhaustive differential and
//! projective verification, and S-box export.

pub mod cli;
pub mod family;
pub mod gf;
pub mod search;
pub mod skewpoly;
pub mod vectfun;

pub use family::{FamilyError, FamilyParams, ProjPoint, Vec3};
pub use gf::{ExtCtx, ExtFelt, Felt, FieldCtx, GfError};
pub use skewpoly::{SkewError, SkewField, SkewPoly};
pub use vectfun::{DdtReport, ImageClass, LinMap3, Lut, WalshReport};
