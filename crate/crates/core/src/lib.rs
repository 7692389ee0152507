//! Explicit bases for the cohomology of Kummer and Artin-Schreier covers of
//! the projective line over finite fields, together with an exact verifier
//! for the identities those bases satisfy.

pub mod cohomology;
pub mod curve;
pub mod error;
pub mod funcfield;
pub mod gf;
pub mod polyrat;
pub mod report;
pub mod spec;
pub mod sweep;
pub mod verify;

pub use cohomology::{BasisIndex, BasisOptions, DeRhamClass, DeRhamTriple, KummerSplit, SignConvention};
pub use curve::{BranchPoint, Cover, Curve, Family, MuRange, Violation, ViolationCode};
pub use error::{Error, Result};
pub use funcfield::{pairing, Bound, FFDiff, FFElem, PlaceClass};
pub use gf::{Field, FieldElement, Fq};
pub use polyrat::{Poly, RatFn};
pub use verify::{full_report, CheckResult, CheckStatus, Report};
