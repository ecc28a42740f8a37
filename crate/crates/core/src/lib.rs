//! Recognition of fold, cusp, lips, beaks and swallowtail singularities of
//! plane-to-plane maps, and the first singularity of characteristic maps of
//! a two-dimensional scalar conservation law.

pub mod catalog;
pub mod cli;
pub mod conslaw;
pub mod error;
pub mod export;
pub mod germ;
pub mod jet;
pub mod locus;
pub mod map;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod tolerance;

pub use error::{Error, Result};
pub use germ::{classify, ClassificationReport, PlaneMapGerm, SingularityClass};
pub use jet::{Jet1, Jet2};
pub use map::{PlaneMap, PolyMap};
pub use poly::PolySpec;
pub use tolerance::ToleranceConfig;
