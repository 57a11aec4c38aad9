pub mod acceptance;
pub mod classify;
pub mod diagrams;
pub mod error;
pub mod matchcat;
pub mod oracle;
pub mod perm;
pub mod recipe;
pub mod scalar;
pub mod signature;
pub mod ybe;

pub use error::{Error, Result};

pub use classify::{classify, EdgeLabelH, EdgeLabelI, TriangleType};
pub use diagrams::{Configuration, County, Nation, Part};
pub use matchcat::{EdgeBlock, MatchMatrix2};
pub use oracle::{FibreType, Fp};
pub use recipe::{rec, Germ, ParamPoint};
pub use scalar::Scalar;
pub use signature::Signature;
pub use ybe::{Method, ResidualReport, Witness};
