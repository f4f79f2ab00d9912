//! The uniform group-operad interface and the executable law suites.

pub mod basepoint;
pub mod family;
pub mod laws;
pub mod quotient;
pub mod report;
pub mod simplicial;

pub use family::{Element, Family, OperadError};
pub use laws::{axiom_suite, derived_identity_suite, Bounds};
pub use report::{LawRecord, Report, Status};
pub use simplicial::{crossed_simplicial_suite, DeltaElem, DeltaGroup};

