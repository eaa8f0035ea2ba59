//! Fundamental groups of graphs of groups with `Z²` edge groups.

pub mod arith;
pub mod backends;
pub mod cert;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod gog;
pub mod graph;
pub mod path;
pub mod presets;
pub mod quadint;
pub mod query;

pub use backends::{Backend, Kind, VertexElem, VertexGroup};
pub use error::{Error, Result};
pub use gog::{validate_jsj, EdgeMap, GogBuilder, GraphOfGroups};
pub use graph::{validate_graph, EdgeId, Graph, ValidationReport, VertexId};
pub use path::{PathWord, ReductionStep, ReductionTrace};
pub use cert::{verify, CertificateDoc, Claim};
pub use engine::{Budget, CentralizerDesc, ClassifyRoute, CommuteClass, DivBound, DivisibilityResult, MalnormalCertificate};
pub use query::{run_query, QueryError};
