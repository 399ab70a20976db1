//! Layer-rainbow latin cubes and their embeddings.
//!
//! An order-`n` layer-rainbow latin cube is an `n × n × n` array over `n²`
//! symbols in which every layer (fix one coordinate) contains each symbol
//! exactly once. [`embed`](embedder::embed) places any such cube of order `m`
//! in the corner of one of order `n`, which is possible exactly when
//! `n >= 2m`.
//!
//! The construction works on the amalgam of the extension region: the
//! [`amalgamation`] module colors a six-vertex multigraph, and
//! [`detachment`] splits its vertices back into concrete indices.

pub mod amalgamation;
pub mod cube;
pub mod detachment;
pub mod embedder;
mod error;
pub mod flow;
pub mod format;
pub mod oracle;

pub use cube::{
    base_cube, contains_as_corner, verify, Axis, CubeArray, LayerRainbowCube, SymbolId,
    VerifyReport,
};

pub use embedder::{embed, EmbedReport};
pub use error::{Error, NecessityWitness, Result};
