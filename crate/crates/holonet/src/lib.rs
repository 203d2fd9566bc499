//! File formats, catalog loading and report serialization for
//! [`holonet_core`], plus the pieces the `holonet` binary is built from.

pub mod catalog_io;
pub mod emit;
pub mod theory_spec;

pub use catalog_io::{load_catalog, load_verified_catalog, CATALOG_DIR_ENV, CATALOG_NAMES};
pub use emit::{emit_report, emit_reports, Format};

/// Errors surfaced by the std layer.
#[derive(Debug, thiserror::Error)]
pub enum HolonetError {
    #[error(transparent)]
    Core(#[from] holonet_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("catalog {name}: {source}")]
    Json {
        name: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("catalog {name}: malformed field {field}: {value:?}")]
    Field { name: String, field: &'static str, value: String },
    #[error("catalog {name} fails its own invariants: {failures}")]
    InvalidCatalog { name: String, failures: String },
    #[error("unknown catalog {0:?}; bundled catalogs are su10_2, su9_3, su8_4")]
    UnknownCatalog(String),
}

pub type Result<T> = std::result::Result<T, HolonetError>;
