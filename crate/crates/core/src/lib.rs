pub mod bigjson;
pub mod catalog;
pub mod error;
pub mod format;
pub mod group;
pub mod isotropy;
pub mod linalg;
pub mod obstruction;
pub mod orbit;
pub mod reflection;

pub use error::{Error, Result};

/// Version of the serialized report layouts.
pub const SCHEMA_VERSION: u32 = 1;
