//! Persistence and command-line access for the class engine: `oodn-class/1`
//! class files, descriptors for runtime materialization, a directory
//! registry, and the `oodn` tool.

pub mod cli;
pub mod descriptor;
pub mod error;
pub mod format;
pub mod registry;

pub use cli::run_cli;
pub use descriptor::{emit_descriptor, load_descriptor, Descriptor};
pub use error::KbError;
pub use format::{load, save, FORMAT_VERSION};
pub use registry::Registry;
