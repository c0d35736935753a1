//! Instance generation, audits and example reproductions on top of
//! `embrace-core`.

pub mod audit;
pub mod exhaustive;
pub mod generate;
pub mod instance;
pub mod repro;

pub use audit::{audit_all, audit_instance, AuditOptions, AuditRecord};
pub use generate::{gen_affine, gen_graphic, GenerationError};
pub use instance::{Instance, InstanceKind};
