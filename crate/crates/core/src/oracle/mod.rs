//! Small-scope stand-ins for the metatheory: exhaustive enumeration of
//! annotated terms, the canonical-forms check, and a property suite.

mod canonical;
mod enumerate;
mod suite;

pub use canonical::canonical_shape;
pub use enumerate::{annotation_types, enumerate, nat_motives, open_context, vec_motives, CapExceeded, MAX_ENUM_SIZE};
pub use suite::{run_property_suite, PropertyReport, SuiteConfig, SuiteReport};
