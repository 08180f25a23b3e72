//! Homeomorphism actions on pair classes and the groupoid they generate.

mod groupoid;
mod homeo;
mod loops;
mod nerve;
mod words;

pub use groupoid::{Arrow, ArrowSet, AutDescriptor, AutGenerator, Components, GroupoidModel, P1Report, DEFAULT_DEPTH};
pub use homeo::{homeo_act, HomeoData, ORDER_SEARCH_LIMIT};
pub use loops::{doubled_descriptor, loop_count_group, triple_to_p0p1, DoubledRecord, LoopTag};
pub use nerve::{
    nerve_export, oracle_check, pi1_from_nerve, Nerve, NerveEdge, NerveTriangle, OracleCheck, Presentation,
};
pub use words::{FreeProduct, Word, WordDisplay};
