//! Finite categories, functors, equivalences and presentations.

pub mod builtins;
mod category;
mod certificate;
mod equivalence;
mod functor;
pub mod presentation;

pub use category::{build_category, CategoryReport, FinCat, Labeled, Mor, MorphismData, Obj, Violation};
pub use equivalence::{check_equivalence, max_subgroupoid, EquivalenceVerdict};
pub use functor::{Functor, FunctorViolation, NatTrans};
pub use certificate::{certify_equivalence_via_chains, CertificateVerdict, ChainLink};
