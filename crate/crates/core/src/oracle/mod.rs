//! Brute-force references, instance generators and whole-pipeline checks.
//!
//! Nothing under [`reference`] calls into the separation, decomposition or
//! builder modules to decide an answer: the references work on plain
//! `BTreeSet`s and edge lists so they can be compared against the library.

pub mod acceptance;
pub mod generate;
pub mod reference;
pub mod report;

pub use generate::{gen_graph, gen_laminar_family, FamilyStrategy, GraphModel};
pub use reference::{enum_mseps_bruteforce, noncrossing_2sided_reference};
pub use report::{check_all, TheoremReport, Verdict};
