//! File formats: PACE graphs and decompositions, family JSON, DOT.

pub mod dot;
pub mod json;
pub mod pace;
