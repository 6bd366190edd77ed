//! Exact diagram calculus for valenced Temperley-Lieb algebras.

pub mod algebra;
pub mod combinat;
pub mod diagrams;
pub mod error;
pub mod gram;
pub mod jones_wenzl;
pub mod scalars;
