//! Computable kernel for finitely generated commutative monoids, corner
//! local models, transverse fibre products and b-cotangent fibres.

pub mod cone;
pub mod doc;
pub mod faces;
pub mod gcorners;
pub mod bcotangent;
pub mod monoid;
pub mod transverse;
pub mod word;
pub mod lattice;
pub mod ratlin;
pub mod report;
