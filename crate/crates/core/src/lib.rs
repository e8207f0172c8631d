//! Exact homological algebra for bound quiver algebras over GF(p).

pub mod algebra;
pub mod dsl;
pub mod fixtures;
pub mod homological;
pub mod igusa_todorov;
pub mod krull_schmidt;
pub mod linalg;
pub mod rep;
pub mod session;
pub mod verdict;
