//! Independent ground truths: divided symmetrization, the Weyl-sum volume
//! expansion, linear algebra in the quotient ring, and the per-type multiplication identities.

pub mod appendix;
pub mod divsym;
pub mod poly;
pub mod quotient;
pub mod weylsum;

pub use appendix::{verify_appendix, AppendixReport, IdentityCheck};
pub use divsym::{
    divided_symmetrization, divided_symmetrization_at, generic_point, mixed_eulerian_divsym,
    permutohedron_volume, volume_from_eulerian,
};
pub use poly::{Evaluate, LinearFormProduct, RationalPoly, ScaledPoly};
pub use quotient::{
    dimension, mixed_eulerian_quotient, quotient_reduce, quotient_space, QuotientSpace,
};
pub use weylsum::{mixed_eulerian_weylsum, weylsum_at};
