//! Exact computer algebra for the loop algebra `g⁻ = g ⊗ t⁻¹C[t⁻¹]` of type A.
//!
//! The crate builds the Poisson algebra `S(g⁻)` and the enveloping algebra
//! `U(g⁻)` over exact rationals, the quantum determinant family `Q_{n,k}`,
//! the quadratic Gaudin Hamiltonians on tensor products, and a set of
//! finite-dimensional linear-algebra checks of centralizer statements on
//! graded components.
//!
//! Layout:
//!
//! * [`lie`]: structure constants, trace form, principal sl₂-triple.
//! * [`poly`], [`pbw`]: generic commutative and normal-ordered polynomial
//!   engines over any [`BracketTable`].
//! * [`loop_sym`], [`envelope`]: the loop-algebra specific operations.
//! * [`talalaev`], [`gaudin`], [`centralizer`]: the constructions and checks.
//! * [`linalg`]: exact sparse and dense rational linear algebra.
//! * [`text`], [`sampling`], [`soundness`]: report formats, seeded random
//!   inputs and randomized property checks.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and plain iterators otherwise.

pub mod centralizer;
pub mod envelope;
pub mod error;
pub mod gaudin;
pub mod linalg;
pub mod lie;
pub mod loop_sym;
pub mod par;
pub mod pbw;
pub mod poly;
pub mod rational;
pub mod sampling;
pub mod soundness;
pub mod talalaev;
pub mod text;

pub use error::{Error, Result};
pub use lie::{AlgebraId, BasisLabel, LieAlgebraSpec, LieElement, LieKind, PrincipalTriple};
pub use loop_sym::{LoopGen, LoopPoly};
pub use envelope::EnvPoly;
pub use poly::{BracketTable, Gen, SymPoly};
pub use pbw::PbwPoly;
pub use rational::Rational;
