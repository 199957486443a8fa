//! Exact-arithmetic computations for connected commutative differential
//! graded algebras: flat Lie-algebra valued connections, holonomy Lie
//! algebra presentations, twisted (Aomoto) cohomology, and resonance
//! membership, together with tensor-product and wedge-sum constructions
//! and a deterministic verification harness for the identities relating
//! them.
//!
//! All arithmetic is over the rationals and exact; membership verdicts at
//! rational points are mathematical facts, not approximations.

pub mod cdga;
pub mod connection;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod resonance;
pub mod verify;

pub use cdga::{Cdga, CochainComplex, MultEntry, ValidationReport};
pub use constructions::{tensor_product, wedge_sum, ProductWitness, TrichotomyFamily, WedgeWitness};
pub use connection::{holonomy_presentation, Connection, HolonomyPresentation, LieMapCandidate};

pub use error::{Error, Result};
pub use lie::{builtin, CatalogEntry, LieAlgebra, Representation};
pub use resonance::{covariant_derivative, in_resonance, twisted_betti, AomotoComplex, ResonanceQuery};
pub use verify::{SamplePlan, TheoremReport};
pub use linalg::{format_rat, image_dim_in_quotient, parse_rat, rat, rint, Mat, Rat};


