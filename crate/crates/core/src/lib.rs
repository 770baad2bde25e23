//! Locally indistinguishable orthogonal product states.
//!
//! The crate generates two families of orthogonal product states in
//! multipartite qudit systems and certifies that every orthogonality-preserving
//! local measurement on every party is trivial, which rules out any first
//! LOCC step and hence perfect LOCC discrimination.
//!
//! Two engines produce the certification:
//!
//! * [`lemma`] derives zero and diagonal facts pair by pair, yielding a
//!   human-readable certificate;
//! * [`verifier`] assembles the full linear system on each party's Hermitian
//!   POVM element and decides triviality from its exact rational nullspace.
//!
//! ```
//! use nwe_core::{constructions, lemma, verifier};
//!
//! let set = constructions::gen_general(&[3, 3, 4]).unwrap();
//! assert_eq!(set.len(), 9);
//! assert!(verifier::certified_nonlocal(&verifier::verify_all(&set).unwrap()));
//! assert!(lemma::derive_certificate(&set).unwrap().all_trivial());
//! ```

pub mod cli;
pub mod constructions;
pub mod document;
pub mod error;
pub mod lemma;
pub mod linalg;
pub mod tensor;
pub mod verifier;

pub use error::{Error, Result};
pub use tensor::{LocalVector, ProductState, StateSet, SystemShape};
