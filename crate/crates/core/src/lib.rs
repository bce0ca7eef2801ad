//! Computational engine for acyclic cluster algebras and their cluster
//! categories.
//!
//! The crate is organised bottom-up:
//!
//! * [`quiver`]: quivers, exchange matrices, Euler form, Dynkin roots.
//! * [`laurent`]: exact Laurent polynomials, seeds, exchange-graph search.
//! * [`rep`]: quiver representations over the rationals, Hom/Ext, BGP
//!   reflection functors, AR translation.
//! * [`bound`]: monomial bound quiver algebras and the rigid-but-not-lifting
//!   example of type `~A(2,1)`.
//! * [`category`]: the Dynkin cluster category as the translation quiver
//!   `Z Delta / F`, tilting objects, exchange pairs and the compatibility
//!   checks behind dimension-vector injectivity.
//! * [`tilting`]: tilting modules over Dynkin path algebras and the descent
//!   of preinjective tilting modules to `DA`.
//! * [`verify`]: the verification sweeps, producing [`report::Report`]s.

#![allow(clippy::needless_range_loop)]

pub mod bound;
pub mod category;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod tilting;
pub mod verify;

pub use category::{CObject, CategorifiedSeed, ExchangeData, GammaC};
pub use error::{Error, Result};
pub use laurent::{DenVector, LaurentPoly, Seed};
pub use quiver::{DiagramType, EulerData, ExchangeMatrix, NamedQuiver, Quiver};
pub use rep::{HomSpace, Representation};
pub use report::Report;
pub use tilting::{Catalog, TiltingModule, TorsionClass};
pub use verify::{Target, VerifyOptions};
