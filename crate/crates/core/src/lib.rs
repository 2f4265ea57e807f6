//! Exact computations with small modular Lie algebras: structure constants, cohomology,
//! Massey brackets, deformation families, a contact-algebra realization and a rigidity
//! counterexample, all over finite fields.

pub mod algebra;
pub mod cochain;
pub mod cohomology;
pub mod contact;
pub mod cyc;
pub mod family;
pub mod field;
pub mod golden;
pub mod linalg;
pub mod massey;
pub mod poly;
pub mod report;
pub mod ring;

pub use algebra::{Fingerprint, LieAlgebra, LinearMap};
pub use cochain::{Cochain, Module, Wedge};
pub use field::{Fe, Field};
pub use poly::{Monomial, ParamPoly, PolyRing};
pub use ring::Ring;
