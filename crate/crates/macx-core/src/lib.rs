//! Combinatorics and exact rational homology of moment-angle complexes.
//!
//! The crate revolves around one combinatorial operation and one identity.
//! The *doubling* of a simplicial complex `K` on `m` vertices is the complex
//! `L(K)` on `2m` vertices whose minimal non-faces are the doubled minimal
//! non-faces of `K`; it satisfies `Z_K = RZ_{L(K)}`, identifying the
//! moment-angle complex of `K` with the *real* moment-angle complex of its
//! double. That turns questions about `Z_K` into questions about an explicit
//! cubical subcomplex of a cube, which this crate exploits in two
//! independent ways:
//!
//! * [`cubical`] builds `RZ_K = (I¹, S⁰)^K` cell by cell and computes its
//!   Betti numbers from the cubical chain complex;
//! * [`hochster`] computes `H*(Z_K; Q)` as the direct sum of reduced
//!   cohomologies of all full subcomplexes `K_ω`.
//!
//! Agreement of the two routes on the double is the central cross-check,
//! and [`verify`] packages it together with the toral-rank inequalities
//! into corpus-level reports.
//!
//! All linear algebra is exact over the rationals ([`matrix`],
//! [`homology`]); there is no floating point anywhere.

pub mod complex;
pub mod cubical;
pub mod doubling;
pub mod error;
pub mod hochster;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod verify;
pub mod vertex_set;

pub use complex::{FaceList, Link, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::BettiTable;
pub use vertex_set::VertexSet;
