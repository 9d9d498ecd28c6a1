//! Finite buildings of type A over prime fields, homology of their random
//! induced subcomplexes, and legal-coset certificates showing that commutator
//! subgroups of right-angled Coxeter groups algebraically fiber.
//!
//! Module map:
//! - [`flag_complex`]: flag complexes, induced subcomplexes, f-vectors, curvature, chromatic number
//! - [`homology`]: exact reduced integral homology through Smith normal form
//! - [`building`]: the building of proper subspaces of `F_p^{k+1}` with galleries and projections
//! - [`magic_cube`]: projection-induced magic cubes, positive diagonals, opposite spreads
//! - [`jnw`]: move systems, legality, coset searches, censuses and Monte Carlo estimates
//! - [`davis_morse`]: Cayley balls of the Davis complex with the coset height function

pub mod building;
pub mod davis_morse;
pub mod error;
pub mod families;
pub mod flag_complex;
pub mod homology;
pub mod jnw;
pub mod magic_cube;
pub mod vertex_set;

pub use error::{Error, Result};
pub use flag_complex::{FlagComplex, Simplex};
pub use homology::HomologyProfile;
pub use vertex_set::VertexSet;
