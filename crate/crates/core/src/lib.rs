//! Exact enumeration of finite class-2 Lie rings whose Frattini ideal
//! `pL + [L, L]` is central, organised as a counting pipeline:
//!
//! * [`exactalg`]: prime and extension fields, polynomials, truncated DVRs,
//!   matrices, exact rational polynomials.
//! * [`typelib`]: conjugacy-class types of tuples in `GL_n(q)`, class sizes,
//!   class counts and the intersection counts of the uniform subgroup
//!   families (parabolics and automorphism images).
//! * [`dvrmod`]: finite modules over truncated DVRs: Hall numbers, chain
//!   counts, automorphisms and the residue map `beta`.
//! * [`extcensus`]: Ext computed two ways, the extension orbit space,
//!   Burnside counting (naive and class-weighted), the centre recursion,
//!   the census and the PORC fitter.
//! * [`oracle`]: independent brute-force enumeration of the same Lie rings
//!   and the Lazard group construction for odd primes.
//!
//! All arithmetic is exact; nothing in this crate uses floating point.

pub mod acceptance;
pub mod dvrmod;
pub mod error;
pub mod exactalg;
pub mod extcensus;
pub mod oracle;
pub mod typelib;

pub use error::{Caps, Error, Result};
pub use exactalg::{DvrKind, DvrQuot, Gf, Mat, QPoly, UniPoly};
pub use extcensus::{Census, CensusTable, Engine, ExtensionDatum, ExtensionSpace, PorcFormula};
pub use typelib::{Partition, TypeKey};
