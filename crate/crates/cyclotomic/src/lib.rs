//! Cyclotomic graphs `G_m(A)` and `G*_m(A)` over quotient rings
//! `Z[zeta_m]/A`, together with the weight and distance machinery
//! (Manhattan, Mannheim, rho-taxicab), perfect t-code verification and
//! search, and the classification of 2p-valent first-kind Frobenius
//! circulants with their isomorphisms onto cyclotomic graphs.
//!
//! All ring and lattice arithmetic is exact (`num-bigint`); graphs are flat
//! index-based adjacency lists. Every structure is immutable after
//! construction and all operations are pure, so values can be shared freely
//! across threads.

pub mod acceptance;
pub mod codes;
pub mod context;
pub mod cycint;
pub mod error;
pub mod frobenius;
pub mod graph;
pub mod ideal;
pub mod intmat;
pub mod quotient;

pub use context::{Ctx, CyclotomicContext};
pub use cycint::{is_associate, torsion_units, AssociateVerdict, CycInt};
pub use error::{Error, Result};
pub use graph::{CayleyGraph, GraphKind, IsoWitness};
pub use ideal::IdealLattice;
pub use quotient::{QuotientRing, Residue};
