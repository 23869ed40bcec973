//! Exact lattice and cone computations for root subgroups on affine toric,
//! horospherical and rank-one spherical varieties.
//!
//! All arithmetic is over arbitrary-precision integers and rationals.

pub mod cone;
pub mod demazure;
pub mod error;
pub mod fixtures;
pub mod horo;
pub mod linalg;
pub mod serde_num;
pub mod sphrank1;
pub mod toricalg;

pub use cone::{Cone, RaySet};
pub use demazure::{DemazureRoot, RootCone, SearchBox};
pub use error::{Error, Result};
pub use horo::{HoroDatum, ShadowElement};
pub use linalg::{IntegerMatrix, LatticeVector, RationalVector, Sublattice};
pub use sphrank1::{BarStructure, RankOneDatum};
pub use toricalg::{AlgebraElement, ToricLND, WeightMonoid};
