//! Equivariant formality, mod-2 cohomology and self-dual binary codes for
//! locally standard 2-torus manifolds given by a face poset, a characteristic
//! function and, optionally, a triangulation of the orbit space.

pub mod blowup;
pub mod charfn;
pub mod codes;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod gkm;
pub mod instance;
pub mod model;
pub mod poly;
pub mod poset;
pub mod report;

pub mod standard;

pub use charfn::CharFunction;
pub use complex::{BettiVector, CarrierComplex, Simplex};
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use instance::Instance;
pub use model::{formality_verdict, FormalityVerdict, Geometry};
pub use poset::FacePoset;
