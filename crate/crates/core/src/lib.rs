//! Multiscale multi-species spatial signatures of labelled point clouds.
//!
//! Numeric types are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix them to `f64`.

pub mod complex;
pub mod error;
pub mod geom;
pub mod reduction;
pub mod scalar;
pub mod signatures;
pub mod sixpack;

pub use complex::{FilteredChainMap, FilteredComplex, LabelledPointCloud, Simplex};
pub use error::{Error, Result};
pub use reduction::PersistenceDiagram;
pub use scalar::Scalar;
pub use signatures::{SignatureConfig, SignatureVector};
pub use sixpack::{ChromaticMap, SixPack};

pub type PointCloud = LabelledPointCloud<f64>;
pub type Complex = FilteredComplex<f64>;
pub type ChainMap = FilteredChainMap<f64>;
pub type Diagram = PersistenceDiagram<f64>;
pub type Pack = SixPack<f64>;
pub type Signature = SignatureVector<f64>;
