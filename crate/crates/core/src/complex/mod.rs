//! Point clouds, filtered complexes, chain maps and constructions on them.

mod chain_map;
mod cloud;
mod filtered;
mod ops;
mod simplex;

pub use chain_map::FilteredChainMap;
pub use cloud::LabelledPointCloud;
pub use filtered::FilteredComplex;
pub use ops::{
    disjoint_union, mapping_cylinder, mapping_cylinder_truncated, subcomplex_by_colors, MappingCylinder,
    Restriction,
};
pub use simplex::Simplex;
