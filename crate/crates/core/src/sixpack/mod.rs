//! Chromatic maps and the kernel, image and cokernel persistence of
//! filtered chain maps.

mod gluing;
mod kic;
mod oracle;

pub use gluing::{
    color_subsets, gluing_map_from_complex, inclusion_map_from_complex, k_chromatic_gluing_map,
    k_chromatic_gluing_map_with, k_chromatic_inclusion_map, k_chromatic_inclusion_map_with, ChromaticMap,
    MapDescriptor, MapKind,
};
pub use oracle::{betti_number, rank_oracle, Ranks, ORACLE_LIMIT};

use crate::complex::{mapping_cylinder_truncated, FilteredChainMap};
use crate::error::Result;
use crate::reduction::{diagrams, PersistenceDiagram};
use crate::scalar::Scalar;

/// Kernel, image, cokernel, domain and codomain diagrams of one map, each
/// indexed by homology degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SixPack<T> {
    pub kernel: Vec<PersistenceDiagram<T>>,
    pub image: Vec<PersistenceDiagram<T>>,
    pub cokernel: Vec<PersistenceDiagram<T>>,
    pub domain: Vec<PersistenceDiagram<T>>,
    pub codomain: Vec<PersistenceDiagram<T>>,
    pub descriptor: Option<MapDescriptor>,
}

impl<T: Scalar> SixPack<T> {
    pub fn max_degree(&self) -> usize {
        self.domain.len() - 1
    }

    /// The diagrams used downstream: kernel and image in degrees 0 and 1,
    /// cokernel in degree 1, named `<kind>_deg<d>`.
    pub fn selected(&self) -> Vec<(String, &PersistenceDiagram<T>)> {
        let mut out = Vec::new();
        for (name, ds, degrees) in [
            ("kernel", &self.kernel, 0..=1),
            ("image", &self.image, 0..=1),
            ("cokernel", &self.cokernel, 1..=1),
        ] {
            for d in degrees {
                if let Some(diagram) = ds.get(d) {
                    out.push((format!("{name}_deg{d}"), diagram));
                }
            }
        }
        out
    }
}

/// Computes the six-pack of `f` in degrees `0..=max_degree`.
///
/// Maps that are not inclusions of subfiltrations are replaced by the
/// inclusion of the domain into the mapping cylinder, which has the same
/// kernel, image and cokernel.
pub fn six_pack<T: Scalar>(f: &FilteredChainMap<T>, max_degree: usize) -> Result<SixPack<T>> {
    let codomain = diagrams(f.codomain(), max_degree);
    let inc = if f.is_inclusion() {
        let mut sub = f.assignment().to_vec();
        sub.sort_unstable();
        kic::inclusion_diagrams(f.codomain(), &sub, max_degree)
    } else {
        let top = [f.domain().dimension(), f.codomain().dimension()]
            .into_iter()
            .flatten()
            .fold(max_degree + 1, usize::max);
        let cyl = mapping_cylinder_truncated(f, top)?;
        let mut sub = cyl.inclusion.assignment().to_vec();
        sub.sort_unstable();
        kic::inclusion_diagrams(&cyl.complex, &sub, max_degree)
    };
    let mut domain = inc.sub;
    if let Some(t) = f.domain().truncated_at() {
        for d in domain.iter_mut().filter(|d| d.degree >= t) {
            d.complete = false;
        }
    }
    Ok(SixPack {
        kernel: inc.kernel,
        image: inc.image,
        cokernel: inc.cokernel,
        domain,
        codomain,
        descriptor: None,
    })
}

impl<T: Scalar> ChromaticMap<T> {
    pub fn six_pack(&self, max_degree: usize) -> Result<SixPack<T>> {
        let mut pack = six_pack(&self.map, max_degree)?;
        pack.descriptor = Some(self.descriptor.clone());
        Ok(pack)
    }
}
