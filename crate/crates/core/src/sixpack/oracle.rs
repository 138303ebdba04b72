//! Dense Z/2 linear algebra used to cross-check persistence computations.

use std::collections::HashMap;

use crate::complex::{FilteredChainMap, FilteredComplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest complex accepted by the dense routines.
pub const ORACLE_LIMIT: usize = 4000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a ^= b;
        }
    }

    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

/// Row-echelon basis of a subspace, optionally tracking how each basis
/// vector was combined from the inserted vectors.
#[derive(Default)]
struct Echelon {
    rows: Vec<(Bits, Bits)>,
    by_pivot: HashMap<usize, usize>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` (with tag `tag`) against the basis; returns the residual.
    fn reduce(&self, mut v: Bits, mut tag: Bits) -> (Bits, Bits) {
        while let Some(h) = v.highest() {
            match self.by_pivot.get(&h) {
                Some(&r) => {
                    v.xor(&self.rows[r].0);
                    tag.xor(&self.rows[r].1);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Inserts `v`; returns the tag of the dependency when `v` is already
    /// in the span.
    fn insert(&mut self, v: Bits, tag: Bits) -> Option<Bits> {
        let (v, tag) = self.reduce(v, tag);
        match v.highest() {
            None => Some(tag),
            Some(h) => {
                self.by_pivot.insert(h, self.rows.len());
                self.rows.push((v, tag));
                None
            }
        }
    }

    fn from_vectors(vs: impl IntoIterator<Item = Bits>) -> Self {
        let mut e = Echelon::default();
        for v in vs {
            e.insert(v, Bits::zeros(0));
        }
        e
    }
}

struct Chains<'a, T> {
    k: &'a FilteredComplex<T>,
}

impl<'a, T: Scalar> Chains<'a, T> {
    fn boundary(&self, j: usize) -> Bits {
        let mut b = Bits::zeros(self.k.len());
        for f in self.k.facet_indices(j) {
            b.set(f);
        }
        b
    }

    fn of_dim(&self, m: usize, t: T) -> impl Iterator<Item = usize> + '_ {
        (0..self.k.len()).filter(move |&j| self.k.simplex_dim(j) == m && self.k.value(j) <= t)
    }

    /// Basis of the degree-`m` cycles of the sublevel set at `t`.
    fn cycles(&self, m: usize, t: T) -> Vec<Bits> {
        let mut e = Echelon::default();
        let mut out = Vec::new();
        for j in self.of_dim(m, t) {
            let mut tag = Bits::zeros(self.k.len());
            tag.set(j);
            if let Some(z) = e.insert(self.boundary(j), tag) {
                out.push(z);
            }
        }
        out
    }

    /// Spanning set of the degree-`m` boundaries of the sublevel set at `t`.
    fn boundaries(&self, m: usize, t: T) -> Vec<Bits> {
        self.of_dim(m + 1, t).map(|j| self.boundary(j)).collect()
    }
}

fn check_size<T: Scalar>(k: &FilteredComplex<T>) -> Result<()> {
    if k.len() > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "dense oracle complex",
            size: k.len(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Betti number in degree `m` of the sublevel complex at `t`.
pub fn betti_number<T: Scalar>(k: &FilteredComplex<T>, t: T, m: usize) -> Result<usize> {
    check_size(k)?;
    let c = Chains { k };
    let z = c.cycles(m, t).len();
    let b = Echelon::from_vectors(c.boundaries(m, t)).rank();
    Ok(z - b)
}

/// Ranks of the maps from scale `s` to scale `t` of the kernel, image and
/// cokernel of `f` on degree-`degree` homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranks {
    pub kernel: usize,
    pub image: usize,
    pub cokernel: usize,
}

pub fn rank_oracle<T: Scalar>(f: &FilteredChainMap<T>, s: T, t: T, degree: usize) -> Result<Ranks> {
    let (l, k) = (f.domain().as_ref(), f.codomain().as_ref());
    check_size(l)?;
    check_size(k)?;
    if s > t {
        return Err(Error::Input(format!("scales out of order: {s} > {t}")));
    }
    let lc = Chains { k: l };
    let kc = Chains { k };
    let push = |z: &Bits| {
        let mut out = Bits::zeros(k.len());
        for i in z.ones() {
            out.set(f.assignment()[i]);
        }
        out
    };
    let rank_with = |base: &Echelon, extra: &[Bits]| {
        let mut e = Echelon {
            rows: base.rows.clone(),
            by_pivot: base.by_pivot.clone(),
        };
        for v in extra {
            e.insert(v.clone(), Bits::zeros(0));
        }
        e.rank()
    };

    let zl_s = lc.cycles(degree, s);
    let zl_t = lc.cycles(degree, t);
    let zk_s = kc.cycles(degree, s);
    let bl_t = Echelon::from_vectors(lc.boundaries(degree, t));
    let bk_s = Echelon::from_vectors(kc.boundaries(degree, s));
    let bk_t = Echelon::from_vectors(kc.boundaries(degree, t));

    // cycles of L_s whose image bounds in K_s; boundary rows carry empty
    // tags, so every dependency found is a combination of cycles alone
    let mut span = Echelon {
        rows: bk_s.rows.iter().map(|(v, _)| (v.clone(), Bits::zeros(l.len()))).collect(),
        by_pivot: bk_s.by_pivot.clone(),
    };
    let mut zker = Vec::new();
    for z in &zl_s {
        if let Some(tag) = span.insert(push(z), z.clone()) {
            zker.push(tag);
        }
    }
    let kernel = rank_with(&bl_t, &zker) - bl_t.rank();

    let fz_s: Vec<Bits> = zl_s.iter().map(push).collect();
    let image = rank_with(&bk_t, &fz_s) - bk_t.rank();

    let fz_t: Vec<Bits> = zl_t.iter().map(push).collect();
    let mut im_t = Echelon {
        rows: bk_t.rows.clone(),
        by_pivot: bk_t.by_pivot.clone(),
    };
    for v in fz_t {
        im_t.insert(v, Bits::zeros(0));
    }
    let cokernel = rank_with(&im_t, &zk_s) - im_t.rank();

    Ok(Ranks { kernel, image, cokernel })
}
