use std::fmt;

/// An abstract simplex: a strictly increasing list of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and deduplicates `vertices`.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    /// Caller guarantees `vertices` is strictly increasing.
    pub fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Codimension-one faces; facet `i` omits vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All nonempty faces of dimension at most `max_dim`, including `self` when it qualifies.
    pub fn faces_up_to(&self, max_dim: usize) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::new();
        let top = (max_dim + 1).min(n);
        for size in 1..=top {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
                // next combination
                let mut k = size;
                while k > 0 && idx[k - 1] == n - size + k - 1 {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                idx[k - 1] += 1;
                for j in k..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        out
    }

    /// Applies a vertex map, returning the image vertex list (sorted) or `None`
    /// when the map is not injective on this simplex.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Option<Simplex> {
        let mut v: Vec<usize> = self.0.iter().map(|&x| f(x)).collect();
        v.sort_unstable();
        let before = v.len();
        v.dedup();
        (v.len() == before).then_some(Simplex(v))
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<usize>> for Simplex {
    fn from(v: Vec<usize>) -> Self {
        Simplex::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for Simplex {
    fn from(v: [usize; N]) -> Self {
        Simplex::new(v.to_vec())
    }
}
