use super::BoundaryMatrix;
use crate::scalar::Scalar;

pub(crate) const UNPAIRED: usize = usize::MAX;

/// Adds `b` to `a` over Z/2; both sorted.
pub(crate) fn add_column(a: &mut Vec<usize>, b: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    scratch.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&a[i..]);
    scratch.extend_from_slice(&b[j..]);
    std::mem::swap(a, scratch);
}

/// Persistence pairing of a boundary matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    partner: Vec<usize>,
    dims: Vec<usize>,
}

impl Pairing {
    /// The column paired with `j`, if any.
    pub fn partner(&self, j: usize) -> Option<usize> {
        (self.partner[j] != UNPAIRED).then_some(self.partner[j])
    }

    /// `(creator, destroyer)` column pairs, ordered by destroyer.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(j, &p)| p != UNPAIRED && p < j)
            .map(|(j, &p)| (p, j))
    }

    /// Columns that create a class which never dies.
    pub fn essentials(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.partner.len()).filter(|&j| self.partner[j] == UNPAIRED)
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }
}

/// Result of reducing a boundary matrix: the pairing, the reduced columns
/// and, when requested, the columns of `V` with `R = D V`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub pairing: Pairing,
    pub r: Vec<Vec<usize>>,
    pub v: Option<Vec<Vec<usize>>>,
}

/// Standard left-to-right reduction.
///
/// With `use_clearing`, dimensions are processed from the top down and a
/// column known to be a pivot row of a higher-dimensional column is zeroed
/// without work; the pairing is unchanged, though `R` and `V` of cleared
/// columns are then left empty.
pub fn reduce<T: Scalar>(m: &BoundaryMatrix<T>, use_clearing: bool) -> Pairing {
    reduce_full(m, use_clearing, false).pairing
}

pub fn reduce_full<T: Scalar>(m: &BoundaryMatrix<T>, use_clearing: bool, track_v: bool) -> Reduction {
    let n = m.len();
    let mut r: Vec<Vec<usize>> = m.columns.clone();
    let mut v: Option<Vec<Vec<usize>>> = track_v.then(|| (0..n).map(|j| vec![j]).collect());
    let mut pivot_of_row = vec![UNPAIRED; n];
    let mut partner = vec![UNPAIRED; n];
    let mut scratch = Vec::new();
    let mut cleared = vec![false; n];
    let order: Vec<usize> = if use_clearing {
        let top = m.dims.iter().copied().max().unwrap_or(0);
        (0..=top).rev().flat_map(|d| (0..n).filter(move |&j| m.dims[j] == d)).collect()
    } else {
        (0..n).collect()
    };
    for j in order {
        if cleared[j] {
            r[j].clear();
            if let Some(v) = v.as_mut() {
                v[j].clear();
            }
            continue;
        }
        while let Some(&low) = r[j].last() {
            let p = pivot_of_row[low];
            if p == UNPAIRED {
                pivot_of_row[low] = j;
                partner[j] = low;
                partner[low] = j;
                if use_clearing {
                    cleared[low] = true;
                }
                break;
            }
            let (head, tail) = split_pair(&mut r, j, p);
            add_column(head, tail, &mut scratch);
            if let Some(v) = v.as_mut() {
                let (head, tail) = split_pair(v, j, p);
                add_column(head, tail, &mut scratch);
            }
        }
    }
    Reduction {
        pairing: Pairing {
            partner,
            dims: m.dims.clone(),
        },
        r,
        v,
    }
}

/// Mutable access to column `a` alongside shared access to column `b`.
pub(crate) fn split_pair(cols: &mut [Vec<usize>], a: usize, b: usize) -> (&mut Vec<usize>, &Vec<usize>) {
    assert_ne!(a, b);
    if a < b {
        let (x, y) = cols.split_at_mut(b);
        (&mut x[a], &y[0])
    } else {
        let (x, y) = cols.split_at_mut(a);
        (&mut y[0], &x[b])
    }
}
