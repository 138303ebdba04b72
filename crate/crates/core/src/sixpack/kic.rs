//! Kernel, image and cokernel persistence of a subfiltration inclusion.

use crate::complex::FilteredComplex;
use crate::reduction::{add_column, diagrams_from_pairing, reduce_full, split_pair, BoundaryMatrix, PersistenceDiagram, UNPAIRED};
use crate::scalar::Scalar;

pub(crate) struct InclusionDiagrams<T> {
    pub kernel: Vec<PersistenceDiagram<T>>,
    pub image: Vec<PersistenceDiagram<T>>,
    pub cokernel: Vec<PersistenceDiagram<T>>,
    /// Diagrams of the subcomplex itself.
    pub sub: Vec<PersistenceDiagram<T>>,
}

/// `sub` lists, in increasing order, the simplices of `k` forming a
/// subcomplex `L` whose filtration is the restriction of that of `k`.
pub(crate) fn inclusion_diagrams<T: Scalar>(
    k: &FilteredComplex<T>,
    sub: &[usize],
    max_degree: usize,
) -> InclusionDiagrams<T> {
    let n = k.len();
    let nl = sub.len();
    let values = k.values();
    let dim = |j: usize| k.simplex_dim(j);
    let mut lpos = vec![UNPAIRED; n];
    for (p, &j) in sub.iter().enumerate() {
        lpos[j] = p;
    }
    let in_l = |j: usize| lpos[j] != UNPAIRED;
    let facets: Vec<Vec<usize>> = (0..n).map(|j| k.facet_indices(j)).collect();

    // Reduction of L on its own, keeping cycle representatives.
    let dl = BoundaryMatrix {
        columns: sub
            .iter()
            .map(|&j| facets[j].iter().map(|&f| lpos[f]).collect())
            .collect(),
        dims: sub.iter().map(|&j| dim(j)).collect(),
        values: sub.iter().map(|&j| values[j]).collect(),
    };
    let red_l = reduce_full(&dl, true, true);
    let l_values: Vec<T> = sub.iter().map(|&j| values[j]).collect();
    let sub_diagrams = diagrams_from_pairing(&l_values, &red_l.pairing, max_degree);
    let l_positive = |p: usize| red_l.pairing.partner(p).is_none_or(|q| q > p);

    // Reduction of the boundary of K with the rows of L moved first.
    let mut rowpos = vec![0; n];
    let mut next = nl;
    for j in 0..n {
        rowpos[j] = if in_l(j) {
            lpos[j]
        } else {
            next += 1;
            next - 1
        };
    }
    let mut r: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| {
            let mut c: Vec<usize> = f.iter().map(|&x| rowpos[x]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let mut pivot = vec![UNPAIRED; n];
    let mut low_im = vec![UNPAIRED; n];
    let mut added: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut scratch = Vec::new();
    for j in 0..n {
        while let Some(&low) = r[j].last() {
            let p = pivot[low];
            if p == UNPAIRED {
                pivot[low] = j;
                low_im[j] = low;
                break;
            }
            let (head, tail) = split_pair(&mut r, j, p);
            add_column(head, tail, &mut scratch);
            if in_l(j) {
                added[j].push(p);
            }
        }
    }
    let k_positive = |j: usize| r[j].is_empty();

    let mut image: Vec<PersistenceDiagram<T>> = (0..=max_degree).map(PersistenceDiagram::empty).collect();
    let mut kernel = image.clone();
    let mut cokernel = image.clone();

    let mut is_low_in_l = vec![false; nl];
    for j in 0..n {
        let low = low_im[j];
        if low != UNPAIRED && low < nl {
            is_low_in_l[low] = true;
            let i = sub[low];
            if let Some(d) = image.get_mut(dim(i)) {
                d.push(values[i], values[j]);
            }
        }
    }
    for p in 0..nl {
        if l_positive(p) && !is_low_in_l[p] {
            let i = sub[p];
            if let Some(d) = image.get_mut(dim(i)) {
                d.push(values[i], T::infinity());
            }
        }
    }

    // Kernel: L-cycles that become boundaries in K, until they bound in L.
    let in_j = |j: usize| low_im[j] != UNPAIRED && low_im[j] < nl;
    let mut q: Vec<Vec<usize>> = Vec::with_capacity(nl);
    for &t in sub {
        let mut c = std::mem::take(&mut added[t]);
        if in_j(t) {
            c.push(t);
        }
        c.sort_unstable();
        q.push(c);
    }
    let mut q_pivot: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut killed = vec![false; n];
    for col in 0..nl {
        while let Some(&low) = q[col].last() {
            match q_pivot.get(&low) {
                None => {
                    q_pivot.insert(low, col);
                    killed[low] = true;
                    let t = sub[col];
                    if let Some(d) = dim(low).checked_sub(1).and_then(|m| kernel.get_mut(m)) {
                        d.push(values[low], values[t]);
                    }
                    break;
                }
                Some(&p) => {
                    let (head, tail) = split_pair(&mut q, col, p);
                    add_column(head, tail, &mut scratch);
                }
            }
        }
    }
    for j in 0..n {
        if in_j(j) && !killed[j] {
            if let Some(d) = dim(j).checked_sub(1).and_then(|m| kernel.get_mut(m)) {
                d.push(values[j], T::infinity());
            }
        }
    }

    // Cokernel: reduce the boundary of K with the cycles of L put in place
    // of the columns that create them.
    let mut c: Vec<Vec<usize>> = Vec::with_capacity(n);
    for j in 0..n {
        let col = if in_l(j) && l_positive(lpos[j]) {
            let p = lpos[j];
            let cycle = match red_l.pairing.partner(p) {
                Some(t) => &red_l.r[t],
                None => &red_l.v.as_ref().expect("cycle representatives tracked")[p],
            };
            cycle.iter().map(|&x| sub[x]).collect()
        } else {
            facets[j].clone()
        };
        c.push(col);
    }
    let mut c_pivot = vec![UNPAIRED; n];
    let mut is_low = vec![false; n];
    for j in 0..n {
        while let Some(&low) = c[j].last() {
            let p = c_pivot[low];
            if p == UNPAIRED {
                c_pivot[low] = j;
                is_low[low] = true;
                if low != j {
                    debug_assert!(k_positive(low) && !(in_l(low) && l_positive(lpos[low])));
                    if let Some(d) = cokernel.get_mut(dim(low)) {
                        d.push(values[low], values[j]);
                    }
                }
                break;
            }
            let (head, tail) = split_pair(&mut c, j, p);
            add_column(head, tail, &mut scratch);
        }
    }
    for j in 0..n {
        let generator = k_positive(j) && !(in_l(j) && l_positive(lpos[j]));
        if generator && !is_low[j] {
            if let Some(d) = cokernel.get_mut(dim(j)) {
                d.push(values[j], T::infinity());
            }
        }
    }

    for d in image.iter_mut().chain(kernel.iter_mut()).chain(cokernel.iter_mut()) {
        d.sort();
    }
    InclusionDiagrams {
        kernel,
        image,
        cokernel,
        sub: sub_diagrams,
    }
}
