use std::collections::HashMap;

use super::predicates::{bigint_rank, to_integers, Points};
use crate::complex::Simplex;
use crate::error::{Error, Result};

/// Largest ambient dimension accepted by [`delaunay`].
pub const MAX_DELAUNAY_DIM: usize = 7;

/// Point count up to which [`delaunay_brute_force`] is accepted.
pub const BRUTE_FORCE_LIMIT: usize = 30;

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

/// The Delaunay triangulation of a point set, as its maximal simplices.
///
/// Ties between cospherical points are broken by a symbolic perturbation
/// that depends only on point indices, so the result does not depend on
/// insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct DelaunayComplex {
    dim: usize,
    point_count: usize,
    simplices: Vec<Simplex>,
}

impl DelaunayComplex {
    /// Dimension of the triangulation (of the affine hull of the points).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// Maximal simplices, sorted lexicographically.
    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Every face of dimension `<= max_dim`, sorted by dimension then
    /// lexicographically. Points dropped as duplicates do not appear.
    pub fn faces(&self, max_dim: usize) -> Vec<Simplex> {
        let mut seen = std::collections::HashSet::new();
        for s in &self.simplices {
            for f in s.faces_up_to(max_dim) {
                seen.insert(f);
            }
        }
        let mut out: Vec<Simplex> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Affine frame of a point set: a maximal independent subset and the axes
/// onto which the affine hull projects injectively.
struct Frame {
    basis: Vec<usize>,
    axes: Vec<usize>,
    duplicates: Vec<bool>,
}

fn frame(pts: &Points) -> Frame {
    let n = pts.len();
    let k = pts.k;
    let mut duplicates = vec![false; n];
    let mut first_at: HashMap<Vec<u64>, usize> = HashMap::new();
    for (i, dup) in duplicates.iter_mut().enumerate() {
        let key: Vec<u64> = pts.row(i).iter().map(|x| (x + 0.0).to_bits()).collect();
        if first_at.contains_key(&key) {
            *dup = true;
        } else {
            first_at.insert(key, i);
        }
    }
    let Some(first) = (0..n).find(|&i| !duplicates[i]) else {
        return Frame {
            basis: Vec::new(),
            axes: Vec::new(),
            duplicates,
        };
    };
    let mut basis = vec![first];
    let diff_rows = |basis: &[usize], extra: Option<usize>| {
        let idx: Vec<usize> = basis.iter().copied().chain(extra).collect();
        let ints = to_integers(idx.iter().flat_map(|&r| pts.row(r).iter().copied()));
        (1..idx.len())
            .map(|r| (0..k).map(|a| &ints[r * k + a] - &ints[a]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    for i in 0..n {
        if basis.len() == k + 1 {
            break;
        }
        if duplicates[i] || i == first {
            continue;
        }
        let rows = diff_rows(&basis, Some(i));
        if bigint_rank(rows) == basis.len() {
            basis.push(i);
        }
    }
    let m = basis.len() - 1;
    let mut axes = Vec::new();
    if m > 0 {
        let rows = diff_rows(&basis, None);
        let mut buf = Vec::new();
        super::ball::combinations(k, m, &mut buf, &mut |cols| {
            if axes.is_empty() {
                let minor: Vec<Vec<_>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
                if bigint_rank(minor) == m {
                    axes = cols.to_vec();
                }
            }
        });
    }
    Frame {
        basis,
        axes,
        duplicates,
    }
}

/// Incremental regular triangulation in the projected frame.
struct Builder<'a> {
    pts: Points<'a>,
    axes: Vec<usize>,
    m: usize,
    verts: Vec<usize>,
    nbrs: Vec<usize>,
    alive: Vec<bool>,
    free: Vec<usize>,
    mark: Vec<u32>,
    epoch: u32,
    last: usize,
}

impl<'a> Builder<'a> {
    fn new(pts: Points<'a>, axes: Vec<usize>, first: &[usize]) -> Self {
        let m = axes.len();
        let mut b = Builder {
            pts,
            axes,
            m,
            verts: Vec::new(),
            nbrs: Vec::new(),
            alive: Vec::new(),
            free: Vec::new(),
            mark: Vec::new(),
            epoch: 0,
            last: 0,
        };
        let mut t = first.to_vec();
        if b.pts.orient(&t, &b.axes) < 0 {
            t.swap(0, 1);
        }
        let mut cells = vec![b.alloc(&t)];
        for i in 0..=m {
            let mut g = t.clone();
            g[i] = GHOST;
            g.swap(i, (i + 1) % (m + 1));
            cells.push(b.alloc(&g));
        }
        b.link(&cells, None);
        b.last = cells[0];
        b
    }

    fn width(&self) -> usize {
        self.m + 1
    }

    fn cell(&self, c: usize) -> &[usize] {
        &self.verts[c * self.width()..(c + 1) * self.width()]
    }

    fn nbr(&self, c: usize, i: usize) -> usize {
        self.nbrs[c * self.width() + i]
    }

    fn set_nbr(&mut self, c: usize, i: usize, n: usize) {
        let w = self.width();
        self.nbrs[c * w + i] = n;
    }

    fn is_ghost(&self, c: usize) -> bool {
        self.cell(c).contains(&GHOST)
    }

    fn alloc(&mut self, vs: &[usize]) -> usize {
        let w = self.width();
        if let Some(c) = self.free.pop() {
            self.verts[c * w..(c + 1) * w].copy_from_slice(vs);
            self.nbrs[c * w..(c + 1) * w].fill(NONE);
            self.alive[c] = true;
            self.mark[c] = 0;
            c
        } else {
            self.verts.extend_from_slice(vs);
            self.nbrs.extend(std::iter::repeat(NONE).take(w));
            self.alive.push(true);
            self.mark.push(0);
            self.alive.len() - 1
        }
    }

    /// Links the given cells to each other across shared facets, skipping
    /// slot `skip_vertex` (the facet not containing that vertex).
    fn link(&mut self, cells: &[usize], skip_vertex: Option<usize>) {
        let mut open: HashMap<Vec<usize>, (usize, usize)> = HashMap::with_capacity(cells.len() * self.width());
        for &c in cells {
            for j in 0..self.width() {
                let vs = self.cell(c);
                if Some(vs[j]) == skip_vertex {
                    continue;
                }
                let mut key: Vec<usize> = vs.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
                key.sort_unstable();
                if let Some((c2, j2)) = open.remove(&key) {
                    self.set_nbr(c, j, c2);
                    self.set_nbr(c2, j2, c);
                } else {
                    open.insert(key, (c, j));
                }
            }
        }
        debug_assert!(open.is_empty(), "unmatched facets while linking");
    }

    fn with_vertex(&self, c: usize, slot: usize, p: usize) -> Vec<usize> {
        let mut vs = self.cell(c).to_vec();
        vs[slot] = p;
        vs
    }

    fn in_conflict(&self, c: usize, p: usize) -> bool {
        let vs = self.cell(c);
        match vs.iter().position(|&v| v == GHOST) {
            None => self.pts.in_sphere(vs, p, &self.axes),
            Some(g) => {
                let replaced = self.with_vertex(c, g, p);
                match self.pts.orient(&replaced, &self.axes) {
                    1 => true,
                    -1 => false,
                    _ => self.in_hyperplane_conflict(vs, p),
                }
            }
        }
    }

    /// `p` lies on the hyperplane of a hull facet; it conflicts with the facet
    /// when inside its power sphere within that hyperplane.
    fn in_hyperplane_conflict(&self, vs: &[usize], p: usize) -> bool {
        let facet: Vec<usize> = vs.iter().copied().filter(|&v| v != GHOST).collect();
        if self.m < 2 {
            return false;
        }
        for drop in 0..self.m {
            let sub: Vec<usize> = self.axes.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &a)| a).collect();
            if self.pts.orient(&facet, &sub) != 0 {
                return self.pts.in_sphere(&facet, p, &sub);
            }
        }
        unreachable!("hull facet is flat in every projection")
    }

    fn locate(&self, p: usize) -> usize {
        let mut c = self.last;
        if !self.alive[c] {
            c = (0..self.alive.len()).find(|&i| self.alive[i]).expect("triangulation has cells");
        }
        if let Some(g) = self.cell(c).iter().position(|&v| v == GHOST) {
            c = self.nbr(c, g);
        }
        let limit = 4 * self.alive.len() + 16;
        'walk: for _ in 0..limit {
            if self.is_ghost(c) {
                return c;
            }
            for i in 0..self.width() {
                let replaced = self.with_vertex(c, i, p);
                if self.pts.orient(&replaced, &self.axes) < 0 {
                    c = self.nbr(c, i);
                    continue 'walk;
                }
            }
            return c;
        }
        log::debug!("point location walk did not terminate; scanning");
        (0..self.alive.len())
            .find(|&c| self.alive[c] && self.in_conflict(c, p))
            .expect("some cell conflicts with a new point")
    }

    fn insert(&mut self, p: usize) {
        let mut start = self.locate(p);
        if !self.in_conflict(start, p) {
            start = (0..self.alive.len())
                .find(|&c| self.alive[c] && self.in_conflict(c, p))
                .expect("some cell conflicts with a new point");
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let mut cavity = vec![start];
        self.mark[start] = epoch;
        let mut boundary = Vec::new();
        let mut head = 0;
        while head < cavity.len() {
            let c = cavity[head];
            head += 1;
            for i in 0..self.width() {
                let n = self.nbr(c, i);
                if self.mark[n] == epoch {
                    continue;
                }
                if self.in_conflict(n, p) {
                    self.mark[n] = epoch;
                    cavity.push(n);
                } else {
                    boundary.push((c, i));
                }
            }
        }
        let mut created = Vec::with_capacity(boundary.len());
        for &(c, i) in &boundary {
            let vs = self.with_vertex(c, i, p);
            let outside = self.nbr(c, i);
            let new = self.alloc(&vs);
            debug_assert!(
                vs.contains(&GHOST) || self.pts.orient(&vs, &self.axes) > 0,
                "new cell is not positively oriented"
            );
            self.set_nbr(new, i, outside);
            let back = (0..self.width()).find(|&j| self.nbr(outside, j) == c).expect("neighbor links are symmetric");
            self.set_nbr(outside, back, new);
            created.push(new);
        }
        for &c in &cavity {
            self.alive[c] = false;
            self.free.push(c);
        }
        self.link(&created, Some(p));
        self.last = *created
            .iter()
            .find(|&&c| !self.is_ghost(c))
            .unwrap_or(&created[0]);
    }

    fn finite_cells(&self) -> Vec<Simplex> {
        (0..self.alive.len())
            .filter(|&c| self.alive[c] && !self.is_ghost(c))
            .map(|c| Simplex::new(self.cell(c).to_vec()))
            .collect()
    }
}

fn check_input(k: usize, coords: &[f64]) -> Result<()> {
    if k == 0 || k > MAX_DELAUNAY_DIM {
        return Err(Error::Input(format!("Delaunay dimension must be 1..={MAX_DELAUNAY_DIM}, got {k}")));
    }
    if coords.len() % k != 0 {
        return Err(Error::Input("coordinate buffer is not a whole number of points".into()));
    }
    if coords.iter().any(|x| !x.is_finite()) {
        return Err(Error::Input("non-finite coordinate".into()));
    }
    Ok(())
}

fn trivial(fr: &Frame, n: usize) -> Option<DelaunayComplex> {
    let m = fr.axes.len();
    (m == 0).then(|| DelaunayComplex {
        dim: 0,
        point_count: n,
        simplices: fr.basis.iter().map(|&v| Simplex::vertex(v)).collect(),
    })
}

/// Delaunay triangulation of `coords`, read as rows of length `k`.
///
/// Affinely dependent inputs are triangulated within their affine hull.
/// Repeated points are skipped; only the first copy is a vertex.
pub fn delaunay(k: usize, coords: &[f64]) -> Result<DelaunayComplex> {
    check_input(k, coords)?;
    let pts = Points::new(k, coords);
    let n = pts.len();
    let fr = frame(&pts);
    if let Some(t) = trivial(&fr, n) {
        return Ok(t);
    }
    let mut in_basis = vec![false; n];
    for &b in &fr.basis {
        in_basis[b] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| !in_basis[i] && !fr.duplicates[i]).collect();
    let order = spatial_order(&pts, &fr.axes, rest);
    let mut builder = Builder::new(pts, fr.axes.clone(), &fr.basis);
    for p in order {
        builder.insert(p);
    }
    let mut simplices = builder.finite_cells();
    simplices.sort();
    Ok(DelaunayComplex {
        dim: fr.axes.len(),
        point_count: n,
        simplices,
    })
}

/// Reference triangulation by testing every candidate simplex against every
/// point. Produces exactly the cells of [`delaunay`]. Limited to
/// [`BRUTE_FORCE_LIMIT`] points.
pub fn delaunay_brute_force(k: usize, coords: &[f64]) -> Result<DelaunayComplex> {
    check_input(k, coords)?;
    let pts = Points::new(k, coords);
    let n = pts.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force Delaunay input",
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let fr = frame(&pts);
    if let Some(t) = trivial(&fr, n) {
        return Ok(t);
    }
    let m = fr.axes.len();
    let live: Vec<usize> = (0..n).filter(|&i| !fr.duplicates[i]).collect();
    let mut simplices = Vec::new();
    let mut buf = Vec::new();
    super::ball::combinations(live.len(), m + 1, &mut buf, &mut |idx| {
        let t: Vec<usize> = idx.iter().map(|&i| live[i]).collect();
        if pts.orient(&t, &fr.axes) == 0 {
            return;
        }
        if live.iter().all(|q| t.contains(q) || !pts.in_sphere(&t, *q, &fr.axes)) {
            simplices.push(Simplex::from_sorted(t));
        }
    });
    simplices.sort();
    Ok(DelaunayComplex {
        dim: m,
        point_count: n,
        simplices,
    })
}

/// Morton order of the projected points, for walk locality.
fn spatial_order(pts: &Points, axes: &[usize], mut idx: Vec<usize>) -> Vec<usize> {
    if idx.is_empty() {
        return idx;
    }
    let m = axes.len();
    let bits = (63 / m).min(16) as u32;
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for &i in &idx {
        for (a, &ax) in axes.iter().enumerate() {
            let x = pts.row(i)[ax];
            lo[a] = lo[a].min(x);
            hi[a] = hi[a].max(x);
        }
    }
    let cells = ((1u64 << bits) - 1) as f64;
    let key = |i: usize| -> u64 {
        let mut q = Vec::with_capacity(m);
        for (a, &ax) in axes.iter().enumerate() {
            let span = hi[a] - lo[a];
            let t = if span > 0.0 { (pts.row(i)[ax] - lo[a]) / span } else { 0.0 };
            q.push((t * cells) as u64);
        }
        let mut code = 0u64;
        for b in (0..bits).rev() {
            for v in &q {
                code = (code << 1) | (v >> b & 1);
            }
        }
        code
    };
    idx.sort_by_cached_key(|&i| (key(i), i));
    idx
}
