//! Filtered exact predicates on points with paraboloid heights.
//!
//! Points live in R^k. A predicate works with a chosen subset of axes (the
//! `y` coordinates) and optionally the height `|x|^2` taken over all `k`
//! axes. All determinants are homogeneous, `det [y_i, (h_i), 1]`, and are
//! evaluated on differences to the first row so that heights reduce to
//! squared distances. That reduction is exact as long as the rows share an
//! affine subspace onto which the chosen axes project injectively, which is
//! how the triangulation uses them.

use num_bigint::BigInt;
use num_traits::{Float, Signed, Zero};

/// Largest determinant order evaluated by the float filter.
const MAX_ORDER: usize = 8;

#[derive(Debug, Clone)]
pub(crate) struct Points<'a> {
    pub k: usize,
    pub coords: &'a [f64],
}

impl<'a> Points<'a> {
    pub fn new(k: usize, coords: &'a [f64]) -> Self {
        debug_assert_eq!(coords.len() % k.max(1), 0);
        Points { k, coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.k
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    /// Sign of `det [y_i, 1]` over `rows` (needs `axes.len() + 1` rows).
    pub fn orient(&self, rows: &[usize], axes: &[usize]) -> i8 {
        self.hdet(rows, axes, false)
    }

    /// Sign of `det [y_i, |x_i|^2, 1]` (needs `axes.len() + 2` rows).
    pub fn power(&self, rows: &[usize], axes: &[usize]) -> i8 {
        self.hdet(rows, axes, true)
    }

    /// [`power`](Self::power) with heights perturbed by `eps^(2^-i)` for
    /// point `i`, so lower indices dominate. Never zero unless every
    /// `axes.len() + 1`-subset of `rows` is flat.
    pub fn power_sos(&self, rows: &[usize], axes: &[usize]) -> i8 {
        let d = self.power(rows, axes);
        if d != 0 {
            return d;
        }
        let m = axes.len();
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&j| rows[j]);
        let mut rest = Vec::with_capacity(rows.len() - 1);
        for j in order {
            rest.clear();
            rest.extend(rows.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &r)| r));
            let minor = self.orient(&rest, axes);
            if minor != 0 {
                return if (j + m) % 2 == 0 { minor } else { -minor };
            }
        }
        0
    }

    /// Whether `p` lies strictly inside the perturbed power sphere of the
    /// simplex `t` (which must be non-flat over `axes`).
    pub fn in_sphere(&self, t: &[usize], p: usize, axes: &[usize]) -> bool {
        let o = self.orient(t, axes);
        debug_assert!(o != 0, "in_sphere on a flat simplex");
        let mut rows = Vec::with_capacity(t.len() + 1);
        rows.extend_from_slice(t);
        rows.push(p);
        self.power_sos(&rows, axes) * o > 0
    }

    fn hdet(&self, rows: &[usize], axes: &[usize], height: bool) -> i8 {
        let n = axes.len() + usize::from(height);
        assert_eq!(rows.len(), n + 1, "predicate arity");
        if n == 0 {
            return 1;
        }
        // det [y, (h), 1] = (-1)^n det(diff)
        let flip = if n % 2 == 1 { -1 } else { 1 };
        flip * self.diff_det_sign(rows, axes, height)
    }

    fn diff_det_sign(&self, rows: &[usize], axes: &[usize], height: bool) -> i8 {
        let n = rows.len() - 1;
        if n <= MAX_ORDER {
            let mut m = [[0.0f64; MAX_ORDER]; MAX_ORDER];
            let x0 = self.row(rows[0]);
            for r in 0..n {
                let xi = self.row(rows[r + 1]);
                for (c, &a) in axes.iter().enumerate() {
                    m[r][c] = xi[a] - x0[a];
                }
                if height {
                    m[r][n - 1] = xi.iter().zip(x0).map(|(a, b)| (a - b) * (a - b)).sum();
                }
            }
            let (det, perm) = det_and_permanent(&m, n);
            if perm == 0.0 {
                // Zero pattern of the rounded entries equals the exact one.
                return 0;
            }
            let u = f64::EPSILON;
            let bound = perm * u * (4.0 * n as f64 * (self.k as f64 + 4.0) + 8.0 * (n * n) as f64);
            if det.abs() > bound && perm.is_finite() {
                return if det > 0.0 { 1 } else { -1 };
            }
        }
        self.exact_sign(rows, axes, height)
    }

    fn exact_sign(&self, rows: &[usize], axes: &[usize], height: bool) -> i8 {
        let n = rows.len() - 1;
        let ints = to_integers(rows.iter().flat_map(|&r| self.row(r).iter().copied()));
        let k = self.k;
        let x = |r: usize, a: usize| &ints[r * k + a];
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 1..=n {
            let mut row: Vec<BigInt> = axes.iter().map(|&a| x(r, a) - x(0, a)).collect();
            if height {
                let h: BigInt = (0..k)
                    .map(|a| {
                        let d = x(r, a) - x(0, a);
                        &d * &d
                    })
                    .sum();
                row.push(h);
            }
            m.push(row);
        }
        bareiss_sign(m)
    }
}

/// Determinant and permanent of `|m|` by Laplace expansion over column sets.
fn det_and_permanent(m: &[[f64; MAX_ORDER]; MAX_ORDER], n: usize) -> (f64, f64) {
    let size = 1usize << n;
    let mut det = [0.0f64; 1 << MAX_ORDER];
    let mut per = [0.0f64; 1 << MAX_ORDER];
    det[0] = 1.0;
    per[0] = 1.0;
    for mask in 1..size {
        let r = mask.count_ones() as usize - 1;
        let (mut d, mut p) = (0.0, 0.0);
        let mut pos = 0;
        for c in 0..n {
            if mask >> c & 1 == 1 {
                let sub = mask & !(1 << c);
                let v = m[r][c];
                if v != 0.0 {
                    let term = v * det[sub];
                    if (r + pos) % 2 == 0 {
                        d += term;
                    } else {
                        d -= term;
                    }
                    p += v.abs() * per[sub];
                }
                pos += 1;
            }
        }
        det[mask] = d;
        per[mask] = p;
    }
    (det[size - 1], per[size - 1])
}

/// Scales all values by a common power of two so they become integers.
pub(crate) fn to_integers(values: impl Iterator<Item = f64> + Clone) -> Vec<BigInt> {
    let min_exp = values
        .clone()
        .filter(|v| *v != 0.0)
        .map(|v| v.integer_decode().1)
        .min()
        .unwrap_or(0);
    values
        .map(|v| {
            if v == 0.0 {
                return BigInt::zero();
            }
            let (mant, exp, sign) = v.integer_decode();
            let b = BigInt::from(mant) << ((exp - min_exp) as usize);
            if sign < 0 {
                -b
            } else {
                b
            }
        })
        .collect()
}

/// Sign of an integer determinant by fraction-free elimination.
pub(crate) fn bareiss_sign(mut m: Vec<Vec<BigInt>>) -> i8 {
    let n = m.len();
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = &m[n - 1][n - 1];
    if d.is_zero() {
        0
    } else if d.is_positive() {
        sign
    } else {
        -sign
    }
}

/// Rank of an integer matrix.
pub(crate) fn bigint_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}
