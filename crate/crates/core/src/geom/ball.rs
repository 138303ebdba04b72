use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest ambient dimension accepted by [`min_enclosing_ball`].
pub const MAX_BALL_DIM: usize = 8;

/// A closed ball in R^k.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball<T> {
    pub center: Vec<T>,
    pub radius: T,
}

impl<T: Scalar> Ball<T> {
    /// Whether `p` lies in the ball up to a slack of `1e-9 * (1 + radius)`.
    pub fn contains(&self, p: &[T]) -> bool {
        let r = self.radius.as_f64();
        let d2: f64 = self
            .center
            .iter()
            .zip(p)
            .map(|(c, x)| (x.as_f64() - c.as_f64()).powi(2))
            .sum();
        d2.sqrt() <= r + 1e-9 * (1.0 + r)
    }
}

/// Smallest ball enclosing `points`.
///
/// Uses move-to-front Welzl recursion in `f64`, then re-solves the ball from
/// its support points taken in lexicographic coordinate order, so equal
/// support sets yield bitwise-equal radii however the input is ordered.
pub fn min_enclosing_ball<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<Ball<T>> {
    let first = points
        .first()
        .ok_or_else(|| Error::Input("minimum enclosing ball of no points".into()))?;
    let k = first.as_ref().len();
    if k == 0 || k > MAX_BALL_DIM {
        return Err(Error::Input(format!("ball dimension must be 1..={MAX_BALL_DIM}, got {k}")));
    }
    let mut flat = Vec::with_capacity(points.len() * k);
    for p in points {
        let p = p.as_ref();
        if p.len() != k {
            return Err(Error::Input("points of mixed dimension".into()));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::Input("non-finite coordinate".into()));
        }
        flat.extend(p.iter().map(|x| x.as_f64()));
    }
    let (center, radius) = meb_flat(&flat, k);
    Ok(Ball {
        center: center.into_iter().map(T::from_f64_lossy).collect(),
        radius: T::from_f64_lossy(radius),
    })
}

/// Radius of the smallest ball around the rows of `flat` (row length `k`).
pub(crate) fn meb_radius(flat: &[f64], k: usize) -> f64 {
    match flat.len() / k {
        0 | 1 => 0.0,
        2 => dist(&flat[..k], &flat[k..]) / 2.0,
        _ => meb_flat(flat, k).1,
    }
}

pub(crate) fn meb_flat(flat: &[f64], k: usize) -> (Vec<f64>, f64) {
    let n = flat.len() / k;
    let row = |i: usize| &flat[i * k..(i + 1) * k];
    if n == 1 {
        return (row(0).to_vec(), 0.0);
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut support = Vec::with_capacity(k + 1);
    let ball = mtf(flat, k, &mut order, n, &mut support);
    let mut support = ball.support;
    // Keep only points the center actually depends on, in coordinate order
    // so the arithmetic does not depend on how the input was listed.
    let lex = |a: &usize, b: &usize| {
        row(*a)
            .iter()
            .zip(row(*b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(a.cmp(b))
    };
    support.sort_unstable_by(lex);
    if let Some(fit) = circumball(flat, k, &support) {
        let essential: Vec<usize> = support
            .iter()
            .zip(&fit.weights)
            .filter(|(_, &w)| w > 1e-12)
            .map(|(&i, _)| i)
            .collect();
        if !essential.is_empty() && essential.len() < support.len() {
            if let Some(b) = circumball(flat, k, &essential) {
                if encloses(flat, k, &b.center, b.radius) {
                    return (b.center, b.radius);
                }
            }
        }
        if encloses(flat, k, &fit.center, fit.radius) {
            return (fit.center, fit.radius);
        }
    }
    brute_force(flat, k)
}

struct Fit {
    center: Vec<f64>,
    radius: f64,
    /// Barycentric weight of each support point in the center.
    weights: Vec<f64>,
}

struct Mtf {
    center: Vec<f64>,
    radius: f64,
    support: Vec<usize>,
}

fn mtf(flat: &[f64], k: usize, order: &mut Vec<usize>, end: usize, support: &mut Vec<usize>) -> Mtf {
    let mut ball = match circumball(flat, k, support) {
        Some(f) => Mtf {
            center: f.center,
            radius: f.radius,
            support: support.clone(),
        },
        None if support.is_empty() => Mtf {
            center: vec![0.0; k],
            radius: -1.0,
            support: Vec::new(),
        },
        None => {
            // Numerically dependent support: settle it by enumeration.
            let sub: Vec<f64> = support.iter().flat_map(|&i| flat[i * k..(i + 1) * k].iter().copied()).collect();
            let (center, radius) = brute_force(&sub, k);
            Mtf {
                center,
                radius,
                support: support.clone(),
            }
        }
    };
    if support.len() == k + 1 {
        return ball;
    }
    let mut i = 0;
    while i < end {
        let p = order[i];
        if !inside(&flat[p * k..(p + 1) * k], &ball.center, ball.radius) {
            support.push(p);
            ball = mtf(flat, k, order, i, support);
            support.pop();
            order.remove(i);
            order.insert(0, p);
        }
        i += 1;
    }
    ball
}

fn inside(p: &[f64], c: &[f64], r: f64) -> bool {
    r >= 0.0 && dist(p, c) <= r * (1.0 + 1e-12) + 1e-300
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn encloses(flat: &[f64], k: usize, c: &[f64], r: f64) -> bool {
    flat.chunks_exact(k).all(|p| dist(p, c) <= r + 1e-9 * (1.0 + r))
}

/// Smallest ball with all of `idx` on its boundary, centered in their affine
/// hull. `None` when the points are (numerically) affinely dependent.
fn circumball(flat: &[f64], k: usize, idx: &[usize]) -> Option<Fit> {
    let row = |i: usize| &flat[i * k..(i + 1) * k];
    let (&first, rest) = idx.split_first()?;
    let p0 = row(first);
    let m = rest.len();
    if m == 0 {
        return Some(Fit {
            center: p0.to_vec(),
            radius: 0.0,
            weights: vec![1.0],
        });
    }
    if m == 1 {
        // same arithmetic as the two-point shortcut in `meb_radius`
        let p1 = row(rest[0]);
        let radius = dist(p0, p1) / 2.0;
        if radius == 0.0 {
            return None;
        }
        return Some(Fit {
            center: p0.iter().zip(p1).map(|(a, b)| (a + b) / 2.0).collect(),
            radius,
            weights: vec![0.5, 0.5],
        });
    }
    let u: Vec<Vec<f64>> = rest
        .iter()
        .map(|&i| row(i).iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut g = vec![vec![0.0; m + 1]; m];
    let mut scale = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            g[i][j] = dot(&u[i], &u[j]);
        }
        g[i][m] = g[i][i] / 2.0;
        scale = scale.max(g[i][i]);
    }
    let lambda = solve(g, scale)?;
    let mut center = p0.to_vec();
    for (l, ui) in lambda.iter().zip(&u) {
        for (c, x) in center.iter_mut().zip(ui) {
            *c += l * x;
        }
    }
    let radius = idx.iter().map(|&i| dist(row(i), &center)).fold(0.0, f64::max);
    let mut weights = Vec::with_capacity(m + 1);
    weights.push(1.0 - lambda.iter().sum::<f64>());
    weights.extend_from_slice(&lambda);
    Some(Fit { center, radius, weights })
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>, scale: f64) -> Option<Vec<f64>> {
    let m = a.len();
    let tiny = scale * 1e-13;
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= tiny || tiny == 0.0 {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..=m {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let s: f64 = (r + 1..m).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][m] - s) / a[r][r];
    }
    Some(x)
}

/// Smallest enclosing circumball over all support subsets of size `<= k+1`.
fn brute_force(flat: &[f64], k: usize) -> (Vec<f64>, f64) {
    let n = flat.len() / k;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut idx = Vec::new();
    for size in 1..=(k + 1).min(n) {
        combinations(n, size, &mut idx, &mut |subset| {
            if let Some(f) = circumball(flat, k, subset) {
                if best.as_ref().is_none_or(|b| f.radius < b.1) && encloses(flat, k, &f.center, f.radius) {
                    best = Some((f.center, f.radius));
                }
            }
        });
    }
    best.unwrap_or_else(|| {
        // Only reachable for wildly ill-conditioned input: fall back to the
        // bounding-box center.
        let mut c = vec![0.0; k];
        for a in 0..k {
            let lo = flat.iter().skip(a).step_by(k).copied().fold(f64::INFINITY, f64::min);
            let hi = flat.iter().skip(a).step_by(k).copied().fold(f64::NEG_INFINITY, f64::max);
            c[a] = (lo + hi) / 2.0;
        }
        let r = flat.chunks_exact(k).map(|p| dist(p, &c)).fold(0.0, f64::max);
        (c, r)
    })
}

pub(crate) fn combinations(n: usize, size: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, size: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if buf.len() == size {
            f(buf);
            return;
        }
        for i in start..n {
            if n - i < size - buf.len() {
                break;
            }
            buf.push(i);
            rec(i + 1, n, size, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    rec(0, n, size, buf, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let b = min_enclosing_ball(&[[0.0, 0.0], [2.0, 0.0]]).unwrap();
        assert_eq!(b.radius, 1.0);
        assert_eq!(b.center, vec![1.0, 0.0]);
    }

    #[test]
    fn equilateral_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let b = min_enclosing_ball(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]).unwrap();
        assert!((b.radius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn obtuse_triangle_uses_longest_edge() {
        let pts = [[0.0, 0.0], [4.0, 0.0], [2.0, 0.5]];
        let b = min_enclosing_ball(&pts).unwrap();
        assert_eq!(b.radius, 2.0);
        assert_eq!(meb_radius(&[0.0, 0.0, 4.0, 0.0], 2), b.radius);
    }

    #[test]
    fn duplicates_and_collinear() {
        let b = min_enclosing_ball(&[[1.0f32, 1.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]).unwrap();
        assert!((b.radius - 2f32.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn empty_is_an_error() {
        let pts: [[f64; 2]; 0] = [];
        assert!(min_enclosing_ball(&pts).is_err());
    }
}
