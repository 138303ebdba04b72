use crate::reduction::PersistenceDiagram;
use crate::scalar::Scalar;

/// Which statistics a diagram contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    /// Eight statistics of births, deaths, lifespans and midlifes, then the
    /// point count and the persistent entropy.
    Full,
    /// Eight statistics of deaths only, then count and entropy. Used where
    /// every birth is zero.
    Reduced,
}

pub const STATISTICS: [&str; 8] = ["mean", "std", "median", "range", "p10", "p25", "p75", "p90"];
pub const QUANTITIES: [&str; 4] = ["birth", "death", "lifespan", "midlife"];

impl Layout {
    pub fn len(self) -> usize {
        match self {
            Layout::Full => 34,
            Layout::Reduced => 10,
        }
    }

    fn quantities(self) -> &'static [&'static str] {
        match self {
            Layout::Full => &QUANTITIES,
            Layout::Reduced => &QUANTITIES[1..2],
        }
    }

    /// Entry names, e.g. `death_p25`, `count`, `entropy`.
    pub fn names(self) -> Vec<String> {
        let mut out: Vec<String> = self
            .quantities()
            .iter()
            .flat_map(|q| STATISTICS.iter().map(move |s| format!("{q}_{s}")))
            .collect();
        out.push("count".into());
        out.push("entropy".into());
        out
    }
}

/// A statistics vector together with its layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramStatistics<T> {
    pub layout: Layout,
    pub values: Vec<T>,
}

fn capped<T: Scalar>(d: &PersistenceDiagram<T>, cap: f64) -> Vec<(f64, f64)> {
    d.points
        .iter()
        .map(|&(b, e)| {
            let b = b.as_f64();
            let e = e.as_f64();
            (b, if e.is_finite() { e } else { cap.max(b) })
        })
        .collect()
}

fn entropy(points: &[(f64, f64)]) -> f64 {
    let total: f64 = points.iter().map(|(b, d)| d - b).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let h: f64 = points
        .iter()
        .map(|(b, d)| (d - b) / total)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum();
    // a lone feature gives -1 * ln 1, which may round to -0.0
    h.max(0.0)
}

/// Shannon entropy (natural log) of the lifetimes, with infinite deaths
/// replaced by `cap`.
pub fn persistent_entropy<T: Scalar>(d: &PersistenceDiagram<T>, cap: T) -> T {
    T::from_f64_lossy(entropy(&capped(d, cap.as_f64())))
}

/// Linear interpolation between order statistics at rank `q * (n - 1)`.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn summary(mut xs: Vec<f64>, out: &mut Vec<f64>) {
    if xs.is_empty() {
        out.extend([0.0; 8]);
        return;
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    out.extend([
        mean,
        var.sqrt(),
        percentile(&xs, 0.5),
        xs[xs.len() - 1] - xs[0],
        percentile(&xs, 0.10),
        percentile(&xs, 0.25),
        percentile(&xs, 0.75),
        percentile(&xs, 0.90),
    ]);
}

/// Persistent statistics of `d` under `layout`, infinite deaths capped at
/// `cap`. Population standard deviation; empty diagrams give zeros.
pub fn diagram_statistics<T: Scalar>(d: &PersistenceDiagram<T>, layout: Layout, cap: T) -> DiagramStatistics<T> {
    let pts = capped(d, cap.as_f64());
    let mut out = Vec::with_capacity(layout.len());
    for q in layout.quantities() {
        let xs = pts.iter().map(|&(b, e)| match *q {
            "birth" => b,
            "death" => e,
            "lifespan" => e - b,
            _ => (b + e) / 2.0,
        });
        summary(xs.collect(), &mut out);
    }
    out.push(pts.len() as f64);
    out.push(entropy(&pts));
    DiagramStatistics {
        layout,
        values: out.into_iter().map(T::from_f64_lossy).collect(),
    }
}
