//! Persistence diagrams as standalone SVG files.

use std::fmt::Write;

use crate::output::{CombinationRecord, Points};
use crate::Result;

const PANEL: f64 = 220.0;
const MARGIN: f64 = 36.0;
const COLORS: [&str; 3] = ["#1f77b4", "#ff7f0e", "#2ca02c"];

/// Counts of drawn markers, reported alongside the image.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PlotSummary {
    pub finite: usize,
    pub essential: usize,
    pub hidden: usize,
}

fn color_of(name: &str) -> &'static str {
    let degree = name.rsplit("deg").next().and_then(|d| d.parse::<usize>().ok()).unwrap_or(0);
    COLORS[degree.min(COLORS.len() - 1)]
}

/// File name stem for a record: its species joined by `+`.
pub fn record_stem(record: &CombinationRecord) -> String {
    record.labels.join("+")
}

/// One panel per diagram, left to right in stored order. Finite points with
/// persistence below `threshold` are omitted; essential classes are drawn
/// as triangles on the top border.
pub fn render_svg(record: &CombinationRecord, threshold: f64) -> Result<(String, PlotSummary)> {
    let panels = record.diagram_points()?;
    let top = axis_top(record.cap, &panels);
    let width = MARGIN + panels.len().max(1) as f64 * (PANEL + MARGIN);
    let height = PANEL + 2.5 * MARGIN;
    let mut summary = PlotSummary::default();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="16" font-size="13">{} (k = {})</text>"#,
        escape(&record.labels.join(" + ")),
        record.k
    );
    for (i, (name, points)) in panels.iter().enumerate() {
        let x0 = MARGIN + i as f64 * (PANEL + MARGIN);
        let y0 = 1.5 * MARGIN;
        let px = |v: f64| x0 + v / top * PANEL;
        let py = |v: f64| y0 + PANEL - v / top * PANEL;
        let color = color_of(name);
        let _ = writeln!(s, r#"<g class="panel" data-diagram="{name}">"#);
        let _ = writeln!(
            s,
            r##"<rect x="{x0}" y="{y0}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#444"/>"##
        );
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{}" x2="{}" y2="{y0}" stroke="#999" stroke-dasharray="4 3"/>"##,
            y0 + PANEL,
            x0 + PANEL
        );
        let _ = writeln!(s, r#"<text x="{x0}" y="{}">{name}</text>"#, y0 - 6.0);
        let _ = writeln!(s, r#"<text x="{x0}" y="{}">0</text>"#, y0 + PANEL + 14.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{top:.3}</text>"#, x0 + PANEL, y0 + PANEL + 14.0);
        for &(b, d) in points {
            match d.value() {
                Some(d) if d - b >= threshold => {
                    summary.finite += 1;
                    let _ = writeln!(
                        s,
                        r#"<circle class="finite" cx="{:.3}" cy="{:.3}" r="3" fill="{color}" fill-opacity="0.8"/>"#,
                        px(b),
                        py(d)
                    );
                }
                Some(_) => summary.hidden += 1,
                None => {
                    summary.essential += 1;
                    let (x, y) = (px(b), y0);
                    let _ = writeln!(
                        s,
                        r#"<path class="essential" d="M{:.3} {:.3} L{:.3} {:.3} L{:.3} {:.3} Z" fill="{color}"/>"#,
                        x - 4.0,
                        y + 6.0,
                        x + 4.0,
                        y + 6.0,
                        x,
                        y
                    );
                }
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok((s, summary))
}

fn axis_top(cap: f64, panels: &[(String, Points)]) -> f64 {
    let data = panels
        .iter()
        .flat_map(|(_, p)| p.iter().flat_map(|&(b, d)| [Some(b), d.value()]))
        .flatten()
        .fold(0.0, f64::max);
    let top = cap.max(data);
    if top > 0.0 && top.is_finite() {
        top
    } else {
        1.0
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::Death;

    fn record() -> CombinationRecord {
        let mut diagrams = serde_json::Map::new();
        let deg0: Points = vec![(0.0, Death::Finite(0.01)), (0.0, Death::Finite(0.4)), (0.0, Death::from_f64(f64::INFINITY))];
        let deg1: Points = vec![(0.2, Death::Finite(0.9))];
        diagrams.insert("domain_deg0".into(), serde_json::to_value(deg0).unwrap());
        diagrams.insert("domain_deg1".into(), serde_json::to_value(deg1).unwrap());
        CombinationRecord {
            labels: vec!["A".into()],
            species: vec![10],
            k: 1,
            map: "filtration".into(),
            cap: 1.25,
            diagrams,
        }
    }

    #[test]
    fn markers_respect_threshold() {
        let (svg, summary) = render_svg(&record(), 0.05).unwrap();
        assert_eq!(summary, PlotSummary { finite: 2, essential: 1, hidden: 1 });
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches(r#"class="essential""#).count(), 1);
        assert_eq!(svg.matches(r#"class="panel""#).count(), 2);
        let (_, all) = render_svg(&record(), 0.001).unwrap();
        assert_eq!(all.finite, 3);
    }
}
