//! Minimal deterministic SVG charts: a scatter plot with threshold lines
//! and bar-style histograms. Coordinates are formatted with fixed
//! precision so identical input produces identical bytes.

use crate::hist::Histogram;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

struct Axis {
    min: f64,
    max: f64,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>) -> Self {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() || !max.is_finite() {
            min = 0.0;
            max = 1.0;
        }
        if min == max {
            min -= 1.0;
            max += 1.0;
        }
        // A small margin keeps edge points visible.
        let pad = (max - min) * 0.05;
        Self { min: min - pad, max: max + pad }
    }

    fn to_x(&self, v: f64) -> f64 {
        MARGIN_LEFT + (v - self.min) / (self.max - self.min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn to_y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (v - self.min) / (self.max - self.min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{:.2}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\">{title}</text>\n",
        WIDTH / 2.0
    )
}

fn axes(x_label: &str, y_label: &str) -> String {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    format!(
        "<line class=\"axis\" x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>\n\
         <line class=\"axis\" x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"black\"/>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{x_label}</text>\n\
         <text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" \
         transform=\"rotate(-90 16 {:.2})\">{y_label}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
    )
}

fn range_labels(axis: &Axis, horizontal: bool) -> String {
    if horizontal {
        format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{:.1}</text>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{:.1}</text>\n",
            axis.to_x(axis.min), HEIGHT - MARGIN_BOTTOM + 16.0, axis.min,
            axis.to_x(axis.max), HEIGHT - MARGIN_BOTTOM + 16.0, axis.max,
        )
    } else {
        format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{:.1}</text>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{:.1}</text>\n",
            MARGIN_LEFT - 6.0, axis.to_y(axis.min), axis.min,
            MARGIN_LEFT - 6.0, axis.to_y(axis.max), axis.max,
        )
    }
}

/// Scatter of (x, y) points with one vertical and one horizontal
/// threshold line.
pub fn scatter_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[(f64, f64)],
    x_threshold: f64,
    y_threshold: f64,
) -> String {
    let xs = Axis::new(points.iter().map(|p| p.0).chain([x_threshold]));
    let ys = Axis::new(points.iter().map(|p| p.1).chain([y_threshold]));

    let mut out = header(title);
    out.push_str(&axes(x_label, y_label));
    out.push_str(&range_labels(&xs, true));
    out.push_str(&range_labels(&ys, false));
    out.push_str(&format!(
        "<line class=\"threshold\" x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{y1:.2}\" \
         stroke=\"crimson\" stroke-dasharray=\"4 3\"/>\n",
        x = xs.to_x(x_threshold),
        y0 = HEIGHT - MARGIN_BOTTOM,
        y1 = MARGIN_TOP,
    ));
    out.push_str(&format!(
        "<line class=\"threshold\" x1=\"{x0:.2}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\" \
         stroke=\"crimson\" stroke-dasharray=\"4 3\"/>\n",
        x0 = MARGIN_LEFT,
        x1 = WIDTH - MARGIN_RIGHT,
        y = ys.to_y(y_threshold),
    ));
    for &(x, y) in points {
        out.push_str(&format!(
            "<circle class=\"pt\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"steelblue\" \
             fill-opacity=\"0.6\"/>\n",
            xs.to_x(x),
            ys.to_y(y),
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Bar rendering of an equal-width histogram.
pub fn histogram_chart(title: &str, x_label: &str, hist: &Histogram) -> String {
    let xs = Axis::new([hist.min, hist.max].into_iter());
    let max_count = hist.counts.iter().copied().max().unwrap_or(1).max(1);
    let ys = Axis::new([0.0, max_count as f64].into_iter());

    let mut out = header(title);
    out.push_str(&axes(x_label, "count"));
    out.push_str(&range_labels(&xs, true));
    out.push_str(&range_labels(&ys, false));
    let span = if hist.max > hist.min {
        hist.max - hist.min
    } else {
        1.0
    };
    let bin_w = span / hist.counts.len() as f64;
    for (i, &count) in hist.counts.iter().enumerate() {
        let left = hist.min + bin_w * i as f64;
        let x0 = xs.to_x(left);
        let x1 = xs.to_x(left + bin_w);
        let y = ys.to_y(count as f64);
        let base = ys.to_y(0.0);
        out.push_str(&format!(
            "<rect class=\"bar\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"steelblue\" stroke=\"white\"/>\n",
            x0,
            y,
            (x1 - x0).max(0.5),
            (base - y).max(0.0),
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hist::histogram;

    #[test]
    fn scatter_has_points_and_thresholds() {
        let pts = [(70.0, 40.0), (70.0, 60.0), (45.0, 40.0), (45.0, 60.0)];
        let svg = scatter_chart("skin color", "L*", "h*", &pts, 60.0, 55.0);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("class=\"threshold\"").count(), 2);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn chart_output_is_deterministic() {
        let pts = [(1.25, 3.5), (2.0, 9.125)];
        let a = scatter_chart("t", "x", "y", &pts, 1.5, 4.0);
        let b = scatter_chart("t", "x", "y", &pts, 1.5, 4.0);
        assert_eq!(a, b);
        let h = histogram(&[1.0, 2.0, 3.0, 3.2], 4);
        assert_eq!(histogram_chart("h", "x", &h), histogram_chart("h", "x", &h));
    }

    #[test]
    fn histogram_emits_one_bar_per_bin() {
        let h = histogram(&[0.0, 0.1, 0.9, 1.0], 8);
        let svg = histogram_chart("h", "x", &h);
        assert_eq!(svg.matches("class=\"bar\"").count(), 8);
    }
}
