//! Direct SVG rendering of scatter plots and learning curves; no plotting
//! dependency, so output bytes depend only on the data.

use suffstat_core::curves::LearningCurve;
use suffstat_core::experiments::{CorrelationSummary, ScatterRecord};

use crate::fmt::{sig, sig12};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;

struct Axis {
    min: f64,
    max: f64,
}

impl Axis {
    fn from_values<I: Iterator<Item = f64>>(values: I) -> Axis {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() || !max.is_finite() {
            return Axis { min: 0.0, max: 1.0 };
        }
        if min == max {
            // Degenerate span: widen symmetrically so points stay visible.
            let pad = if min == 0.0 { 1.0 } else { min.abs() * 0.1 };
            return Axis {
                min: min - pad,
                max: max + pad,
            };
        }
        let pad = (max - min) * 0.05;
        Axis {
            min: min - pad,
            max: max + pad,
        }
    }

    fn ticks(&self) -> Vec<f64> {
        (0..=4)
            .map(|i| self.min + (self.max - self.min) * f64::from(i) / 4.0)
            .collect()
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn map_x(axis: &Axis, v: f64) -> f64 {
    MARGIN_LEFT + (v - axis.min) / (axis.max - axis.min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
}

fn map_y(axis: &Axis, v: f64) -> f64 {
    HEIGHT - MARGIN_BOTTOM
        - (v - axis.min) / (axis.max - axis.min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
}

fn open_svg(out: &mut String, title: &str) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<text x=\"{}\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" \
         text-anchor=\"middle\">{}</text>\n",
        px(WIDTH / 2.0),
        escape(title)
    ));
}

fn draw_axes(out: &mut String, x_axis: &Axis, y_axis: &Axis, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(x0),
        px(y0),
        px(x1),
        px(y0)
    ));
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(x0),
        px(y0),
        px(x0),
        px(y1)
    ));

    for tick in x_axis.ticks() {
        let x = map_x(x_axis, tick);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(x),
            px(y0),
            px(x),
            px(y0 + 5.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            px(x),
            px(y0 + 20.0),
            sig(tick, 4)
        ));
    }
    for tick in y_axis.ticks() {
        let y = map_y(y_axis, tick);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(x0 - 5.0),
            px(y),
            px(x0),
            px(y)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>\n",
            px(x0 - 8.0),
            px(y + 4.0),
            sig(tick, 4)
        ));
    }

    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{}</text>\n",
        px((x0 + x1) / 2.0),
        px(HEIGHT - 15.0),
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
        px((y0 + y1) / 2.0),
        px((y0 + y1) / 2.0),
        escape(y_label)
    ));
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter of records with the OLS trend line and the R² annotation. The
/// annotated value is rendered with the same formatter as the JSON summary,
/// so the two always agree to the printed precision.
pub fn scatter_svg(
    title: &str,
    x_label: &str,
    y_label: &str,
    records: &[ScatterRecord],
    summary: Option<&CorrelationSummary>,
) -> String {
    let x_axis = Axis::from_values(records.iter().map(|r| r.effect_size));
    let y_axis = Axis::from_values(records.iter().map(|r| r.outcome));

    let mut out = String::new();
    open_svg(&mut out, title);
    draw_axes(&mut out, &x_axis, &y_axis, x_label, y_label);

    for r in records {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n",
            px(map_x(&x_axis, r.effect_size)),
            px(map_y(&y_axis, r.outcome))
        ));
    }

    if let Some(s) = summary {
        let y_at = |x: f64| s.intercept + s.slope * x;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"crimson\" \
             stroke-width=\"1.5\"/>\n",
            px(map_x(&x_axis, x_axis.min)),
            px(map_y(&y_axis, y_at(x_axis.min))),
            px(map_x(&x_axis, x_axis.max)),
            px(map_y(&y_axis, y_at(x_axis.max)))
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" \
             text-anchor=\"end\">R&#178; = {}</text>\n",
            px(WIDTH - MARGIN_RIGHT - 10.0),
            px(MARGIN_TOP + 10.0),
            sig12(s.r_squared)
        ));
    }

    out.push_str("</svg>\n");
    out
}

/// Train/validation error curves against training size.
pub fn curve_svg(title: &str, curve: &LearningCurve) -> String {
    let x_axis = Axis::from_values(curve.points.iter().map(|p| p.n_train as f64));
    let y_axis = Axis::from_values(
        curve
            .points
            .iter()
            .flat_map(|p| [p.train_error, p.valid_error]),
    );

    let mut out = String::new();
    open_svg(&mut out, title);
    draw_axes(&mut out, &x_axis, &y_axis, "training rows", "error");

    for (selector, color) in [(0usize, "steelblue"), (1usize, "crimson")] {
        let path: Vec<String> = curve
            .points
            .iter()
            .map(|p| {
                let y = if selector == 0 { p.train_error } else { p.valid_error };
                format!(
                    "{},{}",
                    px(map_x(&x_axis, p.n_train as f64)),
                    px(map_y(&y_axis, y))
                )
            })
            .collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
            path.join(" "),
            color
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"steelblue\">train</text>\n",
        px(WIDTH - 120.0),
        px(MARGIN_TOP + 10.0)
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"crimson\">validation</text>\n",
        px(WIDTH - 120.0),
        px(MARGIN_TOP + 26.0)
    ));
    out.push_str("</svg>\n");
    out
}
