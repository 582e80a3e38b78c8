//! Deterministic SVG line charts for sweep results.
//!
//! Hand-rolled on purpose: the charts are plain log-log series plots,
//! and emitting the SVG directly keeps them a pure function of the CSV
//! rows — the same rows always produce byte-identical images.

use sinekan::experiments::SweepRow;
use sinekan::models::{Activation, ModelSpec};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 210.0;
const MARGIN_T: f64 = 48.0;
const MARGIN_B: f64 = 62.0;

/// Exact fits report zero error; clamp so they stay on the log axis.
const Y_FLOOR: f64 = 1e-16;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// Log axis spanning whole decades around the data.
struct LogAxis {
    lo: i32,
    hi: i32,
}

impl LogAxis {
    fn covering(values: impl Iterator<Item = f64>) -> Option<LogAxis> {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            let v = v.max(Y_FLOOR);
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() || !max.is_finite() {
            return None;
        }
        let mut lo = min.log10().floor() as i32;
        let mut hi = max.log10().ceil() as i32;
        if lo == hi {
            lo -= 1;
            hi += 1;
        }
        Some(LogAxis { lo, hi })
    }

    fn frac(&self, v: f64) -> f64 {
        (v.max(Y_FLOOR).log10() - self.lo as f64) / (self.hi - self.lo) as f64
    }

    fn tick_label(e: i32) -> String {
        if (0..=4).contains(&e) {
            format!("{}", 10f64.powi(e))
        } else {
            format!("1e{e}")
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Chart {
    /// Renders a log-log chart, or `None` when no series has a finite
    /// point to draw.
    pub fn render(&self) -> Option<String> {
        let finite: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|(x, y)| x.is_finite() && y.is_finite() && *x > 0.0)
            .collect();
        if finite.is_empty() {
            return None;
        }
        let x_axis = LogAxis::covering(finite.iter().map(|p| p.0))?;
        let y_axis = LogAxis::covering(finite.iter().map(|p| p.1))?;
        let plot_w = WIDTH - MARGIN_L - MARGIN_R;
        let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
        let px = |x: f64| MARGIN_L + x_axis.frac(x) * plot_w;
        let py = |y: f64| HEIGHT - MARGIN_B - y_axis.frac(y) * plot_h;

        let mut svg = String::new();
        let _ = write!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">\n"
        );
        let _ = write!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n");
        let _ = write!(
            svg,
            "<text x=\"{:.2}\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
            MARGIN_L + plot_w / 2.0,
            escape(&self.title)
        );

        // Decade grid lines and tick labels.
        for e in x_axis.lo..=x_axis.hi {
            let x = px(10f64.powi(e));
            let _ = write!(
                svg,
                "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>\n",
                MARGIN_T,
                HEIGHT - MARGIN_B
            );
            let _ = write!(
                svg,
                "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
                HEIGHT - MARGIN_B + 20.0,
                LogAxis::tick_label(e)
            );
        }
        for e in y_axis.lo..=y_axis.hi {
            let y = py(10f64.powi(e));
            let _ = write!(
                svg,
                "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>\n",
                MARGIN_L,
                WIDTH - MARGIN_R
            );
            let _ = write!(
                svg,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
                MARGIN_L - 8.0,
                y + 4.0,
                LogAxis::tick_label(e)
            );
        }

        // Axis frame and labels.
        let _ = write!(
            svg,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
             fill=\"none\" stroke=\"#333333\"/>\n",
            MARGIN_L, MARGIN_T
        );
        let _ = write!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_L + plot_w / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = write!(
            svg,
            "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" \
             transform=\"rotate(-90 20 {:.2})\">{}</text>\n",
            MARGIN_T + plot_h / 2.0,
            MARGIN_T + plot_h / 2.0,
            escape(&self.y_label)
        );

        // One polyline plus markers per series, colors cycling the palette.
        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let mut pts: Vec<(f64, f64)> = series
                .points
                .iter()
                .copied()
                .filter(|(x, y)| x.is_finite() && y.is_finite() && *x > 0.0)
                .collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            if pts.len() > 1 {
                let path: Vec<String> = pts
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                    .collect();
                let _ = write!(
                    svg,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                    path.join(" ")
                );
            }
            for &(x, y) in &pts {
                let _ = write!(
                    svg,
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{color}\"/>\n",
                    px(x),
                    py(y)
                );
            }
            let ly = MARGIN_T + 10.0 + 22.0 * i as f64;
            let lx = WIDTH - MARGIN_R + 16.0;
            let _ = write!(
                svg,
                "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" \
                 stroke=\"{color}\" stroke-width=\"2\"/>\n",
                lx + 22.0
            );
            let _ = write!(
                svg,
                "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
                lx + 28.0,
                ly + 4.0,
                escape(&series.label)
            );
        }

        svg.push_str("</svg>\n");
        Some(svg)
    }
}

/// Model family a spec string belongs to, used to group a budget
/// ladder's realized specs into one plot series.
fn family_label(spec_string: &str) -> String {
    match spec_string.parse::<ModelSpec>() {
        Ok(ModelSpec::SineKan1d { .. }) => "sinekan1d".to_string(),
        Ok(ModelSpec::SineKan2 { .. }) => "sinekan2".to_string(),
        Ok(ModelSpec::Mlp { activation, .. }) => match activation {
            Activation::Relu => "mlp:relu".to_string(),
            Activation::Sine => "mlp:sine".to_string(),
        },
        Ok(ModelSpec::Fourier1d { .. }) => "fourier".to_string(),
        Ok(ModelSpec::Fourier2d { .. }) => "fourier2d".to_string(),
        Err(_) => spec_string.to_string(),
    }
}

fn distinct<'a>(values: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = Vec::new();
    for v in values {
        if !seen.iter().any(|s: &String| s == v) {
            seen.push(v.to_string());
        }
    }
    seen
}

fn write_chart(chart: &Chart, path: PathBuf, written: &mut Vec<PathBuf>) -> io::Result<()> {
    if let Some(svg) = chart.render() {
        fs::write(&path, svg)?;
        written.push(path);
    }
    Ok(())
}

/// One chart per function: error versus grid size, one series per
/// model spec.
pub fn bench1d_charts(rows: &[SweepRow], out_dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for func in distinct(rows.iter().map(|r| r.func.as_str())) {
        let of_func: Vec<&SweepRow> = rows.iter().filter(|r| r.func == func).collect();
        let series = distinct(of_func.iter().map(|r| r.model_spec.as_str()))
            .into_iter()
            .map(|spec| Series {
                points: of_func
                    .iter()
                    .filter(|r| r.model_spec == spec)
                    .map(|r| (r.grid_n as f64, r.rel_l2))
                    .collect(),
                label: spec,
            })
            .collect();
        let chart = Chart {
            title: format!("{func}: error vs grid size"),
            x_label: "grid points".to_string(),
            y_label: "relative L2 error".to_string(),
            series,
        };
        write_chart(&chart, out_dir.join(format!("bench1d_{func}.svg")), &mut written)?;
    }
    Ok(written)
}

/// Two charts per function, matching the two budget views: error
/// versus parameter count and error versus FLOPs, one series per model
/// family.
pub fn bench2d_charts(rows: &[SweepRow], out_dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for func in distinct(rows.iter().map(|r| r.func.as_str())) {
        let of_func: Vec<&SweepRow> = rows.iter().filter(|r| r.func == func).collect();
        let labels: Vec<String> = of_func.iter().map(|r| family_label(&r.model_spec)).collect();
        let families = distinct(labels.iter().map(|s| s.as_str()));
        for (axis, x_label, suffix) in [
            (0usize, "parameters", "params"),
            (1usize, "FLOPs per evaluation", "flops"),
        ] {
            let series = families
                .iter()
                .map(|family| Series {
                    label: family.clone(),
                    points: of_func
                        .iter()
                        .filter(|r| family_label(&r.model_spec) == *family)
                        .map(|r| {
                            let x = if axis == 0 { r.param_count as f64 } else { r.flops };
                            (x, r.rel_l2)
                        })
                        .collect(),
                })
                .collect();
            let chart = Chart {
                title: format!("{func}: error vs {x_label}"),
                x_label: x_label.to_string(),
                y_label: "relative L2 error".to_string(),
                series,
            };
            write_chart(
                &chart,
                out_dir.join(format!("bench2d_{func}_{suffix}.svg")),
                &mut written,
            )?;
        }
    }
    Ok(written)
}
