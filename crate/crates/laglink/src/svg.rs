//! SVG rendering of tropical curve configurations.
//!
//! Fixed viewport: the bounding box of the two anchors padded by 3 units.
//! One `<g>` per curve, polylines for bounded edges, rays clipped at the
//! viewport edge, multiplicity shown by stroke width, anchors marked as
//! filled dots.

use std::fmt::Write as _;
use std::path::Path;

use crate::tropical::{EdgeGeometry, TropicalConfig, TropicalCurve};

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error("nothing to render: empty curve list")]
    EmptyCurveList,
    #[error("io error writing svg: {0}")]
    Io(#[from] std::io::Error),
}

const PAD: f64 = 3.0;
const SCALE: f64 = 40.0;

const PALETTE: [&str; 6] = [
    "#1965b0", "#dc050c", "#4eb265", "#f7a600", "#882e72", "#207070",
];

struct Frame {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Frame {
    fn around(cfg: &TropicalConfig) -> Frame {
        let xs = [cfg.p_prime.x.to_f64(), cfg.p_dprime.x.to_f64()];
        let ys = [cfg.p_prime.y.to_f64(), cfg.p_dprime.y.to_f64()];
        Frame {
            min_x: xs[0].min(xs[1]) - PAD,
            max_x: xs[0].max(xs[1]) + PAD,
            min_y: ys[0].min(ys[1]) - PAD,
            max_y: ys[0].max(ys[1]) + PAD,
        }
    }

    /// Math coordinates to SVG pixels (y flipped).
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min_x) * SCALE, (self.max_y - y) * SCALE)
    }

    fn width(&self) -> f64 {
        (self.max_x - self.min_x) * SCALE
    }

    fn height(&self) -> f64 {
        (self.max_y - self.min_y) * SCALE
    }

    /// Largest `t >= 0` with `base + t·dir` still inside the frame.
    fn clip_ray(&self, base: (f64, f64), dir: (f64, f64)) -> f64 {
        let mut t_exit = f64::INFINITY;
        for (b, d, lo, hi) in [
            (base.0, dir.0, self.min_x, self.max_x),
            (base.1, dir.1, self.min_y, self.max_y),
        ] {
            if d > 0.0 {
                t_exit = t_exit.min((hi - b) / d);
            } else if d < 0.0 {
                t_exit = t_exit.min((lo - b) / d);
            }
        }
        if t_exit.is_finite() {
            t_exit.max(0.0)
        } else {
            0.0
        }
    }
}

pub fn svg_string(curves: &[TropicalCurve], cfg: &TropicalConfig) -> Result<String, SvgError> {
    if curves.is_empty() {
        return Err(SvgError::EmptyCurveList);
    }
    let frame = Frame::around(cfg);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.2} {:.2}\" width=\"{:.0}\" height=\"{:.0}\">",
        frame.width(),
        frame.height(),
        frame.width(),
        frame.height()
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#ffffff\"/>",
        frame.width(),
        frame.height()
    );

    for (i, curve) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            "  <g id=\"curve-{i}\" stroke=\"{color}\" fill=\"none\">"
        );
        for edge in &curve.edges {
            let width = 1.5 * edge.weight() as f64;
            match edge.geometry {
                EdgeGeometry::Segment { from, to } => {
                    let (x1, y1) = frame.map(from.x.to_f64(), from.y.to_f64());
                    let (x2, y2) = frame.map(to.x.to_f64(), to.y.to_f64());
                    let _ = writeln!(
                        out,
                        "    <polyline points=\"{x1:.2},{y1:.2} {x2:.2},{y2:.2}\" stroke-width=\"{width:.1}\"/>"
                    );
                }
                EdgeGeometry::Ray { base } => {
                    let b = (base.x.to_f64(), base.y.to_f64());
                    let d = (edge.weighted_dir.0 as f64, edge.weighted_dir.1 as f64);
                    let norm = (d.0 * d.0 + d.1 * d.1).sqrt().max(1e-12);
                    let dir = (d.0 / norm, d.1 / norm);
                    let t = frame.clip_ray(b, dir);
                    let tip = (b.0 + t * dir.0, b.1 + t * dir.1);
                    let (x1, y1) = frame.map(b.0, b.1);
                    let (x2, y2) = frame.map(tip.0, tip.1);
                    let _ = writeln!(
                        out,
                        "    <polyline points=\"{x1:.2},{y1:.2} {x2:.2},{y2:.2}\" stroke-width=\"{width:.1}\" stroke-dasharray=\"none\"/>"
                    );
                }
            }
        }
        let _ = writeln!(out, "  </g>");
    }

    for (p, label) in [(cfg.p_prime, "p'"), (cfg.p_dprime, "p''")] {
        let (x, y) = frame.map(p.x.to_f64(), p.y.to_f64());
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#000000\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" font-family=\"sans-serif\">{label}</text>",
            x + 6.0,
            y - 6.0
        );
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

/// Write the rendering to a file.
pub fn render_svg(
    curves: &[TropicalCurve],
    cfg: &TropicalConfig,
    out_path: &Path,
) -> Result<(), SvgError> {
    let doc = svg_string(curves, cfg)?;
    std::fs::write(out_path, doc)?;
    Ok(())
}
