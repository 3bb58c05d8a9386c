//! File and figure emission: atomic writes, CSV number formatting and a
//! minimal SVG 1.1 meridional plot.

use std::io::Write;
use std::path::Path;

/// Writes via a temporary file in the target directory plus rename, so a
/// crash never leaves a half-written artifact.
pub fn atomic_write(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Full-precision float: round-trips through the textual representation.
pub fn csv_num(v: f64) -> String {
    format!("{v:.17e}")
}

/// Stroke role of one plotted curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveStyle {
    /// Nodal line (level 0): stroked heavier, as in the source figures.
    Nodal,
    /// Critical (stagnation) level: dashed separatrix.
    Critical,
    Ordinary,
}

pub struct SvgPlot {
    curves: Vec<(Vec<(f64, f64)>, CurveStyle)>,
    markers: Vec<(f64, f64)>,
}

impl SvgPlot {
    pub fn new() -> Self {
        Self {
            curves: Vec::new(),
            markers: Vec::new(),
        }
    }

    /// Adds a meridional curve given as (rho, eta) vertices, eta <= 0.
    pub fn curve(&mut self, pts: Vec<(f64, f64)>, style: CurveStyle) {
        if pts.len() >= 2 {
            self.curves.push((pts, style));
        }
    }

    pub fn marker(&mut self, rho: f64, eta: f64) {
        self.markers.push((rho, eta));
    }

    /// Renders with depth drawn downward. One root element, viewBox present.
    pub fn render(&self) -> String {
        let mut xmax = 1.0_f64;
        let mut ymax = 1.0_f64;
        for (pts, _) in &self.curves {
            for &(x, y) in pts {
                xmax = xmax.max(x);
                ymax = ymax.max(-y);
            }
        }
        for &(x, y) in &self.markers {
            xmax = xmax.max(x);
            ymax = ymax.max(-y);
        }
        let scale = 60.0;
        let margin = 20.0;
        let w = xmax * scale + 2.0 * margin;
        let h = ymax * scale + 2.0 * margin;
        let tx = |x: f64| margin + x * scale;
        let ty = |y: f64| margin - y * scale;
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             viewBox=\"0 0 {w:.1} {h:.1}\" width=\"{w:.1}\" height=\"{h:.1}\">\n"
        ));
        // free surface
        out.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
             stroke=\"#888\" stroke-width=\"0.5\"/>\n",
            tx(0.0),
            ty(0.0),
            tx(xmax),
            ty(0.0)
        ));
        for (pts, style) in &self.curves {
            let attrs = match style {
                CurveStyle::Nodal => "stroke=\"black\" stroke-width=\"2.5\"",
                CurveStyle::Critical => {
                    "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\""
                }
                CurveStyle::Ordinary => "stroke=\"black\" stroke-width=\"1\"",
            };
            let coords: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y)))
                .collect();
            out.push_str(&format!(
                "  <polyline fill=\"none\" {attrs} points=\"{}\"/>\n",
                coords.join(" ")
            ));
        }
        for &(x, y) in &self.markers {
            out.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"black\"/>\n",
                tx(x),
                ty(y)
            ));
        }
        out.push_str("</svg>\n");
        out
    }
}
