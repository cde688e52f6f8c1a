//! CSV and SVG writers. CSV is the contract: header row, comma separation,
//! 17-significant-digit floats (round-trip exact), `#`-prefixed metadata
//! lines carrying the scenario hash and a parameter echo. SVG plots are a
//! convenience rendering of the same data.

use std::io::Write;
use std::path::Path;

pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    out: std::io::BufWriter<std::fs::File>,
}

impl CsvWriter {
    pub fn create(
        path: &Path,
        hash: &str,
        meta: &[(&str, String)],
        header: &[&str],
    ) -> std::io::Result<CsvWriter> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "# scenario-hash = {hash}")?;
        for (k, v) in meta {
            writeln!(out, "# {k} = {v}")?;
        }
        writeln!(out, "{}", header.join(","))?;
        Ok(CsvWriter { out })
    }

    pub fn row(&mut self, values: &[f64]) -> std::io::Result<()> {
        let cells: Vec<String> = values.iter().map(|v| fmt(*v)).collect();
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}

/// Two stacked panels: exchanged flux J(z) on top, bare-state populations
/// below, one polyline per series.
pub struct SvgPlot {
    pub z: Vec<f64>,
    pub j: Vec<f64>,
    pub populations: [Vec<f64>; 3],
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const PANEL_H: f64 = 180.0;
const MARGIN: f64 = 42.0;

impl SvgPlot {
    pub fn write(&self, path: &Path, title: &str) -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut s = String::new();
        s.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
        ));
        s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        s.push_str(&format!(
            "<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">{title}</text>\n",
            MARGIN
        ));
        let zmax = self.z.last().copied().unwrap_or(1.0).max(1e-300);
        let jmax = self.j.iter().cloned().fold(1e-300, f64::max);
        s.push_str(&panel(
            &self.z,
            &[(&self.j, "#1f6fb2")],
            zmax,
            jmax.max(1e-12),
            30.0,
            "J(z)",
        ));
        let popmax = 1.0;
        s.push_str(&panel(
            &self.z,
            &[
                (&self.populations[0], "#1f6fb2"),
                (&self.populations[1], "#b2451f"),
                (&self.populations[2], "#3a9e4e"),
            ],
            zmax,
            popmax,
            30.0 + PANEL_H + 30.0,
            "populations 1,2,3",
        ));
        s.push_str("</svg>\n");
        std::fs::write(path, s)
    }
}

fn panel(
    z: &[f64],
    series: &[(&Vec<f64>, &str)],
    zmax: f64,
    ymax: f64,
    top: f64,
    label: &str,
) -> String {
    let mut s = String::new();
    let x0 = MARGIN;
    let x1 = W - 20.0;
    let y0 = top + PANEL_H;
    let y1 = top;
    s.push_str(&format!(
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{}\" height=\"{PANEL_H}\" fill=\"none\" stroke=\"#888\"/>\n",
        x1 - x0
    ));
    s.push_str(&format!(
        "<text x=\"{x0}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">{label}</text>\n",
        y1 - 6.0
    ));
    for (values, color) in series {
        let mut pts = String::new();
        for (i, &zi) in z.iter().enumerate() {
            if i >= values.len() {
                break;
            }
            let x = x0 + (x1 - x0) * zi / zmax;
            let y = y0 - PANEL_H * (values[i] / ymax).clamp(0.0, 1.0);
            pts.push_str(&format!("{x:.2},{y:.2} "));
        }
        s.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.4\"/>\n",
            pts.trim_end()
        ));
    }
    s
}
