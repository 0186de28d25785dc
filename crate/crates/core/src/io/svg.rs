use std::fmt::Write;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::arrangement::QuotientComplex;
use crate::error::{Error, Result};
use crate::labeling::LaurentMonomial;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 60.0;

/// Cell counts recorded in the `<metadata>` element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvgCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl SvgCounts {
    /// Read the counts back from a rendered document.
    pub fn from_svg(svg: &str) -> Option<SvgCounts> {
        let start = svg.find("<metadata>")? + "<metadata>".len();
        let end = svg[start..].find("</metadata>")? + start;
        serde_json::from_str(&svg[start..end]).ok()
    }
}

fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Draw the stored representative of every cell of a rank 2 quotient
/// complex in `z` coordinates, each labelled with its monomial.
pub fn render_svg(qc: &QuotientComplex, labels: &[LaurentMonomial]) -> Result<String> {
    if qc.m != 2 {
        return Err(Error::UnsupportedRank(qc.m));
    }
    let points: Vec<(f64, f64)> =
        qc.cells.iter().flat_map(|c| c.vertices.iter().map(|v| (to_f64(&v.z[0]), to_f64(&v.z[1])))).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    for &(x, y) in &points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
    let px = |x: f64| MARGIN + (x - x0) * scale;
    let py = |y: f64| SIZE - MARGIN - (y - y0) * scale;

    let counts = SvgCounts {
        vertices: qc.cells_of_dim(0).len(),
        edges: qc.cells_of_dim(1).len(),
        faces: qc.cells_of_dim(2).len(),
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, "<metadata>{}</metadata>", serde_json::to_string(&counts).expect("counts serialize"));
    let _ = writeln!(
        s,
        r#"<rect class="domain" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="grey" stroke-dasharray="4 4"/>"#,
        px(0.0),
        py(1.0),
        scale,
        scale
    );
    for k in qc.cells_of_dim(2) {
        let c = &qc.cells[k];
        let (cx, cy) = (to_f64(&c.sample[0]), to_f64(&c.sample[1]));
        let mut vs: Vec<(f64, f64)> = c.vertices.iter().map(|v| (to_f64(&v.z[0]), to_f64(&v.z[1]))).collect();
        vs.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
        let pts: Vec<String> = vs.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(s, r##"<polygon class="face" points="{}" fill="#dde8f5" stroke="none"/>"##, pts.join(" "));
    }
    for k in qc.cells_of_dim(1) {
        let c = &qc.cells[k];
        let (a, b) = (&c.vertices[0].z, &c.vertices[c.vertices.len() - 1].z);
        let _ = writeln!(
            s,
            r#"<line class="edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
            px(to_f64(&a[0])),
            py(to_f64(&a[1])),
            px(to_f64(&b[0])),
            py(to_f64(&b[1]))
        );
    }
    for k in qc.cells_of_dim(0) {
        let c = &qc.cells[k];
        let _ = writeln!(
            s,
            r#"<circle class="vertex" cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#,
            px(to_f64(&c.sample[0])),
            py(to_f64(&c.sample[1]))
        );
    }
    for (k, c) in qc.cells.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" font-family="monospace">{}</text>"#,
            px(to_f64(&c.sample[0])) + 5.0,
            py(to_f64(&c.sample[1])) - 5.0,
            escape(&labels[k].to_string())
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Deformation;
    use crate::fixtures::{projective_line, twice_blow_up_fan};
    use crate::pipeline::resolve;
    use crate::labeling::canonical_translate;
    use crate::verify::cell_labels;

    #[test]
    fn counts_match_cells() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let svg = render_svg(&r.qc, &cell_labels(&r.qc)).unwrap();
        let counts = SvgCounts::from_svg(&svg).unwrap();
        assert_eq!(vec![counts.vertices, counts.edges, counts.faces], r.complex.ranks());
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 2);
        assert_eq!(svg.matches(r#"class="edge""#).count(), 6);
        assert_eq!(svg.matches(r#"class="face""#).count(), 4);
        let extra = LaurentMonomial::parse("x2*y5/(x5*y2)", 5).unwrap();
        let lattice = &r.seq.lattice;
        let canon = canonical_translate(&extra, lattice).0;
        let drawn = cell_labels(&r.qc).into_iter().find(|l| canonical_translate(l, lattice).0 == canon).unwrap();
        assert!(svg.contains(&drawn.to_string()));
    }

    #[test]
    fn rank_one_is_rejected() {
        let r = resolve(&projective_line(), None, &Deformation::zero(2)).unwrap();
        assert!(render_svg(&r.qc, &cell_labels(&r.qc)).is_err());
    }
}
