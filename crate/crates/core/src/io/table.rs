use std::fmt::Write;

use crate::complex::GradedFreeComplex;

fn fmt_vec(v: &[i64]) -> String {
    format!("({})", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
}

/// One row per generator: name, label and degree `(x-degree) x (y-degree)`.
pub fn label_table(c: &GradedFreeComplex) -> String {
    let names = ['v', 'E', 'F', 'G'];
    let mut rows = vec![("cell".to_string(), "label".to_string(), "degree".to_string())];
    for (d, gens) in c.generators.iter().enumerate() {
        for (k, g) in gens.iter().enumerate() {
            let name = format!("{}{}", names.get(d).copied().unwrap_or('C'), k + 1);
            rows.push((name, g.label.to_string(), format!("{} x {}", fmt_vec(&g.degree.x), fmt_vec(&g.degree.y))));
        }
    }
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (i, (a, b, c)) in rows.iter().enumerate() {
        let _ = writeln!(s, "{a:<w0$} | {b:<w1$} | {c}");
        if i == 0 {
            let _ = writeln!(s, "{}-+-{}-+-{}", "-".repeat(w0), "-".repeat(w1), "-".repeat(6));
        }
    }
    s
}

/// Labels followed by every differential.
pub fn complex_table(c: &GradedFreeComplex) -> String {
    let mut s = format!("ranks {:?}\n\n", c.ranks());
    s.push_str(&label_table(c));
    for (d, mat) in c.boundaries.iter().enumerate() {
        let _ = write!(s, "\nd{}:\n{}", d + 1, mat);
    }
    s
}
