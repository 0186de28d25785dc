use std::fmt::Write;

use crate::complex::{jl_binomials, BoundaryMatrix, GradedFreeComplex};
use crate::labeling::LaurentMonomial;
use crate::poly::Poly;

fn monomial_m2(m: &LaurentMonomial) -> String {
    let mut factors = Vec::new();
    for (name, exps) in [("x", &m.x), ("y", &m.y)] {
        for (i, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("{name}_{}", i + 1)),
                _ => factors.push(format!("{name}_{}^({e})", i + 1)),
            }
        }
    }
    if factors.is_empty() { "1".into() } else { factors.join("*") }
}

fn poly_m2(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().map(|(m, k)| format!("({k})*{}", monomial_m2(m))).collect::<Vec<_>>().join(" + ")
}

fn matrix_m2(mat: &BoundaryMatrix) -> String {
    let rows: Vec<String> =
        mat.entries.iter().map(|r| format!("{{{}}}", r.iter().map(poly_m2).collect::<Vec<_>>().join(", "))).collect();
    format!("map(S^{}, S^{}, {{{}}})", mat.rows, mat.cols, rows.join(", "))
}

/// A Macaulay2 script defining the ring, the binomial ideal and the
/// differentials, asserting `d^2 = 0` and printing the homology.
pub fn macaulay2_script(c: &GradedFreeComplex) -> String {
    let n = c.n;
    let mut s = String::new();
    let _ = writeln!(s, "-- cellular complex, {n} rays, ranks {:?}", c.ranks());
    let _ = writeln!(s, "S = QQ[x_1..x_{n}, y_1..y_{n}];");
    for (d, mat) in c.boundaries.iter().enumerate() {
        let _ = writeln!(s, "d{} = {};", d + 1, matrix_m2(mat));
    }
    for d in 1..c.boundaries.len() {
        let _ = writeln!(s, "assert(d{d} * d{} == 0);", d + 1);
    }
    let bins: Vec<String> = jl_binomials(c).iter().map(|b| format!("{} - {}", monomial_m2(&b.plus), monomial_m2(&b.minus))).collect();
    let _ = writeln!(s, "J = ideal({});", if bins.is_empty() { "0_S".to_string() } else { bins.join(", ") });
    let maps: Vec<String> = (1..=c.boundaries.len()).map(|d| format!("d{d}")).collect();
    let _ = writeln!(s, "C = chainComplex{{{}}};", maps.join(", "));
    let _ = writeln!(s, "for i from 1 to length C do print(i, prune HH_i C);");
    let _ = writeln!(s, "print J;");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Deformation;
    use crate::fixtures::{blow_up_basis, blow_up_fan};
    use crate::pipeline::resolve;

    #[test]
    fn script_mentions_every_differential() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        let s = macaulay2_script(&r.complex);
        assert!(s.contains("S = QQ[x_1..x_4, y_1..y_4];"));
        assert!(s.contains("d1 = map(S^1, S^3"));
        assert!(s.contains("d2 = map(S^3, S^2"));
        assert!(s.contains("assert(d1 * d2 == 0);"));
        assert!(s.contains("x_1*y_3"));
        assert_eq!(monomial_m2(&LaurentMonomial::parse("x1^2*y3", 4).unwrap()), "x_1^(2)*y_3");
    }
}
