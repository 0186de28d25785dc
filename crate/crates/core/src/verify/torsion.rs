//! Certificates that each extra vertex monomial is killed by a power of the
//! irrelevant ideal modulo the lattice module:
//! `(x^{s1^} y^{s2^})^k x^f/y^f = x^alpha y^beta x^u/y^u` with `u` in `L`
//! and `alpha, beta >= 0`, where `s^` is the complement of a cone's rays.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{feasible_point, rat, solve_linear, to_i64, Constraint, Lattice, Rat, RatMatrix};
use crate::arrangement::QuotientComplex;
use crate::exec::Exec;
use crate::fan::ExactSeq;
use crate::labeling::{vertex_label, LaurentMonomial};

/// Search bound on `k`, `l` and the size of `u` relative to `f`.
pub const SEARCH_BOUND: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum CertificateError {
    #[error("rays of cone {0:?} do not determine an integral lattice point")]
    NotUnimodular(Vec<usize>),
    #[error("no separating functional for cones {0:?} and {1:?}")]
    NoSeparator(Vec<usize>, Vec<usize>),
    #[error("search bound {bound} reached for {what}")]
    Bound { what: &'static str, bound: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub vertex: Option<usize>,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub floor: Vec<i64>,
    pub k: i64,
    pub ell: i64,
    pub u: Vec<i64>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl TorsionCertificate {
    /// Re-check the identity by exponent arithmetic.
    pub fn verify(&self, lattice: &Lattice) -> bool {
        let n = self.floor.len();
        let hat = |s: &[usize], i: usize| i64::from(!s.contains(&i));
        let lhs_x: Vec<i64> = (0..n).map(|i| self.k * hat(&self.sigma1, i) + self.floor[i]).collect();
        let lhs_y: Vec<i64> = (0..n).map(|i| self.k * hat(&self.sigma2, i) - self.floor[i]).collect();
        let rhs_x: Vec<i64> = (0..n).map(|i| self.alpha[i] + self.u[i]).collect();
        let rhs_y: Vec<i64> = (0..n).map(|i| self.beta[i] - self.u[i]).collect();
        lhs_x == rhs_x
            && lhs_y == rhs_y
            && self.k >= 0
            && self.alpha.iter().chain(&self.beta).all(|&e| e >= 0)
            && lattice.contains(&self.u)
    }

    /// `x^u / y^u`.
    pub fn lattice_monomial(&self) -> LaurentMonomial {
        LaurentMonomial::new(self.u.clone(), self.u.iter().map(|e| -e).collect())
    }

    /// `x^alpha y^beta`.
    pub fn multiplier(&self) -> LaurentMonomial {
        LaurentMonomial::new(self.alpha.clone(), self.beta.clone())
    }
}

fn integral(v: &[Rat]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.is_integer().then(|| to_i64(x.numer()))).collect()
}

/// Follow the constructive proof: `u1` agrees with `f` on the rays of `s1`,
/// `u2` separates the two cones, and `u = u1 + l*u2` for the least `l`.
pub fn torsion_certificate(
    seq: &ExactSeq,
    f: &[i64],
    sigma1: &[usize],
    sigma2: &[usize],
) -> Result<TorsionCertificate, CertificateError> {
    let b = seq.b.to_i64_rows();
    let (n, m) = (seq.n(), seq.m());
    let row = |i: usize| -> Vec<Rat> { b[i].iter().map(|&x| rat(x)).collect() };

    let a = RatMatrix::from_rows(&sigma1.iter().map(|&i| row(i)).collect::<Vec<_>>(), m);
    let rhs: Vec<Rat> = sigma1.iter().map(|&i| rat(f[i])).collect();
    let w1 = solve_linear(&a, &rhs)
        .and_then(|w| integral(&w))
        .ok_or_else(|| CertificateError::NotUnimodular(sigma1.to_vec()))?;
    let u1 = seq.lattice.apply(&w1);

    let mut cs = Vec::new();
    for i in 0..n {
        match (sigma1.contains(&i), sigma2.contains(&i)) {
            (true, true) => cs.push(Constraint::eq(row(i), Rat::zero())),
            (false, true) => cs.push(Constraint::gt(row(i), Rat::zero())),
            (true, false) => cs.push(Constraint::lt(row(i), Rat::zero())),
            (false, false) => {}
        }
    }
    let w2 = feasible_point(&cs, m).ok_or_else(|| CertificateError::NoSeparator(sigma1.to_vec(), sigma2.to_vec()))?;
    let denom = w2.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let w2: Vec<i64> = w2.iter().map(|x| to_i64(&(x * Rat::from_integer(denom.clone())).to_integer())).collect();
    let u2 = seq.lattice.apply(&w2);

    let only2: Vec<usize> = sigma2.iter().copied().filter(|i| !sigma1.contains(i)).collect();
    let ell = (0..=SEARCH_BOUND)
        .find(|&l| only2.iter().all(|&i| u1[i] + l * u2[i] >= f[i]))
        .ok_or(CertificateError::Bound { what: "l", bound: SEARCH_BOUND })?;
    let u: Vec<i64> = (0..n).map(|i| u1[i] + ell * u2[i]).collect();
    let scale = SEARCH_BOUND * f.iter().map(|e| e.abs()).max().unwrap_or(0).max(1);
    if u.iter().any(|e| e.abs() > scale) {
        return Err(CertificateError::Bound { what: "u", bound: scale });
    }

    let mut k = 0;
    for i in 0..n {
        if !sigma1.contains(&i) {
            k = k.max(u[i] - f[i]);
        }
        if !sigma2.contains(&i) {
            k = k.max(f[i] - u[i]);
        }
    }
    if k > SEARCH_BOUND {
        return Err(CertificateError::Bound { what: "k", bound: SEARCH_BOUND });
    }
    let hat = |s: &[usize], i: usize| i64::from(!s.contains(&i));
    let alpha: Vec<i64> = (0..n).map(|i| k * hat(sigma1, i) + f[i] - u[i]).collect();
    let beta: Vec<i64> = (0..n).map(|i| k * hat(sigma2, i) - f[i] + u[i]).collect();
    if alpha.iter().chain(&beta).any(|e| e.is_negative()) {
        return Err(CertificateError::Bound { what: "k", bound: SEARCH_BOUND });
    }
    Ok(TorsionCertificate {
        vertex: None,
        sigma1: sigma1.to_vec(),
        sigma2: sigma2.to_vec(),
        floor: f.to_vec(),
        k,
        ell,
        u,
        alpha,
        beta,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateFailure {
    pub vertex: usize,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CokernelReport {
    pub certificates: Vec<TorsionCertificate>,
    pub failures: Vec<CertificateFailure>,
}

impl CokernelReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Floor exponents of each vertex class representative.
pub fn vertex_floors(qc: &QuotientComplex) -> Vec<Vec<i64>> {
    qc.cells_of_dim(0).map(|k| vertex_label(&qc.ambient(&qc.cells[k].sample)).x).collect()
}

/// A certificate for every vertex class and ordered pair of cones, each
/// re-verified.
pub fn full_cokernel_check(qc: &QuotientComplex, cones: &[Vec<usize>], seq: &ExactSeq, exec: Exec) -> CokernelReport {
    let floors = vertex_floors(qc);
    let jobs: Vec<(usize, &Vec<usize>, &Vec<usize>)> = (0..floors.len())
        .flat_map(|v| cones.iter().flat_map(move |s1| cones.iter().map(move |s2| (v, s1, s2))))
        .collect();
    let results = exec.map(&jobs, |&(v, s1, s2)| {
        torsion_certificate(seq, &floors[v], s1, s2).map(|mut c| {
            c.vertex = Some(v);
            c
        })
    });
    let mut report = CokernelReport { certificates: Vec::new(), failures: Vec::new() };
    for ((v, s1, s2), res) in jobs.into_iter().zip(results) {
        match res {
            Ok(c) if c.verify(&seq.lattice) => report.certificates.push(c),
            Ok(_) => report.failures.push(CertificateFailure {
                vertex: v,
                sigma1: s1.clone(),
                sigma2: s2.clone(),
                error: "identity does not re-verify".into(),
            }),
            Err(e) => {
                report.failures.push(CertificateFailure { vertex: v, sigma1: s1.clone(), sigma2: s2.clone(), error: e.to_string() })
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Deformation;
    use crate::fan::alternate_chamber;
    use crate::fixtures::{deformed_fan, example, twice_blow_up_fan};
    use crate::pipeline::resolve;

    #[test]
    fn lattice_point_needs_nothing() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let c = torsion_certificate(&r.seq, &[0; 5], &[0, 1], &[0, 1]).unwrap();
        assert_eq!(c.k, 0);
        assert!(c.u.iter().all(|&e| e == 0));
        assert!(c.alpha.iter().chain(&c.beta).all(|&e| e == 0));
    }

    #[test]
    fn extra_monomial_witnesses() {
        let e = example("deformed").unwrap();
        let r = resolve(&e.fan, None, &e.deformation()).unwrap();
        let f = [0, -1, 0, 0];
        let c = torsion_certificate(&r.seq, &f, &[2, 3], &[2, 3]).unwrap();
        assert!(c.verify(&r.seq.lattice));
        assert!(c.u.iter().all(|&x| x == 0));
        assert_eq!(c.k, 1);
        let c = torsion_certificate(&r.seq, &f, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(c.u, vec![0, -1, -1, 1]);
        assert_eq!(c.lattice_monomial().to_string(), "x4*y2*y3/(x2*x3*y4)");
    }

    #[test]
    fn alternate_chamber_witnesses() {
        let e = example("chamber").unwrap();
        let r = resolve(&e.fan, None, &e.deformation()).unwrap();
        let ch = alternate_chamber(&deformed_fan(), &e.removed).unwrap();
        let c = torsion_certificate(&r.seq, &[-1, 0, 0, 0], &[0, 3], &[0, 3]).unwrap();
        assert_eq!(c.u, vec![-1, 0, 1, 0]);
        let c = torsion_certificate(&r.seq, &[0, 0, -1, 0], &[2, 3], &[2, 3]).unwrap();
        assert_eq!(c.u, vec![1, 0, -1, 0]);
        let rep = full_cokernel_check(&r.qc, &ch.cones, &r.seq, Exec::Sequential);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn twice_blow_up_all_pairs() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let rep = full_cokernel_check(&r.qc, &r.fan.max_cones, &r.seq, Exec::Parallel);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.certificates.len(), 50);
    }

    #[test]
    fn tampered_certificate_fails() {
        let r = resolve(&twice_blow_up_fan(), None, &Deformation::zero(5)).unwrap();
        let mut c = torsion_certificate(&r.seq, &[0, 1, 0, 0, -1], &[0, 1], &[3, 4]).unwrap();
        assert!(c.verify(&r.seq.lattice));
        c.alpha[0] += 1;
        assert!(!c.verify(&r.seq.lattice));
    }
}
