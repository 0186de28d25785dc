//! The full battery as one JSON-serializable report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{
    check_d_squared, divisibility_violations, euler_characteristic, floor_translation_failures, homogeneity_violations,
    unimodularity_cross_check,
};
use super::homology::{cell_labels, irrelevant_annihilators, quotient_betti, sample_degrees, subcomplex_acyclicity};
use super::torsion::full_cokernel_check;
use crate::arrangement::transversality_report;
use crate::error::Result;
use crate::exec::Exec;
use crate::pipeline::Resolution;

/// Largest power of an irrelevant generator tried on non-acyclic degrees.
pub const ANNIHILATOR_POWER: i64 = 8;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

#[derive(Clone, Debug)]
pub struct BatteryOptions {
    pub seed: u64,
    pub floor_trials: usize,
    pub random_degrees: usize,
    pub exec: Exec,
    /// Maximal cones for the certificate search; the fan's own when absent.
    pub cones: Option<Vec<Vec<usize>>>,
    /// Include every certificate in the report rather than a count.
    pub list_certificates: bool,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions { seed: 0, floor_trials: 100, random_degrees: 50, exec: Exec::default(), cones: None, list_certificates: false }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn run_battery(res: &Resolution, opts: &BatteryOptions) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let c = &res.complex;
    let mut checks = Vec::new();

    checks.push(Check { name: "d_squared", passed: check_d_squared(c), detail: json!({ "ranks": c.ranks() }) });

    let hom = homogeneity_violations(c, &res.seq);
    checks.push(Check { name: "homogeneity", passed: hom.is_empty(), detail: json!({ "violations": hom }) });

    let div = divisibility_violations(c);
    checks.push(Check { name: "divisibility", passed: div.is_empty(), detail: json!({ "violations": div }) });

    let chi = euler_characteristic(c);
    checks.push(Check { name: "euler_characteristic", passed: chi == 0, detail: json!({ "value": chi }) });

    let betti = quotient_betti(&res.qc);
    let torus: Vec<usize> = (0..=res.qc.m).map(|d| binomial(res.qc.m, d)).collect();
    checks.push(Check { name: "torus_homology", passed: betti == torus, detail: json!({ "betti": betti, "expected": torus }) });

    let floor = floor_translation_failures(&res.seq.lattice, &mut rng, opts.floor_trials);
    checks.push(Check {
        name: "floor_translation",
        passed: floor.is_empty(),
        detail: json!({ "trials": opts.floor_trials, "failures": floor.len() }),
    });

    let integral = res.qc.integral_vertices();
    let vertices = res.qc.cells_of_dim(0).len();
    if res.eps.is_zero() {
        checks.push(Check {
            name: "unimodularity_cross_check",
            passed: unimodularity_cross_check(&res.qc, &res.classification),
            detail: json!({ "unimodular": res.classification.unimodular, "vertex_classes": vertices, "integral": integral }),
        });
    }

    let tr = transversality_report(&res.qc);
    checks.push(Check {
        name: "transversality",
        passed: true,
        detail: json!({ "informational": true, "transversal": tr.transversal, "violations": tr.violations.len() }),
    });

    let labels = cell_labels(&res.qc);
    let degrees = sample_degrees(&res.qc, &labels, &mut rng, opts.random_degrees);
    let reports = opts.exec.map(&degrees, |b| subcomplex_acyclicity(&res.qc, &labels, b));
    let mut bad = Vec::new();
    let mut bad_degrees = Vec::new();
    let mut nonempty = 0;
    for (b, r) in degrees.iter().zip(reports) {
        let r = r?;
        nonempty += usize::from(!r.empty);
        if !r.is_acyclic() {
            bad.push(json!({ "bound": r.bound, "reduced_betti": r.reduced_betti }));
            bad_degrees.push(b.clone());
        }
    }
    checks.push(Check {
        name: "acyclicity",
        passed: bad.is_empty(),
        detail: json!({ "degrees": degrees.len(), "nonempty": nonempty, "failures": bad }),
    });

    let cones = opts.cones.clone().unwrap_or_else(|| res.fan.max_cones.clone());
    let killed = opts.exec.map(&bad_degrees, |b| irrelevant_annihilators(&res.qc, &labels, b, &cones, ANNIHILATOR_POWER));
    let mut survivors = Vec::new();
    for (b, k) in bad_degrees.iter().zip(killed) {
        let missing: Vec<_> = k?.into_iter().filter(|(_, p)| p.is_none()).map(|(pair, _)| pair).collect();
        if !missing.is_empty() {
            survivors.push(json!({ "bound": b.to_string(), "cone_pairs": missing }));
        }
    }
    checks.push(Check {
        name: "acyclicity_modulo_irrelevant",
        passed: survivors.is_empty(),
        detail: json!({ "nonacyclic_degrees": bad_degrees.len(), "max_power": ANNIHILATOR_POWER, "survivors": survivors }),
    });

    let cok = full_cokernel_check(&res.qc, &cones, &res.seq, opts.exec);
    let certificates = if opts.list_certificates { json!(cok.certificates) } else { json!(cok.certificates.len()) };
    checks.push(Check {
        name: "torsion_certificates",
        passed: cok.passed(),
        detail: json!({ "cones": cones, "certificates": certificates, "failures": cok.failures }),
    });

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport { passed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::examples;
    use crate::pipeline::resolve;

    #[test]
    fn examples_pass_except_strict_acyclicity() {
        for e in examples() {
            let res = resolve(&e.fan, e.basis.as_deref(), &e.deformation()).unwrap();
            let rep = run_battery(&res, &BatteryOptions::default()).unwrap();
            // these fixtures have degrees whose truncation is disconnected;
            // the extra classes are irrelevant torsion
            let strict_fails = matches!(e.name, "deformed" | "twice");
            let expected: Vec<&str> = if strict_fails { vec!["acyclicity"] } else { vec![] };
            assert_eq!(rep.failed(), expected, "{}", e.name);
        }
    }

    #[test]
    fn report_is_deterministic() {
        let e = crate::fixtures::example("twice").unwrap();
        let res = resolve(&e.fan, None, &e.deformation()).unwrap();
        let opts = BatteryOptions { seed: 9, ..Default::default() };
        let a = serde_json::to_string(&run_battery(&res, &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&run_battery(&res, &BatteryOptions { exec: Exec::Sequential, ..opts }).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
