//! Correctness battery: differential identities, label divisibility,
//! truncation acyclicity and torsion certificates.

mod checks;
mod homology;
mod report;
mod torsion;

pub use checks::{
    check_d_squared, check_homogeneity, divisibility_violations, euler_characteristic, floor_translation_failures,
    homogeneity_violations, unimodularity_cross_check,
};
pub use homology::{
    cell_labels, irrelevant_annihilators, max_betti, quotient_betti, sample_degrees, strand_betti, subcomplex_acyclicity,
    AcyclicityReport, Truncation,
};
pub use report::{run_battery, BatteryOptions, Check, VerificationReport};
pub use torsion::{
    full_cokernel_check, torsion_certificate, vertex_floors, CertificateError, CertificateFailure, CokernelReport,
    TorsionCertificate, SEARCH_BOUND,
};
