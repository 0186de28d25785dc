//! Fan to complex in one call.

use crate::arrangement::{enumerate_cells, Deformation, QuotientComplex};
use crate::complex::{build_complex, GradedFreeComplex};
use crate::error::{Error, Result};
use crate::fan::{fundamental_sequence, ExactSeq, Fan, FanClassification};

#[derive(Clone, Debug)]
pub struct Resolution {
    pub fan: Fan,
    pub classification: FanClassification,
    pub seq: ExactSeq,
    pub eps: Deformation,
    pub qc: QuotientComplex,
    pub complex: GradedFreeComplex,
}

/// Validate the fan, then enumerate cells and assemble the complex.
/// Rejects fans that are not smooth or are known to be incomplete.
pub fn resolve(fan: &Fan, basis: Option<&[Vec<i64>]>, eps: &Deformation) -> Result<Resolution> {
    let classification = fan.classify();
    if !classification.smooth {
        return Err(Error::InvalidFan("fan is not smooth".into()));
    }
    if classification.complete == Some(false) {
        return Err(Error::InvalidFan("fan is not complete".into()));
    }
    let seq = fundamental_sequence(fan, basis)?;
    if eps.a.len() != seq.n() {
        return Err(Error::DeformationLength { got: eps.a.len(), expected: seq.n() });
    }
    let qc = enumerate_cells(&seq, eps)?;
    let complex = build_complex(&qc, &seq)?;
    Ok(Resolution { fan: fan.clone(), classification, seq, eps: eps.clone(), qc, complex })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{blow_up_basis, blow_up_fan};

    #[test]
    fn rejects_incomplete_and_bad_lengths() {
        let half = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, 0]], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(resolve(&half, None, &Deformation::zero(3)), Err(Error::InvalidFan(_))));
        let err = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(3)).unwrap_err();
        assert!(matches!(err, Error::DeformationLength { got: 3, expected: 4 }));
    }

    #[test]
    fn blow_up_ranks() {
        let r = resolve(&blow_up_fan(), Some(&blow_up_basis()), &Deformation::zero(4)).unwrap();
        assert_eq!(r.complex.ranks(), vec![1, 3, 2]);
    }
}
