use serde::{Deserialize, Serialize};

use crate::arrangement::Deformation;
use crate::error::Result;
use crate::fan::Fan;
use crate::fixtures::Example;

/// Fan input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanInput {
    pub m: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cl_basis: Option<Vec<Vec<i64>>>,
    /// Rationals as strings such as `"1/10"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed_rays: Option<Vec<usize>>,
}

impl FanInput {
    pub fn from_json(s: &str) -> serde_json::Result<FanInput> {
        serde_json::from_str(s)
    }

    pub fn from_example(e: &Example) -> FanInput {
        FanInput {
            m: e.fan.m,
            rays: e.fan.rays.clone(),
            max_cones: e.fan.max_cones.clone(),
            cl_basis: e.basis.clone(),
            epsilon: (!e.epsilon.is_empty()).then(|| e.epsilon.iter().map(|s| s.to_string()).collect()),
            removed_rays: (!e.removed.is_empty()).then(|| e.removed.clone()),
        }
    }

    pub fn fan(&self) -> Result<Fan> {
        Fan::new(self.m, self.rays.clone(), self.max_cones.clone())
    }

    /// The deformation, zero when absent.
    pub fn deformation(&self) -> Result<Deformation> {
        match &self.epsilon {
            Some(items) => Deformation::parse(items),
            None => Ok(Deformation::zero(self.rays.len())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example;

    #[test]
    fn parse_minimal_and_full() {
        let f = FanInput::from_json(r#"{"m":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]}"#).unwrap();
        assert!(f.fan().is_ok());
        assert!(f.deformation().unwrap().is_zero());
        let full = FanInput::from_example(&example("chamber").unwrap());
        let text = serde_json::to_string(&full).unwrap();
        assert_eq!(FanInput::from_json(&text).unwrap(), full);
        assert_eq!(full.removed_rays, Some(vec![1]));
    }

    #[test]
    fn schema_errors() {
        assert!(FanInput::from_json(r#"{"m":1,"rays":[[1],[-1]]}"#).is_err());
        assert!(FanInput::from_json(r#"{"m":1,"rays":[[1],[-1]],"max_cones":[[0],[1]],"extra":1}"#).is_err());
        let bad = FanInput::from_json(r#"{"m":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert!(bad.fan().is_err());
    }
}
