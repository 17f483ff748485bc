use serde_json::{json, Value};

use super::patch::{KahlerProductPatch, C64};
use super::tensors::{curvature_at, FdSteps, PointTensors};
use super::KahlerError;

/// Bookkeeping for the circle bundle `p: S → Y` of a negative Hermitian line
/// bundle `(L, h)` with `ω = -i Θ_h` the product Kähler form on `Y`.
///
/// Nothing is computed on `S`: the contact form `η` satisfies `dη = p*ω`, the
/// Tanaka–Webster connection and curvature forms are pullbacks of the Kähler
/// ones, and the torsion `A` vanishes. Kähler tensors evaluated on the base are
/// therefore the Tanaka–Webster tensors of `S` in the pulled-back frame, with
/// Levi form `l_{αβ̄} = g_{αβ̄}`.
#[derive(Clone, Debug)]
pub struct SasakiCorrespondence {
    base: KahlerProductPatch,
}

const IDENTITIES: [&str; 5] = [
    "η = d^c log h restricted to S",
    "dη = p*ω",
    "ω_α^β = p*π_α^β",
    "Ω_α^β = p*Π_α^β",
    "A_{αβ} = 0",
];

impl SasakiCorrespondence {
    pub fn new(base: KahlerProductPatch) -> Self {
        SasakiCorrespondence { base }
    }

    pub fn base(&self) -> &KahlerProductPatch {
        &self.base
    }

    /// Holds by construction for circle bundles of Kähler bases.
    pub fn torsion_vanishes(&self) -> bool {
        true
    }

    pub fn identities(&self) -> &'static [&'static str] {
        &IDENTITIES
    }

    /// Tanaka–Webster `l`, `R`, `Ric`, `Scal`, `P`, `S` at a point of the
    /// fiber over `z`.
    pub fn tanaka_webster_at(&self, z: &[C64], steps: FdSteps) -> Result<PointTensors, KahlerError> {
        self.base.check_point(z)?;
        curvature_at(&self.base, z, steps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base_factors": self.base.factors().iter()
                .map(|f| json!({"dim": f.dim, "hsc": f.hsc.to_string()}))
                .collect::<Vec<_>>(),
            "torsion": "identically zero",
            "identities": IDENTITIES,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kahler::SpaceFormFactor;
    use num_rational::BigRational;

    #[test]
    fn record_and_pullback() {
        let base = KahlerProductPatch::new(vec![
            SpaceFormFactor::new(1, BigRational::from_integer(1.into())).unwrap(),
            SpaceFormFactor::new(1, BigRational::from_integer((-1).into())).unwrap(),
        ])
        .unwrap();
        let s = SasakiCorrespondence::new(base.clone());
        assert!(s.torsion_vanishes());
        let z = [C64::new(0.1, 0.0), C64::new(0.0, -0.2)];
        let tw = s.tanaka_webster_at(&z, FdSteps::default()).unwrap();
        let k = curvature_at(&base, &z, FdSteps::default()).unwrap();
        assert_eq!(tw.r, k.r);
        assert_eq!(s.to_json()["identities"].as_array().unwrap().len(), 5);
    }
}
