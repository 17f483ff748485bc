use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::CohomologyError;

/// Coefficients of a cohomology ring.
///
/// All scalars are carried as [`BigRational`]; the domain decides which of
/// them are admissible and puts them into canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CoefficientsRepr", try_from = "CoefficientsRepr")]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    /// ℤ/mℤ with m ≥ 2, values kept in `[0, m)`.
    IntegersMod(u64),
}

impl CoefficientDomain {
    pub fn integers_mod(m: u64) -> Result<Self, CohomologyError> {
        if m < 2 {
            return Err(CohomologyError::InvalidModulus(m));
        }
        Ok(CoefficientDomain::IntegersMod(m))
    }

    /// Bring `value` into canonical form, or report that it has no image in
    /// this domain.
    pub fn normalize(&self, value: &BigRational) -> Result<BigRational, CohomologyError> {
        match self {
            CoefficientDomain::Rationals => Ok(value.clone()),
            CoefficientDomain::Integers => {
                if value.is_integer() {
                    Ok(value.clone())
                } else {
                    Err(CohomologyError::NotRepresentable {
                        value: value.to_string(),
                        domain: self.clone(),
                    })
                }
            }
            CoefficientDomain::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let numer = value.numer().mod_floor(&m);
                let denom = value.denom().mod_floor(&m);
                let inv = mod_inverse(&denom, &m).ok_or_else(|| CohomologyError::NotRepresentable {
                    value: value.to_string(),
                    domain: self.clone(),
                })?;
                Ok(BigRational::from_integer((numer * inv).mod_floor(&m)))
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        !matches!(self, CoefficientDomain::Rationals)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoefficientDomain::IntegersMod(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => f.write_str("Z"),
            CoefficientDomain::Rationals => f.write_str("Q"),
            CoefficientDomain::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.extended_gcd(m);
    if egcd.gcd.is_one() || (-egcd.gcd.clone()).is_one() {
        let x = if egcd.gcd.is_negative() { -egcd.x } else { egcd.x };
        Some(x.mod_floor(m))
    } else {
        None
    }
}

/// JSON form: `"Z"`, `"Q"` or `{"mod": m}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoefficientsRepr {
    Name(String),
    Mod { r#mod: u64 },
}

impl From<CoefficientDomain> for CoefficientsRepr {
    fn from(d: CoefficientDomain) -> Self {
        match d {
            CoefficientDomain::Integers => CoefficientsRepr::Name("Z".into()),
            CoefficientDomain::Rationals => CoefficientsRepr::Name("Q".into()),
            CoefficientDomain::IntegersMod(m) => CoefficientsRepr::Mod { r#mod: m },
        }
    }
}

impl TryFrom<CoefficientsRepr> for CoefficientDomain {
    type Error = CohomologyError;

    fn try_from(r: CoefficientsRepr) -> Result<Self, Self::Error> {
        match r {
            CoefficientsRepr::Name(s) => match s.as_str() {
                "Z" => Ok(CoefficientDomain::Integers),
                "Q" => Ok(CoefficientDomain::Rationals),
                other => Err(CohomologyError::UnknownCoefficients(other.to_string())),
            },
            CoefficientsRepr::Mod { r#mod } => CoefficientDomain::integers_mod(r#mod),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn integers_reject_fractions() {
        assert!(CoefficientDomain::Integers.normalize(&q(1, 2)).is_err());
        assert_eq!(CoefficientDomain::Integers.normalize(&q(-4, 2)).unwrap(), q(-2, 1));
    }

    #[test]
    fn modular_values_are_canonical() {
        let z5 = CoefficientDomain::integers_mod(5).unwrap();
        assert_eq!(z5.normalize(&q(-3, 1)).unwrap(), q(2, 1));
        // 1/2 = 3 mod 5
        assert_eq!(z5.normalize(&q(1, 2)).unwrap(), q(3, 1));
        let z6 = CoefficientDomain::integers_mod(6).unwrap();
        assert!(z6.normalize(&q(1, 2)).is_err());
        assert!(CoefficientDomain::integers_mod(1).is_err());
    }

    #[test]
    fn json_forms() {
        let s = serde_json::to_string(&CoefficientDomain::IntegersMod(7)).unwrap();
        assert_eq!(s, r#"{"mod":7}"#);
        let d: CoefficientDomain = serde_json::from_str(r#""Q""#).unwrap();
        assert_eq!(d, CoefficientDomain::Rationals);
        assert!(serde_json::from_str::<CoefficientDomain>(r#""R""#).is_err());
        assert!(serde_json::from_str::<CoefficientDomain>(r#"{"mod":1}"#).is_err());
    }
}
