//! Linear systems `A x = y` over ℤ, ℚ and ℤ/m, decided through the Smith
//! normal form of `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{bigint_json, smith_normal_form, IntegerMatrix};

/// Proof that `y` is not in the image of `A`: a row vector `φ` with
/// `φ·A ≡ 0` and `φ·y ≢ 0`, both modulo `modulus` (exactly when the modulus
/// is zero).
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub functional: Vec<BigInt>,
    pub modulus: BigInt,
    /// `φ·y`, reduced modulo `modulus` when it is nonzero. Rational when `y`
    /// is rational.
    pub pairing: BigRational,
}

impl Obstruction {
    /// Re-checks the certificate against the system it claims to obstruct.
    pub fn verify(&self, a: &IntegerMatrix, y: &[BigRational]) -> bool {
        let vanishes = |x: &BigRational| {
            if self.modulus.is_zero() {
                x.is_zero()
            } else {
                x.is_integer() && x.to_integer().is_multiple_of(&self.modulus)
            }
        };
        let on_columns = (0..a.cols()).all(|j| {
            let s: BigInt = self
                .functional
                .iter()
                .zip(a.column(j))
                .map(|(p, c)| p * c)
                .sum();
            vanishes(&BigRational::from_integer(s))
        });
        let pairing: BigRational = self
            .functional
            .iter()
            .zip(y)
            .map(|(p, v)| BigRational::from_integer(p.clone()) * v)
            .sum();
        on_columns && !vanishes(&pairing)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "functional": self.functional.iter().map(bigint_json).collect::<Vec<_>>(),
            "modulus": bigint_json(&self.modulus),
            "pairing": self.pairing.to_string(),
        })
    }
}

impl Serialize for Obstruction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Solvable(Vec<BigRational>),
    Unsolvable(Obstruction),
}

impl Solution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solution::Solvable(_))
    }
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Solve `A x = y` with `x` integral.
pub fn solve_integral(a: &IntegerMatrix, y: &[BigInt]) -> Solution {
    assert_eq!(a.rows(), y.len(), "right-hand side length");
    let snf = smith_normal_form(a);
    let w = snf.u.mul_vec(y);
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, wi) in w.iter().enumerate() {
        if i < snf.rank {
            let di = &snf.d[(i, i)];
            let (q, r) = wi.div_mod_floor(di);
            if !r.is_zero() {
                return Solution::Unsolvable(Obstruction {
                    functional: snf.u.row(i).to_vec(),
                    modulus: di.clone(),
                    pairing: BigRational::from_integer(r),
                });
            }
            z[i] = q;
        } else if !wi.is_zero() {
            return Solution::Unsolvable(Obstruction {
                functional: snf.u.row(i).to_vec(),
                modulus: BigInt::zero(),
                pairing: BigRational::from_integer(wi.clone()),
            });
        }
    }
    Solution::Solvable(to_rational(&snf.v.mul_vec(&z)))
}

/// Solve `A x = y` over ℚ.
pub fn solve_rational(a: &IntegerMatrix, y: &[BigRational]) -> Solution {
    assert_eq!(a.rows(), y.len(), "right-hand side length");
    let snf = smith_normal_form(a);
    let w: Vec<BigRational> = (0..a.rows())
        .map(|i| {
            snf.u
                .row(i)
                .iter()
                .zip(y)
                .map(|(p, v)| BigRational::from_integer(p.clone()) * v)
                .sum()
        })
        .collect();
    let mut z = vec![BigRational::zero(); a.cols()];
    for (i, wi) in w.iter().enumerate() {
        if i < snf.rank {
            z[i] = wi / BigRational::from_integer(snf.d[(i, i)].clone());
        } else if !wi.is_zero() {
            return Solution::Unsolvable(Obstruction {
                functional: snf.u.row(i).to_vec(),
                modulus: BigInt::zero(),
                pairing: wi.clone(),
            });
        }
    }
    let x = (0..a.cols())
        .map(|i| {
            snf.v
                .row(i)
                .iter()
                .zip(&z)
                .map(|(p, v)| BigRational::from_integer(p.clone()) * v)
                .sum()
        })
        .collect();
    Solution::Solvable(x)
}

/// Solve `A x ≡ y (mod m)` by solving `[A | m·I] (x, k) = y` over ℤ.
/// The returned solution is reduced into `[0, m)`; an obstruction refers to
/// the augmented matrix.
pub fn solve_modular(a: &IntegerMatrix, y: &[BigInt], modulus: u64) -> Solution {
    let m = BigInt::from(modulus);
    match solve_integral(&modular_augmentation(a, modulus), y) {
        Solution::Solvable(x) => Solution::Solvable(
            x.into_iter()
                .take(a.cols())
                .map(|v| BigRational::from_integer(v.to_integer().mod_floor(&m)))
                .collect(),
        ),
        unsolvable => unsolvable,
    }
}

/// `[A | m·I]`, whose integral image is the preimage of `A`'s image mod `m`.
pub fn modular_augmentation(a: &IntegerMatrix, modulus: u64) -> IntegerMatrix {
    let mut scaled = IntegerMatrix::identity(a.rows());
    for i in 0..a.rows() {
        scaled[(i, i)] = BigInt::from(modulus);
    }
    a.hstack(&scaled)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn integral_solution_respects_invariant_factors() {
        let a = IntegerMatrix::from_rows(&[vec![-5]]);
        assert!(solve_integral(&a, &ints(&[10])).is_solvable());
        match solve_integral(&a, &ints(&[3])) {
            Solution::Unsolvable(ob) => {
                assert_eq!(ob.modulus, BigInt::from(5));
                assert!(ob.verify(&a, &rats(&[3])));
            }
            _ => panic!("3 is not a multiple of 5"),
        }
        // over Q the same system is solvable
        assert!(solve_rational(&a, &rats(&[3])).is_solvable());
    }

    #[test]
    fn rational_obstruction_is_a_left_kernel_vector() {
        let a = IntegerMatrix::from_rows(&[vec![1, 0], vec![-3, 1], vec![0, -3]]);
        let y = rats(&[1, 6, 9]);
        match solve_rational(&a, &y) {
            Solution::Unsolvable(ob) => {
                assert!(ob.modulus.is_zero());
                assert!(ob.verify(&a, &y));
            }
            _ => panic!("(1,6,9) is not in the column span"),
        }
        let y = rats(&[1, -2, -3]); // col0 + col1
        match solve_rational(&a, &y) {
            Solution::Solvable(x) => assert_eq!(x, rats(&[1, 1])),
            _ => panic!(),
        }
    }

    #[test]
    fn modular_solution() {
        let a = IntegerMatrix::from_rows(&[vec![2]]);
        // 2x = 1 mod 5 -> x = 3
        match solve_modular(&a, &ints(&[1]), 5) {
            Solution::Solvable(x) => assert_eq!(x, rats(&[3])),
            _ => panic!(),
        }
        // 2x = 1 mod 4 has no solution
        match solve_modular(&a, &ints(&[1]), 4) {
            Solution::Unsolvable(ob) => assert!(ob.verify(&modular_augmentation(&a, 4), &rats(&[1]))),
            _ => panic!(),
        }
    }
}
