//! Sequence energy and the uncentered correlation coefficient.
//!
//! The coefficient is the normalized inner product
//! `c = sum(x[i] * y[i]) / sqrt(E_x * E_y)` with `E_x = sum(x[i]^2)` —
//! cosine similarity, deliberately without mean subtraction (this is not
//! Pearson's r). Accumulation is plain sequential double-width summation;
//! at the sequence lengths this crate works with (~10^3) compensated
//! summation would change nothing at the tolerances we guarantee.

use crate::error::{Error, Result};
use crate::float::Float;

/// Sum of squared values. Zero if and only if every value is zero.
pub fn energy<F: Float>(values: &[F]) -> F {
    values.iter().fold(F::zero(), |acc, &v| acc + v * v)
}

/// Uncentered correlation of two equal-length sequences, in `[-1, 1]` up to
/// rounding. Both operands must carry nonzero energy.
pub fn correlation<F: Float>(x: &[F], y: &[F]) -> Result<F> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let ex = energy(x);
    let ey = energy(y);
    if !(ex > F::zero()) {
        return Err(Error::ZeroEnergy { operand: "first" });
    }
    if !(ey > F::zero()) {
        return Err(Error::ZeroEnergy { operand: "second" });
    }
    let num = x
        .iter()
        .zip(y.iter())
        .fold(F::zero(), |acc, (&a, &b)| acc + a * b);
    Ok(num / (ex * ey).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_by_hand() {
        assert_eq!(energy(&[1.0, 2.0]), 5.0);
        assert_eq!(energy(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(energy(&[0.5]), 0.25);
        assert_eq!(energy::<f64>(&[]), 0.0);
    }

    #[test]
    fn self_correlation_is_one() {
        let x = [0.3_f64, 0.7];
        let c = correlation(&x, &x).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_is_zero() {
        assert_eq!(correlation(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn hand_value() {
        // 4 / sqrt(5 * 5) = 0.8, exact in doubles.
        let c = correlation(&[1.0_f64, 2.0], &[2.0, 1.0]).unwrap();
        assert!((c - 0.8).abs() < 1e-12);
    }

    #[test]
    fn positive_scaling_gives_one() {
        // num = 10, sqrt(5 * 20) = 10.
        assert_eq!(correlation(&[1.0, 2.0], &[2.0, 4.0]).unwrap(), 1.0);
    }

    #[test]
    fn errors_name_the_offender() {
        assert!(matches!(
            correlation(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(
            correlation(&[0.0, 0.0], &[1.0, 2.0]),
            Err(Error::ZeroEnergy { operand: "first" })
        ));
        assert!(matches!(
            correlation(&[1.0, 2.0], &[0.0, 0.0]),
            Err(Error::ZeroEnergy { operand: "second" })
        ));
        assert!(matches!(
            correlation::<f64>(&[], &[]),
            Err(Error::ZeroEnergy { operand: "first" })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
            (1_usize..64).prop_flat_map(|len| {
                (
                    prop::collection::vec(-10.0_f64..10.0, len),
                    prop::collection::vec(-10.0_f64..10.0, len),
                )
            })
        }

        proptest! {
            #[test]
            fn symmetric_and_bounded((x, y) in arb_pair()) {
                prop_assume!(energy(&x) > 0.0 && energy(&y) > 0.0);
                let cxy = correlation(&x, &y).unwrap();
                let cyx = correlation(&y, &x).unwrap();
                prop_assert_eq!(cxy, cyx);
                prop_assert!(cxy.abs() <= 1.0 + 1e-12);
            }

            #[test]
            fn positive_scale_invariance((x, y) in arb_pair(), alpha in 1e-3_f64..1e3) {
                prop_assume!(energy(&x) > 0.0 && energy(&y) > 0.0);
                let base = correlation(&x, &y).unwrap();
                let scaled_x: Vec<f64> = x.iter().map(|&v| alpha * v).collect();
                prop_assert!((correlation(&scaled_x, &y).unwrap() - base).abs() <= 1e-9);
            }

            #[test]
            fn all_positive_inputs_correlate_positively(
                (x, y) in (1_usize..64).prop_flat_map(|len| (
                    prop::collection::vec(0.01_f64..1.0, len),
                    prop::collection::vec(0.01_f64..1.0, len),
                ))
            ) {
                prop_assert!(correlation(&x, &y).unwrap() > 0.0);
            }
        }
    }
}
