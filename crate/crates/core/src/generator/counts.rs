//! Layer sizes `n_k = |V_k|`.
//!
//! The recurrence over big integers is the ground truth. The closed form
//! `y_k = c (l+^k - l-^k)` with `c = d / sqrt((d-6)(d-2))` and
//! `l± = (d - 4 ± sqrt((d-6)(d-2))) / 2` is evaluated independently in
//! binary fixed point with outward rounding, so the enclosing interval
//! certifies the nearest integer.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::GeneratorError;

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1 << 16;

fn check_degree(d: usize, minimum: usize) -> Result<(), GeneratorError> {
    if d < minimum {
        Err(GeneratorError::DegreeTooSmall { degree: d, minimum })
    } else {
        Ok(())
    }
}

/// `[n_0, ..., n_k]` from `n_0 = 1`, `n_1 = d`, `n_2 = d(d-4)` and
/// `n_j = (d-4) n_{j-1} - n_{j-2}`.
pub fn layer_counts_recurrence(d: usize, k: usize) -> Result<Vec<BigUint>, GeneratorError> {
    check_degree(d, 6)?;
    let mut out = Vec::with_capacity(k + 1);
    out.push(BigUint::one());
    if k >= 1 {
        out.push(BigUint::from(d));
    }
    if k >= 2 {
        out.push(BigUint::from(d * (d - 4)));
    }
    let factor = BigUint::from(d - 4);
    for j in 3..=k {
        // (d-4) n_{j-1} >= n_{j-2} for d >= 6, so this never underflows
        let next = &factor * &out[j - 1] - &out[j - 2];
        out.push(next);
    }
    Ok(out)
}

/// `n_k` alone.
pub fn layer_count(d: usize, k: usize) -> Result<BigUint, GeneratorError> {
    Ok(layer_counts_recurrence(d, k)?.pop().expect("non-empty"))
}

/// Closed-form values `n_0 ..= n_k`, each rounded from a certified enclosure.
pub fn layer_counts_closed_form(d: usize, k: usize) -> Result<Vec<BigUint>, GeneratorError> {
    check_degree(d, 7)?;
    (0..=k).map(|j| closed_form_escalating(d, j)).collect()
}

fn closed_form_escalating(d: usize, k: usize) -> Result<BigUint, GeneratorError> {
    let mut bits = START_BITS;
    loop {
        match closed_form_at_precision(d, k, bits) {
            Err(GeneratorError::PrecisionLoss { .. }) if bits < MAX_BITS => bits *= 2,
            other => return other,
        }
    }
}

/// Evaluates the closed form with `bits` fractional bits. Fails with
/// `PrecisionLoss` when the enclosure straddles a rounding boundary.
pub fn closed_form_at_precision(d: usize, k: usize, bits: u32) -> Result<BigUint, GeneratorError> {
    check_degree(d, 7)?;
    if k == 0 {
        // the closed form gives y_0 = 0; the layer count is n_0 = 1
        return Ok(BigUint::one());
    }
    let ambiguous = || GeneratorError::PrecisionLoss { degree: d, k, bits };
    let scale = BigUint::one() << bits;
    let disc = BigUint::from((d - 6) * (d - 2));
    let root_lo = (&disc << (2 * bits as usize)).sqrt();
    let root_hi = &root_lo + 1u32;

    let a = BigUint::from(d - 4) * &scale;
    if a <= root_hi {
        return Err(ambiguous());
    }
    let plus_lo = (&a + &root_lo) >> 1;
    let plus_hi = (&a + &root_hi + 1u32) >> 1;
    let minus_lo = (&a - &root_hi) >> 1;
    let minus_hi = (&a - &root_lo + 1u32) >> 1;

    let pow = |x: &BigUint, round_up: bool| {
        let mut acc = scale.clone();
        for _ in 0..k {
            let prod = &acc * x;
            acc = if round_up {
                (prod + &scale - 1u32) >> bits
            } else {
                prod >> bits
            };
        }
        acc
    };
    let big_lo = pow(&plus_lo, false);
    let big_hi = pow(&plus_hi, true);
    let small_lo = pow(&minus_lo, false);
    let small_hi = pow(&minus_hi, true);

    let diff_lo = if big_lo > small_hi {
        big_lo - small_hi
    } else {
        BigUint::zero()
    };
    let diff_hi = big_hi - small_lo;

    let dd = BigUint::from(d);
    let y_lo = (&dd * diff_lo * &scale) / &root_hi;
    let y_hi = (&dd * diff_hi * &scale + &root_lo - 1u32) / &root_lo;

    let half = &scale >> 1;
    let n_lo = (y_lo + &half) >> bits;
    let n_hi = (y_hi + &half) >> bits;
    if n_lo == n_hi {
        Ok(n_lo)
    } else {
        Err(ambiguous())
    }
}

/// Plain double-precision evaluation, for display.
pub fn closed_form_f64(d: usize, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let df = d as f64;
    let root = ((df - 6.0) * (df - 2.0)).sqrt();
    let plus = (df - 4.0 + root) / 2.0;
    let minus = (df - 4.0 - root) / 2.0;
    let c = df / root;
    c * (plus.powi(k as i32) - minus.powi(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn recurrence_table_rows() {
        assert_eq!(
            layer_counts_recurrence(7, 6).unwrap(),
            nums(&[1, 7, 21, 56, 147, 385, 1008])
        );
        assert_eq!(
            layer_counts_recurrence(8, 6).unwrap(),
            nums(&[1, 8, 32, 120, 448, 1672, 6240])
        );
        assert_eq!(
            layer_counts_recurrence(6, 5).unwrap(),
            nums(&[1, 6, 12, 18, 24, 30])
        );
        assert_eq!(layer_counts_recurrence(9, 3).unwrap(), nums(&[1, 9, 45, 216]));
        assert_eq!(layer_counts_recurrence(7, 0).unwrap(), nums(&[1]));
        assert!(matches!(
            layer_counts_recurrence(5, 3),
            Err(GeneratorError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn closed_form_small_values() {
        assert_eq!(closed_form_at_precision(7, 4, 64).unwrap(), BigUint::from(147u32));
        assert_eq!(closed_form_at_precision(7, 1, 64).unwrap(), BigUint::from(7u32));
        assert_eq!(closed_form_at_precision(9, 3, 64).unwrap(), BigUint::from(216u32));
        assert!(matches!(
            layer_counts_closed_form(6, 3),
            Err(GeneratorError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn low_precision_is_reported() {
        // 8 fractional bits cannot pin down a 30-digit value
        assert!(matches!(
            closed_form_at_precision(20, 30, 8),
            Err(GeneratorError::PrecisionLoss { .. })
        ));
        assert_eq!(
            closed_form_escalating(20, 30).unwrap(),
            layer_count(20, 30).unwrap()
        );
    }

    #[test]
    fn float_evaluation_is_close_for_small_k() {
        assert!((closed_form_f64(7, 6) - 1008.0).abs() < 1e-9);
        assert!((closed_form_f64(8, 5) - 1672.0).abs() < 1e-9);
    }
}
