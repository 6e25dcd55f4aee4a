//! Closed-form flat norms of disks and squares.

use crate::error::{Error, Result};
use crate::Real;

fn positive<T: Real>(name: &str, x: T) -> Result<()> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::invalid(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

/// `min(2πR, λπR²)`: keep the circle or fill the disk.
pub fn disk_flatnorm<T: Real>(radius: T, lambda: T) -> Result<T> {
    positive("radius", radius)?;
    positive("lambda", lambda)?;
    let pi = T::PI();
    Ok((T::of(2.0) * pi * radius).min(lambda * pi * radius * radius))
}

/// `min(4a, λa²)` for the ℓ¹ perimeter of an axis-aligned square.
pub fn square_flatnorm_l1<T: Real>(side: T, lambda: T) -> Result<T> {
    positive("side", side)?;
    positive("lambda", lambda)?;
    Ok((T::of(4.0) * side).min(lambda * side * side))
}

/// Smallest λ for which the rounded square beats filling: `(2 + √π)/a`.
pub fn rounding_threshold<T: Real>(side: T) -> T {
    (T::of(2.0) + T::PI().sqrt()) / side
}

/// `4a + (π − 4)/λ`: corners cut by arcs of radius `1/λ`. Only valid for
/// `λ ≥ (2 + √π)/a`.
pub fn square_flatnorm_euclid<T: Real>(side: T, lambda: T) -> Result<T> {
    positive("side", side)?;
    positive("lambda", lambda)?;
    let threshold = rounding_threshold(side);
    if lambda < threshold * (T::one() - T::round_off()) {
        return Err(Error::invalid(format!(
            "rounded-square formula needs lambda >= (2 + sqrt(pi))/a = {threshold}, got {lambda}"
        )));
    }
    Ok(T::of(4.0) * side + (T::PI() - T::of(4.0)) / lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn crossovers() {
        assert!((disk_flatnorm(1.0, 2.0).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(square_flatnorm_l1(1.0, 4.0).unwrap(), 4.0);
        assert!((square_flatnorm_euclid(1.0, 8.0).unwrap() - (4.0 + (PI - 4.0) / 8.0)).abs() < 1e-12);
    }

    #[test]
    fn rounding_cost_matches_direct_sum() {
        // 4a − 8r + 2πr + λ(4 − π)r² at r = 1/λ
        for &(a, l) in &[(1.0, 8.0), (2.0, 4.0), (3.0, 1.5)] {
            let r = 1.0 / l;
            let direct = 4.0 * a - 8.0 * r + 2.0 * PI * r + l * (4.0 - PI) * r * r;
            assert!((square_flatnorm_euclid(a, l).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn regime_boundary() {
        // at the threshold, rounding and filling cost the same
        let a: f64 = 1.0;
        let l = rounding_threshold(a);
        assert!((square_flatnorm_euclid(a, l).unwrap() - l * a * a).abs() < 1e-12);
        let err = square_flatnorm_euclid(1.0, 3.0).unwrap_err().to_string();
        assert!(err.contains("3.77"), "{err}");
        assert!(disk_flatnorm(-1.0, 1.0).is_err());
    }
}
