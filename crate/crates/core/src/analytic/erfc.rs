//! Complex complementary error function.
//!
//! A Taylor series for `erf` covers the disc near the origin; elsewhere the
//! scaled function `erfcx(z) = exp(z^2) erfc(z)` comes from its Laplace
//! continued fraction, evaluated backwards. The left half plane is reached by
//! reflection.

use crate::{Error, Result, C64};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SQRT_PI: f64 = 1.772_453_850_905_516;

fn in_fraction_region(z: C64) -> bool {
    z.re >= 2.0 || z.norm() >= 6.0
}

fn erf_series(z: C64) -> C64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -z2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() || n > 400.0 {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

// erfcx for Re z >= 0 in the fraction region
fn erfcx_fraction(z: C64) -> C64 {
    let terms = 10 + (1200.0 / (1.0 + z.norm_sqr())) as usize;
    let mut f = z;
    for k in (1..=terms).rev() {
        f = z + (k as f64 / 2.0) / f;
    }
    1.0 / (SQRT_PI * f)
}

fn erfcx_right(z: C64) -> C64 {
    if in_fraction_region(z) {
        erfcx_fraction(z)
    } else {
        (z * z).exp() * (1.0 - erf_series(z))
    }
}

fn check_finite(z: C64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("z", format!("non-finite argument {z}")))
    }
}

/// `erfc(z) = 1 - erf(z)` for finite complex `z`.
pub fn complex_erfc(z: C64) -> Result<C64> {
    check_finite(z)?;
    Ok(erfc_unchecked(z))
}

fn erfc_unchecked(z: C64) -> C64 {
    if z.re < 0.0 {
        return 2.0 - erfc_unchecked(-z);
    }
    if in_fraction_region(z) {
        (-z * z).exp() * erfcx_fraction(z)
    } else {
        1.0 - erf_series(z)
    }
}

/// Scaled complement `exp(z^2) erfc(z)`, which stays bounded in the right
/// half plane where `erfc` itself underflows.
pub fn complex_erfcx(z: C64) -> Result<C64> {
    check_finite(z)?;
    if z.re < 0.0 {
        Ok(2.0 * (z * z).exp() - erfcx_right(-z))
    } else {
        Ok(erfcx_right(z))
    }
}
