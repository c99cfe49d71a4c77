//! Small complex helpers missing from `num-complex`.

use num_complex::Complex64;

/// `e^z - 1` without cancellation for small `|z|`.
pub(crate) fn expm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let half_sin = (0.5 * y).sin();
    Complex64::new(
        x.exp_m1() * y.cos() - 2.0 * half_sin * half_sin,
        x.exp() * y.sin(),
    )
}

/// `x / (e^x - 1)`, finite at `x = 0`.
pub(crate) fn bernoulli_ratio(x: Complex64) -> Complex64 {
    if x.norm() < 1e-3 {
        let x2 = x * x;
        Complex64::new(1.0, 0.0) - x / 2.0 + x2 / 12.0 - x2 * x2 / 720.0
    } else if x.re > 1.0 {
        let e = (-x).exp();
        x * e / (1.0 - e)
    } else {
        x / expm1(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_matches_direct_for_moderate_arguments() {
        for z in [
            Complex64::new(0.3, -0.7),
            Complex64::new(-2.0, 4.0),
            Complex64::new(1.5, 0.1),
        ] {
            assert!((expm1(z) - (z.exp() - 1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn expm1_small_argument_is_accurate() {
        let z = Complex64::new(1e-12, 1e-12);
        let e = expm1(z);
        assert!((e - z).norm() < 1e-23);
    }

    #[test]
    fn bernoulli_ratio_branches_agree() {
        for z in [
            Complex64::new(9.9e-4, 0.0),
            Complex64::new(1.01e-3, 0.0),
            Complex64::new(0.0, 1.01e-3),
            Complex64::new(1.0 - 1e-9, 0.2),
            Complex64::new(1.0 + 1e-9, 0.2),
        ] {
            let direct = z / (z.exp() - 1.0);
            assert!((bernoulli_ratio(z) - direct).norm() < 1e-11, "{z}");
        }
        assert_eq!(bernoulli_ratio(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
    }
}
