/// Radial cutoff equal to 1 on `[0, ½]`, 0 from 1 on, and the quintic
/// smoothstep `1 - (6x⁵ - 15x⁴ + 10x³)`, `x = 2r - 1`, in between. It is
/// `C²` with bounded third derivative.
pub fn smooth_bump(r: f64) -> f64 {
    if r <= 0.5 {
        1.0
    } else if r >= 1.0 {
        0.0
    } else {
        let x = 2.0 * r - 1.0;
        1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
    }
}

/// First and second derivatives of [`smooth_bump`] in `r`.
pub fn smooth_bump_derivatives(r: f64) -> (f64, f64) {
    if r <= 0.5 || r >= 1.0 {
        return (0.0, 0.0);
    }
    let x = 2.0 * r - 1.0;
    // d/dx of the smoothstep is 30x²(1-x)², the second is 60x(1-x)(1-2x).
    let d1 = -30.0 * x * x * (1.0 - x) * (1.0 - x);
    let d2 = -60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    (2.0 * d1, 4.0 * d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape_and_derivatives() {
        assert_eq!(smooth_bump(0.3), 1.0);
        assert_eq!(smooth_bump(1.2), 0.0);
        assert!((smooth_bump(0.75) - 0.5).abs() < 1e-15);
        let e = 1e-5;
        for &r in &[0.55, 0.7, 0.9] {
            let (d1, d2) = smooth_bump_derivatives(r);
            let fd1 = (smooth_bump(r + e) - smooth_bump(r - e)) / (2.0 * e);
            let fd2 = (smooth_bump(r + e) - 2.0 * smooth_bump(r) + smooth_bump(r - e)) / (e * e);
            assert!((d1 - fd1).abs() < 1e-8);
            assert!((d2 - fd2).abs() < 1e-4);
        }
    }
}
