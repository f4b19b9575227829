//! Gauss rules on `[0, 1]`.
//!
//! Gauss–Jacobi rules come from the Golub–Welsch eigenvalue problem for the
//! Jacobi recurrence, solved by implicit QL iteration on the symmetric
//! tridiagonal matrix.

use crate::besselkernel::ln_gamma;
use crate::error::{Error, Result};

/// Nodes and weights of a quadrature rule on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `n`-point Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    gauss_jacobi(n, 0.0, 0.0).expect("Legendre parameters are valid")
}

/// `n`-point rule for `∫₀¹ (1-x)^a x^b g(x) dx`, requiring `a, b > -1`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Rule> {
    if n == 0 || !(a > -1.0 && b > -1.0) {
        return Err(Error::domain(format!("Gauss-Jacobi needs n >= 1 and exponents > -1, got n={n}, a={a}, b={b}")));
    }
    // Jacobi polynomials on [-1, 1] with weight (1-y)^a (1+y)^b.
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let ab = a + b;
    for (k, dk) in diag.iter_mut().enumerate() {
        let k = k as f64;
        let s = 2.0 * k + ab;
        *dk = if k == 0.0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
    }
    for (k, ok) in off.iter_mut().enumerate().skip(1) {
        let k = k as f64;
        let s = 2.0 * k + ab;
        *ok = if k == 1.0 {
            // The general formula has a removable 0/0 when a + b = -1.
            (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt()
        } else {
            (4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
        };
    }
    let first = tridiagonal_ql(&mut diag, &mut off)?;
    let ln_beta = ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0);
    let mut pairs: Vec<(f64, f64)> =
        diag.iter().zip(&first).map(|(&y, &v)| (0.5 * (1.0 + y), ln_beta.exp() * v * v)).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(Rule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() })
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e[1..]` (overwriting `d`), returning the first component of
/// each normalized eigenvector.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::domain("tridiagonal QL iteration did not converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(z)
}
