use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2j} / (2j)!` for j = 1..=4.
const BERNOULLI_OVER_FACTORIAL: [f64; 4] =
    [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];

/// `|B_10| / 10!`, the first omitted Euler–Maclaurin coefficient.
const NEXT_COEFF: f64 = 5.0 / 66.0 / 3628800.0;

/// Hurwitz zeta `ζ(w, a) = Σ_{n≥0} (a+n)^{-w}`.
///
/// Sums directly up to a shifted base `a + M`, then adds the integral,
/// boundary and Bernoulli corrections through `B_8`. `M` is chosen so the
/// first omitted correction is below `1e-17` of the integral term.
pub fn hurwitz_zeta(w: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::param(format!("hurwitz_zeta needs a > 0, got {a}")));
    }
    if w == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("hurwitz_zeta has a pole at w = 1"));
    }
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::param(format!("non-finite exponent {w}")));
    }

    // |w (w+1) ... (w+8)| |w - 1| bounds the size of the next correction
    // relative to N^{1-w}/(w-1) once divided by N^10.
    let growth: f64 = (0..9).map(|j| (w + j as f64).norm()).product::<f64>() * (w - 1.0).norm();
    let base = (NEXT_COEFF * growth * 1e17).powf(0.1).max(10.0);
    let shift = if a >= base {
        0
    } else {
        (base - a).ceil() as usize
    };

    let mut direct = Complex64::new(0.0, 0.0);
    for n in (0..shift).rev() {
        direct += (-w * (a + n as f64).ln()).exp();
    }

    let big_n = a + shift as f64;
    let ln_n = big_n.ln();
    let pow_n = (-w * ln_n).exp(); // N^{-w}
    let mut tail = pow_n * big_n / (w - 1.0) + pow_n * 0.5;

    // B_{2j}/(2j)! * w (w+1) ... (w+2j-2) * N^{-w-2j+1}
    let mut rising = w;
    let mut npow = pow_n / big_n;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let k = (2 * j) as f64;
            rising *= (w + k - 1.0) * (w + k);
            npow /= big_n * big_n;
        }
        tail += rising * npow * *coeff;
    }
    Ok(direct + tail)
}
