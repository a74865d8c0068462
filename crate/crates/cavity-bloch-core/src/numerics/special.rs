#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Associated Laguerre polynomial `L_j^{(a)}(x)` by upward three-term recurrence.
///
/// `a` may be negative down to `-j`.
pub fn laguerre_assoc(j: u32, a: i32, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("laguerre_assoc", format!("x = {x} must be finite and >= 0")));
    }
    if (a as i64) < -(j as i64) {
        return Err(Error::domain("laguerre_assoc", format!("a = {a} < -j = -{j}")));
    }
    let a = a as f64;
    let mut prev = 1.0;
    if j == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + a - x;
    for k in 1..j {
        let k = k as f64;
        let next = ((2.0 * k + a + 1.0 - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `ln(n!)` via the log-gamma function.
pub fn ln_factorial(n: u32) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Matrix element `<i|D(alpha)|j>` of the displacement operator in the number basis.
///
/// Evaluated as `sqrt(j!/i!) alpha^(i-j) exp(-|alpha|^2/2) L_j^(i-j)(|alpha|^2)` for
/// `i >= j`; for `j > i` the relation `<i|D(a)|j> = (-1)^(j-i) conj(<j|D(a)|i>)` is used.
/// The modulus prefactor is combined in log space so that large levels do not overflow.
pub fn displacement_matrix_element(i: u32, j: u32, alpha: Complex64) -> Result<Complex64> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::domain("displacement_matrix_element", "alpha must be finite"));
    }
    if j > i {
        let v = displacement_lower(j, i, alpha)?.conj();
        return Ok(if (j - i) % 2 == 1 { -v } else { v });
    }
    displacement_lower(i, j, alpha)
}

fn displacement_lower(i: u32, j: u32, alpha: Complex64) -> Result<Complex64> {
    let r2 = alpha.norm_sqr();
    let d = i - j;
    let lag = laguerre_assoc(j, d as i32, r2)?;
    if lag == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let r = r2.sqrt();
    if d > 0 && r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let log_mod = 0.5 * (ln_factorial(j) - ln_factorial(i)) - 0.5 * r2
        + if d > 0 { d as f64 * r.ln() } else { 0.0 };
    let phase = d as f64 * alpha.im.atan2(alpha.re);
    let m = log_mod.exp() * lag;
    Ok(Complex64::new(m * phase.cos(), m * phase.sin()))
}

/// The truncated `dim x dim` matrix `<i|D(alpha)|j>`, row-major.
pub fn displacement_matrix(dim: usize, alpha: Complex64) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            out.push(displacement_matrix_element(i as u32, j as u32, alpha)?);
        }
    }
    Ok(out)
}
