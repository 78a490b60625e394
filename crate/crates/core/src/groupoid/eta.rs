//! The Lie-algebra term `η(X,Y)` extracted from a smooth group 2-cocycle by
//! a mixed second difference of the commutator word
//! `e^{tX} e^{sY} e^{−tX} e^{−sY}`.

use crate::error::{Error, Result};
use crate::operator::{matrix_exponential, CMatrix};

pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-2;

/// Phase exponent accumulated by the product `g₁g₂g₃g₄` at the point `A`:
/// `ω(A;g₁,g₂) + ω(A;g₁g₂,g₃) + ω(A;g₁g₂g₃,g₄)`.
fn word_phase<P, F>(omega: &F, point: &P, words: [&CMatrix; 4]) -> Result<f64>
where
    F: Fn(&P, &CMatrix, &CMatrix) -> std::result::Result<f64, String>,
{
    let call = |a: &CMatrix, b: &CMatrix| omega(point, a, b).map_err(Error::Callable);
    let [g1, g2, g3, g4] = words;
    let g12 = g1 * g2;
    let g123 = &g12 * g3;
    Ok(call(g1, g2)? + call(&g12, g3)? + call(&g123, g4)?)
}

/// `η(X,Y)(A) ≈ [Φ(h,h) − Φ(h,−h) − Φ(−h,h) + Φ(−h,−h)] / 4h²`, where `Φ(t,s)`
/// is the phase exponent of the commutator word. The error is `O(h²)`.
pub fn eta_from_omega<P, F>(omega: F, x: &CMatrix, y: &CMatrix, point: &P, h: f64) -> Result<f64>
where
    F: Fn(&P, &CMatrix, &CMatrix) -> std::result::Result<f64, String>,
{
    if !(MIN_STEP..=MAX_STEP).contains(&h) {
        return Err(Error::Domain(format!(
            "step {h} outside [{MIN_STEP}, {MAX_STEP}]"
        )));
    }
    let n = x.ensure_square("first generator")?;
    y.ensure_size(n, "second generator")?;
    let phase = |t: f64, s: f64| -> Result<f64> {
        let words = [
            matrix_exponential(&x.scale_real(t))?,
            matrix_exponential(&y.scale_real(s))?,
            matrix_exponential(&x.scale_real(-t))?,
            matrix_exponential(&y.scale_real(-s))?,
        ];
        word_phase(&omega, point, [&words[0], &words[1], &words[2], &words[3]])
    };
    let mixed = phase(h, h)? - phase(h, -h)? - phase(-h, h)? + phase(-h, -h)?;
    Ok(mixed / (4.0 * h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `ω(g,h) = B(log g, log h)` on diagonal matrices, `B(u,v) = uᵀMv`.
    fn bilinear(m: [[f64; 2]; 2]) -> impl Fn(&(), &CMatrix, &CMatrix) -> std::result::Result<f64, String> {
        move |_, a, b| {
            let la = [a.get(0, 0).re.ln(), a.get(1, 1).re.ln()];
            let lb = [b.get(0, 0).re.ln(), b.get(1, 1).re.ln()];
            Ok((0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| la[i] * m[i][j] * lb[j]).sum())
        }
    }

    #[test]
    fn zero_cocycle() {
        let x = CMatrix::from_real_diagonal(&[1.0, 2.0]);
        let eta = eta_from_omega(|_: &(), _: &CMatrix, _: &CMatrix| Ok(0.0), &x, &x, &(), 1e-3).unwrap();
        assert_eq!(eta, 0.0);
    }

    #[test]
    fn bilinear_cocycle_gives_antisymmetric_part() {
        let m = [[0.3, 1.2], [-0.4, 0.7]];
        let x = CMatrix::from_real_diagonal(&[1.0, -0.5]);
        let y = CMatrix::from_real_diagonal(&[0.2, 2.0]);
        let bxy = 1.0 * 0.3 * 0.2 + 1.0 * 1.2 * 2.0 - 0.5 * -0.4 * 0.2 - 0.5 * 0.7 * 2.0;
        let byx = 0.2 * 0.3 * 1.0 + 0.2 * 1.2 * -0.5 + 2.0 * -0.4 * 1.0 + 2.0 * 0.7 * -0.5;
        let eta = eta_from_omega(bilinear(m), &x, &y, &(), 1e-3).unwrap();
        assert!((eta - (bxy - byx)).abs() < 1e-4);
        let rev = eta_from_omega(bilinear(m), &y, &x, &(), 1e-3).unwrap();
        assert!((eta + rev).abs() < 1e-4);
        assert!(eta_from_omega(bilinear(m), &x, &x, &(), 1e-3).unwrap().abs() < 1e-4);
    }

    #[test]
    fn step_and_callable_errors() {
        let x = CMatrix::identity(2);
        let ok = |_: &(), _: &CMatrix, _: &CMatrix| Ok(0.0);
        assert!(matches!(eta_from_omega(ok, &x, &x, &(), 0.1), Err(Error::Domain(_))));
        let bad = |_: &(), _: &CMatrix, _: &CMatrix| Err("boom".to_string());
        assert!(matches!(eta_from_omega(bad, &x, &x, &(), 1e-3), Err(Error::Callable(_))));
    }
}
