use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("epsilon must lie in (0,1), got {eps}")))
    }
}

fn check_dims(d: usize, d_s: usize, d_e: usize) -> Result<()> {
    if d_s == 0 || d_e == 0 || d_s.checked_mul(d_e) != Some(d) {
        return Err(Error::DimensionMismatch(format!("d = {d} but d_S·d_E = {d_s}·{d_e}")));
    }
    Ok(())
}

fn r1_bracket(mu_abs: f64, g: usize, d: usize, d_e: usize) -> f64 {
    let (g, d, d_e) = (g as f64, d as f64, d_e as f64);
    mu_abs.powi(4) + (g / d).powi(2) + 7.0 / d_e
}

/// Typical-Hamiltonian bound on `‖ρ_S(t) − ρ̄_S‖₁`.
pub fn result1_bound(mu_abs: f64, g: usize, d: usize, d_s: usize, d_e: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    check_dims(d, d_s, d_e)?;
    Ok((d_s as f64).sqrt() / eps * r1_bracket(mu_abs, g, d, d_e).sqrt())
}

/// Bound on the infinite-time average of the trace distance.
pub fn result2_bound(g: usize, d_s: usize, d_e: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if d_e == 0 {
        return Err(Error::InvalidArgument("d_E must be positive".into()));
    }
    let (g, d_s, d_e) = (g as f64, d_s as f64, d_e as f64);
    Ok((g / d_e + 7.0 * d_s / d_e).sqrt() / eps)
}

/// The two published versions of the circuit correction term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R3Form {
    /// `d³·2^{−αC/N}`.
    MainText,
    /// `d⁴·(1 − α/N)^C·d_E·sqrt(d_S)`.
    Appendix,
}

/// Circuit parameters for [`result3_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct R3Params {
    pub gates: u64,
    pub n_qubits: usize,
    pub alpha: f64,
    pub form: R3Form,
}

impl R3Params {
    /// The additive term inside the bracket.
    pub fn extra_term(&self, d: usize, d_s: usize, d_e: usize) -> Result<f64> {
        let n = self.n_qubits as f64;
        if !(self.alpha > 0.0 && self.alpha.is_finite()) || self.n_qubits == 0 {
            return Err(Error::InvalidArgument(format!(
                "need alpha > 0 and N >= 1, got alpha={}, N={}",
                self.alpha, self.n_qubits
            )));
        }
        let c = self.gates as f64;
        let d = d as f64;
        Ok(match self.form {
            R3Form::MainText => d.powi(3) * (-self.alpha * c / n).exp2(),
            R3Form::Appendix => {
                if self.alpha >= n {
                    return Err(Error::InvalidArgument(format!(
                        "appendix form needs alpha < N, got alpha={} with N={}",
                        self.alpha, self.n_qubits
                    )));
                }
                let lambda_c = (c * (-self.alpha / n).ln_1p()).exp();
                d.powi(4) * lambda_c * d_e as f64 * (d_s as f64).sqrt()
            }
        })
    }
}

/// The pointwise bound with the circuit correction for C-gate diagonalizers.
pub fn result3_bound(
    mu_abs: f64,
    g: usize,
    d: usize,
    d_s: usize,
    d_e: usize,
    eps: f64,
    circuit: &R3Params,
) -> Result<f64> {
    check_eps(eps)?;
    check_dims(d, d_s, d_e)?;
    let extra = circuit.extra_term(d, d_s, d_e)?;
    Ok((d_s as f64).sqrt() / eps * (r1_bracket(mu_abs, g, d, d_e) + extra).sqrt())
}

/// Smallest integer C with C ≥ α′N², valid only when α′ > 3/α.
pub fn min_complexity_threshold(n_qubits: usize, alpha: f64, alpha_prime: f64) -> Result<u64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    if !(alpha_prime > 3.0 / alpha) {
        return Err(Error::Regime(format!(
            "alpha' = {alpha_prime} is not above 3/alpha = {}",
            3.0 / alpha
        )));
    }
    let n = n_qubits as f64;
    Ok((alpha_prime * n * n).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn result1_examples() {
        let v = result1_bound(0.0, 1, 256, 2, 128, 0.1).unwrap();
        assert!(rel(v, 3.307_650_489_065_085_6) < 1e-14);
        assert!(result1_bound(1.0, 1, 256, 2, 128, 0.1).unwrap() >= 2f64.sqrt() / 0.1);
        let a = result1_bound(0.2, 1, 64, 4, 16, 0.1).unwrap();
        let b = result1_bound(0.3, 1, 64, 4, 16, 0.1).unwrap();
        let c = result1_bound(0.3, 2, 64, 4, 16, 0.1).unwrap();
        let e = result1_bound(0.3, 2, 64, 4, 16, 0.05).unwrap();
        assert!(a <= b && b <= c && c <= e);
        assert!(result1_bound(0.3, 1, 64, 4, 16, 1.0).is_err());
        assert!(result1_bound(0.3, 1, 64, 4, 8, 0.5).is_err());
    }

    #[test]
    fn result2_examples() {
        let v = result2_bound(1, 2, 1 << 20, 0.1).unwrap();
        assert!(rel(v, 0.037_822_102_990_306_806) < 1e-14);
        let r = result2_bound(3, 4, 64, 0.2).unwrap() / result2_bound(3, 4, 256, 0.2).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
        // bracket equal to eps² gives exactly one
        let v = result2_bound(2, 2, 1600, 0.1).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        assert!(result2_bound(1, 2, 4, 0.0).is_err());
    }

    #[test]
    fn result3_examples() {
        let p = |gates, form| R3Params {
            gates,
            n_qubits: 10,
            alpha: 0.1,
            form,
        };
        let d = 1024;
        let extra = p(300, R3Form::MainText).extra_term(d, 2, 512).unwrap();
        assert!(rel(extra, 2f64.powi(27)) < 1e-13);
        let zero = p(0, R3Form::MainText).extra_term(d, 2, 512).unwrap();
        assert_eq!(zero, 1024f64.powi(3));

        let r1 = result1_bound(0.1, 1, d, 2, 512, 0.1).unwrap();
        for form in [R3Form::MainText, R3Form::Appendix] {
            let mut prev = f64::INFINITY;
            for c in [0, 10, 100, 1000, 10_000, 100_000] {
                let r3 = result3_bound(0.1, 1, d, 2, 512, 0.1, &p(c, form)).unwrap();
                assert!(r3 >= r1 && r3 <= prev);
                prev = r3;
            }
            assert!(rel(prev, r1) < 1e-9, "{form:?}");
        }
        let bad = R3Params {
            gates: 1,
            n_qubits: 2,
            alpha: 2.0,
            form: R3Form::Appendix,
        };
        assert!(bad.extra_term(4, 2, 2).is_err());
    }

    #[test]
    fn complexity_threshold() {
        assert_eq!(min_complexity_threshold(10, 0.1, 31.0).unwrap(), 3100);
        assert_eq!(min_complexity_threshold(20, 0.1, 31.0).unwrap(), 12400);
        assert!(matches!(
            min_complexity_threshold(10, 0.1, 3.0 / 0.1),
            Err(Error::Regime(_))
        ));
    }
}
