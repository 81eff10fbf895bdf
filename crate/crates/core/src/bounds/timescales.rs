use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::ensembles::{dispersion, IsingParams, Spectrum};

/// Which model a time-scale estimate is drawn from.
#[derive(Debug, Clone, Copy)]
pub enum TimeScaleInput<'a> {
    Spectrum(&'a Spectrum),
    Ising(IsingParams),
    Gue { n_qubits: usize },
}

/// Rough equilibration times. Only the entries the input defines are set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TimeScaleEstimates {
    /// 1/ΔE with ΔE the energy standard deviation.
    pub inverse_width: Option<f64>,
    /// 2^{−N/2}.
    pub gue: Option<f64>,
    /// 1/sqrt(N(1+h²)).
    pub ising: Option<f64>,
    /// Largest Ising eigenvalue, (N/2π)∫ω(φ)dφ.
    pub e_max_ising: Option<f64>,
}

pub fn time_scales(input: TimeScaleInput<'_>) -> TimeScaleEstimates {
    let mut out = TimeScaleEstimates::default();
    match input {
        TimeScaleInput::Spectrum(spec) => {
            let w = spec.delta_e();
            if w > 0.0 {
                out.inverse_width = Some(1.0 / w);
            }
        }
        TimeScaleInput::Gue { n_qubits } => {
            out.gue = Some((-0.5 * n_qubits as f64).exp2());
        }
        TimeScaleInput::Ising(p) => {
            let n = p.n_modes as f64;
            out.ising = Some(1.0 / (n * (1.0 + p.h * p.h)).sqrt());
            out.e_max_ising = Some(ising_e_max(&p));
        }
    }
    out
}

/// Trapezoid rule over one period. The integrand has a kink at φ = 0 when
/// h = 1, where convergence drops to second order and many more points
/// are needed.
pub fn ising_e_max(p: &IsingParams) -> f64 {
    let points: usize = if (p.h - 1.0).abs() < 1e-2 { 1 << 20 } else { 4096 };
    let step = 2.0 * PI / points as f64;
    let integral: f64 = (0..points).map(|i| dispersion(p.h, i as f64 * step)).sum::<f64>() * step;
    p.n_modes as f64 / (2.0 * PI) * integral
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_e_max_closed_forms() {
        let t = time_scales(TimeScaleInput::Ising(IsingParams::new(9, 0.0).unwrap()));
        assert!((t.e_max_ising.unwrap() - 9.0).abs() < 1e-12);
        let t = time_scales(TimeScaleInput::Ising(IsingParams::new(9, 1.0).unwrap()));
        let exact = 4.0 * 9.0 / PI;
        assert!((t.e_max_ising.unwrap() - exact).abs() / exact < 1e-8);
        assert!((t.ising.unwrap() - 1.0 / 18f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gue_and_spectrum_scales() {
        let t = time_scales(TimeScaleInput::Gue { n_qubits: 8 });
        assert_eq!(t.gue, Some(0.0625));
        let s = Spectrum::new(&[-1.0, 1.0]).unwrap();
        assert_eq!(time_scales(TimeScaleInput::Spectrum(&s)).inverse_width, Some(1.0));
        let flat = Spectrum::new(&[3.0; 4]).unwrap();
        assert_eq!(time_scales(TimeScaleInput::Spectrum(&flat)).inverse_width, None);
    }
}
