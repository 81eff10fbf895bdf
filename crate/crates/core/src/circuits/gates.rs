use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Fixed one- and two-qubit gates.
///
/// Two-qubit gates read their first target as the more significant local
/// bit; for `Cnot` the first target is the control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Cz,
    Swap,
}

impl Gate {
    pub const ALL: [Gate; 11] = [
        Gate::H,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::S,
        Gate::Sdg,
        Gate::T,
        Gate::Tdg,
        Gate::Cnot,
        Gate::Cz,
        Gate::Swap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::S => "S",
            Gate::Sdg => "Sdg",
            Gate::T => "T",
            Gate::Tdg => "Tdg",
            Gate::Cnot => "CNOT",
            Gate::Cz => "CZ",
            Gate::Swap => "SWAP",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Gate::Cnot | Gate::Cz | Gate::Swap => 2,
            _ => 1,
        }
    }

    pub fn inverse(self) -> Gate {
        match self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::T => Gate::Tdg,
            Gate::Tdg => Gate::T,
            g => g,
        }
    }

    /// Row-major entries of the 2^arity × 2^arity unitary.
    pub fn entries(self) -> Vec<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            Gate::H => vec![s, s, s, -s],
            Gate::X => vec![o, l, l, o],
            Gate::Y => vec![o, -i, i, o],
            Gate::Z => vec![l, o, o, -l],
            Gate::S => vec![l, o, o, i],
            Gate::Sdg => vec![l, o, o, -i],
            Gate::T => vec![l, o, o, Complex64::from_polar(1.0, FRAC_PI_4)],
            Gate::Tdg => vec![l, o, o, Complex64::from_polar(1.0, -FRAC_PI_4)],
            Gate::Cnot => vec![
                l, o, o, o, //
                o, l, o, o, //
                o, o, o, l, //
                o, o, l, o,
            ],
            Gate::Cz => vec![
                l, o, o, o, //
                o, l, o, o, //
                o, o, l, o, //
                o, o, o, -l,
            ],
            Gate::Swap => vec![
                l, o, o, o, //
                o, o, l, o, //
                o, l, o, o, //
                o, o, o, l,
            ],
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let n = 1 << self.arity();
        ComplexMatrix::from_vec(n, n, self.entries()).expect("gate table shape")
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Gate::ALL
            .iter()
            .copied()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown gate {s:?}")))
    }
}

/// The gates a random circuit draws from, plus the design-gap constant α
/// that enters the circuit bound through λ = 1 − α/N.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSet {
    gates: Vec<Gate>,
    alpha: f64,
}

/// α used when none is configured. A placeholder, not a derived value.
pub const DEFAULT_ALPHA: f64 = 0.1;

impl GateSet {
    pub fn new(gates: Vec<Gate>, alpha: f64) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::InvalidArgument("empty gate set".into()));
        }
        if !gates.iter().any(|g| g.arity() == 2) {
            return Err(Error::InvalidArgument(
                "gate set needs at least one two-qubit gate".into(),
            ));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
        }
        for g in &gates {
            let r = g.matrix().unitarity_residual();
            if r > 1e-12 {
                return Err(Error::Contract(format!("gate {g} not unitary ({r:.2e})")));
            }
        }
        Ok(Self { gates, alpha })
    }

    /// {H, T, CNOT} with α = 0.1.
    pub fn standard() -> Self {
        Self::new(vec![Gate::H, Gate::T, Gate::Cnot], DEFAULT_ALPHA).expect("standard gate set")
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        Self::new(std::mem::take(&mut self.gates), alpha)
    }

    pub fn from_names(names: &[impl AsRef<str>], alpha: f64) -> Result<Self> {
        let gates = names
            .iter()
            .map(|n| n.as_ref().parse())
            .collect::<Result<Vec<Gate>>>()?;
        Self::new(gates, alpha)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Fractions (q₁, q₂) of single- and two-qubit gates.
    pub fn arity_fractions(&self) -> (f64, f64) {
        let n = self.gates.len() as f64;
        let ones = self.gates.iter().filter(|g| g.arity() == 1).count() as f64;
        (ones / n, (n - ones) / n)
    }
}

impl Default for GateSet {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_gates_unitary_and_inverses_cancel() {
        for g in Gate::ALL {
            let m = g.matrix();
            assert!(m.unitarity_residual() < 1e-14, "{g}");
            let p = &g.inverse().matrix() * &m;
            assert!((&p - &ComplexMatrix::identity(m.rows())).frobenius_norm() < 1e-14, "{g}");
        }
    }

    #[test]
    fn names_round_trip() {
        for g in Gate::ALL {
            assert_eq!(g.name().parse::<Gate>().unwrap(), g);
        }
        assert_eq!("cnot".parse::<Gate>().unwrap(), Gate::Cnot);
        assert!("toffoli".parse::<Gate>().is_err());
    }

    #[test]
    fn gate_set_validation() {
        assert!(GateSet::new(vec![Gate::H, Gate::T], 0.1).is_err());
        assert!(GateSet::new(vec![Gate::Cnot], 0.0).is_err());
        assert!(GateSet::new(vec![], 0.1).is_err());
        let gs = GateSet::standard();
        assert_eq!(gs.arity_fractions(), (2.0 / 3.0, 1.0 / 3.0));
        assert_eq!(gs.alpha(), DEFAULT_ALPHA);
    }
}
