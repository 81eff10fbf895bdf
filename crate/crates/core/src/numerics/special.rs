//! Bessel J₁ and normalized harmonic-oscillator eigenfunctions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Largest argument magnitude `bessel_j1` is specified for.
pub const BESSEL_MAX_ARG: f64 = 1e8;

/// Largest oscillator index accepted by [`hermite_fn`].
pub const HERMITE_MAX_INDEX: usize = 4096;

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 20.0;
const QUADRATURE_NODES: usize = 96;

/// Bessel function of the first kind, order one.
///
/// Three regimes: the power series for |x| ≤ 8, the trapezoid rule on the
/// integral representation `(1/π)∫₀^π cos(τ − x sin τ) dτ` for 8 < |x| < 20
/// (spectrally convergent for a periodic integrand), and the Hankel
/// asymptotic expansion beyond. The Hankel series alone only reaches about
/// 1e-7 at x = 8, hence the middle band.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let v = if ax <= SERIES_LIMIT {
        j1_series(ax)
    } else if ax < ASYMPTOTIC_LIMIT {
        j1_quadrature(ax)
    } else {
        j1_asymptotic(ax)
    };
    sign * v
}

fn j1_series(x: f64) -> f64 {
    // Σ (-1)^m (x/2)^{2m+1} / (m! (m+1)!)
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half;
    let mut sum = term;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        if m > 200.0 {
            break;
        }
    }
    sum
}

fn j1_quadrature(x: f64) -> f64 {
    // Over the full period the integrand cos(τ − x sin τ) is smooth and
    // 2π-periodic; the uniform rule with M nodes is exact up to terms of
    // order J_{M−1}(x), negligible once M exceeds x by a few dozen.
    let m = QUADRATURE_NODES;
    let h = 2.0 * PI / m as f64;
    let mut sum = 0.0;
    for k in 0..m {
        let tau = k as f64 * h;
        sum += (tau - x * tau.sin()).cos();
    }
    sum / m as f64
}

fn j1_asymptotic(x: f64) -> f64 {
    // Hankel expansion with μ = 4ν² = 4:
    // J₁(x) = sqrt(2/(πx)) [P cos χ − Q sin χ], χ = x − 3π/4.
    let mu = 4.0;
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) * inv8x / k as f64;
        if term.abs() >= prev {
            break;
        }
        prev = term.abs();
        // a_k / x^k with alternating signs split between P (even k) and Q (odd k)
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    // cos(x − 3π/4) = (sin x − cos x)/√2, sin(x − 3π/4) = −(sin x + cos x)/√2
    let (s, c) = x.sin_cos();
    let cos_chi = (s - c) * FRAC_1_SQRT_2;
    let sin_chi = -(s + c) * FRAC_1_SQRT_2;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// `2·J₁(x)/x`, continuous at the origin with value 1.
pub fn bessel_jinc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        // 2J₁(x)/x = 1 − x²/8 + x⁴/192 − …
        let x2 = x * x;
        1.0 - x2 / 8.0 + x2 * x2 / 192.0
    } else {
        2.0 * bessel_j1(x) / x
    }
}

/// Running state of the normalized three-term recurrence
/// `φ_{k+1} = x·sqrt(2/(k+1))·φ_k − sqrt(k/(k+1))·φ_{k−1}`.
///
/// Values are kept as `mantissa · exp(log_scale)`: the Gaussian factor
/// starts in `log_scale` and the mantissas are renormalized whenever they
/// grow large, so neither the e^{−x²/2} underflow nor factorial growth can
/// overflow for k up to 4096.
struct HermiteRecurrence {
    x: f64,
    k: usize,
    prev: f64,
    cur: f64,
    log_scale: f64,
}

const RESCALE_AT: f64 = 1e150;

impl HermiteRecurrence {
    fn new(x: f64) -> Self {
        Self {
            x,
            k: 0,
            prev: 0.0,
            cur: PI.powf(-0.25),
            log_scale: -0.5 * x * x,
        }
    }

    /// Advances to k+1, returning the scale factor (≤ 1) applied to the
    /// mantissas during this step so callers can rescale accumulators.
    fn step(&mut self) -> f64 {
        let k = self.k as f64;
        let next = self.x * (2.0 / (k + 1.0)).sqrt() * self.cur - (k / (k + 1.0)).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        let mag = self.cur.abs().max(self.prev.abs());
        if mag > RESCALE_AT {
            let factor = 1.0 / mag;
            self.prev *= factor;
            self.cur *= factor;
            self.log_scale += mag.ln();
            factor
        } else {
            1.0
        }
    }

    fn value(&self) -> f64 {
        if self.cur == 0.0 {
            0.0
        } else {
            self.cur * self.log_scale.exp()
        }
    }
}

/// Normalized oscillator eigenfunction
/// `φ_k(x) = H_k(x) e^{−x²/2} / sqrt(2^k k! sqrt(π))`.
///
/// # Panics
/// If `k > 4096`.
pub fn hermite_fn(k: usize, x: f64) -> f64 {
    assert!(
        k <= HERMITE_MAX_INDEX,
        "oscillator index {k} above {HERMITE_MAX_INDEX}"
    );
    let mut rec = HermiteRecurrence::new(x);
    for _ in 0..k {
        rec.step();
    }
    rec.value()
}

/// `Σ_{k<d} φ_k(x)²`, the diagonal of the GUE kernel, in one pass.
pub fn hermite_kernel_diagonal(d: usize, x: f64) -> f64 {
    if d == 0 {
        return 0.0;
    }
    let mut rec = HermiteRecurrence::new(x);
    // accumulator shares the squared scale exp(2·log_scale)
    let mut acc = rec.cur * rec.cur;
    for _ in 1..d {
        let f = rec.step();
        acc = acc * f * f + rec.cur * rec.cur;
    }
    if acc == 0.0 {
        0.0
    } else {
        acc * (2.0 * rec.log_scale).exp()
    }
}
