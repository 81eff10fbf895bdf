use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// A permutation of {1,2,3,4} in one-line notation: `Perm4([2,1,4,3])` is
/// (2143). `V_π` acts on four tensor factors by `⟨a|V_π = ⟨a_{π(1)} … a_{π(4)}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([1, 2, 3, 4]);

    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if !(1..=4).contains(&x) || seen[(x - 1) as usize] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation of 1..4")));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Self(images))
    }

    /// π(i) for i in 1..=4.
    pub fn image(self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// `(π∘σ)(i) = π(σ(i))`.
    pub fn compose(self, sigma: Perm4) -> Perm4 {
        Perm4(std::array::from_fn(|i| self.0[(sigma.0[i] - 1) as usize]))
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            out[(x - 1) as usize] = i as u8 + 1;
        }
        Perm4(out)
    }

    pub fn cycles(self) -> u32 {
        let mut seen = [false; 4];
        let mut count = 0;
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = (self.0[j] - 1) as usize;
            }
        }
        count
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Ok(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// Basis index `b` with `⟨a|V_π|b⟩ = 1`, i.e. `b_i = a_{π(i)}`.
    pub(crate) fn act(self, a: [usize; 4]) -> [usize; 4] {
        std::array::from_fn(|i| a[self.image(i + 1) - 1])
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}{b}{c}{d})")
    }
}

impl FromStr for Perm4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .trim_matches(|c| c == '(' || c == ')')
            .bytes()
            .map(|b| b.wrapping_sub(b'0'))
            .collect();
        let arr: [u8; 4] = digits
            .try_into()
            .map_err(|_| Error::Parse(format!("bad permutation {s:?}")))?;
        Perm4::new(arr)
    }
}

/// `tr(V_π V_σ) = d^{cycles(π∘σ)}`.
pub fn permutation_trace_product(pi: Perm4, sigma: Perm4, d: usize) -> f64 {
    (d as f64).powi(pi.compose(sigma).cycles() as i32)
}

/// Dense `V_π` on `(C^d)^{⊗4}`; factor 1 is the most significant digit.
pub fn permutation_operator(pi: Perm4, d: usize) -> Result<ComplexMatrix> {
    if d.pow(4) > 4096 {
        return Err(Error::TooLarge(format!("dense V_pi for d = {d}")));
    }
    let n = d.pow(4);
    let mut v = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        let b = pi.act(digits(a, d));
        v[(a, undigits(b, d))] = 1.0.into();
    }
    Ok(v)
}

pub(crate) fn digits(mut x: usize, d: usize) -> [usize; 4] {
    let mut out = [0; 4];
    for slot in out.iter_mut().rev() {
        *slot = x % d;
        x /= d;
    }
    out
}

pub(crate) fn undigits(a: [usize; 4], d: usize) -> usize {
    a.iter().fold(0, |acc, &x| acc * d + x)
}
