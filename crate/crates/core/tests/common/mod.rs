//! Shared helpers for the integration suites: a deterministic PRNG for
//! reproducible random sampling and a power-series inversion oracle for
//! Hilbert series.

use potentia_core::linalg::{rank, rat, RatMatrix};
use potentia_core::Rat;

/// xorshift64*: deterministic, seedable, good enough for sampling test
/// matrices.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish integer in `[lo, hi]`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Small rational with numerator in `[-4, 4]` and denominator in
    /// `{1, 2, 3}`.
    pub fn small_rat(&mut self) -> Rat {
        Rat::new(self.int(-4, 4).into(), self.int(1, 3).into())
    }

    pub fn matrix(&mut self, n: usize) -> RatMatrix {
        let mut m = RatMatrix::new(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.small_rat());
            }
        }
        m
    }

    /// Random invertible matrix (rejection sampling).
    pub fn invertible_matrix(&mut self, n: usize) -> RatMatrix {
        loop {
            let m = self.matrix(n);
            if rank(&m) == n {
                return m;
            }
        }
    }

    /// Random nonzero matrix.
    pub fn nonzero_matrix(&mut self, n: usize) -> RatMatrix {
        loop {
            let m = self.matrix(n);
            if !m.is_zero() {
                return m;
            }
        }
    }
}

/// Coefficients of `1 / Σ denom[i] t^i` up to degree `max_degree`
/// (requires `denom[0] = 1`). Independent oracle for Hilbert series.
pub fn series_inverse(denom: &[Rat], max_degree: usize) -> Vec<Rat> {
    assert!(denom[0] == rat(1), "series must start with 1");
    let mut coeffs = vec![rat(0); max_degree + 1];
    coeffs[0] = rat(1);
    for d in 1..=max_degree {
        let mut acc = rat(0);
        for i in 1..=d.min(denom.len() - 1) {
            acc += denom[i].clone() * coeffs[d - i].clone();
        }
        coeffs[d] = -acc;
    }
    coeffs
}

/// The denominator `1 - (n+1)t + (n+1)t² - t³` of the Hilbert series of
/// `B(M)` for nondegenerate `M`, `n ≥ 2`.
pub fn b_series_denominator(n: usize) -> Vec<Rat> {
    vec![
        rat(1),
        rat(-(n as i64 + 1)),
        rat(n as i64 + 1),
        rat(-1),
    ]
}

/// The alternating denominator `1 - 2t + 2t² - 2t³ + …` of the `n = 1`
/// Hilbert series, truncated at `max_degree`.
pub fn b_series_denominator_n1(max_degree: usize) -> Vec<Rat> {
    let mut out = vec![rat(1)];
    for d in 1..=max_degree {
        out.push(if d % 2 == 0 { rat(2) } else { rat(-2) });
    }
    out
}
