//! Coefficients of `Π_{m≥1} (1 − q^m)^e` as exact big integers.
//!
//! For `e = −24` these are the Euler characteristics `χ(Hilb^n(K3))`.
//!
//! Two algorithms are provided:
//!
//! - [`product_power_series`]: sparse pentagonal expansion of
//!   `g = Π(1 − q^m)` followed by the power recurrence obtained from
//!   `g·f' = e·g'·f` for `f = g^e`:
//!
//!   `n·f_n = Σ_{j≥1} ((e + 1)·j − n)·g_j·f_{n−j}`
//!
//!   Only `O(√n)` of the `g_j` are nonzero, so the cost is `O(N^{3/2})`
//!   big-integer operations, with one exact division per coefficient.
//! - [`product_power_series_naive`]: multiplies the truncated factors
//!   `(1 − q^m)^{±1}` in one at a time.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact power-series prefix `c_0 + c_1 q + … + c_N q^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSeries {
    coeffs: Vec<BigInt>,
}

impl CoefficientSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> CoefficientSeries {
        CoefficientSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Truncated product, keeping the smaller of the two orders.
    pub fn mul_truncated(&self, other: &CoefficientSeries) -> CoefficientSeries {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        CoefficientSeries { coeffs: out }
    }
}

/// Nonzero coefficients of `Π(1 − q^m)` up to `q^order`, as `(exponent, ±1)`
/// sorted by exponent. Euler's pentagonal theorem:
/// `Σ_k (−1)^k q^{k(3k−1)/2}` over all integers `k`.
pub fn euler_pentagonal(order: usize) -> Vec<(usize, i8)> {
    let mut terms = vec![(0usize, 1i8)];
    let mut k = 1usize;
    loop {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 > order {
            break;
        }
        terms.push((p1, sign));
        if p2 <= order {
            terms.push((p2, sign));
        }
        k += 1;
    }
    terms
}

/// Extends `coeffs` (a prefix of `Π(1 − q^m)^e`, possibly empty) up to
/// `q^order` with the sparse recurrence.
fn extend_power(coeffs: &mut Vec<BigInt>, e: i64, order: usize) {
    if coeffs.is_empty() {
        coeffs.push(BigInt::one());
    }
    if coeffs.len() > order {
        return;
    }
    let g: Vec<(usize, i8)> = euler_pentagonal(order).into_iter().skip(1).collect();
    let e1 = BigInt::from(e + 1);
    coeffs.reserve(order + 1 - coeffs.len());
    for n in coeffs.len()..=order {
        let mut acc = BigInt::zero();
        let big_n = BigInt::from(n);
        for &(j, sign) in g.iter().take_while(|(j, _)| *j <= n) {
            let weight = &e1 * BigInt::from(j) - &big_n;
            if weight.is_zero() {
                continue;
            }
            let term = weight * &coeffs[n - j];
            if sign > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&big_n);
        debug_assert!(r.is_zero(), "power recurrence must divide exactly");
        coeffs.push(q);
    }
}

/// Coefficients of `Π_{m≥1}(1 − q^m)^e` through `q^order`.
pub fn product_power_series(e: i64, order: usize) -> CoefficientSeries {
    let mut coeffs = Vec::new();
    extend_power(&mut coeffs, e, order);
    CoefficientSeries { coeffs }
}

/// Same series by direct repeated multiplication of truncated factors.
///
/// Multiplying by `(1 − q^m)^{−1}` is an in-place prefix sum with stride `m`;
/// multiplying by `(1 − q^m)` is the reverse difference.
pub fn product_power_series_naive(e: i64, order: usize) -> CoefficientSeries {
    let mut f = vec![BigInt::zero(); order + 1];
    f[0] = BigInt::one();
    for m in 1..=order {
        for _ in 0..e.unsigned_abs() {
            if e < 0 {
                for i in m..=order {
                    let (lo, hi) = f.split_at_mut(i);
                    hi[0] += &lo[i - m];
                }
            } else {
                for i in (m..=order).rev() {
                    let (lo, hi) = f.split_at_mut(i);
                    hi[0] -= &lo[i - m];
                }
            }
        }
    }
    CoefficientSeries { coeffs: f }
}

static HILB_K3: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// `χ(Hilb^n(K3))`, the coefficient of `q^n` in `Π(1 − q^m)^{−24}`.
///
/// Backed by a process-wide table that only ever grows; a larger request
/// extends the cached prefix.
pub fn hilb_euler_k3(n: usize) -> BigInt {
    if let Some(c) = HILB_K3.read().expect("series cache poisoned").get(n) {
        return c.clone();
    }
    let mut table = HILB_K3.write().expect("series cache poisoned");
    extend_power(&mut table, -24, n);
    table[n].clone()
}

/// Returns whether the sparse and naive algorithms agree through `q^order`.
pub fn series_crosscheck(order: usize) -> bool {
    product_power_series(-24, order) == product_power_series_naive(-24, order)
}
