//! Scalar special-function kernel: Gegenbauer polynomials and their
//! orthogonality constants, sphere volumes, spherical-harmonic
//! dimensions, zonal coefficients, Bernoulli numbers and zeta values.

use crate::error::Error;
use crate::series::{KahanSum, SeriesValue};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use std::f64::consts::PI;

/// Spacetime dimension `D = 2*lambda + 2` with `D` even and `>= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension {
    d: u32,
    lambda: u32,
}

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d < 4 || d % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "D must be even and >= 4, got {d}"
            )));
        }
        Ok(Self { d, lambda: (d - 2) / 2 })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }
}

/// `C_n^{(lambda)}(x)` by upward recurrence, stable on `[-1, 1]`.
///
/// The generating-function definition `(1 - 2tx + t^2)^{-lambda}`
/// is kept as a test oracle only.
pub fn gegenbauer(n: u32, lambda: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * x * (kf + lambda - 1.0) * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_n^{(lambda)}(1) = binom(n + 2*lambda - 1, n)` for integer `lambda >= 1`.
pub fn gegenbauer_at_one(n: u32, lambda: u32) -> f64 {
    binomial_u128((n + 2 * lambda - 1) as u64, n as u64) as f64
}

/// Orthogonality normalization of `C_n^{(lambda)}` against the weight
/// `(1 - x^2)^{lambda - 1/2}`:
/// `pi * 2^{1-2*lambda} * Gamma(n + 2*lambda) / (n! (n + lambda) Gamma(lambda)^2)`.
pub fn gegenbauer_norm(n: u32, lambda: u32) -> f64 {
    assert!(lambda >= 1, "integer lambda >= 1 expected");
    // Gamma(n + 2*lambda) / (n! * Gamma(lambda)^2) as an exact ratio.
    let mut ratio = 1.0f64;
    // (n + 2*lambda - 1)! / n!
    for k in (n + 1)..=(n + 2 * lambda - 1) {
        ratio *= k as f64;
    }
    let gl = factorial_f64(lambda - 1);
    ratio /= gl * gl;
    PI * 0.5f64.powi(2 * lambda as i32 - 1) * ratio / (n as f64 + lambda as f64)
}

/// Volume of the unit sphere `S^{D-1}` for even `D = 2*lambda + 2`:
/// `2 pi^{lambda+1} / Gamma(lambda + 1)`.
pub fn sphere_volume(d: u32) -> Result<f64> {
    let dim = Dimension::new(d)?;
    let lambda = dim.lambda();
    Ok(2.0 * PI.powi(lambda as i32 + 1) / factorial_f64(lambda))
}

/// Volume of `S^{m}` for any `m >= 1`: `2 pi^{(m+1)/2} / Gamma((m+1)/2)`.
pub fn sphere_volume_general(m: u32) -> f64 {
    let half = (m + 1) as f64 / 2.0;
    2.0 * PI.powf(half) / gamma_half_integer(m + 1)
}

/// Dimension of the degree-`n` spherical harmonics on `S^{D-1}`:
/// `binom(D-1+n, n) - binom(D-3+n, n-2)`, second term zero for `n < 2`.
pub fn dim_harmonics(n: u32, d: u32) -> u64 {
    assert!(d >= 3, "D >= 3 expected");
    let a = binomial_u128((d - 1 + n) as u64, n as u64);
    let b = if n >= 2 {
        binomial_u128((d - 3 + n) as u64, (n - 2) as u64)
    } else {
        0
    };
    (a - b) as u64
}

/// Zonal coefficient `c_{D,n}` relating Gegenbauer polynomials to zonal
/// spherical harmonics, with the reproducing value `C_n^{(lambda)}(1)`
/// returned alongside as a cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZonalCoeff {
    /// `Vol(S^{D-1}) * (D - 2) / (2n + D - 2)`.
    pub c: f64,
    /// `2*lambda*dim H_n / (2(n + lambda))`, which must equal `C_n^{(lambda)}(1)`.
    pub gegenbauer_at_one: f64,
}

pub fn zonal_coeff(d: u32, n: u32) -> Result<ZonalCoeff> {
    if d < 3 {
        return Err(Error::InvalidDimension(format!("D >= 3 expected, got {d}")));
    }
    let vol = if d % 2 == 0 && d >= 4 {
        sphere_volume(d)?
    } else {
        sphere_volume_general(d - 1)
    };
    let c = vol * (d as f64 - 2.0) / (2.0 * n as f64 + d as f64 - 2.0);
    let lambda = (d as f64 - 2.0) / 2.0;
    let dimh = dim_harmonics(n, d) as f64;
    let at_one = 2.0 * lambda * dimh / (2.0 * (n as f64 + lambda));
    Ok(ZonalCoeff { c, gegenbauer_at_one: at_one })
}

/// Truncated Gegenbauer expansion of the propagator
/// `|x - y|^{-2*lambda} = rho^{-2*lambda} sum_n (r/rho)^n C_n(cos theta)`
/// for `r < rho`, with a certified geometric tail bound.
pub fn propagator_truncation(
    lambda: u32,
    rho: f64,
    r: f64,
    cos_theta: f64,
    n_max: u32,
) -> Result<SeriesValue> {
    if !(r < rho) || r < 0.0 {
        return Err(Error::PropagatorRange);
    }
    if cos_theta.abs() > 1.0 + 1e-12 {
        return Err(Error::OutOfRange(format!("|cos theta| <= 1 expected, got {cos_theta}")));
    }
    let q = r / rho;
    let mut sum = KahanSum::new();
    let mut qn = 1.0;
    for n in 0..=n_max {
        sum.add(qn * gegenbauer(n, lambda as f64, cos_theta));
        qn *= q;
    }
    // |C_n(x)| <= C_n(1); the ratio C_{n+1}(1)/C_n(1) = (n + 2*lambda)/(n + 1)
    // decreases in n, so the tail is dominated by a geometric series.
    let head = qn * gegenbauer_at_one(n_max + 1, lambda);
    let ratio = q * (n_max as f64 + 2.0 * lambda as f64 + 1.0) / (n_max as f64 + 2.0);
    let tail = if ratio < 1.0 { head / (1.0 - ratio) } else { f64::INFINITY };
    let scale = rho.powi(-2 * lambda as i32);
    Ok(SeriesValue::new(scale * sum.value(), scale * tail, (n_max + 1) as u64))
}

/// Exact Bernoulli numbers `b_k` (convention `b_1 = -1/2`) and the
/// Bernoulli polynomial evaluator `B_N(x)`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn new(max_order: usize) -> Self {
        let mut numbers: Vec<BigRational> = Vec::with_capacity(max_order + 1);
        numbers.push(BigRational::one());
        for m in 1..=max_order {
            let mut acc = BigRational::zero();
            for (j, bj) in numbers.iter().enumerate() {
                acc += BigRational::from(BigInt::from(binomial_u128(m as u64 + 1, j as u64)))
                    * bj.clone();
            }
            let denom = BigRational::from(BigInt::from(m as i64 + 1));
            numbers.push(-acc / denom);
        }
        Self { numbers }
    }

    pub fn max_order(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, k: usize) -> &BigRational {
        &self.numbers[k]
    }

    pub fn number_f64(&self, k: usize) -> f64 {
        self.numbers[k].to_f64().expect("bernoulli number fits in f64")
    }

    /// `B_N(x) = sum_k binom(N, k) b_k x^{N-k}`.
    pub fn polynomial(&self, n: usize, x: f64) -> f64 {
        let mut acc = 0.0;
        for k in 0..=n {
            acc += binomial_u128(n as u64, k as u64) as f64
                * self.number_f64(k)
                * x.powi((n - k) as i32);
        }
        acc
    }

    /// `max |B_N(x)|` over `[0, 1]` for even `N`, which is `|b_N|`.
    pub fn even_poly_bound(&self, n: usize) -> f64 {
        assert!(n >= 2 && n % 2 == 0);
        self.number_f64(n).abs()
    }
}

/// Exact rational Bernoulli number `b_k`.
pub fn bernoulli(k: usize) -> BigRational {
    BernoulliTable::new(k).numbers[k].clone()
}

/// `zeta(s)` for integer `s >= 2` by direct summation with an
/// Euler–Maclaurin tail correction and a rigorous remainder bound.
pub fn zeta(s: u32) -> Result<SeriesValue> {
    if s < 2 {
        return Err(Error::Divergent(format!("zeta({s}) diverges")));
    }
    let cutoff: u64 = 24;
    let order: usize = 10; // even
    let table = BernoulliTable::new(order);
    let sf = s as f64;
    let mut sum = KahanSum::new();
    for n in 1..=cutoff {
        sum.add((n as f64).powf(-sf));
    }
    let m = cutoff as f64;
    // Tail sum_{n > M} n^{-s} via Euler–Maclaurin at the left endpoint M:
    // integral + half-term + derivative corrections.
    sum.add(m.powf(1.0 - sf) / (sf - 1.0));
    sum.add(-0.5 * m.powf(-sf));
    let mut pochhammer = 1.0; // s (s+1) ... (s+k-2)
    for k in 2..=order {
        pochhammer *= sf + (k as f64 - 2.0);
        let deriv = if k % 2 == 0 {
            // f^{(k-1)}(M) = (-1)^{k-1} s(s+1)...(s+k-2) M^{-(s+k-1)}
            -pochhammer * m.powf(-(sf + k as f64 - 1.0))
        } else {
            pochhammer * m.powf(-(sf + k as f64 - 1.0))
        };
        sum.add(-table.number_f64(k) / factorial_f64(k as u32) * deriv);
    }
    // |R| <= |b_N|/N! * prod_{j<N}(s+j) * M^{-(s+N-1)} / (s+N-1)
    let n = order as f64;
    let mut prod = 1.0;
    for j in 0..order {
        prod *= sf + j as f64;
    }
    let bound = table.even_poly_bound(order) / factorial_f64(order as u32) * prod
        * m.powf(-(sf + n - 1.0))
        / (sf + n - 1.0);
    Ok(SeriesValue::new(sum.value(), bound, cutoff + order as u64))
}

/// `n!` exactly in f64 (valid through 170!).
pub fn factorial_f64(n: u32) -> f64 {
    let mut acc = 1.0f64;
    for k in 2..=n as u64 {
        acc *= k as f64;
    }
    acc
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `Gamma(a/2)` for positive integer `a` (integer and half-integer
/// arguments), exact up to f64 rounding.
pub fn gamma_half_integer(a: u32) -> f64 {
    assert!(a >= 1);
    if a % 2 == 0 {
        factorial_f64(a / 2 - 1)
    } else {
        // Gamma(1/2) = sqrt(pi); Gamma(x+1) = x Gamma(x).
        let mut acc = PI.sqrt();
        let mut x = 0.5;
        while x + 1.0 <= a as f64 / 2.0 + 1e-9 {
            acc *= x;
            x += 1.0;
        }
        acc
    }
}

/// Exact rational check of `C_n^{(lambda)}(1) = lambda * dim H_n / (n + lambda)`
/// used by the invariants suite.
pub fn zonal_identity_exact(n: u32, d: u32) -> bool {
    let lambda = BigInt::from((d - 2) / 2);
    if d % 2 != 0 {
        return false;
    }
    let lhs = BigRational::from(BigInt::from(
        binomial_u128((n + d - 2 - 1) as u64, n as u64) as i128,
    ));
    let dimh = BigInt::from(dim_harmonics(n, d));
    let rhs = BigRational::new(lambda * dimh, BigInt::from(n) + BigInt::from((d - 2) / 2));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Taylor coefficients of (1 - 2tx + t^2)^{-lambda} via exact power
    /// series division, the generating-function oracle for `gegenbauer`.
    fn generating_fn_coeffs(lambda: u32, x: f64, n_max: usize) -> Vec<f64> {
        // q(t) = 1 - 2xt + t^2; compute q^{-lambda} order by order.
        // First q^{-1} by series inversion, then raise to lambda by
        // repeated multiplication.
        let mut inv = vec![0.0f64; n_max + 1];
        inv[0] = 1.0;
        let q = [1.0, -2.0 * x, 1.0];
        for n in 1..=n_max {
            let mut acc = 0.0;
            for j in 1..=2.min(n) {
                acc += q[j] * inv[n - j];
            }
            inv[n] = -acc;
        }
        let mut pow = inv.clone();
        for _ in 1..lambda {
            let mut next = vec![0.0f64; n_max + 1];
            for i in 0..=n_max {
                for j in 0..=(n_max - i) {
                    next[i + j] += pow[i] * inv[j];
                }
            }
            pow = next;
        }
        pow
    }

    #[test]
    fn gegenbauer_small_values() {
        assert_eq!(gegenbauer(0, 1.0, 0.3), 1.0);
        assert!((gegenbauer(1, 1.0, 0.5) - 1.0).abs() < 1e-15);
        assert!(gegenbauer(2, 1.0, 0.5).abs() < 1e-15); // 4x^2 - 1 at 1/2
    }

    #[test]
    fn gegenbauer_matches_generating_function() {
        for &lambda in &[1u32, 2, 3] {
            for &x in &[-0.9f64, 0.0, 0.7] {
                let coeffs = generating_fn_coeffs(lambda, x, 15);
                for n in 0..=15u32 {
                    let direct = gegenbauer(n, lambda as f64, x);
                    assert!(
                        (direct - coeffs[n as usize]).abs() <= 1e-12 * direct.abs().max(1.0),
                        "lambda={lambda} x={x} n={n}: {direct} vs {}",
                        coeffs[n as usize]
                    );
                }
            }
        }
    }

    #[test]
    fn norms_and_volumes() {
        assert!((gegenbauer_norm(0, 1) - PI / 2.0).abs() < 1e-14);
        // oracle: int C_1^2 (1-x^2)^{1/2} dx = int 4x^2 (1-x^2)^{1/2} dx = pi/2
        assert!((gegenbauer_norm(1, 1) - PI / 2.0).abs() < 1e-14);
        assert!((sphere_volume(4).unwrap() - 2.0 * PI * PI).abs() < 1e-12);
        assert!((sphere_volume(6).unwrap() - PI.powi(3)).abs() < 1e-12);
        assert!((sphere_volume_general(2) - 4.0 * PI).abs() < 1e-12);
        assert!((sphere_volume_general(3) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn harmonics_dimensions() {
        assert_eq!(dim_harmonics(0, 4), 1);
        assert_eq!(dim_harmonics(2, 4), 9);
        for n in 0..=50 {
            assert_eq!(dim_harmonics(n, 4), ((n + 1) * (n + 1)) as u64);
        }
        assert_eq!(dim_harmonics(3, 6), 50); // C(8,3) - C(6,1)
    }

    #[test]
    fn zonal_coefficients() {
        let z = zonal_coeff(4, 0).unwrap();
        assert!((z.c - 2.0 * PI * PI).abs() < 1e-12);
        for n in 0..=10u32 {
            let z = zonal_coeff(4, n).unwrap();
            assert!((z.c - 2.0 * PI * PI / (n as f64 + 1.0)).abs() < 1e-12);
            assert!((z.gegenbauer_at_one - gegenbauer(n, 1.0, 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn zonal_identity_rational() {
        for &d in &[4u32, 6, 8] {
            for n in 0..=30 {
                assert!(zonal_identity_exact(n, d), "n={n} D={d}");
            }
        }
    }

    #[test]
    fn propagator_expansion() {
        // r = 0: only n = 0 survives.
        let v = propagator_truncation(1, 2.0, 0.0, 0.3, 10).unwrap();
        assert!((v.value - 0.25).abs() < 1e-15);
        // aligned points: 1/(1 - q)^2 with q = 1/2.
        let v = propagator_truncation(1, 1.0, 0.5, 1.0, 200).unwrap();
        assert!((v.value - 4.0).abs() < 1e-12, "{}", v.value);
        // random point vs direct norm.
        let (rho, r, c) = (1.3f64, 0.55f64, -0.4f64);
        let direct = (rho * rho + r * r - 2.0 * rho * r * c).powi(-1);
        let v = propagator_truncation(1, rho, r, c, 60).unwrap();
        assert!((v.value - direct).abs() < 1e-10);
        assert!((v.value - direct).abs() <= v.tail_bound + 1e-14);
        // increasing N never violates the previously reported bound
        let mut prev = propagator_truncation(1, rho, r, c, 10).unwrap();
        for n in 11..40 {
            let next = propagator_truncation(1, rho, r, c, n).unwrap();
            assert!((next.value - prev.value).abs() <= prev.tail_bound * (1.0 + 1e-12));
            prev = next;
        }
        assert!(propagator_truncation(1, 1.0, 1.0, 0.0, 5).is_err());
    }

    #[test]
    fn bernoulli_numbers() {
        let t = BernoulliTable::new(12);
        assert_eq!(t.number_f64(0), 1.0);
        assert_eq!(t.number_f64(1), -0.5);
        assert!((t.number_f64(2) - 1.0 / 6.0).abs() < 1e-15);
        assert!((t.number_f64(4) + 1.0 / 30.0).abs() < 1e-15);
        assert_eq!(t.number_f64(3), 0.0);
        assert_eq!(t.number_f64(5), 0.0);
        // Euler–Maclaurin identity on f(t) = t^2 forces b_2 = 1/6:
        // sum_{n=0}^{N} n^2 = N^3/3 + N^2/2 + N/6.
        let n = 17f64;
        let direct: f64 = (0..=17).map(|k| (k * k) as f64).sum();
        assert!((direct - (n.powi(3) / 3.0 + n * n / 2.0 + n / 6.0)).abs() < 1e-9);
    }

    #[test]
    fn zeta_values() {
        let z2 = zeta(2).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-12);
        let z3 = zeta(3).unwrap();
        assert!((z3.value - 1.2020569031595943).abs() < 1e-12);
        assert!(z3.tail_bound < 1e-12);
        assert!(zeta(1).is_err());
        // brute-force cross-check: the partial sum plus its integral
        // bracket must contain the reported value
        for s in 2..=7u32 {
            let cut = 200_000u64;
            let direct: f64 = (1..=cut).map(|n| (n as f64).powi(-(s as i32))).sum();
            let z = zeta(s).unwrap();
            let tail_hi = (cut as f64).powi(1 - s as i32) / (s as f64 - 1.0);
            assert!(z.value >= direct - 1e-12, "s={s}");
            assert!(z.value - direct <= tail_hi * (1.0 + 1e-9) + 1e-12, "s={s}");
        }
    }

    #[test]
    fn dimension_type() {
        assert!(Dimension::new(4).is_ok());
        assert!(Dimension::new(5).is_err());
        assert!(Dimension::new(2).is_err());
        assert_eq!(Dimension::new(6).unwrap().lambda(), 2);
    }
}
