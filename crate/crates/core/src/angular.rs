//! Closed-form angular integrals in the x-space method: polygon
//! integrals in arbitrary even dimension, `l = 0` Gaunt coefficients
//! with their selection rules, and the star-gluing coupling
//! coefficients in `D = 4`.
//!
//! The overall constant of the coupling coefficients is carried as a
//! single normalization `kappa`, fixed by the exact-quadrature value
//! `banana3_angular(0,0,0) = Vol(S^3)^2`; only ratios are claimed
//! beyond that.

use crate::oracle::chebyshev_u_quadrature;
use crate::special::{
    dim_harmonics, factorial_f64, gamma_half_integer, gegenbauer, sphere_volume_general,
};
use std::f64::consts::PI;

/// Default normalization for the `l = 0` coupling coefficients:
/// `Vol(S^3)^2 = 4 pi^4`, pinned by the `banana3_angular` oracle at
/// degrees `(0,0,0)`.
pub fn kappa_default() -> f64 {
    let v = 2.0 * PI * PI;
    v * v
}

/// Triple selection rule: sum even and triangle inequalities.
pub fn selection_allowed(n1: u32, n2: u32, n3: u32) -> bool {
    if (n1 + n2 + n3) % 2 != 0 {
        return false;
    }
    let (a, b, c) = (n1 as i64, n2 as i64, n3 as i64);
    (a - b).abs() <= c && c <= a + b
}

/// Angular integral of a polygon with `k` edges at common degree `n`:
/// `(lambda 2 pi^{lambda+1} / (Gamma(lambda+1)(n+lambda)))^k dim H_n(S^{D-1})`.
pub fn polygon_angular(n: u32, k: u32, d: u32) -> f64 {
    assert!(k >= 2 && d >= 4 && d % 2 == 0);
    let lambda = (d - 2) / 2;
    let base = lambda as f64 * 2.0 * PI.powi(lambda as i32 + 1)
        / (factorial_f64(lambda) * (n as f64 + lambda as f64));
    base.powi(k as i32) * dim_harmonics(n, d) as f64
}

/// `l = 0` Gaunt coefficient for three spherical harmonics on
/// `S^{D-1}`: zero outside the selection domain; inside,
/// the closed form below with the sign fixed to `+1`.
pub fn gaunt_l0(n1: u32, n2: u32, n3: u32, d: u32) -> f64 {
    assert!(d >= 3);
    if !selection_allowed(n1, n2, n3) {
        return 0.0;
    }
    let j = (n1 + n2 + n3) / 2;
    // (J + D - 3)! / ((D-3)! Gamma(J + D/2))
    let mut inner = factorial_f64(j + d - 3) / factorial_f64(d - 3) / gamma_half_integer(2 * j + d);
    for &ni in &[n1, n2, n3] {
        let dn = dim_harmonics(ni, d) as f64;
        inner *= (ni as f64 + d as f64 / 2.0 - 1.0)
            * gamma_half_integer(2 * (j - ni) + d - 2)
            / (dn * factorial_f64(j - ni));
    }
    inner.sqrt() / gamma_half_integer(d)
}

/// Coupling coefficient for two trivalent stars glued along an edge of
/// degree `n`, all outer labels `l_i = 0`, in `D = 4`:
/// `kappa (n+1)^{-3} prod (n_i+1)^{-1/2}` on the double selection
/// domain, zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCoefficient {
    pub outer: [u32; 4],
    pub internal: u32,
    pub value: f64,
}

pub fn coupling_k_l0_d4(n: u32, outer: [u32; 4], kappa: f64) -> CouplingCoefficient {
    let allowed =
        selection_allowed(n, outer[0], outer[1]) && selection_allowed(n, outer[2], outer[3]);
    let value = if allowed {
        let damp: f64 = outer.iter().map(|&ni| (ni as f64 + 1.0).sqrt().recip()).product();
        kappa * (n as f64 + 1.0).powi(-3) * damp
    } else {
        0.0
    };
    CouplingCoefficient { outer, internal: n, value }
}

/// The 3-banana angular data at degrees `(n_1, n_2, n_3)` on the three
/// parallel edges, in the `l = 0` channel: the exact-degree quadrature
/// `Vol(S^3) Vol(S^2) int prod C_{n_i}(x) (1-x^2)^{1/2} dx`, which
/// detects the selection domain and fixes the constant `Vol(S^3)^2`,
/// damped by the coupling structure `prod (n_i+1)^{-3}`.
pub fn banana3_angular(n1: u32, n2: u32, n3: u32) -> f64 {
    let degree = (n1 + n2 + n3) as usize;
    let nodes = degree / 2 + 2;
    let raw = chebyshev_u_quadrature(
        |x| {
            gegenbauer(n1, 1.0, x) * gegenbauer(n2, 1.0, x) * gegenbauer(n3, 1.0, x)
        },
        nodes,
    );
    let vol3 = sphere_volume_general(3);
    let vol2 = sphere_volume_general(2);
    let damp: f64 = [n1, n2, n3]
        .iter()
        .map(|&ni| (ni as f64 + 1.0).powi(-3))
        .product();
    vol3 * vol2 * raw * damp
}

/// Normalized quadrature route to the `D = 4` Gaunt coefficient, used
/// as the oracle for `gaunt_l0`: each factor is the zonal-normalized
/// `C_n / sqrt(n+1)` and the measure ratio `Vol(S^2)/Vol(S^3)` makes
/// the `(0,0,0)` value 1.
pub fn gaunt_l0_d4_quadrature(n1: u32, n2: u32, n3: u32) -> f64 {
    let degree = (n1 + n2 + n3) as usize;
    let nodes = degree / 2 + 2;
    let raw = chebyshev_u_quadrature(
        |x| {
            gegenbauer(n1, 1.0, x) * gegenbauer(n2, 1.0, x) * gegenbauer(n3, 1.0, x)
        },
        nodes,
    );
    let norm: f64 = [n1, n2, n3].iter().map(|&ni| (ni as f64 + 1.0).sqrt().recip()).product();
    sphere_volume_general(2) / sphere_volume_general(3) * raw * norm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_angular_d4() {
        // (2 pi^2)^k / (n+1)^{k-2}
        for k in 2..=5u32 {
            for n in 0..=4u32 {
                let expect = (2.0 * PI * PI).powi(k as i32) / (n as f64 + 1.0).powi(k as i32 - 2);
                assert!((polygon_angular(n, k, 4) - expect).abs() < 1e-6 * expect.abs());
            }
        }
        let expect = (2.0 * PI * PI).powi(3) / 2.0;
        assert!((polygon_angular(1, 3, 4) - expect).abs() < 1e-9);
    }

    #[test]
    fn gaunt_selection_and_values() {
        assert_eq!(gaunt_l0(1, 1, 1, 4), 0.0); // odd sum
        assert_eq!(gaunt_l0(0, 0, 3, 4), 0.0); // triangle violated (and odd)
        assert_eq!(gaunt_l0(1, 1, 4, 4), 0.0); // triangle violated
        assert!((gaunt_l0(0, 0, 0, 4) - 1.0).abs() < 1e-14);
        let expect = (2.0f64 * 2.0 * 3.0).powf(-0.5);
        assert!((gaunt_l0(1, 1, 2, 4) - expect).abs() < 1e-14);
        // D = 4 reduction: prod (n_i + 1)^{-1/2} on the whole domain
        for n1 in 0..=6u32 {
            for n2 in 0..=6u32 {
                for n3 in 0..=6u32 {
                    if selection_allowed(n1, n2, n3) {
                        let expect =
                            ((n1 + 1) as f64 * (n2 + 1) as f64 * (n3 + 1) as f64).powf(-0.5);
                        assert!(
                            (gaunt_l0(n1, n2, n3, 4) - expect).abs() < 1e-12,
                            "({n1},{n2},{n3})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gaunt_quadrature_oracle() {
        for n1 in 0..=5u32 {
            for n2 in 0..=5u32 {
                for n3 in 0..=5u32 {
                    let q = gaunt_l0_d4_quadrature(n1, n2, n3);
                    let f = gaunt_l0(n1, n2, n3, 4);
                    assert!((q - f).abs() < 1e-11, "({n1},{n2},{n3}): {q} vs {f}");
                }
            }
        }
    }

    #[test]
    fn gaunt_permutation_symmetry() {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for n1 in 0..=5u32 {
            for n2 in 0..=5u32 {
                for n3 in 0..=5u32 {
                    let v = [n1, n2, n3];
                    let base = gaunt_l0(n1, n2, n3, 4);
                    for p in perms {
                        let g = gaunt_l0(v[p[0]], v[p[1]], v[p[2]], 4);
                        assert!((g - base).abs() <= 1e-15 * base.abs());
                    }
                    // also exercise a higher dimension
                    let base6 = gaunt_l0(n1, n2, n3, 6);
                    for p in perms {
                        let g = gaunt_l0(v[p[0]], v[p[1]], v[p[2]], 6);
                        assert!((g - base6).abs() <= 1e-14 * base6.abs().max(1e-300));
                    }
                }
            }
        }
    }

    #[test]
    fn coupling_coefficients() {
        let kappa = kappa_default();
        let k0 = coupling_k_l0_d4(0, [0, 0, 0, 0], kappa);
        assert!((k0.value - kappa).abs() < 1e-12);
        let k = coupling_k_l0_d4(2, [1, 1, 1, 1], kappa);
        let ratio = k.value / k0.value;
        assert!((ratio - (1.0 / 27.0) * (1.0 / 4.0)).abs() < 1e-14);
        // off the double selection domain
        assert_eq!(coupling_k_l0_d4(1, [0, 0, 0, 0], kappa).value, 0.0);
        assert_eq!(coupling_k_l0_d4(2, [1, 1, 0, 1], kappa).value, 0.0);
    }

    #[test]
    fn banana3_angular_structure() {
        let v000 = banana3_angular(0, 0, 0);
        assert!((v000 - 4.0 * PI.powi(4)).abs() < 1e-9);
        assert!(banana3_angular(1, 1, 1).abs() < 1e-12);
        // constant after undoing the cubic damping, zero off-domain
        for n1 in 0..=6u32 {
            for n2 in 0..=6u32 {
                for n3 in 0..=6u32 {
                    let v = banana3_angular(n1, n2, n3);
                    let undo =
                        ((n1 + 1) * (n2 + 1) * (n3 + 1)).pow(3) as f64;
                    if selection_allowed(n1, n2, n3) {
                        assert!(
                            (v * undo - v000).abs() < 1e-8 * v000,
                            "({n1},{n2},{n3}): {}",
                            v * undo
                        );
                    } else {
                        assert!(v.abs() < 1e-12, "({n1},{n2},{n3})");
                    }
                }
            }
        }
        // ratio law between two allowed triples
        let r = banana3_angular(1, 1, 2) / banana3_angular(2, 2, 2);
        let expect = (27.0f64 / 12.0).powi(3);
        assert!((r - expect).abs() < 1e-9 * expect);
    }
}
