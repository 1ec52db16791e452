//! The end-to-end verification suite: every acceptance criterion as a
//! pass/fail check with its tolerance pinned in code. The CLI `verify`
//! command and the `acceptance` integration test both run this.

use crate::amplitudes::{
    banana3_amplitude_quadrature, banana3_amplitude_termwise, banana3_brute_series,
    banana3_domain_sum, banana3_polylog_series, BananaDomain,
};
use crate::angular::{banana3_angular, selection_allowed};
use crate::graph::{
    acyclic_orientations, census, chromatic_polynomial, eval_poly, induced_subgraphs,
    is_biconnected, Graph,
};
use crate::oracle::{
    adaptive_simpson, config_sector_mc, gauss_weighted_quadrature, sphere_mc,
    brute_restricted_sum, McConfig,
};
use crate::polylog::{
    eml_decompose_t, eval_polylog, freitas_reduce, Domain, PolylogSpec,
};
use crate::special::{dim_harmonics, gegenbauer, gegenbauer_norm};
use crate::wonderful::{convergence_report, motive_class, single_blowup_class, singularity_order,
    TatePolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, Copy)]
pub struct AcceptanceConfig {
    pub mc_samples: u64,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        Self { mc_samples: 1_000_000, seed: 42, jobs: 1 }
    }
}

pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionOutcome> {
    vec![
        criterion_1(cfg),
        criterion_2(),
        criterion_3(),
        criterion_4(cfg),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(cfg),
        criterion_12(),
    ]
}

fn outcome(id: u32, name: &str, passed: bool, details: String) -> CriterionOutcome {
    CriterionOutcome { id, name: name.to_string(), passed, details }
}

/// 1: |acyclic orientations| = (-1)^{|V|} P(-1), exhaustively for
/// connected graphs on <= 5 vertices plus 100 seeded random
/// multigraphs on <= 7 vertices.
fn criterion_1(cfg: &AcceptanceConfig) -> CriterionOutcome {
    let mut checked = 0u64;
    for n in 1..=5 {
        for g in census::connected_simple_graphs(n) {
            if !orientation_chromatic_ok(&g) {
                return outcome(1, "orientation-chromatic identity", false, format!(
                    "failed on census graph {}", g.to_json()));
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut random_checked = 0;
    while random_checked < 100 {
        let n = rng.gen_range(2..=7usize);
        let mut labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        labels.sort();
        // spanning tree plus extra simple edges, then random multiplicities
        let mut simple: Vec<(usize, usize)> = Vec::new();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            simple.push((u, v));
        }
        let extra_budget = 12usize.saturating_sub(simple.len());
        for _ in 0..rng.gen_range(0..=extra_budget) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && !simple.contains(&(a.min(b), a.max(b))) {
                simple.push((a.min(b), a.max(b)));
            }
        }
        let mut edges = Vec::new();
        for &(a, b) in &simple {
            for _ in 0..rng.gen_range(1..=3) {
                edges.push((a, b));
            }
        }
        let g = Graph::new(labels, edges).expect("constructed loopless");
        if !g.is_connected() {
            continue;
        }
        if !orientation_chromatic_ok(&g) {
            return outcome(1, "orientation-chromatic identity", false, format!(
                "failed on random multigraph {}", g.to_json()));
        }
        random_checked += 1;
        checked += 1;
    }
    outcome(1, "orientation-chromatic identity", true, format!("{checked} graphs checked"))
}

fn orientation_chromatic_ok(g: &Graph) -> bool {
    let p = chromatic_polynomial(g);
    let sign = if g.vertex_count() % 2 == 0 { 1 } else { -1 };
    acyclic_orientations(g).len() as i64 == sign * eval_poly(&p, -1)
}

/// 2: dim H_n(S^3) = (n+1)^2 exactly for n <= 50.
fn criterion_2() -> CriterionOutcome {
    for n in 0..=50u32 {
        if dim_harmonics(n, 4) != ((n as u64 + 1) * (n as u64 + 1)) {
            return outcome(2, "spherical harmonics dimension on S^3", false, format!("n = {n}"));
        }
    }
    outcome(2, "spherical harmonics dimension on S^3", true, "n <= 50 exact".into())
}

/// 3: Gegenbauer orthogonality by exact-degree quadrature,
/// |quad - closed form| <= 1e-10 for n, m <= 10, lambda in {1, 2}.
fn criterion_3() -> CriterionOutcome {
    let tol = 1e-10;
    let mut worst = 0.0f64;
    for lambda in [1u32, 2] {
        for n in 0..=10u32 {
            for m in 0..=10u32 {
                let quad = gauss_weighted_quadrature(
                    |x| gegenbauer(n, lambda as f64, x) * gegenbauer(m, lambda as f64, x),
                    lambda - 1,
                    16,
                );
                let closed = if n == m { gegenbauer_norm(n, lambda) } else { 0.0 };
                worst = worst.max((quad - closed).abs());
            }
        }
    }
    outcome(
        3,
        "Gegenbauer orthogonality vs quadrature",
        worst <= tol,
        format!("max |quad - closed| = {worst:.3e} (tol {tol:.0e})"),
    )
}

/// 4: two-point Gegenbauer reduction on S^3 by Monte Carlo, within
/// 3 sigma and 2% relative error for n, m <= 3.
fn criterion_4(cfg: &AcceptanceConfig) -> CriterionOutcome {
    let mc = McConfig {
        sample_count: cfg.mc_samples,
        seed: cfg.seed,
        shard_count: 16,
        jobs: cfg.jobs,
    };
    let phi = 1.2f64; // fixed angle between the outer directions
    let omega1 = [1.0, 0.0, 0.0, 0.0];
    let omega2 = [phi.cos(), phi.sin(), 0.0, 0.0];
    let mut details = String::new();
    for n in 0..=3u32 {
        for m in 0..=3u32 {
            let f = move |p: &[f64]| {
                let d1: f64 = (0..4).map(|i| omega1[i] * p[i]).sum();
                let d2: f64 = (0..4).map(|i| p[i] * omega2[i]).sum();
                gegenbauer(m, 1.0, d1) * gegenbauer(n, 1.0, d2)
            };
            let est = match sphere_mc(&f, 4, 1, mc) {
                Ok(v) => v,
                Err(e) => return outcome(4, "two-point reduction on S^3 (MC)", false, e.to_string()),
            };
            let closed = if n == m {
                2.0 * PI * PI / (n as f64 + 1.0) * gegenbauer(n, 1.0, phi.cos())
            } else {
                0.0
            };
            let diff = (est.value - closed).abs();
            let three_sigma = 3.0 * est.tail_bound;
            let scale = if closed != 0.0 { closed.abs() } else { 2.0 * PI * PI };
            if diff > three_sigma.max(0.02 * scale) {
                return outcome(4, "two-point reduction on S^3 (MC)", false, format!(
                    "n={n} m={m}: est {} vs {closed} (3sigma {three_sigma:.3e})", est.value));
            }
            if n == m && closed.abs() > 1e-9 {
                let rel = diff / closed.abs();
                if rel > 0.02 && diff > three_sigma {
                    return outcome(4, "two-point reduction on S^3 (MC)", false, format!(
                        "n=m={n}: relative error {rel:.3e}"));
                }
            }
        }
    }
    details.push_str("n,m <= 3 within 3 sigma / 2%");
    outcome(4, "two-point reduction on S^3 (MC)", true, details)
}

/// 5: banana angular structure: value * prod (n_i+1)^3 constant to
/// 1e-8 on the selection domain for n_i <= 6, zero off it (<= 1e-12).
fn criterion_5() -> CriterionOutcome {
    let reference = banana3_angular(0, 0, 0);
    let mut worst_on = 0.0f64;
    let mut worst_off = 0.0f64;
    for n1 in 0..=6u32 {
        for n2 in 0..=6u32 {
            for n3 in 0..=6u32 {
                let v = banana3_angular(n1, n2, n3);
                if selection_allowed(n1, n2, n3) {
                    let undo = (((n1 + 1) * (n2 + 1) * (n3 + 1)) as f64).powi(3);
                    worst_on = worst_on.max((v * undo - reference).abs() / reference);
                } else {
                    worst_off = worst_off.max(v.abs());
                }
            }
        }
    }
    outcome(
        5,
        "coupling-coefficient structure (banana angular)",
        worst_on <= 1e-8 && worst_off <= 1e-12,
        format!("on-domain spread {worst_on:.3e}, off-domain max {worst_off:.3e}"),
    )
}

/// 6: 3-banana telescoping: brute domain sums match closed forms at
/// 1e-10; total matches the polylog form at 1e-8; amplitude stable
/// under truncation doubling within 1e-6.
fn criterion_6() -> CriterionOutcome {
    let n_trunc = 180u32;
    for &t in &[0.3f64, 0.5, 0.7] {
        let li6 = match eval_polylog(6, t * t) {
            Ok(v) => v.value,
            Err(e) => return outcome(6, "3-banana telescoping", false, e.to_string()),
        };
        let closed = |which: BananaDomain| -> Result<f64, crate::Error> {
            Ok(match which {
                BananaDomain::D1 => li6 / (t * t),
                BananaDomain::D2 => li6 / (t * t) - 1.0,
                BananaDomain::D3 => {
                    let mp = PolylogSpec::new(Domain::MP, vec![3, 6], vec![t, t]).with_parity(
                        vec![crate::polylog::Parity::Odd, crate::polylog::Parity::Even],
                    );
                    -1.0 + 64.0 * t.powi(-3)
                        * crate::polylog::eval_restricted_polylog(&mp, 1e-12)?.value
                }
                BananaDomain::D4 | BananaDomain::D5 => {
                    let tt = PolylogSpec::new(Domain::T, vec![3, 3, 3], vec![t, t, t])
                        .with_total_parity(crate::polylog::Parity::Odd);
                    t.powi(-3) * crate::polylog::eval_restricted_polylog(&tt, 1e-12)?.value
                        + 1.0
                        - li6 / (t * t)
                }
            })
        };
        for which in [
            BananaDomain::D1,
            BananaDomain::D2,
            BananaDomain::D3,
            BananaDomain::D4,
            BananaDomain::D5,
        ] {
            let brute = banana3_domain_sum(t, which, n_trunc);
            let cf = match closed(which) {
                Ok(v) => v,
                Err(e) => return outcome(6, "3-banana telescoping", false, e.to_string()),
            };
            if (brute - cf).abs() > 1e-10 {
                return outcome(6, "3-banana telescoping", false, format!(
                    "domain {which:?} at t={t}: brute {brute} vs closed {cf}"));
            }
        }
        let total = match banana3_brute_series(t, n_trunc) {
            Ok(v) => v,
            Err(e) => return outcome(6, "3-banana telescoping", false, e.to_string()),
        };
        let rhs = match banana3_polylog_series(t, 1e-11) {
            Ok(v) => v,
            Err(e) => return outcome(6, "3-banana telescoping", false, e.to_string()),
        };
        if (total.value - rhs.value).abs() > 1e-8 {
            return outcome(6, "3-banana telescoping", false, format!(
                "total at t={t}: {} vs {}", total.value, rhs.value));
        }
    }
    // truncation stability of the amplitude
    let eps = 1e-6;
    let a200 = banana3_amplitude_termwise(200).expect("termwise");
    let a400 = banana3_amplitude_termwise(400).expect("termwise");
    if (a200.value - a400.value).abs() > eps {
        return outcome(6, "3-banana telescoping", false, format!(
            "amplitude unstable under truncation doubling: {} vs {}", a200.value, a400.value));
    }
    let quad = match banana3_amplitude_quadrature(eps) {
        Ok(v) => v,
        Err(e) => return outcome(6, "3-banana telescoping", false, e.to_string()),
    };
    if (a400.value - quad.value).abs() > 2.0 * eps {
        return outcome(6, "3-banana telescoping", false, format!(
            "termwise vs quadrature amplitude: {} vs {}", a400.value, quad.value));
    }
    outcome(6, "3-banana telescoping", true, format!(
        "domains at t in {{0.3,0.5,0.7}}; amplitude {:.12}", a400.value))
}

/// 7: Euler–Maclaurin decomposition of the triangular polylog agrees
/// with brute force within max(1e-6, reported remainder); the
/// remainder bound is never violated.
fn criterion_7() -> CriterionOutcome {
    for (s, zs) in [([3i32, 3, 3], [0.5f64, 0.7]), ([2, 2, 4], [0.5, 0.7])] {
        for &z in &zs {
            // independent brute sum over the T domain by shells
            let spec = PolylogSpec::new(Domain::T, vec![s[0], s[1], s[2]], vec![z, z, z]);
            let shells = (3.0 * (140.0 / (1.0 - z)).min(400.0)) as u64;
            let brute = match brute_restricted_sum(&spec, shells) {
                Ok(v) => v,
                Err(e) => return outcome(7, "Euler-Maclaurin decomposition", false, e.to_string()),
            };
            for n in [4usize, 6] {
                let dec = match eml_decompose_t(s[0], s[1], s[2], z, n) {
                    Ok(d) => d,
                    Err(e) => {
                        return outcome(7, "Euler-Maclaurin decomposition", false, e.to_string())
                    }
                };
                let diff = (dec.total.value - brute.value).abs();
                let tol = 1e-6f64.max(dec.remainder_bound);
                if diff > tol {
                    return outcome(7, "Euler-Maclaurin decomposition", false, format!(
                        "s={s:?} z={z} N={n}: diff {diff:.3e} > tol {tol:.3e}"));
                }
                let budget = dec.remainder_bound + dec.total.tail_bound + brute.tail_bound;
                if diff > budget {
                    return outcome(7, "Euler-Maclaurin decomposition", false, format!(
                        "s={s:?} z={z} N={n}: remainder bound violated ({diff:.3e} > {budget:.3e})"));
                }
            }
        }
    }
    outcome(7, "Euler-Maclaurin decomposition", true,
        "8 configurations within max(1e-6, remainder)".into())
}

/// 8: zeta reductions: freitas moments match adaptive quadrature to
/// 1e-10 for m <= 5, n <= 5; two-path polygon values match their
/// integral route to 1e-10 after removing the pi-power prefactor.
fn criterion_8() -> CriterionOutcome {
    for m in 0..=5u32 {
        for n in 1..=5u32 {
            let exact = freitas_reduce(m, n).expect("valid range").eval().value;
            let quad = polylog_moment_quadrature(m, n);
            if (exact - quad).abs() > 1e-10 {
                return outcome(8, "zeta reductions", false, format!(
                    "I({m},{n}): exact {exact} vs quadrature {quad}"));
            }
        }
    }
    for (k1, k2) in [(1u32, 1u32), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (1, 4), (2, 3)] {
        let amp = crate::amplitudes::polygon_two_path_value(k1, k2).expect("valid");
        let exact = amp.exact.expect("exact part present");
        let combo_value = exact.combo.eval().value;
        // same quantity through direct quadrature of the kernel integral
        let kk = (k1 + k2 - 2) as i32;
        let li_order = (k1 + k2) as i32;
        let f = move |t: f64| -> f64 {
            let li = if t >= 1.0 {
                crate::special::zeta(li_order as u32).map(|v| v.value).unwrap_or(f64::NAN)
            } else {
                eval_polylog(li_order, t).map(|v| v.value).unwrap_or(f64::NAN)
            };
            li * (1.0 - t).powi(kk)
        };
        let (quad, _) = adaptive_simpson(&f, 0.0, 1.0, 1e-13);
        let pref = 2.0
            / (crate::special::factorial_f64(k1 - 1) * crate::special::factorial_f64(k2 - 1));
        if (combo_value - pref * quad).abs() > 1e-10 {
            return outcome(8, "zeta reductions", false, format!(
                "two-path ({k1},{k2}): exact {combo_value} vs quadrature {}", pref * quad));
        }
    }
    outcome(8, "zeta reductions", true, "moments m<=5, n<=5 and two-path k1+k2<=5".into())
}

/// Adaptive quadrature of `int_0^1 x^m Li_n(x) dx` with an analytic
/// endpoint correction for the n = 1 logarithmic singularity.
fn polylog_moment_quadrature(m: u32, n: u32) -> f64 {
    if n == 1 {
        let delta = 1e-12;
        let f = move |x: f64| x.powi(m as i32) * -(-x).ln_1p();
        let (main, _) = adaptive_simpson(&f, 0.0, 1.0 - delta, 1e-13);
        // int_{1-d}^1 -ln(1-x) dx = d (1 - ln d), with x^m within [(1-d)^m, 1]
        main + delta * (1.0 - delta.ln())
    } else {
        let f = move |x: f64| {
            let li = if x >= 1.0 {
                crate::special::zeta(n).map(|v| v.value).unwrap_or(f64::NAN)
            } else {
                eval_polylog(n as i32, x).map(|v| v.value).unwrap_or(f64::NAN)
            };
            x.powi(m as i32) * li
        };
        adaptive_simpson(&f, 0.0, 1.0, 1e-13).0
    }
}

/// 9: motive classes: single edge equals the direct blowup route for
/// dimX in 1..=4; triangle and banana classes are integer polynomials
/// in L with positive leading coefficient; L = 0 specialization.
fn criterion_9() -> CriterionOutcome {
    let se = census::single_edge();
    for dim_x in 1..=4u32 {
        let mut x = TatePolynomial::zero();
        for k in 0..=dim_x {
            x.set(k, 1);
        }
        let formula = motive_class(&se, &x, dim_x).expect("single edge");
        let direct = single_blowup_class(&se, &x, dim_x).expect("single edge");
        if formula != direct {
            return outcome(9, "motive class of the compactification", false, format!(
                "single edge at dimX={dim_x}: {formula} vs {direct}"));
        }
    }
    for g in [census::triangle(), census::banana3()] {
        let x = TatePolynomial::parse("1 + L + L^2 + L^3 + L^4").expect("parse");
        let m = motive_class(&g, &x, 4).expect("motive");
        if m.leading_coeff() <= 0 {
            return outcome(9, "motive class of the compactification", false,
                format!("non-positive leading coefficient for {}", g.to_json()));
        }
        let expect_const = x.coeff(0).pow(2 * g.vertex_count() as u32);
        if m.coeff(0) != expect_const {
            return outcome(9, "motive class of the compactification", false,
                "L = 0 specialization mismatch".into());
        }
    }
    outcome(9, "motive class of the compactification", true,
        "blowup cross-check dimX 1..4; integrality and L=0 checks".into())
}

/// 10: singularity orders: the two closed forms agree on every
/// biconnected induced subgraph of the census; pinned values for the
/// banana (0) and the single edge (-4) at D = 4.
fn criterion_10() -> CriterionOutcome {
    let mut checked = 0u64;
    let mut graphs: Vec<Graph> = vec![census::single_edge(), census::triangle(),
        census::banana3(), census::path3(), census::polygon(4), census::polygon(5)];
    graphs.extend(census::connected_simple_graphs(4));
    for g in &graphs {
        for sub in induced_subgraphs(g, None) {
            if sub.edge_count() == 0 {
                continue;
            }
            if !is_biconnected(&sub.to_graph(g)).unwrap_or(false) {
                continue;
            }
            for d in [2u32, 4, 6, 8] {
                let direct = match singularity_order(g, &sub, d) {
                    Ok(v) => v,
                    Err(e) => return outcome(10, "singularity orders", false, e.to_string()),
                };
                let sg = sub.to_graph(g);
                let via_betti = 2 * d as i64 * sg.betti_one() as i64
                    - (d as i64 + 2) * sub.edge_count() as i64
                    + 2;
                if direct != via_betti {
                    return outcome(10, "singularity orders", false, format!(
                        "forms disagree on {} at D={d}", sub.label_string(g)));
                }
                checked += 1;
            }
        }
    }
    let b = census::banana3();
    let bw = induced_subgraphs(&b, Some(2)).pop().expect("whole banana");
    let se = census::single_edge();
    let sew = induced_subgraphs(&se, Some(2)).pop().expect("whole edge");
    let ok = singularity_order(&b, &bw, 4) == Ok(0) && singularity_order(&se, &sew, 4) == Ok(-4);
    outcome(10, "singularity orders", ok, format!("{checked} subgraph/dimension pairs"))
}

/// 11: sector decomposition: the sum of per-sector MC integrals equals
/// the full-domain MC within combined 3 sigma (and 5% relative) for
/// the single edge and the triangle.
fn criterion_11(cfg: &AcceptanceConfig) -> CriterionOutcome {
    let mc = McConfig {
        sample_count: cfg.mc_samples,
        seed: cfg.seed,
        shard_count: 16,
        jobs: cfg.jobs,
    };
    let mut details = String::new();
    for g in [census::single_edge(), census::triangle()] {
        let full = match config_sector_mc(&g, None, 1.0, mc) {
            Ok(v) => v,
            Err(e) => return outcome(11, "sector decomposition (MC)", false, e.to_string()),
        };
        let mut sector_sum = 0.0;
        let mut sector_var = 0.0;
        for o in acyclic_orientations(&g) {
            let v = match config_sector_mc(&g, Some(&o), 1.0, mc) {
                Ok(v) => v,
                Err(e) => return outcome(11, "sector decomposition (MC)", false, e.to_string()),
            };
            sector_sum += v.value;
            sector_var += v.tail_bound * v.tail_bound;
        }
        let combined_sigma = (sector_var + full.tail_bound * full.tail_bound).sqrt();
        let diff = (sector_sum - full.value).abs();
        if diff > (3.0 * combined_sigma).max(0.05 * full.value.abs()) {
            return outcome(11, "sector decomposition (MC)", false, format!(
                "{}: sectors {} vs full {} (3sigma {:.3e})",
                g.to_json(), sector_sum, full.value, 3.0 * combined_sigma));
        }
        details.push_str(&format!(
            "|V|={}: sectors {:.6} vs full {:.6}; ", g.vertex_count(), sector_sum, full.value));
    }
    outcome(11, "sector decomposition (MC)", true, details)
}

/// 12: convergence report: D = 4 passes all three conditions on the
/// census; D = 2 fails condition (i).
fn criterion_12() -> CriterionOutcome {
    let mut graphs: Vec<Graph> = vec![census::single_edge(), census::triangle(),
        census::banana3(), census::path3(), census::polygon(4), census::polygon(5)];
    graphs.extend(census::connected_simple_graphs(4));
    for g in &graphs {
        let r4 = match convergence_report(g, 4) {
            Ok(r) => r,
            Err(e) => return outcome(12, "convergence at infinity", false, e.to_string()),
        };
        if !r4.all_pass {
            return outcome(12, "convergence at infinity", false, format!(
                "D=4 fails on {}", g.to_json()));
        }
        let r2 = match convergence_report(g, 2) {
            Ok(r) => r,
            Err(e) => return outcome(12, "convergence at infinity", false, e.to_string()),
        };
        if r2.infinity_direction.1 {
            return outcome(12, "convergence at infinity", false,
                "D=2 unexpectedly satisfies condition (i)".into());
        }
    }
    outcome(12, "convergence at infinity", true, format!("{} census graphs", graphs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        // the cheap, deterministic subset; the full suite runs in the
        // acceptance integration test
        for c in [criterion_2(), criterion_3(), criterion_5(), criterion_9(), criterion_10(),
            criterion_12()]
        {
            assert!(c.passed, "criterion {}: {}", c.id, c.details);
        }
    }
}
