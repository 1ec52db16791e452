//! Restricted multiple polylogarithms over product, strictly-ordered,
//! and triangular summation domains with parity constraints, the
//! Mordell–Tornheim and Apostol–Vu series, the Euler–Maclaurin
//! decomposition of the triangular sums, and exact zeta-value
//! reductions of polylogarithm moments.

use crate::error::Error;
use crate::series::{KahanSum, SeriesValue};
use crate::special::{factorial_f64, zeta, BernoulliTable};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Per-index or total parity constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(&self, n: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// Summation domain tag.
///
/// `P`: independent indices; `MP`: strictly increasing indices
/// (multiple polylogarithm); `T`: the triangular domain
/// `n2 > n1 >= 1`, `n2 - n1 < n3 < n2 + n1`. `MT` and `AV` add an
/// aggregate factor `z^{n1+...+nk} / (n1+...+nk)^s` over the `P`
/// (respectively `MP`) domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    P,
    MP,
    T,
    MT,
    AV,
}

/// Aggregate slot `(s_{k+1}, z_{k+1})` applied to `n_1 + ... + n_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub s: i32,
    pub z: f64,
}

/// A restricted-polylogarithm evaluation request.
///
/// JSON form:
/// `{"domain":"T","parity":["any","any","even"],"s":[3,3,3],"z":[0.7,0.7,0.7]}`
/// with optional `"total_parity"` and, for MT/AV, `"aggregate":{"s":2,"z":1.0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolylogSpec {
    pub domain: Domain,
    pub s: Vec<i32>,
    pub z: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parity: Vec<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_parity: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aggregate: Option<Aggregate>,
}

impl PolylogSpec {
    pub fn new(domain: Domain, s: Vec<i32>, z: Vec<f64>) -> Self {
        Self { domain, s, z, parity: Vec::new(), total_parity: None, aggregate: None }
    }

    pub fn with_parity(mut self, parity: Vec<Parity>) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_total_parity(mut self, p: Parity) -> Self {
        self.total_parity = Some(p);
        self
    }

    pub fn with_aggregate(mut self, s: i32, z: f64) -> Self {
        self.aggregate = Some(Aggregate { s, z });
        self
    }

    pub fn k(&self) -> usize {
        self.s.len()
    }

    pub fn parity_at(&self, i: usize) -> Parity {
        self.parity.get(i).copied().unwrap_or(Parity::Any)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s.len() != self.z.len() {
            return Err(Error::OutOfRange("|s| must equal |z|".into()));
        }
        if self.s.is_empty() {
            return Err(Error::OutOfRange("empty exponent vector".into()));
        }
        if !self.parity.is_empty() && self.parity.len() != self.s.len() {
            return Err(Error::OutOfRange("parity length must match |s|".into()));
        }
        match self.domain {
            Domain::T if self.s.len() != 3 => {
                Err(Error::OutOfRange("domain T requires k = 3".into()))
            }
            Domain::MT | Domain::AV if self.aggregate.is_none() => {
                Err(Error::OutOfRange("MT/AV require an aggregate slot".into()))
            }
            Domain::P | Domain::MP | Domain::T if self.aggregate.is_some() => {
                Err(Error::OutOfRange("aggregate slot only valid for MT/AV".into()))
            }
            _ => Ok(()),
        }
    }

    /// Largest per-step geometric ratio: `max |z_i|`, multiplied by
    /// `|z_agg|` when an aggregate slot is present.
    fn effective_q(&self) -> f64 {
        let q = self.z.iter().fold(0.0f64, |a, &z| a.max(z.abs()));
        match self.aggregate {
            Some(ag) => q * ag.z.abs(),
            None => q,
        }
    }
}

/// `Li_s(z) = sum z^n / n^s` with a rigorous tail bound.
pub fn eval_polylog(s: i32, z: f64) -> Result<SeriesValue> {
    if z.abs() > 1.0 {
        return Err(Error::OutOfRange(format!("|z| <= 1 required, got {z}")));
    }
    if z.abs() == 1.0 {
        if z > 0.0 {
            if s < 2 {
                return Err(Error::Divergent(format!("Li_{s}(1) diverges")));
            }
            return zeta(s as u32);
        }
        // z = -1
        if s == 1 {
            return Ok(SeriesValue::new(-std::f64::consts::LN_2, 0.0, 0));
        }
        if s < 1 {
            return Err(Error::NoConvergenceBound(format!("Li_{s}(-1) not summable here")));
        }
        let zv = zeta(s as u32)?;
        let factor = 0.5f64.powi(s - 1) - 1.0;
        return Ok(SeriesValue::new(factor * zv.value, factor.abs() * zv.tail_bound, zv.terms_used));
    }
    match s {
        1 => return Ok(SeriesValue::new(-(-z).ln_1p(), 0.0, 0)),
        0 => return Ok(SeriesValue::new(z / (1.0 - z), 0.0, 0)),
        _ => {}
    }
    let q = z.abs();
    if q == 0.0 {
        return Ok(SeriesValue::exact(0.0));
    }
    let poly_pow = if s < 0 { (-s) as u32 } else { 0 };
    let mut sum = KahanSum::new();
    let mut zn = 1.0f64;
    let mut n = 0u64;
    loop {
        n += 1;
        zn *= z;
        sum.add(zn * (n as f64).powi(-s));
        if n >= 8 {
            let bound = geom_poly_tail(q, poly_pow, n);
            if bound <= 1e-16 * sum.value().abs().max(1e-300) || bound < 1e-300 {
                return Ok(SeriesValue::new(sum.value(), bound, n));
            }
        }
        if n > 40_000_000 {
            return Err(Error::NoConvergenceBound("series too slow".into()));
        }
    }
}

/// Parity-restricted single polylogarithm:
/// even indices give `2^{-s} Li_s(z^2)`, odd the complement.
pub fn eval_polylog_parity(s: i32, z: f64, parity: Parity) -> Result<SeriesValue> {
    match parity {
        Parity::Any => eval_polylog(s, z),
        Parity::Even => {
            let inner = eval_polylog(s, z * z)?;
            Ok(inner.scale(0.5f64.powi(s)))
        }
        Parity::Odd => {
            let all = eval_polylog(s, z)?;
            let even = eval_polylog_parity(s, z, Parity::Even)?;
            Ok(SeriesValue::new(
                all.value - even.value,
                all.tail_bound + even.tail_bound,
                all.terms_used + even.terms_used,
            ))
        }
    }
}

/// Rigorous bound on `sum_{n > m} n^p q^n` for `0 <= q < 1`.
pub fn geom_poly_tail(q: f64, p: u32, m: u64) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    let m1 = (m + 1) as f64;
    let first = m1.powi(p as i32) * q.powf(m1);
    let ratio = q * ((m1 + 1.0) / m1).powi(p as i32);
    if ratio < 1.0 {
        first / (1.0 - ratio)
    } else {
        f64::INFINITY
    }
}

/// `int_M^inf t^{-s} (1 + ln t)^l dt` for `s > 1`, `l <= 2`.
fn log_tail_int(s: f64, l: u32, m: f64) -> f64 {
    let a = s - 1.0;
    let lm = 1.0 + m.ln();
    let base = m.powf(-a);
    match l {
        0 => base / a,
        1 => base * (lm / a + 1.0 / (a * a)),
        2 => base * (lm * lm / a + 2.0 * lm / (a * a) + 2.0 / (a * a * a)),
        _ => f64::INFINITY,
    }
}

/// partial-sum bound for `sum_{n <= m} n^{-s}`: `zeta(s)` when `s >= 2`,
/// `1 + ln m` when `s = 1`.
fn partial_sum_bound(s: i32, m: f64) -> f64 {
    if s >= 2 {
        zeta(s as u32).map(|v| v.value + v.tail_bound).unwrap_or(f64::INFINITY)
    } else if s == 1 {
        1.0 + m.ln()
    } else {
        f64::INFINITY
    }
}

/// Evaluate a restricted multiple polylogarithm within `eps`.
///
/// Domain `P` factorizes into a product of single polylogarithms; `MP`
/// and `T` are summed directly with prefix accumulation; `MT`/`AV`
/// delegate to the aggregate-slot evaluator. Inputs on the boundary of
/// the unit polydisk must satisfy the per-domain convergence
/// certificate, otherwise the evaluation refuses.
pub fn eval_restricted_polylog(spec: &PolylogSpec, eps: f64) -> Result<SeriesValue> {
    spec.validate()?;
    let q = spec.effective_q();
    if q > 1.0 + 1e-14 {
        return Err(Error::OutOfRange("arguments outside the closed unit polydisk".into()));
    }
    if spec.z.iter().any(|&z| z == 0.0) || spec.aggregate.map_or(false, |a| a.z == 0.0) {
        // every term carries z_i^{n_i} with n_i >= 1
        return Ok(SeriesValue::exact(0.0));
    }
    match spec.domain {
        Domain::P => {
            if spec.total_parity.is_some() {
                return eval_p_total_parity(spec);
            }
            let mut total = SeriesValue::exact(1.0);
            for i in 0..spec.k() {
                let f = eval_polylog_parity(spec.s[i], spec.z[i], spec.parity_at(i))?;
                let tail = total.tail_bound * (f.value.abs() + f.tail_bound)
                    + total.value.abs() * f.tail_bound;
                total = SeriesValue::new(total.value * f.value, tail, total.terms_used + f.terms_used);
            }
            Ok(total)
        }
        Domain::MP => eval_mp_direct(spec, eps),
        Domain::T => eval_t_domain(spec, eps),
        Domain::MT | Domain::AV => eval_aggregate(spec, eps),
    }
}

/// `P` with a total parity constraint: the total parity of a product
/// domain is determined by the per-index parity classes, so the sum
/// factorizes over admissible parity assignments.
fn eval_p_total_parity(spec: &PolylogSpec) -> Result<SeriesValue> {
    let k = spec.k();
    let tp = spec.total_parity.expect("caller checked");
    let mut total = SeriesValue::exact(0.0);
    for mask in 0..(1u32 << k) {
        let class =
            |i: usize| if mask >> i & 1 == 1 { Parity::Odd } else { Parity::Even };
        let consistent = (0..k).all(|i| match spec.parity_at(i) {
            Parity::Any => true,
            p => p == class(i),
        });
        if !consistent || !tp.admits(mask.count_ones() as u64) {
            continue;
        }
        let mut prod = SeriesValue::exact(1.0);
        for i in 0..k {
            let f = eval_polylog_parity(spec.s[i], spec.z[i], class(i))?;
            let tail = prod.tail_bound * (f.value.abs() + f.tail_bound)
                + prod.value.abs() * f.tail_bound;
            prod = SeriesValue::new(prod.value * f.value, tail, prod.terms_used + f.terms_used);
        }
        total = total.add(prod);
    }
    Ok(total)
}

/// Direct summation over strictly increasing indices (`k <= 3`) with
/// prefix accumulation in the largest index.
fn eval_mp_direct(spec: &PolylogSpec, eps: f64) -> Result<SeriesValue> {
    let k = spec.k();
    if k > 3 {
        return Err(Error::OutOfRange("direct summation supports k <= 3".into()));
    }
    let q = spec.effective_q();
    let m = choose_truncation_mp(spec, q, eps)?;
    // handle k = 1 quickly
    if k == 1 {
        let mut sum = KahanSum::new();
        let mut terms = 0u64;
        for n in 1..=m {
            if !spec.parity_at(0).admits(n) {
                continue;
            }
            if let Some(tp) = spec.total_parity {
                if !tp.admits(n) {
                    continue;
                }
            }
            sum.add(spec.z[0].powi(n as i32) * (n as f64).powi(-spec.s[0]));
            terms += 1;
        }
        return Ok(SeriesValue::new(sum.value(), mp_tail_bound(spec, q, m), terms));
    }
    let mut sum = KahanSum::new();
    let mut terms = 0u64;
    if k == 2 {
        // prefix over n1 < n2, split by parity of n1
        let mut prefix = [0.0f64; 2];
        for n2 in 1..=m {
            let outer = spec.z[1].powi(n2 as i32) * (n2 as f64).powi(-spec.s[1]);
            if spec.parity_at(1).admits(n2) {
                for r in 0..2u64 {
                    if prefix[r as usize] == 0.0 {
                        continue;
                    }
                    if let Some(tp) = spec.total_parity {
                        if !tp.admits(r + n2) {
                            continue;
                        }
                    }
                    sum.add(outer * prefix[r as usize]);
                    terms += 1;
                }
            }
            if spec.parity_at(0).admits(n2) {
                prefix[(n2 % 2) as usize] +=
                    spec.z[0].powi(n2 as i32) * (n2 as f64).powi(-spec.s[0]);
            }
        }
        return Ok(SeriesValue::new(sum.value(), mp_tail_bound(spec, q, m), terms));
    }
    // prefix1[r] = sum_{n1 <= cur} with n1 % 2 == r
    // prefix2[r] = sum_{n2 <= cur} z2-term * prefix1(n2 - 1) split by (n1+n2) % 2
    let mut prefix1 = [0.0f64; 2];
    let mut prefix2 = [0.0f64; 2];
    for n3 in 1..=m {
        let outer = spec.z[2].powi(n3 as i32) * (n3 as f64).powi(-spec.s[2]);
        if spec.parity_at(2).admits(n3) {
            for r in 0..2u64 {
                if prefix2[r as usize] == 0.0 {
                    continue;
                }
                if let Some(tp) = spec.total_parity {
                    if !tp.admits(r + n3) {
                        continue;
                    }
                }
                sum.add(outer * prefix2[r as usize]);
                terms += 1;
            }
        }
        // extend prefix2 with n2 = n3 (uses prefix1 over n1 < n2)
        let n2 = n3;
        if spec.parity_at(1).admits(n2) {
            let v2 = spec.z[1].powi(n2 as i32) * (n2 as f64).powi(-spec.s[1]);
            for r1 in 0..2usize {
                let combined = (r1 as u64 + n2) % 2;
                prefix2[combined as usize] += v2 * prefix1[r1];
            }
        }
        // extend prefix1 with n1 = n3
        if spec.parity_at(0).admits(n3) {
            prefix1[(n3 % 2) as usize] +=
                spec.z[0].powi(n3 as i32) * (n3 as f64).powi(-spec.s[0]);
        }
    }
    Ok(SeriesValue::new(sum.value(), mp_tail_bound(spec, q, m), terms))
}

fn choose_truncation_mp(spec: &PolylogSpec, q: f64, eps: f64) -> Result<u64> {
    let mut m: u64 = 64;
    loop {
        let bound = mp_tail_bound(spec, q, m);
        if bound <= eps {
            return Ok(m);
        }
        m *= 2;
        if m > 1 << 22 {
            return Err(Error::NoConvergenceBound(format!(
                "cannot certify eps = {eps} (best bound {bound})"
            )));
        }
    }
}

/// Tail bound over tuples whose largest index exceeds `m`.
fn mp_tail_bound(spec: &PolylogSpec, q: f64, m: u64) -> f64 {
    let k = spec.k() as u32;
    if q < 1.0 {
        geom_poly_tail(q, k - 1, m)
    } else {
        // |z| = 1: outermost exponent must pay for the inner indices
        let s_out = *spec.s.last().unwrap();
        if s_out < 2 {
            return f64::INFINITY;
        }
        let mut logs = 0u32;
        let mut c = 1.0f64;
        for &si in &spec.s[..spec.s.len() - 1] {
            if si >= 2 {
                c *= partial_sum_bound(si, m as f64);
            } else if si == 1 {
                logs += 1;
            } else {
                return f64::INFINITY;
            }
        }
        c * log_tail_int(s_out as f64, logs, m as f64)
    }
}

/// Triangular domain: `n2 > n1 >= 1`, `n2 - n1 < n3 < n2 + n1`, with
/// per-index and total parity constraints, summed with prefix tables
/// in the inner index.
fn eval_t_domain(spec: &PolylogSpec, eps: f64) -> Result<SeriesValue> {
    let q = spec.effective_q();
    let (s1, s2, s3) = (spec.s[0], spec.s[1], spec.s[2]);
    let m = choose_truncation_t(spec, q, eps)?;
    // prefix over n3 of z3^n/n^s3, split by parity
    let top = 2 * m + 1;
    let mut prefix = vec![[0.0f64; 2]; (top + 1) as usize];
    let mut run = [KahanSum::new(), KahanSum::new()];
    for n in 1..=top {
        run[(n % 2) as usize].add(spec.z[2].powi(n as i32) * (n as f64).powi(-s3));
        prefix[n as usize] = [run[0].value(), run[1].value()];
    }
    let inner = |lo: u64, hi: u64, parity: u64| -> f64 {
        // sum over n3 in [lo, hi] with n3 % 2 == parity
        if hi < lo || hi == 0 {
            return 0.0;
        }
        let p = parity as usize;
        prefix[hi as usize][p] - prefix[(lo - 1) as usize][p]
    };
    let mut sum = KahanSum::new();
    let mut terms = 0u64;
    for n2 in 2..=m {
        if !spec.parity_at(1).admits(n2) {
            continue;
        }
        let v2 = spec.z[1].powi(n2 as i32) * (n2 as f64).powi(-s2);
        for n1 in 1..n2 {
            if !spec.parity_at(0).admits(n1) {
                continue;
            }
            let v1 = spec.z[0].powi(n1 as i32) * (n1 as f64).powi(-s1);
            let (lo, hi) = (n2 - n1 + 1, n2 + n1 - 1);
            // admissible n3 parities under the per-index and total constraints
            let mut acc = 0.0;
            for p3 in 0..2u64 {
                if !spec.parity_at(2).admits(p3) {
                    continue;
                }
                if let Some(tp) = spec.total_parity {
                    if !tp.admits(n1 + n2 + p3) {
                        continue;
                    }
                }
                acc += inner(lo, hi, p3);
            }
            if acc != 0.0 {
                sum.add(v1 * v2 * acc);
                terms += 1;
            }
        }
    }
    Ok(SeriesValue::new(sum.value(), t_tail_bound(spec, q, m), terms))
}

fn choose_truncation_t(spec: &PolylogSpec, q: f64, eps: f64) -> Result<u64> {
    let mut m: u64 = 64;
    loop {
        let bound = t_tail_bound(spec, q, m);
        if bound <= eps {
            return Ok(m);
        }
        m *= 2;
        if m > 1 << 20 {
            return Err(Error::NoConvergenceBound(format!(
                "cannot certify eps = {eps} for domain T (best bound {bound})"
            )));
        }
    }
}

/// Tail bound over triangular tuples with `n2 > m`.
fn t_tail_bound(spec: &PolylogSpec, q: f64, m: u64) -> f64 {
    let (s1, s2, _s3) = (spec.s[0], spec.s[1], spec.s[2]);
    if q < 1.0 {
        // n1 + n3 > n2, so each term is <= q^{2 n2}; pair count <= 2 n2^2
        2.0 * q * geom_poly_tail(q * q, 2, m)
    } else {
        if s2 < 2 || s1 < 2 || spec.s[2] < 1 {
            return f64::INFINITY;
        }
        // sum over n3 window <= 2 sum_{n1 < n2} n1^{1-s1}
        if s1 == 2 {
            2.0 * log_tail_int(s2 as f64, 1, m as f64)
        } else {
            let c = zeta((s1 - 1) as u32).map(|v| v.value + v.tail_bound).unwrap_or(f64::INFINITY);
            2.0 * c * log_tail_int(s2 as f64, 0, m as f64)
        }
    }
}

/// MT/AV evaluator: shell summation over the aggregate degree with a
/// per-shell composition walk (`k <= 4`).
fn eval_aggregate(spec: &PolylogSpec, eps: f64) -> Result<SeriesValue> {
    let k = spec.k();
    if k > 4 {
        return Err(Error::OutOfRange("aggregate evaluator supports k <= 4".into()));
    }
    let ag = spec.aggregate.expect("validated");
    let strict = spec.domain == Domain::AV;
    let q = spec.effective_q();
    let m = choose_truncation_agg(spec, q, eps)?;
    let mut sum = KahanSum::new();
    let mut terms = 0u64;
    for total in (k as u64)..=m {
        if let Some(tp) = spec.total_parity {
            if !tp.admits(total) {
                continue;
            }
        }
        let agg_factor = ag.z.powi(total as i32) * (total as f64).powi(-ag.s);
        if agg_factor == 0.0 {
            continue;
        }
        // walk compositions of `total` into k parts (strictly increasing for AV)
        walk_compositions(spec, strict, total, 0, 1, 1.0, &mut |v| {
            sum.add(agg_factor * v);
            terms += 1;
        });
    }
    Ok(SeriesValue::new(sum.value(), agg_tail_bound(spec, q, m), terms))
}

fn walk_compositions(
    spec: &PolylogSpec,
    strict: bool,
    remaining: u64,
    slot: usize,
    min_next: u64,
    weight: f64,
    emit: &mut impl FnMut(f64),
) {
    let k = spec.k();
    if slot == k - 1 {
        let n = remaining;
        if n < min_next || !spec.parity_at(slot).admits(n) {
            return;
        }
        let v = spec.z[slot].powi(n as i32) * (n as f64).powi(-spec.s[slot]);
        emit(weight * v);
        return;
    }
    let slots_left = (k - slot - 1) as u64;
    let mut n = min_next;
    loop {
        // leave room for the remaining slots
        let reserve = if strict {
            // strictly increasing: at least n+1, n+2, ...
            (n + 1) * slots_left + slots_left * (slots_left - 1) / 2
        } else {
            slots_left
        };
        if n + reserve > remaining {
            break;
        }
        if spec.parity_at(slot).admits(n) {
            let v = spec.z[slot].powi(n as i32) * (n as f64).powi(-spec.s[slot]);
            walk_compositions(
                spec,
                strict,
                remaining - n,
                slot + 1,
                if strict { n + 1 } else { 1 },
                weight * v,
                emit,
            );
        }
        n += 1;
    }
}

fn choose_truncation_agg(spec: &PolylogSpec, q: f64, eps: f64) -> Result<u64> {
    let mut m: u64 = 64;
    loop {
        let bound = agg_tail_bound(spec, q, m);
        if bound <= eps {
            return Ok(m);
        }
        m *= 2;
        if m > 1 << 22 {
            return Err(Error::NoConvergenceBound(format!(
                "cannot certify eps = {eps} for MT/AV (best bound {bound})"
            )));
        }
    }
}

fn agg_tail_bound(spec: &PolylogSpec, q: f64, m: u64) -> f64 {
    let k = spec.k() as u32;
    let ag = spec.aggregate.expect("validated");
    if q < 1.0 {
        geom_poly_tail(q, k - 1, m)
    } else {
        if k != 2 {
            return f64::INFINITY;
        }
        let (s1, s2) = (spec.s[0], spec.s[1]);
        if s1 < 1 || s2 < 1 || ag.s + s1.min(s2) < 3 {
            return f64::INFINITY;
        }
        // split by which index exceeds total/2
        let mut bound = 0.0;
        for (sa, sb) in [(s1, s2), (s2, s1)] {
            // index with exponent sb is >= total/2
            let c = partial_sum_bound(sa, m as f64);
            let logs = if sa == 1 { 1 } else { 0 };
            if !c.is_finite() {
                return f64::INFINITY;
            }
            let pow = (ag.s + sb) as f64;
            if pow <= 1.0 {
                return f64::INFINITY;
            }
            bound += 2.0f64.powi(sb) * c * log_tail_int(pow, logs, m as f64);
        }
        bound
    }
}

/// Mordell–Tornheim polylog-type series
/// `sum_{n_i >= 1} prod z_i^{n_i}/n_i^{s_i} * z^{sum}/(sum)^{s}`.
pub fn eval_mt(s: &[i32], s_agg: i32, z: &[f64], z_agg: f64, eps: f64) -> Result<SeriesValue> {
    let spec = PolylogSpec::new(Domain::MT, s.to_vec(), z.to_vec()).with_aggregate(s_agg, z_agg);
    eval_restricted_polylog(&spec, eps)
}

/// Apostol–Vu variant: strictly increasing indices.
pub fn eval_av(s: &[i32], s_agg: i32, z: &[f64], z_agg: f64, eps: f64) -> Result<SeriesValue> {
    let spec = PolylogSpec::new(Domain::AV, s.to_vec(), z.to_vec()).with_aggregate(s_agg, z_agg);
    eval_restricted_polylog(&spec, eps)
}

/// Rising factorial `s (s+1) ... (s+m-1)` as f64.
fn rising_factorial(s: i32, m: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..m as i32 {
        acc *= (s + i) as f64;
    }
    acc
}

fn binom_f64(n: u32, k: u32) -> f64 {
    crate::special::binomial_u128(n as u64, k as u64) as f64
}

/// `k`-th derivative of `f(t) = x^t t^{-s}`:
/// `sum_j (-1)^{k-j} C(k,j) s^{(k-j)} t^{-(s+k-j)} x^t ln(x)^j`,
/// where `s^{(m)}` is the rising factorial.
pub fn f_derivative(k: u32, s: i32, x: f64, t: f64) -> f64 {
    assert!(t > 0.0 && x > 0.0 && x <= 1.0);
    let lx = x.ln();
    let mut acc = 0.0;
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign
            * binom_f64(k, j)
            * rising_factorial(s, k - j)
            * t.powi(-(s + (k - j) as i32))
            * x.powf(t)
            * lx.powi(j as i32);
    }
    acc
}

/// `int_a^b x^t t^{-s} dt` by composite Gauss–Legendre on short panels.
pub fn exp_power_integral(s: i32, x: f64, a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && b >= a && x > 0.0 && x <= 1.0);
    let (nodes, weights) = crate::oracle::gauss_legendre_nodes(16);
    let mut total = 0.0;
    let mut lo = a;
    while lo < b {
        let hi = (lo + 2.0).min(b);
        let (c, h) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
        let mut acc = 0.0;
        for (xi, wi) in nodes.iter().zip(&weights) {
            let t = c + h * xi;
            acc += wi * x.powf(t) * t.powi(-s);
        }
        total += acc * h;
        lo = hi;
    }
    total
}

/// Partial sum `sum_{n=a}^{b} z^n / n^s` through the Euler–Maclaurin
/// formula at order `N` (even), with the `B_N` remainder integral
/// bounded rather than computed.
pub fn eml_inner_sum(s: i32, z: f64, a: u64, b: u64, n_order: usize) -> Result<SeriesValue> {
    if a < 1 {
        return Err(Error::OutOfRange("a >= 1 required".into()));
    }
    if b < a {
        return Err(Error::OutOfRange("b >= a required".into()));
    }
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::OutOfRange("z in (0, 1] required".into()));
    }
    if n_order < 2 || n_order % 2 != 0 {
        return Err(Error::OutOfRange("even N >= 2 required".into()));
    }
    let table = BernoulliTable::new(n_order);
    let (af, bf) = (a as f64, b as f64);
    let f = |t: f64| z.powf(t) * t.powi(-s);
    let mut value = exp_power_integral(s, z, af, bf);
    value += 0.5 * (f(af) + f(bf));
    for k in 2..=n_order {
        let bk = table.number_f64(k);
        if bk == 0.0 {
            continue;
        }
        value += bk / factorial_f64(k as u32)
            * (f_derivative(k as u32 - 1, s, z, bf) - f_derivative(k as u32 - 1, s, z, af));
    }
    let remainder = eml_remainder_bound(s, z, af, bf, n_order, &table) + 1e-13 * (1.0 + value.abs());
    Ok(SeriesValue::new(value, remainder, (b - a + 1) as u64))
}

/// `|b_N|/N! * int_a^b |f^{(N)}|`, bounding `z^t <= z^a` termwise.
fn eml_remainder_bound(s: i32, z: f64, a: f64, b: f64, n: usize, table: &BernoulliTable) -> f64 {
    if a == b {
        return 0.0;
    }
    let lz = z.ln().abs();
    let mut integral = 0.0;
    for j in 0..=n as u32 {
        let p = s as f64 + (n as u32 - j) as f64;
        let power_int = if (p - 1.0).abs() < 1e-12 {
            (b / a).ln()
        } else {
            (a.powf(1.0 - p) - b.powf(1.0 - p)) / (p - 1.0)
        };
        integral += binom_f64(n as u32, j)
            * rising_factorial(s, n as u32 - j)
            * lz.powi(j as i32)
            * power_int
            * z.powf(a);
    }
    table.even_poly_bound(n) / factorial_f64(n as u32) * integral
}

/// Which multiple-series family a decomposition term contributes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EmlTermKind {
    /// `int_a^b x^t t^{-s3} dt` summed against the outer indices.
    Integral,
    /// `-1/2 (f(a) + f(b))` endpoint corrections.
    BoundaryAv,
    BoundaryMt,
    /// Euler–Maclaurin derivative terms of order `k`, log-power `j`.
    SeriesAv { j: u32, k: u32 },
    SeriesMt { j: u32, k: u32 },
}

#[derive(Debug, Clone, Serialize)]
pub struct EmlTerm {
    pub kind: EmlTermKind,
    /// Scalar in front of the series value (the `F_{j,k}` data).
    pub coefficient: f64,
    /// Aggregate exponent of the AV/MT series this term evaluates.
    pub aggregate_exponent: i32,
    pub series: SeriesValue,
}

impl EmlTerm {
    pub fn contribution(&self) -> f64 {
        self.coefficient * self.series.value
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EmlDecomposition {
    pub terms: Vec<EmlTerm>,
    /// Sum of all term contributions with their tails combined.
    pub total: SeriesValue,
    /// Bound on the discarded `B_N` remainder integral.
    pub remainder_bound: f64,
}

/// Euler–Maclaurin decomposition of the triangular restricted polylog
/// `Li^T_{s1,s2,s3}(z,z,z)` at order `N` (even): the inner `n3` sum is
/// replaced by its closed-interval Euler–Maclaurin expansion at the
/// moving endpoints `n2 -/+ n1`, whose boundary values resum to
/// Apostol–Vu (`+` endpoint) and Mordell–Tornheim (`-` endpoint)
/// series with shifted aggregate exponents. The integral term and the
/// endpoint corrections are reported as separate terms; the `B_N`
/// remainder is bounded, not computed.
pub fn eml_decompose_t(
    s1: i32,
    s2: i32,
    s3: i32,
    z: f64,
    n_order: usize,
) -> Result<EmlDecomposition> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::OutOfRange("z in (0, 1) required".into()));
    }
    if n_order < 2 || n_order % 2 != 0 {
        return Err(Error::OutOfRange("even N >= 2 required".into()));
    }
    let table = BernoulliTable::new(n_order);
    let series_eps = 1e-12;
    let mut terms: Vec<EmlTerm> = Vec::new();

    // endpoint corrections: -1/2 [f(n2+n1) + f(n2-n1)] resummed
    let av0 = eval_av(&[s1, s2], s3, &[z, z], z, series_eps)?;
    let mt0 = eval_mt(&[s1, s3], s2, &[z, z], z, series_eps)?;
    terms.push(EmlTerm {
        kind: EmlTermKind::BoundaryAv,
        coefficient: -0.5,
        aggregate_exponent: s3,
        series: av0,
    });
    terms.push(EmlTerm {
        kind: EmlTermKind::BoundaryMt,
        coefficient: -0.5,
        aggregate_exponent: s3,
        series: mt0,
    });

    // derivative terms: b_k/k! [f^{(k-1)}(b) - f^{(k-1)}(a)]
    let lz = z.ln();
    for k in 2..=n_order {
        let bk = table.number_f64(k);
        if bk == 0.0 {
            continue;
        }
        let kk = k as u32 - 1; // derivative order
        for j in 0..=kk {
            let shift = kk - j;
            let coef = bk / factorial_f64(k as u32)
                * (if shift % 2 == 0 { 1.0 } else { -1.0 })
                * binom_f64(kk, j)
                * rising_factorial(s3, shift)
                * lz.powi(j as i32);
            let p = s3 + shift as i32;
            let av = eval_av(&[s1, s2], p, &[z, z], z, series_eps)?;
            terms.push(EmlTerm {
                kind: EmlTermKind::SeriesAv { j, k: k as u32 },
                coefficient: coef,
                aggregate_exponent: p,
                series: av,
            });
            let mt = eval_mt(&[s1, p], s2, &[z, z], z, series_eps)?;
            terms.push(EmlTerm {
                kind: EmlTermKind::SeriesMt { j, k: k as u32 },
                coefficient: -coef,
                aggregate_exponent: p,
                series: mt,
            });
        }
    }

    // integral term and remainder bound share the outer double loop
    let cutoff = ((1e-18f64.ln() / z.ln()).ceil() as u64).max(8);
    let mut integral = KahanSum::new();
    let mut remainder = 0.0;
    let mut outer_terms = 0u64;
    for n1 in 1..cutoff {
        let w1 = z.powi(n1 as i32) * (n1 as f64).powi(-s1);
        if w1.abs() < 1e-18 {
            break;
        }
        for n2 in (n1 + 1)..cutoff {
            let w = w1 * z.powi(n2 as i32) * (n2 as f64).powi(-s2);
            if w.abs() < 1e-18 {
                break;
            }
            let (a, b) = ((n2 - n1) as f64, (n2 + n1) as f64);
            integral.add(w * exp_power_integral(s3, z, a, b));
            remainder += w.abs() * eml_remainder_bound(s3, z, a, b, n_order, &table);
            outer_terms += 1;
        }
    }
    terms.push(EmlTerm {
        kind: EmlTermKind::Integral,
        coefficient: 1.0,
        aggregate_exponent: s3,
        series: SeriesValue::new(integral.value(), 1e-13 * (1.0 + integral.value().abs()), outer_terms),
    });

    let mut total = KahanSum::new();
    let mut tail = 0.0;
    for t in &terms {
        total.add(t.contribution());
        tail += t.coefficient.abs() * t.series.tail_bound;
    }
    Ok(EmlDecomposition {
        terms,
        total: SeriesValue::new(total.value(), tail, 0),
        remainder_bound: remainder,
    })
}

/// Exact rational combination of zeta values: `constant + sum c_k zeta(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaCombo {
    pub constant: BigRational,
    pub zeta_coeffs: BTreeMap<u32, BigRational>,
}

impl ZetaCombo {
    pub fn rational(c: BigRational) -> Self {
        Self { constant: c, zeta_coeffs: BTreeMap::new() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            constant: &self.constant * c,
            zeta_coeffs: self
                .zeta_coeffs
                .iter()
                .map(|(&k, v)| (k, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &ZetaCombo) -> Self {
        let mut coeffs = self.zeta_coeffs.clone();
        for (&k, v) in &other.zeta_coeffs {
            let entry = coeffs.entry(k).or_insert_with(BigRational::zero);
            *entry += v;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Self { constant: &self.constant + &other.constant, zeta_coeffs: coeffs }
    }

    pub fn eval(&self) -> SeriesValue {
        let mut value = self.constant.to_f64().unwrap_or(f64::NAN);
        let mut tail = 0.0;
        for (&k, c) in &self.zeta_coeffs {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let zv = zeta(k).expect("k >= 2 by construction");
            value += cf * zv.value;
            tail += cf.abs() * zv.tail_bound;
        }
        SeriesValue::new(value, tail, 0)
    }
}

impl fmt::Display for ZetaCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut write_term =
            |f: &mut fmt::Formatter<'_>, c: &BigRational, label: Option<u32>| -> fmt::Result {
                if c.is_zero() {
                    return Ok(());
                }
                let mag = c.abs();
                if first {
                    if c.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                match label {
                    Some(k) if mag.is_one() => write!(f, "zeta({k})"),
                    Some(k) => write!(f, "{mag}*zeta({k})"),
                    None => write!(f, "{mag}"),
                }
            };
        for (&k, c) in self.zeta_coeffs.iter().rev() {
            write_term(f, c, Some(k))?;
        }
        let c = self.constant.clone();
        write_term(f, &c, None)?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact moment of a polylogarithm over the unit interval:
/// `I(m, n) = int_0^1 x^m Li_n(x) dx` reduced to zeta values by the
/// recursion `I(m, n) = zeta(n)/(m+1) - I(m, n-1)/(m+1)` with base
/// `I(m, 1) = H_{m+1}/(m+1)`.
pub fn freitas_reduce(m: u32, n: u32) -> Result<ZetaCombo> {
    if n == 0 {
        return Err(Error::OutOfRange("n >= 1 required".into()));
    }
    let m1 = BigRational::from(BigInt::from(m as i64 + 1));
    if n == 1 {
        let mut h = BigRational::zero();
        for j in 1..=(m + 1) {
            h += BigRational::new(BigInt::one(), BigInt::from(j as i64));
        }
        return Ok(ZetaCombo::rational(h / m1));
    }
    let prev = freitas_reduce(m, n - 1)?;
    let mut combo = prev.scale(&(-BigRational::one() / &m1));
    let entry = combo.zeta_coeffs.entry(n).or_insert_with(BigRational::zero);
    *entry += BigRational::one() / &m1;
    combo.zeta_coeffs.retain(|_, v| !v.is_zero());
    Ok(combo)
}
