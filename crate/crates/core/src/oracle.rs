//! Independent brute-force verification engines: sphere Monte Carlo,
//! exact-degree weighted quadrature, ordered-simplex quadrature,
//! restricted brute summation, and direct sector integration of the
//! configuration-space integrand for tiny graphs.
//!
//! These deliberately avoid the closed forms they are used to check.

use crate::error::Error;
use crate::graph::{Graph, Orientation, Sector};
use crate::polylog::{geom_poly_tail, PolylogSpec};
use crate::series::{KahanSum, SeriesValue};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Deterministic Monte Carlo configuration. The estimate is a pure
/// function of `(sample_count, seed, shard_count)`; `jobs` only sets
/// how many shards run concurrently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub sample_count: u64,
    pub seed: u64,
    pub shard_count: u32,
    pub jobs: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { sample_count: 1_000_000, seed: 42, shard_count: 16, jobs: 1 }
    }
}

impl McConfig {
    pub fn with_samples(mut self, n: u64) -> Self {
        self.sample_count = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// Gauss–Chebyshev quadrature of the second kind:
/// `int_{-1}^{1} f(x) (1-x^2)^{1/2} dx ~= sum w_i f(x_i)`,
/// exact for polynomial `f` of degree `<= 2m - 1`.
pub fn chebyshev_u_quadrature(f: impl Fn(f64) -> f64, m: usize) -> f64 {
    let mut acc = KahanSum::new();
    let step = PI / (m as f64 + 1.0);
    for i in 1..=m {
        let theta = step * i as f64;
        let s = theta.sin();
        acc.add(step * s * s * f(theta.cos()));
    }
    acc.value()
}

/// Weighted quadrature against `(1-x^2)^{1/2 + extra_weight}` on
/// `[-1, 1]`: the integer surplus is folded into the integrand so the
/// rule stays exact for polynomials of degree
/// `<= 2*node_count - 1 - 2*extra_weight`.
pub fn gauss_weighted_quadrature(
    f: impl Fn(f64) -> f64,
    extra_weight: u32,
    node_count: usize,
) -> f64 {
    chebyshev_u_quadrature(|x| (1.0 - x * x).powi(extra_weight as i32) * f(x), node_count)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0f64, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order Gauss–Legendre integral over `[a, b]`.
pub fn integrate_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre_nodes(n);
    let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
    let mut acc = KahanSum::new();
    for (x, w) in nodes.iter().zip(&weights) {
        acc.add(w * f(c + h * x));
    }
    acc.value() * h
}

/// Adaptive Simpson quadrature with an absolute tolerance.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        err: &mut f64,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            *err += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, err)
            + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, err)
    }
    let m = (a + b) / 2.0;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    let mut err = 0.0;
    let value = rec(f, a, b, fa, fm, fb, whole, tol, 48, &mut err);
    (value, err)
}

/// Tensor quadrature over chains of ordered variables sharing a common
/// root `t`: the domain is `{ t <= x_{c,1} <= ... <= x_{c,len_c} <= 1 }`
/// for each chain `c`. `f` receives `[t, chain 1 ascending..., chain 2...]`.
/// The error estimate comes from refining the node count.
pub fn ordered_simplex_quad(
    f: &dyn Fn(&[f64]) -> f64,
    chains: &[usize],
    nodes: usize,
) -> SeriesValue {
    let coarse = ordered_simplex_fixed(f, chains, nodes);
    let fine = ordered_simplex_fixed(f, chains, nodes + 4);
    SeriesValue::new(fine, (fine - coarse).abs(), (nodes + 4) as u64)
}

fn ordered_simplex_fixed(f: &dyn Fn(&[f64]) -> f64, chains: &[usize], nodes: usize) -> f64 {
    let (gx, gw) = gauss_legendre_nodes(nodes);
    // map to [0, 1]
    let x01: Vec<f64> = gx.iter().map(|x| (x + 1.0) / 2.0).collect();
    let w01: Vec<f64> = gw.iter().map(|w| w / 2.0).collect();
    let dims: usize = 1 + chains.iter().sum::<usize>();
    let mut point = vec![0.0f64; dims];
    let mut acc = KahanSum::new();
    // iterate the tensor grid with an odometer
    let grid_dims = dims; // t plus every chain variable (via cube map)
    let mut idx = vec![0usize; grid_dims];
    loop {
        // weight and coordinates
        let mut w = 1.0;
        let t = x01[idx[0]];
        w *= w01[idx[0]];
        point[0] = t;
        let mut pos = 1;
        let mut cursor = 1;
        for &len in chains {
            // ordered map: y_j = prod_{i=j..len} v_i descending from 1,
            // then x_j = t + (1 - t) y_j ascending
            let mut running = 1.0f64;
            let mut ys = vec![0.0f64; len];
            for j in (0..len).rev() {
                let v = x01[idx[cursor + j]];
                w *= w01[idx[cursor + j]];
                running *= v;
                ys[j] = running;
                // Jacobian of y_j = v_j * y_{j+1}: prod v_i^{i-1} handled below
            }
            // Jacobian of the ordered-cube map: prod_j v_j^{j}
            // with v_j the j-th cube variable (0-based from the bottom).
            for j in 0..len {
                let v = x01[idx[cursor + j]];
                w *= v.powi(j as i32);
            }
            // chain scale (1 - t)^len
            w *= (1.0 - t).powi(len as i32);
            for j in 0..len {
                point[pos + j] = t + (1.0 - t) * ys[j];
            }
            pos += len;
            cursor += len;
        }
        acc.add(w * f(&point));
        // odometer
        let mut d = 0;
        loop {
            if d == grid_dims {
                return acc.value();
            }
            idx[d] += 1;
            if idx[d] < x01.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Uniform sphere MC: estimates
/// `int_{(S^{D-1})^m} f domega_1 ... domega_m`
/// with normalized-Gaussian sampling. `f` receives the `m` points
/// packed consecutively (`m * d` floats). The standard error is
/// reported in the tail-bound slot.
pub fn sphere_mc(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    d: usize,
    m_points: usize,
    cfg: McConfig,
) -> Result<SeriesValue> {
    if cfg.sample_count == 0 {
        return Err(Error::OutOfRange("sample_count must be positive".into()));
    }
    let vol = crate::special::sphere_volume_general(d as u32 - 1);
    let scale = vol.powi(m_points as i32);
    let stats = run_sharded(cfg, move |rng, stat| {
        let mut buf = vec![0.0f64; m_points * d];
        move_sample(rng, &mut buf, d);
        stat.push(f(&buf));
    });
    let (mean, var) = stats.mean_var();
    let stderr = (var / stats.count as f64).sqrt();
    Ok(SeriesValue::new(scale * mean, scale * stderr, stats.count))
}

fn move_sample(rng: &mut ChaCha8Rng, buf: &mut [f64], d: usize) {
    let m = buf.len() / d;
    for p in 0..m {
        let chunk = &mut buf[p * d..(p + 1) * d];
        loop {
            let mut norm2 = 0.0;
            let mut i = 0;
            while i < d {
                // Box–Muller pair
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen::<f64>();
                let r = (-2.0 * u1.ln()).sqrt();
                let (s, c) = (2.0 * PI * u2).sin_cos();
                chunk[i] = r * c;
                norm2 += chunk[i] * chunk[i];
                i += 1;
                if i < d {
                    chunk[i] = r * s;
                    norm2 += chunk[i] * chunk[i];
                    i += 1;
                }
            }
            if norm2 > 0.0 {
                let inv = norm2.sqrt().recip();
                for x in chunk.iter_mut() {
                    *x *= inv;
                }
                break;
            }
        }
    }
}

struct ShardStats {
    sum: f64,
    sum_sq: f64,
    count: u64,
}

impl ShardStats {
    fn new() -> Self {
        Self { sum: 0.0, sum_sq: 0.0, count: 0 }
    }

    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.count += 1;
    }

    fn merge(&mut self, other: &ShardStats) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.count += other.count;
    }

    fn mean_var(&self) -> (f64, f64) {
        let n = self.count as f64;
        let mean = self.sum / n;
        let var = (self.sum_sq / n - mean * mean).max(0.0);
        (mean, var)
    }
}

/// Run `per_sample` once per sample across `shard_count` independent
/// ChaCha streams, merging shard statistics in index order so the
/// result does not depend on `jobs`.
fn run_sharded<F>(cfg: McConfig, per_sample: F) -> ShardStats
where
    F: Fn(&mut ChaCha8Rng, &mut ShardStats) + Sync,
{
    let shards = cfg.shard_count.max(1);
    let per_shard = cfg.sample_count / shards as u64;
    let remainder = cfg.sample_count % shards as u64;
    let shard_job = |shard: u32| -> ShardStats {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(shard as u64 + 1);
        let mut stat = ShardStats::new();
        let n = per_shard + if (shard as u64) < remainder { 1 } else { 0 };
        for _ in 0..n {
            per_sample(&mut rng, &mut stat);
        }
        stat
    };
    let mut total = ShardStats::new();
    if cfg.jobs <= 1 {
        for shard in 0..shards {
            total.merge(&shard_job(shard));
        }
    } else {
        let results: Vec<ShardStats> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for shard in 0..shards {
                handles.push(scope.spawn(move || shard_job(shard)));
            }
            handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
        });
        for stat in &results {
            total.merge(stat); // fixed shard order
        }
    }
    total
}

/// Exact truncated sum of a restricted polylog spec over total-degree
/// shells, Kahan-compensated, with a geometric tail bound when all
/// arguments are strictly inside the unit disk. This is the oracle
/// twin of `polylog::eval_restricted_polylog` and shares no code with
/// the per-domain evaluators.
pub fn brute_restricted_sum(spec: &PolylogSpec, n_max: u64) -> Result<SeriesValue> {
    if n_max < 1 {
        return Err(Error::OutOfRange("n_max >= 1 required".into()));
    }
    spec.validate()?;
    let k = spec.k();
    let mut sum = KahanSum::new();
    let mut terms = 0u64;
    let mut tuple = vec![0u64; k];
    // enumerate shells by total degree so truncation is by total degree
    fn shell_walk(
        spec: &PolylogSpec,
        tuple: &mut Vec<u64>,
        slot: usize,
        remaining: u64,
        sum: &mut KahanSum,
        terms: &mut u64,
    ) {
        let k = spec.k();
        if slot == k - 1 {
            tuple[slot] = remaining;
            if remaining < 1 {
                return;
            }
            if in_domain(spec, tuple) {
                let mut v = 1.0f64;
                for i in 0..k {
                    v *= spec.z[i].powi(tuple[i] as i32) * (tuple[i] as f64).powi(-spec.s[i]);
                }
                if let Some(ag) = spec.aggregate {
                    let total: u64 = tuple.iter().sum();
                    v *= ag.z.powi(total as i32) * (total as f64).powi(-ag.s);
                }
                sum.add(v);
                *terms += 1;
            }
            return;
        }
        for n in 1..remaining.saturating_sub(k as u64 - slot as u64 - 2) {
            tuple[slot] = n;
            shell_walk(spec, tuple, slot + 1, remaining - n, sum, terms);
        }
    }
    for total in (k as u64)..=n_max {
        shell_walk(spec, &mut tuple, 0, total, &mut sum, &mut terms);
    }
    let q = spec
        .z
        .iter()
        .fold(0.0f64, |a, &z| a.max(z.abs()))
        * spec.aggregate.map_or(1.0, |a| a.z.abs());
    let tail = if q < 1.0 {
        geom_poly_tail(q, k as u32 - 1, n_max)
    } else {
        f64::INFINITY
    };
    Ok(SeriesValue::new(sum.value(), tail, terms))
}

fn in_domain(spec: &PolylogSpec, tuple: &[u64]) -> bool {
    use crate::polylog::Domain;
    for (i, &n) in tuple.iter().enumerate() {
        if !spec.parity_at(i).admits(n) {
            return false;
        }
    }
    if let Some(tp) = spec.total_parity {
        if !tp.admits(tuple.iter().sum()) {
            return false;
        }
    }
    match spec.domain {
        Domain::P | Domain::MT => true,
        Domain::MP | Domain::AV => tuple.windows(2).all(|w| w[0] < w[1]),
        Domain::T => {
            let (n1, n2, n3) = (tuple[0], tuple[1], tuple[2]);
            n2 > n1 && n2 - n1 < n3 && n3 < n2 + n1
        }
    }
}

/// Direct Monte Carlo of the configuration-space integrand
/// `prod_e |x_{s(e)} - x_{t(e)}|^{-2}` over a radial sector in `D = 4`,
/// with radii capped at `cutoff` to regularize the behavior at
/// infinity. Pass `None` as the sector for the full domain. Refuses
/// configurations whose small-diagonal behavior is non-integrable.
pub fn config_sector_mc(
    g: &Graph,
    orientation: Option<&Orientation>,
    cutoff: f64,
    cfg: McConfig,
) -> Result<SeriesValue> {
    if cfg.sample_count == 0 {
        return Err(Error::OutOfRange("sample_count must be positive".into()));
    }
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.vertex_count() > 3 {
        return Err(Error::OutOfRange("config MC is desk-scale: |V| <= 3".into()));
    }
    let d = 4usize;
    // UV integrability along each biconnected diagonal: (D-2)|E| < D(|V|-1)
    for sub in crate::graph::induced_subgraphs(g, None) {
        if sub.edge_count() == 0 {
            continue;
        }
        if crate::graph::is_biconnected(&sub.to_graph(g))? {
            let e = sub.edge_count() as i64;
            let v = sub.vertex_count() as i64;
            if (d as i64 - 2) * e >= d as i64 * (v - 1) {
                let order = crate::wonderful::singularity_order(g, &sub, d as u32)?;
                return Err(Error::DivergentConfiguration {
                    order,
                    subgraph: sub.label_string(g),
                });
            }
        }
    }
    let sector: Option<Sector> = match orientation {
        Some(o) => Some(crate::graph::sector(g, o)?),
        None => None,
    };
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().to_vec();
    let vol = crate::special::sphere_volume_general(d as u32 - 1);
    let scale = (cutoff * vol).powi(n as i32);
    let stats = run_sharded(cfg, move |rng, stat| {
        let mut radii = vec![0.0f64; n];
        for r in radii.iter_mut() {
            *r = cutoff * rng.gen::<f64>();
        }
        if let Some(sec) = &sector {
            if !sec.contains(&radii) {
                stat.push(0.0);
                return;
            }
        }
        let mut dirs = vec![0.0f64; n * d];
        move_sample(rng, &mut dirs, d);
        let mut val = 1.0f64;
        for &(a, b) in &edges {
            let mut dist2 = 0.0;
            for i in 0..d {
                let diff = radii[a] * dirs[a * d + i] - radii[b] * dirs[b * d + i];
                dist2 += diff * diff;
            }
            val /= dist2;
        }
        for &r in &radii {
            val *= r * r * r;
        }
        stat.push(val);
    });
    let (mean, var) = stats.mean_var();
    let stderr = (var / stats.count as f64).sqrt();
    Ok(SeriesValue::new(scale * mean, scale * stderr, stats.count))
}
