//! Brute-force checks that do not rely on the flow's structure: sampled ball
//! maximization, finite-difference flow derivatives, random majorization
//! pairs and exhaustive enumeration for the distinct-outcome statistic.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::distinct::TrialSpec;
use crate::error::{Error, Result};
use crate::flow::{flow_point, generator};
use crate::quantum::{random_unitary, DensityMatrix};
use crate::simplex::{group_spectrum, majorizes, tv_distance, ProbVec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub samples: usize,
    /// Points per pairwise mass-transfer ray in [`ball_max_search`].
    pub grid_rays: usize,
    pub fd_step: f64,
    pub seed: u64,
}

impl OracleConfig {
    pub fn new(samples: usize, grid_rays: usize, fd_step: f64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::BadParam("samples must be positive".into()));
        }
        if !(fd_step > 0.0 && fd_step <= 1e-3) {
            return Err(Error::BadParam(format!("fd_step must lie in (0, 1e-3], got {fd_step}")));
        }
        Ok(Self {
            samples,
            grid_rays,
            fd_step,
            seed,
        })
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            grid_rays: 16,
            fd_step: 1e-4,
            seed: 0,
        }
    }
}

const CONCENTRATIONS: [f64; 6] = [0.2, 0.5, 1.0, 10.0, 100.0, 1000.0];

/// Symmetric Dirichlet sample; may contain exact zeros for small
/// concentrations.
pub fn dirichlet<R: Rng + ?Sized>(dim: usize, concentration: f64, rng: &mut R) -> ProbVec {
    let gamma = Gamma::new(concentration, 1.0).expect("positive concentration");
    loop {
        let raw: Vec<f64> = (0..dim).map(|_| gamma.sample(rng)).collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 && total.is_finite() {
            return ProbVec::new(raw.into_iter().map(|x| x / total).collect()).expect("normalized sample");
        }
    }
}

/// A point of the simplex drawn from a mixture that reaches vertices, faces,
/// the bulk and tight neighbourhoods of `u`.
pub fn random_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ProbVec {
    if rng.gen_bool(0.1) {
        let mut e = vec![0.0; dim];
        e[rng.gen_range(0..dim)] = 1.0;
        return ProbVec::new(e).expect("vertex");
    }
    let c = CONCENTRATIONS[rng.gen_range(0..CONCENTRATIONS.len())];
    dirichlet(dim, c, rng)
}

/// Like [`random_point`] but strictly inside the simplex and not uniform.
pub fn random_interior_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ProbVec {
    loop {
        let c = CONCENTRATIONS[rng.gen_range(0..CONCENTRATIONS.len())];
        let p = dirichlet(dim, c, rng);
        if p.min() > 1e-12 && !p.is_uniform() {
            return p;
        }
    }
}

/// `n` points of `B_ε(r)`. Each is `r + λ(w − r)` for a random `w`, with `λ`
/// chosen so the distance is a target radius: `ε` for half of the draws and
/// uniform in `(0, ε]` for the rest. Moving along a segment keeps the point
/// in the simplex and makes its distance exact.
pub fn ball_sample(r: &ProbVec, eps: f64, n: usize, seed: u64) -> Result<Vec<ProbVec>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::EpsOutOfRange(eps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = r.dim();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let w = random_point(d, &mut rng);
        let dist = tv_distance(&w, r)?;
        if dist == 0.0 {
            continue;
        }
        let radius = if rng.gen_bool(0.5) {
            eps
        } else {
            eps * (1.0 - rng.gen::<f64>())
        };
        let lambda = (radius / dist).min(1.0);
        let q: Vec<f64> = r.iter().zip(w.iter()).map(|(a, b)| a + lambda * (b - a)).collect();
        out.push(ProbVec::new(q)?);
    }
    Ok(out)
}

/// Maximizes `f` over sampled points of `B_ε(r)`: random ball samples,
/// pairwise mass-transfer rays and the flow point. The result is a lower
/// bound on the true maximum and never below `f(r)`.
pub fn ball_max_search<F>(f: F, r: &ProbVec, eps: f64, cfg: &OracleConfig) -> Result<(f64, ProbVec)>
where
    F: Fn(&ProbVec) -> f64,
{
    let mut best = (f(r), r.clone());
    let mut consider = |p: ProbVec| {
        let v = f(&p);
        if v > best.0 {
            best = (v, p);
        }
    };
    consider(flow_point(r, eps)?);
    for p in ball_sample(r, eps, cfg.samples, cfg.seed)? {
        consider(p);
    }
    let d = r.dim();
    for a in 0..d {
        for b in 0..d {
            let cap = eps.min(r[a]);
            if a == b || cap <= 0.0 {
                continue;
            }
            for k in 1..=cfg.grid_rays {
                let t = cap * k as f64 / cfg.grid_rays as f64;
                let mut q = r.as_slice().to_vec();
                q[a] -= t;
                q[b] += t;
                consider(ProbVec::new(q)?);
            }
        }
    }
    Ok(best)
}

/// Finite-difference estimate of the derivative of `f` along the flow at
/// `r`, using `D(h) = (f(M_h(r)) − f(r))/h` and the extrapolation
/// `2D(h/2) − D(h)`. The step is shrunk to stay on the first affine piece
/// and to stay small against the smallest entry, where the curvature of
/// typical entropies concentrates.
pub fn fd_gamma<F>(f: F, r: &ProbVec, cfg: &OracleConfig) -> Result<f64>
where
    F: Fn(&ProbVec) -> f64,
{
    if !r.is_interior() {
        return Err(Error::BoundaryError("finite differences need an interior point".into()));
    }
    if group_spectrum(r).num_groups() < 2 {
        return Err(Error::BoundaryError(
            "the flow is stationary at the uniform vector".into(),
        ));
    }
    let h = cfg.fd_step.min(0.5 * generator(r).step_cap).min(1e-2 * r.min());
    let f0 = f(r);
    let diff = |s: f64| -> Result<f64> { Ok((f(&flow_point(r, s)?) - f0) / s) };
    Ok(2.0 * diff(0.5 * h)? - diff(h)?)
}

/// Random pairs `(p, q)` with `p ≺ q`, obtained by applying random
/// T-transforms to a random `q`.
pub fn majorization_pairs(d: usize, n: usize, seed: u64) -> Result<Vec<(ProbVec, ProbVec)>> {
    if d < 2 {
        return Err(Error::BadParam(format!("dimension must be at least 2, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let q = random_point(d, &mut rng);
        let mut p = q.as_slice().to_vec();
        for _ in 0..rng.gen_range(1..=2 * d) {
            let a = rng.gen_range(0..d);
            let mut b = rng.gen_range(0..d - 1);
            if b >= a {
                b += 1;
            }
            let lambda: f64 = rng.gen();
            let (pa, pb) = (p[a], p[b]);
            p[a] = lambda * pa + (1.0 - lambda) * pb;
            p[b] = lambda * pb + (1.0 - lambda) * pa;
        }
        let p = ProbVec::new(p)?;
        debug_assert!(majorizes(&q, &p).unwrap_or(false));
        out.push((p, q));
    }
    Ok(out)
}

/// Random pairs with `TV(p, q) ≤ ε`.
pub fn pairs_within(d: usize, eps: f64, n: usize, seed: u64) -> Result<Vec<(ProbVec, ProbVec)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let p = random_point(d, &mut rng);
        let q = ball_sample(&p, eps, 1, rng.gen())?.pop().expect("one sample");
        out.push((p, q));
    }
    Ok(out)
}

/// A random density matrix: a mixture-drawn spectrum in a random basis.
pub fn random_density<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    let spectrum = random_point(d, rng);
    let u = random_unitary(d, rng);
    DensityMatrix::from_spectrum(&u, &spectrum)
}

const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// `Pr[K = k]` by enumerating all `M^N` outcome sequences.
pub fn distinct_brute_force(spec: &TrialSpec) -> Result<Vec<f64>> {
    let m = spec.outcomes();
    let n = spec.trials();
    let total = (m as u64)
        .checked_pow(n)
        .filter(|&t| t <= BRUTE_FORCE_LIMIT)
        .ok_or(Error::TooLarge {
            m,
            limit: BRUTE_FORCE_LIMIT as usize,
        })?;
    let p = spec.p().as_slice();
    let mut pmf = vec![0.0; m];
    let mut digits = vec![0usize; n as usize];
    for _ in 0..total {
        let mut prob = 1.0;
        let mut seen = 0u64;
        for &i in &digits {
            prob *= p[i];
            seen |= 1 << i;
        }
        pmf[seen.count_ones() as usize - 1] += prob;
        for x in digits.iter_mut() {
            *x += 1;
            if *x < m {
                break;
            }
            *x = 0;
        }
    }
    Ok(pmf)
}
