//! The number `K` of distinct outcomes seen in `N` i.i.d. draws from a
//! distribution on `M` outcomes.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplex::{random_interior, ProbVec};

/// Largest `M` for which the distribution of `K` is computed exactly.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub struct TrialSpec {
    p: ProbVec,
    n: u32,
}

impl TrialSpec {
    pub fn new(p: ProbVec, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParam("number of trials must be positive".into()));
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> &ProbVec {
        &self.p
    }

    pub fn outcomes(&self) -> usize {
        self.p.dim()
    }

    pub fn trials(&self) -> u32 {
        self.n
    }
}

/// `C(n, k)` for `k ≥ 0` and any integer `n`, using `C(n, k) = (−1)^k C(k − n − 1, k)`
/// when `n < 0`.
pub fn binomial(n: i64, k: i64) -> Result<i128> {
    if k < 0 {
        return Ok(0);
    }
    if n < 0 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        return Ok(sign * binomial(k - n - 1, k)?);
    }
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // exact at every step: acc·(n − i) is divisible by (i + 1)
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or_else(|| Error::BadParam(format!("C({n},{k}) overflows")))?
            / (i + 1) as i128;
    }
    Ok(acc)
}

fn check_exact(m: usize) -> Result<()> {
    if m > EXACT_LIMIT {
        return Err(Error::TooLarge { m, limit: EXACT_LIMIT });
    }
    Ok(())
}

/// `S_i = Σ_{|A| = i} p(A)^N` for `i = 0..=M`.
fn power_subset_sums(spec: &TrialSpec) -> Vec<f64> {
    let p = spec.p.as_slice();
    let m = p.len();
    let mut s = vec![0.0; m + 1];
    let mut sums = vec![0.0f64; 1 << m];
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + p[low];
        s[mask.count_ones() as usize] += sums[mask].min(1.0).powi(spec.n as i32);
    }
    s
}

/// `F_j = Pr[K ≤ j]` for `j = 1..=M` (index `j − 1`).
pub fn cdf_all(spec: &TrialSpec) -> Result<Vec<f64>> {
    let m = spec.outcomes();
    check_exact(m)?;
    let s = power_subset_sums(spec);
    let mut out = Vec::with_capacity(m);
    for j in 1..=m {
        let mut f = 0.0;
        for (i, si) in s.iter().enumerate().take(j + 1).skip(1) {
            let sign = if (j - i) % 2 == 0 { 1.0 } else { -1.0 };
            let c = binomial(m as i64 - i as i64 - 1, (j - i) as i64)? as f64;
            f += sign * c * si;
        }
        out.push(f);
    }
    Ok(out)
}

pub fn cdf_distinct(spec: &TrialSpec, j: usize) -> Result<f64> {
    let m = spec.outcomes();
    if j == 0 || j > m {
        return Err(Error::BadParam(format!("j must lie in 1..={m}, got {j}")));
    }
    Ok(cdf_all(spec)?[j - 1])
}

/// `Pr[K = k]` for `k = 1..=M` (index `k − 1`).
pub fn pmf_exact(spec: &TrialSpec) -> Result<Vec<f64>> {
    let f = cdf_all(spec)?;
    let mut prev = 0.0;
    Ok(f.into_iter()
        .map(|x| {
            let d = x - prev;
            prev = x;
            d
        })
        .collect())
}

/// `E[K] = M − Σ (1 − p_i)^N`.
pub fn expected_distinct(spec: &TrialSpec) -> f64 {
    let m = spec.outcomes() as f64;
    m - spec.p.iter().map(|&x| (1.0 - x).powi(spec.n as i32)).sum::<f64>()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistinctBound {
    /// Tight uniform bound on `|E_p[K] − E_q[K]|` for `TV(p, q) ≤ ε`.
    pub uniform: f64,
    /// `εN`, from the optimal Lipschitz constant `N`.
    pub lipschitz_cap: f64,
}

pub fn distinct_uniform_bound(m: usize, n: u32, eps: f64) -> Result<DistinctBound> {
    if m < 2 {
        return Err(Error::BadParam(format!("need at least 2 outcomes, got {m}")));
    }
    if n == 0 {
        return Err(Error::BadParam("number of trials must be positive".into()));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::EpsOutOfRange(eps));
    }
    let mf = m as f64;
    let nf = n as f64;
    // ratios keep the powers bounded for large N
    let uniform = if eps <= 1.0 - 1.0 / mf {
        (mf - 1.0) * (1.0 - (1.0 - eps / (mf - 1.0)).powf(nf)) - eps.powf(nf)
    } else {
        mf * (1.0 - (1.0 - 1.0 / mf).powf(nf)) - 1.0
    };
    Ok(DistinctBound {
        uniform,
        lipschitz_cap: eps * nf,
    })
}

/// Empirical distribution of `K` from repeated simulation.
#[derive(Debug, Clone, Serialize)]
pub struct Simulation {
    /// `pmf[k − 1]` estimates `Pr[K = k]`.
    pub pmf: Vec<f64>,
    pub mean: f64,
    /// Standard error of `mean`.
    pub std_err: f64,
    pub reps: usize,
}

pub fn simulate_distinct(spec: &TrialSpec, reps: usize, seed: u64) -> Result<Simulation> {
    if reps == 0 {
        return Err(Error::BadParam("need at least one repetition".into()));
    }
    let m = spec.outcomes();
    let dist = WeightedIndex::new(spec.p.as_slice()).map_err(|e| Error::BadParam(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = vec![0usize; m];
    let mut counts = vec![0usize; m];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for rep in 1..=reps {
        let mut k = 0;
        for _ in 0..spec.n {
            let i = dist.sample(&mut rng);
            if seen[i] != rep {
                seen[i] = rep;
                k += 1;
            }
        }
        counts[k - 1] += 1;
        sum += k as f64;
        sum_sq += (k * k) as f64;
    }
    let r = reps as f64;
    let mean = sum / r;
    let var = if reps > 1 {
        ((sum_sq - r * mean * mean) / (r - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(Simulation {
        pmf: counts.iter().map(|&c| c as f64 / r).collect(),
        mean,
        std_err: (var / r).sqrt(),
        reps,
    })
}

/// A finite bound on `|f_j|`, which makes `F_j` Lipschitz:
/// `N Σ_{i ≤ j} C(M−i−1, j−i)·C(M−2, i−1)`, the second factor counting the
/// `(i−1)`-subsets of the `M − 2` remaining outcomes.
pub fn cdf_slope_bound(m: usize, n: u32, j: usize) -> Result<f64> {
    if m < 2 || j == 0 || j > m {
        return Err(Error::BadParam(format!(
            "need M >= 2 and 1 <= j <= M, got M={m}, j={j}"
        )));
    }
    let mut total: i128 = 0;
    for i in 1..=j {
        let a = binomial(m as i64 - i as i64 - 1, (j - i) as i64)?.abs();
        let b = binomial(m as i64 - 2, i as i64 - 1)?;
        total = a
            .checked_mul(b)
            .and_then(|x| total.checked_add(x))
            .ok_or_else(|| Error::BadParam("slope bound overflows".into()))?;
    }
    Ok(n as f64 * total as f64)
}

/// Largest observed `|ΔF_j|/TV` over random points and pairwise mass
/// transfers. This is a sampled lower estimate of the Lipschitz constant of
/// `F_j`, not a certified value.
pub fn cdf_sampled_slope(m: usize, n: u32, j: usize, samples: usize, seed: u64) -> Result<f64> {
    check_exact(m)?;
    if m < 2 || j == 0 || j > m {
        return Err(Error::BadParam(format!(
            "need M >= 2 and 1 <= j <= M, got M={m}, j={j}"
        )));
    }
    let h = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let p = random_interior(m, 2.0 * h, &mut rng);
        let base = cdf_distinct(&TrialSpec::new(p.clone(), n)?, j)?;
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                let mut q = p.as_slice().to_vec();
                q[a] += h;
                q[b] -= h;
                let moved = cdf_distinct(&TrialSpec::new(ProbVec::new(q)?, n)?, j)?;
                best = best.max((moved - base).abs() / h);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::EntropyFamily;
    use approx::assert_abs_diff_eq;

    fn spec(p: &[f64], n: u32) -> TrialSpec {
        TrialSpec::new(ProbVec::new(p.to_vec()).unwrap(), n).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(-1, 0).unwrap(), 1);
        assert_eq!(binomial(-1, 3).unwrap(), -1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
        assert!(binomial(200, 100).is_err());
    }

    #[test]
    fn cdf_examples() {
        assert_abs_diff_eq!(cdf_distinct(&spec(&[0.5, 0.5], 2), 1).unwrap(), 0.5, epsilon = 1e-15);
        let s = spec(&[0.2, 0.3, 0.5], 4);
        assert_abs_diff_eq!(cdf_distinct(&s, 3).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            cdf_distinct(&spec(&[0.2, 0.3, 0.5], 1), 1).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        assert!(cdf_distinct(&s, 0).is_err());
        assert!(cdf_distinct(&s, 4).is_err());
    }

    #[test]
    fn too_large() {
        let s = TrialSpec::new(ProbVec::uniform(21), 3).unwrap();
        assert!(matches!(cdf_all(&s), Err(Error::TooLarge { m: 21, limit: 20 })));
        assert!(expected_distinct(&s) > 0.0);
    }

    #[test]
    fn expectation_examples() {
        assert_abs_diff_eq!(expected_distinct(&spec(&[0.5, 0.5], 2)), 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(expected_distinct(&spec(&[0.1, 0.6, 0.3], 1)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            expected_distinct(&TrialSpec::new(ProbVec::extremal(4), 7).unwrap()),
            1.0
        );
    }

    #[test]
    fn expectation_matches_pmf_and_entropy() {
        let s = spec(&[0.1, 0.2, 0.3, 0.15, 0.25], 6);
        let pmf = pmf_exact(&s).unwrap();
        assert_abs_diff_eq!(pmf.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        let mean: f64 = pmf.iter().enumerate().map(|(k, p)| (k + 1) as f64 * p).sum();
        assert_abs_diff_eq!(mean, expected_distinct(&s), epsilon = 1e-10);
        let fam = EntropyFamily::distinct_count(6).unwrap();
        assert_abs_diff_eq!(fam.eval(s.p()).unwrap(), expected_distinct(&s) - 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uniform_bound_examples() {
        for (m, n, eps) in [(3, 4, 0.1), (5, 2, 0.5), (10, 3, 0.95), (2, 1, 0.3)] {
            let b = distinct_uniform_bound(m, n, eps).unwrap();
            assert!(b.uniform <= b.lipschitz_cap + 1e-12);
        }
        let (m, n) = (4usize, 3u32);
        let b = distinct_uniform_bound(m, n, 0.9).unwrap();
        let mf = m as f64;
        let want = (mf.powi(3) - (mf - 1.0).powi(3)) / mf.powi(2) - 1.0;
        assert_abs_diff_eq!(b.uniform, want, epsilon = 1e-12);
        // first branch in its original form
        let eps: f64 = 0.2;
        let b = distinct_uniform_bound(m, n, eps).unwrap();
        let want = ((mf - 1.0).powi(3) - (mf - 1.0 - eps).powi(3)) / (mf - 1.0).powi(2) - eps.powi(3);
        assert_abs_diff_eq!(b.uniform, want, epsilon = 1e-12);
    }

    #[test]
    fn simulation_examples() {
        let s = spec(&[0.5, 0.5], 2);
        let sim = simulate_distinct(&s, 100_000, 1).unwrap();
        assert!((sim.mean - 1.5).abs() < 0.005);
        assert!((sim.mean - 1.5).abs() <= 3.0 * sim.std_err);
        let det = simulate_distinct(&TrialSpec::new(ProbVec::extremal(3), 5).unwrap(), 100, 2).unwrap();
        assert_eq!(det.pmf, vec![1.0, 0.0, 0.0]);
        let u3 = TrialSpec::new(ProbVec::uniform(3), 3).unwrap();
        let sim = simulate_distinct(&u3, 100_000, 3).unwrap();
        for (e, q) in pmf_exact(&u3).unwrap().iter().zip(&sim.pmf) {
            let sd = (e * (1.0 - e) / 100_000.0).sqrt();
            assert!((e - q).abs() <= 3.0 * sd + 1e-12);
        }
        assert_eq!(
            simulate_distinct(&u3, 50, 9).unwrap().pmf,
            simulate_distinct(&u3, 50, 9).unwrap().pmf
        );
    }

    #[test]
    fn slope_bound_dominates_sampled_slope() {
        for (m, n, j) in [(3, 4, 1), (4, 3, 2), (5, 2, 3)] {
            let bound = cdf_slope_bound(m, n, j).unwrap();
            let sampled = cdf_sampled_slope(m, n, j, 20, 5).unwrap();
            assert!(sampled <= 2.0 * bound, "{m} {n} {j}: {sampled} vs {bound}");
            assert!(sampled > 0.0);
        }
    }
}
