//! Oracle cross-checks behind `majflow verify`.

use majflow::bounds::{renyi_lipschitz_sandwich, renyi_smoothed_closed_form};
use majflow::distinct::{cdf_all, cdf_sampled_slope, cdf_slope_bound, pmf_exact};
use majflow::entropy::{validate_concavity, Concavity, DEFAULT_GRID};
use majflow::oracle::{
    ball_max_search, ball_sample, distinct_brute_force, fd_gamma, majorization_pairs, pairs_within, random_density,
    random_interior_point, random_point,
};
use majflow::quantum::{entropy_of_state, free_energy_identity_check, random_unitary};
use majflow::simplex::majorizes_with_tol;
use majflow::{
    catalogue, collision_closed_form, distinct_uniform_bound, expected_distinct, flow_path, flow_point, flow_state,
    generator, hinf_tight_uniform, lipschitz_concave_smoothed, lipschitz_convex_type, prior_art_bound,
    simulate_distinct, spectrum_sorted, tight_uniform_bound, trace_distance, tv_distance, DensityMatrix, EntropyFamily,
    HermitianMatrix, OracleConfig, PriorArt, ProbVec, TrialSpec,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Flow,
    Entropy,
    Bounds,
    Quantum,
    Distinct,
    All,
}

pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

type Outcome = Result<String, String>;

fn verdict(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Library errors inside a check count as failures of that check.
fn lib<T>(r: majflow::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Runner {
    seed: u64,
    checks: Vec<Check>,
}

impl Runner {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }

    fn sub_seed(&self, salt: u64) -> u64 {
        self.rng(salt).gen()
    }

    fn add(&mut self, suite: &'static str, name: &'static str, f: impl FnOnce(&Self) -> Outcome) {
        let outcome = f(self);
        self.checks.push(Check { suite, name, outcome });
    }
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    let mut r = Runner {
        seed,
        checks: Vec::new(),
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Flow {
        flow_checks(&mut r);
    }
    if all || suite == Suite::Entropy {
        entropy_checks(&mut r);
    }
    if all || suite == Suite::Bounds {
        bounds_checks(&mut r);
    }
    if all || suite == Suite::Quantum {
        quantum_checks(&mut r);
    }
    if all || suite == Suite::Distinct {
        distinct_checks(&mut r);
    }
    r.checks
}

fn concave_families() -> Vec<EntropyFamily> {
    let mk = |name: &str, ps: &[(&str, f64)]| catalogue(name, ps).expect("catalogue entry");
    vec![
        EntropyFamily::shannon(),
        mk("renyi", &[("alpha", 0.5)]),
        mk("tsallis", &[("alpha", 2.0)]),
        mk("tsallis", &[("alpha", 0.5)]),
        mk("unified", &[("alpha", 0.5), ("s", 0.5)]),
        mk("fdiv-xlogx", &[]),
        mk("fdiv-power", &[("alpha", 2.0)]),
        EntropyFamily::concurrence(),
        mk("distinct", &[("N", 3.0)]),
    ]
}

fn flow_checks(r: &mut Runner) {
    r.add("flow", "unit-speed", |r| {
        let mut rng = r.rng(1);
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let d = rng.gen_range(2..=8);
            let p = random_point(d, &mut rng);
            let eps = rng.gen_range(0.0..=1.0);
            let m = lib(flow_point(&p, eps))?;
            let to_u = lib(tv_distance(&p, &ProbVec::uniform(d)))?;
            worst = worst.max((lib(tv_distance(&m, &p))? - eps.min(to_u)).abs());
        }
        verdict(worst <= 1e-10, format!("max deviation {worst:.2e}"))
    });
    r.add("flow", "semigroup", |r| {
        let mut rng = r.rng(2);
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let p = random_point(rng.gen_range(2..=8), &mut rng);
            let (s, t) = (rng.gen_range(0.0..0.5), rng.gen_range(0.0..0.5));
            let a = lib(flow_point(&lib(flow_point(&p, s))?, t))?;
            let b = lib(flow_point(&p, s + t))?;
            worst = worst.max(lib(tv_distance(&a, &b))?);
        }
        verdict(
            worst <= 1e-10,
            format!("max TV between M_t(M_s) and M_(s+t) {worst:.2e}"),
        )
    });
    r.add("flow", "majorization-monotone", |r| {
        let mut rng = r.rng(3);
        for _ in 0..300 {
            let p = random_point(rng.gen_range(2..=8), &mut rng);
            let (a, b) = (rng.gen_range(0.0..1.0f64), rng.gen_range(0.0..1.0f64));
            let early = lib(flow_point(&p, a.min(b)))?;
            let late = lib(flow_point(&p, a.max(b)))?;
            if !lib(majorizes_with_tol(&p, &early, 1e-10))? || !lib(majorizes_with_tol(&early, &late, 1e-10))? {
                return Err(format!("order broken at {p:?}"));
            }
        }
        Ok("300 trajectories ordered".into())
    });
    r.add("flow", "permutation-equivariant", |r| {
        let mut rng = r.rng(4);
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let d = rng.gen_range(2..=7);
            let p = random_point(d, &mut rng);
            let mut perm: Vec<usize> = (0..d).collect();
            perm.shuffle(&mut rng);
            let eps = rng.gen_range(0.0..1.0);
            let a = lib(flow_point(&p.permuted(&perm), eps))?;
            let b = lib(flow_point(&p, eps))?.permuted(&perm);
            worst = worst.max(lib(tv_distance(&a, &b))?);
        }
        verdict(worst <= 1e-12, format!("max deviation {worst:.2e}"))
    });
    r.add("flow", "ball-minimality", |r| {
        let mut rng = r.rng(5);
        let mut tested = 0;
        for i in 0..20 {
            let p = random_point(rng.gen_range(2..=6), &mut rng);
            let eps = rng.gen_range(0.01..=1.0);
            let m = lib(flow_point(&p, eps))?;
            for q in lib(ball_sample(&p, eps, 200, r.sub_seed(500 + i)))? {
                if !lib(majorizes_with_tol(&q, &m, 1e-9))? {
                    return Err(format!("{q:?} in the ball does not majorize the flow point {m:?}"));
                }
                tested += 1;
            }
        }
        Ok(format!("{tested} ball samples all majorize the flow point"))
    });
    r.add("flow", "path-pieces", |r| {
        let mut rng = r.rng(6);
        for _ in 0..300 {
            let d = rng.gen_range(2..=10);
            let p = random_point(d, &mut rng);
            let path = flow_path(&p);
            let to_u = lib(tv_distance(&p, &ProbVec::uniform(d)))?;
            if path.num_segments() > d || (path.terminal_s() - to_u).abs() > 1e-10 {
                return Err(format!("bad path from {p:?}"));
            }
        }
        Ok("at most d pieces, absorbed at TV(r,u)".into())
    });
    r.add("flow", "generator-speed", |r| {
        let mut rng = r.rng(7);
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let p = random_interior_point(rng.gen_range(2..=8), &mut rng);
            let g = generator(&p);
            if !p.is_uniform() {
                worst = worst
                    .max((g.speed() - 1.0).abs())
                    .max(g.direction.iter().sum::<f64>().abs());
            }
        }
        verdict(worst <= 1e-12, format!("max deviation from unit speed {worst:.2e}"))
    });
}

fn entropy_checks(r: &mut Runner) {
    r.add("entropy", "schur-concave", |r| {
        let mut fams = concave_families();
        fams.push(EntropyFamily::min_entropy());
        fams.push(lib(EntropyFamily::renyi(3.0))?);
        let mut n = 0;
        for d in [2, 3, 5] {
            for (p, q) in lib(majorization_pairs(d, 100, r.sub_seed(d as u64)))? {
                for fam in &fams {
                    if lib(fam.eval(&p))? < lib(fam.eval(&q))? - 1e-10 {
                        return Err(format!("{fam} increases from {p:?} to {q:?}"));
                    }
                    n += 1;
                }
            }
        }
        Ok(format!("{n} comparisons"))
    });
    r.add("entropy", "gamma-finite-differences", |r| {
        let mut rng = r.rng(11);
        let cfg = OracleConfig::default();
        let mut fams = concave_families();
        fams.push(lib(EntropyFamily::renyi(2.0))?);
        let mut worst = 0.0f64;
        for fam in &fams {
            for _ in 0..100 {
                let p = random_interior_point(rng.gen_range(2..=6), &mut rng);
                if p.min() < 1e-8 {
                    continue;
                }
                let exact = lib(fam.gamma(&p))?.value;
                let fd = lib(fd_gamma(|x| fam.eval(x).expect("interior point"), &p, &cfg))?;
                worst = worst.max((fd - exact).abs() / exact.abs().max(1e-3));
            }
        }
        verdict(worst <= 1e-4, format!("max relative error {worst:.2e}"))
    });
    r.add("entropy", "gamma-nonnegative", |r| {
        let mut rng = r.rng(12);
        let mut lowest = f64::INFINITY;
        for fam in concave_families() {
            for _ in 0..200 {
                let p = random_interior_point(rng.gen_range(2..=6), &mut rng);
                lowest = lowest.min(lib(fam.gamma(&p))?.value);
            }
        }
        verdict(lowest >= -1e-12, format!("smallest value {lowest:.3e}"))
    });
    r.add("entropy", "phi-concave", |_| {
        for fam in concave_families() {
            let hp = fam.hphi().ok_or_else(|| format!("{fam} has no (h, phi) form"))?;
            if validate_concavity(|x| hp.phi(x), DEFAULT_GRID) == Concavity::NotConcave {
                return Err(format!("phi of {fam} fails the slope test"));
            }
        }
        Ok("slope test passes for every concave-type family".into())
    });
    r.add("entropy", "tsallis-pseudo-additive", |r| {
        let mut rng = r.rng(13);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let alpha = rng.gen_range(0.1..4.0);
            if (alpha - 1.0f64).abs() < 1e-3 {
                continue;
            }
            let t = lib(EntropyFamily::tsallis(alpha))?;
            let p = random_point(rng.gen_range(2..=4), &mut rng);
            let q = random_point(rng.gen_range(2..=4), &mut rng);
            let (tp, tq) = (lib(t.eval(&p))?, lib(t.eval(&q))?);
            let joint = lib(t.eval(&p.tensor(&q)))?;
            worst = worst.max((joint - (tp + tq + (1.0 - alpha) * tp * tq)).abs());
        }
        verdict(worst <= 1e-10, format!("max deviation {worst:.2e}"))
    });
    r.add("entropy", "smoothing-increases", |r| {
        let mut rng = r.rng(14);
        for fam in concave_families() {
            for _ in 0..100 {
                let p = random_point(rng.gen_range(2..=6), &mut rng);
                let delta = rng.gen_range(0.0..1.0);
                if lib(fam.smoothed_eval(&p, delta))? < lib(fam.eval(&p))? - 1e-12 {
                    return Err(format!("{fam} decreases under smoothing at {p:?}"));
                }
            }
        }
        Ok("smoothed value never below the original".into())
    });
}

fn bounds_checks(r: &mut Runner) {
    r.add("bounds", "tight-bound-attained", |_| {
        let mut worst = 0.0f64;
        for fam in concave_families() {
            for d in [2, 3, 5] {
                for eps in [0.05, 0.3, 0.9] {
                    let rep = lib(tight_uniform_bound(&fam, d, eps))?;
                    let (p, q) = rep.witness.clone().ok_or("missing witness")?;
                    if lib(tv_distance(&p, &q))? > eps + 1e-12 {
                        return Err(format!("{fam}: witness farther than {eps}"));
                    }
                    let gap = (lib(fam.eval(&p))? - lib(fam.eval(&q))?).abs();
                    worst = worst.max((gap - rep.value).abs());
                }
            }
        }
        verdict(worst <= 1e-9, format!("witness gap matches g to {worst:.2e}"))
    });
    r.add("bounds", "tight-bound-dominates", |r| {
        let mut n = 0;
        for fam in concave_families() {
            for d in [2, 4] {
                for eps in [0.1, 0.5] {
                    let g = lib(tight_uniform_bound(&fam, d, eps))?.value;
                    for (p, q) in lib(pairs_within(d, eps, 100, r.sub_seed(20 + d as u64)))? {
                        let gap = (lib(fam.eval(&p))? - lib(fam.eval(&q))?).abs();
                        if gap > g + 1e-9 {
                            return Err(format!("{fam}: pair gap {gap} exceeds g = {g}"));
                        }
                        n += 1;
                    }
                }
            }
        }
        Ok(format!("{n} sampled pairs within the bound"))
    });
    r.add("bounds", "lipschitz-dominates", |r| {
        let mut rng = r.rng(21);
        for fam in concave_families() {
            for d in [2, 3, 6] {
                let Some(k) = lib(lipschitz_concave_smoothed(&fam, d, 0.0))?.value() else {
                    continue;
                };
                for eps in [0.01, 0.2, 0.7] {
                    if lib(tight_uniform_bound(&fam, d, eps))?.value > k * eps + 1e-12 {
                        return Err(format!("{fam}: g({eps}) above k*eps"));
                    }
                }
                for _ in 0..200 {
                    let p = random_interior_point(d, &mut rng);
                    if lib(fam.gamma(&p))?.value > k * (1.0 + 1e-9) {
                        return Err(format!("{fam}: Gamma above k at {p:?}"));
                    }
                }
            }
        }
        Ok("g(eps) <= k*eps and Gamma <= k".into())
    });
    r.add("bounds", "convex-optimizer", |r| {
        let mut rng = r.rng(22);
        let mut worst = 0.0f64;
        for alpha in [1.5, 3.0] {
            let fam = lib(EntropyFamily::renyi(alpha))?;
            for d in [2, 3, 5] {
                let rep = lib(lipschitz_convex_type(&fam, d))?;
                let mut sup = 0.0f64;
                for _ in 0..1000 {
                    sup = sup.max(lib(fam.gamma(&random_interior_point(d, &mut rng)))?.value);
                }
                if sup > rep.value * (1.0 + 1e-9) {
                    return Err(format!("alpha {alpha}, d {d}: sampled {sup} beats {}", rep.value));
                }
                let (w, _) = rep.witness.ok_or("missing witness")?;
                worst = worst.max((lib(fam.gamma(&w))?.value - rep.value).abs() / rep.value);
            }
        }
        verdict(worst <= 1e-6, format!("witness reproduces the constant to {worst:.2e}"))
    });
    r.add("bounds", "collision-closed-form", |_| {
        let fam = lib(EntropyFamily::renyi(2.0))?;
        let mut worst = 0.0f64;
        for d in 2..=10 {
            let opt = lib(lipschitz_convex_type(&fam, d))?.value;
            let closed = lib(collision_closed_form(d))?;
            worst = worst.max((opt - closed).abs() / closed);
        }
        verdict(worst <= 1e-8, format!("max relative difference {worst:.2e}"))
    });
    r.add("bounds", "renyi-sandwich", |_| {
        for alpha in [1.5, 2.0, 3.0] {
            let fam = lib(EntropyFamily::renyi(alpha))?;
            for d in [3, 5, 10] {
                let k = lib(lipschitz_convex_type(&fam, d))?.value;
                if !lib(renyi_lipschitz_sandwich(alpha, d))?.contains(k, 1e-9) {
                    return Err(format!("alpha {alpha}, d {d}: {k} outside the sandwich"));
                }
            }
        }
        Ok("optimizer inside the closed-form sandwich".into())
    });
    r.add("bounds", "smoothed-renyi", |_| {
        let mut worst = 0.0f64;
        for (a, d) in [(0.5, 3), (0.25, 6)] {
            let fam = lib(EntropyFamily::renyi(a))?;
            for delta in [0.05, 0.2, 0.4] {
                let h = 1e-6;
                let g = |e: f64| tight_uniform_bound(&fam, d, e).map(|r| r.value);
                let numeric = (lib(g(delta + h))? - lib(g(delta - h))?) / (2.0 * h);
                let closed = lib(renyi_smoothed_closed_form(a, d, delta))?;
                worst = worst.max((numeric - closed).abs() / closed);
            }
        }
        verdict(worst <= 1e-6, format!("closed form vs numerical g' {worst:.2e}"))
    });
    r.add("bounds", "hinf-attained", |r| {
        let hinf = EntropyFamily::min_entropy();
        let cfg = lib(OracleConfig::new(500, 16, 1e-4, r.sub_seed(23)))?;
        let mut worst = 0.0f64;
        for d in [2, 3, 5] {
            for eps in [0.05, 0.2, 0.7] {
                let bound = lib(hinf_tight_uniform(d, eps))?.value;
                let u = ProbVec::uniform(d);
                let base = lib(hinf.eval(&u))?;
                let (v, _) = lib(ball_max_search(|p| base - hinf.eval(p).expect("valid"), &u, eps, &cfg))?;
                if v > bound + 1e-9 {
                    return Err(format!("d {d}, eps {eps}: search {v} beats {bound}"));
                }
                worst = worst.max(bound - v);
            }
        }
        verdict(worst <= 1e-9, format!("search reaches the bound to {worst:.2e}"))
    });
    r.add("bounds", "beats-prior-art", |_| {
        let (alpha, d, eps) = (2.0, 10, 0.01);
        let ours = eps * lib(lipschitz_convex_type(&lib(EntropyFamily::renyi(alpha))?, d))?.value;
        let chen = lib(prior_art_bound(PriorArt::Chen, alpha, d, eps))?.value;
        let rastegin = lib(prior_art_bound(PriorArt::Rastegin, alpha, d, eps))?.value;
        verdict(
            chen / ours > 2.0 && rastegin / ours > 10.0,
            format!(
                "ours {ours:.4}, chen x{:.2}, rastegin x{:.2}",
                chen / ours,
                rastegin / ours
            ),
        )
    });
}

fn quantum_checks(r: &mut Runner) {
    r.add("quantum", "spectra-contract", |r| {
        let mut rng = r.rng(31);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..200 {
            let d = rng.gen_range(2..=6);
            let rho = lib(random_density(d, &mut rng))?;
            let sigma = lib(random_density(d, &mut rng))?;
            let tv = lib(tv_distance(
                &lib(spectrum_sorted(&rho))?,
                &lib(spectrum_sorted(&sigma))?,
            ))?;
            worst = worst.max(tv - lib(trace_distance(&rho, &sigma))?);
        }
        verdict(worst <= 1e-9, format!("max excess of spectral TV {worst:.2e}"))
    });
    r.add("quantum", "unitary-invariance", |r| {
        let mut rng = r.rng(32);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let d = rng.gen_range(2..=6);
            let rho = lib(random_density(d, &mut rng))?;
            let u = random_unitary(d, &mut rng);
            let rotated = lib(DensityMatrix::new(lib(rho.matrix().conjugate_by(&u))?))?;
            let a = lib(spectrum_sorted(&rho))?;
            let b = lib(spectrum_sorted(&rotated))?;
            worst = worst.max(a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        }
        verdict(worst <= 1e-10, format!("max eigenvalue change {worst:.2e}"))
    });
    r.add("quantum", "flow-state", |r| {
        let mut rng = r.rng(33);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let d = rng.gen_range(2..=6);
            let rho = lib(random_density(d, &mut rng))?;
            let eps = rng.gen_range(0.01..=1.0);
            let out = lib(flow_state(&rho, eps))?;
            if lib(trace_distance(&out, &rho))? > eps + 1e-9 {
                return Err(format!("flow state farther than {eps}"));
            }
            let want = lib(flow_point(&lib(spectrum_sorted(&rho))?, eps))?;
            let got = lib(spectrum_sorted(&out))?;
            worst = worst.max(lib(tv_distance(&want, &got))?);
        }
        verdict(
            worst <= 1e-9,
            format!("spectrum follows the classical flow to {worst:.2e}"),
        )
    });
    r.add("quantum", "classical-bounds-hold", |r| {
        let mut rng = r.rng(34);
        let shannon = EntropyFamily::shannon();
        let r05 = lib(EntropyFamily::renyi(0.5))?;
        let t2 = lib(EntropyFamily::tsallis(2.0))?;
        let r2 = lib(EntropyFamily::renyi(2.0))?;
        for _ in 0..100 {
            let d = rng.gen_range(2..=6);
            let rho = lib(random_density(d, &mut rng))?;
            let sigma = lib(random_density(d, &mut rng))?;
            let t = lib(trace_distance(&rho, &sigma))?;
            if t <= 0.0 {
                continue;
            }
            for fam in [&shannon, &r05, &t2] {
                let gap = (lib(entropy_of_state(fam, &rho))? - lib(entropy_of_state(fam, &sigma))?).abs();
                if gap > lib(tight_uniform_bound(fam, d, t))?.value + 1e-9 {
                    return Err(format!("{fam} exceeds g at trace distance {t}"));
                }
            }
            let k = lib(lipschitz_convex_type(&r2, d))?.value;
            let gap = (lib(entropy_of_state(&r2, &rho))? - lib(entropy_of_state(&r2, &sigma))?).abs();
            if gap > k * t * (1.0 + 1e-9) {
                return Err(format!("collision entropy exceeds k*T at trace distance {t}"));
            }
        }
        Ok("100 random state pairs".into())
    });
    r.add("quantum", "free-energy", |r| {
        let mut rng = r.rng(35);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let d = rng.gen_range(1..=6);
            let energies: Vec<f64> = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let h = lib(HermitianMatrix::from_real_diag(&energies))?;
            let (t0, t) = (rng.gen_range(0.1..=10.0), rng.gen_range(0.1..=10.0));
            worst = worst.max(lib(free_energy_identity_check(&h, t0, t))?.residual);
        }
        verdict(worst < 1e-9, format!("max residual {worst:.2e}"))
    });
}

fn distinct_checks(r: &mut Runner) {
    r.add("distinct", "enumeration", |r| {
        let mut rng = r.rng(41);
        let mut worst = 0.0f64;
        for m in 1..=4 {
            for n in 1..=5 {
                let spec = lib(TrialSpec::new(random_point(m, &mut rng), n))?;
                let a = lib(pmf_exact(&spec))?;
                let b = lib(distinct_brute_force(&spec))?;
                worst = a.iter().zip(&b).fold(worst, |w, (x, y)| w.max((x - y).abs()));
            }
        }
        verdict(worst <= 1e-12, format!("max pmf difference {worst:.2e}"))
    });
    r.add("distinct", "expectation", |r| {
        let mut rng = r.rng(42);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let spec = lib(TrialSpec::new(
                random_point(rng.gen_range(1..=8), &mut rng),
                rng.gen_range(1..=10),
            ))?;
            let mean: f64 = lib(pmf_exact(&spec))?
                .iter()
                .enumerate()
                .map(|(k, x)| (k + 1) as f64 * x)
                .sum();
            worst = worst.max((mean - expected_distinct(&spec)).abs());
        }
        verdict(worst <= 1e-10, format!("closed-form mean vs pmf {worst:.2e}"))
    });
    r.add("distinct", "lipschitz-slope", |r| {
        let mut rng = r.rng(43);
        let h = 1e-6;
        let mut worst = f64::NEG_INFINITY;
        for (m, n) in [(3usize, 4u32), (5, 2), (10, 3)] {
            for _ in 0..100 {
                let p = random_interior_point(m, &mut rng);
                let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
                if a == b || p[b] < h {
                    continue;
                }
                let mut q = p.as_slice().to_vec();
                q[a] += h;
                q[b] -= h;
                let base = expected_distinct(&lib(TrialSpec::new(p.clone(), n))?);
                let moved = expected_distinct(&lib(TrialSpec::new(lib(ProbVec::new(q))?, n))?);
                worst = worst.max((moved - base).abs() / h - n as f64);
            }
        }
        verdict(worst <= 1e-6, format!("max slope minus N {worst:.2e}"))
    });
    r.add("distinct", "uniform-bound", |r| {
        for (m, n, eps) in [(2usize, 3u32, 0.3), (3, 4, 0.2), (4, 2, 0.9)] {
            let b = lib(distinct_uniform_bound(m, n, eps))?;
            for (p, q) in lib(pairs_within(m, eps, 300, r.sub_seed(44 + m as u64)))? {
                let gap = (expected_distinct(&lib(TrialSpec::new(p, n))?)
                    - expected_distinct(&lib(TrialSpec::new(q, n))?))
                .abs();
                if gap > b.uniform + 1e-9 || b.uniform > b.lipschitz_cap + 1e-12 {
                    return Err(format!("M {m}, N {n}: gap {gap} vs bound {}", b.uniform));
                }
            }
        }
        Ok("sampled pairs within the bound, bound within eps*N".into())
    });
    r.add("distinct", "cdf-schur-convex", |r| {
        for d in [2, 3, 5] {
            for (p, q) in lib(majorization_pairs(d, 60, r.sub_seed(45 + d as u64)))? {
                for n in [1, 3] {
                    let fp = lib(cdf_all(&lib(TrialSpec::new(p.clone(), n))?))?;
                    let fq = lib(cdf_all(&lib(TrialSpec::new(q.clone(), n))?))?;
                    if fp.iter().zip(&fq).any(|(a, b)| *b < a - 1e-10) {
                        return Err(format!("F_j decreases from {p:?} to {q:?}"));
                    }
                }
            }
        }
        Ok("F_j ordered on every pair".into())
    });
    r.add("distinct", "cdf-slope", |r| {
        for (m, n) in [(3usize, 2u32), (4, 3)] {
            for j in 1..=m {
                let sampled = lib(cdf_sampled_slope(m, n, j, 30, r.sub_seed(46)))?;
                let bound = lib(cdf_slope_bound(m, n, j))?;
                if sampled > bound * (1.0 + 1e-6) + 1e-6 {
                    return Err(format!("M {m}, N {n}, j {j}: slope {sampled} above {bound}"));
                }
            }
        }
        Ok("sampled F_j slopes below the count bound".into())
    });
    r.add("distinct", "monte-carlo", |r| {
        let spec = lib(TrialSpec::new(ProbVec::uniform(3), 3))?;
        let sim = lib(simulate_distinct(&spec, 100_000, r.sub_seed(47)))?;
        let exact = expected_distinct(&spec);
        let z = (sim.mean - exact).abs() / sim.std_err;
        // 4 sigma keeps arbitrary user seeds from tripping the check by chance
        verdict(z <= 4.0, format!("mean {:.5} vs {exact:.5}, {z:.2} sigma", sim.mean))
    });
}
