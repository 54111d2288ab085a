//! Cross-validation of closed forms against brute-force oracles.

use majflow::bounds::{
    collision_closed_form, hinf_tight_uniform, lipschitz_concave_smoothed, lipschitz_convex_type,
    renyi_smoothed_closed_form, tight_uniform_bound,
};
use majflow::distinct::{distinct_uniform_bound, expected_distinct, TrialSpec};
use majflow::entropy::{catalogue, EntropyFamily};
use majflow::flow::flow_point;
use majflow::oracle::{ball_max_search, fd_gamma, random_interior_point, random_point, OracleConfig};
use majflow::simplex::ProbVec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn families() -> Vec<EntropyFamily> {
    vec![
        EntropyFamily::shannon(),
        catalogue("renyi", &[("alpha", 0.5)]).unwrap(),
        catalogue("renyi", &[("alpha", 2.0)]).unwrap(),
        catalogue("tsallis", &[("alpha", 2.0)]).unwrap(),
        catalogue("tsallis", &[("alpha", 0.5)]).unwrap(),
        catalogue("unified", &[("alpha", 0.5), ("s", 0.5)]).unwrap(),
        catalogue("unified", &[("alpha", 2.0), ("s", 3.0)]).unwrap(),
        EntropyFamily::concurrence(),
        catalogue("distinct", &[("N", 3.0)]).unwrap(),
        EntropyFamily::min_entropy(),
    ]
}

#[test]
fn ball_search_never_beats_the_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cfg = OracleConfig::new(300, 8, 1e-4, 5).unwrap();
    for fam in families() {
        for d in [2, 3, 4] {
            for _ in 0..5 {
                let r = random_point(d, &mut rng);
                for eps in [0.05, 0.3] {
                    let f = |p: &ProbVec| fam.eval(p).unwrap();
                    let flow_value = f(&flow_point(&r, eps).unwrap());
                    let (v, _) = ball_max_search(f, &r, eps, &cfg).unwrap();
                    assert!(v <= flow_value + 1e-9, "{fam}: {v} > {flow_value} at {r:?}");
                }
            }
        }
    }
}

#[test]
fn finite_differences_match_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = OracleConfig::default();
    for fam in families() {
        for _ in 0..1000 {
            let d = 2 + (rand::Rng::gen_range(&mut rng, 0..5));
            let r = random_interior_point(d, &mut rng);
            // below this the difference quotient is dominated by rounding
            if r.min() < 1e-8 {
                continue;
            }
            let exact = fam.gamma(&r).unwrap().value;
            let fd = fd_gamma(|p| fam.eval(p).unwrap(), &r, &cfg).unwrap();
            let tol = 1e-4 * exact.abs().max(1e-3);
            assert!((fd - exact).abs() <= tol, "{fam} at {r:?}: fd {fd} vs {exact}");
        }
    }
}

#[test]
fn gamma_is_nonnegative_and_bounded_by_lipschitz() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in [2, 3, 6] {
        let t2 = EntropyFamily::tsallis(2.0).unwrap();
        let k_t = lipschitz_concave_smoothed(&t2, d, 0.0).unwrap().value().unwrap();
        let r2 = EntropyFamily::renyi(2.0).unwrap();
        let k_r = collision_closed_form(d).unwrap();
        for _ in 0..2000 {
            let p = random_interior_point(d, &mut rng);
            let g = t2.gamma(&p).unwrap().value;
            assert!((0.0..=k_t + 1e-12).contains(&g));
            let g = r2.gamma(&p).unwrap().value;
            assert!((0.0..=k_r * (1.0 + 1e-9)).contains(&g));
        }
    }
}

#[test]
fn convex_optimizer_attains_sampled_sup() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for alpha in [1.5, 3.0] {
        let fam = EntropyFamily::renyi(alpha).unwrap();
        for d in [2, 3, 5] {
            let rep = lipschitz_convex_type(&fam, d).unwrap();
            let mut sup = 0.0f64;
            for _ in 0..5000 {
                let p = random_interior_point(d, &mut rng);
                sup = sup.max(fam.gamma(&p).unwrap().value);
            }
            assert!(
                sup <= rep.value * (1.0 + 1e-9),
                "alpha {alpha} d {d}: {sup} > {}",
                rep.value
            );
            let (w, _) = rep.witness.unwrap();
            let at_witness = fam.gamma(&w).unwrap().value;
            assert!((at_witness - rep.value).abs() <= 1e-6 * rep.value);
        }
    }
}

#[test]
fn smoothed_renyi_matches_numerical_derivative_of_g() {
    for (a, d) in [(0.5, 3), (0.25, 6)] {
        let fam = EntropyFamily::renyi(a).unwrap();
        for delta in [0.05, 0.2, 0.4] {
            let h = 1e-6;
            let g = |e: f64| tight_uniform_bound(&fam, d, e).unwrap().value;
            let numeric = (g(delta + h) - g(delta - h)) / (2.0 * h);
            let closed = renyi_smoothed_closed_form(a, d, delta).unwrap();
            assert!((numeric - closed).abs() <= 1e-6 * closed);
        }
    }
}

#[test]
fn hinf_bound_dominates_ball_search() {
    let hinf = EntropyFamily::min_entropy();
    let cfg = OracleConfig::new(500, 16, 1e-4, 11).unwrap();
    for d in [2, 3, 5] {
        for eps in [0.05, 0.2, 0.7] {
            let bound = hinf_tight_uniform(d, eps).unwrap().value;
            let u = ProbVec::uniform(d);
            let base = hinf.eval(&u).unwrap();
            let (v, _) = ball_max_search(|p| base - hinf.eval(p).unwrap(), &u, eps, &cfg).unwrap();
            assert!(v <= bound + 1e-9);
            assert!(v >= bound - 1e-9, "d {d} eps {eps}: search {v} misses {bound}");
        }
    }
}

#[test]
fn distinct_bound_matches_pair_search() {
    let cfg = OracleConfig::new(2000, 64, 1e-4, 12).unwrap();
    for (m, n, eps) in [(2usize, 1u32, 0.3), (2, 3, 0.3), (3, 4, 0.2), (4, 2, 0.9)] {
        let bound = distinct_uniform_bound(m, n, eps).unwrap();
        let psi = ProbVec::extremal(m);
        let e = |p: &ProbVec| expected_distinct(&TrialSpec::new(p.clone(), n).unwrap());
        let base = e(&psi);
        let (v, _) = ball_max_search(|p| e(p) - base, &psi, eps, &cfg).unwrap();
        assert!(v <= bound.uniform + 1e-9);
        assert!(
            v >= 0.95 * bound.uniform - 1e-12,
            "M {m} N {n}: {v} vs {}",
            bound.uniform
        );
    }
}
