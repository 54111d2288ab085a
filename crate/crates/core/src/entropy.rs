//! `(h, φ)`-entropies `H(r) = h(Σ φ(r_i))`, their classification and the
//! flow derivative `Γ_H`.
//!
//! Logarithms are base 2 throughout; `1/ln 2` factors appear only where a
//! derivative of `log₂` is taken.

use std::f64::consts::LN_2;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flow::flow_point;
use crate::simplex::{group_spectrum, ProbVec};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which continuity theory applies to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `h` strictly increasing and concave, `φ` strictly concave.
    ConcaveType,
    /// `h` strictly decreasing and convex, `φ` strictly convex.
    ConvexType,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::ConcaveType => "ConcaveType",
            Classification::ConvexType => "ConvexType",
            Classification::Other => "Other",
        };
        f.write_str(s)
    }
}

/// The scalar pair `(h, φ)` with derivatives.
#[derive(Clone)]
pub struct HPhi {
    h: ScalarFn,
    dh: ScalarFn,
    phi: ScalarFn,
    dphi: ScalarFn,
}

impl HPhi {
    pub fn new(h: ScalarFn, dh: ScalarFn, phi: ScalarFn, dphi: ScalarFn) -> Self {
        Self { h, dh, phi, dphi }
    }

    pub fn h(&self, x: f64) -> f64 {
        (self.h)(x)
    }

    pub fn dh(&self, x: f64) -> f64 {
        (self.dh)(x)
    }

    pub fn phi(&self, x: f64) -> f64 {
        (self.phi)(x)
    }

    pub fn dphi(&self, x: f64) -> f64 {
        (self.dphi)(x)
    }

    /// `Σ φ(p_i)`.
    pub fn phi_sum(&self, p: &[f64]) -> f64 {
        p.iter().map(|&x| self.phi(x)).sum()
    }
}

#[derive(Clone)]
enum Form {
    HPhi(HPhi),
    /// `−log₂ max_i p_i`; not of `(h, φ)` form.
    MinEntropy,
}

/// An entropy functional together with its metadata.
#[derive(Clone)]
pub struct EntropyFamily {
    name: String,
    params: Vec<(String, f64)>,
    class: Classification,
    form: Form,
}

impl fmt::Debug for EntropyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EntropyFamily")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("class", &self.class)
            .finish()
    }
}

impl fmt::Display for EntropyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

fn arc(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ScalarFn {
    Arc::new(f)
}

const TOL_NORMALIZATION: f64 = 1e-12;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParam(msg.into())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) || alpha == 1.0 {
        return Err(bad(format!("alpha must be positive and != 1, got {alpha}")));
    }
    Ok(())
}

impl EntropyFamily {
    /// Builds a family from user-supplied `(h, φ)`, checking the normalization
    /// `φ(0) = 0`, `h(φ(1)) = 0` and, for the two typed classes, the curvature
    /// of `φ` with the slope-function test.
    pub fn from_hphi(
        name: impl Into<String>,
        params: Vec<(String, f64)>,
        hphi: HPhi,
        class: Classification,
    ) -> Result<Self> {
        let fam = Self::unchecked(name, params, hphi, class);
        fam.check_normalization()?;
        let hphi = fam.hphi().expect("constructed from (h, phi)");
        match class {
            Classification::ConcaveType => {
                if validate_concavity(|x| hphi.phi(x), DEFAULT_GRID) != Concavity::Strict {
                    return Err(bad("ConcaveType requires strictly concave phi"));
                }
            }
            Classification::ConvexType => {
                if validate_concavity(|x| -hphi.phi(x), DEFAULT_GRID) != Concavity::Strict {
                    return Err(bad("ConvexType requires strictly convex phi"));
                }
            }
            Classification::Other => {}
        }
        Ok(fam)
    }

    fn unchecked(name: impl Into<String>, params: Vec<(String, f64)>, hphi: HPhi, class: Classification) -> Self {
        Self {
            name: name.into(),
            params,
            class,
            form: Form::HPhi(hphi),
        }
    }

    fn check_normalization(&self) -> Result<()> {
        if let Some(hp) = self.hphi() {
            let phi0 = hp.phi(0.0);
            let h1 = hp.h(hp.phi(1.0));
            if !(phi0.abs() <= TOL_NORMALIZATION && h1.abs() <= TOL_NORMALIZATION) {
                return Err(bad(format!(
                    "{}: need phi(0) = 0 and h(phi(1)) = 0, got {phi0} and {h1}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Shannon entropy in bits: `h(x) = x`, `φ(x) = −x log x`.
    pub fn shannon() -> Self {
        let hphi = HPhi::new(
            arc(|x| x),
            arc(|_| 1.0),
            arc(|x| if x > 0.0 { -x * x.log2() } else { 0.0 }),
            arc(|x| -x.log2() - 1.0 / LN_2),
        );
        Self::unchecked("shannon", vec![], hphi, Classification::ConcaveType)
    }

    /// Rényi entropy `H_α`; `α = ∞` gives the min-entropy.
    pub fn renyi(alpha: f64) -> Result<Self> {
        if alpha == f64::INFINITY {
            return Ok(Self::min_entropy());
        }
        check_alpha(alpha)?;
        let c = 1.0 - alpha;
        let hphi = HPhi::new(
            arc(move |x| x.log2() / c),
            arc(move |x| 1.0 / (c * x * LN_2)),
            arc(move |x| x.powf(alpha)),
            arc(move |x| alpha * x.powf(alpha - 1.0)),
        );
        let class = if alpha < 1.0 {
            Classification::ConcaveType
        } else {
            Classification::ConvexType
        };
        Ok(Self::unchecked("renyi", vec![("alpha".into(), alpha)], hphi, class))
    }

    /// Tsallis entropy `T_α = (Σ p_i^α − 1)/(1 − α)`.
    pub fn tsallis(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let c = 1.0 - alpha;
        let hphi = HPhi::new(
            arc(|x| x),
            arc(|_| 1.0),
            arc(move |x| (x.powf(alpha) - x) / c),
            arc(move |x| (alpha * x.powf(alpha - 1.0) - 1.0) / c),
        );
        Ok(Self::unchecked(
            "tsallis",
            vec![("alpha".into(), alpha)],
            hphi,
            Classification::ConcaveType,
        ))
    }

    /// `(s, α)`-unified entropy `((Σ p_i^α)^s − 1)/(s(1 − α))`.
    pub fn unified(alpha: f64, s: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !s.is_finite() || s == 0.0 {
            return Err(bad(format!("unified entropy needs finite s != 0, got {s}")));
        }
        let c = 1.0 - alpha;
        let hphi = HPhi::new(
            arc(move |x| (x.powf(s) - 1.0) / (s * c)),
            arc(move |x| x.powf(s - 1.0) / c),
            arc(move |x| x.powf(alpha)),
            arc(move |x| alpha * x.powf(alpha - 1.0)),
        );
        let class = match (alpha < 1.0, s <= 1.0) {
            (true, true) => Classification::ConcaveType,
            (false, true) => Classification::ConvexType,
            _ => Classification::Other,
        };
        Ok(Self::unchecked(
            "unified",
            vec![("alpha".into(), alpha), ("s".into(), s)],
            hphi,
            class,
        ))
    }

    /// Entropy `−Σ f(p_i)` induced by a strictly convex `f` with
    /// `f(0) = f(1) = 0`.
    pub fn f_divergence(
        name: impl Into<String>,
        params: Vec<(String, f64)>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = Arc::new(f);
        let df = Arc::new(df);
        let hphi = HPhi::new(arc(|x| x), arc(|_| 1.0), arc(move |x| -f(x)), arc(move |x| -df(x)));
        Self::from_hphi(name, params, hphi, Classification::ConcaveType)
    }

    /// Concurrence as a function of the reduced state: `√(2(1 − Σ p_i²))`.
    pub fn concurrence() -> Self {
        let hphi = HPhi::new(
            arc(|x| (2.0 * (1.0 + x)).max(0.0).sqrt()),
            arc(|x| 1.0 / (2.0 * (1.0 + x)).sqrt()),
            arc(|x| -x * x),
            arc(|x| -2.0 * x),
        );
        Self::unchecked("concurrence", vec![], hphi, Classification::ConcaveType)
    }

    /// `E[K] − 1` for the number `K` of distinct outcomes in `n` draws.
    pub fn distinct_count(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(bad("number of trials must be positive"));
        }
        let nf = n as f64;
        let hphi = HPhi::new(
            arc(|x| x - 1.0),
            arc(|_| 1.0),
            arc(move |x| 1.0 - (1.0 - x).powi(n as i32)),
            arc(move |x| nf * (1.0 - x).powi(n as i32 - 1)),
        );
        // n = 1 makes φ affine and the functional constant.
        let class = if n >= 2 {
            Classification::ConcaveType
        } else {
            Classification::Other
        };
        Ok(Self::unchecked("distinct", vec![("N".into(), nf)], hphi, class))
    }

    /// Min-entropy `H_∞(p) = −log₂ max_i p_i`.
    pub fn min_entropy() -> Self {
        Self {
            name: "hinf".into(),
            params: vec![],
            class: Classification::Other,
            form: Form::MinEntropy,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn classification(&self) -> Classification {
        self.class
    }

    pub fn hphi(&self) -> Option<&HPhi> {
        match &self.form {
            Form::HPhi(hp) => Some(hp),
            Form::MinEntropy => None,
        }
    }

    pub fn is_min_entropy(&self) -> bool {
        matches!(self.form, Form::MinEntropy)
    }

    /// `H(p)`.
    pub fn eval(&self, p: &ProbVec) -> Result<f64> {
        match &self.form {
            Form::MinEntropy => Ok(-p.max().log2()),
            Form::HPhi(hp) => {
                let s = hp.phi_sum(p.as_slice());
                let v = hp.h(s);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::DomainError {
                        what: format!("h of {self}"),
                        at: s,
                    })
                }
            }
        }
    }

    /// `Γ_H(p)`, the one-sided derivative of `H` along the flow at `p`.
    pub fn gamma(&self, p: &ProbVec) -> Result<GammaValue> {
        let groups = group_spectrum(p);
        if groups.num_groups() < 2 {
            return Ok(GammaValue {
                value: 0.0,
                at: p.clone(),
            });
        }
        let (r_top, _) = groups.top();
        let (r_bot, _) = groups.bottom();
        let value = match &self.form {
            Form::MinEntropy => 1.0 / (LN_2 * r_top),
            Form::HPhi(hp) => {
                let d_bot = hp.dphi(r_bot);
                if !d_bot.is_finite() {
                    return Err(Error::BoundaryError(format!("phi' of {self} diverges at {r_bot}")));
                }
                let dh = hp.dh(hp.phi_sum(p.as_slice()));
                if !dh.is_finite() {
                    return Err(Error::BoundaryError(format!("h' of {self} diverges")));
                }
                dh * (d_bot - hp.dphi(r_top))
            }
        };
        Ok(GammaValue { value, at: p.clone() })
    }

    /// `H^δ(p) = max over B_δ(p) of H`, attained at `M_δ(p)`.
    pub fn smoothed_eval(&self, p: &ProbVec, delta: f64) -> Result<f64> {
        self.eval(&flow_point(p, delta)?)
    }
}

/// `Γ_H` at a point.
#[derive(Debug, Clone)]
pub struct GammaValue {
    pub value: f64,
    pub at: ProbVec,
}

fn require(params: &[(&str, f64)], key: &str) -> Result<f64> {
    params
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| bad(format!("missing parameter `{key}`")))
}

/// Looks up a family by name.
///
/// Names: `shannon` (alias `vonneumann`), `renyi` (`alpha`), `tsallis`
/// (`alpha`), `unified` (`alpha`, `s`), `concurrence`, `distinct` (`N`),
/// `hinf`, `fdiv-xlogx`, `fdiv-power` (`alpha > 1`).
pub fn catalogue(name: &str, params: &[(&str, f64)]) -> Result<EntropyFamily> {
    match name {
        "shannon" | "vonneumann" => Ok(EntropyFamily::shannon()),
        "renyi" => EntropyFamily::renyi(require(params, "alpha")?),
        "tsallis" => EntropyFamily::tsallis(require(params, "alpha")?),
        "unified" => EntropyFamily::unified(require(params, "alpha")?, require(params, "s")?),
        "concurrence" => Ok(EntropyFamily::concurrence()),
        "hinf" => Ok(EntropyFamily::min_entropy()),
        "distinct" => {
            let n = require(params, "N")?;
            if n < 1.0 || n.fract() != 0.0 || n > i32::MAX as f64 {
                return Err(bad(format!("N must be a positive integer, got {n}")));
            }
            EntropyFamily::distinct_count(n as u32)
        }
        "fdiv-xlogx" => EntropyFamily::f_divergence(
            "fdiv-xlogx",
            vec![],
            |x| if x > 0.0 { x * x.ln() } else { 0.0 },
            |x| x.ln() + 1.0,
        ),
        "fdiv-power" => {
            let a = require(params, "alpha")?;
            if !(a > 1.0 && a.is_finite()) {
                return Err(bad(format!("fdiv-power needs alpha > 1, got {a}")));
            }
            EntropyFamily::f_divergence(
                "fdiv-power",
                vec![("alpha".into(), a)],
                move |x| (x.powf(a) - x) / (a - 1.0),
                move |x| (a * x.powf(a - 1.0) - 1.0) / (a - 1.0),
            )
        }
        _ => Err(bad(format!("unknown entropy family `{name}`"))),
    }
}

/// Result of the slope-function test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concavity {
    Strict,
    Weak,
    NotConcave,
}

pub const DEFAULT_GRID: usize = 200;

/// Tests concavity of `phi` on `(0, 1]` through the slope function
/// `s(x₁, x₂) = (φ(x₂) − φ(x₁))/(x₂ − x₁)`, which is (strictly) decreasing in
/// each argument exactly when `φ` is (strictly) concave. Since `s` is
/// symmetric it suffices to scan the second argument.
pub fn validate_concavity<F: Fn(f64) -> f64>(phi: F, grid: usize) -> Concavity {
    assert!(grid >= 3, "grid too coarse");
    let xs: Vec<f64> = (1..=grid).map(|k| k as f64 / grid as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| phi(x)).collect();
    let mut strict = true;
    for a in 0..grid {
        let slopes: Vec<f64> = (0..grid)
            .filter(|&b| b != a)
            .map(|b| (ys[b] - ys[a]) / (xs[b] - xs[a]))
            .collect();
        for w in slopes.windows(2) {
            let tol = 1e-9 * (1.0 + w[0].abs());
            let drop = w[0] - w[1];
            if drop < -tol {
                return Concavity::NotConcave;
            }
            if drop <= tol {
                strict = false;
            }
        }
    }
    if strict {
        Concavity::Strict
    } else {
        Concavity::Weak
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pv(x: &[f64]) -> ProbVec {
        ProbVec::new(x.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let half = pv(&[0.5, 0.5]);
        assert_abs_diff_eq!(EntropyFamily::shannon().eval(&half).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            EntropyFamily::renyi(2.0).unwrap().eval(&half).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            EntropyFamily::tsallis(2.0).unwrap().eval(&half).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(EntropyFamily::concurrence().eval(&half).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(EntropyFamily::shannon().eval(&ProbVec::extremal(3)).unwrap(), 0.0);
    }

    #[test]
    fn eval_is_permutation_invariant() {
        let a = pv(&[0.1, 0.2, 0.7]);
        let b = pv(&[0.7, 0.1, 0.2]);
        for fam in [
            EntropyFamily::shannon(),
            EntropyFamily::renyi(3.0).unwrap(),
            EntropyFamily::min_entropy(),
        ] {
            assert_abs_diff_eq!(fam.eval(&a).unwrap(), fam.eval(&b).unwrap(), epsilon = 1e-15);
        }
    }

    #[test]
    fn gamma_examples() {
        let t2 = EntropyFamily::tsallis(2.0).unwrap();
        assert_abs_diff_eq!(t2.gamma(&pv(&[0.7, 0.3])).unwrap().value, 0.8, epsilon = 1e-14);
        for fam in [EntropyFamily::shannon(), t2.clone(), EntropyFamily::min_entropy()] {
            assert_eq!(fam.gamma(&ProbVec::uniform(4)).unwrap().value, 0.0);
        }
        let hinf = EntropyFamily::min_entropy();
        assert_abs_diff_eq!(
            hinf.gamma(&pv(&[0.5, 0.3, 0.2])).unwrap().value,
            1.0 / (LN_2 * 0.5),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(1.0 / (LN_2 * 0.5), 2.8854, epsilon = 1e-4);
    }

    #[test]
    fn gamma_boundary_errors() {
        let psi = ProbVec::extremal(3);
        assert!(matches!(
            EntropyFamily::shannon().gamma(&psi),
            Err(Error::BoundaryError(_))
        ));
        assert!(matches!(
            EntropyFamily::concurrence().gamma(&psi),
            Err(Error::BoundaryError(_))
        ));
        // φ′(0) finite for Tsallis α > 1.
        let g = EntropyFamily::tsallis(2.0).unwrap().gamma(&psi).unwrap();
        assert_abs_diff_eq!(g.value, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn catalogue_classification() {
        let class = |n: &str, p: &[(&str, f64)]| catalogue(n, p).unwrap().classification();
        assert_eq!(class("renyi", &[("alpha", 0.5)]), Classification::ConcaveType);
        assert_eq!(class("renyi", &[("alpha", 3.0)]), Classification::ConvexType);
        assert_eq!(class("unified", &[("alpha", 2.0), ("s", 2.0)]), Classification::Other);
        assert_eq!(
            class("unified", &[("alpha", 0.5), ("s", 0.5)]),
            Classification::ConcaveType
        );
        assert_eq!(
            class("unified", &[("alpha", 2.0), ("s", -1.0)]),
            Classification::ConvexType
        );
        assert_eq!(class("tsallis", &[("alpha", 3.0)]), Classification::ConcaveType);
        assert_eq!(class("shannon", &[]), Classification::ConcaveType);
        assert_eq!(class("concurrence", &[]), Classification::ConcaveType);
        assert_eq!(class("distinct", &[("N", 4.0)]), Classification::ConcaveType);
        assert_eq!(class("fdiv-xlogx", &[]), Classification::ConcaveType);
        assert!(catalogue("renyi", &[("alpha", 1.0)]).is_err());
        assert!(catalogue("renyi", &[("alpha", -2.0)]).is_err());
        assert!(catalogue("unified", &[("alpha", 2.0), ("s", 0.0)]).is_err());
        assert!(catalogue("renyi", &[]).is_err());
        assert!(catalogue("nope", &[]).is_err());
    }

    #[test]
    fn catalogue_normalization_holds() {
        let fams = [
            catalogue("shannon", &[]).unwrap(),
            catalogue("renyi", &[("alpha", 0.3)]).unwrap(),
            catalogue("renyi", &[("alpha", 4.0)]).unwrap(),
            catalogue("tsallis", &[("alpha", 0.7)]).unwrap(),
            catalogue("unified", &[("alpha", 2.0), ("s", 3.0)]).unwrap(),
            catalogue("concurrence", &[]).unwrap(),
            catalogue("distinct", &[("N", 3.0)]).unwrap(),
        ];
        for fam in fams {
            fam.check_normalization().unwrap();
        }
    }

    #[test]
    fn classification_matches_slope_test() {
        for (name, params) in [
            ("shannon", vec![]),
            ("renyi", vec![("alpha", 0.5)]),
            ("tsallis", vec![("alpha", 2.0)]),
            ("tsallis", vec![("alpha", 0.4)]),
            ("concurrence", vec![]),
            ("distinct", vec![("N", 5.0)]),
        ] {
            let fam = catalogue(name, &params).unwrap();
            let hp = fam.hphi().unwrap();
            assert_eq!(
                validate_concavity(|x| hp.phi(x), DEFAULT_GRID),
                Concavity::Strict,
                "{fam}"
            );
        }
        for alpha in [1.5, 2.0, 5.0] {
            let fam = EntropyFamily::renyi(alpha).unwrap();
            let hp = fam.hphi().unwrap();
            assert_eq!(validate_concavity(|x| -hp.phi(x), DEFAULT_GRID), Concavity::Strict);
        }
    }

    #[test]
    fn slope_test_examples() {
        assert_eq!(
            validate_concavity(|x| if x > 0.0 { -x * x.ln() } else { 0.0 }, 200),
            Concavity::Strict
        );
        assert_eq!(validate_concavity(|x| x * x, 200), Concavity::NotConcave);
        assert_eq!(validate_concavity(|x| -x * x, 200), Concavity::Strict);
        assert_eq!(validate_concavity(|x| x, 200), Concavity::Weak);
    }

    #[test]
    fn f_divergence_validation() {
        // f(x) = x² − x is strictly convex with f(0) = f(1) = 0.
        let fam = EntropyFamily::f_divergence("sq", vec![], |x| x * x - x, |x| 2.0 * x - 1.0).unwrap();
        assert_abs_diff_eq!(fam.eval(&pv(&[0.5, 0.5])).unwrap(), 0.5, epsilon = 1e-15);
        // concave f is rejected
        assert!(EntropyFamily::f_divergence("bad", vec![], |x| x - x * x, |x| 1.0 - 2.0 * x).is_err());
        // f(1) != 0 is rejected
        assert!(EntropyFamily::f_divergence("bad", vec![], |x| x * x, |x| 2.0 * x).is_err());
    }

    #[test]
    fn smoothed_examples() {
        let sh = EntropyFamily::shannon();
        assert_abs_diff_eq!(
            sh.smoothed_eval(&ProbVec::extremal(3), 0.5).unwrap(),
            1.5,
            epsilon = 1e-14
        );
        let u = ProbVec::uniform(4);
        assert_abs_diff_eq!(
            sh.smoothed_eval(&u, 0.3).unwrap(),
            sh.eval(&u).unwrap(),
            epsilon = 1e-15
        );
        let r05 = EntropyFamily::renyi(0.5).unwrap();
        assert_abs_diff_eq!(
            r05.smoothed_eval(&ProbVec::extremal(2), 0.5).unwrap(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn renyi_infinity_is_min_entropy() {
        let fam = EntropyFamily::renyi(f64::INFINITY).unwrap();
        assert!(fam.is_min_entropy());
        assert_abs_diff_eq!(
            fam.eval(&pv(&[0.25, 0.75])).unwrap(),
            -(0.75f64).log2(),
            epsilon = 1e-15
        );
    }
}
