//! Continuity bounds and Lipschitz constants with respect to total variation
//! (trace) distance. All values are in bits.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::entropy::{Classification, EntropyFamily, HPhi};
use crate::error::{Error, Result};
use crate::flow::flow_point;
use crate::simplex::{group_spectrum, ProbVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    TightUniform,
    Lipschitz,
    PriorArt,
}

/// A computed bound. `eps` is absent for Lipschitz constants.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub formula_id: String,
    pub family: String,
    pub dim: usize,
    pub eps: Option<f64>,
    pub witness: Option<(ProbVec, ProbVec)>,
}

/// Outcome of the smoothed Lipschitz computation: at `δ = 0` the constant may
/// be infinite.
#[derive(Debug, Clone)]
pub enum LipschitzOutcome {
    Finite(BoundReport),
    NotLipschitz { family: String, dim: usize },
}

impl LipschitzOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            LipschitzOutcome::Finite(r) => Some(r.value),
            LipschitzOutcome::NotLipschitz { .. } => None,
        }
    }
}

fn require_class(fam: &EntropyFamily, want: Classification) -> Result<&HPhi> {
    match fam.hphi() {
        Some(hp) if fam.classification() == want => Ok(hp),
        _ => Err(Error::WrongClass {
            expected: match want {
                Classification::ConcaveType => "ConcaveType",
                Classification::ConvexType => "ConvexType",
                Classification::Other => "Other",
            },
            actual: fam.classification().to_string(),
            family: fam.to_string(),
        }),
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::BadParam(format!("dimension must be at least 2, got {d}")));
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::EpsOutOfRange(eps));
    }
    Ok(())
}

/// `g(ε)` for a Concave-Type pair, without class checks.
fn g_value(hp: &HPhi, d: usize, eps: f64) -> f64 {
    let df = d as f64;
    if eps < 1.0 - 1.0 / df {
        hp.h(hp.phi(1.0 - eps) + (df - 1.0) * hp.phi(eps / (df - 1.0)))
    } else {
        hp.h(df * hp.phi(1.0 / df))
    }
}

/// The tight uniform continuity bound `g(ε)`: the maximum of `|H(p) − H(q)|`
/// over `TV(p, q) ≤ ε` in dimension `d`. The witness is `(ψ, M_ε(ψ))`.
pub fn tight_uniform_bound(fam: &EntropyFamily, d: usize, eps: f64) -> Result<BoundReport> {
    let hp = require_class(fam, Classification::ConcaveType)?;
    check_dim(d)?;
    check_eps(eps)?;
    let psi = ProbVec::extremal(d);
    let moved = flow_point(&psi, eps)?;
    Ok(BoundReport {
        kind: BoundKind::TightUniform,
        value: g_value(hp, d, eps),
        formula_id: "g".into(),
        family: fam.to_string(),
        dim: d,
        eps: Some(eps),
        witness: Some((psi, moved)),
    })
}

/// Optimal Lipschitz constant of the smoothed entropy `H^δ`, which is `g′(δ)`.
/// At `δ = 0` this is the optimal constant of `H` itself, which may be
/// infinite.
pub fn lipschitz_concave_smoothed(fam: &EntropyFamily, d: usize, delta: f64) -> Result<LipschitzOutcome> {
    let hp = require_class(fam, Classification::ConcaveType)?;
    check_dim(d)?;
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::EpsOutOfRange(delta));
    }
    let df = d as f64;
    let value = if delta >= 1.0 - 1.0 / df {
        0.0
    } else if delta == 0.0 {
        let gap = hp.dphi(0.0) - hp.dphi(1.0);
        hp.dh(hp.phi(1.0)) * gap
    } else {
        let small = delta / (df - 1.0);
        let s = hp.phi(1.0 - delta) + (df - 1.0) * hp.phi(small);
        hp.dh(s) * (hp.dphi(small) - hp.dphi(1.0 - delta))
    };
    if !value.is_finite() {
        return Ok(LipschitzOutcome::NotLipschitz {
            family: fam.to_string(),
            dim: d,
        });
    }
    Ok(LipschitzOutcome::Finite(BoundReport {
        kind: BoundKind::Lipschitz,
        value,
        formula_id: if delta == 0.0 { "k".into() } else { "k-smoothed".into() },
        family: fam.to_string(),
        dim: d,
        eps: None,
        witness: None,
    }))
}

const GRID: usize = 200;
const TOP_CELLS: usize = 5;
const MAX_ROUNDS: usize = 100;
const REL_IMPROVEMENT: f64 = 1e-10;
const X_FLOOR: f64 = 1e-10;

/// The function maximized for Convex-Type families: `Γ_H` at the point
/// `(y, z, …, z, x)` with `z = (1 − x − y)/(d − 2)`.
fn convex_objective(hp: &HPhi, d: usize, x: f64, y: f64) -> f64 {
    let mut s = hp.phi(y) + hp.phi(x);
    if d > 2 {
        let z = ((1.0 - x - y) / (d as f64 - 2.0)).max(0.0);
        s += (d as f64 - 2.0) * hp.phi(z);
    }
    let v = -hp.dh(s) * (hp.dphi(y) - hp.dphi(x));
    if v.is_finite() {
        v
    } else {
        f64::NEG_INFINITY
    }
}

/// Maps `t ∈ [0, 1]` onto the feasible `y` range for the given `x`.
fn y_of(d: usize, x: f64, t: f64) -> f64 {
    let df = d as f64;
    let lo = (1.0 - x) / (df - 1.0);
    let hi = 1.0 - (df - 1.0) * x;
    lo + t * (hi - lo).max(0.0)
}

fn golden_max(f: impl Fn(f64) -> f64, a0: f64, b0: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = (a0, f(a0));
    let fb = f(b0);
    if fb > best.1 {
        best = (b0, fb);
    }
    let (mut a, mut b) = (a0, b0);
    let mut c = b - g * (b - a);
    let mut e = a + g * (b - a);
    let mut fc = f(c);
    let mut fe = f(e);
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if fc >= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = f(e);
        }
    }
    for (x, v) in [(c, fc), (e, fe)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Maximizer of the Convex-Type objective.
#[derive(Debug, Clone)]
struct ConvexOptimum {
    value: f64,
    x: f64,
    y: f64,
}

fn optimize_convex(hp: &HPhi, d: usize) -> ConvexOptimum {
    let x_max = 1.0 / d as f64;
    let include_zero = hp.dphi(0.0).is_finite();
    let mut xs = Vec::with_capacity(GRID);
    if include_zero {
        xs.push(0.0);
    }
    let n_log = GRID - xs.len();
    let lo = (X_FLOOR * x_max).ln();
    let hi = x_max.ln();
    for i in 0..n_log {
        let f = i as f64 / (n_log - 1) as f64;
        xs.push((lo + f * (hi - lo)).exp());
    }
    *xs.last_mut().expect("non-empty grid") = x_max;
    let ts: Vec<f64> = if d == 2 {
        vec![0.0]
    } else {
        (0..GRID).map(|j| j as f64 / (GRID - 1) as f64).collect()
    };
    let obj = |x: f64, t: f64| convex_objective(hp, d, x, y_of(d, x, t));

    // fixed iteration order gives a deterministic tie-break
    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(xs.len() * ts.len());
    for (i, &x) in xs.iter().enumerate() {
        for (j, &t) in ts.iter().enumerate() {
            cells.push((obj(x, t), i, j));
        }
    }
    cells.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut best = ConvexOptimum {
        value: f64::NEG_INFINITY,
        x: 0.0,
        y: 0.0,
    };
    for &(v0, i, j) in cells.iter().take(TOP_CELLS) {
        let (xl, xh) = (xs[i.saturating_sub(2)], xs[(i + 2).min(xs.len() - 1)]);
        let (tl, th) = (ts[j.saturating_sub(2)], ts[(j + 2).min(ts.len() - 1)]);
        let (mut x, mut t, mut v) = (xs[i], ts[j], v0);
        for _ in 0..MAX_ROUNDS {
            let before = v;
            let (nx, fx) = golden_max(|x| obj(x, t), xl, xh);
            if fx > v {
                x = nx;
                v = fx;
            }
            if d > 2 {
                let (nt, ft) = golden_max(|t| obj(x, t), tl, th);
                if ft > v {
                    t = nt;
                    v = ft;
                }
            }
            if v - before <= REL_IMPROVEMENT * v.abs() {
                break;
            }
        }
        if v > best.value {
            best = ConvexOptimum {
                value: v,
                x,
                y: y_of(d, x, t),
            };
        }
    }
    best
}

fn lipschitz_witness(r: ProbVec) -> Result<Option<(ProbVec, ProbVec)>> {
    let moved = flow_point(&r, 1e-6)?;
    Ok(Some((r, moved)))
}

/// Optimal Lipschitz constant of a Convex-Type family, found by maximizing
/// `Γ_H` over points of the form `(y, z, …, z, x)`. The witness is the
/// maximizer `r*` paired with a point slightly along its flow.
pub fn lipschitz_convex_type(fam: &EntropyFamily, d: usize) -> Result<BoundReport> {
    let hp = require_class(fam, Classification::ConvexType)?;
    check_dim(d)?;
    let opt = optimize_convex(hp, d);
    let mut point = vec![opt.y];
    if d > 2 {
        let z = ((1.0 - opt.x - opt.y) / (d as f64 - 2.0)).max(0.0);
        point.extend(std::iter::repeat_n(z, d - 2));
    }
    point.push(opt.x);
    let witness = lipschitz_witness(ProbVec::new(point)?)?;
    Ok(BoundReport {
        kind: BoundKind::Lipschitz,
        value: opt.value,
        formula_id: "k-convex".into(),
        family: fam.to_string(),
        dim: d,
        eps: None,
        witness,
    })
}

fn param(params: &[(&str, f64)], key: &str) -> Result<f64> {
    params
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::BadParam(format!("missing parameter `{key}`")))
}

/// Closed-form Lipschitz constants and upper bounds.
///
/// * `hinf`: `d/ln 2`, exact.
/// * `renyi_interval` (`alpha ∈ (1, 2)`): upper bound `α d^{α−1}/((α−1) ln 2)`.
/// * `unified` (`alpha > 1`, `s ≤ 1`): upper bound `α/(α−1)·d^{1−αs}` when
///   `sα < 1`, else `α/(α−1)`.
pub fn lipschitz_special(name: &str, params: &[(&str, f64)], d: usize) -> Result<BoundReport> {
    check_dim(d)?;
    let df = d as f64;
    let (value, formula_id, family) = match name {
        "hinf" => (df / LN_2, "k-hinf", "hinf".to_string()),
        "renyi_interval" => {
            let a = param(params, "alpha")?;
            if !(a > 1.0 && a < 2.0) {
                return Err(Error::BadParam(format!("renyi_interval needs alpha in (1,2), got {a}")));
            }
            (
                a * df.powf(a - 1.0) / ((a - 1.0) * LN_2),
                "k-renyi-upper",
                format!("renyi(alpha={a})"),
            )
        }
        "unified" => {
            let a = param(params, "alpha")?;
            let s = param(params, "s")?;
            if !(a > 1.0 && a.is_finite() && s <= 1.0 && s != 0.0) {
                return Err(Error::BadParam(format!(
                    "unified needs alpha > 1 and s <= 1, s != 0; got {a}, {s}"
                )));
            }
            let base = a / (a - 1.0);
            let v = if s * a < 1.0 { base * df.powf(1.0 - a * s) } else { base };
            (v, "k-unified-upper", format!("unified(alpha={a},s={s})"))
        }
        other => return Err(Error::BadParam(format!("no closed-form constant for `{other}`"))),
    };
    Ok(BoundReport {
        kind: BoundKind::Lipschitz,
        value,
        formula_id: formula_id.into(),
        family,
        dim: d,
        eps: None,
        witness: None,
    })
}

/// Tight uniform bound for the min-entropy, `log(1 + εd)` capped at `log d`.
/// The witness is `u` against a vector with `ε` mass moved onto its first
/// entry.
pub fn hinf_tight_uniform(d: usize, eps: f64) -> Result<BoundReport> {
    check_dim(d)?;
    check_eps(eps)?;
    let df = d as f64;
    let u = ProbVec::uniform(d);
    let moved = eps.min(1.0 - 1.0 / df);
    let mut q = vec![1.0 / df; d];
    q[0] += moved;
    let mut left = moved;
    for qi in q.iter_mut().skip(1).rev() {
        let take = left.min(*qi);
        *qi -= take;
        left -= take;
        if left <= 0.0 {
            break;
        }
    }
    let q = ProbVec::new(q)?;
    Ok(BoundReport {
        kind: BoundKind::TightUniform,
        value: (1.0 + eps * df).log2().min(df.log2()),
        formula_id: "hinf-uniform".into(),
        family: "hinf".into(),
        dim: d,
        eps: Some(eps),
        witness: Some((u, q)),
    })
}

/// Earlier continuity bounds, evaluated literally for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorArt {
    /// Rényi, `α > 1`, prefactor `d^{2(α−1)}/(α−1)`.
    Rastegin,
    /// Rényi, `α > 1`, prefactor `d^{α−1}/(α−1)`.
    Chen,
    /// Tsallis uniform bound.
    Zhang,
    /// Rényi, `α < 1`, tight.
    Audenaert,
    /// Shannon, tight.
    AudenaertFannes,
    /// Tsallis Lipschitz bound `2αε/(α−1)`.
    Raggio,
    /// `2 log d`.
    Trivial,
}

impl PriorArt {
    pub const ALL: [PriorArt; 7] = [
        PriorArt::Rastegin,
        PriorArt::Chen,
        PriorArt::Zhang,
        PriorArt::Audenaert,
        PriorArt::AudenaertFannes,
        PriorArt::Raggio,
        PriorArt::Trivial,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PriorArt::Rastegin => "rastegin",
            PriorArt::Chen => "chen",
            PriorArt::Zhang => "zhang",
            PriorArt::Audenaert => "audenaert",
            PriorArt::AudenaertFannes => "audenaert-fannes",
            PriorArt::Raggio => "raggio",
            PriorArt::Trivial => "trivial",
        }
    }
}

impl fmt::Display for PriorArt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PriorArt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PriorArt::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::BadParam(format!("unknown prior-art formula `{s}`")))
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    let t = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    t(x) + t(1.0 - x)
}

pub fn prior_art_bound(formula: PriorArt, alpha: f64, d: usize, eps: f64) -> Result<BoundReport> {
    check_dim(d)?;
    check_eps(eps)?;
    let df = d as f64;
    let a = alpha;
    let need = |ok: bool, range: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::BadParam(format!("{formula} needs alpha {range}, got {a}")))
        }
    };
    let saturated = eps >= 1.0 - 1.0 / df;
    let bracket = || 1.0 - (1.0 - eps).powf(a) - eps.powf(a) * (df - 1.0).powf(1.0 - a);
    let value = match formula {
        PriorArt::Rastegin => {
            need(a > 1.0 && a.is_finite(), "> 1")?;
            df.powf(2.0 * (a - 1.0)) / (a - 1.0) * bracket()
        }
        PriorArt::Chen => {
            need(a > 1.0 && a.is_finite(), "> 1")?;
            df.powf(a - 1.0) / (a - 1.0) * bracket()
        }
        PriorArt::Zhang => {
            need(a > 0.0 && a != 1.0 && a.is_finite(), "in (0,1) or (1,inf)")?;
            if saturated {
                (df.powf(1.0 - a) - 1.0) / (1.0 - a)
            } else {
                (eps.powf(a) * (df - 1.0).powf(1.0 - a) + (1.0 - eps).powf(a) - 1.0) / (1.0 - a)
            }
        }
        PriorArt::Audenaert => {
            need(a > 0.0 && a < 1.0, "in (0,1)")?;
            if saturated {
                df.log2()
            } else {
                ((1.0 - eps).powf(a) + (df - 1.0).powf(1.0 - a) * eps.powf(a)).log2() / (1.0 - a)
            }
        }
        PriorArt::AudenaertFannes => {
            if saturated {
                df.log2()
            } else {
                eps * (df - 1.0).log2() + binary_entropy(eps)
            }
        }
        PriorArt::Raggio => {
            need(a > 1.0 && a.is_finite(), "> 1")?;
            2.0 * a * eps / (a - 1.0)
        }
        PriorArt::Trivial => 2.0 * df.log2(),
    };
    Ok(BoundReport {
        kind: BoundKind::PriorArt,
        value,
        formula_id: formula.id().into(),
        family: match formula {
            PriorArt::AudenaertFannes | PriorArt::Trivial => formula.id().into(),
            _ => format!("alpha={a}"),
        },
        dim: d,
        eps: Some(eps),
        witness: None,
    })
}

/// `Γ_{H_α}(p)/Γ_{T_α}(p) = 1/(ln 2 · Σ p_i^α)`.
pub fn gamma_ratio_renyi_tsallis(p: &ProbVec, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::BadParam(format!("alpha must exceed 1, got {alpha}")));
    }
    if !p.is_interior() {
        return Err(Error::BoundaryError("ratio needs an interior point".into()));
    }
    if group_spectrum(p).num_groups() < 2 {
        return Err(Error::BoundaryError(
            "both derivatives vanish at the uniform vector".into(),
        ));
    }
    let s: f64 = p.iter().map(|&x| x.powf(alpha)).sum();
    Ok(1.0 / (LN_2 * s))
}

/// Supremum of the ratio, `d^{α−1}/ln 2`, approached near `u`.
pub fn gamma_ratio_sup(alpha: f64, d: usize) -> f64 {
    (d as f64).powf(alpha - 1.0) / LN_2
}

/// How a scaling-table entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScalingKind {
    /// The tight bound `g(ε_d)`.
    Exact,
    /// `ε_d` times the optimal Lipschitz constant.
    Lipschitz,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub d: usize,
    pub eps: f64,
    pub bound: f64,
    pub kind: ScalingKind,
}

/// Continuity bounds `C_α(d, ε_d)` along `ε_d = d^{−s}` for Rényi entropies.
/// `α = 1` is Shannon and `α = ∞` the min-entropy.
pub fn dimensional_scaling_table(alpha: f64, s_exponent: f64, dims: &[usize]) -> Result<Vec<ScalingRow>> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::BadParam(format!("alpha must be positive, got {alpha}")));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParam("dimensions must be strictly increasing".into()));
    }
    let family = if alpha == 1.0 {
        Some(EntropyFamily::shannon())
    } else if alpha.is_finite() {
        Some(EntropyFamily::renyi(alpha)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(dims.len());
    for &d in dims {
        check_dim(d)?;
        let eps = (d as f64).powf(-s_exponent);
        check_eps(eps)?;
        let (bound, kind) = match &family {
            Some(fam) if alpha <= 1.0 => (tight_uniform_bound(fam, d, eps)?.value, ScalingKind::Exact),
            Some(fam) => (eps * lipschitz_convex_type(fam, d)?.value, ScalingKind::Lipschitz),
            None => (eps * d as f64 / LN_2, ScalingKind::Lipschitz),
        };
        rows.push(ScalingRow { d, eps, bound, kind });
    }
    Ok(rows)
}

/// Optimal Lipschitz constant of the collision entropy `H₂`.
pub fn collision_closed_form(d: usize) -> Result<f64> {
    check_dim(d)?;
    if d == 2 {
        return Ok(2.0 / LN_2);
    }
    let df = d as f64;
    Ok((df - 2.0) / (((df - 1.0).sqrt() - 1.0) * LN_2))
}

/// Optimal Lipschitz constant of the smoothed Rényi entropy `H_α^δ`,
/// `α ∈ (0, 1)`, `δ ∈ (0, 1 − 1/d)`.
pub fn renyi_smoothed_closed_form(alpha: f64, d: usize, delta: f64) -> Result<f64> {
    check_dim(d)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::BadParam(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let df = d as f64;
    if !(delta > 0.0 && delta < 1.0 - 1.0 / df) {
        return Err(Error::EpsOutOfRange(delta));
    }
    let num = (delta / (df - 1.0)).powf(alpha - 1.0) - (1.0 - delta).powf(alpha - 1.0);
    let den = (1.0 - delta).powf(alpha) + (df - 1.0).powf(1.0 - alpha) * delta.powf(alpha);
    Ok(alpha / ((1.0 - alpha) * LN_2) * num / den)
}

/// Lower and upper estimates for the Rényi Lipschitz constant `k_α`, `α > 1`.
/// The lower estimate is unavailable for `d < 3`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Sandwich {
    pub lower: Option<f64>,
    pub upper: f64,
}

impl Sandwich {
    pub fn contains(&self, k: f64, rel_tol: f64) -> bool {
        let lo_ok = self.lower.is_none_or(|lo| k >= lo * (1.0 - rel_tol));
        lo_ok && k <= self.upper * (1.0 + rel_tol)
    }
}

pub fn renyi_lipschitz_sandwich(alpha: f64, d: usize) -> Result<Sandwich> {
    check_dim(d)?;
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::BadParam(format!("alpha must exceed 1, got {alpha}")));
    }
    let df = d as f64;
    let c = alpha / (alpha - 1.0);
    let lower = (d >= 3).then(|| c * (df - 2.0).powf(1.0 - 1.0 / alpha) / (2.0 * LN_2));
    Ok(Sandwich {
        lower,
        upper: c * df / LN_2,
    })
}
