//! The majorization flow `ε ↦ M_ε(r)`: the majorization-minimal point of the
//! total-variation ball of radius `ε` around `r`.
//!
//! The flow is piecewise affine. On each piece mass leaves the group of
//! largest entries at total rate one and enters the group of smallest entries
//! at the same rate, so that `TV(M_ε(r), r) = ε` until the uniform vector is
//! reached. A piece ends when the largest (or smallest) group meets its
//! neighbour, at which point the groups merge. All arithmetic happens on the
//! grouped spectrum, so a full path costs `O(d)` group updates.

use crate::error::{Error, Result};
use crate::simplex::{group_spectrum, sort_desc, tv_distance, unpermute, GroupedSpectrum, ProbVec};

/// The flow direction `L(r)` and the length of the affine piece it is valid on.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    /// Signed rates in the ordering of the input vector.
    pub direction: Vec<f64>,
    pub step_cap: f64,
}

impl Generator {
    pub fn of(r: &ProbVec) -> Self {
        let (sorted, perm) = sort_desc(r);
        let groups = group_spectrum(&sorted);
        let step_cap = step_cap(&groups);
        let sorted_dir = sorted_direction(&groups);
        Self {
            direction: unpermute(&sorted_dir, &perm),
            step_cap,
        }
    }

    /// `½‖L(r)‖₁`; one unless `r` is uniform.
    pub fn speed(&self) -> f64 {
        0.5 * self.direction.iter().map(|x| x.abs()).sum::<f64>()
    }
}

/// Computes `L(r)` and its step cap.
pub fn generator(r: &ProbVec) -> Generator {
    Generator::of(r)
}

fn sorted_direction(g: &GroupedSpectrum) -> Vec<f64> {
    let d = g.dim();
    let mut dir = vec![0.0; d];
    if g.num_groups() < 2 {
        return dir;
    }
    let (_, k_top) = g.top();
    let (_, k_bot) = g.bottom();
    for x in dir.iter_mut().take(k_top) {
        *x = -1.0 / k_top as f64;
    }
    for x in dir.iter_mut().skip(d - k_bot) {
        *x = 1.0 / k_bot as f64;
    }
    dir
}

fn tv_to_uniform(g: &GroupedSpectrum) -> f64 {
    let u = 1.0 / g.dim() as f64;
    0.5 * g
        .values()
        .iter()
        .zip(g.mults())
        .map(|(&v, &m)| m as f64 * (v - u).abs())
        .sum::<f64>()
}

/// `min{k₊(r₊ − μ₊), k₋(μ₋ − r₋), TV(r, u)}`; zero for the uniform vector.
///
/// With only two distinct values the first two terms overshoot the time at
/// which the groups meet; the third term is exactly that meeting time.
fn step_cap(g: &GroupedSpectrum) -> f64 {
    let n = g.num_groups();
    if n < 2 {
        return 0.0;
    }
    let v = g.values();
    let (r_top, k_top) = g.top();
    let (r_bot, k_bot) = g.bottom();
    let top_gap = k_top as f64 * (r_top - v[1]);
    let bot_gap = k_bot as f64 * (v[n - 2] - r_bot);
    top_gap.min(bot_gap).min(tv_to_uniform(g))
}

/// Moves along the current affine piece for time `t ≤ step_cap`.
fn advance(g: &mut GroupedSpectrum, t: f64) {
    let n = g.num_groups();
    if n < 2 || t <= 0.0 {
        return;
    }
    let (_, k_top) = g.top();
    let (_, k_bot) = g.bottom();
    let values = g.values_mut();
    values[0] -= t / k_top as f64;
    values[n - 1] += t / k_bot as f64;
    g.merge_close();
}

/// Flows grouped sorted values for time `eps`, returning the time actually
/// used (less than `eps` only if the uniform vector was reached).
fn flow_groups(g: &mut GroupedSpectrum, eps: f64) -> f64 {
    let mut remaining = eps;
    while remaining > 0.0 && g.num_groups() > 1 {
        let t = remaining.min(step_cap(g));
        advance(g, t);
        remaining -= t;
    }
    eps - remaining.max(0.0)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::EpsOutOfRange(eps));
    }
    Ok(())
}

/// `M_ε(r)`, in the entry ordering of `r`.
pub fn flow_point(r: &ProbVec, eps: f64) -> Result<ProbVec> {
    check_eps(eps)?;
    let (sorted, perm) = sort_desc(r);
    let mut g = group_spectrum(&sorted);
    flow_groups(&mut g, eps);
    ProbVec::new(unpermute(&g.to_sorted_vec(), &perm))
}

/// A breakpoint of a [`FlowPath`].
#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoint {
    pub s: f64,
    pub point: ProbVec,
}

/// The whole trajectory from a sorted start to the uniform vector.
#[derive(Debug, Clone)]
pub struct FlowPath {
    start: ProbVec,
    breakpoints: Vec<Breakpoint>,
    terminal_s: f64,
}

impl FlowPath {
    pub fn start(&self) -> &ProbVec {
        &self.start
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// `TV(start, u)`, the time at which the path is absorbed.
    pub fn terminal_s(&self) -> f64 {
        self.terminal_s
    }

    /// Number of affine pieces.
    pub fn num_segments(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Evaluates the path at time `s` (in the sorted frame) from the
    /// breakpoint list: `point(s_k) + (s − s_k)·L(point(s_k))`.
    pub fn point_at(&self, s: f64) -> Result<ProbVec> {
        check_eps(s)?;
        let k = self.breakpoints.iter().rposition(|b| b.s <= s).unwrap_or(0);
        let base = &self.breakpoints[k];
        if k + 1 == self.breakpoints.len() {
            return Ok(base.point.clone());
        }
        let dir = generator(&base.point).direction;
        let dt = s - base.s;
        ProbVec::new(base.point.iter().zip(&dir).map(|(x, v)| x + dt * v).collect())
    }

    /// Pieces as `(s_start, s_end, direction)`.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, Vec<f64>)> + '_ {
        self.breakpoints
            .windows(2)
            .map(|w| (w[0].s, w[1].s, generator(&w[0].point).direction))
    }
}

/// Builds the full breakpoint list of the flow started at `r↓`.
pub fn flow_path(r: &ProbVec) -> FlowPath {
    let (start, _) = sort_desc(r);
    let mut g = group_spectrum(&start);
    let mut breakpoints = vec![Breakpoint {
        s: 0.0,
        point: start.clone(),
    }];
    let mut s = 0.0;
    while g.num_groups() > 1 {
        let t = step_cap(&g);
        advance(&mut g, t);
        s += t;
        let point = ProbVec::new(g.to_sorted_vec()).expect("flow stays on the simplex");
        breakpoints.push(Breakpoint { s, point });
    }
    let terminal_s = tv_distance(&start, &ProbVec::uniform(start.dim())).expect("same dimension");
    FlowPath {
        start,
        breakpoints,
        terminal_s,
    }
}

const SEMIGROUP_TOL: f64 = 1e-10;

/// Checks `M_s ∘ M_t = M_{s+t}` at `r`.
pub fn verify_semigroup(r: &ProbVec, s: f64, t: f64) -> Result<bool> {
    if s < 0.0 || t < 0.0 || s + t > 1.0 {
        return Err(Error::EpsOutOfRange(s + t));
    }
    let composed = flow_point(&flow_point(r, t)?, s)?;
    let direct = flow_point(r, s + t)?;
    Ok(tv_distance(&composed, &direct)? < SEMIGROUP_TOL)
}
