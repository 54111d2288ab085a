//! Probability vectors, majorization and total-variation geometry.

use std::ops::Index;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Sum tolerance after construction.
pub const TOL_SUM: f64 = 1e-12;
/// Inputs whose sum deviates from one by more than this are rejected.
pub const TOL_RENORM: f64 = 1e-9;
/// Entries closer than this are treated as one multiplicity group.
pub const TOL_GROUP: f64 = 1e-10;
/// Slack allowed on each partial sum in [`majorizes`].
pub const TOL_MAJORIZE: f64 = 1e-12;

const TOL_NEGATIVE: f64 = 1e-12;

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec {
    entries: Vec<f64>,
}

impl ProbVec {
    /// Validates `entries`, clamps round-off negatives to zero and renormalizes.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        let mut entries = entries;
        for (idx, x) in entries.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { idx, value: *x });
            }
            if *x < -TOL_NEGATIVE {
                return Err(Error::NegativeEntry { idx, value: *x });
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > TOL_RENORM {
            return Err(Error::SumNotOne { sum });
        }
        if sum != 1.0 {
            entries.iter_mut().for_each(|x| *x /= sum);
        }
        Ok(Self { entries })
    }

    /// The uniform distribution `u` on `d` outcomes.
    pub fn uniform(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        Self {
            entries: vec![1.0 / d as f64; d],
        }
    }

    /// The extremal vector `(1, 0, ..., 0)`.
    pub fn extremal(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        let mut entries = vec![0.0; d];
        entries[0] = 1.0;
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.entries.iter()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    pub fn max(&self) -> f64 {
        self.entries.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.entries.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// True when every entry is strictly positive.
    pub fn is_interior(&self) -> bool {
        self.entries.iter().all(|&x| x > 0.0)
    }

    /// True when all entries agree with `1/d` up to [`TOL_GROUP`].
    pub fn is_uniform(&self) -> bool {
        self.max() - self.min() <= TOL_GROUP
    }

    /// Applies a permutation: entry `k` of the result is `self[perm[k]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim());
        Self {
            entries: perm.iter().map(|&i| self.entries[i]).collect(),
        }
    }

    /// Kronecker product, i.e. the joint distribution of independent draws.
    pub fn tensor(&self, other: &ProbVec) -> ProbVec {
        let entries = self
            .entries
            .iter()
            .flat_map(|&a| other.entries.iter().map(move |&b| a * b))
            .collect();
        ProbVec { entries }
    }
}

impl Index<usize> for ProbVec {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.entries[i]
    }
}

impl Serialize for ProbVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// Sorts into non-increasing order.
///
/// Returns the sorted vector and `perm`, where `perm[k]` is the index in `p`
/// of the `k`-th largest entry. Ties keep their original order.
pub fn sort_desc(p: &ProbVec) -> (ProbVec, Vec<usize>) {
    let mut perm: Vec<usize> = (0..p.dim()).collect();
    perm.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
    (p.permuted(&perm), perm)
}

/// Inverse of [`ProbVec::permuted`]: scatters sorted-frame values back to
/// their original positions.
pub(crate) fn unpermute(sorted: &[f64], perm: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; sorted.len()];
    for (k, &i) in perm.iter().enumerate() {
        out[i] = sorted[k];
    }
    out
}

fn check_dims(p: &ProbVec, q: &ProbVec) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimMismatch(p.dim(), q.dim()));
    }
    Ok(())
}

/// Total variation distance `½ Σ |p_i − q_i|`.
pub fn tv_distance(p: &ProbVec, q: &ProbVec) -> Result<f64> {
    check_dims(p, q)?;
    Ok(0.5 * p.iter().zip(q.iter()).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// `p ≻ q`: every partial sum of `p↓` dominates the matching one of `q↓`.
pub fn majorizes(p: &ProbVec, q: &ProbVec) -> Result<bool> {
    majorizes_with_tol(p, q, TOL_MAJORIZE)
}

/// [`majorizes`] with an explicit partial-sum slack.
pub fn majorizes_with_tol(p: &ProbVec, q: &ProbVec, tol: f64) -> Result<bool> {
    check_dims(p, q)?;
    let (ps, _) = sort_desc(p);
    let (qs, _) = sort_desc(q);
    let mut sp = 0.0;
    let mut sq = 0.0;
    for k in 0..p.dim() {
        sp += ps[k];
        sq += qs[k];
        if sp < sq - tol {
            return Ok(false);
        }
    }
    Ok((sp - sq).abs() <= tol.max(TOL_SUM))
}

/// Distinct values of a probability vector, in decreasing order, with
/// multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedSpectrum {
    values: Vec<f64>,
    mults: Vec<usize>,
}

impl GroupedSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    pub fn dim(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn num_groups(&self) -> usize {
        self.values.len()
    }

    /// Largest value `r₊` and its multiplicity `k₊`.
    pub fn top(&self) -> (f64, usize) {
        (self.values[0], self.mults[0])
    }

    /// Smallest value `r₋` and its multiplicity `k₋`.
    pub fn bottom(&self) -> (f64, usize) {
        let last = self.values.len() - 1;
        (self.values[last], self.mults[last])
    }

    /// Expands back into the sorted vector of length `dim`.
    pub fn to_sorted_vec(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.mults)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub(crate) fn from_parts(values: Vec<f64>, mults: Vec<usize>) -> Self {
        let mut g = Self { values, mults };
        g.merge_close();
        g
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Merges adjacent groups whose gap is at most [`TOL_GROUP`], keeping
    /// the multiplicity-weighted mean.
    pub(crate) fn merge_close(&mut self) {
        let mut values: Vec<f64> = Vec::with_capacity(self.values.len());
        let mut mults: Vec<usize> = Vec::with_capacity(self.mults.len());
        for (&v, &m) in self.values.iter().zip(&self.mults) {
            match (values.last_mut(), mults.last_mut()) {
                (Some(lv), Some(lm)) if *lv - v <= TOL_GROUP => {
                    let total = *lm + m;
                    *lv = (*lv * *lm as f64 + v * m as f64) / total as f64;
                    *lm = total;
                }
                _ => {
                    values.push(v);
                    mults.push(m);
                }
            }
        }
        self.values = values;
        self.mults = mults;
    }
}

/// Groups equal (within [`TOL_GROUP`]) entries of `p`.
pub fn group_spectrum(p: &ProbVec) -> GroupedSpectrum {
    let (sorted, _) = sort_desc(p);
    let values = sorted.into_vec();
    let mults = vec![1; values.len()];
    GroupedSpectrum::from_parts(values, mults)
}

/// Outcome of [`schur_convexity_witness`].
#[derive(Debug, Clone)]
pub struct SchurReport {
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<SchurCounterexample>,
}

/// A point and coordinate pair where `(p_i − p_j)(∂_i f − ∂_j f)` is negative.
#[derive(Debug, Clone)]
pub struct SchurCounterexample {
    pub point: ProbVec,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

const SCHUR_FD_STEP: f64 = 1e-6;
const SCHUR_SLACK: f64 = 1e-8;

/// Samples interior points and checks the Schur-convexity criterion
/// `(p_i − p_j)(∂_i f − ∂_j f) ≥ 0` with central differences along
/// `e_i − e_j`, which stay on the simplex.
pub fn schur_convexity_witness<F>(f: F, samples: usize, dim: usize, seed: u64) -> SchurReport
where
    F: Fn(&ProbVec) -> f64,
{
    assert!(dim >= 2, "need at least two coordinates");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = SCHUR_FD_STEP;
    let mut checked = 0;
    for _ in 0..samples {
        let p = random_interior(dim, 10.0 * h, &mut rng);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let shifted = |sign: f64| {
                    let mut e = p.as_slice().to_vec();
                    e[i] += sign * h;
                    e[j] -= sign * h;
                    ProbVec { entries: e }
                };
                let deriv = (f(&shifted(1.0)) - f(&shifted(-1.0))) / (2.0 * h);
                let value = (p[i] - p[j]) * deriv;
                checked += 1;
                if value < -SCHUR_SLACK {
                    return SchurReport {
                        passed: false,
                        checked,
                        counterexample: Some(SchurCounterexample { point: p, i, j, value }),
                    };
                }
            }
        }
    }
    SchurReport {
        passed: true,
        checked,
        counterexample: None,
    }
}

/// Uniform (flat Dirichlet) sample conditioned on `min entry ≥ margin`.
pub fn random_interior<R: Rng + ?Sized>(dim: usize, margin: f64, rng: &mut R) -> ProbVec {
    assert!(margin * (dim as f64) < 0.5, "margin too large for dimension");
    loop {
        let raw: Vec<f64> = (0..dim)
            .map(|_| -rng.gen::<f64>().max(f64::MIN_POSITIVE).ln())
            .collect();
        let total: f64 = raw.iter().sum();
        let entries: Vec<f64> = raw.iter().map(|x| x / total).collect();
        if entries.iter().all(|&x| x >= margin) {
            return ProbVec { entries };
        }
    }
}
