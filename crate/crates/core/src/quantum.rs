//! Density matrices, Hermitian eigendecomposition and the quantum versions of
//! the flow and of the total variation distance.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::EntropyFamily;
use crate::error::{Error, Result};
use crate::flow::flow_point;
use crate::simplex::ProbVec;

pub const TOL_HERMITIAN: f64 = 1e-10;
pub const TOL_TRACE: f64 = 1e-10;
pub const TOL_PSD: f64 = 1e-10;
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// A dense Hermitian matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates Hermiticity entrywise to [`TOL_HERMITIAN`] and stores the
    /// exactly Hermitian part `(A + A*)/2`.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(z) = data.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {z}")));
        }
        let mut out = data.clone();
        for i in 0..dim {
            for j in i..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i].conj();
                if (a - b).norm() > TOL_HERMITIAN {
                    return Err(Error::InvalidMatrix(format!("not Hermitian at ({i},{j})")));
                }
                let m = (a + b) * 0.5;
                out[i * dim + j] = m;
                out[j * dim + i] = m.conj();
            }
        }
        Ok(Self { dim, data: out })
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        let d = diag.len();
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for (i, &x) in diag.iter().enumerate() {
            data[i * d + i] = Complex64::new(x, 0.0);
        }
        Self::new(d, data)
    }

    /// `U diag(λ) U*` for a unitary `U` given row-major.
    pub fn from_eigen(unitary: &[Complex64], values: &[f64]) -> Result<Self> {
        let d = values.len();
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] = (0..d)
                    .map(|k| unitary[i * d + k] * values[k] * unitary[j * d + k].conj())
                    .sum();
            }
        }
        Self::new(d, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, data })
    }

    /// `V A V*`.
    pub fn conjugate_by(&self, v: &[Complex64]) -> Result<Self> {
        let d = self.dim;
        if v.len() != d * d {
            return Err(Error::InvalidMatrix("unitary has the wrong size".into()));
        }
        let mut av = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                av[i * d + j] = (0..d).map(|k| self.data[i * d + k] * v[j * d + k].conj()).sum();
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|k| v[i * d + k] * av[k * d + j]).sum();
            }
        }
        Self::new(d, out)
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Eigenvalues and eigenvectors (as the columns of a row-major unitary).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Complex64>,
}

fn off_diagonal_norm(a: &[Complex64], d: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[i * d + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies a
/// real rotation that annihilates it.
pub fn eigh(m: &HermitianMatrix) -> Result<Eigen> {
    let d = m.dim;
    let mut a = m.data.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        v[i * d + i] = Complex64::new(1.0, 0.0);
    }
    let target = JACOBI_TOL * m.frobenius().max(1.0);
    let mut converged = off_diagonal_norm(&a, d) < target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NotConverged(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[p * d + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * d + p].re;
                let aqq = a[q * d + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // V = diag(1, conj(phase)) · [[c, s], [−s, c]] on the (p, q) plane
                let vpp = Complex64::new(c, 0.0);
                let vpq = Complex64::new(s, 0.0);
                let vqp = -phase.conj() * s;
                let vqq = phase.conj() * c;
                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = akp * vpp + akq * vqp;
                    a[k * d + q] = akp * vpq + akq * vqq;
                    let ukp = v[k * d + p];
                    let ukq = v[k * d + q];
                    v[k * d + p] = ukp * vpp + ukq * vqp;
                    v[k * d + q] = ukp * vpq + ukq * vqq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = vpp.conj() * apk + vqp.conj() * aqk;
                    a[q * d + k] = vpq.conj() * apk + vqq.conj() * aqk;
                }
                a[p * d + q] = Complex64::new(0.0, 0.0);
                a[q * d + p] = Complex64::new(0.0, 0.0);
                a[p * d + p] = Complex64::new(a[p * d + p].re, 0.0);
                a[q * d + q] = Complex64::new(a[q * d + q].re, 0.0);
            }
        }
        converged = off_diagonal_norm(&a, d) < target;
    }
    Ok(Eigen {
        values: (0..d).map(|i| a[i * d + i].re).collect(),
        vectors: v,
    })
}

/// A positive semidefinite Hermitian matrix of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    inner: HermitianMatrix,
}

impl DensityMatrix {
    pub fn new(m: HermitianMatrix) -> Result<Self> {
        let tr = m.trace();
        if (tr - 1.0).abs() > TOL_TRACE {
            return Err(Error::InvalidMatrix(format!("trace is {tr}, expected 1")));
        }
        let eig = eigh(&m)?;
        if let Some(&neg) = eig.values.iter().find(|&&x| x < -TOL_PSD) {
            return Err(Error::InvalidMatrix(format!("negative eigenvalue {neg}")));
        }
        Ok(Self { inner: m })
    }

    pub fn from_entries(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        Self::new(HermitianMatrix::new(dim, data)?)
    }

    /// A diagonal state.
    pub fn diagonal(p: &ProbVec) -> Self {
        Self {
            inner: HermitianMatrix::from_real_diag(p.as_slice()).expect("diagonal of a probability vector"),
        }
    }

    /// The maximally mixed state `τ = I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::diagonal(&ProbVec::uniform(dim))
    }

    /// `U diag(p) U*`.
    pub fn from_spectrum(unitary: &[Complex64], p: &ProbVec) -> Result<Self> {
        Self::new(HermitianMatrix::from_eigen(unitary, p.as_slice())?)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.inner
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(raw.into_matrix()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from_matrix(&self.inner)).expect("matrix serializes")
    }
}

/// On-disk layout `{"dim": d, "re": [[…]], "im": [[…]]}`; `im` may be omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn into_matrix(self) -> Result<HermitianMatrix> {
        let d = self.dim;
        let rows_ok = |m: &Vec<Vec<f64>>| m.len() == d && m.iter().all(|r| r.len() == d);
        if !rows_ok(&self.re) || !self.im.as_ref().is_none_or(rows_ok) {
            return Err(Error::InvalidMatrix(format!("expected {d}x{d} arrays")));
        }
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let im = self.im.as_ref().map_or(0.0, |m| m[i][j]);
                data.push(Complex64::new(self.re[i][j], im));
            }
        }
        HermitianMatrix::new(d, data)
    }

    pub fn from_matrix(m: &HermitianMatrix) -> Self {
        let d = m.dim;
        let grid = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..d).map(|i| (0..d).map(|j| f(&m.get(i, j))).collect()).collect()
        };
        Self {
            dim: d,
            re: grid(|z| z.re),
            im: Some(grid(|z| z.im)),
        }
    }
}

fn clamp_spectrum(values: &[f64]) -> Result<ProbVec> {
    ProbVec::new(values.iter().map(|&x| x.max(0.0)).collect())
}

/// Eigenvalues of `ρ` in non-increasing order.
pub fn spectrum_sorted(rho: &DensityMatrix) -> Result<ProbVec> {
    let mut vals = eigh(&rho.inner)?.values;
    vals.sort_by(|a, b| b.total_cmp(a));
    clamp_spectrum(&vals)
}

/// `T(ρ, σ) = ½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let diff = rho.inner.sub(&sigma.inner)?;
    let eig = eigh(&diff)?;
    Ok(0.5 * eig.values.iter().map(|x| x.abs()).sum::<f64>())
}

/// `U diag(M_ε(λ)) U*`: the flow applied to the eigenvalues, keeping the
/// eigenbasis.
pub fn flow_state(rho: &DensityMatrix, eps: f64) -> Result<DensityMatrix> {
    let eig = eigh(&rho.inner)?;
    let spec = clamp_spectrum(&eig.values)?;
    let moved = flow_point(&spec, eps)?;
    DensityMatrix::from_spectrum(&eig.vectors, &moved)
}

/// Evaluates an entropy on the spectrum of `ρ`.
pub fn entropy_of_state(fam: &EntropyFamily, rho: &DensityMatrix) -> Result<f64> {
    fam.eval(&spectrum_sorted(rho)?)
}

/// A random unitary built as a product of complex Givens rotations and a
/// diagonal phase.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let d = dim;
    let mut u = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        u[i * d + i] = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    }
    if d < 2 {
        return u;
    }
    for _ in 0..(2 * d * d) {
        let p = rng.gen_range(0..d);
        let mut q = rng.gen_range(0..d - 1);
        if q >= p {
            q += 1;
        }
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (s, c) = theta.sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        // columns p, q of U times [[c, −s e^{iφ}], [s e^{−iφ}, c]]
        for k in 0..d {
            let ukp = u[k * d + p];
            let ukq = u[k * d + q];
            u[k * d + p] = ukp * c + ukq * s * e.conj();
            u[k * d + q] = -ukp * s * e + ukq * c;
        }
    }
    u
}

/// Outcome of the free-energy check; all quantities in nats.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FreeEnergyCheck {
    /// `H_{T₀/T}(ρ(T₀))·ln 2`.
    pub renyi_nats: f64,
    /// `−(F(T) − F(T₀))/(T − T₀)`.
    pub slope: f64,
    pub residual: f64,
}

fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    m + xs.map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `F(T) = −T ln Z(T)` with `k_B = 1`.
pub fn free_energy(energies: &[f64], t: f64) -> f64 {
    -t * log_sum_exp(energies.iter().map(|e| -e / t))
}

/// Gibbs distribution `e^{−E/T}/Z`.
pub fn gibbs_spectrum(energies: &[f64], t: f64) -> Result<ProbVec> {
    let lz = log_sum_exp(energies.iter().map(|e| -e / t));
    ProbVec::new(energies.iter().map(|e| (-e / t - lz).exp()).collect())
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::BadTemperature(format!(
            "temperature must be positive and finite, got {t}"
        )));
    }
    Ok(())
}

/// Compares the Rényi entropy of order `T₀/T` of the Gibbs state at `T₀`
/// with the free-energy difference quotient.
pub fn free_energy_identity_check(hamiltonian: &HermitianMatrix, t0: f64, t: f64) -> Result<FreeEnergyCheck> {
    check_temperature(t0)?;
    check_temperature(t)?;
    if t == t0 {
        return Err(Error::BadTemperature("the two temperatures must differ".into()));
    }
    let energies = eigh(hamiltonian)?.values;
    let rho = gibbs_spectrum(&energies, t0)?;
    let renyi = EntropyFamily::renyi(t0 / t)?;
    let renyi_nats = renyi.eval(&rho)? * std::f64::consts::LN_2;
    let slope = -(free_energy(&energies, t) - free_energy(&energies, t0)) / (t - t0);
    Ok(FreeEnergyCheck {
        renyi_nats,
        slope,
        residual: (renyi_nats - slope).abs(),
    })
}
