//! Input parsing and number printing shared by the verbs.

use majflow::ProbVec;

use crate::error::{usage, Result};

/// Rounds to 10 significant digits and prints the shortest form of the
/// rounded value.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("round trip of a formatted float");
    let mag = rounded.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn nums(xs: &[f64], sep: &str) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(sep)
}

/// Reads `u`, `psi` or a comma list. The symbolic forms need a dimension.
pub fn prob_vec(spec: &str, dim: Option<usize>) -> Result<ProbVec> {
    let need_dim = || dim.ok_or_else(|| usage(format!("`{spec}` needs an explicit dimension")));
    let p = match spec.trim() {
        "u" => ProbVec::uniform(need_dim()?),
        "psi" => ProbVec::extremal(need_dim()?),
        list => {
            let entries = list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| usage(format!("cannot parse `{s}` as a number")))
                })
                .collect::<Result<Vec<_>>>()?;
            ProbVec::new(entries)?
        }
    };
    if let Some(d) = dim {
        if p.dim() != d {
            return Err(usage(format!("vector has {} entries, expected {d}", p.dim())));
        }
    }
    Ok(p)
}

/// `a:b:n`, `n` evenly spaced points from `a` to `b` inclusive.
pub fn eps_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || usage(format!("eps grid must look like a:b:n, got `{spec}`"));
    let [a, b, n] = parts[..] else {
        return Err(bad());
    };
    let a: f64 = a.parse().map_err(|_| bad())?;
    let b: f64 = b.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !(a > 0.0 && a <= b && b <= 1.0) {
        return Err(usage(format!(
            "eps grid needs 0 < a <= b <= 1 and n >= 1, got `{spec}`"
        )));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect())
}

pub fn dims(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("cannot parse `{s}` as a dimension")))
        })
        .collect()
}
