//! One function per verb. Each returns the complete stdout document.

use std::fs;
use std::path::Path;

use majflow::bounds::ScalingRow;
use majflow::distinct::{pmf_exact, EXACT_LIMIT};
use majflow::quantum::entropy_of_state;
use majflow::{
    catalogue, dimensional_scaling_table, distinct_uniform_bound, expected_distinct, flow_path, flow_point, flow_state,
    hinf_tight_uniform, lipschitz_concave_smoothed, lipschitz_convex_type, lipschitz_special, prior_art_bound,
    simulate_distinct, tight_uniform_bound, trace_distance, BoundKind, BoundReport, Classification, DensityMatrix,
    EntropyFamily, LipschitzOutcome, PriorArt, TrialSpec,
};
use serde_json::{json, Value};

use crate::error::{usage, CliError, Result};
use crate::format::{num, nums, prob_vec};

/// Family name plus whichever parameters it takes.
#[derive(Debug, Clone, clap::Args)]
pub struct FamilyArgs {
    /// shannon, vonneumann, renyi, tsallis, unified, concurrence, hinf,
    /// distinct, fdiv-xlogx or fdiv-power
    #[arg(short = 'f', long = "family")]
    pub family: String,
    #[arg(short = 'a', long = "alpha")]
    pub alpha: Option<f64>,
    #[arg(short = 's', long = "s")]
    pub s: Option<f64>,
    /// Number of trials for the distinct-count family
    #[arg(short = 'N', long = "trials")]
    pub trials: Option<u32>,
}

impl FamilyArgs {
    pub fn build(&self) -> Result<EntropyFamily> {
        let mut params = Vec::new();
        if let Some(a) = self.alpha {
            params.push(("alpha", a));
        }
        if let Some(s) = self.s {
            params.push(("s", s));
        }
        if let Some(n) = self.trials {
            params.push(("N", n as f64));
        }
        Ok(catalogue(&self.family, &params)?)
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

const REPORT_HEADER: &str = "kind,formula_id,family,dim,eps,value,witness_p,witness_q";

fn kind_name(k: BoundKind) -> &'static str {
    match k {
        BoundKind::TightUniform => "TightUniform",
        BoundKind::Lipschitz => "Lipschitz",
        BoundKind::PriorArt => "PriorArt",
    }
}

fn report_row(r: &BoundReport) -> String {
    let (wp, wq) = match &r.witness {
        Some((p, q)) => (nums(p.as_slice(), ";"), nums(q.as_slice(), ";")),
        None => (String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{},{}",
        kind_name(r.kind),
        r.formula_id,
        r.family,
        r.dim,
        r.eps.map(num).unwrap_or_default(),
        num(r.value),
        wp,
        wq
    )
}

pub fn flow(p: &str, dim: Option<usize>, eps: f64, json: bool) -> Result<String> {
    let r = prob_vec(p, dim)?;
    let end = flow_point(&r, eps)?;
    let path = flow_path(&r);
    // breakpoints live in the sorted frame; re-evaluate them in the caller's order
    let mut rows = vec![("start", 0.0, r.clone())];
    for b in path.breakpoints().iter().skip(1) {
        if b.s < eps {
            rows.push(("breakpoint", b.s, flow_point(&r, b.s)?));
        }
    }
    rows.push(("endpoint", eps, end));
    if json {
        let pts: Vec<Value> = rows
            .iter()
            .map(|(kind, s, q)| json!({ "kind": kind, "s": s, "point": q }))
            .collect();
        return pretty(&json!({
            "start": r,
            "eps": eps,
            "terminal_s": path.terminal_s(),
            "path": pts,
        }));
    }
    let mut out = String::from("kind,s");
    for i in 1..=r.dim() {
        out += &format!(",p{i}");
    }
    out.push('\n');
    for (kind, s, q) in rows {
        out += &format!("{kind},{},{}\n", num(s), nums(q.as_slice(), ","));
    }
    Ok(out)
}

/// `g(ε)` where it exists, `ε·k` for convex-type families, and the dedicated
/// formula for the min-entropy.
pub fn classical_bound(fam: &EntropyFamily, d: usize, eps: f64) -> Result<BoundReport> {
    if fam.is_min_entropy() {
        return Ok(hinf_tight_uniform(d, eps)?);
    }
    match fam.classification() {
        Classification::ConcaveType => Ok(tight_uniform_bound(fam, d, eps)?),
        Classification::ConvexType => {
            if !(eps > 0.0 && eps <= 1.0) {
                return Err(majflow::Error::EpsOutOfRange(eps).into());
            }
            let k = lipschitz_convex_type(fam, d)?;
            Ok(BoundReport {
                kind: BoundKind::Lipschitz,
                value: eps * k.value,
                formula_id: "eps-times-k".into(),
                eps: Some(eps),
                witness: None,
                ..k
            })
        }
        Classification::Other => Err(usage(format!("no continuity bound is available for {fam}"))),
    }
}

fn read_density(path: &Path) -> Result<DensityMatrix> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    Ok(DensityMatrix::from_json(&text)?)
}

pub struct QuantumInput<'a> {
    pub rho: &'a Path,
    pub sigma: Option<&'a Path>,
}

pub fn bound(
    fam: &EntropyFamily,
    dim: Option<usize>,
    eps: Option<f64>,
    quantum: Option<QuantumInput<'_>>,
    json: bool,
) -> Result<String> {
    let Some(q) = quantum else {
        let d = dim.ok_or_else(|| usage("bound needs -d"))?;
        let eps = eps.ok_or_else(|| usage("bound needs -e"))?;
        let r = classical_bound(fam, d, eps)?;
        return if json {
            pretty(&r)
        } else {
            Ok(format!("{REPORT_HEADER}\n{}\n", report_row(&r)))
        };
    };

    let rho = read_density(q.rho)?;
    let d = rho.dim();
    if let Some(want) = dim {
        if want != d {
            return Err(usage(format!("-d {want} disagrees with the {d}-dimensional state")));
        }
    }
    let sigma = q.sigma.map(read_density).transpose()?;
    let distance = sigma.as_ref().map(|s| trace_distance(&rho, s)).transpose()?;
    let eps = match (eps, distance) {
        (Some(e), Some(t)) if e + 1e-12 < t => {
            return Err(usage(format!(
                "-e {e} is below the trace distance {t} of the two states"
            )));
        }
        (Some(e), _) => e,
        (None, Some(t)) => t,
        (None, None) => return Err(usage("bound --quantum needs -e or --sigma-file")),
    };
    let report = classical_bound(fam, d, eps)?;
    let h_rho = entropy_of_state(fam, &rho)?;
    let (other, h_other) = match &sigma {
        Some(s) => ("sigma", entropy_of_state(fam, s)?),
        // the flow state maximizes every Schur-concave function over the ball
        None => ("flow", entropy_of_state(fam, &flow_state(&rho, eps)?)?),
    };
    let gap = (h_rho - h_other).abs();
    if json {
        return pretty(&json!({
            "report": report,
            "trace_distance": distance,
            "h_rho": h_rho,
            "h_other": h_other,
            "other": other,
            "gap": gap,
        }));
    }
    Ok(format!(
        "{REPORT_HEADER},trace_distance,h_rho,h_other,other,gap\n{},{},{},{},{other},{}\n",
        report_row(&report),
        distance.map(num).unwrap_or_default(),
        num(h_rho),
        num(h_other),
        num(gap)
    ))
}

pub fn lipschitz(fam: &EntropyFamily, d: usize, delta: Option<f64>, json: bool) -> Result<String> {
    let no_delta = |what: &str| match delta {
        Some(_) => Err(usage(format!(
            "--delta only applies to concave-type families, not {what}"
        ))),
        None => Ok(()),
    };
    let report = if fam.is_min_entropy() {
        no_delta("hinf")?;
        lipschitz_special("hinf", &[], d)?
    } else {
        match fam.classification() {
            Classification::ConcaveType => match lipschitz_concave_smoothed(fam, d, delta.unwrap_or(0.0))? {
                LipschitzOutcome::Finite(r) => r,
                LipschitzOutcome::NotLipschitz { family, dim } => BoundReport {
                    kind: BoundKind::Lipschitz,
                    value: f64::INFINITY,
                    formula_id: "not-lipschitz".into(),
                    family,
                    dim,
                    eps: None,
                    witness: None,
                },
            },
            Classification::ConvexType => {
                no_delta(&fam.to_string())?;
                lipschitz_convex_type(fam, d)?
            }
            Classification::Other => return Err(usage(format!("no Lipschitz constant is available for {fam}"))),
        }
    };
    if json {
        pretty(&report)
    } else {
        Ok(format!("{REPORT_HEADER}\n{}\n", report_row(&report)))
    }
}

const COMPARED: [PriorArt; 4] = [PriorArt::Rastegin, PriorArt::Chen, PriorArt::Zhang, PriorArt::Trivial];

pub fn compare(alpha: f64, d: usize, grid: &[f64], json: bool) -> Result<String> {
    let fam = if alpha == 1.0 {
        EntropyFamily::shannon()
    } else {
        EntropyFamily::renyi(alpha)?
    };
    let k = match fam.classification() {
        Classification::ConvexType => Some(lipschitz_convex_type(&fam, d)?.value),
        _ => None,
    };
    let mut rows = Vec::with_capacity(grid.len());
    for &eps in grid {
        let ours = match k {
            Some(k) => eps * k,
            None => classical_bound(&fam, d, eps)?.value,
        };
        // formulas outside their alpha range are left blank
        let others: Vec<Option<f64>> = COMPARED
            .iter()
            .map(|&f| prior_art_bound(f, alpha, d, eps).ok().map(|r| r.value))
            .collect();
        rows.push((eps, ours, others));
    }
    if json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(eps, ours, o)| {
                json!({ "eps": eps, "ours": ours, "rastegin": o[0], "chen": o[1], "zhang": o[2], "trivial": o[3] })
            })
            .collect();
        return pretty(&v);
    }
    let mut out = String::from("eps,ours,rastegin,chen,zhang,trivial\n");
    for (eps, ours, others) in rows {
        let cells: Vec<String> = others
            .iter()
            .map(|o| o.map(num).unwrap_or_else(|| "nan".into()))
            .collect();
        out += &format!("{},{},{}\n", num(eps), num(ours), cells.join(","));
    }
    Ok(out)
}

pub fn scaling(alpha: f64, s: f64, dims: &[usize], json: bool) -> Result<String> {
    let rows: Vec<ScalingRow> = dimensional_scaling_table(alpha, s, dims)?;
    if json {
        return pretty(&rows);
    }
    let mut out = String::from("d,eps,bound,kind\n");
    for r in rows {
        out += &format!("{},{},{},{:?}\n", r.d, num(r.eps), num(r.bound), r.kind);
    }
    Ok(out)
}

pub struct DistinctArgs<'a> {
    pub outcomes: Option<usize>,
    pub trials: u32,
    pub p: &'a str,
    pub eps: Option<f64>,
    pub reps: Option<usize>,
    pub seed: u64,
}

pub fn distinct(args: DistinctArgs<'_>, json: bool) -> Result<String> {
    let p = prob_vec(args.p, args.outcomes)?;
    let m = p.dim();
    let spec = TrialSpec::new(p, args.trials)?;
    let mut rows: Vec<(String, f64)> = vec![("expected".into(), expected_distinct(&spec))];
    if m <= EXACT_LIMIT {
        for (k, x) in pmf_exact(&spec)?.into_iter().enumerate() {
            rows.push((format!("pmf_{}", k + 1), x));
        }
    } else {
        eprintln!("note: exact distribution skipped for M > {EXACT_LIMIT}");
    }
    if let Some(eps) = args.eps {
        let b = distinct_uniform_bound(m, args.trials, eps)?;
        rows.push(("uniform_bound".into(), b.uniform));
        rows.push(("lipschitz_cap".into(), b.lipschitz_cap));
    }
    if let Some(reps) = args.reps {
        let sim = simulate_distinct(&spec, reps, args.seed)?;
        rows.push(("sim_mean".into(), sim.mean));
        rows.push(("sim_std_err".into(), sim.std_err));
    }
    if json {
        let map: serde_json::Map<String, Value> = rows.into_iter().map(|(k, v)| (k, json!(v))).collect();
        return pretty(&map);
    }
    let mut out = String::from("quantity,value\n");
    for (k, v) in rows {
        out += &format!("{k},{}\n", num(v));
    }
    Ok(out)
}
