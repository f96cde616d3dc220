use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::asymptotics::{convergence_experiment, PipelineCertificate};
use crate::blaschke::{build_corrector, corrector_certificate, CertificateOptions, CorrectorCertificate, DiskSide, ZeroSet};
use crate::error::{Error, Result};
use crate::measure_opuc::{log_condition_report, residue_identity_check, MeasureSpec};
use crate::xlinalg::PrecisionTag;

use super::manifest::{Command, RunManifest};
use super::zeros::{generate_zeros, instance_seed, ZeroKind};

pub const VERSION: &str = concat!("szego-lab v", env!("CARGO_PKG_VERSION"));
pub const THREADS_ENV: &str = "SZEGO_LAB_THREADS";

/// Paths written by a run plus its summary.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub csv: PathBuf,
    pub report: PathBuf,
    pub summary: Value,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

/// Shortest round-trip decimal; exponent form outside `[1e-4, 1e16)`, and no `-0`.
pub(crate) fn num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_finite() && (x.abs() < 1e-4 || x.abs() >= 1e16) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// `SZEGO_LAB_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidInput(format!("{THREADS_ENV}: expected a positive integer, got {v:?}"))),
        },
    }
}

/// Machine-readable error record.
pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}})
}

/// Runs `command` with the manifest, inside a pool capped by `SZEGO_LAB_THREADS`.
pub fn run(manifest: RunManifest, command: Command) -> Result<RunOutcome> {
    let m = manifest.resolve(command)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = thread_cap()? {
            b = b.num_threads(n);
        }
        b.build().map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
    };
    let (table, summary) = pool.install(|| match command {
        Command::VsBound => sweep(&m, false),
        Command::Besov => sweep(&m, true),
        Command::Opuc => opuc(&m),
        Command::Pipeline => pipeline(&m),
        Command::ResidueCheck => residue(&m),
        Command::LogCondition => log_condition(&m),
    })?;
    write_outputs(&m, command, table, summary)
}

fn load_measure(m: &RunManifest) -> Result<MeasureSpec> {
    let path = m.measure_file.as_ref().expect("resolved manifest has a measure");
    let text = fs::read_to_string(path)?;
    let mu = MeasureSpec::from_json(&text)?;
    Ok(match m.precision_bits {
        Some(bits) => mu.with_precision(PrecisionTag::new(bits)?),
        None => mu,
    })
}

fn write_outputs(m: &RunManifest, command: Command, table: Table, summary: Value) -> Result<RunOutcome> {
    let dir = m.out_dir();
    fs::create_dir_all(&dir)?;
    let csv_path = dir.join("certificates.csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let obj: serde_json::Map<String, Value> = table
                .header
                .iter()
                .zip(r)
                .map(|(h, v)| (h.to_string(), cell_value(v)))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let precision = match command {
        Command::VsBound | Command::Besov => Value::from(53),
        _ => Value::from(load_measure(m)?.precision().bits()),
    };
    let report = json!({
        "command": command.name(),
        "summary": summary,
        "rows": rows,
        "reproducibility": {
            "seed": m.seed,
            "precision_bits": precision,
            "oversample": m.oversample,
            "schedule": if command == Command::Pipeline { serde_json::to_value(m.schedule)? } else { Value::Null },
            "n_grid": m.n_grid,
            "version": VERSION,
        },
    });
    let report_path = dir.join("report.json");
    fs::write(&report_path, serde_json::to_string_pretty(&report)? + "\n")?;
    Ok(RunOutcome {
        csv: csv_path,
        report: report_path,
        summary,
    })
}

fn cell_value(s: &str) -> Value {
    if s.is_empty() {
        return Value::Null;
    }
    if let Ok(b) = s.parse::<bool>() {
        return Value::Bool(b);
    }
    if let Ok(i) = s.parse::<i64>() {
        return Value::from(i);
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Value::from(x),
        _ => Value::String(s.to_string()),
    }
}

struct SweepTask {
    epsilon: f64,
    kind: Option<ZeroKind>,
    n: usize,
    instance: usize,
    seed: u64,
    zeros: ZeroSet,
}

fn sweep_tasks(m: &RunManifest) -> Result<Vec<SweepTask>> {
    let mut tasks = Vec::new();
    if let Some(path) = &m.zeros_file {
        let zeros = ZeroSet::from_json(&fs::read_to_string(path)?, DiskSide::InsideDisk)?;
        for &epsilon in &m.epsilons {
            tasks.push(SweepTask {
                epsilon,
                kind: None,
                n: zeros.len(),
                instance: 0,
                seed: m.seed,
                zeros: zeros.clone(),
            });
        }
        return Ok(tasks);
    }
    for &epsilon in &m.epsilons {
        for &kind in &m.kinds {
            for &n in &m.n_grid {
                for instance in 0..m.instances {
                    let seed = instance_seed(m.seed, kind, n as usize, instance);
                    tasks.push(SweepTask {
                        epsilon,
                        kind: Some(kind),
                        n: n as usize,
                        instance,
                        seed,
                        zeros: generate_zeros(kind, n as usize, seed)?,
                    });
                }
            }
        }
    }
    Ok(tasks)
}

/// `vs-bound` (sup and first derivative) or `besov` (second derivative and Besov ratio).
fn sweep(m: &RunManifest, besov: bool) -> Result<(Table, Value)> {
    let opts = CertificateOptions {
        derivative_orders: if besov { vec![2] } else { vec![1] },
        besov_orders: if besov { vec![1] } else { vec![] },
        oversample: m.oversample,
    };
    let tasks = sweep_tasks(m)?;
    let certs: Vec<CorrectorCertificate> = tasks
        .par_iter()
        .map(|t| corrector_certificate(&build_corrector(t.zeros.clone(), t.epsilon)?, &opts))
        .collect::<Result<_>>()?;
    let s = if besov { 2 } else { 1 };
    // max ratio per (ε, n) over kinds and instances
    let key = |t: &SweepTask| (t.epsilon.to_bits(), t.n);
    let mut max_d: BTreeMap<(u64, usize), f64> = BTreeMap::new();
    let mut max_b: BTreeMap<(u64, usize), f64> = BTreeMap::new();
    for (t, c) in tasks.iter().zip(&certs) {
        let d = max_d.entry(key(t)).or_insert(0.0);
        *d = d.max(c.derivative_ratio(s).unwrap_or(0.0));
        let b = max_b.entry(key(t)).or_insert(0.0);
        *b = b.max(c.besov_ratio(1).unwrap_or(0.0));
    }
    let mut header = vec![
        "epsilon", "kind", "n", "instance", "seed", "radius", "phi0_err", "sup_phi", "sup_phi_bound", "sup_ok",
    ];
    header.extend(if besov {
        ["d2_sup", "d2_ratio", "d2_bound", "max_d2_ratio", "besov1", "besov1_ratio", "max_besov1_ratio"].as_slice()
    } else {
        ["d1_sup", "d1_ratio", "d1_bound", "max_d1_ratio"].as_slice()
    });
    let mut all_phi0 = true;
    let mut all_sup = true;
    let rows = tasks
        .iter()
        .zip(&certs)
        .map(|(t, c)| {
            let sup_ok = c.sup_phi <= c.sup_phi_bound + 1e-9;
            all_sup &= sup_ok;
            all_phi0 &= c.phi0_err <= 1e-12;
            let d = c.derivatives.iter().find(|r| r.s == s).expect("requested order");
            let mut row = vec![
                num(t.epsilon),
                t.kind.map_or("file", ZeroKind::name).to_string(),
                t.n.to_string(),
                t.instance.to_string(),
                t.seed.to_string(),
                num(c.radius),
                num(c.phi0_err),
                num(c.sup_phi),
                num(c.sup_phi_bound),
                sup_ok.to_string(),
                num(d.value),
                num(d.ratio),
                opt(d.a_priori_bound),
                num(max_d[&key(t)]),
            ];
            if besov {
                let b = c.besov.iter().find(|r| r.s == 1).expect("besov order 1");
                row.extend([num(b.value), num(b.ratio), num(max_b[&key(t)])]);
            }
            row
        })
        .collect();
    let per_eps: Vec<Value> = m
        .epsilons
        .iter()
        .map(|&e| {
            let per_n: Vec<Value> = max_d
                .iter()
                .filter(|((eb, _), _)| *eb == e.to_bits())
                .map(|((eb, n), d)| {
                    let b = if besov { json!(max_b[&(*eb, *n)]) } else { Value::Null };
                    json!({"n": n, "max_derivative_ratio": d, "max_besov_ratio": b})
                })
                .collect();
            let series: Vec<(usize, f64)> =
                max_d.iter().filter(|((eb, _), _)| *eb == e.to_bits()).map(|((_, n), d)| (*n, *d)).collect();
            let drift = drift(&series);
            let bseries: Vec<(usize, f64)> =
                max_b.iter().filter(|((eb, _), _)| *eb == e.to_bits()).map(|((_, n), d)| (*n, *d)).collect();
            json!({
                "epsilon": e,
                "derivative_order": s,
                "per_n": per_n,
                "derivative_drift": drift,
                "besov_drift": if besov { drift_value(&bseries) } else { Value::Null },
            })
        })
        .collect();
    let summary = json!({
        "instances": tasks.len(),
        "all_phi0_ok": all_phi0,
        "all_sup_ok": all_sup,
        "per_epsilon": per_eps,
    });
    Ok((Table { header, rows }, summary))
}

/// Ratio of the constant at the largest `n` to the one at `n = 16` (or the smallest `n`).
fn drift(series: &[(usize, f64)]) -> Option<f64> {
    let last = series.last()?;
    let base = series.iter().find(|(n, _)| *n == 16).or(series.first())?;
    (base.1 > 0.0).then(|| last.1 / base.1)
}

fn drift_value(series: &[(usize, f64)]) -> Value {
    drift(series).map_or(Value::Null, Value::from)
}

fn opuc(m: &RunManifest) -> Result<(Table, Value)> {
    let mu = load_measure(m)?;
    let rep = convergence_experiment(&mu, &m.n_grid, m.which, None)?;
    let header = vec!["n", "tau_n", "eta_n", "target", "tau_error", "eta_error", "tau_bits", "eta_bits"];
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                opt(r.tau),
                opt(r.eta),
                num(rep.target),
                opt(r.tau_error),
                opt(r.eta_error),
                r.tau_bits.map(|b| b.to_string()).unwrap_or_default(),
                r.eta_bits.map(|b| b.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    let summary = json!({
        "target": rep.target,
        "tau_trend_ok": rep.tau_trend_ok,
        "eta_trend_ok": rep.eta_trend_ok,
        "last": rep.rows.last().map(|r| json!({"n": r.n, "tau_error": r.tau_error, "eta_error": r.eta_error})),
    });
    Ok((Table { header, rows }, summary))
}

const PIPELINE_HEADER: [&str; 33] = [
    "route", "n", "k_n", "l_n", "radius", "selected", "eps_n", "a_n", "delta_n", "sup_defect",
    "sup_defect_cauchy", "truncation_tail", "leading_gap", "ac_norm", "alpha1", "alpha1_bound", "alpha2",
    "alpha2_bound", "tail_factor", "gamma_n", "c_bound", "total_norm", "lower_bound_achieved", "target",
    "schwarz_excess", "schwarz_pass", "bits", "optimum", "dominated", "bookkeeping_defect", "bookkeeping_ok",
    "optimum_gap", "route_target",
];

fn pipeline_row(c: &PipelineCertificate, optimum: f64) -> Vec<String> {
    let route = match c.route {
        crate::asymptotics::Route::ValleePoussin => "vp",
        crate::asymptotics::Route::Taylor => "taylor",
    };
    vec![
        route.to_string(),
        c.n.to_string(),
        c.k_n.to_string(),
        c.l_n.to_string(),
        num(c.radius),
        c.selected.to_string(),
        num(c.eps_n),
        num(c.a_n),
        num(c.delta_n),
        num(c.sup_defect),
        opt(c.sup_defect_cauchy),
        num(c.truncation_tail),
        num(c.leading_gap),
        num(c.ac_norm),
        num(c.alpha1),
        num(c.alpha1_bound),
        num(c.alpha2),
        num(c.alpha2_bound),
        num(c.tail_factor),
        num(c.gamma_n),
        num(c.c_bound),
        num(c.total_norm),
        num(c.lower_bound_achieved),
        num(c.target),
        num(c.schwarz_excess),
        c.schwarz_pass.to_string(),
        c.bits.to_string(),
        num(optimum),
        c.dominated_by(optimum).to_string(),
        num(c.bookkeeping_defect()),
        (c.bookkeeping_defect() <= 1e-12).to_string(),
        num(optimum - c.lower_bound_achieved),
        if route == "vp" { "eta_n" } else { "tau_n" }.to_string(),
    ]
}

fn pipeline(m: &RunManifest) -> Result<(Table, Value)> {
    let mu = load_measure(m)?;
    let rep = convergence_experiment(&mu, &m.n_grid, m.which, Some(&m.schedule))?;
    let mut rows = Vec::new();
    let mut certs = Vec::new();
    for r in &rep.rows {
        if let (Some(c), Some(opt)) = (&r.eta_lower, r.eta) {
            rows.push(pipeline_row(c, opt));
            certs.push((c, opt));
        }
        if let (Some(c), Some(opt)) = (&r.tau_lower, r.tau) {
            rows.push(pipeline_row(c, opt));
            certs.push((c, opt));
        }
    }
    let summary = json!({
        "target": rep.target,
        "all_dominated": certs.iter().all(|(c, o)| c.dominated_by(*o)),
        "all_schwarz_pass": certs.iter().all(|(c, _)| c.schwarz_pass),
        "max_bookkeeping_defect": certs.iter().map(|(c, _)| c.bookkeeping_defect()).fold(0.0, f64::max),
        "schedule": m.schedule.describe(),
    });
    Ok((
        Table {
            header: PIPELINE_HEADER.to_vec(),
            rows,
        },
        summary,
    ))
}

fn residue(m: &RunManifest) -> Result<(Table, Value)> {
    let mu = load_measure(m)?;
    let jobs: Vec<(u64, usize)> = m
        .n_grid
        .iter()
        .flat_map(|&n| m.k_list.iter().map(move |&k| (n, k)))
        .collect();
    let checks: Vec<_> = jobs
        .par_iter()
        .map(|&(n, k)| residue_identity_check(&mu, n as i64, k))
        .collect::<Result<_>>()?;
    let header = vec![
        "n", "k", "bits", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "eta", "residue_abs_sum", "cs_majorant",
        "pairing_abs", "pairing_ok", "grid",
    ];
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.n.to_string(),
                c.k.to_string(),
                c.bits.to_string(),
                num(c.lhs.re),
                num(c.lhs.im),
                num(c.rhs.re),
                num(c.rhs.im),
                num(c.abs_diff),
                num(c.eta),
                num(c.residues.iter().map(|r| r.norm()).sum()),
                num(c.cs_majorant),
                num(c.pairing_abs),
                c.pairing_within_unit(1e-8).to_string(),
                c.grid.to_string(),
            ]
        })
        .collect();
    let summary = json!({
        "max_abs_diff": checks.iter().map(|c| c.abs_diff).fold(0.0, f64::max),
        "all_pairing_ok": checks.iter().all(|c| c.pairing_within_unit(1e-8)),
    });
    Ok((Table { header, rows }, summary))
}

fn log_condition(m: &RunManifest) -> Result<(Table, Value)> {
    let mu = load_measure(m)?;
    let n_max = m.n_max.or(m.n_grid.last().copied()).unwrap_or(1024);
    let rep = log_condition_report(mu.spectrum(), &m.a_list, n_max)?;
    let header = vec!["a", "n", "tail_mass", "value"];
    let rows = rep
        .rows
        .iter()
        .map(|r| vec![num(r.a), r.n.to_string(), num(r.tail_mass), num(r.value)])
        .collect();
    let summary = json!({
        "n_max": n_max,
        "bounded": rep.bounded.iter().map(|(a, ok)| json!({"a": a, "bounded": ok})).collect::<Vec<_>>(),
        "passes": rep.passes(),
    });
    Ok((Table { header, rows }, summary))
}

/// Writes `value` as pretty JSON, creating parent directories.
pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    if let Some(p) = path.parent() {
        fs::create_dir_all(p)?;
    }
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 5.1e-17, 2.5e20, -7.25, 123456.789, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(2.0), "2");
    }
}
