use std::io::Write;

use lagstab::{analyze_with, AnalyzeOptions, OrbitSpec, Rational, Track};
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::render::Record;
use crate::{track_for, Failure, OrbitArgs, OutputFormat, RunOpts, EXIT_INPUT, EXIT_OK};

#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub n: usize,
    pub resolution: u64,
    pub t: Option<String>,
    pub t_steps: Option<u64>,
    /// `(count, seed)` for random simplex points.
    pub samples: Option<(usize, u64)>,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn ratio(p: u64, q: u64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Positive integer vectors of length `n` summing to `total`, in
/// lexicographic order.
fn compositions(n: usize, total: u64) -> Vec<Vec<u64>> {
    fn rec(left: usize, total: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 1..=total.saturating_sub(left as u64 - 1) {
            prefix.push(k);
            rec(left - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

fn t_values(plan: &SweepPlan) -> Result<Vec<Rational>, Failure> {
    let ts = match (&plan.t, plan.t_steps) {
        (Some(list), _) => crate::input::parse_list::<Rational>(list)?,
        (None, Some(0)) => return Err(usage("--t-steps must be positive")),
        (None, Some(k)) => (1..=k).map(|j| ratio(j, k + 1)).collect(),
        (None, None) => vec![ratio(1, 2)],
    };
    if let Some(bad) = ts.iter().find(|t| t.is_zero() || **t >= Rational::one() || **t < Rational::zero()) {
        return Err(usage(format!("t = {bad} is outside (0, 1)")));
    }
    Ok(ts)
}

/// Sweep points `(t, s)` in output order: `t` outermost, then the simplex
/// grid lexicographically (or the random draws in draw order).
pub fn sweep_points(plan: &SweepPlan) -> Result<Vec<(Rational, Vec<Rational>)>, Failure> {
    let n = plan.n;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if plan.resolution < 2 {
        return Err(usage("--resolution must be at least 2"));
    }
    if plan.resolution < n as u64 {
        return Err(usage(format!(
            "resolution {} has no interior points for n = {n}; every grid point would touch the simplex boundary",
            plan.resolution
        )));
    }
    let ts = t_values(plan)?;
    let simplices: Vec<Vec<Rational>> = match plan.samples {
        None => compositions(n, plan.resolution)
            .into_iter()
            .map(|k| k.into_iter().map(|ki| ratio(ki, plan.resolution)).collect())
            .collect(),
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=plan.resolution)).collect();
                    let total: u64 = w.iter().sum();
                    w.into_iter().map(|wi| ratio(wi, total)).collect()
                })
                .collect()
        }
    };
    Ok(ts.iter().flat_map(|t| simplices.iter().map(move |s| (t.clone(), s.clone()))).collect())
}

fn analyze_point(
    t: &Rational,
    s: &[Rational],
    track: Track,
    zero_band: f64,
) -> Result<Record, lagstab::Error> {
    let orbit = OrbitSpec::from_simplex(s.len(), t.clone(), s)?;
    match track {
        Track::Exact => {
            let options = AnalyzeOptions { bound_override: None, zero_band };
            Ok(Record::new(&orbit, &analyze_with(&orbit, &options)?))
        }
        Track::Float => {
            let f = orbit.to_float();
            let options = AnalyzeOptions { bound_override: None, zero_band };
            Ok(Record::new(&f, &analyze_with(&f, &options)?))
        }
    }
}

pub fn cmd_sweep(plan: &SweepPlan, run: &RunOpts, workers: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let points = sweep_points(plan)?;
    // grid values are rationals, so the default track is exact
    let track = track_for(run, &OrbitArgs::default());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| usage(format!("cannot start {workers} workers: {e}")))?;
    let zero_band = run.zero_band;
    let records: Vec<Result<Record, lagstab::Error>> =
        pool.install(|| points.par_iter().map(|(t, s)| analyze_point(t, s, track, zero_band)).collect());

    let format = run.output.unwrap_or(OutputFormat::Csv);
    let mut buf = String::new();
    if format == OutputFormat::Csv {
        buf.push_str(&Record::csv_header(plan.n, track == Track::Exact));
        buf.push('\n');
    }
    for rec in records {
        let rec = rec?;
        match format {
            OutputFormat::Csv => buf.push_str(&rec.csv_row()),
            OutputFormat::Json => buf.push_str(&rec.json().to_string()),
            OutputFormat::Text => buf.push_str(&rec.text()),
        }
        buf.push('\n');
    }
    out.write_all(buf.as_bytes()).map_err(|e| usage(format!("write failed: {e}")))?;
    Ok(EXIT_OK)
}
