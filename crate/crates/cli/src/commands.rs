use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use gitgraph::counting::{
    count_closed_form, count_row, free_vertex_distribution, k_distribution, CountTable, KModel,
    StirlingTable,
};
use gitgraph::io::{emit_git_script, serialize_dot, serialize_edges, serialize_json};
use gitgraph::oracle::{all_git_graphs, GIT_GRAPH_LIMIT};
use gitgraph::sampling::{
    exceeds_rejection_regime, sample_boltzmann_in_window, sample_rejection, weighted_index,
    BoltzmannParams, ExactSampler, RandomSource, SampleError, SizeSampler, EXACT_TABLE_LIMIT,
};
use gitgraph::tuning::TuningResult;
use gitgraph::GitGraph;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{
    CliError, CountArgs, Dist, EnumerateArgs, Format, Method, SampleArgs, StatsArgs, TuneArgs,
    SEED_ENV,
};

const DEFAULT_SEED: u64 = 0;

pub fn count(a: &CountArgs) -> Result<(), CliError> {
    if let Some(k) = a.k {
        if k > a.n {
            return Err(CliError::Invalid(format!("k = {k} exceeds n = {}", a.n)));
        }
    }
    let recurrence = || -> BigUint {
        let row = count_row(a.n);
        match a.k {
            Some(k) => row[k].clone(),
            None => row.iter().sum(),
        }
    };
    let closed = || -> Result<BigUint, CliError> {
        let ks: Vec<usize> = match a.k {
            Some(k) => vec![k],
            None => (0..=a.n).collect(),
        };
        let stirling = StirlingTable::build(ks.iter().copied().max().unwrap_or(0));
        let mut total = BigUint::zero();
        for k in ks {
            // g(0, 0) = 1 and g(n, 0) = 0 otherwise; the closed form covers k >= 1.
            total += match (a.n, k) {
                (0, 0) => BigUint::from(1u8),
                (_, 0) => BigUint::zero(),
                _ => count_closed_form(a.n, k, &stirling)
                    .map_err(|e| CliError::Internal(e.to_string()))?,
            };
        }
        Ok(total)
    };
    if a.closed {
        println!("{}", closed()?);
    } else if a.both {
        let (r, c) = (recurrence(), closed()?);
        println!("{r}");
        println!("{c}");
        if r != c {
            return Err(CliError::Internal(format!(
                "recurrence {r} != closed form {c}"
            )));
        }
    } else {
        println!("{}", recurrence());
    }
    Ok(())
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => {
            let s = v.trim().parse().map_err(|_| {
                CliError::Invalid(format!("{SEED_ENV}={v:?} is not an unsigned integer"))
            })?;
            eprintln!("gitgraph: seed {s} from {SEED_ENV}");
            Ok(s)
        }
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn forbid(flags: &[(&str, bool)], method: &str) -> Result<(), CliError> {
    for (name, present) in flags {
        if *present {
            return Err(CliError::Invalid(format!(
                "--{name} does not apply to --method {method}"
            )));
        }
    }
    Ok(())
}

fn require<T: Copy>(v: Option<T>, name: &str, method: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("--method {method} requires --{name}")))
}

fn sample_err(e: SampleError) -> CliError {
    match e {
        SampleError::Count(_) | SampleError::MissingTables { .. } => {
            CliError::Internal(e.to_string())
        }
        _ => CliError::invalid(e),
    }
}

/// Runs `draw` for every sample index on `jobs` threads, keeping index order.
fn run_parallel<F>(count: usize, jobs: usize, draw: F) -> Result<Vec<GitGraph>, CliError>
where
    F: Fn(usize) -> Result<GitGraph, CliError> + Sync,
{
    let jobs = jobs.clamp(1, count.max(1));
    if jobs == 1 {
        return (0..count).map(&draw).collect();
    }
    let chunk = count.div_ceil(jobs);
    let draw = &draw;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let range = (j * chunk).min(count)..((j + 1) * chunk).min(count);
                scope.spawn(move || range.map(draw).collect::<Result<Vec<_>, _>>())
            })
            .collect();
        let mut out = Vec::with_capacity(count);
        for h in handles {
            out.extend(h.join().expect("sampling thread panicked")?);
        }
        Ok(out)
    })
}

pub fn sample(a: &SampleArgs) -> Result<(), CliError> {
    if a.jobs == 0 {
        return Err(CliError::Invalid("--jobs must be at least 1".into()));
    }
    let seed = resolve_seed(a.seed)?;
    let rng = |i: usize| RandomSource::derive(seed, i as u64);
    let graphs = match a.method {
        Method::Rejection => {
            let m = "rejection";
            forbid(
                &[
                    ("f", a.f.is_some()),
                    ("alpha", a.alpha.is_some()),
                    ("size", a.size.is_some()),
                    ("min-size", a.min_size.is_some()),
                    ("max-size", a.max_size.is_some()),
                ],
                m,
            )?;
            let (n, k) = (require(a.n, "n", m)?, require(a.k, "k", m)?);
            if k == 0 || k > n {
                return Err(CliError::Invalid(format!(
                    "need 1 <= k <= n, got n = {n}, k = {k}"
                )));
            }
            if exceeds_rejection_regime(n, k) {
                eprintln!(
                    "gitgraph: warning: k = {k} exceeds 3 sqrt(n) = {:.1}; rejection may be very slow, \
                     consider --method exact",
                    3.0 * (n as f64).sqrt()
                );
            }
            run_parallel(a.count, a.jobs, |i| {
                sample_rejection(n, k, &mut rng(i)).map_err(sample_err)
            })?
        }
        Method::Exact => {
            let m = "exact";
            forbid(
                &[
                    ("alpha", a.alpha.is_some()),
                    ("size", a.size.is_some()),
                    ("min-size", a.min_size.is_some()),
                    ("max-size", a.max_size.is_some()),
                ],
                m,
            )?;
            let n = require(a.n, "n", m)?;
            match a.k {
                Some(k) => {
                    let sampler = ExactSampler::auto(n, k, a.f).map_err(sample_err)?;
                    run_parallel(a.count, a.jobs, |i| Ok(sampler.sample(&mut rng(i))))?
                }
                None if a.f.is_some() => return Err(CliError::Invalid("--f requires --k".into())),
                None if n <= EXACT_TABLE_LIMIT => {
                    let counts = CountTable::build(n);
                    let stirling = StirlingTable::build(n);
                    let sampler = SizeSampler::new(n, &counts, &stirling).map_err(sample_err)?;
                    run_parallel(a.count, a.jobs, |i| Ok(sampler.sample(&mut rng(i))))?
                }
                None => {
                    let row = count_row(n);
                    run_parallel(a.count, a.jobs, |i| {
                        let mut r = rng(i);
                        let k = weighted_index(&mut r, &row).expect("nonempty size class");
                        let sampler = ExactSampler::auto(n, k, None).map_err(sample_err)?;
                        Ok(sampler.sample(&mut r))
                    })?
                }
            }
        }
        Method::Boltzmann => {
            let m = "boltzmann";
            forbid(
                &[
                    ("n", a.n.is_some()),
                    ("k", a.k.is_some()),
                    ("f", a.f.is_some()),
                ],
                m,
            )?;
            let (alpha, size) = (require(a.alpha, "alpha", m)?, require(a.size, "size", m)?);
            let t = TuningResult::for_target(alpha, size).map_err(CliError::invalid)?;
            let params = BoltzmannParams::new(t.z, t.u).map_err(sample_err)?;
            let (lo, hi) = (a.min_size.unwrap_or(0), a.max_size.unwrap_or(usize::MAX));
            run_parallel(a.count, a.jobs, |i| {
                sample_boltzmann_in_window(&params, lo, hi, a.max_attempts, &mut rng(i))
                    .map(|(g, _)| g)
                    .map_err(sample_err)
            })?
        }
    };
    write_graphs(&graphs, a.format, a.output.as_deref())
}

fn render(g: &GitGraph, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serialize_json(g) + "\n",
        Format::Dot => serialize_dot(g),
        Format::Edges => serialize_edges(g),
        Format::Gitscript => emit_git_script(g).map_err(CliError::invalid)?,
    })
}

fn write_graphs(
    graphs: &[GitGraph],
    format: Format,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let mut out: Box<dyn Write> = match output {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Invalid(format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let io_err = |e: io::Error| CliError::Invalid(format!("write failed: {e}"));
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            match format {
                Format::Json => {}
                Format::Gitscript => writeln!(out, "\n# ---").map_err(io_err)?,
                Format::Dot | Format::Edges => writeln!(out).map_err(io_err)?,
            }
        }
        out.write_all(render(g, format)?.as_bytes())
            .map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn enumerate(a: &EnumerateArgs) -> Result<(), CliError> {
    if a.n > GIT_GRAPH_LIMIT {
        return Err(CliError::Invalid(format!(
            "enumeration is limited to n <= {GIT_GRAPH_LIMIT}"
        )));
    }
    if a.k == 0 || a.k > a.n {
        return Err(CliError::Invalid(format!(
            "need 1 <= k <= n, got n = {}, k = {}",
            a.n, a.k
        )));
    }
    let graphs = all_git_graphs(a.n, a.k).map_err(CliError::invalid)?;
    let expected = count_row(a.n)[a.k].to_usize().unwrap_or(usize::MAX);
    if graphs.len() != expected {
        return Err(CliError::Internal(format!(
            "enumerated {} graphs, counted {expected}",
            graphs.len()
        )));
    }
    eprintln!("gitgraph: {} graphs", graphs.len());
    write_graphs(&graphs, a.format, a.output.as_deref())
}

pub fn tune(a: &TuneArgs) -> Result<(), CliError> {
    let t = TuningResult::for_target(a.alpha, a.size).map_err(CliError::invalid)?;
    println!("alpha={}", t.alpha);
    println!("u={}", t.u);
    println!("rho={}", t.rho);
    println!("z={}", t.z);
    println!("expected_size={}", t.expected_size);
    println!("expected_black={}", t.expected_black);
    Ok(())
}

/// Reads a decimal such as `2`, `0.125` or `-1.5e-3` as an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let mut numer: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    Some(value)
}

fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn stats(a: &StatsArgs) -> Result<(), CliError> {
    let (weights, label) = match a.dist {
        Dist::K => {
            if a.k.is_some() {
                return Err(CliError::Invalid("--k does not apply to --dist k".into()));
            }
            let model = match &a.u {
                None => KModel::Uniform,
                Some(s) => {
                    let u = parse_decimal(s)
                        .ok_or_else(|| CliError::Invalid(format!("--u {s:?} is not a decimal")))?;
                    KModel::LabeledMain(u)
                }
            };
            let row = count_row(a.n);
            let d = k_distribution(&row, &model).map_err(CliError::invalid)?;
            (d.weights, "k")
        }
        Dist::F => {
            if a.u.is_some() {
                return Err(CliError::Invalid("--u does not apply to --dist f".into()));
            }
            let k =
                a.k.ok_or_else(|| CliError::Invalid("--dist f requires --k".into()))?;
            let stirling = StirlingTable::build(k);
            let w = free_vertex_distribution(a.n, k, &stirling).map_err(CliError::invalid)?;
            (w, "f")
        }
    };
    let total: BigUint = weights.iter().sum();
    if total.is_zero() {
        return Err(CliError::Invalid("the class is empty".into()));
    }
    let denom = BigInt::from(total.clone());
    let mut mean = BigRational::zero();
    let mut second = BigRational::zero();
    let mut out = BufWriter::new(io::stdout().lock());
    let io_err = |e: io::Error| CliError::Invalid(format!("write failed: {e}"));
    writeln!(out, "{label},weight,probability,probability_f64").map_err(io_err)?;
    for (x, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let p = BigRational::new(BigInt::from(w.clone()), denom.clone());
        let xr = BigRational::from_integer(BigInt::from(x));
        mean += &p * &xr;
        second += &p * &xr * &xr;
        writeln!(out, "{x},{w},{p},{}", rational_f64(&p)).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    let variance = &second - &mean * &mean;
    eprintln!("total={total}");
    eprintln!("mean={} ({})", mean, rational_f64(&mean));
    eprintln!("variance={} ({})", variance, rational_f64(&variance));
    Ok(())
}
