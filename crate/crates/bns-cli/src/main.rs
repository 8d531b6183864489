//! `bns`: compute s-invariants and Khovanov tables for knots given as PD or
//! DT codes, singly or in batch, with JSON or plain-text output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::Parser;
use serde::Serialize;

use bns_core::{invariants, PlanarDiagram, SInvariantReport};

#[derive(Parser, Debug, Clone)]
#[command(name = "bns", about = "s-invariants from the filtered Bar-Natan complex")]
struct Args {
    /// Inline PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"; repeatable.
    #[arg(long)]
    pd: Vec<String>,

    /// Inline DT code, e.g. "4 6 2"; repeatable.
    #[arg(long)]
    dt: Vec<String>,

    /// Batch file: CSV lines `name,pd` with `#` comments.
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Compute s over the field of this characteristic (0 = Q); repeatable.
    #[arg(long = "field")]
    fields: Vec<u64>,

    /// Compute the integral tuple (s^Q, gl, torsion orders) and sigma_p.
    #[arg(long)]
    integral: bool,

    /// Include the reduced integral Khovanov homology table.
    #[arg(long)]
    kh_table: bool,

    /// Primes for s^{F_p} in the integral report, e.g. 2,3.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,

    /// Also report the mirror of every input diagram.
    #[arg(long)]
    mirror: bool,

    /// Move the basepoint to this edge id before computing.
    #[arg(long)]
    basepoint: Option<u32>,

    /// Emit one JSON object per report instead of text lines.
    #[arg(long)]
    json: bool,

    /// Worker threads for batch processing (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,

    /// Per-diagram time budget; exceeding it yields status "timeout".
    #[arg(long)]
    timeout_secs: Option<u64>,
}

#[derive(Serialize)]
struct Report {
    name: String,
    diagram: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    integral: Option<SInvariantReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    s_field: BTreeMap<u64, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kh_table: Option<BTreeMap<String, String>>,
    wall_time_secs: f64,
}

impl Report {
    fn failed(name: String, diagram: String, status: &'static str, error: Option<String>) -> Self {
        Report {
            name,
            diagram,
            status,
            error,
            integral: None,
            s_field: BTreeMap::new(),
            kh_table: None,
            wall_time_secs: 0.0,
        }
    }
}

struct Job {
    name: String,
    input: String,
    mirrored: bool,
}

fn compute(job: &Job, args: &Args) -> Result<Report, bns_core::Error> {
    let start = Instant::now();
    let mut d = PlanarDiagram::parse(&job.input)?;
    if let Some(e) = args.basepoint {
        d = d.with_basepoint(e)?;
    }
    if job.mirrored {
        d = d.mirror();
    }
    let integral = if args.integral {
        Some(invariants::full_report(&d, &args.primes)?)
    } else {
        None
    };
    let mut s_field = BTreeMap::new();
    for &c in &args.fields {
        s_field.insert(c, invariants::s_over_field(&d, c)?);
    }
    let kh_table = if args.kh_table {
        let t = invariants::khovanov_table(&d, true)?;
        Some(
            t.iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(&(h, q), g)| (format!("({h},{q})"), g.to_string()))
                .collect(),
        )
    } else {
        None
    };
    Ok(Report {
        name: job.name.clone(),
        diagram: d.serialize(),
        status: "ok",
        error: None,
        integral,
        s_field,
        kh_table,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

fn run_job(job: &Job, args: &Args) -> Report {
    let make = |job: &Job, args: &Args| match compute(job, args) {
        Ok(r) => r,
        Err(e) => Report::failed(job.name.clone(), job.input.clone(), "error", Some(e.to_string())),
    };
    let Some(secs) = args.timeout_secs else {
        return make(job, args);
    };
    // Run on a detached thread so a blown budget does not take the whole
    // process down; the worker is abandoned, not killed.
    let (tx, rx) = mpsc::channel();
    let j = Job {
        name: job.name.clone(),
        input: job.input.clone(),
        mirrored: job.mirrored,
    };
    let a = args.clone();
    std::thread::spawn(move || {
        let _ = tx.send(make(&j, &a));
    });
    match rx.recv_timeout(Duration::from_secs(secs)) {
        Ok(r) => r,
        Err(_) => Report::failed(job.name.clone(), job.input.clone(), "timeout", None),
    }
}

fn collect_jobs(args: &Args) -> anyhow::Result<Vec<Job>> {
    let mut jobs = Vec::new();
    let mut push = |name: String, input: String| {
        jobs.push(Job {
            name: name.clone(),
            input: input.clone(),
            mirrored: false,
        });
        if args.mirror {
            jobs.push(Job {
                name: format!("{name}!"),
                input,
                mirrored: true,
            });
        }
    };
    for (i, pd) in args.pd.iter().enumerate() {
        push(format!("pd{}", i + 1), pd.clone());
    }
    for (i, dt) in args.dt.iter().enumerate() {
        push(format!("dt{}", i + 1), format!("dt:{dt}"));
    }
    if let Some(path) = &args.batch {
        let text = std::fs::read_to_string(path)?;
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, pd) = line
                .split_once(',')
                .ok_or_else(|| anyhow::anyhow!("{}:{}: expected `name,pd`", path.display(), ln + 1))?;
            push(name.trim().to_string(), pd.trim().to_string());
        }
    }
    Ok(jobs)
}

fn print_text(r: &Report) {
    let mut parts = vec![format!("{}\tstatus={}", r.name, r.status)];
    if let Some(e) = &r.error {
        parts.push(format!("error={e}"));
    }
    if let Some(inv) = &r.integral {
        parts.push(format!("s={}", inv.s_rational));
        parts.push(format!("gl={}", inv.graded_length));
        if !inv.torsion_orders.is_empty() {
            let t: Vec<String> = inv.torsion_orders.iter().map(|t| t.to_string()).collect();
            parts.push(format!("torsion=[{}]", t.join(",")));
        }
        for (p, s) in &inv.s_mod_p {
            parts.push(format!("s_F{p}={s}"));
        }
        parts.push(format!("genus>={}", inv.genus_lower_bound));
    }
    for (c, s) in &r.s_field {
        if *c == 0 {
            parts.push(format!("s_Q={s}"));
        } else {
            parts.push(format!("s_F{c}={s}"));
        }
    }
    println!("{}", parts.join("\t"));
    if let Some(t) = &r.kh_table {
        for (hq, g) in t {
            println!("  {hq}\t{g}");
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BNS_LOG")).init();
    let mut args = Args::parse();
    if !args.integral && args.fields.is_empty() && !args.kh_table {
        args.integral = true;
    }
    let jobs = match collect_jobs(&args) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("bns: {e}");
            std::process::exit(2);
        }
    };
    if jobs.is_empty() {
        eprintln!("bns: no input; pass --pd, --dt or --batch");
        std::process::exit(2);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    log::info!("{} jobs on {} threads", jobs.len(), pool.current_num_threads());
    let reports: Vec<Report> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter().map(|j| run_job(j, &args)).collect()
    });
    let mut ok = true;
    for r in &reports {
        ok &= r.status == "ok";
        if args.json {
            println!("{}", serde_json::to_string(r).expect("serializable report"));
        } else {
            print_text(r);
        }
    }
    std::process::exit(if ok { 0 } else { 1 });
}
