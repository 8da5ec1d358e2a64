//! `blowup` - batch verification CLI.
//!
//! Every subcommand recomputes one family of closed-form claims against its
//! independent route and emits a machine-readable report (CSV by default,
//! JSON with `--format json`; `--out` writes a file instead of stdout).
//!
//! Exit codes: 0 all in-run checks passed, 1 a verification check failed,
//! 2 usage or configuration error. `BLOWUP_THREADS` caps the worker
//! threads used by `scan`.

use blowup_core::bubble::{self, BubbleParams};
use blowup_core::curvature::WeylLike;
use blowup_core::energy;
use blowup_core::nonuniq;
use blowup_core::reduction::{self, DimensionRow, ReductionPolynomial, ScanResult};
use blowup_core::report;
use blowup_core::specfun;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_core_shim::SeedMix;

/// Tiny deterministic helper for seeded point clouds, independent of any
/// RNG crate surface: SplitMix64.
mod rand_core_shim {
    pub struct SeedMix(u64);

    impl SeedMix {
        pub fn new(seed: u64) -> Self {
            Self(seed)
        }

        pub fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        }

        /// uniform in [-1, 1)
        pub fn pm1(&mut self) -> f64 {
            (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        }

        /// uniform in [0, 1)
        pub fn unit(&mut self) -> f64 {
            (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the report here instead of stdout (UTF-8, LF endings).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl OutputArgs {
    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.out {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => std::fs::write(path, text)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "blowup",
    version,
    about = "Verification toolkit for half-space bubble energies, Weyl-type perturbations, and the dimension-62 certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Dimension scan: exact bound certificates plus the direct
    /// construction check over an n-range and a list of T_c values.
    Scan(ScanArgs),
    /// Half-line moments c_q with cross-route agreement.
    Cq(CqArgs),
    /// Reduced-energy profile, closed form versus quadrature.
    EnergyProfile(EnergyProfileArgs),
    /// Translation Hessian of the reduced energy at a seeded block tensor.
    Hessian(HessianArgs),
    /// Sphere moment identities against the exact monomial oracle.
    Moments(MomentsArgs),
    /// Bubble equation, boundary condition, and Einstein identity residuals.
    BubbleCheck(BubbleCheckArgs),
    /// Warped-product comparison: volume identity, threshold k, limits.
    Nonuniq(NonuniqArgs),
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("range must look like a..b, got {text}"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad range start {a}"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad range end {b}"))?;
    Ok((lo, hi))
}

fn parse_eps_grid(text: &str) -> Result<Vec<f64>, String> {
    // start:end:step, inclusive of both ends up to roundoff
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => single
            .parse::<f64>()
            .map(|v| vec![v])
            .map_err(|_| format!("bad eps value {single}")),
        [start, end, step] => {
            let s: f64 = start.parse().map_err(|_| format!("bad eps start {start}"))?;
            let e: f64 = end.parse().map_err(|_| format!("bad eps end {end}"))?;
            let d: f64 = step.parse().map_err(|_| format!("bad eps step {step}"))?;
            if !(d > 0.0) || e < s {
                return Err(format!("need start <= end and step > 0 in {text}"));
            }
            let count = ((e - s) / d).round() as usize;
            Ok((0..=count).map(|i| s + i as f64 * d).collect())
        }
        _ => Err(format!("eps grid must be start:end:step, got {text}")),
    }
}

fn thread_cap() -> usize {
    std::env::var("BLOWUP_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .min(64)
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Single dimension to scan.
    #[arg(long, conflicts_with = "n_range")]
    n: Option<i64>,
    /// Dimension range a..b (default 25..200).
    #[arg(long = "n-range")]
    n_range: Option<String>,
    /// Comma list of negative T_c values (write --tc=-1,-0.5).
    #[arg(long = "tc", value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![-1.0])]
    tc: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_scan(args: &ScanArgs) -> Result<i32, String> {
    let (lo, hi) = match (&args.n, &args.n_range) {
        (Some(n), None) => (*n, *n),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => (25, 200),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let scan = scan_parallel(lo, hi, &args.tc, thread_cap()).map_err(|e| e.to_string())?;
    let text = match args.output.format {
        Format::Csv => report::dimension_rows_csv(&scan.rows),
        Format::Json => report::scan_json(&scan),
    };
    args.output.emit(&text)?;

    // Verification contract: every n >= 62 in the requested window is
    // bound-certified with all direct checks green, no n < 62 certifies,
    // and when 62 is inside the window it is the minimal certified n.
    let mut ok = true;
    for row in &scan.rows {
        if row.n >= 62 {
            ok &= row.certificate.certified && row.verdicts.all();
        } else {
            ok &= !row.certificate.certified;
        }
    }
    if (lo..=hi).contains(&62) {
        ok &= scan.minimal_certified_n == Some(62);
    }
    Ok(if ok { 0 } else { 1 })
}

fn scan_parallel(lo: i64, hi: i64, tcs: &[f64], threads: usize) -> blowup_core::Result<ScanResult> {
    if threads <= 1 || hi - lo < 8 {
        return reduction::certificate_scan(lo..=hi, tcs);
    }
    // validate inputs and fix ordering through the sequential entry point
    reduction::certificate_scan(lo..=lo, tcs)?;
    let mut tcs_sorted = tcs.to_vec();
    tcs_sorted.sort_by(|a, b| a.total_cmp(b));
    tcs_sorted.dedup();

    let ns: Vec<i64> = (lo..=hi).collect();
    let chunk = ns.len().div_ceil(threads);
    let results: Vec<blowup_core::Result<Vec<DimensionRow>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .chunks(chunk)
            .map(|part| {
                let tcs_sorted = tcs_sorted.clone();
                scope.spawn(move || {
                    let mut rows = Vec::new();
                    for &n in part {
                        for &t_c in &tcs_sorted {
                            rows.push(reduction::dimension_row(n, t_c)?);
                        }
                    }
                    Ok(rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker")).collect()
    });
    let mut rows = Vec::with_capacity(ns.len() * tcs_sorted.len());
    for r in results {
        rows.extend(r?);
    }
    // schedule-independent ordering
    rows.sort_by(|a, b| a.n.cmp(&b.n).then(a.t_c.total_cmp(&b.t_c)));
    let minimal_certified_n = (lo..=hi).find(|&n| reduction::bound_certificate(n).certified);
    Ok(ScanResult {
        rows,
        minimal_certified_n,
    })
}

#[derive(Debug, Args)]
struct CqArgs {
    #[arg(long, default_value_t = 62)]
    n: i64,
    #[arg(long = "tc", value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![-1.0])]
    tc: Vec<f64>,
    /// Largest q (checks q = 0..=q_max).
    #[arg(long, default_value_t = 2)]
    q_max: u32,
    /// Cross-route agreement tolerance.
    #[arg(long = "rel-tol", default_value_t = 1e-10)]
    rel_tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_cq(args: &CqArgs) -> Result<i32, String> {
    let mut rows = Vec::new();
    let mut ok = true;
    for &t_c in &args.tc {
        for q in 0..=args.q_max {
            let m = specfun::c_q(args.n, t_c, q).map_err(|e| e.to_string())?;
            let rec = specfun::half_line_moment_recursion(m.alpha, m.a)
                .map_err(|e| e.to_string())?;
            let recursion_rel = ((m.ln_value - rec.ln_value).exp() - 1.0).abs();
            // quadrature needs a representable integrand
            let quadrature_rel = if m.alpha * (1.0 + m.a * m.a).ln() < 600.0 {
                let quad = specfun::half_line_moment_quadrature(m.alpha, m.a)
                    .map_err(|e| e.to_string())?;
                ((m.ln_value - quad.ln_value).exp() - 1.0).abs()
            } else {
                f64::NAN
            };
            ok &= recursion_rel <= args.rel_tol;
            if quadrature_rel.is_finite() {
                ok &= quadrature_rel <= args.rel_tol;
            }
            rows.push(report::CqRow::new(args.n, t_c, q, &m, recursion_rel, quadrature_rel));
        }
    }
    let text = match args.output.format {
        Format::Csv => report::cq_rows_csv(&rows),
        Format::Json => report::cq_rows_json(&rows),
    };
    args.output.emit(&text)?;
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Args)]
struct EnergyProfileArgs {
    #[arg(long, default_value_t = 62)]
    n: i64,
    #[arg(long = "tc", allow_hyphen_values = true, default_value_t = -1.0)]
    tc: f64,
    /// eps grid start:end:step (or a single value).
    #[arg(long, default_value = "0.5:2:0.05")]
    eps: String,
    /// Closed-vs-quadrature tolerance.
    #[arg(long = "rel-tol", default_value_t = 1e-6)]
    rel_tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_energy_profile(args: &EnergyProfileArgs) -> Result<i32, String> {
    let eps = parse_eps_grid(&args.eps)?;
    let f = reduction::construct_f(args.n, args.tc).map_err(|e| e.to_string())?;
    let profile =
        energy::energy_profile(args.n, args.tc, 1.0, &f, &eps).map_err(|e| e.to_string())?;
    let text = match args.output.format {
        Format::Csv => report::energy_profile_csv(&profile),
        Format::Json => report::energy_profile_json(&profile),
    };
    args.output.emit(&text)?;
    let ok = profile.samples.iter().all(|s| s.rel_diff <= args.rel_tol);
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Args)]
struct HessianArgs {
    #[arg(long, default_value_t = 62)]
    n: i64,
    #[arg(long = "tc", allow_hyphen_values = true, default_value_t = -1.0)]
    tc: f64,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Seed of the block tensor (block dimension 4 inside R^{n-1}).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Closed-vs-quadrature tolerance for the two scalar integrals.
    #[arg(long = "rel-tol", default_value_t = 1e-6)]
    rel_tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_hessian(args: &HessianArgs) -> Result<i32, String> {
    if args.n < 11 {
        return Err(format!("hessian needs n >= 11, got {}", args.n));
    }
    let m = (args.n - 1) as usize;
    let w = WeylLike::random_block(m, 4.min(m), args.seed).map_err(|e| e.to_string())?;
    let f = reduction::construct_f(args.n, args.tc).map_err(|e| e.to_string())?;
    let rep = energy::hessian_xi(args.eps, args.n, args.tc, &w, &f).map_err(|e| e.to_string())?;
    let text = match args.output.format {
        Format::Csv => report::hessian_csv(&rep),
        Format::Json => report::hessian_json(&rep),
    };
    args.output.emit(&text)?;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
    let ok = rel(rep.jint_closed, rep.jint_quadrature) <= args.rel_tol
        && rel(rep.fint_closed, rep.fint_quadrature) <= args.rel_tol
        && rep.min_eigenvalue > 0.0;
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Args)]
struct MomentsArgs {
    /// Boundary dimension of the tensor (4..=8).
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma list of sphere radii.
    #[arg(long = "r", value_delimiter = ',', default_values_t = vec![1.0])]
    radii: Vec<f64>,
    /// Index pair for the weighted identities.
    #[arg(long, default_value_t = 0)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    q: usize,
    #[arg(long = "rel-tol", default_value_t = 1e-10)]
    rel_tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_moments(args: &MomentsArgs) -> Result<i32, String> {
    let w = WeylLike::random(args.m, args.seed).map_err(|e| e.to_string())?;
    let f = ReductionPolynomial::new(vec![1.3, -1.0]);
    let engine = energy::MomentEngine::new(&w, Some(&f)).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut ok = true;
    for &r in &args.radii {
        if !(r > 0.0) {
            return Err(format!("radius must be positive, got {r}"));
        }
        let (p, q) = (args.p, args.q);
        let a = engine.identity_a(r, p, q).map_err(|e| e.to_string())?;
        let b = engine.identity_b(r, p, q).map_err(|e| e.to_string())?;
        let c = engine.identity_c(r, p, q).map_err(|e| e.to_string())?;
        let d = engine.identity_d(r).map_err(|e| e.to_string())?;
        for (tag, cmp, pp, qq) in [
            ('A', a, p as i64, q as i64),
            ('B', b, p as i64, q as i64),
            ('C', c, p as i64, q as i64),
            ('D', d, -1, -1),
        ] {
            ok &= cmp.rel_err <= args.rel_tol;
            rows.push(report::MomentRow::new(tag, args.m, r, pp, qq, cmp));
        }
    }
    let text = match args.output.format {
        Format::Csv => report::moment_rows_csv(&rows),
        Format::Json => report::moment_rows_json(&rows),
    };
    args.output.emit(&text)?;
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Args)]
struct BubbleCheckArgs {
    #[arg(long, default_value_t = 62)]
    n: usize,
    #[arg(long = "tc", allow_hyphen_values = true, default_value_t = -1.0)]
    tc: f64,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Seeded sample points per identity.
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Also verify the kernel-norm constancy (slower; quadrature-heavy).
    #[arg(long, default_value_t = false)]
    check_norms: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_bubble_check(args: &BubbleCheckArgs) -> Result<i32, String> {
    let n = args.n;
    let params =
        BubbleParams::new(n, args.tc, vec![0.0; n - 1], args.eps).map_err(|e| e.to_string())?;
    let mut rng = SeedMix::new(args.seed);
    let mut max_interior = 0.0f64;
    let mut max_boundary = 0.0f64;
    let mut max_einstein = 0.0f64;
    for _ in 0..args.points {
        let mut x: Vec<f64> = (0..n).map(|_| rng.pm1() * 8.0 * args.eps).collect();
        x[n - 1] = rng.unit().max(1e-3) * 8.0 * args.eps;
        max_interior = max_interior
            .max(bubble::interior_residual(&params, &x).map_err(|e| e.to_string())?.abs());
        max_einstein = max_einstein.max(
            bubble::einstein_residual(&params, &x)
                .map_err(|e| e.to_string())?
                .max_rel,
        );
        let xb: Vec<f64> = (0..n - 1).map(|_| rng.pm1() * 5.0 * args.eps).collect();
        max_boundary = max_boundary
            .max(bubble::boundary_residual(&params, &xb).map_err(|e| e.to_string())?.abs());
    }
    let rows = vec![report::BubbleCheckRow {
        n,
        t_c: args.tc,
        eps: args.eps,
        seed: args.seed,
        points: args.points,
        max_interior,
        max_boundary,
        max_einstein,
    }];
    let text = match args.output.format {
        Format::Csv => report::bubble_rows_csv(&rows),
        Format::Json => report::bubble_rows_json(&rows),
    };
    args.output.emit(&text)?;
    let mut ok = max_interior <= 1e-9 && max_boundary <= 1e-10 && max_einstein <= 1e-10;
    if args.check_norms {
        let pairs = vec![
            (vec![0.0; n - 1], args.eps),
            (vec![0.3; n - 1], 0.5 * args.eps),
            (vec![-0.7; n - 1], 2.0 * args.eps),
        ];
        for a in [1usize, n] {
            let rep =
                bubble::kernel_norm_constancy(n, args.tc, a, &pairs).map_err(|e| e.to_string())?;
            ok &= rep.interior_spread <= 1e-6 && rep.boundary_spread <= 1e-6;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Args)]
struct NonuniqArgs {
    #[arg(long, default_value_t = 3)]
    n1: usize,
    #[arg(long, default_value_t = 2)]
    n2: usize,
    #[arg(long, default_value_t = 6.0)]
    rg1: f64,
    #[arg(long, default_value_t = 2.0)]
    hg1: f64,
    #[arg(long, default_value_t = 2.0)]
    rg2: f64,
    #[arg(long, default_value_t = 1.0)]
    v1: f64,
    #[arg(long, default_value_t = 1.0)]
    vhat1: f64,
    #[arg(long, default_value_t = 1.0)]
    v2: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_nonuniq(args: &NonuniqArgs) -> Result<i32, String> {
    let spec = nonuniq::WarpedProductSpec::new(
        args.n1, args.n2, args.rg1, args.hg1, args.rg2, args.v1, args.vhat1, args.v2,
    )
    .map_err(|e| e.to_string())?;
    let rep = nonuniq::threshold_k(&spec).map_err(|e| e.to_string())?;
    let text = match args.output.format {
        Format::Csv => report::threshold_csv(&rep),
        Format::Json => report::threshold_json(&rep),
    };
    args.output.emit(&text)?;

    let mut ok = rep.margin > 1.0 && rep.threshold_k.is_finite();
    // volume identity gates at quadrature-feasible dimensions
    for n in [5usize, 6] {
        let stereo = nonuniq::stereographic_volume_check(n).map_err(|e| e.to_string())?;
        ok &= stereo.rel_err <= 1e-8 && stereo.rel_err_wrong_convention > 0.05;
    }
    // S_c(k) within 1% of its limit at k = 1e6
    let sc_inf = nonuniq::sc_infinity(spec.r_g2, spec.n()).map_err(|e| e.to_string())?;
    let sc_big = nonuniq::sc_of_k(&spec, 1e6).map_err(|e| e.to_string())?;
    ok &= (sc_big - sc_inf).abs() <= 0.01 * sc_inf;
    Ok(if ok { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Scan(args) => run_scan(args),
        Cmd::Cq(args) => run_cq(args),
        Cmd::EnergyProfile(args) => run_energy_profile(args),
        Cmd::Hessian(args) => run_hessian(args),
        Cmd::Moments(args) => run_moments(args),
        Cmd::BubbleCheck(args) => run_bubble_check(args),
        Cmd::Nonuniq(args) => run_nonuniq(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
