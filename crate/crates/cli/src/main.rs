mod output;
mod source;

use clap::{Args, Parser, Subcommand};
use noisegaf::gaf::GafModel;
use noisegaf::stats::{extrema_experiment, gaf_intensity, IntensityReport, RegionSpec, DEFAULT_GRID};
use noisegaf::transforms::Domain;
use noisegaf::verify::{run_suite, Budget, Suite};
use noisegaf::zeros::{locate_zeros, rouche_certify, sphere_zeros};
use noisegaf::{Complex64, Curve, Error, Window};
use output::{num, plot_script, read_manifest, Csv, Outputs, RunManifest};
use rayon::prelude::*;
use source::{parse_params, Source};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20240601;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

/// Side of the |F| grid written for plots.
const PLOT_RESOLUTION: usize = 200;

#[derive(Parser, Debug)]
#[command(name = "noisegaf", version, about = "Transforms of white noise onto Gaussian analytic functions and their zeros")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the monomial coefficients of one sample (columns k, re, im).
    Sample(RunArgs),
    /// Transform noise (plus an optional hidden basis function) and write its
    /// coefficients and values over the window.
    Transform(RunArgs),
    /// Locate the zeros of independent samples (columns trial, re, im).
    Zeros(RunArgs),
    /// Mean zero count over the window against the expected count.
    Intensity(RunArgs),
    /// Rouché certificates for truncated samples on the window boundary.
    Certify(RunArgs),
    /// Run a verification suite and print measured values against tolerances.
    Verify(VerifyArgs),
    /// Re-run the command recorded in a manifest and compare output digests.
    Rerun(RerunArgs),
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// planar, planar-higher, hyperbolic, spherical, or a transform of noise:
    /// bargmann, charlier, bergman, meixner, krawtchouk, analytic-projection
    /// (intensity also accepts extrema).
    #[arg(long, default_value = "planar")]
    model: String,
    /// Model parameters as key=value, comma separated or repeated.
    #[arg(long)]
    params: Vec<String>,
    /// Truncation n; by default the smallest one meeting the tail criterion.
    #[arg(long)]
    truncation: Option<usize>,
    /// "x0,x1,y0,y1", "disk:r" or "disk:r@cx,cy".
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Subdivision grid per side for zero location.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Integer seed, or "entropy" for a fresh one (recorded in the manifest).
    #[arg(long, default_value_t = DEFAULT_SEED.to_string())]
    seed: String,
    /// Stream of the first trial; trial t uses stream + t.
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Worker threads; outputs do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write |F| of the first trial and a plotting script.
    #[arg(long)]
    emit_plot: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// transforms, bases, covariance, intensity, dpp, bounds, certify, zeros or all.
    suite: String,
    /// Multiplies trial counts and sample sizes.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long, default_value_t = Budget::default().seed)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct RerunArgs {
    manifest: PathBuf,
    /// Output directory; defaults to `rerun/` next to the manifest.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            _ => EXIT_REFUSED,
        };
        let message = match &e {
            Error::TailCondition { required, .. } => format!("{e}\nminimal adequate truncation: {required}"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure { code: 1, message: format!("I/O error: {e}") }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> std::result::Result<T, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Failure::usage("--workers must be at least 1"));
        }
        b = b.num_threads(w);
    }
    let pool = b.build().map_err(|e| Failure { code: 1, message: e.to_string() })?;
    Ok(pool.install(f))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify(a) => with_workers(a.workers, || verify(&a))?,
        Command::Rerun(a) => rerun(&a),
        Command::Sample(a) => with_workers(a.workers, || Run::new("sample", &a)?.sample())?,
        Command::Transform(a) => with_workers(a.workers, || Run::new("transform", &a)?.transform())?,
        Command::Zeros(a) => with_workers(a.workers, || Run::new("zeros", &a)?.zeros())?,
        Command::Intensity(a) => with_workers(a.workers, || Run::new("intensity", &a)?.intensity())?,
        Command::Certify(a) => with_workers(a.workers, || Run::new("certify", &a)?.certify())?,
    }
}

fn resolve_seed(s: &str) -> std::result::Result<u64, Failure> {
    use std::hash::{BuildHasher, Hasher};
    if s == "entropy" {
        let mut h = std::collections::hash_map::RandomState::new().build_hasher();
        h.write_u128(std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_nanos()));
        return Ok(h.finish());
    }
    s.parse().map_err(|_| Failure::usage(format!("--seed expects an integer or 'entropy', got '{s}'")))
}

/// A sampling command with every default resolved.
struct Run {
    command: &'static str,
    args: RunArgs,
    model: String,
    params: BTreeMap<String, String>,
    window: Window,
    seed: u64,
    started: Instant,
}

impl Run {
    fn new(command: &'static str, args: &RunArgs) -> std::result::Result<Run, Failure> {
        let params = parse_params(&args.params)?;
        let seed = resolve_seed(&args.seed)?;
        if args.trials == 0 {
            return Err(Failure::usage("--trials must be at least 1"));
        }
        if args.grid == 0 {
            return Err(Failure::usage("--grid must be at least 1"));
        }
        let window = match &args.window {
            Some(w) => w.parse::<Window>().map_err(|e| Failure::usage(format!("--window: {e}")))?,
            None if args.model == "extrema" => Window::rect(-2.0, 2.0, -2.0, 2.0)?,
            None => Source::parse(&args.model, &params)?.default_window(),
        };
        Ok(Run {
            command,
            args: args.clone(),
            model: args.model.clone(),
            params,
            window,
            seed,
            started: Instant::now(),
        })
    }

    fn source(&self) -> std::result::Result<Source, Failure> {
        Ok(Source::parse(&self.model, &self.params)?)
    }

    fn stream(&self, trial: usize) -> u64 {
        self.args.stream + trial as u64
    }

    fn manifest(&self, truncation: Option<usize>) -> RunManifest {
        let params = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
        let mut argv = vec![
            self.command.to_string(),
            format!("--model={}", self.model),
            format!("--params={params}"),
            format!("--window={}", self.window),
            format!("--grid={}", self.args.grid),
            format!("--trials={}", self.args.trials),
            format!("--seed={}", self.seed),
            format!("--stream={}", self.args.stream),
        ];
        if let Some(n) = truncation {
            argv.push(format!("--truncation={n}"));
        }
        if self.args.emit_plot {
            argv.push("--emit-plot".into());
        }
        let mut all = self.params.clone();
        all.insert("model".into(), self.model.clone());
        all.insert("window".into(), self.window.to_string());
        all.insert("grid".into(), self.args.grid.to_string());
        all.insert("trials".into(), self.args.trials.to_string());
        if let Some(n) = truncation {
            all.insert("truncation".into(), n.to_string());
        }
        RunManifest {
            command: self.command.to_string(),
            argv,
            params: all,
            seed: self.seed,
            stream_policy: format!("trial t uses stream {} + t", self.args.stream),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: 0.0,
            outputs: Vec::new(),
        }
    }

    fn finish(&self, out: Outputs, truncation: Option<usize>) -> Outcome {
        let mut m = self.manifest(truncation);
        m.wall_clock_seconds = self.started.elapsed().as_secs_f64();
        let path = out.write(m)?;
        println!("manifest: {}", path.display());
        Ok(())
    }

    fn sample(&self) -> Outcome {
        if self.args.trials != 1 {
            return Err(Failure::usage("sample writes one sample; select it with --stream"));
        }
        let src = self.source()?;
        let n = src.truncation(&self.window, self.args.truncation)?;
        let s = src.sample(n, self.seed, self.stream(0))?;
        let mut csv = Csv::new("coefficients.csv", &["k", "re", "im"]);
        for (k, c) in s.monomial_coeffs().iter().enumerate() {
            csv.row([k.to_string(), num(c.re), num(c.im)]);
        }
        println!("{} coefficients (truncation {n})", csv.rows());
        let mut out = Outputs::new(&self.args.out);
        out.add_csv(csv);
        self.finish(out, Some(n))
    }

    fn field(&self, src: &Source, n: usize, side: usize, name: &str) -> std::result::Result<Csv, Failure> {
        let s = src.sample(n, self.seed, self.stream(0))?;
        let (x0, x1, y0, y1) = self.window.bounding_rect();
        let dom = src.domain();
        let sd = src.std_dev(&s);
        let rows: Vec<[String; 6]> = (0..side * side)
            .into_par_iter()
            .map(|i| {
                let (ix, iy) = (i % side, i / side);
                let z = Complex64::new(
                    x0 + (x1 - x0) * (ix as f64 + 0.5) / side as f64,
                    y0 + (y1 - y0) * (iy as f64 + 0.5) / side as f64,
                );
                let (v, scaled) = if dom.contains(z) {
                    let v = s.eval(z);
                    (v, v.norm() / sd(z))
                } else {
                    (Complex64::new(f64::NAN, f64::NAN), f64::NAN)
                };
                [num(z.re), num(z.im), num(v.re), num(v.im), num(v.norm()), num(scaled)]
            })
            .collect();
        let mut csv = Csv::new(name, &["x", "y", "re", "im", "abs", "normalized"]);
        for r in rows {
            csv.row(r);
        }
        Ok(csv)
    }

    fn transform(&self) -> Outcome {
        let src = self.source()?;
        if !matches!(src, Source::Transform { .. }) {
            return Err(Failure::usage(format!("'{}' is a GAF model, not a transform", self.model)));
        }
        let n = src.truncation(&self.window, self.args.truncation)?;
        let s = src.sample(n, self.seed, self.stream(0))?;
        let mut coeffs = Csv::new("transform.csv", &["k", "re", "im"]);
        for (k, c) in s.coeffs.iter().enumerate() {
            coeffs.row([k.to_string(), num(c.re), num(c.im)]);
        }
        let field = self.field(&src, n, self.args.grid, "field.csv")?;
        println!("{} coefficients, {} field points (truncation {n})", coeffs.rows(), field.rows());
        let mut out = Outputs::new(&self.args.out);
        out.add_csv(coeffs);
        out.add_csv(field);
        self.finish(out, Some(n))
    }

    fn zeros(&self) -> Outcome {
        let src = self.source()?;
        let n = src.truncation(&self.window, self.args.truncation)?;
        let spherical = src.domain() == Domain::ExtendedPlane;
        let grid = self.args.grid;
        let sets: Vec<(Vec<Complex64>, Vec<String>)> = (0..self.args.trials)
            .into_par_iter()
            .map(|t| {
                let s = src.sample(n, self.seed, self.stream(t))?;
                let (zs, at_infinity) = if spherical {
                    sphere_zeros(&s, grid)?
                } else {
                    (locate_zeros(&s, &self.window, grid)?, 0)
                };
                let mut pts = Vec::with_capacity(zs.count() + at_infinity);
                for (z, m) in zs.points.iter().zip(&zs.multiplicities) {
                    pts.extend(std::iter::repeat_n(*z, *m));
                }
                pts.extend(std::iter::repeat_n(Complex64::new(f64::INFINITY, f64::INFINITY), at_infinity));
                let mut notes = zs.diagnostics.clone();
                for (z, m) in &zs.excluded_deterministic {
                    notes.push(format!("deterministic zero of order {m} at {z} excluded"));
                }
                Ok((pts, notes))
            })
            .collect::<noisegaf::Result<_>>()?;
        let mut csv = Csv::new("zeros.csv", &["trial", "re", "im"]);
        for (t, (pts, notes)) in sets.iter().enumerate() {
            for z in pts {
                csv.row([t.to_string(), num(z.re), num(z.im)]);
            }
            for note in notes {
                eprintln!("trial {t}: {note}");
            }
        }
        let total = csv.rows();
        println!(
            "{total} zeros over {} trials ({:.4} per trial, truncation {n})",
            self.args.trials,
            total as f64 / self.args.trials as f64
        );
        let mut out = Outputs::new(&self.args.out);
        out.add_csv(csv);
        if self.args.emit_plot {
            out.add_csv(self.field(&src, n, PLOT_RESOLUTION, "field.csv")?);
            let title = format!("{} zeros, window {}", self.model, self.window);
            out.add_text("zeros_plot.py", plot_script(&title, "field.csv", "zeros.csv"));
        }
        self.finish(out, Some(n))
    }

    fn region(&self) -> RegionSpec {
        match self.window {
            Window::Rect { x0, x1, y0, y1 } => RegionSpec::Rect { x0, x1, y0, y1 },
            Window::Disk { center, radius } if center == Complex64::new(0.0, 0.0) => {
                RegionSpec::CenteredDisk { radius }
            }
            Window::Disk { center, radius } => RegionSpec::Disk { center, radius },
        }
    }

    fn intensity(&self) -> Outcome {
        let region = self.region();
        let trials = self.args.trials;
        let report: IntensityReport = if self.model == "extrema" {
            if !self.params.is_empty() {
                return Err(Failure::usage("extrema takes no parameters"));
            }
            extrema_experiment(trials, self.args.truncation, &[region], self.seed, self.args.grid)?
        } else {
            let model: GafModel = match self.source()? {
                Source::Model(m) => m,
                Source::Transform { .. } => {
                    return Err(Failure::usage("intensity needs a GAF model or extrema"));
                }
            };
            let region = match (model, region) {
                (GafModel::Spherical { .. }, RegionSpec::CenteredDisk { radius }) => RegionSpec::SphericalCap { radius },
                (_, r) => r,
            };
            gaf_intensity(model, &[region], trials, self.seed, self.args.truncation, self.args.grid)?
        };
        let mut csv = Csv::new(
            "intensity.csv",
            &["region", "trials", "observed", "se", "predicted", "z_score", "metric_area"],
        );
        for b in &report.bins {
            csv.row([
                format!("\"{}\"", b.region),
                trials.to_string(),
                num(b.observed),
                num(b.se),
                num(b.predicted),
                num(b.z_score()),
                num(b.metric_area),
            ]);
            println!(
                "{}: observed {:.6} ± {:.6}, predicted {:.6}, z = {:.3}",
                b.region,
                b.observed,
                b.se,
                b.predicted,
                b.z_score()
            );
        }
        let mut out = Outputs::new(&self.args.out);
        out.add_csv(csv);
        self.finish(out, self.args.truncation)
    }

    fn certify(&self) -> Outcome {
        let src = self.source()?;
        let curve = Curve::from_window(&self.window);
        let n = match self.args.truncation {
            Some(n) => n,
            None => src.min_truncation(&self.window, 1.0)?,
        };
        let rows: Vec<[String; 9]> = (0..self.args.trials)
            .into_par_iter()
            .map(|t| {
                let s = src.sample(n, self.seed, self.stream(t))?;
                Ok(match rouche_certify(&s, &curve, n, 0.1) {
                    Ok(c) => [
                        t.to_string(),
                        n.to_string(),
                        "certified".into(),
                        c.count.to_string(),
                        num(c.eps),
                        num(c.boundary_min),
                        num(c.tail),
                        num(c.prob_bound),
                        c.vacuous.to_string(),
                    ],
                    Err(Error::Refused(_)) | Err(Error::BoundaryZero(_)) => {
                        let nan = num(f64::NAN);
                        [
                            t.to_string(),
                            n.to_string(),
                            "refused".into(),
                            String::new(),
                            nan.clone(),
                            nan.clone(),
                            nan.clone(),
                            num(0.0),
                            "true".into(),
                        ]
                    }
                    Err(e) => return Err(e),
                })
            })
            .collect::<noisegaf::Result<_>>()?;
        let mut csv = Csv::new(
            "certify.csv",
            &["trial", "n", "status", "count", "eps", "boundary_min", "tail", "prob_bound", "vacuous"],
        );
        let certified = rows.iter().filter(|r| r[2] == "certified").count();
        for r in rows {
            csv.row(r);
        }
        println!("{certified} of {} samples certified (truncation {n})", self.args.trials);
        let mut out = Outputs::new(&self.args.out);
        out.add_csv(csv);
        self.finish(out, Some(n))
    }
}

fn verify(a: &VerifyArgs) -> Outcome {
    let suite: Suite = a
        .suite
        .parse()
        .map_err(|_| Failure::usage(format!("unknown suite '{}'; expected one of {}", a.suite, Suite::NAMES.join(", "))))?;
    if !(a.scale > 0.0) {
        return Err(Failure::usage("--scale must be positive"));
    }
    let reports = run_suite(suite, &Budget { scale: a.scale, seed: a.seed })?;
    let mut failed = Vec::new();
    for r in &reports {
        print!("{r}");
        failed.extend(r.failures().map(|c| format!("{}: {}", r.title, c.name)));
    }
    if failed.is_empty() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("failed checks:\n  {}", failed.join("\n  ")) })
    }
}

fn rerun(a: &RerunArgs) -> Outcome {
    let manifest = read_manifest(&a.manifest)?;
    let out = match &a.out {
        Some(o) => o.clone(),
        None => a.manifest.parent().unwrap_or(Path::new(".")).join("rerun"),
    };
    let mut argv = vec!["noisegaf".to_string()];
    argv.extend(manifest.argv.iter().cloned());
    argv.push(format!("--out={}", out.display()));
    if let Some(w) = a.workers {
        argv.push(format!("--workers={w}"));
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| Failure::usage(format!("manifest arguments: {e}")))?;
    run(cli)?;
    let fresh = read_manifest(&out.join(format!("{}.manifest.json", manifest.command)))?;
    let mut mismatched = Vec::new();
    for d in &manifest.outputs {
        match fresh.outputs.iter().find(|f| f.file == d.file) {
            Some(f) if f.sha256 == d.sha256 => println!("identical: {}", d.file),
            _ => mismatched.push(d.file.clone()),
        }
    }
    if mismatched.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("outputs differ: {}", mismatched.join(", ")) })
    }
}
